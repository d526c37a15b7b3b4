"""Brute-force isomorphism test for tiny G_B(F_p).

G_B and G_C are isomorphic iff X B(yZ) X^T = C(y) for some X in GL_n(F_p),
Z in GL_d(F_p).  For fixed X the condition is linear in Z: slice l of the
left side is sum_k Z[l, k] (X B^(k) X^T).  So X runs over GL_n (built row by
row, never producing singular candidates) and Z is solved for.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod

import numpy as np

from . import gf
from .groups import GroupElement, GroupSpec
from .linforms import LinFormMatrix, adjoint, transform

DEFAULT_BUDGET = 10**8


def gl_order(n: int, p: int) -> int:
    return prod(p**n - p**i for i in range(n))


@dataclass(frozen=True)
class IsoWitness:
    X: np.ndarray
    Z: np.ndarray


@dataclass(frozen=True)
class IsoResult:
    status: str  # "isomorphic", "non-isomorphic" or "budget-exceeded"
    witness: IsoWitness | None = None
    searched: int = 0
    required: int = 0

    @property
    def isomorphic(self) -> bool | None:
        if self.status == "budget-exceeded":
            return None
        return self.status == "isomorphic"


def _all_vectors(n: int, p: int) -> np.ndarray:
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)


def _extend(prefixes: np.ndarray, vectors: np.ndarray, p: int) -> np.ndarray:
    """All (prefix, v) with v outside the row span of the prefix.

    ``vectors`` is the list of all p^n vectors in base-p order, so a
    vector's code is its row index there.
    """
    m, k, n = prefixes.shape
    place = p ** np.arange(n - 1, -1, -1, dtype=np.int64)
    coeffs = _all_vectors(k, p)
    span = np.einsum("sk,mkn->msn", coeffs, prefixes) % p
    codes = span @ place
    outside = np.ones((m, vectors.shape[0]), dtype=bool)
    np.put_along_axis(outside, codes, False, axis=1)
    pi, vi = np.nonzero(outside)
    out = np.empty((pi.size, k + 1, n), dtype=np.int64)
    out[:, :k] = prefixes[pi]
    out[:, k] = vectors[vi]
    return out


def gl_batches(n: int, p: int):
    """Yield arrays of invertible n x n matrices covering GL_n(F_p) exactly once."""
    vectors = _all_vectors(n, p)
    for first in vectors[1:]:
        batch = first.reshape(1, 1, n)
        for _ in range(n - 1):
            batch = _extend(batch, vectors, p)
        yield batch


def gl_elements(n: int, p: int) -> np.ndarray:
    return np.concatenate(list(gl_batches(n, p)))


def _solve_Z(T: np.ndarray, C: np.ndarray, p: int, limit: int) -> np.ndarray | None:
    """Invertible Z with Z @ T = C (T, C are d x n^2), or None."""
    d = T.shape[0]
    rows = []
    for lam in range(d):
        z = gf.solve(T.T, C[lam], p)
        if z is None:
            return None
        rows.append(z)
    Z0 = np.array(rows, dtype=np.int64)
    if gf.is_invertible(Z0, p):
        return Z0
    K = gf.nullspace(T.T, p)  # left kernel of T
    if K.shape[0] == 0:
        return None
    kdim = K.shape[0]
    tried = 0
    for combo in itertools.product(range(p), repeat=kdim * d):
        tried += 1
        if tried > limit:
            break
        coeffs = np.array(combo, dtype=np.int64).reshape(d, kdim)
        Z = (Z0 + coeffs @ K) % p
        if gf.is_invertible(Z, p):
            return Z
    return None


def _check_inputs(B: LinFormMatrix, C: LinFormMatrix):
    if B.p != C.p or B.shape != C.shape or B.d != C.d:
        raise ValueError("matrices must share p, n and d")
    if not (B.is_skew_symmetric() and C.is_skew_symmetric()):
        raise ValueError("matrices must be skew-symmetric")


def isomorphic_bruteforce(B: LinFormMatrix, C: LinFormMatrix, budget: int = DEFAULT_BUDGET) -> IsoResult:
    """Decide whether G_B(F_p) and G_C(F_p) are isomorphic by exhaustive search over X."""
    _check_inputs(B, C)
    p, n, d = B.p, B.nrows, B.d
    required = gl_order(n, p) * gl_order(d, p)
    if required > budget:
        return IsoResult("budget-exceeded", required=required)
    Cmat = C.slices.reshape(d, n * n)
    rank_C = gf.rank(Cmat, p)
    # rows of T must lie in the row space of C: T @ K = 0 for K spanning its annihilator
    K = gf.nullspace(Cmat, p).T
    searched = 0
    for X in gl_batches(n, p):
        searched += X.shape[0]
        XB = np.einsum("bij,kjl->bkil", X, B.slices) % p
        T = (XB @ X.transpose(0, 2, 1)[:, None]) % p
        T = T.reshape(X.shape[0], d, n * n)
        ok = np.nonzero(~((T @ K) % p).any(axis=(1, 2)))[0] if K.size else np.arange(X.shape[0])
        if ok.size:
            ok = ok[gf.batched_rank(T[ok], p) == rank_C]
        for b in ok:
            Z = _solve_Z(T[b], Cmat, p, budget)
            if Z is not None:
                w = IsoWitness(X[b].copy(), Z)
                assert verify_witness(B, C, w)
                return IsoResult("isomorphic", w, searched, required)
    return IsoResult("non-isomorphic", None, searched, required)


def verify_witness(B: LinFormMatrix, C: LinFormMatrix, w: IsoWitness) -> bool:
    """Check X B(yZ) X^T = C(y) and X B^(xX) Z^T = C^(x) slice by slice."""
    p = B.p
    X = gf.as_matrix(w.X, p)
    Z = gf.as_matrix(w.Z, p)
    if not gf.is_invertible(X, p) or not gf.is_invertible(Z, p):
        raise ValueError("witness matrices must be invertible")
    first = transform(B, X, Z) == C
    second = adjoint(B).transform_general(X, Z.T, X) == adjoint(C)
    return bool(first and second)


def witness_identities(B: LinFormMatrix, C: LinFormMatrix, w: IsoWitness) -> tuple[bool, bool]:
    """Both identities separately; they always agree."""
    X = gf.as_matrix(w.X, B.p)
    Z = gf.as_matrix(w.Z, B.p)
    return transform(B, X, Z) == C, adjoint(B).transform_general(X, Z.T, X) == adjoint(C)


def group_map(spec_B: GroupSpec, w: IsoWitness):
    """The isomorphism G_B -> G_C, (v, w) -> (X^-T v, Z w), induced by a witness."""
    p = spec_B.p
    XinvT = gf.inverse(w.X, p).T
    Z = gf.as_matrix(w.Z, p)

    def phi(g: GroupElement) -> GroupElement:
        v = XinvT @ np.array(g.v, dtype=np.int64) % p
        ww = Z @ np.array(g.w, dtype=np.int64) % p
        return GroupElement(tuple(int(x) for x in v), tuple(int(x) for x in ww))

    return phi
