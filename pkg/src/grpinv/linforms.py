"""Matrices of linear forms and 3-tensors over F_p.

A :class:`LinFormMatrix` D(z) = sum_k D^(k) z_k is stored slice-major as an
int64 array of shape ``(d, m, n)``.  Substitutions use row vectors:
``D(zZ)`` means the variables are replaced by the entries of ``z @ Z``,
so slice ``l`` of ``D(zZ)`` is ``sum_k Z[l, k] D^(k)``.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import gf
from .poly import Poly, Ring


class LinFormMatrix:
    """An m x n matrix of homogeneous linear forms in d variables over F_p."""

    __slots__ = ("p", "slices", "prefix")

    def __init__(self, slices, p: int, prefix: str = "z"):
        self.p = gf.check_modulus(p)
        arr = np.asarray(slices, dtype=np.int64)
        if arr.ndim != 3:
            raise ValueError("slices must have shape (d, m, n)")
        self.slices = arr % self.p
        self.slices.setflags(write=False)
        self.prefix = prefix

    @classmethod
    def zeros(cls, m: int, n: int, d: int, p: int, prefix: str = "z") -> "LinFormMatrix":
        return cls(np.zeros((d, m, n), dtype=np.int64), p, prefix)

    @property
    def d(self) -> int:
        return self.slices.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.slices.shape[1], self.slices.shape[2]

    @property
    def nrows(self) -> int:
        return self.slices.shape[1]

    @property
    def ncols(self) -> int:
        return self.slices.shape[2]

    def ring(self) -> Ring:
        return Ring.with_prefix(self.p, self.d, self.prefix)

    def __eq__(self, other):
        return (
            isinstance(other, LinFormMatrix)
            and self.p == other.p
            and self.slices.shape == other.slices.shape
            and bool(np.array_equal(self.slices, other.slices))
        )

    def __hash__(self):
        return hash((self.p, self.slices.shape, self.slices.tobytes()))

    def __repr__(self):
        m, n = self.shape
        return f"LinFormMatrix({m}x{n}, d={self.d}, p={self.p})"

    def is_zero(self) -> bool:
        return not self.slices.any()

    def is_skew_symmetric(self) -> bool:
        m, n = self.shape
        if m != n:
            return False
        s = self.slices
        return bool(np.all((s + s.transpose(0, 2, 1)) % self.p == 0)) and not np.any(
            np.diagonal(s, axis1=1, axis2=2)
        )

    def entry(self, i: int, j: int, ring: Ring | None = None) -> Poly:
        ring = ring or self.ring()
        return ring.linear_form(self.slices[:, i, j])

    def poly_matrix(self, ring: Ring | None = None) -> list[list[Poly]]:
        ring = ring or self.ring()
        m, n = self.shape
        return [[self.entry(i, j, ring) for j in range(n)] for i in range(m)]

    def evaluate(self, v) -> np.ndarray:
        """The scalar matrix D(v) = sum_k v_k D^(k)."""
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (self.d,):
            raise ValueError(f"point must have length {self.d}")
        return np.tensordot(v % self.p, self.slices, axes=1) % self.p

    def substitute(self, Z) -> "LinFormMatrix":
        """D(zZ) for a d x d matrix Z."""
        Z = gf.as_matrix(Z, self.p)
        if Z.shape != (self.d, self.d):
            raise ValueError("substitution matrix has wrong shape")
        return LinFormMatrix(np.tensordot(Z, self.slices, axes=1), self.p, self.prefix)

    def transform_general(self, X, Y, Z) -> "LinFormMatrix":
        """X D(zZ) Y for invertible X (m x m), Y (n x n), Z (d x d)."""
        X, Y, Z = (gf.as_matrix(a, self.p) for a in (X, Y, Z))
        for a in (X, Y, Z):
            if not gf.is_invertible(a, self.p):
                raise ValueError("transformation matrix is singular")
        sub = np.tensordot(Z, self.slices, axes=1) % self.p
        out = np.einsum("ab,kbc,cd->kad", X, sub, Y) % self.p
        return LinFormMatrix(out, self.p, self.prefix)

    def tensor(self) -> "Tensor3":
        """The tensor whose third flattening is this matrix."""
        return Tensor3(self.slices.transpose(1, 2, 0), self.p)

    def reduce_mod(self, p: int) -> "LinFormMatrix":
        return LinFormMatrix(self.slices, p, self.prefix)


class Tensor3:
    """Structure constants a[i, j, k] of an element of V1 (x) V2 (x) V3."""

    __slots__ = ("p", "a")

    def __init__(self, a, p: int):
        self.p = gf.check_modulus(p)
        arr = np.asarray(a, dtype=np.int64)
        if arr.ndim != 3:
            raise ValueError("tensor coefficients must be a 3-d array")
        self.a = arr % self.p

    @classmethod
    def from_terms(cls, dims, terms, p: int) -> "Tensor3":
        """Build from ``(coeff, i, j, k)`` with 1-based indices."""
        a = np.zeros(dims, dtype=np.int64)
        for c, i, j, k in terms:
            a[i - 1, j - 1, k - 1] += c
        return cls(a, p)

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.a.shape

    def __eq__(self, other):
        return isinstance(other, Tensor3) and self.p == other.p and np.array_equal(self.a, other.a)

    def is_skew(self) -> bool:
        r, s, _ = self.dims
        return r == s and bool(np.all((self.a + self.a.transpose(1, 0, 2)) % self.p == 0))


_PREFIX = {1: "x", 2: "y", 3: "z"}


def flatten(t: Tensor3, axis: int) -> LinFormMatrix:
    """The ``axis``-th flattening as a matrix of linear forms.

    axis 1: s x t in x_1..x_r, entry (j, k) = sum_i a_ijk x_i
    axis 2: r x t in y_1..y_s, entry (i, k) = sum_j a_ijk y_j
    axis 3: r x s in z_1..z_t, entry (i, j) = sum_k a_ijk z_k
    """
    if axis == 1:
        sl = t.a
    elif axis == 2:
        sl = t.a.transpose(1, 0, 2)
    elif axis == 3:
        sl = t.a.transpose(2, 0, 1)
    else:
        raise ValueError("axis must be 1, 2 or 3")
    return LinFormMatrix(np.ascontiguousarray(sl), t.p, _PREFIX[axis])


def act(t: Tensor3, A1, A2, A3) -> Tensor3:
    """(A1, A2, A3) . t, with A_i acting on basis vectors through its columns."""
    p = t.p
    mats = [gf.as_matrix(A, p) for A in (A1, A2, A3)]
    for A, n in zip(mats, t.dims):
        if A.shape != (n, n):
            raise ValueError("transformation has the wrong size")
        if not gf.is_invertible(A, p):
            raise ValueError("transformation matrix is singular")
    a = np.einsum("ijk,ai,bj,ck->abc", t.a, *mats) % p
    return Tensor3(a, p)


def adjoint(B: LinFormMatrix) -> LinFormMatrix:
    """B^(x): n x d, entry (i, k) = sum_j B^(k)_ij x_j, in the variables x_1..x_n."""
    m, n = B.shape
    if m != n:
        raise ValueError("adjoint needs a square matrix")
    return LinFormMatrix(np.ascontiguousarray(B.slices.transpose(2, 1, 0)), B.p, "x")


def evaluate(D: LinFormMatrix, v) -> np.ndarray:
    return D.evaluate(v)


def transform(B: LinFormMatrix, X, Z) -> LinFormMatrix:
    """C(y) = X B(yZ) X^T."""
    X = gf.as_matrix(X, B.p)
    return B.transform_general(X, X.T, Z)


def pfaffian(B: LinFormMatrix, ring: Ring | None = None) -> Poly:
    """Pfaffian of an even-size skew-symmetric matrix of linear forms.

    Expansion along the first row, Pf = sum_j (-1)^j b_1j Pf(minor_1j) with
    1-based j, so the direct sum of blocks [[0, 1], [-1, 0]] has Pf = 1.
    """
    m, n = B.shape
    if m != n or n % 2:
        raise ValueError("Pfaffian needs an even-size square matrix")
    if not B.is_skew_symmetric():
        raise ValueError("Pfaffian needs a skew-symmetric matrix")
    ring = ring or B.ring()
    entries = B.poly_matrix(ring)

    @lru_cache(maxsize=None)
    def pf(idx: tuple) -> Poly:
        if not idx:
            return ring.one()
        first = idx[0]
        out = ring.zero()
        for pos in range(1, len(idx)):
            e = entries[first][idx[pos]]
            if e.is_zero():
                continue
            rest = idx[1:pos] + idx[pos + 1:]
            term = e * pf(rest)
            out = out - term if pos % 2 == 0 else out + term
        return out

    return pf(tuple(range(n)))


def skew_from_upper(upper, p: int, n: int, d: int) -> LinFormMatrix:
    """Skew-symmetric matrix from a dict ``{(k, i, j): c}`` of 0-based upper entries."""
    s = np.zeros((d, n, n), dtype=np.int64)
    for (k, i, j), c in upper.items():
        s[k, i, j] += c
        s[k, j, i] -= c
    return LinFormMatrix(s, p, "y")


def random_skew(n: int, d: int, p: int, rng: np.random.Generator) -> LinFormMatrix:
    s = rng.integers(0, p, size=(d, n, n), dtype=np.int64)
    s = np.triu(s, 1)
    s = s - s.transpose(0, 2, 1)
    return LinFormMatrix(s, p, "y")
