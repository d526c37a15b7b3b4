"""The group G_B(F_p) attached to a skew-symmetric matrix of linear forms.

Elements are pairs (v, w) in F_p^n x F_p^d with

    (v, w) * (v', w') = (v + v', w + w' + t(v, v') / 2),

where t(v, v')_k = v^T B^(k) v'.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .gf import check_modulus, inv_mod
from .hilbert import affine_dim
from .ideals import RankIdealVector
from .linforms import LinFormMatrix, adjoint
from .poly import IdealBasis

ENUMERATION_BUDGET = 10**6


@dataclass(frozen=True)
class GroupElement:
    v: tuple
    w: tuple


class GroupSpec:
    """G_B(F_p) for a skew-symmetric n x n matrix B in d variables."""

    def __init__(self, B: LinFormMatrix):
        if not B.is_skew_symmetric():
            raise ValueError("B must be skew-symmetric with zero diagonal")
        self.B = B
        self.p = check_modulus(B.p)
        self.n = B.nrows
        self.d = B.d
        self.half = inv_mod(2, self.p)
        d, n, _ = B.slices.shape
        self._entries = [
            (k, i, j, int(B.slices[k, i, j]))
            for k in range(d) for i in range(n) for j in range(n) if B.slices[k, i, j]
        ]

    def __repr__(self):
        return f"GroupSpec(p={self.p}, n={self.n}, d={self.d})"

    @property
    def order_exponent(self) -> int:
        return self.n + self.d

    def element(self, v, w=None) -> GroupElement:
        v = tuple(int(x) % self.p for x in v)
        w = tuple(int(x) % self.p for x in (w if w is not None else (0,) * self.d))
        if len(v) != self.n or len(w) != self.d:
            raise ValueError("element components have the wrong length")
        return GroupElement(v, w)

    def identity(self) -> GroupElement:
        return GroupElement((0,) * self.n, (0,) * self.d)

    def generators(self) -> list[GroupElement]:
        """(e_i, 0) for i = 1..n, then (0, f_k) for k = 1..d."""
        eye_n = np.eye(self.n, dtype=np.int64)
        eye_d = np.eye(self.d, dtype=np.int64)
        return [self.element(eye_n[i]) for i in range(self.n)] + [
            self.element(np.zeros(self.n, dtype=np.int64), eye_d[k]) for k in range(self.d)
        ]

    def t_map(self, v, v2) -> tuple:
        v = np.asarray(v, dtype=np.int64)
        v2 = np.asarray(v2, dtype=np.int64)
        if v.shape != (self.n,) or v2.shape != (self.n,):
            raise ValueError("vectors must have length n")
        out = np.einsum("i,kij,j->k", v, self.B.slices, v2) % self.p
        return tuple(int(x) for x in out)

    def _t(self, v, v2) -> list:
        t = [0] * self.d
        for k, i, j, c in self._entries:
            if v[i] and v2[j]:
                t[k] += c * v[i] * v2[j]
        return t

    def mul(self, g: GroupElement, h: GroupElement) -> GroupElement:
        p = self.p
        t = self._t(g.v, h.v)
        v = tuple((a + b) % p for a, b in zip(g.v, h.v))
        w = tuple((a + b + self.half * c) % p for a, b, c in zip(g.w, h.w, t))
        return GroupElement(v, w)

    def inverse(self, g: GroupElement) -> GroupElement:
        p = self.p
        return GroupElement(tuple(-a % p for a in g.v), tuple(-a % p for a in g.w))

    def power(self, g: GroupElement, e: int) -> GroupElement:
        out = self.identity()
        for _ in range(e):
            out = self.mul(out, g)
        return out

    def commutator(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """[g, h] = g^-1 h^-1 g h."""
        return self.mul(self.mul(self.mul(self.inverse(g), self.inverse(h)), g), h)

    def elements(self):
        p = self.p
        for v in itertools.product(range(p), repeat=self.n):
            for w in itertools.product(range(p), repeat=self.d):
                yield GroupElement(v, w)

    def size(self) -> int:
        return self.p ** (self.n + self.d)


def _linear_ideal_dim(D: LinFormMatrix) -> int:
    rv = RankIdealVector(D)
    ideal = rv.ideal(1)
    return affine_dim(ideal)


def derived_dim(spec: GroupSpec) -> int:
    """d - dim V_a(I_1(B))."""
    return spec.d - _linear_ideal_dim(spec.B)


def centre_dim(spec: GroupSpec) -> int:
    """d + dim V_a(I_1(B^))."""
    return spec.d + _linear_ideal_dim(adjoint(spec.B))


def nilpotency_class(spec: GroupSpec) -> int:
    if spec.n + spec.d == 0:
        return 0
    return 2 if not spec.B.is_zero() else 1


@dataclass(frozen=True)
class StructuralReport:
    p: int
    n: int
    d: int
    order_exponent: int
    nilpotency_class: int
    derived_dim: int
    centre_dim: int
    checked_by_enumeration: bool = False
    exponent_ok: bool | None = None

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "d": self.d,
            "order": f"{self.p}^{self.order_exponent}",
            "class": self.nilpotency_class,
            "derived_dim": self.derived_dim,
            "centre_dim": self.centre_dim,
            "enumerated": self.checked_by_enumeration,
            "exponent_p": self.exponent_ok,
        }


def structural_report(spec: GroupSpec, cross_check: bool = True, budget: int = ENUMERATION_BUDGET) -> StructuralReport:
    """Order, class and derived/centre dimensions from the linear rank ideals.

    When the group has at most ``budget`` elements the dimensions are
    recomputed by brute force and compared; a mismatch raises.
    """
    dd = derived_dim(spec)
    cd = centre_dim(spec)
    checked = False
    exp_ok = None
    if cross_check and spec.size() <= budget:
        bd, bc = brute_force_dims(spec)
        if (bd, bc) != (dd, cd):
            raise AssertionError(f"ideal dims {(dd, cd)} disagree with enumeration {(bd, bc)}")
        exp_ok = exponent_is_p(spec)
        checked = True
    return StructuralReport(spec.p, spec.n, spec.d, spec.n + spec.d, nilpotency_class(spec), dd, cd, checked, exp_ok)


def _log_p(size: int, p: int) -> int:
    e = 0
    while size > 1:
        if size % p:
            raise AssertionError("subgroup order is not a power of p")
        size //= p
        e += 1
    return e


def _closure(spec: GroupSpec, seeds) -> set:
    group = {spec.identity()}
    frontier = list(group)
    seeds = list(seeds)
    while frontier:
        nxt = []
        for g in frontier:
            for s in seeds:
                h = spec.mul(g, s)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return group


def brute_force_dims(spec: GroupSpec) -> tuple[int, int]:
    """(dim G', dim Z(G)) by enumerating the group with its multiplication only."""
    gens = spec.generators()
    elements = list(spec.elements())
    comms = {spec.commutator(g, h) for g in elements for h in gens}
    derived = _closure(spec, comms)
    centre = [g for g in elements if all(spec.mul(g, h) == spec.mul(h, g) for h in gens)]
    return _log_p(len(derived), spec.p), _log_p(len(centre), spec.p)


def exponent_is_p(spec: GroupSpec, elements=None) -> bool:
    ident = spec.identity()
    elements = spec.elements() if elements is None else elements
    return all(spec.power(g, spec.p) == ident for g in elements)


def matrix_from_structure_constants(p: int, n: int, d: int, relations) -> LinFormMatrix:
    """B from commutator relations [e_i, e_j] = sum_k c f_k, given as (i, j, k, c), 1-based, i < j."""
    slices = np.zeros((d, n, n), dtype=np.int64)
    seen = set()
    for i, j, k, c in relations:
        if not (1 <= i < j <= n and 1 <= k <= d):
            raise ValueError(f"relation index out of range: {(i, j, k)}")
        if (i, j, k) in seen:
            raise ValueError(f"repeated relation {(i, j, k)}")
        seen.add((i, j, k))
        slices[k - 1, i - 1, j - 1] = c
        slices[k - 1, j - 1, i - 1] = -c
    return LinFormMatrix(slices, p, "y")


def structure_constants(B: LinFormMatrix) -> list[tuple]:
    """Nonzero (i, j, k, c) with i < j, 1-based, inverse to :func:`matrix_from_structure_constants`."""
    d, n, _ = B.slices.shape
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(d):
                c = int(B.slices[k, i, j])
                if c:
                    out.append((i + 1, j + 1, k + 1, c))
    return out


def matrix_from_group(spec: GroupSpec) -> LinFormMatrix:
    """Read B back off the commutators [(e_i, 0), (e_j, 0)] of the standard generators."""
    gens = spec.generators()[: spec.n]
    rel = []
    for i in range(spec.n):
        for j in range(i + 1, spec.n):
            c = spec.commutator(gens[i], gens[j])
            assert not any(c.v)
            for k, val in enumerate(c.w):
                if val:
                    rel.append((i + 1, j + 1, k + 1, val))
    return matrix_from_structure_constants(spec.p, spec.n, spec.d, rel)


def group_from_matrix(B: LinFormMatrix) -> GroupSpec:
    return GroupSpec(B)


def linear_ideal(B: LinFormMatrix) -> IdealBasis:
    return RankIdealVector(B).ideal(1)
