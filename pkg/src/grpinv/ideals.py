"""Determinantal ideals I_k(D) of matrices of linear forms."""

from __future__ import annotations

import itertools
import threading

from .hilbert import affine_dim, ideal_degree
from .linforms import LinFormMatrix
from .poly import IdealBasis, Poly, Ring


def _colex(n: int, k: int) -> list[tuple]:
    return sorted(itertools.combinations(range(n), k), key=lambda s: tuple(reversed(s)))


class _MinorTable:
    """Memoised Laplace expansion of minors along their first row."""

    def __init__(self, entries: list[list[Poly]], ring: Ring):
        self.entries = entries
        self.ring = ring
        self.cache: dict = {}

    def minor(self, rows: tuple, cols: tuple) -> Poly:
        if not rows:
            return self.ring.one()
        key = (rows, cols)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        r0, rest = rows[0], rows[1:]
        out = self.ring.zero()
        for pos, c in enumerate(cols):
            e = self.entries[r0][c]
            if e.is_zero():
                continue
            sub = self.minor(rest, cols[:pos] + cols[pos + 1:])
            if sub.is_zero():
                continue
            term = e * sub
            out = out - term if pos % 2 else out + term
        self.cache[key] = out
        return out


def determinant(entries: list[list[Poly]], ring: Ring) -> Poly:
    n = len(entries)
    return _MinorTable(entries, ring).minor(tuple(range(n)), tuple(range(n)))


def minors(D: LinFormMatrix, k: int, ring: Ring | None = None, dedupe: bool = True) -> list[Poly]:
    """All nonzero k x k minors, row/column subsets in colex order.

    With ``dedupe`` a minor equal to +/- an earlier one is dropped.
    """
    m, n = D.shape
    if not 1 <= k <= min(m, n):
        raise ValueError(f"k must lie in 1..{min(m, n)}")
    ring = ring or D.ring()
    table = _MinorTable(D.poly_matrix(ring), ring)
    out = []
    seen = set()
    for rows in _colex(m, k):
        for cols in _colex(n, k):
            f = table.minor(rows, cols)
            if f.is_zero():
                continue
            if dedupe:
                key = frozenset(f.terms.items())
                if key in seen:
                    continue
                seen.add(key)
                seen.add(frozenset((-f).terms.items()))
            out.append(f)
    return out


class RankIdealVector:
    """(I_k(D) : k = 1..min(m, n)) with Groebner bases computed on demand."""

    def __init__(self, D: LinFormMatrix, ring: Ring | None = None):
        self.D = D
        self.ring = ring or D.ring()
        self.N = min(D.shape)
        self._ideals: dict[int, IdealBasis] = {}
        self._lock = threading.Lock()
        self._key_locks: dict[int, threading.Lock] = {}

    def __len__(self):
        return self.N

    def generators(self, k: int) -> list[Poly]:
        return minors(self.D, k, self.ring)

    def ideal(self, k: int) -> IdealBasis:
        if not 1 <= k <= self.N:
            raise ValueError(f"k must lie in 1..{self.N}")
        with self._lock:
            lock = self._key_locks.setdefault(k, threading.Lock())
        with lock:
            ib = self._ideals.get(k)
            if ib is None:
                ib = IdealBasis(self.ring, self.generators(k))
                ib.compute_groebner()
                self._ideals[k] = ib
        return ib

    def affine_dim(self, k: int) -> int:
        return affine_dim(self.ideal(k))

    def degree(self, k: int) -> int:
        return ideal_degree(self.ideal(k))

    def affine_dims(self) -> list[int]:
        return [self.affine_dim(k) for k in range(1, self.N + 1)]

    def degrees(self) -> list[int]:
        return [self.degree(k) for k in range(1, self.N + 1)]


def rank_ideal_vector(D: LinFormMatrix) -> RankIdealVector:
    return RankIdealVector(D)


def vanishes_at(gens: list[Poly], point) -> bool:
    return all(g(point) == 0 for g in gens)
