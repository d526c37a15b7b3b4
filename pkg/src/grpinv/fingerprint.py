"""Invariant vectors of skew-symmetric matrices and partitions of families.

For each prime p the fingerprint records, for every rank ideal I_k(B)
(k = 1..n) and J_l = I_l(B^) (l = 1..min(n, d)), the number of F_p-points
of V_a, its dimension, the degree of the ideal and the dimension of the
F_p-span of V_a(F_p).  An invariant that was not computed is ``None``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .families import MatrixTemplate
from .hilbert import affine_dim, ideal_degree
from .ideals import RankIdealVector
from .linforms import LinFormMatrix, adjoint
from .rankloci import DEFAULT_BUDGET, BudgetExceeded, rank_profile

DEFAULT_PRIMES = (3, 5, 7)
KINDS = ("np", "dim", "deg", "span")


@dataclass(frozen=True)
class FingerprintOptions:
    points: bool = True
    spans: bool = True
    dims: bool = True
    degrees: bool = True
    budget: int = DEFAULT_BUDGET
    threads: int | None = None
    strict: bool = False  # re-raise BudgetExceeded instead of recording None

    @classmethod
    def cheap(cls, **kw) -> "FingerprintOptions":
        """Point counts and spans only; no Groebner bases."""
        return cls(dims=False, degrees=False, **kw)


@dataclass(frozen=True)
class LocusInvariants:
    n_p: int | None
    dim: int | None
    degree: int | None
    span: int | None

    def value(self, kind: str):
        return {"np": self.n_p, "dim": self.dim, "deg": self.degree, "span": self.span}[kind]


@dataclass(frozen=True)
class PrimeInvariants:
    p: int
    derived_dim: int | None
    I: tuple
    J: tuple


@dataclass(frozen=True)
class Fingerprint:
    n: int
    d: int
    primes: tuple
    per_prime: tuple

    def at(self, p: int) -> PrimeInvariants:
        for inv in self.per_prime:
            if inv.p == p:
                return inv
        raise KeyError(p)

    def coordinates(self) -> dict:
        """Flat ``{name: value}`` view, e.g. ``np4_p5`` or ``deg3adj_p7``."""
        out = {}
        for inv in self.per_prime:
            out[f"derived_p{inv.p}"] = inv.derived_dim
            for suffix, loci in (("", inv.I), ("adj", inv.J)):
                for k, loc in enumerate(loci, start=1):
                    for kind in KINDS:
                        out[f"{kind}{k}{suffix}_p{inv.p}"] = loc.value(kind)
        return out

    def value(self, code: str, p: int):
        return self.coordinates()[f"{code}_p{p}"]


def _loci(D: LinFormMatrix, opts: FingerprintOptions) -> tuple:
    N = min(D.shape)
    counts = spans = [None] * N
    if opts.points or opts.spans:
        try:
            prof = rank_profile(D, budget=opts.budget, threads=opts.threads)
            counts = list(prof.chain_counts()) if opts.points else [None] * N
            spans = list(prof.span_dims) if opts.spans else [None] * N
        except BudgetExceeded:
            if opts.strict:
                raise
            counts = spans = [None] * N
    dims = degs = [None] * N
    if opts.dims or opts.degrees:
        rv = RankIdealVector(D)
        dims = [affine_dim(rv.ideal(k)) for k in range(1, N + 1)] if opts.dims else [None] * N
        degs = [ideal_degree(rv.ideal(k)) for k in range(1, N + 1)] if opts.degrees else [None] * N
    return tuple(LocusInvariants(counts[i], dims[i], degs[i], spans[i]) for i in range(N))


def prime_invariants(B: LinFormMatrix, opts: FingerprintOptions | None = None) -> PrimeInvariants:
    opts = opts or FingerprintOptions()
    if not B.is_skew_symmetric():
        raise ValueError("fingerprints are defined for skew-symmetric matrices")
    I = _loci(B, opts)
    J = _loci(adjoint(B), opts)
    derived = None
    if opts.dims:
        derived = B.d - I[0].dim
    elif opts.points and I[0].n_p is not None:
        # V_a(I_1) is a linear subspace, so its point count is p^dim
        derived = B.d - _log(I[0].n_p, B.p)
    return PrimeInvariants(B.p, derived, I, J)


def _log(x: int, p: int) -> int:
    e = 0
    while x > 1:
        x //= p
        e += 1
    return e


def _specialise(B, p: int) -> LinFormMatrix:
    if isinstance(B, MatrixTemplate):
        return B.at(p)
    if isinstance(B, LinFormMatrix):
        if B.p != p:
            raise ValueError(f"matrix lives over F_{B.p}; cannot evaluate at p={p}")
        return B
    raise TypeError(f"expected a LinFormMatrix or MatrixTemplate, got {type(B).__name__}")


def fingerprint(B, primes=None, options: FingerprintOptions | None = None) -> Fingerprint:
    """Invariant vector of B at each prime.

    ``B`` is a :class:`LinFormMatrix` (only its own prime is allowed) or a
    prime-generic :class:`MatrixTemplate`.
    """
    if primes is None:
        primes = (B.p,) if isinstance(B, LinFormMatrix) else DEFAULT_PRIMES
    primes = tuple(primes)
    per = tuple(prime_invariants(_specialise(B, p), options) for p in primes)
    n = B.n if isinstance(B, MatrixTemplate) else B.nrows
    return Fingerprint(n, B.d, primes, per)


# ---------------------------------------------------------------------------
# partitions


@dataclass
class PartitionReport:
    labels: list
    classes: list
    separating: list
    fingerprints: dict = field(repr=False, default_factory=dict)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def class_of(self, label) -> list:
        for c in self.classes:
            if label in c:
                return c
        raise KeyError(label)

    def as_dict(self) -> dict:
        return {
            "n_classes": len(self.classes),
            "classes": self.classes,
            "sizes": self.sizes,
            "separating_invariants": self.separating,
        }


def _fp_job(args):
    label, B, primes, options = args
    return label, fingerprint(B, primes, options)


def fingerprints_of(family, primes=None, options=None, workers: int = 1) -> dict:
    jobs = [(label, B, primes, options) for label, B in family]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return dict(pool.map(_fp_job, jobs))
    return dict(map(_fp_job, jobs))


def _canonical(value):
    return (value is None, value)


def separating_subset(reps: list[dict]) -> list[str]:
    """Greedy set cover: few coordinates that separate all the representatives."""
    names = sorted(set().union(*[r.keys() for r in reps])) if reps else []
    uncovered = {
        (a, b) for a, b in itertools.combinations(range(len(reps)), 2)
    }
    chosen: list[str] = []
    while uncovered:
        best, best_cover = None, set()
        for name in names:
            cover = {
                (a, b) for a, b in uncovered
                if _canonical(reps[a].get(name)) != _canonical(reps[b].get(name))
            }
            if len(cover) > len(best_cover):
                best, best_cover = name, cover
        if best is None:  # identical coordinate vectors cannot be separated
            break
        chosen.append(best)
        uncovered -= best_cover
    return chosen


def partition(family, primes=None, options: FingerprintOptions | None = None, workers: int = 1) -> PartitionReport:
    """Group ``(label, B)`` pairs by exact fingerprint equality."""
    family = list(family)
    labels = [label for label, _ in family]
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be unique")
    shapes = {(B.n, B.d) if isinstance(B, MatrixTemplate) else (B.nrows, B.d) for _, B in family}
    if len(shapes) > 1:
        raise ValueError(f"family mixes shapes {sorted(shapes)}")
    fps = fingerprints_of(family, primes, options, workers)
    groups: dict = {}
    for label in labels:
        groups.setdefault(fps[label], []).append(label)
    classes = sorted((sorted(c) for c in groups.values()), key=lambda c: c[0])
    reps = [fps[c[0]].coordinates() for c in classes]
    return PartitionReport(labels, classes, separating_subset(reps), fps)
