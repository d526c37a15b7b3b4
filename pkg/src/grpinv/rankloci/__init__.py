"""Exhaustive enumeration of F_p-points of rank loci.

For a matrix of linear forms D in d variables, every v in F_p^d is
classified by rank D(v).  Scaling v by a nonzero scalar keeps the rank,
so only one representative per punctured line is evaluated (the vector
whose first nonzero coordinate is 1) and its count is weighted by p - 1;
the origin is added separately.

The scan itself runs in ``scan_range``, taken from the compiled
extension when it imports and from the numpy fallback otherwise.  Set
``GRPINV_BACKEND=python`` to force the fallback.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..gf import row_echelon
from ..linforms import LinFormMatrix, adjoint
from . import _pykernel

try:  # pragma: no cover - depends on the build
    from . import _kernel
except ImportError:  # pragma: no cover
    _kernel = None

BACKENDS = {"python": _pykernel.scan_range}
if _kernel is not None:
    BACKENDS["cython"] = _kernel.scan_range

if os.environ.get("GRPINV_BACKEND", "").lower() == "python" or _kernel is None:
    DEFAULT_BACKEND = "python"
else:
    DEFAULT_BACKEND = "cython"

DEFAULT_BUDGET = 10**9
CHUNK = 1 << 17


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration would exceed its point budget."""

    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} points, budget is {budget}")
        self.required = required
        self.budget = budget


def default_threads() -> int:
    env = os.environ.get("GRPINV_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class RankProfile:
    """Rank histogram of D over F_p^d and span dimensions of the rank loci.

    ``counts[r]`` is the number of points of rank exactly r;
    ``span_dims[k - 1]`` is the dimension of the F_p-span of V_a(I_k).
    """

    p: int
    d: int
    counts: tuple
    span_dims: tuple

    @property
    def N(self) -> int:
        return len(self.counts) - 1

    def n_p(self, k: int) -> int:
        """Number of F_p-points of V_a(I_k), i.e. points of rank < k."""
        if not 1 <= k <= self.N:
            raise ValueError(f"k must lie in 1..{self.N}")
        return sum(self.counts[:k])

    def chain_counts(self) -> tuple:
        return tuple(self.n_p(k) for k in range(1, self.N + 1))

    def span_dim(self, k: int) -> int:
        return self.span_dims[k - 1]


def _chunks(d: int, p: int, projective: bool, chunk: int):
    if projective:
        leads = range(d)
    else:
        leads = [-1]
    for lead in leads:
        total = p ** (d - 1 - lead)
        for lo in range(0, total, chunk):
            yield lead, lo, min(total, lo + chunk)


def merge_bases(parts: list[np.ndarray], d: int, p: int) -> np.ndarray:
    rows = [b for b in parts if b.size]
    if not rows:
        return np.zeros((0, d), dtype=np.int64)
    ech, pivots = row_echelon(np.vstack(rows), p)
    return ech[: len(pivots)]


def rank_profile(
    D: LinFormMatrix,
    p: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    projective: bool = True,
    threads: int | None = None,
    backend: str | None = None,
    chunk: int = CHUNK,
) -> RankProfile:
    """Exact rank histogram of D(v) over all v in F_p^d."""
    if p is not None and p != D.p:
        raise ValueError(f"matrix lives over F_{D.p}, not F_{p}")
    p = D.p
    d = D.d
    required = p**d
    if required > budget:
        raise BudgetExceeded(required, budget)
    scan = BACKENDS[backend or DEFAULT_BACKEND]
    threads = threads or default_threads()
    N = min(D.shape)
    slices = np.ascontiguousarray(D.slices)
    jobs = list(_chunks(d, p, projective, chunk))

    def run(job):
        return scan(slices, p, *job)

    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]

    raw = np.zeros(N + 1, dtype=np.int64)
    per_level: list[list[np.ndarray]] = [[] for _ in range(N)]
    for counts, basis, sizes in results:
        raw += counts
        for k in range(N):
            per_level[k].append(basis[k, : sizes[k]])
    if projective:
        counts = raw * (p - 1)
        counts[0] += 1
    else:
        counts = raw
    spans = tuple(merge_bases(per_level[k], d, p).shape[0] for k in range(N))
    return RankProfile(p, d, tuple(int(c) for c in counts), spans)


def adjoint_rank_profile(B: LinFormMatrix, p: int | None = None, **kwargs) -> RankProfile:
    """Rank profile of the adjoint B^(x), i.e. the breadth data of G_B."""
    return rank_profile(adjoint(B), p, **kwargs)


def chain_counts(D: LinFormMatrix, p: int | None = None, **kwargs) -> tuple:
    """(n_p(I_1), ..., n_p(I_N)) for D."""
    return rank_profile(D, p, **kwargs).chain_counts()
