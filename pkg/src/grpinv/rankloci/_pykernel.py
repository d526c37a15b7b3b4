"""Pure numpy rank-enumeration kernel, used when the extension is unavailable."""

from __future__ import annotations

import numpy as np

from ..gf import batched_rank, row_echelon

BATCH = 1 << 15


def _points(p: int, d: int, lead: int, start: int, stop: int) -> np.ndarray:
    L = d - 1 - lead
    idx = np.arange(start, stop, dtype=np.int64)
    pts = np.zeros((idx.size, d), dtype=np.int64)
    if lead >= 0:
        pts[:, lead] = 1
    for j in range(L - 1, -1, -1):
        pts[:, lead + 1 + j] = idx % p
        idx = idx // p
    return pts


def _extend_basis(basis: np.ndarray, pts: np.ndarray, p: int) -> np.ndarray:
    if basis.shape[0] == basis.shape[1]:
        return basis
    ech, pivots = row_echelon(np.vstack([basis, pts]), p)
    return ech[: len(pivots)]


def scan_range(slices, p: int, lead: int, start: int, stop: int):
    """Same contract as the compiled ``scan_range``."""
    S = np.ascontiguousarray(slices, dtype=np.int64) % p
    d, m, n = S.shape
    N = min(m, n)
    counts = np.zeros(N + 1, dtype=np.int64)
    bases = [np.zeros((0, d), dtype=np.int64) for _ in range(max(N, 1))]
    for lo in range(start, stop, BATCH):
        hi = min(stop, lo + BATCH)
        pts = _points(p, d, lead, lo, hi)
        mats = np.tensordot(pts, S, axes=1) % p
        ranks = batched_rank(mats, p)
        counts += np.bincount(ranks, minlength=N + 1)[: N + 1]
        for k in range(N):
            sel = pts[ranks <= k]
            if sel.size:
                bases[k] = _extend_basis(bases[k], sel, p)
    basis = np.zeros((max(N, 1), d, d), dtype=np.int64)
    sizes = np.zeros(max(N, 1), dtype=np.int64)
    for k, b in enumerate(bases):
        basis[k, : b.shape[0]] = b
        sizes[k] = b.shape[0]
    return counts, basis, sizes
