"""Shared fixtures and independent oracles."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from grpinv import gf
from grpinv.families import order7_family
from grpinv.linforms import LinFormMatrix


def order7_counts(p: int) -> dict:
    """(n_p(I_4(B)), n_p(I_3(B^))) per order-p^7 matrix."""
    return {
        "B1": (p**3, p**3),
        "B2": (p**3, p**4),
        "B3": (2 * p**2 - p, 2 * p**3 - p**2),
        "B4": (p**2, p**3),
        "B5": (p**2, p**3 + p**2 - p),
        "B6": (p, p**2),
    }


def order8_padded_expected(p: int) -> dict:
    """(n_p(I_4), deg(I_4), n_p(I_3(B^))) for the padded cases (1)-(6)."""
    return {
        "case1": (p**3, 1, p**4),
        "case2": (p**3, 1, p**5),
        "case3": (2 * p**2 - p, 4, 2 * p**4 - p**3),
        "case4": (p**2, 4, p**4),
        "case5": (p**2, 4, p**4 + p**3 - p**2),
        "case6": (p, 4, p**3),
    }


def order8_signatures(p: int) -> set:
    """All (n_p(I_4), deg(I_4), n_p(I_3(B^))) rows of the 22-case table."""
    return {
        (p**3, 1, p**4), (p**3, 1, p**5), (2 * p * p - p, 4, 2 * p**4 - p**3), (p * p, 4, p**4),
        (p * p, 4, p**4 + p**3 - p * p), (p, 4, p**3), (1, 9, p**3), (1, 6, p**3 - p * p + p),
        (1, 0, p**3), (p, 10, p**3), (p, 9, 2 * p**3 - p * p), (p, 6, 2 * p**3 - p * p),
        (p, 9, 2 * p**3 - p * p), (p, 3, 2 * p**3 - p), (2 * p - 1, 9, 3 * p**3 - 2 * p * p),
        (2 * p - 1, 6, 3 * p**3 - p * p - p), (3 * p - 2, 9, 4 * p**3 - 3 * p * p),
        (p * p + p - 1, 2, p**4 + p**3 - p * p), (p * p, 2, p**4), (p * p, 2, p**4 + p**3 - p * p),
    }


def ng5(p: int) -> LinFormMatrix:
    """[[z1, z3, z2], [0, z2, 0], [0, 0, z3]]."""
    s = np.zeros((3, 3, 3), dtype=np.int64)
    s[0, 0, 0] = 1
    s[2, 0, 1] = 1
    s[1, 0, 2] = 1
    s[1, 1, 1] = 1
    s[2, 2, 2] = 1
    return LinFormMatrix(s, p)


def order7_at(p: int) -> dict:
    return {e.name: e.at(p) for e in order7_family().entries}


def naive_rank_counts(D: LinFormMatrix) -> list[int]:
    """Histogram of rank D(v) over all v, one plain elimination per point."""
    N = min(D.shape)
    counts = [0] * (N + 1)
    for v in itertools.product(range(D.p), repeat=D.d):
        counts[gf.rank(D.evaluate(v), D.p)] += 1
    return counts


def naive_span_dims(D: LinFormMatrix) -> list[int]:
    N = min(D.shape)
    pts = [[] for _ in range(N)]
    for v in itertools.product(range(D.p), repeat=D.d):
        r = gf.rank(D.evaluate(v), D.p)
        for k in range(r + 1, N + 1):
            pts[k - 1].append(v)
    return [gf.rank(np.array(P), D.p) if P else 0 for P in pts]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# acceptance summary ------------------------------------------------------------


def pytest_terminal_summary(terminalreporter):
    from tests.acceptance_log import CRITERIA

    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=lambda k: (int(k.split("-")[0]), k)):
        status, detail = CRITERIA[key]
        terminalreporter.write_line(f"criterion {key}: {status}  {detail}")
