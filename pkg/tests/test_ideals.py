import itertools

import numpy as np
import pytest

from grpinv import gf
from grpinv.ideals import RankIdealVector, minors, rank_ideal_vector, vanishes_at
from grpinv.linforms import LinFormMatrix, adjoint, pfaffian, random_skew
from grpinv.poly import groebner
from tests.conftest import ng5, order7_at


def test_ng5_minor_examples():
    D = ng5(7)
    R = D.ring()
    z1, z2, z3 = R.gens()
    assert set(minors(D, 1)) == {z1, z2, z3}
    assert minors(D, 3) == [z1 * z2 * z3]


def test_odd_skew_top_minor_vanishes(rng):
    for n in (3, 5):
        B = random_skew(n, 3, 5, rng)
        assert minors(B, n) == []
        assert RankIdealVector(B).ideal(n).is_zero()


def test_k_out_of_range():
    with pytest.raises(ValueError):
        minors(ng5(5), 0)
    with pytest.raises(ValueError):
        minors(ng5(5), 4)
    with pytest.raises(ValueError):
        RankIdealVector(ng5(5)).ideal(4)


def test_dedupe_keeps_one_of_each_sign_pair(rng):
    B = random_skew(4, 2, 7, rng)
    full = minors(B, 2, dedupe=False)
    short = minors(B, 2)
    assert len(short) <= len(full)
    assert groebner(short).groebner == groebner(full).groebner


def test_rank_ideal_vector_examples():
    rv = rank_ideal_vector(ng5(5))
    assert rv.affine_dims() == [0, 1, 2]
    Z = LinFormMatrix.zeros(3, 3, 2, 5)
    rv0 = RankIdealVector(Z)
    assert all(rv0.ideal(k).is_zero() for k in (1, 2, 3))
    assert rv0.affine_dims() == [2, 2, 2]
    assert rv0.degrees() == [1, 1, 1]


@pytest.mark.parametrize("p", [3, 5])
def test_b5_adjoint_rank3_points(p):
    gens = minors(adjoint(order7_at(p)["B5"]), 3)
    count = sum(vanishes_at(gens, v) for v in itertools.product(range(p), repeat=4))
    assert count == p**3 + p**2 - p


def _random_lin(rng, m, n, d, p):
    return LinFormMatrix(rng.integers(0, p, (d, m, n)), p)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_rank_minor_equivalence_exhaustive(p):
    rng = np.random.default_rng(p)
    mats = [ng5(p)] + [_random_lin(rng, *map(int, rng.integers(1, 4, 2)), int(rng.integers(1, 4)), p) for _ in range(6)]
    mats += [random_skew(4, 3, p, rng) for _ in range(2)]
    for D in mats:
        N = min(D.shape)
        gens = {k: minors(D, k) for k in range(1, N + 1)}
        for v in itertools.product(range(p), repeat=D.d):
            r = gf.rank(D.evaluate(v), p)
            inside = [vanishes_at(gens[k], v) for k in range(1, N + 1)]
            assert inside == [r < k for k in range(1, N + 1)]
            # chain V_1 in V_2 in ...
            assert all(not a or b for a, b in zip(inside, inside[1:]))


@pytest.mark.parametrize("p", [3, 5])
def test_even_skew_top_ideal_is_pfaffian_squared(p, rng):
    for n in (2, 4):
        for _ in range(5):
            B = random_skew(n, 3, p, rng)
            R = B.ring()
            pf = pfaffian(B, R)
            top = RankIdealVector(B).ideal(n)
            sq = groebner([pf * pf], ring=R) if not pf.is_zero() else None
            if sq is None:
                assert top.is_zero()
                continue
            assert all(sq.contains(g) for g in top.generators)
            assert all(top.contains(g) for g in sq.generators)


def test_groebner_cache_shared_across_threads():
    from concurrent.futures import ThreadPoolExecutor
    rv = RankIdealVector(order7_at(5)["B4"])
    with ThreadPoolExecutor(4) as pool:
        out = list(pool.map(lambda _: rv.ideal(4), range(8)))
    assert all(o is out[0] for o in out)
