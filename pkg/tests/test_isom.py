import numpy as np
import pytest

from grpinv import gf
from grpinv.groups import GroupSpec
from grpinv.isom import (
    IsoWitness,
    gl_batches,
    gl_elements,
    gl_order,
    group_map,
    isomorphic_bruteforce,
    verify_witness,
    witness_identities,
)
from grpinv.linforms import LinFormMatrix, random_skew, transform
from tests.conftest import order7_at


@pytest.mark.parametrize("n,p", [(1, 3), (2, 3), (2, 5), (3, 3)])
def test_gl_enumeration_exact(n, p):
    G = gl_elements(n, p)
    assert len(G) == gl_order(n, p)
    assert len({g.tobytes() for g in G}) == len(G)
    assert (gf.batched_rank(G, p) == n).all()


def test_gl_order_values():
    assert gl_order(2, 3) == 48 and gl_order(3, 3) == 11232 and gl_order(4, 3) == 24261120


def test_constructed_pairs_are_isomorphic(rng):
    for _ in range(20):
        B = random_skew(3, 2, 3, rng)
        C = transform(B, gf.random_invertible(3, 3, rng), gf.random_invertible(2, 3, rng))
        res = isomorphic_bruteforce(B, C)
        assert res.status == "isomorphic" and res.isomorphic
        assert verify_witness(B, C, res.witness)
        assert witness_identities(B, C, res.witness) == (True, True)


def test_self_isomorphic():
    B = order7_at(3)["B5"]
    res = isomorphic_bruteforce(B, B, budget=10**12)
    assert res.isomorphic
    assert verify_witness(B, B, IsoWitness(np.eye(4, dtype=int), np.eye(3, dtype=int)))


def _one_form(rank: int) -> LinFormMatrix:
    s = np.zeros((1, 4, 4), dtype=np.int64)
    for i in range(0, rank, 2):
        s[0, i, i + 1] = 1
        s[0, i + 1, i] = -1
    return LinFormMatrix(s, 3)


@pytest.mark.slow
def test_rank_two_and_rank_four_forms_differ():
    res = isomorphic_bruteforce(_one_form(2), _one_form(4))
    assert res.status == "non-isomorphic" and res.isomorphic is False
    assert res.searched == gl_order(4, 3)


def test_same_rank_forms_isomorphic():
    res = isomorphic_bruteforce(_one_form(4), _one_form(4))
    assert res.isomorphic


def test_non_isomorphic_small_pair():
    # derived subgroups of different size
    a = np.zeros((2, 3, 3), dtype=np.int64)
    a[0, 0, 1], a[0, 1, 0] = 1, 2
    b = a.copy()
    b[1, 0, 2], b[1, 2, 0] = 1, 2
    res = isomorphic_bruteforce(LinFormMatrix(a, 3), LinFormMatrix(b, 3))
    assert res.status == "non-isomorphic"


def test_budget_exceeded_is_explicit():
    B = order7_at(3)["B1"]
    res = isomorphic_bruteforce(B, order7_at(3)["B6"])
    assert res.status == "budget-exceeded" and res.isomorphic is None
    assert res.required == gl_order(4, 3) * gl_order(3, 3)


def test_input_checks():
    with pytest.raises(ValueError):
        isomorphic_bruteforce(order7_at(3)["B1"], order7_at(5)["B1"])
    with pytest.raises(ValueError):
        isomorphic_bruteforce(LinFormMatrix.zeros(2, 3, 1, 3), LinFormMatrix.zeros(2, 3, 1, 3))


def test_verify_witness_rejects_singular():
    B = order7_at(3)["B1"]
    with pytest.raises(ValueError):
        verify_witness(B, B, IsoWitness(np.zeros((4, 4), dtype=int), np.eye(3, dtype=int)))


def test_random_witness_between_distinct_classes_fails(rng):
    # B1 and B6 have different fingerprints, so no (X, Z) can work
    p = 5
    B1, B6 = order7_at(p)["B1"], order7_at(p)["B6"]
    for _ in range(200):
        w = IsoWitness(gf.random_invertible(4, p, rng), gf.random_invertible(3, p, rng))
        assert witness_identities(B1, B6, w) == (False, False)


def test_identities_agree_on_random_candidates(rng):
    p = 3
    for _ in range(200):
        B = random_skew(3, 2, p, rng)
        C = random_skew(3, 2, p, rng)
        w = IsoWitness(gf.random_invertible(3, p, rng), gf.random_invertible(2, p, rng))
        a, b = witness_identities(B, C, w)
        assert a == b


def test_witness_induces_group_isomorphism(rng):
    p = 3
    for _ in range(5):
        B = random_skew(3, 2, p, rng)
        C = transform(B, gf.random_invertible(3, p, rng), gf.random_invertible(2, p, rng))
        res = isomorphic_bruteforce(B, C)
        assert res.isomorphic
        GB, GC = GroupSpec(B), GroupSpec(C)
        phi = group_map(GB, res.witness)
        for _ in range(50):
            g = GB.element(rng.integers(0, p, 3), rng.integers(0, p, 2))
            h = GB.element(rng.integers(0, p, 3), rng.integers(0, p, 2))
            assert phi(GB.mul(g, h)) == GC.mul(phi(g), phi(h))
