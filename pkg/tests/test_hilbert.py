from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grpinv import gf
from grpinv.hilbert import (
    HilbertSeries,
    affine_dim,
    hilbert_numerator,
    hilbert_poly,
    hilbert_series,
    ideal_degree,
)
from grpinv.ideals import RankIdealVector
from grpinv.linforms import random_skew
from grpinv.poly import IdealBasis, Poly, Ring, groebner, monomials_of_degree
from tests.conftest import ng5, order7_at
from tests.test_poly import homogeneous_ideals


def graded_dim_oracle(R: Ring, gens, s: int) -> int:
    """dim (R/I)_s by linear algebra on degree-s multiples of the generators."""
    mons = monomials_of_degree(R.nvars, s)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for g in gens:
        dg = g.degree()
        if dg > s:
            continue
        for m in monomials_of_degree(R.nvars, s - dg):
            row = np.zeros(len(mons), dtype=np.int64)
            for gm, c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(gm, m))]] = c
            rows.append(row)
    r = gf.rank(np.array(rows), R.p) if rows else 0
    return len(mons) - r


def test_zero_ideal_polynomial():
    R = Ring(5, 3)
    ib = IdealBasis(R, [])
    hp = hilbert_poly(ib)
    for s in range(10):
        assert hp(s) == Fraction((s + 2) * (s + 1), 2)
    assert affine_dim(ib) == 3
    assert ideal_degree(ib) == 1


def test_maximal_ideal_polynomial():
    R = Ring(5, 3)
    ib = groebner(R.gens())
    assert hilbert_poly(ib).is_zero()
    assert affine_dim(ib) == 0
    assert ideal_degree(ib) == 0


def test_hyperplane_polynomial():
    R = Ring(5, 3)
    ib = groebner([R.var(0)])
    hp = hilbert_poly(ib)
    assert hp.coeffs == (Fraction(1), Fraction(1))  # t + 1
    assert ideal_degree(ib) == 1


def test_unit_ideal_has_no_dimension():
    R = Ring(5, 2)
    ib = groebner([R.one()])
    assert hilbert_series(ib).is_zero()
    with pytest.raises(ValueError):
        affine_dim(ib)


def test_non_homogeneous_rejected():
    R = Ring(5, 2)
    ib = groebner([R.var(0) ** 2 + R.var(1)])
    with pytest.raises(ValueError):
        hilbert_poly(ib)


def test_ng5_chain_dims_and_degrees():
    for p in (3, 5, 7):
        rv = RankIdealVector(ng5(p))
        assert rv.affine_dims() == [0, 1, 2]
        assert rv.degrees() == [0, 1, 3]


def test_monomial_numerator_examples():
    # (x^2) in 2 vars: (1 - t^2)
    assert hilbert_numerator([(2, 0)], 2) == [1, 0, -1]
    # (xy, xz) in 3 vars: 1 - 2t^2 + t^3
    assert hilbert_numerator([(1, 1, 0), (1, 0, 1)], 3) == [1, 0, -2, 1]
    hs = HilbertSeries.from_monomials([(1, 1, 0), (1, 0, 1)], 3)
    assert hs.dim == 2 and hs.degree() == 1


@settings(max_examples=50, deadline=None)
@given(homogeneous_ideals(max_vars=4))
def test_series_matches_graded_dimension_oracle(ideal):
    R, gens = ideal
    ib = groebner(gens, ring=R)
    hs = hilbert_series(ib)
    for s in range(9):
        assert hs.coefficient(s) == graded_dim_oracle(R, gens, s)


@settings(max_examples=50, deadline=None)
@given(homogeneous_ideals(max_vars=4))
def test_polynomial_agrees_with_function_for_large_degree(ideal):
    R, gens = ideal
    ib = groebner(gens, ring=R)
    hs = hilbert_series(ib)
    hp = hilbert_poly(ib)
    start = len(hs.numerator)
    for s in range(start, start + 6):
        assert hp(s) == hs.coefficient(s)
    # leading-term ideal has the same Hilbert polynomial
    lt = IdealBasis(R, [Poly(R, {m: 1}) for m in ib.leading_monomials()])
    assert hilbert_poly(lt) == hp


@settings(max_examples=40, deadline=None)
@given(homogeneous_ideals(p=5, max_vars=4), st.integers(0, 2**32))
def test_dim_and_degree_invariant_under_linear_substitution(ideal, seed):
    R, gens = ideal
    ib = groebner(gens, ring=R)
    Z = gf.random_invertible(R.nvars, R.p, np.random.default_rng(seed))
    images = [R.linear_form(Z[:, i]) for i in range(R.nvars)]
    moved = groebner([g.substitute(images) for g in gens], ring=R)
    if hilbert_series(ib).is_zero():
        assert hilbert_series(moved).is_zero()
        return
    assert affine_dim(moved) == affine_dim(ib)
    assert ideal_degree(moved) == ideal_degree(ib)


def test_order8_padded_degrees():
    from grpinv.families import order8_padded_family
    for p in (3, 5, 7):
        degs = [RankIdealVector(e.at(p)).degree(4) for e in order8_padded_family().entries]
        assert degs == [1, 1, 4, 4, 4, 4]
