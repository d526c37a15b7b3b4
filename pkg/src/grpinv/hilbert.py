"""Hilbert series, Hilbert polynomial, dimension and degree of homogeneous ideals.

Everything is read off the leading-term ideal of a Groebner basis.  The
numerator of the Hilbert series of a monomial ideal comes from the pivot
recursion

    N(I) = N(I + (x)) + t * N(I : x)

with coprime generator sets as the base case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .poly import IdealBasis, Monomial


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def minimalize(gens) -> tuple:
    """Minimal generators of a monomial ideal, sorted."""
    out: list[Monomial] = []
    for m in sorted(set(map(tuple, gens)), key=lambda m: (sum(m), m)):
        if not any(all(x <= y for x, y in zip(g, m)) for g in out):
            out.append(m)
    return tuple(sorted(out))


@lru_cache(maxsize=1 << 16)
def _numerator(gens: tuple) -> tuple:
    if not gens:
        return (1,)
    if any(sum(m) == 0 for m in gens):
        return (0,)
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in gens]
    counts: dict[int, int] = {}
    overlap = False
    seen: set = set()
    for s in supports:
        if s & seen:
            overlap = True
        seen |= s
        for i in s:
            counts[i] = counts.get(i, 0) + 1
    if not overlap:
        out = [1]
        for m in gens:
            f = [0] * (sum(m) + 1)
            f[0] = 1
            f[-1] -= 1
            out = _poly_mul(out, f)
        return tuple(_trim(out))
    var = max(counts, key=lambda i: (counts[i], -i))
    unit = tuple(1 if i == var else 0 for i in range(len(gens[0])))
    plus = minimalize([m for m in gens if m[var] == 0] + [unit])
    colon = minimalize([tuple(e - 1 if i == var and e > 0 else e for i, e in enumerate(m)) for m in gens])
    left = list(_numerator(plus))
    right = [0] + list(_numerator(colon))
    return tuple(_poly_add(left, right))


def hilbert_numerator(monomials, nvars: int) -> list[int]:
    """Numerator N(t) with HS(R/I) = N(t) / (1 - t)^nvars for a monomial ideal."""
    gens = minimalize(monomials)
    if gens and len(gens[0]) != nvars:
        raise ValueError("monomial length does not match variable count")
    return list(_numerator(gens))


def _divide_one_minus_t(a: list[int]) -> list[int]:
    # a(t) = (1 - t) q(t), assuming a(1) == 0; q_i = a_0 + ... + a_i
    q = []
    acc = 0
    for x in a[:-1]:
        acc += x
        q.append(acc)
    return _trim(q) if q else [0]


@dataclass(frozen=True)
class HilbertSeries:
    """HS(t) = numerator(t) / (1 - t)^dim with numerator(1) != 0 (or zero series)."""

    numerator: tuple
    dim: int

    @classmethod
    def from_monomials(cls, monomials, nvars: int) -> "HilbertSeries":
        num = hilbert_numerator(monomials, nvars)
        if num == [0]:
            return cls((0,), 0)
        dim = nvars
        while dim > 0 and sum(num) == 0:
            num = _divide_one_minus_t(num)
            dim -= 1
        return cls(tuple(num), dim)

    def is_zero(self) -> bool:
        return self.numerator == (0,)

    def coefficient(self, s: int) -> int:
        """dim_K (R/I)_s."""
        if s < 0:
            return 0
        if self.dim == 0:
            return self.numerator[s] if s < len(self.numerator) else 0
        return sum(q * comb(s - i + self.dim - 1, self.dim - 1) for i, q in enumerate(self.numerator) if s >= i)

    def degree(self) -> int:
        return sum(self.numerator)


@dataclass(frozen=True)
class HilbertPolynomial:
    """Polynomial in one variable with rational coefficients, lowest degree first."""

    coeffs: tuple

    def __call__(self, s) -> Fraction:
        return sum((c * Fraction(s) ** i for i, c in enumerate(self.coeffs)), Fraction(0))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading_coefficient(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*t^{i}" for i, c in reversed(list(enumerate(self.coeffs))) if c)


def _binomial_poly(shift: int, k: int) -> list[Fraction]:
    """Coefficients of C(t + shift, k) as a polynomial in t."""
    out = [Fraction(1)]
    for j in range(k):
        out = _frac_mul(out, [Fraction(shift - j), Fraction(1)])
    f = factorial(k)
    return [c / f for c in out]


def _frac_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def hilbert_polynomial_from_series(hs: HilbertSeries) -> HilbertPolynomial:
    if hs.is_zero() or hs.dim == 0:
        return HilbertPolynomial(())
    total = [Fraction(0)] * hs.dim
    for i, q in enumerate(hs.numerator):
        if q:
            for j, c in enumerate(_binomial_poly(hs.dim - 1 - i, hs.dim - 1)):
                total[j] += q * c
    while total and total[-1] == 0:
        total.pop()
    return HilbertPolynomial(tuple(total))


def _require(ideal: IdealBasis):
    if not ideal.is_homogeneous():
        raise ValueError("Hilbert polynomial requires a homogeneous ideal")


def hilbert_series(ideal: IdealBasis) -> HilbertSeries:
    _require(ideal)
    return HilbertSeries.from_monomials(ideal.leading_monomials(), ideal.ring.nvars)


def hilbert_poly(ideal: IdealBasis) -> HilbertPolynomial:
    """Hilbert polynomial of R/I."""
    return hilbert_polynomial_from_series(hilbert_series(ideal))


def affine_dim(ideal: IdealBasis) -> int:
    """Dimension of the affine cone V_a(I); 0 when only the origin survives."""
    hs = hilbert_series(ideal)
    if hs.is_zero():
        raise ValueError("the unit ideal has an empty variety")
    return hs.dim


def ideal_degree(ideal: IdealBasis) -> int:
    """m! times the leading coefficient of the Hilbert polynomial, m its degree.

    0 when the projective variety is empty; 1 for the zero ideal.
    """
    hp = hilbert_poly(ideal)
    if hp.is_zero():
        return 0
    value = hp.leading_coefficient() * factorial(hp.degree)
    assert value.denominator == 1
    return int(value)
