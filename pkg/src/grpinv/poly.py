"""Sparse multivariate polynomials over F_p and Groebner bases.

A polynomial is a dict mapping exponent tuples to nonzero residues mod
p.  :class:`Poly` wraps such a dict together with its :class:`Ring`;
the Buchberger loop works on the bare dicts to stay cheap.
"""

from __future__ import annotations

import heapq

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .gf import check_modulus, inv_mod

Monomial = tuple


@dataclass(frozen=True)
class Ring:
    """F_p[x_1..x_n] with display names for the variables."""

    p: int
    nvars: int
    names: tuple = ()

    def __post_init__(self):
        check_modulus(self.p)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"z{i + 1}" for i in range(self.nvars)))
        elif len(self.names) != self.nvars:
            raise ValueError("one name per variable required")

    @classmethod
    def with_prefix(cls, p: int, nvars: int, prefix: str) -> "Ring":
        return cls(p, nvars, tuple(f"{prefix}{i + 1}" for i in range(nvars)))

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: 1})

    def const(self, c: int) -> "Poly":
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def linear_form(self, coeffs: Sequence[int]) -> "Poly":
        if len(coeffs) != self.nvars:
            raise ValueError("coefficient vector has wrong length")
        terms = {}
        for i, c in enumerate(coeffs):
            c = int(c) % self.p
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        return Poly(self, terms)


class MonomialOrder:
    """grevlex or lex, optionally after permuting the variables.

    ``key(m)`` returns a tuple such that larger keys are larger monomials.
    """

    KINDS = ("grevlex", "lex")

    def __init__(self, kind: str = "grevlex", perm: Sequence[int] | None = None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.perm = tuple(perm) if perm is not None else None
        self.key = lru_cache(maxsize=1 << 18)(self._key)

    def _key(self, m: Monomial) -> tuple:
        if self.perm is not None:
            m = tuple(m[i] for i in self.perm)
        if self.kind == "lex":
            return m
        return (sum(m),) + tuple(-e for e in reversed(m))

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.perm) == (other.kind, other.perm)

    def __hash__(self):
        return hash((self.kind, self.perm))

    def __repr__(self):
        return f"MonomialOrder({self.kind!r})" if self.perm is None else f"MonomialOrder({self.kind!r}, {self.perm})"


GREVLEX = MonomialOrder("grevlex")


def _as_order(order) -> MonomialOrder:
    if order is None:
        return GREVLEX
    if isinstance(order, str):
        return GREVLEX if order == "grevlex" else MonomialOrder(order)
    return order


class Poly:
    """Element of ``ring``; ``terms`` maps exponent tuples to residues."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: dict | None = None):
        self.ring = ring
        p = ring.p
        clean = {}
        if terms:
            for m, c in terms.items():
                c = int(c) % p
                if c:
                    clean[tuple(m)] = c
        self.terms = clean

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Poly":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.ring.p != self.ring.p or other.ring.nvars != self.ring.nvars:
            raise ValueError("ring mismatch")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        return Poly._raw(self.ring, _add(self.terms, other.terms, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly._raw(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        return Poly._raw(self.ring, _mul(self.terms, other.terms, self.ring.p))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c: int) -> "Poly":
        p = self.ring.p
        c = int(c) % p
        if c == 0:
            return self.ring.zero()
        return Poly._raw(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring.p == other.ring.p and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring.p, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def leading_monomial(self, order=None) -> Monomial:
        return max(self.terms, key=_as_order(order).key)

    def leading_coefficient(self, order=None) -> int:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order=None) -> "Poly":
        if not self.terms:
            return self
        return self.scale(inv_mod(self.leading_coefficient(order), self.ring.p))

    def __call__(self, point: Sequence[int]) -> int:
        return evaluate(self.terms, point, self.ring.p)

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Replace variable ``i`` by ``images[i]`` (all in a common ring)."""
        if len(images) != self.ring.nvars:
            raise ValueError("one image per variable required")
        target = images[0].ring
        out = target.zero()
        for m, c in self.terms.items():
            t = target.const(c)
            for i, e in enumerate(m):
                if e:
                    t = t * images[i] ** e
            out = out + t
        return out

    def sorted_terms(self, order=None) -> list:
        return sorted(self.terms.items(), key=lambda mc: _as_order(order).key(mc[0]), reverse=True)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for m, c in self.sorted_terms():
            mon = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts)


def _add(f: dict, g: dict, p: int) -> dict:
    out = dict(f)
    for m, c in g.items():
        v = (out.get(m, 0) + c) % p
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _mul(f: dict, g: dict, p: int) -> dict:
    out: dict = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = (out.get(m, 0) + c1 * c2) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def evaluate(terms: dict, point: Sequence[int], p: int) -> int:
    total = 0
    for m, c in terms.items():
        t = c
        for x, e in zip(point, m):
            if e:
                t = t * pow(int(x), e, p) % p
        total += t
    return total % p


# ---------------------------------------------------------------------------
# division and Buchberger


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class _Elem:
    """A basis polynomial with its cached leading data."""

    __slots__ = ("terms", "lm", "lc")

    def __init__(self, terms: dict, key):
        self.terms = terms
        self.lm = max(terms, key=key)
        self.lc = terms[self.lm]


def _normal_form(f: dict, basis: Sequence[_Elem], p: int, key) -> dict:
    """Full reduction of ``f`` modulo ``basis``: no remainder term is divisible by a leading monomial."""
    f = dict(f)
    rem: dict = {}
    while f:
        m = max(f, key=key)
        c = f[m]
        for g in basis:
            lm = g.lm
            if all(x <= y for x, y in zip(lm, m)):
                q = tuple(y - x for x, y in zip(lm, m))
                coef = c * inv_mod(g.lc, p) % p
                for gm, gc in g.terms.items():
                    t = tuple(a + b for a, b in zip(gm, q))
                    v = (f.get(t, 0) - coef * gc) % p
                    if v:
                        f[t] = v
                    else:
                        f.pop(t, None)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def reduce(f: Poly, basis: Iterable[Poly], order=None) -> Poly:
    """Remainder of ``f`` on multivariate division by ``basis``."""
    key = _as_order(order).key
    elems = []
    for g in basis:
        f._check(g)
        if g.terms:
            elems.append(_Elem(g.terms, key))
    return Poly._raw(f.ring, _normal_form(f.terms, elems, f.ring.p, key))


def _spoly(a: _Elem, b: _Elem, p: int) -> dict:
    l = _lcm(a.lm, b.lm)
    qa = tuple(x - y for x, y in zip(l, a.lm))
    qb = tuple(x - y for x, y in zip(l, b.lm))
    ca = inv_mod(a.lc, p)
    cb = inv_mod(b.lc, p)
    out: dict = {}
    for m, c in a.terms.items():
        t = tuple(x + y for x, y in zip(m, qa))
        out[t] = c * ca % p
    for m, c in b.terms.items():
        t = tuple(x + y for x, y in zip(m, qb))
        v = (out.get(t, 0) - c * cb) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _buchberger(gens: list[dict], p: int, order: MonomialOrder) -> list[dict]:
    key = order.key
    basis: list[_Elem] = []
    pairs: set[tuple[int, int]] = set()
    queue: list = []  # heap of (key(lcm), j, i); mirrors ``pairs``

    def add(poly: dict):
        new = _Elem(poly, key)
        k = len(basis)
        basis.append(new)
        for i in range(k):
            pairs.add((i, k))
            heapq.heappush(queue, (key(_lcm(basis[i].lm, new.lm)), k, i))

    # homogeneous input: process generators in degree order so low-degree work comes first
    for g in sorted(gens, key=lambda t: key(max(t, key=key))):
        r = _normal_form(g, basis, p, key)
        if r:
            add(r)

    while queue:
        _, j, i = heapq.heappop(queue)
        pairs.discard((i, j))
        a, b = basis[i], basis[j]
        l = _lcm(a.lm, b.lm)
        # product criterion: coprime leading monomials
        if all(x == 0 or y == 0 for x, y in zip(a.lm, b.lm)):
            continue
        # chain criterion
        skip = False
        for k, c in enumerate(basis):
            if k == i or k == j:
                continue
            if _divides(c.lm, l):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik not in pairs and pjk not in pairs:
                    skip = True
                    break
        if skip:
            continue
        r = _normal_form(_spoly(a, b, p), basis, p, key)
        if r:
            add(r)

    # reduce: drop redundant leading monomials, interreduce, make monic
    elems = [e for e in basis]
    minimal = []
    for e in sorted(elems, key=lambda e: key(e.lm)):
        if not any(_divides(m.lm, e.lm) for m in minimal):
            minimal.append(e)
    reduced = []
    for idx, e in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        head = {e.lm: e.lc}
        tail = {m: c for m, c in e.terms.items() if m != e.lm}
        r = _normal_form(tail, others, p, key)
        r.update(head)
        inv = inv_mod(e.lc, p)
        reduced.append({m: c * inv % p for m, c in r.items()})
    reduced.sort(key=lambda t: key(max(t, key=key)))
    return reduced


@dataclass
class IdealBasis:
    """Generators of an ideal, with an optional reduced Groebner basis."""

    ring: Ring
    generators: list
    order: MonomialOrder = field(default_factory=lambda: GREVLEX)
    groebner: list | None = None

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]
        for g in self.generators:
            if g.ring.p != self.ring.p or g.ring.nvars != self.ring.nvars:
                raise ValueError("generator from a different ring")

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def compute_groebner(self) -> list:
        if self.groebner is None:
            polys = _buchberger([g.terms for g in self.generators], self.ring.p, self.order)
            self.groebner = [Poly._raw(self.ring, t) for t in polys]
        return self.groebner

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.compute_groebner()]

    def contains(self, f: Poly) -> bool:
        return reduce(f, self.compute_groebner(), self.order).is_zero()

    def is_unit(self) -> bool:
        zero = (0,) * self.ring.nvars
        return any(m == zero for m in self.leading_monomials())


def groebner(gens: Sequence[Poly], order=None, ring: Ring | None = None) -> IdealBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    ib = IdealBasis(ring, list(gens), _as_order(order))
    ib.compute_groebner()
    return ib


def s_polynomial(f: Poly, g: Poly, order=None) -> Poly:
    key = _as_order(order).key
    return Poly._raw(f.ring, _spoly(_Elem(f.terms, key), _Elem(g.terms, key), f.ring.p))


def monomials_of_degree(nvars: int, deg: int) -> list[Monomial]:
    out = []
    for cut in itertools.combinations(range(deg + nvars - 1), nvars - 1):
        prev = -1
        e = []
        for c in cut:
            e.append(c - prev - 1)
            prev = c
        e.append(deg + nvars - 1 - prev - 1)
        out.append(tuple(e))
    return out
