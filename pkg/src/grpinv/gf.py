"""Prime field arithmetic and dense linear algebra over F_p.

Scalars are carried either as :class:`Fp` values (tagged with their
field, convenient in tests and at API boundaries) or as plain ``int``
residues together with an explicit modulus, which is what the hot paths
use.  Matrices are numpy ``int64`` arrays holding canonical residues.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

MAX_MODULUS = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_modulus(p: int) -> int:
    """Validate an odd prime modulus below 2**16 and return it as ``int``."""
    p = int(p)
    if not (2 < p < MAX_MODULUS) or not is_prime(p):
        raise ValueError(f"modulus must be an odd prime below {MAX_MODULUS}, got {p}")
    return p


class PrimeField:
    """The field F_p for an odd prime ``p``."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        self.p = check_modulus(p)

    def __call__(self, value: int) -> "Fp":
        return Fp(value, self)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def elements(self):
        return [Fp(a, self) for a in range(self.p)]

    def primitive_element(self) -> "Fp":
        return Fp(primitive_element(self.p), self)


class Fp:
    """An element of F_p stored as its canonical residue."""

    __slots__ = ("value", "field")

    def __init__(self, value: int, field: PrimeField):
        self.field = field
        self.value = int(value) % field.p

    def _coerce(self, other) -> int:
        if isinstance(other, Fp):
            if other.field.p != self.field.p:
                raise ValueError(f"mixed moduli: {self.field.p} and {other.field.p}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return Fp(self.value + b, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return Fp(self.value - b, self.field)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return Fp(b - self.value, self.field)

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return Fp(self.value * b, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.field)

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self * Fp(b, self.field).inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        return Fp(pow(self.value, e, self.field.p), self.field)

    def inv(self) -> "Fp":
        return Fp(inv_mod(self.value, self.field.p), self.field)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.field.p})"


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """``table[a]`` is the inverse of ``a`` mod p; ``table[0] = 0``."""
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, -1, p)
    return table


def multiplicative_order(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ValueError("0 has no multiplicative order")
    n = p - 1
    order = n
    for q in _prime_factors(n):
        while order % q == 0 and pow(a, order // q, p) == 1:
            order //= q
    return order


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


@lru_cache(maxsize=None)
def primitive_element(p: int) -> int:
    """Smallest positive integer generating the multiplicative group of F_p."""
    p = check_modulus(p)
    for g in range(2, p):
        if multiplicative_order(g, p) == p - 1:
            return g
    raise AssertionError("unreachable for prime p")  # pragma: no cover


# ---------------------------------------------------------------------------
# dense linear algebra


def as_matrix(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def row_echelon(a, p: int, reduced: bool = True) -> tuple[np.ndarray, list[int]]:
    """Row-reduce ``a`` over F_p.

    Returns the echelon form and the list of pivot columns.  With
    ``reduced`` the pivots are 1 and their columns are cleared above as
    well as below.
    """
    m = as_matrix(a, p).copy()
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * inv_mod(int(m[r, c]), p)) % p
        target = slice(None) if reduced else slice(r + 1, None)
        col = m[target, c].copy()
        if reduced:
            col[r] = 0
        m[target] = (m[target] - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(row_echelon(a, p, reduced=False)[1])


def det(a, p: int) -> int:
    m = as_matrix(a, p).copy()
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    result = 1
    for c in range(n):
        nz = np.nonzero(m[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            m[[c, piv]] = m[[piv, c]]
            result = -result
        pv = int(m[c, c])
        result = result * pv % p
        factors = (m[c + 1:, c] * inv_mod(pv, p)) % p
        m[c + 1:] = (m[c + 1:] - np.outer(factors, m[c])) % p
    return result % p


def is_invertible(a, p: int) -> bool:
    a = np.asarray(a)
    return a.ndim == 2 and a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def inverse(a, p: int) -> np.ndarray:
    m = as_matrix(a, p)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug, pivots = row_echelon(np.hstack([m, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular over F_%d" % p)
    return aug[:, n:].copy()


def nullspace(a, p: int) -> np.ndarray:
    """Basis (as rows) of the right kernel ``{x : a @ x = 0}``."""
    m = as_matrix(a, p)
    cols = m.shape[1]
    r, pivots = row_echelon(m, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(pivots):
            basis[i, pc] = (-r[row, f]) % p
    return basis


def solve(a, b, p: int) -> np.ndarray | None:
    """One solution ``x`` of ``a @ x = b`` over F_p, or ``None``."""
    m = as_matrix(a, p)
    rhs = as_matrix(b, p).reshape(-1, 1)
    cols = m.shape[1]
    r, pivots = row_echelon(np.hstack([m, rhs]), p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, cols]
    return x


def random_invertible(n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        m = rng.integers(0, p, size=(n, n), dtype=np.int64)
        if is_invertible(m, p):
            return m


def batched_rank(mats: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of matrices ``mats[b]`` over F_p.

    Gaussian elimination run in lockstep across the batch, one column
    at a time.  Entries must be canonical residues.
    """
    a = np.array(mats, dtype=np.int64, copy=True)
    if a.ndim != 3:
        raise ValueError("expected a stack of matrices")
    batch, rows, cols = a.shape
    if rows > cols:
        a = np.ascontiguousarray(a.transpose(0, 2, 1))
        rows, cols = cols, rows
    inv = inverse_table(p)
    rk = np.zeros(batch, dtype=np.int64)
    row_ids = np.arange(rows)
    ar = np.arange(batch)
    for c in range(cols):
        cand = (a[:, :, c] != 0) & (row_ids[None, :] >= rk[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        sel = ar[has]
        pr = piv[has]
        tr = rk[has]
        if tr.max(initial=0) >= rows:
            keep = tr < rows
            sel, pr, tr = sel[keep], pr[keep], tr[keep]
        prow = a[sel, pr].copy()
        a[sel, pr] = a[sel, tr]
        prow = prow * inv[prow[:, c]][:, None] % p
        a[sel, tr] = prow
        factors = a[sel, :, c].copy()
        factors[np.arange(sel.size), tr] = 0
        a[sel] = (a[sel] - factors[:, :, None] * prow[:, None, :]) % p
        rk[sel] += 1
    return rk
