"""Prime-generic matrix families and the JSON matrix-file format.

A file looks like::

    {"n": 4, "d": 3, "p": 5,            # "p" optional
     "entries": [{"name": "B6",
                  "slices": [[[0, 1, 0, 0], ...], ...],    # d arrays of n x n ints
                  "omega_slots": [[2, 2, 4]]}]}            # optional (k, i, j), 1-based

Integer entries are reduced mod p when a prime is chosen.  Each omega
slot (k, i, j) receives the primitive element of F_p in slice k at
(i, j) and its negative at (j, i).  Variables are substituted as row
vectors, ``B(yZ)``, matching :mod:`grpinv.linforms`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .gf import primitive_element
from .linforms import LinFormMatrix


class MatrixFileError(ValueError):
    """Malformed matrix file; ``line``/``column`` are set for JSON syntax errors."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class NotSkewError(ValueError):
    def __init__(self, name: str, p: int):
        super().__init__(f"entry {name!r} is not skew-symmetric with zero diagonal over F_{p}")
        self.name = name
        self.p = p


@dataclass
class MatrixTemplate:
    """Integer slices plus omega slots, specialised to F_p by :meth:`at`."""

    name: str
    slices: np.ndarray
    omega_slots: list = field(default_factory=list)
    p: int | None = None

    @property
    def n(self) -> int:
        return self.slices.shape[1]

    @property
    def d(self) -> int:
        return self.slices.shape[0]

    def at(self, p: int, check_skew: bool = True) -> LinFormMatrix:
        s = np.array(self.slices, dtype=np.int64)
        if self.omega_slots:
            w = primitive_element(p)
            for k, i, j in self.omega_slots:
                s[k - 1, i - 1, j - 1] = w
                s[k - 1, j - 1, i - 1] = -w
        B = LinFormMatrix(s, p, "y")
        if check_skew and not B.is_skew_symmetric():
            raise NotSkewError(self.name, p)
        return B

    def padded(self, n: int, name: str | None = None) -> "MatrixTemplate":
        """Zero-pad to n x n (direct product with an elementary abelian factor)."""
        d, m, _ = self.slices.shape
        s = np.zeros((d, n, n), dtype=np.int64)
        s[:, :m, :m] = self.slices
        return MatrixTemplate(name or self.name, s, list(self.omega_slots), self.p)

    def to_json(self) -> dict:
        out = {"name": self.name, "slices": self.slices.tolist()}
        if self.omega_slots:
            out["omega_slots"] = [list(s) for s in self.omega_slots]
        return out


@dataclass
class MatrixFamily:
    n: int
    d: int
    entries: list
    p: int | None = None

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def __getitem__(self, name: str) -> MatrixTemplate:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_json(self) -> dict:
        out = {"n": self.n, "d": self.d, "entries": [e.to_json() for e in self.entries]}
        if self.p is not None:
            out["p"] = self.p
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def parse_family(text: str) -> MatrixFamily:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"malformed JSON: {exc.msg}", exc.lineno, exc.colno) from exc
    return family_from_json(doc)


def family_from_json(doc) -> MatrixFamily:
    if not isinstance(doc, dict):
        raise MatrixFileError("top level must be an object")
    try:
        n = int(doc["n"])
        d = int(doc["d"])
        raw_entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFileError(f"missing or invalid field: {exc}") from exc
    p = doc.get("p")
    entries = []
    for idx, e in enumerate(raw_entries):
        name = str(e.get("name", f"entry{idx + 1}"))
        try:
            s = np.array(e["slices"], dtype=np.int64)
        except (KeyError, ValueError, TypeError) as exc:
            raise MatrixFileError(f"entry {name!r}: bad slices ({exc})") from exc
        if s.shape != (d, n, n):
            raise MatrixFileError(f"entry {name!r}: slices have shape {s.shape}, expected {(d, n, n)}")
        slots = [tuple(int(x) for x in slot) for slot in e.get("omega_slots", [])]
        for k, i, j in slots:
            if not (1 <= k <= d and 1 <= i <= n and 1 <= j <= n and i != j):
                raise MatrixFileError(f"entry {name!r}: omega slot {(k, i, j)} out of range")
        entries.append(MatrixTemplate(name, s, slots, p))
    return MatrixFamily(n, d, entries, p)


def load_family(source: str | Path) -> MatrixFamily:
    """Load a matrix file, or a built-in family given as ``builtin:NAME``."""
    source = str(source)
    if source.startswith("builtin:"):
        return builtin_family(source.split(":", 1)[1])
    return parse_family(Path(source).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# built-in families


def _upper(n: int, d: int, entries) -> np.ndarray:
    """Skew slices from (k, i, j, c) upper-triangular entries, 1-based."""
    s = np.zeros((d, n, n), dtype=np.int64)
    for k, i, j, c in entries:
        s[k - 1, i - 1, j - 1] = c
        s[k - 1, j - 1, i - 1] = -c
    return s


# four-generator groups of order p^7 (variables x, y, z)
ORDER7 = {
    "B1": [(1, 1, 2, 1), (2, 1, 3, 1), (3, 1, 4, 1)],
    "B2": [(1, 1, 2, 1), (2, 1, 3, 1), (3, 2, 3, 1)],
    "B3": [(1, 1, 2, 1), (2, 1, 3, 1), (3, 2, 4, 1)],
    "B4": [(1, 1, 2, 1), (2, 1, 3, 1), (3, 1, 4, 1), (3, 2, 3, 1)],
    "B5": [(1, 1, 2, 1), (2, 1, 4, 1), (2, 2, 3, 1), (3, 3, 4, 1)],
    "B6": [(1, 1, 2, 1), (2, 1, 3, 1), (3, 1, 4, 1), (1, 3, 4, 1)],
}
ORDER7_OMEGA = {"B6": [(2, 2, 4)]}

# Lee's integer matrix of order p^8
LEE = [(1, 1, 4, 1), (2, 1, 5, 1), (3, 2, 4, 1), (1, 2, 5, 1), (2, 3, 4, 2), (3, 3, 5, 1)]


def order7_family() -> MatrixFamily:
    entries = [
        MatrixTemplate(name, _upper(4, 3, rel), list(ORDER7_OMEGA.get(name, [])))
        for name, rel in ORDER7.items()
    ]
    return MatrixFamily(4, 3, entries)


def order8_padded_family() -> MatrixFamily:
    """Cases (1)-(6): the order-p^7 matrices padded with a zero row and column."""
    entries = [e.padded(5, f"case{i + 1}") for i, e in enumerate(order7_family().entries)]
    return MatrixFamily(5, 3, entries)


def lee_family() -> MatrixFamily:
    return MatrixFamily(5, 3, [MatrixTemplate("Lee", _upper(5, 3, LEE))])


def _data_file(name: str) -> str | None:
    try:
        ref = resources.files("grpinv") / "data" / name
        if ref.is_file():
            return ref.read_text(encoding="utf-8")
    except (FileNotFoundError, ModuleNotFoundError):  # pragma: no cover
        return None
    return None


def order8_family() -> MatrixFamily | None:
    """All 22 cases, if the transcribed data file ``data/order8.json`` is present."""
    text = _data_file("order8.json")
    return parse_family(text) if text is not None else None


BUILTINS = {
    "order7": order7_family,
    "order8-padded": order8_padded_family,
    "lee": lee_family,
}


def builtin_family(name: str) -> MatrixFamily:
    if name == "order8":
        fam = order8_family()
        if fam is None:
            raise MatrixFileError("built-in family 'order8' needs data/order8.json, which is not shipped")
        return fam
    try:
        return BUILTINS[name]()
    except KeyError:
        raise MatrixFileError(f"unknown built-in family {name!r}; known: {sorted(BUILTINS) + ['order8']}") from None
