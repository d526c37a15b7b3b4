"""Command-line front end: ``grpinv {invariants,partition,verify,isotest,adjoint}``.

Exit codes: 0 success, 2 malformed input or usage, 3 non-skew entry,
4 budget exceeded.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass

import numpy as np

from .families import MatrixFamily, MatrixFileError, NotSkewError, load_family
from .fingerprint import FingerprintOptions, fingerprint, partition
from .gf import is_prime
from .groups import GroupSpec, structural_report
from .isom import DEFAULT_BUDGET as ISO_BUDGET
from .isom import isomorphic_bruteforce
from .linforms import adjoint
from .rankloci import DEFAULT_BUDGET, BudgetExceeded

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_SKEW = 3
EXIT_BUDGET = 4

NA = "NA"
NOT_COMPUTED = "n/a"

_CODE = re.compile(r"^(np|dim|deg|span)(\d+)(adj)?$")
_UNSUPPORTED = re.compile(r"^(degprim|nprim|irr)(\d+)(adj)?$")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class InvariantCode:
    text: str
    kind: str  # np, dim, deg, span, derived or unsupported
    k: int = 0
    adj: bool = False


def parse_codes(spec: str) -> list[InvariantCode]:
    codes = []
    for raw in spec.split(","):
        raw = raw.strip()
        if not raw:
            continue
        if raw == "derived":
            codes.append(InvariantCode(raw, "derived"))
        elif m := _CODE.match(raw):
            if int(m.group(2)) < 1:
                raise UsageError(f"invariant index must be positive: {raw}")
            codes.append(InvariantCode(raw, m.group(1), int(m.group(2)), bool(m.group(3))))
        elif _UNSUPPORTED.match(raw):
            codes.append(InvariantCode(raw, "unsupported"))
        else:
            raise UsageError(f"unknown invariant code {raw!r}")
    if not codes:
        raise UsageError("no invariants requested")
    return codes


def parse_primes(spec: str) -> list[int]:
    try:
        primes = [int(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad prime list {spec!r}") from None
    for p in primes:
        if p == 2 or not is_prime(p) or p >= 1 << 16:
            raise UsageError(f"{p} is not an odd prime below 2^16")
    if not primes:
        raise UsageError("empty prime list")
    return primes


def _resolve_primes(arg: str | None, family: MatrixFamily) -> list[int]:
    if arg:
        return parse_primes(arg)
    if family.p is not None:
        return parse_primes(str(family.p))
    raise UsageError("the input has no prime; pass --primes")


# ---------------------------------------------------------------------------
# rendering


def _cell(value) -> str:
    if value is None:
        return NA
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _parse_cell(text: str):
    if text == NA:
        return None
    if text in ("true", "false"):
        return text == "true"
    if re.fullmatch(r"-?\d+", text):
        return int(text)
    return text


def render(rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{c: r.get(c) for c in columns} for r in rows], sort_keys=True, indent=1) + "\n"
    table = [[_cell(r.get(c)) for c in columns] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(table)
        return buf.getvalue()
    widths = [max(len(c), *(len(row[i]) for row in table)) if table else len(c) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(wd) for c, wd in zip(columns, widths)).rstrip()]
    lines += ["  ".join(x.ljust(wd) for x, wd in zip(row, widths)).rstrip() for row in table]
    return "\n".join(lines) + "\n"


def csv_to_json(text: str) -> list[dict]:
    """Rows of a CSV table as JSON-ready dicts ("NA" becomes null)."""
    reader = csv.DictReader(io.StringIO(text))
    return [{k: _parse_cell(v) for k, v in row.items()} for row in reader]


# ---------------------------------------------------------------------------
# commands


def _options_for(codes: list[InvariantCode], budget: int) -> FingerprintOptions:
    kinds = {c.kind for c in codes}
    return FingerprintOptions(
        points="np" in kinds,
        spans="span" in kinds,
        dims="dim" in kinds or "derived" in kinds,
        degrees="deg" in kinds,
        budget=budget,
        strict=True,
    )


def _lookup(fp, code: InvariantCode, p: int):
    if code.kind == "unsupported":
        return NOT_COMPUTED
    inv = fp.at(p)
    if code.kind == "derived":
        return inv.derived_dim
    loci = inv.J if code.adj else inv.I
    if code.k > len(loci):
        return None
    return loci[code.k - 1].value(code.kind)


def cmd_invariants(args) -> tuple[list[dict], list[str]]:
    family = load_family(args.input)
    primes = _resolve_primes(args.primes, family)
    codes = parse_codes(args.invariants)
    opts = _options_for(codes, args.budget)
    columns = ["name"] + [f"{c.text}_p{p}" for p in primes for c in codes]
    rows = []
    for entry in family.entries:
        fp = fingerprint(entry, primes, opts)
        row = {"name": entry.name}
        for p in primes:
            for c in codes:
                row[f"{c.text}_p{p}"] = _lookup(fp, c, p)
        rows.append(row)
    return rows, columns


def cmd_partition(args) -> tuple[list[dict], list[str]]:
    family = load_family(args.input)
    primes = _resolve_primes(args.primes, family)
    opts = FingerprintOptions(budget=args.budget, strict=True)
    if args.cheap:
        opts = FingerprintOptions.cheap(budget=args.budget, strict=True)
    report = partition([(e.name, e) for e in family.entries], primes, opts, workers=args.workers)
    print(f"{len(report.classes)} classes from {len(report.labels)} matrices", file=sys.stderr)
    columns = ["name", "class", "class_size"] + report.separating
    index = {label: i + 1 for i, cls in enumerate(report.classes) for label in cls}
    rows = []
    for label in sorted(report.labels, key=lambda x: (index[x], x)):
        coords = report.fingerprints[label].coordinates()
        row = {"name": label, "class": index[label], "class_size": len(report.class_of(label))}
        row.update({s: coords.get(s) for s in report.separating})
        rows.append(row)
    return rows, columns


def cmd_verify(args) -> tuple[list[dict], list[str]]:
    family = load_family(args.input)
    primes = _resolve_primes(args.prime, family)
    columns = ["name", "p", "order", "class", "derived_dim", "centre_dim", "exponent_p", "enumerated"]
    rows = []
    for p in primes:
        for entry in family.entries:
            spec = GroupSpec(entry.at(p))
            rep = structural_report(spec, cross_check=True, budget=args.enum_budget)
            if rep.nilpotency_class < 2:
                print(f"warning: {entry.name} at p={p} has class {rep.nilpotency_class}, not 2", file=sys.stderr)
            row = {"name": entry.name}
            row.update({k: v for k, v in rep.as_dict().items() if k in columns})
            row["exponent_p"] = rep.exponent_ok
            row["enumerated"] = rep.checked_by_enumeration
            rows.append(row)
    return rows, columns


def _matrix_text(m: np.ndarray) -> str:
    return ";".join(" ".join(str(int(x)) for x in row) for row in m)


def cmd_isotest(args) -> tuple[list[dict], list[str]]:
    family = load_family(args.input)
    try:
        a, b = (x.strip() for x in args.pair.split(","))
    except ValueError:
        raise UsageError("--pair expects two names separated by a comma") from None
    try:
        ta, tb = family[a], family[b]
    except KeyError as exc:
        raise UsageError(f"no entry named {exc.args[0]!r}") from None
    primes = _resolve_primes(args.prime, family)
    columns = ["pair", "p", "status", "X", "Z", "searched"]
    rows = []
    exceeded = False
    for p in primes:
        res = isomorphic_bruteforce(ta.at(p), tb.at(p), budget=args.budget)
        row = {"pair": f"{a}:{b}", "p": p, "status": res.status, "X": None, "Z": None, "searched": res.searched}
        if res.witness is not None:
            row["X"] = _matrix_text(res.witness.X)
            row["Z"] = _matrix_text(res.witness.Z)
        if res.status == "budget-exceeded":
            print(f"budget exceeded at p={p}: needs {res.required}, budget {args.budget}", file=sys.stderr)
            exceeded = True
        rows.append(row)
    if exceeded:
        args._exit = EXIT_BUDGET
    return rows, columns


def cmd_adjoint(args) -> str:
    family = load_family(args.input)
    p = int(args.prime) if args.prime else family.p
    if p is None:
        if any(e.omega_slots for e in family.entries):
            raise UsageError("omega slots need a prime; pass --prime")
        entries = [
            {"name": e.name, "slices": np.ascontiguousarray(e.slices.transpose(2, 1, 0)).tolist()}
            for e in family.entries
        ]
    else:
        parse_primes(str(p))
        entries = [{"name": e.name, "slices": adjoint(e.at(p)).slices.tolist()} for e in family.entries]
    doc = {"n": family.n, "m": family.d, "d": family.n, "entries": entries}
    if p is not None:
        doc["p"] = p
    return json.dumps(doc, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grpinv", description="Isomorphism invariants of class-2 exponent-p groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, primes_flag="--primes"):
        sp.add_argument("--input", required=True, help="matrix file, or builtin:NAME")
        sp.add_argument(primes_flag, dest="primes" if primes_flag == "--primes" else "prime",
                        help="comma-separated odd primes (default: the file's p)")

    sp = sub.add_parser("invariants", help="tabulate invariants per matrix")
    common(sp)
    sp.add_argument("--invariants", default="np1,np2,np3,np4",
                    help="codes like np4, np3adj, deg4, dim2, span3, derived")
    sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max points per enumeration")
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("partition", help="group matrices by equal fingerprints")
    common(sp)
    sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--workers", type=int, default=1, help="processes for fingerprinting")
    sp.add_argument("--cheap", action="store_true", help="point counts and spans only")
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("verify", help="structural report per matrix")
    common(sp, "--prime")
    sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
    sp.add_argument("--enum-budget", type=int, default=10**6, help="max group size for enumeration")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("isotest", help="brute-force isomorphism test of two entries")
    common(sp, "--prime")
    sp.add_argument("--pair", required=True, help="two entry names, A,B")
    sp.add_argument("--format", choices=("text", "csv", "json"), default="text")
    sp.add_argument("--budget", type=int, default=ISO_BUDGET, help="max |GL_n| * |GL_d|")
    sp.set_defaults(func=cmd_isotest)

    sp = sub.add_parser("adjoint", help="emit the adjoint matrices as JSON")
    sp.add_argument("--input", required=True)
    sp.add_argument("--prime", help="reduce mod this prime and fill omega slots")
    sp.set_defaults(func=cmd_adjoint)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    args._exit = EXIT_OK
    try:
        result = args.func(args)
    except MatrixFileError as exc:
        where = f" (line {exc.line}, column {exc.column})" if exc.line is not None else ""
        print(f"error: {exc}{where}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotSkewError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_SKEW
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if isinstance(result, str):
        sys.stdout.write(result)
    else:
        rows, columns = result
        sys.stdout.write(render(rows, columns, args.format))
    return args._exit


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
