"""q-expansion fixtures and table rendering (text, CSV, structured JSON).

Fixture grammar, one statement per line::

    # comment to end of line
    label <free text>
    level <int>
    weight <int>
    character quadratic <modulus>
    minpoly <c0> <c1> <c2>          # c0 + c1*x + c2*x^2, must be monic
    coeff <n> <a> <b>               # a_n = a + b*alpha, a and b int or int/int

For ``minpoly c0 0 1`` the fixture's alpha is used directly with
alpha^2 = -c0. With a linear term, coefficients are rewritten in terms of
beta = 2*alpha + c1, whose square is the discriminant.
"""

from __future__ import annotations

import csv
import io as _stdio
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Sequence

from .bigmath import Factorization
from .numberfield import QuadFieldElem
from .qseries import QSeries
from .scan import CandidateReport
from .sturm import CongruenceReport, Level1Report, NormRow, SturmBound

__all__ = [
    "Fixture",
    "FixtureError",
    "Table",
    "parse_fixture",
    "emit_fixture",
    "load_fixture",
    "bundled_fixture_path",
    "as_table",
    "emit",
    "FORMATS",
]

FORMATS = ("text", "csv", "structured")
BUNDLED = {"fchi.qexp"}


class FixtureError(ValueError):
    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class Fixture:
    label: str
    level: int
    weight: int
    character: int
    minpoly: tuple[int, int, int]
    rows: tuple[tuple[int, Fraction, Fraction], ...]

    @property
    def D(self) -> int:
        c0, c1, _ = self.minpoly
        return -c0 if c1 == 0 else c1 * c1 - 4 * c0

    def coefficient(self, n: int) -> QuadFieldElem:
        for m, a, b in self.rows:
            if m == n:
                break
        else:
            if n == 0:
                return QuadFieldElem(0, 0, self.D)
            raise KeyError(n)
        c1 = self.minpoly[1]
        if c1:
            a, b = a - b * Fraction(c1, 2), b / 2
        return QuadFieldElem(a, b, self.D)

    @property
    def precision(self) -> int:
        return max(n for n, _, _ in self.rows) + 1

    def to_qseries(self) -> QSeries:
        return QSeries(
            tuple(self.coefficient(n) for n in range(self.precision)),
            weight=self.weight,
            level=self.level,
            character=self.character,
            name=self.label,
        )


def _parse_rational(token: str) -> Fraction:
    num, sep, den = token.partition("/")
    if sep and (not den.lstrip("-").isdigit() or int(den) == 0):
        raise ValueError(f"bad rational {token!r}")
    if not num.lstrip("-").isdigit():
        raise ValueError(f"bad rational {token!r}")
    return Fraction(int(num), int(den) if sep else 1)


def _parse_int(token: str) -> int:
    if not token.lstrip("-").isdigit():
        raise ValueError(f"expected an integer, got {token!r}")
    return int(token)


def parse_fixture(text: str) -> Fixture:
    """Parse fixture text; every malformed line is reported with its number."""
    errors: list[str] = []
    header: dict[str, Any] = {}
    rows: dict[int, tuple[Fraction, Fraction]] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        args = rest.split()
        try:
            if key == "label":
                if not rest.strip():
                    raise ValueError("empty label")
                value: Any = rest.strip()
            elif key in ("level", "weight"):
                if len(args) != 1:
                    raise ValueError(f"{key} takes one integer")
                value = _parse_int(args[0])
                if value < 1:
                    raise ValueError(f"{key} must be positive")
            elif key == "character":
                if len(args) != 2 or args[0] != "quadratic":
                    raise ValueError("expected 'character quadratic <modulus>'")
                value = _parse_int(args[1])
            elif key == "minpoly":
                coeffs = tuple(_parse_int(t) for t in args)
                if len(coeffs) != 3:
                    raise ValueError(f"minpoly must have degree 2, got {len(coeffs)} coefficients")
                if coeffs[2] != 1:
                    raise ValueError("minpoly must be monic")
                c0, c1, _ = coeffs
                disc = c1 * c1 - 4 * c0
                if disc >= 0 and math.isqrt(disc) ** 2 == disc:
                    raise ValueError("minpoly is reducible over Q")
                value = coeffs
            elif key == "coeff":
                if len(args) != 3:
                    raise ValueError("expected 'coeff <n> <a> <b>'")
                n = _parse_int(args[0])
                if n < 0:
                    raise ValueError("coefficient index must be nonnegative")
                if n in rows:
                    raise ValueError(f"duplicate coefficient n={n}")
                rows[n] = (_parse_rational(args[1]), _parse_rational(args[2]))
                continue
            else:
                raise ValueError(f"unknown statement {key!r}")
            if key in header:
                raise ValueError(f"duplicate {key} line")
            header[key] = value
        except ValueError as exc:
            errors.append(f"line {lineno}: {exc}")

    for key in ("label", "level", "weight", "character", "minpoly"):
        if key not in header:
            errors.append(f"missing {key} line")
    if not rows:
        errors.append("no coeff lines")
    else:
        indices = sorted(rows)
        start = indices[0]
        if start not in (0, 1) or indices != list(range(start, start + len(indices))):
            errors.append("coefficient indices must be contiguous and start at 0 or 1")
    if errors:
        raise FixtureError(errors)
    return Fixture(
        label=header["label"],
        level=header["level"],
        weight=header["weight"],
        character=header["character"],
        minpoly=header["minpoly"],
        rows=tuple((n, *rows[n]) for n in sorted(rows)),
    )


def emit_fixture(fixture: Fixture) -> str:
    lines = [
        f"label {fixture.label}",
        f"level {fixture.level}",
        f"weight {fixture.weight}",
        f"character quadratic {fixture.character}",
        "minpoly " + " ".join(map(str, fixture.minpoly)),
    ]
    lines += [f"coeff {n} {a} {b}" for n, a, b in fixture.rows]
    return "\n".join(lines) + "\n"


def bundled_fixture_path(name: str) -> Path:
    return Path(str(resources.files("eiscong") / "data" / name))


def load_fixture(path: str | Path) -> Fixture:
    """Read a fixture file; a bare bundled name such as ``fchi.qexp`` also works."""
    p = Path(path)
    if not p.exists() and p.name == str(path) and p.name in BUNDLED:
        p = bundled_fixture_path(p.name)
    return parse_fixture(p.read_text(encoding="utf-8"))


# -- tables -----------------------------------------------------------------


@dataclass(frozen=True)
class Table:
    title: str
    columns: tuple[str, ...]
    rows: tuple[tuple[Any, ...], ...]
    meta: tuple[tuple[str, Any], ...] = ()


def _cell_text(value: Any, sep: str) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Factorization):
        return value.render(sep)
    if isinstance(value, (tuple, list)):
        return " ".join(_cell_text(v, sep) for v in value)
    return str(value)


def _cell_json(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return {"numerator": value.numerator, "denominator": value.denominator}
    if isinstance(value, Factorization):
        return {"sign": value.sign, "factors": [[p, e] for p, e in value.factors]}
    if isinstance(value, QuadFieldElem):
        return {"a": _cell_json(value.a), "b": _cell_json(value.b), "D": value.D}
    if isinstance(value, (tuple, list)):
        return [_cell_json(v) for v in value]
    raise TypeError(f"cannot render {type(value).__name__}")


def _render_text(table: Table) -> str:
    out = [f"# {table.title}"]
    out += [f"{k}: {_cell_text(v, '·')}" for k, v in table.meta]
    out.append(" | ".join(table.columns))
    out += [" | ".join(_cell_text(c, "·") for c in row) for row in table.rows]
    return "\n".join(out) + "\n"


def _render_csv(table: Table) -> str:
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_cell_text(c, "*") for c in row])
    return buf.getvalue()


def _render_structured(table: Table) -> str:
    tree = {
        "title": table.title,
        "meta": {k: _cell_json(v) for k, v in table.meta},
        "columns": list(table.columns),
        "rows": [
            {col: _cell_json(cell) for col, cell in zip(table.columns, row)} for row in table.rows
        ],
    }
    return json.dumps(tree, indent=2, ensure_ascii=False) + "\n"


def emit(obj: Any, fmt: str = "text") -> str:
    """Render a :class:`Table` or any report with an :func:`as_table` view."""
    table = obj if isinstance(obj, Table) else as_table(obj)
    if fmt == "text":
        return _render_text(table)
    if fmt == "csv":
        return _render_csv(table)
    if fmt == "structured":
        return _render_structured(table)
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


@singledispatch
def as_table(obj: Any) -> Table:
    raise TypeError(f"no table view for {type(obj).__name__}")


@as_table.register
def _(obj: list) -> Table:
    if obj and isinstance(obj[0], CandidateReport):
        return candidates_table(obj)
    if obj and isinstance(obj[0], NormRow):
        return norm_table(obj)
    raise TypeError("no table view for this list")


@as_table.register
def _(obj: CandidateReport) -> Table:
    return candidates_table([obj])


@as_table.register
def qseries_table(obj: QSeries) -> Table:
    meta = [("series", obj.name), ("weight", obj.weight), ("level", obj.level)]
    if obj.character is not None:
        meta.append(("character", f"quadratic mod {obj.character}"))
    return Table(
        "q-expansion",
        ("n", "a_n"),
        tuple((n, c) for n, c in enumerate(obj.coefficients)),
        tuple(meta),
    )


@as_table.register
def sturm_table(obj: SturmBound) -> Table:
    return Table(
        "Sturm bound",
        ("weight", "level", "index", "bound", "cutoff"),
        ((obj.weight, obj.level, obj.index, obj.bound, obj.cutoff),),
    )


@as_table.register
def congruence_table(obj: CongruenceReport) -> Table:
    verdict = "pass" if obj.passed else "FAIL"
    result = f"{verdict}, root {obj.root}" if obj.root is not None else verdict
    meta = [
        ("prime", obj.prime),
        ("mode", obj.mode),
        ("root", obj.root),
        ("sturm bound", obj.sturm.bound),
        ("checked n", f"0..{obj.sturm.cutoff}"),
        ("result", result),
    ]
    meta += [(f"note {i + 1}", note) for i, note in enumerate(obj.notes)]
    if obj.mode == "norm":
        columns = ("n", "difference", "norm", "factorization", "checked", "verdict", "note")
        rows = tuple(
            (
                r.n,
                r.difference,
                r.norm,
                r.factorization if r.factorization is not None else 0,
                r.checked,
                "pass" if r.passed else "FAIL",
                r.note,
            )
            for r in obj.rows
        )
    else:
        columns = ("n", "difference", "residue", "checked", "verdict")
        rows = tuple(
            (r.n, r.difference, r.residue, r.checked, "pass" if r.passed else "FAIL")
            for r in obj.rows
        )
    return Table(f"congruence mod {obj.prime}", columns, rows, tuple(meta))


@as_table.register
def level1_table(obj: Level1Report) -> Table:
    c = obj.congruence
    meta = (
        ("prime", obj.ell),
        ("weight", obj.weight),
        ("sturm bound", c.sturm.bound),
        ("coefficients compared", f"0..{len(c.rows) - 1}"),
        ("all coefficients congruent", c.all_rows_pass),
        ("result", "pass" if obj.passed else "FAIL"),
    )
    rows = tuple(
        (r.p, r.coefficient, r.target, r.residue, "pass" if r.passed else "FAIL")
        for r in obj.prime_rows
    )
    return Table(
        f"a_p = p^{obj.weight - 1} + 1 mod {obj.ell}",
        ("p", "a_p", f"p^{obj.weight - 1}+1", "difference mod l", "verdict"),
        rows,
        meta,
    )


def candidates_table(reports: Iterable[CandidateReport]) -> Table:
    reports = list(reports)
    source = reports[0].source if reports else "zeta"
    if source == "zeta":
        title, value_col = "zeta(2m)/pi^2m numerators", "N_2m"
    else:
        p = reports[0].modulus
        title, value_col = f"p*B_2m,chi numerators, p = {p}", "p*B_2m,chi"
    return Table(
        title,
        ("2m", value_col, "factorization", "threshold", "candidates"),
        tuple(
            (r.two_m, r.numerator, r.factorization, r.threshold, r.candidates) for r in reports
        ),
    )


def norm_table(rows: Iterable[NormRow]) -> Table:
    return Table(
        "norms of coefficient differences",
        ("n", "difference", "norm", "factorization", "flag"),
        tuple(
            (
                r.n,
                r.difference,
                r.norm,
                r.factorization if r.factorization is not None else 0,
                "rational difference; norm is its square" if r.flagged else "",
            )
            for r in rows
        ),
    )
