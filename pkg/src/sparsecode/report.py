"""Verification reports with exact rational entries, and their JSON/CSV forms.

Rationals are written as ``{"num": "...", "den": "..."}`` with decimal
strings so that no JSON parser truncates large integers.  A float copy is
added for convenience and ignored on reading.
"""

from __future__ import annotations

import csv
import io
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .errors import ParseError

RELATIONS = {
    "<=": operator.le,
    "<": operator.lt,
    "==": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}


@dataclass(frozen=True)
class ReportRow:
    """One exact comparison ``lhs <relation> rhs``.

    ``passed`` is None for gated rows, whose hypothesis did not hold so the
    claim was not evaluated.  Only ``hard`` rows decide the overall verdict;
    the rest are informational (asymptotic claims at a fixed n).
    """

    check: str
    lhs: Fraction
    rhs: Fraction
    relation: str = "<="
    passed: bool | None = None
    hard: bool = True
    note: str = ""

    @classmethod
    def compare(cls, check: str, lhs, rhs, relation: str = "<=", *, hard: bool = True,
                note: str = "") -> ReportRow:
        lhs, rhs = Fraction(lhs), Fraction(rhs)
        return cls(check, lhs, rhs, relation, RELATIONS[relation](lhs, rhs), hard, note)

    @classmethod
    def gated(cls, check: str, note: str, lhs=0, rhs=0, relation: str = "<=") -> ReportRow:
        return cls(check, Fraction(lhs), Fraction(rhs), relation, None, False, note)

    @property
    def status(self) -> str:
        if self.passed is None:
            return "gated"
        return "pass" if self.passed else "fail"


@dataclass
class VerificationReport:
    rows: list[ReportRow] = field(default_factory=list)

    def add(self, row: ReportRow) -> ReportRow:
        self.rows.append(row)
        return row

    def extend(self, other: VerificationReport | Iterable[ReportRow]) -> None:
        self.rows.extend(other.rows if isinstance(other, VerificationReport) else other)

    @property
    def ok(self) -> bool:
        """True iff no hard row failed."""
        return not self.hard_failures

    @property
    def hard_failures(self) -> list[ReportRow]:
        return [r for r in self.rows if r.hard and r.passed is False]

    @property
    def failures(self) -> list[ReportRow]:
        return [r for r in self.rows if r.passed is False]

    def named(self, prefix: str) -> list[ReportRow]:
        return [r for r in self.rows if r.check.startswith(prefix)]

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def rational_to_json(x) -> dict[str, Any]:
    x = Fraction(x)
    try:
        approx = float(x)
    except OverflowError:
        approx = None
    return {"num": str(x.numerator), "den": str(x.denominator), "float": approx}


def rational_from_json(obj) -> Fraction:
    try:
        return Fraction(int(obj["num"]), int(obj["den"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad rational {obj!r}") from exc


def row_to_json(row: ReportRow) -> dict[str, Any]:
    return {
        "check": row.check,
        "lhs": rational_to_json(row.lhs),
        "rhs": rational_to_json(row.rhs),
        "relation": row.relation,
        "status": row.status,
        "hard": row.hard,
        "note": row.note,
    }


def row_from_json(obj: dict[str, Any]) -> ReportRow:
    try:
        status = obj["status"]
        passed = None if status == "gated" else status == "pass"
        return ReportRow(obj["check"], rational_from_json(obj["lhs"]),
                         rational_from_json(obj["rhs"]), obj["relation"], passed,
                         bool(obj["hard"]), obj.get("note", ""))
    except KeyError as exc:
        raise ParseError(f"report row missing field {exc}") from exc


def report_to_json(report: VerificationReport) -> list[dict[str, Any]]:
    return [row_to_json(r) for r in report.rows]


def report_from_json(rows: list[dict[str, Any]]) -> VerificationReport:
    return VerificationReport([row_from_json(r) for r in rows])


CSV_FIELDS = ["checkName", "lhs_num", "lhs_den", "rhs_num", "rhs_den", "relation",
              "pass", "hard", "note"]


def report_to_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in report.rows:
        writer.writerow([r.check, r.lhs.numerator, r.lhs.denominator, r.rhs.numerator,
                         r.rhs.denominator, r.relation, r.status, int(r.hard), r.note])
    return buf.getvalue()
