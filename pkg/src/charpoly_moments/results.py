"""Serializable output records (JSON Lines and CSV)."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import mpmath

PROVENANCE = ("exact", "closed-form", "numeric", "mc", "check")
CSV_FIELDS = ("quantity", "parameters", "value", "provenance", "details")


def format_value(value, digits: int = 30) -> str:
    """Exact rationals as 'p/q' (never floated), mpmath numbers to ``digits``."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, Fraction)):
        f = Fraction(value)
        return f"{f.numerator}/{f.denominator}"
    if isinstance(value, (mpmath.mpf, mpmath.mpc)) or hasattr(value, "_mpf_"):  # includes constants like pi
        return mpmath.nstr(+value, digits)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (Fraction, mpmath.mpf, mpmath.mpc)):
        return format_value(v)
    return v


@dataclass(frozen=True)
class OutputRecord:
    quantity: str
    parameters: dict
    value: str
    provenance: str
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        object.__setattr__(self, "parameters", {k: _plain(v) for k, v in self.parameters.items()})
        object.__setattr__(self, "details", {k: _plain(v) for k, v in self.details.items()})

    @classmethod
    def make(cls, quantity, parameters, value, provenance, shown: int = 30, **details):
        return cls(quantity, dict(parameters), format_value(value, shown), provenance, details)

    def to_dict(self) -> dict:
        return {"quantity": self.quantity, "parameters": self.parameters, "value": self.value,
                "provenance": self.provenance, "details": self.details}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "OutputRecord":
        return cls(d["quantity"], d["parameters"], d["value"], d["provenance"], d.get("details", {}))


def to_jsonl(records: Iterable[OutputRecord]) -> str:
    return "".join(r.to_json() + "\n" for r in records)


def from_jsonl(text: str) -> list[OutputRecord]:
    return [OutputRecord.from_dict(json.loads(line)) for line in text.splitlines() if line.strip()]


def to_csv(records: Iterable[OutputRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in records:
        w.writerow([r.quantity, json.dumps(r.parameters, sort_keys=True), r.value, r.provenance,
                    json.dumps(r.details, sort_keys=True)])
    return buf.getvalue()


def from_csv(text: str) -> list[OutputRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_FIELDS:
        raise ValueError("missing or malformed CSV header")
    return [OutputRecord(q, json.loads(p), v, prov, json.loads(d)) for q, p, v, prov, d in rows[1:]]
