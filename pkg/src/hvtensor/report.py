"""Structured check reports with a fixed JSON layout."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .exact import Scalar

VERSION = "0.1.0"

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


def jsonable(x: Any) -> Any:
    """Convert exact values to JSON-safe data; scalars become strings."""
    if isinstance(x, (Scalar, Fraction)):
        return str(x) if isinstance(x, Scalar) else str(Scalar(x))
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)


@dataclass
class Check:
    name: str
    inputs: Any
    expected: Any
    actual: Any
    ok: Optional[bool]  # None marks an inconclusive check

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "inputs": jsonable(self.inputs),
            "expected": jsonable(self.expected),
            "actual": jsonable(self.actual),
            "ok": self.ok,
        }


@dataclass
class Report:
    status: str
    checks: list = field(default_factory=list)
    counterexample: Any = None
    seed: Optional[int] = None
    version: str = VERSION

    @classmethod
    def from_checks(cls, checks, counterexample=None, seed=None) -> "Report":
        if any(c.ok is False for c in checks):
            status = FAIL
        elif any(c.ok is None for c in checks):
            status = INCONCLUSIVE
        else:
            status = PASS
        return cls(status, list(checks), counterexample, seed)

    @classmethod
    def merge(cls, reports, seed=None, prefix=None) -> "Report":
        checks, counter = [], None
        for i, r in enumerate(reports):
            for c in r.checks:
                name = f"{prefix[i]}/{c.name}" if prefix else c.name
                checks.append(Check(name, c.inputs, c.expected, c.actual, c.ok))
            if counter is None and r.counterexample is not None:
                counter = r.counterexample
        return cls.from_checks(checks, counterexample=counter, seed=seed)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "checks": [c.to_json() for c in self.checks],
            "counterexample": jsonable(self.counterexample),
            "version": self.version,
            "seed": self.seed,
        }


def emit_report(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_json(), separators=(",", ":")) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown report format {fmt!r}")
    lines = [f"status: {report.status}"]
    for c in report.checks:
        mark = {True: "ok  ", False: "FAIL", None: "??  "}[c.ok]
        lines.append(f"  [{mark}] {c.name}: expected {jsonable(c.expected)}, got {jsonable(c.actual)}")
    if report.counterexample is not None:
        lines.append(f"counterexample: {json.dumps(jsonable(report.counterexample))}")
    lines.append(f"seed: {report.seed}  version: {report.version}")
    return ("\n".join(lines) + "\n").encode()
