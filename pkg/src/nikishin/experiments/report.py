"""Report persistence and the keyed human-readable summary."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

__all__ = ["CHECKS", "Check", "LIMITATION", "dumps_report", "write_report", "write_text",
           "summary_text"]

# stable identifiers for each certified statement
CHECKS = {
    "T1": "random linear forms in 1, s^_{1,1}, ..., s^_{1,m} have at most |n|-1 zeros off Delta_1",
    "T2": "approximants meet their orthogonality conditions; mixed-type forms have exactly "
          "|n2| simple zeros inside the root hull",
    "T3": "every mixed-type index is normal and its solution space is one-dimensional",
    "C1": "forms built along complete index sequences are biorthogonal (zero off the "
          "equal-norm band, nonzero on it)",
    "C2": "type II approximants P_k/Q converge to s^_{0,k} on the grid",
    "C3": "zeros of consecutive forms along the diagonal interlace",
    "L4": "1/s^ splits into a linear part plus the transform of a measure of opposite sign",
    "ID": "measure-algebra identities hold exactly at the sample points",
}

LIMITATION = ("note: results are certified for the listed finite index budgets and atomic "
              "stand-ins only; infinite index families and continuous weights are outside "
              "what a finite computation can certify.")


@dataclass
class Check:
    key: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = CHECKS.get(self.key, "")
        out = f"[{self.key}] {status}  {text}"
        if self.detail:
            out += f" ({self.detail})"
        return out

    def to_json(self) -> dict:
        return {"key": self.key, "passed": self.passed, "statement": CHECKS.get(self.key, ""),
                "detail": self.detail}


def summary_text(title: str, checks: list, extra: list | None = None) -> str:
    lines = [title]
    lines += extra or []
    lines += [c.line() for c in checks]
    lines.append(LIMITATION)
    return "\n".join(lines) + "\n"


def dumps_report(doc) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_report(doc, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_report(doc))
    return path


def write_text(text: str, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path
