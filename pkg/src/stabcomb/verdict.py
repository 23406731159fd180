"""Pass/fail results shared by the verifiers and the property checkers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .exactpoly import Poly


@dataclass(frozen=True)
class Failure:
    index: Any
    expected: Poly
    got: Poly

    def as_dict(self) -> dict:
        return {"index": _plain(self.index), "expected": self.expected.to_strings(), "got": self.got.to_strings()}


@dataclass(frozen=True)
class Verdict:
    passed: bool
    first_failure: Failure | None = None
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.passed != (self.first_failure is None):
            raise ValueError("a verdict fails exactly when it carries a failure")

    def __bool__(self):
        return self.passed

    @classmethod
    def ok(cls, **details) -> "Verdict":
        return cls(True, None, details)

    @classmethod
    def fail(cls, index, expected, got, **details) -> "Verdict":
        return cls(False, Failure(index, _poly(expected), _poly(got)), details)

    def as_dict(self) -> dict:
        out = {"pass": self.passed}
        if self.first_failure is not None:
            out["first_failure"] = self.first_failure.as_dict()
        if self.details:
            out["details"] = {k: _plain(v) for k, v in self.details.items()}
        return out


def _poly(v) -> Poly:
    return v if isinstance(v, Poly) else Poly([v])


def _plain(v):
    """JSON-friendly view: rationals as num/den strings, polys as coefficient lists."""
    from fractions import Fraction

    if isinstance(v, Poly):
        return v.to_strings()
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if hasattr(v, "as_dict"):
        return _plain(v.as_dict())
    return str(v)


def first_mismatch(expected: list, got: list, start: int = 0) -> Verdict:
    """Compare two equally indexed lists of polynomials."""
    for i, (e, g) in enumerate(zip(expected, got)):
        if _poly(e) != _poly(g):
            return Verdict.fail(start + i, e, g)
    if len(expected) != len(got):
        i = min(len(expected), len(got))
        return Verdict.fail(start + i, expected[i] if i < len(expected) else Poly(), got[i] if i < len(got) else Poly())
    return Verdict.ok()
