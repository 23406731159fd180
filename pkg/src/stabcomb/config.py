"""Size limits shared by the table builders and the enumerators."""

from __future__ import annotations

import os
from dataclasses import dataclass

GUARD_ENV = "STABCOMB_GUARD"
TABLE_GUARD_ENV = "STABCOMB_TABLE_GUARD"


@dataclass(frozen=True)
class Limits:
    max_objects: int = 10**7  # enumeration
    max_coefficients: int = 10**6  # family tables


class SizeGuardExceeded(RuntimeError):
    pass


def current_limits() -> Limits:
    base = Limits()
    objs = os.environ.get(GUARD_ENV)
    coeffs = os.environ.get(TABLE_GUARD_ENV)
    return Limits(
        max_objects=int(float(objs)) if objs else base.max_objects,
        max_coefficients=int(float(coeffs)) if coeffs else base.max_coefficients,
    )
