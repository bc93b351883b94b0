"""Exact nonnegative rational scalars and the +infinity infimum marker.

Every distance and label in the package is a ``fractions.Fraction`` in lowest
terms, so comparisons, max, and subtraction are exact.  Floating point is never
used: rank computation and weak-similarity tests compare values for equality.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from .errors import StructuralError

Scalar = Fraction


class SpectrumInfimum(enum.Enum):
    """Distinguished marker for the infimum of an empty nonzero-distance set."""

    PLUS_INFINITY = "+infinity"

    def __str__(self) -> str:
        return self.value


PLUS_INFINITY = SpectrumInfimum.PLUS_INFINITY


def as_scalar(value: int | str | Fraction) -> Scalar:
    """Coerce an int, Fraction, or a string like ``"3/4"`` to a nonnegative Fraction."""
    try:
        scalar = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise StructuralError(f"not a rational value: {value!r}") from exc
    if scalar < 0:
        raise StructuralError(f"negative value not allowed: {value!r}")
    return scalar


def scalar_str(value: Scalar) -> str:
    """Canonical text form: ``"p/q"``, or plain ``"p"`` when the denominator is 1."""
    return str(value)
