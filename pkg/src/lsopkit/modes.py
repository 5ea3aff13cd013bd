"""Scalar backends.

Every algebraic routine in this package is generic over its scalar type and
runs unchanged on floats and on ``fractions.Fraction``.  Two modes are
supported:

* ``double``   -- IEEE binary64, tolerance-based comparisons downstream;
* ``rational`` -- exact ``Fraction`` arithmetic, the correctness oracle for
  every identity that is rational in the inputs.

Square roots leave the rational field, so operations that need them
(orthonormal scaling, tridiagonal off-diagonals, gauged bases) produce
floats; the exact checks in the test and verification layers are
formulated so that no square root is ever required there.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Scalar = Union[float, Fraction]

MODES = ("double", "rational")


def validate_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown scalar mode {mode!r}; expected one of {MODES}")
    return mode


def is_exact(x: object) -> bool:
    """True when x carries exact (int/Fraction) arithmetic."""
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)
