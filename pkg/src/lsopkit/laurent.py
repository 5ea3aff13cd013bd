"""Sparse Laurent polynomials over an arbitrary scalar field.

Exponents are ints (negative allowed), coefficients are floats or Fractions;
zero coefficients are never stored.  Instances are treated as immutable
values: every operation returns a fresh polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

from .modes import Scalar


class LaurentPoly:
    """A Laurent polynomial sum_k c_k z^k stored as {k: c_k}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, Scalar] | None = None):
        cleaned: Dict[int, Scalar] = {}
        if coeffs:
            for k, c in coeffs.items():
                if c != 0:
                    cleaned[int(k)] = c
        self.coeffs = cleaned

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly({})

    @staticmethod
    def constant(c: Scalar) -> "LaurentPoly":
        return LaurentPoly({0: c})

    @staticmethod
    def monomial(exponent: int, c: Scalar = 1) -> "LaurentPoly":
        return LaurentPoly({exponent: c})

    @staticmethod
    def from_pairs(pairs: Iterable[Tuple[int, Scalar]]) -> "LaurentPoly":
        acc: Dict[int, Scalar] = {}
        for k, c in pairs:
            acc[int(k)] = acc.get(int(k), 0) + c
        return LaurentPoly(acc)

    def to_pairs(self) -> List[Tuple[int, Scalar]]:
        """Sorted [exponent, coefficient] pairs (the serialization form)."""
        return sorted(self.coeffs.items())

    # -- inspection ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, exponent: int) -> Scalar:
        return self.coeffs.get(exponent, 0)

    @property
    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    @property
    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return min(self.coeffs)

    def is_self_reciprocal(self, order: int) -> bool:
        """True iff z^order * p(1/z) == p(z) coefficientwise."""
        return all(self.coeff(order - k) == c for k, c in self.coeffs.items())

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self.coeffs)
        for k, c in other.coeffs.items():
            acc[k] = acc.get(k, 0) + c
        return LaurentPoly(acc)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self.coeffs)
        for k, c in other.coeffs.items():
            acc[k] = acc.get(k, 0) - c
        return LaurentPoly(acc)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            acc: Dict[int, Scalar] = {}
            for k1, c1 in self.coeffs.items():
                for k2, c2 in other.coeffs.items():
                    k = k1 + k2
                    acc[k] = acc.get(k, 0) + c1 * c2
            return LaurentPoly(acc)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, s: Scalar) -> "LaurentPoly":
        if s == 0:
            return LaurentPoly.zero()
        return LaurentPoly({k: c * s for k, c in self.coeffs.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by z^k."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def reciprocal_arg(self) -> "LaurentPoly":
        """Substitute z -> 1/z."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def __call__(self, z: Scalar) -> Scalar:
        if z == 0:
            if any(e < 0 for e in self.coeffs):
                raise ZeroDivisionError("Laurent polynomial with negative exponents at z=0")
            return self.coeffs.get(0, 0) * 1
        total = 0
        for e, c in self.coeffs.items():
            total += c * _power(z, e)
        return total

    # -- comparisons -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeff(k) == other.coeff(k) for k in keys)

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def max_abs_coeff(self) -> float:
        return max((abs(float(c)) for c in self.coeffs.values()), default=0.0)

    def as_float(self) -> "LaurentPoly":
        return LaurentPoly({k: float(c) for k, c in self.coeffs.items()})

    def __repr__(self) -> str:
        if not self.coeffs:
            return "LaurentPoly(0)"
        parts = []
        for e, c in self.to_pairs():
            if isinstance(c, Fraction):
                cs = str(c)
            else:
                cs = format(c, ".6g")
            parts.append(f"{cs}*z^{e}" if e else str(cs))
        return "LaurentPoly(" + " + ".join(parts) + ")"


def _power(z: Scalar, e: int) -> Scalar:
    if e >= 0:
        return z**e
    if isinstance(z, Fraction):
        return (Fraction(1) / z) ** (-e)
    return (1.0 / z) ** (-e)
