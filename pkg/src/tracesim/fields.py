"""Scalar kinds and the star involution.

Three kinds of scalars are supported: exact rationals (arbitrary-precision
``fractions.Fraction``), real float64 and complex float128-pairs (Python
``complex``).  A :class:`Field` bundles the kind with the star mode, i.e.
whether ``star`` acts as plain transposition or conjugate transposition.
Exact kinds never round; float kinds never pretend to be exact.

Rationals and reals force the transpose star.  Complex scalars default to
the conjugate transpose but plain transposition is selectable, which is
exactly the regime where trace-word separation is known to break down.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import KindMismatchError


class Kind(enum.Enum):
    RATIONAL = "rational"
    REAL64 = "float64"
    COMPLEX128 = "complex128"


class StarMode(enum.Enum):
    TRANSPOSE = "transpose"
    CONJUGATE_TRANSPOSE = "conjugate"


@dataclass(frozen=True)
class Field:
    kind: Kind
    star_mode: StarMode

    def __post_init__(self):
        if self.kind in (Kind.RATIONAL, Kind.REAL64):
            if self.star_mode is not StarMode.TRANSPOSE:
                raise KindMismatchError(
                    "%s scalars only support the transpose star" % self.kind.value
                )

    @staticmethod
    def rational() -> "Field":
        return Field(Kind.RATIONAL, StarMode.TRANSPOSE)

    @staticmethod
    def real64() -> "Field":
        return Field(Kind.REAL64, StarMode.TRANSPOSE)

    @staticmethod
    def complex128(star_mode: StarMode = StarMode.CONJUGATE_TRANSPOSE) -> "Field":
        return Field(Kind.COMPLEX128, star_mode)

    @property
    def is_exact(self) -> bool:
        return self.kind is Kind.RATIONAL

    @property
    def is_complex(self) -> bool:
        return self.kind is Kind.COMPLEX128

    def zero(self):
        return _ZERO[self.kind]

    def one(self):
        return _ONE[self.kind]

    def coerce(self, value):
        """Accept a raw scalar of matching kind; reject cross-kind input.

        ints are welcome everywhere (they embed exactly in all three kinds);
        anything lossy (float into rational, complex into real) is an error.
        """
        if isinstance(value, bool):
            raise KindMismatchError("bool is not a scalar")
        if self.kind is Kind.RATIONAL:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
            raise KindMismatchError("rational field expects int or Fraction, got %r" % (value,))
        if self.kind is Kind.REAL64:
            if isinstance(value, (int, float)):
                return float(value)
            raise KindMismatchError("float64 field expects int or float, got %r" % (value,))
        if isinstance(value, (int, float, complex)):
            return complex(value)
        raise KindMismatchError("complex128 field expects a number, got %r" % (value,))

    def star_scalar(self, value):
        if self.star_mode is StarMode.CONJUGATE_TRANSPOSE and self.kind is Kind.COMPLEX128:
            return value.conjugate()
        return value

    def conj_scalar(self, value):
        """Complex conjugation of the scalar (identity on rationals/reals)."""
        if self.kind is Kind.COMPLEX128:
            return value.conjugate()
        return value

    def require_same(self, other: "Field"):
        if self != other:
            raise KindMismatchError(
                "kind/star mismatch: %s/%s vs %s/%s"
                % (self.kind.value, self.star_mode.value, other.kind.value, other.star_mode.value)
            )


_ZERO = {Kind.RATIONAL: Fraction(0), Kind.REAL64: 0.0, Kind.COMPLEX128: 0j}
_ONE = {Kind.RATIONAL: Fraction(1), Kind.REAL64: 1.0, Kind.COMPLEX128: 1 + 0j}


def abs_value(value) -> float:
    """Magnitude as a float, for pivot thresholds and residual reporting."""
    if isinstance(value, Fraction):
        return abs(float(value))
    return abs(value)


def values_close(a, b, tol: float, exact: bool) -> bool:
    if exact:
        return a == b
    return abs(a - b) <= tol


def value_str(value) -> str:
    """Deterministic human rendering: '3/4' for rationals, repr otherwise."""
    if isinstance(value, Fraction):
        return str(value)
    return repr(value)
