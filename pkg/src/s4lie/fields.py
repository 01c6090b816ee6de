"""Exact scalar arithmetic over Q and quadratic extensions Q(sqrt(d)).

Scalars over Q are plain gmpy2.mpq values.  Scalars over Q(sqrt(d)) are
QuadExt instances a + b*sqrt(d) with reduced rational parts.  A Field object
pins the context; mixing two QuadExt values with different d is a hard
ContextError.  Plain ints/mpq interoperate with QuadExt (they are the b=0
elements), which keeps generic linear algebra field-agnostic.
"""
from __future__ import annotations

import math

from gmpy2 import mpq

from .errors import ContextError, ParseError

QZERO = mpq(0)
QONE = mpq(1)


class QuadExt:
    """Element a + b*sqrt(d) of a quadratic extension of Q."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d):
        self.a = a if isinstance(a, type(QZERO)) else mpq(a)
        self.b = b if isinstance(b, type(QZERO)) else mpq(b)
        self.d = d

    # -- helpers -----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ContextError(
                    f"cannot mix Q(sqrt({self.d})) with Q(sqrt({other.d}))"
                )
            return other
        if isinstance(other, (int, type(QZERO))):
            return QuadExt(mpq(other), QZERO, self.d)
        return None

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(o.a - self.a, o.b - self.b, self.d)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.b * self.b * self.d
        if not n:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return QuadExt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ContextError(
                    f"cannot compare Q(sqrt({self.d})) with Q(sqrt({other.d}))"
                )
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, type(QZERO))):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def conj(self):
        """Galois conjugate a - b*sqrt(d)."""
        return QuadExt(self.a, -self.b, self.d)

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, d={self.d})"


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _squarefree(n: int) -> bool:
    m = abs(n)
    k = 2
    while k * k <= m:
        if m % (k * k) == 0:
            return False
        k += 1
    return True


class Field:
    """Context object: the rationals, or Q(sqrt(d)) for squarefree d."""

    __slots__ = ("d",)

    def __init__(self, d: int | None = None):
        if d is not None:
            if d in (0, 1) or _is_square(d):
                raise ParseError(f"d={d} does not give a quadratic extension")
            if not _squarefree(d):
                raise ParseError(f"d={d} is not squarefree")
        self.d = d

    # -- constructors ------------------------------------------------------
    @property
    def is_quadratic(self) -> bool:
        return self.d is not None

    @property
    def zero(self):
        return QZERO if self.d is None else QuadExt(QZERO, QZERO, self.d)

    @property
    def one(self):
        return QONE if self.d is None else QuadExt(QONE, QZERO, self.d)

    @property
    def sqrt_gen(self):
        """The element sqrt(d); errors over plain Q."""
        if self.d is None:
            raise ContextError("Q has no adjoined square root")
        return QuadExt(QZERO, QONE, self.d)

    def from_int(self, n: int):
        return mpq(n) if self.d is None else QuadExt(mpq(n), QZERO, self.d)

    def make(self, a, b=0):
        if self.d is None:
            if b:
                raise ContextError("radical part in a plain rational context")
            return mpq(a)
        return QuadExt(mpq(a), mpq(b), self.d)

    def coerce(self, x):
        """Lift ints/mpq into this field; validate QuadExt context."""
        if isinstance(x, QuadExt):
            if self.d is None or x.d != self.d:
                raise ContextError("scalar from a different field context")
            return x
        if isinstance(x, (int, type(QZERO))):
            return self.from_int(x) if self.d is not None else mpq(x)
        raise ContextError(f"not a scalar: {x!r}")

    # -- text format -------------------------------------------------------
    @staticmethod
    def _parse_frac(s: str):
        s = s.strip()
        try:
            if "/" in s:
                num, den = s.split("/")
                if den.lstrip().startswith("-"):
                    raise ParseError(f"minus sign on denominator in {s!r}")
                return mpq(int(num), int(den))
            return mpq(int(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {s!r}") from exc

    def parse(self, s: str):
        """Parse "a/b" or "a/b+c/e*r" (r denotes sqrt(d))."""
        s = s.strip()
        if "*r" in s or s.endswith("r"):
            if self.d is None:
                raise ContextError(f"radical scalar {s!r} in rational context")
            body = s
            if not body.endswith("*r"):
                raise ParseError(f"bad radical scalar {s!r}")
            body = body[:-2]
            # split on the '+' that separates the two fractional parts;
            # minus signs live on numerators, so '+' is the only separator.
            plus = body.find("+", 1)
            if plus < 0:
                a_part, b_part = "0", body
            else:
                a_part, b_part = body[:plus], body[plus + 1:]
            return QuadExt(self._parse_frac(a_part), self._parse_frac(b_part), self.d)
        val = self._parse_frac(s)
        return QuadExt(val, QZERO, self.d) if self.d is not None else val

    def fmt(self, x) -> str:
        x = self.coerce(x)
        if isinstance(x, QuadExt):
            a, b = x.a, x.b
            if not b:
                return f"{a.numerator}/{a.denominator}"
            return (
                f"{a.numerator}/{a.denominator}"
                f"+{b.numerator}/{b.denominator}*r"
            )
        return f"{x.numerator}/{x.denominator}"

    # -- identity ----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Field) and self.d == other.d

    def __hash__(self):
        return hash(("Field", self.d))

    def __repr__(self):
        return "Field(Q)" if self.d is None else f"Field(Q(sqrt({self.d})))"

    # -- JSON --------------------------------------------------------------
    def to_json(self) -> dict:
        if self.d is None:
            return {"kind": "Q"}
        return {"kind": "Qsqrt", "d": self.d}

    @staticmethod
    def from_json(obj: dict) -> "Field":
        kind = obj.get("kind")
        if kind == "Q":
            return Field()
        if kind == "Qsqrt":
            return Field(int(obj["d"]))
        raise ParseError(f"unknown field kind {kind!r}")


QQ = Field()


def conj_quad(field: Field, x):
    """Galois conjugation on the field (identity on Q)."""
    if field.d is None:
        return x
    return field.coerce(x).conj()
