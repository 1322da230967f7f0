"""Exact scalars over the rationals and over prime fields F_p.

Matrices and polynomials store *raw* values and do arithmetic through the
owning :class:`FieldSpec`.  Over Q a raw value is an ``int`` when integral and
a ``Fraction`` otherwise; over F_p it is an ``int`` in ``[0, p)``.
:class:`Scalar` is the public, self-describing wrapper used at API edges.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DivisionByZero, FieldMismatch, ParseError

RATIONAL = "rational"
PRIME = "prime"

# root scanning in poly is linear in p
MAX_PRIME = 2 ** 20

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")
_INTEGER_RE = re.compile(r"^\s*([+-]?\d+)\s*$")


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Descriptor of the ground field: Q, or F_p for a prime ``p``."""

    kind: str
    p: Union[int, None] = None

    def __post_init__(self):
        if self.kind == RATIONAL:
            if self.p is not None:
                raise ValueError("the rational field takes no modulus")
        elif self.kind == PRIME:
            if not isinstance(self.p, int) or not _is_prime(self.p):
                raise ValueError(f"{self.p!r} is not a prime")
            if self.p > MAX_PRIME:
                raise ValueError(f"prime {self.p} exceeds the supported bound 2^20")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    def __str__(self):
        return "Q" if self.p is None else f"prime:{self.p}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accepts ``Q``/``rational`` or ``prime:p`` (also ``F_p``, ``GF(p)``)."""
        t = text.strip()
        if t.lower() in ("q", "qq", "rational", "rationals"):
            return QQ
        m = re.fullmatch(r"(?:prime:|F_|GF\()(\d+)\)?", t, flags=re.IGNORECASE)
        if m is None:
            raise ParseError(f"unrecognised field descriptor {text!r}")
        try:
            return GF(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    # raw-value arithmetic; hot loops call these directly

    def norm(self, x):
        if self.p is not None:
            return x % self.p
        # integral rationals stay plain ints, which keeps arithmetic cheap
        if type(x) is not int and x.denominator == 1:
            return x.numerator
        return x

    def convert(self, value):
        """Coerce an int, Fraction, Scalar or scalar text into a raw value."""
        if isinstance(value, Scalar):
            if value.spec != self:
                raise FieldMismatch(f"scalar over {value.spec} used over {self}")
            return value.value
        if isinstance(value, str):
            return self.parse_scalar(value)
        if isinstance(value, bool):
            raise TypeError("booleans are not field elements")
        if self.p is None:
            if isinstance(value, (int, Fraction)):
                return self.norm(Fraction(value))
        else:
            if isinstance(value, int):
                return value % self.p
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise DivisionByZero(f"{value} has no image in F_{self.p}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
        raise TypeError(f"cannot convert {type(value).__name__} to a field element")

    def inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of zero")
        if self.p is None:
            return Fraction(1, x) if type(x) is int else 1 / x
        return pow(x, -1, self.p)

    def zero(self):
        return 0

    def one(self):
        return 1

    def parse_scalar(self, text: str):
        if self.p is None:
            m = _RATIONAL_RE.match(text)
            if m is None:
                raise ParseError(f"malformed rational {text!r}")
            num = int(m.group(1))
            den = int(m.group(2)) if m.group(2) is not None else 1
            if den == 0:
                raise ParseError(f"zero denominator in {text!r}")
            return self.norm(Fraction(num, den))
        m = _INTEGER_RE.match(text)
        if m is None:
            raise ParseError(f"malformed residue {text!r} for F_{self.p}")
        return int(m.group(1)) % self.p

    def format(self, x) -> str:
        return str(x)

    def signed(self, x):
        """Representative in (-p/2, p/2] for display; identity over Q."""
        if self.p is not None and x > self.p // 2:
            return x - self.p
        return x


QQ = FieldSpec(RATIONAL)


def GF(p: int) -> FieldSpec:
    return FieldSpec(PRIME, p)


class Scalar:
    """Immutable element of a :class:`FieldSpec`."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value=0):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "value", spec.convert(value))

    @classmethod
    def _raw(cls, spec, value):
        s = object.__new__(cls)
        object.__setattr__(s, "spec", spec)
        object.__setattr__(s, "value", value)
        return s

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.spec.convert(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar._raw(self.spec, self.spec.norm(self.value + b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar._raw(self.spec, self.spec.norm(self.value - b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar._raw(self.spec, self.spec.norm(b - self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar._raw(self.spec, self.spec.norm(self.value * b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar._raw(self.spec, self.spec.norm(self.value * self.spec.inv(b)))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return Scalar._raw(self.spec, self.spec.norm(b * self.spec.inv(self.value)))

    def __neg__(self):
        return Scalar._raw(self.spec, self.spec.norm(-self.value))

    def inv(self) -> "Scalar":
        return Scalar._raw(self.spec, self.spec.inv(self.value))

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        if self.spec.p is None:
            return Scalar._raw(self.spec, self.value ** k)
        return Scalar._raw(self.spec, pow(self.value, k, self.spec.p))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.spec.convert(other)
            except DivisionByZero:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.value))

    def __lt__(self, other):
        # deterministic order: rationals by value, residues by representative
        if not isinstance(other, Scalar) or other.spec != self.spec:
            return NotImplemented
        return self.value < other.value

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"Scalar({self.spec}, {self.value})"


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def sub(a: Scalar, b: Scalar) -> Scalar:
    return a - b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def neg(a: Scalar) -> Scalar:
    return -a


def inv(a: Scalar) -> Scalar:
    return a.inv()


def enumerate_scalars(spec: FieldSpec, count: int) -> list[Scalar]:
    """First ``count`` elements 0, 1, 2, ... (capped at ``p`` over F_p)."""
    if count < 1:
        raise ValueError("count must be at least 1")
    n = count if spec.p is None else min(count, spec.p)
    return [Scalar(spec, k) for k in range(n)]
