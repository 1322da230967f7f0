"""Dense univariate polynomials over a :class:`FieldSpec` and the split test.

``distinct_linear_roots`` answers whether a polynomial is a product of
pairwise distinct linear factors over the ground field, which is exactly
the diagonalizability criterion for a matrix with that minimal polynomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DivisionByZero, FieldMismatch
from .field import FieldSpec, Scalar


def _trim(coeffs):
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class Polynomial:
    """Coefficients in ascending degree; the zero polynomial has none."""

    __slots__ = ("spec", "_c")

    def __init__(self, spec: FieldSpec, coeffs: Sequence = ()):
        self.spec = spec
        self._c = tuple(_trim([spec.convert(c) for c in coeffs]))

    @classmethod
    def _raw(cls, spec, coeffs):
        p = object.__new__(cls)
        p.spec = spec
        p._c = tuple(_trim(list(coeffs)))
        return p

    @classmethod
    def x(cls, spec):
        return cls._raw(spec, [spec.zero(), spec.one()])

    @classmethod
    def from_roots(cls, spec, roots):
        """Monic product of (x - r) over ``roots``."""
        out = cls._raw(spec, [spec.one()])
        for r in roots:
            r = spec.convert(r)
            out = out * cls._raw(spec, [spec.norm(-r), spec.one()])
        return out

    @property
    def coeffs(self) -> list[Scalar]:
        return [Scalar._raw(self.spec, c) for c in self._c]

    @property
    def raw(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def leading(self) -> Scalar:
        return Scalar._raw(self.spec, self._c[-1])

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return False
        if other.spec != self.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")
        return True

    def __add__(self, other):
        if not self._check(other):
            return NotImplemented
        a, b = self._c, other._c
        n = max(len(a), len(b))
        z = self.spec.zero()
        out = [self.spec.norm((a[i] if i < len(a) else z) + (b[i] if i < len(b) else z))
               for i in range(n)]
        return Polynomial._raw(self.spec, out)

    def __neg__(self):
        return Polynomial._raw(self.spec, [self.spec.norm(-c) for c in self._c])

    def __sub__(self, other):
        if not self._check(other):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            other = Polynomial._raw(self.spec, [self.spec.convert(other)])
        if not self._check(other):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return Polynomial._raw(self.spec, [])
        out = [self.spec.zero()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial._raw(self.spec, [self.spec.norm(c) for c in out])

    def __divmod__(self, other):
        if not self._check(other):
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        spec = self.spec
        rem = list(self._c)
        d = other._c
        lead_inv = spec.inv(d[-1])
        q = [spec.zero()] * max(len(rem) - len(d) + 1, 0)
        for k in range(len(rem) - len(d), -1, -1):
            c = spec.norm(rem[k + len(d) - 1] * lead_inv)
            q[k] = c
            if c != 0:
                for j, dj in enumerate(d):
                    rem[k + j] = spec.norm(rem[k + j] - c * dj)
        return Polynomial._raw(spec, q), Polynomial._raw(spec, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.spec == other.spec and self._c == other._c

    def __hash__(self):
        return hash((self.spec, self._c))

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        li = self.spec.inv(self._c[-1])
        return Polynomial._raw(self.spec, [self.spec.norm(c * li) for c in self._c])

    def derivative(self) -> "Polynomial":
        # k * c_k reduced mod p, so x^p terms vanish in characteristic p
        return Polynomial._raw(
            self.spec, [self.spec.norm(k * c) for k, c in enumerate(self._c)][1:])

    def eval_raw(self, x):
        acc = self.spec.zero()
        for c in reversed(self._c):
            acc = self.spec.norm(acc * x + c)
        return acc

    def __call__(self, x) -> Scalar:
        return Scalar._raw(self.spec, self.eval_raw(self.spec.convert(x)))

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd (zero only when both inputs are zero)."""
        self._check(other)
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if c == 0:
                continue
            c = self.spec.signed(c)
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            neg = c < 0
            mag = -c if neg else c
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            terms.append(("-", body) if neg else ("+", body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self.spec}, {str(self)!r})"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    return a.gcd(b)


def _powmod_x(m: Polynomial, e: int) -> Polynomial:
    """x^e mod m by square-and-multiply."""
    spec = m.spec
    result = Polynomial._raw(spec, [spec.one()]) % m
    base = Polynomial.x(spec) % m
    while e:
        if e & 1:
            result = (result * base) % m
        base = (base * base) % m
        e >>= 1
    return result


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _roots_prime(m: Polynomial) -> Optional[list]:
    p = m.spec.p
    xp = _powmod_x(m, p)
    if not (xp - Polynomial.x(m.spec) % m).is_zero():
        return None
    # m | x^p - x, so m is squarefree and splits; collect its roots
    roots = []
    for r in range(p):
        if m.eval_raw(r) == 0:
            roots.append(r)
            if len(roots) == m.degree:
                break
    return roots


def _roots_rational(m: Polynomial) -> Optional[list]:
    spec = m.spec
    c = list(m.raw)
    zero_mult = 0
    while c and c[0] == 0:
        c.pop(0)
        zero_mult += 1
    if zero_mult > 1:
        return None
    roots = [Fraction(0)] if zero_mult else []
    lcm = 1
    for x in c:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in c]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    ints = [v // g for v in ints]
    rest = Polynomial._raw(spec, [Fraction(v) for v in ints])
    if rest.degree >= 1:
        candidates = set()
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                candidates.add(Fraction(a, b))
                candidates.add(Fraction(-a, b))
        for r in sorted(candidates):
            if rest.degree == 0:
                break
            mult = 0
            while rest.degree >= 1 and rest.eval_raw(r) == 0:
                rest = rest // Polynomial._raw(spec, [-r, Fraction(1)])
                mult += 1
            if mult > 1:
                return None
            if mult == 1:
                roots.append(r)
    if rest.degree >= 1:
        return None
    return roots


def distinct_linear_roots(m: Polynomial) -> Optional[list[Scalar]]:
    """Roots of ``m`` if it splits into distinct linear factors, else ``None``.

    Roots come back sorted (by value over Q, by residue over F_p).
    """
    if m.degree < 1:
        raise ValueError("need a polynomial of degree at least 1")
    m = m.monic()
    roots = _roots_prime(m) if m.spec.is_prime else _roots_rational(m)
    if roots is None:
        return None
    return [Scalar._raw(m.spec, r) for r in sorted(roots)]
