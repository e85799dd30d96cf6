"""Exact arithmetic in cyclotomic fields Q(zeta_N).

A scalar is stored as a rational vector over the power basis
1, zeta, ..., zeta^(phi(N)-1), reduced modulo the N-th cyclotomic
polynomial. Equality of reduced vectors is equality of field elements, so
zero tests are exact. Scalars with different conductors are promoted to the
least common multiple before combining.

>>> w = CycloScalar.root_of_unity(Fraction(1, 3))
>>> (w * w * w).rational()
Fraction(1, 1)
>>> (w + w.conjugate()).rational()
Fraction(-1, 1)
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Sequence, Union

__all__ = ["CycloScalar", "cyclotomic_poly", "phi", "field_tables"]

RationalLike = Union[int, Fraction]


def phi(n: int) -> int:
    """Euler totient."""
    if n < 1:
        raise ValueError(f"totient undefined for {n}")
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return tuple(out)


def _poly_divexact(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[int, ...]:
    # Exact division of integer polynomials with monic divisor.
    num_l = list(num)
    dd = len(den) - 1
    if den[-1] != 1:
        raise ValueError("divisor must be monic")
    qd = len(num_l) - 1 - dd
    quot = [0] * (qd + 1)
    for k in range(qd, -1, -1):
        c = num_l[k + dd]
        quot[k] = c
        if c:
            for j, dj in enumerate(den):
                num_l[k + j] -= c * dj
    if any(num_l):
        raise ValueError("division not exact")
    return tuple(quot)


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, ascending.

    >>> cyclotomic_poly(1)
    (-1, 1)
    >>> cyclotomic_poly(4)
    (1, 0, 1)
    """
    if n < 1:
        raise ValueError(f"bad index {n}")
    num = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, cyclotomic_poly(d))
    return num


class _FieldTables:
    """Per-conductor reduction data, computed once and cached.

    pow_rows[j] is the basis vector of zeta^j for every exponent j that the
    arithmetic can produce: 0 <= j < max(N, 2*phi(N) - 1).
    """

    __slots__ = ("conductor", "degree", "pow_rows", "red_max")

    def __init__(self, n: int):
        poly = cyclotomic_poly(n)
        d = len(poly) - 1
        rows: list[tuple[int, ...]] = []
        cur = [1] + [0] * (d - 1)
        top = max(n, 2 * d - 1)
        for _ in range(top):
            rows.append(tuple(cur))
            # multiply by x, then reduce the overflow coefficient
            lead = cur[d - 1]
            cur = [0] + cur[: d - 1]
            if lead:
                for i in range(d):
                    cur[i] -= lead * poly[i]
        self.conductor = n
        self.degree = d
        self.pow_rows = tuple(rows)
        self.red_max = max(abs(c) for row in rows[: 2 * d - 1] for c in row)


@lru_cache(maxsize=None)
def field_tables(n: int) -> _FieldTables:
    return _FieldTables(n)


@lru_cache(maxsize=None)
def promotion_rows(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Basis vectors at conductor m for each power-basis element of Q(zeta_n)."""
    if m % n != 0:
        raise ValueError(f"conductor {n} does not divide {m}")
    step = m // n
    rows = field_tables(m).pow_rows
    return tuple(rows[(j * step) % m] for j in range(field_tables(n).degree))


def _reduce_product(
    a: Sequence[Fraction], b: Sequence[Fraction], tab: _FieldTables
) -> tuple[Fraction, ...]:
    d = tab.degree
    raw = [Fraction(0)] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    raw[i + j] += ai * bj
    out = [Fraction(0)] * d
    for j, c in enumerate(raw):
        if c:
            if j < d:
                out[j] += c
            else:
                for k, r in enumerate(tab.pow_rows[j]):
                    if r:
                        out[k] += c * r
    return tuple(out)


class CycloScalar:
    """An element of Q(zeta_N) in canonical reduced form."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs: Sequence[RationalLike]):
        tab = field_tables(conductor)
        vec = tuple(Fraction(c) for c in coeffs)
        if len(vec) != tab.degree:
            raise ValueError(
                f"need {tab.degree} coefficients at conductor {conductor}, got {len(vec)}"
            )
        self.conductor = conductor
        self.coeffs = vec

    @classmethod
    def from_rational(cls, value: RationalLike, conductor: int = 1) -> "CycloScalar":
        tab = field_tables(conductor)
        vec = [Fraction(0)] * tab.degree
        vec[0] = Fraction(value)
        return cls(conductor, vec)

    @classmethod
    def zero(cls, conductor: int = 1) -> "CycloScalar":
        return cls.from_rational(0, conductor)

    @classmethod
    def one(cls, conductor: int = 1) -> "CycloScalar":
        return cls.from_rational(1, conductor)

    @classmethod
    def root_of_unity(cls, rotation: Fraction, conductor: int | None = None) -> "CycloScalar":
        """exp(2*pi*i*rotation) for rational rotation, reduced mod 1."""
        rot = Fraction(rotation) % 1
        if conductor is None:
            conductor = rot.denominator
        if conductor % rot.denominator != 0:
            raise ValueError(f"rotation {rot} needs conductor divisible by {rot.denominator}")
        t = (rot.numerator * (conductor // rot.denominator)) % conductor
        tab = field_tables(conductor)
        return cls(conductor, tab.pow_rows[t])

    def promote(self, conductor: int) -> "CycloScalar":
        if conductor == self.conductor:
            return self
        rows = promotion_rows(self.conductor, conductor)
        d = field_tables(conductor).degree
        vec = [Fraction(0)] * d
        for j, c in enumerate(self.coeffs):
            if c:
                for k, r in enumerate(rows[j]):
                    if r:
                        vec[k] += c * r
        return CycloScalar(conductor, vec)

    def _common(self, other: "CycloScalar") -> tuple["CycloScalar", "CycloScalar"]:
        if self.conductor == other.conductor:
            return self, other
        m = lcm(self.conductor, other.conductor)
        return self.promote(m), other.promote(m)

    @staticmethod
    def _coerce(value) -> "CycloScalar":
        if isinstance(value, CycloScalar):
            return value
        if isinstance(value, (int, Fraction)):
            return CycloScalar.from_rational(value)
        raise TypeError(f"cannot treat {type(value).__name__} as a cyclotomic scalar")

    def __add__(self, other) -> "CycloScalar":
        a, b = self._common(self._coerce(other))
        return CycloScalar(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloScalar":
        return CycloScalar(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "CycloScalar":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "CycloScalar":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "CycloScalar":
        other = self._coerce(other)
        # rational factors scale the vector without promotion
        if other.is_rational():
            q = other.rational()
            return CycloScalar(self.conductor, tuple(c * q for c in self.coeffs))
        if self.is_rational():
            q = self.rational()
            return CycloScalar(other.conductor, tuple(c * q for c in other.coeffs))
        a, b = self._common(other)
        tab = field_tables(a.conductor)
        return CycloScalar(a.conductor, _reduce_product(a.coeffs, b.coeffs, tab))

    __rmul__ = __mul__

    def conjugate(self) -> "CycloScalar":
        n = self.conductor
        tab = field_tables(n)
        d = tab.degree
        vec = [Fraction(0)] * d
        for j, c in enumerate(self.coeffs):
            if c:
                for k, r in enumerate(tab.pow_rows[(n - j) % n]):
                    if r:
                        vec[k] += c * r
        return CycloScalar(n, vec)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_unit_modulus(self) -> bool:
        """Exact test of |z| = 1 via z * conj(z) = 1."""
        p = self * self.conjugate()
        return p.is_rational() and p.rational() == 1

    def to_complex(self) -> complex:
        n = self.conductor
        return sum(
            float(c) * cmath.exp(2j * cmath.pi * j / n)
            for j, c in enumerate(self.coeffs)
            if c
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational() == other
        if not isinstance(other, CycloScalar):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # equal values can live at different conductors

    def __repr__(self) -> str:
        return f"CycloScalar({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        """Algebraic rendering: "3/4", "-z8^3", "1/2 + (1/3)z5^2"."""
        if self.is_rational():
            return str(self.rational())
        n = self.conductor
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(str(c))
                continue
            power = f"z{n}" if j == 1 else f"z{n}^{j}"
            if c == 1:
                term = power
            elif c == -1:
                term = f"-{power}"
            else:
                term = f"({c}){power}"
            parts.append(term)
        out = parts[0]
        for term in parts[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out
