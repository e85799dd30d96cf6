"""Measures on a finite group with exact cyclotomic coefficients.

A Measure stores one power-basis coordinate row of integers per group
element plus a single positive denominator, all at one conductor.  That
packed form is what the convolution kernel consumes; CycloScalar appears
only at the API boundary.  FloatMeasure is the complex128 companion used by
the power-iteration dynamics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np

from . import _kernel
from .characters import Character
from .cyclo import CycloScalar, field_tables, promotion_rows
from .errors import MismatchedParents, PreconditionError
from .groups import GroupTable, Subgroup, subgroup_from_elements

__all__ = [
    "Measure",
    "FloatMeasure",
    "IdempotentClass",
    "dirac",
    "haar",
    "char_idem",
    "convolve",
    "adjoint",
    "support",
    "tv_norm",
    "classify_idempotent",
    "is_probability",
    "measure_to_jsonable",
    "measure_from_jsonable",
]

IntRows = tuple[tuple[int, ...], ...]


def _normalize(num: Sequence[Sequence[int]], den: int) -> tuple[IntRows, int]:
    if den == 0:
        raise ValueError("denominator must be nonzero")
    g = abs(den)
    for row in num:
        for c in row:
            if c:
                g = gcd(g, c)
            if g == 1:
                break
        if g == 1:
            break
    if den < 0:
        g = -g
    if g == 1:
        return tuple(tuple(row) for row in num), den
    return tuple(tuple(c // g for c in row) for row in num), den // g


def _promote_num(num: IntRows, n_from: int, n_to: int) -> IntRows:
    """Re-express integer coordinate rows at a larger conductor."""
    if n_from == n_to:
        return num
    rows = promotion_rows(n_from, n_to)
    d_to = field_tables(n_to).degree
    out = []
    for row in num:
        vec = [0] * d_to
        for j, c in enumerate(row):
            if c:
                pr = rows[j]
                for k in range(d_to):
                    if pr[k]:
                        vec[k] += c * pr[k]
        out.append(tuple(vec))
    return tuple(out)


def _int_row_mul(row: Sequence[int], svec: Sequence[int], tab) -> list[int]:
    # polynomial product of two integer coordinate vectors, reduced
    d = tab.degree
    raw = [0] * (2 * d - 1)
    for i, ai in enumerate(row):
        if ai:
            for j, bj in enumerate(svec):
                if bj:
                    raw[i + j] += ai * bj
    out = list(raw[:d])
    for j in range(d, 2 * d - 1):
        c = raw[j]
        if c:
            pr = tab.pow_rows[j]
            for k in range(d):
                if pr[k]:
                    out[k] += c * pr[k]
    return out


@lru_cache(maxsize=None)
def _conj_rows(n: int) -> IntRows:
    tab = field_tables(n)
    return tuple(tab.pow_rows[(n - j) % n] for j in range(tab.degree))


@lru_cache(maxsize=None)
def _basis_complex(n: int) -> np.ndarray:
    d = field_tables(n).degree
    return np.exp(2j * np.pi * np.arange(d) / n)


class Measure:
    """Element of the convolution algebra of a finite group.

    Construct through from_coeffs, zero, or the dirac/haar/char_idem
    helpers; the raw constructor expects already-normalized packed data.
    """

    __slots__ = ("parent", "conductor", "num", "den")

    def __init__(self, parent: GroupTable, conductor: int, num: IntRows, den: int):
        if len(num) != parent.order:
            raise ValueError("one coordinate row per group element required")
        if den <= 0:
            raise ValueError("denominator must be positive")
        self.parent = parent
        self.conductor = conductor
        self.num = num
        self.den = den

    @classmethod
    def _build(
        cls, parent: GroupTable, conductor: int, num: Sequence[Sequence[int]], den: int
    ) -> "Measure":
        nnum, nden = _normalize(num, den)
        return cls(parent, conductor, nnum, nden)

    @classmethod
    def zero(cls, parent: GroupTable) -> "Measure":
        return cls(parent, 1, tuple((0,) for _ in range(parent.order)), 1)

    @classmethod
    def from_coeffs(
        cls, parent: GroupTable, coeffs: Sequence[CycloScalar | Fraction | int]
    ) -> "Measure":
        if len(coeffs) != parent.order:
            raise ValueError(f"need {parent.order} coefficients, got {len(coeffs)}")
        scalars = [
            c if isinstance(c, CycloScalar) else CycloScalar.from_rational(c)
            for c in coeffs
        ]
        n = lcm(*(s.conductor for s in scalars)) if scalars else 1
        vecs = [s.promote(n).coeffs for s in scalars]
        den = 1
        for vec in vecs:
            for f in vec:
                den = lcm(den, f.denominator)
        num = tuple(
            tuple(f.numerator * (den // f.denominator) for f in vec) for vec in vecs
        )
        return cls._build(parent, n, num, den)

    # -- accessors ---------------------------------------------------------

    def coeff(self, g: int) -> CycloScalar:
        return CycloScalar(
            self.conductor, [Fraction(c, self.den) for c in self.num[g]]
        )

    def coeffs(self) -> tuple[CycloScalar, ...]:
        return tuple(self.coeff(g) for g in range(self.parent.order))

    def support(self) -> tuple[int, ...]:
        return tuple(g for g, row in enumerate(self.num) if any(row))

    def is_zero(self) -> bool:
        return all(not any(row) for row in self.num)

    def to_complex(self) -> np.ndarray:
        basis = _basis_complex(self.conductor)
        mat = np.array(self.num, dtype=np.float64)
        return mat @ basis / self.den

    # -- linear structure ----------------------------------------------------

    def _require_sibling(self, other: "Measure") -> None:
        if self.parent is not other.parent:
            raise MismatchedParents(
                f"measures live on {self.parent.name} and {other.parent.name}"
            )

    def __add__(self, other: "Measure") -> "Measure":
        if not isinstance(other, Measure):
            return NotImplemented
        self._require_sibling(other)
        n = lcm(self.conductor, other.conductor)
        a = _promote_num(self.num, self.conductor, n)
        b = _promote_num(other.num, other.conductor, n)
        den = lcm(self.den, other.den)
        fa, fb = den // self.den, den // other.den
        rows = [
            tuple(fa * x + fb * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
        ]
        return Measure._build(self.parent, n, rows, den)

    def __sub__(self, other: "Measure") -> "Measure":
        if not isinstance(other, Measure):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Measure":
        rows = tuple(tuple(-c for c in row) for row in self.num)
        return Measure(self.parent, self.conductor, rows, self.den)

    def scale(self, s: CycloScalar | Fraction | int) -> "Measure":
        if isinstance(s, CycloScalar):
            if s.is_rational():
                return self.scale(s.rational())
            n = lcm(self.conductor, s.conductor)
            num = _promote_num(self.num, self.conductor, n)
            svec_frac = s.promote(n).coeffs
            q = 1
            for f in svec_frac:
                q = lcm(q, f.denominator)
            svec = [f.numerator * (q // f.denominator) for f in svec_frac]
            tab = field_tables(n)
            rows = [_int_row_mul(row, svec, tab) for row in num]
            return Measure._build(self.parent, n, rows, self.den * q)
        f = Fraction(s)
        rows = tuple(tuple(c * f.numerator for c in row) for row in self.num)
        return Measure._build(self.parent, self.conductor, rows, self.den * f.denominator)

    def __mul__(self, s):
        if isinstance(s, (CycloScalar, Fraction, int)):
            return self.scale(s)
        return NotImplemented

    __rmul__ = __mul__

    # -- group actions -------------------------------------------------------

    def translate_left(self, g: int) -> "Measure":
        """Convolution by dirac(g) on the left: new(x) = old(g^-1 x)."""
        mul = self.parent.mul
        rows: list[tuple[int, ...]] = [()] * self.parent.order
        for h in range(self.parent.order):
            rows[mul[g][h]] = self.num[h]
        return Measure(self.parent, self.conductor, tuple(rows), self.den)

    def translate_right(self, g: int) -> "Measure":
        """Convolution by dirac(g) on the right: new(x) = old(x g^-1)."""
        mul = self.parent.mul
        rows: list[tuple[int, ...]] = [()] * self.parent.order
        for h in range(self.parent.order):
            rows[mul[h][g]] = self.num[h]
        return Measure(self.parent, self.conductor, tuple(rows), self.den)

    def adjoint(self) -> "Measure":
        """mu*(g) = conj(mu(g^-1)); an involution on the algebra."""
        conj = _conj_rows(self.conductor)
        inv = self.parent.inv
        d = field_tables(self.conductor).degree
        out = []
        for x in range(self.parent.order):
            row = self.num[inv[x]]
            vec = [0] * d
            for j, c in enumerate(row):
                if c:
                    cj = conj[j]
                    for k in range(d):
                        if cj[k]:
                            vec[k] += c * cj[k]
            out.append(tuple(vec))
        return Measure(self.parent, self.conductor, tuple(out), self.den)

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        if self.parent is not other.parent:
            return False
        n = lcm(self.conductor, other.conductor)
        a = _promote_num(self.num, self.conductor, n)
        b = _promote_num(other.num, other.conductor, n)
        da, db = self.den, other.den
        return all(
            x * db == y * da for ra, rb in zip(a, b) for x, y in zip(ra, rb)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        supp = self.support()
        shown = ", ".join(self.parent.labels[g] for g in supp[:6])
        if len(supp) > 6:
            shown += ", ..."
        return (
            f"Measure({self.parent.name}, conductor={self.conductor}, "
            f"support=[{shown}])"
        )


def dirac(parent: GroupTable, g: int | str) -> Measure:
    """Point mass at g."""
    if isinstance(g, str):
        g = parent.idx(g)
    rows = [(0,)] * parent.order
    rows[g] = (1,)
    return Measure(parent, 1, tuple(rows), 1)


def haar(k: Subgroup) -> Measure:
    """Normalized counting measure on the subgroup k."""
    parent = k.parent
    rows = [(0,)] * parent.order
    for g in k.elements:
        rows[g] = (1,)
    return Measure(parent, 1, tuple(rows), k.order)


def char_idem(k: Subgroup, chi: Character) -> Measure:
    """The contractive idempotent chi * haar(k).

    chi must be a character of k itself; coefficient at g in k is
    chi(g) / |k|, zero elsewhere.
    """
    if chi.domain != k:
        raise PreconditionError("character domain differs from the given subgroup")
    n = chi.conductor
    tab = field_tables(n)
    d = tab.degree
    parent = k.parent
    zero_row = (0,) * d
    rows = [zero_row] * parent.order
    for i, g in enumerate(k.elements):
        rot = chi.rot[i]
        t = (rot.numerator * (n // rot.denominator)) % n
        rows[g] = tab.pow_rows[t]
    return Measure._build(parent, n, rows, k.order)


def convolve(a: Measure, b: Measure) -> Measure:
    """(a * b)(x) = sum over h of a(h) b(h^-1 x)."""
    a._require_sibling(b)
    parent = a.parent
    n = lcm(a.conductor, b.conductor)
    anum = _promote_num(a.num, a.conductor, n)
    bnum = _promote_num(b.num, b.conductor, n)
    tab = field_tables(n)
    red = tab.pow_rows[: 2 * tab.degree - 1]
    rows = _kernel.convolve_exact(
        parent._mul_lists, parent.mul_np, anum, bnum, red, tab.red_max
    )
    return Measure._build(parent, n, rows, a.den * b.den)


def adjoint(mu: Measure) -> Measure:
    return mu.adjoint()


def support(mu: Measure) -> tuple[int, ...]:
    return mu.support()


def tv_norm(mu: "Measure | FloatMeasure") -> float:
    """Total variation norm, evaluated in floating point."""
    if isinstance(mu, FloatMeasure):
        return float(np.abs(mu.values).sum())
    return float(np.abs(mu.to_complex()).sum())


def is_probability(mu: Measure) -> bool:
    total = Fraction(0)
    for g in mu.support():
        c = mu.coeff(g)
        if not c.is_rational():
            return False
        r = c.rational()
        if r < 0:
            return False
        total += r
    return total == 1


# -- idempotent classification -------------------------------------------------


@dataclass(frozen=True)
class IdempotentClass:
    """Outcome of classify_idempotent.

    kind is one of "not_idempotent", "zero", "contractive",
    "idempotent_other"; subgroup/character are set only for "contractive".
    """

    kind: str
    subgroup: Subgroup | None = None
    character: Character | None = None


def _as_character_rotation(value: CycloScalar, order: int) -> Fraction | None:
    for t in range(order):
        if value == CycloScalar.root_of_unity(Fraction(t, order)):
            return Fraction(t, order)
    return None


def classify_idempotent(mu: Measure) -> IdempotentClass:
    """Decide where an element sits relative to mu * mu = mu.

    Contractive means: support is a subgroup K and |K| * mu is a
    character on K, i.e. mu = char_idem(K, chi) exactly.
    """
    if convolve(mu, mu) != mu:
        return IdempotentClass("not_idempotent")
    if mu.is_zero():
        return IdempotentClass("zero")
    parent = mu.parent
    supp = mu.support()
    selems = set(supp)
    if parent.identity not in selems:
        return IdempotentClass("idempotent_other")
    for g in supp:
        if parent.inv[g] not in selems:
            return IdempotentClass("idempotent_other")
        for h in supp:
            if parent.mul[g][h] not in selems:
                return IdempotentClass("idempotent_other")
    k = subgroup_from_elements(parent, supp, validate=False)
    order = len(supp)
    rots = []
    for g in supp:
        val = mu.coeff(g) * order
        rot = _as_character_rotation(val, parent.element_order(g))
        if rot is None:
            return IdempotentClass("idempotent_other")
        rots.append(rot)
    try:
        chi = Character(k, tuple(rots))
    except ValueError:
        return IdempotentClass("idempotent_other")
    assert mu == char_idem(k, chi)
    return IdempotentClass("contractive", k, chi)


# -- float companion -------------------------------------------------------------


class FloatMeasure:
    """complex128 coefficient vector; used where exact iteration is wasteful."""

    __slots__ = ("parent", "values")

    def __init__(self, parent: GroupTable, values: Iterable[complex]):
        vals = np.asarray(values, dtype=np.complex128)
        if vals.shape != (parent.order,):
            raise ValueError(f"need shape ({parent.order},), got {vals.shape}")
        self.parent = parent
        self.values = vals

    @classmethod
    def from_measure(cls, mu: Measure) -> "FloatMeasure":
        return cls(mu.parent, mu.to_complex())

    def convolve(self, other: "FloatMeasure") -> "FloatMeasure":
        if self.parent is not other.parent:
            raise MismatchedParents("float measures on different groups")
        out = np.zeros(self.parent.order, dtype=np.complex128)
        np.add.at(
            out,
            self.parent.mul_flat,
            np.multiply.outer(self.values, other.values).ravel(),
        )
        return FloatMeasure(self.parent, out)

    def adjoint(self) -> "FloatMeasure":
        return FloatMeasure(
            self.parent, np.conj(self.values[np.array(self.parent.inv)])
        )

    def __sub__(self, other: "FloatMeasure") -> "FloatMeasure":
        return FloatMeasure(self.parent, self.values - other.values)

    def max_abs(self) -> float:
        return float(np.abs(self.values).max())

    def distance(self, other: "FloatMeasure") -> float:
        return float(np.abs(self.values - other.values).max())

    def __repr__(self) -> str:
        return f"FloatMeasure({self.parent.name}, max_abs={self.max_abs():.3g})"


# -- serialization ------------------------------------------------------------


def measure_to_jsonable(mu: Measure, include_float: bool = False) -> dict:
    """JSON-ready dict; exact rationals as strings, support entries only."""
    entries = []
    for g in mu.support():
        row = [str(Fraction(c, mu.den)) for c in mu.num[g]]
        entries.append([mu.parent.labels[g], row, mu.conductor])
    obj: dict = {
        "group": mu.parent.name,
        "group_order": mu.parent.order,
        "entries": entries,
    }
    if include_float:
        vals = mu.to_complex()
        obj["float"] = {
            mu.parent.labels[g]: [float(vals[g].real), float(vals[g].imag)]
            for g in mu.support()
        }
    return obj


def measure_from_jsonable(parent: GroupTable, obj: dict) -> Measure:
    if obj.get("group") != parent.name or obj.get("group_order") != parent.order:
        raise PreconditionError(
            f"serialized measure belongs to {obj.get('group')!r}, not {parent.name!r}"
        )
    coeffs: list[CycloScalar] = [CycloScalar.zero() for _ in range(parent.order)]
    for label, row, conductor in obj["entries"]:
        g = parent.idx(label)
        coeffs[g] = CycloScalar(conductor, [Fraction(s) for s in row])
    return Measure.from_coeffs(parent, coeffs)
