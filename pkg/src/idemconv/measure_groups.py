"""Groups of measures attached to a contractive idempotent.

N_{K,rho} and G_{K,rho} (the latter computed by two independent
definitions and cross-checked), the projective family of translates
delta_g * rho*m_K, local-unitary membership, the product-group
verification of the two-idempotent case, and unitary elements of abelian
group algebras (nu_u synthesis, skew exponentials).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Union

import numpy as np

from .characters import Character, character_group, kernel
from .commutation import classify_pair
from .cyclo import CycloScalar
from .errors import PreconditionError
from .groups import (
    GroupTable,
    Subgroup,
    centralizer,
    closure,
    full_subgroup,
    intersection,
    left_cosets,
    normalizer,
    quotient_group,
    subgroup_from_elements,
)
from .measures import (
    FloatMeasure,
    Measure,
    adjoint,
    char_idem,
    convolve,
    dirac,
)

__all__ = [
    "n_k_rho",
    "g_k_rho",
    "GammaElement",
    "gamma_elements",
    "omega_class_count",
    "unit_multiple",
    "is_local_unitary",
    "Prop43Report",
    "verify_prop_43",
    "nu_u",
    "exp_skew",
    "exp_char_diagonal",
]


def n_k_rho(k: Subgroup, rho: Character) -> Subgroup:
    """Normalizer of K intersected with the normalizer of ker rho."""
    if rho.domain != k:
        raise PreconditionError("rho is not a character of K")
    return intersection(normalizer(k), normalizer(kernel(rho)))


def g_k_rho(k: Subgroup, rho: Character) -> Subgroup:
    """Elements whose point mass commutes with rho*m_K under convolution.

    Computed twice: directly (exact measure equality for every g) and as
    the preimage in N_{K,rho} of the centralizer of K/ker(rho) inside
    N_{K,rho}/ker(rho); the two must agree.
    """
    parent = k.parent
    base = char_idem(k, rho)
    direct = tuple(
        g
        for g in range(parent.order)
        if base.translate_left(g) == base.translate_right(g)
    )

    nkr = n_k_rho(k, rho)
    ker = kernel(rho)
    q = quotient_group(nkr, ker)
    k_image = subgroup_from_elements(
        q.group, {q.projection[g] for g in k.elements}, validate=False
    )
    central = centralizer(k_image).element_set
    via_quotient = tuple(
        g for g in nkr.elements if q.projection[g] in central
    )
    assert direct == via_quotient, (
        "the convolution and quotient definitions of G_{K,rho} disagree"
    )
    return subgroup_from_elements(parent, direct, validate=False)


@dataclass(frozen=True)
class GammaElement:
    """One translate delta_g * (rho m_K), tracked projectively by g.

    The continuous unit-circle scalar is not stored; scalar identities
    are only ever checked for root-of-unity multiples.
    """

    g: int
    k: Subgroup
    rho: Character

    def realize(self) -> Measure:
        return char_idem(self.k, self.rho).translate_left(self.g)


def gamma_elements(k: Subgroup, rho: Character) -> tuple[GammaElement, ...]:
    return tuple(GammaElement(g, k, rho) for g in g_k_rho(k, rho).elements)


def omega_class_count(k: Subgroup, rho: Character) -> int:
    """Number of classes of G_{K,rho} under g ~ gk, k in K."""
    return len(left_cosets(g_k_rho(k, rho), k).cosets)


def unit_multiple(candidate: Measure, base: Measure) -> Optional[CycloScalar]:
    """The unit-modulus z with candidate = z * base, if one exists.

    Works without field division: only bases whose leading coefficient has
    rational modulus squared (rational multiples of roots of unity, which
    covers every translate of a char_idem) are invertible here; anything
    else reports None.
    """
    bs = base.support()
    if candidate.support() != bs:
        return None
    if not bs:
        return None
    b0 = base.coeff(bs[0])
    norm = b0 * b0.conjugate()
    if not norm.is_rational():
        return None
    r = norm.rational()
    if r == 0:
        return None
    z = candidate.coeff(bs[0]) * b0.conjugate() * (1 / r)
    if not z.is_unit_modulus():
        return None
    if candidate != base.scale(z):
        return None
    return z


def is_local_unitary(nu: Measure, k: Subgroup, rho: Character) -> bool:
    """nu* conv nu = rho m_K = nu conv nu* (partial-isometry identity)."""
    base = char_idem(k, rho)
    star = adjoint(nu)
    if convolve(star, nu) != base or convolve(nu, star) != base:
        return False
    assert convolve(nu, base) == nu == convolve(base, nu), (
        "local unitary fails the absorption identities"
    )
    return True


@dataclass(frozen=True)
class Prop43Report:
    k12: Subgroup
    rho12: Character
    h1: Subgroup
    h2: Subgroup
    span: Subgroup  # <H1 H2>
    gamma_group: Subgroup  # G_{K1K2, rho}
    proper_inclusion: bool
    forward_pairs: int
    forward_realized: int
    reverse_realized: int
    passed: bool


def verify_prop_43(
    k1: Subgroup, rho1: Character, k2: Subgroup, rho2: Character
) -> Prop43Report:
    """Product-group identity for a commuting pair of idempotents.

    Forward: every product delta_{g1} * rho1 m_K1 * delta_{g2} * rho2 m_K2
    (g_j ranging over G_{K_j,rho_j}) that is a unit multiple of a translate
    of rho m_{K1K2} has its translation part inside <H1 H2>.  Reverse:
    every element of <H1 H2> is realized by such a product with scalar
    exactly 1.  Also reports whether <H1 H2> is proper in G_{K1K2,rho}.
    """
    verdict = classify_pair(k1, rho1, k2, rho2)
    if verdict.kind != "commute":
        raise PreconditionError(
            f"pair does not satisfy the commuting case (got {verdict.kind})"
        )
    k12 = verdict.product_subgroup
    rho12 = verdict.product_character
    parent = k1.parent
    mul = parent.mul

    g_prod = g_k_rho(k12, rho12)
    h1 = intersection(g_k_rho(k1, rho1), g_prod)
    h2 = intersection(g_k_rho(k2, rho2), g_prod)
    span = closure(parent, h1.elements + h2.elements)
    span_set = span.element_set
    g_prod_set = g_prod.element_set

    idem1 = char_idem(k1, rho1)
    idem2 = char_idem(k2, rho2)
    idem12 = char_idem(k12, rho12)
    k12_set = k12.element_set

    # forward: conditional inclusion over all Gamma generator pairs
    big1 = g_k_rho(k1, rho1)
    big2 = g_k_rho(k2, rho2)
    pairs = 0
    realized = 0
    for g1 in big1.elements:
        a = idem1.translate_left(g1)
        for g2 in big2.elements:
            pairs += 1
            prod = convolve(a, idem2.translate_left(g2))
            supp = prod.support()
            if len(supp) != k12.order:
                continue
            s = supp[0]
            if sorted(mul[s][x] for x in k12.elements) != list(supp):
                continue
            z = unit_multiple(prod, idem12.translate_left(s))
            if z is None or s not in g_prod_set:
                continue
            realized += 1
            assert s in span_set, (
                "forward inclusion fails: product lands outside <H1 H2>"
            )

    # reverse: BFS realization by pair blocks, scalar 1
    blocks: dict[int, Measure] = {}
    for x1 in h1.elements:
        b1 = idem1.translate_left(x1)
        for x2 in h2.elements:
            g = mul[x1][x2]
            if g in blocks:
                continue
            pm = convolve(b1, idem2.translate_left(x2))
            assert pm == idem12.translate_left(g), (
                "pair block does not collapse to a translate of rho m_K1K2"
            )
            blocks[g] = pm
    node_measure: dict[int, Measure] = {parent.identity: idem12}
    frontier = [parent.identity]
    while frontier:
        nxt = []
        for g in frontier:
            pg = node_measure[g]
            for b, pb in blocks.items():
                t = mul[g][b]
                if t in node_measure:
                    continue
                pt = convolve(pg, pb)
                assert pt == idem12.translate_left(t), (
                    "reverse realization produced a non-unit scalar"
                )
                node_measure[t] = pt
                nxt.append(t)
        frontier = nxt
    assert set(node_measure) == span_set, (
        "pair blocks fail to reach all of <H1 H2>"
    )

    return Prop43Report(
        k12,
        rho12,
        h1,
        h2,
        span,
        g_prod,
        proper_inclusion=span.order < g_prod.order,
        forward_pairs=pairs,
        forward_realized=realized,
        reverse_realized=len(node_measure),
        passed=True,
    )


UnitLike = Union[CycloScalar, Fraction, int]


def nu_u(h: GroupTable, u: Mapping[Character, UnitLike]) -> Measure:
    """Measure with prescribed unit character values on an abelian group.

    nu_u = delta_e + sum over characters of (u_chi - 1) conj(chi) m_H, so
    that sum_g nu_u(g) chi(g) = u_chi exactly for every chi; u must assign
    a unit-modulus (root of unity) scalar to every character.
    """
    if not h.is_abelian:
        raise PreconditionError("nu_u requires an abelian group")
    chars = character_group(full_subgroup(h))
    vals: dict[Character, CycloScalar] = {}
    for chi in chars:
        if chi not in u:
            raise PreconditionError("u must be defined on every character")
        z = u[chi]
        if not isinstance(z, CycloScalar):
            z = CycloScalar.from_rational(z)
        if not z.is_unit_modulus():
            raise PreconditionError("u values must have unit modulus")
        vals[chi] = z
    n = h.order
    inv = h.inv
    coeffs = []
    for g in range(n):
        c = CycloScalar.from_rational(1 if g == h.identity else 0)
        for chi in chars:
            c = c + (vals[chi] - 1) * chi.value(inv[g]) * Fraction(1, n)
        coeffs.append(c)
    out = Measure.from_coeffs(h, coeffs)
    for chi in chars:
        total = CycloScalar.zero()
        for g in range(n):
            total = total + out.coeff(g) * chi.value(g)
        assert total == vals[chi], "Fourier property failed"
    return out


def exp_skew(
    lam: Measure, *, tol: float = 1e-15, max_terms: int = 200
) -> FloatMeasure:
    """Float exponential series of an exactly skew-adjoint measure.

    Terms are added until the next one falls below tol in max-abs; the
    result is checked unitary: ||exp(lam)* conv exp(lam) - delta_e||_inf
    must be below 1e-9.
    """
    if adjoint(lam) != -lam:
        raise PreconditionError("exp_skew needs an exactly skew-adjoint measure")
    parent = lam.parent
    x = FloatMeasure.from_measure(lam)
    acc = FloatMeasure.from_measure(dirac(parent, parent.identity))
    term = acc
    for k in range(1, max_terms + 1):
        term = FloatMeasure(parent, term.convolve(x).values / k)
        acc = FloatMeasure(parent, acc.values + term.values)
        if term.max_abs() < tol:
            break
    ident = FloatMeasure.from_measure(dirac(parent, parent.identity))
    residual = acc.adjoint().convolve(acc).distance(ident)
    assert residual < 1e-9, f"exponential is not unitary (residual {residual:.3g})"
    return acc


def exp_char_diagonal(lam: Measure) -> FloatMeasure:
    """Closed-form exponential on an abelian group via characters.

    The transform T(mu)(chi) = sum_g mu(g) chi(g) turns convolution into
    multiplication, so exp(lam) has transform exp(T(lam)(chi)); inverting
    gives the coefficients.  Serves as the oracle for exp_skew.
    """
    parent = lam.parent
    if not parent.is_abelian:
        raise PreconditionError("character diagonalization needs an abelian group")
    chars = character_group(full_subgroup(parent))
    n = parent.order
    coeffs = lam.to_complex()
    table = np.array(
        [[chi.value(g).to_complex() for g in range(n)] for chi in chars]
    )
    transformed = table @ coeffs
    w = np.exp(transformed)
    inv_idx = np.array(parent.inv)
    out = table[:, inv_idx].T @ w / n
    return FloatMeasure(parent, out)
