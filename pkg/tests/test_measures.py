"""Exact measures: convolution, adjoints, idempotent classification."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from idemconv import (
    CycloScalar,
    Measure,
    adjoint,
    char_idem,
    character_group,
    classify_idempotent,
    closure,
    convolve,
    cyclic_group,
    dirac,
    full_subgroup,
    haar,
    support,
    symmetric_group,
    trivial_subgroup,
    tv_norm,
)
from idemconv.errors import MismatchedParents
from idemconv.measures import is_probability, measure_from_jsonable, measure_to_jsonable


@pytest.fixture(scope="module")
def c4():
    return cyclic_group(4)


def test_dirac_convolution_follows_table(s3):
    a, b = s3.idx("(12)"), s3.idx("(13)")
    prod = convolve(dirac(s3, a), dirac(s3, b))
    assert prod == dirac(s3, s3.op(a, b))


def test_haar_is_absorbing(s3):
    m = haar(full_subgroup(s3))
    assert convolve(m, m) == m
    assert convolve(dirac(s3, 4), m) == m
    assert convolve(m, dirac(s3, 1)) == m
    assert is_probability(m)
    assert tv_norm(m) == pytest.approx(1.0)


def test_haar_on_subgroup(s3):
    k = closure(s3, [s3.idx("(123)")])
    m = haar(k)
    assert support(m) == k.elements
    assert m.coeff(0).rational() == Fraction(1, 3)
    assert convolve(m, m) == m


def test_char_idem_is_idempotent(d4):
    rot = closure(d4, [d4.idx("r")])
    for chi in character_group(rot):
        m = char_idem(rot, chi)
        assert convolve(m, m) == m
        assert adjoint(m) == m
        cls = classify_idempotent(m)
        assert cls.kind == "contractive"
        assert cls.subgroup == rot
        assert cls.character == chi


def test_char_idem_coefficients(c4):
    full = full_subgroup(c4)
    chi = [c for c in character_group(full) if c.rotation(1) == Fraction(1, 4)][0]
    m = char_idem(full, chi)
    # (1/4) sum_g chi(g) delta_g
    assert m.coeff(0) == CycloScalar.from_rational(Fraction(1, 4))
    assert m.coeff(1) == CycloScalar.root_of_unity(Fraction(1, 4)) * Fraction(1, 4)
    assert m.coeff(2) == CycloScalar.from_rational(Fraction(-1, 4))


def test_classification_kinds(c4):
    full = full_subgroup(c4)
    sub2 = closure(c4, [2])
    chi_i = [c for c in character_group(full) if c.rotation(1) == Fraction(1, 4)][0]

    assert classify_idempotent(Measure.zero(c4)).kind == "zero"
    assert classify_idempotent(dirac(c4, 1)).kind == "not_idempotent"
    assert classify_idempotent(haar(sub2)).kind == "contractive"
    # sum of two orthogonal contractive idempotents: idempotent, norm > 1
    mix = char_idem(sub2, character_group(sub2)[0]) + char_idem(full, chi_i)
    assert convolve(mix, mix) == mix
    assert classify_idempotent(mix).kind == "idempotent_other"


def test_classify_trivial_group():
    g = cyclic_group(1)
    cls = classify_idempotent(haar(full_subgroup(g)))
    assert cls.kind == "contractive"
    assert cls.subgroup.order == 1
    assert cls.character.is_trivial


def test_adjoint_reverses_convolution(s3):
    a = dirac(s3, s3.idx("(123)")) * CycloScalar.root_of_unity(Fraction(1, 3))
    b = dirac(s3, s3.idx("(12)")) + dirac(s3, 0) * Fraction(1, 2)
    assert adjoint(convolve(a, b)) == convolve(adjoint(b), adjoint(a))
    assert adjoint(adjoint(a)) == a


def test_translate(s3):
    m = haar(closure(s3, [s3.idx("(12)")]))
    g = s3.idx("(123)")
    left = m.translate_left(g)
    assert left == convolve(dirac(s3, g), m)
    right = m.translate_right(g)
    assert right == convolve(m, dirac(s3, g))


def test_mismatched_parents_rejected(s3, d4):
    with pytest.raises(MismatchedParents):
        convolve(dirac(s3, 0), dirac(d4, 0))
    with pytest.raises(MismatchedParents):
        dirac(s3, 0) + dirac(d4, 0)


def test_jsonable_round_trip(c4):
    full = full_subgroup(c4)
    chi = [c for c in character_group(full) if c.rotation(1) == Fraction(1, 4)][0]
    m = char_idem(full, chi) + dirac(c4, 2) * Fraction(-7, 3)
    obj = measure_to_jsonable(m)
    assert measure_from_jsonable(c4, obj) == m


def test_tv_norm_values(c4):
    m = dirac(c4, 1) * Fraction(3, 4) - dirac(c4, 2) * Fraction(1, 4)
    assert tv_norm(m) == pytest.approx(1.0)
    assert tv_norm(Measure.zero(c4)) == 0.0


def test_zero_drops_from_support(c4):
    m = dirac(c4, 1) - dirac(c4, 1)
    assert m.is_zero()
    assert support(m) == ()


def coeff_strategy():
    return st.tuples(
        st.fractions(min_value=-2, max_value=2, max_denominator=4),
        st.integers(0, 11),
    ).map(lambda t: CycloScalar.root_of_unity(Fraction(t[1], 12)) * t[0])


def measures_on(g):
    return st.lists(
        st.tuples(st.integers(0, g.order - 1), coeff_strategy()),
        min_size=0,
        max_size=3,
    ).map(
        lambda pairs: sum(
            (dirac(g, x) * c for x, c in pairs), Measure.zero(g)
        )
    )


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_convolution_algebra_laws(data):
    g = symmetric_group(3)
    mu = data.draw(measures_on(g))
    nu = data.draw(measures_on(g))
    pi = data.draw(measures_on(g))
    assert convolve(convolve(mu, nu), pi) == convolve(mu, convolve(nu, pi))
    assert convolve(mu, nu + pi) == convolve(mu, nu) + convolve(mu, pi)
    e = dirac(g, 0)
    assert convolve(e, mu) == mu
    assert convolve(mu, e) == mu


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_adjoint_is_antihomomorphism(data):
    g = symmetric_group(3)
    mu = data.draw(measures_on(g))
    nu = data.draw(measures_on(g))
    assert adjoint(mu + nu) == adjoint(mu) + adjoint(nu)
    assert adjoint(convolve(mu, nu)) == convolve(adjoint(nu), adjoint(mu))
