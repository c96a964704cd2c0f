import logging
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toricmass import (
    char_number_derivative,
    char_number_facets,
    char_number_vector,
    cm_at,
    cm_pairing_derivative,
    center_of_mass,
    dot_cm,
    scale_k,
    translate_k,
)
from toricmass import exact_arith as ea
from toricmass.errors import ChamberExit
from toricmass.families import blowup_cpn, delta_p_bundle, hirzebruch, hirzebruch_cm
from toricmass.masslinear import sample_chamber_points

from conftest import simplex_spec

rats = st.fractions(min_value=-3, max_value=3, max_denominator=6)
small_b = st.lists(st.integers(-4, 4), min_size=4, max_size=4)


def family_specs():
    return [hirzebruch(2, 3, 1).spec, hirzebruch(3, 5, 1).spec, blowup_cpn(3, 2, 1).spec,
            delta_p_bundle(2, (1, -1), 1, 2).spec]


def hirz_cm_b_derivative(r, lam, tau, b, dlam, dtau, dk1, dk2):
    """Quotient rule on the closed form ``<Cm, b> = <closed(lam, tau) - (k1, k2), b>``."""
    lam, tau = Fraction(lam), Fraction(tau)
    den = 3 * (2 * tau - r * lam)
    dden = 3 * (2 * dtau - r * dlam)
    n1 = 3 * tau ** 2 - 3 * r * tau * lam + r ** 2 * lam ** 2
    dn1 = 6 * tau * dtau - 3 * r * (dtau * lam + tau * dlam) + 2 * r ** 2 * lam * dlam
    n2 = 3 * lam * tau - 2 * r * lam ** 2
    dn2 = 3 * (dlam * tau + lam * dtau) - 4 * r * lam * dlam
    dx = (dn1 * den - n1 * dden) / den ** 2 - dk1
    dy = (dn2 * den - n2 * dden) / den ** 2 - dk2
    return b[0] * dx + b[1] * dy


def test_hirzebruch_facet_sum(hirz1):
    res = char_number_facets(hirz1, (1, 0))
    assert res.value == Fraction(-2, 9)
    assert res.cm_pairing == Fraction(7, 9)
    assert [t for _, t in res.facet_terms] == [Fraction(-7, 9), Fraction(4, 9),
                                                Fraction(-5, 18), Fraction(13, 18)]
    assert [j for j, _ in res.facet_terms] == [0, 1, 2, 3]
    assert res.value == -2 * sum(t for _, t in res.facet_terms)


def test_mass_linear_direction_vanishes(hirz1):
    assert char_number_facets(hirz1, (2, 1)).value == 0
    assert char_number_derivative(hirz1, (2, 1)) == 0
    assert char_number_facets(hirz1, (0, 0)).value == 0


def test_derivative_route(hirz1):
    assert cm_pairing_derivative(hirz1, (1, 0), (1, 1, 1, 1)) == Fraction(2, 27)
    # tau grows by 3, lambda by 2, k1 by 1 along (1,1,1,1)
    assert hirz_cm_b_derivative(1, 1, 2, (1, 0), 2, 3, 1, 1) == Fraction(2, 27)
    assert cm_pairing_derivative(hirz1, (1, 0), (0, 0, 0, 0)) == 0
    assert char_number_derivative(hirz1, (1, 0)) == Fraction(-2, 9)
    assert char_number_derivative(scale_k(hirz1, 2), (1, 0)) == Fraction(-8, 9)


def test_square_derivatives(square):
    assert cm_pairing_derivative(square, (1, 0), (0, 0, 1, 0)) == Fraction(1, 2)
    assert dot_cm(square) == (0, 0)


def test_bad_b_rejected(hirz1):
    with pytest.raises(ValueError):
        char_number_facets(hirz1, (1, 0, 0))
    with pytest.raises(ValueError):
        char_number_facets(hirz1, (Fraction(1, 2), 0))
    with pytest.raises(ValueError):
        cm_pairing_derivative(hirz1, (1, 0), (1, 1))


def test_non_delzant_warns(bad_triangle, caplog):
    with caplog.at_level(logging.WARNING):
        char_number_facets(bad_triangle, (1, 0))
    assert "not Delzant" in caplog.text


@pytest.mark.parametrize("r", [1, 2, 3])
def test_dot_cm_at_check_point(r):
    spec = hirzebruch(r, r + 1, 1).spec
    eps = Fraction(1, 10)
    got = dot_cm(spec, at=(eps,) * 4)
    assert got == (Fraction(r * r, 12), Fraction(-r, 6))
    # independent of eps
    assert dot_cm(spec, at=(Fraction(1, 7),) * 4) == got


def test_dot_cm_continuation_matches_direct():
    spec = hirzebruch(1, 2, 1).spec
    eps = (Fraction(1, 10),) * 4
    assert dot_cm(spec.with_k(eps)) == (Fraction(1, 12), Fraction(-1, 6))
    assert dot_cm(spec, at=eps) == dot_cm(spec.with_k(eps))
    assert cm_at(spec, eps) == center_of_mass(spec.with_k(eps))


@pytest.mark.parametrize("r", [2, 3])
def test_cm_continuation_matches_closed_form(r):
    spec = hirzebruch(r, r + 1, 1).spec
    eps = Fraction(1, 10)
    # outside (r = 3) or on the boundary of (r = 2) the chamber
    lam, tau = 2 * eps, (r + 2) * eps
    expect = ea.sub(hirzebruch_cm(r, lam, tau), (eps, eps))
    assert cm_at(spec, (eps,) * 4) == expect
    assert expect == (Fraction(r * r, 12) * eps, Fraction(-r, 6) * eps)


def test_chamber_exit_reported():
    # a point that cannot be reached: the segment passes through an empty region
    spec = hirzebruch(1, 2, 1).spec
    with pytest.raises(ChamberExit):
        from toricmass.invariant import _chamber_nodes
        _chamber_nodes(spec, (0, 0, 0, 0), (1, 1, 1, 1), 5)


@pytest.mark.parametrize("spec", family_specs())
def test_methods_agree_on_samples(spec):
    for k in [spec.k] + sample_chamber_points(spec, 3, seed=11):
        s = spec.with_k(k)
        assert char_number_vector(s, "facets") == char_number_vector(s, "derivative")
    with pytest.raises(ValueError):
        char_number_vector(spec, "nope")


@given(st.sampled_from(family_specs()), small_b, small_b, st.integers(-3, 3))
def test_linear_in_b(spec, b1, b2, c):
    n = spec.dim
    b1, b2 = b1[:n], b2[:n]
    I1 = char_number_facets(spec, b1).value
    I2 = char_number_facets(spec, b2).value
    assert char_number_facets(spec, [x + y for x, y in zip(b1, b2)]).value == I1 + I2
    assert char_number_facets(spec, [c * x for x in b1]).value == c * I1


@given(st.sampled_from(family_specs()), st.lists(rats, min_size=3, max_size=3), small_b)
def test_translation_invariance(spec, a, b):
    a, b = tuple(a[:spec.dim]), b[:spec.dim]
    assert char_number_facets(translate_k(spec, a), b).value == char_number_facets(spec, b).value


@given(st.sampled_from(family_specs()),
       st.fractions(min_value=Fraction(1, 4), max_value=4, max_denominator=6), small_b)
def test_homogeneity(spec, s, b):
    b = b[:spec.dim]
    n = spec.dim
    assert char_number_facets(scale_k(spec, s), b).value == s ** n * char_number_facets(spec, b).value


@pytest.mark.parametrize("r", [1, 2, 3])
def test_hirzebruch_ratio(r):
    spec = hirzebruch(r, r + 2, 1).spec
    for k in [spec.k] + sample_chamber_points(spec, 3, seed=r):
        s = spec.with_k(k)
        I10 = char_number_facets(s, (1, 0)).value
        assert char_number_facets(s, (0, 1)).value == Fraction(-2, r) * I10
        assert I10 != 0


def test_blowup_ratio():
    spec = blowup_cpn(3, 2, 1).spec
    for k in sample_chamber_points(spec, 2, seed=5):
        s = spec.with_k(k)
        base = char_number_facets(s, (1, 0, 0)).value
        for b in ((0, 1, 0), (0, 0, 1), (2, -1, 1)):
            assert char_number_facets(s, b).value == (b[0] + b[1] - 3 * b[2]) * base


def test_simplex_invariant_vanishes():
    # Cm of a simplex is linear in k, so every b gives zero
    spec = simplex_spec(3, 2)
    assert char_number_vector(spec) == (0, 0, 0)
    assert char_number_vector(spec, "derivative") == (0, 0, 0)
