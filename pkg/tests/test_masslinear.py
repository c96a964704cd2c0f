from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from toricmass import (
    PolytopeSpec,
    center_of_mass,
    char_number_facets,
    d_vector,
    fit_mass_linear,
    same_chamber,
    sample_chamber_points,
    scale_k,
    translate_k,
    verify_pair,
)
from toricmass import exact_arith as ea
from toricmass.errors import ChamberExit
from toricmass.families import blowup_cpn, delta_p_bundle, hirzebruch

from conftest import simplex_spec


def test_hirzebruch_linear_fit(hirz1):
    rep = fit_mass_linear(hirz1, (2, 1), seed=1)
    assert rep.is_linear
    assert rep.R == (-1, 0, 0, 1) and rep.C == 0 and rep.sumR == 0
    assert len(rep.fit_points) == hirz1.m + 1
    assert len(rep.verify_points) == 8
    assert rep.seed == 1


def test_hirzebruch_nonlinear(hirz1):
    rep = fit_mass_linear(hirz1, (1, 0), seed=1)
    assert not rep.is_linear
    assert any(v.residual != 0 for v in rep.verify_points)


def test_blowup_linear():
    rep = fit_mass_linear(blowup_cpn(3, 2, 1).spec, (1, 2, 1), seed=2)
    assert rep.is_linear and rep.sumR == 0


def test_fit_arguments(hirz1):
    with pytest.raises(ValueError):
        fit_mass_linear(hirz1, (1, 0), extra_checks=3)
    rep = fit_mass_linear(hirz1, (2, 1))
    assert isinstance(rep.seed, int)


def test_fit_points_stay_in_chamber(hirz1):
    rep = fit_mass_linear(hirz1, (1, 0), seed=4)
    for k in rep.fit_points + tuple(v.k for v in rep.verify_points):
        assert same_chamber(hirz1, hirz1.with_k(k))


def test_residuals_are_exact(hirz1):
    rep = fit_mass_linear(hirz1, (1, 0), seed=4)
    for v in rep.verify_points:
        cm = ea.dot(center_of_mass(hirz1.with_k(v.k)), (1, 0))
        assert v.residual == cm - (sum(r * kj for r, kj in zip(rep.R, v.k)) + rep.C)


def test_sampling_is_deterministic(hirz1):
    assert sample_chamber_points(hirz1, 5, 9) == sample_chamber_points(hirz1, 5, 9)
    assert sample_chamber_points(hirz1, 5, 9) != sample_chamber_points(hirz1, 5, 10)
    for k in sample_chamber_points(hirz1, 5, 9):
        assert all((64 * x).denominator <= 64 for x in k)


def test_d_vector_examples(square, hirz1):
    assert d_vector(square).d == (0, 0)
    assert ea.dot(d_vector(hirz1).d, (2, 1)) == 0
    for n in (2, 3):
        spec = simplex_spec(n, 2)
        shifted = spec.with_k(x + 1 for x in spec.k)
        assert d_vector(spec).d == ea.sub(center_of_mass(shifted), center_of_mass(spec))
        assert d_vector(spec).d == (0,) * n


def test_d_vector_chamber_exit():
    # the unit shift changes sigma by 2 - r, so r = 3 with sigma = 1/2 leaves
    spec = hirzebruch(3, Fraction(7, 2), 1).spec
    with pytest.raises(ChamberExit):
        d_vector(spec)


@pytest.mark.parametrize("fam, b", [
    (hirzebruch(2, 3, 1), (1, 1)),
    (blowup_cpn(3, 2, 1), (1, 2, 1)),
    (delta_p_bundle(2, (1, -1), 1, 2), (1, 0, -1)),
])
def test_verify_linear_pairs(fam, b):
    v = verify_pair(fam.spec, b, samples=4, seed=3)
    assert v.ok and v.report.is_linear and v.I_vanishes
    assert v.checks["sumR_chain"] and v.checks["I_equals_minus_B_sumR"] and v.checks["C_is_zero"]
    assert v.theorem_applies and "vanishing_iff_linear_sumR0" in v.checks
    assert v.d is not None and v.seed == 3


def test_verify_bundle_nonlinear_direction():
    # the Delta_2 bundle with a = (1, -1) is not mass linear along (1, 0, 1)
    v = verify_pair(delta_p_bundle(2, (1, -1), 1, 2).spec, (1, 0, 1), samples=4, seed=3)
    assert not v.report.is_linear and v.report.sumR == Fraction(31, 56)
    assert not v.I_vanishes and v.ok


def test_verify_blowup_nonlinear():
    v = verify_pair(blowup_cpn(3, 2, 1).spec, (1, 0, 0), samples=8, seed=7)
    assert not v.report.is_linear
    assert all(s.I_facets != 0 for s in v.all_points)
    assert v.checks["I_equals_minus_B_sumR"] is None
    assert v.ok and len(v.samples) == 8


def test_verify_labels_r_above_two():
    # the cube minus a corner: m = 7, n = 3, r = 4
    conormals = ((-1, 0, 0), (0, -1, 0), (0, 0, -1), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))
    spec = PolytopeSpec(3, conormals, (0, 0, 0, 2, 2, 2, 5))
    v = verify_pair(spec, (1, 0, 0), samples=4, seed=1)
    assert v.r == 4 and not v.theorem_applies
    assert "vanishing_iff_linear_sumR0" not in v.checks
    assert any("unproven" in key for key in v.info)


def test_verify_is_reproducible(hirz1):
    a = verify_pair(hirz1, (1, 0), samples=3, seed=5)
    b = verify_pair(hirz1, (1, 0), samples=3, seed=5)
    assert a.samples == b.samples and a.report == b.report


@given(st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=5), min_size=2, max_size=2),
       st.sampled_from([Fraction(1, 2), 2, 3]),
       st.sampled_from([(2, 1), (1, 0), (0, 1)]))
def test_linearity_invariant_under_symmetries(a, s, b):
    spec = hirzebruch(1, 2, 1).spec
    base = fit_mass_linear(spec, b, seed=0)
    for moved in (translate_k(spec, a), scale_k(spec, s)):
        rep = fit_mass_linear(moved, b, seed=0)
        assert rep.is_linear == base.is_linear
        if rep.is_linear:
            assert rep.R == base.R


def test_linear_implies_I_relation():
    spec = blowup_cpn(4, 3, 1).spec
    b = (1, 1, 2, 1)
    rep = fit_mass_linear(spec, b, seed=1)
    assert rep.is_linear and rep.sumR == 0
    for k in sample_chamber_points(spec, 3, seed=2):
        assert char_number_facets(spec.with_k(k), b).value == 0
