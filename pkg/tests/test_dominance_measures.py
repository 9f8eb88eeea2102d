import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import norm

from stochdom import analytic_rv as rv
from stochdom.cases import CASE1_A, CASE1_B, FLIP_A, FLIP_B, FLIP_B1
from stochdom.dominance_measures import (MEASURES, DominanceVerdict, c_d_analytic, c_p_analytic,
                                         classify, dominance_density, reference_measure)
from stochdom.errors import InputError, UndefinedDensityError
from stochdom.properties import random_model

TOL = 1e-8
N01 = rv.gaussian(0, 1)
N11 = rv.gaussian(1, 1)


def models():
    return st.integers(0, 2**32 - 1).map(lambda s: random_model(np.random.default_rng(s)))


class TestCP:
    def test_identical(self):
        assert c_p_analytic(N01, N01).value == pytest.approx(0.5, abs=TOL)

    def test_gaussian_shift(self):
        assert c_p_analytic(N01, N11).value == pytest.approx(norm.cdf(1 / math.sqrt(2)), abs=TOL)
        assert c_p_analytic(N01, N11).value == pytest.approx(0.7602500, abs=1e-7)

    def test_flip_pair(self):
        assert c_p_analytic(FLIP_A, FLIP_B).value == pytest.approx(0.495, abs=TOL)

    def test_error_estimate_reported(self):
        m = c_p_analytic(N01, N11)
        assert 0 <= m.quadrature_error_estimate <= TOL
        assert m.measure_id == "c_p"


class TestDensity:
    def test_shifted_gaussians(self):
        assert dominance_density(N01, N11, 0.0) == pytest.approx(0.3989423, abs=1e-7)

    def test_flip_pair(self):
        # the 1e-10 equality band trims ~1e-10 of B-mass near -0.5, hence not 1e-9
        assert dominance_density(FLIP_A, FLIP_B, -0.25) == pytest.approx(-2.0, abs=TOL)
        assert dominance_density(FLIP_A, FLIP_B, 0.5) == 0.0

    def test_integrates_to_d_integral(self):
        # the positive part integrates to 1 and the negative part to -1
        x = np.linspace(-0.5, 1, 300_001)
        dens = dominance_density(FLIP_A, FLIP_B, x)
        assert np.trapezoid(np.minimum(dens, 0), x) == pytest.approx(-1.0, abs=1e-3)

    def test_equal_models(self):
        with pytest.raises(UndefinedDensityError):
            dominance_density(N01, rv.gaussian(0, 1), 0.0)


class TestCD:
    def test_equal(self):
        assert c_d_analytic(N01, N01).value == 0.5
        assert c_d_analytic(FLIP_B, FLIP_B).value == 0.5

    def test_flip_triple(self):
        assert c_d_analytic(FLIP_A, FLIP_B1).value == pytest.approx(1.0, abs=TOL)
        assert c_d_analytic(FLIP_A, FLIP_B).value == pytest.approx(0.0, abs=TOL)

    def test_shift_dominance(self):
        assert c_d_analytic(N01, N11).value == pytest.approx(1.0, abs=TOL)
        assert c_d_analytic(N11, N01).value == pytest.approx(0.0, abs=TOL)

    def test_bad_tol(self):
        with pytest.raises(InputError):
            c_d_analytic(N01, N11, tol=0)


class TestClassify:
    def test_examples(self):
        assert classify(N01, N11) is DominanceVerdict.A_DOMINATES
        assert classify(N11, N01) is DominanceVerdict.B_DOMINATES
        assert classify(CASE1_A, CASE1_B) is DominanceVerdict.CROSS
        assert classify(N01, rv.gaussian(0, 1)) is DominanceVerdict.EQUAL

    def test_probe_minimum(self):
        with pytest.raises(InputError):
            classify(N01, N11, probes=10)


class TestReferenceMeasures:
    def test_examples(self):
        assert reference_measure(N01, N01, "tv").value == pytest.approx(0, abs=TOL)
        assert reference_measure(N01, N11, "kl").value == pytest.approx(0.5, abs=TOL)
        assert reference_measure(N01, N11, "wasserstein").value == pytest.approx(1.0, abs=TOL)

    def test_closed_forms(self):
        # tv between unit-variance gaussians one apart is 2 Phi(1/2) - 1
        assert reference_measure(N01, N11, "tv").value == pytest.approx(2 * norm.cdf(0.5) - 1,
                                                                       abs=TOL)
        # Bhattacharyya coefficient exp(-1/8)
        h = reference_measure(N01, N11, "hellinger").value
        assert h ** 2 == pytest.approx(2 - 2 * math.exp(-1 / 8), abs=TOL)
        assert reference_measure(N01, N11, "signed_wasserstein").value == pytest.approx(1.0,
                                                                                      abs=TOL)

    def test_kl_support_violation(self):
        m = reference_measure(rv.uniform(0, 2), rv.uniform(0, 1), "kl")
        assert m.infinite and m.value == math.inf
        assert not reference_measure(rv.uniform(0, 1), rv.uniform(0, 2), "kl").infinite
        assert reference_measure(rv.uniform(0, 1), rv.uniform(0, 2), "kl").value == \
            pytest.approx(math.log(2), abs=TOL)

    def test_js_without_half(self):
        js = reference_measure(rv.uniform(0, 1), rv.uniform(2, 3), "js").value
        assert js == pytest.approx(2 * math.log(2), abs=TOL)

    def test_c_i_disjoint(self):
        assert reference_measure(rv.uniform(0, 1), rv.uniform(2, 3), "c_i").value == \
            pytest.approx(0.5, abs=TOL)
        assert reference_measure(N01, rv.gaussian(40, 1), "c_i").value == \
            pytest.approx(0.5, abs=TOL)

    def test_unknown(self):
        with pytest.raises(InputError):
            reference_measure(N01, N11, "bogus")


@settings(max_examples=40, deadline=None)
@given(models(), models())
def test_antisymmetry(a, b):
    assert abs(c_p_analytic(a, b).value + c_p_analytic(b, a).value - 1) <= 2 * TOL
    if classify(a, b) is not DominanceVerdict.EQUAL:
        assert abs(c_d_analytic(a, b).value + c_d_analytic(b, a).value - 1) <= 2 * TOL


@settings(max_examples=40, deadline=None)
@given(models(), models())
def test_inversion(a, b):
    na, nb = rv.transform(a, -1, 0), rv.transform(b, -1, 0)
    assert abs(c_p_analytic(na, nb).value - (1 - c_p_analytic(a, b).value)) <= 2 * TOL
    assert abs(c_d_analytic(na, nb).value - (1 - c_d_analytic(a, b).value)) <= 2 * TOL


@settings(max_examples=40, deadline=None)
@given(models(), models(), st.floats(-5, 5), st.floats(0.2, 5))
def test_translation_and_scaling(a, b, shift, scale):
    ta, tb = rv.transform(a, scale, shift), rv.transform(b, scale, shift)
    assert abs(c_p_analytic(ta, tb).value - c_p_analytic(a, b).value) <= 2 * TOL
    assert abs(c_d_analytic(ta, tb).value - c_d_analytic(a, b).value) <= 2 * TOL


@settings(max_examples=40, deadline=None)
@given(models(), models())
def test_values_in_range(a, b):
    for m in MEASURES:
        v = reference_measure(a, b, m).value
        if m in ("c_p", "c_d", "tv"):
            assert 0 <= v <= 1
        elif m == "c_i":
            assert 0 <= v <= 0.5
        elif m != "signed_wasserstein":
            assert v >= 0


@settings(max_examples=40, deadline=None)
@given(models(), st.floats(0.01, 3))
def test_implication_chain(a, shift):
    b = rv.transform(a, 1, shift)
    assert classify(a, b) is DominanceVerdict.A_DOMINATES
    c_d = c_d_analytic(a, b).value
    assert abs(c_d - 1) <= TOL
    assert c_p_analytic(a, b).value > 0.5


@settings(max_examples=40, deadline=None)
@given(models(), models())
def test_dominance_implies_unit_rate(a, b):
    c_p = c_p_analytic(a, b).value
    c_d = c_d_analytic(a, b).value
    if classify(a, b) is DominanceVerdict.A_DOMINATES:
        assert abs(c_d - 1) <= TOL
    if abs(c_d - 1) <= TOL:
        assert c_p > 0.5
    if abs(c_p - 1) <= TOL:
        assert abs(c_d - 1) <= TOL


@settings(max_examples=40, deadline=None)
@given(models(), models())
def test_half_c_i_implies_dominance(a, b):
    if abs(reference_measure(a, b, "c_i").value - 0.5) <= TOL:
        assert classify(a, b) is DominanceVerdict.A_DOMINATES


@settings(max_examples=30, deadline=None)
@given(models(), st.floats(5, 10))
def test_separated_pair_chain(a, gap):
    lo, hi = a.bounds()
    b = rv.transform(a, 1, (hi - lo) + gap)
    assert abs(c_p_analytic(a, b).value - 1) <= 1e-6
    assert abs(c_d_analytic(a, b).value - 1) <= TOL
