import logging
import math

import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from errors import ConvergenceError, DomainError
from special_fn import (
    BesselOrder,
    HypParams,
    bessel_j,
    bessel_prefactor,
    confluent_1f1,
    confluent_limit,
    gamma,
    gauss_2f1,
    hypergeometric_residual,
    kummer_residual,
    normalized_bessel,
    pochhammer,
)


# ======================== Gamma ========================

def test_gamma_trivial_values():
    assert gamma(1) == pytest.approx(1.0, rel=1e-14)
    assert gamma(0.5).real == pytest.approx(math.sqrt(math.pi), rel=1e-13)


@pytest.mark.parametrize("x", np.linspace(0.5, 50.0, 41).tolist() + [7.3])
def test_gamma_matches_reference(x):
    assert_allclose(gamma(x).real, sc.gamma(x), rtol=1e-12)


def test_gamma_reflection():
    assert_allclose(gamma(-0.5).real, -2.0 * math.sqrt(math.pi), rtol=1e-12)
    assert_allclose(gamma(-2.5).real, sc.gamma(-2.5), rtol=1e-12)


@pytest.mark.parametrize("x", [0, -1, -7])
def test_gamma_poles(x):
    with pytest.raises(DomainError):
        gamma(x)


# ======================== Pochhammer ========================

def test_pochhammer_examples():
    assert pochhammer(3.7, 0) == 1
    assert pochhammer(1, 5) == 120
    assert pochhammer(2.5, 3) == pytest.approx(39.375, rel=1e-15)


@given(st.floats(min_value=-10, max_value=10), st.integers(min_value=0, max_value=20))
def test_pochhammer_recursion_is_exact(m, k):
    assert pochhammer(m, k + 1) == pochhammer(m, k) * (m + k)


def test_pochhammer_rejects_negative_k():
    with pytest.raises(DomainError):
        pochhammer(1.0, -1)


# ======================== 2F1 ========================

def test_2f1_at_zero_is_exactly_one():
    res = gauss_2f1(HypParams(0.3 + 1j, 2.0, 1.5), 0.0)
    assert res.value == 1
    assert res.terms_used >= 1


def test_2f1_log_identity():
    res = gauss_2f1(HypParams(1, 1, 2), 0.5)
    assert abs(res.value - 2.0 * math.log(2.0)) <= 1e-12
    assert res.tail_estimate <= 1e-12 * abs(res.value)


def test_2f1_negative_axis_matches_reference():
    res = gauss_2f1(HypParams(0.75, 0.25, 1.5), -0.8)
    assert_allclose(res.value.real, sc.hyp2f1(0.75, 0.25, 1.5, -0.8), rtol=1e-11)
    assert abs(res.value.imag) <= 1e-13


@pytest.mark.parametrize("z", [-0.3, -2.0, -13.0, -50.0, 0.6, 0.3 + 0.4j])
def test_2f1_against_scipy(z):
    res = gauss_2f1(HypParams(0.65, 1.35, 2.0), z)
    assert_allclose(res.value, sc.hyp2f1(0.65, 1.35, 2.0, z), rtol=1e-10)


@pytest.mark.parametrize("a,b,c,z", [(0.3, 1.7, 1.5, -3.0), (1 + 2j, 1 - 2j, 2.5, 0.4), (2.0, 0.5, 3.0, -0.9)])
def test_2f1_symmetric_in_a_b(a, b, c, z):
    left = gauss_2f1(HypParams(a, b, c), z).value
    right = gauss_2f1(HypParams(b, a, c), z).value
    assert abs(left - right) <= 1e-13


def test_2f1_terminating_series():
    # b = 0 使级数只剩第一项
    assert gauss_2f1(HypParams(1.5, 0.0, 1.5), -20.0).value == 1
    # F(-2, b; c; z) 是二次多项式
    value = gauss_2f1(HypParams(-2, 1.0, 1.0), 3.0).value
    assert_allclose(value.real, (1 - 3.0) ** 2, rtol=1e-14)


def test_2f1_tail_estimate_controls_error():
    p = HypParams(0.4, 1.1, 1.7)
    coarse = gauss_2f1(p, -4.0, tol=1e-9).value
    fine = gauss_2f1(p, -4.0, tol=1e-10).value
    assert abs(coarse - fine) <= 10 * 1e-9 * abs(fine)


@pytest.mark.parametrize("z", [0.95, -50.0, -200.0])
def test_2f1_tenfold_tolerance_near_unit_ratio(z):
    # 项比趋于 1 时几何尾部不可忽略
    p = HypParams(1.2, -0.3, 1.5)
    tol = 1e-12
    coarse = gauss_2f1(p, z, tol=tol).value
    fine = gauss_2f1(p, z, tol=tol / 10).value
    assert abs(coarse - fine) <= 10 * tol * abs(fine)
    assert_allclose(fine.real, sc.hyp2f1(1.2, -0.3, 1.5, z), rtol=1e-10)


def test_2f1_outside_domain():
    with pytest.raises(DomainError):
        gauss_2f1(HypParams(0.5, 0.5, 1.0), 1.5)


def test_2f1_pole_in_c():
    with pytest.raises(DomainError):
        HypParams(1.0, 1.0, -2.0)


def test_2f1_budget_exhausted():
    with pytest.raises(ConvergenceError):
        gauss_2f1(HypParams(0.5, 0.5, 1.0), 0.999999, tol=1e-15)


def test_hypergeometric_residual_vanishes():
    assert abs(hypergeometric_residual(HypParams(0.5, 0.3, 1.2), 0.4)) <= 1e-10


# ======================== 1F1 ========================

def test_1f1_examples():
    assert confluent_1f1(0.3, 1.2, 0.0).value == 1
    assert abs(confluent_1f1(2.5, 2.5, 1.0).value - math.e) <= 1e-12
    assert_allclose(confluent_1f1(0.5, 1.5, -2.0).value.real, sc.hyp1f1(0.5, 1.5, -2.0), rtol=1e-12)


@pytest.mark.parametrize("z", [-20.0, -30.0, -40.0])
def test_1f1_large_negative_argument(z):
    assert_allclose(confluent_1f1(0.5, 1.5, z).value.real, sc.hyp1f1(0.5, 1.5, z), rtol=1e-10)
    assert_allclose(confluent_1f1(1.25, 2.0, z).value.real, sc.hyp1f1(1.25, 2.0, z), rtol=1e-10)


def test_1f1_terminating_on_negative_axis():
    # 1F1(-2; c; z) = 1 - 2z/c + z^2/(c(c+1))
    z, c = -6.0, 1.5
    expected = 1 - 2 * z / c + z * z / (c * (c + 1))
    assert_allclose(confluent_1f1(-2, c, z).value.real, expected, rtol=1e-13)


def test_1f1_pole_in_c():
    with pytest.raises(DomainError):
        confluent_1f1(0.5, -1.0, 1.0)


def test_kummer_residual_vanishes():
    assert abs(kummer_residual(0.5, 1.5, -2.0)) <= 1e-11
    assert abs(kummer_residual(1.25 + 0.5j, 2.5, 3.0)) <= 1e-9


def test_confluent_limit_decreasing():
    devs = confluent_limit(HypParams(0.5, None, 1.5), 1.0, [10, 100, 1000])
    values = [d for _, d in devs]
    assert values[0] > values[1] > values[2]
    assert values[-1] <= 1e-3


def test_confluent_limit_degenerate_cases():
    assert confluent_limit(HypParams(0.5, None, 1.5), 0.0, [5, 50]) == [(5, 0.0), (50, 0.0)]
    assert len(confluent_limit(HypParams(0.5, None, 1.5), 1.0, [20])) == 1
    with pytest.raises(DomainError):
        confluent_limit(HypParams(0.5, None, 1.5), 3.0, [2])


# ======================== Bessel ========================

def test_bessel_at_zero():
    assert bessel_j(0, 0.0).value == 1
    assert bessel_j(BesselOrder(2), 0.0).value == 0


@pytest.mark.parametrize("x", [0.5, 2.0, 5.0])
def test_bessel_negative_integer_order(x):
    assert abs(bessel_j(-3, x).value + bessel_j(3, x).value) <= 1e-12


def test_bessel_half_order_closed_form():
    x = 2.0
    assert_allclose(bessel_j(0.5, x).value, math.sqrt(2.0 / (math.pi * x)) * math.sin(x), rtol=1e-12)


@pytest.mark.parametrize("mu", [0.0, 1.0, 2.5, 5.0, -0.5, -1.5])
def test_bessel_against_scipy(mu):
    for x in np.linspace(0.5, 30.0, 60):
        assert_allclose(bessel_j(mu, x).value, sc.jv(mu, x), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_bessel_three_term_recurrence(n):
    for x in np.linspace(0.5, 20.0, 40):
        jm, j0, jp = (bessel_j(n + d, x).value for d in (-1, 0, 1))
        scale = max(1.0, abs(2 * n / x * j0))
        assert abs(jm + jp - 2 * n / x * j0) <= 1e-10 * scale


def test_bessel_domain():
    with pytest.raises(DomainError):
        bessel_j(0, -1.0)
    with pytest.raises(DomainError):
        bessel_j(-0.5, 0.0)
    with pytest.raises(DomainError):
        BesselOrder(float("inf"))


def test_bessel_warns_beyond_supported_range(caplog):
    with caplog.at_level(logging.WARNING, logger="special_fn"):
        bessel_j(0, 45.0)
    assert "超出支持范围" in caplog.text


# ======================== 归一化 Bessel ========================

@pytest.mark.parametrize("mu", [0.0, 0.5, 1.0, 3.0])
def test_normalized_bessel_at_zero(mu):
    assert normalized_bessel(mu, 0.0, "paper-literal") == 0
    limit = bessel_prefactor(mu) / (2.0 ** mu * sc.gamma(mu + 1.0))
    assert_allclose(normalized_bessel(mu, 0.0, "continuous"), limit, rtol=1e-13)
    for z in (1e-6, 1e-7):
        assert_allclose(normalized_bessel(mu, z, "continuous"), limit, rtol=1e-10)


@pytest.mark.parametrize("z", [0.7, 1.3, 9.5])
def test_normalized_bessel_order_zero(z):
    expected = math.pi / 2.0 * sc.j0(z)
    for mode in ("paper-literal", "continuous"):
        assert_allclose(normalized_bessel(0, z, mode), expected, rtol=1e-11, atol=1e-13)


def test_normalized_bessel_is_even():
    for z in (0.3, 4.0, 12.0):
        assert normalized_bessel(1.5, -z) == normalized_bessel(1.5, z)
    w = 0.8 + 0.6j
    assert normalized_bessel(0.5, -w) == normalized_bessel(0.5, w)


def test_normalized_bessel_complex_matches_real_axis():
    assert_allclose(normalized_bessel(1.0, 2.0 + 0j), normalized_bessel(1.0, 2.0), rtol=1e-13)
    # 纯虚自变量给出修正 Bessel 函数
    expected = bessel_prefactor(0.0) * sc.iv(0, 1.5)
    assert_allclose(normalized_bessel(0.0, 1.5j).real, expected, rtol=1e-12)


def test_normalized_bessel_rejects_bad_orders():
    with pytest.raises(DomainError):
        normalized_bessel(-0.5, 1.0)
    with pytest.raises(DomainError):
        normalized_bessel(-2.0, 1.0)
