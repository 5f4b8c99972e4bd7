import math

import pytest

from conftest import ACCEPTANCE_PQ, make_group
from errors import DomainError
from expansions import (
    StExpansion,
    bessel_limit_check,
    confluent_spherical,
    error_order_check,
    geometric_t_values,
    prefactor,
    st_constant,
    st_error_bound_smoke,
    st_evaluate,
    unit_coefficient,
)


# ======================== 常数与前因子 ========================

@pytest.mark.parametrize("p,q", ACCEPTANCE_PQ)
def test_prefactor_limit(p, q):
    g = make_group(p, q)
    assert prefactor(g, 0.0) == 2.0 ** (-g.rho0)
    assert prefactor(g, 1e-6) == pytest.approx(2.0 ** (-g.rho0), rel=1e-5)


def test_prefactor_domain(sec4):
    with pytest.raises(DomainError):
        prefactor(sec4, -0.1)


@pytest.mark.parametrize("p,q", ACCEPTANCE_PQ)
def test_unit_normalization_is_one_at_origin(p, q):
    g = make_group(p, q)
    assert confluent_spherical(g, 1.3, 0.0).real == pytest.approx(1.0, rel=1e-14)


def test_paper_literal_vanishes_at_origin(sec4):
    assert confluent_spherical(sec4, 1.3, 0.0, mode="paper-literal") == 0


def test_c0_normalization_at_origin():
    g = make_group(2, 0)
    value = confluent_spherical(g, 0.8, 0.0, normalization="c0")
    assert value.real == pytest.approx(0.25, rel=1e-13)
    with pytest.raises(DomainError):
        st_constant(g, "bogus")


# ======================== 求值 ========================

@pytest.mark.parametrize("lam", [0.5, 3.0])
@pytest.mark.parametrize("t", [0.05, 0.4, 1.0])
def test_leading_term_closed_form(lam, t):
    # (p, q) = (2, 0) 时 M=0 的展开为 sin(lambda t) / (lambda sinh t)
    e = StExpansion(make_group(2, 0))
    expected = math.sin(lam * t) / (lam * math.sinh(t))
    assert st_evaluate(e, lam, t).real == pytest.approx(expected, rel=1e-12)


def test_st_evaluate_is_even(sec4):
    e = StExpansion(sec4)
    for lam in (0.7, 1.2 + 0.4j):
        assert st_evaluate(e, lam, 0.3) == st_evaluate(e, -lam, 0.3)
        assert confluent_spherical(sec4, lam, 0.3) == confluent_spherical(sec4, -lam, 0.3)


def test_st_evaluate_range(sec4):
    e = StExpansion(sec4)
    with pytest.raises(DomainError):
        st_evaluate(e, 1.0, 0.0)
    with pytest.raises(DomainError):
        st_evaluate(e, 1.0, 1.5)
    with pytest.raises(DomainError):
        confluent_spherical(sec4, 1.0, 2.0)


def test_expansion_validation(sec4):
    with pytest.raises(DomainError):
        StExpansion(sec4, M=1)
    with pytest.raises(DomainError):
        StExpansion(sec4, coeffs=(lambda t: 1.0,))
    with pytest.raises(DomainError):
        StExpansion(sec4, R0=0.0)


def test_with_coefficients(sec4):
    base = StExpansion(sec4)
    extended = base.with_coefficients([lambda t: 0.0])
    assert extended.M == 1
    assert extended.coeffs[0] is unit_coefficient
    assert st_evaluate(extended, 0.9, 0.2) == st_evaluate(base, 0.9, 0.2)


# ======================== 误差阶 ========================

def test_geometric_t_values():
    assert geometric_t_values() == [1e-2, 5e-3, 2.5e-3, 1.25e-3]
    assert len(geometric_t_values(0.05, 6)) == 6


@pytest.mark.parametrize("p,q", ACCEPTANCE_PQ)
def test_error_order_literal(p, q):
    fit = error_order_check(make_group(p, q), 1.0)
    assert not fit.skipped
    assert fit.slope >= 1.8
    assert fit.passed
    assert "通过" in fit.summary()


def test_error_order_oscillatory_exact_case_is_skipped():
    # (2, 0) 时展开与 phi_{i lambda} 完全一致，误差只剩舍入噪声
    fit = error_order_check(make_group(2, 0), 1.0, mapping="oscillatory")
    assert fit.skipped
    assert not fit.passed
    assert fit.summary().startswith("已跳过")


def test_error_order_with_identical_reference(sec4):
    e = StExpansion(sec4)
    fit = error_order_check(sec4, 0.5, reference=lambda lam, t: st_evaluate(e, lam, t))
    assert fit.skipped


def test_error_order_rejects_bad_input(sec4):
    with pytest.raises(DomainError):
        error_order_check(sec4, 1.0, M=1)
    with pytest.raises(DomainError):
        error_order_check(sec4, 1.0, t_values=geometric_t_values(points=2))
    with pytest.raises(DomainError):
        error_order_check(sec4, 200.0)
    with pytest.raises(DomainError):
        error_order_check(sec4, 1.0, t_values=[0.5, 0.25, 0.125, 0.0625])


def test_bessel_limit(sec4):
    fit = bessel_limit_check(sec4, 1.5)
    assert fit.passed
    with pytest.raises(DomainError):
        bessel_limit_check(sec4, 1j)


def test_error_bound_smoke(sec4):
    result = st_error_bound_smoke(sec4, 20.0, [0.1, 0.2, 0.5])
    assert result.finite
    assert result.constant > 0
    with pytest.raises(DomainError):
        st_error_bound_smoke(sec4, 2.0, [0.1])
