import pytest

from conftest import ACCEPTANCE_PQ, make_group
from errors import DomainError
from routes import ROUTES, SL2R_ONLY, evaluate, evaluate_points


@pytest.mark.parametrize("p,q", ACCEPTANCE_PQ)
def test_hyp_at_origin(p, q):
    result = evaluate(make_group(p, q), 0.9 + 0.1j, 0.0, "hyp")
    assert result.ok
    assert result.value == 1
    assert result.diagnostics["terms_used"] >= 1


@pytest.mark.parametrize("route", ["hyp", "ode", "legendre", "integral-hc"])
def test_trivial_index_is_exactly_one(sec2, route):
    # sl2r-sec2 中 lambda = 1 对应常函数
    assert evaluate(sec2, 1.0, 0.6, route).value == 1


def test_contour_route_at_trivial_index(sec2):
    assert abs(evaluate(sec2, 1.0, 0.6, "integral-contour").value - 1) <= 1e-8


@pytest.mark.parametrize("route", ["ode", "legendre", "integral-hc", "integral-contour"])
def test_sec2_routes_agree_with_hyp(sec2, route):
    lam, t = 1.4 + 0.3j, 0.8
    reference = evaluate(sec2, lam, t, "hyp").value
    assert abs(evaluate(sec2, lam, t, route).value - reference) <= 1e-6


def test_sec2_only_routes_rejected_elsewhere(sec4):
    for route in SL2R_ONLY:
        with pytest.raises(DomainError):
            evaluate(sec4, 1.0, 0.5, route)


def test_bad_points_and_routes(sec4):
    with pytest.raises(DomainError):
        evaluate(sec4, 1.0, -0.1, "hyp")
    with pytest.raises(DomainError):
        evaluate(sec4, 1.0, float("nan"), "hyp")
    with pytest.raises(DomainError):
        evaluate(sec4, 1.0, 0.5, "monte-carlo")


def test_routes_listing():
    assert set(SL2R_ONLY) <= set(ROUTES)
    assert len(ROUTES) == 7


def test_evaluate_points_records_failures(sec2):
    results = evaluate_points(sec2, 1.2, [0.0, 0.5], "integral-contour")
    assert not results[0].ok
    assert results[0].value is None
    assert results[0].exit_code == 2
    assert results[1].ok


def test_ode_grid_matches_single_points(sec4):
    ts = [0.0, 5e-4, 0.3, 1.0]
    batch = evaluate_points(sec4, 0.7, ts, "ode")
    assert [r.t for r in batch] == ts
    assert batch[0].value == 1
    for t, r in zip(ts, batch):
        single = evaluate(sec4, 0.7, t, "ode")
        assert abs(r.value - single.value) <= 1e-7
        assert abs(r.value - evaluate(sec4, 0.7, t, "hyp").value) <= 1e-6


def test_ode_batch_with_invalid_point(sec4):
    results = evaluate_points(sec4, 0.7, [0.2, -1.0, 0.4], "ode")
    assert [r.ok for r in results] == [True, False, True]
    assert results[1].exit_code == 2


@pytest.mark.parametrize("route", ["stanton-tomas", "confluent"])
def test_expansion_routes_near_origin(sec4, route):
    lam, t = 0.8, 0.01
    reference = evaluate(sec4, lam, t, "hyp").value
    assert abs(evaluate(sec4, lam, t, route).value - reference) <= 1e-3
