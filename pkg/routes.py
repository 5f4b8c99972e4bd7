"""
求值路线分发
把 (群, lambda, t, 路线) 映射到各模块的数值方法，并统一返回值与诊断信息
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Literal

from config import CLI_MODE, ODE_T0
from errors import DomainError, SphericalError
from expansions import StExpansion, confluent_spherical, st_evaluate
from integral_reps import calibrated_constant, contour_integral, hc_integral
from radial_ode import (
    legendre_solve,
    operator_eigenvalue,
    radial_operator,
    singular_start,
    spherical_ode,
    to_legendre_z,
)
from rank1_group import GroupRank1, SpectralParam, as_lambda, spherical_2f1
from special_fn import BesselMode

log = logging.getLogger(__name__)

Route = Literal[
    "hyp", "ode", "legendre", "integral-hc", "integral-contour", "stanton-tomas", "confluent"
]
ROUTES: tuple[str, ...] = (
    "hyp", "ode", "legendre", "integral-hc", "integral-contour", "stanton-tomas", "confluent"
)

# 只在 sl2r-sec2 约定下有定义的路线
SL2R_ONLY = ("legendre", "integral-hc", "integral-contour")


@dataclass
class RouteValue:
    """一条路线在一个点上的结果；失败时 value 为 None 并记录原因"""

    route: str
    t: float
    value: complex | None
    diagnostics: dict[str, float | int | bool] = field(default_factory=dict)
    error: str | None = None
    exit_code: int = 0

    @property
    def ok(self) -> bool:
        return self.error is None


def _check(g: GroupRank1, route: str, t: float) -> None:
    if route not in ROUTES:
        raise DomainError(f"未知的路线 {route!r}（可用: {', '.join(ROUTES)}）")
    if route in SL2R_ONLY and g.model != "sl2r-sec2":
        raise DomainError(f"路线 {route} 只适用于 sl2r-sec2 约定，当前群为 {g.name}")
    if not math.isfinite(t) or t < 0:
        raise DomainError(f"t 必须是非负有限数，收到 {t}")


def _single(g: GroupRank1, lam: complex, t: float, route: str, mode: BesselMode) -> RouteValue:
    if route == "hyp":
        res = spherical_2f1(g, lam, t)
        return RouteValue(route, t, res.value, {"terms_used": res.terms_used, "tail": res.tail_estimate})
    if route == "legendre":
        sol = legendre_solve(lam, [to_legendre_z(t)])
        return RouteValue(route, t, complex(sol.values[0]), {"residual_max": sol.residual_max})
    if route == "integral-hc":
        # sl2r-sec2 在 (lambda, t) 处的值等于 Harish-Chandra 积分在 (lambda/2, 2t) 处的值
        res = hc_integral(lam / 2.0, 2.0 * t, adaptive=True)
        return RouteValue(route, t, res.value, {"nodes": res.nodes, "converged": res.converged})
    if route == "integral-contour":
        c = calibrated_constant("cosh")
        value = contour_integral(lam / 2.0, 2.0 * t, c, kernel="cosh")
        return RouteValue(route, t, value, {"constant": c})
    if route == "stanton-tomas":
        value = st_evaluate(StExpansion(g, mode=mode), lam, t)
        return RouteValue(route, t, value, {"M": 0})
    if route == "confluent":
        return RouteValue(route, t, confluent_spherical(g, lam, t, mode), {"M": 0})
    return _ode_points(g, lam, [t])[0]


def _ode_points(g: GroupRank1, lam: complex, t_values: list[float]) -> list[RouteValue]:
    """一次积分覆盖所有 t >= t0 的点；更小的 t 用奇点处的局部展开"""
    op = radial_operator(g)
    mu = operator_eigenvalue(g, lam)
    results: dict[float, RouteValue] = {}
    for t in t_values:
        if t == 0.0:
            results[t] = RouteValue("ode", t, 1.0 + 0j, {"residual_max": 0.0})
        elif t < ODE_T0:
            results[t] = RouteValue("ode", t, complex(singular_start(op, mu, t)[0]), {"residual_max": 0.0})
    grid = sorted({t for t in t_values if t >= ODE_T0})
    if grid:
        sol = spherical_ode(g, lam, grid)
        for t, value in zip(grid, sol.values):
            results[t] = RouteValue("ode", t, complex(value), {"residual_max": sol.residual_max})
    return [results[t] for t in t_values]


def evaluate(
    g: GroupRank1,
    lam: "SpectralParam | complex",
    t: float,
    route: str,
    mode: BesselMode = CLI_MODE,
) -> RouteValue:
    """
    在单个点上按指定路线求值

    Args:
        g: 群
        lam: 谱参数
        t: 非负时间
        route: 路线名
        mode: calJ 在 0 处的约定

    Returns:
        RouteValue

    Raises:
        DomainError / ConvergenceError
    """
    lam = as_lambda(lam)
    _check(g, route, t)
    return _single(g, lam, t, route, mode)


def evaluate_points(
    g: GroupRank1,
    lam: "SpectralParam | complex",
    t_values: list[float],
    route: str,
    mode: BesselMode = CLI_MODE,
) -> list[RouteValue]:
    """
    在一组 t 上求值，单点失败记录在结果里而不抛出

    Returns:
        与 t_values 一一对应的 RouteValue 列表
    """
    lam = as_lambda(lam)
    if route == "ode":
        try:
            for t in t_values:
                _check(g, route, t)
            return _ode_points(g, lam, list(t_values))
        except SphericalError as e:
            log.debug("ode 路线整体失败，逐点重试: %s", e)

    results = []
    for t in t_values:
        try:
            results.append(evaluate(g, lam, t, route, mode))
        except SphericalError as e:
            results.append(RouteValue(route, t, None, error=str(e), exit_code=e.exit_code))
    return results
