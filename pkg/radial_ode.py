"""
径向 ODE 模块
构造 Casimir 算子的径向部分，从正则奇点出发积分球函数满足的常微分方程，
并提供 z = -(sinh t)^2 与 z = cosh 2t 两种变量替换及 Legendre 方程求解
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp

from config import (
    LEGENDRE_S0,
    LEGENDRE_START_ORDER,
    ODE_DIFF_STEP,
    ODE_METHOD,
    ODE_T0,
    ODE_T0_MAX,
    ODE_START_ORDER,
    ODE_TOL,
)
from errors import ConvergenceError, DomainError
from rank1_group import GroupRank1, SpectralParam, as_lambda, eigenvalue

log = logging.getLogger(__name__)


# ======================== 数据类型 ========================

@dataclass(frozen=True)
class RadialOperator:
    """
    径向算子 d^2/dt^2 + drift(t) d/dt + potential

    singular_weight 与 drift_slope 是漂移项在 t=0 附近的展开
    drift(t) = singular_weight/t + drift_slope*t + O(t^3)，供奇点起步使用。
    """

    drift: Callable[[float], float]
    potential: float
    model: str
    singular_weight: float
    drift_slope: float


@dataclass(frozen=True)
class OdeSolution:
    """积分结果：网格、函数值、导数值和网格上的最大残差"""

    grid: np.ndarray
    values: np.ndarray
    derivative_values: np.ndarray
    residual_max: float

    def __post_init__(self):
        for arr in (self.grid, self.values, self.derivative_values):
            arr.setflags(write=False)


# ======================== 算子构造 ========================

def general_operator(p: int, q: int) -> RadialOperator:
    """一般实秩 1 情形：drift(t) = (p+q) coth t + q tanh t，位势 0"""
    return RadialOperator(
        drift=lambda t: (p + q) / np.tanh(t) + q * np.tanh(t),
        potential=0.0,
        model=f"general({p},{q})",
        singular_weight=float(p + q),
        drift_slope=(p + q) / 3.0 + q,
    )


def sl2r_sec2_operator() -> RadialOperator:
    """SL(2,R) 的 d^2/dt^2 + 2coth(2t) d/dt + 1"""
    return RadialOperator(
        drift=lambda t: 2.0 / np.tanh(2.0 * t),
        potential=1.0,
        model="sl2r-sec2",
        singular_weight=1.0,
        drift_slope=4.0 / 3.0,
    )


def radial_operator(g: GroupRank1) -> RadialOperator:
    if g.model == "sl2r-sec2":
        return sl2r_sec2_operator()
    return general_operator(g.p, g.q)


def operator_eigenvalue(g: GroupRank1, lam: "SpectralParam | complex") -> complex:
    """完整算子（含位势）的特征值：lambda^2 - rho0^2 加上位势"""
    return eigenvalue(g, lam) + radial_operator(g).potential


# ======================== 奇点起步 ========================

def singular_start(
    op: RadialOperator,
    mu: complex,
    t0: float = ODE_T0,
    order: int = ODE_START_ORDER,
) -> tuple[complex, complex]:
    """
    正则解在 t0 处的局部展开，归一化 f(0) = 1

    f(t) = 1 + A t^2 + B t^4，其中 A = mu'/(2(k+1))，
    B = A (mu' - 2 d1) / (4(k+3))，mu' = mu - potential，
    k、d1 为漂移项展开的系数。一般模型中 k+1 = n = p+q+1。

    Args:
        op: 径向算子
        mu: 完整算子的特征值
        t0: 起点
        order: 展开阶数（2 或 4）

    Returns:
        (f(t0), f'(t0))
    """
    if not 0.0 < t0 <= ODE_T0_MAX:
        raise DomainError(f"起点 t0={t0} 超出局部展开的适用范围 (0, {ODE_T0_MAX}]")
    if order not in (2, 4):
        raise DomainError(f"不支持的展开阶数 {order}")
    mu_eff = complex(mu) - op.potential
    k = op.singular_weight
    a2 = mu_eff / (2.0 * (k + 1.0))
    a4 = a2 * (mu_eff - 2.0 * op.drift_slope) / (4.0 * (k + 3.0)) if order == 4 else 0.0
    f0 = 1.0 + a2 * t0 ** 2 + a4 * t0 ** 4
    df0 = 2.0 * a2 * t0 + 4.0 * a4 * t0 ** 3
    return f0, df0


# ======================== 积分 ========================

def _check_grid(grid: np.ndarray, lower: float, what: str) -> None:
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError(f"{what} 网格必须是非空一维数组")
    if np.any(np.diff(grid) <= 0):
        raise DomainError(f"{what} 网格必须严格递增")
    if grid[0] < lower:
        raise DomainError(f"{what} 网格起点 {grid[0]:.6g} 小于起步点 {lower:.6g}")


def _solve_second_order(
    second: Callable[[float, complex, complex], complex],
    x0: float,
    y0: tuple[complex, complex],
    grid: np.ndarray,
    tol: float,
    max_step: float,
) -> OdeSolution:
    """
    积分 y'' = second(x, y, y')，并在网格上用稠密输出的重差分计算残差

    内部容差取 tol/100，使每单位步长的局部误差不超过 tol。
    """
    rtol = max(tol * 1e-2, 1e-13)
    x_end = max(float(grid[-1]), 2.0 * x0)

    def rhs(x, y):
        return [y[1], second(x, y[0], y[1])]

    sol = solve_ivp(
        rhs,
        (x0, x_end),
        np.array(y0, dtype=complex),
        method=ODE_METHOD,
        t_eval=grid,
        dense_output=True,
        rtol=rtol,
        atol=rtol * 1e-3,
        max_step=max_step,
    )
    if sol.status < 0:
        raise ConvergenceError(f"积分在 t={sol.t[-1]:.6g} 处失败: {sol.message}")

    dense = sol.sol
    residual = 0.0
    for x, f, df in zip(grid, sol.y[0], sol.y[1]):
        h = ODE_DIFF_STEP * max(1.0, x)
        if x - h < x0:
            d2 = (-3.0 * df + 4.0 * dense(x + h)[1] - dense(x + 2 * h)[1]) / (2 * h)
        elif x + h > x_end:
            d2 = (3.0 * df - 4.0 * dense(x - h)[1] + dense(x - 2 * h)[1]) / (2 * h)
        else:
            d2 = (dense(x + h)[1] - dense(x - h)[1]) / (2 * h)
        residual = max(residual, abs(d2 - second(x, f, df)))

    if residual > 100.0 * tol * max(1.0, float(np.max(np.abs(sol.y[0])))):
        log.warning("ODE 残差 %.3e 超过 100*tol（tol=%.1e）", residual, tol)
    return OdeSolution(grid.copy(), sol.y[0].copy(), sol.y[1].copy(), residual)


def integrate(
    op: RadialOperator,
    mu: complex,
    t_grid: list[float],
    tol: float = ODE_TOL,
    t0: float = ODE_T0,
    order: int = ODE_START_ORDER,
    max_step: float = np.inf,
) -> OdeSolution:
    """
    积分 f'' + drift f' + potential f = mu f，正则解归一化为 f(0) = 1

    Args:
        op: 径向算子
        mu: 完整算子的特征值（一般模型为 lambda^2 - rho0^2，sl2r-sec2 为 lambda^2）
        t_grid: 严格递增且不小于 t0 的输出网格
        tol: 误差容差
        t0: 奇点起步偏移
        order: 起步展开阶数
        max_step: 最大步长

    Returns:
        OdeSolution
    """
    if tol <= 0:
        raise DomainError("tol 必须为正")
    grid = np.asarray(t_grid, dtype=float)
    _check_grid(grid, t0, "t")
    mu_eff = complex(mu) - op.potential
    start = singular_start(op, mu, t0, order)
    drift = op.drift
    return _solve_second_order(
        lambda t, f, df: mu_eff * f - drift(t) * df,
        t0,
        start,
        grid,
        tol,
        max_step,
    )


def spherical_ode(
    g: GroupRank1,
    lam: "SpectralParam | complex",
    t_grid: list[float],
    tol: float = ODE_TOL,
    **kwargs,
) -> OdeSolution:
    """按群的模型构造径向算子并积分对应谱参数的球函数"""
    return integrate(radial_operator(g), operator_eigenvalue(g, lam), t_grid, tol, **kwargs)


# ======================== 变量替换 ========================

def to_hypergeometric_z(t: float) -> float:
    """z = -(sinh t)^2"""
    return -math.sinh(t) ** 2


def sinh_inverse_z(z: float) -> float:
    """z = -(sinh t)^2 的反变换 |t| = asinh(sqrt(-z))"""
    if z > 0:
        raise DomainError(f"z 必须 <= 0，收到 {z}")
    return math.asinh(math.sqrt(-z))


def to_legendre_z(t: float) -> float:
    """z = cosh 2t"""
    if t < 0:
        raise DomainError(f"to_legendre_z 需要 t >= 0，收到 {t}")
    return math.cosh(2.0 * t)


# ======================== Legendre 方程 ========================

def _legendre_local(ell: complex, s: float, order: int) -> tuple[complex, complex]:
    """z = 1 + s 处的 Frobenius 级数：c_{k+1} = c_k (L - k(k+1)) / (2(k+1)^2)"""
    coeff = 1.0 + 0j
    value = coeff
    deriv = 0.0 + 0j
    for k in range(order):
        coeff = coeff * (ell - k * (k + 1)) / (2.0 * (k + 1) ** 2)
        value += coeff * s ** (k + 1)
        deriv += (k + 1) * coeff * s ** k
    return value, deriv


def legendre_solve(
    lam: "SpectralParam | complex",
    z_grid: list[float],
    tol: float = ODE_TOL,
    s0: float = LEGENDRE_S0,
    order: int = LEGENDRE_START_ORDER,
    max_step: float = np.inf,
) -> OdeSolution:
    """
    求解 (1-z^2) Phi'' - 2z Phi' + ((lambda^2-1)/4) Phi = 0，Phi(1) = 1

    z < 1 + s0 的网格点直接由 z=1 处的局部级数求值，其余点从 1 + s0 起积分。

    Args:
        lam: 谱参数
        z_grid: 严格递增且 >= 1 的网格
        tol: 误差容差
        s0: 起步偏移
        order: 局部级数阶数

    Returns:
        OdeSolution（grid 为 z 值）
    """
    lam = as_lambda(lam)
    ell = (lam * lam - 1.0) / 4.0
    grid = np.asarray(z_grid, dtype=float)
    _check_grid(grid, 1.0, "z")
    z0 = 1.0 + s0

    def second(z, f, df):
        return (ell * f - 2.0 * z * df) / ((z - 1.0) * (z + 1.0))

    near = grid[grid < z0]
    far = grid[grid >= z0]
    local = [_legendre_local(ell, z - 1.0, order) for z in near]
    values = np.array([v for v, _ in local], dtype=complex)
    derivs = np.array([d for _, d in local], dtype=complex)
    if far.size == 0:
        return OdeSolution(grid.copy(), values, derivs, 0.0)

    solved = _solve_second_order(second, z0, _legendre_local(ell, s0, order), far, tol, max_step)
    return OdeSolution(
        grid.copy(),
        np.concatenate([values, solved.values]),
        np.concatenate([derivs, solved.derivative_values]),
        solved.residual_max,
    )
