"""
Stanton-Tomas 展开模块
截断的 Bessel 展开、误差阶的对数拟合，以及合流球函数 phi^sigma_lambda
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from config import (
    CLI_MODE,
    ERROR_ORDER_POINTS,
    ERROR_ORDER_SLACK,
    ERROR_ORDER_T_START,
    ERROR_ZERO_FLOOR,
    ST_R0,
)
from errors import DomainError
from rank1_group import GroupRank1, SpectralParam, as_lambda, c0_constant, jacobian_D, spherical_2f1
from special_fn import BesselMode, bessel_j, normalized_bessel

log = logging.getLogger(__name__)

Normalization = Literal["c0", "unit"]
ReferenceMapping = Literal["literal", "oscillatory"]
Coefficient = Callable[[float], float]


def unit_coefficient(t: float) -> float:
    """a_0(t) = 1"""
    return 1.0


@dataclass(frozen=True)
class StExpansion:
    """
    截断到 M 阶的 Stanton-Tomas 展开

    只有 a_0 = 1 是确定的；M >= 1 的系数必须由调用方提供。
    normalization="c0" 使用常数 c0，"unit" 使 t=0 处的值为 1。
    """

    group: GroupRank1
    M: int = 0
    coeffs: tuple[Coefficient, ...] = (unit_coefficient,)
    R0: float = ST_R0
    mode: BesselMode = CLI_MODE
    normalization: Normalization = "unit"

    def __post_init__(self):
        if self.M < 0:
            raise DomainError(f"截断阶 M 必须非负，收到 {self.M}")
        if len(self.coeffs) != self.M + 1:
            raise DomainError(f"M={self.M} 需要 {self.M + 1} 个系数，收到 {len(self.coeffs)}")
        if self.coeffs[0] is not unit_coefficient:
            raise DomainError("a_0 必须恒等于 1")
        if self.R0 <= 0:
            raise DomainError(f"有效半径 R0 必须为正，收到 {self.R0}")

    def with_coefficients(self, extra: list[Coefficient]) -> "StExpansion":
        """追加调用方提供的 a_1, a_2, ... 得到更高阶的展开"""
        coeffs = self.coeffs + tuple(extra)
        return StExpansion(self.group, len(coeffs) - 1, coeffs, self.R0, self.mode, self.normalization)

    @property
    def constant(self) -> float:
        return st_constant(self.group, self.normalization)


# ======================== 常数与前因子 ========================

def prefactor(g: GroupRank1, t: float) -> float:
    """
    [t^{n-1} / D(t)]^{1/2}，t=0 处取极限 2^{-rho0}

    D(t) ~ 2^{p+2q} t^{n-1}，所以极限有限且为正。
    """
    if t < 0:
        raise DomainError(f"prefactor 需要 t >= 0，收到 {t}")
    if t == 0:
        return 2.0 ** (-g.rho0)
    return math.sqrt(t ** (g.n - 1) / jacobian_D(g, t))


def st_constant(g: GroupRank1, normalization: Normalization = "unit") -> float:
    """展开的整体常数：c0 直接取 c0，unit 取 1/(2^{-rho0} calJ_{(n-2)/2}(0))"""
    if normalization == "c0":
        return c0_constant(g)
    if normalization == "unit":
        return 1.0 / (prefactor(g, 0.0) * normalized_bessel((g.n - 2) / 2.0, 0.0, "continuous"))
    raise DomainError(f"未知的归一化方式 {normalization!r}")


# ======================== 求值 ========================

def _evaluate(e: StExpansion, argument_scale: complex, t: float) -> complex:
    mu0 = (e.group.n - 2) / 2.0
    z = argument_scale * t
    total = 0.0
    for m, a_m in enumerate(e.coeffs):
        total = total + t ** (2 * m) * a_m(t) * normalized_bessel(mu0 + m, z, e.mode)
    return e.constant * prefactor(e.group, t) * total


def st_evaluate(e: StExpansion, lam: "SpectralParam | complex", t: float) -> complex:
    """
    截断和 c [t^{n-1}/D(t)]^{1/2} sum_{m<=M} t^{2m} a_m(t) calJ_{(n-2)/2+m}(lambda t)，不含余项

    Args:
        e: 展开
        lam: 谱参数
        t: 时间，0 < t <= R0

    Returns:
        截断和
    """
    if not 0.0 < t <= e.R0:
        raise DomainError(f"t={t} 超出展开的有效范围 (0, {e.R0}]")
    return complex(_evaluate(e, as_lambda(lam), t))


def confluent_spherical(
    g: GroupRank1,
    lam: "SpectralParam | complex",
    t: float,
    mode: BesselMode = CLI_MODE,
    normalization: Normalization = "unit",
    R0: float = ST_R0,
) -> complex:
    """
    合流球函数 phi^sigma_lambda：M=0 的展开，Bessel 自变量取 |lambda| t

    结果只依赖 |lambda|，因此对 lambda -> -lambda 逐位不变；
    paper-literal 模式下 t=0 处为 0。
    """
    if not 0.0 <= t <= R0:
        raise DomainError(f"t={t} 超出展开的有效范围 [0, {R0}]")
    e = StExpansion(g, R0=R0, mode=mode, normalization=normalization)
    return complex(_evaluate(e, abs(as_lambda(lam)), t))


# ======================== 误差阶拟合 ========================

@dataclass
class OrderFit:
    """log|误差| 对 log t 的最小二乘拟合结果"""

    t_values: list[float]
    errors: list[float]
    threshold: float
    slope: float = float("nan")
    residual: float = float("nan")
    skipped: bool = False
    reason: str = ""
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.skipped and self.slope >= self.threshold

    def summary(self) -> str:
        if self.skipped:
            return f"已跳过: {self.reason}"
        mark = "通过" if self.passed else "未通过"
        return f"拟合斜率 {self.slope:.4f}（阈值 {self.threshold:.2f}），残差 {self.residual:.2e} [{mark}]"


def geometric_t_values(t_start: float = ERROR_ORDER_T_START, points: int = ERROR_ORDER_POINTS) -> list[float]:
    """t_start, t_start/2, t_start/4, ..."""
    return [t_start / 2.0 ** k for k in range(points)]


def _fit_order(t_values: list[float], errors: list[float], threshold: float) -> OrderFit:
    fit = OrderFit(list(t_values), list(errors), threshold)
    tiny = [t for t, err in zip(t_values, errors) if err <= ERROR_ZERO_FLOOR]
    if tiny:
        fit.skipped = True
        fit.reason = f"误差在 t={tiny[0]:g} 处为零或低于舍入噪声 {ERROR_ZERO_FLOOR:g}，无法取对数"
        return fit
    x = np.log(np.asarray(t_values))
    y = np.log(np.asarray(errors))
    design = np.vstack([x, np.ones_like(x)]).T
    (slope, _), residuals, _, _ = np.linalg.lstsq(design, y, rcond=None)
    fit.slope = float(slope)
    fit.residual = float(residuals[0]) if residuals.size else 0.0
    return fit


def _check_t_values(t_values: list[float], lam: complex) -> None:
    if len(t_values) < ERROR_ORDER_POINTS:
        raise DomainError(f"拟合至少需要 {ERROR_ORDER_POINTS} 个点，收到 {len(t_values)}")
    for t in t_values:
        if not 0.0 < t <= 0.1:
            raise DomainError(f"t={t} 不在 (0, 0.1] 内")
        if abs(lam * t) > 1.0:
            raise DomainError(f"|lambda t| = {abs(lam * t):.3g} > 1，超出误差界的第一分支")


def error_order_check(
    g: GroupRank1,
    lam: "SpectralParam | complex",
    M: int = 0,
    t_values: list[float] | None = None,
    mapping: ReferenceMapping = "literal",
    reference: Callable[[complex, float], complex] | None = None,
    normalization: Normalization = "unit",
) -> OrderFit:
    """
    拟合截断误差 |phi_lambda - 展开| 的阶，期望 >= 2(M+1) - 0.2

    参考值默认取超几何路线。mapping="oscillatory" 时参考值取 phi_{i lambda}，
    此时 Bessel 振荡与球函数一致，误差只来自前因子。

    Args:
        g: 群
        lam: 谱参数
        M: 截断阶（只支持 0）
        t_values: 几何数列，默认 1e-2, 5e-3, 2.5e-3, 1.25e-3
        mapping: 参考路线的指标映射
        reference: 自定义参考函数 (lambda, t) -> 值
        normalization: 展开常数的归一化

    Returns:
        OrderFit
    """
    lam = as_lambda(lam)
    if M != 0:
        raise DomainError("只有 M=0 的系数是已知的")
    t_values = geometric_t_values() if t_values is None else list(t_values)
    _check_t_values(t_values, lam)

    if reference is None:
        index = 1j * lam if mapping == "oscillatory" else lam
        reference = lambda _, t: spherical_2f1(g, index, t).value  # noqa: E731

    e = StExpansion(g, normalization=normalization)
    errors = [abs(reference(lam, t) - st_evaluate(e, lam, t)) for t in t_values]
    fit = _fit_order(t_values, errors, 2.0 * (M + 1) - ERROR_ORDER_SLACK)
    if fit.skipped:
        log.info("误差阶检查跳过: %s", fit.reason)
    return fit


def bessel_limit_check(
    g: GroupRank1,
    lam: "SpectralParam | complex",
    t_values: list[float] | None = None,
) -> OrderFit:
    """小 t 时 |phi_lambda - J_0(lambda t)| 的阶（超几何路线为参考，lambda 实数）"""
    lam = as_lambda(lam)
    if lam.imag != 0.0:
        raise DomainError("J_0 比较需要实的 lambda")
    t_values = geometric_t_values() if t_values is None else list(t_values)
    _check_t_values(t_values, lam)
    errors = [
        abs(spherical_2f1(g, lam, t).value - bessel_j(0.0, abs(lam.real) * t).value)
        for t in t_values
    ]
    return _fit_order(t_values, errors, 2.0 - ERROR_ORDER_SLACK)


@dataclass(frozen=True)
class SmokeResult:
    """|lambda t| > 1 区域的冒烟检查：拟合常数 max(误差/形状) 与是否有限"""

    constant: float
    finite: bool


def st_error_bound_smoke(
    g: GroupRank1,
    lam: "SpectralParam | complex",
    t_values: list[float],
    M: int = 0,
) -> SmokeResult:
    """
    误差界第二分支 c_M t^{2(M+1)} |lambda t|^{-(n-1)/2 + M+1} 的冒烟检查

    常数未知，只拟合 max(误差/形状) 并检查它有限。
    """
    lam = as_lambda(lam)
    if M != 0:
        raise DomainError("只有 M=0 的系数是已知的")
    e = StExpansion(g)
    ratios = []
    for t in t_values:
        if abs(lam * t) <= 1.0:
            raise DomainError(f"冒烟检查要求 |lambda t| > 1，t={t} 处为 {abs(lam * t):.3g}")
        shape = t ** (2 * (M + 1)) * abs(lam * t) ** (-(g.n - 1) / 2.0 + M + 1)
        err = abs(spherical_2f1(g, lam, t).value - st_evaluate(e, lam, t))
        ratios.append(err / shape)
    constant = max(ratios)
    return SmokeResult(constant, math.isfinite(constant))
