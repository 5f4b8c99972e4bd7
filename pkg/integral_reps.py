"""
SL(2,R) 积分表示模块
Harish-Chandra 积分与围道积分两种表示的求积、围道常数的校准，
以及积分时间变量与各群超几何路线之间的约定对照表
"""
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal

import numpy as np

from config import (
    CONTOUR_NODES,
    CONTOUR_VALIDATION_TOL,
    HC_CONVERGENCE,
    HC_MAX_NODES,
    HC_MIN_NODES,
    HC_NODES,
)
from errors import CalibrationError, ConvergenceError, DomainError
from rank1_group import GroupRank1, SpectralParam, as_lambda, spherical_2f1

log = logging.getLogger(__name__)

ContourKernel = Literal["cos", "cosh"]

# 校准后的常数需要在这些 (lambda, t) 点上复现 Harish-Chandra 积分
VALIDATION_POINTS = [
    (0.3, 0.2),
    (0.8, 0.4),
    (1.5, 0.7),
    (2.0, 1.0),
    (0.5, 1.5),
    (1.0, 0.1),
]

# 约定对照表的候选 (时间缩放, 指标缩放) 与取样点
CONVENTION_CANDIDATES = [(1.0, 1.0), (2.0, 1.0), (1.0, 0.5), (2.0, 0.5)]
CONVENTION_SAMPLES = [(0.3, 0.2), (0.8, 0.5), (1.4, 1.0)]


@dataclass(frozen=True)
class QuadratureResult:
    """求积结果：数值、最终节点数、节点加倍后的变化量以及是否收敛"""

    value: complex
    nodes: int
    delta: float
    converged: bool


# ======================== Harish-Chandra 积分 ========================

def _trapezoid(lam: complex, t: float, nodes: int) -> complex:
    theta = 2.0 * np.pi * np.arange(nodes) / nodes
    base = math.cosh(t) + math.sinh(t) * np.cos(theta)
    return complex(np.mean(np.exp((lam - 0.5) * np.log(base))))


def hc_integral(
    lam: "SpectralParam | complex",
    t: float,
    nodes: int = HC_NODES,
    adaptive: bool = False,
) -> QuadratureResult:
    """
    phi_lambda(exp tH0) = 1/(2 pi) int_0^{2 pi} (cosh t + sinh t cos theta)^{lambda - 1/2} d theta

    周期梯形公式；先用 nodes 个节点，再用 2*nodes 个节点，两者之差作为收敛判据。
    adaptive 为 True 时持续加倍直到收敛或达到 HC_MAX_NODES。

    Args:
        lam: 谱参数
        t: 非负时间
        nodes: 初始节点数（>= HC_MIN_NODES）
        adaptive: 是否自适应加倍

    Returns:
        QuadratureResult，value 取自最后一次（节点最多的）求积
    """
    lam = as_lambda(lam)
    if t < 0:
        raise DomainError(f"hc_integral 需要 t >= 0，收到 {t}")
    if nodes < HC_MIN_NODES:
        raise DomainError(f"节点数至少为 {HC_MIN_NODES}，收到 {nodes}")

    coarse = _trapezoid(lam, t, nodes)
    n = 2 * nodes
    fine = _trapezoid(lam, t, n)
    delta = abs(fine - coarse)
    while adaptive and delta > HC_CONVERGENCE * max(1.0, abs(fine)) and 2 * n <= HC_MAX_NODES:
        coarse, n = fine, 2 * n
        fine = _trapezoid(lam, t, n)
        delta = abs(fine - coarse)

    converged = delta <= HC_CONVERGENCE * max(1.0, abs(fine))
    if not converged:
        log.warning("hc_integral 在 %d 个节点时仍未收敛（变化 %.3e）", n, delta)
    return QuadratureResult(fine, n, delta, converged)


# ======================== 围道积分 ========================

@lru_cache(maxsize=16)
def _gauss_legendre(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """[0, pi/2] 上的 Gauss-Legendre 节点与权重"""
    x, w = np.polynomial.legendre.leggauss(nodes)
    return (x + 1.0) * np.pi / 4.0, w * np.pi / 4.0


def _contour_raw(lam: complex, t: float, nodes: int, kernel: ContourKernel) -> complex:
    """
    int_0^t K(lambda s) (cosh t - cosh s)^{-1/2} ds，K 为 cos 或 cosh

    代换 s = t sin u 后，端点 s=t 的平方根奇异性被 cos u 抵消：
    cosh t - cosh s = 2 sinh((t+s)/2) sinh((t-s)/2)，t - s = 2t sin^2(pi/4 - u/2)。
    """
    u, w = _gauss_legendre(nodes)
    s = t * np.sin(u)
    v = np.sin(np.pi / 4.0 - u / 2.0)
    # cos u / sqrt(sinh((t-s)/2)) = 2 cos(pi/4 - u/2) / sqrt(sinh(t v^2) / v^2)
    regular = 2.0 * np.cos(np.pi / 4.0 - u / 2.0) / np.sqrt(
        2.0 * np.sinh((t + s) / 2.0) * np.sinh(t * v * v) / (v * v)
    )
    k = np.cos(lam * s) if kernel == "cos" else np.cosh(lam * s)
    return complex(t * np.sum(w * k * regular))


def contour_integral(
    lam: "SpectralParam | complex",
    t: float,
    c_cal: float,
    nodes: int = CONTOUR_NODES,
    kernel: ContourKernel = "cosh",
) -> complex:
    """
    phi_lambda(exp tH0) = c int_0^t K(lambda s) (cosh t - cosh s)^{-1/2} ds

    kernel="cosh" 与 hc_integral 使用相同的 lambda；kernel="cos" 对应 hc_integral(i lambda)。

    Args:
        lam: 谱参数
        t: 正时间
        c_cal: 校准常数（见 calibrate_contour_constant）
        nodes: Gauss-Legendre 节点数
        kernel: 核函数

    Returns:
        积分值
    """
    lam = as_lambda(lam)
    if t <= 0:
        raise DomainError(f"contour_integral 需要 t > 0，收到 {t}")
    if kernel not in ("cos", "cosh"):
        raise DomainError(f"未知的围道核 {kernel!r}")
    value = c_cal * _contour_raw(lam, t, nodes, kernel)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ConvergenceError(f"围道求积在 (lambda={lam}, t={t}) 处得到非有限值")
    return value


def poisson_integral(lam: "SpectralParam | complex", t: float, nodes: int = CONTOUR_NODES) -> complex:
    """小 t 极限形式 int_0^t cos(lambda s) (t^2 - s^2)^{-1/2} ds = (pi/2) J_0(lambda t)"""
    lam = as_lambda(lam)
    u, w = _gauss_legendre(nodes)
    return complex(np.sum(w * np.cos(lam * t * np.sin(u))))


def _hc_counterpart(lam: float, kernel: ContourKernel) -> complex:
    """与围道核对应的 Harish-Chandra 指标"""
    return 1j * lam if kernel == "cos" else complex(lam)


def calibrate_contour_constant(
    t_ref: float = 0.5,
    lam_ref: "SpectralParam | float" = 1.2,
    kernel: ContourKernel = "cosh",
    nodes: int = CONTOUR_NODES,
) -> float:
    """
    在参考点上令围道积分等于 Harish-Chandra 积分，求出常数 c，
    并在 VALIDATION_POINTS 中其余的点上验证同一个 c

    Args:
        t_ref: 参考时间，取值 (0, 1]
        lam_ref: 实的参考谱参数
        kernel: 围道核
        nodes: Gauss-Legendre 节点数

    Returns:
        校准常数 c

    Raises:
        CalibrationError: 某个验证点误差超过 CONTOUR_VALIDATION_TOL
    """
    lam_ref = as_lambda(lam_ref)
    if not 0.0 < t_ref <= 1.0:
        raise DomainError(f"参考时间必须在 (0, 1] 内，收到 {t_ref}")
    if lam_ref.imag != 0.0:
        raise DomainError(f"参考谱参数必须是实数，收到 {lam_ref}")

    target = hc_integral(_hc_counterpart(lam_ref.real, kernel), t_ref).value
    constant = (target / _contour_raw(lam_ref, t_ref, nodes, kernel)).real

    worst, worst_point = 0.0, None
    for lam, t in VALIDATION_POINTS:
        if (lam, t) == (lam_ref.real, t_ref):
            continue
        expected = hc_integral(_hc_counterpart(lam, kernel), t).value
        got = constant * _contour_raw(lam, t, nodes, kernel)
        err = abs(got - expected) / max(1.0, abs(expected))
        if err > worst:
            worst, worst_point = err, (lam, t)
    if worst > CONTOUR_VALIDATION_TOL:
        raise CalibrationError(
            f"围道常数 c={constant:.10g}（{kernel} 核）在 (lambda, t)={worst_point} 处误差 {worst:.3e}"
        )
    log.info("围道常数 c=%.12g（%s 核，最大验证误差 %.2e）", constant, kernel, worst)
    return constant


@lru_cache(maxsize=4)
def calibrated_constant(kernel: ContourKernel = "cosh") -> float:
    """默认参考点上的校准常数（缓存）"""
    return calibrate_contour_constant(kernel=kernel)


# ======================== 约定对照表 ========================

@dataclass(frozen=True)
class ConventionEntry:
    """
    一个候选对应关系：hc_integral(index_scale * lambda, time_scale * t)
    与群的超几何路线在 (lambda, t) 处比较的最大偏差
    """

    time_scale: float
    index_scale: float
    max_diff: float
    passed: bool


@dataclass
class ConventionLedger:
    group: str
    entries: list[ConventionEntry] = field(default_factory=list)

    @property
    def passing(self) -> list[ConventionEntry]:
        return [e for e in self.entries if e.passed]

    def summary(self) -> str:
        lines = [f"群 {self.group} 与 Harish-Chandra 积分的对应关系:"]
        for e in self.entries:
            mark = "通过" if e.passed else "不通过"
            lines.append(
                f"  t -> {e.time_scale:g} t, lambda -> {e.index_scale:g} lambda: "
                f"最大偏差 {e.max_diff:.3e} [{mark}]"
            )
        return "\n".join(lines)


def resolve_conventions(g: GroupRank1, tol: float = 1e-6) -> ConventionLedger:
    """
    依次尝试候选的 (时间缩放, 指标缩放)，记录哪些使 Harish-Chandra 积分
    与群的超几何路线一致

    Args:
        g: 群
        tol: 判定一致的绝对偏差

    Returns:
        ConventionLedger
    """
    ledger = ConventionLedger(group=g.name)
    for time_scale, index_scale in CONVENTION_CANDIDATES:
        max_diff = 0.0
        for lam, t in CONVENTION_SAMPLES:
            reference = spherical_2f1(g, lam, t).value
            value = hc_integral(index_scale * lam, time_scale * t).value
            max_diff = max(max_diff, abs(value - reference))
        ledger.entries.append(
            ConventionEntry(time_scale, index_scale, max_diff, max_diff <= tol)
        )
    log.info("%s: %d 个候选约定通过", g.name, len(ledger.passing))
    return ledger
