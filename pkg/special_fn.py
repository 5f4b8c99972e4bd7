"""
标量特殊函数核
Gamma、Pochhammer 符号、Gauss 超几何函数 2F1、合流超几何函数 1F1、
第一类 Bessel 函数 J_mu 以及归一化的 Bessel 函数 calJ_mu
"""
import cmath
import logging
import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from config import (
    ABS_FLOOR,
    BESSEL_MAX_ARG,
    BESSEL_SERIES_LIMIT,
    DEFAULT_TOL,
    MAX_TERMS,
    SLOW_SERIES_WARN,
    STOP_RUN,
)
from errors import ConvergenceError, DomainError

log = logging.getLogger(__name__)

BesselMode = Literal["paper-literal", "continuous"]

# ======================== Lanczos 系数 ========================
# g 与有理函数系数取自 cephes 的 lanczos_sum_expg_scaled（13 项），
# 分子为降幂排列，分母为 x(x+1)...(x+11) 的展开式
_LANCZOS_G = 6.024680040776729583740234375
_LANCZOS_NUM = np.array([
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
])
_LANCZOS_DENOM = np.array([
    1.0, 66.0, 1925.0, 32670.0, 357423.0, 2637558.0, 13339535.0,
    45995730.0, 105258076.0, 150917976.0, 120543840.0, 39916800.0, 0.0,
])


# ======================== 数据类型 ========================

@dataclass(frozen=True)
class SeriesResult:
    """级数求值结果：数值、使用的项数、尾项估计（最后接受项的模）"""

    value: complex
    terms_used: int
    tail_estimate: float


@dataclass(frozen=True)
class HypParams:
    """2F1 / 1F1 的参数三元组；合流情形 b 为 None"""

    a: complex
    b: complex | None
    c: complex

    def __post_init__(self):
        if _is_nonpositive_integer(self.c):
            raise DomainError(f"参数 c={self.c} 是级数分母的极点")


@dataclass(frozen=True)
class BesselOrder:
    """Bessel 函数的阶，整数与非整数均可"""

    mu: float

    def __post_init__(self):
        if not math.isfinite(self.mu):
            raise DomainError(f"Bessel 阶必须有限: {self.mu}")


# ======================== 内部工具 ========================

def _is_nonpositive_integer(x: complex) -> bool:
    x = complex(x)
    return x.imag == 0.0 and x.real <= 0.0 and x.real == math.floor(x.real)


def _order_value(mu: "BesselOrder | float") -> float:
    if isinstance(mu, BesselOrder):
        return mu.mu
    return BesselOrder(float(mu)).mu


def _sum_series(
    first: complex,
    ratio: Callable[[int], complex],
    tol: float,
    max_terms: int = MAX_TERMS,
) -> SeriesResult:
    """
    按项比递推求和：term_{k+1} = term_k * ratio(k)

    连续 STOP_RUN 项的模都不超过 tol*|部分和|（或绝对下限），并且下一项比值 r 满足 |r| < 1、
    几何尾部 |term|*|r|/(1-|r|) 也不超过该界时接受。项恰为 0（终止级数）时直接接受。

    Args:
        first: 第 0 项
        ratio: 第 k 项到第 k+1 项的比值
        tol: 相对容差
        max_terms: 最大项数

    Returns:
        SeriesResult，tail_estimate 为几何尾部估计
    """
    total = first
    term = first
    small = 0
    for k in range(max_terms - 1):
        term = term * ratio(k)
        total += term
        if term == 0:
            return SeriesResult(total, k + 2, 0.0)
        bound = max(tol * abs(total), ABS_FLOOR)
        if abs(term) <= bound:
            small += 1
            if small >= STOP_RUN:
                r = abs(ratio(k + 1))
                if r < 1.0:
                    tail = abs(term) * r / (1.0 - r)
                    if tail <= bound:
                        return SeriesResult(total, k + 2, tail)
        else:
            small = 0
    raise ConvergenceError(f"级数在 {max_terms} 项内未收敛（最后一项 {abs(term):.3e}）")


def _rgamma(x: complex) -> complex:
    """1/Gamma(x)，在极点处返回 0"""
    if _is_nonpositive_integer(x):
        return 0.0
    return 1.0 / gamma(x)


# ======================== Gamma 与 Pochhammer ========================

def gamma(x: complex) -> complex:
    """
    Gamma 函数：Lanczos 有理逼近，Re x < 0.5 时使用反射公式

    Args:
        x: 自变量（实数或复数）

    Returns:
        Gamma(x)，复数类型
    """
    x = complex(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"Gamma 在非正整数 {x.real:g} 处有极点")
    if x.real < 0.5:
        return cmath.pi / (cmath.sin(cmath.pi * x) * gamma(1.0 - x))
    lanczos = complex(np.polyval(_LANCZOS_NUM, x) / np.polyval(_LANCZOS_DENOM, x))
    zgh = x + _LANCZOS_G - 0.5
    return lanczos * cmath.exp((x - 0.5) * (cmath.log(zgh) - 1.0))


def pochhammer(m: complex, k: int) -> complex:
    """上升阶乘 (m)_k = m(m+1)...(m+k-1)，(m)_0 = 1"""
    if k < 0 or int(k) != k:
        raise DomainError(f"Pochhammer 的 k 必须是非负整数: {k}")
    result = 1
    for j in range(int(k)):
        result *= m + j
    return result


# ======================== 超几何函数 ========================

def _gauss_series(a: complex, b: complex, c: complex, z: complex, tol: float) -> SeriesResult:
    return _sum_series(
        1.0 + 0j,
        lambda k: (a + k) * (b + k) / ((c + k) * (k + 1)) * z,
        tol,
    )


def gauss_2f1(p: HypParams, z: complex, tol: float = DEFAULT_TOL) -> SeriesResult:
    """
    Gauss 超几何函数 F(a,b,c;z)

    |z| < 1 时直接求和；z 为负实数时使用 Pfaff 变换
    F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1))，把 (-inf, 0) 映到 [0, 1)。
    终止级数（a 或 b 为非正整数）在任意 z 上直接求和。

    Args:
        p: 参数 (a, b, c)
        z: 自变量
        tol: 相对容差

    Returns:
        SeriesResult
    """
    if p.b is None:
        raise DomainError("2F1 需要参数 b")
    z = complex(z)
    if z == 0:
        return SeriesResult(1.0 + 0j, 1, 0.0)

    # 规范化参数顺序，保证 F(a,b) 与 F(b,a) 逐位相同
    a, b = sorted((complex(p.a), complex(p.b)), key=lambda v: (v.real, v.imag))
    c = complex(p.c)

    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        return _gauss_series(a, b, c, z, tol)

    if z.imag == 0.0 and z.real < 0.0:
        w = z / (z - 1.0)
        inner = _gauss_series(a, c - b, c, w, tol)
        if inner.terms_used > SLOW_SERIES_WARN:
            log.warning("Pfaff 变换后的 2F1 级数用了 %d 项（z=%.4g）", inner.terms_used, z.real)
        prefactor = cmath.exp(-a * cmath.log(1.0 - z))
        return SeriesResult(prefactor * inner.value, inner.terms_used, abs(prefactor) * inner.tail_estimate)

    if abs(z) < 1.0:
        return _gauss_series(a, b, c, z, tol)

    raise DomainError(f"2F1 只支持 |z|<1 或负实轴，收到 z={z}")


def confluent_1f1(a: complex, c: complex, z: complex, tol: float = DEFAULT_TOL) -> SeriesResult:
    """
    合流超几何函数 1F1(a;c;z) = sum (a)_k / ((c)_k k!) z^k，对 z 整函数

    Re z < 0 时用 Kummer 变换 1F1(a;c;z) = e^z 1F1(c-a;c;-z)，只对正实部求和。
    """
    if _is_nonpositive_integer(c):
        raise DomainError(f"参数 c={c} 是级数分母的极点")
    z = complex(z)
    if z == 0:
        return SeriesResult(1.0 + 0j, 1, 0.0)
    if z.real < 0.0 and not _is_nonpositive_integer(a):
        inner = confluent_1f1(c - a, c, -z, tol)
        scale = cmath.exp(z)
        return SeriesResult(scale * inner.value, inner.terms_used, abs(scale) * inner.tail_estimate)
    return _sum_series(1.0 + 0j, lambda k: (a + k) / ((c + k) * (k + 1)) * z, tol)


def confluent_limit(
    p: HypParams, z: complex, b_values: list[float]
) -> list[tuple[float, float]]:
    """
    合流极限 1F1(a,c;z) = lim_{b->inf} F(a,b,c;z/b) 的偏差序列

    Args:
        p: 取其中的 a 与 c（b 被忽略）
        z: 自变量
        b_values: 依次增大的 b

    Returns:
        [(b, |F(a,b,c;z/b) - 1F1(a,c;z)|), ...]
    """
    target = confluent_1f1(p.a, p.c, z).value
    deviations = []
    for b in b_values:
        if abs(z / b) >= 1.0:
            raise DomainError(f"b={b} 太小，|z/b| 必须小于 1")
        value = gauss_2f1(HypParams(p.a, b, p.c), z / b).value
        deviations.append((b, abs(value - target)))
    return deviations


def hypergeometric_residual(p: HypParams, z: complex, tol: float = DEFAULT_TOL) -> complex:
    """
    Gauss 方程 z(1-z)y'' + (c-(a+b+1)z)y' - ab y 在 2F1 上的残差

    导数用 d/dz F(a,b,c;z) = (ab/c) F(a+1,b+1,c+1;z) 求得。
    """
    a, b, c = complex(p.a), complex(p.b), complex(p.c)
    y = gauss_2f1(p, z, tol).value
    dy = a * b / c * gauss_2f1(HypParams(a + 1, b + 1, c + 1), z, tol).value
    d2y = a * (a + 1) * b * (b + 1) / (c * (c + 1)) * gauss_2f1(HypParams(a + 2, b + 2, c + 2), z, tol).value
    return z * (1 - z) * d2y + (c - (a + b + 1) * z) * dy - a * b * y


def kummer_residual(a: complex, c: complex, z: complex, tol: float = DEFAULT_TOL) -> complex:
    """合流方程 z y'' + (c-z) y' - a y 在 1F1 上的残差"""
    y = confluent_1f1(a, c, z, tol).value
    dy = a / c * confluent_1f1(a + 1, c + 1, z, tol).value
    d2y = a * (a + 1) / (c * (c + 1)) * confluent_1f1(a + 2, c + 2, z, tol).value
    return z * d2y + (c - z) * dy - a * y


# ======================== Bessel 函数 ========================

def _bessel_power_series(mu: float, x: float, tol: float) -> SeriesResult:
    half = x / 2.0
    first = half ** mu * _rgamma(mu + 1.0).real
    if first == 0.0:
        return SeriesResult(0.0, 1, 0.0)
    q = -half * half
    result = _sum_series(first, lambda k: q / ((k + 1) * (mu + k + 1)), tol)
    return SeriesResult(result.value.real if isinstance(result.value, complex) else result.value,
                        result.terms_used, result.tail_estimate)


def _bessel_miller(mu: float, x: float) -> SeriesResult:
    """
    Miller 后向递推：对阶 nu0+k（nu0 为 mu 的小数部分）做后向三项递推，
    再用 (x/2)^nu0 = sum (nu0+2k) Gamma(nu0+k)/k! J_{nu0+2k}(x) 归一化
    """
    nu0 = mu - math.floor(mu)
    top = max(int(math.floor(mu)), 0)
    n_start = top + int(x) + 30
    values = [0.0] * (n_start + 1)
    j_next, j_cur = 0.0, 1e-30
    values[n_start] = j_cur
    for k in range(n_start, 0, -1):
        j_prev = (2.0 * (nu0 + k) / x) * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        values[k - 1] = j_cur
        if abs(j_cur) > 1e250:
            values[k - 1:] = [v * 1e-250 for v in values[k - 1:]]
            j_next *= 1e-250
            j_cur *= 1e-250

    # 归一化求和
    norm = gamma(nu0 + 1.0).real * values[0]
    r = gamma(nu0 + 1.0).real
    last = 0.0
    for k in range(1, n_start // 2 + 1):
        last = (nu0 + 2 * k) * r * values[2 * k]
        norm += last
        r *= (nu0 + k) / (k + 1)
    scale = (x / 2.0) ** nu0 / norm

    m = int(math.floor(mu))
    if m >= 0:
        value = values[m] * scale
    else:
        # 负的非整数阶：从 nu0, nu0+1 继续后向递推
        j_up, j_here = values[1] * scale, values[0] * scale
        nu = nu0
        for _ in range(-m):
            j_up, j_here = j_here, (2.0 * nu / x) * j_here - j_up
            nu -= 1.0
        value = j_here
    return SeriesResult(value, n_start, abs(last * scale))


def bessel_j(mu: "BesselOrder | float", x: float, tol: float = DEFAULT_TOL) -> SeriesResult:
    """
    第一类 Bessel 函数 J_mu(x)

    x <= BESSEL_SERIES_LIMIT 时用幂级数
    J_mu(x) = sum (-1)^k / (k! Gamma(mu+k+1)) (x/2)^{mu+2k}，
    更大的 x 用 Miller 后向递推以避免幂级数的消去误差。
    负整数阶按 J_{-n} = (-1)^n J_n 处理。

    Args:
        mu: 阶
        x: 非负实自变量
        tol: 相对容差（幂级数部分）

    Returns:
        SeriesResult（value 为实数）
    """
    mu = _order_value(mu)
    x = float(x)
    if x < 0.0:
        raise DomainError(f"bessel_j 需要 x >= 0，收到 {x}")
    is_integer = mu == math.floor(mu)

    if is_integer and mu < 0:
        n = int(-mu)
        inner = bessel_j(float(n), x, tol)
        sign = -1.0 if n % 2 else 1.0
        return SeriesResult(sign * inner.value, inner.terms_used, inner.tail_estimate)

    if x == 0.0:
        if is_integer:
            return SeriesResult(1.0 if mu == 0 else 0.0, 1, 0.0)
        if mu < 0:
            raise DomainError(f"非整数负阶 J_{mu:g} 在 x=0 处奇异")
        return SeriesResult(0.0, 1, 0.0)

    if x > BESSEL_MAX_ARG:
        log.warning("bessel_j: x=%.3g 超出支持范围 [0, %g]，结果可能有消去误差", x, BESSEL_MAX_ARG)
    if x <= BESSEL_SERIES_LIMIT:
        return _bessel_power_series(mu, x, tol)
    return _bessel_miller(mu, x)


def bessel_prefactor(mu: float) -> float:
    """calJ_mu 的常数 Gamma(mu+1/2) Gamma(1/2) 2^{mu-1}"""
    return (gamma(mu + 0.5) * math.sqrt(math.pi)).real * 2.0 ** (mu - 1.0)


def _even_series(mu: float, z: complex, tol: float) -> complex:
    """sum (-z^2/4)^k / (k! Gamma(mu+k+1))，即 J_mu(z) (2/z)^mu；对 z 偶且整"""
    q = -(z * z) / 4.0
    first = _rgamma(mu + 1.0)
    return _sum_series(first, lambda k: q / ((k + 1) * (mu + k + 1)), tol).value


def normalized_bessel(
    mu: "BesselOrder | float",
    z: complex,
    mode: BesselMode = "continuous",
    tol: float = DEFAULT_TOL,
) -> complex:
    """
    归一化 Bessel 函数 calJ_mu(z) = J_mu(z)/z^mu * Gamma(mu+1/2) Gamma(1/2) 2^{mu-1}

    z = 0 时 paper-literal 模式返回 0，continuous 模式返回 z->0 的极限
    Gamma(mu+1/2) Gamma(1/2) 2^{mu-1} / (2^mu Gamma(mu+1))。
    函数对 z 是偶函数，负实数按 |z| 求值；复数 z 使用偶级数。

    Args:
        mu: 阶
        z: 自变量
        mode: z=0 处的约定
        tol: 级数容差

    Returns:
        实数 z 返回 float，复数 z 返回 complex
    """
    mu = _order_value(mu)
    if _is_nonpositive_integer(mu + 0.5):
        raise DomainError(f"calJ_{mu:g} 的常数 Gamma(mu+1/2) 有极点")
    if mu < 0 and mu == math.floor(mu):
        raise DomainError(f"calJ 不支持负整数阶 {mu:g}")
    const = bessel_prefactor(mu)
    z = complex(z)

    if z.imag != 0.0:
        return const * _even_series(mu, z, tol) / 2.0 ** mu

    x = abs(z.real)
    if x == 0.0:
        if mode == "paper-literal":
            return 0.0
        return const * _rgamma(mu + 1.0).real / 2.0 ** mu
    if x <= BESSEL_SERIES_LIMIT:
        return const * _even_series(mu, x, tol).real / 2.0 ** mu
    return const * bessel_j(mu, x, tol).value / x ** mu
