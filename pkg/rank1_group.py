"""
实秩 1 群模块
用限制根重数 (p, q) 描述一个实秩 1 半单群，并导出 rho0、n、c0、特征值映射、
Jacobian D(t) 等所有由 (p, q) 决定的常数与函数
"""
import math
from dataclasses import dataclass
from typing import Callable, Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field

from config import DEFAULT_TOL
from errors import DomainError
from special_fn import HypParams, SeriesResult, confluent_1f1, gamma, gauss_2f1

GroupModel = Literal["general", "sl2r-sec2"]
WeylElement = Literal["identity", "reflection"]


class GroupRank1(BaseModel):
    """
    实秩 1 群：名称与限制根重数

    model 为 "general" 时径向算子取一般形式 (p+q)coth t + q tanh t；
    "sl2r-sec2" 表示 SL(2,R) 的第二种约定（漂移项 2coth 2t，位势 1）。
    """

    model_config = ConfigDict(frozen=True)

    name: str
    p: int = Field(ge=1, description="根 alpha 的重数 n(alpha)")
    q: int = Field(ge=0, description="根 2alpha 的重数 n(2alpha)")
    model: GroupModel = "general"

    @computed_field
    @property
    def rho0(self) -> float:
        return (self.p + 2 * self.q) / 2.0

    @computed_field
    @property
    def n(self) -> int:
        """dim(G/K) = p + q + 1"""
        return self.p + self.q + 1

    def killing_h0(self) -> float:
        """B(H0, H0) = 2(p+4q)"""
        return 2.0 * (self.p + 4 * self.q)

    def h_rho(self) -> float:
        """H_rho 在 H0 上的系数 (p+2q)/(4(p+4q))"""
        return (self.p + 2 * self.q) / (4.0 * (self.p + 4 * self.q))


@dataclass(frozen=True)
class SpectralParam:
    """谱参数 lambda，取值于 a*_C，等同于 C"""

    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise DomainError(f"谱参数必须有限: {self.value}")
        object.__setattr__(self, "value", v)

    def __complex__(self) -> complex:
        return self.value

    def reflect(self) -> "SpectralParam":
        """Weyl 反射 lambda -> -lambda"""
        return SpectralParam(-self.value)

    @classmethod
    def parse(cls, text: str) -> "SpectralParam":
        """解析 "a+bi" 形式（也接受 j 后缀）"""
        compact = text.strip().replace(" ", "").replace("i", "j")
        try:
            return cls(complex(compact))
        except ValueError as e:
            raise DomainError(f"无法解析谱参数: {text!r}") from e


def as_lambda(lam: "SpectralParam | complex") -> complex:
    """把 SpectralParam 或数值统一成 complex"""
    if isinstance(lam, SpectralParam):
        return lam.value
    return SpectralParam(lam).value


# ======================== 导出常数与函数 ========================

def hyp_params(g: GroupRank1, lam: "SpectralParam | complex") -> HypParams:
    """
    谱参数对应的超几何参数
    a = (p+2q+2 lambda)/4, b = (p+2q-2 lambda)/4, c = (p+q+1)/2；
    sl2r-sec2 约定经 Legendre 约化后 c = 1
    """
    lam = as_lambda(lam)
    base = g.p + 2 * g.q
    a = (base + 2 * lam) / 4
    b = (base - 2 * lam) / 4
    c = 1.0 if g.model == "sl2r-sec2" else (g.p + g.q + 1) / 2.0
    return HypParams(a, b, c)


def eigenvalue(g: GroupRank1, lam: "SpectralParam | complex", normalized: bool = False) -> complex:
    """
    径向方程的特征值 lambda^2 - rho0^2

    Args:
        g: 群
        lam: 谱参数
        normalized: 为 True 时除以 B(H0,H0) = 2(p+4q)

    Returns:
        特征值
    """
    lam = as_lambda(lam)
    value = lam * lam - g.rho0 * g.rho0
    if normalized:
        return value / g.killing_h0()
    return value


def harish_chandra_eigenvalue(g: GroupRank1, lam: "SpectralParam | complex") -> complex:
    """lambda(H1)^2 - B(H_rho, H_rho)，其中 B(H1,H1)=1"""
    lam = as_lambda(lam)
    return lam * lam / g.killing_h0() - g.rho0 * g.h_rho()


def jacobian_D(g: GroupRank1, t: float) -> float:
    """
    极分解的 Jacobian D(t) = e^{-2 rho0 t} g1(t)^{-p} g2(t)^{-q}，
    其中 g_k(t)^{-1} = e^{2kt} - 1
    """
    if t <= 0:
        raise DomainError(f"jacobian_D 需要 t > 0，收到 {t}")
    return math.exp(-2.0 * g.rho0 * t) * math.expm1(2.0 * t) ** g.p * math.expm1(4.0 * t) ** g.q


def c0_constant(g: GroupRank1) -> float:
    """c0 = pi^{1/2} 2^{q/2-2} Gamma((n-1)/2) / Gamma(n/2)"""
    if g.n < 2:
        raise DomainError("c0 需要 n >= 2（Gamma(0) 为极点）")
    ratio = gamma((g.n - 1) / 2.0).real / gamma(g.n / 2.0).real
    return math.sqrt(math.pi) * 2.0 ** (g.q / 2.0 - 2.0) * ratio


def weyl_fixed_set(s: WeylElement) -> Callable[["SpectralParam | complex"], bool]:
    """Weyl 元素 s 的不动点集 l_s 的判定函数"""
    if s == "identity":
        return lambda lam: True
    if s == "reflection":
        return lambda lam: as_lambda(lam) == -as_lambda(lam)
    raise DomainError(f"未知的 Weyl 元素: {s}")


def kummer_spherical(g: GroupRank1, lam: "SpectralParam | complex", z: complex) -> SeriesResult:
    """群参数下的合流超几何函数 1F1(a, c; z)"""
    hp = hyp_params(g, lam)
    return confluent_1f1(hp.a, hp.c, z)


def spherical_2f1(
    g: GroupRank1, lam: "SpectralParam | complex", t: float, tol: float = DEFAULT_TOL
) -> SeriesResult:
    """超几何表示 phi_lambda(exp tH0) = F(a, b, c; -(sinh t)^2)"""
    return gauss_2f1(hyp_params(g, lam), -math.sinh(t) ** 2, tol)
