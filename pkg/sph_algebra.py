"""
Δ-代数模块
球函数与合流球函数按指标构成的代数：加法、数乘、乘法都作用在指标上，
元素在 Weyl 作用 lambda ~ -lambda 下视为相等
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from config import AXIOM_SEED, AXIOM_TRIALS, CLI_MODE
from errors import DomainError, FamilyMismatchError
from expansions import confluent_spherical
from rank1_group import GroupRank1, SpectralParam, as_lambda, spherical_2f1
from special_fn import BesselMode

log = logging.getLogger(__name__)

Family = Literal["spherical", "confluent"]
Evaluator = Callable[[complex, float], complex]


def _canonical(index: complex) -> complex:
    """Weyl 轨道 {lambda, -lambda} 的代表元，同时把 -0.0 规范为 0.0"""
    if index.real < 0 or (index.real == 0 and index.imag < 0):
        index = -index
    return complex(index.real + 0.0, index.imag + 0.0)


@dataclass(frozen=True, eq=False)
class IndexedFunction:
    """
    Δ-代数的元素 phi_lambda 或 phi^sigma_lambda

    evaluator 随运算原样传递，不参与相等比较。
    """

    index: complex
    family: Family = "spherical"
    evaluator: Evaluator | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "index", as_lambda(self.index))
        if self.family not in ("spherical", "confluent"):
            raise DomainError(f"未知的族 {self.family!r}")

    @property
    def param(self) -> SpectralParam:
        return SpectralParam(self.index)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexedFunction):
            return NotImplemented
        return self.family == other.family and (
            self.index == other.index or self.index == -other.index
        )

    def __hash__(self) -> int:
        return hash((self.family, _canonical(self.index)))

    def __call__(self, t: float) -> complex:
        if self.evaluator is None:
            raise DomainError("该元素没有求值路线")
        return self.evaluator(self.index, t)


# ======================== 指标运算 ========================

def _same_family(x: IndexedFunction, y: IndexedFunction) -> None:
    if x.family != y.family:
        raise FamilyMismatchError(f"不能组合 {x.family} 与 {y.family} 族的元素")


def delta_add(x: IndexedFunction, y: IndexedFunction) -> IndexedFunction:
    """a_{l1} + a_{l2} := a_{l1 + l2}"""
    _same_family(x, y)
    return IndexedFunction(x.index + y.index, x.family, x.evaluator)


def delta_scale(alpha: complex, x: IndexedFunction) -> IndexedFunction:
    """alpha a_l := a_{alpha l}"""
    return IndexedFunction(complex(alpha) * x.index, x.family, x.evaluator)


def delta_mul(x: IndexedFunction, y: IndexedFunction) -> IndexedFunction:
    """a_{l1} . a_{l2} := a_{l1 l2}，单位元为 phi_1"""
    _same_family(x, y)
    return IndexedFunction(x.index * y.index, x.family, x.evaluator)


def sigma_map(x: IndexedFunction, evaluator: Evaluator | None = None) -> IndexedFunction:
    """sigma(phi_lambda) = phi^sigma_lambda，保持指标"""
    if x.family != "spherical":
        raise FamilyMismatchError("sigma 只作用于球函数族")
    return IndexedFunction(x.index, "confluent", evaluator)


def sigma_inverse(x: IndexedFunction, evaluator: Evaluator | None = None) -> IndexedFunction:
    """sigma 在正实指标上的逆"""
    if x.family != "confluent":
        raise FamilyMismatchError("sigma 的逆只作用于合流族")
    if x.index.imag != 0.0 or x.index.real <= 0.0:
        raise DomainError(f"sigma 只在正实指标上可逆，收到 {x.index}")
    return IndexedFunction(x.index, "spherical", evaluator)


def is_delta_linear(
    mapping: Callable[[IndexedFunction], IndexedFunction],
    samples: list[tuple[IndexedFunction, IndexedFunction, complex]],
) -> bool:
    """检查映射在样本上保持加法与数乘"""
    for x, y, alpha in samples:
        if mapping(delta_add(x, y)) != delta_add(mapping(x), mapping(y)):
            return False
        if mapping(delta_scale(alpha, x)) != delta_scale(alpha, mapping(x)):
            return False
    return True


# ======================== 代数门面 ========================

class DeltaAlgebra:
    """某个群上一族函数构成的 Δ-代数，元素带有该群的求值路线"""

    def __init__(self, group: GroupRank1, family: Family = "spherical", mode: BesselMode = CLI_MODE):
        self.group = group
        self.family = family
        self.mode = mode

    def _evaluator(self, family: Family) -> Evaluator:
        if family == "spherical":
            return lambda lam, t: spherical_2f1(self.group, lam, t).value
        return lambda lam, t: confluent_spherical(self.group, lam, t, self.mode)

    def element(self, lam: "SpectralParam | complex") -> IndexedFunction:
        return IndexedFunction(as_lambda(lam), self.family, self._evaluator(self.family))

    def zero(self) -> IndexedFunction:
        """Ξ = phi_0"""
        return self.element(0)

    def one(self) -> IndexedFunction:
        return self.element(1)

    def sigma(self, x: IndexedFunction) -> IndexedFunction:
        return sigma_map(x, self._evaluator("confluent"))

    def sigma_inverse(self, x: IndexedFunction) -> IndexedFunction:
        return sigma_inverse(x, self._evaluator("spherical"))


# ======================== 公理检查 ========================

def _axioms(x, y, w, alpha, beta, zero, one) -> dict[str, bool]:
    add, scale, mul = delta_add, delta_scale, delta_mul
    return {
        "(i) 加法封闭": isinstance(add(x, y), IndexedFunction) and add(x, y).family == x.family,
        "(ii) 加法结合律": add(add(x, y), w) == add(x, add(y, w)),
        "(iii) 零元 Ξ": add(zero, x) == x,
        "(iv) 加法逆元": add(IndexedFunction(-x.index, x.family), x) == zero,
        "(v) 加法交换律": add(x, y) == add(y, x),
        "(vi) 数乘封闭": isinstance(scale(alpha, x), IndexedFunction),
        "(vii) 数乘结合律": scale(alpha, scale(beta, x)) == scale(alpha * beta, x),
        "(viii) 数乘单位": scale(1, x) == x,
        "(ix) 数乘对元素加法分配": scale(alpha, add(x, y)) == add(scale(alpha, x), scale(alpha, y)),
        "(x) 数乘对标量加法分配": scale(alpha + beta, x) == add(scale(alpha, x), scale(beta, x)),
        "(xi) 乘法封闭": isinstance(mul(x, y), IndexedFunction) and mul(x, y).family == x.family,
        "(xii) 乘法结合律": mul(mul(x, y), w) == mul(x, mul(y, w)),
        "(xiii) 乘法单位 phi_1": mul(one, x) == x,
        "(xiv) 左分配律": mul(x, add(y, w)) == add(mul(x, y), mul(x, w)),
        "(xv) 右分配律": mul(add(x, y), w) == add(mul(x, w), mul(y, w)),
    }


@dataclass
class AxiomReport:
    """每条公理在随机试验中的通过次数"""

    trials: int
    seed: int
    passes: dict[str, int] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(count == self.trials for count in self.passes.values())

    def failures(self) -> list[str]:
        return [name for name, count in self.passes.items() if count < self.trials]

    def lines(self) -> list[str]:
        return [f"{name}: {count}/{self.trials}" for name, count in self.passes.items()]


def _random_indices(rng: np.random.Generator, count: int) -> list[complex]:
    """分母为 8 的二进有理复数，保证浮点运算在检查中是精确的"""
    parts = rng.integers(-64, 65, size=(count, 2)) / 8.0
    return [complex(re, im) for re, im in parts]


def check_axioms(
    trials: int = AXIOM_TRIALS,
    seed: int = AXIOM_SEED,
    family: Family = "spherical",
) -> AxiomReport:
    """
    随机检查 15 条公理

    Args:
        trials: 试验次数
        seed: 随机种子
        family: 检查的族

    Returns:
        AxiomReport
    """
    if trials < 1:
        raise DomainError(f"试验次数至少为 1，收到 {trials}")
    rng = np.random.default_rng(seed)
    zero = IndexedFunction(0, family)
    one = IndexedFunction(1, family)
    report = AxiomReport(trials, seed)
    for _ in range(trials):
        lx, ly, lw, alpha, beta = _random_indices(rng, 5)
        results = _axioms(
            IndexedFunction(lx, family),
            IndexedFunction(ly, family),
            IndexedFunction(lw, family),
            alpha,
            beta,
            zero,
            one,
        )
        for name, ok in results.items():
            report.passes[name] = report.passes.get(name, 0) + int(ok)
    if not report.all_passed:
        log.warning("公理检查失败: %s", ", ".join(report.failures()))
    return report
