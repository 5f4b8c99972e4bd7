"""
配置文件：数值容差、积分参数、群目录与命令行默认值
"""
import logging
import os
from dotenv import load_dotenv

load_dotenv()


def _load_catalog_path() -> str | None:
    """从环境变量中加载群目录文件路径（未设置时只使用内置目录）"""
    path = os.getenv("SPHFN_CATALOG", "")
    return path or None


def _load_workers() -> int:
    """从环境变量中加载扫描线程数，无法解析时退回默认值 4"""
    text = os.getenv("SPHFN_WORKERS", "").strip()
    try:
        return max(1, int(text)) if text else 4
    except ValueError:
        logging.getLogger(__name__).warning("SPHFN_WORKERS=%r 不是整数，使用默认值 4", text)
        return 4


# ======================== 级数核参数 ========================
# 标量特殊函数的默认相对容差
DEFAULT_TOL = 1e-12

# 级数求和的最大项数
MAX_TERMS = 10_000

# 连续多少项都足够小才接受收敛（防止遇到恰好为零的项时提前停止）
STOP_RUN = 3

# 部分和接近 0 时的绝对下限
ABS_FLOOR = 1e-300

# Pfaff 变换后的级数超过该项数时给出警告
SLOW_SERIES_WARN = 1_000

# ======================== Bessel 函数参数 ========================
# 幂级数与 Miller 后向递推的切换点
BESSEL_SERIES_LIMIT = 8.0

# 支持的最大自变量，超出时记录消去误差警告
BESSEL_MAX_ARG = 40.0

# ======================== 径向 ODE 参数 ========================
ODE_TOL = 1e-9
ODE_T0 = 1e-3               # 奇点附近的起始偏移
ODE_T0_MAX = 1e-2           # 局部展开允许的最大起点
ODE_START_ORDER = 2         # 局部展开阶数：2 或 4
ODE_METHOD = "DOP853"       # 显式自适应高阶方法，带稠密输出
ODE_DIFF_STEP = 1e-5        # 残差重差分步长（相对于 max(1, t)）

LEGENDRE_S0 = 1e-3          # Legendre 方程在 z=1 处的起始偏移
LEGENDRE_START_ORDER = 4

# ======================== 积分表示参数 ========================
HC_NODES = 256              # 周期梯形公式节点数
HC_MIN_NODES = 16
HC_MAX_NODES = 4096
HC_CONVERGENCE = 1e-10      # 节点加倍后变化量的阈值

CONTOUR_NODES = 64          # Gauss-Legendre 节点数
CONTOUR_VALIDATION_TOL = 1e-5

# ======================== 展开式参数 ========================
ST_R0 = 1.0                 # Stanton-Tomas 展开的有效半径
ERROR_ORDER_SLACK = 0.2     # 拟合阶数允许低于 2(M+1) 的余量
ERROR_ORDER_POINTS = 4
ERROR_ORDER_T_START = 1e-2
ERROR_ZERO_FLOOR = 1e-14    # 误差低于该值视为舍入噪声

# ======================== 命令行默认值 ========================
CLI_TOL = 1e-8
CLI_MODE = "continuous"
CLI_FORMAT = "pretty"
AXIOM_TRIALS = 1000
AXIOM_SEED = 20240101

# 扫描时的并发线程数
SWEEP_WORKERS = _load_workers()

# 结果输出目录
OUTPUT_DIR = os.getenv("SPHFN_OUTPUT_DIR", "outputs")

# ======================== 群目录 ========================
CATALOG_PATH = _load_catalog_path()

# 内置目录：两种 SL(2,R) 约定始终可用
BUILTIN_GROUPS = [
    {"name": "sl2r-sec2", "p": 2, "q": 0, "model": "sl2r-sec2"},
    {"name": "sl2r-sec4", "p": 2, "q": 0, "model": "general"},
]
