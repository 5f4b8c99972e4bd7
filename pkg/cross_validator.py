"""
路线交叉验证模块
在 (lambda, t) 网格上并发地用多条路线求值，按确定的顺序汇总偏差，
并输出 CSV 与 Markdown 报告
"""
import csv
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime
from typing import TextIO

import numpy as np

from config import CLI_MODE, CLI_TOL, OUTPUT_DIR, SWEEP_WORKERS
from errors import DomainError
from expansions import OrderFit
from rank1_group import GroupRank1, SpectralParam, as_lambda
from report_templates import (
    AXIOM_REPORT,
    COMPARE_FAILURES,
    COMPARE_REPORT,
    COMPARE_ROUTE_ROW,
    ERROR_ORDER_REPORT,
)
from routes import ROUTES, RouteValue, evaluate_points
from special_fn import BesselMode
from sph_algebra import AxiomReport

log = logging.getLogger(__name__)

CSV_COLUMNS = [
    "group", "lambda_re", "lambda_im", "t", "route", "value_re", "value_im", "abs_diff_vs_first",
]

# 退出码
EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_POINT_FAILURE = 4


def t_grid(t_min: float, t_max: float, steps: int) -> list[float]:
    """[t_min, t_max] 上的等距网格"""
    if steps < 1:
        raise DomainError(f"网格点数至少为 1，收到 {steps}")
    if steps == 1:
        return [float(t_min)]
    if t_max < t_min:
        raise DomainError(f"t_max={t_max} 小于 t_min={t_min}")
    return np.linspace(t_min, t_max, steps).tolist()


@dataclass(frozen=True)
class CompareRow:
    """CSV 中的一行"""

    group: str
    lam: complex
    t: float
    route: str
    value: complex | None
    abs_diff: float | None
    error: str | None = None

    def as_csv(self) -> list[str]:
        def fmt(x: float | None) -> str:
            return "" if x is None else repr(float(x))

        return [
            self.group,
            fmt(self.lam.real),
            fmt(self.lam.imag),
            fmt(self.t),
            self.route,
            fmt(None if self.value is None else self.value.real),
            fmt(None if self.value is None else self.value.imag),
            fmt(self.abs_diff),
        ]


class RouteComparison:
    """路线比较结果"""

    def __init__(self, group: GroupRank1, lambdas: list[complex], t_values: list[float],
                 routes: list[str], tol: float):
        self.group = group
        self.lambdas = lambdas
        self.t_values = t_values
        self.routes = routes
        self.tol = tol
        self.rows: list[CompareRow] = []

    @property
    def failed_rows(self) -> list[CompareRow]:
        return [r for r in self.rows if r.value is None]

    @property
    def max_diffs(self) -> dict[str, float]:
        """每条路线相对基准路线的最大偏差"""
        diffs = {route: 0.0 for route in self.routes}
        for r in self.rows:
            if r.abs_diff is not None:
                diffs[r.route] = max(diffs[r.route], r.abs_diff)
        return diffs

    @property
    def passes_threshold(self) -> bool:
        """所有点都成功并且偏差不超过 tol"""
        if self.failed_rows:
            return False
        return all(r.abs_diff is not None and r.abs_diff <= self.tol for r in self.rows)

    @property
    def exit_code(self) -> int:
        if self.failed_rows:
            return EXIT_POINT_FAILURE
        return EXIT_OK if self.passes_threshold else EXIT_MISMATCH

    def summary(self) -> str:
        """生成比较摘要，标注每条路线是否达标"""
        failed = {r.route for r in self.failed_rows}
        lines = [
            f"📊 路线比较: {self.group.name}，{len(self.lambdas)} 个 lambda × {len(self.t_values)} 个 t",
        ]
        for route, diff in self.max_diffs.items():
            if route in failed:
                status = "❌ 有失败的点"
            elif diff <= self.tol:
                status = f"✅ {diff:.3e}"
            else:
                status = f"❌ {diff:.3e} (阈值: {self.tol:g})"
            lines.append(f"  {route:<18} {status}")
        lines.append("  ━━━━━━━━━━━━━━━━━━━━━━━━━━━")
        lines.append(f"  📌 {'通过' if self.passes_threshold else '未通过'}")
        return "\n".join(lines)


# ======================== 比较与扫描 ========================

def compare_routes(
    g: GroupRank1,
    lambdas: list["SpectralParam | complex"],
    t_values: list[float],
    routes: list[str],
    tol: float = CLI_TOL,
    mode: BesselMode = CLI_MODE,
    workers: int = SWEEP_WORKERS,
) -> RouteComparison:
    """
    在网格上比较多条路线，偏差以第一条路线为基准

    (lambda, 路线) 组合并发求值；输出行按 lambda、t、路线的给定顺序排列，
    与执行顺序无关。

    Args:
        g: 群
        lambdas: 谱参数列表
        t_values: t 网格
        routes: 至少两条路线
        tol: 判定通过的绝对偏差
        mode: calJ 在 0 处的约定
        workers: 线程数

    Returns:
        RouteComparison
    """
    if len(routes) < 2:
        raise DomainError("比较至少需要两条路线")
    unknown = [r for r in routes if r not in ROUTES]
    if unknown:
        raise DomainError(f"未知路线: {', '.join(unknown)}（可用: {', '.join(ROUTES)}）")
    if tol < 0:
        raise DomainError(f"tol 不能为负，收到 {tol}")
    lams = [as_lambda(lam) for lam in lambdas]
    t_values = [float(t) for t in t_values]
    tasks = [(lam, route) for lam in lams for route in routes]

    def run(task: tuple[complex, str]) -> list[RouteValue]:
        lam, route = task
        return evaluate_points(g, lam, t_values, route, mode)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        outputs = list(executor.map(run, tasks))

    comparison = RouteComparison(g, lams, t_values, list(routes), tol)
    for li, lam in enumerate(lams):
        per_route = outputs[li * len(routes):(li + 1) * len(routes)]
        for ti, t in enumerate(t_values):
            first = per_route[0][ti]
            for route, values in zip(routes, per_route):
                point = values[ti]
                diff = None
                if point.ok and first.ok:
                    diff = abs(point.value - first.value)
                comparison.rows.append(
                    CompareRow(g.name, lam, t, route, point.value if point.ok else None, diff, point.error)
                )
    failed = len(comparison.failed_rows)
    if failed:
        log.warning("%d 个点求值失败", failed)
    return comparison


def write_csv(comparison: RouteComparison, stream: TextIO) -> None:
    """写出 CSV：表头在前，换行符为 \\n，数值用与区域设置无关的 repr 格式"""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in comparison.rows:
        writer.writerow(row.as_csv())


# ======================== 保存报告 ========================

def _timestamp() -> str:
    return datetime.now().strftime("%Y%m%d_%H%M%S")


def save_comparison(comparison: RouteComparison, output_dir: str = OUTPUT_DIR) -> list[str]:
    """
    保存比较结果到文件

    Args:
        comparison: 比较结果
        output_dir: 输出目录

    Returns:
        写出的文件路径 [csv, md]
    """
    os.makedirs(output_dir, exist_ok=True)
    stamp = _timestamp()
    slug = comparison.group.name.replace(" ", "_").replace("/", "_")
    csv_path = os.path.join(output_dir, f"{stamp}_{slug}_compare.csv")
    with open(csv_path, "w", encoding="utf-8", newline="") as f:
        write_csv(comparison, f)

    failed = {r.route: 0 for r in comparison.rows}
    for r in comparison.failed_rows:
        failed[r.route] += 1
    route_rows = "\n".join(
        COMPARE_ROUTE_ROW.format(route=route, max_diff=f"{diff:.3e}", failed=failed.get(route, 0))
        for route, diff in comparison.max_diffs.items()
    )
    failures = ""
    if comparison.failed_rows:
        items = "\n".join(
            f"- lambda={r.lam}, t={r.t:g}, {r.route}: {r.error}" for r in comparison.failed_rows
        )
        failures = COMPARE_FAILURES.format(items=items)

    g = comparison.group
    md_path = os.path.join(output_dir, f"{stamp}_{slug}_compare.md")
    with open(md_path, "w", encoding="utf-8") as f:
        f.write(COMPARE_REPORT.format(
            group=g.name, p=g.p, q=g.q, model=g.model,
            timestamp=datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            lambdas=", ".join(str(lam) for lam in comparison.lambdas),
            t_min=min(comparison.t_values), t_max=max(comparison.t_values),
            t_steps=len(comparison.t_values),
            routes=", ".join(comparison.routes), first_route=comparison.routes[0],
            tol=comparison.tol, route_rows=route_rows,
            verdict="通过" if comparison.passes_threshold else "未通过",
            failures=failures,
        ))
    log.info("结果已保存到 %s", output_dir)
    return [csv_path, md_path]


def save_axiom_report(report: AxiomReport, output_dir: str = OUTPUT_DIR) -> str:
    os.makedirs(output_dir, exist_ok=True)
    path = os.path.join(output_dir, f"{_timestamp()}_axioms.md")
    with open(path, "w", encoding="utf-8") as f:
        f.write(AXIOM_REPORT.format(
            trials=report.trials, seed=report.seed,
            timestamp=datetime.now().strftime("%Y-%m-%d %H:%M:%S"),
            lines="\n".join(f"- {line}" for line in report.lines()),
            verdict="全部通过" if report.all_passed else "存在失败",
        ))
    return path


def save_error_order(fit: OrderFit, group: str, lam: complex, mapping: str,
                     output_dir: str = OUTPUT_DIR) -> str:
    os.makedirs(output_dir, exist_ok=True)
    path = os.path.join(output_dir, f"{_timestamp()}_{group}_error_order.md")
    rows = "\n".join(f"| {t:g} | {err:.6e} |" for t, err in zip(fit.t_values, fit.errors))
    with open(path, "w", encoding="utf-8") as f:
        f.write(ERROR_ORDER_REPORT.format(
            group=group, lam=lam, M=0, mapping=mapping, rows=rows, summary=fit.summary(),
        ))
    return path
