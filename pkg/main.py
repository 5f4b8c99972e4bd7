"""
实秩 1 群球函数交叉验证工具 - 主程序入口

使用方式：
    python main.py eval --group sl2r-sec4 --lambda 1.0 --t 0.5 --route hyp
    python main.py compare --p 2 --q 1 --lambda 0.7 --lambda 2+1i --routes hyp,ode
    python main.py axioms --trials 1000
    python main.py error-order --group sl2r-sec4 --lambda 1.0
    python main.py catalog --conventions
"""
import argparse
import logging
import sys

from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from catalog import GroupCatalog
from config import (
    AXIOM_SEED,
    AXIOM_TRIALS,
    CATALOG_PATH,
    CLI_FORMAT,
    CLI_MODE,
    CLI_TOL,
    ERROR_ORDER_POINTS,
    ERROR_ORDER_T_START,
    OUTPUT_DIR,
    SWEEP_WORKERS,
)
from cross_validator import (
    compare_routes,
    save_axiom_report,
    save_comparison,
    save_error_order,
    t_grid,
    write_csv,
)
from errors import SphericalError
from expansions import error_order_check, geometric_t_values
from integral_reps import resolve_conventions
from rank1_group import SpectralParam
from routes import ROUTES, evaluate
from sph_algebra import check_axioms

console = Console()
err_console = Console(stderr=True)

EVAL_COLUMNS = "group,lambda_re,lambda_im,t,route,value_re,value_im,diagnostics"


def setup_logging(verbose: bool) -> None:
    """安装 RichHandler，日志输出到 stderr"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _resolve_group(args):
    catalog = GroupCatalog(args.catalog)
    return catalog.resolve(args.group, args.p, args.q)


# ======================== 子命令 ========================

def cmd_eval(args) -> int:
    """单点求值"""
    g = _resolve_group(args)
    lam = SpectralParam.parse(args.lam)
    result = evaluate(g, lam, args.t, args.route, args.mode)
    value = result.value
    diagnostics = ";".join(f"{k}={v}" for k, v in result.diagnostics.items())

    if args.format == "csv":
        print(EVAL_COLUMNS)
        print(",".join([
            g.name, repr(lam.value.real), repr(lam.value.imag), repr(float(args.t)),
            args.route, repr(value.real), repr(value.imag), diagnostics,
        ]))
        return 0

    console.print(Panel(
        f"[bold]群[/bold]: {g.name}（p={g.p}, q={g.q}, model={g.model}）\n"
        f"[bold]lambda[/bold]: {lam.value}\n"
        f"[bold]t[/bold]: {args.t:g}\n"
        f"[bold]路线[/bold]: {args.route}\n"
        f"[bold]值[/bold]: {value.real:.15g} {value.imag:+.15g}i\n"
        f"[bold]诊断[/bold]: {diagnostics or '无'}",
        title="📐 球函数求值",
        border_style="cyan",
    ))
    return 0


def cmd_compare(args) -> int:
    """多路线比较"""
    g = _resolve_group(args)
    lambdas = [SpectralParam.parse(text) for text in (args.lam or ["1.0"])]
    routes = [r.strip() for r in args.routes.split(",") if r.strip()]
    grid = t_grid(args.t_min, args.t_max, args.t_steps)
    comparison = compare_routes(g, lambdas, grid, routes, args.tol, args.mode, args.workers)

    if args.format == "csv":
        write_csv(comparison, sys.stdout)
    else:
        table = Table(title=f"路线比较: {g.name}")
        table.add_column("路线", style="cyan")
        table.add_column("最大偏差", justify="right")
        table.add_column("失败点数", justify="right")
        for route, diff in comparison.max_diffs.items():
            failed = sum(1 for r in comparison.failed_rows if r.route == route)
            table.add_row(route, f"{diff:.3e}", str(failed))
        console.print(table)
        console.print(Panel(comparison.summary(), title="📊 比较摘要", border_style="green"))

    if args.save:
        paths = save_comparison(comparison, args.output_dir)
        err_console.print(f"[green]💾 结果已保存到 {', '.join(paths)}[/green]")
    return comparison.exit_code


def cmd_axioms(args) -> int:
    """Δ-代数公理检查"""
    report = check_axioms(args.trials, args.seed)
    if args.format == "csv":
        print("axiom,passed,trials")
        for name, count in report.passes.items():
            print(f"{name},{count},{report.trials}")
    else:
        for line in report.lines():
            console.print(line)
        verdict = "[green]✅ 全部通过[/green]" if report.all_passed else "[red]❌ 存在失败[/red]"
        console.print(verdict)
    if args.save:
        err_console.print(f"[green]💾 报告已保存到 {save_axiom_report(report, args.output_dir)}[/green]")
    return 0 if report.all_passed else 1


def cmd_error_order(args) -> int:
    """截断误差阶拟合"""
    g = _resolve_group(args)
    lam = SpectralParam.parse(args.lam)
    t_values = geometric_t_values(args.t_start, args.points)
    fit = error_order_check(g, lam, args.M, t_values, mapping=args.mapping)

    if args.format == "csv":
        print("group,lambda_re,lambda_im,M,slope,residual,threshold,passed,skipped")
        print(",".join([
            g.name, repr(lam.value.real), repr(lam.value.imag), str(args.M),
            repr(fit.slope), repr(fit.residual), repr(fit.threshold),
            str(fit.passed).lower(), str(fit.skipped).lower(),
        ]))
    else:
        table = Table(title=f"截断误差: {g.name}, lambda={lam.value}")
        table.add_column("t", justify="right")
        table.add_column("误差", justify="right")
        for t, err in zip(fit.t_values, fit.errors):
            table.add_row(f"{t:g}", f"{err:.6e}")
        console.print(table)
        console.print(fit.summary())
    if args.save:
        path = save_error_order(fit, g.name, lam.value, args.mapping, args.output_dir)
        err_console.print(f"[green]💾 报告已保存到 {path}[/green]")
    return 0 if fit.passed or fit.skipped else 1


def cmd_catalog(args) -> int:
    """列出群目录"""
    catalog = GroupCatalog(args.catalog)
    console.print(Panel(catalog.format_for_console(), title="📚 群目录", border_style="blue"))
    if args.conventions:
        for name in catalog.names():
            console.print(resolve_conventions(catalog.get(name)).summary())
    return 0


# ======================== 参数解析 ========================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--catalog", default=CATALOG_PATH, help="群目录文件（TOML），也可用 SPHFN_CATALOG 指定")
    common.add_argument("--format", choices=["csv", "pretty"], default=CLI_FORMAT, help=f"输出格式（默认: {CLI_FORMAT}）")
    common.add_argument("--verbose", "-v", action="store_true", help="输出调试日志")
    common.add_argument("--save", action="store_true", help=f"把结果保存到 {OUTPUT_DIR}/")
    common.add_argument("--output-dir", default=OUTPUT_DIR, help="结果输出目录")

    group = argparse.ArgumentParser(add_help=False)
    group.add_argument("--group", default=None, help="群名称（如 sl2r-sec2, sl2r-sec4）")
    group.add_argument("--p", type=int, default=None, help="根 alpha 的重数（覆盖目录）")
    group.add_argument("--q", type=int, default=None, help="根 2alpha 的重数（覆盖目录）")
    group.add_argument("--mode", choices=["paper-literal", "continuous"], default=CLI_MODE,
                       help=f"calJ 在 0 处的约定（默认: {CLI_MODE}）")

    parser = argparse.ArgumentParser(
        description="实秩 1 群上球函数与合流球函数的多路线求值与交叉验证",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用示例:
  # 超几何路线单点求值
  python main.py eval --group sl2r-sec4 --lambda 1.0 --t 0 --route hyp

  # 比较超几何与 ODE 路线，输出 CSV
  python main.py compare --p 2 --q 1 --lambda 0.3 --lambda 2+1i --routes hyp,ode --format csv

  # 公理检查与误差阶
  python main.py axioms --trials 1000 --seed 20240101
  python main.py error-order --group sl2r-sec4 --lambda 1.0
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", parents=[common, group], help="单点求值")
    p_eval.add_argument("--lambda", dest="lam", default="1.0", help="谱参数，a+bi 形式")
    p_eval.add_argument("--t", type=float, default=0.5, help="时间 t（默认: 0.5）")
    p_eval.add_argument("--route", choices=ROUTES, default="hyp", help="求值路线")
    p_eval.set_defaults(handler=cmd_eval, default_group="sl2r-sec4")

    p_cmp = sub.add_parser("compare", parents=[common, group], help="多路线交叉比较")
    p_cmp.add_argument("--lambda", dest="lam", action="append", help="谱参数，可重复")
    p_cmp.add_argument("--t-min", type=float, default=0.01)
    p_cmp.add_argument("--t-max", type=float, default=2.0)
    p_cmp.add_argument("--t-steps", type=int, default=20)
    p_cmp.add_argument("--routes", default="hyp,ode", help="逗号分隔的路线，第一条为基准")
    p_cmp.add_argument("--tol", type=float, default=CLI_TOL, help=f"通过阈值（默认: {CLI_TOL:g}）")
    p_cmp.add_argument("--workers", type=int, default=SWEEP_WORKERS, help="并发线程数")
    p_cmp.set_defaults(handler=cmd_compare, default_group="sl2r-sec4")

    p_ax = sub.add_parser("axioms", parents=[common], help="Δ-代数公理检查")
    p_ax.add_argument("--trials", type=int, default=AXIOM_TRIALS)
    p_ax.add_argument("--seed", type=int, default=AXIOM_SEED)
    p_ax.set_defaults(handler=cmd_axioms)

    p_err = sub.add_parser("error-order", parents=[common, group], help="Stanton-Tomas 截断误差阶")
    p_err.add_argument("--lambda", dest="lam", default="1.0")
    p_err.add_argument("--M", type=int, default=0, help="截断阶（只支持 0）")
    p_err.add_argument("--t-start", type=float, default=ERROR_ORDER_T_START)
    p_err.add_argument("--points", type=int, default=ERROR_ORDER_POINTS)
    p_err.add_argument("--mapping", choices=["literal", "oscillatory"], default="literal",
                       help="参考路线的指标映射")
    p_err.set_defaults(handler=cmd_error_order, default_group="sl2r-sec4")

    p_cat = sub.add_parser("catalog", parents=[common], help="列出群目录")
    p_cat.add_argument("--conventions", action="store_true", help="同时打印积分表示的约定对照表")
    p_cat.set_defaults(handler=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    """主入口函数，返回退出码"""
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    if getattr(args, "group", None) is None and getattr(args, "p", None) is None and hasattr(args, "default_group"):
        args.group = args.default_group

    try:
        return args.handler(args)
    except SphericalError as e:
        err_console.print(f"[bold red]❌ {type(e).__name__}: {e}[/bold red]")
        return e.exit_code
    except KeyboardInterrupt:
        err_console.print("\n[yellow]⚠️ 用户中断，程序退出。[/yellow]")
        return 130
    except Exception as e:
        err_console.print(f"\n[bold red]❌ 运行出错: {e}[/bold red]")
        err_console.print_exception()
        return 1


if __name__ == "__main__":
    sys.exit(main())
