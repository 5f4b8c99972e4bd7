import io
import os

import pytest

from cross_validator import (
    CSV_COLUMNS,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_POINT_FAILURE,
    compare_routes,
    save_axiom_report,
    save_comparison,
    save_error_order,
    t_grid,
    write_csv,
)
from errors import DomainError
from expansions import error_order_check
from sph_algebra import check_axioms

LAMBDAS = [0.7, 1.2 + 0.5j]
GRID = t_grid(0.01, 2.0, 10)


def test_t_grid():
    assert t_grid(0.0, 1.0, 5) == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert t_grid(0.3, 0.1, 1) == [0.3]
    with pytest.raises(DomainError):
        t_grid(0.0, 1.0, 0)
    with pytest.raises(DomainError):
        t_grid(1.0, 0.0, 3)


def test_hyp_and_ode_agree(sec4):
    comparison = compare_routes(sec4, LAMBDAS, GRID, ["hyp", "ode"], tol=1e-6)
    assert comparison.passes_threshold
    assert comparison.exit_code == EXIT_OK
    assert comparison.max_diffs["hyp"] == 0.0
    assert len(comparison.rows) == len(LAMBDAS) * len(GRID) * 2
    assert "✅" in comparison.summary()


def test_duplicate_route_has_zero_difference(sec4):
    comparison = compare_routes(sec4, LAMBDAS, GRID, ["hyp", "hyp"], tol=0.0)
    assert all(row.abs_diff == 0.0 for row in comparison.rows)
    assert comparison.exit_code == EXIT_OK


def test_zero_tolerance_reports_mismatch(sec4):
    comparison = compare_routes(sec4, LAMBDAS, GRID, ["hyp", "ode"], tol=0.0)
    assert not comparison.passes_threshold
    assert comparison.exit_code == EXIT_MISMATCH
    assert "❌" in comparison.summary()


def test_compare_rejects_bad_arguments(sec4):
    with pytest.raises(DomainError):
        compare_routes(sec4, LAMBDAS, GRID, ["hyp"])
    with pytest.raises(DomainError):
        compare_routes(sec4, LAMBDAS, GRID, ["hyp", "ode"], tol=-1.0)
    with pytest.raises(DomainError, match="bogus"):
        compare_routes(sec4, LAMBDAS, GRID, ["hyp", "bogus"])


def test_row_order_independent_of_workers(sec2):
    routes = ["hyp", "legendre", "integral-hc"]
    serial = compare_routes(sec2, LAMBDAS, GRID, routes, workers=1)
    parallel = compare_routes(sec2, LAMBDAS, GRID, routes, workers=4)
    assert serial.rows == parallel.rows
    keys = [(row.lam, row.t, row.route) for row in serial.rows]
    expected = [(complex(lam), t, route) for lam in LAMBDAS for t in GRID for route in routes]
    assert keys == expected


def test_csv_output(sec4):
    comparison = compare_routes(sec4, [0.5], t_grid(0.1, 0.5, 3), ["hyp", "ode"])
    buffer = io.StringIO()
    write_csv(comparison, buffer)
    text = buffer.getvalue()
    lines = text.split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + 3 * 2 + 1
    assert lines[-1] == ""
    assert "\r" not in text
    first = lines[1].split(",")
    assert first[0] == "sl2r-sec4"
    assert float(first[5]) == comparison.rows[0].value.real


def test_point_failures(sec2):
    comparison = compare_routes(sec2, [1.2], t_grid(0.0, 1.0, 3), ["hyp", "integral-contour"])
    assert len(comparison.failed_rows) == 1
    assert comparison.exit_code == EXIT_POINT_FAILURE
    buffer = io.StringIO()
    write_csv(comparison, buffer)
    failed_line = buffer.getvalue().split("\n")[2]
    assert failed_line.endswith("integral-contour,,,")


def test_save_reports(sec2, tmp_path):
    comparison = compare_routes(sec2, [1.2], t_grid(0.0, 1.0, 3), ["hyp", "integral-contour"])
    csv_path, md_path = save_comparison(comparison, str(tmp_path))
    assert os.path.exists(csv_path) and os.path.exists(md_path)
    with open(md_path, encoding="utf-8") as f:
        report = f.read()
    assert "失败的点" in report
    assert "sl2r-sec2" in report

    axiom_path = save_axiom_report(check_axioms(5), str(tmp_path))
    with open(axiom_path, encoding="utf-8") as f:
        assert "全部通过" in f.read()

    fit = error_order_check(sec2, 1.0)
    order_path = save_error_order(fit, sec2.name, 1.0, "literal", str(tmp_path))
    with open(order_path, encoding="utf-8") as f:
        assert "拟合" in f.read()
