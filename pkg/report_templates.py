"""
报告模板：保存到 outputs/ 的 Markdown 报告
"""

# ======================== 路线比较报告 ========================

COMPARE_REPORT = """# 球函数路线交叉验证报告

**群**: {group}（p={p}, q={q}, model={model}）

**生成时间**: {timestamp}

**谱参数**: {lambdas}

**t 网格**: {t_min:g} 到 {t_max:g}，共 {t_steps} 个点

**路线**: {routes}（基准路线: {first_route}）

**容差**: {tol:g}

---

## 结果摘要

| 路线 | 最大偏差 | 失败点数 |
|------|----------|----------|
{route_rows}

**结论**: {verdict}

{failures}
"""

COMPARE_ROUTE_ROW = "| {route} | {max_diff} | {failed} |"

COMPARE_FAILURES = """## 失败的点

{items}
"""

# ======================== 公理报告 ========================

AXIOM_REPORT = """# Δ-代数公理检查

**试验次数**: {trials}

**随机种子**: {seed}

**生成时间**: {timestamp}

---

{lines}

**结论**: {verdict}
"""

# ======================== 误差阶报告 ========================

ERROR_ORDER_REPORT = """# Stanton-Tomas 截断误差阶

**群**: {group}

**谱参数**: {lam}

**截断阶 M**: {M}

**参考映射**: {mapping}

| t | 误差 |
|---|------|
{rows}

**拟合**: {summary}
"""
