"""
群目录模块：负责加载内置群与用户提供的目录文件
"""
import logging
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from pydantic import ValidationError

from config import BUILTIN_GROUPS, CATALOG_PATH
from errors import CatalogError
from rank1_group import GroupRank1

log = logging.getLogger(__name__)


class GroupCatalog:
    """群目录管理类，按名称查找 (p, q) 记录"""

    def __init__(self, path: str | None = CATALOG_PATH):
        self.path = path
        self.groups: dict[str, GroupRank1] = {}
        for record in BUILTIN_GROUPS:
            group = GroupRank1(**record)
            self.groups[group.name] = group
        if path:
            self.load(path)

    def load(self, path: str) -> list[GroupRank1]:
        """
        读取目录文件，文件中的同名条目会覆盖内置条目

        文件格式为 TOML，每个 [[group]] 记录包含 name、p、q 以及可选的 model。

        Args:
            path: 目录文件路径

        Returns:
            新加载的群列表
        """
        if not os.path.exists(path):
            raise CatalogError(f"群目录文件不存在: {path}")
        try:
            with open(path, "rb") as f:
                document = tomllib.load(f)
        except tomllib.TOMLDecodeError as e:
            raise CatalogError(f"群目录文件解析失败: {e}") from e

        loaded = []
        for i, record in enumerate(document.get("group", []), 1):
            try:
                group = GroupRank1(**record)
            except ValidationError as e:
                raise CatalogError(f"第 {i} 条群记录无效: {e.errors()[0]['msg']}") from e
            self.groups[group.name] = group
            loaded.append(group)
        log.info("从 %s 加载了 %d 个群", path, len(loaded))
        return loaded

    def get(self, name: str) -> GroupRank1:
        """按名称取群"""
        if name not in self.groups:
            known = ", ".join(sorted(self.groups))
            raise CatalogError(f"未知的群 {name!r}（可用: {known}）")
        return self.groups[name]

    def resolve(self, name: str | None, p: int | None = None, q: int | None = None) -> GroupRank1:
        """
        根据名称和可选的 --p/--q 覆盖值得到群

        只给出 p/q 时构造一个自定义群；同时给出名称时，用覆盖值替换目录中的重数。
        """
        if name is None and p is None:
            raise CatalogError("需要 --group 或 --p")
        if name is None:
            return self._custom(p, q or 0, f"custom-p{p}-q{q or 0}")
        group = self.get(name)
        if p is None and q is None:
            return group
        return self._custom(
            group.p if p is None else p,
            group.q if q is None else q,
            group.name,
            group.model,
        )

    def _custom(self, p: int, q: int, name: str, model: str = "general") -> GroupRank1:
        try:
            return GroupRank1(name=name, p=p, q=q, model=model)
        except ValidationError as e:
            raise CatalogError(f"无效的重数 p={p}, q={q}: {e.errors()[0]['msg']}") from e

    def names(self) -> list[str]:
        return sorted(self.groups)

    def format_for_console(self) -> str:
        """
        将目录格式化为可打印文本

        Returns:
            每行一个群的文本
        """
        lines = []
        for name in self.names():
            g = self.groups[name]
            lines.append(
                f"{g.name:<20} p={g.p:<3} q={g.q:<3} rho0={g.rho0:<6g} n={g.n:<3} model={g.model}"
            )
        return "\n".join(lines)
