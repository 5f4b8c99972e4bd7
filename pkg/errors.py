"""
异常定义
所有数值路线抛出的错误都派生自 SphericalError，命令行据此映射退出码
"""


class SphericalError(Exception):
    """本库所有错误的基类"""

    exit_code = 1


class DomainError(SphericalError, ValueError):
    """前置条件不满足、极点或定义域错误"""

    exit_code = 2


class ConvergenceError(SphericalError, RuntimeError):
    """级数项数耗尽、步长下溢或求积不收敛"""

    exit_code = 3


class FamilyMismatchError(DomainError):
    """Δ-运算的两个元素不属于同一族"""


class CatalogError(DomainError):
    """群目录文件无法解析"""


class CalibrationError(ConvergenceError):
    """围道常数在验证点上不一致（通常意味着积分表示抄写有误）"""
