#!/usr/bin/env python3
"""异常定义模块"""


class MaxExposureError(Exception):
    """最大暴露问题求解器的基础异常"""


class InvalidInputError(MaxExposureError, ValueError):
    """输入不合法：索引越界、形状参数错误、求解器不支持的范围类型等"""


class BudgetExceededError(MaxExposureError, RuntimeError):
    """枚举规模超出预算"""

    def __init__(self, message: str, count: int = 0, budget: int = 0):
        super().__init__(message)
        self.count = count
        self.budget = budget


class InfeasibleError(BudgetExceededError):
    """精确模式不可行（网格边长 h 超过上限）"""

    def __init__(self, message: str, h: int = 0, limit: int = 0):
        super().__init__(message, count=h, budget=limit)
        self.h = h
        self.limit = limit


class ConsistencyError(MaxExposureError, AssertionError):
    """内部一致性检查失败（证书复核、分配不变量、解不变量）"""
