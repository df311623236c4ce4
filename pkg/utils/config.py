#!/usr/bin/env python3
"""配置管理模块"""

import os
import yaml
from pydantic import BaseModel, Field
from typing import List, Optional
from dotenv import load_dotenv


class OracleConfig(BaseModel):
    """暴力枚举求解器配置"""
    node_budget: int = 10_000_000  # 允许枚举的子集数上限


class SolverConfig(BaseModel):
    """近似算法配置"""
    flat_h_limit: int = 3  # DP-Flattened 允许的最大网格边长
    squares_workers: int = 1  # greedy_squares 的局部求解并行数


class BenchConfig(BaseModel):
    """基准测试配置"""
    timeout: int = 60  # 单个求解任务的超时时间（秒）
    workers: int = 1
    algorithms: List[str] = Field(default_factory=lambda: [
        "greedy", "dp-approx", "ptas-budget", "ptas-points"
    ])
    oracle_max_subsets: int = 1_000_000  # 超过该子集数的实例不跑 oracle


class LoggingConfig(BaseModel):
    """日志配置"""
    log_dir: str = "./logs"
    level: str = "INFO"


class SystemConfig(BaseModel):
    """系统配置"""
    oracle: OracleConfig = Field(default_factory=OracleConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    bench: BenchConfig = Field(default_factory=BenchConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    debug: bool = False
    data_dir: str = "./data"


def load_config(config_path: str = "./config.yaml", create_missing: bool = True) -> SystemConfig:
    """加载配置文件"""
    # 加载.env文件中的环境变量
    load_dotenv()

    level_from_env = os.environ.get("MAX_EXPOSURE_LOG_LEVEL")

    # 如果配置文件不存在，创建默认配置文件
    if not os.path.exists(config_path):
        default_config = SystemConfig()
        if level_from_env:
            default_config.logging.level = level_from_env

        if create_missing:
            directory = os.path.dirname(config_path)
            if directory:
                os.makedirs(directory, exist_ok=True)

            with open(config_path, "w", encoding="utf-8") as f:
                yaml.dump(default_config.model_dump(), f, allow_unicode=True)

        return default_config

    # 加载现有的配置文件
    with open(config_path, "r", encoding="utf-8") as f:
        config_data = yaml.safe_load(f) or {}

    # 环境变量中的日志级别优先于配置文件
    if level_from_env:
        config_data.setdefault("logging", {})
        config_data["logging"]["level"] = level_from_env

    # 验证并返回配置
    return SystemConfig(**config_data)


def resolve_config(config: Optional[SystemConfig] = None) -> SystemConfig:
    """未显式传入配置时使用默认值"""
    return config if config is not None else SystemConfig()
