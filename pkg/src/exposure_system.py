#!/usr/bin/env python3
"""最大暴露求解系统核心模块：按算法名注册求解器，运行、计时、复核并做基准测试"""

import re
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union

import pandas as pd

from models.geometry import Instance, Solution, check_solution, exposed_points
from models.instance_file import ResultRecord, read_instance
from src.greedy import greedy_bicriteria, greedy_squares, solve_fat
from src.grid_solver import dp_approx, ptas_budget, ptas_points, solve_similar_fat
from src.oracle import brute_force_opt
from utils.config import SystemConfig, resolve_config
from utils.errors import ConsistencyError, InvalidInputError
from utils.logger import get_logger
from utils.task_runner import TaskRunner

ALGORITHMS = ("oracle", "greedy", "greedy-squares", "dp-approx", "ptas-budget",
              "ptas-points", "similar-fat", "fat-squares")
DEFAULT_EPS_NUMERATORS = {"ptas-budget": 8, "ptas-points": 4}

_BUDGET_PATTERN = re.compile(r"^\s*(\d+)\s*k\s*$")


def parse_budget(text: Union[int, str, None], k: int, default_multiplier: int = 4) -> int:
    """预算可以是整数或 "<c>k" 形式（如 "4k"）"""
    if text is None:
        return default_multiplier * k
    if isinstance(text, int):
        value = text
    else:
        match = _BUDGET_PATTERN.match(text)
        if match:
            value = int(match.group(1)) * k
        elif text.strip().isdigit():
            value = int(text.strip())
        else:
            raise InvalidInputError(f"无法解析预算: {text!r}")
    if value < 0:
        raise InvalidInputError(f"预算不能为负: {value}")
    return value


class ExposureSystem:
    """最大暴露求解系统主类"""

    def __init__(self, config: Optional[SystemConfig] = None):
        """初始化求解系统"""
        self.config = resolve_config(config)
        self.logger = get_logger("exposure_system")

        # 注册求解器
        self.solvers: Dict[str, Callable[..., Solution]] = self._register_solvers()

    def _register_solvers(self) -> Dict[str, Callable[..., Solution]]:
        """注册求解器"""
        solver = self.config.solver
        return {
            "oracle": lambda inst, p: brute_force_opt(inst, node_budget=self.config.oracle.node_budget),
            "greedy": lambda inst, p: greedy_bicriteria(inst, p.get("alpha") or 1).to_solution(),
            "greedy-squares": lambda inst, p: greedy_squares(
                inst, p.get("alpha") or 1, workers=solver.squares_workers).to_solution(),
            "dp-approx": lambda inst, p: dp_approx(inst, parse_budget(p.get("budget"), inst.k)),
            "ptas-budget": lambda inst, p: ptas_budget(
                inst, inst.k, p["eps"], h_limit=solver.flat_h_limit),
            "ptas-points": lambda inst, p: ptas_points(
                inst, inst.k, p["eps"], h_limit=solver.flat_h_limit),
            "similar-fat": lambda inst, p: solve_similar_fat(inst, inst.k),
            "fat-squares": lambda inst, p: solve_fat(inst, inst.k, p.get("alpha") or 1),
        }

    def solve(self, inst: Instance, algorithm: str, alpha: Optional[int] = None,
              eps: Optional[str] = None, budget: Optional[str] = None,
              timing: bool = True) -> ResultRecord:
        """运行一个求解器并返回复核过的结果记录"""
        if algorithm not in self.solvers:
            raise InvalidInputError(f"未知算法: {algorithm}，可选: {', '.join(ALGORITHMS)}")

        if eps is None and algorithm in DEFAULT_EPS_NUMERATORS:
            # 未指定时取让网格边长恰好等于上限的 epsilon
            eps = str(Fraction(DEFAULT_EPS_NUMERATORS[algorithm], self.config.solver.flat_h_limit))

        parameters: Dict[str, Any] = {"k": inst.k}
        if alpha is not None:
            parameters["alpha"] = alpha
        if eps is not None:
            parameters["eps"] = str(eps)
        if budget is not None:
            parameters["budget"] = str(budget)

        self.logger.info(f"开始求解: 算法={algorithm}, n={inst.n}, m={inst.m}, 参数={parameters}")
        start = time.perf_counter()
        solution = self.solvers[algorithm](inst, {"alpha": alpha, "eps": eps, "budget": budget})
        elapsed = (time.perf_counter() - start) * 1000

        try:
            check_solution(inst, solution)
        except ConsistencyError as e:
            self.logger.error(f"{algorithm} 的解复核失败: {e}")
            raise

        self.logger.info(f"求解完成: 算法={algorithm}, value={solution.value}, 删除={len(solution.deleted)}, 用时={elapsed:.1f}ms")
        return ResultRecord(
            algorithm=algorithm,
            parameters=parameters,
            value=solution.value,
            deleted_count=len(solution.deleted),
            deleted=sorted(solution.deleted),
            exposed=sorted(solution.exposed),
            wall_clock_ms=round(elapsed, 3) if timing else None,
        )

    def verify(self, inst: Instance, record: ResultRecord) -> Dict[str, Any]:
        """由删除集合重算暴露点，检查结果记录是否自洽"""
        try:
            exposed = exposed_points(inst, record.deleted)
        except InvalidInputError as e:
            self.logger.error(f"结果记录复核失败: {e}")
            return {"success": False, "message": str(e)}

        problems = []
        if sorted(exposed) != sorted(record.exposed):
            problems.append(f"暴露集合不一致: 记录 {len(record.exposed)} 个, 重算 {len(exposed)} 个")
        if record.value != len(exposed):
            problems.append(f"value={record.value} 与重算暴露数 {len(exposed)} 不一致")
        if record.deleted_count != len(set(record.deleted)) or len(set(record.deleted)) != len(record.deleted):
            problems.append("deleted_count 与删除集合不一致")

        if problems:
            for message in problems:
                self.logger.error(message)
            return {"success": False, "message": "; ".join(problems)}
        return {"success": True, "message": "结果记录与实例一致"}

    def bench(self, corpus_dir: Union[str, Path], algorithms: Optional[List[str]] = None) -> pd.DataFrame:
        """在语料目录的每个实例上运行各算法，得到与 oracle 的比值表"""
        corpus = Path(corpus_dir)
        if not corpus.is_dir():
            raise InvalidInputError(f"语料目录不存在: {corpus}")
        algorithms = list(algorithms or self.config.bench.algorithms)
        for name in algorithms:
            if name not in self.solvers:
                raise InvalidInputError(f"未知算法: {name}")

        files = sorted(corpus.glob("*.json"))
        self.logger.info(f"开始基准测试: 实例数={len(files)}, 算法={algorithms}")
        tasks = [(path, name) for path in files for name in ["oracle"] + algorithms]

        with ThreadPoolExecutor(max_workers=max(1, self.config.bench.workers)) as pool:
            outcomes = list(pool.map(lambda task: self._bench_task(*task), tasks))

        rows = []
        by_instance: Dict[str, Dict[str, Dict[str, Any]]] = {}
        for (path, name), outcome in zip(tasks, outcomes):
            by_instance.setdefault(path.name, {})[name] = outcome
        for instance_name in sorted(by_instance):
            results = by_instance[instance_name]
            oracle_value = results["oracle"].get("value")
            for name in algorithms:
                outcome = results[name]
                value = outcome.get("value")
                ratio = None
                if value is not None and oracle_value:
                    ratio = value / oracle_value
                elif value is not None and oracle_value == 0:
                    ratio = 1.0
                rows.append({
                    "instance": instance_name,
                    "algorithm": name,
                    "k": outcome.get("k"),
                    "n": outcome.get("n"),
                    "m": outcome.get("m"),
                    "value": value,
                    "deleted": outcome.get("deleted"),
                    "oracle": oracle_value,
                    "ratio": ratio,
                    "error": outcome.get("error", ""),
                })
        return pd.DataFrame(rows, columns=["instance", "algorithm", "k", "n", "m", "value",
                                           "deleted", "oracle", "ratio", "error"])

    def _bench_task(self, path: Path, algorithm: str) -> Dict[str, Any]:
        """在基准测试中运行一个算法，失败时记录错误而不是抛出"""
        inst = read_instance(path)
        info: Dict[str, Any] = {"k": inst.k, "n": inst.n, "m": inst.m}
        if algorithm == "oracle" and comb(inst.n, inst.k) > self.config.bench.oracle_max_subsets:
            info["error"] = "oracle 跳过: 子集数超过 oracle_max_subsets"
            return info

        runner = TaskRunner(timeout=self.config.bench.timeout)
        result = runner.run(run_solver_task, str(path), algorithm, self.config.model_dump())
        if result.get("error"):
            self.logger.error(f"{path.name} 上运行 {algorithm} 失败: {result['error']}")
            info["error"] = result["error"]
            return info
        info.update(result["output"])
        return info


def run_solver_task(instance_path: str, algorithm: str, config_data: Dict[str, Any]) -> Dict[str, Any]:
    """基准测试子进程中执行的任务，返回可 pickle 的摘要"""
    system = ExposureSystem(SystemConfig(**config_data))
    record = system.solve(read_instance(instance_path), algorithm, timing=False)
    return {"value": record.value, "deleted": record.deleted_count}


def ratio_plot_data(table: pd.DataFrame) -> pd.DataFrame:
    """按算法和 k 汇总平均比值，供外部绘图"""
    valid = table.dropna(subset=["ratio"])
    if valid.empty:
        return pd.DataFrame(columns=["algorithm", "k", "mean_ratio", "instances"])
    grouped = valid.groupby(["algorithm", "k"])["ratio"].agg(["mean", "count"]).reset_index()
    return grouped.rename(columns={"mean": "mean_ratio", "count": "instances"})
