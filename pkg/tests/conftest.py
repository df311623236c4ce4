#!/usr/bin/env python3
"""测试公共夹具"""

import sys
from fractions import Fraction
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
for path in (ROOT, ROOT / "tests"):
    if str(path) not in sys.path:
        sys.path.insert(0, str(path))

from models.geometry import AxisRect, Instance, Point  # noqa: E402

F = Fraction


@pytest.fixture
def i1() -> Instance:
    """两个单位正方形、四个点的示例实例，k=1"""
    points = (Point(F(1, 5), F(1, 2)), Point(F(9, 20), F(1, 2)),
              Point(F(7, 10), F(9, 10)), Point(F(9, 10), F(1, 10)))
    ranges = (AxisRect(F(-1, 2), F(-1, 5), F(1, 2), F(4, 5)),
              AxisRect(F(2, 5), F(3, 10), F(7, 5), F(13, 10)))
    return Instance(points=points, ranges=ranges, k=1)


@pytest.fixture
def tmp_config(tmp_path) -> str:
    """写到临时目录的配置文件，日志也放在临时目录"""
    config = tmp_path / "config.yaml"
    config.write_text(
        "logging:\n"
        f"  log_dir: \"{(tmp_path / 'logs').as_posix()}\"\n"
        "  level: \"WARNING\"\n"
        "bench:\n"
        "  timeout: 0\n"
        "  algorithms: [\"greedy\", \"dp-approx\"]\n",
        encoding="utf-8",
    )
    return str(config)
