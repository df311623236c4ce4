#!/usr/bin/env python3
"""测试用的随机实例工厂，全部由 numpy 的种子生成器驱动"""

from fractions import Fraction
from typing import List

import numpy as np

from models.geometry import AxisRect, Instance, Point


def grid_value(rng: np.random.Generator, low: int, high: int, resolution: int) -> Fraction:
    return Fraction(int(rng.integers(low, high + 1)), resolution)


def random_points(rng: np.random.Generator, m: int, size: int, resolution: int) -> List[Point]:
    """[0, size)² 内的网格点"""
    top = size * resolution - 1
    return [Point(grid_value(rng, 0, top, resolution), grid_value(rng, 0, top, resolution))
            for _ in range(m)]


def unit_cell_instance(rng: np.random.Generator, n: int, m: int, k: int = 0, resolution: int = 8) -> Instance:
    """点都在 [0,1)² 内，范围是与单位格子相交的单位正方形"""
    points = random_points(rng, m, 1, resolution)
    ranges = []
    for _ in range(n):
        x = grid_value(rng, -resolution, resolution, resolution)
        y = grid_value(rng, -resolution, resolution, resolution)
        ranges.append(AxisRect(x, y, x + 1, y + 1))
    return Instance(points=tuple(points), ranges=tuple(ranges), k=min(k, n))


def unit_square_instance(rng: np.random.Generator, n: int, m: int, k: int, size: int = 3,
                         resolution: int = 4) -> Instance:
    """点在 [0,size)² 内的单位正方形实例，大部分范围至少包含一个点"""
    points = random_points(rng, m, size, resolution)
    ranges = []
    for _ in range(n):
        anchor = points[int(rng.integers(0, m))]
        dx = grid_value(rng, 0, resolution, resolution)
        dy = grid_value(rng, 0, resolution, resolution)
        ranges.append(AxisRect(anchor.x - dx, anchor.y - dy, anchor.x - dx + 1, anchor.y - dy + 1))
    return Instance(points=tuple(points), ranges=tuple(ranges), k=min(k, n))


def rect_instance(rng: np.random.Generator, n: int, m: int, k: int, size: int = 4,
                  resolution: int = 2, aspect: int = 2) -> Instance:
    """长宽比不超过 aspect 的矩形实例"""
    points = random_points(rng, m, size, resolution)
    ranges = []
    for _ in range(n):
        anchor = points[int(rng.integers(0, m))]
        short = grid_value(rng, resolution, 2 * resolution, resolution)
        long = grid_value(rng, int(short * resolution), int(short * resolution * aspect), resolution)
        w, h = (long, short) if rng.integers(0, 2) else (short, long)
        x0 = anchor.x - grid_value(rng, 0, int(w * resolution), resolution)
        y0 = anchor.y - grid_value(rng, 0, int(h * resolution), resolution)
        ranges.append(AxisRect(x0, y0, x0 + w, y0 + h))
    return Instance(points=tuple(points), ranges=tuple(ranges), k=min(k, n))


def square_instance(rng: np.random.Generator, n: int, m: int, k: int, size: int = 4,
                    resolution: int = 2) -> Instance:
    """边长在 [1, 3] 之间的正方形实例"""
    points = random_points(rng, m, size, resolution)
    ranges = []
    for _ in range(n):
        anchor = points[int(rng.integers(0, m))]
        side = grid_value(rng, resolution, 3 * resolution, resolution)
        x0 = anchor.x - grid_value(rng, 0, int(side * resolution), resolution)
        y0 = anchor.y - grid_value(rng, 0, int(side * resolution), resolution)
        ranges.append(AxisRect(x0, y0, x0 + side, y0 + side))
    return Instance(points=tuple(points), ranges=tuple(ranges), k=min(k, n))
