#!/usr/bin/env python3
"""实例生成模块：随机实例、棋盘格归约、凸位置超图归约"""

from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Literal, Optional, Tuple

import networkx as nx
import numpy as np
from pydantic import BaseModel, Field, model_validator

from models.geometry import (AxisRect, ConvexPolygon, Disk, Instance, Point, Range,
                             to_coord)
from src.oracle import BipartiteGraph
from utils.errors import BudgetExceededError, InvalidInputError
from utils.logger import get_logger

logger = get_logger("generators")


@dataclass(frozen=True)
class Hypergraph:
    """超图 H = (X, E)，顶点编号从 0 开始"""
    vertex_count: int
    hyperedges: Tuple[FrozenSet[int], ...] = ()

    def __post_init__(self):
        edges = tuple(frozenset(e) for e in self.hyperedges)
        object.__setattr__(self, "hyperedges", edges)
        for e in edges:
            if not e:
                raise InvalidInputError("超边不能为空")
            if any(not 0 <= v < self.vertex_count for v in e):
                raise InvalidInputError(f"超边 {sorted(e)} 含越界顶点")

    def incident(self, v: int) -> List[int]:
        """顶点 v 所在超边的编号"""
        return [i for i, e in enumerate(self.hyperedges) if v in e]


# ----------------------------------------------------------------------
# 归约构造
# ----------------------------------------------------------------------

def gen_checkerboard(g: BipartiteGraph, eps: Fraction = Fraction(1, 2), k: int = 0) -> Instance:
    """二部图 -> 细长矩形的棋盘格排列

    A 侧顶点 i 对应竖条 [i+1, i+1+ε]×[0, L]，B 侧顶点 j 对应横条 [0, L]×[j+1, j+1+ε]，
    L = max(|A|, |B|) + 1；每条边 (i, j) 在两条的交格中心放一个点。
    """
    eps = to_coord(eps)
    if not 0 < eps < 1:
        raise InvalidInputError(f"eps 必须在 (0, 1) 内: {eps}")
    length = Fraction(max(g.a_count, g.b_count) + 1)
    ranges: List[Range] = [AxisRect(i + 1, 0, i + 1 + eps, length) for i in range(g.a_count)]
    ranges += [AxisRect(0, j + 1, length, j + 1 + eps) for j in range(g.b_count)]
    points = tuple(Point(a + 1 + eps / 2, b + 1 + eps / 2) for a, b in g.edges)
    return Instance(points=points, ranges=tuple(ranges), k=k)


def circle_point(t: Fraction) -> Point:
    """单位圆的有理参数化"""
    return Point((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t))


def _ccw_triangle(a: Point, b: Point, c: Point) -> ConvexPolygon:
    """按逆时针顺序构造三角形"""
    cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return ConvexPolygon((a, b, c) if cross > 0 else (a, c, b))


def gen_convex_from_hypergraph(h: Hypergraph, k: int = 0) -> Instance:
    """超图 -> 凸多边形实例：每条超边一个圆上的点，每个顶点一个以其关联点为角的多边形

    关联超边不足 3 条的顶点用收缩的三角形代替，只含想要的角点。
    """
    if not h.hyperedges:
        raise InvalidInputError("超图没有超边")
    count = len(h.hyperedges)
    points = tuple(circle_point(Fraction(e, count)) for e in range(count))
    if count >= 3:
        # 构造后断言点处于严格凸位置
        ConvexPolygon(points)

    ranges: List[Range] = []
    for v in range(h.vertex_count):
        corners = [points[e] for e in h.incident(v)]
        if len(corners) >= 3:
            ranges.append(ConvexPolygon(tuple(corners)))
        elif len(corners) == 2:
            p1, p2 = corners
            inner = Point((p1.x + p2.x) / 4, (p1.y + p2.y) / 4)
            ranges.append(_ccw_triangle(p1, p2, inner))
        elif len(corners) == 1:
            p = corners[0]
            half = Point(p.x / 2, p.y / 2)
            perp = (-p.y / 4, p.x / 4)
            ranges.append(_ccw_triangle(p, Point(half.x + perp[0], half.y + perp[1]),
                                        Point(half.x - perp[0], half.y - perp[1])))
        else:
            tiny = Fraction(1, 100)
            ranges.append(ConvexPolygon((Point(0, 0), Point(tiny, 0), Point(0, tiny))))
    return Instance(points=points, ranges=tuple(ranges), k=k)


def bipartite_double_cover(g: nx.Graph) -> BipartiteGraph:
    """一般图的二部双覆盖：边 (u, v) 变成 (u_a, v_b) 和 (v_a, u_b)"""
    nodes = sorted(g.nodes)
    if not nodes:
        raise InvalidInputError("图没有顶点")
    index = {v: i for i, v in enumerate(nodes)}
    edges = set()
    for u, v in g.edges:
        edges.add((index[u], index[v]))
        edges.add((index[v], index[u]))
    return BipartiteGraph(a_count=len(nodes), b_count=len(nodes), edges=tuple(sorted(edges)))


def random_bipartite_graph(a_count: int, b_count: int, p: float, seed: int) -> BipartiteGraph:
    """networkx 随机二部图，B 侧顶点重新从 0 编号"""
    graph = nx.bipartite.random_graph(a_count, b_count, p, seed=seed)
    edges = sorted((min(u, v), max(u, v) - a_count) for u, v in graph.edges)
    return BipartiteGraph(a_count=a_count, b_count=b_count, edges=tuple(edges))


def random_hypergraph(vertex_count: int, edge_count: int, seed: int) -> Hypergraph:
    """每条超边的大小和顶点都按种子随机抽取"""
    rng = np.random.default_rng(seed)
    edges = []
    for _ in range(edge_count):
        size = int(rng.integers(1, vertex_count + 1))
        members = rng.choice(vertex_count, size=size, replace=False)
        edges.append(frozenset(int(v) for v in members))
    return Hypergraph(vertex_count=vertex_count, hyperedges=tuple(edges))


# ----------------------------------------------------------------------
# 随机实例
# ----------------------------------------------------------------------

class RandomInstanceConfig(BaseModel):
    """随机实例参数，坐标取在 1/resolution 的有理网格上"""
    n: int = Field(ge=1)
    m: int = Field(ge=1)
    k: int = Field(default=1, ge=0)
    shape: Literal["unit-squares", "squares", "rects", "disks"] = "unit-squares"
    aspect: int = Field(default=2, ge=1)  # rects 的最大长宽比 c
    ply: Optional[int] = Field(default=None, ge=1)  # 点上的最大覆盖层数 ρ
    extent: int = Field(default=4, ge=1)  # 坐标范围 [0, extent)
    resolution: int = Field(default=4, ge=1)
    seed: int = 0
    max_retries: int = Field(default=10_000, ge=1)

    @model_validator(mode="after")
    def check_k(self) -> "RandomInstanceConfig":
        if self.k > self.n:
            raise ValueError(f"k={self.k} 不能超过 n={self.n}")
        return self


def _grid_value(rng: np.random.Generator, low: int, high: int, resolution: int) -> Fraction:
    """在 [low/resolution, high/resolution] 内取网格值"""
    return Fraction(int(rng.integers(low, high + 1)), resolution)


def _random_range(rng: np.random.Generator, config: RandomInstanceConfig) -> Range:
    """按 shape 抽取一个随机范围"""
    res = config.resolution
    span = config.extent * res - 1
    x = _grid_value(rng, -res, span, res)
    y = _grid_value(rng, -res, span, res)
    if config.shape == "unit-squares":
        return AxisRect(x, y, x + 1, y + 1)
    if config.shape == "squares":
        side = _grid_value(rng, res, 2 * res, res)
        return AxisRect(x, y, x + side, y + side)
    if config.shape == "rects":
        short = _grid_value(rng, res, 2 * res, res)
        long = short * _grid_value(rng, res, config.aspect * res, res)
        if rng.integers(0, 2):
            return AxisRect(x, y, x + long, y + short)
        return AxisRect(x, y, x + short, y + long)
    cx = _grid_value(rng, 0, span, res)
    cy = _grid_value(rng, 0, span, res)
    return Disk(cx, cy, _grid_value(rng, max(1, res // 2), res, res))


def gen_random(config: RandomInstanceConfig) -> Instance:
    """按种子确定地生成随机实例；设置 ply 时拒绝会让某点覆盖层数超过 ρ 的范围"""
    rng = np.random.default_rng(config.seed)
    span = config.extent * config.resolution - 1
    points = tuple(Point(_grid_value(rng, 0, span, config.resolution),
                         _grid_value(rng, 0, span, config.resolution)) for _ in range(config.m))

    depth = [0] * len(points)
    ranges: List[Range] = []
    attempts = 0
    while len(ranges) < config.n:
        attempts += 1
        if attempts > config.max_retries:
            logger.error(f"生成随机实例失败: {attempts - 1} 次尝试后只得到 {len(ranges)} 个范围")
            raise BudgetExceededError(
                f"重试 {config.max_retries} 次仍无法满足 ply <= {config.ply}",
                count=attempts - 1, budget=config.max_retries
            )
        candidate = _random_range(rng, config)
        hits = [i for i, p in enumerate(points) if candidate.contains(p)]
        if config.ply is not None and any(depth[i] + 1 > config.ply for i in hits):
            continue
        for i in hits:
            depth[i] += 1
        ranges.append(candidate)

    logger.debug(f"随机实例: shape={config.shape}, n={config.n}, m={config.m}, seed={config.seed}, 尝试={attempts}")
    return Instance(points=points, ranges=tuple(ranges), k=config.k)


def max_point_depth(inst: Instance) -> int:
    """所有点上的最大覆盖层数"""
    return max((bin(s).count("1") for s in inst.signature_masks), default=0)

