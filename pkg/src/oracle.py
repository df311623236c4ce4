#!/usr/bin/env python3
"""暴力枚举求解器：最大暴露、二部图与超图的最密 k 子图，用作所有近似算法的基准"""

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Hashable, Iterable, List, Sequence, Tuple, Union

import networkx as nx

from models.geometry import Instance, Solution, exposed_mask, ids_to_mask, mask_to_ids
from utils.errors import BudgetExceededError, InvalidInputError
from utils.logger import get_logger

logger = get_logger("oracle")

DEFAULT_NODE_BUDGET = 10_000_000


@dataclass(frozen=True)
class BipartiteGraph:
    """二部图 G = (A, B, E)，A、B 的顶点编号都从 0 开始"""
    a_count: int
    b_count: int
    edges: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        edges = tuple((int(a), int(b)) for a, b in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.a_count < 1 or self.b_count < 1:
            raise InvalidInputError("二部图两侧顶点数必须为正")
        for a, b in edges:
            if not (0 <= a < self.a_count and 0 <= b < self.b_count):
                raise InvalidInputError(f"边 ({a}, {b}) 越界")
        if len(set(edges)) != len(edges):
            raise InvalidInputError("二部图存在重复边")

    @property
    def vertex_count(self) -> int:
        return self.a_count + self.b_count

    def to_networkx(self) -> nx.Graph:
        """转换为 networkx 图，节点为 ("a", i) / ("b", j)"""
        graph = nx.Graph()
        graph.add_nodes_from((("a", i) for i in range(self.a_count)), bipartite=0)
        graph.add_nodes_from((("b", j) for j in range(self.b_count)), bipartite=1)
        graph.add_edges_from((("a", a), ("b", b)) for a, b in self.edges)
        return graph


def _guard(count: int, node_budget: int, what: str) -> None:
    """枚举规模超过节点预算时抛出 BudgetExceededError"""
    if count > node_budget:
        logger.error(f"{what} 需要枚举 {count} 个子集，超过预算 {node_budget}")
        raise BudgetExceededError(
            f"{what} 需要枚举 {count} 个子集，超过预算 {node_budget}",
            count=count, budget=node_budget
        )


def _check_k(k: int, total: int) -> None:
    """检查 0 <= k <= total"""
    if not isinstance(k, int) or k < 0 or k > total:
        raise InvalidInputError(f"k 必须满足 0 <= k <= {total}，当前 k={k}")


def _pad_lexicographic(union_mask: int, k: int) -> Tuple[int, ...]:
    """把删除集合用最小的未用编号补足到 k 个，得到字典序最小的超集"""
    chosen = set(mask_to_ids(union_mask))
    candidate = 0
    while len(chosen) < k:
        if candidate not in chosen:
            chosen.add(candidate)
        candidate += 1
    return tuple(sorted(chosen))


def _opt_by_subsets(inst: Instance) -> Tuple[int, Tuple[int, ...]]:
    """枚举所有 k 元子集"""
    best_value = -1
    best_deleted: Tuple[int, ...] = ()
    for deleted in combinations(range(inst.n), inst.k):
        value = bin(exposed_mask(inst, ids_to_mask(deleted))).count("1")
        # combinations 按字典序产生，严格大于才替换即保留字典序最小的最优解
        if value > best_value:
            best_value = value
            best_deleted = deleted
    return best_value, best_deleted


def _opt_by_signatures(inst: Instance, node_budget: int) -> Tuple[int, Tuple[int, ...]]:
    """枚举大小不超过 k 的签名并集；每个最优删除集都包含某个最优并集"""
    signatures = sorted({s for s in inst.signature_masks if s and bin(s).count("1") <= inst.k})
    unions = {0}
    for sig in signatures:
        grown = {u | sig for u in unions if bin(u | sig).count("1") <= inst.k}
        unions |= grown
        _guard(len(unions), node_budget, "签名并集枚举")

    best_value = -1
    best_deleted: Tuple[int, ...] = ()
    for union in unions:
        value = bin(exposed_mask(inst, union)).count("1")
        padded = _pad_lexicographic(union, inst.k)
        if value > best_value or (value == best_value and padded < best_deleted):
            best_value = value
            best_deleted = padded
    return best_value, best_deleted


def brute_force_opt(inst: Instance, node_budget: int = DEFAULT_NODE_BUDGET,
                    method: str = "subsets") -> Solution:
    """精确求解最大暴露：最优值 m* 及字典序最小的最优删除集合

    method 为 "subsets" 时逐个枚举 k 子集；为 "signatures" 时只枚举签名并集，
    两种方式给出同一个解。
    """
    total = comb(inst.n, inst.k)
    _guard(total, node_budget, "brute_force_opt")
    logger.debug(f"暴力求解: n={inst.n}, m={inst.m}, k={inst.k}, 子集数={total}, 方式={method}")

    if method == "subsets":
        value, deleted = _opt_by_subsets(inst)
    elif method == "signatures":
        value, deleted = _opt_by_signatures(inst, node_budget)
    else:
        raise InvalidInputError(f"未知的枚举方式: {method}")

    exposed = mask_to_ids(exposed_mask(inst, ids_to_mask(deleted)))
    return Solution(deleted=frozenset(deleted), exposed=frozenset(exposed), value=value)


def dual_hypergraph(inst: Instance) -> Tuple[int, List[Tuple[int, ...]], int]:
    """实例的对偶超图：顶点为范围，每个非空签名一条超边；另返回空签名点数"""
    hyperedges = [tuple(mask_to_ids(s)) for s in inst.signature_masks if s]
    empty = sum(1 for s in inst.signature_masks if s == 0)
    return inst.n, hyperedges, empty


def densest_k_subgraph_bipartite(g: BipartiteGraph, k: int,
                                 node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    """二部图上 k 个顶点导出的最多边数（A 侧编号 0..a-1，B 侧编号 a..a+b-1）"""
    total = g.vertex_count
    _check_k(k, total)
    _guard(comb(total, k), node_budget, "densest_k_subgraph_bipartite")

    edge_masks = [(1 << a) | (1 << (g.a_count + b)) for a, b in g.edges]
    best = 0
    for chosen in combinations(range(total), k):
        mask = ids_to_mask(chosen)
        best = max(best, sum(1 for e in edge_masks if e & mask == e))
    return best


def densest_k_subhypergraph(vertices: Union[int, Iterable[Hashable]],
                            hyperedges: Iterable[Iterable[Hashable]], k: int,
                            node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    """k 个顶点最多能完整包含多少条超边"""
    labels: Sequence[Hashable] = list(range(vertices)) if isinstance(vertices, int) else list(vertices)
    index = {label: i for i, label in enumerate(labels)}
    try:
        edge_masks = [ids_to_mask(index[v] for v in edge) for edge in hyperedges]
    except KeyError as e:
        raise InvalidInputError(f"超边含未知顶点: {e}") from e

    _check_k(k, len(labels))
    _guard(comb(len(labels), k), node_budget, "densest_k_subhypergraph")

    best = 0
    for chosen in combinations(range(len(labels)), k):
        mask = ids_to_mask(chosen)
        best = max(best, sum(1 for e in edge_masks if e & mask == e))
    return best


def densest_k_subgraph(g: nx.Graph, k: int, node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    """一般图上 k 个顶点导出的最多边数"""
    return densest_k_subhypergraph(list(g.nodes), [tuple(e) for e in g.edges], k, node_budget)
