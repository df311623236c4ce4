#!/usr/bin/env python3
"""贪心双准则近似：Greedy-Bicriteria、矩形切分成正方形、Greedy-Squares"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Tuple

from models.geometry import (AxisRect, Group, Instance, Solution, certify_solution,
                             exposed_points, filter_uncoverable, group_by_signature,
                             mask_to_ids)
from src.cell_dp import CORNER, CellFrame, solve_cell
from utils.errors import ConsistencyError, InvalidInputError
from utils.logger import get_logger

logger = get_logger("greedy")

CoverMap = Dict[int, List[int]]


@dataclass(frozen=True)
class BicriteriaSolution:
    """贪心结果：删除集合、暴露点、α 以及选中的签名组或正方形"""
    deleted: FrozenSet[int]
    exposed: FrozenSet[int]
    alpha: int
    groups_taken: Tuple[Group, ...] = ()
    squares_taken: Tuple[int, ...] = ()

    @property
    def value(self) -> int:
        return len(self.exposed)

    def to_solution(self) -> Solution:
        return Solution(deleted=self.deleted, exposed=self.exposed, value=self.value)


@dataclass(frozen=True)
class SquareAssignment:
    """点编号 -> 包含它的最小正方形编号"""
    owner: Dict[int, int] = field(default_factory=dict)

    def points_of(self, range_id: int) -> List[int]:
        return sorted(pid for pid, rid in self.owner.items() if rid == range_id)


def _check_alpha(alpha: int, k: int) -> None:
    """检查 1 <= alpha <= k"""
    if not isinstance(alpha, int) or not 1 <= alpha <= k:
        raise InvalidInputError(f"alpha 必须满足 1 <= alpha <= k，当前 alpha={alpha}, k={k}")


def _require_rects(inst: Instance) -> List[AxisRect]:
    """所有范围必须是轴对齐矩形"""
    for rid, r in enumerate(inst.ranges):
        if not isinstance(r, AxisRect):
            raise InvalidInputError(f"范围 {rid} 不是轴对齐矩形")
    return list(inst.ranges)


def _require_squares(inst: Instance) -> List[AxisRect]:
    """所有范围必须是正方形"""
    rects = _require_rects(inst)
    for rid, r in enumerate(rects):
        if not r.is_square:
            raise InvalidInputError(f"范围 {rid} 不是正方形")
    return rects


def greedy_bicriteria(inst: Instance, alpha: int) -> BicriteriaSolution:
    """按签名分组，删除最大的前 α 组的签名并集，暴露数由删除集合重算"""
    _check_alpha(alpha, inst.k)
    filtered, id_map = filter_uncoverable(inst)
    groups = group_by_signature(filtered)
    taken = tuple(Group(signature=g.signature, point_ids=tuple(id_map[p] for p in g.point_ids))
                  for g in groups[:alpha])

    deleted = frozenset(rid for g in taken for rid in g.signature)
    exposed = exposed_points(inst, deleted)
    counted = sum(len(g.point_ids) for g in taken)
    logger.info(f"Greedy-Bicriteria: 组数={len(groups)}, alpha={alpha}, 删除={len(deleted)}, 暴露={len(exposed)}")

    if len(exposed) < counted or len(deleted) > alpha * inst.k:
        logger.error(f"贪心结果违反不变量: 暴露 {len(exposed)} < {counted} 或删除 {len(deleted)} > {alpha * inst.k}")
        raise ConsistencyError("Greedy-Bicriteria 结果违反不变量")
    return BicriteriaSolution(deleted=deleted, exposed=exposed, alpha=alpha, groups_taken=taken)


def size_ratio(inst: Instance) -> int:
    """⌈最长边 / 最短边⌉，在所有矩形上取"""
    rects = _require_rects(inst)
    if not rects:
        return 1
    return math.ceil(max(r.long_side for r in rects) / min(r.short_side for r in rects))


def aspect_ratio(inst: Instance) -> int:
    """⌈每个矩形长边与短边之比的最大值⌉"""
    rects = _require_rects(inst)
    if not rects:
        return 1
    return math.ceil(max(r.long_side / r.short_side for r in rects))


def _cover_interval(lo: Fraction, hi: Fraction, side: Fraction) -> List[Fraction]:
    """用长度为 side 的区间恰好覆盖 [lo, hi]，最后一段向内收回"""
    count = math.ceil((hi - lo) / side)
    starts = [lo + i * side for i in range(count - 1)]
    starts.append(hi - side)
    return starts


def _squares_to_instance(inst: Instance, pieces: List[List[AxisRect]]) -> Tuple[Instance, CoverMap]:
    """把切出的正方形拼成新实例，并记录原范围到正方形的映射"""
    squares: List[AxisRect] = []
    cover: CoverMap = {}
    for rid, parts in enumerate(pieces):
        cover[rid] = list(range(len(squares), len(squares) + len(parts)))
        squares.extend(parts)
    return Instance(points=inst.points, ranges=tuple(squares), k=inst.k), cover


def squarify_similar_fat(inst: Instance) -> Tuple[Instance, CoverMap]:
    """每个矩形切成边长为全局最短边 a 的正方形，每个矩形至多 ⌈c⌉² 个"""
    rects = _require_rects(inst)
    if not rects:
        return inst, {}
    side = min(r.short_side for r in rects)
    pieces = []
    for r in rects:
        pieces.append([AxisRect(x, y, x + side, y + side)
                       for y in _cover_interval(r.y0, r.y1, side)
                       for x in _cover_interval(r.x0, r.x1, side)])
    squares, cover = _squares_to_instance(inst, pieces)
    logger.debug(f"相似胖矩形切分: 边长={side}, 矩形={len(rects)}, 正方形={squares.n}")
    return squares, cover


def squarify_fat(inst: Instance) -> Tuple[Instance, CoverMap]:
    """每个矩形沿长边切成以自身短边为边长的正方形"""
    rects = _require_rects(inst)
    pieces = []
    for r in rects:
        side = r.short_side
        if r.width >= r.height:
            pieces.append([AxisRect(x, r.y0, x + side, r.y1) for x in _cover_interval(r.x0, r.x1, side)])
        else:
            pieces.append([AxisRect(r.x0, y, r.x1, y + side) for y in _cover_interval(r.y0, r.y1, side)])
    return _squares_to_instance(inst, pieces)


def _contains_corner(outer: AxisRect, square: AxisRect) -> bool:
    """outer 是否包含 square 的某个角"""
    return any(outer.contains(c) for c in square.corners())


def assign_points_to_squares(inst: Instance) -> SquareAssignment:
    """每个点归属于包含它的最小正方形（同样大小取编号小的）"""
    squares = _require_squares(inst)
    owner: Dict[int, int] = {}
    for pid, sig in enumerate(inst.signature_masks):
        ids = mask_to_ids(sig)
        if not ids:
            raise InvalidInputError(f"点 {pid} 不在任何范围内")
        chosen = min(ids, key=lambda rid: (squares[rid].width, rid))
        # 签名中的其他正方形都不比归属正方形小，且与它的交含其一个角
        for rid in ids:
            if squares[rid].width < squares[chosen].width or not _contains_corner(squares[rid], squares[chosen]):
                logger.error(f"点 {pid} 的归属正方形 {chosen} 与范围 {rid} 不满足角包含关系")
                raise ConsistencyError(f"点 {pid}: 范围 {rid} 不包含正方形 {chosen} 的角")
        owner[pid] = chosen
    return SquareAssignment(owner=owner)


def _solve_square(inst: Instance, square_id: int, point_ids: List[int], k: int) -> Tuple[int, FrozenSet[int]]:
    """在正方形 R 内以角模式运行单元格 DP，返回 |P(R,k)| 与对应删除集合"""
    union = 0
    for pid in point_ids:
        union |= inst.signature_masks[pid]
    range_ids = mask_to_ids(union)
    frame = CellFrame(inst.ranges[square_id])
    budget = min(k, len(range_ids))
    result = solve_cell(frame, [inst.points[p] for p in point_ids],
                        [inst.ranges[r] for r in range_ids], budget, mode=CORNER)
    return result.local[budget], frozenset(range_ids[r] for r in result.deleted[budget])


def greedy_squares(inst: Instance, alpha: int, k: Optional[int] = None, workers: int = 1) -> BicriteriaSolution:
    """逐个正方形在其归属点上精确求解，取 |P(R,k)| 最大的前 α 个正方形"""
    k = inst.k if k is None else k
    _require_squares(inst)
    _check_alpha(alpha, k)

    covered = [pid for pid, sig in enumerate(inst.signature_masks) if sig]
    sub = Instance(points=tuple(inst.points[p] for p in covered), ranges=inst.ranges, k=inst.k)
    assignment = assign_points_to_squares(sub)

    owners: Dict[int, List[int]] = {}
    for local_id, rid in sorted(assignment.owner.items()):
        owners.setdefault(rid, []).append(local_id)
    square_ids = sorted(owners)

    def run(rid: int) -> Tuple[int, FrozenSet[int]]:
        """单个正方形的局部求解"""
        return _solve_square(sub, rid, owners[rid], k)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, square_ids))
    else:
        results = [run(rid) for rid in square_ids]

    ranked = sorted(zip(square_ids, results), key=lambda item: (-item[1][0], item[0]))
    chosen = ranked[:alpha]
    deleted = frozenset(rid for _, (_, cert) in chosen for rid in cert)
    counted = sum(value for _, (value, _) in chosen)
    exposed = exposed_points(inst, deleted)
    logger.info(f"Greedy-Squares: 正方形={len(square_ids)}, alpha={alpha}, k={k}, "
                f"删除={len(deleted)}, 暴露={len(exposed)}")

    if len(exposed) < counted or len(deleted) > alpha * k:
        logger.error(f"Greedy-Squares 违反不变量: 暴露 {len(exposed)} < {counted} 或删除 {len(deleted)} > {alpha * k}")
        raise ConsistencyError("Greedy-Squares 结果违反不变量")
    return BicriteriaSolution(deleted=deleted, exposed=exposed, alpha=alpha,
                              squares_taken=tuple(rid for rid, _ in chosen))


def solve_fat(inst: Instance, k: int, alpha: int) -> Solution:
    """胖矩形：切成正方形后以预算 ⌈c⌉·k 运行 Greedy-Squares，再映射回原矩形"""
    if not 0 <= k <= inst.n:
        raise InvalidInputError(f"k 必须满足 0 <= k <= n，当前 k={k}")
    ratio = aspect_ratio(inst)
    squares, cover = squarify_fat(inst)
    owner = {sid: rid for rid, sids in cover.items() for sid in sids}
    result = greedy_squares(squares, alpha, k=ratio * k)
    deleted = {owner[sid] for sid in result.deleted}
    solution = certify_solution(inst, deleted)
    if solution.value < result.value:
        raise ConsistencyError("映射回原矩形后暴露数减少")
    logger.info(f"胖矩形: c={ratio}, 正方形={squares.n}, 删除={len(deleted)}, 暴露={solution.value}")
    return solution
