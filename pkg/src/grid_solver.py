#!/usr/bin/env python3
"""网格求解模块：DP-Approx、h×h 网格展平、DP-Flattened 以及两种移位 PTAS"""

import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from models.geometry import (AxisRect, Instance, Point, Solution, certify_solution,
                             exposed_points, mask_to_ids, to_coord)
from src.cell_dp import CellFrame, RangeKind, solve_cell
from src.greedy import size_ratio, squarify_similar_fat
from utils.errors import ConsistencyError, InfeasibleError, InvalidInputError
from utils.logger import get_logger

logger = get_logger("grid_solver")

DEFAULT_H_LIMIT = 3

CellKey = Tuple[int, int]


# ----------------------------------------------------------------------
# 公共工具
# ----------------------------------------------------------------------

def normalize_translates(inst: Instance) -> Instance:
    """所有范围是同一个 w×h 矩形的平移时，按坐标轴缩放成单位正方形"""
    if not inst.ranges:
        return inst
    for rid, r in enumerate(inst.ranges):
        if not isinstance(r, AxisRect):
            raise InvalidInputError(f"范围 {rid} 不是轴对齐矩形")
    w, h = inst.ranges[0].width, inst.ranges[0].height
    if any(r.width != w or r.height != h for r in inst.ranges):
        raise InvalidInputError("范围不是同一个矩形的平移")
    if w == 1 and h == 1:
        return inst
    points = tuple(Point(p.x / w, p.y / h) for p in inst.points)
    ranges = tuple(AxisRect(r.x0 / w, r.y0 / h, r.x1 / w, r.y1 / h) for r in inst.ranges)
    return Instance(points=points, ranges=ranges, k=inst.k)


def parse_epsilon(epsilon: Union[int, str, Fraction, float]) -> Fraction:
    """解析正数 epsilon，浮点数按十进制字面值转为分数"""
    if isinstance(epsilon, float):
        epsilon = Fraction(repr(epsilon))
    value = to_coord(epsilon)
    if value <= 0:
        raise InvalidInputError(f"epsilon 必须为正: {epsilon}")
    return value


def extend_local(local: Sequence[int], budget: int) -> List[int]:
    """把局部最优值数组截断或按最后一个值补齐到长度 budget+1"""
    values = list(local[: budget + 1])
    while len(values) < budget + 1:
        values.append(values[-1])
    return values


def knapsack_combine(tables: Sequence[Sequence[int]], budget: int) -> Tuple[int, List[int]]:
    """global(i, k') = max_t global(i+1, k'-t) + local_i(t)，返回最优值和各格子分到的预算"""
    count = len(tables)
    best = np.zeros((count + 1, budget + 1), dtype=np.int64)
    choice = np.zeros((max(count, 1), budget + 1), dtype=np.int64)
    for i in range(count - 1, -1, -1):
        local = np.asarray(extend_local(tables[i], budget), dtype=np.int64)
        following = best[i + 1]
        for b in range(budget + 1):
            candidates = local[: b + 1] + following[b::-1]
            t = int(np.argmax(candidates))
            choice[i, b] = t
            best[i, b] = candidates[t]

    allocation = []
    remaining = budget
    for i in range(count):
        t = int(choice[i, remaining])
        allocation.append(t)
        remaining -= t
    return int(best[0, budget]), allocation


@dataclass
class GridDecomposition:
    """网格划分：格子坐标 -> (点编号, 至少包含其中一个点的范围编号)"""
    origin: Tuple[int, int]
    cell_size: int
    cells: Dict[CellKey, Tuple[List[int], List[int]]] = field(default_factory=dict)

    def cell_rect(self, key: CellKey) -> AxisRect:
        x0 = self.origin[0] + key[0] * self.cell_size
        y0 = self.origin[1] + key[1] * self.cell_size
        return AxisRect(x0, y0, x0 + self.cell_size, y0 + self.cell_size)


def cell_of(p: Point, cell_size: int, origin: Tuple[int, int]) -> CellKey:
    """点所在的半开格子"""
    return (math.floor((p.x - origin[0]) / cell_size), math.floor((p.y - origin[1]) / cell_size))


def build_grid(inst: Instance, cell_size: int = 1, origin: Tuple[int, int] = (0, 0),
               point_ids: Optional[Sequence[int]] = None) -> GridDecomposition:
    """把点按格子分组，并收集每个格子相关的范围"""
    grid = GridDecomposition(origin=origin, cell_size=cell_size)
    members: Dict[CellKey, List[int]] = {}
    for pid in (range(inst.m) if point_ids is None else point_ids):
        members.setdefault(cell_of(inst.points[pid], cell_size, origin), []).append(pid)
    for key in sorted(members):
        union = 0
        for pid in members[key]:
            union |= inst.signature_masks[pid]
        grid.cells[key] = (members[key], mask_to_ids(union))
    return grid


def _check_solution_floor(solution: Solution, floor_value: int, what: str) -> None:
    """重算值低于组合值时抛出 ConsistencyError"""
    if solution.value < floor_value:
        logger.error(f"{what}: 重算暴露数 {solution.value} 小于组合值 {floor_value}")
        raise ConsistencyError(f"{what}: 重算暴露数 {solution.value} 小于组合值 {floor_value}")


# ----------------------------------------------------------------------
# DP-Approx
# ----------------------------------------------------------------------

def dp_approx(inst: Instance, budget: int) -> Solution:
    """单位网格上逐格精确求解，再用背包组合；预算 4k 时不少于 m*(k)"""
    if budget < 0:
        raise InvalidInputError(f"预算不能为负: {budget}")
    unit = normalize_translates(inst)
    grid = build_grid(unit, cell_size=1)
    logger.info(f"DP-Approx: n={inst.n}, m={inst.m}, 预算={budget}, 非空格子={len(grid.cells)}")

    tables, certificates = [], []
    for key, (point_ids, range_ids) in grid.cells.items():
        frame = CellFrame.unit(Fraction(key[0]), Fraction(key[1]))
        cell = solve_cell(frame, [unit.points[p] for p in point_ids],
                          [unit.ranges[r] for r in range_ids], min(budget, len(range_ids)))
        tables.append(extend_local(cell.local, budget))
        certificates.append([frozenset(range_ids[r] for r in d) for d in extend_local(cell.deleted, budget)])

    total, allocation = knapsack_combine(tables, budget)
    deleted = set()
    for cert, t in zip(certificates, allocation):
        deleted |= cert[t]

    solution = certify_solution(inst, deleted)
    _check_solution_floor(solution, total, "DP-Approx")
    return solution


# ----------------------------------------------------------------------
# 展平
# ----------------------------------------------------------------------

class FlatPoint(NamedTuple):
    point_id: int
    column: int
    x: Fraction
    y: Fraction  # 列内局部 y，属于 [0, h)

    def flat_y(self, h: int) -> Fraction:
        return self.y + self.column * h


class Component(NamedTuple):
    """原范围在某一列中的部分"""
    range_id: int
    kind: RangeKind
    column: int
    x_begin: Fraction
    x_end: Fraction
    lo: Fraction
    hi: Fraction
    line: int  # 锚线：组件碰到的最低网格线
    twin: Optional[int]

    def contains(self, p: FlatPoint) -> bool:
        return (p.column == self.column and self.x_begin <= p.x <= self.x_end
                and self.lo <= p.y <= self.hi)

    def flat_rect(self, h: int) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        shift = self.column * h
        return max(self.x_begin, Fraction(0)), self.lo + shift, self.x_end, self.hi + shift


@dataclass
class FlattenedInstance:
    """h×h 网格按列堆叠成宽 1、高 h² 的条带后的实例"""
    h: int
    origin: Tuple[Fraction, Fraction]
    source: Instance
    points: List[FlatPoint]
    components: List[Component]

    @property
    def stack_height(self) -> int:
        return self.h * self.h

    def components_of(self, range_id: int) -> List[int]:
        """原范围的全部组件编号"""
        return [cid for cid, c in enumerate(self.components) if c.range_id == range_id]

    def exposed_after_deleting(self, deleted: Sequence[int]) -> FrozenSet[int]:
        """删除原范围的全部组件后暴露的原始点编号"""
        removed = set(deleted)
        alive = [c for c in self.components if c.range_id not in removed]
        return frozenset(p.point_id for p in self.points
                         if not any(c.contains(p) for c in alive))


def flatten(inst: Instance, h: int, origin: Tuple[Union[int, Fraction], Union[int, Fraction]] = (0, 0)) -> FlattenedInstance:
    """把 origin 处 h×h 正方形内的单位正方形实例展平

    第 c 列（从 0 开始）的点平移 (-c, c·h)。左边在列 c 内部 δ 处的范围拆成列 c 的
    Type-1 组件（从 δ 开始）和列 c+1 的 Type-0 组件（到 δ 结束）。
    """
    if h < 1:
        raise InvalidInputError(f"h 必须为正整数: {h}")
    ox, oy = to_coord(origin[0]), to_coord(origin[1])

    points = []
    for pid, p in enumerate(inst.points):
        X, Y = p.x - ox, p.y - oy
        if not (0 <= X < h and 0 <= Y < h):
            raise InvalidInputError(f"点 {pid} 不在 {h}×{h} 正方形内: ({p.x}, {p.y})")
        column = math.floor(X)
        points.append(FlatPoint(pid, column, X - column, Y))

    components: List[Component] = []
    for rid, r in enumerate(inst.ranges):
        if not isinstance(r, AxisRect) or r.width != 1 or r.height != 1:
            raise InvalidInputError(f"范围 {rid} 不是单位正方形")
        X0, Y0 = r.x0 - ox, r.y0 - oy
        lo, hi = max(Y0, Fraction(0)), min(Y0 + 1, Fraction(h))
        if lo > hi or X0 + 1 < 0 or X0 >= h:
            continue
        line = math.ceil(lo)
        if X0 < 0:
            components.append(Component(rid, RangeKind.TYPE0, 0, X0, X0 + 1, lo, hi, line, None))
            continue
        column = math.floor(X0)
        delta = X0 - column
        type1 = len(components)
        has_twin = column + 1 <= h - 1
        components.append(Component(rid, RangeKind.TYPE1, column, delta, Fraction(1), lo, hi, line,
                                    type1 + 1 if has_twin else None))
        if has_twin:
            components.append(Component(rid, RangeKind.TYPE0, column + 1, delta - 1, delta, lo, hi, line, type1))

    return FlattenedInstance(h=h, origin=(ox, oy), source=inst, points=points, components=components)


# ----------------------------------------------------------------------
# DP-Flattened
# ----------------------------------------------------------------------

class FlatDPKey(NamedTuple):
    event_index: int
    budget: int
    q: Tuple[Optional[int], ...]
    Q: Tuple[Optional[int], ...]


@dataclass
class FlatSolution:
    local: List[int]
    deleted: List[FrozenSet[int]]
    exposed: List[FrozenSet[int]]
    charges: List[List[int]]


class FlatDP:
    """展平实例上的扫描 DP

    每列每条锚线 j 有两个槽位：“+”侧 (y >= j) 与 “−”侧 (y < j)。q 槽位记录该侧
    离 j 最近的已暴露点，Q 槽位记录该侧延伸最远的未删除 Type-1 组件。
    """

    POINT = 1
    BEGIN = 0

    def __init__(self, flat: FlattenedInstance):
        """建立展平后的事件序列和槽位"""
        self.flat = flat
        self.h = flat.h
        self.points = flat.points
        self.components = flat.components
        self.slot_count = 2 * self.h * (self.h + 1)

        # 点暴露时更新的槽位及距离
        self.point_slots: List[List[Tuple[int, Fraction]]] = []
        self.type0_of_point: List[List[int]] = []
        for p in self.points:
            updates = []
            for j in range(self.h + 1):
                if p.y >= j:
                    updates.append((self._slot(p.column, j, 0), p.y - j))
                else:
                    updates.append((self._slot(p.column, j, 1), j - p.y))
            self.point_slots.append(updates)
            self.type0_of_point.append([cid for cid, c in enumerate(self.components)
                                        if c.kind is RangeKind.TYPE0 and c.contains(p)])

        events = [(p.x, -p.column, self.POINT, i) for i, p in enumerate(self.points)]
        events += [(c.x_begin, -c.column, self.BEGIN, cid)
                   for cid, c in enumerate(self.components) if c.kind is RangeKind.TYPE1]
        self.events = sorted(events)
        self.memo: Dict[FlatDPKey, int] = {}

    def _slot(self, column: int, line: int, side: int) -> int:
        """(列, 锚线, 侧) -> 槽位下标"""
        return (column * (self.h + 1) + line) * 2 + side

    def _column_slots(self, column: int) -> range:
        start = self._slot(column, 0, 0)
        return range(start, start + 2 * (self.h + 1))

    def is_forbidden(self, key: FlatDPKey, pid: int) -> bool:
        """点被某个保留下来的 Type-1 组件覆盖"""
        p = self.points[pid]
        for s in self._column_slots(p.column):
            cid = key.Q[s]
            if cid is not None and self.components[cid].contains(p):
                return True
        return False

    def type0_deleted(self, key: FlatDPKey, cid: int) -> bool:
        """Type-0 组件所属的原范围是否已因暴露该列的点而删除"""
        comp = self.components[cid]
        for side in (0, 1):
            pid = key.q[self._slot(comp.column, comp.line, side)]
            if pid is not None and comp.contains(self.points[pid]):
                return True
        return False

    def expose_cost(self, key: FlatDPKey, pid: int) -> List[int]:
        """暴露该点需要新删除的 Type-0 组件编号"""
        return [cid for cid in self.type0_of_point[pid] if not self.type0_deleted(key, cid)]

    def _expose(self, q: Tuple[Optional[int], ...], pid: int) -> Tuple[Optional[int], ...]:
        """暴露点后更新各槽位的最近点"""
        slots = list(q)
        for s, dist in self.point_slots[pid]:
            current = slots[s]
            if current is None or dist < self._point_dist(current, s):
                slots[s] = pid
        return tuple(slots)

    def _point_dist(self, pid: int, slot: int) -> Fraction:
        line = (slot // 2) % (self.h + 1)
        y = self.points[pid].y
        return y - line if slot % 2 == 0 else line - y

    def _keep(self, Q: Tuple[Optional[int], ...], cid: int) -> Tuple[Optional[int], ...]:
        """保留组件后更新各槽位的最远组件"""
        comp = self.components[cid]
        slots = list(Q)
        for side, extent in ((0, comp.hi - comp.line), (1, comp.line - comp.lo)):
            s = self._slot(comp.column, comp.line, side)
            current = slots[s]
            if current is None or extent > self._extent(current, side):
                slots[s] = cid
        return tuple(slots)

    def _extent(self, cid: int, side: int) -> Fraction:
        comp = self.components[cid]
        return comp.hi - comp.line if side == 0 else comp.line - comp.lo

    def successors(self, key: FlatDPKey) -> List[Tuple[str, FlatDPKey, int]]:
        """当前状态的所有分支：(动作, 后继状态, 本步暴露数)"""
        _, _, kind, item = self.events[key.event_index]
        nxt = key.event_index + 1
        if kind == self.POINT:
            stay = key._replace(event_index=nxt)
            if self.is_forbidden(key, item):
                return [("forbidden", stay, 0)]
            branches = [("skip", stay, 0)]
            cost = len(self.expose_cost(key, item))
            if cost <= key.budget:
                branches.append(("expose", FlatDPKey(nxt, key.budget - cost,
                                                     self._expose(key.q, item), key.Q), 1))
            return branches

        comp = self.components[item]
        if comp.twin is not None and self.type0_deleted(key, comp.twin):
            # 另一半已经付过费，直接视为删除
            return [("already-deleted", key._replace(event_index=nxt), 0)]
        branches = [("keep", key._replace(event_index=nxt, Q=self._keep(key.Q, item)), 0)]
        if key.budget >= 1:
            branches.append(("delete", key._replace(event_index=nxt, budget=key.budget - 1), 0))
        return branches

    def value(self, key: FlatDPKey) -> int:
        """从该状态出发还能暴露的最多点数"""
        if key.event_index == len(self.events):
            return 0
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        best = max(gain + self.value(child) for _, child, gain in self.successors(key))
        self.memo[key] = best
        return best

    def root(self, budget: int) -> FlatDPKey:
        """扫描开始时的状态"""
        empty = (None,) * self.slot_count
        return FlatDPKey(0, budget, empty, empty)

    def reconstruct(self, budget: int) -> Tuple[List[int], FrozenSet[int]]:
        """回溯最优分支，返回按收费顺序记录的原范围编号与计入的暴露点"""
        key = self.root(budget)
        charges: List[int] = []
        exposed = set()
        while key.event_index < len(self.events):
            target = self.value(key)
            for action, child, gain in self.successors(key):
                if gain + self.value(child) == target:
                    break
            item = self.events[key.event_index][3]
            if action == "delete":
                charges.append(self.components[item].range_id)
            elif action == "expose":
                charges.extend(self.components[cid].range_id for cid in self.expose_cost(key, item))
                exposed.add(self.points[item].point_id)
            key = child
        return charges, frozenset(exposed)


def dp_flattened(flat: FlattenedInstance, k: int, h_limit: int = DEFAULT_H_LIMIT) -> FlatSolution:
    """h×h 网格内对 0..k 每个预算精确求解，证书使用原范围编号"""
    if flat.h > h_limit:
        logger.error(f"h={flat.h} 超过上限 {h_limit}")
        raise InfeasibleError(f"h={flat.h} 超过 DP-Flattened 上限 {h_limit}", h=flat.h, limit=h_limit)
    if k < 0:
        raise InvalidInputError(f"预算不能为负: {k}")

    dp = FlatDP(flat)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * len(dp.events) + 1000))
    solution = FlatSolution(local=[], deleted=[], exposed=[], charges=[])
    for budget in range(k + 1):
        value = dp.value(dp.root(budget))
        charges, exposed = dp.reconstruct(budget)
        if len(set(charges)) != len(charges):
            logger.error(f"预算 {budget}: 原范围被重复收费 {charges}")
            raise ConsistencyError(f"预算 {budget}: 原范围被重复收费 {charges}")
        deleted = frozenset(charges)
        recomputed = exposed_points(flat.source, deleted)
        if len(deleted) > budget or len(recomputed) != value:
            logger.error(f"预算 {budget}: 证书复核失败，暴露 {len(recomputed)}，DP 值 {value}")
            raise ConsistencyError(f"预算 {budget}: 证书复核失败 {len(recomputed)} != {value}")
        solution.local.append(value)
        solution.deleted.append(deleted)
        solution.exposed.append(exposed)
        solution.charges.append(charges)

    logger.debug(f"DP-Flattened: h={flat.h}, 点={len(flat.points)}, 组件={len(flat.components)}, "
                 f"状态数={len(dp.memo)}, local={solution.local}")
    return solution


# ----------------------------------------------------------------------
# 移位 PTAS
# ----------------------------------------------------------------------

def _solve_big_cell(inst: Instance, point_ids: Sequence[int], range_ids: Sequence[int], h: int,
                    origin: Tuple[int, int], budget: int, h_limit: int) -> Tuple[List[int], List[FrozenSet[int]]]:
    """把一个 h×h 大格子展平后精确求解"""
    sub = Instance(points=tuple(inst.points[p] for p in point_ids),
                   ranges=tuple(inst.ranges[r] for r in range_ids), k=0)
    flat = flatten(sub, h, origin)
    result = dp_flattened(flat, min(budget, len(range_ids)), h_limit=h_limit)
    certificates = [frozenset(range_ids[r] for r in d) for d in result.deleted]
    return extend_local(result.local, budget), extend_local(certificates, budget)


def _near_grid_line(value: Fraction, offset: int, h: int) -> bool:
    """到最近的网格线 offset + i·h 的距离严格小于 1"""
    rest = (value - offset) % h
    return min(rest, h - rest) < 1


def _shifted_solve(inst: Instance, unit: Instance, h: int, shift: Tuple[int, int], budget: int,
                   h_limit: int, point_ids: Optional[Sequence[int]] = None) -> Tuple[Solution, int]:
    """固定一个平移量，逐个大格子求解再用背包组合"""
    grid = build_grid(unit, cell_size=h, origin=shift, point_ids=point_ids)
    tables, certificates = [], []
    for key, (pids, rids) in grid.cells.items():
        origin = (shift[0] + key[0] * h, shift[1] + key[1] * h)
        local, certs = _solve_big_cell(unit, pids, rids, h, origin, budget, h_limit)
        tables.append(local)
        certificates.append(certs)
    total, allocation = knapsack_combine(tables, budget)
    deleted = set()
    for certs, t in zip(certificates, allocation):
        deleted |= certs[t]
    return certify_solution(inst, deleted), total


def _check_h(h: int, h_limit: int, epsilon: Fraction) -> None:
    """h 超过上限时抛出 InfeasibleError"""
    if h > h_limit:
        logger.error(f"epsilon={epsilon} 需要 h={h}，超过精确模式上限 {h_limit}")
        raise InfeasibleError(
            f"epsilon={epsilon} 太小，精确模式需要 h={h} 超过上限 {h_limit}，请增大 epsilon",
            h=h, limit=h_limit
        )


def ptas_budget(inst: Instance, k: int, epsilon: Union[int, str, Fraction, float],
                h_limit: int = DEFAULT_H_LIMIT) -> Solution:
    """删除至多 ⌊(1+ε)k⌋ 个范围，暴露数不少于 m*(k)"""
    eps = parse_epsilon(epsilon)
    if not 0 <= k <= inst.n:
        raise InvalidInputError(f"k 必须满足 0 <= k <= n，当前 k={k}")
    h = math.ceil(8 / eps)
    _check_h(h, h_limit, eps)
    budget = math.floor((1 + eps) * k)
    unit = normalize_translates(inst)
    logger.info(f"PTAS(预算放宽): n={inst.n}, m={inst.m}, k={k}, eps={eps}, h={h}, 预算={budget}")

    best: Optional[Solution] = None
    best_shift = (0, 0)
    for a in range(h):
        for b in range(h):
            solution, total = _shifted_solve(inst, unit, h, (a, b), budget, h_limit)
            _check_solution_floor(solution, total, f"PTAS 移位 ({a}, {b})")
            logger.debug(f"移位 ({a}, {b}): 组合值={total}, 重算值={solution.value}")
            if best is None or solution.value > best.value:
                best, best_shift = solution, (a, b)

    logger.info(f"PTAS(预算放宽) 最优移位 {best_shift}: value={best.value}, 删除={len(best.deleted)}")
    return best


def ptas_points(inst: Instance, k: int, epsilon: Union[int, str, Fraction, float],
                h_limit: int = DEFAULT_H_LIMIT) -> Solution:
    """删除至多 k 个范围，暴露数不少于 (1-ε)·m*(k)"""
    eps = parse_epsilon(epsilon)
    if not 0 <= k <= inst.n:
        raise InvalidInputError(f"k 必须满足 0 <= k <= n，当前 k={k}")
    h = math.ceil(4 / eps)
    _check_h(h, h_limit, eps)
    unit = normalize_translates(inst)
    logger.info(f"PTAS(点数放宽): n={inst.n}, m={inst.m}, k={k}, eps={eps}, h={h}")

    best: Optional[Solution] = None
    best_shift = (0, 0)
    for a in range(h):
        for b in range(h):
            kept = [pid for pid, p in enumerate(unit.points)
                    if not (_near_grid_line(p.x, a, h) or _near_grid_line(p.y, b, h))]
            solution, total = _shifted_solve(inst, unit, h, (a, b), k, h_limit, point_ids=kept)
            _check_solution_floor(solution, total, f"PTAS 移位 ({a}, {b})")
            logger.debug(f"移位 ({a}, {b}): 保留点={len(kept)}, 组合值={total}, 重算值={solution.value}")
            if best is None or solution.value > best.value:
                best, best_shift = solution, (a, b)

    logger.info(f"PTAS(点数放宽) 最优移位 {best_shift}: value={best.value}, 删除={len(best.deleted)}")
    return best


# ----------------------------------------------------------------------
# 相似且胖的矩形
# ----------------------------------------------------------------------

def solve_similar_fat(inst: Instance, k: int, multiplier: Optional[int] = None) -> Solution:
    """切成边长为最短边的正方形后跑 DP-Approx，删除的正方形映射回原矩形"""
    if not 0 <= k <= inst.n:
        raise InvalidInputError(f"k 必须满足 0 <= k <= n，当前 k={k}")
    squares, cover = squarify_similar_fat(inst)
    if multiplier is None:
        multiplier = 4 * size_ratio(inst) ** 2
    budget = multiplier * k
    logger.info(f"相似胖矩形: n={inst.n}, 正方形数={squares.n}, 预算={budget}")

    owner = {sid: rid for rid, sids in cover.items() for sid in sids}
    square_solution = dp_approx(squares, budget)
    deleted = {owner[sid] for sid in square_solution.deleted}
    solution = certify_solution(inst, deleted)
    _check_solution_floor(solution, square_solution.value, "相似胖矩形")
    return solution
