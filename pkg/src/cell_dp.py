#!/usr/bin/env python3
"""单元格动态规划模块

在一个单位正方形格子 C 内精确求解最大暴露。范围按与格子左右边的关系分成
Type-0（与 x=0 相交）和 Type-1（与 x=1 相交但不与 x=0 相交），并锚定到底边
ℓ0 或顶边 ℓ1。从左到右扫描事件（点、Type-1 范围的起始边），状态为
(事件下标, 剩余预算, q0, q1, Q0, Q1)：
  - q0 / q1：已暴露点中离 ℓ0 / ℓ1 最近的点，用于恢复已删除的 Type-0 范围集合 ℛ_d；
  - Q0 / Q1：未删除的 Type-1 范围中锚定在 ℓ0 / ℓ1 且离锚线最远的范围，
    用于恢复之后不可能暴露的点集 P_f。
"""

import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Sequence, Tuple

from models.geometry import AxisRect, Instance, Point, exposed_points
from utils.errors import ConsistencyError, InvalidInputError
from utils.logger import get_logger

logger = get_logger("cell_dp")

# 状态中表示人工点/零宽范围的哨兵
SENTINEL = None

STRICT = "strict"
CORNER = "corner"


class RangeKind(Enum):
    TYPE0 = 0
    TYPE1 = 1


class EventKind(Enum):
    # 数值决定同一 x 上的先后：范围起始先于点
    BEGIN_TYPE1 = 0
    POINT = 1


@dataclass(frozen=True)
class CellFrame:
    """格子及其两条锚线"""
    cell: AxisRect

    def __post_init__(self):
        if not self.cell.is_square:
            raise InvalidInputError(f"格子必须是正方形: {self.cell}")

    @property
    def side(self) -> Fraction:
        return self.cell.width

    @property
    def anchor0(self) -> Fraction:
        return self.cell.y0

    @property
    def anchor1(self) -> Fraction:
        return self.cell.y1

    @classmethod
    def unit(cls, x0: Fraction = Fraction(0), y0: Fraction = Fraction(0), side: Fraction = Fraction(1)) -> "CellFrame":
        """以 (x0, y0) 为左下角、边长 side 的格子"""
        return cls(AxisRect(x0, y0, x0 + side, y0 + side))

    def to_local(self, p: Point) -> Point:
        """原始坐标 -> 格子局部坐标"""
        return p.transformed(self.cell.x0, self.cell.y0, self.side)

    def rect_to_local(self, r: AxisRect) -> AxisRect:
        """原始矩形 -> 格子局部坐标"""
        return r.transformed(self.cell.x0, self.cell.y0, self.side)


@dataclass(frozen=True)
class ClassifiedRange:
    """格子局部坐标下分类后的范围"""
    range_id: int
    kind: RangeKind
    anchor: int
    x_begin: Fraction
    x_end: Fraction
    anchor_distance: Fraction
    rect: AxisRect

    def contains(self, p: Point) -> bool:
        return self.rect.contains(p)


class Event(NamedTuple):
    x: Fraction
    kind: EventKind
    item: int

    def sort_key(self) -> Tuple[Fraction, int, int]:
        return self.x, self.kind.value, self.item


class CellDPKey(NamedTuple):
    event_index: int
    budget: int
    q0: Optional[int]
    q1: Optional[int]
    Q0: Optional[int]
    Q1: Optional[int]


@dataclass
class CellSolution:
    """各预算下的最优暴露数及其删除集合证书（局部编号）"""
    local: List[int]
    deleted: List[FrozenSet[int]]
    exposed: List[FrozenSet[int]]


def classify_local(range_id: int, r: AxisRect, mode: str = STRICT) -> ClassifiedRange:
    """对已变换到单位格子坐标的矩形分类"""
    if not (r.x0 <= 1 and r.x1 >= 0 and r.y0 <= 1 and r.y1 >= 0):
        raise InvalidInputError(f"范围 {range_id} 与格子不相交")
    if mode == STRICT:
        if r.width != 1 or r.height != 1:
            raise InvalidInputError(f"范围 {range_id} 不是与格子同样大小的正方形")
    elif mode == CORNER:
        if not ((r.x0 <= 0 or r.x1 >= 1) and (r.y0 <= 0 or r.y1 >= 1)):
            raise InvalidInputError(f"范围 {range_id} 与格子的交不含格子的角")
    else:
        raise InvalidInputError(f"未知的分类模式: {mode}")

    kind = RangeKind.TYPE0 if r.x0 <= 0 else RangeKind.TYPE1
    # 同时跨过两条锚线时锚定到 ℓ0
    if r.y0 <= 0:
        anchor, distance = 0, min(r.y1, Fraction(1))
    else:
        anchor, distance = 1, 1 - max(r.y0, Fraction(0))
    return ClassifiedRange(range_id=range_id, kind=kind, anchor=anchor,
                           x_begin=r.x0, x_end=r.x1, anchor_distance=distance, rect=r)


def classify(frame: CellFrame, ranges: Sequence[AxisRect], mode: str = STRICT) -> List[ClassifiedRange]:
    """把范围变换到格子局部坐标并分类为 Type-0 / Type-1"""
    if mode == STRICT:
        for rid, r in enumerate(ranges):
            if r.width != frame.side or r.height != frame.side:
                raise InvalidInputError(f"范围 {rid} 不是边长为 {frame.side} 的正方形")
    return [classify_local(rid, frame.rect_to_local(r), mode) for rid, r in enumerate(ranges)]


def point_distance(p: Point, anchor: int) -> Fraction:
    """点到锚线的距离"""
    return p.y if anchor == 0 else 1 - p.y


def closer(q: Optional[Point], p: Point, anchor: int) -> Optional[Point]:
    """q 与 p 中离锚线更近的一个；哨兵输给任何真实点，距离相同保留 q"""
    if q is SENTINEL:
        return p
    return p if point_distance(p, anchor) < point_distance(q, anchor) else q


def farther(Q: Optional[ClassifiedRange], R: ClassifiedRange, anchor: int) -> Optional[ClassifiedRange]:
    """R 锚定在该锚线且比 Q 更远时返回 R，否则返回 Q"""
    if R.anchor != anchor:
        return Q
    if Q is SENTINEL:
        return R
    return R if R.anchor_distance > Q.anchor_distance else Q


class CellDP:
    """单元格组合动态规划，自顶向下记忆化"""

    def __init__(self, points: Sequence[Point], ranges: Sequence[ClassifiedRange]):
        """建立事件序列和每个点所在的 Type-0 范围"""
        for pid, p in enumerate(points):
            if not (0 <= p.x <= 1 and 0 <= p.y <= 1):
                raise InvalidInputError(f"点 {pid} 不在格子内: ({p.x}, {p.y})")
        self.points = list(points)
        self.ranges = list(ranges)

        self.type0 = [r for r in self.ranges if r.kind is RangeKind.TYPE0]
        # 每个点所在的 Type-0 范围位掩码
        self.type0_of_point = []
        for p in self.points:
            mask = 0
            for r in self.type0:
                if r.contains(p):
                    mask |= 1 << r.range_id
            self.type0_of_point.append(mask)

        events = [Event(p.x, EventKind.POINT, pid) for pid, p in enumerate(self.points)]
        events += [Event(r.x_begin, EventKind.BEGIN_TYPE1, r.range_id)
                   for r in self.ranges if r.kind is RangeKind.TYPE1]
        self.events = sorted(events, key=Event.sort_key)
        self.memo: Dict[CellDPKey, int] = {}

    def _closer_id(self, q_id: Optional[int], p_id: int, anchor: int) -> Optional[int]:
        """closer 的编号版本"""
        q = SENTINEL if q_id is None else self.points[q_id]
        p = self.points[p_id]
        return p_id if closer(q, p, anchor) is p else q_id

    def _farther_id(self, Q_id: Optional[int], R_id: int, anchor: int) -> Optional[int]:
        """farther 的编号版本"""
        Q = SENTINEL if Q_id is None else self.ranges[Q_id]
        R = self.ranges[R_id]
        return R_id if farther(Q, R, anchor) is R else Q_id

    def is_forbidden(self, key: CellDPKey, point_id: int) -> bool:
        """点被某个未删除的 Type-1 范围覆盖（P_f）"""
        p = self.points[point_id]
        return any(Q is not None and self.ranges[Q].contains(p) for Q in (key.Q0, key.Q1))

    def deleted_type0(self, key: CellDPKey, x: Fraction) -> int:
        """仍活跃且包含 q0 或 q1 的 Type-0 范围（ℛ_d）位掩码"""
        mask = 0
        for q in (key.q0, key.q1):
            if q is None:
                continue
            for r in self.type0:
                if r.x_end >= x and r.contains(self.points[q]):
                    mask |= 1 << r.range_id
        return mask

    def state_sets(self, key: CellDPKey) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        """状态对应的 (P_f, ℛ_d)：P_f 取尚未扫描的点"""
        if key.event_index >= len(self.events):
            return frozenset(), frozenset()
        x = self.events[key.event_index].x
        pending = [e.item for e in self.events[key.event_index:] if e.kind is EventKind.POINT]
        forbidden = frozenset(pid for pid in pending if self.is_forbidden(key, pid))
        mask = self.deleted_type0(key, x)
        return forbidden, frozenset(r.range_id for r in self.type0 if mask >> r.range_id & 1)

    def expose_cost(self, key: CellDPKey, point_id: int) -> Tuple[int, int]:
        """暴露点需要新删除的 Type-0 范围：(个数, 位掩码)"""
        x = self.points[point_id].x
        needed = self.type0_of_point[point_id] & ~self.deleted_type0(key, x)
        return bin(needed).count("1"), needed

    def successors(self, key: CellDPKey) -> List[Tuple[str, CellDPKey, int]]:
        """当前状态的所有分支：(动作, 后继状态, 本步暴露数)"""
        event = self.events[key.event_index]
        nxt = key.event_index + 1
        if event.kind is EventKind.POINT:
            pid = event.item
            stay = key._replace(event_index=nxt)
            if self.is_forbidden(key, pid):
                return [("forbidden", stay, 0)]
            branches = [("skip", stay, 0)]
            cost, _ = self.expose_cost(key, pid)
            if cost <= key.budget:
                branches.append(("expose", CellDPKey(
                    nxt, key.budget - cost,
                    self._closer_id(key.q0, pid, 0), self._closer_id(key.q1, pid, 1),
                    key.Q0, key.Q1), 1))
            return branches

        rid = event.item
        branches = [("keep", CellDPKey(
            nxt, key.budget, key.q0, key.q1,
            self._farther_id(key.Q0, rid, 0), self._farther_id(key.Q1, rid, 1)), 0)]
        if key.budget >= 1:
            branches.append(("delete", key._replace(event_index=nxt, budget=key.budget - 1), 0))
        return branches

    def value(self, key: CellDPKey) -> int:
        """从该状态出发还能暴露的最多点数"""
        if key.event_index == len(self.events):
            return 0
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        best = max(gain + self.value(child) for _, child, gain in self.successors(key))
        self.memo[key] = best
        return best

    def root(self, budget: int) -> CellDPKey:
        """扫描开始时的状态"""
        return CellDPKey(0, budget, SENTINEL, SENTINEL, SENTINEL, SENTINEL)

    def reconstruct(self, budget: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
        """沿最优分支回溯，得到删除集合和计入的暴露点；同值时优先保留/不暴露"""
        key = self.root(budget)
        deleted = set()
        exposed = set()
        while key.event_index < len(self.events):
            branches = self.successors(key)
            target = self.value(key)
            for action, child, gain in branches:
                if gain + self.value(child) == target:
                    break
            event = self.events[key.event_index]
            if action == "delete":
                deleted.add(event.item)
            elif action == "expose":
                _, needed = self.expose_cost(key, event.item)
                deleted.update(rid for rid in range(len(self.ranges)) if needed >> rid & 1)
                exposed.add(event.item)
            key = child
        return frozenset(deleted), frozenset(exposed)

    def solve(self, kmax: int) -> CellSolution:
        """对 0..kmax 每个预算求值并回溯证书"""
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * len(self.events) + 1000))
        local, deleted_sets, exposed_sets = [], [], []
        for budget in range(kmax + 1):
            local.append(self.value(self.root(budget)))
            deleted, exposed = self.reconstruct(budget)
            deleted_sets.append(deleted)
            exposed_sets.append(exposed)
        return CellSolution(local=local, deleted=deleted_sets, exposed=exposed_sets)


def validate_certificates(points: Sequence[Point], ranges: Sequence[AxisRect], solution: CellSolution) -> None:
    """用真实几何复核每个预算的删除集合，不一致时抛出 ConsistencyError"""
    inst = Instance(points=tuple(points), ranges=tuple(ranges), k=0)
    for budget, (value, deleted) in enumerate(zip(solution.local, solution.deleted)):
        if len(deleted) > budget:
            logger.error(f"预算 {budget} 的证书删除了 {len(deleted)} 个范围")
            raise ConsistencyError(f"预算 {budget} 的证书超出预算: {sorted(deleted)}")
        exposed = exposed_points(inst, deleted)
        if len(exposed) != value:
            logger.error(f"预算 {budget}: 证书暴露 {len(exposed)} 个点，DP 值为 {value}")
            raise ConsistencyError(f"预算 {budget} 的证书复核失败: {len(exposed)} != {value}")


def solve_cell(frame: CellFrame, points: Sequence[Point], ranges: Sequence[AxisRect], kmax: int,
               mode: str = STRICT) -> CellSolution:
    """单元格内对 0..kmax 每个预算求精确最优暴露数和删除集合

    points、ranges 使用原始坐标，编号即序列下标。
    """
    if kmax < 0:
        raise InvalidInputError(f"kmax 不能为负: {kmax}")
    classified = classify(frame, ranges, mode)
    local_points = [frame.to_local(p) for p in points]
    dp = CellDP(local_points, classified)
    solution = dp.solve(kmax)
    validate_certificates(local_points, [r.rect for r in classified], solution)
    logger.debug(f"格子 {frame.cell}: m={len(points)}, n={len(ranges)}, 状态数={len(dp.memo)}, local={solution.local}")
    return solution
