#!/usr/bin/env python3
"""几何核心模块：精确有理坐标、范围包含判定、暴露语义与签名分组"""

import numbers
from dataclasses import dataclass, field, replace
from decimal import Decimal
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Tuple, Union

from utils.errors import ConsistencyError, InvalidInputError

# 所有坐标均为精确有理数
Coord = Fraction

# 签名：包含某点的范围编号，升序无重复
Signature = Tuple[int, ...]


def to_coord(value: Union[int, str, Fraction, Decimal]) -> Fraction:
    """把整数、分数、十进制字符串或 "p/q" 字符串转换为精确坐标，拒绝浮点数"""
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInputError(f"坐标必须是精确数值，不接受浮点数: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (numbers.Rational, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise InvalidInputError(f"无法解析坐标 {value!r}: {e}") from e
    raise InvalidInputError(f"不支持的坐标类型: {type(value).__name__}")


def _cross(o: "Point", a: "Point", b: "Point") -> Fraction:
    """向量 oa 与 ob 的叉积"""
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)


@dataclass(frozen=True)
class Point:
    """平面上的点"""
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", to_coord(self.x))
        object.__setattr__(self, "y", to_coord(self.y))

    def transformed(self, ox: Fraction, oy: Fraction, scale: Fraction = Fraction(1)) -> "Point":
        """平移到以 (ox, oy) 为原点并按 scale 缩放"""
        return Point((self.x - ox) / scale, (self.y - oy) / scale)


@dataclass(frozen=True)
class AxisRect:
    """轴对齐矩形，闭区域"""
    x0: Fraction
    y0: Fraction
    x1: Fraction
    y1: Fraction

    def __post_init__(self):
        for name in ("x0", "y0", "x1", "y1"):
            object.__setattr__(self, name, to_coord(getattr(self, name)))
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise InvalidInputError(f"矩形坐标不合法: {self}")

    @property
    def width(self) -> Fraction:
        return self.x1 - self.x0

    @property
    def height(self) -> Fraction:
        return self.y1 - self.y0

    @property
    def is_square(self) -> bool:
        return self.width == self.height

    @property
    def short_side(self) -> Fraction:
        return min(self.width, self.height)

    @property
    def long_side(self) -> Fraction:
        return max(self.width, self.height)

    def contains(self, p: Point) -> bool:
        return self.x0 <= p.x <= self.x1 and self.y0 <= p.y <= self.y1

    def intersects(self, other: "AxisRect") -> bool:
        """闭区域相交（共享边界也算）"""
        return (self.x0 <= other.x1 and other.x0 <= self.x1
                and self.y0 <= other.y1 and other.y0 <= self.y1)

    def transformed(self, ox: Fraction, oy: Fraction, scale: Fraction = Fraction(1)) -> "AxisRect":
        return AxisRect((self.x0 - ox) / scale, (self.y0 - oy) / scale,
                        (self.x1 - ox) / scale, (self.y1 - oy) / scale)

    def corners(self) -> Tuple[Point, Point, Point, Point]:
        return (Point(self.x0, self.y0), Point(self.x1, self.y0),
                Point(self.x1, self.y1), Point(self.x0, self.y1))


@dataclass(frozen=True)
class Disk:
    """圆盘，闭区域"""
    cx: Fraction
    cy: Fraction
    r: Fraction

    def __post_init__(self):
        for name in ("cx", "cy", "r"):
            object.__setattr__(self, name, to_coord(getattr(self, name)))
        if self.r <= 0:
            raise InvalidInputError(f"圆盘半径必须为正: {self.r}")

    def contains(self, p: Point) -> bool:
        dx = p.x - self.cx
        dy = p.y - self.cy
        return dx * dx + dy * dy <= self.r * self.r


@dataclass(frozen=True)
class ConvexPolygon:
    """严格凸多边形，顶点按逆时针排列"""
    vertices: Tuple[Point, ...]

    def __post_init__(self):
        vertices = tuple(v if isinstance(v, Point) else Point(*v) for v in self.vertices)
        object.__setattr__(self, "vertices", vertices)
        if len(vertices) < 3:
            raise InvalidInputError("凸多边形至少需要 3 个顶点")
        if len(set(vertices)) != len(vertices):
            raise InvalidInputError("凸多边形存在重复顶点")
        # 严格凸且逆时针 <=> 每条边之外的所有顶点都严格位于该边左侧
        count = len(vertices)
        for i in range(count):
            a, b = vertices[i], vertices[(i + 1) % count]
            for j in range(count):
                if j in (i, (i + 1) % count):
                    continue
                if _cross(a, b, vertices[j]) <= 0:
                    raise InvalidInputError("多边形不是逆时针的严格凸多边形")

    def contains(self, p: Point) -> bool:
        count = len(self.vertices)
        return all(
            _cross(self.vertices[i], self.vertices[(i + 1) % count], p) >= 0
            for i in range(count)
        )


Range = Union[AxisRect, Disk, ConvexPolygon]
RANGE_TYPES = (AxisRect, Disk, ConvexPolygon)


def range_kind(r: Range) -> str:
    """范围的类型标签，与实例文件中的 shape 字段一致"""
    if isinstance(r, AxisRect):
        return "rect"
    if isinstance(r, Disk):
        return "disk"
    return "polygon"


def ids_to_mask(ids: Iterable[int]) -> int:
    """编号集合 -> 位掩码"""
    mask = 0
    for i in ids:
        mask |= 1 << i
    return mask


def mask_to_ids(mask: int) -> List[int]:
    """位掩码转升序编号列表"""
    ids = []
    index = 0
    while mask:
        if mask & 1:
            ids.append(index)
        mask >>= 1
        index += 1
    return ids


@dataclass(frozen=True)
class Instance:
    """最大暴露问题实例：点集、范围集与删除预算 k"""
    points: Tuple[Point, ...]
    ranges: Tuple[Range, ...]
    k: int = 0

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "ranges", tuple(self.ranges))
        for p in self.points:
            if not isinstance(p, Point):
                raise InvalidInputError(f"点类型不合法: {p!r}")
        for r in self.ranges:
            if not isinstance(r, RANGE_TYPES):
                raise InvalidInputError(f"范围类型不合法: {r!r}")
        if not isinstance(self.k, int) or self.k < 0 or self.k > len(self.ranges):
            raise InvalidInputError(f"k 必须满足 0 <= k <= n，当前 k={self.k}, n={len(self.ranges)}")

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.ranges)

    def with_k(self, k: int) -> "Instance":
        """换一个删除预算"""
        return replace(self, k=k)

    @cached_property
    def signature_masks(self) -> Tuple[int, ...]:
        """每个点的签名位掩码（第 r 位表示范围 r 包含该点）"""
        masks = []
        for p in self.points:
            mask = 0
            for rid, r in enumerate(self.ranges):
                if r.contains(p):
                    mask |= 1 << rid
            masks.append(mask)
        return tuple(masks)

    @cached_property
    def range_masks(self) -> Tuple[int, ...]:
        """每个范围包含的点集位掩码"""
        masks = [0] * len(self.ranges)
        for pid, sig in enumerate(self.signature_masks):
            for rid in mask_to_ids(sig):
                masks[rid] |= 1 << pid
        return tuple(masks)

    @property
    def shape_kinds(self) -> FrozenSet[str]:
        return frozenset(range_kind(r) for r in self.ranges)


@dataclass(frozen=True)
class Group:
    """签名相同的点组成的等价类"""
    signature: Signature
    point_ids: Tuple[int, ...]


@dataclass(frozen=True)
class Solution:
    """求解结果：删除的范围、暴露的点与暴露数"""
    deleted: FrozenSet[int]
    exposed: FrozenSet[int]
    value: int = field(default=-1)

    def __post_init__(self):
        object.__setattr__(self, "deleted", frozenset(self.deleted))
        object.__setattr__(self, "exposed", frozenset(self.exposed))
        if self.value < 0:
            object.__setattr__(self, "value", len(self.exposed))
        if self.value != len(self.exposed):
            raise ConsistencyError(f"value={self.value} 与暴露点数 {len(self.exposed)} 不一致")


def _check_point_id(inst: Instance, point_id: int) -> None:
    """点编号越界时抛出 InvalidInputError"""
    if not isinstance(point_id, int) or not 0 <= point_id < inst.m:
        raise InvalidInputError(f"点编号越界: {point_id}")


def _check_range_ids(inst: Instance, range_ids: Iterable[int]) -> None:
    """范围编号越界时抛出 InvalidInputError"""
    for rid in range_ids:
        if not isinstance(rid, int) or not 0 <= rid < inst.n:
            raise InvalidInputError(f"范围编号越界: {rid}")


def contains(r: Range, p: Point) -> bool:
    """闭区域包含判定，边界算在内"""
    return r.contains(p)


def signature_of(inst: Instance, point_id: int) -> Signature:
    """包含该点的范围编号，升序"""
    _check_point_id(inst, point_id)
    return tuple(mask_to_ids(inst.signature_masks[point_id]))


def points_in(inst: Instance, range_id: int) -> List[int]:
    """范围包含的点编号，升序"""
    _check_range_ids(inst, [range_id])
    return mask_to_ids(inst.range_masks[range_id])


def exposed_mask(inst: Instance, deleted_mask: int) -> int:
    """签名是 deleted_mask 子集的点组成的位掩码"""
    result = 0
    for pid, sig in enumerate(inst.signature_masks):
        if sig & ~deleted_mask == 0:
            result |= 1 << pid
    return result


def exposed_points(inst: Instance, deleted: Iterable[int]) -> FrozenSet[int]:
    """删除 deleted 后暴露的点：签名是 deleted 子集的点"""
    deleted = list(deleted)
    _check_range_ids(inst, deleted)
    return frozenset(mask_to_ids(exposed_mask(inst, ids_to_mask(deleted))))


def group_by_signature(inst: Instance) -> List[Group]:
    """按签名把非空签名的点分组，按组大小降序，同样大小按签名字典序"""
    buckets: Dict[Signature, List[int]] = {}
    for pid, sig in enumerate(inst.signature_masks):
        if sig == 0:
            continue
        buckets.setdefault(tuple(mask_to_ids(sig)), []).append(pid)
    groups = [Group(signature=sig, point_ids=tuple(ids)) for sig, ids in buckets.items()]
    groups.sort(key=lambda g: (-len(g.point_ids), g.signature))
    return groups


def filter_uncoverable(inst: Instance) -> Tuple[Instance, List[int]]:
    """去掉签名大小超过 k 的点，返回新实例与新编号到原编号的映射"""
    kept = [pid for pid, sig in enumerate(inst.signature_masks)
            if bin(sig).count("1") <= inst.k]
    filtered = Instance(points=tuple(inst.points[pid] for pid in kept),
                        ranges=inst.ranges, k=inst.k)
    return filtered, kept


def certify_solution(inst: Instance, deleted: Iterable[int]) -> Solution:
    """由删除集合重新计算暴露点，得到自洽的解"""
    deleted = frozenset(deleted)
    exposed = exposed_points(inst, deleted)
    return Solution(deleted=deleted, exposed=exposed, value=len(exposed))


def check_solution(inst: Instance, solution: Solution) -> None:
    """复核解的不变量，不一致时抛出 ConsistencyError"""
    _check_range_ids(inst, solution.deleted)
    recomputed = exposed_points(inst, solution.deleted)
    if recomputed != solution.exposed:
        raise ConsistencyError(
            f"暴露集合不一致: 记录 {sorted(solution.exposed)}, 重算 {sorted(recomputed)}"
        )
    if solution.value != len(recomputed):
        raise ConsistencyError(f"暴露数不一致: 记录 {solution.value}, 重算 {len(recomputed)}")
