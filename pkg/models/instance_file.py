#!/usr/bin/env python3
"""实例文件与结果记录的读写模块（JSON，坐标以精确字符串保存）"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError, field_validator

from models.geometry import (AxisRect, ConvexPolygon, Disk, Instance, Point,
                             Range, to_coord)
from utils.errors import InvalidInputError

SCHEMA_VERSION = 1


def format_coord(value: Union[int, str, Fraction]) -> str:
    """分母只含因子 2 和 5 时写成有限小数，否则写成 p/q 形式"""
    value = to_coord(value)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{value.numerator}/{value.denominator}"

    digits = max(twos, fives)
    if digits == 0:
        return str(value.numerator)
    scaled = abs(value.numerator) * 10 ** digits // value.denominator
    text = str(scaled).rjust(digits + 1, "0")
    sign = "-" if value < 0 else ""
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def _validate_coord_text(value: Any) -> str:
    """坐标字段只接受整数或字符串"""
    if isinstance(value, int) and not isinstance(value, bool):
        value = str(value)
    if not isinstance(value, str):
        raise ValueError(f"坐标必须是字符串: {value!r}")
    to_coord(value)
    return value


class RectShape(BaseModel):
    shape: Literal["rect"] = "rect"
    x0: str
    y0: str
    x1: str
    y1: str

    @field_validator("x0", "y0", "x1", "y1", mode="before")
    @classmethod
    def check_coords(cls, value: Any) -> str:
        return _validate_coord_text(value)


class DiskShape(BaseModel):
    shape: Literal["disk"] = "disk"
    cx: str
    cy: str
    r: str

    @field_validator("cx", "cy", "r", mode="before")
    @classmethod
    def check_coords(cls, value: Any) -> str:
        return _validate_coord_text(value)


class PolygonShape(BaseModel):
    shape: Literal["polygon"] = "polygon"
    vertices: List[Tuple[str, str]]

    @field_validator("vertices", mode="before")
    @classmethod
    def check_vertices(cls, value: Any) -> Any:
        return [tuple(_validate_coord_text(c) for c in vertex) for vertex in value]


RangeShape = Annotated[Union[RectShape, DiskShape, PolygonShape], Field(discriminator="shape")]


class InstanceFile(BaseModel):
    """实例文件模型"""
    schema_version: int = SCHEMA_VERSION
    points: List[Tuple[str, str]] = Field(default_factory=list)
    ranges: List[RangeShape] = Field(default_factory=list)
    k: int = 0
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("points", mode="before")
    @classmethod
    def check_points(cls, value: Any) -> Any:
        return [tuple(_validate_coord_text(c) for c in point) for point in value]

    @field_validator("schema_version")
    @classmethod
    def check_version(cls, value: int) -> int:
        if value != SCHEMA_VERSION:
            raise ValueError(f"不支持的 schema_version: {value}")
        return value

    def to_instance(self) -> Instance:
        """转换为内存中的实例"""
        points = tuple(Point(to_coord(x), to_coord(y)) for x, y in self.points)
        ranges: List[Range] = []
        for shape in self.ranges:
            if isinstance(shape, RectShape):
                ranges.append(AxisRect(to_coord(shape.x0), to_coord(shape.y0),
                                       to_coord(shape.x1), to_coord(shape.y1)))
            elif isinstance(shape, DiskShape):
                ranges.append(Disk(to_coord(shape.cx), to_coord(shape.cy), to_coord(shape.r)))
            else:
                ranges.append(ConvexPolygon(tuple(
                    Point(to_coord(x), to_coord(y)) for x, y in shape.vertices
                )))
        return Instance(points=points, ranges=tuple(ranges), k=self.k)

    @classmethod
    def from_instance(cls, inst: Instance, metadata: Optional[Dict[str, Any]] = None) -> "InstanceFile":
        """由内存实例构造文件模型"""
        shapes: List[Union[RectShape, DiskShape, PolygonShape]] = []
        for r in inst.ranges:
            if isinstance(r, AxisRect):
                shapes.append(RectShape(x0=format_coord(r.x0), y0=format_coord(r.y0),
                                        x1=format_coord(r.x1), y1=format_coord(r.y1)))
            elif isinstance(r, Disk):
                shapes.append(DiskShape(cx=format_coord(r.cx), cy=format_coord(r.cy),
                                        r=format_coord(r.r)))
            else:
                shapes.append(PolygonShape(vertices=[
                    (format_coord(v.x), format_coord(v.y)) for v in r.vertices
                ]))
        return cls(
            points=[(format_coord(p.x), format_coord(p.y)) for p in inst.points],
            ranges=shapes,
            k=inst.k,
            metadata=dict(metadata or {}),
        )


class ResultRecord(BaseModel):
    """求解结果记录"""
    schema_version: int = SCHEMA_VERSION
    algorithm: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    value: int
    deleted_count: int
    deleted: List[int]
    exposed: List[int]
    wall_clock_ms: Optional[float] = None


def _load_json(path: Union[str, Path]) -> Any:
    """读取 JSON，文件缺失或格式错误时抛出 InvalidInputError"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except OSError as e:
        raise InvalidInputError(f"无法读取文件 {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"文件 {path} 不是合法的 JSON: {e}") from e


def _dump(model: BaseModel, path: Union[str, Path]) -> None:
    """写出模型，必要时创建目录"""
    directory = Path(path).parent
    directory.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(model.model_dump_json(indent=2))
        f.write("\n")


def read_instance_file(path: Union[str, Path]) -> InstanceFile:
    """读取并校验实例文件"""
    try:
        return InstanceFile.model_validate(_load_json(path))
    except ValidationError as e:
        raise InvalidInputError(f"实例文件 {path} 格式错误: {e}") from e


def read_instance(path: Union[str, Path]) -> Instance:
    """读取实例文件并转换为实例"""
    return read_instance_file(path).to_instance()


def write_instance(inst: Instance, path: Union[str, Path], metadata: Optional[Dict[str, Any]] = None) -> None:
    """写出实例文件"""
    _dump(InstanceFile.from_instance(inst, metadata), path)


def read_result(path: Union[str, Path]) -> ResultRecord:
    """读取并校验结果记录"""
    try:
        return ResultRecord.model_validate(_load_json(path))
    except ValidationError as e:
        raise InvalidInputError(f"结果文件 {path} 格式错误: {e}") from e


def write_result(record: ResultRecord, path: Union[str, Path]) -> None:
    """写出结果记录"""
    _dump(record, path)


def result_to_json(record: ResultRecord) -> str:
    """结果记录的 JSON 文本"""
    return record.model_dump_json(indent=2)
