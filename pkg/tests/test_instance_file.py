#!/usr/bin/env python3
"""实例文件与结果记录读写测试"""

import json
from fractions import Fraction as F

import pytest

from models.geometry import AxisRect, ConvexPolygon, Disk, Instance, Point
from models.instance_file import (InstanceFile, ResultRecord, format_coord, read_instance,
                                  read_result, write_instance, write_result)
from utils.errors import InvalidInputError


class TestFormatCoord:
    def test_terminating_decimals(self):
        assert format_coord(F(1, 4)) == "0.25"
        assert format_coord(F(-3, 20)) == "-0.15"
        assert format_coord(F(7)) == "7"
        assert format_coord(F(-1, 2)) == "-0.5"

    def test_other_denominators(self):
        assert format_coord(F(1, 3)) == "1/3"
        assert format_coord(F(-5, 6)) == "-5/6"


class TestInstanceFile:
    def test_round_trip_keeps_exact_values(self, tmp_path):
        inst = Instance(
            points=(Point(F(1, 3), F(1, 2)), Point(0, 1)),
            ranges=(AxisRect(0, 0, F(2, 3), 1), Disk(0, 0, F(5, 4)),
                    ConvexPolygon((Point(0, 0), Point(1, 0), Point(0, 1)))),
            k=2,
        )
        path = tmp_path / "inst.json"
        write_instance(inst, path, {"seed": 7})
        assert read_instance(path) == inst
        data = json.loads(path.read_text(encoding="utf-8"))
        assert data["points"][0] == ["1/3", "0.5"]
        assert data["ranges"][1] == {"shape": "disk", "cx": "0", "cy": "0", "r": "1.25"}
        assert data["metadata"] == {"seed": 7}

    def test_accepts_integer_coordinates(self):
        parsed = InstanceFile.model_validate({"points": [[1, "1/2"]], "ranges": [], "k": 0})
        assert parsed.to_instance().points == (Point(1, F(1, 2)),)

    def test_rejects_float_coordinates(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"points": [[0.5, "1"]], "ranges": [], "k": 0}), encoding="utf-8")
        with pytest.raises(InvalidInputError):
            read_instance(path)

    def test_rejects_unknown_shape(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"points": [], "ranges": [{"shape": "star"}], "k": 0}), encoding="utf-8")
        with pytest.raises(InvalidInputError):
            read_instance(path)

    def test_rejects_bad_version(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"schema_version": 9, "points": [], "ranges": [], "k": 0}), encoding="utf-8")
        with pytest.raises(InvalidInputError):
            read_instance(path)

    def test_rejects_k_above_n(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"points": [], "ranges": [], "k": 1}), encoding="utf-8")
        with pytest.raises(InvalidInputError):
            read_instance(path)

    def test_rejects_clockwise_polygon(self):
        parsed = InstanceFile.model_validate({
            "points": [],
            "ranges": [{"shape": "polygon", "vertices": [["0", "0"], ["0", "1"], ["1", "0"]]}],
            "k": 0,
        })
        with pytest.raises(InvalidInputError):
            parsed.to_instance()

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(InvalidInputError):
            read_instance(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidInputError):
            read_instance(tmp_path / "missing.json")


class TestResultRecord:
    def test_round_trip(self, tmp_path):
        record = ResultRecord(algorithm="greedy", parameters={"k": 1, "alpha": 1}, value=2,
                              deleted_count=1, deleted=[0], exposed=[0, 3], wall_clock_ms=None)
        path = tmp_path / "out" / "result.json"
        write_result(record, path)
        assert read_result(path) == record

    def test_missing_fields(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"algorithm": "greedy"}), encoding="utf-8")
        with pytest.raises(InvalidInputError):
            read_result(path)
