#!/usr/bin/env python3
"""网格求解测试：DP-Approx、展平、DP-Flattened 与移位 PTAS"""

from fractions import Fraction as F

import numpy as np
import pytest

from factories import grid_value, unit_cell_instance, unit_square_instance
from models.geometry import AxisRect, Instance, Point, exposed_points
from src.cell_dp import CellFrame, RangeKind, solve_cell
from src.grid_solver import (Component, FlatPoint, build_grid, dp_approx, dp_flattened,
                             extend_local, flatten, knapsack_combine, normalize_translates,
                             parse_epsilon, ptas_budget, ptas_points, solve_similar_fat)
from src.oracle import brute_force_opt
from utils.errors import InfeasibleError, InvalidInputError


def oracle_table(inst: Instance):
    return [brute_force_opt(inst.with_k(b)).value for b in range(inst.n + 1)]


class TestHelpers:
    def test_extend_local(self):
        assert extend_local([1, 2], 4) == [1, 2, 2, 2, 2]
        assert extend_local([1, 2, 3], 1) == [1, 2]

    def test_knapsack_prefers_smallest_allocation_on_ties(self):
        value, allocation = knapsack_combine([[0, 2, 3], [1, 1, 4]], 2)
        assert value == 4
        assert allocation == [0, 2]

    def test_knapsack_without_cells(self):
        assert knapsack_combine([], 3) == (0, [])

    def test_knapsack_matches_exhaustive_split(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            tables = [np.cumsum(rng.integers(0, 4, size=4)).tolist() for _ in range(3)]
            budget = int(rng.integers(0, 6))
            value, allocation = knapsack_combine(tables, budget)
            best = max(extend_local(tables[0], budget)[a] + extend_local(tables[1], budget)[b]
                       + extend_local(tables[2], budget)[c]
                       for a in range(budget + 1) for b in range(budget + 1 - a)
                       for c in range(budget + 1 - a - b))
            assert value == best
            assert sum(allocation) <= budget

    def test_parse_epsilon(self):
        assert parse_epsilon(0.5) == F(1, 2)
        assert parse_epsilon("8/3") == F(8, 3)
        with pytest.raises(InvalidInputError):
            parse_epsilon(0)

    def test_normalize_translates(self):
        inst = Instance(points=(Point(1, 1),), ranges=(AxisRect(0, 0, 2, F(1, 2)),), k=1)
        unit = normalize_translates(inst)
        assert unit.ranges == (AxisRect(0, 0, 1, 1),)
        assert unit.points == (Point(F(1, 2), 2),)

    def test_normalize_rejects_mixed_sizes(self):
        inst = Instance(points=(), ranges=(AxisRect(0, 0, 1, 1), AxisRect(0, 0, 2, 2)), k=0)
        with pytest.raises(InvalidInputError):
            normalize_translates(inst)

    def test_build_grid_half_open_cells(self, i1):
        grid = build_grid(i1)
        assert list(grid.cells) == [(0, 0)]
        on_line = Instance(points=(Point(1, 0),), ranges=(), k=0)
        assert list(build_grid(on_line).cells) == [(1, 0)]


class TestDpApprox:
    def test_i1(self, i1):
        solution = dp_approx(i1, 4)
        assert solution.value == 4

    def test_zero_budget(self, i1):
        assert dp_approx(i1, 0).value == 1

    def test_four_k_budget_beats_opt(self):
        rng = np.random.default_rng(31)
        for _ in range(300):
            k = int(rng.integers(0, 3))
            inst = unit_square_instance(rng, int(rng.integers(1, 8)), int(rng.integers(1, 9)), k)
            solution = dp_approx(inst, 4 * inst.k)
            assert len(solution.deleted) <= 4 * inst.k
            assert solution.value >= brute_force_opt(inst).value
            assert solution.exposed == exposed_points(inst, solution.deleted)

    def test_translates_of_one_rectangle(self):
        rng = np.random.default_rng(37)
        for _ in range(30):
            unit = unit_square_instance(rng, 5, 6, 1)
            stretched = Instance(
                points=tuple(Point(p.x * 2, p.y / 3) for p in unit.points),
                ranges=tuple(AxisRect(r.x0 * 2, r.y0 / 3, r.x1 * 2, r.y1 / 3) for r in unit.ranges),
                k=unit.k,
            )
            assert dp_approx(stretched, 4).value == dp_approx(unit, 4).value

    def test_negative_budget(self, i1):
        with pytest.raises(InvalidInputError):
            dp_approx(i1, -1)


class TestFlatten:
    def test_split_range_and_point_shift(self):
        inst = Instance(points=(Point(F(3, 2), F(1, 4)),),
                        ranges=(AxisRect(F(1, 2), F(1, 2), F(3, 2), F(3, 2)),), k=0)
        flat = flatten(inst, 2)
        assert flat.points == [FlatPoint(0, 1, F(1, 2), F(1, 4))]
        assert flat.points[0].flat_y(2) == F(9, 4)
        assert flat.components == [
            Component(0, RangeKind.TYPE1, 0, F(1, 2), F(1), F(1, 2), F(3, 2), 1, 1),
            Component(0, RangeKind.TYPE0, 1, F(-1, 2), F(1, 2), F(1, 2), F(3, 2), 1, 0),
        ]
        assert flat.stack_height == 4
        assert flat.components_of(0) == [0, 1]

    def test_range_left_of_square(self):
        inst = Instance(points=(), ranges=(AxisRect(F(-1, 2), F(-1, 2), F(1, 2), F(1, 2)),), k=0)
        (comp,) = flatten(inst, 2).components
        assert comp == Component(0, RangeKind.TYPE0, 0, F(-1, 2), F(1, 2), F(0), F(1, 2), 0, None)

    def test_last_column_has_no_twin(self):
        inst = Instance(points=(), ranges=(AxisRect(F(3, 2), 0, F(5, 2), 1),), k=0)
        (comp,) = flatten(inst, 2).components
        assert comp.kind is RangeKind.TYPE1 and comp.twin is None

    def test_twins_are_paired(self):
        rng = np.random.default_rng(41)
        for _ in range(50):
            flat = flatten(unit_square_instance(rng, 6, 6, 0, size=3), 3)
            for cid, comp in enumerate(flat.components):
                if comp.twin is None:
                    continue
                twin = flat.components[comp.twin]
                assert twin.twin == cid
                assert twin.range_id == comp.range_id
                if comp.kind is RangeKind.TYPE1:
                    assert twin.kind is RangeKind.TYPE0
                    assert twin.column == comp.column + 1
                    assert twin.x_end == comp.x_begin

    def test_exposure_is_preserved(self):
        rng = np.random.default_rng(43)
        for _ in range(50):
            inst = unit_square_instance(rng, 5, 7, 0, size=2)
            flat = flatten(inst, 2)
            for mask in range(1 << inst.n):
                deleted = [r for r in range(inst.n) if mask >> r & 1]
                assert flat.exposed_after_deleting(deleted) == exposed_points(inst, deleted)

    def test_rejects_point_outside(self):
        with pytest.raises(InvalidInputError):
            flatten(Instance(points=(Point(2, 0),), ranges=(), k=0), 2)

    def test_rejects_non_unit_ranges(self):
        with pytest.raises(InvalidInputError):
            flatten(Instance(points=(), ranges=(AxisRect(0, 0, 2, 2),), k=0), 2)


class TestDpFlattened:
    def test_matches_oracle_for_h2(self):
        rng = np.random.default_rng(47)
        for _ in range(200):
            inst = unit_square_instance(rng, int(rng.integers(1, 6)), int(rng.integers(1, 7)), 0, size=2)
            solution = dp_flattened(flatten(inst, 2), inst.n)
            assert solution.local == oracle_table(inst)

    def test_matches_oracle_for_h3(self):
        rng = np.random.default_rng(53)
        for _ in range(40):
            inst = unit_square_instance(rng, int(rng.integers(1, 5)), int(rng.integers(1, 6)), 0, size=3)
            assert dp_flattened(flatten(inst, 3), inst.n).local == oracle_table(inst)

    def test_split_range_charged_once(self):
        inst = Instance(points=(Point(F(3, 4), F(1, 2)), Point(F(5, 4), F(1, 2))),
                        ranges=(AxisRect(F(1, 2), 0, F(3, 2), 1),), k=0)
        solution = dp_flattened(flatten(inst, 2), 1)
        assert solution.local == [0, 2]
        assert solution.charges[1] == [0]
        assert solution.deleted[1] == {0}

    def test_h1_matches_cell_dp(self):
        rng = np.random.default_rng(59)
        for _ in range(100):
            inst = unit_cell_instance(rng, int(rng.integers(1, 6)), int(rng.integers(1, 7)))
            flat_local = dp_flattened(flatten(inst, 1), inst.n).local
            cell_local = solve_cell(CellFrame.unit(), inst.points, inst.ranges, inst.n).local
            assert flat_local == cell_local

    def test_h_over_limit(self, i1):
        with pytest.raises(InfeasibleError):
            dp_flattened(flatten(i1.with_k(0), 4), 1)


def shifted_unit_instance(rng, n, m, k):
    """点和范围随意分布在 [0,5)² 上的单位正方形实例"""
    points = tuple(Point(grid_value(rng, 0, 9, 2), grid_value(rng, 0, 9, 2)) for _ in range(m))
    ranges = []
    for _ in range(n):
        anchor = points[int(rng.integers(0, m))]
        x0 = anchor.x - grid_value(rng, 0, 2, 2)
        y0 = anchor.y - grid_value(rng, 0, 2, 2)
        ranges.append(AxisRect(x0, y0, x0 + 1, y0 + 1))
    return Instance(points=points, ranges=tuple(ranges), k=min(k, n))


class TestPtas:
    @pytest.mark.parametrize("epsilon", [F(4), F(8, 3)])
    def test_budget_variant_reaches_opt(self, epsilon):
        rng = np.random.default_rng(61)
        for _ in range(50):
            inst = unit_square_instance(rng, int(rng.integers(1, 6)), int(rng.integers(1, 7)),
                                        int(rng.integers(0, 3)), size=4)
            solution = ptas_budget(inst, inst.k, epsilon)
            assert len(solution.deleted) <= int((1 + epsilon) * inst.k)
            assert solution.value >= brute_force_opt(inst).value

    @pytest.mark.parametrize("epsilon", [F(2), F(4, 3)])
    def test_points_variant_keeps_budget(self, epsilon):
        rng = np.random.default_rng(67)
        for _ in range(50):
            inst = unit_square_instance(rng, int(rng.integers(1, 6)), int(rng.integers(1, 7)),
                                        int(rng.integers(0, 3)), size=4)
            solution = ptas_points(inst, inst.k, epsilon)
            opt = brute_force_opt(inst).value
            assert len(solution.deleted) <= inst.k
            assert opt >= solution.value >= (1 - epsilon) * opt
            assert solution.exposed == exposed_points(inst, solution.deleted)

    def test_budget_variant_on_unaligned_rects(self):
        rng = np.random.default_rng(71)
        for _ in range(20):
            inst = shifted_unit_instance(rng, 4, 6, 1)
            assert ptas_budget(inst, inst.k, 4).value >= brute_force_opt(inst).value

    def test_small_epsilon_is_infeasible(self, i1):
        with pytest.raises(InfeasibleError):
            ptas_budget(i1, 1, 1)
        with pytest.raises(InfeasibleError):
            ptas_points(i1, 1, F(1, 2))

    def test_larger_limit_allows_smaller_epsilon(self, i1):
        assert ptas_points(i1, 1, 1, h_limit=4).value <= 2

    def test_k_zero(self, i1):
        assert ptas_budget(i1, 0, 4).value == 1
        assert ptas_budget(i1, 0, 4).deleted == frozenset()

    def test_invalid_k(self, i1):
        with pytest.raises(InvalidInputError):
            ptas_budget(i1, 3, 4)


def similar_fat_instance(rng, n, m):
    sides = [F(1), F(3, 2), F(2)]
    points = tuple(Point(grid_value(rng, 0, 7, 2), grid_value(rng, 0, 7, 2)) for _ in range(m))
    ranges = []
    for _ in range(n):
        anchor = points[int(rng.integers(0, m))]
        w = sides[int(rng.integers(0, 3))]
        h = sides[int(rng.integers(0, 3))]
        x0 = anchor.x - grid_value(rng, 0, int(w * 2), 2)
        y0 = anchor.y - grid_value(rng, 0, int(h * 2), 2)
        ranges.append(AxisRect(x0, y0, x0 + w, y0 + h))
    return Instance(points=points, ranges=tuple(ranges), k=1)


class TestSimilarFat:
    def test_reaches_opt(self):
        rng = np.random.default_rng(73)
        for _ in range(100):
            inst = similar_fat_instance(rng, int(rng.integers(1, 4)), int(rng.integers(1, 4)))
            solution = solve_similar_fat(inst, 1)
            assert solution.value >= brute_force_opt(inst).value
            assert solution.exposed == exposed_points(inst, solution.deleted)

    def test_explicit_multiplier(self, i1):
        assert solve_similar_fat(i1, 1, multiplier=4).value >= 2

    def test_k_zero(self, i1):
        assert solve_similar_fat(i1, 0).value == 1
