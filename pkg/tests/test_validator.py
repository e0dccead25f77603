import pytest

from gdpart_core.errors import InfeasiblePartitionError
from gdpart_core.validator import (
    BALANCE_WINDOW,
    HEAVY_VERTEX,
    PART_COUNT,
    PartitionFeasibilityValidator,
)
from gdpart_core.weights import WeightSet


def unit(n):
    return WeightSet([[1.0] * n], labels=('unit',))


class TestPartitionFeasibilityValidator:

    def test_even_split(self):
        report = PartitionFeasibilityValidator(unit(4), 2, 0.0).validate()
        assert report.feasible
        assert report.violations == []

    def test_odd_split_without_slack(self):
        report = PartitionFeasibilityValidator(unit(3), 2, 0.0).validate()
        assert not report.feasible
        violation = report.violations[0]
        assert violation.check == BALANCE_WINDOW
        assert violation.dimension == 'unit'
        assert violation.value == 2.0
        assert violation.bound == (1.5, 1.5)

    def test_odd_split_with_slack(self):
        # Window [1.2, 1.8] for a total of 3 over 2 parts still excludes every integer
        assert not PartitionFeasibilityValidator(unit(3), 2, 0.2).validate().feasible
        assert PartitionFeasibilityValidator(unit(3), 2, 0.4).validate().feasible

    def test_fractional_rows_skip_window_check(self):
        ws = WeightSet([[0.5, 0.7, 0.3]])
        assert PartitionFeasibilityValidator(ws, 2, 0.0).validate().feasible

    def test_more_parts_than_vertices(self):
        report = PartitionFeasibilityValidator(unit(3), 4, 0.1).validate()
        assert [v.check for v in report.violations] == [PART_COUNT]
        assert report.violations[0].value == 4.0
        assert report.violations[0].bound == (1.0, 3.0)
        assert report.blocked_dimensions() == []

    def test_heavy_vertex(self):
        ws = WeightSet([[10.0, 1.0, 1.0, 1.0]], labels=('load',))
        report = PartitionFeasibilityValidator(ws, 2, 0.05).validate()
        violation = report.violations[0]
        assert violation.check == HEAVY_VERTEX
        assert violation.vertex_index == 0
        assert violation.value == 10.0
        assert violation.bound[1] == pytest.approx(1.05 * 13 / 2)
        assert report.blocked_dimensions() == ['load']

    def test_violations_name_each_row(self):
        ws = WeightSet([[1.0, 1.0, 1.0], [2.0, 2.0, 2.0], [0.5, 0.6, 0.7]], labels=('unit', 'double', 'frac'))
        report = PartitionFeasibilityValidator(ws, 2, 0.0).validate()
        assert report.blocked_dimensions() == ['unit', 'double']

    def test_single_part_always_valid(self):
        assert PartitionFeasibilityValidator(unit(3), 1, 0.0).validate().feasible

    def test_raise_carries_report(self):
        with pytest.raises(InfeasiblePartitionError) as info:
            PartitionFeasibilityValidator(unit(5), 2, 0.0).validate_or_raise()
        assert info.value.path == 'root'
        assert not info.value.report.feasible
        assert info.value.report.k == 2

    def test_to_dict(self):
        payload = PartitionFeasibilityValidator(unit(3), 2, 0.0).validate().to_dict()
        assert payload['feasible'] is False
        assert payload['n'] == 3
        assert payload['epsilon'] == 0.0
        assert payload['violations'][0]['check'] == BALANCE_WINDOW
        assert payload['violations'][0]['bound'] == [1.5, 1.5]
