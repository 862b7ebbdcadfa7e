#!/usr/bin/env python3
# lego-graphrag
# Copyright(C) 2024 lego-graphrag authors
#
# This program is free software: you can redistribute it and / or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program. If not, see <http://www.gnu.org/licenses/>.

"""Test retrieval run reports."""

import json

import matplotlib
import pytest

from lego.graphrag.enums import ReportFormat
from lego.graphrag.metrics import SetMetrics
from lego.graphrag.path import PathSet
from lego.graphrag.report import comparison_table
from lego.graphrag.report import evaluation_table
from lego.graphrag.report import format_seconds
from lego.graphrag.report import plot_timing
from lego.graphrag.report import QueryResult
from lego.graphrag.report import RunReport
from lego.graphrag.report import StageTiming

from .base import GraphRAGTestCase

_INSTANCE = {"id": 0, "name": "PPR -> SPF -> Random"}


def _result(query_id: str, hit: bool, **kwargs) -> QueryResult:
    metrics = SetMetrics(1.0, 1.0) if hit else SetMetrics(0.0, 0.0)
    return QueryResult(
        query_id,
        metrics={"subgraph": (metrics, hit), "paths": (metrics, hit), "refined": (metrics, hit)},
        timing=StageTiming(0.5, 0.25, 0.25),
        **kwargs,
    )


@pytest.fixture
def report() -> RunReport:
    """Create a fixture for a report of four queries with all kinds of outcomes."""
    report = RunReport(instance=dict(_INSTANCE), seed=42, workers=2, version="0.1.0")
    report.add_result(_result("q2", False))
    report.add_result(_result("q1", True))
    report.add_result(QueryResult("q3", has_answers=False, skipped=True, warnings=["skipped"]))
    report.add_result(QueryResult("q4", error={"type": "ScorerError", "message": "boom"}))
    return report


class TestStageTiming(GraphRAGTestCase):
    """Test stage timing."""

    def test_total(self) -> None:
        """Test total time sums all stages."""
        timing = StageTiming(1.0, 2.0, 3.0)
        assert timing.total_seconds == 6.0
        assert timing.as_row() == (1.0, 2.0, 3.0, 6.0)
        assert timing.to_dict()["total_seconds"] == 6.0
        assert StageTiming.from_dict(timing.to_dict()) == timing

    def test_mean(self) -> None:
        """Test averaging of timings."""
        assert StageTiming.mean([StageTiming(1.0, 0.0, 2.0), StageTiming(3.0, 2.0, 0.0)]) == StageTiming(2.0, 1.0, 1.0)
        assert StageTiming.mean([]) == StageTiming()

    @pytest.mark.parametrize("value,expected", [(0.0, "<0.01"), (0.009, "<0.01"), (0.01, "0.01"), (1.234, "1.23")])
    def test_format_seconds(self, value: float, expected: str) -> None:
        """Test seconds are formatted with a floor."""
        assert format_seconds(value) == expected


class TestQueryResult(GraphRAGTestCase):
    """Test per query results."""

    def test_outcomes(self) -> None:
        """Test completed and evaluated flags."""
        assert QueryResult("q").evaluated is True
        assert QueryResult("q", has_answers=False).completed is True
        assert QueryResult("q", has_answers=False).evaluated is False
        assert QueryResult("q", skipped=True).completed is False
        assert QueryResult("q", error={"type": "X", "message": ""}).evaluated is False

    def test_from_dict(self, toy_path) -> None:
        """Test a result is restored from its dictionary."""
        result = _result("q1", True, final_paths=PathSet.canonical([toy_path]), paths_before=4, warnings=["w"])
        restored = QueryResult.from_dict(json.loads(json.dumps(result.to_dict())))
        assert restored.to_dict() == result.to_dict()
        assert restored.paths_after == 1
        assert restored.metrics["refined"] == (SetMetrics(1.0, 1.0), True)


class TestRunReport(GraphRAGTestCase):
    """Test reports of retrieval runs."""

    def test_results_ordered(self, report: RunReport) -> None:
        """Test results are ordered by query id regardless of completion order."""
        assert [result.query_id for result in report.results] == ["q1", "q2", "q3", "q4"]

    def test_counts(self, report: RunReport) -> None:
        """Test queries are counted by their outcome."""
        assert report.counts() == {"queries": 4, "evaluated": 2, "skipped": 1, "failed": 1, "empty_answers": 0}

    def test_metrics(self, report: RunReport) -> None:
        """Test only evaluated queries count towards aggregates."""
        metrics = report.metrics()
        assert set(metrics) == {"subgraph", "paths", "refined"}
        assert metrics["refined"].hit_ratio == 0.5
        assert metrics["refined"].f1 == 0.5
        assert metrics["refined"].query_count == 2

    def test_timing(self, report: RunReport) -> None:
        """Test mean timing covers completed queries only."""
        assert report.timing() == StageTiming(0.5, 0.25, 0.25)

    def test_instance(self, report: RunReport) -> None:
        """Test instance accessors."""
        assert report.instance_id == 0
        assert report.instance_name == "PPR -> SPF -> Random"

    def test_dump_load(self, report: RunReport, tmp_path) -> None:
        """Test the report is written as JSON and loaded back."""
        path = str(tmp_path / "report.json")
        report.dump(path)

        with open(path) as report_file:
            content = json.load(report_file)

        assert content["counts"]["queries"] == 4
        assert content["seed"] == 42
        assert [result["query_id"] for result in content["results"]] == ["q1", "q2", "q3", "q4"]

        restored = RunReport.load(path)
        assert restored.to_dict() == report.to_dict()


class TestTables(GraphRAGTestCase):
    """Test rendering of reports."""

    def test_comparison_markdown(self, report: RunReport) -> None:
        """Test the comparison table states timing, hit ratio and F1."""
        table = comparison_table([report])
        lines = table.splitlines()
        assert lines[0] == "| Instance | SETime | PFTime | PRTime | AllTime | HR | F1 |"
        assert lines[2] == "| (0) PPR -> SPF -> Random | 0.50 | 0.25 | 0.25 | 1.00 | 0.5000 | 0.5000 |"

    def test_comparison_csv(self, report: RunReport) -> None:
        """Test the comparison table rendered as CSV."""
        table = comparison_table([report], ReportFormat.CSV)
        assert table.splitlines() == [
            "Instance,SETime,PFTime,PRTime,AllTime,HR,F1",
            "(0) PPR -> SPF -> Random,0.50,0.25,0.25,1.00,0.5000,0.5000",
        ]

    def test_evaluation(self, report: RunReport) -> None:
        """Test the evaluation table lists each checkpoint."""
        table = evaluation_table(report)
        assert "| subgraph | 0.5000 | 0.5000 | 0.5000 | 0.5000 |" in table
        assert "| refined | 0.5000 | 0.5000 | 0.5000 | 0.5000 |" in table
        assert "generation" not in table
        assert "| 0.50 | 0.25 | 0.25 | 1.00 |" in table

    def test_evaluation_generation(self, report: RunReport) -> None:
        """Test generation scores are added when given."""
        table = evaluation_table(report, {"f1": 0.75, "hit_at_1": 1.0})
        assert "| generation |  |  | 0.7500 | 1.0000 |" in table

    def test_plot_timing(self, report: RunReport) -> None:
        """Test plotting of stage timing."""
        figure = plot_timing([report])
        assert isinstance(figure, matplotlib.figure.Figure)
