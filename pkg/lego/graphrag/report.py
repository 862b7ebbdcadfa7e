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

"""A class for retrieval run report - output of a retrieval run."""

import csv
import io
import json
import logging
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import attr
import matplotlib
import matplotlib.pyplot as plt

from .enums import ReportFormat
from .metrics import SetMetrics
from .metrics import StageMetrics
from .path import PathSet

_LOGGER = logging.getLogger(__name__)

STAGES = ("subgraph", "paths", "refined")
TIMING_COLUMNS = ("SETime", "PFTime", "PRTime", "AllTime")


@attr.s(slots=True, frozen=True)
class StageTiming:
    """Wall-clock seconds spent in each stage of one query, or their means over a run."""

    se_seconds = attr.ib(type=float, default=0.0)
    pf_seconds = attr.ib(type=float, default=0.0)
    pr_seconds = attr.ib(type=float, default=0.0)

    @property
    def total_seconds(self) -> float:
        """Get time spent in all stages."""
        return self.se_seconds + self.pf_seconds + self.pr_seconds

    def as_row(self) -> Tuple[float, float, float, float]:
        """Get timing in the column order of comparison tables."""
        return self.se_seconds, self.pf_seconds, self.pr_seconds, self.total_seconds

    def to_dict(self) -> Dict[str, float]:
        """Convert timing to a dictionary."""
        return {
            "se_seconds": self.se_seconds,
            "pf_seconds": self.pf_seconds,
            "pr_seconds": self.pr_seconds,
            "total_seconds": self.total_seconds,
        }

    @classmethod
    def from_dict(cls, dict_: Dict[str, Any]) -> "StageTiming":
        """Restore timing from a dictionary."""
        return cls(dict_["se_seconds"], dict_["pf_seconds"], dict_["pr_seconds"])

    @classmethod
    def mean(cls, timings: Sequence["StageTiming"]) -> "StageTiming":
        """Average timings, zeros for no timing."""
        if not timings:
            return cls()

        count = len(timings)
        return cls(
            sum(t.se_seconds for t in timings) / count,
            sum(t.pf_seconds for t in timings) / count,
            sum(t.pr_seconds for t in timings) / count,
        )


@attr.s(slots=True)
class QueryResult:
    """Outcome of a single query going through the pipeline."""

    query_id = attr.ib(type=str)
    has_answers = attr.ib(type=bool, kw_only=True, default=True)
    skipped = attr.ib(type=bool, kw_only=True, default=False)
    error = attr.ib(type=Optional[Dict[str, Any]], kw_only=True, default=None)
    subgraph_entities = attr.ib(type=int, kw_only=True, default=0)
    subgraph_triples = attr.ib(type=int, kw_only=True, default=0)
    paths_before = attr.ib(type=int, kw_only=True, default=0)
    paths_truncated = attr.ib(type=bool, kw_only=True, default=False)
    paths_digest = attr.ib(type=Optional[str], kw_only=True, default=None)
    final_paths = attr.ib(type=PathSet, kw_only=True, factory=PathSet)
    metrics = attr.ib(type=Dict[str, Tuple[SetMetrics, bool]], kw_only=True, factory=dict)
    timing = attr.ib(type=StageTiming, kw_only=True, factory=StageTiming)
    warnings = attr.ib(type=List[str], kw_only=True, factory=list)

    @property
    def paths_after(self) -> int:
        """Get number of paths kept by refinement."""
        return len(self.final_paths)

    @property
    def completed(self) -> bool:
        """Check the query went through all stages."""
        return not self.skipped and self.error is None

    @property
    def evaluated(self) -> bool:
        """Check the query counts towards aggregated metrics."""
        return self.completed and self.has_answers

    def to_dict(self) -> Dict[str, Any]:
        """Convert the result to a dictionary."""
        return {
            "query_id": self.query_id,
            "has_answers": self.has_answers,
            "skipped": self.skipped,
            "error": self.error,
            "subgraph_entities": self.subgraph_entities,
            "subgraph_triples": self.subgraph_triples,
            "paths_before": self.paths_before,
            "paths_after": self.paths_after,
            "paths_truncated": self.paths_truncated,
            "paths_digest": self.paths_digest,
            "final_paths": self.final_paths.to_dict(),
            "metrics": {
                stage: {**metrics.to_dict(), "hit": hit} for stage, (metrics, hit) in sorted(self.metrics.items())
            },
            "timing": self.timing.to_dict(),
            "warnings": self.warnings,
        }

    @classmethod
    def from_dict(cls, dict_: Dict[str, Any]) -> "QueryResult":
        """Restore the result from a dictionary."""
        return cls(
            dict_["query_id"],
            has_answers=dict_["has_answers"],
            skipped=dict_["skipped"],
            error=dict_["error"],
            subgraph_entities=dict_["subgraph_entities"],
            subgraph_triples=dict_["subgraph_triples"],
            paths_before=dict_["paths_before"],
            paths_truncated=dict_["paths_truncated"],
            paths_digest=dict_.get("paths_digest"),
            final_paths=PathSet.from_dict(dict_["final_paths"]),
            metrics={
                stage: (SetMetrics.from_dict(entry), entry["hit"]) for stage, entry in dict_["metrics"].items()
            },
            timing=StageTiming.from_dict(dict_["timing"]),
            warnings=list(dict_["warnings"]),
        )


@attr.s(slots=True)
class RunReport:
    """A report stating output of a retrieval run."""

    instance = attr.ib(type=Dict[str, Any], kw_only=True)
    seed = attr.ib(type=int, kw_only=True)
    workers = attr.ib(type=int, kw_only=True, default=1)
    data_dir = attr.ib(type=Optional[str], kw_only=True, default=None)
    version = attr.ib(type=Optional[str], kw_only=True, default=None)
    scorer_failures = attr.ib(type=Dict[str, int], kw_only=True, factory=dict)
    _results = attr.ib(type=List[QueryResult], kw_only=True, factory=list)

    @property
    def results(self) -> List[QueryResult]:
        """Get per query results ordered by query id."""
        return sorted(self._results, key=lambda result: result.query_id)

    def add_result(self, result: QueryResult) -> None:
        """Add result of a query to the report."""
        self._results.append(result)

    @property
    def instance_id(self) -> int:
        """Get id of the instance run."""
        return int(self.instance["id"])

    @property
    def instance_name(self) -> str:
        """Get name of the instance run."""
        return str(self.instance["name"])

    def counts(self) -> Dict[str, int]:
        """Get number of queries by their outcome."""
        return {
            "queries": len(self._results),
            "evaluated": sum(1 for result in self._results if result.evaluated),
            "skipped": sum(1 for result in self._results if result.skipped),
            "failed": sum(1 for result in self._results if result.error is not None),
            "empty_answers": sum(1 for result in self._results if not result.skipped and not result.has_answers),
        }

    def metrics(self) -> Dict[str, StageMetrics]:
        """Aggregate metrics of evaluated queries per pipeline checkpoint."""
        evaluated = [result for result in self.results if result.evaluated]
        return {stage: StageMetrics.aggregate([result.metrics[stage] for result in evaluated]) for stage in STAGES}

    def timing(self) -> StageTiming:
        """Get mean stage timing over completed queries."""
        return StageTiming.mean([result.timing for result in self.results if result.completed])

    def to_dict(self) -> Dict[str, Any]:
        """Convert run report to a dict representation."""
        return {
            "version": self.version,
            "instance": self.instance,
            "seed": self.seed,
            "workers": self.workers,
            "data_dir": self.data_dir,
            "counts": self.counts(),
            "metrics": {stage: metrics.to_dict() for stage, metrics in self.metrics().items()},
            "timing": self.timing().to_dict(),
            "scorer_failures": self.scorer_failures,
            "results": [result.to_dict() for result in self.results],
        }

    @classmethod
    def from_dict(cls, dict_: Dict[str, Any]) -> "RunReport":
        """Restore the report, aggregates are recomputed from per query results."""
        return cls(
            instance=dict_["instance"],
            seed=dict_["seed"],
            workers=dict_.get("workers", 1),
            data_dir=dict_.get("data_dir"),
            version=dict_.get("version"),
            scorer_failures=dict_.get("scorer_failures") or {},
            results=[QueryResult.from_dict(result) for result in dict_["results"]],
        )

    def to_json(self) -> str:
        """Serialize the report to JSON."""
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def load(cls, path: str) -> "RunReport":
        """Load report from a JSON file."""
        with open(path, "r", encoding="utf-8") as report_file:
            return cls.from_dict(json.load(report_file))

    def dump(self, path: str) -> None:
        """Write the report as JSON."""
        with open(path, "w", encoding="utf-8") as report_file:
            report_file.write(self.to_json())


def format_seconds(value: float) -> str:
    """Format seconds the way comparison tables state them."""
    if value < 0.01:
        return "<0.01"

    return f"{value:.2f}"


def _render(header: Sequence[str], rows: Sequence[Sequence[str]], output_format: ReportFormat) -> str:
    if output_format == ReportFormat.CSV:
        stream = io.StringIO()
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return stream.getvalue()

    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines.extend("| " + " | ".join(row) + " |" for row in rows)
    return "\n".join(lines) + "\n"


def comparison_table(reports: Sequence[RunReport], output_format: ReportFormat = ReportFormat.MD) -> str:
    """Render mean stage timing and refined path metrics of runs side by side."""
    header = ["Instance", *TIMING_COLUMNS, "HR", "F1"]
    rows = []
    for report in reports:
        refined = report.metrics()["refined"]
        rows.append(
            [
                f"({report.instance_id}) {report.instance_name}",
                *(format_seconds(value) for value in report.timing().as_row()),
                f"{refined.hit_ratio:.4f}",
                f"{refined.f1:.4f}",
            ]
        )

    return _render(header, rows, output_format)


def evaluation_table(
    report: RunReport,
    generation: Optional[Dict[str, float]] = None,
    output_format: ReportFormat = ReportFormat.MD,
) -> str:
    """Render metrics of each checkpoint of a run, with generation scores when available."""
    header = ["Stage", "Precision", "Recall", "F1", "HR"]
    rows = []
    for stage, metrics in report.metrics().items():
        rows.append(
            [
                stage,
                f"{metrics.precision:.4f}",
                f"{metrics.recall:.4f}",
                f"{metrics.f1:.4f}",
                f"{metrics.hit_ratio:.4f}",
            ]
        )

    if generation is not None:
        rows.append(["generation", "", "", f"{generation['f1']:.4f}", f"{generation['hit_at_1']:.4f}"])

    timing = report.timing()
    result = _render(header, rows, output_format)
    result += "\n" + _render(TIMING_COLUMNS, [[format_seconds(value) for value in timing.as_row()]], output_format)
    return result


def plot_timing(reports: Sequence[RunReport]) -> matplotlib.figure.Figure:
    """Plot stacked mean stage timing of runs."""
    labels = [str(report.instance_id) for report in reports]
    timings = [report.timing() for report in reports]
    se = [timing.se_seconds for timing in timings]
    pf = [timing.pf_seconds for timing in timings]
    pr = [timing.pr_seconds for timing in timings]

    fig, ax = plt.subplots()
    ax.bar(labels, se, label="SETime")
    ax.bar(labels, pf, bottom=se, label="PFTime")
    ax.bar(labels, pr, bottom=[s + p for s, p in zip(se, pf)], label="PRTime")
    ax.set_xlabel("instance")
    ax.set_ylabel("seconds per query")
    ax.legend()
    return fig
