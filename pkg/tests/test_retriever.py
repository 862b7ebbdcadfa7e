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

"""Test running retrieval instances over query sets."""

import json
import os
import time
from typing import Any
from typing import Dict

import numpy as np
import pytest

from lego.graphrag.beam import Beam
from lego.graphrag.exceptions import PathFilterError
from lego.graphrag.filters import ShortestPathFilter
from lego.graphrag.graph import Graph
from lego.graphrag.pipeline_builder import PipelineBuilder
from lego.graphrag.query import Query
from lego.graphrag.retriever import dump_paths
from lego.graphrag.retriever import path_dump_records
from lego.graphrag.retriever import Retriever
from lego.graphrag.retriever import run_instance

from .base import GraphRAGTestCase


def _without_timing(report: Dict[str, Any]) -> Dict[str, Any]:
    report = dict(report)
    report.pop("timing")
    report.pop("workers")
    report["results"] = [
        {key: value for key, value in result.items() if key != "timing"} for result in report["results"]
    ]
    return report


@pytest.fixture(autouse=True)
def _no_endpoints(monkeypatch) -> None:
    """Make sure remote scorers of built-in instances are stubbed."""
    for prefix in ("EMBEDDING", "EMBEDDING_FT", "RERANK", "LLM", "LLM_FT"):
        monkeypatch.delenv(f"LEGO_GRAPHRAG_{prefix}_ENDPOINT", raising=False)


class TestRetriever(GraphRAGTestCase):
    """Test retrieval of query sets."""

    def test_relational_model(self, toy_graph, toy_queries) -> None:
        """Test the default instance retrieves the path connecting the topic entity to the answer."""
        report = run_instance(toy_graph, [toy_queries["q1"]], PipelineBuilder.from_preset(0), workers=1)
        (result,) = report.results
        assert result.completed
        assert result.subgraph_entities == 7
        assert result.metrics["refined"][1] is True
        assert result.metrics["subgraph"][0].precision == pytest.approx(1 / 7)

        rendered = [path["text"] for path in path_dump_records(report, toy_graph)[0]["paths"]]
        assert self.TOY_PATH_TEXT in rendered
        assert all(text.startswith("Relational Model") for text in rendered)

    def test_report(self, toy_graph, toy_queries) -> None:
        """Test outcome of each toy query is reported."""
        report = run_instance(toy_graph, list(toy_queries.values()), PipelineBuilder.from_preset(0), workers=2)
        assert report.counts() == {"queries": 5, "evaluated": 3, "skipped": 1, "failed": 0, "empty_answers": 1}
        assert report.metrics()["refined"].hit_ratio == 1.0
        assert report.instance_id == 0
        assert report.seed == 0

        by_id = {result.query_id: result for result in report.results}
        assert by_id["q4"].skipped
        assert not by_id["q5"].evaluated
        assert any("not in the graph" in warning for warning in by_id["q3"].warnings)
        assert by_id["q2"].metrics["refined"][1] is True

    def test_deterministic(self, toy_graph, toy_queries) -> None:
        """Test runs with the same seed agree on everything but timing, regardless of the number of workers."""
        queries = list(toy_queries.values())
        first = run_instance(toy_graph, queries, PipelineBuilder.from_preset(0, seed=3), workers=1)
        second = run_instance(toy_graph, queries, PipelineBuilder.from_preset(0, seed=3), workers=4)
        assert _without_timing(first.to_dict()) == _without_timing(second.to_dict())

    @pytest.mark.parametrize("instance_id", list(range(21)))
    def test_presets(self, toy_graph, toy_queries, instance_id: int) -> None:
        """Test each built-in instance runs over toy queries with stubbed scorers."""
        instance = PipelineBuilder.from_preset(instance_id)
        report = run_instance(toy_graph, list(toy_queries.values()), instance, workers=2)
        counts = report.counts()
        assert counts["queries"] == 5
        assert counts["failed"] == 0
        assert counts["skipped"] == 1
        for result in report.results:
            if result.completed:
                assert result.paths_after <= result.paths_before
                assert all(path.source in toy_queries[result.query_id].topic_entities for path in result.final_paths)

        json.dumps(report.to_dict())

    def test_error_isolated(self, toy_graph, toy_queries, monkeypatch) -> None:
        """Test failure of one query does not affect the others."""
        original_run = ShortestPathFilter.run

        def run(self, context, subgraph):
            if context.query.id == "q2":
                raise PathFilterError("path filtering failed", hop=1)

            return original_run(self, context, subgraph)

        monkeypatch.setattr(ShortestPathFilter, "run", run)
        report = run_instance(toy_graph, list(toy_queries.values()), PipelineBuilder.from_preset(0), workers=2)

        by_id = {result.query_id: result for result in report.results}
        assert by_id["q2"].error["type"] == "PathFilterError"
        assert by_id["q2"].final_paths.paths == ()
        assert by_id["q1"].completed
        assert by_id["q3"].completed
        assert report.counts()["failed"] == 1
        assert report.counts()["evaluated"] == 2

    def test_no_queries(self, toy_graph) -> None:
        """Test running no queries reports zeros."""
        report = run_instance(toy_graph, [], PipelineBuilder.from_preset(0), workers=1)
        assert report.counts()["queries"] == 0
        assert report.metrics()["refined"].query_count == 0

    def test_last_beam(self, toy_graph, toy_queries) -> None:
        """Test beam of beam search is kept for plotting."""
        retriever = Retriever(graph=toy_graph, instance=PipelineBuilder.from_preset(9), workers=1)
        assert retriever.last_beam is None
        retriever.run(list(toy_queries.values()))
        assert isinstance(retriever.last_beam, Beam)

    def test_no_beam(self, toy_graph, toy_queries) -> None:
        """Test no beam is kept when beam search did not run."""
        retriever = Retriever(graph=toy_graph, instance=PipelineBuilder.from_preset(0), workers=1)
        retriever.run(list(toy_queries.values()))
        assert retriever.last_beam is None

    def test_invalid_workers(self, toy_graph) -> None:
        """Test the worker pool has to have a positive size."""
        with pytest.raises(ValueError):
            Retriever(graph=toy_graph, instance=PipelineBuilder.from_preset(0), workers=0)

    def test_workers_from_environment(self, toy_graph, monkeypatch) -> None:
        """Test default number of workers is taken from the environment."""
        monkeypatch.setenv("LEGO_GRAPHRAG_WORKERS", "3")
        assert Retriever(graph=toy_graph, instance=PipelineBuilder.from_preset(0)).workers == 3

    def test_dump_paths(self, toy_graph, toy_queries, tmp_path) -> None:
        """Test final paths are written per query as JSON lines."""
        queries = [toy_queries["q1"], toy_queries["q4"]]
        report = run_instance(toy_graph, queries, PipelineBuilder.from_preset(0), workers=1)
        output = tmp_path / "paths.jsonl"
        dump_paths(report, toy_graph, str(output))

        records = [json.loads(line) for line in output.read_text().splitlines()]
        assert [record["query_id"] for record in records] == ["q1", "q4"]
        assert records[1]["paths"] == []
        assert any(path["text"] == self.TOY_PATH_TEXT for path in records[0]["paths"])


@pytest.mark.skipif(
    not int(os.getenv("LEGO_GRAPHRAG_THROUGHPUT_TEST", 0)),
    reason="Throughput depends on the host, set LEGO_GRAPHRAG_THROUGHPUT_TEST=1 to run",
)
class TestRetrieverThroughput(GraphRAGTestCase):
    """Test retrieval keeps up with a graph of a realistic size."""

    TRIPLES = 100000
    ENTITIES = 20000
    RELATIONS = 50
    QUERIES = 100

    def test_default_instance(self) -> None:
        """Test the default instance answers a hundred queries on a 100k triples graph within a minute."""
        rng = np.random.default_rng(0)
        drawn = np.stack(
            [
                rng.integers(0, self.ENTITIES, 2 * self.TRIPLES),
                rng.integers(0, self.RELATIONS, 2 * self.TRIPLES),
                rng.integers(0, self.ENTITIES, 2 * self.TRIPLES),
            ],
            axis=1,
        )
        triples = np.unique(drawn, axis=0)[: self.TRIPLES]
        graph = Graph.from_lines(f"e{s}\tr{r}\te{t}\n" for s, r, t in triples)
        assert len(graph.triples) == self.TRIPLES

        queries = []
        for i, index in enumerate(rng.choice(self.TRIPLES, self.QUERIES, replace=False)):
            source, _, target = triples[index]
            queries.append(
                Query(
                    f"q{i}",
                    f"What is related to e{source}?",
                    {self.entity(graph, f"e{source}")},
                    {self.entity(graph, f"e{target}")},
                )
            )

        start = time.perf_counter()
        report = Retriever(graph=graph, instance=PipelineBuilder.from_preset(0), workers=8).run(queries)
        elapsed = time.perf_counter() - start

        counts = report.counts()
        assert counts["queries"] == self.QUERIES
        assert counts["failed"] == 0
        assert elapsed < 60.0
