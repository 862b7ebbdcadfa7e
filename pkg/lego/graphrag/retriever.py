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

"""Run retrieval instances over query sets."""

import json
import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

import attr

from .beam import Beam
from .context import QueryContext
from .exceptions import GraphRAGException
from .graph import Graph
from .metrics import evaluate_entities
from .metrics import evaluate_paths
from .pipeline_builder import InstanceConfig
from .query import Query
from .render import render_path
from .report import QueryResult
from .report import RunReport
from .report import StageTiming
from .utils import derive_seed

_LOGGER = logging.getLogger(__name__)


def default_workers() -> int:
    """Get default size of the worker pool."""
    return int(os.getenv("LEGO_GRAPHRAG_WORKERS", 0)) or os.cpu_count() or 1


def _error_to_dict(exc: Exception) -> Dict[str, Any]:
    if isinstance(exc, GraphRAGException):
        return exc.to_dict()

    return {"type": exc.__class__.__name__, "message": str(exc)}


@attr.s(slots=True)
class Retriever:
    """Run one retrieval instance over queries, queries are isolated from each other's failures."""

    graph = attr.ib(type=Graph, kw_only=True)
    instance = attr.ib(type=InstanceConfig, kw_only=True)
    workers = attr.ib(type=int, kw_only=True, factory=default_workers)
    data_dir = attr.ib(type=Optional[str], kw_only=True, default=None)

    _last_beam = attr.ib(type=Optional[Tuple[int, Beam]], init=False, default=None)
    _beam_lock = attr.ib(type=Any, init=False, factory=threading.Lock)

    @workers.validator
    def _validate_workers(self, _: Any, value: int) -> None:
        if value < 1:
            raise ValueError(f"Number of workers has to be positive, got {value!r}")

    @property
    def last_beam(self) -> Optional[Beam]:
        """Get beam of the last query, in input order, that ran beam search."""
        return self._last_beam[1] if self._last_beam is not None else None

    def _keep_beam(self, index: int, beam: Optional[Beam]) -> None:
        if beam is None:
            return

        with self._beam_lock:
            if self._last_beam is None or self._last_beam[0] < index:
                self._last_beam = (index, beam)

    def _context(self, query: Query) -> QueryContext:
        context = QueryContext(graph=self.graph, query=query, seed=derive_seed(self.instance.seed, query.id))
        if query.dropped_topic_entities:
            context.warn("topic-dropped", "%d topic entities are not in the graph", query.dropped_topic_entities)

        if query.dropped_answers:
            context.warn("answers-dropped", "%d answer labels are not in the graph", query.dropped_answers)

        if not query.has_answers:
            context.warn("no-answers", "no ground-truth answer, excluded from metrics")

        return context

    def retrieve(self, query: Query, index: int = 0) -> QueryResult:
        """Run all three stages for a single query."""
        if query.skipped:
            return QueryResult(
                query.id, has_answers=query.has_answers, skipped=True, warnings=[query.skip_reason or "skipped"]
            )

        pipeline = self.instance.pipeline
        context = self._context(query)
        result = QueryResult(query.id, has_answers=query.has_answers, warnings=context.warnings)
        timings = [0.0, 0.0, 0.0]

        try:
            start = time.perf_counter()
            subgraph = pipeline.extractor.run(context)
            timings[0] = time.perf_counter() - start
            result.subgraph_entities = subgraph.entity_count
            result.subgraph_triples = len(subgraph.triples)
            result.metrics["subgraph"] = evaluate_entities(subgraph.nodes, query)

            start = time.perf_counter()
            paths = pipeline.path_filter.run(context, subgraph)
            timings[1] = time.perf_counter() - start
            result.paths_before = len(paths)
            result.paths_truncated = paths.truncated
            result.paths_digest = paths.digest()
            result.metrics["paths"] = evaluate_paths(paths, query)

            start = time.perf_counter()
            final_paths = pipeline.refiner.run(context, subgraph, paths)
            timings[2] = time.perf_counter() - start
            result.final_paths = final_paths
            result.metrics["refined"] = evaluate_paths(final_paths, query)
        except Exception as exc:
            _LOGGER.exception("Query %r failed: %s", query.id, str(exc))
            result.error = _error_to_dict(exc)
        finally:
            result.timing = StageTiming(*timings)

        self._keep_beam(index, context.beam)
        return result

    def run(self, queries: Sequence[Query]) -> RunReport:
        """Retrieve all queries in a bounded worker pool."""
        from . import __version__

        _LOGGER.info(
            "Running instance %d (%s) over %d queries with %d workers",
            self.instance.id,
            self.instance.name,
            len(queries),
            self.workers,
        )
        report = RunReport(
            instance=self.instance.to_dict(),
            seed=self.instance.seed,
            workers=self.workers,
            data_dir=self.data_dir,
            version=__version__,
        )

        try:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                for result in executor.map(self.retrieve, queries, range(len(queries))):
                    report.add_result(result)
        finally:
            report.scorer_failures = self.instance.pipeline.scorer_failures()
            self.instance.pipeline.call_post_run()

        counts = report.counts()
        _LOGGER.info(
            "Instance %d done: %d queries, %d skipped, %d failed",
            self.instance.id,
            counts["queries"],
            counts["skipped"],
            counts["failed"],
        )
        return report


def run_instance(
    graph: Graph,
    queries: Sequence[Query],
    cfg: InstanceConfig,
    *,
    workers: Optional[int] = None,
    data_dir: Optional[str] = None,
) -> RunReport:
    """Run the instance over the queries and report per query results with aggregates."""
    retriever = Retriever(graph=graph, instance=cfg, workers=workers or default_workers(), data_dir=data_dir)
    return retriever.run(queries)


def path_dump_records(report: RunReport, graph: Graph) -> List[Dict[str, Any]]:
    """Get per query final paths, rendered and as ids."""
    return [
        {
            "query_id": result.query_id,
            "paths": [{"text": render_path(path, graph), **path.to_dict()} for path in result.final_paths],
        }
        for result in report.results
    ]


def dump_paths(report: RunReport, graph: Graph, path: str) -> None:
    """Write final paths of each query as JSON lines."""
    with open(path, "w", encoding="utf-8") as output:
        for record in path_dump_records(report, graph):
            output.write(json.dumps(record, sort_keys=True) + "\n")


__all__ = ["Retriever", "dump_paths", "path_dump_records", "run_instance"]
