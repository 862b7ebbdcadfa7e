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

"""Dataset snapshots - a validated graph with queries resolved against it."""

import json
import logging
import os
from typing import Any
from typing import Dict
from typing import List

import attr

from .graph import dump_triples
from .graph import Graph
from .graph import load_triples
from .query import load_queries
from .query import Query

_LOGGER = logging.getLogger(__name__)

TRIPLES_FILE = "triples.tsv"
QUERIES_FILE = "queries.jsonl"
STATS_FILE = "stats.json"


@attr.s(slots=True)
class Dataset:
    """A knowledge graph and queries over it."""

    graph = attr.ib(type=Graph, kw_only=True)
    queries = attr.ib(type=List[Query], kw_only=True, factory=list)

    @classmethod
    def from_files(cls, triples_path: str, queries_path: str) -> "Dataset":
        """Load and validate triples and queries."""
        graph = load_triples(triples_path)
        return cls(graph=graph, queries=load_queries(queries_path, graph))

    @classmethod
    def load(cls, data_dir: str) -> "Dataset":
        """Load a snapshot written by dump."""
        return cls.from_files(os.path.join(data_dir, TRIPLES_FILE), os.path.join(data_dir, QUERIES_FILE))

    def stats(self) -> Dict[str, Any]:
        """Compute statistics of the dataset."""
        queries = self.queries
        resolved = [query for query in queries if not query.skipped]
        return {
            "entities": self.graph.entity_count,
            "relations": self.graph.relation_count,
            "triples": len(self.graph.triples),
            "queries": len(queries),
            "skipped_queries": len(queries) - len(resolved),
            "empty_answer_queries": sum(1 for query in queries if not query.has_answers),
            "dropped_answer_labels": sum(query.dropped_answers for query in queries),
            "mean_topic_entities": (
                sum(len(query.topic_entities) for query in resolved) / len(resolved) if resolved else 0.0
            ),
            "mean_answers": sum(len(query.answers) for query in resolved) / len(resolved) if resolved else 0.0,
        }

    def dump(self, data_dir: str) -> Dict[str, Any]:
        """Write the snapshot into the directory, return its statistics."""
        os.makedirs(data_dir, exist_ok=True)

        dump_triples(self.graph, os.path.join(data_dir, TRIPLES_FILE))

        with open(os.path.join(data_dir, QUERIES_FILE), "w", encoding="utf-8") as queries_file:
            for query in self.queries:
                record = query.to_dict(self.graph)
                queries_file.write(
                    json.dumps(
                        {
                            "id": record["id"],
                            "question": record["question"],
                            "topic_entities": record["topic_entities"],
                            "answers": record["answers"],
                        },
                        sort_keys=True,
                    )
                    + "\n"
                )

        stats = self.stats()
        with open(os.path.join(data_dir, STATS_FILE), "w", encoding="utf-8") as stats_file:
            json.dump(stats, stats_file, indent=2, sort_keys=True)
            stats_file.write("\n")

        _LOGGER.info(
            "Dataset snapshot written to %r: %d triples, %d queries (%d skipped)",
            data_dir,
            stats["triples"],
            stats["queries"],
            stats["skipped_queries"],
        )
        return stats
