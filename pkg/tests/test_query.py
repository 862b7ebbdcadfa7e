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

"""Test loading of queries and their resolution against the graph."""

import json
from pathlib import Path

import pytest

from lego.graphrag.exceptions import QueryParseError
from lego.graphrag.graph import Graph
from lego.graphrag.query import load_queries
from lego.graphrag.query import parse_query
from lego.graphrag.query import Query

from .base import GraphRAGTestCase


class TestQuery(GraphRAGTestCase):
    """Test query records and their label resolution."""

    def test_resolved(self, toy_graph: Graph, toy_query: Query) -> None:
        """Test a query with all labels present in the graph."""
        assert toy_query.id == "q1"
        assert toy_query.text == self.TOY_QUESTION
        assert toy_query.topic_entities == {self.entity(toy_graph, "Relational Model")}
        assert toy_query.answers == {self.entity(toy_graph, "Edgar F. Codd")}
        assert toy_query.has_answers
        assert not toy_query.skipped
        assert toy_query.dropped_answers == 0

    def test_dropped_answer(self, toy_graph: Graph) -> None:
        """Test answer labels missing in the graph are dropped and counted."""
        query = self.load_toy_queries(toy_graph)["q3"]
        assert query.answers == {self.entity(toy_graph, "Jim Gray")}
        assert query.dropped_answers == 1
        assert not query.skipped

    def test_skipped(self, toy_graph: Graph) -> None:
        """Test a query without any resolvable topic entity is skipped."""
        query = self.load_toy_queries(toy_graph)["q4"]
        assert query.skipped
        assert query.skip_reason
        assert query.topic_entities == frozenset()
        assert query.dropped_topic_entities == 1
        assert query.dropped_answers == 1

    def test_empty_answers(self, toy_graph: Graph) -> None:
        """Test a query with no ground truth is kept but has no answers."""
        query = self.load_toy_queries(toy_graph)["q5"]
        assert not query.skipped
        assert not query.has_answers
        assert query.dropped_answers == 0

    def test_order_kept(self, toy_graph: Graph) -> None:
        """Test queries are loaded in file order."""
        queries = load_queries(str(self.data_dir / "toy" / "queries.jsonl"), toy_graph)
        assert [query.id for query in queries] == ["q1", "q2", "q3", "q4", "q5"]

    def test_partial_topic(self, toy_graph: Graph) -> None:
        """Test unresolvable topic entities are ignored when another one resolves."""
        query = parse_query(
            {"id": "x", "question": "?", "topic_entities": ["PostgreSQL", "Ingres"], "answers": []}, toy_graph
        )
        assert query.topic_entities == {self.entity(toy_graph, "PostgreSQL")}
        assert query.dropped_topic_entities == 1
        assert not query.skipped

    def test_to_dict(self, toy_graph: Graph, toy_query: Query) -> None:
        """Test conversion of a query back to labels."""
        assert toy_query.to_dict(toy_graph) == {
            "id": "q1",
            "question": self.TOY_QUESTION,
            "topic_entities": ["Relational Model"],
            "answers": ["Edgar F. Codd"],
            "skipped": False,
            "skip_reason": None,
            "dropped_answers": 0,
        }

    @pytest.mark.parametrize(
        "bad_line",
        [
            "{not json",
            json.dumps({"id": "q", "question": "?", "topic_entities": []}),
            json.dumps({"id": "", "question": "?", "topic_entities": [], "answers": []}),
            json.dumps({"id": "q", "question": "?", "topic_entities": "PostgreSQL", "answers": []}),
            json.dumps(["q", "?"]),
        ],
    )
    def test_malformed(self, toy_graph: Graph, tmp_path: Path, bad_line: str) -> None:
        """Test malformed records are reported with their line number."""
        good_line = json.dumps({"id": "q", "question": "?", "topic_entities": ["PostgreSQL"], "answers": []})
        queries_file = tmp_path / "queries.jsonl"
        queries_file.write_text(f"{good_line}\n\n{bad_line}\n")

        with pytest.raises(QueryParseError) as exc:
            load_queries(str(queries_file), toy_graph)

        assert exc.value.line == 3

    def test_invalid_utf8(self, toy_graph: Graph, tmp_path: Path) -> None:
        """Test undecodable records are reported as malformed."""
        good_line = json.dumps({"id": "q", "question": "?", "topic_entities": ["PostgreSQL"], "answers": []})
        queries_file = tmp_path / "queries.jsonl"
        queries_file.write_bytes(good_line.encode("utf-8") + b'\n{"id": "\xff"}\n')

        with pytest.raises(QueryParseError) as exc:
            load_queries(str(queries_file), toy_graph)

        assert exc.value.line == 2
