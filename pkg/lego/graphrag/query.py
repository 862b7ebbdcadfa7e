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

"""Questions with their topic entities and ground-truth answers."""

import json
import logging
from typing import Any
from typing import Dict
from typing import FrozenSet
from typing import Iterable
from typing import List
from typing import Optional

import attr
from voluptuous import All
from voluptuous import Invalid
from voluptuous import Length
from voluptuous import Required
from voluptuous import Schema

from .exceptions import QueryParseError
from .graph import Graph

_LOGGER = logging.getLogger(__name__)

QUERY_RECORD_SCHEMA = Schema(
    {
        Required("id"): All(str, Length(min=1)),
        Required("question"): All(str, Length(min=1)),
        Required("topic_entities"): [str],
        Required("answers"): [str],
    }
)


@attr.s(slots=True, frozen=True)
class Query:
    """A question to answer, its topic entities and the ground-truth answer set."""

    id = attr.ib(type=str)
    text = attr.ib(type=str)
    topic_entities = attr.ib(type=FrozenSet[int], converter=frozenset)
    answers = attr.ib(type=FrozenSet[int], converter=frozenset, factory=frozenset)
    # Relation mentions are carried for completeness, no built-in instance seeds on them.
    topic_relations = attr.ib(type=FrozenSet[int], converter=frozenset, factory=frozenset, kw_only=True)
    skipped = attr.ib(type=bool, default=False, kw_only=True)
    skip_reason = attr.ib(type=Optional[str], default=None, kw_only=True)
    dropped_answers = attr.ib(type=int, default=0, kw_only=True)
    dropped_topic_entities = attr.ib(type=int, default=0, kw_only=True)

    @property
    def has_answers(self) -> bool:
        """Check whether the query states any resolvable ground-truth answer."""
        return bool(self.answers)

    def to_dict(self, graph: Graph) -> Dict[str, Any]:
        """Convert the query to its dictionary representation, labels resolved."""
        return {
            "id": self.id,
            "question": self.text,
            "topic_entities": sorted(graph.entity_label(e) for e in self.topic_entities),
            "answers": sorted(graph.entity_label(e) for e in self.answers),
            "skipped": self.skipped,
            "skip_reason": self.skip_reason,
            "dropped_answers": self.dropped_answers,
        }


def _resolve(graph: Graph, labels: Iterable[str]) -> List[Optional[int]]:
    return [graph.entity_id(label) for label in labels]


def parse_query(record: Dict[str, Any], graph: Graph) -> Query:
    """Resolve a validated query record against the graph."""
    topic = _resolve(graph, record["topic_entities"])
    answers = _resolve(graph, record["answers"])
    resolved_topic = {entity for entity in topic if entity is not None}
    resolved_answers = {entity for entity in answers if entity is not None}
    dropped_answers = len(answers) - len([a for a in answers if a is not None])

    if dropped_answers:
        _LOGGER.warning("Query %r: %d answer label(s) not found in the graph, dropped", record["id"], dropped_answers)

    skip_reason = None
    if not resolved_topic:
        skip_reason = "no topic entity resolvable in the graph"
        _LOGGER.warning("Query %r skipped: %s", record["id"], skip_reason)
    elif len(resolved_topic) < len(set(record["topic_entities"])):
        _LOGGER.warning("Query %r: some topic entities are not in the graph, ignoring them", record["id"])

    if not record["answers"] or not resolved_answers:
        _LOGGER.warning("Query %r has no ground-truth answer in the graph", record["id"])

    return Query(
        record["id"],
        record["question"],
        resolved_topic,
        resolved_answers,
        skipped=skip_reason is not None,
        skip_reason=skip_reason,
        dropped_answers=dropped_answers,
        dropped_topic_entities=len(set(record["topic_entities"])) - len(resolved_topic),
    )


def load_queries(path: str, graph: Graph) -> List[Query]:
    """Load JSON-lines queries and resolve their labels against the graph."""
    queries = []
    with open(path, "rb") as queries_file:
        for line_number, line in enumerate(queries_file, start=1):
            if not line.strip():
                continue

            try:
                record = QUERY_RECORD_SCHEMA(json.loads(line.decode("utf-8")))
            except (ValueError, Invalid) as exc:
                raise QueryParseError(f"Line {line_number}: malformed query record: {exc}", line=line_number) from exc

            queries.append(parse_query(record, graph))

    _LOGGER.debug("Loaded %d queries from %r", len(queries), path)
    return queries
