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

"""Text rendering of graph objects handed to scorers and prompts."""

from typing import Any

import attr

from .enums import CandidateKind
from .enums import Direction
from .graph import Graph
from .graph import Triple
from .path import ReasoningPath

PATH_ARROW = " -> "
INVERSE_SUFFIX = "(inv)"


def _non_empty(_: Any, attribute: Any, value: str) -> None:
    if not value:
        raise ValueError(f"Candidate {attribute.name} has to be a non-empty string")


@attr.s(slots=True, frozen=True)
class Candidate:
    """A rendered object offered to a scorer; payload points back to what was rendered."""

    kind = attr.ib(type=CandidateKind)
    text = attr.ib(type=str, validator=_non_empty)
    payload = attr.ib(type=Any, default=None)

    @classmethod
    def for_relation(cls, relation: int, graph: Graph) -> "Candidate":
        """Create a candidate for a relation label."""
        return cls(CandidateKind.RELATION, graph.relation_label(relation), relation)

    @classmethod
    def for_entity(cls, entity: int, graph: Graph) -> "Candidate":
        """Create a candidate for an entity label."""
        return cls(CandidateKind.ENTITY, graph.entity_label(entity), entity)

    @classmethod
    def for_triple(cls, triple: Triple, graph: Graph) -> "Candidate":
        """Create a candidate for a triple."""
        return cls(CandidateKind.TRIPLE, render_triple(triple, graph), triple)

    @classmethod
    def for_path(cls, path: ReasoningPath, graph: Graph) -> "Candidate":
        """Create a candidate for a reasoning path."""
        return cls(CandidateKind.PATH, render_path(path, graph), path)


def render_triple(triple: Triple, graph: Graph) -> str:
    """Render a triple as `source, relation, target`, labels verbatim."""
    return ", ".join(
        (
            graph.entity_label(triple.source),
            graph.relation_label(triple.relation),
            graph.entity_label(triple.target),
        )
    )


def render_path(path: ReasoningPath, graph: Graph) -> str:
    """Render a path as `e0 -> r1 -> e1 -> ...`; backward edges carry the (inv) suffix."""
    parts = [graph.entity_label(path.entities[0])]
    for (relation, direction), entity in zip(path.relations, path.entities[1:]):
        label = graph.relation_label(relation)
        if direction == Direction.BACKWARD:
            label += INVERSE_SUFFIX

        parts.append(label)
        parts.append(graph.entity_label(entity))

    return PATH_ARROW.join(parts)
