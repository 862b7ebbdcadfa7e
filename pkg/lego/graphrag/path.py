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

"""Reasoning paths and ordered sets of them."""

import hashlib
import json
from typing import Any
from typing import Dict
from typing import Iterable
from typing import Iterator
from typing import Set
from typing import Tuple

import attr

from .enums import Direction
from .graph import Graph

SortKey = Tuple[int, Tuple[int, ...], Tuple[Tuple[int, int], ...]]


@attr.s(slots=True, frozen=True)
class ReasoningPath:
    """An alternating entity/relation sequence starting at a topic entity.

    The relation at index i connects entities[i] and entities[i + 1]; its direction flag states whether
    the stored triple was traversed as (entities[i], r, entities[i + 1]) or the other way round.
    """

    entities = attr.ib(type=Tuple[int, ...], converter=tuple)
    relations = attr.ib(type=Tuple[Tuple[int, Direction], ...], converter=tuple, factory=tuple)

    @relations.validator
    def _validate_relations(self, _: Any, value: Tuple[Tuple[int, Direction], ...]) -> None:
        """Check the path alternates entities and relations."""
        if len(value) + 1 != len(self.entities):
            raise ValueError(f"Path with {len(self.entities)} entities needs {len(self.entities) - 1} relations")

    @classmethod
    def start(cls, entity: int) -> "ReasoningPath":
        """Create a zero-hop path."""
        return cls((entity,), ())

    @property
    def source(self) -> int:
        """Get the entity the path starts at."""
        return self.entities[0]

    @property
    def target(self) -> int:
        """Get the entity the path ends at."""
        return self.entities[-1]

    @property
    def hops(self) -> int:
        """Get number of relations on the path."""
        return len(self.relations)

    def extend(self, relation: int, direction: Direction, entity: int) -> "ReasoningPath":
        """Create a new path extended by one edge."""
        return ReasoningPath(self.entities + (entity,), self.relations + ((relation, direction),))

    def sort_key(self) -> SortKey:
        """Get key ordering paths by length, then entity ids, then relation ids."""
        return (
            len(self.relations),
            self.entities,
            tuple((relation, direction.value) for relation, direction in self.relations),
        )

    def is_simple(self) -> bool:
        """Check no entity repeats on the path."""
        return len(set(self.entities)) == len(self.entities)

    def is_valid(self, graph: Graph) -> bool:
        """Validate the path edge by edge against the given graph."""
        if not self.is_simple() or not all(entity in graph.nodes for entity in self.entities):
            return False

        for i, (relation, direction) in enumerate(self.relations):
            head, tail = self.entities[i], self.entities[i + 1]
            if direction == Direction.BACKWARD:
                head, tail = tail, head

            if not graph.has_edge(head, relation, tail):
                return False

        return True

    def to_dict(self) -> Dict[str, Any]:
        """Convert the path to a JSON serializable representation."""
        return {
            "entities": list(self.entities),
            "relations": [[relation, direction.name.lower()] for relation, direction in self.relations],
        }

    @classmethod
    def from_dict(cls, dict_: Dict[str, Any]) -> "ReasoningPath":
        """Restore a path from its dictionary representation."""
        return cls(
            dict_["entities"],
            [(relation, Direction.by_name(direction)) for relation, direction in dict_["relations"]],
        )


@attr.s(slots=True, frozen=True)
class PathSet:
    """An ordered collection of distinct reasoning paths."""

    paths = attr.ib(type=Tuple[ReasoningPath, ...], converter=tuple, factory=tuple)
    truncated = attr.ib(type=bool, default=False)

    @paths.validator
    def _validate_paths(self, _: Any, value: Tuple[ReasoningPath, ...]) -> None:
        """Check no path is stated twice."""
        if len(set(value)) != len(value):
            raise ValueError("Duplicate paths in a path set")

    @classmethod
    def canonical(cls, paths: Iterable[ReasoningPath], truncated: bool = False) -> "PathSet":
        """Create a path set in the canonical order, duplicates removed."""
        return cls(sorted(set(paths), key=ReasoningPath.sort_key), truncated)

    @classmethod
    def union(cls, path_sets: Iterable["PathSet"]) -> "PathSet":
        """Merge path sets into one in the canonical order."""
        paths: Set[ReasoningPath] = set()
        truncated = False
        for path_set in path_sets:
            paths.update(path_set.paths)
            truncated = truncated or path_set.truncated

        return cls.canonical(paths, truncated)

    def __len__(self) -> int:
        """Get number of paths."""
        return len(self.paths)

    def __iter__(self) -> Iterator[ReasoningPath]:
        """Iterate over paths in the stored order."""
        return iter(self.paths)

    def entities(self) -> Set[int]:
        """Get all entities appearing on any path."""
        return {entity for path in self.paths for entity in path.entities}

    def to_dict(self) -> Dict[str, Any]:
        """Convert the path set to a JSON serializable representation."""
        return {"paths": [path.to_dict() for path in self.paths], "truncated": self.truncated}

    @classmethod
    def from_dict(cls, dict_: Dict[str, Any]) -> "PathSet":
        """Restore a path set from its dictionary representation."""
        return cls([ReasoningPath.from_dict(path) for path in dict_["paths"]], dict_.get("truncated", False))

    def digest(self) -> str:
        """Compute a digest identifying paths and their order."""
        return hashlib.sha256(json.dumps(self.to_dict(), sort_keys=True).encode("utf-8")).hexdigest()
