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

"""Keep all shortest paths from topic entities to every reachable entity."""

import logging
from typing import Any
from typing import Dict
from typing import Iterator
from typing import List
from typing import Tuple

import attr
from voluptuous import All
from voluptuous import Range
from voluptuous import Required
from voluptuous import Schema

from ..context import QueryContext
from ..enums import Direction
from ..graph import Graph
from ..path import PathSet
from ..path import ReasoningPath
from ..path_filter import PathFilter
from ..path_filter import collect_paths

_LOGGER = logging.getLogger(__name__)

_Parent = Tuple[int, int, Direction]


def _parent_dag(subgraph: Graph, seed: int, hop_cap: int) -> Tuple[Dict[int, int], Dict[int, List[_Parent]]]:
    """Breadth first search keeping every edge that reaches a node on a shortest path."""
    distance = {seed: 0}
    parents: Dict[int, List[_Parent]] = {}
    frontier = [seed]

    for depth in range(1, hop_cap + 1):
        next_frontier = []
        for node in frontier:
            for relation, neighbour, direction in subgraph.out_edges(node):
                if neighbour not in distance:
                    distance[neighbour] = depth
                    parents[neighbour] = []
                    next_frontier.append(neighbour)

                if distance[neighbour] == depth:
                    parents[neighbour].append((node, relation, direction))

        if not next_frontier:
            break

        frontier = sorted(next_frontier)

    return distance, parents


def _iter_shortest(subgraph: Graph, seed: int, hop_cap: int) -> Iterator[ReasoningPath]:
    distance, parents = _parent_dag(subgraph, seed, hop_cap)

    def walk_back(node: int) -> Iterator[ReasoningPath]:
        if node == seed:
            yield ReasoningPath.start(seed)
            return

        for parent, relation, direction in parents[node]:
            for prefix in walk_back(parent):
                yield prefix.extend(relation, direction, node)

    for target in sorted(parents, key=lambda node: (distance[node], node)):
        yield from walk_back(target)


def shortest_paths_from(subgraph: Graph, seed: int, hop_cap: int = 4, path_cap: int = 10000) -> PathSet:
    """Enumerate all distinct shortest paths from the seed to every entity reachable within hop_cap."""
    if seed not in subgraph.nodes:
        _LOGGER.warning("Seed %r is not in the subgraph, no shortest paths", seed)
        return PathSet()

    return collect_paths(_iter_shortest(subgraph, seed, hop_cap), path_cap)


@attr.s(slots=True)
class ShortestPathFilter(PathFilter):
    """Keep shortest paths between topic entities and all other subgraph entities."""

    METHOD = "spf"
    CONFIGURATION_DEFAULT: Dict[str, Any] = {"hop_cap": 4, "path_cap": 10000}
    CONFIGURATION_SCHEMA: Schema = Schema(
        {
            Required("method"): METHOD,
            Required("hop_cap"): All(int, Range(min=1)),
            Required("path_cap"): All(int, Range(min=1)),
        }
    )

    def paths_from(self, context: QueryContext, subgraph: Graph, seed: int) -> PathSet:
        """Enumerate shortest paths from the given seed."""
        result = shortest_paths_from(subgraph, seed, self.configuration["hop_cap"], self.configuration["path_cap"])
        if result.truncated:
            context.warn(("spf-truncated", seed), "shortest paths from %r truncated", subgraph.entity_label(seed))

        return result
