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

"""Keep all simple paths from topic entities up to the given number of hops."""

import logging
from typing import Any
from typing import Dict
from typing import Iterator

import attr
from voluptuous import All
from voluptuous import Range
from voluptuous import Required
from voluptuous import Schema

from ..context import QueryContext
from ..graph import Graph
from ..path import PathSet
from ..path import ReasoningPath
from ..path_filter import PathFilter
from ..path_filter import collect_paths

_LOGGER = logging.getLogger(__name__)


def _iter_complete(subgraph: Graph, seed: int, max_hops: int) -> Iterator[ReasoningPath]:
    # Depth first, edges taken in adjacency order.
    stack = [iter([ReasoningPath.start(seed)])]
    while stack:
        path = next(stack[-1], None)
        if path is None:
            stack.pop()
            continue

        if path.hops > 0:
            yield path

        if path.hops < max_hops:
            stack.append(
                iter(
                    [
                        path.extend(relation, direction, neighbour)
                        for relation, neighbour, direction in subgraph.out_edges(path.target)
                        if neighbour not in path.entities
                    ]
                )
            )


def complete_paths_from(subgraph: Graph, seed: int, max_hops: int = 3, path_cap: int = 10000) -> PathSet:
    """Enumerate all simple paths from the seed with 1 to max_hops relations."""
    if seed not in subgraph.nodes:
        _LOGGER.warning("Seed %r is not in the subgraph, no paths", seed)
        return PathSet()

    return collect_paths(_iter_complete(subgraph, seed, max_hops), path_cap)


@attr.s(slots=True)
class CompletePathFilter(PathFilter):
    """Keep every simple path from topic entities, including detours."""

    METHOD = "cpf"
    CONFIGURATION_DEFAULT: Dict[str, Any] = {"max_hops": 3, "path_cap": 10000}
    CONFIGURATION_SCHEMA: Schema = Schema(
        {
            Required("method"): METHOD,
            Required("max_hops"): All(int, Range(min=1)),
            Required("path_cap"): All(int, Range(min=1)),
        }
    )

    def paths_from(self, context: QueryContext, subgraph: Graph, seed: int) -> PathSet:
        """Enumerate simple paths from the given seed."""
        result = complete_paths_from(subgraph, seed, self.configuration["max_hops"], self.configuration["path_cap"])
        if result.truncated:
            context.warn(("cpf-truncated", seed), "complete paths from %r truncated", subgraph.entity_label(seed))

        return result
