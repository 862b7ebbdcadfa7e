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

"""A base class for implementing path filters."""

import abc
import itertools
import logging
from typing import Any
from typing import Dict
from typing import Iterator
from typing import List
from typing import Type

import attr

from .context import QueryContext
from .exceptions import UnknownPipelineUnitError
from .graph import Graph
from .path import PathSet
from .path import ReasoningPath
from .query import Query
from .unit import Unit

_LOGGER = logging.getLogger(__name__)


def collect_paths(paths: Iterator[ReasoningPath], path_cap: int) -> PathSet:
    """Take at most path_cap paths from the iterator, flag truncation if any path was left out."""
    taken = list(itertools.islice(paths, path_cap))
    truncated = next(paths, None) is not None
    if truncated:
        _LOGGER.debug("Path enumeration stopped after %d paths", path_cap)

    return PathSet.canonical(taken, truncated)


@attr.s(slots=True)
class PathFilter(Unit):
    """Path filter base class implementation.

    Path filters turn the query subgraph into reasoning paths starting at topic entities. By
    default paths are enumerated seed by seed and merged.
    """

    @staticmethod
    def is_path_filter_unit_type() -> bool:
        """Check if this unit is of type path filter."""
        return True

    @staticmethod
    def get_unit_class(method: str) -> Type["PathFilter"]:
        """Get path filter implementing the given method."""
        from .filters import PATH_FILTERS

        try:
            return PATH_FILTERS[method]
        except KeyError:
            raise UnknownPipelineUnitError(
                f"Unknown path filtering method {method!r}, available: {', '.join(sorted(PATH_FILTERS))}"
            ) from None

    def present_seeds(self, context: QueryContext, subgraph: Graph) -> List[int]:
        """Get topic entities present in the subgraph, warn about the missing ones."""
        result = []
        for seed in sorted(context.query.topic_entities):
            if seed not in subgraph.nodes:
                context.warn(
                    ("seed-absent", seed),
                    "topic entity %r is not in the subgraph, no paths start there",
                    context.graph.entity_label(seed),
                )
                continue

            result.append(seed)

        return result

    def run(self, context: QueryContext, subgraph: Graph) -> PathSet:
        """Run main entry-point for path filters to compute reasoning paths."""
        return PathSet.union(self.paths_from(context, subgraph, seed) for seed in self.present_seeds(context, subgraph))

    @abc.abstractmethod
    def paths_from(self, context: QueryContext, subgraph: Graph, seed: int) -> PathSet:
        """Compute paths starting at the given seed present in the subgraph."""


def filter_paths(subgraph: Graph, query: Query, cfg: Dict[str, Any], *, seed: int = 0) -> PathSet:
    """Retrieve reasoning paths from the subgraph using the method named in the stage configuration."""
    unit = PathFilter.get_unit_class(cfg.get("method", "")).from_configuration(cfg, default_seed=seed)
    try:
        return unit.run(QueryContext(graph=subgraph, query=query, seed=seed), subgraph)  # type: ignore
    finally:
        unit.post_run()
