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

"""A base class for implementing subgraph extractors."""

import abc
import heapq
import logging
from typing import Any
from typing import Dict
from typing import Iterable
from typing import Mapping
from typing import Set
from typing import Type

import attr

from .context import QueryContext
from .exceptions import ContractViolation
from .exceptions import UnknownPipelineUnitError
from .graph import Graph
from .query import Query
from .unit import Unit

_LOGGER = logging.getLogger(__name__)

ScoredEntities = Dict[int, float]


def check_seeds(graph: Graph, seeds: Iterable[int]) -> Set[int]:
    """Validate seeds of a walk over the given graph."""
    seeds = set(seeds)
    if not seeds:
        raise ContractViolation("No seed entities given")

    for seed in seeds:
        if seed not in graph.nodes:
            raise ContractViolation(f"Seed entity {seed!r} is not a node of the graph")

    return seeds


def top_entities(scores: Mapping[int, float], max_ent: int, seeds: Iterable[int]) -> Set[int]:
    """Select the max_ent highest scored entities, seeds are always kept; ties go to lower ids."""
    result = set(seeds)
    remaining = max(0, max_ent - len(result))
    candidates = ((-score, entity) for entity, score in scores.items() if entity not in result)
    result.update(entity for _, entity in heapq.nsmallest(remaining, candidates))
    return result


@attr.s(slots=True)
class Extractor(Unit):
    """Extractor base class implementation.

    Extractors scale down the search space: given the whole graph and a query, they return a
    query specific subgraph the path filter explores.
    """

    @staticmethod
    def is_extractor_unit_type() -> bool:
        """Check if this unit is of type extractor."""
        return True

    @staticmethod
    def get_unit_class(method: str) -> Type["Extractor"]:
        """Get extractor implementing the given method."""
        from .extractors import EXTRACTORS

        try:
            return EXTRACTORS[method]
        except KeyError:
            raise UnknownPipelineUnitError(
                f"Unknown subgraph extraction method {method!r}, available: {', '.join(sorted(EXTRACTORS))}"
            ) from None

    @abc.abstractmethod
    def run(self, context: QueryContext) -> Graph:
        """Run main entry-point for extractors to compute the query subgraph."""


def extract_subgraph(graph: Graph, query: Query, cfg: Dict[str, Any], *, seed: int = 0) -> Graph:
    """Extract the query subgraph using the extraction method named in the stage configuration."""
    unit = Extractor.get_unit_class(cfg.get("method", "")).from_configuration(cfg, default_seed=seed)
    try:
        return unit.run(QueryContext(graph=graph, query=query, seed=seed))  # type: ignore
    finally:
        unit.post_run()
