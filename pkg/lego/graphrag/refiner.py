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

"""A base class for implementing path refiners."""

import abc
import logging
from typing import Any
from typing import Dict
from typing import Type

import attr

from .context import QueryContext
from .exceptions import UnknownPipelineUnitError
from .graph import Graph
from .path import PathSet
from .query import Query
from .unit import Unit

_LOGGER = logging.getLogger(__name__)


@attr.s(slots=True)
class Refiner(Unit):
    """Refiner base class implementation.

    Refiners cut the reasoning paths down to the budget handed to the generator.
    """

    @staticmethod
    def is_refiner_unit_type() -> bool:
        """Check if this unit is of type refiner."""
        return True

    @staticmethod
    def get_unit_class(method: str) -> Type["Refiner"]:
        """Get refiner implementing the given method."""
        from .refiners import REFINERS

        try:
            return REFINERS[method]
        except KeyError:
            raise UnknownPipelineUnitError(
                f"Unknown path refinement method {method!r}, available: {', '.join(sorted(REFINERS))}"
            ) from None

    @abc.abstractmethod
    def run(self, context: QueryContext, subgraph: Graph, paths: PathSet) -> PathSet:
        """Run main entry-point for refiners to select the final paths."""


def refine_paths(subgraph: Graph, query: Query, paths: PathSet, cfg: Dict[str, Any], *, seed: int = 0) -> PathSet:
    """Refine paths using the method named in the stage configuration."""
    unit = Refiner.get_unit_class(cfg.get("method", "")).from_configuration(cfg, default_seed=seed)
    try:
        return unit.run(QueryContext(graph=subgraph, query=query, seed=seed), subgraph, paths)  # type: ignore
    finally:
        unit.post_run()
