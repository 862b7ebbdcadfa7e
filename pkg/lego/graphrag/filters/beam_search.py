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

"""Grow paths hop by hop, keeping only the paths a scorer rates best."""

import logging
from typing import Any
from typing import Dict
from typing import Optional
from typing import Sequence
from typing import Set

import attr
from voluptuous import All
from voluptuous import Range
from voluptuous import Required
from voluptuous import Schema

from ..beam import Beam
from ..context import QueryContext
from ..exceptions import PathFilterError
from ..exceptions import ScorerError
from ..graph import Graph
from ..path import PathSet
from ..path import ReasoningPath
from ..path_filter import PathFilter
from ..query import Query
from ..render import Candidate
from ..scorer import Scorer
from ..scorer import ScorerConfig

_LOGGER = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True)
class BeamParams:
    """Beam budget, search depth and the scorer rating extended paths."""

    scorer = attr.ib(type=ScorerConfig)
    beam_width = attr.ib(type=int, default=128)
    max_hops = attr.ib(type=int, default=3)


def beam_search_paths(
    subgraph: Graph,
    query: Query,
    params: BeamParams,
    *,
    scorer: Optional[Scorer] = None,
    topic_labels: Sequence[str] = (),
    beam: Optional[Beam] = None,
) -> PathSet:
    """Beam search reasoning paths starting at topic entities present in the subgraph.

    Every hop extends each beam path by every incident edge leading to an entity not yet on the
    path, scores rendered extensions against the question in one batch and keeps the beam_width
    best of them. Paths that were ever in the beam form the result.
    """
    if scorer is None:
        scorer = Scorer.from_config(params.scorer)

    if beam is None:
        beam = Beam(params.beam_width)

    frontier = []
    for entity in sorted(query.topic_entities):
        if entity in subgraph.nodes:
            frontier.append(ReasoningPath.start(entity))
        else:
            _LOGGER.warning("Query %r: topic entity %r is not in the subgraph", query.id, entity)

    members: Set[ReasoningPath] = set()
    truncated = False
    for hop in range(1, params.max_hops + 1):
        extensions = [
            path.extend(relation, direction, neighbour)
            for path in frontier
            for relation, neighbour, direction in subgraph.out_edges(path.target)
            if neighbour not in path.entities
        ]
        if not extensions:
            _LOGGER.debug("Query %r: no path to extend at hop %d", query.id, hop)
            break

        candidates = [Candidate.for_path(path, subgraph) for path in extensions]
        try:
            scores = scorer.score_batch(query.text, candidates, topic_labels=topic_labels)
        except ScorerError as exc:
            raise PathFilterError(f"Failed to score paths at hop {hop}: {exc}", hop=hop) from exc

        beam.wipe()
        for score, path in zip(scores, extensions):
            beam.add_path(path, score)

        truncated = truncated or beam.size < len(extensions)
        beam.new_iteration()

        frontier = [path for _, path in beam.iter_paths_sorted()]
        members.update(frontier)
        _LOGGER.debug("Query %r: hop %d kept %d out of %d extensions", query.id, hop, beam.size, len(extensions))

    return PathSet.canonical(members, truncated)


@attr.s(slots=True)
class BeamSearchPathFilter(PathFilter):
    """Iterative path filtering guided by a scorer."""

    METHOD = "beam"
    CONFIGURATION_DEFAULT: Dict[str, Any] = {"beam_width": 128, "max_hops": 3}
    CONFIGURATION_SCHEMA: Schema = Schema(
        {
            Required("method"): METHOD,
            Required("beam_width"): All(int, Range(min=1)),
            Required("max_hops"): All(int, Range(min=1)),
            Required("scorer"): dict,
        }
    )

    def run(self, context: QueryContext, subgraph: Graph) -> PathSet:
        """Search all topic entities within one beam so they compete for the budget."""
        seeds = self.present_seeds(context, subgraph)
        params = self.beam_params()
        context.beam = Beam(params.beam_width)
        return beam_search_paths(
            subgraph,
            attr.evolve(context.query, topic_entities=seeds),
            params,
            scorer=self.scorer,
            topic_labels=context.topic_labels,
            beam=context.beam,
        )

    def paths_from(self, context: QueryContext, subgraph: Graph, seed: int) -> PathSet:
        """Beam search paths starting at a single seed."""
        single = attr.evolve(context.query, topic_entities={seed})
        return beam_search_paths(
            subgraph, single, self.beam_params(), scorer=self.scorer, topic_labels=context.topic_labels
        )

    def beam_params(self) -> BeamParams:
        """Get beam parameters from the unit configuration."""
        return BeamParams(
            scorer=self.scorer_config,
            beam_width=self.configuration["beam_width"],
            max_hops=self.configuration["max_hops"],
        )
