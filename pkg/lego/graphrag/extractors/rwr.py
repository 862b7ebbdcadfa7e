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

"""Extract subgraph of entities most visited by random walks with restart."""

import logging
from typing import Any
from typing import Dict
from typing import Iterable

import attr
import numpy as np
from voluptuous import Required
from voluptuous import Schema

from ..context import QueryContext
from ..extractor import Extractor
from ..extractor import ScoredEntities
from ..extractor import check_seeds
from ..extractor import top_entities
from ..graph import Graph
from .ppr import POSITIVE_INT
from .ppr import RESTART_PROB

_LOGGER = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True)
class RwrParams:
    """Parameters of Monte-Carlo random walks with restart."""

    path_num = attr.ib(type=int, default=64)
    restart_prob = attr.ib(type=float, default=0.8)
    max_walk_len = attr.ib(type=int, default=10)
    max_ent = attr.ib(type=int, default=2000)
    seed = attr.ib(type=int, default=0)

    @classmethod
    def from_configuration(cls, configuration: Dict[str, Any], seed: int) -> "RwrParams":
        """Pick the parameters from a unit configuration."""
        return cls(
            path_num=configuration["path_num"],
            restart_prob=configuration["restart_prob"],
            max_walk_len=configuration["max_walk_len"],
            max_ent=configuration["max_ent"],
            seed=seed,
        )


def rwr_scores(graph: Graph, seeds: Iterable[int], params: RwrParams) -> ScoredEntities:
    """Estimate visit frequencies of walks restarting to their seed.

    All path_num walks of one seed advance in lockstep. A walk visits its seed, then in each step
    either restarts (ends, the next walk starts at the seed again) with restart_prob or moves to a
    neighbour chosen proportionally to edge multiplicity. Walks stuck on an isolated node end.
    """
    seeds = check_seeds(graph, seeds)
    matrix = graph.matrix()
    rng = np.random.default_rng(params.seed)

    size = len(matrix.nodes)
    indptr = matrix.adjacency.indptr
    indices = matrix.adjacency.indices
    cumulative = np.cumsum(matrix.adjacency.data)
    offsets = np.concatenate(([0.0], cumulative))
    visits = np.zeros(size, dtype=np.float64)

    for seed in sorted(seeds):
        start = matrix.positions[seed]
        current = np.full(params.path_num, start, dtype=np.int64)
        active = np.ones(params.path_num, dtype=bool)
        visits[start] += params.path_num

        for _ in range(params.max_walk_len):
            active &= rng.random(params.path_num) >= params.restart_prob
            active &= matrix.degree[current] > 0
            walking = np.flatnonzero(active)
            if walking.size == 0:
                break

            nodes = current[walking]
            draw = offsets[indptr[nodes]] + rng.random(walking.size) * matrix.degree[nodes]
            picked = np.searchsorted(cumulative, draw, side="right")
            picked = np.minimum(picked, indptr[nodes + 1] - 1)
            current[walking] = indices[picked]
            visits += np.bincount(current[walking], minlength=size)

    visits /= visits.sum()
    return {int(node): float(score) for node, score in zip(matrix.nodes, visits)}


@attr.s(slots=True)
class RandomWalkRestart(Extractor):
    """Keep entities most visited by random walks restarting to topic entities."""

    METHOD = "rwr"
    CONFIGURATION_DEFAULT: Dict[str, Any] = {"path_num": 64, "restart_prob": 0.8, "max_walk_len": 10, "max_ent": 2000}
    CONFIGURATION_SCHEMA: Schema = Schema(
        {
            Required("method"): METHOD,
            Required("path_num"): POSITIVE_INT,
            Required("restart_prob"): RESTART_PROB,
            Required("max_walk_len"): POSITIVE_INT,
            Required("max_ent"): POSITIVE_INT,
        }
    )

    def run(self, context: QueryContext) -> Graph:
        """Induce subgraph over the most visited entities."""
        params = RwrParams.from_configuration(self.configuration, context.seed)
        seeds = context.query.topic_entities
        scores = rwr_scores(context.graph, seeds, params)
        return context.graph.induced_subgraph(top_entities(scores, params.max_ent, seeds))
