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

"""Extract subgraph of entities ranked by personalized PageRank."""

import logging
from typing import Any
from typing import Dict
from typing import Iterable

import attr
import numpy as np
from voluptuous import All
from voluptuous import Any as SchemaAny
from voluptuous import Range
from voluptuous import Required
from voluptuous import Schema

from ..context import QueryContext
from ..extractor import Extractor
from ..extractor import ScoredEntities
from ..extractor import check_seeds
from ..extractor import top_entities
from ..graph import Graph

_LOGGER = logging.getLogger(__name__)

RESTART_PROB = All(float, Range(min=0.0, max=1.0, min_included=False, max_included=False))
POSITIVE_INT = All(int, Range(min=1))


@attr.s(slots=True, frozen=True)
class PprParams:
    """Parameters of the power iteration."""

    restart_prob = attr.ib(type=float, default=0.8)
    max_ent = attr.ib(type=int, default=2000)
    tol = attr.ib(type=float, default=1e-8)
    max_iter = attr.ib(type=int, default=100)

    @classmethod
    def from_configuration(cls, configuration: Dict[str, Any]) -> "PprParams":
        """Pick the parameters from a unit configuration."""
        return cls(
            restart_prob=configuration["restart_prob"],
            max_ent=configuration["max_ent"],
            tol=configuration["tol"],
            max_iter=configuration["max_iter"],
        )


def ppr_scores(graph: Graph, seeds: Iterable[int], params: PprParams) -> ScoredEntities:
    """Compute personalized PageRank over the symmetrized graph, restarting to seeds.

    Each step keeps restart_prob of the mass on the preference vector and spreads the rest to
    neighbours proportionally to edge multiplicity; mass sitting on isolated nodes teleports back
    to seeds so scores keep summing to one.
    """
    seeds = check_seeds(graph, seeds)
    matrix = graph.matrix()

    preference = np.zeros(len(matrix.nodes), dtype=np.float64)
    for seed in seeds:
        preference[matrix.positions[seed]] = 1.0 / len(seeds)

    dangling = matrix.degree == 0
    inverse_degree = np.zeros_like(matrix.degree, dtype=np.float64)
    np.divide(1.0, matrix.degree, out=inverse_degree, where=~dangling)

    damping = 1.0 - params.restart_prob
    scores = preference.copy()
    for iteration in range(1, params.max_iter + 1):
        spread = matrix.adjacency @ (scores * inverse_degree)
        updated = params.restart_prob * preference + damping * (spread + scores[dangling].sum() * preference)
        change = float(np.abs(updated - scores).sum())
        scores = updated
        if change < params.tol:
            _LOGGER.debug("Personalized PageRank converged after %d iterations", iteration)
            break
    else:
        _LOGGER.debug("Personalized PageRank stopped after %d iterations, last change %g", params.max_iter, change)

    return {int(node): float(score) for node, score in zip(matrix.nodes, scores)}


@attr.s(slots=True)
class PersonalizedPageRank(Extractor):
    """Keep entities with the highest personalized PageRank with respect to topic entities."""

    METHOD = "ppr"
    CONFIGURATION_DEFAULT: Dict[str, Any] = {"restart_prob": 0.8, "max_ent": 2000, "tol": 1e-8, "max_iter": 100}
    CONFIGURATION_SCHEMA: Schema = Schema(
        {
            Required("method"): METHOD,
            Required("restart_prob"): RESTART_PROB,
            Required("max_ent"): POSITIVE_INT,
            Required("tol"): All(SchemaAny(int, float), Range(min=0, min_included=False)),
            Required("max_iter"): POSITIVE_INT,
        }
    )

    def run(self, context: QueryContext) -> Graph:
        """Induce subgraph over top ranked entities."""
        params = PprParams.from_configuration(self.configuration)
        seeds = context.query.topic_entities
        scores = ppr_scores(context.graph, seeds, params)
        return context.graph.induced_subgraph(top_entities(scores, params.max_ent, seeds))
