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

"""Keep paths a scorer rates the most relevant to the question."""

import logging
from typing import Any
from typing import Dict
from typing import Sequence

import attr
from voluptuous import All
from voluptuous import Range
from voluptuous import Required
from voluptuous import Schema

from ..context import QueryContext
from ..exceptions import RefinerError
from ..exceptions import ScorerError
from ..graph import Graph
from ..path import PathSet
from ..query import Query
from ..render import Candidate
from ..refiner import Refiner
from ..scorer import Scorer

_LOGGER = logging.getLogger(__name__)


def refine_scored(
    paths: PathSet,
    query: Query,
    scorer: Scorer,
    top_k: int,
    *,
    graph: Graph,
    topic_labels: Sequence[str] = (),
) -> PathSet:
    """Keep top_k paths by descending score, ties broken by the canonical path order."""
    if not paths:
        return paths

    candidates = [Candidate.for_path(path, graph) for path in paths]
    scores = scorer.score_batch(query.text, candidates, topic_labels=topic_labels)
    ranked = sorted(zip(scores, paths), key=lambda item: (-item[0], item[1].sort_key()))
    return PathSet([path for _, path in ranked[:top_k]], paths.truncated)


@attr.s(slots=True)
class ScoredRefiner(Refiner):
    """Rank paths by a scorer and keep the best ones."""

    METHOD = "scored"
    CONFIGURATION_DEFAULT: Dict[str, Any] = {"top_k": 64}
    CONFIGURATION_SCHEMA: Schema = Schema(
        {Required("method"): METHOD, Required("top_k"): All(int, Range(min=1)), Required("scorer"): dict}
    )

    def run(self, context: QueryContext, subgraph: Graph, paths: PathSet) -> PathSet:
        """Score and cut the paths."""
        try:
            return refine_scored(
                paths,
                context.query,
                self.scorer,
                self.configuration["top_k"],
                graph=subgraph,
                topic_labels=context.topic_labels,
            )
        except ScorerError as exc:
            raise RefinerError(f"Failed to score paths: {exc}") from exc
