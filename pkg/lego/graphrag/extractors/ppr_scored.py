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

"""Personalized PageRank subgraph refined by relevance of relations to the question."""

import logging
from typing import Any
from typing import Dict
from typing import Optional
from typing import Sequence

import attr
from voluptuous import Required
from voluptuous import Schema

from ..context import QueryContext
from ..exceptions import ExtractorError
from ..exceptions import ScorerError
from ..graph import Graph
from ..query import Query
from ..render import Candidate
from ..scorer import Scorer
from ..scorer import ScorerConfig
from .ppr import POSITIVE_INT
from .ppr import PersonalizedPageRank

_LOGGER = logging.getLogger(__name__)


@attr.s(slots=True, frozen=True)
class RefineParams:
    """Budget of relations to keep and the scorer ranking them."""

    scorer = attr.ib(type=ScorerConfig)
    window = attr.ib(type=int, default=24)

    @window.validator
    def _validate_window(self, _: Any, value: int) -> None:
        if value < 1:
            raise ValueError(f"Window has to be a positive integer, got {value!r}")


def semantic_refine(
    subgraph: Graph,
    query: Query,
    params: RefineParams,
    *,
    scorer: Optional[Scorer] = None,
    topic_labels: Sequence[str] = (),
) -> Graph:
    """Keep triples whose relation ranks among the window most relevant relation labels.

    Topic entities present in the subgraph are kept, other entities only if a retained triple
    touches them. A window covering every relation returns the subgraph as is.
    """
    relations = sorted({triple.relation for triple in subgraph.triples}, key=subgraph.relation_label)
    if len(relations) > params.window:
        if scorer is None:
            scorer = Scorer.from_config(params.scorer)

        candidates = [Candidate.for_relation(relation, subgraph) for relation in relations]
        scores = scorer.score_batch(query.text, candidates, topic_labels=topic_labels)
        ranked = sorted(zip(scores, relations), key=lambda item: (-item[0], subgraph.relation_label(item[1])))
        kept = {relation for _, relation in ranked[: params.window]}
        _LOGGER.debug("Query %r: kept %d out of %d relations", query.id, len(kept), len(relations))
    else:
        return subgraph

    triples = [triple for triple in subgraph.triples if triple.relation in kept]
    nodes = set(query.topic_entities & subgraph.nodes)
    for triple in triples:
        nodes.add(triple.source)
        nodes.add(triple.target)

    return subgraph.restrict(triples, nodes)


@attr.s(slots=True)
class ScoredPersonalizedPageRank(PersonalizedPageRank):
    """Personalized PageRank subgraph pruned to relations the scorer finds relevant."""

    METHOD = "ppr_scored"
    CONFIGURATION_DEFAULT: Dict[str, Any] = {**PersonalizedPageRank.CONFIGURATION_DEFAULT, "window": 24}
    CONFIGURATION_SCHEMA: Schema = Schema(
        {
            **PersonalizedPageRank.CONFIGURATION_SCHEMA.schema,
            Required("method"): METHOD,
            Required("window"): POSITIVE_INT,
            Required("scorer"): dict,
        }
    )

    def run(self, context: QueryContext) -> Graph:
        """Compute PageRank subgraph, then keep only relevant relations."""
        subgraph = super().run(context)
        params = RefineParams(scorer=self.scorer_config, window=self.configuration["window"])
        try:
            return semantic_refine(
                subgraph, context.query, params, scorer=self.scorer, topic_labels=context.topic_labels
            )
        except ScorerError as exc:
            raise ExtractorError(f"Failed to score relations: {exc}") from exc
