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

"""Cross-encoder reranker scorer."""

import logging
from typing import List
from typing import Optional
from typing import Sequence

import attr

from ..exceptions import ScorerProtocolError
from ..render import Candidate
from ..scorer import ScoreVector
from ..utils import stable_unit_interval
from .remote import RemoteScorer

_LOGGER = logging.getLogger(__name__)


@attr.s(slots=True)
class RerankScorer(RemoteScorer):
    """Score (query, candidate) pairs with a rerank endpoint."""

    def _rerank_batch(self, query_text: str, start: int, texts: Sequence[str]) -> List[float]:
        if self.config.is_stub:
            return [stable_unit_interval("rerank", self.config.model, query_text, text) for text in texts]

        end = start + len(texts)
        response = self.post({"model": self.config.model, "query": query_text, "documents": list(texts)}, start, end)

        scores: List[Optional[float]] = [None] * len(texts)
        try:
            results = response["results"]
            self.check_length(results, len(texts), start)
            for item in results:
                index = item["index"]
                if not isinstance(index, int) or not 0 <= index < len(texts) or scores[index] is not None:
                    raise ScorerProtocolError(f"Invalid result index {index!r}", start=start, end=end)

                scores[index] = float(item["relevance_score"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ScorerProtocolError(f"Malformed rerank response: {exc}", start=start, end=end) from exc

        return scores  # type: ignore

    def _score(self, query_text: str, candidates: Sequence[Candidate], topic_labels: Sequence[str]) -> ScoreVector:
        """Score candidates in batches, results mapped back by index."""
        texts = [candidate.text for candidate in candidates]
        return self.map_batches(texts, lambda start, batch: self._rerank_batch(query_text, start, batch))
