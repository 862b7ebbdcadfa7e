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

"""Embedding similarity scorer (sentence-transformers style endpoints, fine-tuned or not)."""

import logging
import math
import threading
from typing import Any
from typing import Dict
from typing import List
from typing import Sequence

import attr
import numpy as np

from ..exceptions import ScorerProtocolError
from ..render import Candidate
from ..scorer import ScoreVector
from ..scorer import cosine_similarity
from ..utils import stable_hash
from .remote import RemoteScorer

_LOGGER = logging.getLogger(__name__)

STUB_DIMENSION = 32


@attr.s(slots=True)
class EmbeddingScorer(RemoteScorer):
    """Score candidates by cosine similarity of their embedding to the query embedding.

    Embeddings are cached by exact text for the lifetime of the scorer.
    """

    _cache = attr.ib(type=Dict[str, np.ndarray], init=False, factory=dict)
    _cache_lock = attr.ib(type=Any, init=False, factory=threading.Lock)

    @property
    def cache_size(self) -> int:
        """Get number of cached embeddings."""
        return len(self._cache)

    def _stub_embedding(self, text: str) -> np.ndarray:
        rng = np.random.default_rng(stable_hash("embedding", self.config.model, text))
        return rng.standard_normal(STUB_DIMENSION)

    def _embed_batch(self, start: int, texts: Sequence[str]) -> List[np.ndarray]:
        """Embed one batch of texts."""
        if self.config.is_stub:
            return [self._stub_embedding(text) for text in texts]

        response = self.post({"model": self.config.model, "input": list(texts)}, start, start + len(texts))
        try:
            data = response["data"]
            if data and all("index" in item for item in data):
                data = sorted(data, key=lambda item: item["index"])

            self.check_length(data, len(texts), start)
            vectors = [np.asarray(item["embedding"], dtype=np.float64) for item in data]
        except (KeyError, TypeError, ValueError) as exc:
            raise ScorerProtocolError(
                f"Malformed embedding response: {exc}", start=start, end=start + len(texts)
            ) from exc

        for vector in vectors:
            if vector.ndim != 1 or not np.all(np.isfinite(vector)):
                raise ScorerProtocolError("Embedding with non-finite values", start=start, end=start + len(texts))

        return vectors

    def embed(self, texts: Sequence[str]) -> List[np.ndarray]:
        """Embed texts, serve repeated texts from the cache."""
        with self._cache_lock:
            missing = sorted({text for text in texts if text not in self._cache})

        if missing:
            vectors = self.map_batches(missing, self._embed_batch)
            with self._cache_lock:
                self._cache.update(zip(missing, vectors))

        with self._cache_lock:
            return [self._cache[text] for text in texts]

    def _score(self, query_text: str, candidates: Sequence[Candidate], topic_labels: Sequence[str]) -> ScoreVector:
        """Score candidates by cosine similarity to the query."""
        query_vector, *vectors = self.embed([query_text] + [candidate.text for candidate in candidates])
        scores = [cosine_similarity(query_vector, vector) for vector in vectors]
        if not all(math.isfinite(score) for score in scores):
            raise ScorerProtocolError("Non-finite similarity", start=0, end=len(candidates))

        return scores
