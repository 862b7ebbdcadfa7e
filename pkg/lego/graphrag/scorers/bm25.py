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

"""Okapi BM25 scoring with statistics computed over the candidates of a single call."""

import logging
import math
import re
from collections import Counter
from typing import Dict
from typing import List
from typing import Sequence

import attr

from ..render import Candidate
from ..scorer import Scorer
from ..scorer import ScoreVector

_LOGGER = logging.getLogger(__name__)

_TOKEN_SPLIT_RE = re.compile(r"[\W_]+")


def tokenize(text: str) -> List[str]:
    """Lowercase and split on any non-alphanumeric character."""
    return [token for token in _TOKEN_SPLIT_RE.split(text.lower()) if token]


@attr.s(slots=True, frozen=True)
class CorpusStatistics:
    """Document frequencies and length statistics of a tokenized corpus."""

    document_count = attr.ib(type=int)
    average_length = attr.ib(type=float)
    document_frequency = attr.ib(type=Dict[str, int])

    @classmethod
    def from_documents(cls, documents: Sequence[Sequence[str]]) -> "CorpusStatistics":
        """Compute statistics of the given tokenized documents."""
        document_frequency: Counter = Counter()
        for document in documents:
            document_frequency.update(set(document))

        total_length = sum(len(document) for document in documents)
        average_length = total_length / len(documents) if documents else 0.0
        return cls(len(documents), average_length, dict(document_frequency))

    def idf(self, term: str) -> float:
        """Get inverse document frequency of the term, never negative."""
        n = self.document_frequency.get(term, 0)
        return max(0.0, math.log(1.0 + (self.document_count - n + 0.5) / (n + 0.5)))


def bm25_score(
    stats: CorpusStatistics,
    query_terms: Sequence[str],
    doc_terms: Sequence[str],
    *,
    k1: float = 1.2,
    b: float = 0.75,
) -> float:
    """Score a tokenized document against tokenized query terms."""
    if not doc_terms or stats.average_length == 0.0:
        return 0.0

    frequencies = Counter(doc_terms)
    length_norm = k1 * (1.0 - b + b * len(doc_terms) / stats.average_length)

    score = 0.0
    for term in query_terms:
        frequency = frequencies.get(term, 0)
        if frequency == 0:
            continue

        score += stats.idf(term) * frequency * (k1 + 1.0) / (frequency + length_norm)

    return score


@attr.s(slots=True)
class Bm25Scorer(Scorer):
    """Statistic-based scorer - the corpus is the candidate list of each call."""

    def _score(self, query_text: str, candidates: Sequence[Candidate], topic_labels: Sequence[str]) -> ScoreVector:
        """Score candidates with Okapi BM25."""
        documents = [tokenize(candidate.text) for candidate in candidates]
        stats = CorpusStatistics.from_documents(documents)
        query_terms = tokenize(query_text)
        return [bm25_score(stats, query_terms, document, k1=self.config.k1, b=self.config.b) for document in documents]
