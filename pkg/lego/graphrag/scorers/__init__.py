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

"""Implementation of scorers used across pipeline stages."""

from typing import Dict
from typing import Type

from ..enums import ScorerKind
from ..scorer import Scorer
from .bm25 import Bm25Scorer
from .embedding import EmbeddingScorer
from .llm import LLMScorer
from .random_score import RandomScorer
from .rerank import RerankScorer

SCORERS: Dict[ScorerKind, Type[Scorer]] = {
    ScorerKind.BM25: Bm25Scorer,
    ScorerKind.RANDOM: RandomScorer,
    ScorerKind.EMBEDDING: EmbeddingScorer,
    ScorerKind.RERANK: RerankScorer,
    ScorerKind.LLM: LLMScorer,
}

__all__ = [
    "Bm25Scorer",
    "EmbeddingScorer",
    "LLMScorer",
    "RandomScorer",
    "RerankScorer",
    "SCORERS",
]
