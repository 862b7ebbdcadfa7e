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

"""Test cross-encoder rerank scoring."""

from typing import Any
from typing import Dict
from typing import List

import pytest

from lego.graphrag.enums import CandidateKind
from lego.graphrag.exceptions import ScorerProtocolError
from lego.graphrag.render import Candidate
from lego.graphrag.scorer import Scorer
from lego.graphrag.scorer import ScorerConfig
from lego.graphrag.scorers import RerankScorer

from ..base import GraphRAGTestCase

_CANDIDATES = [Candidate(CandidateKind.PATH, f"path {i}") for i in range(5)]


class _RecordingRerankScorer(RerankScorer):
    """Answer requests locally, a document scores by its number."""

    requests: List[Dict[str, Any]] = []
    response: Any = None

    def post(self, payload: Dict[str, Any], start: int, end: int) -> Any:
        self.requests.append(payload)
        if self.response is not None:
            return self.response

        results = [
            {"index": i, "relevance_score": float(text.split()[-1])} for i, text in enumerate(payload["documents"])
        ]
        return {"results": sorted(results, key=lambda item: -item["relevance_score"])}


def _remote(batch_size: int = 32, response: Any = None) -> _RecordingRerankScorer:
    config = ScorerConfig.from_dict(
        {
            "kind": "rerank",
            "endpoint": "http://localhost:8080/rerank",
            "model": "bge-reranker",
            "batch_size": batch_size,
        }
    )
    scorer = _RecordingRerankScorer(config)
    scorer.requests = []
    scorer.response = response
    return scorer


class TestRerankScorer(GraphRAGTestCase):
    """Test cross-encoder rerank scoring."""

    def test_stub(self) -> None:
        """Test stub scores are deterministic."""
        scorer = Scorer.from_config(ScorerConfig.from_dict({"kind": "rerank", "endpoint": "stub"}))
        scores = scorer.score_batch("question", _CANDIDATES)
        assert scores == scorer.score_batch("question", _CANDIDATES)
        assert all(0.0 <= score < 1.0 for score in scores)

    def test_remote(self) -> None:
        """Test results are mapped back to candidates by index."""
        scorer = _remote()
        assert scorer.score_batch("question", _CANDIDATES) == [0.0, 1.0, 2.0, 3.0, 4.0]
        assert scorer.requests == [
            {"model": "bge-reranker", "query": "question", "documents": [c.text for c in _CANDIDATES]}
        ]

    def test_batches(self) -> None:
        """Test batches keep their offsets."""
        scorer = _remote(batch_size=2)
        assert scorer.score_batch("question", _CANDIDATES) == [0.0, 1.0, 2.0, 3.0, 4.0]
        assert len(scorer.requests) == 3

    @pytest.mark.parametrize(
        "response",
        [
            {"results": [{"index": 0, "relevance_score": 1.0}]},
            {"results": [{"index": 0, "relevance_score": 1.0}] * 5},
            {"results": [{"index": i + 1, "relevance_score": 1.0} for i in range(5)]},
            {"results": [{"index": i, "score": 1.0} for i in range(5)]},
            {"results": [{"index": i, "relevance_score": "high"} for i in range(5)]},
            {"data": []},
        ],
    )
    def test_protocol_error(self, response) -> None:  # type: ignore
        """Test malformed responses are reported as protocol errors."""
        scorer = _remote(response=response)
        with pytest.raises(ScorerProtocolError):
            scorer.score_batch("question", _CANDIDATES)
