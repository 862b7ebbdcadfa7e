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

"""LLM used as a scorer through the relation-scoring prompt."""

import logging
import math
from typing import Any
from typing import List
from typing import Optional
from typing import Sequence

import attr

from ..chat import ChatClient
from ..exceptions import GenerationError
from ..exceptions import ScorerError
from ..prompts import fill
from ..prompts import load_template
from ..render import Candidate
from ..scorer import ScoreVector
from ..utils import stable_unit_interval
from .remote import RemoteScorer
from .remote import SCORER_TOKEN_ENV

_LOGGER = logging.getLogger(__name__)

_SCORE_MARKER = "Score:"
_CANDIDATE_SEPARATOR = "; "


def parse_scores(completion: str, expected: int) -> Optional[List[float]]:
    """Parse the comma separated score list the model was asked for, None if it does not comply."""
    text = completion
    marker = text.rfind(_SCORE_MARKER)
    if marker != -1:
        text = text[marker + len(_SCORE_MARKER) :]

    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if not lines:
        return None

    try:
        scores = [float(part) for part in lines[0].rstrip(".").split(",")]
    except ValueError:
        return None

    if len(scores) != expected or not all(math.isfinite(score) for score in scores):
        return None

    return scores


@attr.s(slots=True)
class LLMScorer(RemoteScorer):
    """Ask a chat model to score candidates, fall back to uniform scores on unusable answers."""

    _chat = attr.ib(type=Optional[ChatClient], init=False, default=None)

    @property
    def chat(self) -> ChatClient:
        """Get the chat client talking to the configured endpoint."""
        with self._session_lock:
            if self._chat is None:
                self._chat = ChatClient(
                    self.config.endpoint,  # type: ignore
                    self.config.model,
                    timeout=self.config.timeout,
                    max_in_flight=self.config.max_in_flight,
                    token_env=SCORER_TOKEN_ENV,
                )

            return self._chat

    def close(self) -> None:
        """Close the chat client."""
        if self._chat is not None:
            self._chat.close()

    def render_prompt(self, query_text: str, texts: Sequence[str], topic_labels: Sequence[str]) -> str:
        """Render the relation-scoring prompt for one batch."""
        return fill(
            load_template("score_relations"),
            question=query_text,
            topic=", ".join(topic_labels),
            candidates=_CANDIDATE_SEPARATOR.join(texts),
        )

    def _stub_completion(self, query_text: str, texts: Sequence[str]) -> str:
        scores = (stable_unit_interval("llm", self.config.model, query_text, text) for text in texts)
        return f"{_SCORE_MARKER} " + ", ".join(f"{score:.6f}" for score in scores)

    def _complete(self, prompt: str, query_text: str, texts: Sequence[str], start: int) -> str:
        if self.config.is_stub:
            return self._stub_completion(query_text, texts)

        try:
            return self.chat.complete_prompt(prompt)
        except GenerationError as exc:
            raise ScorerError(str(exc), start=start, end=start + len(texts)) from exc

    def _score_batch(self, query_text: str, topic_labels: Sequence[str], start: int, texts: Sequence[str]) -> List[Any]:
        prompt = self.render_prompt(query_text, texts, topic_labels)
        for attempt in range(2):
            scores = parse_scores(self._complete(prompt, query_text, texts, start), len(texts))
            if scores is not None:
                return scores

            _LOGGER.warning(
                "Model did not return %d scores for candidates %d-%d (attempt %d)",
                len(texts),
                start,
                start + len(texts),
                attempt + 1,
            )

        self.record_failure()
        return [1.0 / len(texts)] * len(texts)

    def _score(self, query_text: str, candidates: Sequence[Candidate], topic_labels: Sequence[str]) -> ScoreVector:
        """Score candidates batch by batch."""
        texts = [candidate.text for candidate in candidates]
        return self.map_batches(texts, lambda start, batch: self._score_batch(query_text, topic_labels, start, batch))
