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

"""A base class for implementing scorers and their configuration."""

import abc
import logging
import math
import threading
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

import attr
import numpy as np
from voluptuous import All
from voluptuous import Any as SchemaAny
from voluptuous import Invalid
from voluptuous import Length
from voluptuous import Optional as SchemaOptional
from voluptuous import Range
from voluptuous import Required
from voluptuous import Schema

from .enums import ScorerKind
from .exceptions import ContractViolation
from .exceptions import PipelineConfigurationError
from .exceptions import ScorerProtocolError
from .render import Candidate

_LOGGER = logging.getLogger(__name__)

ScoreVector = List[float]

STUB_ENDPOINT = "stub"

_POSITIVE_INT = All(int, Range(min=1))
_COMMON_SCORER_KEYS = {Required("kind"): str, SchemaOptional("batch_size"): _POSITIVE_INT}
_REMOTE_SCORER_KEYS = {
    **_COMMON_SCORER_KEYS,
    Required("endpoint"): All(str, Length(min=1)),
    SchemaOptional("model"): SchemaAny(None, All(str, Length(min=1))),
    SchemaOptional("max_in_flight"): _POSITIVE_INT,
    SchemaOptional("timeout"): All(SchemaAny(int, float), Range(min=0, min_included=False)),
}

SCORER_SCHEMAS: Dict[ScorerKind, Schema] = {
    ScorerKind.BM25: Schema(
        {
            **_COMMON_SCORER_KEYS,
            SchemaOptional("k1"): All(SchemaAny(int, float), Range(min=0, min_included=False)),
            SchemaOptional("b"): All(SchemaAny(int, float), Range(min=0, max=1)),
        }
    ),
    ScorerKind.RANDOM: Schema({**_COMMON_SCORER_KEYS, SchemaOptional("seed"): SchemaAny(None, int)}),
    ScorerKind.EMBEDDING: Schema(_REMOTE_SCORER_KEYS),
    ScorerKind.RERANK: Schema(_REMOTE_SCORER_KEYS),
    ScorerKind.LLM: Schema(_REMOTE_SCORER_KEYS),
}


def _scorer_kind(value: Any) -> ScorerKind:
    if isinstance(value, ScorerKind):
        return value

    return ScorerKind.by_name(value)  # type: ignore


@attr.s(slots=True, frozen=True)
class ScorerConfig:
    """Configuration of a scorer, one of the supported kinds."""

    kind = attr.ib(type=ScorerKind, converter=_scorer_kind)
    endpoint = attr.ib(type=Optional[str], default=None, kw_only=True)
    model = attr.ib(type=Optional[str], default=None, kw_only=True)
    batch_size = attr.ib(type=int, default=32, kw_only=True)
    seed = attr.ib(type=Optional[int], default=None, kw_only=True)
    k1 = attr.ib(type=float, default=1.2, kw_only=True)
    b = attr.ib(type=float, default=0.75, kw_only=True)
    max_in_flight = attr.ib(type=int, default=8, kw_only=True)
    timeout = attr.ib(type=float, default=30.0, kw_only=True)

    def __attrs_post_init__(self) -> None:
        """Check cross-field constraints."""
        if self.kind.is_remote and not self.endpoint:
            raise PipelineConfigurationError(f"Scorer of kind {self.kind.name.lower()!r} requires an endpoint")

        if self.k1 <= 0 or not 0 <= self.b <= 1:
            raise PipelineConfigurationError(f"Invalid BM25 parameters k1={self.k1!r}, b={self.b!r}")

        if self.batch_size < 1 or self.max_in_flight < 1:
            raise PipelineConfigurationError("Scorer batch size and in-flight limit have to be positive")

    @property
    def is_stub(self) -> bool:
        """Check whether the scorer is configured to answer locally with deterministic stub scores."""
        return self.endpoint == STUB_ENDPOINT

    @classmethod
    def from_dict(cls, dict_: Dict[str, Any]) -> "ScorerConfig":
        """Validate and instantiate scorer configuration from its dictionary form."""
        if not isinstance(dict_, dict) or "kind" not in dict_:
            raise PipelineConfigurationError(f"Scorer configuration has to state its kind, got {dict_!r}")

        try:
            kind = _scorer_kind(dict_["kind"])
            SCORER_SCHEMAS[kind](dict_)
        except (Invalid, ValueError) as exc:
            raise PipelineConfigurationError(f"Invalid scorer configuration: {exc}") from exc

        return cls(**{**dict_, "kind": kind})

    def to_dict(self) -> Dict[str, Any]:
        """Convert configuration to its canonical dictionary form, keys relevant to the kind only."""
        result: Dict[str, Any] = {"kind": self.kind.name.lower(), "batch_size": self.batch_size}
        if self.kind == ScorerKind.BM25:
            result.update({"k1": self.k1, "b": self.b})
        elif self.kind == ScorerKind.RANDOM:
            result["seed"] = self.seed
        else:
            result.update(
                {
                    "endpoint": self.endpoint,
                    "model": self.model,
                    "max_in_flight": self.max_in_flight,
                    "timeout": self.timeout,
                }
            )

        return result


@attr.s(slots=True)
class Scorer(metaclass=abc.ABCMeta):
    """A base class for implementing scorers - relevance functions over rendered candidates."""

    config = attr.ib(type=ScorerConfig)
    default_seed = attr.ib(type=int, default=0, kw_only=True)

    _failures = attr.ib(type=int, default=0, init=False)
    _failures_lock = attr.ib(type=Any, init=False, factory=threading.Lock)

    @classmethod
    def from_config(cls, config: ScorerConfig, *, default_seed: int = 0) -> "Scorer":
        """Instantiate a scorer implementation for the given configuration."""
        from .scorers import SCORERS

        return SCORERS[config.kind](config, default_seed=default_seed)  # type: ignore

    @property
    def name(self) -> str:
        """Get name of the scorer."""
        return self.__class__.__name__

    @property
    def failures(self) -> int:
        """Get number of times the scorer had to fall back to uniform scores."""
        return self._failures

    def record_failure(self) -> None:
        """Count a degraded scoring call."""
        with self._failures_lock:
            self._failures += 1

    def score_batch(
        self, query_text: str, candidates: Sequence[Candidate], *, topic_labels: Sequence[str] = ()
    ) -> ScoreVector:
        """Score candidates against the query, scores aligned with the candidate list."""
        if not candidates:
            raise ContractViolation("No candidates to score")

        scores = self._score(query_text, candidates, topic_labels)
        if len(scores) != len(candidates):
            raise ScorerProtocolError(
                f"Scorer {self.name} produced {len(scores)} scores for {len(candidates)} candidates",
                start=0,
                end=len(candidates),
            )

        result = [float(score) for score in scores]
        if not all(math.isfinite(score) for score in result):
            raise ScorerProtocolError(f"Scorer {self.name} produced non-finite scores", start=0, end=len(candidates))

        return result

    @abc.abstractmethod
    def _score(self, query_text: str, candidates: Sequence[Candidate], topic_labels: Sequence[str]) -> ScoreVector:
        """Score the given non-empty candidate list."""

    def close(self) -> None:
        """Release resources held by the scorer."""

    def to_dict(self) -> Dict[str, Any]:
        """Turn the scorer into its dictionary representation."""
        return {"name": self.name, "configuration": self.config.to_dict(), "failures": self.failures}


def score_batch(scorer: Scorer, query_text: str, candidates: Sequence[Candidate]) -> ScoreVector:
    """Score candidates against the query text with the given scorer."""
    return scorer.score_batch(query_text, candidates)


def cosine_similarity(a: Sequence[float], b: Sequence[float]) -> float:
    """Compute cosine similarity of two vectors, zero vectors score 0."""
    vector_a = np.asarray(a, dtype=np.float64)
    vector_b = np.asarray(b, dtype=np.float64)
    if vector_a.shape != vector_b.shape:
        raise ScorerProtocolError(f"Vectors of different dimension: {vector_a.shape} and {vector_b.shape}")

    norm = float(np.linalg.norm(vector_a) * np.linalg.norm(vector_b))
    if norm == 0.0:
        _LOGGER.warning("Degenerate zero embedding vector, similarity defaults to 0")
        return 0.0

    return float(np.clip(np.dot(vector_a, vector_b) / norm, -1.0, 1.0))
