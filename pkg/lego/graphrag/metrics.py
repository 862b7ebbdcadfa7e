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

"""Precision, recall, F1 and hit ratio of retrieved entities against ground-truth answers."""

import logging
from typing import AbstractSet
from typing import Any
from typing import Dict
from typing import Iterable
from typing import Sequence
from typing import Tuple

import attr

from .exceptions import UndefinedMetricError
from .graph import Graph
from .path import PathSet
from .query import Query

_LOGGER = logging.getLogger(__name__)


def _f1(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0

    return 2 * precision * recall / (precision + recall)


@attr.s(slots=True, frozen=True)
class SetMetrics:
    """Precision, recall and their harmonic mean."""

    precision = attr.ib(type=float, default=0.0)
    recall = attr.ib(type=float, default=0.0)
    f1 = attr.ib(type=float, default=None)

    def __attrs_post_init__(self) -> None:
        """Compute F1 when not given."""
        if self.f1 is None:
            object.__setattr__(self, "f1", _f1(self.precision, self.recall))

    def to_dict(self) -> Dict[str, float]:
        """Convert metrics to a dictionary."""
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}

    @classmethod
    def from_dict(cls, dict_: Dict[str, Any]) -> "SetMetrics":
        """Restore metrics from a dictionary."""
        return cls(precision=dict_["precision"], recall=dict_["recall"], f1=dict_["f1"])


@attr.s(slots=True, frozen=True)
class StageMetrics:
    """Metrics of one pipeline checkpoint averaged over evaluated queries."""

    precision = attr.ib(type=float, default=0.0)
    recall = attr.ib(type=float, default=0.0)
    f1 = attr.ib(type=float, default=0.0)
    hit_ratio = attr.ib(type=float, default=0.0)
    query_count = attr.ib(type=int, default=0)

    @classmethod
    def aggregate(cls, items: Sequence[Tuple[SetMetrics, bool]]) -> "StageMetrics":
        """Average per query metrics, zeros when nothing was evaluated."""
        if not items:
            return cls()

        count = len(items)
        return cls(
            precision=sum(metrics.precision for metrics, _ in items) / count,
            recall=sum(metrics.recall for metrics, _ in items) / count,
            f1=sum(metrics.f1 for metrics, _ in items) / count,
            hit_ratio=hit_ratio([hit for _, hit in items]),
            query_count=count,
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert metrics to a dictionary."""
        return attr.asdict(self)


def set_metrics(pred: AbstractSet[Any], truth: AbstractSet[Any]) -> SetMetrics:
    """Compute precision and recall of predicted set against the ground truth."""
    common = len(pred & truth)
    precision = common / len(pred) if pred else 0.0
    recall = common / len(truth) if truth else 0.0
    return SetMetrics(precision=precision, recall=recall)


def evaluate_entities(entities: Iterable[int], query: Query) -> Tuple[SetMetrics, bool]:
    """Evaluate retrieved entities, report whether any answer was retrieved."""
    pred = frozenset(entities)
    return set_metrics(pred, query.answers), not pred.isdisjoint(query.answers)


def evaluate_subgraph(subgraph: Graph, query: Query) -> SetMetrics:
    """Evaluate entities of the subgraph against the query answers."""
    return set_metrics(subgraph.nodes, query.answers)


def evaluate_paths(paths: PathSet, query: Query) -> Tuple[SetMetrics, bool]:
    """Evaluate all entities appearing on any path against the query answers."""
    return evaluate_entities(paths.entities(), query)


def hit_ratio(hits: Sequence[bool]) -> float:
    """Compute fraction of hits."""
    if not hits:
        raise UndefinedMetricError("Hit ratio of an empty query set is undefined")

    return sum(1 for hit in hits if hit) / len(hits)
