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

"""A scorer assigning reproducible pseudo-random scores."""

from typing import Sequence

import attr

from ..render import Candidate
from ..scorer import Scorer
from ..scorer import ScoreVector
from ..utils import stable_unit_interval


@attr.s(slots=True)
class RandomScorer(Scorer):
    """Score each candidate by a hash of the seed, the query text and the candidate text."""

    @property
    def seed(self) -> int:
        """Get the seed in use, configuration wins over the instance seed."""
        return self.config.seed if self.config.seed is not None else self.default_seed

    def _score(self, query_text: str, candidates: Sequence[Candidate], topic_labels: Sequence[str]) -> ScoreVector:
        """Score candidates independently of each other."""
        seed = self.seed
        return [stable_unit_interval(seed, query_text, candidate.text) for candidate in candidates]
