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

"""Implementation of subgraph extractors."""

from typing import Dict
from typing import Type

from ..extractor import Extractor
from .ppr import PersonalizedPageRank
from .ppr import PprParams
from .ppr import ppr_scores
from .ppr_scored import RefineParams
from .ppr_scored import ScoredPersonalizedPageRank
from .ppr_scored import semantic_refine
from .rwr import RandomWalkRestart
from .rwr import RwrParams
from .rwr import rwr_scores

EXTRACTORS: Dict[str, Type[Extractor]] = {
    PersonalizedPageRank.METHOD: PersonalizedPageRank,
    RandomWalkRestart.METHOD: RandomWalkRestart,
    ScoredPersonalizedPageRank.METHOD: ScoredPersonalizedPageRank,
}

__all__ = [
    "EXTRACTORS",
    "PersonalizedPageRank",
    "PprParams",
    "RandomWalkRestart",
    "RefineParams",
    "RwrParams",
    "ScoredPersonalizedPageRank",
    "ppr_scores",
    "rwr_scores",
    "semantic_refine",
]
