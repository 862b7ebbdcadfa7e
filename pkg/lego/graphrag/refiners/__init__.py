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

"""Implementation of path refiners."""

from typing import Dict
from typing import Type

from ..refiner import Refiner
from .random_selection import RandomRefiner
from .random_selection import refine_random
from .scored import ScoredRefiner
from .scored import refine_scored

REFINERS: Dict[str, Type[Refiner]] = {
    RandomRefiner.METHOD: RandomRefiner,
    ScoredRefiner.METHOD: ScoredRefiner,
}

__all__ = ["REFINERS", "RandomRefiner", "ScoredRefiner", "refine_random", "refine_scored"]
