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

"""Keep a uniformly sampled subset of paths."""

import logging
from typing import Any
from typing import Dict

import attr
import numpy as np
from voluptuous import All
from voluptuous import Range
from voluptuous import Required
from voluptuous import Schema

from ..context import QueryContext
from ..graph import Graph
from ..path import PathSet
from ..refiner import Refiner

_LOGGER = logging.getLogger(__name__)


def refine_random(paths: PathSet, top_k: int, seed: int) -> PathSet:
    """Sample min(top_k, |paths|) paths without replacement, in the sampled order."""
    if len(paths) <= top_k:
        return paths

    rng = np.random.default_rng(seed)
    pool = list(paths)
    for i in range(top_k):
        j = int(rng.integers(i, len(pool)))
        pool[i], pool[j] = pool[j], pool[i]

    return PathSet(pool[:top_k], paths.truncated)


@attr.s(slots=True)
class RandomRefiner(Refiner):
    """Randomly select a fixed number of paths."""

    METHOD = "random"
    CONFIGURATION_DEFAULT: Dict[str, Any] = {"top_k": 64}
    CONFIGURATION_SCHEMA: Schema = Schema({Required("method"): METHOD, Required("top_k"): All(int, Range(min=1))})

    def run(self, context: QueryContext, subgraph: Graph, paths: PathSet) -> PathSet:
        """Sample paths using the query seed."""
        return refine_random(paths, self.configuration["top_k"], context.seed)
