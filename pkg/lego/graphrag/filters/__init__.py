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

"""Implementation of path filters."""

from typing import Dict
from typing import Type

from ..path_filter import PathFilter
from .beam_search import BeamParams
from .beam_search import BeamSearchPathFilter
from .beam_search import beam_search_paths
from .complete import CompletePathFilter
from .complete import complete_paths_from
from .shortest import ShortestPathFilter
from .shortest import shortest_paths_from

PATH_FILTERS: Dict[str, Type[PathFilter]] = {
    ShortestPathFilter.METHOD: ShortestPathFilter,
    CompletePathFilter.METHOD: CompletePathFilter,
    BeamSearchPathFilter.METHOD: BeamSearchPathFilter,
}

__all__ = [
    "BeamParams",
    "BeamSearchPathFilter",
    "CompletePathFilter",
    "PATH_FILTERS",
    "ShortestPathFilter",
    "beam_search_paths",
    "complete_paths_from",
    "shortest_paths_from",
]
