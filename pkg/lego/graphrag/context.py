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

"""Context carried during a single query run."""

import logging
from typing import Any
from typing import List
from typing import Optional
from typing import Set

import attr

from .beam import Beam
from .graph import Graph
from .query import Query
from .utils import log_once

_LOGGER = logging.getLogger(__name__)


@attr.s(slots=True)
class QueryContext:
    """Context of one query going through the three pipeline stages.

    Each query gets its own context so queries can be retrieved concurrently with shared units.
    """

    graph = attr.ib(type=Graph, kw_only=True)
    query = attr.ib(type=Query, kw_only=True)
    seed = attr.ib(type=int, kw_only=True, default=0)
    warnings = attr.ib(type=List[str], kw_only=True, factory=list)
    beam = attr.ib(type=Optional[Beam], kw_only=True, default=None)

    _log_state = attr.ib(type=Set[Any], kw_only=True, factory=set)

    @property
    def topic_labels(self) -> List[str]:
        """Get sorted labels of topic entities."""
        return sorted(self.graph.entity_label(entity) for entity in self.query.topic_entities)

    def warn(self, key: Any, msg: str, *args: Any) -> None:
        """Record a per-query warning, log it once per key."""
        text = msg % args if args else msg
        if key not in self._log_state:
            self.warnings.append(text)

        log_once(_LOGGER, self._log_state, key, "Query %r: %s", self.query.id, text)
