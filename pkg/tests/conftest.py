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

"""File conftest.py for pytest test suite."""

from typing import Dict

import pytest

from lego.graphrag.context import QueryContext
from lego.graphrag.enums import Direction
from lego.graphrag.graph import Graph
from lego.graphrag.path import ReasoningPath
from lego.graphrag.query import Query

from .base import GraphRAGTestCase


@pytest.fixture
def toy_graph() -> Graph:
    """Create a fixture for the Turing award toy graph."""
    return GraphRAGTestCase.load_toy_graph()


@pytest.fixture
def toy_queries(toy_graph: Graph) -> Dict[str, Query]:
    """Create a fixture for toy queries keyed by their id."""
    return GraphRAGTestCase.load_toy_queries(toy_graph)


@pytest.fixture
def toy_query(toy_queries: Dict[str, Query]) -> Query:
    """Create a fixture for the relational model question."""
    return toy_queries["q1"]


@pytest.fixture
def toy_path(toy_graph: Graph) -> ReasoningPath:
    """Create a fixture for the relational model reasoning path."""
    entity = toy_graph.entity_id
    relation = toy_graph.relations.get
    return (
        ReasoningPath.start(entity("Relational Model"))  # type: ignore
        .extend(relation("was developed"), Direction.FORWARD, entity("Edgar F. Codd"))  # type: ignore
        .extend(relation("awarded"), Direction.FORWARD, entity("ACM Turing Award"))  # type: ignore
    )


@pytest.fixture
def context(toy_graph: Graph, toy_query: Query) -> QueryContext:
    """Create a fixture for a clean context of the relational model question."""
    return QueryContext(graph=toy_graph, query=toy_query, seed=0)
