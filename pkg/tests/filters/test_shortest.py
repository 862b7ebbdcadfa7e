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

"""Test keeping shortest paths from topic entities."""

from typing import Dict
from typing import List

from hypothesis import given
from hypothesis import settings
from hypothesis.strategies import data
from hypothesis.strategies import integers
from hypothesis.strategies import lists
from hypothesis.strategies import tuples

from lego.graphrag.context import QueryContext
from lego.graphrag.graph import Graph
from lego.graphrag.path import PathSet
from lego.graphrag.path import ReasoningPath
from lego.graphrag.filters import ShortestPathFilter
from lego.graphrag.filters import shortest_paths_from
from lego.graphrag.path_filter import filter_paths
from lego.graphrag.query import Query
from lego.graphrag.render import render_path

from ..base import GraphRAGUnitTestCase

_TRIPLES = lists(tuples(integers(0, 29), integers(0, 2), integers(0, 29)), min_size=1, max_size=40)


def simple_paths(graph: Graph, seed: int, max_hops: int) -> List[ReasoningPath]:
    """Enumerate simple paths by plain recursion."""
    result = []

    def visit(path: ReasoningPath) -> None:
        if path.hops:
            result.append(path)

        if path.hops == max_hops:
            return

        for relation, neighbour, direction in graph.out_edges(path.target):
            if neighbour not in path.entities:
                visit(path.extend(relation, direction, neighbour))

    visit(ReasoningPath.start(seed))
    return result


class TestShortestPathFilter(GraphRAGUnitTestCase):
    """Test keeping shortest paths from topic entities."""

    UNIT_TESTED = ShortestPathFilter

    def test_toy(self, toy_graph: Graph) -> None:
        """Test every reachable entity gets its shortest path."""
        paths = shortest_paths_from(toy_graph, self.entity(toy_graph, "Relational Model"))
        rendered = [render_path(path, toy_graph) for path in paths]
        assert len(rendered) == 6
        assert self.TOY_PATH_TEXT in rendered
        assert "Relational Model -> was developed -> Edgar F. Codd" in rendered
        assert not paths.truncated
        assert [path.hops for path in paths] == sorted(path.hops for path in paths)

    def test_hop_cap(self, toy_graph: Graph) -> None:
        """Test entities farther than the hop cap are not reached."""
        paths = shortest_paths_from(toy_graph, self.entity(toy_graph, "Relational Model"), hop_cap=2)
        assert [render_path(path, toy_graph) for path in paths] == [
            "Relational Model -> was developed -> Edgar F. Codd",
            self.TOY_PATH_TEXT,
        ]

    def test_all_shortest(self) -> None:
        """Test all shortest paths to an entity are kept, longer ones are not."""
        graph = Graph.from_lines(["a\tr\tb\n", "a\tr\tc\n", "b\tr\td\n", "c\tr\td\n", "a\tr\td\n"])
        paths = shortest_paths_from(graph, 0)
        assert len(paths) == 3
        assert all(path.hops == 1 for path in paths)

        graph = Graph.from_lines(["a\tr\tb\n", "a\tr\tc\n", "b\tr\td\n", "c\tr\td\n"])
        paths = shortest_paths_from(graph, 0)
        assert sorted(path.hops for path in paths) == [1, 1, 2, 2]

    def test_truncated(self, toy_graph: Graph) -> None:
        """Test the path cap truncates enumeration."""
        paths = shortest_paths_from(toy_graph, self.entity(toy_graph, "Relational Model"), path_cap=2)
        assert len(paths) == 2
        assert paths.truncated

    def test_seed_not_in_subgraph(self, toy_graph: Graph) -> None:
        """Test a seed outside the subgraph yields no paths."""
        subgraph = toy_graph.induced_subgraph({self.entity(toy_graph, "PostgreSQL")})
        assert shortest_paths_from(subgraph, self.entity(toy_graph, "Jim Gray")) == PathSet()

    def test_isolated_seed(self, toy_graph: Graph) -> None:
        """Test a seed without edges yields no paths."""
        subgraph = toy_graph.induced_subgraph({self.entity(toy_graph, "PostgreSQL")})
        assert len(shortest_paths_from(subgraph, self.entity(toy_graph, "PostgreSQL"))) == 0

    @given(_TRIPLES, data())
    @settings(max_examples=100, deadline=None)
    def test_oracle(self, triples, draw) -> None:  # type: ignore
        """Test against shortest ones out of all simple paths."""
        graph = Graph.from_lines(f"e{s}\tr{r}\te{t}\n" for s, r, t in triples)
        seed = draw.draw(integers(0, graph.entity_count - 1))
        hop_cap = draw.draw(integers(1, 4))

        shortest: Dict[int, int] = {}
        candidates = simple_paths(graph, seed, hop_cap)
        for path in candidates:
            shortest[path.target] = min(shortest.get(path.target, path.hops), path.hops)

        expected = PathSet.canonical(path for path in candidates if path.hops == shortest[path.target])
        assert shortest_paths_from(graph, seed, hop_cap) == expected

    def test_run(self, context: QueryContext) -> None:
        """Test running the unit for the query topic entities."""
        paths = self.make_unit(hop_cap=2).run(context, context.graph)
        assert len(paths) == 2

    def test_run_warns(self, toy_graph: Graph) -> None:
        """Test missing seeds and truncation are recorded as warnings."""
        seeds = {self.entity(toy_graph, "Relational Model"), self.entity(toy_graph, "Jim Gray")}
        query = Query("x", "?", seeds)
        context = self.context(toy_graph, query)
        subgraph = toy_graph.induced_subgraph(
            {self.entity(toy_graph, label) for label in ("Relational Model", "Edgar F. Codd", "ACM Turing Award")}
        )
        paths = self.make_unit(path_cap=1).run(context, subgraph)
        assert len(paths) == 1
        assert paths.truncated
        assert len(context.warnings) == 2

    def test_filter_paths(self, toy_graph: Graph, toy_query: Query) -> None:
        """Test the stage function."""
        paths = filter_paths(toy_graph, toy_query, {"method": "spf", "hop_cap": 2})
        assert len(paths) == 2
