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

"""An interned, immutable store of text-attributed triples with bidirectional adjacency."""

import logging
import threading
from typing import Any
from typing import Dict
from typing import FrozenSet
from typing import Iterable
from typing import Iterator
from typing import List
from typing import Optional
from typing import TextIO
from typing import Tuple

import attr
import numpy as np
from scipy.sparse import csr_matrix

from .enums import Direction
from .exceptions import ContractViolation
from .exceptions import EmptyGraphError
from .exceptions import GraphParseError

_LOGGER = logging.getLogger(__name__)

# (relation id, neighbour id, direction flag)
Edge = Tuple[int, int, Direction]


@attr.s(slots=True, frozen=True, order=True)
class Triple:
    """A directed labeled edge stated by interned ids."""

    source = attr.ib(type=int)
    relation = attr.ib(type=int)
    target = attr.ib(type=int)


@attr.s(slots=True)
class Vocabulary:
    """An interning table mapping dense ids to non-empty labels and back."""

    _labels = attr.ib(type=List[str], factory=list)
    _index = attr.ib(type=Dict[str, int], factory=dict)

    def __len__(self) -> int:
        """Get number of interned labels."""
        return len(self._labels)

    def __contains__(self, item: Any) -> bool:
        """Check whether the given id is a valid handle into this table."""
        return isinstance(item, (int, np.integer)) and 0 <= item < len(self._labels)

    def intern(self, label: str) -> int:
        """Intern the given label, return its id."""
        idx = self._index.get(label)
        if idx is None:
            idx = len(self._labels)
            self._labels.append(label)
            self._index[label] = idx

        return idx

    def get(self, label: str) -> Optional[int]:
        """Get id of the given label, if interned."""
        return self._index.get(label)

    def label(self, idx: int) -> str:
        """Get label of the given id."""
        if idx not in self:
            raise ContractViolation(f"Unknown id {idx!r}, the table holds {len(self._labels)} labels")

        return self._labels[idx]

    def labels(self) -> List[str]:
        """Get all labels in id order."""
        return list(self._labels)


@attr.s(slots=True)
class GraphMatrix:
    """Symmetrized adjacency of a graph in compressed sparse row form.

    Rows and columns are positions into `nodes`; a triple (s, r, t) contributes one unit to both
    (s, t) and (t, s), so the row sum is the in+out degree of the node.
    """

    nodes = attr.ib(type=np.ndarray)
    positions = attr.ib(type=Dict[int, int])
    adjacency = attr.ib(type=csr_matrix)
    degree = attr.ib(type=np.ndarray)


@attr.s(slots=True, eq=False)
class Graph:
    """A directed labeled graph, immutable after construction.

    Subgraphs share interning tables with the graph they were induced from. The set of nodes is
    tracked explicitly so a subgraph can hold entities without any incident triple.
    """

    entities = attr.ib(type=Vocabulary, kw_only=True)
    relations = attr.ib(type=Vocabulary, kw_only=True)
    triples = attr.ib(type=Tuple[Triple, ...], kw_only=True, converter=tuple)
    nodes = attr.ib(type=FrozenSet[int], kw_only=True, converter=frozenset)
    _ordinals = attr.ib(type=Tuple[int, ...], kw_only=True, default=None)

    _forward = attr.ib(type=Dict[int, List[Tuple[int, int, int]]], init=False, factory=dict)
    _backward = attr.ib(type=Dict[int, List[Tuple[int, int, int]]], init=False, factory=dict)
    _matrix = attr.ib(type=Optional[GraphMatrix], init=False, default=None)
    _matrix_lock = attr.ib(type=Any, init=False, factory=threading.Lock)

    def __attrs_post_init__(self) -> None:
        """Build forward and backward adjacency, sorted by relation id then neighbour id."""
        if self._ordinals is None:
            self._ordinals = tuple(range(len(self.triples)))

        for ordinal, triple in zip(self._ordinals, self.triples):
            self._forward.setdefault(triple.source, []).append((triple.relation, triple.target, ordinal))
            self._backward.setdefault(triple.target, []).append((triple.relation, triple.source, ordinal))

        for adjacency in (self._forward, self._backward):
            for edges in adjacency.values():
                edges.sort()

    def __eq__(self, other: Any) -> bool:
        """Check two graphs state the same nodes and triples under the same labels."""
        if not isinstance(other, Graph):
            return NotImplemented

        return (
            self.nodes == other.nodes
            and set(self.triples) == set(other.triples)
            and self.entities.labels() == other.entities.labels()
            and self.relations.labels() == other.relations.labels()
        )

    __hash__ = None  # type: ignore

    @classmethod
    def from_lines(cls, lines: Iterable[str]) -> "Graph":
        """Parse tab separated triples, one per line."""
        entities = Vocabulary()
        relations = Vocabulary()
        triples: List[Triple] = []
        seen = set()

        for line_number, line in enumerate(lines, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue

            parts = line.split("\t")
            if len(parts) != 3:
                raise GraphParseError(
                    f"Line {line_number}: expected 3 tab separated fields, got {len(parts)}", line=line_number
                )

            if not all(parts):
                raise GraphParseError(f"Line {line_number}: empty label", line=line_number)

            source, relation, target = parts
            triple = Triple(entities.intern(source), relations.intern(relation), entities.intern(target))
            if triple in seen:
                continue

            seen.add(triple)
            triples.append(triple)

        if not triples:
            raise EmptyGraphError("No triples stated in the input")

        _LOGGER.debug(
            "Loaded graph with %d entities, %d relations and %d triples", len(entities), len(relations), len(triples)
        )
        return cls(entities=entities, relations=relations, triples=triples, nodes=range(len(entities)))

    @classmethod
    def load(cls, path: str) -> "Graph":
        """Load graph from a TSV file."""
        _LOGGER.debug("Loading triples from %r", path)
        with open(path, "rb") as triples_file:
            return cls.from_lines(_decode_lines(triples_file))

    def to_tsv(self, output: TextIO) -> None:
        """Serialize triples back to the tab separated form."""
        for triple in self.triples:
            output.write(f"{self.render_triple_fields(triple)}\n")

    def render_triple_fields(self, triple: Triple) -> str:
        """Render a triple as a tab separated line (without the newline)."""
        return "\t".join(
            (
                self.entities.label(triple.source),
                self.relations.label(triple.relation),
                self.entities.label(triple.target),
            )
        )

    @property
    def entity_count(self) -> int:
        """Get number of entities (nodes) in this graph."""
        return len(self.nodes)

    @property
    def relation_count(self) -> int:
        """Get number of distinct relations used by triples in this graph."""
        return len({triple.relation for triple in self.triples})

    def entity_id(self, label: str) -> Optional[int]:
        """Resolve an entity label, None if it is not interned."""
        return self.entities.get(label)

    def entity_label(self, entity_id: int) -> str:
        """Get label of the given entity."""
        return self.entities.label(entity_id)

    def relation_label(self, relation_id: int) -> str:
        """Get label of the given relation."""
        return self.relations.label(relation_id)

    def has_edge(self, source: int, relation: int, target: int) -> bool:
        """Check the given triple is stored in this graph."""
        return any(r == relation and t == target for r, t, _ in self._forward.get(source, ()))

    def out_edges(self, v: int, direction: Direction = Direction.BOTH) -> List[Edge]:
        """Get edges incident to the given entity, forward edges first when asked for both."""
        if v not in self.entities:
            raise ContractViolation(f"Entity id {v!r} is not valid")

        result: List[Edge] = []
        if direction in (Direction.FORWARD, Direction.BOTH):
            result.extend((relation, target, Direction.FORWARD) for relation, target, _ in self._forward.get(v, ()))

        if direction in (Direction.BACKWARD, Direction.BOTH):
            result.extend(
                (relation, source, Direction.BACKWARD) for relation, source, _ in self._backward.get(v, ())
            )

        return result

    def induced_subgraph(self, keep: Iterable[int]) -> "Graph":
        """Get subgraph stating exactly triples with both endpoints in keep."""
        keep = frozenset(keep)
        for entity_id in keep:
            if entity_id not in self.entities:
                raise ContractViolation(f"Entity id {entity_id!r} is not valid")

        kept = keep & self.nodes
        selected = []
        for source in kept:
            for relation, target, ordinal in self._forward.get(source, ()):
                if target in kept:
                    selected.append((ordinal, Triple(source, relation, target)))

        selected.sort()
        return Graph(
            entities=self.entities,
            relations=self.relations,
            triples=[triple for _, triple in selected],
            nodes=kept,
            ordinals=tuple(ordinal for ordinal, _ in selected),
        )

    def restrict(self, triples: Iterable[Triple], nodes: Iterable[int]) -> "Graph":
        """Get a subgraph stating the given subset of triples and nodes."""
        triples = frozenset(triples)
        selected = [(o, t) for o, t in zip(self._ordinals, self.triples) if t in triples]  # type: ignore
        return Graph(
            entities=self.entities,
            relations=self.relations,
            triples=[triple for _, triple in selected],
            nodes=frozenset(nodes) & self.nodes,
            ordinals=tuple(ordinal for ordinal, _ in selected),
        )

    def matrix(self) -> GraphMatrix:
        """Get symmetrized sparse adjacency, computed once per graph."""
        with self._matrix_lock:
            if self._matrix is None:
                nodes = np.array(sorted(self.nodes), dtype=np.int64)
                positions = {int(node): position for position, node in enumerate(nodes)}
                rows = np.fromiter((positions[t.source] for t in self.triples), dtype=np.int64, count=len(self.triples))
                cols = np.fromiter((positions[t.target] for t in self.triples), dtype=np.int64, count=len(self.triples))
                size = len(nodes)
                directed = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(size, size))
                adjacency = (directed + directed.T).tocsr()
                adjacency.sum_duplicates()
                adjacency.sort_indices()
                degree = np.asarray(adjacency.sum(axis=1)).ravel()
                self._matrix = GraphMatrix(nodes=nodes, positions=positions, adjacency=adjacency, degree=degree)

            return self._matrix


def _decode_lines(raw_lines: Iterable[bytes]) -> Iterator[str]:
    for line_number, raw_line in enumerate(raw_lines, start=1):
        try:
            yield raw_line.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphParseError(f"Line {line_number}: not valid UTF-8: {exc}", line=line_number) from exc


def load_triples(path: str) -> Graph:
    """Load, intern and index a tab separated triples file."""
    return Graph.load(path)


def dump_triples(graph: Graph, path: str) -> None:
    """Write triples of the given graph as a tab separated file."""
    with open(path, "w", encoding="utf-8") as triples_file:
        graph.to_tsv(triples_file)


def out_edges(graph: Graph, v: int, direction: Direction = Direction.BOTH) -> List[Edge]:
    """Get edges incident to v in deterministic order (relation id, then neighbour id)."""
    return graph.out_edges(v, direction)


def induced_subgraph(graph: Graph, keep: Iterable[int]) -> Graph:
    """Get the subgraph induced by the given entity set."""
    return graph.induced_subgraph(keep)
