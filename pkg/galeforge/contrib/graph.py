"""Cographical arrangements built from directed graphs and abelianized quivers."""
import itertools
import logging
from collections import Counter, deque
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from galeforge import lattice
from galeforge.arrangement import PolarizedArrangement, SignVector
from galeforge.exceptions import InvalidGraph, InvalidInput

logger = logging.getLogger(__name__)


def _components(vertices: Sequence[str], edges: Iterable[Tuple[str, str]]) -> Dict[str, str]:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for tail, head in edges:
        parent[find(tail)] = find(head)
    return {v: find(v) for v in vertices}


@dataclass(frozen=True)
class Graph:
    """A connected directed multigraph with a framing vertex."""

    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]
    framing: str

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidGraph("vertex names must be unique")
        if self.framing not in self.vertices:
            raise InvalidGraph(f"framing vertex {self.framing!r} is not a vertex")
        for tail, head in self.edges:
            for end in (tail, head):
                if end not in self.vertices:
                    raise InvalidGraph(f"edge endpoint {end!r} is not a vertex")
            if tail == head:
                raise InvalidGraph(f"self-loop at {tail!r} gives a circuit of support 1")
        if len(set(_components(self.vertices, self.edges).values())) > 1:
            raise InvalidGraph("graph is not connected")

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Graph":
        """Parse ``{"vertices": [...], "edges": [{"tail": .., "head": ..}], "framing": ..}``."""
        try:
            return cls(
                tuple(str(v) for v in data["vertices"]),
                tuple((str(e["tail"]), str(e["head"])) for e in data["edges"]),
                str(data["framing"]),
            )
        except KeyError as err:
            raise InvalidInput(f"graph is missing the {err.args[0]!r} field")
        except TypeError:
            raise InvalidInput("graph JSON does not match the schema")

    def to_json(self) -> Dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "edges": [{"tail": t, "head": h} for t, h in self.edges],
            "framing": self.framing,
        }

    @property
    def free_vertices(self) -> List[str]:
        return [v for v in self.vertices if v != self.framing]

    @property
    def edge_labels(self) -> List[str]:
        """Labels ``tail->head``, with ``#n`` appended to repeated parallel edges."""
        seen: Counter = Counter()
        labels = []
        for tail, head in self.edges:
            seen[(tail, head)] += 1
            label = f"{tail}->{head}"
            if seen[(tail, head)] > 1:
                label += f"#{seen[(tail, head)]}"
            labels.append(label)
        return labels


def coboundary(graph: Graph) -> np.ndarray:
    """The ``|E| x (|V| - 1)`` coboundary matrix, framing column dropped.

    Entry ``(e, v)`` is ``+1`` when ``v`` is the head of ``e`` and ``-1`` when
    it is the tail.
    """
    columns = {v: j for j, v in enumerate(graph.free_vertices)}
    matrix = np.zeros((len(graph.edges), len(columns)), dtype=object)
    for i, (tail, head) in enumerate(graph.edges):
        if head in columns:
            matrix[i, columns[head]] += 1
        if tail in columns:
            matrix[i, columns[tail]] -= 1
    return matrix


def to_arrangement(
    graph: Graph, eta: Sequence[int], zeta_lift: Sequence[int]
) -> PolarizedArrangement:
    """The validated cographical arrangement of ``graph``.

    :raises InvalidArrangement:
        If the parameters are not generic.
    """
    return PolarizedArrangement.from_matrix(
        lattice.to_rows(coboundary(graph)), eta, zeta_lift, graph.edge_labels
    ).validated()


def _is_spanning_tree(graph: Graph, subset: Sequence[int]) -> bool:
    edges = [graph.edges[i] for i in subset]
    return len(set(_components(graph.vertices, edges).values())) == 1


def spanning_trees(graph: Graph) -> List[Tuple[int, ...]]:
    """Edge index sets of all spanning trees, in lexicographic order."""
    size = len(graph.vertices) - 1
    trees = [
        subset
        for subset in itertools.combinations(range(len(graph.edges)), size)
        if _is_spanning_tree(graph, subset)
    ]
    logger.debug("%d spanning trees", len(trees))
    return trees


def tree_count(graph: Graph) -> int:
    """Number of spanning trees by the matrix-tree theorem."""
    B = coboundary(graph)
    return lattice.det(B.T.dot(B))


def abelianize(ranks: Sequence[int]) -> Graph:
    """Abelianization of the linear quiver with the given dimension vector.

    Vertex ``i`` is split into ``v{i}_1 .. v{i}_{r_i}`` and every arrow
    ``i -> i+1`` into all arrows ``v{i}_j -> v{i+1}_j'``. The framing is
    ``v1_1``.
    """
    if not ranks or any(int(r) < 1 for r in ranks):
        raise InvalidInput(f"ranks must be a nonempty list of positive integers, got {list(ranks)}")
    vertices = [f"v{i + 1}_{j + 1}" for i, r in enumerate(ranks) for j in range(r)]
    edges = [
        (f"v{i + 1}_{j + 1}", f"v{i + 2}_{j2 + 1}")
        for i in range(len(ranks) - 1)
        for j in range(ranks[i])
        for j2 in range(ranks[i + 1])
    ]
    return Graph(tuple(vertices), tuple(edges), vertices[0])


def top_index_signs(ranks: Sequence[int]) -> SignVector:
    """Signs on :func:`abelianize` edges, ``+`` exactly on arrows leaving ``v{i}_{r_i}``."""
    graph = abelianize(ranks)
    tops = {f"v{i + 1}_{r}" for i, r in enumerate(ranks)}
    return SignVector(tuple(1 if tail in tops else -1 for tail, _ in graph.edges))


def fundamental_cycle(graph: Graph, tree: Sequence[int], edge: int) -> Dict[int, int]:
    """Signed cycle in ``tree + edge`` crossing ``edge`` from tail to head.

    :returns:
        Map from edge index to ``+1`` (traversed along its orientation) or
        ``-1`` (against it).
    """
    if edge in tree:
        raise InvalidInput(f"edge {edge} already belongs to the tree")
    adjacency: Dict[str, List[Tuple[str, int, int]]] = {v: [] for v in graph.vertices}
    for i in tree:
        tail, head = graph.edges[i]
        adjacency[tail].append((head, i, 1))
        adjacency[head].append((tail, i, -1))

    tail, head = graph.edges[edge]
    # Walk the tree from head back to tail.
    previous: Dict[str, Optional[Tuple[str, int, int]]] = {head: None}
    queue = deque([head])
    while queue:
        v = queue.popleft()
        for w, i, direction in adjacency[v]:
            if w not in previous:
                previous[w] = (v, i, direction)
                queue.append(w)
    if tail not in previous:
        raise InvalidInput("tree does not connect the endpoints of the edge")

    cycle = {edge: 1}
    v = tail
    while previous[v] is not None:
        u, i, direction = previous[v]
        cycle[i] = direction
        v = u
    return cycle
