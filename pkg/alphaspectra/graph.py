import math
from collections import defaultdict
from functools import cached_property
from pathlib import Path
from typing import Annotated, Iterable, Iterator, Literal, Optional

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic.functional_validators import AfterValidator

from .errors import DisconnectedGraph, InvalidGraph6, TreeHasNoBase, VertexOutOfRange
from .validators import val_non_negative_int, val_simple_edges

Edge = tuple[int, int]


class Graph(BaseModel):
    """Finite simple undirected graph on the vertex labels 0..n-1.

    Instances are immutable and hashable. Derived structure (adjacency sets,
    distance table, canonical certificate) is computed lazily and cached.
    """

    n: Annotated[int, AfterValidator(val_non_negative_int)] = Field(
        description="Number of vertices"
    )
    edges: Annotated[frozenset[tuple[int, int]], AfterValidator(val_simple_edges)] = (
        Field(
            default=frozenset(),
            description="Unordered vertex pairs, stored as (u, v) with u < v",
        )
    )

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _endpoints_in_range(self):
        for u, v in self.edges:
            if v >= self.n:
                raise ValueError(
                    f"Edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}"
                )
        return self

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        return cls(n=n, edges=frozenset(tuple(e) for e in edges))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Build a Graph from a networkx graph, relabelling nodes by sorted order"""
        order = {node: i for i, node in enumerate(sorted(graph.nodes))}
        return cls.from_edges(
            len(order), ((order[u], order[v]) for u, v in graph.edges)
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs BFS distances, -1 marking unreachable pairs"""
        graph = self.to_networkx()
        rows = []
        for v in range(self.n):
            reach = nx.single_source_shortest_path_length(graph, v)
            rows.append(tuple(reach.get(w, -1) for w in range(self.n)))
        return tuple(rows)

    @cached_property
    def certificate(self) -> tuple[int, tuple[Edge, ...]]:
        """Canonical certificate: equal for two graphs iff they are isomorphic"""
        return _canonical_certificate(self)

    def check_vertex(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"Vertex {v} is not in 0..{self.n - 1}")
        return v

    def degree(self, v: int) -> int:
        return self.degrees[self.check_vertex(v)]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(sorted(self.edges))
        return graph

    def with_edges(
        self,
        removed: Iterable[Edge] = (),
        added: Iterable[Edge] = (),
        n: Optional[int] = None,
    ) -> "Graph":
        """Return a copy with edges removed and added, optionally growing the vertex set"""
        drop = {(min(u, v), max(u, v)) for u, v in removed}
        kept = [e for e in self.edges if e not in drop]
        return Graph.from_edges(self.n if n is None else n, [*kept, *added])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"


class PathDescriptor(BaseModel):
    """A path u1 u2 ... ur inside a graph.

    Pendant paths list their root (the vertex of degree at least 3) first and
    end at a vertex of degree 1. Internal paths run between two vertices of
    degree at least 3 through vertices of degree 2; both ends coincide when the
    path closes into a cycle hanging at one vertex. Geodesic paths realise the
    diameter.
    """

    vertices: tuple[int, ...] = Field(min_length=1, description="Ordered vertices")
    kind: Literal["pendant", "internal", "geodesic"]

    model_config = ConfigDict(frozen=True)

    @model_validator(mode="after")
    def _consecutive_distinct(self):
        for a, b in zip(self.vertices, self.vertices[1:]):
            if a == b:
                raise ValueError(f"Consecutive path vertices must differ, got {a}")
        return self

    @property
    def length(self) -> int:
        """Number of edges on the path"""
        return len(self.vertices) - 1

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(zip(self.vertices, self.vertices[1:]))


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or nx.is_connected(g.to_networkx())


def degree_sequence(g: Graph) -> tuple[int, ...]:
    """Degrees in non-increasing order"""
    return tuple(sorted(g.degrees, reverse=True))


def _require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedGraph(f"Graph on {g.n} vertices is not connected")


def diameter(g: Graph) -> float:
    """Maximal distance between two vertices.

    Args:
        g (Graph): Any graph

    Returns:
        int | float: The diameter, or math.inf if g is disconnected
    """
    if not is_connected(g):
        return math.inf
    return max((max(row) for row in g.distances), default=0)


def cyclomatic_number(g: Graph) -> int:
    """m - n + 1 of a connected graph

    Raises:
        DisconnectedGraph
    """
    _require_connected(g)
    return g.m - g.n + 1


def base_with_mapping(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Strip pendant vertices until none remain.

    Args:
        g (Graph): Connected graph with at least one cycle

    Returns:
        tuple[Graph, tuple[int, ...]]: The base, relabelled 0..k-1, and the
            vertex of g that each base label stands for

    Raises:
        DisconnectedGraph
        TreeHasNoBase
    """
    if cyclomatic_number(g) < 1:
        raise TreeHasNoBase(f"Tree on {g.n} vertices has no base")
    core = nx.k_core(g.to_networkx(), 2)
    mapping = tuple(sorted(core.nodes))
    position = {v: i for i, v in enumerate(mapping)}
    return (
        Graph.from_edges(
            len(mapping), ((position[u], position[v]) for u, v in core.edges)
        ),
        mapping,
    )


def base(g: Graph) -> Graph:
    """The minimal c-cyclic subgraph of g, see base_with_mapping"""
    return base_with_mapping(g)[0]


def find_diameter_path(g: Graph) -> PathDescriptor:
    """Deterministic shortest path realising the diameter.

    The endpoint pair is the lexicographically smallest pair at maximal distance,
    and among its geodesics the lexicographically smallest vertex sequence is
    returned.

    Raises:
        DisconnectedGraph
    """
    _require_connected(g)
    dist = g.distances
    d = diameter(g)
    u, v = min((a, b) for a in range(g.n) for b in range(g.n) if dist[a][b] == d)
    walk = [u]
    while walk[-1] != v:
        here = walk[-1]
        walk.append(
            min(w for w in g.adjacency[here] if dist[w][v] == dist[here][v] - 1)
        )
    return PathDescriptor(vertices=tuple(walk), kind="geodesic")


def pendant_paths(g: Graph) -> list[PathDescriptor]:
    """Maximal pendant paths, root first.

    A path graph has no vertex of degree at least 3 and therefore no root; it
    yields no pendant path.
    """
    found = []
    for leaf in range(g.n):
        if g.degrees[leaf] != 1:
            continue
        walk = [leaf]
        prev, here = leaf, next(iter(g.adjacency[leaf]))
        while g.degrees[here] == 2:
            walk.append(here)
            prev, here = here, next(w for w in g.adjacency[here] if w != prev)
        if g.degrees[here] >= 3:
            walk.append(here)
            found.append(PathDescriptor(vertices=tuple(reversed(walk)), kind="pendant"))
    return sorted(found, key=lambda p: p.vertices)


def internal_paths(g: Graph) -> list[PathDescriptor]:
    """Paths whose ends have degree at least 3 and whose interior has degree 2"""
    seen = set()
    found = []
    for start in range(g.n):
        if g.degrees[start] < 3:
            continue
        for first in sorted(g.adjacency[start]):
            walk = [start, first]
            prev, here = start, first
            while g.degrees[here] == 2:
                prev, here = here, next(w for w in g.adjacency[here] if w != prev)
                walk.append(here)
            if g.degrees[here] < 3:
                continue
            key = min(tuple(walk), tuple(reversed(walk)))
            if key not in seen:
                seen.add(key)
                found.append(PathDescriptor(vertices=key, kind="internal"))
    return sorted(found, key=lambda p: p.vertices)


def _rank(values: list) -> list[int]:
    ranking = {value: i for i, value in enumerate(sorted(set(values)))}
    return [ranking[value] for value in values]


def _refine(adjacency: tuple[frozenset[int], ...], colors: list[int]) -> list[int]:
    # Colour refinement: split cells by the multiset of neighbour colours
    while True:
        refined = _rank(
            [
                (colors[v], tuple(sorted(colors[w] for w in adjacency[v])))
                for v in range(len(colors))
            ]
        )
        if max(refined, default=-1) == max(colors, default=-1):
            return refined
        colors = refined


def _are_twins(adjacency: tuple[frozenset[int], ...], u: int, v: int) -> bool:
    return adjacency[u] - {v} == adjacency[v] - {u}


def _search(
    adjacency: tuple[frozenset[int], ...],
    edges: frozenset[Edge],
    colors: list[int],
    best: Optional[tuple[Edge, ...]],
) -> tuple[Edge, ...]:
    cells = defaultdict(list)
    for v, c in enumerate(colors):
        cells[c].append(v)
    target = min((c for c, members in cells.items() if len(members) > 1), default=None)
    if target is None:
        certificate = tuple(
            sorted(
                (min(colors[u], colors[v]), max(colors[u], colors[v])) for u, v in edges
            )
        )
        return certificate if best is None or certificate < best else best

    tried: list[int] = []
    for v in cells[target]:
        # Swapping twins is an automorphism fixing the partition
        if any(_are_twins(adjacency, v, t) for t in tried):
            continue
        tried.append(v)
        individualised = [2 * c for c in colors]
        individualised[v] -= 1
        best = _search(adjacency, edges, _refine(adjacency, _rank(individualised)), best)
    return best


def _canonical_certificate(g: Graph) -> tuple[int, tuple[Edge, ...]]:
    # Initial colours: degree, then the sorted distance profile
    invariant = [
        (g.degrees[v], tuple(sorted(d if d >= 0 else g.n for d in g.distances[v])))
        for v in range(g.n)
    ]
    colors = _refine(g.adjacency, _rank(invariant))
    return g.n, _search(g.adjacency, g.edges, colors, None)


def canonical_form(g: Graph) -> Graph:
    """Relabelled copy of g that is identical for all graphs isomorphic to g.

    Colour refinement seeded by degrees and distance profiles, then
    individualisation with backtracking. Twin vertices (equal open or closed
    neighbourhoods) are explored once per cell, which keeps stars, brooms and
    the pendant-heavy extremal graphs linear in the number of leaves.
    """
    n, edges = g.certificate
    return Graph(n=n, edges=frozenset(edges))


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or degree_sequence(g) != degree_sequence(h):
        return False
    return g.certificate == h.certificate


def to_graph6(g: Graph) -> str:
    """graph6 string without header or trailing newline"""
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def from_graph6(text: str) -> Graph:
    """Parse one graph6 string, with or without the >>graph6<< header

    Raises:
        InvalidGraph6: naming the offending character position
    """
    body = text.strip()
    offset = 10 if body.startswith(">>graph6<<") else 0
    if not body[offset:]:
        raise InvalidGraph6("Empty graph6 string")
    for position, char in enumerate(body[offset:], start=offset):
        if not 63 <= ord(char) <= 126:
            raise InvalidGraph6(
                f"Invalid graph6 character {char!r} at position {position}"
            )
    try:
        graph = nx.from_graph6_bytes(body.encode("ascii"))
    except (nx.NetworkXError, ValueError) as e:
        raise InvalidGraph6(f"Malformed graph6 string {body!r}: {e}")
    return Graph.from_networkx(graph)


def read_graph6_lines(path: Path) -> Iterator[Graph]:
    """Read a graph6 line file, skipping blank lines"""
    with open(path, encoding="ascii") as f:
        for line in f:
            if line.strip():
                yield from_graph6(line)


def write_graph6_lines(graphs: Iterable[Graph], path: Path) -> int:
    """Write one graph6 string per line and return the number written"""
    count = 0
    with open(path, "w", encoding="ascii") as f:
        for g in graphs:
            f.write(to_graph6(g) + "\n")
            count += 1
    return count
