from typing import Iterable

from pydantic import BaseModel, ConfigDict, Field

from .errors import EdgeNotFound, InvalidMoveSet, InvalidShift, NotACutEdge, SwitchConflict
from .graph import Edge, Graph


class RewriteResult(BaseModel):
    """A rewritten graph with the edges the rewrite removed and added"""

    graph: Graph
    removed: tuple[Edge, ...] = Field(default=(), description="Edges of the input that were deleted")
    added: tuple[Edge, ...] = Field(default=(), description="Edges of the output that are new")
    note: str = Field(default="", description="Human readable summary of the rewrite")

    model_config = ConfigDict(frozen=True)


def _require_edge(g: Graph, u: int, v: int) -> None:
    g.check_vertex(u)
    g.check_vertex(v)
    if not g.has_edge(u, v):
        raise EdgeNotFound(f"Edge ({u}, {v}) is not in the graph")


def graft(g: Graph, u: int, v: int, moved: Iterable[int]) -> RewriteResult:
    """Move the edges vw, w in moved, to uw.

    Args:
        g (Graph): Input graph
        u (int): Vertex receiving the edges
        v (int): Vertex losing the edges
        moved (Iterable[int]): Non-empty subset of N(v) minus N[u]

    Returns:
        RewriteResult

    Raises:
        InvalidMoveSet
    """
    g.check_vertex(u)
    g.check_vertex(v)
    moved = frozenset(moved)
    allowed = g.adjacency[v] - g.adjacency[u] - {u}
    if u == v or not moved or not moved <= allowed:
        raise InvalidMoveSet(
            f"Move set {sorted(moved)} must be a non-empty subset of {sorted(allowed)}"
        )
    removed = tuple((v, w) for w in sorted(moved))
    added = tuple((u, w) for w in sorted(moved))
    return RewriteResult(
        graph=g.with_edges(removed=removed, added=added),
        removed=removed,
        added=added,
        note=f"graft {sorted(moved)} from {v} to {u}",
    )


def is_cut_edge(g: Graph, u: int, v: int) -> bool:
    _require_edge(g, u, v)
    probe = g.with_edges(removed=[(u, v)])
    return probe.distances[u][v] < 0


def contract_cut_edge_with_pendant(g: Graph, u: int, v: int) -> RewriteResult:
    """Delete the cut edge uv, identify v with u and hang a pendant edge at u.

    The freed label v becomes the new pendant vertex, so the vertex count is
    unchanged. When v is a leaf the graph is returned as is.

    Raises:
        EdgeNotFound
        NotACutEdge
    """
    if not is_cut_edge(g, u, v):
        raise NotACutEdge(f"Edge ({u}, {v}) lies on a cycle")
    moved = g.adjacency[v] - {u}
    removed = tuple((v, w) for w in sorted(moved))
    added = tuple((u, w) for w in sorted(moved))
    return RewriteResult(
        graph=g.with_edges(removed=removed, added=added),
        removed=removed,
        added=added,
        note=f"contract cut edge ({u}, {v}) and re-attach {v} as a pendant vertex",
    )


def two_switch(g: Graph, u: int, v: int, w: int, y: int) -> RewriteResult:
    """Replace uv and wy by uw and vy.

    The quadruple is ordered: e1 = (u, v), e2 = (w, y), e1' = (u, w), e2' = (v, y).

    Raises:
        EdgeNotFound
        SwitchConflict
    """
    if len({u, v, w, y}) != 4:
        raise SwitchConflict(f"Switch vertices {(u, v, w, y)} are not distinct")
    _require_edge(g, u, v)
    _require_edge(g, w, y)
    if g.has_edge(u, w) or g.has_edge(v, y):
        raise SwitchConflict(
            f"Switching ({u}, {v}) and ({w}, {y}) would duplicate an existing edge"
        )
    removed = ((u, v), (w, y))
    added = ((u, w), (v, y))
    return RewriteResult(
        graph=g.with_edges(removed=removed, added=added),
        removed=removed,
        added=added,
        note=f"2-switch ({u}, {v}), ({w}, {y}) -> ({u}, {w}), ({v}, {y})",
    )


def subdivide(g: Graph, e: Edge) -> RewriteResult:
    """Replace the edge uv by the path u, n, v through a new vertex n

    Raises:
        EdgeNotFound
    """
    u, v = e
    _require_edge(g, u, v)
    fresh = g.n
    added = ((u, fresh), (fresh, v))
    return RewriteResult(
        graph=g.with_edges(removed=[(u, v)], added=added, n=g.n + 1),
        removed=((u, v),),
        added=added,
        note=f"subdivide ({u}, {v}) with vertex {fresh}",
    )


def attach_pendant(g: Graph, v: int) -> RewriteResult:
    g.check_vertex(v)
    return RewriteResult(
        graph=g.with_edges(added=[(v, g.n)], n=g.n + 1),
        added=((v, g.n),),
        note=f"pendant vertex {g.n} at {v}",
    )


def attach_path(g: Graph, v: int, length: int) -> tuple[Graph, tuple[int, ...]]:
    """Hang a path with `length` new vertices at v.

    Returns:
        tuple[Graph, tuple[int, ...]]: The graph and the new vertices, nearest to v first
    """
    g.check_vertex(v)
    if length < 0:
        raise ValueError(f"Path length must be non-negative, got {length}")
    fresh = tuple(range(g.n, g.n + length))
    chain = (v, *fresh)
    return (
        g.with_edges(added=list(zip(chain, chain[1:])), n=g.n + length),
        fresh,
    )


def coalesce(g: Graph, u: int, h: Graph, w: int) -> tuple[Graph, tuple[int, ...]]:
    """Identify the root u of g with the root w of h.

    Vertices of g keep their labels; the other vertices of h follow in order.

    Returns:
        tuple[Graph, tuple[int, ...]]: G(u,w)H and the label of every vertex of h in it
    """
    g.check_vertex(u)
    h.check_vertex(w)
    mapping = []
    nxt = g.n
    for x in range(h.n):
        if x == w:
            mapping.append(u)
        else:
            mapping.append(nxt)
            nxt += 1
    edges = [*g.edges, *((mapping[p], mapping[q]) for p, q in h.edges)]
    return Graph.from_edges(g.n + h.n - 1, edges), tuple(mapping)


def shift_pendant_paths(
    base: Graph, u: int, v: int, k: int, l: int
) -> tuple[Graph, Graph]:
    """G_{u,v}(k,l) and G_{u,v}(k-1,l+1), paths of k and l new vertices hung at u and v.

    Args:
        base (Graph): Host graph
        u (int): Root of the longer path
        v (int): Root of the shorter path, adjacent to u
        k (int): New vertices hung at u
        l (int): New vertices hung at v, k - l >= 2

    Returns:
        tuple[Graph, Graph]: (G_{u,v}(k,l), G_{u,v}(k-1,l+1))

    Raises:
        InvalidShift
    """
    base.check_vertex(u)
    base.check_vertex(v)
    if l < 0 or k - l < 2 or not base.has_edge(u, v):
        raise InvalidShift(
            f"Need k - l >= 2, l >= 0 and ({u}, {v}) an edge; got k={k}, l={l}"
        )

    def hang(a: int, b: int) -> Graph:
        first, _ = attach_path(base, u, a)
        second, _ = attach_path(first, v, b)
        return second

    return hang(k, l), hang(k - 1, l + 1)
