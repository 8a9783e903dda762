"""Small immutable graph types with bit-row adjacency.

Vertices are integers 0..n-1. Adjacency is kept as one Python int per
vertex, used as a bitset, so neighbourhood intersections and scans over
triples are word-parallel. Signed digraphs keep four rows per vertex
(out-positive, out-negative, in-positive, in-negative); every other view
is derived from those.

All types are frozen after construction and safe to share between
threads.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import SimplicityError

POSITIVE = "+"
NEGATIVE = "-"


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def _check_simple(n: int, seen_pairs: dict, u: int, v: int) -> None:
    if u == v:
        raise SimplicityError(f"self-loop at vertex {u}")
    if not (0 <= u < n and 0 <= v < n):
        raise SimplicityError(f"edge ({u}, {v}) out of range for {n} vertices")
    if (u, v) in seen_pairs:
        raise SimplicityError(f"duplicate edge ({u}, {v})")
    if (v, u) in seen_pairs:
        raise SimplicityError(f"edges in both directions between {u} and {v}")
    seen_pairs[(u, v)] = True


class Digraph:
    """Simple digraph: no loops, at most one direction per vertex pair."""

    __slots__ = ("vertex_count", "_edges", "out_bits", "in_bits")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        self.vertex_count = vertex_count
        out_bits = [0] * vertex_count
        in_bits = [0] * vertex_count
        seen: dict = {}
        for u, v in edges:
            _check_simple(vertex_count, seen, u, v)
            out_bits[u] |= 1 << v
            in_bits[v] |= 1 << u
        self._edges = tuple(sorted(seen))
        self.out_bits = tuple(out_bits)
        self.in_bits = tuple(in_bits)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.out_bits[u] >> v & 1)

    def out_neighbors(self, u: int) -> Iterator[int]:
        return iter_bits(self.out_bits[u])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self._edges == other._edges

    def __repr__(self) -> str:
        return f"Digraph(v={self.vertex_count}, e={self.edge_count})"


class SignedDigraph:
    """Simple digraph whose every edge carries a sign ('+' or '-').

    ``parent_index`` maps local indices back to the graph an induced
    subdigraph was taken from; it is None for graphs built directly.
    """

    __slots__ = (
        "vertex_count",
        "labels",
        "parent_index",
        "pos_out",
        "pos_in",
        "neg_out",
        "neg_in",
        "_edges",
    )

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[tuple[int, int, str]],
        labels: Sequence[str] | None = None,
        parent_index: Sequence[int] | None = None,
    ):
        self.vertex_count = vertex_count
        pos_out = [0] * vertex_count
        pos_in = [0] * vertex_count
        neg_out = [0] * vertex_count
        neg_in = [0] * vertex_count
        seen: dict = {}
        for u, v, sign in edges:
            _check_simple(vertex_count, seen, u, v)
            if sign == POSITIVE:
                pos_out[u] |= 1 << v
                pos_in[v] |= 1 << u
            elif sign == NEGATIVE:
                neg_out[u] |= 1 << v
                neg_in[v] |= 1 << u
            else:
                raise SimplicityError(f"edge ({u}, {v}) has invalid sign {sign!r}")
            seen[(u, v)] = sign
        self._edges = tuple((u, v, seen[(u, v)]) for u, v in sorted(seen))
        self.pos_out = tuple(pos_out)
        self.pos_in = tuple(pos_in)
        self.neg_out = tuple(neg_out)
        self.neg_in = tuple(neg_in)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != vertex_count:
                raise ValueError(
                    f"{len(labels)} labels for {vertex_count} vertices"
                )
            if len(set(labels)) != vertex_count:
                raise ValueError("labels are not unique")
            if not labels:
                labels = None  # no vertices carry no label information
        self.labels = labels
        self.parent_index = tuple(parent_index) if parent_index is not None else None

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def positive_edge_count(self) -> int:
        return sum(popcount(row) for row in self.pos_out)

    @property
    def negative_edge_count(self) -> int:
        return sum(popcount(row) for row in self.neg_out)

    def edges(self) -> tuple[tuple[int, int, str], ...]:
        return self._edges

    def out_bits(self, u: int) -> int:
        return self.pos_out[u] | self.neg_out[u]

    def in_bits(self, u: int) -> int:
        return self.pos_in[u] | self.neg_in[u]

    def adj_bits(self, u: int) -> int:
        return self.pos_out[u] | self.neg_out[u] | self.pos_in[u] | self.neg_in[u]

    def sign_of(self, u: int, v: int) -> str | None:
        if self.pos_out[u] >> v & 1:
            return POSITIVE
        if self.neg_out[u] >> v & 1:
            return NEGATIVE
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedDigraph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self._edges == other._edges
            and self.labels == other.labels
        )

    def __repr__(self) -> str:
        return (
            f"SignedDigraph(v={self.vertex_count}, "
            f"e+={self.positive_edge_count}, e-={self.negative_edge_count})"
        )


class UndirectedGraph:
    """Symmetric irreflexive adjacency over 0..n-1."""

    __slots__ = ("vertex_count", "adj", "_edges")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        self.vertex_count = vertex_count
        adj = [0] * vertex_count
        seen = set()
        for u, v in edges:
            if u == v:
                raise SimplicityError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise SimplicityError(
                    f"edge ({u}, {v}) out of range for {vertex_count} vertices"
                )
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in seen:
                raise SimplicityError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj = tuple(adj)
        self._edges = tuple(sorted(seen))

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, u: int) -> int:
        return popcount(self.adj[u])

    def induced(self, vertices: Iterable[int]) -> "UndirectedGraph":
        keep = _checked_vertex_list(self.vertex_count, vertices)
        index_of = {v: i for i, v in enumerate(keep)}
        edges = [
            (index_of[u], index_of[v])
            for u, v in self._edges
            if u in index_of and v in index_of
        ]
        return UndirectedGraph(len(keep), edges)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self._edges == other._edges

    def __repr__(self) -> str:
        return f"UndirectedGraph(v={self.vertex_count}, e={self.edge_count})"


@dataclass(frozen=True)
class TopoResult:
    """Either a full topological order or a directed cycle witness."""

    order: tuple[int, ...] | None
    cycle: tuple[int, ...] | None

    @property
    def is_acyclic(self) -> bool:
        return self.order is not None


def _out_rows(d) -> tuple[int, Sequence[int]]:
    if isinstance(d, SignedDigraph):
        return d.vertex_count, [d.out_bits(u) for u in range(d.vertex_count)]
    return d.vertex_count, d.out_bits


def topological_order(d) -> TopoResult:
    """Order the vertices of a digraph so every edge points forward.

    Accepts a Digraph or a SignedDigraph. Returns the lexicographically
    smallest topological order when the digraph is acyclic; otherwise a
    directed cycle, rotated to start at its smallest vertex.
    """
    n, out = _out_rows(d)
    indeg = [0] * n
    for u in range(n):
        for v in iter_bits(out[u]):
            indeg[v] += 1
    heap = [u for u in range(n) if indeg[u] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in iter_bits(out[u]):
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    if len(order) == n:
        return TopoResult(order=tuple(order), cycle=None)
    # Walk backwards through the leftover subgraph (all indegrees >= 1
    # there) until a vertex repeats; the repeated segment is a cycle.
    remaining = set(range(n)) - set(order)
    rem_mask = 0
    for v in remaining:
        rem_mask |= 1 << v
    ins = [0] * n
    for u in remaining:
        for v in iter_bits(out[u] & rem_mask):
            ins[v] |= 1 << u
    start = min(remaining)
    seen_at: dict[int, int] = {}
    trail = []
    v = start
    while v not in seen_at:
        seen_at[v] = len(trail)
        trail.append(v)
        v = next(iter_bits(ins[v]))
    cycle = trail[seen_at[v] :]
    cycle.reverse()  # trail followed in-edges, so reverse for edge direction
    k = cycle.index(min(cycle))
    cycle = cycle[k:] + cycle[:k]
    return TopoResult(order=None, cycle=tuple(cycle))


def _checked_vertex_list(n: int, vertices: Iterable[int]) -> list[int]:
    keep = sorted(set(vertices))
    if keep and (keep[0] < 0 or keep[-1] >= n):
        bad = keep[0] if keep[0] < 0 else keep[-1]
        raise ValueError(f"vertex {bad} out of range for {n} vertices")
    return keep


def induced_subdigraph(d: SignedDigraph, vertices: Iterable[int]) -> SignedDigraph:
    """Restrict a signed digraph to a vertex set, preserving signs.

    The result's ``parent_index`` records, for each new index, the vertex
    it came from.
    """
    keep = _checked_vertex_list(d.vertex_count, vertices)
    index_of = {v: i for i, v in enumerate(keep)}
    edges = [
        (index_of[u], index_of[v], sign)
        for u, v, sign in d.edges()
        if u in index_of and v in index_of
    ]
    labels = [d.labels[v] for v in keep] if d.labels is not None else None
    return SignedDigraph(len(keep), edges, labels=labels, parent_index=keep)


def underlying(d: SignedDigraph) -> UndirectedGraph:
    """Forget directions and signs: adjacent iff some edge joins the pair."""
    return UndirectedGraph(
        d.vertex_count, ((u, v) for u, v, _ in d.edges())
    )
