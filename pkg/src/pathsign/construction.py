"""Recursive construction of the layered tuple digraphs and their
sign-derived graphs.

Level 1 is a single vertex. Level n glues n-1 disjoint copies of level
n-1 and, for every transversal tuple T = (x_1, ..., x_{n-1}) picking one
vertex per copy, adds a fresh vertex v_T with an edge from each x_i to
v_T. Vertex counts follow v(1) = 1, v(n) = (n-1) v(n-1) + v(n-1)^(n-1),
edge counts e(1) = 0, e(n) = (n-1) e(n-1) + (n-1) v(n-1)^(n-1).

Indices are assigned copy-major: all copies first (recursively, in copy
order), then the tuple block ordered lexicographically by the member
indices. That order is also topological, since every edge ends in a
strictly later block.

The derived signed digraph keeps the same vertex set. For every ordered
pair (u, v) joined by a directed path: length 1 mod 3 adds a positive
edge u -> v, length 2 mod 3 adds a negative edge v -> u, length 0 mod 3
adds nothing. The rule is only well defined because directed paths are
unique, which is validated rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    CyclicGraphError,
    PreconditionError,
    SizeBudgetError,
    UniquePathError,
)
from .graphs import (
    Digraph,
    NEGATIVE,
    POSITIVE,
    SignedDigraph,
    iter_bits,
    topological_order,
)

DEFAULT_VERTEX_BUDGET = 100_000


@lru_cache(maxsize=None)
def vertex_count_for(n: int) -> int:
    """v(n) by the recurrence; exact big-integer arithmetic."""
    if n < 1:
        raise ValueError("level must be >= 1")
    if n == 1:
        return 1
    prev = vertex_count_for(n - 1)
    return (n - 1) * prev + prev ** (n - 1)


@lru_cache(maxsize=None)
def edge_count_for(n: int) -> int:
    if n < 1:
        raise ValueError("level must be >= 1")
    if n == 1:
        return 0
    prev_v = vertex_count_for(n - 1)
    return (n - 1) * edge_count_for(n - 1) + (n - 1) * prev_v ** (n - 1)


def layer_sizes_for(n: int) -> list[int]:
    """Block sizes t(n, 1..n): t(n, i) = (n-1) t(n-1, i), t(n, n) = v(n-1)^(n-1)."""
    if n == 1:
        return [1]
    prev = layer_sizes_for(n - 1)
    return [(n - 1) * s for s in prev] + [vertex_count_for(n - 1) ** (n - 1)]


@dataclass(frozen=True)
class LayerPartition:
    """Partition of the vertices into blocks 1..n; block i is a stable
    set and every edge goes from a block to a strictly later one."""

    layer_of: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]


class BaseDigraph:
    """A constructed level-n digraph with labels and layer partition."""

    __slots__ = ("digraph", "n", "labels", "layers")

    def __init__(self, digraph: Digraph, n: int, labels: Sequence[str], layers: LayerPartition):
        self.digraph = digraph
        self.n = n
        self.labels = tuple(labels)
        self.layers = layers

    @property
    def vertex_count(self) -> int:
        return self.digraph.vertex_count

    def copy_range(self, i: int) -> tuple[int, int]:
        """Index range [start, stop) of copy i (1-based) of level n-1."""
        if not (1 <= i <= self.n - 1):
            raise ValueError(f"copy index {i} out of range for level {self.n}")
        sub = vertex_count_for(self.n - 1)
        return (i - 1) * sub, i * sub

    @property
    def tuple_block_start(self) -> int:
        return (self.n - 1) * vertex_count_for(self.n - 1) if self.n > 1 else 1

    def tuple_vertex(self, members_local: Sequence[int]) -> int:
        """Global index of the tuple vertex over local member indices."""
        sub = vertex_count_for(self.n - 1)
        if len(members_local) != self.n - 1:
            raise ValueError("tuple must pick one vertex per copy")
        offset = 0
        for j in members_local:
            if not (0 <= j < sub):
                raise ValueError(f"local member index {j} out of range")
            offset = offset * sub + j
        return self.tuple_block_start + offset

    def __repr__(self) -> str:
        return f"BaseDigraph(n={self.n}, v={self.vertex_count}, e={self.digraph.edge_count})"


def _build_recursive(n: int) -> tuple[int, list[tuple[int, int]], list[str], list[int]]:
    if n == 1:
        return 1, [], ["v"], [1]
    sub_v, sub_e, sub_labels, sub_layers = _build_recursive(n - 1)
    labels: list[str] = []
    layers: list[int] = []
    edges: list[tuple[int, int]] = []
    for i in range(1, n):
        off = (i - 1) * sub_v
        labels.extend(f"{i}.{lab}" for lab in sub_labels)
        layers.extend(sub_layers)
        edges.extend((off + u, off + v) for u, v in sub_e)
    base = (n - 1) * sub_v
    g = base
    for members in product(range(sub_v), repeat=n - 1):
        labels.append("t(" + ",".join(map(str, members)) + ")")
        layers.append(n)
        for i, j in enumerate(members):
            edges.append((i * sub_v + j, g))
        g += 1
    return g, edges, labels, layers


def build_base(n: int, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> BaseDigraph:
    """Construct the level-n digraph.

    Raises SizeBudgetError before building anything when v(n) exceeds
    the budget (the default admits n <= 4).
    """
    if n < 1:
        raise ValueError("level must be >= 1")
    total = vertex_count_for(n)
    if total > vertex_budget:
        raise SizeBudgetError(n, total, vertex_budget)
    count, edges, labels, layer_of = _build_recursive(n)
    assert count == total and len(edges) == edge_count_for(n)
    blocks: list[list[int]] = [[] for _ in range(n)]
    for v, layer in enumerate(layer_of):
        blocks[layer - 1].append(v)
    layers = LayerPartition(
        layer_of=tuple(layer_of), blocks=tuple(tuple(b) for b in blocks)
    )
    return BaseDigraph(Digraph(count, edges), n, labels, layers)


def layer_partition(b: BaseDigraph) -> LayerPartition:
    """Return the layer partition after validating both invariants:
    blocks are stable, and every edge ends in a strictly later block."""
    layer_of = b.layers.layer_of
    for u, v in b.digraph.edges():
        if layer_of[u] >= layer_of[v]:
            raise PreconditionError(
                f"edge ({u}, {v}) does not go to a later block", witness=(u, v)
            )
    # monotone edges imply stability, but check blocks directly anyway
    for block in b.layers.blocks:
        mask = 0
        for v in block:
            mask |= 1 << v
        for v in block:
            if b.digraph.out_bits[v] & mask:
                w = next(iter_bits(b.digraph.out_bits[v] & mask))
                raise PreconditionError(
                    f"block is not stable: edge ({v}, {w})", witness=(v, w)
                )
    return b.layers


class PathTable:
    """Per ordered pair: directed path count (saturated at 2) and, where
    a path exists, its length.

    For graphs with unique paths the length is the unique path length;
    if a pair had several paths the recorded length is the longest one,
    and the count says 2.
    """

    __slots__ = ("vertex_count", "counts", "lengths")

    def __init__(self, vertex_count: int, counts: np.ndarray, lengths: np.ndarray):
        self.vertex_count = vertex_count
        self.counts = counts
        self.lengths = lengths

    def count(self, u: int, v: int) -> int:
        return int(self.counts[u, v])

    def length(self, u: int, v: int) -> int | None:
        val = int(self.lengths[u, v])
        return None if val < 0 else val

    def length_mod3(self, u: int, v: int) -> int | None:
        val = self.length(u, v)
        return None if val is None else val % 3

    @property
    def max_length(self) -> int:
        return int(self.lengths.max(initial=-1))


def path_table(b: BaseDigraph | Digraph) -> PathTable:
    """All-pairs directed path counts and lengths over a DAG.

    Counts cover paths with at least one edge and saturate at 2; only
    the 0 / 1 / many distinction matters downstream. Raises
    CyclicGraphError when the input has a directed cycle.
    """
    d = b.digraph if isinstance(b, BaseDigraph) else b
    topo = topological_order(d)
    if not topo.is_acyclic:
        raise CyclicGraphError(topo.cycle)
    n = d.vertex_count
    counts = np.zeros((n, n), dtype=np.uint8)
    lengths = np.full((n, n), -1, dtype=np.int16)
    np.fill_diagonal(lengths, 0)  # zero-length "path" as DP seed, cleared below
    for u in reversed(topo.order):
        crow = counts[u]
        lrow = lengths[u]
        for w in iter_bits(d.out_bits[u]):
            crow += counts[w]
            crow[w] += 1
            np.minimum(crow, 2, out=crow)
            np.maximum(lrow, np.where(lengths[w] >= 0, lengths[w] + 1, -1), out=lrow)
    np.fill_diagonal(lengths, -1)
    return PathTable(n, counts, lengths)


def check_unique_paths(pt: PathTable) -> list[tuple[int, int]]:
    """All ordered pairs with two or more directed paths (expected empty
    for constructed levels)."""
    pairs = np.argwhere(pt.counts >= 2)
    return [(int(u), int(v)) for u, v in pairs]


def build_derived(b: BaseDigraph, pt: PathTable) -> SignedDigraph:
    """Apply the mod-3 sign rule to every reachable ordered pair.

    Validates unique paths first; a violation raises UniquePathError
    instead of silently producing a wrong sign.
    """
    violations = check_unique_paths(pt)
    if violations:
        raise UniquePathError(violations)
    reach = np.argwhere(pt.counts == 1)
    residues = pt.lengths[reach[:, 0], reach[:, 1]] % 3
    edges: list[tuple[int, int, str]] = []
    for (u, v), m in zip(reach.tolist(), residues.tolist()):
        if m == 1:
            edges.append((u, v, POSITIVE))
        elif m == 2:
            edges.append((v, u, NEGATIVE))
    return SignedDigraph(b.vertex_count, edges, labels=b.labels)


class Construction(NamedTuple):
    base: BaseDigraph
    paths: PathTable
    derived: SignedDigraph


def construct(n: int, vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> Construction:
    """Build the level, its path table, and the derived signed digraph."""
    base = build_base(n, vertex_budget)
    pt = path_table(base)
    return Construction(base, pt, build_derived(base, pt))
