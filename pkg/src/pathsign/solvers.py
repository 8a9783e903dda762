"""Exact, budget-aware solvers: clique number, k-colorability, chromatic
number, dichromatic number, and chordless directed cycle enumeration.

Every solver is deterministic: ties break by ascending vertex index, so
repeated runs return identical outcomes and witnesses. Searches count
nodes and check wall time; exceeding a budget yields an inconclusive
outcome, never a wrong proved/disproved.

Certificates returned by a solver are re-validated by the plain checkers
in this module (is_clique, is_proper_coloring, is_valid_dicoloring),
which share no code with the searches.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graphs import (
    Digraph,
    SignedDigraph,
    UndirectedGraph,
    iter_bits,
    popcount,
    topological_order,
)

PROVED = "proved"
DISPROVED = "disproved"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Budget:
    """Per-call search limits. Defaults fit a desktop run."""

    node_limit: int = 10**9
    time_limit_s: float = 600.0


DEFAULT_BUDGET = Budget()


class _Meter:
    """Node counter plus a coarse wall-clock check."""

    __slots__ = ("budget", "nodes", "t0", "exhausted")

    def __init__(self, budget: Budget):
        self.budget = budget
        self.nodes = 0
        self.t0 = time.perf_counter()
        self.exhausted = False

    def tick(self) -> bool:
        """Count a node; True while the search may continue."""
        self.nodes += 1
        if self.nodes > self.budget.node_limit:
            self.exhausted = True
        elif self.nodes % 4096 == 0:
            if time.perf_counter() - self.t0 > self.budget.time_limit_s:
                self.exhausted = True
        return not self.exhausted

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.t0


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    elapsed_s: float


@dataclass(frozen=True)
class SolveOutcome:
    status: str
    value: int | None = None
    witness: object = None
    stats: SearchStats = field(default=SearchStats(0, 0.0))
    lower_bound: int | None = None
    upper_bound: int | None = None


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color in 1..k; classes must be stable sets."""

    colors: tuple[int, ...]
    k: int

    def color_of(self, v: int) -> int:
        return self.colors[v]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.colors):
            out[c - 1].append(v)
        return out


@dataclass(frozen=True)
class Dicoloring:
    """Vertex -> color in 1..k; classes must induce acyclic subdigraphs."""

    colors: tuple[int, ...]
    k: int

    def color_of(self, v: int) -> int:
        return self.colors[v]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.colors):
            out[c - 1].append(v)
        return out


# ---------------------------------------------------------------------------
# plain certificate checkers (no search code shared with the solvers)


def is_clique(g: UndirectedGraph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    return all(g.adjacent(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :])


def is_proper_coloring(
    g: UndirectedGraph, coloring: Coloring
) -> tuple[bool, tuple[int, int] | None]:
    if len(coloring.colors) != g.vertex_count:
        return False, None
    for u, v in g.edges():
        if coloring.colors[u] == coloring.colors[v]:
            return False, (u, v)
    return True, None


def _directed_out_rows(d) -> tuple[int, Sequence[int]]:
    if isinstance(d, SignedDigraph):
        return d.vertex_count, [d.out_bits(u) for u in range(d.vertex_count)]
    return d.vertex_count, d.out_bits


def is_valid_dicoloring(d, f: Dicoloring) -> tuple[bool, tuple[int, ...] | None]:
    """True iff every color class induces an acyclic subdigraph; on
    failure also returns a monochromatic directed cycle."""
    n, out = _directed_out_rows(d)
    if len(f.colors) != n:
        return False, None
    for cls in f.classes():
        members = set(cls)
        edges = [
            (u, v) for u in cls for v in iter_bits(out[u]) if v in members
        ]
        sub_index = {v: i for i, v in enumerate(cls)}
        sub = Digraph(len(cls), [(sub_index[u], sub_index[v]) for u, v in edges])
        result = topological_order(sub)
        if not result.is_acyclic:
            return False, tuple(cls[i] for i in result.cycle)
    return True, None


# ---------------------------------------------------------------------------
# maximum clique


def max_clique(g: UndirectedGraph, budget: Budget = DEFAULT_BUDGET) -> SolveOutcome:
    """Branch and bound over bit rows with greedy-coloring upper bounds.

    A proved outcome carries a maximum clique; on budget exhaustion the
    outcome is inconclusive with the best clique found so far.
    """
    n = g.vertex_count
    meter = _Meter(budget)
    if n == 0:
        return SolveOutcome(PROVED, 0, (), SearchStats(0, meter.elapsed))
    adj = g.adj
    best: list[int] = []

    def greedy_bound(cand_mask: int) -> tuple[list[int], list[int]]:
        """Color candidates greedily; returns vertices sorted by color
        class index along with their bounds."""
        verts = list(iter_bits(cand_mask))
        class_masks: list[int] = []
        bounds: dict[int, int] = {}
        for v in verts:
            for ci, m in enumerate(class_masks):
                if not (m & adj[v]):
                    class_masks[ci] |= 1 << v
                    bounds[v] = ci + 1
                    break
            else:
                class_masks.append(1 << v)
                bounds[v] = len(class_masks)
        verts.sort(key=lambda v: (bounds[v], v))
        return verts, [bounds[v] for v in verts]

    def expand(stack: list[int], cand_mask: int) -> bool:
        nonlocal best
        if cand_mask == 0:
            if len(stack) > len(best):
                best = stack[:]
            return True
        verts, bounds = greedy_bound(cand_mask)
        while verts:
            v = verts.pop()
            b = bounds.pop()
            if len(stack) + b <= len(best):
                return True
            if not meter.tick():
                return False
            stack.append(v)
            if not expand(stack, cand_mask & adj[v]):
                return False
            stack.pop()
            cand_mask &= ~(1 << v)
        return True

    complete = expand([], (1 << n) - 1)
    stats = SearchStats(meter.nodes, meter.elapsed)
    witness = tuple(sorted(best))
    assert is_clique(g, witness)
    if complete:
        return SolveOutcome(PROVED, len(witness), witness, stats)
    return SolveOutcome(
        INCONCLUSIVE, None, witness, stats, lower_bound=len(witness), upper_bound=n
    )


# ---------------------------------------------------------------------------
# proper colorability


def is_k_colorable(
    g: UndirectedGraph, k: int, budget: Budget = DEFAULT_BUDGET
) -> SolveOutcome:
    """Decide whether g admits a proper k-coloring.

    Backtracking over a saturation-ordered vertex sequence with forward
    checking. Color symmetry is broken by allowing a new color only as
    the next unused index, so the first colored vertex always takes
    color 1.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    n = g.vertex_count
    meter = _Meter(budget)
    if n == 0:
        return SolveOutcome(PROVED, k, Coloring((), k), SearchStats(0, meter.elapsed))
    if k == 0:
        return SolveOutcome(DISPROVED, k, None, SearchStats(0, meter.elapsed))
    if k >= n:
        witness = Coloring(tuple(range(1, n + 1)), k)
        ok, _ = is_proper_coloring(g, witness)
        assert ok
        return SolveOutcome(PROVED, k, witness, SearchStats(0, meter.elapsed))

    adj = g.adj
    deg = [popcount(a) for a in adj]
    full = (1 << k) - 1
    color = [-1] * n
    avail = [full] * n
    uncolored = set(range(n))
    solution: list[tuple[int, ...]] = []

    def select() -> int:
        best, best_key = -1, None
        for u in uncolored:
            key = (k - popcount(avail[u]), deg[u], -u)
            if best_key is None or key > best_key:
                best_key, best = key, u
        return best

    def assign(v: int, bit: int) -> list[int] | None:
        """Forward-check one assignment; None signals a wipeout."""
        changed = []
        for u in iter_bits(adj[v]):
            if color[u] == -1 and avail[u] & bit:
                avail[u] ^= bit
                changed.append(u)
                if avail[u] == 0:
                    for w in changed:
                        avail[w] |= bit
                    return None
        return changed

    def bt(max_used: int) -> bool | None:
        """True = colored everything, False = exhausted, None = budget."""
        if not uncolored:
            solution.append(tuple(c + 1 for c in color))
            return True
        v = select()
        uncolored.discard(v)
        allowed = avail[v] & ((1 << min(k, max_used + 1)) - 1)
        result: bool | None = False
        while allowed:
            bit = allowed & -allowed
            allowed ^= bit
            if not meter.tick():
                result = None
                break
            changed = assign(v, bit)
            if changed is None:
                continue
            c = bit.bit_length() - 1
            color[v] = c
            sub = bt(max(max_used, c + 1))
            color[v] = -1
            for w in changed:
                avail[w] |= bit
            if sub is True:
                result = True
                break
            if sub is None:
                result = None
                break
        uncolored.add(v)
        return result

    outcome = bt(0)
    stats = SearchStats(meter.nodes, meter.elapsed)
    if outcome is True:
        witness = Coloring(solution[0], k)
        ok, _ = is_proper_coloring(g, witness)
        assert ok
        return SolveOutcome(PROVED, k, witness, stats)
    if outcome is False:
        return SolveOutcome(DISPROVED, k, None, stats)
    return SolveOutcome(INCONCLUSIVE, None, None, stats)


def chromatic_number(
    g: UndirectedGraph, budget: Budget = DEFAULT_BUDGET
) -> SolveOutcome:
    """Incremental search over is_k_colorable, so the result carries a
    proper coloring at k together with exhaustion at k - 1.

    The budget applies per colorability call. An inconclusive call stops
    the climb and reports the bracketing interval found so far.
    """
    n = g.vertex_count
    if n == 0:
        return SolveOutcome(PROVED, 0, Coloring((), 0), SearchStats(0, 0.0))
    nodes = 0
    elapsed = 0.0
    lower = 1
    for k in range(1, n + 1):
        sub = is_k_colorable(g, k, budget)
        nodes += sub.stats.nodes
        elapsed += sub.stats.elapsed_s
        if sub.status == PROVED:
            return SolveOutcome(PROVED, k, sub.witness, SearchStats(nodes, elapsed))
        if sub.status == INCONCLUSIVE:
            return SolveOutcome(
                INCONCLUSIVE,
                None,
                None,
                SearchStats(nodes, elapsed),
                lower_bound=lower,
                upper_bound=n,
            )
        lower = k + 1
    raise AssertionError("n colors always suffice")


# ---------------------------------------------------------------------------
# dichromatic number

DICHROMATIC_VERTEX_CAP = 20


def dichromatic_number(
    d,
    budget: Budget = DEFAULT_BUDGET,
    max_vertices: int = DICHROMATIC_VERTEX_CAP,
) -> SolveOutcome:
    """Exact dichromatic number by assignment backtracking.

    Intended for tiny digraphs; refuses inputs above ``max_vertices``.
    Classes are kept acyclic incrementally: adding v to a class is
    rejected when the class then contains a directed cycle through v.
    """
    n, out = _directed_out_rows(d)
    if n > max_vertices:
        raise ValueError(
            f"{n} vertices exceed the exact dicoloring cap of {max_vertices}"
        )
    meter = _Meter(budget)
    if n == 0:
        return SolveOutcome(PROVED, 0, Dicoloring((), 0), SearchStats(0, meter.elapsed))

    ins = [0] * n
    for u in range(n):
        for v in iter_bits(out[u]):
            ins[v] |= 1 << u

    def class_has_cycle_through(v: int, members_mask: int) -> bool:
        # DFS from v over out-edges inside the class looking back at v
        seen = 1 << v
        stack = [v]
        while stack:
            u = stack.pop()
            reach = out[u] & members_mask
            if reach >> v & 1:
                return True
            fresh = reach & ~seen
            seen |= fresh
            stack.extend(iter_bits(fresh))
        return False

    solution: list[tuple[int, ...]] = []

    def bt(k: int, v: int, masks: list[int], used: int) -> bool | None:
        if v == n:
            solution.append(tuple())
            return True
        limit = min(k, used + 1)
        for c in range(limit):
            if not meter.tick():
                return None
            candidate = masks[c] | (1 << v)
            if class_has_cycle_through(v, candidate):
                continue
            masks[c] = candidate
            assignment[v] = c
            sub = bt(k, v + 1, masks, max(used, c + 1))
            masks[c] ^= 1 << v
            if sub is not False:
                return sub
        assignment[v] = -1
        return False

    for k in range(1, n + 1):
        assignment = [-1] * n
        result = bt(k, 0, [0] * k, 0)
        if result is True:
            witness = Dicoloring(tuple(c + 1 for c in assignment), k)
            ok, _ = is_valid_dicoloring(d, witness)
            assert ok
            return SolveOutcome(
                PROVED, k, witness, SearchStats(meter.nodes, meter.elapsed)
            )
        if result is None:
            return SolveOutcome(
                INCONCLUSIVE,
                None,
                None,
                SearchStats(meter.nodes, meter.elapsed),
                lower_bound=k,
                upper_bound=n,
            )
    raise AssertionError("n classes always suffice")


# ---------------------------------------------------------------------------
# chordless directed cycles


@dataclass(frozen=True)
class CycleScan:
    """Result of an induced directed cycle enumeration.

    ``complete`` is False when the budget stopped the scan, in which
    case the cycle list may be missing entries.
    """

    cycles: tuple[tuple[int, ...], ...]
    complete: bool
    nodes: int
    elapsed_s: float

    def __iter__(self):
        return iter(self.cycles)

    def __len__(self) -> int:
        return len(self.cycles)


def chordless_dicycles(
    d: SignedDigraph,
    min_len: int,
    max_len: int,
    only_lengths: Iterable[int] | None = None,
    budget: Budget = DEFAULT_BUDGET,
    threads: int = 1,
) -> CycleScan:
    """Enumerate induced directed cycles with length in [min_len, max_len].

    A cycle is induced when its vertex set carries no edges besides the
    cycle's own, in either direction and of any sign. Cycles are emitted
    rotated to start at their smallest vertex and sorted; each cycle is
    found exactly once (the DFS roots at the smallest cycle vertex, so
    deduplication is structural). ``only_lengths`` restricts which
    lengths are reported without restricting the exhaustive exploration.

    Exploration extends induced directed paths: a new vertex may not be
    adjacent to any path vertex other than its predecessor, and closing
    back to the root is only allowed when the closing vertex has no
    other adjacency into the path.

    The node budget applies per search root, which makes the outcome
    independent of the worker count even when a limit binds.
    """
    if min_len < 3:
        raise ValueError("cycles have at least 3 vertices")
    if max_len < min_len:
        raise ValueError("max_len must be >= min_len")
    n = d.vertex_count
    keep = None if only_lengths is None else frozenset(only_lengths)
    out = [d.out_bits(u) for u in range(n)]
    ins = [d.in_bits(u) for u in range(n)]
    adj = [o | i for o, i in zip(out, ins)]

    def scan_start(s: int, meter: _Meter) -> tuple[list[tuple[int, ...]], bool]:
        found: list[tuple[int, ...]] = []
        above = -1 << (s + 1)
        closers = ins[s]
        first = out[s] & above
        # stack entries: (path, path_mask, interior_block, root_block)
        stack = [
            ((s, p1), (1 << s) | (1 << p1), 0, adj[s]) for p1 in iter_bits(first)
        ]
        stack.reverse()
        while stack:
            if not meter.tick():
                return found, False
            path, pmask, interior_block, root_block = stack.pop()
            tip = path[-1]
            k = len(path)
            cand = out[tip] & above & ~pmask & ~interior_block
            if min_len <= k + 1 <= max_len:
                for w in iter_bits(cand & closers):
                    if keep is None or (k + 1) in keep:
                        found.append(path + (w,))
            if k + 1 < max_len:
                nxt_block = interior_block | adj[tip]
                ext = cand & ~root_block
                for w in iter_bits(ext):
                    stack.append((path + (w,), pmask | (1 << w), nxt_block, root_block))
        return found, True

    t0 = time.perf_counter()
    starts = list(range(n))
    meters = [_Meter(budget) for _ in starts]

    def run(i: int) -> tuple[list[tuple[int, ...]], bool]:
        return scan_start(starts[i], meters[i])

    if threads <= 1:
        parts = [run(i) for i in range(len(starts))]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, range(len(starts))))
    complete = all(ok for _, ok in parts)
    merged: list[tuple[int, ...]] = []
    for part, _ in parts:
        merged.extend(part)
    total_nodes = sum(m.nodes for m in meters)
    return CycleScan(tuple(sorted(merged)), complete, total_nodes, time.perf_counter() - t0)
