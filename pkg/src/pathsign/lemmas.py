"""Executable forms of the structural lemmas and theorem checks.

Scanners run exhaustively over the relevant tuples (same-sign edge
pairs, ordered triples via bit rows, underlying triangles) and return
violation records. The constructive pieces are the four-coloring of
triangle-free induced subdigraphs, built from the positive/negative
head-tail partitions, and the coloring refuter, which walks the
recursive copy structure to extract a monochromatic edge from any
assignment that uses too few colors.

Theorem drivers bundle the checks into a VerificationReport. Checks
degrade to "inconclusive" when a solver exhausts its budget, never to a
false "pass". Exhaustive subset enumeration is used up to 16 vertices;
above that, seeded sampling stands in for the universal quantifier and
the report says so.
"""

from __future__ import annotations

import datetime as _dt
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .construction import (
    BaseDigraph,
    PathTable,
    check_unique_paths,
    construct,
    edge_count_for,
    layer_partition,
    layer_sizes_for,
    vertex_count_for,
    DEFAULT_VERTEX_BUDGET,
)
from .errors import PreconditionError
from .formats import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    CheckEntry,
    VerificationReport,
)
from .graphs import (
    NEGATIVE,
    POSITIVE,
    SignedDigraph,
    induced_subdigraph,
    iter_bits,
    popcount,
    topological_order,
    underlying,
)
from .solvers import (
    Budget,
    Coloring,
    DEFAULT_BUDGET,
    DICHROMATIC_VERTEX_CAP,
    chordless_dicycles,
    chromatic_number,
    dichromatic_number,
    is_clique,
    is_k_colorable,
    max_clique,
)
from . import solvers as _solvers

EXHAUSTIVE_SUBSET_LIMIT = 16
DEFAULT_VIOLATION_CAP = 100

SUITE_LEMMAS = "lemmas"
SUITE_UNDIRECTED = "theorem-undirected"
SUITE_DIGRAPH = "theorem-digraph"
ALL_SUITES = (SUITE_LEMMAS, SUITE_UNDIRECTED, SUITE_DIGRAPH)


@dataclass(frozen=True)
class LemmaViolation:
    """A tuple of vertices falsifying a lemma, with the expected and
    observed edge facts; replaying the tuple reproduces the facts."""

    lemma: str
    vertices: tuple[int, ...]
    expected: str
    observed: str

    def as_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "vertices": list(self.vertices),
            "expected": self.expected,
            "observed": self.observed,
        }


@dataclass(frozen=True)
class FourPartition:
    """The four intersection classes of the head-free/tail-free splits
    for positive and negative edges; together they partition the vertex
    set and each class is stable in the underlying graph."""

    aa: tuple[int, ...]
    ab: tuple[int, ...]
    ba: tuple[int, ...]
    bb: tuple[int, ...]

    def classes(self) -> tuple[tuple[int, ...], ...]:
        return (self.aa, self.ab, self.ba, self.bb)


# ---------------------------------------------------------------------------
# lemma scanners


def _chunk_ranges(n: int, parts: int) -> list[range]:
    parts = max(1, min(parts, n)) if n else 1
    step = (n + parts - 1) // parts if n else 1
    return [range(lo, min(lo + step, n)) for lo in range(0, n, step)] or [range(0)]


def _scan_chunks(
    n: int, threads: int, worker: Callable[[range], list]
) -> list:
    chunks = _chunk_ranges(n, threads if threads > 1 else 1)
    if threads <= 1 or len(chunks) == 1:
        parts = [worker(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(worker, chunks))
    merged: list = []
    for p in parts:
        merged.extend(p)
    merged.sort(key=lambda item: item.vertices)
    return merged


def check_two_path(d: SignedDigraph, threads: int = 1) -> list[LemmaViolation]:
    """For every same-sign edge pair (u->v, v->w), assert that w->u is an
    edge of the opposite sign; returns all failures, canonically sorted."""

    def worker(rows: range) -> list[LemmaViolation]:
        out: list[LemmaViolation] = []
        for v in rows:
            for sign, s_in, s_out, closing in (
                (POSITIVE, d.pos_in[v], d.pos_out[v], d.neg_out),
                (NEGATIVE, d.neg_in[v], d.neg_out[v], d.pos_out),
            ):
                if not (s_in and s_out):
                    continue
                want = POSITIVE if sign == NEGATIVE else NEGATIVE
                for u in iter_bits(s_in):
                    for w in iter_bits(s_out):
                        if not (closing[w] >> u & 1):
                            out.append(
                                LemmaViolation(
                                    lemma="two_path",
                                    vertices=(u, v, w),
                                    expected=f"edge {w}->{u} with sign {want}",
                                    observed=f"sign {d.sign_of(w, u)}",
                                )
                            )
        return out

    return _scan_chunks(d.vertex_count, threads, worker)


def count_same_sign_pairs(d: SignedDigraph) -> int:
    """Number of same-sign consecutive edge pairs (the two-path scan's
    iteration space)."""
    total = 0
    for v in range(d.vertex_count):
        total += popcount(d.pos_in[v]) * popcount(d.pos_out[v])
        total += popcount(d.neg_in[v]) * popcount(d.neg_out[v])
    return total


def check_no_full_triangle(d: SignedDigraph, threads: int = 1) -> list[LemmaViolation]:
    """Scan ordered triples for u->v, v->w, u->w simultaneously present
    (any signs); exhaustive via out-row intersections per edge."""
    out_all = [d.out_bits(u) for u in range(d.vertex_count)]

    def worker(rows: range) -> list[LemmaViolation]:
        out: list[LemmaViolation] = []
        for u in rows:
            for v in iter_bits(out_all[u]):
                for w in iter_bits(out_all[u] & out_all[v]):
                    out.append(
                        LemmaViolation(
                            lemma="no_full_triangle",
                            vertices=(u, v, w),
                            expected=f"not all of {u}->{v}, {v}->{w}, {u}->{w}",
                            observed="all three edges present",
                        )
                    )
        return out

    return _scan_chunks(d.vertex_count, threads, worker)


@dataclass(frozen=True)
class TriangleCensus:
    """Underlying triangles and which of them fail to be directed
    3-cycles (independent route from the ordered-triple scan)."""

    triangle_count: int
    non_cyclic: tuple[tuple[int, int, int], ...]

    @property
    def all_cyclic(self) -> bool:
        return not self.non_cyclic


def directed_triangle_census(d: SignedDigraph) -> TriangleCensus:
    g = underlying(d)
    out_all = [d.out_bits(u) for u in range(d.vertex_count)]
    count = 0
    bad: list[tuple[int, int, int]] = []
    for u, v in g.edges():
        for w in iter_bits(g.adj[u] & g.adj[v] & (-1 << (v + 1))):
            count += 1
            # cyclic orientation: every vertex has exactly one out-edge
            # inside the triple
            mask = (1 << u) | (1 << v) | (1 << w)
            degs = [popcount(out_all[x] & mask) for x in (u, v, w)]
            if degs != [1, 1, 1]:
                bad.append((u, v, w))
    return TriangleCensus(count, tuple(bad))


# ---------------------------------------------------------------------------
# four-coloring of triangle-free induced subdigraphs


def _mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _find_triangle_masked(d: SignedDigraph, mask: int) -> tuple[int, int, int] | None:
    for v in iter_bits(mask):
        nb = d.adj_bits(v) & mask
        for u in iter_bits(nb):
            rest = d.adj_bits(u) & nb & (-1 << (u + 1))
            if rest:
                w = next(iter_bits(rest))
                return tuple(sorted((v, u, w)))
    return None


def _find_same_sign_two_path_masked(
    d: SignedDigraph, mask: int
) -> tuple[int, int, int] | None:
    for v in iter_bits(mask):
        for s_in, s_out in ((d.pos_in[v], d.pos_out[v]), (d.neg_in[v], d.neg_out[v])):
            ins = s_in & mask
            outs = s_out & mask
            if ins and outs:
                u = next(iter_bits(ins))
                w = next(iter_bits(outs))
                return (u, v, w)
    return None


def _four_partition_masked(d: SignedDigraph, mask: int) -> tuple[int, int, int, int]:
    """Class masks (aa, ab, ba, bb) for the vertex set ``mask``.

    Validates the preconditions: no triangle in the underlying graph, no
    same-sign directed 2-path. Vertices that head no positive edge go to
    the first split's A side (so isolated vertices land in A), and
    likewise for negative edges.
    """
    tri = _find_triangle_masked(d, mask)
    if tri is not None:
        raise PreconditionError(f"underlying triangle {tri}", witness=tri)
    two = _find_same_sign_two_path_masked(d, mask)
    if two is not None:
        raise PreconditionError(
            f"same-sign two-path {two} without its closing edge", witness=two
        )
    a = b = a2 = b2 = 0
    for v in iter_bits(mask):
        bit = 1 << v
        if d.pos_in[v] & mask:
            b |= bit
        else:
            a |= bit
        if d.neg_in[v] & mask:
            b2 |= bit
        else:
            a2 |= bit
    # heads of positive edges must not also be tails; guaranteed by the
    # two-path scan above
    for v in iter_bits(b):
        assert not (d.pos_out[v] & mask)
    for v in iter_bits(b2):
        assert not (d.neg_out[v] & mask)
    classes = (a & a2, a & b2, b & a2, b & b2)
    for cls in classes:
        for v in iter_bits(cls):
            assert not (d.adj_bits(v) & cls), "class is not stable"
    assert (classes[0] | classes[1] | classes[2] | classes[3]) == mask
    return classes


def four_color_triangle_free(h: SignedDigraph) -> tuple[FourPartition, Coloring]:
    """Properly color a triangle-free signed digraph with at most four
    colors, constructively.

    Splits the vertices into A/B by "is the head of some positive edge"
    and A'/B' by the same for negative edges; the four intersections are
    stable, so numbering the nonempty ones yields the coloring. Raises
    PreconditionError (with a witness) when the input has an underlying
    triangle or a same-sign 2-path.
    """
    mask = (1 << h.vertex_count) - 1
    aa, ab, ba, bb = _four_partition_masked(h, mask)
    partition = FourPartition(
        aa=tuple(iter_bits(aa)),
        ab=tuple(iter_bits(ab)),
        ba=tuple(iter_bits(ba)),
        bb=tuple(iter_bits(bb)),
    )
    colors = [0] * h.vertex_count
    k = 0
    for cls in partition.classes():
        if cls:
            k += 1
            for v in cls:
                colors[v] = k
    coloring = Coloring(tuple(colors), k)
    if h.vertex_count:
        ok, edge = _solvers.is_proper_coloring(underlying(h), coloring)
        assert ok, f"four-coloring left a monochromatic edge {edge}"
    return partition, coloring


# ---------------------------------------------------------------------------
# coloring refuter


def refute_small_coloring(
    b: BaseDigraph, assignment: Sequence[int] | dict
) -> tuple[int, int]:
    """Exhibit a monochromatic edge of the level-n digraph under any
    assignment that uses at most n-1 distinct colors.

    Walks the inductive argument: colors are targeted injectively to
    copies (sorted palette, ascending copy index); a copy missing its
    target is recursed into, since its own palette is strictly smaller;
    when every copy yields a witness vertex of its target color, the
    tuple vertex over those witnesses must repeat one of the colors.
    """
    n = b.n
    size = b.vertex_count
    if isinstance(assignment, dict):
        if len(assignment) != size:
            raise PreconditionError("assignment must cover every vertex")
        colors = [assignment[v] for v in range(size)]
    else:
        colors = list(assignment)
        if len(colors) != size:
            raise PreconditionError("assignment must cover every vertex")
    distinct = len(set(colors))
    if distinct > n - 1:
        raise PreconditionError(
            f"assignment uses {distinct} colors; at most {n - 1} allowed"
        )

    def walk(level: int, base: int) -> tuple[int, int]:
        assert level >= 2, "a nonempty block always has at least one color"
        sub = vertex_count_for(level - 1)
        block = colors[base : base + vertex_count_for(level)]
        palette = sorted(set(block))
        copies = level - 1
        if len(palette) < copies:
            # the first copy without a target has a strictly smaller palette
            return walk(level - 1, base + len(palette) * sub)
        witnesses: list[int] = []
        for i in range(copies):
            target = palette[i]
            start = base + i * sub
            found = -1
            for j in range(sub):
                if colors[start + j] == target:
                    found = j
                    break
            if found < 0:
                return walk(level - 1, start)
            witnesses.append(found)
        offset = 0
        for j in witnesses:
            offset = offset * sub + j
        tup = base + copies * sub + offset
        j = palette.index(colors[tup])
        return (base + j * sub + witnesses[j], tup)

    u, v = walk(n, 0)
    assert colors[u] == colors[v], "refuter returned a bichromatic edge"
    assert b.digraph.has_edge(u, v), "refuter returned a non-edge"
    return (u, v)


# ---------------------------------------------------------------------------
# samplers


def _sample_rng(seed: int, index: int) -> random.Random:
    # per-sample stream: sample i is the same for any count and any
    # worker layout
    return random.Random(f"{seed}:{index}")


def sample_maximal_triangle_free(
    d: SignedDigraph, seed: int, count: int
) -> list[tuple[int, ...]]:
    """Greedy insertion along seeded random permutations.

    Each returned set is triangle-free in the underlying graph and
    maximal: a vertex rejected against a smaller set stays rejected, so
    adding any outside vertex to the final set creates a triangle.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    n = d.vertex_count
    adj = [d.adj_bits(v) for v in range(n)]
    samples: list[tuple[int, ...]] = []
    for i in range(count):
        rng = _sample_rng(seed, i)
        perm = rng.sample(range(n), n)
        members_mask = 0
        for v in perm:
            nb = adj[v] & members_mask
            ok = True
            probe = nb
            while probe:
                low = probe & -probe
                u = low.bit_length() - 1
                probe ^= low
                if adj[u] & nb & (-1 << (u + 1)):
                    ok = False
                    break
            if ok:
                members_mask |= 1 << v
        samples.append(tuple(iter_bits(members_mask)))
    return samples


def sample_acyclic_sets(
    d: SignedDigraph, seed: int, count: int
) -> list[tuple[int, ...]]:
    """Vertex sets inducing acyclic subdigraphs, one per seeded random
    permutation: a vertex is accepted iff it has no out-edge into the
    already-accepted set, so acceptance order is a topological order of
    the result."""
    if count < 1:
        raise ValueError("count must be >= 1")
    n = d.vertex_count
    out = [d.out_bits(v) for v in range(n)]
    samples: list[tuple[int, ...]] = []
    for i in range(count):
        rng = _sample_rng(seed, i)
        perm = rng.sample(range(n), n)
        members_mask = 0
        for v in perm:
            if not (out[v] & members_mask):
                members_mask |= 1 << v
        samples.append(tuple(iter_bits(members_mask)))
    return samples


# ---------------------------------------------------------------------------
# report plumbing


class _Recorder:
    def __init__(self):
        self.checks: list[CheckEntry] = []
        self.timings: dict[str, float] = {}

    def run(self, name: str, fn: Callable[[], CheckEntry]) -> CheckEntry:
        t0 = time.perf_counter()
        entry = fn()
        self.timings[name] = round(time.perf_counter() - t0, 6)
        self.checks.append(entry)
        return entry


def _cap(items: list, cap: int = DEFAULT_VIOLATION_CAP) -> list:
    return items[:cap]


def _violation_witness(violations: list[LemmaViolation]) -> list[dict]:
    return [v.as_dict() for v in _cap(violations)]


def _size_histogram(sizes: Iterable[int]) -> list[list[int]]:
    hist: dict[int, int] = {}
    for s in sizes:
        hist[s] = hist.get(s, 0) + 1
    return [[s, hist[s]] for s in sorted(hist)]


# ---------------------------------------------------------------------------
# individual checks


def _check_construction_counts(base: BaseDigraph, d: SignedDigraph) -> CheckEntry:
    n = base.n
    expected_v = vertex_count_for(n)
    expected_e = edge_count_for(n)
    expected_layers = layer_sizes_for(n)
    got_layers = [len(blk) for blk in base.layers.blocks]
    problems = []
    if base.vertex_count != expected_v:
        problems.append(f"v={base.vertex_count}, recurrence says {expected_v}")
    if base.digraph.edge_count != expected_e:
        problems.append(f"e={base.digraph.edge_count}, recurrence says {expected_e}")
    if got_layers != expected_layers:
        problems.append(f"layer sizes {got_layers} != {expected_layers}")
    if len(set(base.labels)) != base.vertex_count:
        problems.append("labels are not unique")
    details = {
        "n": n,
        "vertex_count": base.vertex_count,
        "edge_count": base.digraph.edge_count,
        "positive_edges": d.positive_edge_count,
        "negative_edges": d.negative_edge_count,
        "layer_sizes": got_layers,
    }
    if problems:
        return CheckEntry(
            "construction_counts", FAIL, "; ".join(problems), details, problems
        )
    return CheckEntry(
        "construction_counts",
        PASS,
        f"v={expected_v} e={expected_e} e+={d.positive_edge_count} "
        f"e-={d.negative_edge_count} match the recurrences",
        details,
    )


def _check_sign_rule(base: BaseDigraph, pt: PathTable, d: SignedDigraph) -> CheckEntry:
    """Exhaustive pair scan: the derived edges must be exactly the mod-3
    rule applied to the path table, and the base edges must all appear
    as positive edges."""
    n = base.vertex_count
    reach = np.argwhere(pt.counts == 1)
    residues = pt.lengths[reach[:, 0], reach[:, 1]] % 3
    expected_pos = set()
    expected_neg = set()
    for (u, v), m in zip(reach.tolist(), residues.tolist()):
        if m == 1:
            expected_pos.add((u, v))
        elif m == 2:
            expected_neg.add((v, u))
    got_pos = {(u, v) for u, v, s in d.edges() if s == POSITIVE}
    got_neg = {(u, v) for u, v, s in d.edges() if s == NEGATIVE}
    missing_base = [e for e in base.digraph.edges() if e not in got_pos]
    problems = []
    if got_pos != expected_pos:
        problems.append(
            f"positive edges differ from the rule by "
            f"{len(got_pos ^ expected_pos)} pairs"
        )
    if got_neg != expected_neg:
        problems.append(
            f"negative edges differ from the rule by "
            f"{len(got_neg ^ expected_neg)} pairs"
        )
    if missing_base:
        problems.append(f"{len(missing_base)} base edges not positive")
    details = {
        "ordered_pairs": n * n,
        "pairs_with_path": int((pt.counts == 1).sum()),
        "mod0_pairs": int((residues == 0).sum()),
        "mod1_pairs": int((residues == 1).sum()),
        "mod2_pairs": int((residues == 2).sum()),
    }
    if problems:
        witness = {
            "positive_diff": sorted(got_pos ^ expected_pos)[:DEFAULT_VIOLATION_CAP],
            "negative_diff": sorted(got_neg ^ expected_neg)[:DEFAULT_VIOLATION_CAP],
            "missing_base_edges": missing_base[:DEFAULT_VIOLATION_CAP],
        }
        return CheckEntry("sign_rule", FAIL, "; ".join(problems), details, witness)
    return CheckEntry(
        "sign_rule",
        PASS,
        f"all {details['pairs_with_path']} reachable pairs follow the mod-3 rule; "
        "base edges embed positively",
        details,
    )


def _check_acyclic_unique_paths(base: BaseDigraph, pt: PathTable) -> CheckEntry:
    topo = topological_order(base.digraph)
    violations = check_unique_paths(pt)
    details = {
        "ordered_pairs": base.vertex_count**2,
        "multi_path_pairs": len(violations),
    }
    if not topo.is_acyclic:
        return CheckEntry(
            "acyclic_unique_paths",
            FAIL,
            "directed cycle found",
            details,
            list(topo.cycle),
        )
    if violations:
        return CheckEntry(
            "acyclic_unique_paths",
            FAIL,
            f"{len(violations)} ordered pairs have multiple paths",
            details,
            [list(p) for p in _cap(violations)],
        )
    return CheckEntry(
        "acyclic_unique_paths",
        PASS,
        f"acyclic; every one of {details['ordered_pairs']} ordered pairs "
        "has at most one path",
        details,
    )


def _check_layer_partition(base: BaseDigraph) -> CheckEntry:
    details = {"block_sizes": [len(blk) for blk in base.layers.blocks]}
    try:
        layer_partition(base)
    except PreconditionError as exc:
        return CheckEntry(
            "layer_partition", FAIL, str(exc), details, list(exc.witness)
        )
    return CheckEntry(
        "layer_partition",
        PASS,
        "blocks are stable and every edge lands in a later block",
        details,
    )


def _check_two_path(d: SignedDigraph, threads: int) -> CheckEntry:
    violations = check_two_path(d, threads=threads)
    details = {
        "same_sign_pairs": count_same_sign_pairs(d),
        "violations": len(violations),
    }
    if violations:
        return CheckEntry(
            "two_path_closure",
            FAIL,
            f"{len(violations)} same-sign pairs lack the closing opposite edge",
            details,
            _violation_witness(violations),
        )
    return CheckEntry(
        "two_path_closure",
        PASS,
        f"all {details['same_sign_pairs']} same-sign pairs close with the "
        "opposite sign",
        details,
    )


def _check_transitive_triangles(d: SignedDigraph, threads: int) -> CheckEntry:
    violations = check_no_full_triangle(d, threads=threads)
    details = {"violations": len(violations)}
    if violations:
        return CheckEntry(
            "no_transitive_triangle",
            FAIL,
            f"{len(violations)} ordered triples carry all of uv, vw, uw",
            details,
            _violation_witness(violations),
        )
    return CheckEntry(
        "no_transitive_triangle",
        PASS,
        "no ordered triple carries all of uv, vw, uw",
        details,
    )


def _check_triangle_census(d: SignedDigraph) -> CheckEntry:
    census = directed_triangle_census(d)
    details = {
        "triangles": census.triangle_count,
        "non_cyclic": len(census.non_cyclic),
    }
    if not census.all_cyclic:
        return CheckEntry(
            "underlying_triangle_census",
            FAIL,
            f"{len(census.non_cyclic)} underlying triangles are not directed "
            "3-cycles",
            details,
            [list(t) for t in _cap(list(census.non_cyclic))],
        )
    return CheckEntry(
        "underlying_triangle_census",
        PASS,
        f"all {census.triangle_count} underlying triangles are directed 3-cycles",
        details,
    )


def _check_clique_bound(d: SignedDigraph, budget: Budget) -> CheckEntry:
    g = underlying(d)
    outcome = max_clique(g, budget)
    details = {"nodes": outcome.stats.nodes}
    if outcome.status != _solvers.PROVED:
        return CheckEntry(
            "clique_bound",
            INCONCLUSIVE,
            "clique search exhausted its budget",
            details,
            list(outcome.witness or ()),
        )
    details["clique_number"] = outcome.value
    assert is_clique(g, outcome.witness)
    if outcome.value > 3:
        return CheckEntry(
            "clique_bound",
            FAIL,
            f"clique number {outcome.value} exceeds 3",
            details,
            list(outcome.witness),
        )
    return CheckEntry(
        "clique_bound",
        PASS,
        f"clique number {outcome.value} <= 3 (witness revalidated)",
        details,
        list(outcome.witness),
    )


def _check_chromatic_lower(base: BaseDigraph, d: SignedDigraph, budget: Budget) -> CheckEntry:
    n = base.n
    g = underlying(d)
    outcome = is_k_colorable(g, n - 1, budget)
    details = {"colors": n - 1, "nodes": outcome.stats.nodes}
    if outcome.status == _solvers.INCONCLUSIVE:
        return CheckEntry(
            "chromatic_lower_bound",
            INCONCLUSIVE,
            f"({n - 1})-colorability search exhausted its budget",
            details,
        )
    if outcome.status == _solvers.PROVED:
        return CheckEntry(
            "chromatic_lower_bound",
            FAIL,
            f"a proper ({n - 1})-coloring exists",
            details,
            list(outcome.witness.colors),
        )
    return CheckEntry(
        "chromatic_lower_bound",
        PASS,
        f"no proper ({n - 1})-coloring exists (search exhausted)",
        details,
    )


def _check_refuter(base: BaseDigraph, seed: int, samples: int) -> CheckEntry:
    n = base.n
    rng = np.random.default_rng(seed)
    rows = rng.integers(1, n, size=(samples, base.vertex_count))
    failures = 0
    for row in rows:
        u, v = refute_small_coloring(base, row.tolist())
        if not (row[u] == row[v] and base.digraph.has_edge(u, v)):
            failures += 1
    details = {"assignments": samples, "colors": n - 1, "failures": failures}
    if failures:
        return CheckEntry(
            "coloring_refuter",
            FAIL,
            f"{failures} of {samples} refutations did not verify",
            details,
        )
    return CheckEntry(
        "coloring_refuter",
        PASS,
        f"monochromatic edge found and verified for all {samples} random "
        f"({n - 1})-colorings",
        details,
    )


def _four_color_masked_ok(d: SignedDigraph, mask: int) -> int:
    """Colors used by the four-partition on ``mask``; asserts stability."""
    classes = _four_partition_masked(d, mask)
    return sum(1 for cls in classes if cls)


def _check_triangle_free_subgraphs(
    d: SignedDigraph,
    seed: int | None,
    samples: int,
    mode: str,
) -> CheckEntry:
    n = d.vertex_count
    if mode == "exhaustive":
        tf = 0
        max_colors = 0
        for mask in range(1 << n):
            if _find_triangle_masked(d, mask) is not None:
                continue
            tf += 1
            try:
                max_colors = max(max_colors, _four_color_masked_ok(d, mask))
            except PreconditionError as exc:
                return CheckEntry(
                    "triangle_free_four_colorable",
                    FAIL,
                    f"subset could not be four-colored: {exc}",
                    {"mode": "exhaustive", "subsets": 1 << n},
                    {"subset": list(iter_bits(mask)), "witness": list(exc.witness)},
                )
        details = {
            "mode": "exhaustive",
            "subsets": 1 << n,
            "triangle_free": tf,
            "max_colors_used": max_colors,
        }
        return CheckEntry(
            "triangle_free_four_colorable",
            PASS,
            f"all {tf} triangle-free subsets of {1 << n} are properly colored "
            f"with <= 4 colors (max used {max_colors})",
            details,
        )
    sets = sample_maximal_triangle_free(d, seed, samples)
    adj = [d.adj_bits(v) for v in range(n)]
    max_colors = 0
    not_maximal = 0
    for members in sets:
        mask = _mask_of(members)
        try:
            max_colors = max(max_colors, _four_color_masked_ok(d, mask))
        except PreconditionError as exc:
            return CheckEntry(
                "triangle_free_four_colorable",
                FAIL,
                f"sample could not be four-colored: {exc}",
                {"mode": "sampled", "samples": samples},
                {"subset": list(members), "witness": list(exc.witness)},
            )
        for v in range(n):
            if mask >> v & 1:
                continue
            nb = adj[v] & mask
            has_triangle = False
            probe = nb
            while probe:
                low = probe & -probe
                u = low.bit_length() - 1
                probe ^= low
                if adj[u] & nb & (-1 << (u + 1)):
                    has_triangle = True
                    break
            if not has_triangle:
                not_maximal += 1
                break
    details = {
        "mode": "sampled",
        "samples": samples,
        "size_histogram": _size_histogram(len(s) for s in sets),
        "max_colors_used": max_colors,
        "non_maximal_samples": not_maximal,
    }
    status = PASS if not_maximal == 0 else FAIL
    summary = (
        f"{samples} maximal triangle-free samples properly colored with <= 4 "
        f"colors (max used {max_colors})"
    )
    if not_maximal:
        summary = f"{not_maximal} samples were not maximal"
    return CheckEntry("triangle_free_four_colorable", status, summary, details)


def _check_odd_induced_dicycles(
    d: SignedDigraph, max_cycle_len: int, budget: Budget, threads: int
) -> CheckEntry:
    odd_lengths = [length for length in range(5, max_cycle_len + 1) if length % 2]
    scan = chordless_dicycles(
        d, 5, max_cycle_len, only_lengths=odd_lengths, budget=budget, threads=threads
    )
    details = {
        "lengths": odd_lengths,
        "nodes": scan.nodes,
        "found": len(scan.cycles),
    }
    if scan.cycles:
        return CheckEntry(
            "no_odd_induced_dicycles",
            FAIL,
            f"{len(scan.cycles)} induced directed cycles of odd length >= 5",
            details,
            [list(c) for c in _cap(list(scan.cycles))],
        )
    if not scan.complete:
        return CheckEntry(
            "no_odd_induced_dicycles",
            INCONCLUSIVE,
            "cycle enumeration exhausted its budget",
            details,
        )
    return CheckEntry(
        "no_odd_induced_dicycles",
        PASS,
        f"no induced directed cycle of odd length in {odd_lengths}",
        details,
    )


def _check_dichromatic_bound(d: SignedDigraph, budget: Budget) -> CheckEntry:
    outcome = dichromatic_number(d, budget)
    details = {"nodes": outcome.stats.nodes}
    if outcome.status != _solvers.PROVED:
        return CheckEntry(
            "dichromatic_bound",
            INCONCLUSIVE,
            "dicoloring search exhausted its budget",
            details,
        )
    t = outcome.value
    chrom = chromatic_number(underlying(d), budget)
    details.update({"dichromatic_number": t, "chromatic_nodes": chrom.stats.nodes})
    if chrom.status != _solvers.PROVED:
        return CheckEntry(
            "dichromatic_bound",
            INCONCLUSIVE,
            "chromatic search exhausted its budget",
            details,
        )
    details["chromatic_number"] = chrom.value
    if chrom.value > 4 * t:
        return CheckEntry(
            "dichromatic_bound",
            FAIL,
            f"chromatic number {chrom.value} exceeds 4t = {4 * t}",
            details,
        )
    return CheckEntry(
        "dichromatic_bound",
        PASS,
        f"dichromatic number {t}; chromatic number {chrom.value} <= 4t = {4 * t}",
        details,
    )


def _check_acyclic_samples(d: SignedDigraph, seed: int, samples: int) -> CheckEntry:
    sets = sample_acyclic_sets(d, seed, samples)
    max_colors = 0
    spot_checked = 0
    for i, members in enumerate(sets):
        mask = _mask_of(members)
        try:
            # triangle-freeness and the 4-coloring are both validated inside
            max_colors = max(max_colors, _four_color_masked_ok(d, mask))
        except PreconditionError as exc:
            return CheckEntry(
                "acyclic_induced_samples",
                FAIL,
                f"acyclic sample is not triangle-free four-colorable: {exc}",
                {"samples": samples, "failed_at": i},
                {"subset": list(members), "witness": list(exc.witness)},
            )
        if i < 100:
            sub = induced_subdigraph(d, members)
            assert topological_order(sub).is_acyclic
            spot_checked += 1
    details = {
        "samples": samples,
        "size_histogram": _size_histogram(len(s) for s in sets),
        "max_colors_used": max_colors,
        "acyclicity_spot_checks": spot_checked,
    }
    return CheckEntry(
        "acyclic_induced_samples",
        PASS,
        f"{samples} acyclic induced samples are triangle-free and properly "
        f"colored with <= 4 colors (max used {max_colors})",
        details,
    )


def _check_simplicity(d: SignedDigraph) -> CheckEntry:
    # the SignedDigraph constructor enforces simplicity; rescan anyway
    bad = []
    for u, v, _ in d.edges():
        if d.sign_of(v, u) is not None:
            bad.append((u, v))
    details = {"edges": d.edge_count, "violations": len(bad)}
    if bad:
        return CheckEntry(
            "simplicity",
            FAIL,
            f"{len(bad)} pairs carry edges in both directions",
            details,
            [list(p) for p in _cap(bad)],
        )
    return CheckEntry(
        "simplicity", PASS, f"simple: {d.edge_count} edges, no reverse pairs", details
    )


# ---------------------------------------------------------------------------
# drivers


def _need_seed(seed: int | None, why: str) -> int:
    if seed is None:
        raise PreconditionError(f"a seed is required: {why}")
    return seed


def verify_suites(
    *,
    n: int | None = None,
    signed: SignedDigraph | None = None,
    suites: Sequence[str] = ALL_SUITES,
    budget: Budget = DEFAULT_BUDGET,
    seed: int | None = None,
    samples: int = 10_000,
    max_cycle_len: int = 9,
    subset_mode: str = "auto",
    threads: int = 1,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> VerificationReport:
    """Run the selected verification suites and assemble one report.

    Exactly one of ``n`` (build the level) or ``signed`` (use an
    existing signed digraph; construction-dependent checks are skipped)
    must be given.
    """
    if (n is None) == (signed is None):
        raise ValueError("give exactly one of n or signed")
    for s in suites:
        if s not in ALL_SUITES:
            raise ValueError(f"unknown suite {s!r}")
    started = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    t0 = time.perf_counter()
    rec = _Recorder()

    base = pt = None
    if n is not None:
        base, pt, d = construct(n, vertex_budget)
    else:
        d = signed

    if subset_mode not in ("auto", "exhaustive", "sampled"):
        raise ValueError(f"unknown subset mode {subset_mode!r}")
    exhaustive_ok = d.vertex_count <= EXHAUSTIVE_SUBSET_LIMIT
    if subset_mode == "exhaustive" and not exhaustive_ok:
        raise PreconditionError(
            f"{d.vertex_count} vertices exceed the exhaustive subset limit "
            f"of {EXHAUSTIVE_SUBSET_LIMIT}"
        )
    tf_mode = (
        "exhaustive"
        if subset_mode == "auto" and exhaustive_ok
        else ("sampled" if subset_mode == "auto" else subset_mode)
    )

    if SUITE_LEMMAS in suites:
        if base is not None:
            rec.run("construction_counts", lambda: _check_construction_counts(base, d))
            rec.run("sign_rule", lambda: _check_sign_rule(base, pt, d))
            rec.run(
                "acyclic_unique_paths",
                lambda: _check_acyclic_unique_paths(base, pt),
            )
            rec.run("layer_partition", lambda: _check_layer_partition(base))
        else:
            rec.run("simplicity", lambda: _check_simplicity(d))
        rec.run("two_path_closure", lambda: _check_two_path(d, threads))
        rec.run(
            "no_transitive_triangle",
            lambda: _check_transitive_triangles(d, threads),
        )
        rec.run("underlying_triangle_census", lambda: _check_triangle_census(d))

    if SUITE_UNDIRECTED in suites:
        rec.run("clique_bound", lambda: _check_clique_bound(d, budget))
        if base is not None:
            rec.run(
                "chromatic_lower_bound",
                lambda: _check_chromatic_lower(base, d, budget),
            )
        if base is not None and base.n >= 2 and (tf_mode == "sampled" or seed is not None):
            used = _need_seed(seed, "the coloring refuter samples assignments")
            rec.run("coloring_refuter", lambda: _check_refuter(base, used, samples))
        if tf_mode == "sampled":
            used = _need_seed(seed, "triangle-free subgraphs are sampled")
            rec.run(
                "triangle_free_four_colorable",
                lambda: _check_triangle_free_subgraphs(d, used, samples, "sampled"),
            )
        else:
            rec.run(
                "triangle_free_four_colorable",
                lambda: _check_triangle_free_subgraphs(d, None, samples, "exhaustive"),
            )

    if SUITE_DIGRAPH in suites:
        rec.run(
            "no_odd_induced_dicycles",
            lambda: _check_odd_induced_dicycles(d, max_cycle_len, budget, threads),
        )
        if d.vertex_count <= DICHROMATIC_VERTEX_CAP:
            rec.run("dichromatic_bound", lambda: _check_dichromatic_bound(d, budget))
        else:
            used = _need_seed(seed, "acyclic induced subdigraphs are sampled")
            rec.run(
                "acyclic_induced_samples",
                lambda: _check_acyclic_samples(d, used, samples),
            )

    construction_info = {
        "source": "constructed" if n is not None else "imported",
        "n": n,
        "vertex_count": d.vertex_count,
        "positive_edges": d.positive_edge_count,
        "negative_edges": d.negative_edge_count,
    }
    return VerificationReport(
        construction=construction_info,
        suites=list(suites),
        checks=rec.checks,
        seed=seed,
        samples=samples,
        max_cycle_length=max_cycle_len,
        budgets={
            "node_limit": budget.node_limit,
            "time_limit_ms": int(budget.time_limit_s * 1000),
        },
        timing={
            "started_at_utc": started,
            "total_seconds": round(time.perf_counter() - t0, 6),
            "checks": rec.timings,
        },
    )


def verify_main_theorem(
    n: int,
    budget: Budget = DEFAULT_BUDGET,
    seed: int | None = None,
    samples: int = 10_000,
    subset_mode: str = "auto",
    threads: int = 1,
) -> VerificationReport:
    """Construction validation, clique bound, chromatic lower bound, and
    the four-coloring of triangle-free induced subgraphs (exhaustive at
    small sizes, sampled above)."""
    return verify_suites(
        n=n,
        suites=(SUITE_LEMMAS, SUITE_UNDIRECTED),
        budget=budget,
        seed=seed,
        samples=samples,
        subset_mode=subset_mode,
        threads=threads,
    )


def verify_digraph_theorem(
    n: int,
    budget: Budget = DEFAULT_BUDGET,
    seed: int | None = None,
    samples: int = 10_000,
    max_cycle_len: int = 9,
    threads: int = 1,
) -> VerificationReport:
    """No induced odd directed cycle of length >= 5, plus the dicoloring
    bound mechanics: exact dichromatic number against the chromatic
    number at tiny sizes, sampled acyclic induced subdigraphs above."""
    return verify_suites(
        n=n,
        suites=(SUITE_DIGRAPH,),
        budget=budget,
        seed=seed,
        samples=samples,
        max_cycle_len=max_cycle_len,
        threads=threads,
    )
