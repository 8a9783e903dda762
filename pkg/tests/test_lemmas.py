import pytest

from pathsign import (
    PreconditionError,
    SignedDigraph,
    check_no_full_triangle,
    check_two_path,
    construct,
    directed_triangle_census,
    four_color_triangle_free,
    induced_subdigraph,
    is_proper_coloring,
    refute_small_coloring,
    sample_acyclic_sets,
    sample_maximal_triangle_free,
    topological_order,
    underlying,
    verify_digraph_theorem,
    verify_main_theorem,
    verify_suites,
)
from pathsign.lemmas import count_same_sign_pairs


# --- two-path lemma ------------------------------------------------------


def test_two_path_level3_clean(level3):
    assert check_two_path(level3.derived) == []
    assert count_same_sign_pairs(level3.derived) == 4


def test_two_path_level1_trivial():
    assert check_two_path(construct(1).derived) == []


def test_two_path_violation_detected():
    d = SignedDigraph(3, [(0, 1, "+"), (1, 2, "+")])
    violations = check_two_path(d)
    assert len(violations) == 1
    v = violations[0]
    assert v.vertices == (0, 1, 2)
    assert "sign -" in v.expected
    assert "None" in v.observed
    # replay: the observed fact holds against the graph
    assert d.sign_of(2, 0) is None


def test_two_path_wrong_sign_detected():
    # an all-negative 3-cycle has three same-sign pairs, each closed by
    # the wrong sign
    d = SignedDigraph(3, [(0, 1, "-"), (1, 2, "-"), (2, 0, "-")])
    violations = check_two_path(d)
    assert [v.vertices for v in violations] == [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    assert all("sign +" in v.expected for v in violations)


def test_two_path_threads_agree(level4):
    assert check_two_path(level4.derived, threads=3) == check_two_path(
        level4.derived
    )


# --- triangle lemma ------------------------------------------------------


def test_no_full_triangle_level3(level3):
    assert check_no_full_triangle(level3.derived) == []


def test_transitive_tournament_violates():
    d = SignedDigraph(3, [(0, 1, "+"), (1, 2, "+"), (0, 2, "-")])
    violations = check_no_full_triangle(d)
    assert [v.vertices for v in violations] == [(0, 1, 2)]


def test_triangle_census_level3(level3):
    census = directed_triangle_census(level3.derived)
    assert census.triangle_count == 4
    assert census.all_cyclic


def test_triangle_census_finds_transitive():
    d = SignedDigraph(3, [(0, 1, "+"), (1, 2, "+"), (0, 2, "-")])
    census = directed_triangle_census(d)
    assert census.triangle_count == 1
    assert census.non_cyclic == ((0, 1, 2),)


# --- constructive four-coloring ------------------------------------------


def test_four_color_edgeless():
    partition, coloring = four_color_triangle_free(SignedDigraph(3, []))
    assert partition.aa == (0, 1, 2)
    assert coloring.k == 1
    assert coloring.colors == (1, 1, 1)


def test_four_color_empty():
    _, coloring = four_color_triangle_free(SignedDigraph(0, []))
    assert coloring.k == 0


def test_four_color_spec_triple(level3):
    # a1, b1, and the tuple vertex over (a1, a2): b1 and that tuple are
    # non-adjacent, both are positive heads, no negative edges
    h = induced_subdigraph(level3.derived, [0, 1, 4])
    partition, coloring = four_color_triangle_free(h)
    assert partition.aa == (0,)
    assert partition.ba == (1, 2)
    assert partition.ab == () and partition.bb == ()
    assert coloring.k == 2
    assert coloring.colors == (1, 2, 2)


def test_four_color_rejects_triangle(level3):
    h = induced_subdigraph(level3.derived, [0, 1, 6])
    with pytest.raises(PreconditionError) as err:
        four_color_triangle_free(h)
    assert err.value.witness == (0, 1, 2)


def test_four_color_rejects_open_two_path():
    d = SignedDigraph(3, [(0, 1, "+"), (1, 2, "+")])
    with pytest.raises(PreconditionError) as err:
        four_color_triangle_free(d)
    assert err.value.witness == (0, 1, 2)


def test_four_color_all_triangle_free_subsets_level3(level3):
    d = level3.derived
    g3 = underlying(d)
    checked = 0
    for mask in range(1 << 8):
        s = [v for v in range(8) if mask >> v & 1]
        sub = g3.induced(s)
        has_triangle = any(
            sub.adjacent(a, b) and sub.adjacent(b, c) and sub.adjacent(a, c)
            for a in range(len(s))
            for b in range(a + 1, len(s))
            for c in range(b + 1, len(s))
        )
        if has_triangle:
            continue
        h = induced_subdigraph(d, s)
        _, coloring = four_color_triangle_free(h)
        assert coloring.k <= 4
        ok, _ = is_proper_coloring(underlying(h), coloring)
        assert ok
        checked += 1
    assert checked == 170


# --- coloring refuter -----------------------------------------------------


def test_refuter_level2_single_edge(level2):
    assert refute_small_coloring(level2.base, [7, 7]) == (0, 1)


def test_refuter_level3_seeded_random(level3):
    import numpy as np

    rng = np.random.default_rng(0)
    base = level3.base
    edges = set(base.digraph.edges())
    for _ in range(10_000):
        colors = rng.integers(1, 3, size=8).tolist()
        u, v = refute_small_coloring(base, colors)
        assert colors[u] == colors[v]
        assert (u, v) in edges


def test_refuter_accepts_dict(level2):
    assert refute_small_coloring(level2.base, {0: 3, 1: 3}) == (0, 1)


def test_refuter_rejects_too_many_colors(level3):
    with pytest.raises(PreconditionError):
        refute_small_coloring(level3.base, [1, 2, 3, 1, 2, 3, 1, 2])


def test_refuter_rejects_partial_assignment(level3):
    with pytest.raises(PreconditionError):
        refute_small_coloring(level3.base, [1, 1, 1])


def test_refuter_fewer_colors_than_copies(level4):
    # a 1-color assignment on the level-4 digraph exercises the
    # no-target recursion path
    base = level4.base
    u, v = refute_small_coloring(base, [1] * base.vertex_count)
    assert base.digraph.has_edge(u, v)


# --- samplers -------------------------------------------------------------


def test_tf_sampler_triangle_free_input_returns_everything():
    d = SignedDigraph(4, [(0, 1, "+"), (2, 3, "-")])
    sets = sample_maximal_triangle_free(d, seed=5, count=3)
    assert all(s == (0, 1, 2, 3) for s in sets)


def test_tf_sampler_level3_revalidated(level3):
    d = level3.derived
    g = underlying(d)
    sets = sample_maximal_triangle_free(d, seed=0, count=32)
    assert len(sets) == 32
    for s in sets:
        sub = g.induced(s)
        m = len(s)
        for a in range(m):
            for b in range(a + 1, m):
                for c in range(b + 1, m):
                    assert not (
                        sub.adjacent(a, b) and sub.adjacent(b, c) and sub.adjacent(a, c)
                    )
        # maximal: every outside vertex closes a triangle
        for v in range(8):
            if v in s:
                continue
            grown = underlying(induced_subdigraph(d, sorted(set(s) | {v})))
            k = grown.vertex_count
            assert any(
                grown.adjacent(a, b) and grown.adjacent(b, c) and grown.adjacent(a, c)
                for a in range(k)
                for b in range(a + 1, k)
                for c in range(b + 1, k)
            )


def test_tf_sampler_reproducible(level3):
    a = sample_maximal_triangle_free(level3.derived, seed=9, count=5)
    b = sample_maximal_triangle_free(level3.derived, seed=9, count=5)
    assert a == b
    # per-sample streams: prefix does not depend on the count
    c = sample_maximal_triangle_free(level3.derived, seed=9, count=2)
    assert a[:2] == c


def test_acyclic_sampler_valid(level3):
    d = level3.derived
    sets = sample_acyclic_sets(d, seed=1, count=50)
    for s in sets:
        assert topological_order(induced_subdigraph(d, s)).is_acyclic


def test_every_acyclic_subset_is_triangle_free_level3(level3):
    # exhaustive: any subset inducing an acyclic subdigraph has clique
    # number at most 2 in the underlying graph
    d = level3.derived
    from pathsign.lemmas import _find_triangle_masked

    for mask in range(1 << 8):
        s = [v for v in range(8) if mask >> v & 1]
        if topological_order(induced_subdigraph(d, s)).is_acyclic:
            assert _find_triangle_masked(d, mask) is None


def test_sampler_rejects_zero_count(level3):
    with pytest.raises(ValueError):
        sample_maximal_triangle_free(level3.derived, 0, 0)
    with pytest.raises(ValueError):
        sample_acyclic_sets(level3.derived, 0, 0)


# --- theorem drivers ------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_main_theorem_small_levels(n):
    report = verify_main_theorem(n, seed=0, samples=100)
    assert report.overall_status == "pass"
    entry = report.check("triangle_free_four_colorable")
    assert entry.details["mode"] == "exhaustive"


def test_main_theorem_level3_subset_count():
    report = verify_main_theorem(3, seed=0, samples=100)
    entry = report.check("triangle_free_four_colorable")
    assert entry.details["subsets"] == 256
    assert entry.details["triangle_free"] == 170
    assert entry.details["max_colors_used"] <= 4


def test_digraph_theorem_level3():
    report = verify_digraph_theorem(3, seed=0, samples=100)
    assert report.overall_status == "pass"
    entry = report.check("dichromatic_bound")
    assert entry.details["dichromatic_number"] == 2
    assert entry.details["chromatic_number"] == 3


def test_exhaustive_and_sampled_agree_level3():
    exhaustive = verify_main_theorem(3, seed=0, samples=200)
    sampled = verify_main_theorem(3, seed=123, samples=200, subset_mode="sampled")
    assert exhaustive.overall_status == sampled.overall_status == "pass"
    assert sampled.check("triangle_free_four_colorable").details["mode"] == "sampled"


def test_sampled_mode_requires_seed():
    with pytest.raises(PreconditionError):
        verify_main_theorem(3, seed=None, samples=10, subset_mode="sampled")


def test_negative_control_planted_five_cycle():
    # an induced directed 5-cycle must be reported by the digraph suite
    cycle5 = SignedDigraph(5, [(i, (i + 1) % 5, "+") for i in range(5)])
    report = verify_suites(
        signed=cycle5, suites=("theorem-digraph",), seed=0, samples=10
    )
    assert report.overall_status == "fail"
    entry = report.check("no_odd_induced_dicycles")
    assert entry.status == "fail"
    assert entry.witness == [[0, 1, 2, 3, 4]]
    # the witness replays: those vertices really form an induced cycle
    for a, b in zip([0, 1, 2, 3, 4], [1, 2, 3, 4, 0]):
        assert cycle5.sign_of(a, b) is not None


def test_lemma_suite_on_imported_violation():
    bad = SignedDigraph(3, [(0, 1, "+"), (1, 2, "+")])
    report = verify_suites(signed=bad, suites=("lemmas",), samples=10)
    assert report.overall_status == "fail"
    entry = report.check("two_path_closure")
    assert entry.status == "fail"
    witness = entry.witness[0]
    assert witness["vertices"] == [0, 1, 2]
    # replay the recorded facts against the graph
    assert bad.sign_of(2, 0) is None


def test_imported_clean_graph_passes_lemmas(level3):
    report = verify_suites(signed=level3.derived, suites=("lemmas",), samples=10)
    assert report.overall_status == "pass"
    assert report.check("simplicity").status == "pass"


def test_driver_inconclusive_on_tiny_budget(level3):
    from pathsign import Budget

    report = verify_suites(
        n=3,
        suites=("theorem-digraph",),
        seed=0,
        samples=10,
        budget=Budget(node_limit=1),
    )
    assert report.overall_status == "inconclusive"
