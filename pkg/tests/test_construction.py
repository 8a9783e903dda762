import pytest

from pathsign import (
    BaseDigraph,
    CyclicGraphError,
    Digraph,
    SizeBudgetError,
    UniquePathError,
    build_base,
    build_derived,
    check_unique_paths,
    construct,
    edge_count_for,
    layer_partition,
    layer_sizes_for,
    path_table,
    vertex_count_for,
)

EXPECTED_COUNTS = {1: (1, 0), 2: (2, 1), 3: (8, 10), 4: (536, 1566)}
EXPECTED_SIGNS = {1: (0, 0), 2: (1, 0), 3: (10, 4), 4: (1566, 1932)}
EXPECTED_LAYERS = {1: [1], 2: [1, 1], 3: [2, 2, 4], 4: [6, 6, 12, 512]}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_counts_match_recurrences(n):
    base, _, derived = construct(n)
    v, e = EXPECTED_COUNTS[n]
    assert (base.vertex_count, base.digraph.edge_count) == (v, e)
    assert (vertex_count_for(n), edge_count_for(n)) == (v, e)
    assert (derived.positive_edge_count, derived.negative_edge_count) == EXPECTED_SIGNS[n]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_layer_block_sizes(n):
    base = build_base(n)
    sizes = [len(b) for b in base.layers.blocks]
    assert sizes == EXPECTED_LAYERS[n]
    assert sizes == layer_sizes_for(n)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_layer_partition_validates(n):
    base = build_base(n)
    layers = layer_partition(base)
    layer_of = layers.layer_of
    # every edge strictly increases the block index; blocks are stable
    for u, v in base.digraph.edges():
        assert layer_of[u] < layer_of[v]
    # the top block is exactly the tuple vertices added last
    if n > 1:
        assert layers.blocks[-1] == tuple(
            range(base.tuple_block_start, base.vertex_count)
        )


def test_labels_unique_and_positional(level3):
    labels = level3.base.labels
    assert len(set(labels)) == 8
    assert labels[0] == "1.1.v"
    assert labels[6] == "t(1,0)"


def test_build_deterministic():
    a = build_base(3)
    b = build_base(3)
    assert a.digraph.edges() == b.digraph.edges()
    assert a.labels == b.labels


def test_budget_error_names_vertex_count():
    with pytest.raises(SizeBudgetError) as err:
        build_base(5)
    assert "82538993760" in str(err.value)
    assert err.value.vertex_count == 82538993760


def test_budget_override_allows_more():
    # level 4 under a tight budget fails, a loose budget passes
    with pytest.raises(SizeBudgetError):
        build_base(4, vertex_budget=100)
    assert build_base(4, vertex_budget=600).vertex_count == 536


def test_path_table_level3_examples(level3):
    pt = level3.paths
    # a1 reaches the tuple vertex over (b1, a2) through b1: one 2-path
    assert pt.count(0, 6) == 1
    assert pt.length(0, 6) == 2
    # distinct copies are unreachable from each other
    assert pt.count(0, 3) == 0
    assert pt.length(0, 3) is None


def test_path_table_level4_three_edge_path(level4):
    # a -> b -> copy tuple -> top tuple over (that tuple, 0, 0)
    base, pt = level4.base, level4.paths
    tup = base.tuple_vertex((6, 0, 0))
    assert tup == 408
    assert pt.count(0, 408) == 1
    assert pt.length(0, 408) == 3
    assert pt.length_mod3(0, 408) == 0
    # mod-0 pairs are non-adjacent in the derived graph
    assert level4.derived.sign_of(0, 408) is None
    assert level4.derived.sign_of(408, 0) is None


def test_path_lengths_bounded_by_level(level4):
    assert level4.paths.max_length == 3


def test_check_unique_paths_diamond():
    # u->a, u->b, a->v, b->v: two paths from u to v
    diamond = Digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    pt = path_table(diamond)
    assert check_unique_paths(pt) == [(0, 3)]
    assert pt.count(0, 3) == 2


def test_check_unique_paths_level1():
    pt = path_table(build_base(1))
    assert check_unique_paths(pt) == []


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_check_unique_paths_constructed(n, level4):
    pt = level4.paths if n == 4 else construct(n).paths
    assert check_unique_paths(pt) == []


def test_path_table_rejects_cycles():
    with pytest.raises(CyclicGraphError):
        path_table(Digraph(3, [(0, 1), (1, 2), (2, 0)]))


def test_derived_level2(level2):
    d = level2.derived
    assert d.edges() == ((0, 1, "+"),)


def test_derived_level3_exact_edges(level3):
    d = level3.derived
    positives = {(u, v) for u, v, s in d.edges() if s == "+"}
    negatives = {(u, v) for u, v, s in d.edges() if s == "-"}
    assert positives == {
        (0, 1), (0, 4), (0, 5), (1, 6), (1, 7),
        (2, 3), (2, 4), (2, 6), (3, 5), (3, 7),
    }
    assert negatives == {(5, 2), (6, 0), (7, 0), (7, 2)}


def test_derived_embeds_base_positively(level4):
    d = level4.derived
    for u, v in level4.base.digraph.edges():
        assert d.sign_of(u, v) == "+"


def test_sign_rule_exhaustive(level4):
    # positive edges = pairs at path length 1 mod 3, negative = reversed
    # pairs at 2 mod 3, nothing at 0 mod 3
    pt, d = level4.paths, level4.derived
    n = d.vertex_count
    for u in range(n):
        for v in range(n):
            if pt.count(u, v) != 1:
                continue
            m = pt.length_mod3(u, v)
            if m == 1:
                assert d.sign_of(u, v) == "+"
            elif m == 2:
                assert d.sign_of(v, u) == "-"
            else:
                assert d.sign_of(u, v) is None and d.sign_of(v, u) is None


def test_build_derived_rejects_multiple_paths():
    diamond = Digraph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    pt = path_table(diamond)
    fake = BaseDigraph(diamond, 2, ["a", "b", "c", "d"], build_base(1).layers)
    with pytest.raises(UniquePathError) as err:
        build_derived(fake, pt)
    assert (0, 3) in err.value.pairs


def test_copy_range_helpers(level4):
    base = level4.base
    assert base.copy_range(1) == (0, 8)
    assert base.copy_range(3) == (16, 24)
    assert base.tuple_block_start == 24
    with pytest.raises(ValueError):
        base.copy_range(4)
    with pytest.raises(ValueError):
        base.tuple_vertex((0, 0))
