"""Network validation, arboreality, clusters, ancestry, and surgery."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arboreal import (
    InvalidNetworkError,
    NotARootError,
    NotArborealError,
    SingleRootedError,
    SubsetTooSmallError,
    UnknownTaxonError,
    cluster,
    find_alternating_cycle,
    from_digraph,
    h_tilde,
    is_arboreal,
    lca,
    maximal_cliques,
    remove_root,
    restrict,
    shared_ancestry_graph,
    validate_network,
)
from arboreal.errors import (
    CYCLIC,
    DISCONNECTED,
    INDEG1_OUTDEG1,
    LEAF_INDEG_NE_1,
    LEAF_SET_MISMATCH,
    ROOT_OUTDEG_LT_2,
)
from arboreal.oracle import (
    GenParams,
    brute_force_minimal_common_ancestors,
    random_arboreal_network,
    random_network,
)

CHERRY_ARCS = [(0, 1), (0, 2)]
CHERRY_LEAVES = {1: "a", 2: "b"}


def invalid_kind(arcs, leaves, **kw):
    with pytest.raises(InvalidNetworkError) as err:
        validate_network(arcs, leaves, **kw)
    return err.value.kind


def test_cherry_is_the_smallest_network():
    net = validate_network(CHERRY_ARCS, CHERRY_LEAVES)
    assert net.num_vertices == 3
    assert net.roots == (0,) and net.leaf_vertices == (1, 2)
    assert net.hybrids == ()
    assert is_arboreal(net)
    assert net.taxon_of(1) == "a" and net.leaf_vertex("b") == 2
    with pytest.raises(UnknownTaxonError):
        net.leaf_vertex("z")


def test_each_shape_rule_reports_its_kind():
    assert invalid_kind([(0, 0)], {}) == CYCLIC
    assert invalid_kind([(0, 1), (1, 2), (2, 0)], {}) == CYCLIC
    assert invalid_kind(
        CHERRY_ARCS + [(3, 4), (3, 5)],
        {1: "a", 2: "b", 4: "c", 5: "d"},
    ) == DISCONNECTED
    assert invalid_kind([(0, 1), (1, 2), (1, 3)], {2: "a", 3: "b"}) == ROOT_OUTDEG_LT_2
    assert invalid_kind(
        [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 5)],
        {3: "a", 4: "b", 5: "c"},
    ) == LEAF_INDEG_NE_1
    assert invalid_kind(
        [(0, 1), (0, 2), (1, 3), (3, 4), (3, 5)],
        {2: "a", 4: "b", 5: "c"},
    ) == INDEG1_OUTDEG1
    assert invalid_kind(CHERRY_ARCS, {1: "a"}) == LEAF_SET_MISMATCH
    assert invalid_kind(CHERRY_ARCS, {1: "a", 2: "a"}) == LEAF_SET_MISMATCH


def test_validate_rejects_garbage_ids():
    with pytest.raises(ValueError):
        validate_network([(0, 5)], {5: "a"}, num_vertices=2)
    with pytest.raises(ValueError):
        validate_network(CHERRY_ARCS + CHERRY_ARCS[:1], CHERRY_LEAVES)
    with pytest.raises(ValueError):
        validate_network([], {})


def test_from_digraph_relabels():
    net = from_digraph(
        ["r", "x", "y"],
        [("r", "x"), ("r", "y")],
        {"x": "a", "y": "b"},
        display_names={"r": "root"},
    )
    assert net.num_vertices == 3
    assert net.vertex_names == ("root", "x", "y")
    assert sorted(t for _, t in net.leaves) == ["a", "b"]
    with pytest.raises(ValueError):
        from_digraph(["r", "r"], [], {})


def test_degree_accessors(seven_taxa):
    net = seven_taxa.net
    assert net.roots == (0, 1)
    assert net.root_count() == 2
    assert net.hybrids == (4,)
    assert net.indeg(4) == 2 and net.outdeg(4) == 2
    assert net.children(0) == (2, 4) and net.parents(4) == (0, 1)
    assert net.is_leaf(5) and not net.is_leaf(2)


def test_ancestor_and_descendant_sets(seven_taxa):
    net = seven_taxa.net
    leaf = net.leaf_vertex("3")
    assert net.ancestors(leaf) == frozenset({leaf, 4, 0, 1})
    assert net.descendants(2) == frozenset({2, 5, 6})
    # both directions are reflexive
    assert 0 in net.descendants(0) and 0 in net.ancestors(0)


def test_cluster_contents(seven_taxa):
    net = seven_taxa.net
    assert cluster(net, 0) == frozenset("1234")
    assert cluster(net, 1) == frozenset("34567")
    assert cluster(net, 4) == frozenset("34")
    assert cluster(net, net.leaf_vertex("6")) == frozenset("6")


def test_hybrid_surplus_and_arboreality(seven_taxa, crown):
    tree = seven_taxa.net
    assert h_tilde(tree) == 1  # one doubly-fed vertex
    assert is_arboreal(tree)
    assert len(tree.arcs) == tree.num_vertices - 1
    assert h_tilde(crown) == 3
    assert not is_arboreal(crown)


def test_alternating_cycle_witness(seven_taxa, crown):
    assert find_alternating_cycle(seven_taxa.net) is None
    cyc = find_alternating_cycle(crown)
    assert cyc is not None
    assert cyc.k >= 1
    assert cyc.verify(crown)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_alternating_cycles_appear_exactly_off_trees(seed):
    p = GenParams(leaf_range=(3, 8), root_range=(1, 3), hybrid_bias=0.4, seed=seed)
    net = random_network(p)
    cyc = find_alternating_cycle(net)
    if is_arboreal(net):
        assert cyc is None
    else:
        assert cyc is not None and cyc.verify(net)


def test_lca_values_on_the_two_root_tree(seven_taxa):
    net = seven_taxa.net
    assert lca(net, "1", "2") == 2
    assert lca(net, "3", "4") == 4
    assert lca(net, "1", "3") == 0
    assert lca(net, "4", "6") == 1
    assert lca(net, "1", "5") is None  # no shared ancestry across the roots


def test_lca_requires_a_tree(crown):
    with pytest.raises(NotArborealError):
        lca(crown, "1", "2")


def test_brute_minimal_common_ancestors_on_the_crown(crown):
    mca = brute_force_minimal_common_ancestors
    assert mca(crown, "1", "2") == frozenset({2})
    assert mca(crown, "2", "3") == frozenset({3})
    assert mca(crown, "1", "3") == frozenset({1})


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_lca_matches_brute_force_on_trees(seed):
    p = GenParams(leaf_range=(3, 9), root_range=(1, 3), seed=seed)
    net = random_arboreal_network(p)
    taxa = list(net.taxa)
    for x in taxa:
        for y in taxa:
            if x >= y:
                continue
            mcas = brute_force_minimal_common_ancestors(net, x, y)
            got = lca(net, x, y)
            if got is None:
                assert mcas == frozenset()
            else:
                assert mcas == frozenset({got})


def test_shared_ancestry_edges(seven_taxa):
    g = shared_ancestry_graph(seven_taxa.net)
    assert g.has_edge("1", "2")
    assert g.has_edge("3", "6")
    assert not g.has_edge("1", "5")
    assert g.edge_count == 15  # 21 pairs minus the 6 without common ancestors


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_any_shared_ancestry_clique_sits_below_one_vertex(seed):
    p = GenParams(leaf_range=(3, 8), root_range=(1, 3), hybrid_bias=0.3, seed=seed)
    net = random_network(p)
    g = shared_ancestry_graph(net)
    clusters = [cluster(net, v) for v in net.vertices()]
    for q in maximal_cliques(g):
        assert any(q <= c for c in clusters)
    for r in net.roots:
        assert maximal_cliques(g)  # connected graphs on >= 2 taxa have an edge
        assert cluster(net, r) in {c for c in clusters}


def test_restrict_to_one_side(seven_taxa):
    net = seven_taxa.net
    small = restrict(net, ["1", "2"])
    assert tuple(small.taxa) == ("1", "2")
    assert small.num_vertices == 3 and small.root_count() == 1

    cross = restrict(net, ["1", "3"])
    assert tuple(cross.taxa) == ("1", "3")
    assert cross.num_vertices == 3  # everything between the root and leaves folds away

    assert restrict(net, list(net.taxa)) is net


def test_restrict_guards(seven_taxa):
    net = seven_taxa.net
    with pytest.raises(SubsetTooSmallError):
        restrict(net, ["1"])
    with pytest.raises(UnknownTaxonError):
        restrict(net, ["1", "zz"])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_restriction_is_transitive(seed):
    # single root, so every taxon subset shares ancestry and stays connected
    p = GenParams(leaf_range=(5, 9), root_range=(1, 1), seed=seed)
    net = random_arboreal_network(p)
    taxa = list(net.taxa)
    outer, inner = taxa[:4], taxa[:3]
    direct = restrict(net, inner)
    via = restrict(restrict(net, outer), inner)
    assert tuple(direct.taxa) == tuple(via.taxa)
    assert direct.num_vertices == via.num_vertices
    assert direct.arcs == via.arcs
    assert direct.leaves == via.leaves


def test_remove_root_keeps_the_other_component(seven_taxa):
    net = seven_taxa.net
    left = remove_root(net, 1)
    assert left is not None
    assert tuple(left.taxa) == ("1", "2", "3", "4")
    assert left.root_count() == 1
    right = remove_root(net, 0)
    assert right is not None
    assert tuple(right.taxa) == ("3", "4", "5", "6", "7")


def test_remove_root_guards(seven_taxa, crown):
    net = seven_taxa.net
    with pytest.raises(NotARootError):
        remove_root(net, 2)
    with pytest.raises(SingleRootedError):
        remove_root(crown, 0)


def test_remove_root_reports_a_split_remainder():
    # three roots; the first bridges the other two components
    arcs = [(0, 1), (0, 2), (3, 1), (3, 4), (5, 2), (5, 6), (1, 7), (2, 8)]
    leaves = {4: "c", 6: "d", 7: "e", 8: "f"}
    net = validate_network(arcs, leaves, num_vertices=9)
    assert net.root_count() == 3
    assert remove_root(net, 0) is None
    assert remove_root(net, 3) is not None
