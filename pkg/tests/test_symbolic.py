"""Symbolic maps, their explainability conditions, and the normal form."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arboreal import (
    GAP_GLYPH,
    LabelledNetwork,
    NotArborealError,
    NotUltrametricError,
    SymbolicMap,
    TaxonSet,
    TooLargeError,
    Violation,
    are_isomorphic,
    build_ultrametric_tree,
    check_arboreal_conditions,
    check_violation,
    clique_modules,
    evaluate_map,
    explain,
    find_a4_violation,
    find_delta_violation,
    find_pi_violation,
    graph_of_map,
    is_discriminating,
    make_discriminating,
    shared_ancestry_graph,
    strong_clique_modules,
    verify_phi_bijection,
)
from arboreal.symbolic import A4, DELTA, NOT_CONNECTED, NOT_PTOLEMAIC, PI
from arboreal.oracle import GenParams, random_labelled_network, random_uncollapse


def map_of(taxa, values, symbols=None):
    return SymbolicMap.build(TaxonSet.of(taxa), values, symbols)


def pi_violating_map():
    # one symbol along a four-taxon path, the other across it
    values = {("w", "x"): "A", ("x", "y"): "A", ("y", "z"): "A"}
    values.update({("w", "y"): "B", ("w", "z"): "B", ("x", "z"): "B"})
    return map_of("wxyz", values)


def a4_violating_map():
    values = {("a", "b"): "A", ("a", "c"): "A", ("b", "c"): "B",
              ("a", "d"): "A", ("b", "d"): "A"}
    return map_of("abcd", values)


def test_map_shape_checks():
    ts = TaxonSet.of("abc")
    with pytest.raises(ValueError):
        SymbolicMap(ts, ("A", "B"))  # one entry short
    with pytest.raises(ValueError):
        SymbolicMap(ts, ("A", "", "B"))
    with pytest.raises(ValueError):
        SymbolicMap(ts, ("A", GAP_GLYPH, "B"))
    with pytest.raises(ValueError):
        SymbolicMap(ts, ("A", None, "B"), symbols=("A",))  # B not declared
    with pytest.raises(ValueError):
        SymbolicMap.build(TaxonSet.of("a"), {})


def test_map_accessors_and_alphabet():
    d = map_of("abc", {("a", "b"): "A", ("b", "c"): "B"})
    assert d.value("b", "a") == "A"
    assert d.value("a", "c") is None
    assert d.gap_count() == 1
    assert d.symbols == ("A", "B")
    declared = map_of("abc", {("a", "b"): "A"}, symbols=("A", "B", "C"))
    assert declared.symbols == ("A", "B", "C")
    # equality ignores the declared alphabet
    assert declared == map_of("abc", {("a", "b"): "A"})
    assert dict(d.items())[("a", "b")] == "A"


def test_build_accepts_either_endpoint_order():
    d = map_of("ab", {("b", "a"): "A"})
    assert d.value("a", "b") == "A"
    with pytest.raises(ValueError):
        map_of("ab", {("a", "b"): "A", ("b", "a"): "B"})


def test_support_graph(seven_map):
    g = graph_of_map(seven_map)
    assert g.edge_count == 15
    assert g.has_edge("1", "2") and not g.has_edge("1", "5")


def test_delta_violation_detected():
    d = map_of("abc", {("a", "b"): "A", ("a", "c"): "B", ("b", "c"): "C"})
    triple = find_delta_violation(d)
    assert triple is not None and set(triple) == set("abc")
    v = check_arboreal_conditions(d)
    assert v is not None and v.kind == DELTA
    assert check_violation(d, v)


def test_pi_violation_detected():
    d = pi_violating_map()
    quad = find_pi_violation(d)
    assert quad is not None and set(quad) == set("wxyz")
    v = check_arboreal_conditions(d)
    assert v is not None and v.kind == PI
    assert check_violation(d, v)


def test_a4_violation_detected():
    d = a4_violating_map()
    assert find_delta_violation(d) is None
    assert find_pi_violation(d) is None
    quad = find_a4_violation(d)
    assert quad is not None
    v = check_arboreal_conditions(d)
    assert v is not None and v.kind == A4
    assert check_violation(d, v)


def test_disconnected_support_reported_first():
    d = map_of("abcd", {("a", "b"): "A", ("c", "d"): "A"})
    v = check_arboreal_conditions(d)
    assert v is not None and v.kind == NOT_CONNECTED
    assert check_violation(d, v)


def test_hole_in_support_reported():
    values = {("w", "x"): "A", ("x", "y"): "A", ("y", "z"): "A", ("w", "z"): "A"}
    d = map_of("wxyz", values)
    v = check_arboreal_conditions(d)
    assert v is not None and v.kind == NOT_PTOLEMAIC
    assert set(v.witness) == set("wxyz")
    assert check_violation(d, v)


def test_violation_checker_rejects_corrupt_witnesses():
    d = pi_violating_map()
    v = check_arboreal_conditions(d)
    assert not check_violation(d, Violation(v.kind, v.witness[:3]))
    assert not check_violation(d, Violation(v.kind, ("w", "x", "y", "q")))
    assert not check_violation(d, Violation(DELTA, ("w", "x", "y")))


def test_clean_map_has_no_violation(seven_map, module_map):
    assert check_arboreal_conditions(seven_map) is None
    assert check_arboreal_conditions(module_map) is None


def test_labelled_network_label_domain(seven_taxa):
    net = seven_taxa.net
    assert seven_taxa.label_of(0) == "W"
    assert seven_taxa.symbol_alphabet() == ("B", "W")
    good = dict(seven_taxa.labels)
    with pytest.raises(ValueError):
        LabelledNetwork.build(net, {**good, 5: "W"})  # leaf labelled
    missing = dict(good)
    del missing[4]
    with pytest.raises(ValueError):
        LabelledNetwork.build(net, missing)
    with pytest.raises(ValueError):
        LabelledNetwork.build(net, {**good, 0: GAP_GLYPH})


def test_evaluate_reads_off_least_common_ancestor_labels(seven_taxa, seven_map):
    d = evaluate_map(seven_taxa)
    assert d == seven_map
    assert d.value("1", "2") == "B"
    assert d.value("1", "4") == "W"
    assert d.value("3", "4") == "B"
    assert d.value("4", "7") == "B"
    assert d.value("2", "6") is None
    assert d.gap_count() == 6


def test_evaluate_needs_a_tree(crown):
    labels = {v: "A" for v in crown.vertices() if crown.outdeg(v) >= 2}
    ln = LabelledNetwork.build(crown, labels)
    with pytest.raises(NotArborealError):
        evaluate_map(ln)


def test_support_graph_is_the_shared_ancestry_graph(seven_taxa, seven_map):
    assert graph_of_map(seven_map) == shared_ancestry_graph(seven_taxa.net)


def test_explain_round_trips_the_fixture(seven_taxa, seven_map):
    out = explain(seven_map)
    assert isinstance(out, LabelledNetwork)
    assert evaluate_map(out) == seven_map
    # the fixture is already discriminating, and the normal form is unique
    assert is_discriminating(seven_taxa)
    assert are_isomorphic(out, seven_taxa)


def test_explain_returns_the_violation_for_bad_maps():
    v = explain(pi_violating_map())
    assert isinstance(v, Violation) and v.kind == PI
    v = explain(a4_violating_map())
    assert isinstance(v, Violation) and v.kind == A4


def test_gap_free_maps_get_single_rooted_trees():
    d = map_of("abc", {("a", "b"): "B", ("a", "c"): "W", ("b", "c"): "W"})
    tree = build_ultrametric_tree(d)
    assert tree.net.root_count() == 1
    assert tree.net.num_vertices == 5
    assert evaluate_map(tree) == d
    assert is_discriminating(tree)


def test_ultrametric_guards():
    gapped = map_of("abc", {("a", "b"): "B"})
    with pytest.raises(NotUltrametricError):
        build_ultrametric_tree(gapped)
    delta = map_of("abc", {("a", "b"): "A", ("a", "c"): "B", ("b", "c"): "C"})
    with pytest.raises(NotUltrametricError):
        build_ultrametric_tree(delta)
    pi = pi_violating_map()
    with pytest.raises(NotUltrametricError):
        build_ultrametric_tree(pi)


def test_normal_form_is_idempotent(seven_taxa):
    nf = make_discriminating(seven_taxa)
    assert are_isomorphic(nf, seven_taxa)
    assert are_isomorphic(make_discriminating(nf), nf)


def test_phi_counts_vertices_against_module_chains(seven_taxa):
    assert verify_phi_bijection(seven_taxa)


def test_phi_needs_a_tree(crown):
    labels = {v: "A" for v in crown.vertices() if crown.outdeg(v) >= 2}
    with pytest.raises(NotArborealError):
        verify_phi_bijection(LabelledNetwork.build(crown, labels))


def test_clique_modules_of_the_demo_map(module_map):
    mods = clique_modules(module_map)
    big = {m for m in mods if len(m) >= 2}
    assert big == {
        frozenset("tu"), frozenset("xy"), frozenset("tz"),
        frozenset("xyz"), frozenset("txy"), frozenset("txyz"),
    }
    singles = {m for m in mods if len(m) == 1}
    assert singles == {frozenset(t) for t in module_map.taxa}
    assert strong_clique_modules(module_map).as_sets() == {
        frozenset("tu"), frozenset("xy"), frozenset("txyz"),
    }


def test_clique_module_cap():
    taxa = [f"t{i}" for i in range(17)]
    values = {(taxa[0], taxa[1]): "A"}
    with pytest.raises(TooLargeError):
        clique_modules(SymbolicMap.build(TaxonSet.of(taxa), values))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_random_labelled_networks_round_trip(seed):
    p = GenParams(leaf_range=(3, 9), root_range=(1, 3), symbol_count=2, seed=seed)
    ln = random_labelled_network(p)
    d = evaluate_map(ln)
    assert check_arboreal_conditions(d) is None
    out = explain(d)
    assert isinstance(out, LabelledNetwork)
    assert evaluate_map(out) == d
    assert is_discriminating(out)
    assert verify_phi_bijection(out)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_gap_free_iff_single_root(seed):
    p = GenParams(leaf_range=(3, 8), root_range=(1, 3), seed=seed)
    ln = random_labelled_network(p)
    d = evaluate_map(ln)
    assert (d.gap_count() == 0) == (ln.net.root_count() == 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_undoing_collapses_keeps_the_map(seed):
    p = GenParams(leaf_range=(4, 8), root_range=(1, 2), symbol_count=2, seed=seed)
    nf = make_discriminating(random_labelled_network(p))
    grown = random_uncollapse(nf, seed=seed + 1)
    if grown is None:
        return
    assert not is_discriminating(grown)
    assert evaluate_map(grown) == evaluate_map(nf)
    assert are_isomorphic(make_discriminating(grown), nf)
