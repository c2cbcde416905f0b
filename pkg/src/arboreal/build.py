"""Constructions that turn undirected graphs and clique covers into networks.

The central one hangs a network under the intersection closure of a clique
cover: the closure's containment order becomes the branching structure, and
the taxa are wired in below the smallest members containing them.
"""
from __future__ import annotations

from typing import Optional

from .cliques import (
    CliqueFamily,
    cover_digraph,
    intersection_closure,
    is_edge_clique_cover,
    maximal_cliques,
)
from .errors import DisconnectedGraphError, NoEdgesError, NotACoverError, NotArborealError
from .graphs import UGraph, is_connected, is_ptolemaic
from .networks import Network, from_digraph, is_arboreal, shared_ancestry_graph


def naive_representation(g: UGraph) -> Network:
    """A network whose shared-ancestry graph is `g`, built one root per edge.

    Every taxon becomes a leaf under its own parent vertex, and every edge
    of `g` gets a fresh root over the two parent vertices involved.  The
    parent vertices exist to keep the per-edge roots from colliding; when a
    taxon ends up under a single root its parent is just a pass-through and
    is suppressed.
    """
    if not g.edge_count:
        raise NoEdgesError("need at least one edge")
    if not is_connected(g):
        raise DisconnectedGraphError("the graph must be connected")
    verts = [("leaf", t) for t in g.taxa] + [("mid", t) for t in g.taxa]
    arcs = [(("mid", t), ("leaf", t)) for t in g.taxa]
    for x, y in g.sorted_edges():
        verts.append(("top", x, y))
        arcs.append((("top", x, y), ("mid", x)))
        arcs.append((("top", x, y), ("mid", y)))
    # suppress pass-through parents: taxa of degree 1 sit under one root only
    for t in g.taxa:
        if g.degree(t) == 1:
            verts.remove(("mid", t))
            edge = next(e for e in g.sorted_edges() if t in e)
            top = ("top", *edge)
            arcs.remove((top, ("mid", t)))
            arcs.remove((("mid", t), ("leaf", t)))
            arcs.append((top, ("leaf", t)))
    net = from_digraph(verts, arcs, {("leaf", t): t for t in g.taxa})
    assert net.root_count() == g.edge_count
    assert shared_ancestry_graph(net) == g
    return net


def build_network_from_cover(g: UGraph, cover: CliqueFamily) -> Network:
    """The network hung under the containment order of `cover`'s
    intersection closure.

    Vertices are the closure members ordered by containment (arcs point
    from superset to subset), plus a singleton vertex for each taxon that
    is not itself a closure member, attached below the one member that
    contains the taxon minimally.  A closure member that stays a sink but
    has several parents cannot serve as a leaf itself, so it receives a
    fresh leaf child; every remaining sink carries exactly one taxon and
    becomes that taxon's leaf.

    The roots are always cover members, and are exactly the cover iff the
    cover is an antichain.
    """
    if cover.over != g.taxa:
        raise NotACoverError("cover and graph must share the taxon set")
    if not is_edge_clique_cover(g, cover):
        raise NotACoverError("the family does not cover the edges of the graph")

    closure = intersection_closure(cover)
    hasse = cover_digraph(closure)
    members = list(closure.sets)
    arcs = [(("set", members[a]), ("set", members[b])) for a, b in hasse.arcs]
    children = {i: [members[j] for j in hasse.children_of(i)] for i in range(len(members))}

    singles = []
    for t in g.taxa:
        if frozenset([t]) in closure:
            continue
        singles.append(("single", t))
        hosts = [
            a
            for i, a in enumerate(members)
            if t in a and not any(t in c for c in children[i])
        ]
        if not hosts:
            # isolated taxon; leave the leaf dangling so validation reports
            # the disconnection rather than dying here
            continue
        # intersections are closed pairwise, so the minimal member holding
        # a taxon is unique
        assert len(hosts) == 1
        arcs.append((("set", hosts[0]), ("single", t)))

    outdeg: dict = {}
    indeg: dict = {}
    for u, v in arcs:
        outdeg[u] = outdeg.get(u, 0) + 1
        indeg[v] = indeg.get(v, 0) + 1
    fresh = []
    for a in members:
        key = ("set", a)
        if outdeg.get(key, 0) == 0 and indeg.get(key, 0) >= 2:
            assert len(a) == 1
            fresh.append(("fresh", a))
            arcs.append((key, ("fresh", a)))

    leaf_names = {}
    for a in members:
        if len(a) == 1 and outdeg.get(("set", a), 0) == 0 and ("fresh", a) not in fresh:
            (t,) = a
            leaf_names[("set", a)] = t
    for key in singles:
        leaf_names[key] = key[1]
    for key in fresh:
        (t,) = key[1]
        leaf_names[key] = t

    def label(s: frozenset) -> str:
        return "".join(closure.member_sorted(s))

    order = sorted(range(len(members)), key=lambda i: closure.member_sorted(members[i]))
    verts = [("set", members[i]) for i in order]
    verts += sorted(singles) + sorted(fresh, key=lambda k: label(k[1]))
    display = {("set", a): label(a) for a in members}
    display.update({key: key[1] for key in singles})
    display.update({key: label(key[1]) + "'" for key in fresh})
    net = from_digraph(verts, arcs, leaf_names, taxa=g.taxa, display_names=display)

    assert shared_ancestry_graph(net) == g
    root_sets = set()
    for r in net.roots:
        assert r < len(members), "roots must be closure members"
        root_sets.add(members[order[r]])
    cover_sets = set(cover.as_sets())
    assert root_sets <= cover_sets
    assert (root_sets == cover_sets) == cover.is_antichain()
    return net


def arboreal_representation(g: UGraph) -> Optional[Network]:
    """An arboreal network whose shared-ancestry graph is `g`, or None.

    Exists iff `g` is ptolemaic; then the family of maximal cliques is the
    unique minimum edge clique cover and `build_network_from_cover` on it
    lands in the arboreal case, with one root per maximal clique.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("the graph must be connected")
    if not g.edge_count:
        raise NoEdgesError("need at least one edge")
    if not is_ptolemaic(g):
        return None
    cover = maximal_cliques(g)
    net = build_network_from_cover(g, cover)
    assert is_arboreal(net)
    assert net.root_count() == len(cover)
    return net


def contract_tree_arcs(net: Network) -> Network:
    """Contract away the branching-into-branching tree arcs.

    Repeatedly contract an arc (u, v) where u has outdegree >= 2 and v is a
    non-leaf vertex of indegree 1, merging v into u, until no such arc is
    left.  Arcs are picked in topological-then-id order; the fixpoint does
    not depend on the order.  Leaf set, root count and the shared-ancestry
    graph are unchanged (asserted).
    """
    if not is_arboreal(net):
        raise NotArborealError("contraction is defined on arboreal networks")

    kids = {v: set(net.children(v)) for v in net.vertices()}
    pars = {v: set(net.parents(v)) for v in net.vertices()}
    leaves = set(net.leaf_vertices)

    def topo_order() -> list:
        pending = {v: len(pars[v]) for v in kids}
        ready = sorted((v for v in kids if not pending[v]), reverse=True)
        out = []
        while ready:
            v = ready.pop()
            out.append(v)
            for c in sorted(kids[v], reverse=True):
                pending[c] -= 1
                if not pending[c]:
                    ready.append(c)
            ready.sort(reverse=True)
        return out

    changed = True
    while changed:
        changed = False
        for u in topo_order():
            if len(kids[u]) < 2:
                continue
            for v in sorted(kids[u]):
                if v in leaves or len(pars[v]) != 1:
                    continue
                kids[u].discard(v)
                for c in kids[v]:
                    kids[u].add(c)
                    pars[c].discard(v)
                    pars[c].add(u)
                del kids[v], pars[v]
                changed = True
                break
            if changed:
                break

    order = sorted(kids)
    out = from_digraph(
        order,
        [(u, v) for u in order for v in sorted(kids[u])],
        {v: net.taxon_of(v) for v in order if v in leaves},
        taxa=net.taxa,
    )
    assert is_arboreal(out)
    assert out.root_count() == net.root_count()
    assert shared_ancestry_graph(out) == shared_ancestry_graph(net)
    return out
