"""Symbolic maps on taxon pairs and the labelled networks that explain them.

A symbolic map assigns to every unordered pair of taxa either a symbol from a
finite alphabet or the gap value (spelled None here).  A labelled arboreal
network explains such a map when the label of the least common ancestor of
each pair reproduces its value, the gap standing for "no common ancestor".
This module decides when a map is explainable, constructs an explanation, and
normalizes explanations into their discriminating form, which is unique up to
isomorphism and certified by a cluster bijection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Optional, Union

from .build import arboreal_representation, contract_tree_arcs
from .cliques import CliqueFamily, intersection_closure, maximal_cliques
from .errors import (
    AmbiguousSplitError,
    ConstructionMismatchError,
    NotArborealError,
    NotUltrametricError,
    TooLargeError,
    UnknownVertexError,
)
from .graphs import (
    TaxonSet,
    UGraph,
    connected_components,
    contains_gem,
    find_induced_hole,
    induced_subgraph,
    is_connected,
    is_ptolemaic,
)
from .networks import (
    Network,
    cluster,
    from_digraph,
    is_arboreal,
    validate_network,
)

GAP_GLYPH = "⊙"  # display spelling of the gap; reserved, never a symbol


@dataclass(frozen=True)
class SymbolicMap:
    """Total assignment of a symbol or the gap to every unordered taxon pair.

    `entries` holds one value per pair of `taxa.pairs()`, in that order, with
    None as the gap.  The alphabet is inferred from the range unless supplied,
    in which case it must cover the range.  Equality compares taxa and values
    only; the declared alphabet does not participate.
    """

    taxa: TaxonSet
    entries: tuple
    symbols: tuple = field(default=None, compare=False)
    _at: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.taxa) < 2:
            raise ValueError("a symbolic map needs at least two taxa")
        object.__setattr__(self, "entries", tuple(self.entries))
        pairs = list(self.taxa.pairs())
        if len(self.entries) != len(pairs):
            raise ValueError(
                f"need {len(pairs)} values for {len(self.taxa)} taxa, got {len(self.entries)}"
            )
        used = set()
        for val in self.entries:
            if val is None:
                continue
            if not isinstance(val, str) or not val or val == GAP_GLYPH:
                raise ValueError("symbols are non-empty strings; the gap is spelled None")
            used.add(val)
        if self.symbols is None:
            object.__setattr__(self, "symbols", tuple(sorted(used)))
        else:
            alphabet = tuple(self.symbols)
            if len(set(alphabet)) != len(alphabet):
                raise ValueError("alphabet symbols must be distinct")
            if any(not isinstance(s, str) or not s or s == GAP_GLYPH for s in alphabet):
                raise ValueError("alphabet symbols are non-empty strings, gap excluded")
            if not used <= set(alphabet):
                raise ValueError("declared alphabet must cover every value in use")
            object.__setattr__(self, "symbols", alphabet)
        object.__setattr__(self, "_at", {p: i for i, p in enumerate(pairs)})

    @classmethod
    def build(cls, taxa, values: Mapping, symbols=None) -> "SymbolicMap":
        """Build from a mapping keyed by taxon pairs in either endpoint order;
        missing pairs default to the gap."""
        ts = taxa if isinstance(taxa, TaxonSet) else TaxonSet.of(taxa)
        table = {}
        for (a, b), val in values.items():
            key = ts.pair(a, b)
            if key in table and table[key] != val:
                raise ValueError(f"conflicting values for pair {key}")
            table[key] = val
        return cls(ts, tuple(table.get(p) for p in ts.pairs()), symbols)

    def value(self, a: str, b: str):
        return self.entries[self._at[self.taxa.pair(a, b)]]

    def items(self):
        return zip(self.taxa.pairs(), self.entries)

    def gap_count(self) -> int:
        return sum(1 for v in self.entries if v is None)


def graph_of_map(d: SymbolicMap) -> UGraph:
    """Support graph on the taxa, joining the pairs whose value is not the gap."""
    return UGraph(d.taxa, frozenset(p for p, v in d.items() if v is not None))


# ---------------------------------------------------------------------------
# The four explainability conditions and their witnesses.

NOT_CONNECTED = "not-connected"
NOT_PTOLEMAIC = "not-ptolemaic"
DELTA = "delta"
PI = "pi"
A4 = "a4"


@dataclass(frozen=True)
class Violation:
    """Certificate that a map fails one of the explainability conditions."""

    kind: str
    witness: tuple
    detail: str = ""


def check_violation(d: SymbolicMap, violation: Violation) -> bool:
    """Re-check a violation certificate against the map it speaks about."""
    w = violation.witness
    if len(set(w)) != len(w) or any(t not in d.taxa for t in w):
        return False
    kind = violation.kind
    if kind == NOT_CONNECTED:
        inside = set(w)
        if not inside or len(inside) == len(d.taxa):
            return False
        return all(
            d.value(x, y) is None for x in inside for y in d.taxa if y not in inside
        )
    if kind == NOT_PTOLEMAIC:
        return not is_ptolemaic(induced_subgraph(graph_of_map(d), w))
    if kind == DELTA:
        if len(w) != 3:
            return False
        x, y, z = w
        vals = {d.value(x, y), d.value(x, z), d.value(y, z)}
        return None not in vals and len(vals) == 3
    if kind == PI:
        if len(w) != 4:
            return False
        x, y, z, u = w
        along = {d.value(x, y), d.value(y, z), d.value(z, u)}
        cross = {d.value(z, x), d.value(x, u), d.value(u, y)}
        return len(along) == 1 == len(cross) and None not in along | cross and along != cross
    if kind == A4:
        if len(w) != 4:
            return False
        x, y, z, u = w
        five = [d.value(x, y), d.value(x, z), d.value(y, z), d.value(x, u), d.value(y, u)]
        return (
            d.value(z, u) is None
            and all(v is not None for v in five)
            and (d.value(x, z) != d.value(y, z) or d.value(x, u) != d.value(y, u))
        )
    return False


def find_delta_violation(d: SymbolicMap) -> Optional[tuple]:
    """First triple (canonical order) carrying three distinct symbols and no
    gap, else None."""
    for x, y, z in combinations(d.taxa.taxa, 3):
        vals = {d.value(x, y), d.value(x, z), d.value(y, z)}
        if None not in vals and len(vals) == 3:
            return (x, y, z)
    return None


def find_pi_violation(d: SymbolicMap) -> Optional[tuple]:
    """Witness (x, y, z, u) with d(x,y)=d(y,z)=d(z,u) != d(z,x)=d(x,u)=d(u,y)
    and no gap, else None.

    In a gap-free quadruple split 3/3 between two symbols, the pattern holds
    exactly when one symbol class forms a path on the four taxa (three edges
    with two endpoints); the other class is then its complement, which is
    again a path crossing the first.
    """
    for quad in combinations(d.taxa.taxa, 4):
        classes: dict = {}
        for a, b in combinations(quad, 2):
            classes.setdefault(d.value(a, b), []).append((a, b))
        if None in classes or len(classes) != 2:
            continue
        pairs = classes[min(classes)]
        if len(pairs) != 3:
            continue
        adj = {t: [] for t in quad}
        for a, b in pairs:
            adj[a].append(b)
            adj[b].append(a)
        ends = sorted(t for t in quad if len(adj[t]) == 1)
        if len(ends) != 2:
            continue  # a triangle plus an isolated taxon, or a star
        x = ends[0]
        y = adj[x][0]
        z = next(t for t in adj[y] if t != x)
        u = next(t for t in adj[z] if t != y)
        return (x, y, z, u)
    return None


def find_a4_violation(d: SymbolicMap) -> Optional[tuple]:
    """Witness (x, y, z, u) whose only gap pair is {z, u} while x and y
    disagree on z or on u, else None."""
    for quad in combinations(d.taxa.taxa, 4):
        gaps = [(a, b) for a, b in combinations(quad, 2) if d.value(a, b) is None]
        if len(gaps) != 1:
            continue
        z, u = gaps[0]
        x, y = (t for t in quad if t != z and t != u)
        if d.value(x, z) != d.value(y, z) or d.value(x, u) != d.value(y, u):
            return (x, y, z, u)
    return None


def check_arboreal_conditions(d: SymbolicMap) -> Optional[Violation]:
    """The first reason no labelled arboreal network can explain `d`, or None.

    A map is explainable iff its support graph is connected and ptolemaic, no
    triple carries three symbols, no quadruple crosses two symbols, and every
    almost-gap-free quadruple is consistent across its gap pair.  The checks
    run in that fixed order so the reported witness is deterministic.
    """

    def attest(v: Violation) -> Violation:
        assert check_violation(d, v)
        return v

    g = graph_of_map(d)
    if not is_connected(g):
        comps = connected_components(g)
        return attest(
            Violation(NOT_CONNECTED, comps[0], f"support graph has {len(comps)} components")
        )
    hole = find_induced_hole(g)
    if hole is not None:
        return attest(Violation(NOT_PTOLEMAIC, hole, "chordless cycle in the support graph"))
    gem = contains_gem(g)
    if gem is not None:
        return attest(Violation(NOT_PTOLEMAIC, gem, "induced gem in the support graph"))
    triple = find_delta_violation(d)
    if triple is not None:
        return attest(Violation(DELTA, triple, "three distinct symbols on one triple"))
    quad = find_pi_violation(d)
    if quad is not None:
        return attest(Violation(PI, quad, "two symbols crossing on a quadruple"))
    quad = find_a4_violation(d)
    if quad is not None:
        return attest(Violation(A4, quad, "gap pair with disagreeing co-neighbors"))
    return None


# ---------------------------------------------------------------------------
# Labelled networks and the maps they induce.


@dataclass(frozen=True)
class LabelledNetwork:
    """A network with one symbol on every vertex of outdegree at least two."""

    net: Network
    labels: tuple  # (vertex, symbol) pairs, kept sorted by vertex
    _label_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        table = dict(self.labels)
        if len(table) != len(tuple(self.labels)):
            raise ValueError("duplicate label entries")
        expected = {v for v in self.net.vertices() if self.net.outdeg(v) >= 2}
        if set(table) != expected:
            raise ValueError("labels must cover exactly the vertices of outdegree >= 2")
        for sym in table.values():
            if not isinstance(sym, str) or not sym or sym == GAP_GLYPH:
                raise ValueError("labels are non-empty symbol strings, gap excluded")
        object.__setattr__(self, "labels", tuple(sorted(table.items())))
        object.__setattr__(self, "_label_of", table)

    @classmethod
    def build(cls, net: Network, labels: Mapping) -> "LabelledNetwork":
        return cls(net, tuple(labels.items()))

    @property
    def taxa(self) -> TaxonSet:
        return self.net.taxa

    def label_of(self, v: int) -> str:
        try:
            return self._label_of[v]
        except KeyError:
            raise UnknownVertexError(v) from None

    def symbol_alphabet(self) -> tuple:
        return tuple(sorted(set(self._label_of.values())))


def evaluate_map(ln: LabelledNetwork) -> SymbolicMap:
    """The map sending each pair of taxa to the label of its least common
    ancestor, with the gap where no common ancestor exists."""
    net = ln.net
    if not is_arboreal(net):
        raise NotArborealError("maps are read off arboreal networks only")
    anc = net.leaf_ancestor_sets()
    entries = []
    for x, y in net.taxa.pairs():
        common = anc[x] & anc[y]
        if not common:
            entries.append(None)
            continue
        minimal = [v for v in common if not any(c in common for c in net.children(v))]
        assert len(minimal) == 1
        # two distinct leaves diverge at their meeting vertex, so it branches
        # and carries a label
        entries.append(ln.label_of(minimal[0]))
    return SymbolicMap(net.taxa, tuple(entries), ln.symbol_alphabet())


# ---------------------------------------------------------------------------
# Constructing explanations.


def _fragments(d: SymbolicMap, group: tuple, m: str) -> list:
    # connected components of the pairs valued anything but m, each keeping
    # the group order, listed by first member
    index = {t: i for i, t in enumerate(group)}
    root = list(range(len(group)))

    def find(i: int) -> int:
        while root[i] != i:
            root[i] = root[root[i]]
            i = root[i]
        return i

    for a, b in combinations(group, 2):
        if d.value(a, b) != m:
            ra, rb = find(index[a]), find(index[b])
            if ra != rb:
                root[rb] = ra
    comps: dict = {}
    for t in group:
        comps.setdefault(find(index[t]), []).append(t)
    return sorted((tuple(c) for c in comps.values()), key=lambda c: index[c[0]])


def build_ultrametric_tree(d: SymbolicMap) -> LabelledNetwork:
    """A labelled phylogenetic tree explaining a gap-free map.

    At each level exactly one symbol m can split the current group: deleting
    the pairs valued m must disconnect it.  The fragments become the subtrees
    and m the label at their join, so the pairs across fragments, which all
    carry m, meet exactly there.  No splitting symbol means no tree explains
    the map.  Two splitting symbols cannot coexist (the pairs across two
    fragments of one symbol keep the group connected for any other), so the
    ambiguity error is a guard, never expected.
    """
    if any(v is None for v in d.entries):
        raise NotUltrametricError("trees explain gap-free maps only")

    arcs = []
    leaf_names = {}
    labels = {}
    counter = 0

    def grow(group: tuple) -> int:
        nonlocal counter
        node = counter
        counter += 1
        if len(group) == 1:
            leaf_names[node] = group[0]
            return node
        splitters = []
        for m in sorted({d.value(a, b) for a, b in combinations(group, 2)}):
            fragments = _fragments(d, group, m)
            if len(fragments) >= 2:
                splitters.append((m, fragments))
        if not splitters:
            raise NotUltrametricError(f"no symbol splits {group}")
        if len(splitters) > 1:
            raise AmbiguousSplitError(f"several symbols split {group}")
        m, fragments = splitters[0]
        labels[node] = m
        for fragment in fragments:
            arcs.append((node, grow(fragment)))
        return node

    grow(d.taxa.sorted(d.taxa))
    net = validate_network(arcs, leaf_names, num_vertices=counter, taxa=d.taxa)
    out = LabelledNetwork.build(net, labels)
    assert evaluate_map(out) == d
    return out


def explain(d: SymbolicMap) -> Union[LabelledNetwork, Violation]:
    """A labelled arboreal network explaining `d`, or the violation ruling
    one out.

    The support graph is represented by an arboreal network and its internal
    tree arcs are contracted, leaving every branching vertex with hybrid and
    leaf children only.  The map then restricts to each branching vertex: its
    value on two children is the value on any pair of leaves below them,
    which is gap-free and tree-explainable, so every branching vertex can be
    replaced by the tree explaining its local map.  The local labels
    assemble into the global labelling.
    """
    violation = check_arboreal_conditions(d)
    if violation is not None:
        return violation

    g = graph_of_map(d)
    base = arboreal_representation(g)
    assert base is not None  # ptolemaic was checked a moment ago
    nhat = contract_tree_arcs(base)
    check_reps = len(d.taxa) <= 8

    arcs = []
    labels = {}
    extra = []
    for u, v in nhat.arcs:
        if nhat.outdeg(u) == 1:
            arcs.append((("b", u), ("b", v)))

    for v in nhat.vertices():
        if nhat.outdeg(v) < 2:
            continue
        kids = sorted(nhat.children(v))
        blocks = {w: d.taxa.sorted(cluster(nhat, w)) for w in kids}
        if check_reps:
            for wa, wb in combinations(kids, 2):
                vals = {d.value(x, y) for x in blocks[wa] for y in blocks[wb]}
                assert len(vals) == 1, "local value must not depend on representatives"
        local_taxa = TaxonSet.of(str(w) for w in kids)
        entries = []
        for wa, wb in combinations(kids, 2):
            val = d.value(blocks[wa][0], blocks[wb][0])
            # leaves below siblings share an ancestor, so the pair is an
            # edge of the support graph
            assert val is not None
            entries.append(val)
        tree = build_ultrametric_tree(SymbolicMap(local_taxa, tuple(entries)))

        tnet = tree.net
        troot = tnet.roots[0]

        def key_of(node: int, at=v, t=tnet, r=troot):
            if t.is_leaf(node):
                return ("b", int(t.taxon_of(node)))
            if node == r:
                return ("b", at)
            return ("t", at, node)

        for node in tnet.vertices():
            if not tnet.is_leaf(node) and node != troot:
                extra.append(("t", v, node))
        for p, c in tnet.arcs:
            arcs.append((key_of(p), key_of(c)))
        for node, sym in tree.labels:
            labels[key_of(node)] = sym

    vertex_order = [("b", v) for v in nhat.vertices()] + extra
    leaf_names = {("b", lv): nhat.taxon_of(lv) for lv in nhat.leaf_vertices}
    net = from_digraph(vertex_order, arcs, leaf_names, taxa=d.taxa)
    ids = {key: i for i, key in enumerate(vertex_order)}
    out = LabelledNetwork.build(net, {ids[key]: sym for key, sym in labels.items()})
    if evaluate_map(out) != d:
        raise ConstructionMismatchError("assembled network fails to reproduce the map")
    return out


# ---------------------------------------------------------------------------
# Clique-modules.


def _support_masks(d: SymbolicMap) -> list:
    n = len(d.taxa)
    adj = [0] * n
    for (a, b), val in d.items():
        if val is not None:
            i, j = d.taxa.index(a), d.taxa.index(b)
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return adj


def _is_clique_mask(adj: list, mask: int) -> bool:
    m = mask
    while m:
        low = m & -m
        i = low.bit_length() - 1
        if adj[i] & mask != mask ^ low:
            return False
        m ^= low
    return True


def clique_modules(d: SymbolicMap) -> CliqueFamily:
    """Every clique-module of `d`: the singletons, plus each clique Y of the
    support graph such that no outside taxon tells two members of Y apart by
    two different non-gap values."""
    n = len(d.taxa)
    if n > 16:
        raise TooLargeError("clique-module enumeration is desk-scale, 16 taxa at most")
    verts = d.taxa.taxa
    adj = _support_masks(d)
    found = []
    for mask in range(1, 1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        if len(members) >= 2:
            if not _is_clique_mask(adj, mask):
                continue
            ok = True
            for z in range(n):
                if mask >> z & 1:
                    continue
                seen = None
                for i in members:
                    val = d.value(verts[i], verts[z])
                    if val is None:
                        continue
                    if seen is not None and val != seen:
                        ok = False
                        break
                    seen = val
                if not ok:
                    break
            if not ok:
                continue
        found.append(frozenset(verts[i] for i in members))
    return CliqueFamily.build(d.taxa, found)


def strong_clique_modules(d: SymbolicMap) -> CliqueFamily:
    """The strong non-trivial clique-modules: those of size at least two that
    meet every clique-module they span a clique with either nestedly or not
    at all."""
    mods = clique_modules(d)
    idx = d.taxa.index
    adj = _support_masks(d)
    masks = []
    for s in mods.sets:
        m = 0
        for t in s:
            m |= 1 << idx(t)
        masks.append(m)
    strong = []
    for s, m in zip(mods.sets, masks):
        if len(s) < 2:
            continue
        ok = True
        for other in masks:
            if not _is_clique_mask(adj, m | other):
                continue
            inter = m & other
            if inter and inter != m and inter != other:
                ok = False
                break
        if ok:
            strong.append(s)
    return CliqueFamily.build(d.taxa, strong)


# ---------------------------------------------------------------------------
# The discriminating normal form.


def is_discriminating(ln: LabelledNetwork) -> bool:
    """No internal arc out of an outdegree-1 vertex, and no internal arc whose
    head has indegree 1 and repeats the tail's label.

    A true verdict on an arboreal instance is cross-checked against the
    cluster criterion: the branching vertices are exactly those whose cluster
    holds two or more taxa.
    """
    net = ln.net
    verdict = True
    for u, v in net.arcs:
        if net.is_leaf(v):
            continue
        if net.outdeg(u) == 1:
            verdict = False
            break
        # the head is internal with indegree 1, hence branches and is labelled
        if net.indeg(v) == 1 and ln.label_of(u) == ln.label_of(v):
            verdict = False
            break
    if verdict and is_arboreal(net):
        for v in net.vertices():
            assert (net.outdeg(v) >= 2) == (len(cluster(net, v)) >= 2)
    return verdict


def _fold_chain(kids: dict, pars: dict, labels: dict, u: int, v: int):
    # u has outdegree 1 onto internal v; merge v into u.  u keeps its own
    # parents and takes v's children and v's other parents.
    assert kids[u] == [v]
    for p in pars[v]:
        if p == u:
            continue
        assert p not in pars[u]  # a shared parent would close an undirected cycle
        kids[p][kids[p].index(v)] = u
        pars[u].append(p)
    kids[u] = kids[v]
    for c in kids[v]:
        pars[c][pars[c].index(v)] = u
    if v in labels:
        labels[u] = labels.pop(v)
    del kids[v], pars[v]


def _fold_equal(kids: dict, pars: dict, labels: dict, u: int, v: int):
    # v's only parent is u and the labels agree; u absorbs v's children
    assert pars[v] == [u] and labels[u] == labels[v]
    assert not set(kids[u]) & set(kids[v])
    kids[u].remove(v)
    kids[u] += kids[v]
    for c in kids[v]:
        pars[c][pars[c].index(v)] = u
    del labels[v]
    del kids[v], pars[v]


def make_discriminating(ln: LabelledNetwork) -> LabelledNetwork:
    """Collapse arcs until the network is discriminating, preserving the map.

    Rule 1 folds an internal arc out of an outdegree-1 vertex; rule 2 folds an
    internal arc onto an indegree-1 vertex when the labels agree.  Arcs are
    scanned in canonical order with rule 1 exhausted before rule 2 is tried,
    and every fold merges two adjacent vertices of the underlying tree, so no
    parallel arcs can arise.  The induced map is unchanged (asserted), and
    the result is a fixpoint of both rules.
    """
    net = ln.net
    if not is_arboreal(net):
        raise NotArborealError("the collapse rules assume an arboreal network")
    before = evaluate_map(ln)

    kids = {v: list(net.children(v)) for v in net.vertices()}
    pars = {v: list(net.parents(v)) for v in net.vertices()}
    labels = {v: s for v, s in ln.labels}
    leaf_name = {v: net.taxon_of(v) for v in net.leaf_vertices}

    def internal_arcs():
        return sorted((u, v) for u in kids for v in kids[u] if v not in leaf_name)

    while True:
        acted = False
        for u, v in internal_arcs():
            if len(kids[u]) == 1:
                _fold_chain(kids, pars, labels, u, v)
                acted = True
                break
        if acted:
            continue
        for u, v in internal_arcs():
            if len(pars[v]) == 1 and labels[u] == labels[v]:
                _fold_equal(kids, pars, labels, u, v)
                acted = True
                break
        if not acted:
            break

    order = sorted(kids)
    arcs = [(u, v) for u in order for v in kids[u]]
    new = from_digraph(order, arcs, leaf_name, taxa=net.taxa)
    ids = {v: i for i, v in enumerate(order)}
    out = LabelledNetwork.build(new, {ids[v]: s for v, s in labels.items()})
    assert is_discriminating(out)
    assert evaluate_map(out) == before
    return out


# ---------------------------------------------------------------------------
# Uniqueness certificates.


def _canonical_form(ln: LabelledNetwork, anchor: str) -> str:
    # Root the underlying tree at the anchor taxon's leaf and encode
    # bottom-up; child encodings are sorted, every edge records its arc
    # direction, leaves record their taxon and branching vertices their
    # label.  Equal strings rebuild an isomorphism leaf by leaf.
    net = ln.net
    nbrs: dict = {v: [] for v in net.vertices()}
    for u, v in net.arcs:
        nbrs[u].append((v, ">"))
        nbrs[v].append((u, "<"))

    def enc(v: int, back) -> str:
        head = net.taxon_of(v) if net.is_leaf(v) else ln._label_of.get(v, "")
        parts = sorted(tag + enc(w, v) for w, tag in nbrs[v] if w != back)
        return "(" + head + "|" + ",".join(parts) + ")"

    return enc(net.leaf_vertex(anchor), None)


def are_isomorphic(a: LabelledNetwork, b: LabelledNetwork) -> bool:
    """Whether a label-preserving digraph isomorphism fixing every taxon
    carries one network onto the other.

    Both underlying graphs are trees, so rooting each at the same taxon and
    comparing canonical bottom-up encodings decides the question without
    search: distinct taxa pin the leaves, and sorted child encodings make the
    forms unambiguous.
    """
    for ln in (a, b):
        if not is_arboreal(ln.net):
            raise NotArborealError("canonical forms assume arboreal networks")
    if set(a.taxa.taxa) != set(b.taxa.taxa):
        return False
    if a.net.num_vertices != b.net.num_vertices or len(a.net.arcs) != len(b.net.arcs):
        return False
    anchor = min(a.taxa.taxa)
    return _canonical_form(a, anchor) == _canonical_form(b, anchor)


def verify_phi_bijection(ln: LabelledNetwork) -> bool:
    """Whether sending each non-leaf vertex to its cluster is a bijection
    onto the closed intersections of the support graph's maximal cliques
    together with the strong non-trivial clique-modules of the induced map."""
    net = ln.net
    if not is_arboreal(net):
        raise NotArborealError("the cluster bijection assumes an arboreal network")
    d = evaluate_map(ln)
    g = graph_of_map(d)
    clusters = [cluster(net, v) for v in net.vertices() if not net.is_leaf(v)]
    if len(set(clusters)) != len(clusters):
        return False
    target = set(intersection_closure(maximal_cliques(g)).as_sets())
    target |= set(strong_clique_modules(d).as_sets())
    return set(clusters) == target
