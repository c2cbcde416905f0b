"""Phylogenetic-style networks: connected acyclic digraphs whose sinks are
the taxa, every root branches, and no vertex merely passes through.

Vertex ids are opaque integers assigned in construction order; nothing
semantic ever depends on them.  `validate_network` is the one constructor
that checks the shape rules, and reports the first violated rule by name.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from . import errors
from .errors import (
    InvalidNetworkError,
    NotARootError,
    NotArborealError,
    SingleRootedError,
    SubsetTooSmallError,
    UnknownTaxonError,
    UnknownVertexError,
)
from .graphs import TaxonSet, UGraph


@dataclass(frozen=True)
class Network:
    """Validated network.  Build through `validate_network` or `from_digraph`."""

    num_vertices: int
    arcs: tuple  # sorted (tail, head) pairs
    leaves: tuple  # sorted (vertex, taxon) pairs
    taxa: TaxonSet
    vertex_names: Optional[tuple] = field(default=None, compare=False)
    _children: tuple = field(init=False, repr=False, compare=False)
    _parents: tuple = field(init=False, repr=False, compare=False)
    _taxon_of: dict = field(init=False, repr=False, compare=False)
    _vertex_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        kids = [[] for _ in range(self.num_vertices)]
        pars = [[] for _ in range(self.num_vertices)]
        for u, v in self.arcs:
            kids[u].append(v)
            pars[v].append(u)
        object.__setattr__(self, "_children", tuple(tuple(sorted(k)) for k in kids))
        object.__setattr__(self, "_parents", tuple(tuple(sorted(p)) for p in pars))
        object.__setattr__(self, "_taxon_of", dict(self.leaves))
        object.__setattr__(self, "_vertex_of", {t: v for v, t in self.leaves})

    # -- structure accessors ------------------------------------------------

    def vertices(self) -> range:
        return range(self.num_vertices)

    def check_vertex(self, v: int) -> int:
        if not (isinstance(v, int) and 0 <= v < self.num_vertices):
            raise UnknownVertexError(v)
        return v

    def children(self, v: int) -> tuple:
        return self._children[self.check_vertex(v)]

    def parents(self, v: int) -> tuple:
        return self._parents[self.check_vertex(v)]

    def outdeg(self, v: int) -> int:
        return len(self.children(v))

    def indeg(self, v: int) -> int:
        return len(self.parents(v))

    @property
    def roots(self) -> tuple:
        return tuple(v for v in self.vertices() if not self._parents[v])

    @property
    def hybrids(self) -> tuple:
        return tuple(v for v in self.vertices() if len(self._parents[v]) >= 2)

    @property
    def leaf_vertices(self) -> tuple:
        return tuple(v for v, _ in self.leaves)

    def is_leaf(self, v: int) -> bool:
        return self.check_vertex(v) in self._taxon_of

    def taxon_of(self, v: int) -> str:
        self.check_vertex(v)
        try:
            return self._taxon_of[v]
        except KeyError:
            raise UnknownVertexError(f"vertex {v} is not a leaf") from None

    def leaf_vertex(self, taxon: str) -> int:
        try:
            return self._vertex_of[taxon]
        except KeyError:
            raise UnknownTaxonError(taxon) from None

    def root_count(self) -> int:
        return len(self.roots)

    # -- reachability ---------------------------------------------------------

    def ancestors(self, v: int) -> frozenset:
        """All vertices with a directed path to `v`, including `v` itself."""
        self.check_vertex(v)
        seen = {v}
        queue = deque([v])
        while queue:
            w = queue.popleft()
            for p in self._parents[w]:
                if p not in seen:
                    seen.add(p)
                    queue.append(p)
        return frozenset(seen)

    def descendants(self, v: int) -> frozenset:
        """All vertices reachable from `v`, including `v` itself."""
        self.check_vertex(v)
        seen = {v}
        queue = deque([v])
        while queue:
            w = queue.popleft()
            for c in self._children[w]:
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        return frozenset(seen)

    def leaf_ancestor_sets(self) -> dict:
        """taxon -> frozenset of ancestor vertex ids (leaf included)."""
        return {t: self.ancestors(v) for v, t in self.leaves}


@dataclass(frozen=True)
class AlternatingCycle:
    """Witness for a non-tree undirected cycle, split at its direction flips.

    `tops[i]` sends internally disjoint directed paths down to `bottoms[i]`
    and `bottoms[i-1]`; every bottom therefore has indegree >= 2.  The paths
    are stored with both endpoints: `down_pairs[i]` holds the path
    tops[i] -> bottoms[i] and the path tops[(i+1) % k] -> bottoms[i].
    """

    tops: tuple
    bottoms: tuple
    down_pairs: tuple

    @property
    def k(self) -> int:
        return len(self.tops)

    def verify(self, net: Network) -> bool:
        if len(self.tops) != len(self.bottoms) or self.k < 1:
            return False
        arcset = set(net.arcs)

        def is_path(path: tuple) -> bool:
            return len(path) >= 2 and all(
                (path[i], path[i + 1]) in arcset for i in range(len(path) - 1)
            )

        interiors = []
        for i in range(self.k):
            left, right = self.down_pairs[i]
            if not (is_path(left) and is_path(right)):
                return False
            if left[0] != self.tops[i] or right[0] != self.tops[(i + 1) % self.k]:
                return False
            if left[-1] != self.bottoms[i] or right[-1] != self.bottoms[i]:
                return False
            if net.indeg(self.bottoms[i]) < 2:
                return False
            interiors.append(left[1:-1])
            interiors.append(right[1:-1])
        # the witness paths tile a simple cycle: interiors are pairwise
        # disjoint and avoid the tops and bottoms
        seen = set(self.tops) | set(self.bottoms)
        if len(seen) != 2 * self.k and self.k > 1:
            return False
        for inner in interiors:
            for v in inner:
                if v in seen:
                    return False
                seen.add(v)
        return True


def validate_network(
    arcs: Iterable[tuple],
    leaf_names: Mapping,
    *,
    num_vertices: Optional[int] = None,
    taxa: Optional[TaxonSet] = None,
    vertex_names: Optional[Sequence[str]] = None,
) -> Network:
    """Check the shape rules and build a `Network`.

    Rules, in the order they are reported: the digraph is acyclic, the
    underlying graph is connected, every indegree-0 vertex has outdegree >= 2,
    every outdegree-0 vertex has indegree exactly 1, no vertex has indegree
    and outdegree both 1, and `leaf_names` is a bijection from the
    outdegree-0 vertices onto the taxa.
    """
    arcs = [(int(u), int(v)) for u, v in arcs]
    mentioned = {u for u, _ in arcs} | {v for _, v in arcs} | set(leaf_names)
    if num_vertices is None:
        num_vertices = max(mentioned) + 1 if mentioned else 0
    if num_vertices <= 0:
        raise ValueError("a network needs at least one vertex")
    for v in mentioned:
        if not 0 <= v < num_vertices:
            raise ValueError(f"vertex id {v} out of range")
    if len(set(arcs)) != len(arcs):
        raise ValueError("duplicate arcs")
    if any(u == v for u, v in arcs):
        raise InvalidNetworkError(errors.CYCLIC, "self-loop")

    kids = [[] for _ in range(num_vertices)]
    pars = [[] for _ in range(num_vertices)]
    for u, v in arcs:
        kids[u].append(v)
        pars[v].append(u)

    # acyclic (Kahn)
    indeg = [len(p) for p in pars]
    queue = deque(v for v in range(num_vertices) if indeg[v] == 0)
    visited = 0
    while queue:
        v = queue.popleft()
        visited += 1
        for c in kids[v]:
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    if visited != num_vertices:
        raise InvalidNetworkError(errors.CYCLIC, "the digraph contains a directed cycle")

    # connected
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in kids[v] + pars[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) != num_vertices:
        raise InvalidNetworkError(errors.DISCONNECTED, "the underlying graph is disconnected")

    for v in range(num_vertices):
        if not pars[v] and len(kids[v]) < 2:
            raise InvalidNetworkError(
                errors.ROOT_OUTDEG_LT_2, f"root {v} has outdegree {len(kids[v])}"
            )
        if not kids[v] and len(pars[v]) != 1:
            raise InvalidNetworkError(
                errors.LEAF_INDEG_NE_1, f"sink {v} has indegree {len(pars[v])}"
            )
        if len(kids[v]) == 1 and len(pars[v]) == 1:
            raise InvalidNetworkError(
                errors.INDEG1_OUTDEG1, f"vertex {v} has indegree and outdegree 1"
            )

    sinks = {v for v in range(num_vertices) if not kids[v]}
    if set(leaf_names) != sinks:
        raise InvalidNetworkError(
            errors.LEAF_SET_MISMATCH, "leaf naming does not cover exactly the sinks"
        )
    names = [leaf_names[v] for v in sorted(sinks)]
    if len(set(names)) != len(names):
        raise InvalidNetworkError(errors.LEAF_SET_MISMATCH, "duplicate taxon in leaf naming")
    if taxa is None:
        taxa = TaxonSet.of(sorted(names))
    elif set(taxa.taxa) != set(names):
        raise InvalidNetworkError(
            errors.LEAF_SET_MISMATCH, "leaf naming does not match the given taxon set"
        )

    return Network(
        num_vertices=num_vertices,
        arcs=tuple(sorted(arcs)),
        leaves=tuple(sorted((v, leaf_names[v]) for v in sinks)),
        taxa=taxa,
        vertex_names=tuple(vertex_names) if vertex_names is not None else None,
    )


def from_digraph(
    vertex_order: Sequence,
    arcs: Iterable[tuple],
    leaf_names: Mapping,
    *,
    taxa: Optional[TaxonSet] = None,
    display_names: Optional[Mapping] = None,
) -> Network:
    """Relabel arbitrary hashable vertex keys to ids in `vertex_order` order
    and validate.  Construction order is whatever order the caller fixed."""
    ids = {key: i for i, key in enumerate(vertex_order)}
    if len(ids) != len(vertex_order):
        raise ValueError("duplicate vertex keys")
    names = None
    if display_names is not None:
        names = [str(display_names.get(key, key)) for key in vertex_order]
    return validate_network(
        [(ids[u], ids[v]) for u, v in arcs],
        {ids[v]: t for v, t in leaf_names.items()},
        num_vertices=len(vertex_order),
        taxa=taxa,
        vertex_names=names,
    )


def h_tilde(net: Network) -> int:
    """Total excess indegree over the vertices with indegree >= 2."""
    return sum(net.indeg(v) - 1 for v in net.vertices() if net.indeg(v) >= 2)


def is_arboreal(net: Network) -> bool:
    """True iff the underlying undirected graph is a tree.

    The underlying graph of a valid network is connected and simple, so the
    tree test is an edge count.  The excess-indegree bookkeeping must agree:
    the underlying cycles are exactly what pushes the hybrid surplus above
    the root surplus.
    """
    tree = len(net.arcs) == net.num_vertices - 1
    assert tree == (h_tilde(net) == net.root_count() - 1)
    return tree


def find_alternating_cycle(net: Network) -> Optional[AlternatingCycle]:
    """A witness cycle if the underlying graph is not a tree, else None.

    Any undirected cycle decomposes at its orientation flips: vertices whose
    two cycle arcs both leave are the tops, vertices whose two cycle arcs
    both enter are the bottoms, and the monotone runs between them are the
    directed witness paths.
    """
    if is_arboreal(net):
        return None
    und = [set() for _ in net.vertices()]
    for u, v in net.arcs:
        und[u].add(v)
        und[v].add(u)
    parent: dict = {0: None}
    stack = [0]
    cycle_join = None
    while stack and cycle_join is None:
        v = stack.pop()
        for w in sorted(und[v]):
            if w not in parent:
                parent[w] = v
                stack.append(w)
            elif parent[v] != w:
                cycle_join = (v, w)
                break
    assert cycle_join is not None
    a, b = cycle_join
    path_a = [a]
    while parent[path_a[-1]] is not None:
        path_a.append(parent[path_a[-1]])
    on_a = {v: i for i, v in enumerate(path_a)}
    path_b = [b]
    while path_b[-1] not in on_a:
        path_b.append(parent[path_b[-1]])
    meet = path_b[-1]
    cyc = path_a[: on_a[meet] + 1] + list(reversed(path_b[:-1]))

    m = len(cyc)
    arcset = set(net.arcs)
    dirs = [1 if (cyc[i], cyc[(i + 1) % m]) in arcset else -1 for i in range(m)]
    tops_pos = [i for i in range(m) if dirs[i] == 1 and dirs[i - 1] == -1]
    bottoms_pos = [i for i in range(m) if dirs[i] == -1 and dirs[i - 1] == 1]
    assert tops_pos and len(tops_pos) == len(bottoms_pos)

    start = tops_pos[0]
    cyc = cyc[start:] + cyc[:start]
    dirs = dirs[start:] + dirs[:start]
    flips = [i for i in range(m) if dirs[i] != dirs[i - 1]] + [m]
    # flips[0] == 0 is the leading top; runs alternate down, up, down, up, ...
    runs = [cyc[flips[j]: flips[j + 1] + 1] for j in range(len(flips) - 1)]
    runs[-1] = runs[-1] + [cyc[0]]  # last run wraps back to the leading top
    tops = [run[0] for run in runs[0::2]]
    bottoms = [run[-1] for run in runs[0::2]]
    ups = [tuple(reversed(run)) for run in runs[1::2]]
    down_pairs = tuple(
        (tuple(runs[2 * i]), ups[i]) for i in range(len(tops))
    )
    witness = AlternatingCycle(tuple(tops), tuple(bottoms), down_pairs)
    assert witness.verify(net)
    return witness


def cluster(net: Network, v: int) -> frozenset:
    """Taxa of the leaves reachable from `v`."""
    return frozenset(net._taxon_of[w] for w in net.descendants(v) if w in net._taxon_of)


def shared_ancestry_graph(net: Network) -> UGraph:
    """Graph on the taxa joining two leaves iff they have a common ancestor."""
    anc = net.leaf_ancestor_sets()
    edges = [
        (x, y)
        for i, x in enumerate(net.taxa.taxa)
        for y in net.taxa.taxa[i + 1:]
        if anc[x] & anc[y]
    ]
    return UGraph(net.taxa, frozenset(edges))


def lca(net: Network, x: str, y: str) -> Optional[int]:
    """The least common ancestor vertex of leaves `x` and `y`, or None when
    they share no ancestor.  Only defined on arboreal networks, where the
    minimal common ancestor is unique."""
    if not is_arboreal(net):
        raise NotArborealError("least common ancestors need an arboreal network")
    common = net.ancestors(net.leaf_vertex(x)) & net.ancestors(net.leaf_vertex(y))
    if not common:
        return None
    minimal = [v for v in common if not any(c in common for c in net.children(v))]
    assert len(minimal) == 1, "minimal common ancestor must be unique here"
    return minimal[0]


def _prune_to_network(
    net: Network,
    alive: set,
    keep_leaves: set,
    taxa_order: Sequence[str],
) -> Network:
    """Shared fixpoint cleanup: on the vertices in `alive`, repeatedly drop
    sinks that are not protected leaves, drop indegree-0 outdegree-1
    vertices, and splice out pass-through vertices; then relabel.

    The three rules commute, so any scan order reaches the same fixpoint;
    this one rescans in vertex-id order after every change.
    """
    kids = {v: set(c for c in net.children(v) if c in alive) for v in alive}
    pars = {v: set(p for p in net.parents(v) if p in alive) for v in alive}

    def drop(v: int):
        for p in pars[v]:
            kids[p].discard(v)
        for c in kids[v]:
            pars[c].discard(v)
        del kids[v], pars[v]
        alive.discard(v)

    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            if not kids[v] and v not in keep_leaves:
                drop(v)
            elif not pars[v] and len(kids[v]) == 1:
                drop(v)
            elif len(pars[v]) == 1 and len(kids[v]) == 1:
                (p,), (c,) = pars[v], kids[v]
                drop(v)
                kids[p].add(c)
                pars[c].add(p)
            else:
                continue
            changed = True
            break

    order = sorted(alive)
    leaf_names = {v: net._taxon_of[v] for v in order if v in keep_leaves}
    return from_digraph(
        order,
        [(u, v) for u in order for v in sorted(kids[u])],
        leaf_names,
        taxa=TaxonSet.of(taxa_order),
    )


def restrict(net: Network, subset: Iterable[str]) -> Network:
    """The network induced on the leaf subset: drop the other leaves, then
    clean up to the fixpoint of the removal rules.

    Validation of the pruned digraph happens as usual, so a subset whose
    members share no ancestry surfaces as a disconnection error.
    """
    chosen = set(subset)
    for t in chosen:
        if t not in net.taxa:
            raise UnknownTaxonError(t)
    if len(chosen) < 2:
        raise SubsetTooSmallError("restriction needs at least two taxa")
    if len(chosen) == len(net.taxa):
        return net
    keep = {net.leaf_vertex(t) for t in chosen}
    alive = set(net.vertices()) - {v for v, t in net.leaves if t not in chosen}
    return _prune_to_network(
        net, alive, keep, [t for t in net.taxa if t in chosen]
    )


def remove_root(net: Network, r: int) -> Optional[Network]:
    """Drop everything only root `r` could reach, then clean up.

    Keeps exactly the vertices that descend from some other root; the
    surviving leaf set may shrink.  Returns None when the remainder is
    disconnected (then it is no network at all).
    """
    net.check_vertex(r)
    if net.indeg(r) != 0:
        raise NotARootError(f"vertex {r} is not a root")
    other_roots = [s for s in net.roots if s != r]
    if not other_roots:
        raise SingleRootedError("removal needs at least two roots")
    alive = set()
    for s in other_roots:
        alive |= net.descendants(s)
    keep = {v for v, _ in net.leaves if v in alive}
    taxa_order = [t for t in net.taxa if net.leaf_vertex(t) in alive]
    try:
        return _prune_to_network(net, alive, keep, taxa_order)
    except InvalidNetworkError as err:
        if err.kind == errors.DISCONNECTED:
            return None
        raise
