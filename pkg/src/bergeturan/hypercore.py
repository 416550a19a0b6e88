"""Core hypergraph representation, incidence queries, connectivity and
canonical labeling.

Vertices are dense 1-based integers ``1..n``.  A hypergraph is immutable
after construction: hyperedges are stored as sorted vertex tuples, the
edge list itself sorted, so structural equality is value equality.
Bitmask companions (one bit per vertex / per edge) are derived on demand
for fast intersection tests; they are a performance detail, not part of
the semantics.

Canonical labels are computed by iterated color refinement plus
individualization with pruning by discovered automorphisms.  The label
of a hypergraph equals the label of any relabeling of it, and differs
for non-isomorphic hypergraphs, which is the only contract callers may
rely on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    NonPositiveParams,
    OutOfRangeVertex,
    ParseError,
    WrongEdgeSize,
)

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertices 1..n with a canonical edge order.

    ``dropped_duplicates`` records how many input edges were removed as
    duplicates during construction; it does not take part in equality.
    """

    n: int
    r: int
    edges: tuple[Edge, ...]
    dropped_duplicates: int = field(default=0, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def __repr__(self) -> str:  # keep failure output readable
        return f"Hypergraph(n={self.n}, r={self.r}, m={self.m})"


def new_hypergraph(n: int, r: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    """Validate, sort and deduplicate ``edges`` into a Hypergraph.

    Raises NonPositiveParams / WrongEdgeSize / OutOfRangeVertex on bad
    input.  Duplicate edges (up to vertex order) are dropped and counted.
    """
    if n < 1:
        raise NonPositiveParams(f"vertex count must be >= 1, got {n}")
    if r < 2:
        raise NonPositiveParams(f"uniformity must be >= 2, got {r}")
    seen: set[Edge] = set()
    dropped = 0
    for raw in edges:
        e = tuple(sorted(raw))
        if len(e) != r or len(set(e)) != r:
            raise WrongEdgeSize(f"edge {tuple(raw)} must have exactly {r} distinct vertices")
        if e[0] < 1 or e[-1] > n:
            raise OutOfRangeVertex(f"edge {e} has a vertex outside 1..{n}")
        if e in seen:
            dropped += 1
        else:
            seen.add(e)
    return Hypergraph(n=n, r=r, edges=tuple(sorted(seen)), dropped_duplicates=dropped)


# ---------------------------------------------------------------------------
# bitmask companions (vertex bit v-1, edge bit = index into h.edges)

def vertex_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def mask_vertices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


@lru_cache(maxsize=8192)
def _incidence(h: Hypergraph) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """(edge vertex-masks, per-vertex edge-id masks, per-vertex neighbor masks)."""
    emasks = tuple(vertex_mask(e) for e in h.edges)
    vedges = [0] * (h.n + 1)
    adj = [0] * (h.n + 1)
    for i, e in enumerate(h.edges):
        for v in e:
            vedges[v] |= 1 << i
            adj[v] |= emasks[i]
    for v in range(1, h.n + 1):
        adj[v] &= ~(1 << (v - 1))
    return emasks, tuple(vedges), tuple(adj)


def edge_vertex_masks(h: Hypergraph) -> tuple[int, ...]:
    return _incidence(h)[0]


def vertex_edge_masks(h: Hypergraph) -> tuple[int, ...]:
    return _incidence(h)[1]


# ---------------------------------------------------------------------------
# incidence queries

def _check_vertex(h: Hypergraph, v: int) -> None:
    if not 1 <= v <= h.n:
        raise OutOfRangeVertex(f"vertex {v} outside 1..{h.n}")


def incident_edges(h: Hypergraph, s: Iterable[int]) -> tuple[Edge, ...]:
    """All hyperedges meeting the vertex set ``s``, in canonical order."""
    sm = 0
    for v in s:
        _check_vertex(h, v)
        sm |= 1 << (v - 1)
    emasks = edge_vertex_masks(h)
    return tuple(e for e, em in zip(h.edges, emasks) if em & sm)


def incident_count(h: Hypergraph, smask: int) -> int:
    """|E(S)| for a vertex bitmask; fast path used by the classifiers."""
    emasks = edge_vertex_masks(h)
    return sum(1 for em in emasks if em & smask)


def neighborhood(h: Hypergraph, v: int) -> frozenset[int]:
    """Open neighborhood: vertices sharing at least one hyperedge with v."""
    _check_vertex(h, v)
    return frozenset(mask_vertices(_incidence(h)[2][v]))


def degree(h: Hypergraph, v: int) -> int:
    _check_vertex(h, v)
    return vertex_edge_masks(h)[v].bit_count()


def min_degree(h: Hypergraph) -> int:
    vedges = vertex_edge_masks(h)
    return min(vedges[v].bit_count() for v in range(1, h.n + 1))


def is_connected(h: Hypergraph) -> bool:
    """True iff every pair of vertices is joined by a Berge-path.

    Equivalent to connectivity of the bipartite incidence graph with all
    n vertices present; an uncovered vertex disconnects the hypergraph.
    A single vertex with no edges counts as connected.
    """
    if h.n == 1:
        return True
    if not h.edges:
        return False
    emasks, vedges, _ = _incidence(h)
    full = (1 << h.n) - 1
    seen = emasks[0]
    frontier = seen
    while True:
        edges_hit = 0
        vm = frontier
        while vm:
            low = vm & -vm
            edges_hit |= vedges[low.bit_length()]
            vm ^= low
        grown = seen
        em = edges_hit
        while em:
            low = em & -em
            grown |= emasks[low.bit_length() - 1]
            em ^= low
        if grown == seen:
            break
        frontier = grown & ~seen
        seen = grown
    return seen == full


# ---------------------------------------------------------------------------
# canonical labeling

CanonicalForm = tuple[int, tuple[Edge, ...]]


def _refine(n: int, members: Sequence[Edge], vert_edges: Sequence[Sequence[int]],
            edge_colors: Sequence[int], colors: list[int]) -> list[int]:
    """Iterated color refinement; equivariant and hash-free (rank compression)."""
    while True:
        edge_sigs = [
            (edge_colors[i], tuple(sorted(colors[v - 1] for v in e)))
            for i, e in enumerate(members)
        ]
        sigs = []
        for v in range(n):
            inc = sorted(edge_sigs[i] for i in vert_edges[v])
            sigs.append((colors[v], tuple(inc)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def _individualize(colors: Sequence[int], v0: int) -> list[int]:
    cv = colors[v0]
    return [
        (cv if u == v0 else (c + 1 if c >= cv else c))
        for u, c in enumerate(colors)
    ]


class _CanonSearch:
    """Individualization-refinement search for the minimal leaf label.

    ``edge_colors`` (optional) makes the label respect an edge partition:
    only color-preserving relabelings compete, and the label keeps the
    per-color edge groups separate.
    """

    def __init__(self, n: int, members: Sequence[Edge],
                 edge_colors: Sequence[int] | None = None,
                 ncolors: int | None = None):
        self.n = n
        self.members = list(members)
        self.edge_colors = list(edge_colors) if edge_colors is not None else [0] * len(self.members)
        vert_edges: list[list[int]] = [[] for _ in range(n)]
        for i, e in enumerate(members):
            for v in e:
                vert_edges[v - 1].append(i)
        self.vert_edges = vert_edges
        if ncolors is None:
            ncolors = (max(self.edge_colors) + 1) if self.members else 1
        self.ncolors = ncolors
        self.best_label: tuple | None = None
        self.best_perm: list[int] | None = None
        self.first_label: tuple | None = None
        self.first_perm: list[int] | None = None
        self.gens: list[tuple[int, ...]] = []

    def run(self) -> None:
        colors = self._refined([0] * self.n)
        self._search(colors, [])

    def _refined(self, colors: list[int]) -> list[int]:
        return _refine(self.n, self.members, self.vert_edges, self.edge_colors, colors)

    def _leaf(self, colors: Sequence[int]) -> None:
        perm = list(colors)  # perm[v-1] = 0-based canonical position
        groups: list[list[Edge]] = [[] for _ in range(self.ncolors)]
        for i, e in enumerate(self.members):
            groups[self.edge_colors[i]].append(tuple(sorted(perm[v - 1] + 1 for v in e)))
        label = tuple(tuple(sorted(g)) for g in groups)
        if self.first_label is None:
            self.first_label, self.first_perm = label, perm
        else:
            for other_label, other_perm in ((self.first_label, self.first_perm),
                                            (self.best_label, self.best_perm)):
                if label == other_label and other_perm is not None and other_perm != perm:
                    inv = [0] * self.n
                    for v, p in enumerate(other_perm):
                        inv[p] = v
                    gen = tuple(inv[perm[v]] for v in range(self.n))
                    if gen not in self.gens:
                        self.gens.append(gen)
                    break
        if self.best_label is None or label < self.best_label:
            self.best_label, self.best_perm = label, perm

    def _orbit_closure(self, seed: set[int], prefix: list[int]) -> set[int]:
        usable = [g for g in self.gens if all(g[p] == p for p in prefix)]
        if not usable:
            return seed
        orbit = set(seed)
        frontier = list(seed)
        while frontier:
            v = frontier.pop()
            for g in usable:
                w = g[v]
                if w not in orbit:
                    orbit.add(w)
                    frontier.append(w)
        return orbit

    def _search(self, colors: list[int], prefix: list[int]) -> None:
        ncolors = max(colors) + 1 if colors else 0
        if ncolors == self.n:
            self._leaf(colors)
            return
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, k in counts.items() if k >= 2)
        cell = [v for v in range(self.n) if colors[v] == target]
        done: set[int] = set()
        for v in cell:
            if done and v in self._orbit_closure(done, prefix):
                done.add(v)
                continue
            child = self._refined(_individualize(colors, v))
            self._search(child, prefix + [v])
            done.add(v)


def canonical_label_edges(n: int, edges: Sequence[Edge]) -> CanonicalForm:
    """Canonical form of an edge list on n labeled vertices (cached)."""
    return _canon_cached(n, tuple(edges))[0]


@lru_cache(maxsize=65536)
def _canon_cached(n: int, edges: tuple[Edge, ...]) -> tuple[CanonicalForm, tuple[int, ...], tuple[tuple[int, ...], ...]]:
    search = _CanonSearch(n, edges)
    search.run()
    if search.best_perm is None:  # no vertices is impossible; edgeless still has leaves
        perm = tuple(range(1, n + 1))
        return (n, ()), perm, ()
    perm = tuple(p + 1 for p in search.best_perm)
    return (n, search.best_label[0]), perm, tuple(search.gens)


def canonical_label_state(n: int, groups: Sequence[Sequence[Edge]]) -> tuple:
    """Canonical form of several edge sets under one common relabeling.

    Two states (tuples of edge sets on [n]) get equal labels iff a single
    vertex permutation maps each set onto its counterpart.  Used to
    deduplicate isomorphic search states.
    """
    groups = list(groups)
    members: list[Edge] = []
    colors: list[int] = []
    for gi, group in enumerate(groups):
        for e in group:
            members.append(tuple(e))
            colors.append(gi)
    search = _CanonSearch(n, members, edge_colors=colors, ncolors=len(groups))
    search.run()
    if search.best_label is None:
        return (n, ((),) * len(groups))
    return (n, search.best_label)


def canonical_form(h: Hypergraph) -> CanonicalForm:
    """A label equal for two hypergraphs iff they are isomorphic."""
    return _canon_cached(h.n, h.edges)[0]


def canonical_labeling(h: Hypergraph) -> tuple[CanonicalForm, tuple[int, ...]]:
    """Canonical form plus one permutation (old id -> new id) achieving it."""
    form, perm, _ = _canon_cached(h.n, h.edges)
    return form, perm


def vertex_orbits(h: Hypergraph) -> list[list[int]]:
    """Vertex orbits under the automorphisms discovered during labeling.

    The partition may be finer than the true orbit partition; it is never
    coarser, so one representative per block is always safe for
    symmetry-reduced search.
    """
    _, _, gens = _canon_cached(h.n, h.edges)
    parent = list(range(h.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for v in range(h.n):
            a, b = find(v), find(g[v])
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for v in range(h.n):
        groups.setdefault(find(v), []).append(v + 1)
    return [sorted(g) for g in sorted(groups.values())]


def canonical_representative(h: Hypergraph) -> Hypergraph:
    """The canonically relabeled copy of ``h``."""
    form = canonical_form(h)
    return Hypergraph(n=h.n, r=h.r, edges=form[1])


def relabel(h: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Apply a vertex permutation; ``perm[v-1]`` is the image of vertex v."""
    if sorted(perm) != list(range(1, h.n + 1)):
        raise OutOfRangeVertex("perm must be a permutation of 1..n")
    edges = tuple(sorted(tuple(sorted(perm[v - 1] for v in e)) for e in h.edges))
    return Hypergraph(n=h.n, r=h.r, edges=edges)


def subhypergraph(h: Hypergraph, keep: Iterable[Edge]) -> Hypergraph:
    """Same vertex set, restricted edge set (must be a subset of h's)."""
    keep_set = {tuple(sorted(e)) for e in keep}
    missing = keep_set - set(h.edges)
    if missing:
        raise OutOfRangeVertex(f"edges {sorted(missing)} are not in the hypergraph")
    return Hypergraph(n=h.n, r=h.r, edges=tuple(sorted(keep_set)))


def remove_vertices(h: Hypergraph, drop: Iterable[int]) -> tuple[Hypergraph, dict[int, int]]:
    """Delete vertices and every incident edge; relabel densely.

    Returns the shrunken hypergraph and the old->new vertex map.
    """
    drop_set = set(drop)
    for v in drop_set:
        _check_vertex(h, v)
    keep = [v for v in range(1, h.n + 1) if v not in drop_set]
    if not keep:
        raise NonPositiveParams("cannot remove every vertex")
    mapping = {v: i + 1 for i, v in enumerate(keep)}
    edges = tuple(sorted(
        tuple(sorted(mapping[v] for v in e))
        for e in h.edges if not (set(e) & drop_set)
    ))
    return Hypergraph(n=len(keep), r=h.r, edges=edges), mapping


# ---------------------------------------------------------------------------
# .hg text format: "n r m" then m lines of r increasing vertex ids,
# lines sorted lexicographically, LF endings.

def format_hg(h: Hypergraph) -> str:
    lines = [f"{h.n} {h.r} {h.m}"]
    lines.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(lines) + "\n"


def parse_hg(text: str) -> Hypergraph:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise ParseError("empty .hg input")
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError(f"header must be 'n r m', got {lines[0]!r}")
    try:
        n, r, m = (int(x) for x in head)
    except ValueError as exc:
        raise ParseError(f"non-integer header field in {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ParseError(f"header says {m} edges, found {len(lines) - 1}")
    edges: list[Edge] = []
    for ln in lines[1:]:
        try:
            e = tuple(int(x) for x in ln.split())
        except ValueError as exc:
            raise ParseError(f"non-integer vertex id in {ln!r}") from exc
        if list(e) != sorted(set(e)):
            raise ParseError(f"edge line {ln!r} must list distinct increasing ids")
        edges.append(e)
    if edges != sorted(edges):
        raise ParseError("edge lines must be sorted lexicographically")
    try:
        h = new_hypergraph(n, r, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    if h.dropped_duplicates:
        raise ParseError("duplicate edge lines")
    return h


def write_hg(h: Hypergraph, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_hg(h))


def read_hg(path: str) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hg(fh.read())
