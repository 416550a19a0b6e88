"""Generators and closed-form counts for the extremal families.

The core-block-pendant family on parameters (n, a, b_1..b_t, r) partitions
the vertices into a core A of size a, disjoint blocks B_i of size b_i and
a pendant set L with the remaining n - a - sum(b) vertices.  Hyperedges
are every r-set inside A, every r-set inside each A u B_i, and for every
pendant vertex c every set {c} u A' with A' an (r-1)-subset of A.

Parameters with a < r-1 are rejected by default (the pendant edges vanish
and L is disconnected); pass permissive=True to build them anyway.  The
closed-form edge count is pure arithmetic and accepts any a >= 1, which
the stability thresholds at small k rely on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import ExtraEdgeAlreadyPresent, InvalidParams
from .hypercore import Edge, Hypergraph, new_hypergraph


@dataclass(frozen=True)
class ConstructionParams:
    n: int
    a: int
    bs: tuple[int, ...]
    r: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "bs", tuple(self.bs))

    @property
    def t(self) -> int:
        return len(self.bs)

    def validate(self, permissive: bool = False) -> None:
        if self.r < 2:
            raise InvalidParams(f"uniformity must be >= 2, got {self.r}")
        if self.a < 1:
            raise InvalidParams(f"core size must be >= 1, got {self.a}")
        if any(b < 2 for b in self.bs):
            raise InvalidParams(f"every block size must be >= 2, got {self.bs}")
        if self.n < 2 * self.a + sum(self.bs):
            raise InvalidParams(
                f"need n >= 2a + sum(b) = {2 * self.a + sum(self.bs)}, got n={self.n}")
        if not permissive:
            if self.a < self.r - 1:
                raise InvalidParams(
                    f"core size {self.a} < r-1 = {self.r - 1} leaves the pendant "
                    "set edgeless and the hypergraph disconnected "
                    "(pass permissive=True to build it anyway)")


def params(n: int, a: int, bs: tuple[int, ...] | list[int] = (), r: int = 3) -> ConstructionParams:
    return ConstructionParams(n=n, a=a, bs=tuple(bs), r=r)


def partition(p: ConstructionParams) -> dict[str, list[int]]:
    """Canonical vertex layout: core first, then blocks, then pendants."""
    a, bs = p.a, p.bs
    core = list(range(1, a + 1))
    blocks = []
    nxt = a + 1
    for b in bs:
        blocks.append(list(range(nxt, nxt + b)))
        nxt += b
    pend = list(range(nxt, p.n + 1))
    return {"A": core, "blocks": blocks, "L": pend}


def build_extremal(p: ConstructionParams, permissive: bool = False) -> Hypergraph:
    """Materialize the core-block-pendant hypergraph for p."""
    p.validate(permissive)
    parts = partition(p)
    core = parts["A"]
    edges: set[Edge] = set(itertools.combinations(core, p.r))
    for block in parts["blocks"]:
        edges.update(itertools.combinations(sorted(core + block), p.r))
    for c in parts["L"]:
        for aprime in itertools.combinations(core, p.r - 1):
            edges.add(tuple(sorted((c,) + aprime)))
    return new_hypergraph(p.n, p.r, sorted(edges))


def edge_count_formula(p: ConstructionParams) -> int:
    """(n - a - sum b) C(a, r-1) + sum C(a+b_i, r) - (t-1) C(a, r).

    For t=0 this reduces to (n-a) C(a, r-1) + C(a, r).
    """
    p.validate(permissive=True)
    n, a, bs, r = p.n, p.a, p.bs, p.r
    return ((n - a - sum(bs)) * comb(a, r - 1)
            + sum(comb(a + b, r) for b in bs)
            - (len(bs) - 1) * comb(a, r))


def longest_path_formula(p: ConstructionParams) -> int:
    """Closed-form longest Berge path length of the construction.

    2a - t + sum(b) when t <= a+1, else a - 1 + (sum of the a+1 largest
    b_i).  Blockless parameters need a >= r and n >= 2a+1: the realizing
    path visits a+1 pendant vertices, a-1 of them interior, and interior
    pendants need two incident hyperedges, so at a = r-1 (one pendant edge
    per pendant vertex) or n = 2a (one pendant short) the stated value is
    not attained; exhaustive search confirms both degenerations.
    """
    p.validate()
    n, a, bs = p.n, p.a, p.bs
    t = len(bs)
    if t == 0 and (n < 2 * a + 1 or a < p.r):
        raise InvalidParams(
            "blockless longest-path formula needs a >= r and n >= 2a+1, "
            f"got a={a}, r={p.r}, n={n}")
    if t <= a + 1:
        return 2 * a - t + sum(bs)
    ordered = sorted(bs, reverse=True)
    return a - 1 + sum(ordered[: a + 1])


@dataclass(frozen=True)
class PlusVariant:
    """A core-pendant hypergraph plus one extra hyperedge with j < r-1
    core vertices (there are r-1 such variants up to isomorphism)."""

    base: ConstructionParams
    j: int
    extra: Edge


def make_plus_variant(n: int, a: int, r: int, j: int,
                      extra: Edge | None = None) -> PlusVariant:
    base = ConstructionParams(n=n, a=a, bs=(), r=r)
    base.validate()
    if not 0 <= j <= r - 2:
        raise ExtraEdgeAlreadyPresent(
            f"extra edges with >= r-1 core vertices are already present (j={j})")
    pend = partition(base)["L"]
    if len(pend) < r - j:
        raise InvalidParams(
            f"need {r - j} pendant vertices for the extra edge, have {len(pend)}")
    if extra is None:
        extra = tuple(sorted(tuple(range(1, j + 1)) + tuple(pend[: r - j])))
    else:
        extra = tuple(sorted(extra))
        core_set = set(range(1, a + 1))
        pend_set = set(pend)
        if len(extra) != r or len(set(extra)) != r:
            raise InvalidParams(f"extra edge {extra} must have {r} distinct vertices")
        in_core = sum(1 for v in extra if v in core_set)
        in_pend = sum(1 for v in extra if v in pend_set)
        if in_core != j or in_pend != r - j:
            raise InvalidParams(
                f"extra edge {extra} must take {j} core and {r - j} pendant vertices")
    return PlusVariant(base=base, j=j, extra=extra)


def build_extremal_plus(v: PlusVariant) -> Hypergraph:
    h = build_extremal(v.base)
    if v.extra in h.edge_set():
        raise ExtraEdgeAlreadyPresent(f"extra edge {v.extra} already present")
    return new_hypergraph(h.n, h.r, list(h.edges) + [list(v.extra)])


def build_graph_construction(n: int, k: int, a: int) -> Hypergraph:
    """The graph (r=2) family: parts |A|=a, |B|=k-2a, |L|=n-k+a with all
    A-L edges and all edges inside A u B."""
    if not (n >= k and k / 2 > a >= 1):
        raise InvalidParams(f"need n >= k and k/2 > a >= 1, got n={n}, k={k}, a={a}")
    core = list(range(1, a + 1))
    mid = list(range(a + 1, k - a + 1))  # |B| = k - 2a
    outer = list(range(k - a + 1, n + 1))
    edges: list[tuple[int, int]] = []
    for u in core:
        for w in outer:
            edges.append((u, w))
    edges.extend(itertools.combinations(core + mid, 2))
    return new_hypergraph(n, 2, edges)


def graph_construction_edge_count(n: int, k: int, a: int) -> int:
    if not (n >= k and k / 2 > a >= 1):
        raise InvalidParams(f"need n >= k and k/2 > a >= 1, got n={n}, k={k}, a={a}")
    return a * (n - k + a) + comb(k - a, 2)


def turan_value_formula(n: int, k: int, r: int) -> int:
    """Edge count of the parity-dependent extremal candidate: the plain
    core-pendant family for odd k, the one-block (b=2) family for even k.

    No large-k/large-n regime is enforced here; see regime_note.
    """
    if k < 2:
        raise InvalidParams(f"path length k must be >= 2, got {k}")
    a = (k - 1) // 2
    bs = () if k % 2 == 1 else (2,)
    return edge_count_formula(ConstructionParams(n=n, a=a, bs=bs, r=r))


def stability_threshold(n: int, k: int, r: int) -> int:
    """Edge count of the second-largest family: one block of 3 for odd k,
    one block of 4 for even k.  Above this count the stability statement
    pins the structure (in the proven regime)."""
    if k < 3:
        raise InvalidParams(f"path length k must be >= 3, got {k}")
    a = (k - 3) // 2
    bs = (3,) if k % 2 == 1 else (4,)
    return edge_count_formula(ConstructionParams(n=n, a=a, bs=bs, r=r))


def regime_note(n: int, k: int, r: int) -> str | None:
    """Annotation when (n, k, r) lies outside the proven parameter range.

    The extremal and stability statements hold for k at least ~2r+13 and n
    beyond a non-effective threshold, so desk-scale parameters are always
    flagged and desk-scale results are empirical data, not theorem checks.
    """
    if r >= 3 and k < 2 * r + 13:
        return (f"outside proven regime: k={k} < 2r+13={2 * r + 13}; "
                "desk-scale results are empirical only")
    return ("large-n threshold for the extremal statement is non-effective; "
            "desk-scale results are empirical only")
