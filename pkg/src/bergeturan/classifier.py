"""Membership checkers for the stability target classes, the set degree
condition, and the greedy kernelization.

A certificate fixes a core A and explains every hyperedge: it either has
at least r-1 vertices in A, or lies inside A u B_i for one of the
designated blocks, or is the single exceptional edge (at most r-2 core
vertices), or is a pendant edge A'_j u D_j whose outer part D_j (size at
least 2, degree-1 vertices) belongs to the partition of the outer vertex
set.  Validation is a direct scan, independent of how the certificate
was found.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import comb

from .errors import BudgetExhausted, InvalidParams, LimitExceeded, ParseError
from .hypercore import (
    Edge,
    Hypergraph,
    incident_count,
    remove_vertices,
    vertex_edge_masks,
    vertex_mask,
)

_CORE_SCAN_LIMIT = 3_000_000  # candidate cores per exhaustive scan


@dataclass(frozen=True)
class EmbeddingCertificate:
    """Vertex partition data proving class membership; see module docstring."""

    core: frozenset[int]
    blocks: tuple[frozenset[int], ...] = ()
    exceptional: Edge | None = None
    pendants: tuple[tuple[frozenset[int], frozenset[int]], ...] = ()

    def to_json(self) -> str:
        payload = {
            "A": sorted(self.core),
            "blocks": [sorted(b) for b in self.blocks],
            "exceptional": list(self.exceptional) if self.exceptional else None,
            "pendants": [
                {"Aprime": sorted(ap), "D": sorted(d)} for ap, d in self.pendants
            ],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def certificate_from_json(text: str) -> EmbeddingCertificate:
    try:
        payload = json.loads(text)
        core = frozenset(int(v) for v in payload["A"])
        blocks = tuple(frozenset(int(v) for v in b) for b in payload["blocks"])
        exceptional = payload.get("exceptional")
        if exceptional is not None:
            exceptional = tuple(sorted(int(v) for v in exceptional))
        pendants = tuple(
            (frozenset(int(v) for v in p["Aprime"]), frozenset(int(v) for v in p["D"]))
            for p in payload.get("pendants", ())
        )
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"malformed certificate JSON: {exc}") from exc
    return EmbeddingCertificate(core=core, blocks=blocks,
                                exceptional=exceptional, pendants=pendants)


def certificate_is_valid(h: Hypergraph, cert: EmbeddingCertificate,
                         core_size: int | None = None,
                         block_sizes: tuple[int, ...] | None = None) -> bool:
    """Re-check a certificate by direct scan of all hyperedges."""
    allv = set(range(1, h.n + 1))
    if not cert.core <= allv:
        return False
    if core_size is not None and len(cert.core) != core_size:
        return False
    groups: list[frozenset[int]] = [cert.core, *cert.blocks, *(d for _, d in cert.pendants)]
    union: set[int] = set()
    for g in groups:
        if not g <= allv or (union & g):
            return False
        union |= g
    if block_sizes is not None:
        remaining = sorted(block_sizes, reverse=True)
        for b in sorted((len(b) for b in cert.blocks), reverse=True):
            for i, cap in enumerate(remaining):
                if b <= cap:
                    remaining.pop(i)
                    break
            else:
                return False
    edge_set = h.edge_set()
    pendant_edges = set()
    for aprime, d in cert.pendants:
        if len(d) < 2 or not aprime <= cert.core:
            return False
        e = tuple(sorted(aprime | d))
        if e not in edge_set:
            return False
        pendant_edges.add(e)
        for v in d:
            if vertex_edge_masks(h)[v].bit_count() != 1:
                return False
    if cert.exceptional is not None:
        if cert.exceptional not in edge_set:
            return False
        if len(set(cert.exceptional) & cert.core) > h.r - 2:
            return False
    for e in h.edges:
        es = set(e)
        if len(es & cert.core) >= h.r - 1:
            continue
        if any(es <= (cert.core | b) for b in cert.blocks):
            continue
        if e == cert.exceptional or e in pendant_edges:
            continue
        return False
    return True


# ---------------------------------------------------------------------------
# core embedding (every edge has >= r-1 core vertices)

def _core_feasible(h: Hypergraph, a: int, forced: frozenset[int],
                   banned: frozenset[int]) -> bool:
    """Is there A of size a with forced <= A, A disjoint from banned, such
    that every edge has >= r-1 vertices in A?  Branch over the least
    constrained unsatisfied edge."""
    if len(forced) > a or h.n - len(banned) < a:
        return False
    need_r = h.r - 1

    def rec(forced: frozenset[int]) -> bool:
        if len(forced) > a:
            return False
        best_opts: list[frozenset[int]] | None = None
        for e in h.edges:
            es = set(e)
            have = len(es & forced)
            if have >= need_r:
                continue
            pool = sorted(es - forced - banned)
            need = need_r - have
            if len(pool) < need:
                return False
            opts = [frozenset(c) for c in itertools.combinations(pool, need)]
            if best_opts is None or len(opts) < len(best_opts):
                best_opts = opts
                if len(opts) <= 1:
                    break
        if best_opts is None:
            return True
        return any(rec(forced | opt) for opt in best_opts)

    return rec(forced)


def embeds_in_core(h: Hypergraph, a: int) -> EmbeddingCertificate | None:
    """Lexicographically smallest core A (|A| = a, every edge >= r-1 in A),
    or None.  Exhaustive."""
    if a < h.r - 1:
        raise InvalidParams(f"core size {a} < r-1 = {h.r - 1}")
    if a > h.n:
        return None
    if not _core_feasible(h, a, frozenset(), frozenset()):
        return None
    forced: set[int] = set()
    banned: set[int] = set()
    for v in range(1, h.n + 1):
        if len(forced) == a:
            break
        if _core_feasible(h, a, frozenset(forced | {v}), frozenset(banned)):
            forced.add(v)
        else:
            banned.add(v)
    assert len(forced) == a
    return EmbeddingCertificate(core=frozenset(forced))


def _candidate_cores(h: Hypergraph, a: int):
    if comb(h.n, a) > _CORE_SCAN_LIMIT:
        raise LimitExceeded(
            f"C({h.n},{a}) candidate cores exceed the desk-scale scan limit")
    return itertools.combinations(range(1, h.n + 1), a)


def _block_assignment(parts: list[set[int]], caps: tuple[int, ...] | None,
                      budget: int | None) -> bool:
    """Can the connected groups be injectively placed into blocks of the
    given capacities (None = unconstrained count/size, optional total
    budget)?"""
    if caps is None:
        if budget is not None and sum(len(p) for p in parts) > budget:
            return False
        return True
    sizes = sorted((len(p) for p in parts), reverse=True)
    caps_left = sorted(caps, reverse=True)
    for s in sizes:
        for i, c in enumerate(caps_left):
            if s <= c:
                caps_left.pop(i)
                break
        else:
            return False
    return True


def _group_outside(h: Hypergraph, bad: list[Edge], core: set[int]) -> list[set[int]] | None:
    """Connected components of the bad edges by shared outside vertices;
    None if some bad edge is entirely inside the core (cannot happen for
    r >= 2) or groups collide with the core."""
    comps: list[set[int]] = []
    for e in bad:
        outside = set(e) - core
        if not outside:
            return None
        touching = [c for c in comps if c & outside]
        merged = set(outside)
        for c in touching:
            merged |= c
            comps.remove(c)
        comps.append(merged)
    return comps


def embeds_in_core_block(h: Hypergraph, a: int, bs: tuple[int, ...] | list[int]
                         ) -> EmbeddingCertificate | None:
    """Certificate (A, B_1..B_t): every edge has >= r-1 vertices in A or
    lies inside A u B_i for one block.  Blocks may be smaller than the
    allowed sizes and may be unused.  Exhaustive over cores, lex-min A."""
    bs = tuple(bs)
    if a < h.r - 1:
        raise InvalidParams(f"core size {a} < r-1 = {h.r - 1}")
    if any(b < 2 for b in bs):
        raise InvalidParams(f"block sizes must be >= 2, got {bs}")
    if a > h.n:
        return None
    for cand in _candidate_cores(h, a):
        core = set(cand)
        bad = [e for e in h.edges if len(set(e) & core) < h.r - 1]
        comps = _group_outside(h, bad, core)
        if comps is None:
            continue
        if not _block_assignment(comps, bs, None):
            continue
        blocks = tuple(frozenset(c) for c in sorted(comps, key=lambda c: (-len(c), sorted(c))))
        return EmbeddingCertificate(core=frozenset(core), blocks=blocks)
    return None


def embeds_in_core_plus(h: Hypergraph, a: int) -> EmbeddingCertificate | None:
    """Certificate with core A and at most one exceptional edge having
    <= r-2 core vertices; every other edge has >= r-1.  Lex-min A."""
    if a < h.r - 1:
        raise InvalidParams(f"core size {a} < r-1 = {h.r - 1}")
    if a > h.n:
        return None
    for cand in _candidate_cores(h, a):
        core = set(cand)
        light = [e for e in h.edges if len(set(e) & core) < h.r - 1]
        if len(light) <= 1:
            return EmbeddingCertificate(
                core=frozenset(core),
                exceptional=light[0] if light else None)
    return None


def in_pendant_class(h: Hypergraph, a: int, bs: tuple[int, ...] | list[int] | None,
                     block_budget: int | None = None) -> EmbeddingCertificate | None:
    """Decomposition into an inner core-block part plus pendant edges
    A'_j u D_j whose outer parts D_j (size >= 2, degree-1 vertices)
    partition the outer vertex set.

    With bs=None any number of blocks of any size is allowed, optionally
    capped by ``block_budget`` total block vertices.
    """
    if a < h.r - 1:
        raise InvalidParams(f"core size {a} < r-1 = {h.r - 1}")
    if bs is not None:
        bs = tuple(bs)
        if any(b < 2 for b in bs):
            raise InvalidParams(f"block sizes must be >= 2, got {bs}")
    if a > h.n:
        return None
    vem = vertex_edge_masks(h)
    deg1 = {v for v in range(1, h.n + 1) if vem[v].bit_count() == 1}
    for cand in _candidate_cores(h, a):
        core = set(cand)
        pendants: list[tuple[frozenset[int], frozenset[int]]] = []
        block_edges: list[Edge] = []
        for e in h.edges:
            es = set(e)
            if len(es & core) >= h.r - 1:
                continue
            outer = es - core
            if len(outer) >= 2 and outer <= deg1:
                pendants.append((frozenset(es & core), frozenset(outer)))
            else:
                block_edges.append(e)
        comps = _group_outside(h, block_edges, core)
        if comps is None:
            continue
        outer_all = set().union(*(d for _, d in pendants)) if pendants else set()
        if any(c & outer_all for c in comps):
            continue
        if not _block_assignment(comps, bs, block_budget):
            continue
        blocks = tuple(frozenset(c) for c in sorted(comps, key=lambda c: (-len(c), sorted(c))))
        return EmbeddingCertificate(
            core=frozenset(core), blocks=blocks,
            pendants=tuple(sorted(pendants, key=lambda p: sorted(p[1]))))
    return None


# ---------------------------------------------------------------------------
# set degree condition and kernelization

def set_degree_threshold(k: int, r: int) -> int:
    """Per-vertex hyperedge quota in the set degree condition."""
    return comb((k - 3) // 2, r - 1)


def check_set_degree(h: Hypergraph, k: int, budget: int | None = None
                     ) -> frozenset[int] | None:
    """None if every vertex set X with |X| <= k/2 meets at least
    |X| * C(floor((k-3)/2), r-1) hyperedges; otherwise a violating set of
    minimum cardinality (lexicographically smallest among those)."""
    if k < 3:
        raise InvalidParams(f"need k >= 3, got {k}")
    quota = set_degree_threshold(k, h.r)
    if quota == 0:
        return None
    smax = min(h.n, k // 2)
    if smax < 1:
        return None
    vem = vertex_edge_masks(h)
    prune_at = smax * quota
    spent = 0

    def rec(size: int, start: int, chosen: list[int], emask: int) -> frozenset[int] | None:
        nonlocal spent
        spent += 1
        if budget is not None and spent > budget:
            raise BudgetExhausted(f"set degree scan exceeded {budget} subsets")
        if len(chosen) == size:
            if emask.bit_count() < size * quota:
                return frozenset(chosen)
            return None
        if emask.bit_count() >= prune_at:
            return None  # no extension can violate
        for v in range(start, h.n + 1):
            if h.n - v + 1 < size - len(chosen):
                break
            hit = rec(size, v + 1, chosen + [v], emask | vem[v])
            if hit is not None:
                return hit
        return None

    for size in range(1, smax + 1):
        hit = rec(size, 1, [], 0)
        if hit is not None:
            return hit
    return None


def _worst_deficit_set(h: Hypergraph, k: int) -> frozenset[int] | None:
    """The violating set maximizing |X|*quota - |E(X)| (ties: smaller,
    then lexicographic).  Full enumeration; desk scale only."""
    quota = set_degree_threshold(k, h.r)
    if quota == 0:
        return None
    vem = vertex_edge_masks(h)
    best: tuple[int, int, tuple[int, ...]] | None = None
    smax = min(h.n, k // 2)
    for size in range(1, smax + 1):
        for xs in itertools.combinations(range(1, h.n + 1), size):
            emask = 0
            for v in xs:
                emask |= vem[v]
            deficit = size * quota - emask.bit_count()
            if deficit > 0:
                key = (-deficit, size, xs)
                if best is None or key < best:
                    best = key
    return frozenset(best[2]) if best else None


@dataclass(frozen=True)
class RemovalStep:
    removed: frozenset[int]  # original vertex ids
    incident_edges: int
    potential_before: int
    potential_after: int


@dataclass(frozen=True)
class KernelizeResult:
    kernel: Hypergraph | None  # None when everything was removed
    vertex_map: dict[int, int]  # original id -> kernel id (survivors only)
    log: tuple[RemovalStep, ...]

    @property
    def steps(self) -> int:
        return len(self.log)


def kernelize(h: Hypergraph, k: int, order: str = "smallest",
              budget: int | None = None) -> KernelizeResult:
    """Greedy removal of violating sets until the set degree condition
    holds.  order='smallest' removes the minimum-cardinality violator
    (lex ties), order='max_deficit' the one with the largest deficit.

    The potential |E| - |V| * quota strictly increases at every step.
    """
    if order not in ("smallest", "max_deficit"):
        raise InvalidParams(f"unknown removal order {order!r}")
    quota = set_degree_threshold(k, h.r)
    cur: Hypergraph | None = h
    to_orig = {v: v for v in range(1, h.n + 1)}
    log: list[RemovalStep] = []
    while cur is not None:
        if order == "smallest":
            bad = check_set_degree(cur, k, budget)
        else:
            bad = _worst_deficit_set(cur, k)
        if bad is None:
            break
        phi_before = cur.m - cur.n * quota
        hit = incident_count(cur, vertex_mask(bad))
        removed_orig = frozenset(to_orig[v] for v in bad)
        if len(bad) == cur.n:
            log.append(RemovalStep(removed_orig, hit, phi_before, 0))
            cur = None
            to_orig = {}
            break
        nxt, mapping = remove_vertices(cur, bad)
        phi_after = nxt.m - nxt.n * quota
        log.append(RemovalStep(removed_orig, hit, phi_before, phi_after))
        to_orig = {new: to_orig[old] for old, new in mapping.items()}
        cur = nxt
    vertex_map = {orig: cur_id for cur_id, orig in to_orig.items()} if cur else {}
    return KernelizeResult(kernel=cur, vertex_map=vertex_map, log=tuple(log))
