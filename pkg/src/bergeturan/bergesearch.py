"""Exact search for longest Berge paths and cycles with verifiable witnesses.

A Berge path of length t alternates t+1 distinct vertices and t distinct
hyperedges, each hyperedge containing the two vertices around it; a Berge
cycle closes the sequence (indices mod t, minimum length 2).

Search strategy: depth-first over vertex sequences inside the 2-shadow
(consecutive vertices must share at least one hyperedge), with the
distinct-hyperedge constraint enforced as a system of distinct
representatives via incremental bipartite matching.  A failed
augmentation is a Hall violation and prunes the branch, so the search is
both sound and exhaustive.  Results are deterministic: among maximum
witnesses the lexicographically smallest vertex sequence wins (a path
and its reversal are identified by requiring first <= last vertex), then
the smallest edge-id sequence.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExhausted, ParseError, UnknownEdgeId
from .hypercore import Edge, Hypergraph, vertex_orbits

DEFAULT_NODE_BUDGET = 20_000_000  # applied when n > 16 and no budget given


class _Budget:
    __slots__ = ("left", "spent")

    def __init__(self, nodes: int | None):
        self.left = nodes
        self.spent = 0

    def tick(self) -> None:
        self.spent += 1
        if self.left is not None:
            self.left -= 1
            if self.left < 0:
                raise BudgetExhausted(f"node budget exhausted after {self.spent - 1} nodes")


def _resolve_budget(n: int, budget: int | None) -> _Budget:
    if budget is not None:
        return _Budget(budget)
    return _Budget(None if n <= 16 else DEFAULT_NODE_BUDGET)


class _Matcher:
    """Incremental SDR of pair slots into distinct edge ids (Kuhn augmenting).

    ``push`` adds a slot with a candidate edge-id mask and returns whether a
    perfect matching of all slots still exists; on failure the state is
    unchanged.  ``pop`` restores the state before the matching push.
    """

    __slots__ = ("cands", "slot_edge", "owner", "saved")

    def __init__(self) -> None:
        self.cands: list[int] = []
        self.slot_edge: list[int] = []
        self.owner: dict[int, int] = {}
        self.saved: list[tuple[list[int], dict[int, int]]] = []

    def push(self, cmask: int) -> bool:
        self.saved.append((self.slot_edge.copy(), self.owner.copy()))
        self.cands.append(cmask)
        self.slot_edge.append(-1)
        if self._try(len(self.cands) - 1, set()):
            return True
        self.cands.pop()
        self.slot_edge, self.owner = self.saved.pop()
        return False

    def pop(self) -> None:
        self.cands.pop()
        self.slot_edge, self.owner = self.saved.pop()

    def used_mask(self) -> int:
        mask = 0
        for e in self.slot_edge:
            if e >= 0:
                mask |= 1 << e
        return mask

    def _try(self, slot: int, visited: set[int]) -> bool:
        cm = self.cands[slot]
        while cm:
            low = cm & -cm
            e = low.bit_length() - 1
            cm ^= low
            if e in visited:
                continue
            visited.add(e)
            holder = self.owner.get(e)
            if holder is None or self._try(holder, visited):
                self.owner[e] = slot
                self.slot_edge[slot] = e
                return True
        return False


class PathFinder:
    """Berge path/cycle queries on one fixed edge list (low-level core).

    Vertices are bits 0..n-1 of vertex masks, edges are indexed by their
    position in ``edges`` (edge-id masks).  All public search methods take
    an optional `_Budget` and raise BudgetExhausted rather than return a
    wrong answer.
    """

    __slots__ = ("n", "m", "edges", "edge_vmask", "cover", "adj", "vert_emask")

    def __init__(self, n: int, edges: Sequence[Edge]):
        self.n = n
        self.m = len(edges)
        self.edges = list(edges)
        self.edge_vmask = []
        cover: dict[tuple[int, int], int] = {}
        adj = [0] * (n + 1)
        vert_emask = [0] * (n + 1)
        for i, e in enumerate(edges):
            bit = 1 << i
            vm = 0
            for v in e:
                vm |= 1 << (v - 1)
                vert_emask[v] |= bit
            self.edge_vmask.append(vm)
            for u, v in itertools.combinations(e, 2):
                cover[(u, v)] = cover.get((u, v), 0) | bit
                cover[(v, u)] = cover.get((v, u), 0) | bit
            for v in e:
                adj[v] |= vm
        for v in range(1, n + 1):
            adj[v] &= ~(1 << (v - 1))
        self.cover = cover
        self.adj = adj
        self.vert_emask = vert_emask

    # -- paths ------------------------------------------------------------

    def find_path(self, k: int, budget: _Budget | None = None,
                  banned_vmask: int = 0,
                  starts: Iterable[int] | None = None,
                  allowed: int | None = None) -> list[int] | None:
        """Lexicographically first vertex sequence of a Berge path of length k.

        ``allowed`` restricts the defining hyperedges to an edge-id mask,
        so one finder can serve every subhypergraph of its edge list.
        """
        allow = ((1 << self.m) - 1) if allowed is None else allowed
        if k < 1 or allow.bit_count() < k or self.n < k + 1:
            return None
        bud = budget or _Budget(None)
        match = _Matcher()
        seq: list[int] = []

        def rec(last: int, used: int) -> bool:
            bud.tick()
            if len(seq) == k + 1:
                return True
            cand = self.adj[last] & ~used & ~banned_vmask
            while cand:
                low = cand & -cand
                u = low.bit_length()
                cand ^= low
                cm = self.cover[(last, u)] & allow
                if cm and match.push(cm):
                    seq.append(u)
                    if rec(u, used | low):
                        return True
                    seq.pop()
                    match.pop()
            return False

        for v in (starts if starts is not None else range(1, self.n + 1)):
            vbit = 1 << (v - 1)
            if vbit & banned_vmask:
                continue
            seq = [v]
            if rec(v, vbit):
                return seq
        return None

    def longest_path_length(self, budget: _Budget | None = None,
                            starts: Iterable[int] | None = None,
                            stop_at: int | None = None) -> int:
        """Exact maximum Berge path length (0 if edgeless)."""
        if self.m == 0:
            return 0
        bud = budget or _Budget(None)
        hard_cap = min(self.n - 1, self.m)
        cap = hard_cap if stop_at is None else min(hard_cap, stop_at)
        best = 0
        match = _Matcher()

        def rec(last: int, used: int, nused: int, depth: int) -> bool:
            nonlocal best
            bud.tick()
            if depth > best:
                best = depth
                if best >= cap:
                    return True
            if depth + min(self.n - nused, self.m - depth) <= best:
                return False
            cand = self.adj[last] & ~used
            while cand:
                low = cand & -cand
                u = low.bit_length()
                cand ^= low
                if match.push(self.cover[(last, u)]):
                    if rec(u, used | low, nused + 1, depth + 1):
                        return True
                    match.pop()
            return False

        for v in (starts if starts is not None else range(1, self.n + 1)):
            if rec(v, 1 << (v - 1), 1, 0):
                break
        return best

    def find_path_with_edge(self, k: int, eidx: int,
                            budget: _Budget | None = None,
                            allowed: int | None = None) -> bool:
        """Does a Berge path of length k exist whose sequence has some
        consecutive pair inside edge ``eidx``?  (If the hypergraph minus
        that edge is known path-free this decides freeness after adding it.)
        """
        allow = ((1 << self.m) - 1) if allowed is None else allowed
        if k < 1 or allow.bit_count() < k or self.n < k + 1:
            return False
        bud = budget or _Budget(None)
        e = self.edges[eidx]
        match = _Matcher()

        def grow_left(left: int, used: int, pairs: int) -> bool:
            bud.tick()
            if pairs == k:
                return True
            cand = self.adj[left] & ~used
            while cand:
                low = cand & -cand
                u = low.bit_length()
                cand ^= low
                cm = self.cover[(u, left)] & allow
                if cm and match.push(cm):
                    if grow_left(u, used | low, pairs + 1):
                        return True
                    match.pop()
            return False

        def grow_right(left: int, right: int, used: int, pairs: int) -> bool:
            bud.tick()
            if pairs == k:
                return True
            cand = self.adj[right] & ~used
            while cand:
                low = cand & -cand
                u = low.bit_length()
                cand ^= low
                cm = self.cover[(right, u)] & allow
                if cm and match.push(cm):
                    if grow_right(left, u, used | low, pairs + 1):
                        return True
                    match.pop()
            return grow_left(left, used, pairs)

        for x, y in itertools.combinations(e, 2):
            cm = self.cover[(x, y)] & allow
            if not cm or not match.push(cm):
                continue
            used = (1 << (x - 1)) | (1 << (y - 1))
            if grow_right(x, y, used, 1):
                return True
            match.pop()
        return False

    # -- cycles -----------------------------------------------------------

    def find_cycle(self, t: int, budget: _Budget | None = None,
                   banned_vmask: int = 0) -> list[int] | None:
        """Lex-min normalized vertex sequence of a Berge cycle of length t.

        Normalization: the smallest cycle vertex first, and (for t >= 3)
        the second vertex smaller than the last.
        """
        if t < 2 or self.m < t or self.n < t:
            return None
        bud = budget or _Budget(None)
        match = _Matcher()
        seq: list[int] = []

        def rec(anchor: int, last: int, used: int) -> bool:
            bud.tick()
            if len(seq) == t:
                cm = self.cover.get((last, anchor), 0)
                if cm and (t == 2 or seq[1] < seq[-1]) and match.push(cm):
                    return True
                return False
            cand = self.adj[last] & ~used & ~banned_vmask
            # only vertices above the anchor keep the anchor minimal
            cand &= ~((1 << anchor) - 1)
            while cand:
                low = cand & -cand
                u = low.bit_length()
                cand ^= low
                if match.push(self.cover[(last, u)]):
                    seq.append(u)
                    if rec(anchor, u, used | low):
                        return True
                    seq.pop()
                    match.pop()
            return False

        for anchor in range(1, self.n + 1):
            abit = 1 << (anchor - 1)
            if abit & banned_vmask:
                continue
            seq = [anchor]
            if rec(anchor, anchor, abit):
                return seq
        return None

    def longest_cycle_length(self, min_length: int = 2,
                             budget: _Budget | None = None) -> int:
        for t in range(min(self.n, self.m), min_length - 1, -1):
            if self.find_cycle(t, budget) is not None:
                return t
        return 0

    def cycles_exhaustive(self, t: int, budget: _Budget | None = None
                          ) -> Iterator[tuple[tuple[int, ...], frozenset[int]]]:
        """All Berge cycles of length t as (normalized vertex sequence,
        defining edge-id set); each sequence is paired with every distinct
        SDR edge set it admits."""
        if t < 2 or self.m < t or self.n < t:
            return
        bud = budget or _Budget(None)
        match = _Matcher()
        out: list[tuple[tuple[int, ...], frozenset[int]]] = []

        def sdr_sets(pairs: list[tuple[int, int]]) -> set[frozenset[int]]:
            found: set[frozenset[int]] = set()

            def assign(i: int, used: int, chosen: list[int]) -> None:
                if i == len(pairs):
                    found.add(frozenset(chosen))
                    return
                cm = self.cover[pairs[i]] & ~used
                while cm:
                    low = cm & -cm
                    e = low.bit_length() - 1
                    cm_next = cm ^ low
                    chosen.append(e)
                    assign(i + 1, used | low, chosen)
                    chosen.pop()
                    cm = cm_next

            assign(0, 0, [])
            return found

        def rec(anchor: int, last: int, used: int, seq: list[int]) -> None:
            bud.tick()
            if len(seq) == t:
                cm = self.cover.get((last, anchor), 0)
                if cm and (t == 2 or seq[1] < seq[-1]) and match.push(cm):
                    pairs = list(zip(seq, seq[1:])) + [(seq[-1], anchor)]
                    for es in sorted(sdr_sets(pairs), key=sorted):
                        out.append((tuple(seq), es))
                    match.pop()
                return
            cand = self.adj[last] & ~used
            cand &= ~((1 << anchor) - 1)
            while cand:
                low = cand & -cand
                u = low.bit_length()
                cand ^= low
                if match.push(self.cover[(last, u)]):
                    seq.append(u)
                    rec(anchor, u, used | low)
                    seq.pop()
                    match.pop()

        for anchor in range(1, self.n + 1):
            rec(anchor, anchor, 1 << (anchor - 1), [anchor])
        yield from out

    # -- witness helpers ---------------------------------------------------

    def lexmin_sdr(self, pairs: Sequence[tuple[int, int]]) -> list[int] | None:
        """Smallest edge-id assignment (componentwise greedy) for the pairs."""

        def feasible(rest: Sequence[tuple[int, int]], used: int) -> bool:
            m = _Matcher()
            for p in rest:
                if not m.push(self.cover.get(p, 0) & ~used):
                    return False
            return True

        chosen: list[int] = []
        used = 0
        for i, p in enumerate(pairs):
            cm = self.cover.get(p, 0) & ~used
            ok = False
            while cm:
                low = cm & -cm
                e = low.bit_length() - 1
                cm ^= low
                if feasible(pairs[i + 1:], used | low):
                    chosen.append(e)
                    used |= low
                    ok = True
                    break
            if not ok:
                return None
        return chosen


# ---------------------------------------------------------------------------
# public witness API

@dataclass(frozen=True)
class BergeWitness:
    """Alternating vertex/hyperedge certificate for a Berge path or cycle."""

    kind: str  # "path" | "cycle"
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    def to_json(self) -> str:
        payload = {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def witness_from_json(text: str) -> BergeWitness:
    try:
        payload = json.loads(text)
        kind = payload["kind"]
        vertices = tuple(int(v) for v in payload["vertices"])
        edges = tuple(tuple(sorted(int(v) for v in e)) for e in payload["edges"])
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise ParseError(f"malformed witness JSON: {exc}") from exc
    if kind not in ("path", "cycle"):
        raise ParseError(f"witness kind must be 'path' or 'cycle', got {kind!r}")
    return BergeWitness(kind=kind, vertices=vertices, edges=edges)


def verify_witness(h: Hypergraph, w: BergeWitness, strict: bool = False) -> bool:
    """Check every witness invariant against h by direct scan.

    With strict=True an edge absent from h raises UnknownEdgeId instead of
    returning False.
    """
    edge_set = set(h.edges)
    for e in w.edges:
        if e not in edge_set:
            if strict:
                raise UnknownEdgeId(f"witness edge {e} not in hypergraph")
            return False
    t = len(w.edges)
    if len(set(w.edges)) != t or len(set(w.vertices)) != len(w.vertices):
        return False
    if any(not 1 <= v <= h.n for v in w.vertices):
        return False
    if w.kind == "path":
        if len(w.vertices) != t + 1 or t < 1:
            return False
        pairs = zip(w.vertices, w.vertices[1:])
    elif w.kind == "cycle":
        if len(w.vertices) != t or t < 2:
            return False
        pairs = zip(w.vertices, w.vertices[1:] + (w.vertices[0],))
    else:
        return False
    return all(u in e and v in e for (u, v), e in zip(pairs, w.edges))


def _finder(h: Hypergraph) -> PathFinder:
    return PathFinder(h.n, h.edges)


def _path_witness(h: Hypergraph, pf: PathFinder, seq: list[int]) -> BergeWitness:
    pairs = list(zip(seq, seq[1:]))
    sdr = pf.lexmin_sdr(pairs)
    assert sdr is not None
    return BergeWitness(kind="path", vertices=tuple(seq),
                        edges=tuple(h.edges[e] for e in sdr))


def _cycle_witness(h: Hypergraph, pf: PathFinder, seq: list[int]) -> BergeWitness:
    pairs = list(zip(seq, seq[1:])) + [(seq[-1], seq[0])]
    sdr = pf.lexmin_sdr(pairs)
    assert sdr is not None
    return BergeWitness(kind="cycle", vertices=tuple(seq),
                        edges=tuple(h.edges[e] for e in sdr))


def has_berge_path(h: Hypergraph, k: int, budget: int | None = None) -> BergeWitness | None:
    """A valid witness of length exactly k if one exists, else None.

    Exhaustive: None is a proof of absence (BudgetExhausted is raised if
    the node budget runs out first).
    """
    bud = _resolve_budget(h.n, budget)
    pf = _finder(h)
    seq = pf.find_path(k, bud)
    if seq is None:
        return None
    return _path_witness(h, pf, seq)


def longest_berge_path(h: Hypergraph, budget: int | None = None
                       ) -> tuple[int, BergeWitness | None]:
    """Maximum Berge path length plus a deterministic witness (0, None) if edgeless."""
    bud = _resolve_budget(h.n, budget)
    pf = _finder(h)
    starts = [orbit[0] for orbit in vertex_orbits(h)] if h.m > 6 else None
    best = pf.longest_path_length(bud, starts=starts)
    if best == 0:
        return 0, None
    seq = pf.find_path(best, bud)
    assert seq is not None
    return best, _path_witness(h, pf, seq)


def has_berge_cycle(h: Hypergraph, t: int, budget: int | None = None,
                    avoid: Iterable[int] = ()) -> BergeWitness | None:
    """A Berge cycle witness of length exactly t avoiding the given
    vertices as defining vertices, else None."""
    bud = _resolve_budget(h.n, budget)
    pf = _finder(h)
    banned = 0
    for v in avoid:
        banned |= 1 << (v - 1)
    seq = pf.find_cycle(t, bud, banned_vmask=banned)
    if seq is None:
        return None
    return _cycle_witness(h, pf, seq)


def longest_berge_cycle(h: Hypergraph, min_length: int = 2,
                        budget: int | None = None
                        ) -> tuple[int, BergeWitness | None]:
    """Maximum Berge cycle length (>= min_length) with witness, (0, None)
    when no Berge cycle exists."""
    bud = _resolve_budget(h.n, budget)
    pf = _finder(h)
    best = pf.longest_cycle_length(min_length, bud)
    if best == 0:
        return 0, None
    seq = pf.find_cycle(best, bud)
    assert seq is not None
    return best, _cycle_witness(h, pf, seq)


def maximum_cycles(h: Hypergraph, budget: int | None = None
                   ) -> tuple[int, list[tuple[tuple[int, ...], frozenset[Edge]]]]:
    """All maximum-length Berge cycles as (vertex sequence, defining edge set).

    Includes every distinct defining edge set per normalized sequence;
    used by the structural audits.
    """
    bud = _resolve_budget(h.n, budget)
    pf = _finder(h)
    best = pf.longest_cycle_length(2, bud)
    if best == 0:
        return 0, []
    out = []
    for seq, eids in pf.cycles_exhaustive(best, bud):
        out.append((seq, frozenset(h.edges[e] for e in eids)))
    return best, out
