"""Exhaustive desk-scale enumeration and audits.

Three engines live here.

* ``enumerate_hypergraphs``: isomorph-free generation of all edge subsets
  of the complete r-uniform hypergraph on n vertices satisfying a
  hereditary predicate, by level-wise extension with canonical-form
  deduplication.

* A conflict-driven search over maximal path-free families used by
  ``exconn_bruteforce`` and ``verify_stability``.  At a node (I, X) the
  addable set A holds every undecided edge whose addition keeps I
  path-free.  If I u A is itself path-free it is the unique maximal
  family in the node's interval and the node closes; otherwise a witness
  path through I u A yields a small conflict F of addable edges, and
  branches "exclude f_i, include f_1..f_{i-1}" cover all path-free
  supersets of I exactly once.  Since every qualifying hypergraph sits
  below some maximal family, pruning on |I| + |A|, on spanning
  connectivity of I u A (and minimum degree for the census) is sound.

* ``audit_lemma1``: checks the structural facts about longest Berge
  cycles (outside vertices meet non-defining edges in at most one
  vertex; no consecutive attachment pattern; rotation premise yields a
  cycle avoiding the rotated vertex) on every qualifying instance.

All reports are deterministic: byte-identical across runs and worker
counts.  Work is split into worker-count-independent chunks; workers
only decide whether chunks run inline or in a process pool.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from multiprocessing import get_context
from typing import Callable, Iterator, Sequence

from . import classifier as _classifier
from . import constructions as _constructions
from .bergesearch import (
    PathFinder,
    _Budget,
    _Matcher,
    has_berge_cycle,
    longest_berge_cycle,
    longest_berge_path,
    maximum_cycles,
)
from .errors import BudgetExhausted, InvalidParams, LimitExceeded
from .hypercore import (
    Edge,
    Hypergraph,
    canonical_label_edges,
    canonical_label_state,
    is_connected,
    min_degree,
    new_hypergraph,
)

DESK_MAX_N = 8
_LEVEL_CHUNKS = 16


# ---------------------------------------------------------------------------
# edge universe

class Universe:
    """All r-subsets of [n] in lexicographic order, with bitmask tables.

    States of the searches are bitmasks over these edge ids.
    """

    def __init__(self, n: int, r: int):
        if n < 1 or r < 2:
            raise InvalidParams(f"need n >= 1, r >= 2, got n={n}, r={r}")
        self.n = n
        self.r = r
        self.edges: list[Edge] = list(itertools.combinations(range(1, n + 1), r))
        self.d = len(self.edges)
        self.full_edge_mask = (1 << self.d) - 1
        self.full_vertex_mask = (1 << n) - 1
        self.edge_vmask = [sum(1 << (v - 1) for v in e) for e in self.edges]
        self.vert_emask = [0] * (n + 1)
        for i, e in enumerate(self.edges):
            for v in e:
                self.vert_emask[v] |= 1 << i

    def edge_list(self, emask: int) -> list[Edge]:
        out = []
        while emask:
            low = emask & -emask
            out.append(self.edges[low.bit_length() - 1])
            emask ^= low
        return out

    def hypergraph(self, emask: int) -> Hypergraph:
        return Hypergraph(n=self.n, r=self.r, edges=tuple(self.edge_list(emask)))

    def coverage(self, emask: int) -> int:
        vm = 0
        while emask:
            low = emask & -emask
            vm |= self.edge_vmask[low.bit_length() - 1]
            emask ^= low
        return vm

    def connected_spanning(self, emask: int) -> bool:
        if emask == 0:
            return self.n == 1
        low = emask & -emask
        comp = self.edge_vmask[low.bit_length() - 1]
        rest = emask ^ low
        changed = True
        while changed and rest:
            changed = False
            scan = rest
            while scan:
                lo = scan & -scan
                scan ^= lo
                ev = self.edge_vmask[lo.bit_length() - 1]
                if ev & comp:
                    comp |= ev
                    rest ^= lo
                    changed = True
        return comp == self.full_vertex_mask and rest == 0

    def min_degree(self, emask: int) -> int:
        return min((emask & self.vert_emask[v]).bit_count() for v in range(1, self.n + 1))

    def canon(self, emask: int) -> tuple:
        return canonical_label_edges(self.n, tuple(self.edge_list(emask)))


# ---------------------------------------------------------------------------
# path-freeness oracle over universe states

class FreeOracle:
    """Memoized 'has no Berge path of length k' on edge-id masks.

    One universe-wide PathFinder serves every state via the ``allowed``
    edge-mask restriction, so freeness checks build nothing per call.
    """

    def __init__(self, uni: Universe, k: int):
        self.uni = uni
        self.k = k
        self.pf = PathFinder(uni.n, uni.edges)
        self.memo: dict[int, bool] = {0: True}
        self.checks = 0

    def is_free(self, emask: int) -> bool:
        hit = self.memo.get(emask)
        if hit is not None:
            return hit
        self.checks += 1
        free = self.pf.find_path(self.k, allowed=emask) is None
        self.memo[emask] = free
        return free

    def is_free_after_adding(self, base_mask: int, eidx: int) -> bool:
        """base_mask is known free; decide base + edge eidx via a search
        anchored at the new edge (any new path must traverse it)."""
        m2 = base_mask | (1 << eidx)
        hit = self.memo.get(m2)
        if hit is not None:
            return hit
        self.checks += 1
        free = not self.pf.find_path_with_edge(self.k, eidx, allowed=m2)
        self.memo[m2] = free
        return free

    def witness_conflict(self, emask: int, include_mask: int) -> list[int]:
        """Defining edges (as universe ids) of some length-k Berge path in
        emask, preferring edges of include_mask so the conflict with the
        current inclusion set is small.  emask must not be free."""
        seq = self.pf.find_path(self.k, allowed=emask)
        assert seq is not None
        pairs = list(zip(seq, seq[1:]))
        sdr = _sdr_preferring(self.pf, pairs, emask, include_mask)
        assert sdr is not None
        return sorted({e for e in sdr if not (include_mask >> e) & 1})


def _sdr_preferring(pf: PathFinder, pairs: list[tuple[int, int]],
                    allowed: int, pref_mask: int) -> list[int] | None:
    """Greedy SDR inside ``allowed``, taking preferred edges first."""

    def feasible(rest: list[tuple[int, int]], used: int) -> bool:
        m = _Matcher()
        for p in rest:
            if not m.push(pf.cover.get(p, 0) & allowed & ~used):
                return False
        return True

    chosen: list[int] = []
    used = 0
    for i, p in enumerate(pairs):
        cm = pf.cover.get(p, 0) & allowed & ~used
        ordered = []
        pm = cm & pref_mask
        while pm:
            low = pm & -pm
            ordered.append(low.bit_length() - 1)
            pm ^= low
        om = cm & ~pref_mask
        while om:
            low = om & -om
            ordered.append(low.bit_length() - 1)
            om ^= low
        ok = False
        for e in ordered:
            if feasible(pairs[i + 1:], used | (1 << e)):
                chosen.append(e)
                used |= 1 << e
                ok = True
                break
        if not ok:
            return None
    return chosen


# ---------------------------------------------------------------------------
# isomorph-free enumeration

def enumerate_hypergraphs(n: int, r: int,
                          predicate: Callable[[Hypergraph], bool] | None = None,
                          up_to_iso: bool = True,
                          max_edges: int | None = None,
                          max_n: int | None = None,
                          workers: int = 1) -> Iterator[Hypergraph]:
    """All edge subsets of the complete r-uniform hypergraph on [n]
    satisfying the hereditary predicate, one representative per
    isomorphism class when up_to_iso, in deterministic (edge count,
    canonical label) order.

    The predicate must be hereditary (closed under edge deletion) and,
    for workers > 1, picklable.
    """
    limit = DESK_MAX_N if max_n is None else max_n
    if n > limit:
        raise LimitExceeded(f"n={n} exceeds the desk-scale limit {limit}")
    uni = Universe(n, r)
    cap = uni.d if max_edges is None else min(uni.d, max_edges)
    if not up_to_iso:
        for m in range(cap + 1):
            for combo in itertools.combinations(range(uni.d), m):
                emask = 0
                for i in combo:
                    emask |= 1 << i
                h = uni.hypergraph(emask)
                if predicate is None or predicate(h):
                    yield h
        return

    level: dict[tuple, int] = {uni.canon(0): 0}
    empty = uni.hypergraph(0)
    if predicate is None or predicate(empty):
        yield empty
    else:
        return
    pool = _make_pool(workers)
    try:
        for m in range(cap):
            reps = [level[key] for key in sorted(level)]
            chunks = _chunked(reps, _LEVEL_CHUNKS)
            tasks = [(n, r, chunk, predicate) for chunk in chunks if chunk]
            if pool is None:
                results = [_expand_level_chunk(t) for t in tasks]
            else:
                results = list(pool.map(_expand_level_chunk, tasks))
            nxt: dict[tuple, int] = {}
            for part in results:
                for key, emask in part:
                    if key not in nxt:
                        nxt[key] = emask
            level = nxt
            if not level:
                return
            for key in sorted(level):
                yield Hypergraph(n=n, r=r, edges=key[1])
    finally:
        if pool is not None:
            pool.shutdown()


def _expand_level_chunk(task) -> list[tuple[tuple, int]]:
    n, r, masks, predicate = task
    uni = Universe(n, r)
    out: list[tuple[tuple, int]] = []
    seen: set[tuple] = set()
    for emask in masks:
        for i in range(uni.d):
            bit = 1 << i
            if emask & bit:
                continue
            child = emask | bit
            h = uni.hypergraph(child)
            if predicate is not None and not predicate(h):
                continue
            key = uni.canon(child)
            if key not in seen:
                seen.add(key)
                out.append((key, child))
    return sorted(out)


def _chunked(items: list, nchunks: int) -> list[list]:
    if not items:
        return []
    size = max(1, (len(items) + nchunks - 1) // nchunks)
    return [items[i:i + size] for i in range(0, len(items), size)]


def _make_pool(workers: int):
    if workers <= 1:
        return None
    return ProcessPoolExecutor(max_workers=workers, mp_context=get_context("spawn"))


# ---------------------------------------------------------------------------
# conflict-driven search over maximal path-free families

@dataclass
class _SearchStats:
    nodes: int = 0
    leaves: int = 0
    branches: int = 0
    pruned_bound: int = 0
    pruned_structure: int = 0
    pruned_isomorphic: int = 0

    def merge(self, other: "_SearchStats") -> None:
        self.nodes += other.nodes
        self.leaves += other.leaves
        self.branches += other.branches
        self.pruned_bound += other.pruned_bound
        self.pruned_structure += other.pruned_structure
        self.pruned_isomorphic += other.pruned_isomorphic

    def as_dict(self) -> dict[str, int]:
        return {
            "nodes": self.nodes,
            "leaves": self.leaves,
            "branches": self.branches,
            "pruned_bound": self.pruned_bound,
            "pruned_structure": self.pruned_structure,
            "pruned_isomorphic": self.pruned_isomorphic,
        }


class _ClosureBFS:
    """Level BFS over isomorphism classes of path-free edge sets.

    A class I is expanded only while closure(I) = I u addable(I) still
    contains a forbidden path; a path-free closure is the unique maximal
    family above I, so the interval [I, closure] is recorded and the
    branch stops.  Since every qualifying hypergraph lies below some
    maximal family reachable through a chain of its own subsets (whose
    closures all contain it), pruning on the closure's size bound,
    spanning connectivity and minimum degree is sound and the sweep is
    exhaustive.

    mode="max": the answer is max |closure| over path-free closures
    (every extremal hypergraph is itself such a closure).
    mode="census": qualifying sets are collected both as visited classes
    and from closed intervals.
    """

    def __init__(self, uni: Universe, k: int, mode: str, target: int,
                 require_min_degree: int = 0,
                 budget: int | None = None):
        self.uni = uni
        self.k = k
        self.mode = mode
        self.target = target
        self.require_min_degree = require_min_degree
        self.oracle = FreeOracle(uni, k)
        self.stats = _SearchStats()
        self.budget = _Budget(budget)
        self.best = target
        self.best_masks: list[int] = []
        self.census_masks: set[int] = set()
        self.pending: list[int] = []  # unprocessed class masks on exhaustion

    def addable(self, include: int) -> int:
        out = 0
        scan = self.uni.full_edge_mask & ~include
        while scan:
            low = scan & -scan
            scan ^= low
            if self.oracle.is_free_after_adding(include, low.bit_length() - 1):
                out |= low
        return out

    def process(self, include: int, floor: int) -> list[int]:
        """Handle one class representative; return child masks to dedup."""
        self.stats.nodes += 1
        self.budget.tick()
        add = self.addable(include)
        closure = include | add
        if include.bit_count() + add.bit_count() < floor:
            self.stats.pruned_bound += 1
            return []
        if not self.uni.connected_spanning(closure):
            self.stats.pruned_structure += 1
            return []
        if self.require_min_degree and self.uni.min_degree(closure) < self.require_min_degree:
            self.stats.pruned_structure += 1
            return []
        if self.mode == "census":
            self._census_node(include)
        if self.oracle.is_free(closure):
            self.stats.leaves += 1
            self._leaf(include, closure)
            return []
        self.stats.branches += 1
        children = []
        scan = add
        while scan:
            low = scan & -scan
            scan ^= low
            children.append(include | low)
        return children

    def _census_node(self, include: int) -> None:
        if (include.bit_count() >= self.target
                and self.uni.connected_spanning(include)
                and (not self.require_min_degree
                     or self.uni.min_degree(include) >= self.require_min_degree)):
            self.census_masks.add(include)

    def _leaf(self, include: int, closure: int) -> None:
        size = closure.bit_count()
        if self.mode == "max":
            if size > self.best:
                self.best = size
                self.best_masks = [closure]
            elif size == self.best:
                self.best_masks.append(closure)
            return
        free_bits = closure & ~include
        bits = []
        scan = free_bits
        while scan:
            low = scan & -scan
            bits.append(low)
            scan ^= low
        need = max(self.target - include.bit_count(), 0)
        for take in range(need, len(bits) + 1):
            for combo in itertools.combinations(bits, take):
                s = include
                for b in combo:
                    s |= b
                if not self.uni.connected_spanning(s):
                    continue
                if self.require_min_degree and self.uni.min_degree(s) < self.require_min_degree:
                    continue
                self.census_masks.add(s)


# ---------------------------------------------------------------------------
# reports

@dataclass
class SearchReport:
    kind: str
    params: dict
    value: int | None
    witnesses: list[Hypergraph]
    explored: dict[str, int]
    budget_exhausted: bool
    exhaustive: bool
    annotations: list[str]
    instances: list[dict] = field(default_factory=list)
    checkpoint: dict | None = None
    schema_version: int = 1

    def to_payload(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "kind": self.kind,
            "params": self.params,
            "value": self.value,
            "witness_count": len(self.witnesses),
            "witnesses": [[list(e) for e in h.edges] for h in self.witnesses],
            "explored": self.explored,
            "budget_exhausted": self.budget_exhausted,
            "exhaustive": self.exhaustive,
            "annotations": self.annotations,
            "instances": self.instances,
            "checkpoint": self.checkpoint,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), sort_keys=True,
                          separators=(",", ":")) + "\n"

    def csv_row(self) -> str:
        p = self.params
        return (f"{p.get('n')},{p.get('r')},{p.get('k')},"
                f"{self.value if self.value is not None else ''},"
                f"{len(self.witnesses)},{self.explored.get('nodes', 0)},"
                f"{str(self.exhaustive).lower()}")


CSV_HEADER = "n,r,k,value,witness_count,explored,exhaustive"


def _seed_lower_bound(n: int, r: int, k: int) -> tuple[int, str | None]:
    """Edge count of the parity construction when it is valid, connected
    and verified path-free by search; else 0."""
    try:
        a = (k - 1) // 2
        bs = () if k % 2 == 1 else (2,)
        p = _constructions.ConstructionParams(n=n, a=a, bs=bs, r=r)
        h = _constructions.build_extremal(p)
    except InvalidParams:
        return 0, None
    pf = PathFinder(h.n, h.edges)
    if pf.find_path(k) is not None or not is_connected(h):
        return 0, None
    return h.m, f"seeded lower bound {h.m} from the parity construction"


def _bfs_chunk(task) -> dict:
    (n, r, k, mode, floor, target, mindeg, budget, reps) = task
    uni = Universe(n, r)
    search = _ClosureBFS(uni, k, mode, target,
                         require_min_degree=mindeg, budget=budget)
    search.best = floor
    children: list[tuple[tuple, int]] = []
    pending: list[int] = []
    exhausted = False
    for idx, mask in enumerate(reps):
        try:
            for child in search.process(mask, floor if mode == "max" else target):
                children.append((uni.canon(child), child))
        except BudgetExhausted:
            pending = list(reps[idx:])
            exhausted = True
            break
    return {
        "children": sorted(children),
        "best": search.best,
        "best_masks": sorted(set(search.best_masks)),
        "census": sorted(search.census_masks),
        "stats": search.stats,
        "exhausted": exhausted,
        "pending": pending,
    }


def _run_closure_bfs(n: int, r: int, k: int, mode: str, target: int,
                     mindeg: int, budget: int | None, workers: int,
                     resume: dict | None = None) -> dict:
    """Shared level-BFS driver; deterministic and worker-count independent
    (chunking and merging never depend on the worker count)."""
    uni = Universe(n, r)
    if resume is not None:
        level_masks = [int(m) for m in resume["level_masks"]]
        best = int(resume["best"])
        best_masks = {int(m) for m in resume["best_masks"]}
        census: set[int] = {int(m) for m in resume["census"]}
    else:
        level_masks = [0]
        best = target
        best_masks = set()
        census = set()
    stats = _SearchStats()
    remaining = budget
    exhausted = False
    pending: list[int] = []
    pool = _make_pool(workers)
    try:
        while level_masks and not exhausted:
            chunks = _chunked(level_masks, _LEVEL_CHUNKS)
            shares = [None] * len(chunks) if remaining is None else \
                [remaining // len(chunks)] * len(chunks)
            floor = max(target, best) if mode == "max" else target
            tasks = [(n, r, k, mode, floor, target, mindeg, share, chunk)
                     for chunk, share in zip(chunks, shares)]
            if pool is None:
                results = [_bfs_chunk(t) for t in tasks]
            else:
                results = list(pool.map(_bfs_chunk, tasks))
            nxt: dict[tuple, int] = {}
            for res in results:
                stats.merge(res["stats"])
                census.update(res["census"])
                if res["exhausted"]:
                    exhausted = True
                    pending.extend(res["pending"])
                if res["best"] > best:
                    best = res["best"]
                    best_masks = set(res["best_masks"])
                elif res["best"] == best:
                    best_masks.update(res["best_masks"])
                for key, mask in res["children"]:
                    if key not in nxt:
                        nxt[key] = mask
            if remaining is not None:
                remaining -= sum(res["stats"].nodes for res in results)
            if exhausted:
                pending.extend(nxt.values())
                break
            level_masks = [nxt[key] for key in sorted(nxt)]
    finally:
        if pool is not None:
            pool.shutdown()
    if mode == "max":
        # drop stale ties recorded before the floor rose
        best_masks = {m for m in best_masks if m.bit_count() == best}
    return {
        "best": best,
        "best_masks": sorted(best_masks),
        "census": sorted(census),
        "stats": stats,
        "exhausted": exhausted,
        "pending": sorted(set(pending)),
    }


def exconn_bruteforce(n: int, r: int, k: int,
                      budget: int | None = None,
                      workers: int = 1,
                      checkpoint: dict | None = None) -> SearchReport:
    """Exact maximum edge count of a connected n-vertex r-uniform
    hypergraph with no Berge path of length k, with every extremal
    hypergraph up to isomorphism.

    The value is exact when ``exhaustive`` is true; under a budget the
    report is flagged partial and carries a resumable checkpoint.
    """
    if k < 1:
        raise InvalidParams(f"path length must be >= 1, got {k}")
    uni = Universe(n, r)
    annotations = [note for note in (_constructions.regime_note(n, k, r),) if note]
    if n <= k:
        annotations.append(
            f"n={n} <= k={k}: no Berge path of length {k} fits in {n} vertices, "
            "so freeness is vacuous and the complete hypergraph is extremal")
    seed, seed_note = _seed_lower_bound(n, r, k)
    if seed_note:
        annotations.append(seed_note)
    out = _run_closure_bfs(n, r, k, "max", target=max(seed, 0), mindeg=0,
                           budget=budget, workers=workers, resume=checkpoint)
    merged_best = out["best"]
    merged_masks = out["best_masks"]
    exhausted = out["exhausted"]
    value: int | None
    witnesses: list[Hypergraph] = []
    if merged_masks:
        value = merged_best
        seen: set[tuple] = set()
        for mask in merged_masks:
            key = uni.canon(mask)
            if key not in seen:
                seen.add(key)
                witnesses.append(Hypergraph(n=n, r=r, edges=key[1]))
        witnesses.sort(key=lambda h: h.edges)
    elif seed > 0 or exhausted:
        value = merged_best
        if seed > 0:
            annotations.append("witness collection incomplete: value from seeding")
    elif uni.connected_spanning(0):
        value = 0
        witnesses = [uni.hypergraph(0)]
    else:
        value = None
        annotations.append("no connected spanning path-free hypergraph exists")
    ckpt = None
    if exhausted:
        annotations.append("budget exhausted: value is a lower bound only")
        ckpt = {
            "level_masks": [int(m) for m in out["pending"]],
            "best": merged_best,
            "best_masks": [int(m) for m in merged_masks],
            "census": [],
        }
    return SearchReport(
        kind="exconn",
        params={"n": n, "r": r, "k": k},
        value=value,
        witnesses=witnesses,
        explored=out["stats"].as_dict(),
        budget_exhausted=exhausted,
        exhaustive=not exhausted,
        annotations=annotations,
        checkpoint=ckpt,
    )


# ---------------------------------------------------------------------------
# stability census

def verify_stability(n: int, r: int, k: int,
                     budget: int | None = None,
                     workers: int = 1) -> SearchReport:
    """Census of all connected min-degree-2 path-free n-vertex r-uniform
    hypergraphs above the stability threshold, each classified against
    the parity target class (core embedding for odd k, core-plus-block
    or core-plus-edge for even k).

    Desk parameters sit outside the proven regime, so non-conforming
    instances are data, not refutations; the report says so.
    """
    threshold = _constructions.stability_threshold(n, k, r)
    target = threshold + 1
    annotations = [note for note in (_constructions.regime_note(n, k, r),) if note]
    annotations.append(f"stability threshold |H2| = {threshold}; census requires > {threshold}")
    if n <= k:
        annotations.append(
            f"n={n} <= k={k}: freeness is vacuous at this size; census skipped "
            "(every dense hypergraph qualifies, which is not a stability statement)")
        return SearchReport(
            kind="stability_census", params={"n": n, "r": r, "k": k},
            value=threshold, witnesses=[], explored=_SearchStats().as_dict(),
            budget_exhausted=False, exhaustive=True, annotations=annotations)
    uni = Universe(n, r)
    out = _run_closure_bfs(n, r, k, "census", target=target, mindeg=2,
                           budget=budget, workers=workers)
    stats = out["stats"]
    exhausted = out["exhausted"]
    reps: dict[tuple, int] = {}
    for mask in out["census"]:
        key = uni.canon(mask)
        if key not in reps:
            reps[key] = mask
    instances = []
    counts = {"conforming": 0, "non_conforming": 0}
    a_target = (k - 1) // 2
    for key in sorted(reps, key=lambda key: (-len(key[1]), key[1])):
        h = Hypergraph(n=n, r=r, edges=key[1])
        cert = None
        if k % 2 == 1:
            cert = _classifier.embeds_in_core(h, a_target)
        else:
            cert = _classifier.embeds_in_core_block(h, a_target, (2,))
            if cert is None:
                cert = _classifier.embeds_in_core_plus(h, a_target)
        verdict = "conforming" if cert is not None else "non_conforming"
        counts[verdict] += 1
        instances.append({
            "edges": [list(e) for e in h.edges],
            "edge_count": h.m,
            "verdict": verdict,
            "certificate": json.loads(cert.to_json()) if cert else None,
        })
    annotations.append(
        f"census: {counts['conforming']} conforming, "
        f"{counts['non_conforming']} non-conforming")
    if exhausted:
        annotations.append("budget exhausted: census may be incomplete")
    return SearchReport(
        kind="stability_census",
        params={"n": n, "r": r, "k": k},
        value=threshold,
        witnesses=[],
        explored=stats.as_dict(),
        budget_exhausted=exhausted,
        exhaustive=not exhausted,
        annotations=annotations,
        instances=instances,
    )


# ---------------------------------------------------------------------------
# longest-cycle structural audit

def audit_lemma1(n: int, r: int, max_n: int | None = None,
                 workers: int = 1) -> SearchReport:
    """Audit the three longest-cycle structure facts on every connected
    min-degree-2 isomorphism class on exactly n vertices whose longest
    Berge path and longest Berge cycle have equal length.

    Any counterexample is reported verbatim; on correct search code the
    expected count is zero (the facts are theorems).
    """
    classes = instances = 0
    skipped_structure = skipped_hypothesis = 0
    cycles_audited = 0
    counterexamples: list[dict] = []
    for h in enumerate_hypergraphs(n, r, max_n=max_n, workers=workers):
        classes += 1
        if not is_connected(h) or (h.n > 1 and min_degree(h) < 2):
            skipped_structure += 1
            continue
        lp, _ = longest_berge_path(h)
        lc, _ = longest_berge_cycle(h)
        if lc == 0 or lp != lc:
            skipped_hypothesis += 1
            continue
        instances += 1
        ell_minus_1 = lc
        _, cycles = maximum_cycles(h)
        for seq, defining in cycles:
            cycles_audited += 1
            bad = _audit_one_cycle(h, seq, defining, ell_minus_1, has_berge_cycle)
            for item in bad:
                item["hypergraph"] = [list(e) for e in h.edges]
                item["cycle"] = list(seq)
                item["defining"] = sorted([list(e) for e in defining])
                counterexamples.append(item)
    report = SearchReport(
        kind="lemma_audit",
        params={"n": n, "r": r},
        value=len(counterexamples),
        witnesses=[],
        explored={
            "classes": classes,
            "instances_audited": instances,
            "skipped_structure": skipped_structure,
            "skipped_hypothesis": skipped_hypothesis,
            "cycles_audited": cycles_audited,
        },
        budget_exhausted=False,
        exhaustive=True,
        annotations=[],
        instances=counterexamples,
    )
    return report


def _audit_one_cycle(h: Hypergraph, seq: tuple[int, ...], defining: frozenset[Edge],
                     ell_minus_1: int, has_cycle) -> list[dict]:
    out: list[dict] = []
    vset = set(seq)
    outside = set(range(1, h.n + 1)) - vset
    non_defining = [e for e in h.edges if e not in defining]
    for e in non_defining:
        if len(set(e) & outside) > 1:
            out.append({"check": "outside_vertices", "edge": list(e)})
    t = len(seq)
    for i in range(t):
        vi, vj = seq[i], seq[(i + 1) % t]
        s1 = [e for e in non_defining if vi in e and (set(e) & outside)]
        s2 = [e for e in non_defining if vj in e and (set(e) & outside)]
        if s1 and s2 and len(set(s1) | set(s2)) >= 2:
            out.append({"check": "consecutive_attachment",
                        "pair": [vi, vj],
                        "edges": sorted([list(e) for e in set(s1) | set(s2)])})
    for i in range(t):
        prev_v, vi, next_v = seq[(i - 1) % t], seq[i], seq[(i + 1) % t]
        for v in sorted(outside):
            h1s = [e for e in non_defining if v in e and prev_v in e]
            h2s = [e for e in non_defining if v in e and next_v in e]
            premise = any(e1 != e2 for e1 in h1s for e2 in h2s)
            if premise:
                if has_cycle(h, ell_minus_1, avoid=(vi,)) is None:
                    out.append({"check": "rotation", "vertex": v, "skip": vi})
    return out
