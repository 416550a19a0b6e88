"""Independent brute-force oracles used to pin expected values.

Everything here enumerates alternating sequences or permutation orbits
directly, with no shared machinery with the package's search engines.
"""

from __future__ import annotations

import itertools

from bergeturan.hypercore import Hypergraph


def pair_edge_index(h: Hypergraph) -> dict[tuple[int, int], list[int]]:
    idx: dict[tuple[int, int], list[int]] = {}
    for i, e in enumerate(h.edges):
        for u, v in itertools.permutations(e, 2):
            idx.setdefault((u, v), []).append(i)
    return idx


def naive_longest_berge_path(h: Hypergraph) -> int:
    """Direct enumeration of every alternating vertex/edge sequence."""
    idx = pair_edge_index(h)
    best = 0

    def rec(seq: list[int], used: set[int]) -> None:
        nonlocal best
        best = max(best, len(seq) - 1)
        for u in range(1, h.n + 1):
            if u in seq:
                continue
            for ei in idx.get((seq[-1], u), ()):
                if ei not in used:
                    used.add(ei)
                    rec(seq + [u], used)
                    used.remove(ei)
                    break_after = False
            # different covering edges explore the same extension; one
            # success per (u, ei) suffices for length but all must recurse
        return

    # all starting vertices
    for v in range(1, h.n + 1):
        rec([v], set())
    return best


def naive_longest_berge_cycle(h: Hypergraph) -> int:
    idx = pair_edge_index(h)
    best = 0

    def rec(seq: list[int], used: set[int]) -> None:
        nonlocal best
        if len(seq) >= 2:
            for ei in idx.get((seq[-1], seq[0]), ()):
                if ei not in used:
                    best = max(best, len(seq))
                    break
        for u in range(1, h.n + 1):
            if u in seq:
                continue
            for ei in idx.get((seq[-1], u), ()):
                if ei not in used:
                    used.add(ei)
                    rec(seq + [u], used)
                    used.remove(ei)

    for v in range(1, h.n + 1):
        rec([v], set())
    return best


def orbit_class_count(n: int, r: int, max_edges: int | None = None,
                      predicate=None) -> int:
    """Isomorphism classes of edge subsets by explicit permutation orbits."""
    universe = list(itertools.combinations(range(1, n + 1), r))
    perms = list(itertools.permutations(range(1, n + 1)))
    seen: set[frozenset] = set()
    count = 0
    top = len(universe) if max_edges is None else min(max_edges, len(universe))
    for size in range(top + 1):
        for combo in itertools.combinations(universe, size):
            s = frozenset(combo)
            if s in seen:
                continue
            if predicate is not None:
                h = Hypergraph(n=n, r=r, edges=tuple(sorted(combo)))
                if not predicate(h):
                    continue
            for perm in perms:
                seen.add(frozenset(
                    tuple(sorted(perm[v - 1] for v in e)) for e in combo))
            count += 1
    return count


def all_labeled_hypergraphs(n: int, r: int, max_edges: int | None = None):
    universe = list(itertools.combinations(range(1, n + 1), r))
    top = len(universe) if max_edges is None else min(max_edges, len(universe))
    for size in range(top + 1):
        for combo in itertools.combinations(universe, size):
            yield Hypergraph(n=n, r=r, edges=tuple(sorted(combo)))
