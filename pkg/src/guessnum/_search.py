"""Bitset branch-and-bound primitives shared by the exact solvers.

Graphs are given as one adjacency bitmask per vertex (no self-bits).
All searches are deterministic: pivots are lowest-index, value choices
ascending, so reported witnesses are reproducible.
"""

from __future__ import annotations

import sys

sys.setrecursionlimit(100_000)


def _clique_cover_bound(rows, candidates):
    # Greedy partition of the candidate set into cliques; an independent
    # set meets each clique at most once, so the count bounds it.
    cliques = 0
    remaining = candidates
    while remaining:
        cliques += 1
        low = remaining & -remaining
        v = low.bit_length() - 1
        remaining ^= low
        grow = remaining & rows[v]
        while grow:
            low = grow & -grow
            u = low.bit_length() - 1
            remaining ^= low
            grow = (grow ^ low) & rows[u]
    return cliques


def max_independent_set(rows, n, cover_masks=None, seed_mask=0, node_budget=None):
    """Exact maximum independent set on a bitmask graph.

    ``cover_masks``: optional precomputed clique cover; the number of
    cover classes meeting the candidate set bounds the branch.  Without
    one, a greedy clique cover is rebuilt per node.  ``seed_mask`` is a
    known independent set used only to tighten the initial bound; the
    returned witness is the lexicographically smallest optimum (as a
    sorted vertex tuple).

    Returns (size, witness_mask, exact).
    """
    if n == 0:
        return 0, 0, True
    best_size = seed_mask.bit_count() - 1 if seed_mask else 0
    best_mask = seed_mask
    nodes = 0
    exhausted = False

    if cover_masks is not None:
        def bound(candidates):
            return sum(1 for cm in cover_masks if cm & candidates)
    else:
        def bound(candidates):
            return _clique_cover_bound(rows, candidates)

    def dfs(size, mask, candidates):
        nonlocal best_size, best_mask, nodes, exhausted
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            exhausted = True
            return
        if not candidates:
            if size > best_size:
                best_size, best_mask = size, mask
            return
        if size + bound(candidates) <= best_size:
            return
        low = candidates & -candidates
        v = low.bit_length() - 1
        dfs(size + 1, mask | low, candidates & ~rows[v] & ~low)
        if exhausted:
            return
        dfs(size, mask, candidates ^ low)

    dfs(0, 0, (1 << n) - 1)
    if best_mask == seed_mask and seed_mask:
        best_size = seed_mask.bit_count()
    return best_size, best_mask, not exhausted


def max_clique_size_lower(rows, n):
    """Greedy clique, a cheap lower bound for chromatic searches."""
    best = 0
    for start in range(n):
        cand = rows[start]
        size = 1
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            size += 1
            cand &= rows[v]
        best = max(best, size)
    return best


def greedy_dsatur(rows, n):
    """DSATUR greedy colouring; ties broken by lowest vertex index."""
    colors = [-1] * n
    neighbor_colors = [set() for _ in range(n)]
    degrees = [rows[v].bit_count() for v in range(n)]
    uncolored = set(range(n))
    while uncolored:
        v = max(uncolored, key=lambda u: (len(neighbor_colors[u]), degrees[u], -u))
        c = 0
        while c in neighbor_colors[v]:
            c += 1
        colors[v] = c
        uncolored.discard(v)
        m = rows[v]
        while m:
            low = m & -m
            w = low.bit_length() - 1
            if colors[w] < 0:
                neighbor_colors[w].add(c)
            m ^= low
    return colors


def find_k_coloring(rows, n, k, node_budget=None):
    """Backtracking search for a proper k-colouring (DSATUR order).

    Returns (colouring_or_None, complete).  A None with complete=True is
    a proof that no k-colouring exists; with complete=False the budget
    ran out first (budget None = complete search).
    """
    colors = [-1] * n
    neighbor_colors = [set() for _ in range(n)]
    degrees = [rows[v].bit_count() for v in range(n)]
    nodes = 0
    exhausted = False

    def pick():
        best_v = -1
        best_key = None
        for v in range(n):
            if colors[v] >= 0:
                continue
            key = (len(neighbor_colors[v]), degrees[v], -v)
            if best_key is None or key > best_key:
                best_key = key
                best_v = v
        return best_v

    def assign(v, c):
        colors[v] = c
        touched = []
        m = rows[v]
        while m:
            low = m & -m
            w = low.bit_length() - 1
            if colors[w] < 0 and c not in neighbor_colors[w]:
                neighbor_colors[w].add(c)
                touched.append(w)
            m ^= low
        return touched

    def undo(v, c, touched):
        colors[v] = -1
        for w in touched:
            neighbor_colors[w].discard(c)

    def backtrack(colored, used):
        nonlocal nodes, exhausted
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            exhausted = True
            return False
        if colored == n:
            return True
        v = pick()
        limit = min(used + 1, k)
        for c in range(limit):
            if c in neighbor_colors[v]:
                continue
            touched = assign(v, c)
            if backtrack(colored + 1, max(used, c + 1)):
                return True
            undo(v, c, touched)
            if exhausted:
                return False
        return False

    if backtrack(0, 0):
        return list(colors), True
    return None, not exhausted


def exact_chromatic(rows, n, lower, initial_coloring, node_budget=None):
    """Iterative deepening from ``lower`` up to the initial colouring.

    Returns (count, colouring, exact).  exact=False means the budget ran
    out before minimality could be certified; the reported colouring is
    still proper, so the count stays a valid upper bound.
    """
    best = list(initial_coloring)
    best_k = max(best) + 1 if best else 0
    if n == 0:
        return 0, [], True
    k = max(lower, 1)
    certified = True
    while k < best_k:
        col, complete = find_k_coloring(rows, n, k, node_budget=node_budget)
        if col is not None:
            return k, col, certified
        if not complete:
            certified = False
            break
        k += 1
    return best_k, best, certified
