"""Pure-Python budget DP kernels.

Reference implementations of the hot inner loops; the Cython build in
``dp_cy.pyx`` mirrors these exactly.  Selected at import time by
``secroute._kernels``.
"""
from __future__ import annotations

import numpy as np

BACKEND = "python"


def budget_dp(n, b_max, s, eu, ev, ew, ec1):
    """Fill the (node, budget) table of cheapest additive costs.

    For every node v and budget b, cost[v, b] is the minimum sum of c1 over
    walks from s to v whose integer c2 weights sum to exactly b.  Zero-weight
    edges are relaxed to a fixpoint within each budget level (at most n
    passes, which suffices for simple-path optima).

    Returns (cost, hops, parent_edge, parent_b); parent_edge is -1 where no
    walk exists.
    """
    cost = np.full((n, b_max + 1), np.inf)
    hops = np.full((n, b_max + 1), 2**30, dtype=np.int32)
    parent_edge = np.full((n, b_max + 1), -1, dtype=np.int32)
    parent_b = np.full((n, b_max + 1), -1, dtype=np.int32)
    cost[s, 0] = 0.0
    hops[s, 0] = 0
    m = len(eu)
    zero_edges = [e for e in range(m) if ew[e] == 0]
    pos_edges = [e for e in range(m) if ew[e] > 0]

    for b in range(b_max + 1):
        for _ in range(n):
            changed = False
            for e in zero_edges:
                u, v = eu[e], ev[e]
                t = cost[u, b] + ec1[e]
                h = hops[u, b] + 1
                if t < cost[v, b] or (t == cost[v, b] and h < hops[v, b]):
                    cost[v, b] = t
                    hops[v, b] = h
                    parent_edge[v, b] = e
                    parent_b[v, b] = b
                    changed = True
            if not changed:
                break
        for e in pos_edges:
            nb = b + ew[e]
            if nb > b_max:
                continue
            u, v = eu[e], ev[e]
            t = cost[u, b] + ec1[e]
            h = hops[u, b] + 1
            if t < cost[v, nb] or (t == cost[v, nb] and h < hops[v, nb]):
                cost[v, nb] = t
                hops[v, nb] = h
                parent_edge[v, nb] = e
                parent_b[v, nb] = b
    return cost, hops, parent_edge, parent_b


def hop_budget_dp(n, b_max, h_max, s, d, eu, ev, ew, ec1):
    """Cost-only layered DP: dest_cost[h, b] is the cheapest biased-c1 sum
    over walks from s to d with exactly h hops and budget exactly b.

    Edges into s and out of d are ignored, matching the layered expansion.
    """
    cur = np.full((n, b_max + 1), np.inf)
    cur[s, 0] = 0.0
    dest = np.full((h_max + 1, b_max + 1), np.inf)
    m = len(eu)
    for h in range(1, h_max + 1):
        nxt = np.full((n, b_max + 1), np.inf)
        for e in range(m):
            u, v = eu[e], ev[e]
            if v == s or u == d:
                continue
            nb_lo = ew[e]
            if nb_lo > b_max:
                continue
            cand = cur[u, : b_max + 1 - nb_lo] + ec1[e]
            np.minimum(nxt[v, nb_lo:], cand, out=nxt[v, nb_lo:])
        dest[h] = nxt[d]
        cur = nxt
    return dest


def hop_budget_dp_path(n, b_max, h_target, s, d, eu, ev, ew, ec1):
    """Parent-tracked layered DP up to layer ``h_target``.

    Returns (cost, parent_edge) with shape (h_target + 1, n, b_max + 1);
    predecessors are recovered as (h - 1, eu[e], b - ew[e]).
    """
    cost = np.full((h_target + 1, n, b_max + 1), np.inf)
    parent_edge = np.full((h_target + 1, n, b_max + 1), -1, dtype=np.int32)
    cost[0, s, 0] = 0.0
    m = len(eu)
    for h in range(1, h_target + 1):
        for e in range(m):
            u, v = eu[e], ev[e]
            if v == s or u == d:
                continue
            w = ew[e]
            for b in range(w, b_max + 1):
                t = cost[h - 1, u, b - w] + ec1[e]
                if t < cost[h, v, b]:
                    cost[h, v, b] = t
                    parent_edge[h, v, b] = e
    return cost, parent_edge
