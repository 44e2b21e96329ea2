"""The epsilon-approximate routing scheme.

Negative additive weights are removed by a hop-layered network expansion
plus a uniform bias: every path to the h-th replica of the destination has
exactly h hops, so the bias adds a constant h*delta that can be subtracted
afterwards.  A restricted-shortest-path (RSP) subroutine is then swept over
a geometric grid of budget bounds; the best (bound, hops) combination is an
(1+epsilon)-optimal answer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InfeasibleError, InvalidParameterError, UnreachableError
from .routing import CostGraph, QuantizedGraph, RouteResult, _edge_arrays, _finish_route, _heuristic_upper_bound


@dataclass(frozen=True)
class XEdge:
    u: int
    v: int
    c1: float
    delay: int
    base_id: int


@dataclass(frozen=True)
class ExpandedGraph:
    """Hop-layered replica graph with bias-shifted non-negative c1 weights.

    Expanded node ids are ``h * n + u`` where h is the layer; the source
    lives in layer 0 only, every other node has replicas in layers 1..n-1.
    """

    base: QuantizedGraph
    source: int
    delta: float
    edges: tuple[XEdge, ...]

    @property
    def n_exp(self) -> int:
        return self.base.base.n * self.base.base.n

    def node_id(self, u: int, h: int) -> int:
        return h * self.base.base.n + u

    def layer_of(self, node: int) -> int:
        return node // self.base.base.n


@dataclass(frozen=True)
class RSPQuery:
    graph: ExpandedGraph
    source: int
    target: int
    delay_bound: int
    epsilon: float

    def __post_init__(self):
        if self.delay_bound < 0:
            raise InvalidParameterError("delay bound must be non-negative")
        if self.epsilon <= 0.0:
            raise InvalidParameterError("epsilon must be positive")


@dataclass(frozen=True)
class RSPResult:
    status: str  # "ok" | "infeasible" | "unreachable"
    path: tuple[int, ...] = ()
    edge_ids: tuple[int, ...] = ()
    cost: float = math.inf
    delay: int = 0


def expand_network(qgraph: QuantizedGraph, s: int, d: int | None = None) -> ExpandedGraph:
    """Materialize the layered expansion of a quantized cost graph.

    Edges go strictly from layer h-1 to layer h; edges into the source and
    (when ``d`` is given) out of the destination are dropped.  All biased c1
    weights are non-negative.
    """
    g = qgraph.base
    delta = max(0.0, -min((e.c1 for e in g.edges), default=0.0))
    out: list[XEdge] = []
    for i, e in enumerate(g.edges):
        if e.v == s or (d is not None and e.u == d):
            continue
        w = qgraph.int_c2[i]
        if e.u == s:
            out.append(XEdge(s, g.n + e.v, e.c1 + delta, w, i))
        else:
            for h in range(1, g.n - 1):
                out.append(XEdge(h * g.n + e.u, (h + 1) * g.n + e.v, e.c1 + delta, w, i))
    return ExpandedGraph(base=qgraph, source=s, delta=delta, edges=tuple(out))


def epsilon_rsp(query: RSPQuery, mode: str = "exact") -> RSPResult:
    """Restricted shortest path on the expanded graph.

    Contract: the returned path's delay respects the bound and its cost is
    within (1+epsilon) of the cheapest delay-feasible path.  The exact mode
    is a (node, delay) product-graph Dijkstra; the rounding mode floors
    costs to multiples of eps*C_lb/N and runs the budget DP over rounded
    cost, the classic FPTAS trade.
    """
    xg = query.graph
    if mode == "rounding":
        return _rsp_rounding(query)
    if mode != "exact":
        raise InvalidParameterError(f"unknown RSP mode {mode!r}")

    adj: dict[int, list[int]] = {}
    for i, e in enumerate(xg.edges):
        adj.setdefault(e.u, []).append(i)
    import heapq

    dist: dict[tuple[int, int], float] = {(query.source, 0): 0.0}
    prev: dict[tuple[int, int], tuple[tuple[int, int], int]] = {}
    heap = [(0.0, query.source, 0)]
    best: tuple[int, int] | None = None
    reachable = query.source == query.target
    while heap:
        c, u, b = heapq.heappop(heap)
        if c > dist.get((u, b), math.inf):
            continue
        if u == query.target:
            best = (u, b)
            break
        for i in adj.get(u, ()):
            e = xg.edges[i]
            nb = b + e.delay
            if nb > query.delay_bound:
                continue
            nc = c + e.c1
            if nc < dist.get((e.v, nb), math.inf):
                dist[(e.v, nb)] = nc
                prev[(e.v, nb)] = ((u, b), i)
                heapq.heappush(heap, (nc, e.v, nb))
    if best is None:
        # distinguish "no path at all" from "no path within the bound"
        seen = {query.source}
        stack = [query.source]
        while stack:
            u = stack.pop()
            for i in adj.get(u, ()):
                v = xg.edges[i].v
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        status = "infeasible" if query.target in seen else "unreachable"
        return RSPResult(status=status)

    nodes = [best[0]]
    edge_ids = []
    state = best
    while state in prev:
        state, i = prev[state]
        nodes.append(state[0])
        edge_ids.append(i)
    return RSPResult(
        status="ok",
        path=tuple(reversed(nodes)),
        edge_ids=tuple(reversed(edge_ids)),
        cost=dist[best],
        delay=best[1],
    )


def _rsp_rounding(query: RSPQuery) -> RSPResult:
    xg = query.graph
    exact = epsilon_rsp(query, mode="exact")  # status probing and fallback bounds
    if exact.status != "ok":
        return exact
    c_lb_path = _unconstrained_min_cost(xg, query.source, query.target)
    n = xg.base.base.n
    theta = query.epsilon * c_lb_path / max(n, 1)
    if theta <= 0.0:
        return exact
    eu = np.array([e.u for e in xg.edges], dtype=np.int32)
    ev = np.array([e.v for e in xg.edges], dtype=np.int32)
    rounded = np.array([int(e.c1 / theta) for e in xg.edges], dtype=np.int32)
    delays = np.array([float(e.delay) for e in xg.edges], dtype=np.float64)
    r_cap = int(exact.cost / theta) + n
    # budget DP with roles swapped: budget axis is rounded cost, additive
    # metric is delay; the smallest rounded cost whose min delay fits wins.
    n_exp = xg.n_exp
    cost, hops, parent_edge, parent_b = _kernels.budget_dp(
        n_exp, r_cap, query.source, eu, ev, rounded, delays
    )
    for r in range(r_cap + 1):
        if cost[query.target, r] <= query.delay_bound:
            edge_ids = []
            v, b = query.target, r
            while not (v == query.source and parent_edge[v, b] == -1):
                i = int(parent_edge[v, b])
                edge_ids.append(i)
                v, b = xg.edges[i].u, int(parent_b[v, b])
            edge_ids.reverse()
            nodes = (query.source,) + tuple(xg.edges[i].v for i in edge_ids)
            return RSPResult(
                status="ok",
                path=nodes,
                edge_ids=tuple(edge_ids),
                cost=sum(xg.edges[i].c1 for i in edge_ids),
                delay=int(sum(xg.edges[i].delay for i in edge_ids)),
            )
    return RSPResult(status="infeasible")  # pragma: no cover


def _unconstrained_min_cost(xg: ExpandedGraph, s: int, t: int) -> float:
    import heapq

    adj: dict[int, list[XEdge]] = {}
    for e in xg.edges:
        adj.setdefault(e.u, []).append(e)
    dist = {s: 0.0}
    heap = [(0.0, s)]
    while heap:
        c, u = heapq.heappop(heap)
        if c > dist.get(u, math.inf):
            continue
        if u == t:
            return c
        for e in adj.get(u, ()):
            nc = c + e.c1
            if nc < dist.get(e.v, math.inf):
                dist[e.v] = nc
                heapq.heappush(heap, (nc, e.v))
    return math.inf


def budget_sweep(epsilon: float, b_max: int) -> list[int]:
    """Delay bounds tried by the approximation: all small integers exactly,
    then a geometric (1 + epsilon/3) grid up to at least ``b_max``.

    The dense small-integer prefix removes the ceiling slack of the
    geometric grid where it would otherwise exceed the (1+epsilon) budget.
    """
    eta = epsilon / 3.0
    slack = math.sqrt(1.0 + epsilon) - (1.0 + eta)
    dense_hi = b_max if slack <= 0.0 else min(b_max, int(math.ceil(1.0 / slack)))
    bounds = set(range(0, dense_hi + 1))
    val = 1.0 + eta
    while True:
        b = math.ceil(val)
        bounds.add(min(b, b_max) if b > b_max else b)
        if b >= b_max:
            break
        val *= 1.0 + eta
    return sorted(b for b in bounds if b <= b_max)


def sweep_length(epsilon: float, b_max: int) -> int:
    """Number of geometric grid points: the L of the budget sweep."""
    eta = epsilon / 3.0
    length = 1
    val = 1.0 + eta
    while math.ceil(val) < b_max:
        val *= 1.0 + eta
        length += 1
    return length


def epsilon_smer(
    qgraph: QuantizedGraph,
    s: int,
    d: int,
    epsilon: float,
    pi: float | None = None,
    params=None,
    prune: bool = True,
) -> RouteResult:
    """(1+epsilon)-optimal routing via the layered expansion and RSP sweep.

    The expansion is materialized lazily: a rolling hop-and-budget DP plays
    the role of the per-(bound, hops) RSP calls, and prefix minima over the
    budget axis answer every bound of the sweep at once.
    """
    if not 0.0 < epsilon < 3.0:
        raise InvalidParameterError(f"epsilon must be in (0, 3), got {epsilon}")
    if s == d:
        raise InvalidParameterError("source equals destination")
    g, q = qgraph.base, qgraph.q
    n = g.n
    if not g.edges:
        raise UnreachableError("empty graph")
    delta = max(0.0, -min(e.c1 for e in g.edges))

    b_table = qgraph.bound
    if prune:
        ub = _heuristic_upper_bound(qgraph, s, d)
        if math.isfinite(ub):
            c1_min = min(e.c1 for e in g.edges)
            c1_lb = (n - 1) * min(c1_min, 0.0)
            b_table = min(b_table, int(math.sqrt(max(ub - c1_lb, 0.0)) / q) + 1)

    eu, ev, ew, ec1 = _edge_arrays(qgraph)
    dest = _kernels.hop_budget_dp(n, b_table, n - 1, s, d, eu, ev, ew, ec1 + delta)
    prefix = np.minimum.accumulate(dest, axis=1)

    best = None  # (cost, hops, bound)
    for bound in budget_sweep(epsilon, b_table):
        cap = min(bound, b_table)
        for h in range(1, n):
            c = prefix[h, cap]
            if not math.isfinite(c):
                continue
            total = (c - h * delta) + (q * bound) ** 2
            key = (total, h, bound)
            if best is None or key < best:
                best = key
    if best is None:
        raise UnreachableError(f"no path from {s} to {d} within budget {b_table}")
    total, h_star, bound_star = best
    cap = min(bound_star, b_table)

    cost, parent_edge = _kernels.hop_budget_dp_path(n, cap, h_star, s, d, eu, ev, ew, ec1 + delta)
    b_at = int(np.argmin(cost[h_star, d, : cap + 1]))
    edge_ids = []
    v, b = d, b_at
    for h in range(h_star, 0, -1):
        e = int(parent_edge[h, v, b])
        edge_ids.append(e)
        v, b = g.edges[e].u, b - qgraph.int_c2[e]
    edge_ids.reverse()
    result = _finish_route(
        qgraph, edge_ids, total, bound_star, f"{epsilon:g}-smer", pi, params
    )
    return result
