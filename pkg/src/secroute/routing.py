"""Exact routing.

DP-SMER finds the path minimizing ``sum(c1) + (sum(c2))**2`` by iterating a
(node, budget) dynamic program over quantized c2 weights.  SASP is the
security-agnostic baseline: shortest path in source power, with the secrecy
budget allocated only afterwards.  The Partition-gadget generator provides
adversarial instances whose optimal cost is known in closed form.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .channel import ChannelParams, source_power
from .errors import InvalidParameterError, UnreachableError
from .linkcost import LinkSpec
from .pathcost import PathSpec, SecrecyAllocation, allocate_secrecy, jam_power_on_path, path_cost


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    c1: float
    c2: float
    link: LinkSpec | None = None

    def __post_init__(self):
        if self.u == self.v:
            raise InvalidParameterError("self-loops are forbidden")
        if self.c2 < 0.0:
            raise InvalidParameterError(f"c2 must be non-negative, got {self.c2}")


@dataclass
class CostGraph:
    """Directed multigraph with (c1, c2) edge weights."""

    n: int
    edges: list[Edge] = field(default_factory=list)

    def add_edge(self, u, v, c1, c2, link=None):
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InvalidParameterError(f"edge ({u}, {v}) outside node range")
        self.edges.append(Edge(u, v, c1, c2, link))


@dataclass(frozen=True)
class QuantizedGraph:
    """A cost graph with c2 weights rounded to integer multiples of ``q``."""

    base: CostGraph
    q: float
    int_c2: tuple[int, ...]
    bound: int
    degenerate: bool = False


@dataclass(frozen=True)
class RouteResult:
    path: tuple[int, ...]
    total_cost: float
    algorithm: str
    edges: tuple[Edge, ...] = ()
    quantized_cost: float | None = None
    budget_used: int | None = None
    allocation: SecrecyAllocation | None = None
    jam_powers: tuple[float, ...] | None = None
    source_powers: tuple[float, ...] | None = None

    @property
    def hops(self) -> int:
        return len(self.edges)


def default_quantum(graph: CostGraph, resolution: int = 200) -> float:
    """Quantum keeping the relative quantization error on (sum c2)^2 near 1%."""
    c2_max = max((e.c2 for e in graph.edges), default=0.0)
    if c2_max == 0.0:
        return 1.0
    return c2_max / (resolution * max(graph.n - 1, 1))


def quantize(graph: CostGraph, q: float) -> QuantizedGraph:
    """Round every c2 to the nearest multiple of ``q``; B is the trivial bound."""
    if q <= 0.0:
        raise InvalidParameterError(f"quantum must be positive, got {q}")
    int_c2 = tuple(int(round(e.c2 / q)) for e in graph.edges)
    w_max = max(int_c2, default=0)
    bound = (graph.n - 1) * w_max
    degenerate = bool(graph.edges) and w_max == 0
    return QuantizedGraph(base=graph, q=q, int_c2=int_c2, bound=bound, degenerate=degenerate)


def quantized_objective(qgraph: QuantizedGraph, edge_ids: list[int]) -> float:
    """Objective of a concrete edge sequence in de-quantized units."""
    c1 = sum(qgraph.base.edges[e].c1 for e in edge_ids)
    b = sum(qgraph.int_c2[e] for e in edge_ids)
    return c1 + (qgraph.q * b) ** 2


def _edge_arrays(qgraph: QuantizedGraph):
    edges = qgraph.base.edges
    eu = np.array([e.u for e in edges], dtype=np.int32)
    ev = np.array([e.v for e in edges], dtype=np.int32)
    ew = np.array(qgraph.int_c2, dtype=np.int32)
    ec1 = np.array([e.c1 for e in edges], dtype=np.float64)
    return eu, ev, ew, ec1


def _dijkstra(n: int, edges, s: int, d: int, weight) -> list[int] | None:
    """Shortest path by non-negative edge weights; returns edge ids or None."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, e in enumerate(edges):
        adj[e.u].append((e.v, i))
    dist = [math.inf] * n
    prev: list[int | None] = [None] * n
    dist[s] = 0.0
    heap = [(0.0, s)]
    while heap:
        du, u = heapq.heappop(heap)
        if du > dist[u]:
            continue
        if u == d:
            break
        for v, i in adj[u]:
            nd = du + weight(edges[i])
            if nd < dist[v]:
                dist[v] = nd
                prev[v] = i
                heapq.heappush(heap, (nd, v))
    if not math.isfinite(dist[d]):
        return None
    out = []
    v = d
    while v != s:
        i = prev[v]
        out.append(i)
        v = edges[i].u
    return out[::-1]


def _heuristic_upper_bound(qgraph: QuantizedGraph, s: int, d: int) -> float:
    """Objective of any concrete s-d path, used to prune the budget sweep."""
    q = qgraph.q
    idx = {id(e): i for i, e in enumerate(qgraph.base.edges)}

    def weight(e: Edge) -> float:
        return max(e.c1, 0.0) + (q * qgraph.int_c2[idx[id(e)]]) ** 2

    path = _dijkstra(qgraph.base.n, qgraph.base.edges, s, d, weight)
    if path is None:
        return math.inf
    return quantized_objective(qgraph, path)


def dp_smer(
    qgraph: QuantizedGraph,
    s: int,
    d: int,
    pi: float | None = None,
    params: ChannelParams | None = None,
    prune: bool = True,
) -> RouteResult:
    """Exact pseudo-polynomial routing over the quantized graph.

    For every budget b the DP finds the cheapest sum of c1 among walks whose
    quantized c2 weights sum to b; the answer minimizes that plus the
    de-quantized squared term (q*b)**2.  With ``prune`` the budget sweep
    stops once (q*b)**2 alone exceeds a heuristic path's objective (valid
    whenever appending a link increases the path cost, which the physical
    cost model guarantees).
    """
    if s == d:
        raise InvalidParameterError("source equals destination")
    n, q = qgraph.base.n, qgraph.q
    b_eff = qgraph.bound
    if prune:
        ub = _heuristic_upper_bound(qgraph, s, d)
        if math.isfinite(ub):
            c1_min = min((e.c1 for e in qgraph.base.edges), default=0.0)
            c1_lb = (n - 1) * min(c1_min, 0.0)
            b_eff = min(b_eff, int(math.sqrt(max(ub - c1_lb, 0.0)) / q) + 1)

    eu, ev, ew, ec1 = _edge_arrays(qgraph)
    cost, hops, parent_edge, parent_b = _kernels.budget_dp(n, b_eff, s, eu, ev, ew, ec1)

    best = None
    for b in range(b_eff + 1):
        c = cost[d, b]
        if not math.isfinite(c):
            continue
        key = (c + (q * b) ** 2, int(hops[d, b]), b)
        if best is None or key < best:
            best = key
    if best is None:
        raise UnreachableError(f"no path from {s} to {d} within budget {b_eff}")
    total, _, b_star = best

    edge_ids = []
    v, b = d, b_star
    while not (v == s and parent_edge[v, b] == -1):
        e = int(parent_edge[v, b])
        if e < 0:
            raise UnreachableError("broken parent chain")  # pragma: no cover
        edge_ids.append(e)
        v, b = qgraph.base.edges[e].u, int(parent_b[v, b])
    edge_ids.reverse()
    return _finish_route(qgraph, edge_ids, total, b_star, "dp-smer", pi, params)


def _finish_route(qgraph, edge_ids, qcost, b_used, algorithm, pi, params) -> RouteResult:
    edges = tuple(qgraph.base.edges[e] for e in edge_ids)
    path = (edges[0].u,) + tuple(e.v for e in edges)
    total = qcost
    allocation = jam_powers = src_powers = None
    if params is not None and pi is not None and all(e.link is not None for e in edges):
        spec = PathSpec(links=tuple(e.link for e in edges))
        allocation = allocate_secrecy(params, spec, pi)
        jam_powers = jam_power_on_path(params, spec, pi)
        src_powers = tuple(source_power(params, l.length) for l in spec.links)
        total = path_cost(params, spec, pi).total
    return RouteResult(
        path=path,
        total_cost=total,
        algorithm=algorithm,
        edges=edges,
        quantized_cost=qcost,
        budget_used=b_used,
        allocation=allocation,
        jam_powers=jam_powers,
        source_powers=src_powers,
    )


def partition_gadget(values: list[int]) -> CostGraph:
    """Chain graph with parallel upper/lower edges encoding a Partition instance.

    With total 2K, the minimum routing objective between the chain ends is
    3*K**2 exactly when the values admit a perfect partition.
    """
    if not values or any(v <= 0 or v != int(v) for v in values):
        raise InvalidParameterError("values must be positive integers")
    total = sum(values)
    if total % 2 != 0:
        raise InvalidParameterError(f"values must have an even sum, got {total}")
    big_k = total // 2
    g = CostGraph(n=len(values) + 1)
    for i, k in enumerate(values):
        g.add_edge(i, i + 1, c1=2.0 * big_k * k, c2=0.0)
        g.add_edge(i, i + 1, c1=0.0, c2=float(k))
    return g


def sasp(
    params: ChannelParams,
    graph: CostGraph,
    s: int,
    d: int,
    pi: float,
) -> RouteResult:
    """Security-agnostic shortest path: minimize source power, then secure it.

    The path ignores eavesdroppers entirely; the secrecy budget and jamming
    powers are allocated optimally on the fixed path afterwards.
    """
    if any(e.link is None for e in graph.edges):
        raise InvalidParameterError("sasp requires edges carrying link specs")
    edge_ids = _dijkstra(
        graph.n, graph.edges, s, d, lambda e: source_power(params, e.link.length)
    )
    if edge_ids is None:
        raise UnreachableError(f"no path from {s} to {d}")
    edges = tuple(graph.edges[e] for e in edge_ids)
    spec = PathSpec(links=tuple(e.link for e in edges))
    allocation = allocate_secrecy(params, spec, pi)
    jam_powers = jam_power_on_path(params, spec, pi)
    src_powers = tuple(source_power(params, l.length) for l in spec.links)
    return RouteResult(
        path=(edges[0].u,) + tuple(e.v for e in edges),
        total_cost=path_cost(params, spec, pi).total,
        algorithm="sasp",
        edges=edges,
        allocation=allocation,
        jam_powers=jam_powers,
        source_powers=src_powers,
    )


def equal_allocation(path: PathSpec, pi: float) -> SecrecyAllocation:
    """Uniform split of the end-to-end budget across the path's links."""
    h = len(path.links)
    return SecrecyAllocation(pi_per_link=(pi / h,) * h)


def save_graph(graph: CostGraph, path: str) -> None:
    """Line-oriented text export: `nodes N` then `edge u v c1 c2` lines."""
    with open(path, "w") as f:
        f.write(f"nodes {graph.n}\n")
        for e in graph.edges:
            f.write(f"edge {e.u} {e.v} {e.c1:.12g} {e.c2:.12g}\n")


def load_graph(path: str) -> CostGraph:
    graph = None
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            tokens = line.split()
            if not tokens or tokens[0].startswith("#"):
                continue
            if tokens[0] == "nodes":
                graph = CostGraph(n=int(tokens[1]))
            elif tokens[0] == "edge":
                if graph is None:
                    raise InvalidParameterError(f"{path}:{lineno}: edge before nodes header")
                u, v = int(tokens[1]), int(tokens[2])
                graph.add_edge(u, v, float(tokens[3]), float(tokens[4]))
            else:
                raise InvalidParameterError(f"{path}:{lineno}: unknown record {tokens[0]!r}")
    if graph is None:
        raise InvalidParameterError(f"{path}: missing `nodes` header")
    return graph
