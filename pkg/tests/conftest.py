"""Shared random-instance builders for the test suite."""
from __future__ import annotations

import numpy as np
import pytest

from secroute.channel import ChannelParams, Point
from secroute.linkcost import EaveLocation, LinkSpec
from secroute.pathcost import PathSpec
from secroute.routing import CostGraph, quantize


@pytest.fixture
def params():
    return ChannelParams()


def rand_point(rng, lo=-3.0, hi=3.0) -> Point:
    return Point(float(rng.uniform(lo, hi)), float(rng.uniform(lo, hi)))


def rand_link(rng, params, n_eaves=1, src=None, dst=None, probs=None) -> LinkSpec:
    src = src or rand_point(rng)
    while dst is None or src == dst:
        dst = rand_point(rng)
    eaves = []
    for i in range(n_eaves):
        while True:
            e = rand_point(rng)
            if e != src and e != dst:
                break
        p = 1.0 if probs is None else probs[i]
        eaves.append(EaveLocation(e, p))
    jammers = []
    for _ in range(int(rng.integers(1, 4))):
        while True:
            j = rand_point(rng)
            if all(j != e.position for e in eaves):
                break
        jammers.append(j)
    return LinkSpec(source=src, dest=dst, eaves=tuple(eaves), jammers=tuple(jammers))


def rand_path(rng, params, n_links, n_eaves=1, probs=None) -> PathSpec:
    pts = [rand_point(rng)]
    while len(pts) < n_links + 1:
        p = rand_point(rng)
        if p != pts[-1]:
            pts.append(p)
    links = [
        rand_link(rng, params, n_eaves, src=a, dst=b, probs=probs)
        for a, b in zip(pts, pts[1:])
    ]
    return PathSpec(links=tuple(links))


def rand_quantized_graph(rng, n, m, q=0.05, w_max=10, connect=True):
    """Random multigraph whose optimal walks are guaranteed simple: every
    edge satisfies c1 > -(q*w)^2, so appending an edge always raises the
    objective."""
    g = CostGraph(n=n)
    if connect:  # a random hamiltonian-ish chain so s..d is reachable
        order = [0] + list(rng.permutation(range(1, n - 1))) + [n - 1]
        for a, b in zip(order, order[1:]):
            w = int(rng.integers(0, w_max + 1))
            c1 = float(rng.uniform(-0.9 * (q * w) ** 2, 10.0))
            g.add_edge(int(a), int(b), c1, w * q)
    for _ in range(m):
        u, v = rng.integers(0, n, size=2)
        if u == v:
            continue
        w = int(rng.integers(0, w_max + 1))
        c1 = float(rng.uniform(-0.9 * (q * w) ** 2, 10.0))
        g.add_edge(int(u), int(v), c1, w * q)
    return quantize(g, q)


def enumerate_best(qgraph, s, d):
    """Exhaustive minimum of the quantized objective over simple paths."""
    g, q = qgraph.base, qgraph.q
    adj = [[] for _ in range(g.n)]
    for i, e in enumerate(g.edges):
        adj[e.u].append(i)
    best = [np.inf]

    def walk(u, visited, c1, b):
        if u == d:
            best[0] = min(best[0], c1 + (q * b) ** 2)
            return
        for i in adj[u]:
            e = g.edges[i]
            if e.v not in visited:
                walk(e.v, visited | {e.v}, c1 + e.c1, b + qgraph.int_c2[i])

    walk(s, {s}, 0.0, 0)
    return best[0]
