"""Network generation and the simulation experiments.

Instances are unit squares of side L with uniformly placed nodes, a source
and destination pinned to opposite corners, and eavesdroppers placed either
uniformly or clustered along the source-destination diagonal.  The maximum
node power is calibrated to the smallest value that keeps the network
connected, so link feasibility is scale-free.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import math
import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .approx import epsilon_smer
from .channel import ChannelParams, Point, distance, source_power
from .errors import DegenerateInstanceError, SecrouteError
from .linkcost import EaveLocation, LinkSpec, jam_power_multi
from .pathcost import PathSpec, link_c1_c2, path_cost
from .routing import CostGraph, RouteResult, default_quantum, dp_smer, quantize, sasp

CSV_HEADER = ["experiment", "seed", "alpha", "param", "algorithm", "energy", "savings_pct", "hops", "runtime_ms"]

EXPERIMENT_KINDS = ("heatmap", "allocation", "snapshot", "uniform", "size", "jammers")

_DIAG_JITTER = 0.25
_DENSITY_LEVELS = (0.5, 1.0, 1.5, 2.0)
_SIZE_LEVELS = (3.0, 4.0, 5.0, 6.0)
_JAMMER_LEVELS = (1, 2, 3, 4)
_HEATMAP_GRID = 101
_HEATMAP_PI = 0.001


@dataclass(frozen=True)
class NetworkConfig:
    side_length: float = 5.0
    node_density: float = 3.0
    eave_density: float = 1.0
    placement: str = "uniform"  # "uniform" | "diagonal"
    jammer_count: int = 2
    pi: float = 0.1
    channel: ChannelParams = field(default_factory=ChannelParams)
    seed: int = 0
    runs: int = 10

    def __post_init__(self):
        if self.node_density <= 0 or self.eave_density <= 0:
            raise DegenerateInstanceError("densities must be positive")
        if self.runs < 1:
            raise DegenerateInstanceError("runs must be >= 1")
        if self.placement not in ("uniform", "diagonal"):
            raise DegenerateInstanceError(f"unknown placement {self.placement!r}")


@dataclass
class NetworkInstance:
    config: NetworkConfig
    seed: int
    nodes: list[Point]
    eaves: list[Point]
    s: int
    d: int
    params: ChannelParams  # channel with calibrated p_max

    @property
    def p_max(self) -> float:
        return self.params.p_max


def _connected(nodes: list[Point], s: int, d: int, d_max: float) -> bool:
    n = len(nodes)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if distance(nodes[i], nodes[j]) <= d_max:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    return find(s) == find(d)


def generate_network(config: NetworkConfig, seed: int | None = None) -> NetworkInstance:
    """Deterministic instance for a given seed, with p_max calibrated by
    binary search to the smallest connecting value (within 1%)."""
    seed = config.seed if seed is None else seed
    rng = np.random.default_rng(seed)
    L = config.side_length
    n = int(round(config.node_density * L * L))
    if n < 2:
        raise DegenerateInstanceError("node density too low for a source and destination")
    coords = rng.uniform(0.0, L, size=(n - 2, 2))
    nodes = [Point(0.0, 0.0)] + [Point(float(x), float(y)) for x, y in coords] + [Point(L, L)]

    n_eaves = max(1, int(round(config.eave_density * L * L)))
    if config.placement == "uniform":
        epos = rng.uniform(0.0, L, size=(n_eaves, 2))
        eaves = [Point(float(x), float(y)) for x, y in epos]
    else:
        # evenly spaced along the s-d diagonal with lateral jitter
        fracs = (np.arange(n_eaves) + 1.0) / (n_eaves + 1.0)
        jitter = rng.uniform(-_DIAG_JITTER, _DIAG_JITTER, size=n_eaves)
        perp = np.array([-1.0, 1.0]) / math.sqrt(2.0)
        eaves = []
        for f, t in zip(fracs, jitter):
            p = np.array([f * L, f * L]) + t * perp
            eaves.append(Point(float(np.clip(p[0], 0.0, L)), float(np.clip(p[1], 0.0, L))))

    base = config.channel
    s, d = 0, n - 1
    hi = source_power(base, max(L / math.sqrt(n), 1e-6))
    doublings = 0
    while not _connected(nodes, s, d, (hi / (base.gamma_d * base.k_rho)) ** (1.0 / base.alpha)):
        hi *= 2.0
        doublings += 1
        if doublings > 64:
            raise DegenerateInstanceError("p_max calibration failed after 64 doublings")
    lo = hi / 2.0
    while _connected(nodes, s, d, (lo / (base.gamma_d * base.k_rho)) ** (1.0 / base.alpha)):
        hi = lo
        lo = hi / 2.0
    while hi / lo > 1.01:
        mid = math.sqrt(lo * hi)
        if _connected(nodes, s, d, (mid / (base.gamma_d * base.k_rho)) ** (1.0 / base.alpha)):
            hi = mid
        else:
            lo = mid
    params = dataclasses.replace(base, p_max=hi)
    return NetworkInstance(config=config, seed=seed, nodes=nodes, eaves=eaves, s=s, d=d, params=params)


def feasible_pairs(instance: NetworkInstance) -> list[tuple[int, int]]:
    """Ordered node pairs whose source power fits under p_max."""
    d_max = (instance.p_max / (instance.params.gamma_d * instance.params.k_rho)) ** (
        1.0 / instance.params.alpha
    )
    out = []
    for u, pu in enumerate(instance.nodes):
        for v, pv in enumerate(instance.nodes):
            if u != v and 0.0 < distance(pu, pv) <= d_max:
                out.append((u, v))
    return out


def assign_eaves(
    instance: NetworkInstance,
    pairs: list[tuple[int, int]] | None = None,
    radius: float | None = None,
) -> dict[tuple[int, int], tuple[EaveLocation, ...]]:
    """Eavesdropping locations per link: the single eavesdropper nearest to
    the link midpoint, or (with ``radius``) all within that range of it."""
    pairs = feasible_pairs(instance) if pairs is None else pairs
    out = {}
    for u, v in pairs:
        mid = Point(
            (instance.nodes[u].x + instance.nodes[v].x) / 2.0,
            (instance.nodes[u].y + instance.nodes[v].y) / 2.0,
        )
        dists = [(distance(e, mid), i) for i, e in enumerate(instance.eaves)]
        dists.sort()
        if radius is None:
            chosen = [dists[0][1]]
        else:
            chosen = [i for dd, i in dists if dd <= radius] or [dists[0][1]]
        out[(u, v)] = tuple(EaveLocation(instance.eaves[i], 1.0) for i in chosen)
    return out


def assign_jammers(
    instance: NetworkInstance,
    k_j: int | None = None,
    pairs: list[tuple[int, int]] | None = None,
) -> dict[tuple[int, int], tuple[Point, ...]]:
    """Jammers per link: the k_j legitimate nodes nearest to the receiver,
    excluding the link endpoints; ties broken by node id."""
    k_j = instance.config.jammer_count if k_j is None else k_j
    if k_j < 1:
        raise DegenerateInstanceError("jammer count must be >= 1")
    pairs = feasible_pairs(instance) if pairs is None else pairs
    out = {}
    short = False
    for u, v in pairs:
        recv = instance.nodes[v]
        cand = sorted(
            (distance(instance.nodes[i], recv), i)
            for i in range(len(instance.nodes))
            if i not in (u, v)
        )
        if len(cand) < k_j:
            short = True
        out[(u, v)] = tuple(instance.nodes[i] for _, i in cand[:k_j])
    if short:
        warnings.warn("fewer candidate jammers than requested; using all available")
    return out


def build_cost_graph(
    instance: NetworkInstance,
    pi: float,
    k_j: int | None = None,
    eave_radius: float | None = None,
) -> CostGraph:
    """Cost graph over all feasible links, each carrying its LinkSpec."""
    pairs = feasible_pairs(instance)
    eaves = assign_eaves(instance, pairs, radius=eave_radius)
    jammers = assign_jammers(instance, k_j, pairs)
    g = CostGraph(n=len(instance.nodes))
    for u, v in pairs:
        link = LinkSpec(
            source=instance.nodes[u],
            dest=instance.nodes[v],
            eaves=eaves[(u, v)],
            jammers=jammers[(u, v)],
            source_id=u,
            dest_id=v,
        )
        c1, c2 = link_c1_c2(instance.params, link, pi)
        g.add_edge(u, v, c1, c2, link=link)
    return g


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    seed: int
    alpha: float
    param: float
    algorithm: str
    energy: float
    savings_pct: float
    hops: int
    runtime_ms: float


def energy_savings(benchmark: float, energy: float) -> float:
    """Percentage saved relative to the benchmark energy."""
    return 100.0 * (benchmark - energy) / benchmark


def _equal_allocation_energy(params: ChannelParams, spec: PathSpec, pi: float) -> float:
    h = len(spec.links)
    total = 0.0
    for link in spec.links:
        total += source_power(params, link.length)
        total += jam_power_multi(params, link, pi / h).average
    return total


def _route_all(instance: NetworkInstance, pi: float, k_j: int | None, algorithms):
    graph = build_cost_graph(instance, pi, k_j=k_j)
    q = default_quantum(graph)
    qgraph = quantize(graph, q)
    out = {}
    for name in algorithms:
        t0 = time.perf_counter()
        if name == "sasp":
            r = sasp(instance.params, graph, instance.s, instance.d, pi)
        elif name == "dp-smer":
            r = dp_smer(qgraph, instance.s, instance.d, pi=pi, params=instance.params)
        elif name.endswith("-smer"):
            eps = float(name[: -len("-smer")])
            r = epsilon_smer(qgraph, instance.s, instance.d, eps, pi=pi, params=instance.params)
        else:
            raise SecrouteError(f"unknown algorithm {name!r}")
        out[name] = (r, 1000.0 * (time.perf_counter() - t0))
    return out


def run_experiment(kind: str, config: NetworkConfig) -> tuple[list[ResultRow], dict[str, str]]:
    """Run one of the named experiments; returns CSV rows and named SVG
    artifacts (as strings).  Failed runs are recorded and skipped."""
    if kind not in EXPERIMENT_KINDS:
        raise SecrouteError(f"unknown experiment kind {kind!r}")
    return _EXPERIMENTS[kind](config)


def _per_seed(config: NetworkConfig, body) -> list[ResultRow]:
    rows: list[ResultRow] = []
    for run in range(config.runs):
        seed = config.seed + run
        try:
            rows.extend(body(seed))
        except SecrouteError as exc:
            warnings.warn(f"run with seed {seed} failed and was excluded: {exc}")
    return rows


def _exp_allocation(config: NetworkConfig) -> tuple[list[ResultRow], dict[str, str]]:
    alpha = config.channel.alpha
    rows: list[ResultRow] = []
    for mult in _DENSITY_LEVELS:
        cfg = dataclasses.replace(config, eave_density=config.eave_density * mult)

        def body(seed, cfg=cfg, mult=mult):
            inst = generate_network(cfg, seed)
            graph = build_cost_graph(inst, cfg.pi)
            t0 = time.perf_counter()
            base = sasp(inst.params, graph, inst.s, inst.d, cfg.pi)
            dt = 1000.0 * (time.perf_counter() - t0)
            spec = PathSpec(links=tuple(e.link for e in base.edges))
            e_opt = path_cost(inst.params, spec, cfg.pi).total
            e_eq = _equal_allocation_energy(inst.params, spec, cfg.pi)
            return [
                ResultRow("allocation", seed, alpha, mult, "equal-alloc", e_eq, 0.0, base.hops, dt),
                ResultRow("allocation", seed, alpha, mult, "opt-alloc", e_opt,
                          energy_savings(e_eq, e_opt), base.hops, dt),
            ]

        rows.extend(_per_seed(cfg, body))
    return rows, {}


def _routing_rows(kind, config, param, algorithms, svg_holder=None):
    alpha = config.channel.alpha

    def body(seed):
        inst = generate_network(config, seed)
        results = _route_all(inst, config.pi, config.jammer_count, algorithms)
        bench = results["sasp"][0].total_cost
        out = []
        for name in algorithms:
            r, dt = results[name]
            out.append(
                ResultRow(kind, seed, alpha, param, name, r.total_cost,
                          energy_savings(bench, r.total_cost), r.hops, dt)
            )
        if svg_holder is not None and "svg" not in svg_holder:
            svg_holder["svg"] = svg_snapshot(inst, {n: results[n][0] for n in algorithms})
        return out

    return _per_seed(config, body)


def _exp_snapshot(config: NetworkConfig) -> tuple[list[ResultRow], dict[str, str]]:
    cfg = dataclasses.replace(config, placement="diagonal")
    holder: dict[str, str] = {}
    rows = _routing_rows("snapshot", cfg, cfg.eave_density,
                         ("sasp", "dp-smer", "0.1-smer", "1.0-smer"), svg_holder=holder)
    return rows, {"snapshot.svg": holder.get("svg", "")}


def _exp_uniform(config: NetworkConfig) -> tuple[list[ResultRow], dict[str, str]]:
    rows: list[ResultRow] = []
    for mult in _DENSITY_LEVELS:
        cfg = dataclasses.replace(config, placement="uniform",
                                  eave_density=config.eave_density * mult)
        rows.extend(_routing_rows("uniform", cfg, mult, ("sasp", "dp-smer", "0.1-smer")))
    return rows, {}


def _exp_size(config: NetworkConfig) -> tuple[list[ResultRow], dict[str, str]]:
    rows: list[ResultRow] = []
    for L in _SIZE_LEVELS:
        cfg = dataclasses.replace(config, side_length=L)
        rows.extend(_routing_rows("size", cfg, L, ("sasp", "dp-smer")))
    return rows, {}


def _exp_jammers(config: NetworkConfig) -> tuple[list[ResultRow], dict[str, str]]:
    rows: list[ResultRow] = []
    for k_j in _JAMMER_LEVELS:
        cfg = dataclasses.replace(config, jammer_count=k_j)
        rows.extend(_routing_rows("jammers", cfg, k_j, ("sasp", "dp-smer")))
    return rows, {}


def heatmap_grid(config: NetworkConfig, grid: int = _HEATMAP_GRID) -> np.ndarray:
    """Link cost for every eavesdropper position on a grid over the square."""
    L = config.side_length
    params = dataclasses.replace(config.channel, p_max=math.inf)
    src = Point(L / 2.0, L / 2.0)
    dst = Point(L / 2.0 + 1.0, L / 2.0)
    mid = Point((src.x + dst.x) / 2.0, (src.y + dst.y) / 2.0)
    jammers = (Point(mid.x, mid.y + 0.5), Point(mid.x, mid.y - 0.5))
    costs = np.full((grid, grid), np.nan)
    xs = np.linspace(0.0, L, grid)
    ys = np.linspace(0.0, L, grid)
    for i, ey in enumerate(ys):
        for j, ex in enumerate(xs):
            epos = Point(float(ex), float(ey))
            if any(distance(epos, p) < 1e-9 for p in (src, dst, *jammers)):
                continue
            link = LinkSpec(source=src, dest=dst, eaves=(EaveLocation(epos, 1.0),), jammers=jammers)
            costs[i, j] = source_power(params, link.length) + \
                jam_power_multi(params, link, _HEATMAP_PI).average
    return costs


def _exp_heatmap(config: NetworkConfig) -> tuple[list[ResultRow], dict[str, str]]:
    t0 = time.perf_counter()
    costs = heatmap_grid(config)
    dt = 1000.0 * (time.perf_counter() - t0)
    finite = costs[np.isfinite(costs)]
    row = ResultRow("heatmap", config.seed, config.channel.alpha, _HEATMAP_GRID,
                    "link-cost", float(np.mean(finite)), 0.0, 1, dt)
    return [row], {"heatmap.svg": svg_heatmap(costs, config.side_length)}


_EXPERIMENTS = {
    "heatmap": _exp_heatmap,
    "allocation": _exp_allocation,
    "snapshot": _exp_snapshot,
    "uniform": _exp_uniform,
    "size": _exp_size,
    "jammers": _exp_jammers,
}


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.9g}"
    return str(x)


def rows_to_csv(rows: list[ResultRow], include_runtime: bool = True) -> str:
    """Serialize result rows; floats at 9 significant digits."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([
            r.experiment, r.seed, _fmt(r.alpha), _fmt(r.param), r.algorithm,
            _fmt(r.energy), _fmt(r.savings_pct), r.hops,
            _fmt(r.runtime_ms) if include_runtime else "0",
        ])
    return buf.getvalue()


_SVG_COLORS = {"sasp": "#d62728", "dp-smer": "#1f77b4", "0.1-smer": "#2ca02c", "1.0-smer": "#9467bd"}


def svg_snapshot(instance: NetworkInstance, routes: dict[str, RouteResult], scale: float = 100.0) -> str:
    """Node/eavesdropper/path overlay as a standalone SVG 1.1 document."""
    L = instance.config.side_length
    size = L * scale
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.9g}" height="{size:.9g}" '
        f'viewBox="0 0 {size:.9g} {size:.9g}">',
        f'<rect width="{size:.9g}" height="{size:.9g}" fill="white" stroke="black"/>',
    ]

    def xy(p: Point) -> tuple[float, float]:
        return p.x * scale, size - p.y * scale

    for label, route in routes.items():
        color = _SVG_COLORS.get(label, "#7f7f7f")
        pts = " ".join(f"{x:.9g},{y:.9g}" for x, y in (xy(instance.nodes[i]) for i in route.path))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>')
    for p in instance.nodes:
        x, y = xy(p)
        out.append(f'<circle cx="{x:.9g}" cy="{y:.9g}" r="3" fill="#333333"/>')
    for e in instance.eaves:
        x, y = xy(e)
        out.append(
            f'<path d="M {x:.9g} {y - 6:.9g} L {x + 5:.9g} {y + 5:.9g} '
            f'L {x - 6:.9g} {y - 2:.9g} L {x + 6:.9g} {y - 2:.9g} L {x - 5:.9g} {y + 5:.9g} Z" '
            'fill="#e6a000"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def svg_heatmap(costs: np.ndarray, side_length: float, cell: float = 5.0) -> str:
    """Grid heatmap; darker cells cost more energy (log scale)."""
    grid = costs.shape[0]
    size = grid * cell
    finite = costs[np.isfinite(costs)]
    lo, hi = float(np.min(finite)), float(np.max(finite))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.9g}" height="{size:.9g}">',
    ]
    log_lo, log_hi = math.log(lo), math.log(hi)
    span = (log_hi - log_lo) or 1.0
    for i in range(grid):
        for j in range(grid):
            c = costs[i, j]
            t = 0.0 if not math.isfinite(c) else (math.log(c) - log_lo) / span
            shade = int(round(255 * (1.0 - t)))
            out.append(
                f'<rect x="{j * cell:.9g}" y="{(grid - 1 - i) * cell:.9g}" '
                f'width="{cell:.9g}" height="{cell:.9g}" fill="rgb({shade},{shade},255)"/>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
