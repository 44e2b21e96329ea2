"""Command-line interface.

Subcommands: ``gen`` (emit a cost graph), ``route`` (run one routing
algorithm), ``experiment`` (run a named experiment and write its CSV/SVG),
``heatmap`` (single-link energy map), ``validate-coding`` (Monte-Carlo check
of the coding layer).  Options can come from a key=value config file; the
precedence is command-line flag, then config file, then built-in default.

Exit codes: 0 success, 1 usage/configuration error, 2 infeasible instance.
"""
from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from dataclasses import dataclass

import numpy as np

from .approx import epsilon_smer
from .channel import ChannelParams
from .coding import simulate_link_secrecy
from .errors import (
    DegenerateInstanceError,
    InfeasibleError,
    SecrouteError,
    UnreachableError,
)
from .routing import default_quantum, dp_smer, load_graph, quantize, sasp, save_graph
from .simharness import (
    EXPERIMENT_KINDS,
    NetworkConfig,
    build_cost_graph,
    generate_network,
    run_experiment,
    rows_to_csv,
)


@dataclass
class CliConfig:
    """Every tunable the CLI understands, with its default."""

    alpha: float = 2.0
    pi: float = 0.1
    rho: float = 0.1
    gamma_d: float = 0.8
    gamma_e: float = 0.6
    sigma: float = 3.0
    sigma_e: float = 1.0
    side: float = 5.0
    placement: str = "uniform"
    jammers: int = 2
    epsilon: float = 0.1
    quantum: float = 0.0  # 0 means automatic
    seed: int = 0
    runs: int = 10
    trials: int = 100000


_FLOAT_KEYS = {"alpha", "pi", "rho", "gamma_d", "gamma_e", "sigma", "sigma_e",
               "side", "epsilon", "quantum"}
_INT_KEYS = {"jammers", "seed", "runs", "trials"}
_STR_KEYS = {"placement"}


class UsageError(SecrouteError):
    pass


def parse_config_file(path: str) -> dict:
    """key=value lines; blank lines and # comments skipped; unknown keys rejected."""
    out = {}
    try:
        with open(path) as f:
            lines = f.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (t.strip() for t in line.split("=", 1))
        if key in _FLOAT_KEYS:
            out[key] = float(value)
        elif key in _INT_KEYS:
            out[key] = int(value)
        elif key in _STR_KEYS:
            out[key] = value
        else:
            raise UsageError(f"{path}:{lineno}: unknown config key {key!r}")
    return out


def dump_config(config: CliConfig) -> str:
    """Round-trippable key=value rendering of the effective configuration."""
    lines = []
    for f in dataclasses.fields(config):
        value = getattr(config, f.name)
        if isinstance(value, float):
            value = f"{value:.12g}"
        lines.append(f"{f.name}={value}")
    return "\n".join(lines) + "\n"


def resolve_config(args: argparse.Namespace) -> CliConfig:
    """Merge defaults, config file, SECROUTE_SEED, and explicit flags."""
    values = dataclasses.asdict(CliConfig())
    env_seed = os.environ.get("SECROUTE_SEED")
    if env_seed is not None:
        try:
            values["seed"] = int(env_seed)
        except ValueError as exc:
            raise UsageError(f"SECROUTE_SEED must be an integer, got {env_seed!r}") from exc
    if getattr(args, "config", None):
        values.update(parse_config_file(args.config))
    for key in values:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    return CliConfig(**values)


def _network_config(config: CliConfig) -> NetworkConfig:
    channel = ChannelParams(
        alpha=config.alpha,
        gamma_d=config.gamma_d,
        gamma_e=config.gamma_e,
        rho=config.rho,
    )
    return NetworkConfig(
        side_length=config.side,
        node_density=config.sigma,
        eave_density=config.sigma_e,
        placement=config.placement,
        jammer_count=config.jammers,
        pi=config.pi,
        channel=channel,
        seed=config.seed,
        runs=config.runs,
    )


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--dump-config", action="store_true",
                   help="print the effective configuration and exit")
    p.add_argument("--alpha", type=float, help="path-loss exponent")
    p.add_argument("--pi", type=float, help="end-to-end eavesdropping budget")
    p.add_argument("--rho", type=float, help="transmission outage probability")
    p.add_argument("--gamma-d", dest="gamma_d", type=float, help="receiver SNR threshold")
    p.add_argument("--gamma-e", dest="gamma_e", type=float, help="eavesdropper SNR threshold")
    p.add_argument("--sigma", type=float, help="node density per unit area")
    p.add_argument("--sigma-e", dest="sigma_e", type=float, help="eavesdropper density per unit area")
    p.add_argument("--side", type=float, help="side length of the square region")
    p.add_argument("--placement", choices=("uniform", "diagonal"),
                   help="eavesdropper placement")
    p.add_argument("--jammers", type=int, help="jammers recruited per link")
    p.add_argument("--epsilon", type=float, help="approximation factor")
    p.add_argument("--quantum", type=float, help="budget quantum (0 = automatic)")
    p.add_argument("--seed", type=int, help="base random seed")
    p.add_argument("--runs", type=int, help="number of seeds per experiment point")
    p.add_argument("--trials", type=int, help="Monte-Carlo trials for validate-coding")
    p.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secroute",
        description="Minimum-energy secure routing with cooperative jamming.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a network and write its cost graph")
    _add_common(p)

    p = sub.add_parser("route", help="route source to destination on a generated network")
    _add_common(p)
    p.add_argument("--algorithm", choices=("dp", "eps", "sasp"), default="dp")
    p.add_argument("--input", help="cost-graph file to route on instead of generating a network")

    p = sub.add_parser("experiment", help="run a named experiment")
    _add_common(p)
    p.add_argument("kind", choices=EXPERIMENT_KINDS)

    p = sub.add_parser("heatmap", help="single-link energy map over eavesdropper positions")
    _add_common(p)

    p = sub.add_parser("validate-coding", help="Monte-Carlo check of the coding layer")
    _add_common(p)
    return parser


def _write_out(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _cmd_gen(config: CliConfig, args) -> int:
    net = _network_config(config)
    instance = generate_network(net)
    graph = build_cost_graph(instance, config.pi)
    if args.out:
        save_graph(graph, args.out)
    print(
        f"nodes={len(instance.nodes)} eaves={len(instance.eaves)} "
        f"edges={len(graph.edges)} p_max={instance.p_max:.6g}"
    )
    return 0


def _cmd_route(config: CliConfig, args) -> int:
    if args.input:
        if not os.path.exists(args.input):
            raise UsageError(f"input file not found: {args.input}")
        if args.algorithm == "sasp":
            raise UsageError("sasp needs a generated network, not a bare cost graph")
        graph = load_graph(args.input)
        s, d = 0, graph.n - 1
        pi = params = None
    else:
        instance = generate_network(_network_config(config))
        graph = build_cost_graph(instance, config.pi)
        s, d = instance.s, instance.d
        pi, params = config.pi, instance.params
    if args.algorithm == "sasp":
        result = sasp(params, graph, s, d, pi)
    else:
        q = config.quantum or default_quantum(graph)
        qgraph = quantize(graph, q)
        if args.algorithm == "dp":
            result = dp_smer(qgraph, s, d, pi=pi, params=params)
        else:
            result = epsilon_smer(qgraph, s, d, config.epsilon, pi=pi, params=params)
    path = "->".join(str(v) for v in result.path)
    _write_out(
        "algorithm,energy,hops,path\n"
        f"{result.algorithm},{result.total_cost:.9g},{result.hops},{path}\n",
        args.out,
    )
    return 0


def _cmd_experiment(config: CliConfig, args) -> int:
    rows, artifacts = run_experiment(args.kind, _network_config(config))
    _write_out(rows_to_csv(rows), args.out)
    base = os.path.dirname(args.out) if args.out else "."
    for name, svg in artifacts.items():
        if svg:
            path = os.path.join(base, name)
            with open(path, "w") as f:
                f.write(svg)
            print(f"wrote {path}", file=sys.stderr)
    return 0


def _cmd_heatmap(config: CliConfig, args) -> int:
    from .simharness import heatmap_grid, svg_heatmap

    costs = heatmap_grid(_network_config(config))
    _write_out(svg_heatmap(costs, config.side), args.out)
    return 0


def _cmd_validate_coding(config: CliConfig, args) -> int:
    net = _network_config(config)
    instance = generate_network(net)
    graph = build_cost_graph(instance, config.pi, eave_radius=net.side_length)
    edge = max(graph.edges, key=lambda e: len(e.link.eaves))
    rng = np.random.default_rng(config.seed)
    stats = simulate_link_secrecy(instance.params, edge.link, config.pi, config.trials, rng)
    lines = [f"trials={stats.trials} locations={len(stats.decode_rate)}"]
    ok = True
    for i, (rate, hi, cap) in enumerate(
        zip(stats.decode_rate, stats.wilson_high, stats.analytic_capture)
    ):
        sigma = (cap * (1.0 - cap) / stats.trials) ** 0.5
        bounded = rate <= cap + 3.0 * sigma + 1e-12
        ok = ok and bounded
        lines.append(
            f"location={i} decode_rate={rate:.6g} wilson99_high={hi:.6g} "
            f"analytic_capture={cap:.6g} bounded={'yes' if bounded else 'no'}"
        )
    lines.append(f"result={'pass' if ok else 'fail'}")
    _write_out("\n".join(lines) + "\n", args.out)
    return 0 if ok else 2


_COMMANDS = {
    "gen": _cmd_gen,
    "route": _cmd_route,
    "experiment": _cmd_experiment,
    "heatmap": _cmd_heatmap,
    "validate-coding": _cmd_validate_coding,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    # swap in the exit-code-1 error handler for the whole parser tree
    parser.__class__ = _Parser
    for action in parser._subparsers._group_actions:
        for sp in action.choices.values():
            sp.__class__ = _Parser
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
        if args.dump_config:
            _write_out(dump_config(config), args.out)
            return 0
        return _COMMANDS[args.command](config, args)
    except (InfeasibleError, UnreachableError, DegenerateInstanceError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except SecrouteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
