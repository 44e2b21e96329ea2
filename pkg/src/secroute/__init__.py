"""Minimum-energy secure routing with cooperative jamming.

The package models wireless links whose secrecy against passive
eavesdroppers is bought with jamming power, derives per-link cost terms,
and routes over them with an exact pseudo-polynomial algorithm, an
epsilon-approximation, and a security-agnostic baseline.
"""
from ._kernels import BACKEND
from .approx import epsilon_rsp, epsilon_smer
from .channel import ChannelParams, Point, distance, k_rho, source_power
from .coding import CodingBlock, capture_matrix, decodable, encode_next, simulate_link_secrecy
from .errors import (
    BlockExhaustedError,
    DegenerateInstanceError,
    GeometryError,
    InfeasibleError,
    InvalidParameterError,
    SecrouteError,
    UnreachableError,
)
from .linkcost import (
    EaveLocation,
    LinkSpec,
    cost_terms,
    jam_power_multi,
    jam_power_single,
    link_cost,
)
from .pathcost import PathSpec, allocate_secrecy, link_c1_c2, path_cost
from .routing import (
    CostGraph,
    Edge,
    RouteResult,
    default_quantum,
    dp_smer,
    load_graph,
    partition_gadget,
    quantize,
    sasp,
    save_graph,
)
from .simharness import NetworkConfig, build_cost_graph, generate_network, run_experiment

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BlockExhaustedError",
    "ChannelParams",
    "CodingBlock",
    "CostGraph",
    "DegenerateInstanceError",
    "EaveLocation",
    "Edge",
    "GeometryError",
    "InfeasibleError",
    "InvalidParameterError",
    "LinkSpec",
    "NetworkConfig",
    "PathSpec",
    "Point",
    "RouteResult",
    "SecrouteError",
    "UnreachableError",
    "allocate_secrecy",
    "build_cost_graph",
    "capture_matrix",
    "cost_terms",
    "decodable",
    "default_quantum",
    "distance",
    "dp_smer",
    "encode_next",
    "epsilon_rsp",
    "epsilon_smer",
    "generate_network",
    "jam_power_multi",
    "jam_power_single",
    "k_rho",
    "link_c1_c2",
    "link_cost",
    "load_graph",
    "partition_gadget",
    "path_cost",
    "quantize",
    "run_experiment",
    "sasp",
    "save_graph",
    "simulate_link_secrecy",
    "source_power",
]
