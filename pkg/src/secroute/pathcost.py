"""Optimal division of the end-to-end eavesdropping budget across a path.

Given a path and a budget ``pi``, the per-link budgets are proportional to
the links' ``x`` aggregates.  The resulting path cost separates into an
additive part and the square of a second additive part,
``sum(c1) + (sum(c2))**2``, which is what the routing algorithms minimize.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .channel import ChannelParams, source_power
from .errors import InvalidParameterError
from .linkcost import LinkSpec, xy_terms

# Per-link budgets above this make the linearized sum-constraint a coarse
# approximation of the true product constraint.
_LINEARIZATION_WARN = 0.2


@dataclass(frozen=True)
class PathSpec:
    """An ordered sequence of links forming a connected walk."""

    links: tuple[LinkSpec, ...]

    def __post_init__(self):
        if not self.links:
            raise InvalidParameterError("path must contain at least one link")
        for a, b in zip(self.links, self.links[1:]):
            if a.dest != b.source:
                raise InvalidParameterError("consecutive links do not share an endpoint")


@dataclass(frozen=True)
class SecrecyAllocation:
    """Per-link eavesdropping budgets summing to the end-to-end budget."""

    pi_per_link: tuple[float, ...]
    slack: bool = False


@dataclass(frozen=True)
class PathCostBreakdown:
    c1_per_link: tuple[float, ...]
    c2_per_link: tuple[float, ...]
    total: float


def _path_xy(params: ChannelParams, path: PathSpec) -> tuple[list[float], list[float]]:
    xs, ys = [], []
    for link in path.links:
        x, y = xy_terms(params, link)
        xs.append(x)
        ys.append(y)
    return xs, ys


def allocate_secrecy(params: ChannelParams, path: PathSpec, pi: float) -> SecrecyAllocation:
    """Split ``pi`` across the path's links proportionally to their x terms."""
    if not 0.0 < pi < 1.0:
        raise InvalidParameterError(f"pi must be in (0, 1), got {pi}")
    xs, _ = _path_xy(params, path)
    x_sum = sum(xs)
    if x_sum == 0.0:
        return SecrecyAllocation(pi_per_link=(0.0,) * len(xs), slack=True)
    alloc = tuple(pi * x / x_sum for x in xs)
    if any(a > _LINEARIZATION_WARN for a in alloc):
        warnings.warn(
            "a per-link eavesdropping budget exceeds "
            f"{_LINEARIZATION_WARN}; the linearized secrecy constraint is coarse",
            stacklevel=2,
        )
    return SecrecyAllocation(pi_per_link=alloc)


def jam_power_on_path(params: ChannelParams, path: PathSpec, pi: float) -> tuple[float, ...]:
    """Average jamming power per link under the optimal secrecy allocation.

    Closed form ``x_k * sum(x) / pi - y_k``; negative values (possible for
    exotic probability profiles) are clamped to zero with a warning.
    """
    if not 0.0 < pi < 1.0:
        raise InvalidParameterError(f"pi must be in (0, 1), got {pi}")
    xs, ys = _path_xy(params, path)
    x_sum = sum(xs)
    powers = []
    for x, y in zip(xs, ys):
        p = x * x_sum / pi - y
        if p < 0.0:
            warnings.warn("negative per-link jamming power clamped to zero", stacklevel=2)
            p = 0.0
        powers.append(p)
    return tuple(powers)


def link_c1_c2(params: ChannelParams, link: LinkSpec, pi: float) -> tuple[float, float]:
    """Additive and square-root cost components of one link at budget ``pi``.

    c1 may be negative; c2 is non-negative and scales as ``x / sqrt(pi)``.
    """
    if not 0.0 < pi < 1.0:
        raise InvalidParameterError(f"pi must be in (0, 1), got {pi}")
    x, y = xy_terms(params, link)
    c1 = source_power(params, link.length) - y
    c2 = x / math.sqrt(pi)
    return c1, c2


def path_cost(params: ChannelParams, path: PathSpec, pi: float) -> PathCostBreakdown:
    """Optimal path cost: sum(c1) + (sum(c2))**2."""
    c1s, c2s = [], []
    for link in path.links:
        c1, c2 = link_c1_c2(params, link, pi)
        c1s.append(c1)
        c2s.append(c2)
    total = sum(c1s) + sum(c2s) ** 2
    return PathCostBreakdown(
        c1_per_link=tuple(c1s),
        c2_per_link=tuple(c2s),
        total=total,
    )
