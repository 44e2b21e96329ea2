"""Geometry and channel-model constants.

Transmission power on a link follows truncated channel inversion: the source
inverts the fading channel except in the worst ``rho`` fraction of fades,
which puts the link in outage.  The resulting average power is
``gamma_d * k(rho) * d**alpha`` where ``k(rho)`` is a constant of the outage
probability alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.special import exp1

from .errors import GeometryError, InvalidParameterError


def k_rho(rho: float) -> float:
    """Power-inflation constant of truncated channel inversion.

    Equals ``(1/(1-rho)) * E1(-ln(1-rho))`` with ``E1`` the exponential
    integral; strictly decreasing in ``rho``.
    """
    if not 0.0 < rho < 1.0:
        raise InvalidParameterError(f"rho must be in (0, 1), got {rho}")
    tau = -math.log(1.0 - rho)
    return float(exp1(tau)) / (1.0 - rho)


@dataclass(frozen=True)
class ChannelParams:
    """Global physical constants governing all power formulas.

    alpha    path-loss exponent, typically in [2, 6]
    n0       noise power (watts)
    gamma_d  SINR threshold for successful reception at a link destination
    gamma_e  SINR threshold above which an eavesdropper captures a message
    rho      per-link outage probability of truncated channel inversion
    p_max    maximum node transmission power (watts)
    """

    alpha: float = 2.0
    n0: float = 1.0
    gamma_d: float = 0.8
    gamma_e: float = 0.6
    rho: float = 0.1
    p_max: float = math.inf
    k_rho: float = field(init=False)

    def __post_init__(self):
        if not 2.0 <= self.alpha <= 6.0:
            raise InvalidParameterError(f"alpha must be in [2, 6], got {self.alpha}")
        if not 0.0 < self.rho < 1.0:
            raise InvalidParameterError(f"rho must be in (0, 1), got {self.rho}")
        for name in ("gamma_d", "gamma_e", "n0", "p_max"):
            if getattr(self, name) <= 0.0:
                raise InvalidParameterError(f"{name} must be positive")
        object.__setattr__(self, "k_rho", k_rho(self.rho))


@dataclass(frozen=True, order=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidParameterError(f"coordinates must be finite: {self}")


def distance(a: Point, b: Point) -> float:
    """Euclidean distance between two points."""
    return math.hypot(a.x - b.x, a.y - b.y)


def source_power(params: ChannelParams, d: float) -> float:
    """Average source transmission power for a link of length ``d``."""
    if d <= 0.0:
        raise GeometryError(f"link length must be positive, got {d}")
    return params.gamma_d * params.k_rho * d**params.alpha
