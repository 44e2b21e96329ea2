"""Per-link secure cost.

A link is secured by cooperative jamming: whenever the source transmits,
jammers beamform a noise signal that is nulled at the receiver and degrades
every potential eavesdropping location.  The cost of a link is the source
power plus the average jamming power needed to keep the (p-weighted) capture
probability at the requested level ``pi_k``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .channel import ChannelParams, Point, distance, source_power
from .errors import GeometryError, InfeasibleError, InvalidParameterError

_CLAMP_TOL = 1e-12


@dataclass(frozen=True)
class EaveLocation:
    """A potential eavesdropping location and the probability it is occupied."""

    position: Point
    prob: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.prob <= 1.0:
            raise InvalidParameterError(f"prob must be in [0, 1], got {self.prob}")


@dataclass(frozen=True)
class LinkSpec:
    """One directed link: transmitter, receiver, eavesdropping locations, jammers."""

    source: Point
    dest: Point
    eaves: tuple[EaveLocation, ...]
    jammers: tuple[Point, ...] = ()
    source_id: int = -1
    dest_id: int = -1

    def __post_init__(self):
        if self.source == self.dest:
            raise GeometryError("link source and destination coincide")
        for e in self.eaves:
            for j in self.jammers:
                if e.position == j:
                    raise GeometryError(f"jammer coincides with eavesdropping location {e.position}")

    @property
    def length(self) -> float:
        return distance(self.source, self.dest)


@dataclass(frozen=True)
class CostTerms:
    """Derived per-link quantities feeding the routing metric."""

    p_s: float
    phi: tuple[float, ...]
    x: float
    y: float

    @property
    def no_risk(self) -> bool:
        """All eavesdropping probabilities are zero; the link needs no jamming."""
        return self.x == 0.0


@dataclass(frozen=True)
class JamAllocation:
    """Per-location jamming powers for one link at a given ``pi_k``."""

    powers: tuple[float, ...]
    average: float
    pi_per_location: tuple[float, ...]
    clamped: tuple[int, ...] = ()
    slack: bool = False
    exceeds_p_max: bool = False


def phi_term(params: ChannelParams, link: LinkSpec, i: int) -> float:
    """Jamming effectiveness at eavesdropping location ``i``.

    Larger values mean the location is cheaper to jam.  Equivalent to
    ``gamma_e * d_se**alpha * sum_j d_je**-alpha / P_S``.
    """
    e = link.eaves[i].position
    d_se = distance(link.source, e)
    if d_se == 0.0:
        raise GeometryError("eavesdropper co-located with the link source")
    acc = 0.0
    for j in link.jammers:
        d_je = distance(j, e)
        if d_je == 0.0:
            raise GeometryError("eavesdropper co-located with a jammer")
        acc += d_je**-params.alpha
    ratio = (d_se / link.length) ** params.alpha
    return params.gamma_e / (params.gamma_d * params.k_rho) * ratio * acc


def phi_terms(params: ChannelParams, link: LinkSpec) -> tuple[float, ...]:
    return tuple(phi_term(params, link, i) for i in range(len(link.eaves)))


def xy_terms(params: ChannelParams, link: LinkSpec) -> tuple[float, float]:
    """Aggregates (x, y) of the per-location phi values.

    x = (1/sqrt(|E|)) * sum_i sqrt(p_i / phi_i)
    y = (1/|E|) * sum_i 1 / phi_i
    """
    if not link.eaves:
        raise InvalidParameterError("link has no eavesdropping locations")
    phis = phi_terms(params, link)
    n = len(phis)
    x = sum(math.sqrt(e.prob / f) for e, f in zip(link.eaves, phis)) / math.sqrt(n)
    y = sum(1.0 / f for f in phis) / n
    return x, y


def cost_terms(params: ChannelParams, link: LinkSpec) -> CostTerms:
    x, y = xy_terms(params, link)
    return CostTerms(
        p_s=source_power(params, link.length),
        phi=phi_terms(params, link),
        x=x,
        y=y,
    )


def jam_power_single(params: ChannelParams, link: LinkSpec, pi_k: float) -> float:
    """Jamming power against a single certain eavesdropper: (1/pi - 1) / phi."""
    if len(link.eaves) != 1 or link.eaves[0].prob != 1.0:
        raise InvalidParameterError("jam_power_single requires exactly one location with prob 1")
    if pi_k <= 0.0:
        raise InfeasibleError("pi_k <= 0 requires infinite jamming power")
    if pi_k > 1.0:
        raise InvalidParameterError(f"pi_k must be in (0, 1], got {pi_k}")
    return (1.0 / pi_k - 1.0) / phi_term(params, link, 0)


def eaves_prob_single(params: ChannelParams, link: LinkSpec, p_j: float) -> float:
    """Capture probability at the single eavesdropping location for jamming power ``p_j``."""
    if p_j < 0.0:
        raise InvalidParameterError(f"jamming power must be non-negative, got {p_j}")
    return 1.0 / (1.0 + phi_term(params, link, 0) * p_j)


def jam_power_multi(params: ChannelParams, link: LinkSpec, pi_k: float) -> JamAllocation:
    """Minimum-total jamming powers over all eavesdropping locations.

    Solves the Lagrangian allocation and handles its missing non-negativity
    constraints by active-set iteration: locations whose closed-form power
    comes out negative are clamped to zero (their capture probability
    saturates at 1) and the system is re-solved on the remaining set.
    """
    if pi_k <= 0.0:
        raise InfeasibleError("pi_k <= 0 requires infinite jamming power")
    if not link.eaves:
        raise InvalidParameterError("link has no eavesdropping locations")
    phis = phi_terms(params, link)
    probs = [e.prob for e in link.eaves]
    n = len(phis)
    p_total = sum(probs)

    if pi_k >= p_total:
        # Even with zero jamming the weighted capture probability is <= pi_k.
        return JamAllocation(
            powers=(0.0,) * n,
            average=0.0,
            pi_per_location=(1.0,) * n,
            slack=True,
        )

    active = [i for i in range(n) if probs[i] > 0.0]
    clamped: list[int] = [i for i in range(n) if probs[i] == 0.0]
    powers = [0.0] * n
    while True:
        pi_eff = pi_k - sum(probs[i] for i in clamped if probs[i] > 0.0)
        if pi_eff <= 0.0:
            raise InfeasibleError("clamped locations alone exceed the secrecy budget")
        s = sum(math.sqrt(probs[i] / phis[i]) for i in active)
        negative = []
        for i in active:
            powers[i] = math.sqrt(probs[i] / phis[i]) * s / pi_eff - 1.0 / phis[i]
            if powers[i] < -_CLAMP_TOL:
                negative.append(i)
        if not negative:
            break
        worst = min(negative, key=lambda i: powers[i])
        active.remove(worst)
        clamped.append(worst)
        powers[worst] = 0.0
    for i in active:
        powers[i] = max(powers[i], 0.0)

    pis = tuple(1.0 / (1.0 + phis[i] * powers[i]) for i in range(n))
    return JamAllocation(
        powers=tuple(powers),
        average=sum(powers) / n,
        pi_per_location=pis,
        clamped=tuple(sorted(i for i in clamped if probs[i] > 0.0)),
        exceeds_p_max=any(p > params.p_max for p in powers),
    )


def link_cost(params: ChannelParams, link: LinkSpec, pi_k: float) -> float:
    """Total link cost: source power plus average jamming power."""
    return source_power(params, link.length) + jam_power_multi(params, link, pi_k).average
