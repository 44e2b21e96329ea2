"""Random linear coding over GF(2) per link.

A link with m eavesdropping locations codes over m messages: the i-th coded
transmission is jammed against location i, so a listener there misses it and
can never reach full rank.  The Monte-Carlo validator checks that empirical
full-decode rates stay below the analytic per-location capture probability.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import ChannelParams
from .errors import BlockExhaustedError, InvalidParameterError
from .linkcost import LinkSpec, jam_power_multi, phi_terms

_WILSON_Z99 = 2.5758293035489004


def _rank_gf2(vectors: list[int]) -> int:
    """Rank of bitmask-encoded GF(2) row vectors by Gaussian elimination."""
    basis: dict[int, int] = {}  # pivot bit -> reduced vector
    for v in vectors:
        while v:
            pivot = v.bit_length() - 1
            if pivot not in basis:
                basis[pivot] = v
                break
            v ^= basis[pivot]
    return len(basis)


@dataclass
class CodingBlock:
    """Tracks the coefficient vectors already sent for one coding block."""

    message_count: int
    sent: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.message_count < 1:
            raise InvalidParameterError("message_count must be >= 1")


def encode_next(block: CodingBlock, rng: np.random.Generator) -> int:
    """Draw a random nonzero GF(2) coefficient vector independent of all
    previously sent ones (rejection sampling)."""
    if len(block.sent) >= block.message_count:
        raise BlockExhaustedError("coding block already complete")
    rank = _rank_gf2(block.sent)
    while True:
        v = int(rng.integers(1, 1 << block.message_count))
        if _rank_gf2(block.sent + [v]) > rank:
            block.sent.append(v)
            return v


def decodable(received: list[int], message_count: int) -> bool:
    """True iff the received coded messages span all originals."""
    return _rank_gf2(received) == message_count


@dataclass(frozen=True)
class CaptureMatrix:
    """entries[i][j]: probability a listener at location i captures the
    transmission jammed against location j."""

    entries: tuple[tuple[float, ...], ...]


def capture_matrix(params: ChannelParams, link: LinkSpec, pi_k: float) -> CaptureMatrix:
    phis = phi_terms(params, link)
    powers = jam_power_multi(params, link, pi_k).powers
    rows = tuple(
        tuple(1.0 / (1.0 + phi_i * p_j) for p_j in powers) for phi_i in phis
    )
    return CaptureMatrix(entries=rows)


@dataclass(frozen=True)
class SecrecyStats:
    decode_rate: tuple[float, ...]
    wilson_low: tuple[float, ...]
    wilson_high: tuple[float, ...]
    analytic_capture: tuple[float, ...]
    trials: int


def _wilson(successes: int, trials: int, z: float = _WILSON_Z99) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    p = successes / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return center - half, center + half


def simulate_link_secrecy(
    params: ChannelParams,
    link: LinkSpec,
    pi_k: float,
    trials: int,
    rng: np.random.Generator,
) -> SecrecyStats:
    """Monte-Carlo full-decode rates per eavesdropping location.

    Each trial flips an independent capture coin per transmission using the
    capture matrix; a location decodes iff its captured coded messages reach
    full rank, which needs every one of the m independent transmissions.
    """
    if trials < 1:
        raise InvalidParameterError("trials must be >= 1")
    m = len(link.eaves)
    cm = capture_matrix(params, link, pi_k)
    probs = np.array(cm.entries)
    diag = tuple(probs[i, i] for i in range(m))

    rates, lows, highs = [], [], []
    for i in range(m):
        captured = rng.random((trials, m)) < probs[i]
        candidates = np.flatnonzero(captured.all(axis=1))
        decoded = 0
        for _ in candidates:
            block = CodingBlock(message_count=m)
            vectors = [encode_next(block, rng) for _ in range(m)]
            if decodable(vectors, m):
                decoded += 1
        rate = decoded / trials
        lo, hi = _wilson(decoded, trials)
        rates.append(rate)
        lows.append(lo)
        highs.append(hi)
    return SecrecyStats(
        decode_rate=tuple(rates),
        wilson_low=tuple(lows),
        wilson_high=tuple(highs),
        analytic_capture=diag,
        trials=trials,
    )
