import numpy as np
import pytest

from secroute.coding import (
    CodingBlock,
    _rank_gf2,
    _wilson,
    capture_matrix,
    decodable,
    encode_next,
    simulate_link_secrecy,
)
from secroute.errors import BlockExhaustedError, InvalidParameterError
from secroute.linkcost import jam_power_multi
from tests.conftest import rand_link


def test_rank_gf2_basics():
    assert _rank_gf2([]) == 0
    assert _rank_gf2([0b101]) == 1
    assert _rank_gf2([0b101, 0b101]) == 1
    assert _rank_gf2([0b101, 0b011, 0b110]) == 2  # third is the XOR of the first two
    assert _rank_gf2([0b001, 0b010, 0b100]) == 3
    assert _rank_gf2([0, 0]) == 0


def test_encode_next_builds_independent_set():
    rng = np.random.default_rng(0)
    for m in (1, 2, 5, 8):
        block = CodingBlock(message_count=m)
        vectors = [encode_next(block, rng) for _ in range(m)]
        assert _rank_gf2(vectors) == m
        assert decodable(vectors, m)
        with pytest.raises(BlockExhaustedError):
            encode_next(block, rng)


def test_missing_any_transmission_blocks_decoding():
    rng = np.random.default_rng(1)
    m = 6
    block = CodingBlock(message_count=m)
    vectors = [encode_next(block, rng) for _ in range(m)]
    for i in range(m):
        assert not decodable(vectors[:i] + vectors[i + 1 :], m)


def test_coding_block_validation():
    with pytest.raises(InvalidParameterError):
        CodingBlock(message_count=0)


def test_capture_matrix_diagonal_matches_budget(params):
    rng = np.random.default_rng(2)
    link = rand_link(rng, params, n_eaves=3, probs=(0.5, 0.3, 0.2))
    pi_k = 0.2
    cm = capture_matrix(params, link, pi_k)
    alloc = jam_power_multi(params, link, pi_k)
    for i in range(3):
        assert cm.entries[i][i] == pytest.approx(alloc.pi_per_location[i], rel=1e-12)
    # a location is hardest to reach on its own jammed transmission only
    # when it is the cheapest to jam; all entries are probabilities
    assert all(0.0 < p <= 1.0 for row in cm.entries for p in row)


def test_wilson_interval_properties():
    lo, hi = _wilson(50, 100)
    assert lo < 0.5 < hi
    lo2, hi2 = _wilson(5000, 10000)
    assert hi2 - lo2 < hi - lo  # shrinks with more trials
    assert _wilson(0, 0) == (0.0, 1.0)
    lo3, hi3 = _wilson(0, 100)
    assert lo3 == pytest.approx(0.0, abs=1e-12) and hi3 < 0.1


def test_simulate_link_secrecy_bounds(params):
    rng = np.random.default_rng(3)
    link = rand_link(rng, params, n_eaves=2, probs=(0.6, 0.4))
    stats = simulate_link_secrecy(params, link, 0.3, trials=20000, rng=rng)
    assert stats.trials == 20000
    for rate, lo, hi, cap in zip(
        stats.decode_rate, stats.wilson_low, stats.wilson_high, stats.analytic_capture
    ):
        assert lo <= rate <= hi
        # full decoding requires capturing every transmission, so it can
        # never be more likely than capturing the one jammed against you
        assert rate <= cap + 3.0 * np.sqrt(cap * (1 - cap) / stats.trials)
    with pytest.raises(InvalidParameterError):
        simulate_link_secrecy(params, link, 0.3, trials=0, rng=rng)
