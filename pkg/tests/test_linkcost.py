import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import secroute.linkcost as lc
from secroute.channel import ChannelParams, Point
from secroute.errors import GeometryError, InfeasibleError, InvalidParameterError
from secroute.linkcost import (
    EaveLocation,
    LinkSpec,
    cost_terms,
    eaves_prob_single,
    jam_power_multi,
    jam_power_single,
    link_cost,
    phi_term,
    xy_terms,
)
from tests.conftest import rand_link

# Frozen by an independent oracle transcription of the jamming-effectiveness
# formula for: alpha=2, gamma_d=0.8, gamma_e=0.6, rho=0.1, S=(0,0), D=(2,0),
# E=(1.5,1.0), jammers at (1.0,0.5) and (2.5,-0.5).
PHI_ORACLE = 0.7127066746928098


def _oracle_link():
    return LinkSpec(
        source=Point(0.0, 0.0),
        dest=Point(2.0, 0.0),
        eaves=(EaveLocation(Point(1.5, 1.0), 1.0),),
        jammers=(Point(1.0, 0.5), Point(2.5, -0.5)),
    )


def test_phi_oracle_value(params):
    assert phi_term(params, _oracle_link(), 0) == pytest.approx(PHI_ORACLE, rel=1e-12)


def test_phi_co_location_errors(params):
    link = LinkSpec(
        source=Point(0.0, 0.0),
        dest=Point(1.0, 0.0),
        eaves=(EaveLocation(Point(0.0, 0.0), 1.0),),
    )
    with pytest.raises(GeometryError):
        phi_term(params, link, 0)
    with pytest.raises(GeometryError):
        LinkSpec(
            source=Point(0.0, 0.0),
            dest=Point(1.0, 0.0),
            eaves=(EaveLocation(Point(0.5, 0.5), 1.0),),
            jammers=(Point(0.5, 0.5),),
        )


def _patch_phis(monkeypatch, phis):
    monkeypatch.setattr(lc, "phi_terms", lambda p, l: tuple(phis))
    monkeypatch.setattr(lc, "phi_term", lambda p, l, i: phis[i])


def test_xy_oracle(monkeypatch, params):
    # frozen hand computation for p=(1.0, 0.5, 0.25), phi=(2.0, 0.5, 3.0)
    _patch_phis(monkeypatch, (2.0, 0.5, 3.0))
    link = LinkSpec(
        source=Point(0.0, 0.0),
        dest=Point(1.0, 0.0),
        eaves=(
            EaveLocation(Point(0.1, 0.1), 1.0),
            EaveLocation(Point(0.2, 0.2), 0.5),
            EaveLocation(Point(0.3, 0.3), 0.25),
        ),
    )
    x, y = xy_terms(params, link)
    assert x == pytest.approx(1.1522652263201554, rel=1e-12)
    assert y == pytest.approx(0.9444444444444445, rel=1e-12)


def test_jam_power_multi_oracle(monkeypatch, params):
    # frozen Lagrangian solution for p=(0.9, 0.1), phi=(1, 4), pi_k=0.2;
    # verified against a 2000-point constraint-grid search.
    _patch_phis(monkeypatch, (1.0, 4.0))
    link = LinkSpec(
        source=Point(0.0, 0.0),
        dest=Point(1.0, 0.0),
        eaves=(EaveLocation(Point(0.4, 0.4), 0.9), EaveLocation(Point(0.6, 0.6), 0.1)),
    )
    alloc = jam_power_multi(params, link, 0.2)
    assert alloc.powers == pytest.approx((4.25, 0.625), rel=1e-12)
    assert alloc.average == pytest.approx(2.4375, rel=1e-12)
    # the per-location capture probabilities meet the budget exactly
    weighted = 0.9 * alloc.pi_per_location[0] + 0.1 * alloc.pi_per_location[1]
    assert weighted == pytest.approx(0.2, rel=1e-12)
    assert not alloc.clamped and not alloc.slack


def test_jam_power_multi_constraint_random(params):
    rng = np.random.default_rng(7)
    for _ in range(30):
        n = int(rng.integers(1, 4))
        probs = rng.uniform(0.2, 1.0, size=n)
        link = rand_link(rng, params, n_eaves=n, probs=probs)
        pi_k = float(rng.uniform(0.05, 0.9)) * float(np.sum(probs))
        alloc = jam_power_multi(params, link, pi_k)
        assert all(p >= 0.0 for p in alloc.powers)
        weighted = sum(p * q for p, q in zip(probs, alloc.pi_per_location))
        assert weighted == pytest.approx(pi_k, rel=1e-9)


def test_jam_power_multi_clamping(monkeypatch, params):
    # jamming the nearly-unjammable location is wasteful: it is written off
    # (capture probability 1) and the cheap location absorbs the budget
    _patch_phis(monkeypatch, (1e-6, 1e6))
    link = LinkSpec(
        source=Point(0.0, 0.0),
        dest=Point(1.0, 0.0),
        eaves=(EaveLocation(Point(0.4, 0.4), 0.5), EaveLocation(Point(0.6, 0.6), 0.5)),
    )
    alloc = jam_power_multi(params, link, 0.6)
    assert alloc.clamped == (0,)
    assert alloc.powers[0] == 0.0
    assert alloc.pi_per_location[0] == 1.0
    weighted = 0.5 * alloc.pi_per_location[0] + 0.5 * alloc.pi_per_location[1]
    assert weighted == pytest.approx(0.6, rel=1e-9)


def test_jam_power_multi_slack(params):
    link = _oracle_link()
    alloc = jam_power_multi(params, link, 1.0)
    assert alloc.slack and alloc.average == 0.0


def test_jam_power_multi_infeasible_budget(params):
    link = _oracle_link()
    with pytest.raises(InfeasibleError):
        jam_power_multi(params, link, 0.0)
    with pytest.raises(InfeasibleError):
        jam_power_multi(params, link, -0.1)


@given(st.floats(0.01, 0.99), st.integers(0, 2**32 - 1))
def test_single_eave_round_trip(pi_k, seed):
    # power for a target capture probability, then back: exact to 1e-12
    params = ChannelParams()
    rng = np.random.default_rng(seed)
    link = rand_link(rng, params, n_eaves=1)
    p_j = jam_power_single(params, link, pi_k)
    assert eaves_prob_single(params, link, p_j) == pytest.approx(pi_k, abs=1e-12)


def test_single_matches_multi(params):
    rng = np.random.default_rng(11)
    link = rand_link(rng, params, n_eaves=1)
    for pi_k in (0.05, 0.3, 0.9):
        single = jam_power_single(params, link, pi_k)
        multi = jam_power_multi(params, link, pi_k)
        assert multi.powers[0] == pytest.approx(single, rel=1e-12)


def test_cost_terms_and_link_cost(params):
    rng = np.random.default_rng(13)
    link = rand_link(rng, params, n_eaves=2, probs=(0.7, 0.3))
    terms = cost_terms(params, link)
    assert terms.p_s > 0 and len(terms.phi) == 2 and not terms.no_risk
    total = link_cost(params, link, 0.2)
    assert total == pytest.approx(terms.p_s + jam_power_multi(params, link, 0.2).average)


def test_no_risk_link(params):
    rng = np.random.default_rng(17)
    link = rand_link(rng, params, n_eaves=1, probs=(0.0,))
    assert cost_terms(params, link).no_risk
    alloc = jam_power_multi(params, link, 0.5)
    assert alloc.average == 0.0


def test_validation_errors(params):
    with pytest.raises(InvalidParameterError):
        EaveLocation(Point(0.0, 0.0), 1.5)
    with pytest.raises(GeometryError):
        LinkSpec(source=Point(0.0, 0.0), dest=Point(0.0, 0.0), eaves=())
    link = _oracle_link()
    with pytest.raises(InvalidParameterError):
        jam_power_single(params, link, 1.5)
    with pytest.raises(InvalidParameterError):
        eaves_prob_single(params, link, -1.0)
