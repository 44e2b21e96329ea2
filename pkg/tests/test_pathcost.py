import numpy as np
import pytest

import secroute.pathcost as pc
from secroute.channel import source_power
from secroute.errors import InvalidParameterError
from secroute.linkcost import jam_power_multi
from secroute.pathcost import (
    PathSpec,
    allocate_secrecy,
    jam_power_on_path,
    link_c1_c2,
    path_cost,
)
from tests.conftest import rand_link, rand_path


def test_path_spec_requires_chained_links(params):
    rng = np.random.default_rng(0)
    a = rand_link(rng, params)
    b = rand_link(rng, params)  # endpoints unrelated to a
    with pytest.raises(InvalidParameterError):
        PathSpec(links=(a, b))
    with pytest.raises(InvalidParameterError):
        PathSpec(links=())


def test_allocation_proportional_to_x(monkeypatch, params):
    rng = np.random.default_rng(1)
    path = rand_path(rng, params, 2)
    fake = iter([(1.0, 0.3), (2.0, 0.4), (1.0, 0.3), (2.0, 0.4)])
    monkeypatch.setattr(pc, "xy_terms", lambda p, l: next(fake))
    alloc = allocate_secrecy(params, path, 0.1)
    assert alloc.pi_per_link == pytest.approx((1.0 / 30.0, 2.0 / 30.0), rel=1e-12)
    assert sum(alloc.pi_per_link) == pytest.approx(0.1, rel=1e-12)


def test_allocation_sums_to_budget(params):
    rng = np.random.default_rng(2)
    for _ in range(20):
        path = rand_path(rng, params, int(rng.integers(1, 5)))
        alloc = allocate_secrecy(params, path, 0.1)
        assert sum(alloc.pi_per_link) == pytest.approx(0.1, rel=1e-12)
        assert all(a >= 0.0 for a in alloc.pi_per_link)


def test_allocation_warns_on_coarse_budget(params):
    rng = np.random.default_rng(3)
    path = rand_path(rng, params, 1)
    with pytest.warns(UserWarning):
        allocate_secrecy(params, path, 0.5)


def test_identical_links_split_evenly(params):
    from secroute.channel import Point
    from secroute.linkcost import EaveLocation, LinkSpec

    def shifted(dx):  # the same local geometry translated along the path
        return LinkSpec(
            source=Point(dx, 0.0),
            dest=Point(dx + 1.0, 0.0),
            eaves=(EaveLocation(Point(dx + 0.5, 0.7), 1.0),),
            jammers=(Point(dx + 0.5, 0.3),),
        )

    path = PathSpec(links=(shifted(0.0), shifted(1.0)))
    alloc = allocate_secrecy(params, path, 0.1)
    assert alloc.pi_per_link[0] == pytest.approx(alloc.pi_per_link[1], rel=1e-12)
    # equal split is optimal here, so optimizing cannot beat it
    even = sum(
        source_power(params, l.length) + jam_power_multi(params, l, 0.05).average
        for l in path.links
    )
    assert path_cost(params, path, 0.1).total == pytest.approx(even, rel=1e-9)


def test_cost_identity_closed_form_vs_direct(params):
    """sum(c1) + (sum c2)^2 equals source power plus the per-link jamming
    powers solved independently at the allocated budgets."""
    rng = np.random.default_rng(5)
    checked = 0
    while checked < 50:
        n_links = int(rng.integers(1, 5))
        path = rand_path(rng, params, n_links)
        alloc = allocate_secrecy(params, path, 0.1)
        direct = 0.0
        ok = True
        for link, pi_k in zip(path.links, alloc.pi_per_link):
            a = jam_power_multi(params, link, pi_k)
            if a.clamped or a.slack:
                ok = False
                break
            direct += source_power(params, link.length) + a.average
        if not ok:
            continue
        closed = path_cost(params, path, 0.1).total
        assert closed == pytest.approx(direct, rel=1e-9)
        checked += 1


def test_jam_power_on_path_matches_links(params):
    rng = np.random.default_rng(6)
    path = rand_path(rng, params, 3)
    alloc = allocate_secrecy(params, path, 0.1)
    powers = jam_power_on_path(params, path, 0.1)
    for link, pi_k, p in zip(path.links, alloc.pi_per_link, powers):
        assert p == pytest.approx(jam_power_multi(params, link, pi_k).average, rel=1e-9)


def test_link_c1_c2_definition(params):
    rng = np.random.default_rng(7)
    link = rand_link(rng, params)
    x, y = pc.xy_terms(params, link)
    c1, c2 = link_c1_c2(params, link, 0.1)
    assert c1 == pytest.approx(source_power(params, link.length) - y, rel=1e-12)
    assert c2 == pytest.approx(x / 0.1**0.5, rel=1e-12)
    assert c2 >= 0.0


def test_budget_validation(params):
    rng = np.random.default_rng(8)
    path = rand_path(rng, params, 1)
    for bad in (0.0, 1.0, -0.5):
        with pytest.raises(InvalidParameterError):
            allocate_secrecy(params, path, bad)
        with pytest.raises(InvalidParameterError):
            path_cost(params, path, bad)
