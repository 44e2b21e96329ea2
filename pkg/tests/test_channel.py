import math

import pytest
from hypothesis import given, strategies as st

from secroute.channel import ChannelParams, Point, distance, k_rho, source_power
from secroute.errors import GeometryError, InvalidParameterError

# Frozen reference values computed by two independent methods (power-series
# exponential integral and high-resolution trapezoid quadrature), which agree
# to better than 1e-8 relative.
K_RHO_REF = {
    0.1: 1.9731118704705835,
    0.5: 0.7573420861221759,
    0.9: 0.323897895938,
}


@pytest.mark.parametrize("rho,expected", sorted(K_RHO_REF.items()))
def test_k_rho_reference_values(rho, expected):
    assert k_rho(rho) == pytest.approx(expected, rel=1e-8)


def test_k_rho_strictly_decreasing():
    values = [k_rho(r) for r in (0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99)]
    assert all(a > b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("rho", [0.0, 1.0, -0.1, 1.5])
def test_k_rho_rejects_out_of_range(rho):
    with pytest.raises(InvalidParameterError):
        k_rho(rho)


def test_source_power_formula(params):
    d = 1.7
    assert source_power(params, d) == pytest.approx(
        params.gamma_d * params.k_rho * d**params.alpha, rel=1e-15
    )


def test_source_power_alpha4():
    p = ChannelParams(alpha=4.0)
    assert source_power(p, 2.0) == pytest.approx(p.gamma_d * p.k_rho * 16.0, rel=1e-15)


def test_source_power_rejects_zero_length(params):
    with pytest.raises(GeometryError):
        source_power(params, 0.0)


@given(st.floats(0.01, 0.99), st.floats(0.001, 10.0))
def test_source_power_positive_and_monotone(rho, d):
    p = ChannelParams(rho=rho)
    assert 0.0 < source_power(p, d) < source_power(p, d * 1.5)


def test_channel_params_validation():
    with pytest.raises(InvalidParameterError):
        ChannelParams(alpha=1.5)
    with pytest.raises(InvalidParameterError):
        ChannelParams(rho=0.0)
    with pytest.raises(InvalidParameterError):
        ChannelParams(gamma_d=-1.0)
    with pytest.raises(InvalidParameterError):
        ChannelParams(p_max=0.0)


def test_point_distance():
    assert distance(Point(0.0, 0.0), Point(3.0, 4.0)) == 5.0
    with pytest.raises(InvalidParameterError):
        Point(math.nan, 0.0)
