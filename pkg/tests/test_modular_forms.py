"""Eisenstein series, eta, and j against high-precision reference values.

Reference constants were computed independently with mpmath at 50 digits.
"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellfrob.errors import DegenerateInput, NonConvergence, UnsupportedOrder
from ellfrob.modular_forms import (
    C_SQ,
    DEFAULT_CONFIG,
    TWO_PI_I,
    HalfPlanePoint,
    SeriesConfig,
    dedekind_eta,
    e_of,
    eisenstein,
    eisenstein_derivative_ring,
    eisenstein_tau_derivative,
    eisenstein_tau_derivative_residual,
    klein_j,
)

# mpmath oracles (50-digit working precision, rounded here)
E2_AT_I = 0.9549296585513720146133  # equals 3/pi
E4_AT_I = 1.455762892268709322462
E2_AT_GENERIC = 0.980634185863055055662 - 0.01412211969361852773442j
ETA_AT_I = 0.76822542232605665900
ETA_AT_13I = 0.7113271208298290678506
ETA_AT_GENERIC = 0.7489273387461058821701 + 0.01917143505996831322005j
TAU_GENERIC = 0.1 + 1.1j


class TestOracles:
    def test_e2_at_i(self):
        """E2(i) = 3/pi."""
        assert abs(eisenstein(2, 1j) - E2_AT_I) < 1e-15
        assert abs(eisenstein(2, 1j) - 3 / math.pi) < 1e-15

    def test_e4_at_i(self):
        assert abs(eisenstein(4, 1j) - E4_AT_I) < 1e-14

    def test_e6_vanishes_at_i(self):
        """i is the order-4 elliptic point; E6 has a zero there."""
        assert abs(eisenstein(6, 1j)) < 1e-14

    def test_e2_generic_point(self):
        assert abs(eisenstein(2, TAU_GENERIC) - E2_AT_GENERIC) < 1e-15

    @pytest.mark.parametrize(
        "tau,value",
        [(1j, ETA_AT_I), (1.3j, ETA_AT_13I), (TAU_GENERIC, ETA_AT_GENERIC)],
    )
    def test_eta(self, tau, value):
        assert abs(dedekind_eta(tau) - value) < 1e-14

    def test_eta_at_i_closed_form(self):
        """eta(i) = Gamma(1/4) / (2 pi^(3/4))."""
        closed = math.gamma(0.25) / (2 * math.pi ** 0.75)
        assert abs(dedekind_eta(1j) - closed) < 1e-14

    def test_klein_j_at_i(self):
        assert abs(klein_j(1j) - 1728.0) < 1e-9

    def test_klein_j_q_pole(self):
        """j ~ 1/q + 744 as Im tau grows (relative, the pole dominates)."""
        tau = 0.3 + 3j
        q = e_of(tau)
        j = klein_j(tau)
        assert abs(j - (1 / q + 744)) / abs(j) < 1e-9


class TestModularity:
    @pytest.mark.parametrize("weight", [2, 4, 6])
    def test_translation(self, weight):
        tau = 0.17 + 0.9j
        assert abs(eisenstein(weight, tau + 1) - eisenstein(weight, tau)) < 1e-13

    @pytest.mark.parametrize("weight", [4, 6])
    def test_inversion(self, weight):
        """E_k(-1/tau) = tau^k E_k(tau) for k = 4, 6."""
        tau = 0.13 + 1.21j
        lhs = eisenstein(weight, -1 / tau)
        rhs = tau**weight * eisenstein(weight, tau)
        assert abs(lhs - rhs) / abs(rhs) < 1e-12

    def test_e2_anomaly(self):
        """E2(-1/tau) = tau^2 E2(tau) + 12 tau / (2 pi i)."""
        tau = 0.21 + 0.83j
        lhs = eisenstein(2, -1 / tau)
        rhs = tau**2 * eisenstein(2, tau) + 12 * tau / TWO_PI_I
        assert abs(lhs - rhs) < 1e-12

    def test_eta_translation(self):
        """eta(tau + 1) = e^(pi i / 12) eta(tau)."""
        tau = -0.2 + 1.4j
        lhs = dedekind_eta(tau + 1)
        rhs = cmath.exp(1j * math.pi / 12) * dedekind_eta(tau)
        assert abs(lhs - rhs) < 1e-14


class TestDerivativeRing:
    """D = (1/2 pi i) d/dtau closes on (E2, E4, E6)."""

    @pytest.mark.parametrize("weight", [2, 4, 6])
    @pytest.mark.parametrize("order", [1, 2])
    def test_ring_matches_termwise(self, weight, order):
        tau = 0.08 + 1.05j
        ring = eisenstein_derivative_ring(weight, order, tau)
        term = eisenstein_tau_derivative(weight, order, tau)
        assert abs(ring - term) < 1e-11 * max(1.0, abs(term))

    def test_de2_closed_form(self):
        """D E2 = (E2^2 - E4) / 12."""
        tau = -0.31 + 0.77j
        e2, e4 = eisenstein(2, tau), eisenstein(4, tau)
        want = (e2 * e2 - e4) / 12
        assert abs(eisenstein_derivative_ring(2, 1, tau) - want) < 1e-15

    def test_de4_closed_form(self):
        """D E4 = (E2 E4 - E6) / 3."""
        tau = 0.4 + 1.6j
        e2, e4, e6 = (eisenstein(k, tau) for k in (2, 4, 6))
        want = (e2 * e4 - e6) / 3
        assert abs(eisenstein_derivative_ring(4, 1, tau) - want) < 1e-15

    def test_de6_closed_form(self):
        """D E6 = (E2 E6 - E4^2) / 2."""
        tau = 0.05 + 0.95j
        e2, e4, e6 = (eisenstein(k, tau) for k in (2, 4, 6))
        want = (e2 * e6 - e4 * e4) / 2
        assert abs(eisenstein_derivative_ring(6, 1, tau) - want) < 1e-15

    @pytest.mark.parametrize("weight", [2, 4, 6])
    def test_residual_helper(self, weight):
        assert eisenstein_tau_derivative_residual(weight, 1, 0.02 + 1.3j) < 1e-11


@settings(max_examples=25, deadline=None)
@given(
    re=st.floats(-0.5, 0.5),
    im=st.floats(0.5, 2.0),
)
def test_more_terms_do_not_move_converged_values(re, im):
    """Once the tail test passes, doubling max_terms is a no-op."""
    tau = complex(re, im)
    small = SeriesConfig(max_terms=128)
    big = SeriesConfig(max_terms=512)
    assert abs(eisenstein(4, tau, small) - eisenstein(4, tau, big)) < 1e-13


@settings(max_examples=25, deadline=None)
@given(re=st.floats(-0.5, 0.5), im=st.floats(0.6, 2.0))
def test_eta_cube_discriminant_consistency(re, im):
    """eta^24 = (E4^3 - E6^2) / 1728."""
    tau = complex(re, im)
    e4, e6 = eisenstein(4, tau), eisenstein(6, tau)
    lhs = dedekind_eta(tau) ** 24
    rhs = (e4**3 - e6**2) / 1728
    assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(rhs))


class TestValidation:
    def test_lower_half_plane_rejected(self):
        with pytest.raises(DegenerateInput):
            HalfPlanePoint(0.3 - 1j)

    def test_bad_weight(self):
        with pytest.raises(UnsupportedOrder):
            eisenstein(8, 1j)

    def test_unsupported_order(self):
        with pytest.raises(UnsupportedOrder):
            eisenstein_derivative_ring(4, 4, 1j)

    def test_shallow_tau_raises(self):
        """Points too close to the real axis are outside the working strip."""
        with pytest.raises((NonConvergence, DegenerateInput)):
            eisenstein(4, 0.3 + 0.01j)

    def test_constants(self):
        assert C_SQ == TWO_PI_I**2
        assert abs(C_SQ + 4 * math.pi**2) < 1e-12
