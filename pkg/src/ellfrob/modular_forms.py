"""Eisenstein series, their tau-derivatives, and the Dedekind eta function.

Conventions used throughout the package:

* ``e[x] := exp(2*pi*i*x)``, the normalized exponential (:func:`e_of`);
* ``q := e[tau]`` is the nome of a modulus ``tau`` in the upper half-plane;
* ``D := (1/(2*pi*i)) d/dtau`` is the normalized tau-derivative, so that
  ``D q^n = n q^n``;
* ``c := (2*pi*i)^2 = -4*pi^2`` normalizes the Weierstrass functions in
  :mod:`ellfrob.theta_weierstrass`.

All q-series are truncated adaptively: summation stops once the current term
has magnitude below ``tail_tol`` times the running sum for two consecutive
terms (terms of these series decay monotonically once ``Im tau >= im_min``),
and raises :class:`~ellfrob.errors.NonConvergence` if ``max_terms`` is
exhausted first.

The derivative ring is closed under D:

    D E2 = (E2^2 - E4) / 12
    D E4 = (E2 E4 - E6) / 3
    D E6 = (E2 E6 - E4^2) / 2

and iterating these gives every higher derivative used here.  Each
tau-derivative is also available by termwise differentiation of the defining
q-series; the residual between the two routes is exposed for testing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DegenerateInput, NonConvergence, UnsupportedOrder

TWO_PI_I = 2j * math.pi
#: c = (2*pi*i)^2
C_SQ = TWO_PI_I * TWO_PI_I

_EISENSTEIN_COEFF = {2: -24, 4: 240, 6: -504}


def e_of(x: complex) -> complex:
    """The normalized exponential e[x] = exp(2*pi*i*x).

    Single-valued in ``x``; no logarithm or branch choice is involved.
    """
    return cmath.exp(TWO_PI_I * x)


def divisor_sigma(k: int, n: int) -> int:
    """Sum of k-th powers of the positive divisors of ``n``, exactly.

    Only the odd exponents k in {1, 3, 5} appearing in the weight-2/4/6
    q-series are accepted.  Python integers are arbitrary-precision, so the
    result never overflows.
    """
    if k not in (1, 3, 5):
        raise UnsupportedOrder(f"divisor_sigma implements k in {{1,3,5}}, got {k}")
    if n < 1:
        raise DegenerateInput(f"divisor_sigma needs n >= 1, got {n}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            other = n // d
            if other != d:
                total += other**k
        d += 1
    return total


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation policy for all q-series in the package.

    ``max_terms``: hard cap on summed terms (>= 8).
    ``tail_tol``: relative magnitude at which summation stops (> 0).
    ``im_min``: evaluation routines require Im(tau) >= im_min; the series
    lose accuracy as Im(tau) decreases and no modular reduction is applied
    (E2 is only quasi-modular, so a silent reduction would be wrong).
    """

    max_terms: int = 256
    tail_tol: float = 1e-14
    im_min: float = 0.3

    def __post_init__(self) -> None:
        if self.max_terms < 8:
            raise DegenerateInput(f"max_terms must be >= 8, got {self.max_terms}")
        if not self.tail_tol > 0:
            raise DegenerateInput(f"tail_tol must be positive, got {self.tail_tol}")
        if not self.im_min > 0:
            raise DegenerateInput(f"im_min must be positive, got {self.im_min}")


DEFAULT_CONFIG = SeriesConfig()


@dataclass(frozen=True)
class HalfPlanePoint:
    """A modulus tau with Im(tau) > 0."""

    tau: complex

    def __post_init__(self) -> None:
        if not complex(self.tau).imag > 0:
            raise DegenerateInput(f"tau must lie in the upper half-plane, got {self.tau}")


def _tau_value(tau, cfg: SeriesConfig) -> complex:
    """Extract a validated complex modulus from a HalfPlanePoint or number."""
    t = complex(tau.tau) if isinstance(tau, HalfPlanePoint) else complex(tau)
    if t.imag < cfg.im_min:
        raise DegenerateInput(
            f"Im(tau) = {t.imag:g} is below im_min = {cfg.im_min:g}; "
            "q-series are not evaluated this close to the real axis"
        )
    return t


@lru_cache(maxsize=8192)
def _eisenstein_series(weight: int, order: int, tau: complex, max_terms: int, tail_tol: float) -> complex:
    """Termwise q-series for D^order E_weight; order 0 is the series itself."""
    coeff = _EISENSTEIN_COEFF[weight]
    q = e_of(tau)
    qn = 1.0 + 0j
    total = 1.0 + 0j if order == 0 else 0.0 + 0j
    small_streak = 0
    for n in range(1, max_terms + 1):
        qn *= q
        term = coeff * divisor_sigma(weight - 1, n) * n**order * qn
        total += term
        if abs(term) < tail_tol * max(abs(total), 1e-300):
            small_streak += 1
            if small_streak >= 2:
                return total
        else:
            small_streak = 0
    raise NonConvergence(
        f"E{weight} derivative order {order} did not meet tail_tol={tail_tol:g} "
        f"within {max_terms} terms at tau={tau}"
    )


def eisenstein(weight: int, tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """E_w(tau) = 1 + c_w * sum_n sigma_{w-1}(n) q^n for w in {2, 4, 6}.

    The coefficients are c_2 = -24, c_4 = 240, c_6 = -504.
    """
    if weight not in (2, 4, 6):
        raise UnsupportedOrder(f"weight must be one of 2, 4, 6; got {weight}")
    t = _tau_value(tau, cfg)
    return _eisenstein_series(weight, 0, t, cfg.max_terms, cfg.tail_tol)


def _max_order(weight: int) -> int:
    return 3 if weight == 2 else 2


def eisenstein_tau_derivative(weight: int, order: int, tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """D^order E_weight(tau) by termwise q-series differentiation.

    D = (1/(2*pi*i)) d/dtau, so the n-th series term just picks up n^order.
    Orders 1..3 are supported for weight 2, orders 1..2 for weights 4 and 6
    (that is all the Frobenius-structure tensors ever need).
    """
    if weight not in (2, 4, 6):
        raise UnsupportedOrder(f"weight must be one of 2, 4, 6; got {weight}")
    if not 1 <= order <= _max_order(weight):
        raise UnsupportedOrder(
            f"derivative order {order} not supported for weight {weight} "
            f"(max {_max_order(weight)})"
        )
    t = _tau_value(tau, cfg)
    return _eisenstein_series(weight, order, t, cfg.max_terms, cfg.tail_tol)


def eisenstein_derivative_ring(weight: int, order: int, tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """D^order E_weight(tau) by recursive use of the closed derivative ring.

    First derivatives:

        D E2 = (E2^2 - E4)/12,  D E4 = (E2 E4 - E6)/3,  D E6 = (E2 E6 - E4^2)/2

    Higher orders differentiate these expressions again (product rule plus
    the same three identities), so the whole computation reduces to series
    evaluations of E2, E4, E6 alone.  This is the independent cross-check
    route for :func:`eisenstein_tau_derivative`.
    """
    if weight not in (2, 4, 6):
        raise UnsupportedOrder(f"weight must be one of 2, 4, 6; got {weight}")
    if not 1 <= order <= _max_order(weight):
        raise UnsupportedOrder(
            f"derivative order {order} not supported for weight {weight} "
            f"(max {_max_order(weight)})"
        )
    e2 = eisenstein(2, tau, cfg)
    e4 = eisenstein(4, tau, cfg)
    e6 = eisenstein(6, tau, cfg)
    d_e2 = (e2 * e2 - e4) / 12
    d_e4 = (e2 * e4 - e6) / 3
    d_e6 = (e2 * e6 - e4 * e4) / 2
    if order == 1:
        return {2: d_e2, 4: d_e4, 6: d_e6}[weight]
    d2_e2 = (2 * e2 * d_e2 - d_e4) / 12
    d2_e4 = (d_e2 * e4 + e2 * d_e4 - d_e6) / 3
    d2_e6 = (d_e2 * e6 + e2 * d_e6 - 2 * e4 * d_e4) / 2
    if order == 2:
        return {2: d2_e2, 4: d2_e4, 6: d2_e6}[weight]
    # order == 3, weight 2 only
    return (2 * d_e2 * d_e2 + 2 * e2 * d2_e2 - d2_e4) / 12


def eisenstein_tau_derivative_residual(weight: int, order: int, tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """|series route - ring route| for D^order E_weight, for testing."""
    a = eisenstein_tau_derivative(weight, order, tau, cfg)
    b = eisenstein_derivative_ring(weight, order, tau, cfg)
    return abs(a - b)


@lru_cache(maxsize=4096)
def _eta_product(tau: complex, max_terms: int, tail_tol: float) -> complex:
    prod = 1.0 + 0j
    q = e_of(tau)
    qn = 1.0 + 0j
    small_streak = 0
    for _n in range(1, max_terms + 1):
        qn *= q
        prod *= 1.0 - qn
        if abs(qn) < tail_tol:
            small_streak += 1
            if small_streak >= 2:
                return prod
        else:
            small_streak = 0
    raise NonConvergence(
        f"eta product did not meet tail_tol={tail_tol:g} within {max_terms} terms at tau={tau}"
    )


def dedekind_eta(tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """eta(tau) = e[tau/24] * prod_{n>=1} (1 - q^n)."""
    t = _tau_value(tau, cfg)
    return e_of(t / 24) * _eta_product(t, cfg.max_terms, cfg.tail_tol)


def klein_j(tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """The SL(2,Z)-invariant j(tau) = E4^3 / Delta with Delta = (E4^3 - E6^2)/1728.

    Used as an orbit invariant when checking that two moduli are equivalent
    under the modular group (e.g. by the Jacobi-inversion round trip).
    """
    e4 = eisenstein(4, tau, cfg)
    e6 = eisenstein(6, tau, cfg)
    delta = (e4**3 - e6**2) / 1728
    if delta == 0:
        raise DegenerateInput(f"discriminant form vanishes at tau={tau}")
    return e4**3 / delta
