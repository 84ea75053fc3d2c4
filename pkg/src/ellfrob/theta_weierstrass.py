"""The odd Jacobi theta function, Weierstrass functions, and identity suite.

Definitions (with e[x] = exp(2*pi*i*x), c = (2*pi*i)^2, D = (1/2*pi*i) d/dtau):

    theta(x; tau) = sum_{n in Z} e[ (1/2)(n + 1/2)^2 tau + (n + 1/2)(x + 1/2) ]

an odd entire function of x with simple zeros exactly on Z + Z*tau, and

    wp(z; tau)   = E2(tau)/12 - (1/c) (log theta)''(z)     (normalized P)
    zeta(z; tau) = (1/c) (log theta)'(z) - (E2(tau)/12) z  (normalized zeta)

so that wp has the Laurent expansion (1/c) z^{-2} + O(z^2) at the origin and
zeta' = -wp.  The normalized half-period values are

    e1 = wp(1/2), e2 = wp((1+tau)/2), e3 = wp(tau/2),   e1 + e2 + e3 = 0.

Argument reduction: before summing the series, x is translated by the lattice
point m + n*tau nearest to it; the exact quasi-periodicity cocycle

    theta(x + m + n*tau) = (-1)^{m+n} e[-n^2 tau/2 - n x] theta(x)

(differentiated through by the product rule for derivative orders >= 1) is
multiplied back, so accuracy is uniform in x.

:func:`identity_residual` evaluates both sides of each named identity by
independent routes and returns |LHS - RHS| / max(1, |LHS|, |RHS|).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, NamedTuple

import numpy as np

from .errors import (
    DegenerateInput,
    NonConvergence,
    PoleTooClose,
    UnknownIdentity,
    UnsupportedOrder,
)
from .modular_forms import (
    C_SQ,
    DEFAULT_CONFIG,
    TWO_PI_I,
    HalfPlanePoint,
    SeriesConfig,
    _tau_value,
    dedekind_eta,
    e_of,
    eisenstein,
    eisenstein_derivative_ring,
    eisenstein_tau_derivative,
)

#: default minimum distance from an evaluation point to the pole lattice
POLE_MARGIN = 0.02

#: finite-difference step for oracle derivatives (5-point stencils)
FD_STEP = 1e-5


@dataclass(frozen=True)
class TorusPoint:
    """A point z on the torus C/(Z + Z*tau)."""

    z: complex
    tau: complex

    def __post_init__(self) -> None:
        tau = self.tau.tau if isinstance(self.tau, HalfPlanePoint) else self.tau
        if not complex(tau).imag > 0:
            raise DegenerateInput(f"tau must lie in the upper half-plane, got {tau}")
        object.__setattr__(self, "tau", complex(tau))
        object.__setattr__(self, "z", complex(self.z))


class HalfPeriodValues(NamedTuple):
    e1: complex
    e2: complex
    e3: complex


def lattice_distance(z: complex, tau: complex) -> float:
    """Distance from z to the nearest point of Z + Z*tau."""
    nu = z.imag / tau.imag
    best = math.inf
    for n in (math.floor(nu), math.ceil(nu)):
        mu = z.real - n * tau.real
        for m in (math.floor(mu), math.ceil(mu)):
            best = min(best, abs(z - (m + n * tau)))
    return best


def _reduce(x: np.ndarray, tau: complex) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nearest-lattice-point reduction x = x0 + m + n*tau with |Im x0| <= Im(tau)/2."""
    n = np.round(x.imag / tau.imag)
    m = np.round((x - n * tau).real)
    x0 = x - m - n * tau
    return x0, m, n


def _theta_series(x0: np.ndarray, tau: complex, cfg: SeriesConfig, kmax: int) -> list[np.ndarray]:
    """theta^{(k)}(x0) for k = 0..kmax by termwise differentiation.

    x0 must already be reduced; the series is summed in symmetric pairs
    (n, -1-n) and stops once a pair is negligible twice in a row.
    """
    shape = x0.shape
    sums = [np.zeros(shape, dtype=complex) for _ in range(kmax + 1)]
    # exponents of the two paired terms (n, -1-n): a = n + 1/2 and -a
    log_w = TWO_PI_I * (x0 + 0.5)
    small_streak = 0
    for n in range(cfg.max_terms):
        a = n + 0.5
        base = e_of(0.5 * a * a * tau)  # scalar
        tp = base * np.exp(a * log_w)
        tm = base * np.exp(-a * log_w)
        fac = TWO_PI_I * a
        biggest = 0.0
        for k in range(kmax + 1):
            contrib = fac**k * tp + (-fac) ** k * tm
            sums[k] += contrib
            biggest = max(biggest, float(np.max(np.abs(contrib))))
        scale = max(float(np.max(np.abs(sums[0]))), 1e-300)
        if biggest < cfg.tail_tol * max(scale, 1.0):
            small_streak += 1
            if small_streak >= 2:
                return sums
        else:
            small_streak = 0
    raise NonConvergence(
        f"theta series did not meet tail_tol={cfg.tail_tol:g} within {cfg.max_terms} terms"
    )


def _theta_derivs(x, tau: complex, cfg: SeriesConfig, kmax: int) -> list[np.ndarray]:
    """theta^{(k)}(x) for k = 0..kmax with argument reduction and cocycle.

    theta^{(k)}(x0 + m + n*tau)
        = (-1)^{m+n} e[-n^2 tau/2 - n x0] * sum_j C(k,j) (-2*pi*i*n)^{k-j} theta^{(j)}(x0)
    """
    xa = np.asarray(x, dtype=complex)
    x0, m, n = _reduce(xa, tau)
    base = _theta_series(x0, tau, cfg, kmax)
    sign = np.where((m + n) % 2 == 0, 1.0, -1.0)
    pref = sign * np.exp(TWO_PI_I * (-0.5 * n * n * tau - n * x0))
    out = []
    for k in range(kmax + 1):
        acc = np.zeros_like(x0)
        for j in range(k + 1):
            acc = acc + math.comb(k, j) * (-TWO_PI_I * n) ** (k - j) * base[j]
        out.append(pref * acc)
    return out


def theta11_d(order: int, x, tau, cfg: SeriesConfig = DEFAULT_CONFIG):
    """The order-th x-derivative of theta(x; tau), orders 0 through 3.

    Accepts a scalar or ndarray x; tau is a HalfPlanePoint or complex scalar.
    """
    if order not in (0, 1, 2, 3):
        raise UnsupportedOrder(f"theta11_d supports orders 0..3, got {order}")
    t = _tau_value(tau, cfg)
    vals = _theta_derivs(x, t, cfg, order)[order]
    if np.ndim(x) == 0:
        return complex(vals)
    return vals


def _log_theta_derivs(x, tau: complex, cfg: SeriesConfig, kmax: int) -> list[np.ndarray]:
    """(log theta)^{(k)}(x) for k = 1..kmax (kmax <= 4), array-capable."""
    th = _theta_derivs(x, tau, cfg, kmax)
    r1 = th[1] / th[0]
    out = [r1]
    if kmax >= 2:
        s2 = th[2] / th[0]
        out.append(s2 - r1 * r1)
    if kmax >= 3:
        s3 = th[3] / th[0]
        out.append(s3 - 3 * s2 * r1 + 2 * r1**3)
    if kmax >= 4:
        s4 = th[4] / th[0]
        out.append(s4 - 4 * s3 * r1 - 3 * s2 * s2 + 12 * s2 * r1 * r1 - 6 * r1**4)
    return out


def _wp_values(z, tau: complex, cfg: SeriesConfig, *, d2: bool = False):
    """(wp, wp', zeta[, wp'']) at z (array-capable, no pole-margin check)."""
    e2 = eisenstein(2, tau, cfg)
    lg = _log_theta_derivs(z, tau, cfg, 4 if d2 else 3)
    za = np.asarray(z, dtype=complex)
    wp = e2 / 12 - lg[1] / C_SQ
    wp_dz = -lg[2] / C_SQ
    zeta = lg[0] / C_SQ - (e2 / 12) * za
    if d2:
        return wp, wp_dz, zeta, -lg[3] / C_SQ
    return wp, wp_dz, zeta


def _check_margin(z: complex, tau: complex, pole_margin: float) -> None:
    d = lattice_distance(z, tau)
    if d < pole_margin:
        raise PoleTooClose(
            f"z={z} is at distance {d:.3g} from the period lattice "
            f"(margin {pole_margin:g})"
        )


def weierstrass(kind: str, pt: TorusPoint, cfg: SeriesConfig = DEFAULT_CONFIG, *, pole_margin: float = POLE_MARGIN) -> complex:
    """Normalized Weierstrass data at a torus point.

    kind = "p":    wp(z; tau)
    kind = "p_dz": d wp / dz
    kind = "zeta": zeta(z; tau)
    """
    if kind not in ("p", "p_dz", "zeta"):
        raise UnknownIdentity(f"weierstrass kind must be p, p_dz or zeta; got {kind!r}")
    t = _tau_value(pt.tau, cfg)
    _check_margin(pt.z, t, pole_margin)
    wp, wp_dz, zeta = _wp_values(pt.z, t, cfg)
    return complex({"p": wp, "p_dz": wp_dz, "zeta": zeta}[kind])


@lru_cache(maxsize=2048)
def _half_periods_cached(tau: complex, max_terms: int, tail_tol: float, im_min: float) -> HalfPeriodValues:
    cfg = SeriesConfig(max_terms=max_terms, tail_tol=tail_tol, im_min=im_min)
    zs = np.array([0.5, (1 + tau) / 2, tau / 2], dtype=complex)
    wp, _, _ = _wp_values(zs, tau, cfg)
    vals = HalfPeriodValues(complex(wp[0]), complex(wp[1]), complex(wp[2]))
    scale = max(1.0, max(abs(v) for v in vals))
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(vals[i] - vals[j]) < 1e-12 * scale:
                raise DegenerateInput(f"half-period values coincide at tau={tau}: {vals}")
    return vals


def half_periods(tau, cfg: SeriesConfig = DEFAULT_CONFIG) -> HalfPeriodValues:
    """(e1, e2, e3) = wp at (1/2, (1+tau)/2, tau/2); always pairwise distinct."""
    t = _tau_value(tau, cfg)
    return _half_periods_cached(t, cfg.max_terms, cfg.tail_tol, cfg.im_min)


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------

def _rel(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def fd5(f: Callable[[complex], complex], x0: complex, h: float = FD_STEP) -> complex:
    """5-point central first derivative; the standard oracle stencil here."""
    return (-f(x0 + 2 * h) + 8 * f(x0 + h) - 8 * f(x0 - h) + f(x0 - 2 * h)) / (12 * h)


def _need(sample: dict, *keys: str) -> list:
    try:
        return [sample[k] for k in keys]
    except KeyError as exc:
        raise DegenerateInput(f"identity sample is missing key {exc.args[0]!r}") from None


def _res_cubic_a(sample: dict, cfg: SeriesConfig) -> float:
    (z, tau) = _need(sample, "z", "tau")
    wp, wp_dz, _ = _wp_values(z, tau, cfg)
    e4 = eisenstein(4, tau, cfg)
    e6 = eisenstein(6, tau, cfg)
    lhs = wp_dz * wp_dz / C_SQ
    rhs = 4 * wp**3 - e4 * wp / 12 + e6 / 216
    return _rel(complex(lhs), complex(rhs))


def _res_cubic_b(sample: dict, cfg: SeriesConfig) -> float:
    (z, tau) = _need(sample, "z", "tau")
    wp, _, _, wp_d2 = _wp_values(z, tau, cfg, d2=True)
    e4 = eisenstein(4, tau, cfg)
    lhs = wp_d2 / C_SQ
    rhs = 6 * wp * wp - e4 / 24
    return _rel(complex(lhs), complex(rhs))


def _res_zeta_quasi(sample: dict, cfg: SeriesConfig, direction: str) -> float:
    (z, tau) = _need(sample, "z", "tau")
    e2 = eisenstein(2, tau, cfg)
    shift = 1 if direction == "1" else tau
    _, _, z1 = _wp_values(z + shift, tau, cfg)
    _, _, z0 = _wp_values(z, tau, cfg)
    lhs = z1 - z0
    rhs = -e2 / 12 if direction == "1" else -e2 * tau / 12 - 1 / TWO_PI_I
    return _rel(complex(lhs), complex(rhs))


def _res_cubic_tilde_a(sample: dict, cfg: SeriesConfig) -> float:
    (z, tau) = _need(sample, "z", "tau")
    wp, wp_dz, _ = _wp_values(z, tau, cfg)
    e2 = eisenstein(2, tau, cfg)
    d_e2 = eisenstein_derivative_ring(2, 1, tau, cfg)
    d2_e2 = eisenstein_derivative_ring(2, 2, tau, cfg)
    p = wp - e2 / 12
    lhs = wp_dz * wp_dz / C_SQ
    rhs = 4 * p**3 + e2 * p * p + d_e2 * p + d2_e2 / 6
    return _rel(complex(lhs), complex(rhs))


def _res_cubic_tilde_b(sample: dict, cfg: SeriesConfig) -> float:
    (z, tau) = _need(sample, "z", "tau")
    wp, _, _, wp_d2 = _wp_values(z, tau, cfg, d2=True)
    e2 = eisenstein(2, tau, cfg)
    d_e2 = eisenstein_derivative_ring(2, 1, tau, cfg)
    p = wp - e2 / 12
    lhs = wp_d2 / C_SQ
    rhs = 6 * p * p + e2 * p + d_e2 / 2
    return _rel(complex(lhs), complex(rhs))


def _res_key_identity_1(sample: dict, cfg: SeriesConfig) -> float:
    """D_tau zeta = -(1/2c) wp' + (E2/12) zeta + (E4/144) z + (-zeta - (E2/12) z) wp.

    Equivalently, with A = -zeta - (E2/12) z and P = wp - E2/12:
    D_tau A = -A P + (1/2c) wp'.  The E4 z coefficient is forced to +1/144
    by expanding the A-form (using D E2 = (E2^2 - E4)/12); finite differences
    confirm it to ~1e-13 while the opposite sign misses by ~1e-2.
    """
    (z, tau) = _need(sample, "z", "tau")
    lhs = fd5(lambda t: _wp_values(z, t, cfg)[2], tau) / TWO_PI_I
    wp, wp_dz, zeta = _wp_values(z, tau, cfg)
    e2 = eisenstein(2, tau, cfg)
    e4 = eisenstein(4, tau, cfg)
    rhs = -wp_dz / (2 * C_SQ) + e2 * zeta / 12 + e4 * z / 144 + (-zeta - e2 * z / 12) * wp
    return _rel(complex(lhs), complex(rhs))


def _res_key_identity(sample: dict, cfg: SeriesConfig) -> float:
    """D_tau wp = 2 wp^2 + (E2/6) wp - E4/36 - (-zeta - (E2/12) z) wp'."""
    (z, tau) = _need(sample, "z", "tau")
    lhs = fd5(lambda t: _wp_values(z, t, cfg)[0], tau) / TWO_PI_I
    wp, wp_dz, zeta = _wp_values(z, tau, cfg)
    e2 = eisenstein(2, tau, cfg)
    e4 = eisenstein(4, tau, cfg)
    rhs = 2 * wp * wp + e2 * wp / 6 - e4 / 36 - (-zeta - e2 * z / 12) * wp_dz
    return _rel(complex(lhs), complex(rhs))


def _res_theta_lattice(sample: dict, cfg: SeriesConfig) -> float:
    (x, tau) = _need(sample, "x", "tau")
    m = int(sample.get("m", 1))
    n = int(sample.get("n", 1))
    lhs = theta11_d(0, x + m + n * tau, tau, cfg)
    rhs = (-1) ** (m + n) * e_of(-0.5 * n * n * tau - n * x) * theta11_d(0, x, tau, cfg)
    return _rel(lhs, rhs)


def _res_theta_heat(sample: dict, cfg: SeriesConfig) -> float:
    """d theta / d tau = (1/(4*pi*i)) theta''."""
    (x, tau) = _need(sample, "x", "tau")
    lhs = fd5(lambda t: theta11_d(0, x, t, cfg), tau)
    rhs = theta11_d(2, x, tau, cfg) / (2 * TWO_PI_I)
    return _rel(lhs, rhs)


def _res_triple_product(sample: dict, cfg: SeriesConfig) -> float:
    (x, tau) = _need(sample, "x", "tau")
    lhs = theta11_d(0, x, tau, cfg)
    # product form, with the same lattice reduction multiplied back
    x0, m, n = (lambda r: (complex(r[0]), int(r[1]), int(r[2])))(
        _reduce(np.asarray(x, dtype=complex), tau)
    )
    q = e_of(tau)
    w = e_of(x0)
    prod = 1.0 + 0j
    qn = 1.0 + 0j
    streak = 0
    for _k in range(1, cfg.max_terms + 1):
        qn *= q
        prod *= (1 - qn) * (1 - qn * w) * (1 - qn / w)
        if abs(qn) * max(1.0, abs(w), abs(1 / w)) < cfg.tail_tol:
            streak += 1
            if streak >= 2:
                break
        else:
            streak = 0
    else:
        raise NonConvergence("triple product did not converge")
    val0 = 1j * e_of(tau / 8) * (e_of(x0 / 2) - e_of(-x0 / 2)) * prod
    cocycle = (-1) ** (m + n) * e_of(-0.5 * n * n * tau - n * x0)
    rhs = cocycle * val0
    return _rel(lhs, rhs)


def _res_theta_e2(sample: dict, cfg: SeriesConfig) -> float:
    (tau,) = _need(sample, "tau")
    lhs = (4 / C_SQ) * theta11_d(3, 0.0, tau, cfg) / theta11_d(1, 0.0, tau, cfg)
    rhs = eisenstein(2, tau, cfg)
    return _rel(lhs, rhs)


def _res_theta_eta_cube(sample: dict, cfg: SeriesConfig) -> float:
    (tau,) = _need(sample, "tau")
    lhs = theta11_d(1, 0.0, tau, cfg)
    rhs = -2 * math.pi * dedekind_eta(tau, cfg) ** 3
    return _rel(lhs, rhs)


def _res_eisenstein_ring(sample: dict, cfg: SeriesConfig, weight: int) -> float:
    (tau,) = _need(sample, "tau")
    a = eisenstein_tau_derivative(weight, 1, tau, cfg)
    b = eisenstein_derivative_ring(weight, 1, tau, cfg)
    return _rel(a, b)


def _res_e2_third_derivative(sample: dict, cfg: SeriesConfig) -> float:
    """D^3 E2 = E2 * D^2 E2 - (3/2) (D E2)^2."""
    (tau,) = _need(sample, "tau")
    lhs = eisenstein_tau_derivative(2, 3, tau, cfg)
    e2 = eisenstein(2, tau, cfg)
    rhs = e2 * eisenstein_tau_derivative(2, 2, tau, cfg) - 1.5 * eisenstein_tau_derivative(2, 1, tau, cfg) ** 2
    return _rel(lhs, rhs)


_IDENTITIES: Dict[str, Callable[[dict, SeriesConfig], float]] = {
    "cubic_a": _res_cubic_a,
    "cubic_b": _res_cubic_b,
    "zeta_quasi_1": lambda s, c: _res_zeta_quasi(s, c, "1"),
    "zeta_quasi_tau": lambda s, c: _res_zeta_quasi(s, c, "tau"),
    "cubic_tilde_a": _res_cubic_tilde_a,
    "cubic_tilde_b": _res_cubic_tilde_b,
    "key_identity_1": _res_key_identity_1,
    "key_identity": _res_key_identity,
    "theta_lattice": _res_theta_lattice,
    "theta_heat": _res_theta_heat,
    "triple_product": _res_triple_product,
    "theta_e2": _res_theta_e2,
    "theta_eta_cube": _res_theta_eta_cube,
    "eisenstein_ring_2": lambda s, c: _res_eisenstein_ring(s, c, 2),
    "eisenstein_ring_4": lambda s, c: _res_eisenstein_ring(s, c, 4),
    "eisenstein_ring_6": lambda s, c: _res_eisenstein_ring(s, c, 6),
    "e2_third_derivative": _res_e2_third_derivative,
}


def identity_names() -> tuple[str, ...]:
    """All identity ids accepted by :func:`identity_residual`."""
    return tuple(_IDENTITIES)


def identity_residual(name: str, sample: dict, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Relative residual |LHS - RHS| / max(1, |LHS|, |RHS|) of a named identity.

    Both sides are evaluated by routes that share nothing beyond the base
    special functions; tau-derivative sides use 5-point finite differences
    as the independent oracle.  ``sample`` supplies the evaluation point:
    keys among {"z", "x", "tau", "m", "n"} depending on the identity.
    """
    try:
        fn = _IDENTITIES[name]
    except KeyError:
        raise UnknownIdentity(
            f"unknown identity {name!r}; known: {', '.join(sorted(_IDENTITIES))}"
        ) from None
    if "tau" in sample:
        _tau_value(sample["tau"], cfg)  # validate the strip once, uniformly
    for key in ("z", "x"):
        if key in sample:
            _check_margin(complex(sample[key]), complex(sample["tau"]), POLE_MARGIN)
    return fn(sample, cfg)
