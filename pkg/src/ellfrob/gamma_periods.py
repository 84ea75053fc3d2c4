"""Gamma-class matrices and exponential-period asymptotics.

The characteristic-class matrix on the K-lattice of the three projectives,
in the basis ([P3], [P2], [P1]) and written against the cohomology frame
(1, class of a point-ish generator, top), is

    ch_gamma = [[1,       1,       0     ],
                [sqrt(pi), sqrt(pi), sqrt(pi)],
                [0,       2 pi i,  2 pi i]],

with Gamma(1/2) = sqrt(pi) supplying the middle row.  With the normalized
degree operator Q = diag(-1/2, 0, 1/2) and A = (2 pi)^(-1/2) ch_gamma, two
exact matrix identities hold:

    A^(-1) e[Q] A          = chi_P^(-1) chi_P^T      (monodromy/Serre),
    A^T e[Q/2] eta_flat A  = chi_P                    (pairing/Euler),

where chi_P is the unipotent Euler matrix in the projective basis and
eta_flat has rows (0,0,1), (0,2,0), (1,0,0).

The exponential periods are

    I(path; t, u) = u^(-1/2) * (2 pi i) * integral of exp(-F(z; t)/u) dz

along straight segments in the z-plane, with F(z; t) = s1 + s2^2 wp~(z; tau)
the universal unfolding in raw coordinates s1 = t1 - (1/12) t2^2 E2, s2 = t2.
Because the integral of wp~ - E2/12 over a unit real period vanishes, while
over a tau-period it contributes t2^2/(2 pi i), the large-u expansions are

    I(path1) = 2 pi i tau u^(-1/2) - (2 pi i tau t1 + t2^2) u^(-3/2) + ...
    I(path2a) - I(path2b) = 2 sqrt(pi) t2 u^(-1)
                            - 2 sqrt(pi) t2 (t1 - (1/12) t2^2 E2) u^(-2) + ...
    I(path3) = 2 pi i u^(-1/2) - 2 pi i t1 u^(-3/2) + ...

:func:`asymptotic_fit` extracts (leading, subleading) by least squares on a
u-grid; :func:`reference_targets` returns the classical closed-form targets
{-2 pi i tau, 2 sqrt(pi) t2, 2 pi i} and {-(2 pi i tau t1 + t2^2),
-2 sqrt(pi) t2 t1, -2 pi i t1} for comparison (note the path1 subleading of
the fitted series is +(2 pi i tau t1 + t2^2), and the path2 subleading
carries s1 = t1 - (1/12) t2^2 E2 in place of t1; see the expansions above).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateInput, IllConditioned, QuadratureUnconverged
from .k_lattice import ALPHA, DELTA1, DELTA2, CHI, KClass
from .modular_forms import DEFAULT_CONFIG, TWO_PI_I, SeriesConfig, eisenstein
from .theta_weierstrass import _wp_values

SQRT_PI = math.sqrt(math.pi)


def _ch_gamma() -> np.ndarray:
    return np.array(
        [
            [1.0, 1.0, 0.0],
            [SQRT_PI, SQRT_PI, SQRT_PI],
            [0.0, TWO_PI_I, TWO_PI_I],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class GammaData:
    """The Gamma-class matrix, degree operator, Euler matrix, and pairing."""

    ch_gamma: np.ndarray
    q_degrees: np.ndarray
    chi_p: np.ndarray
    eta_flat: np.ndarray

    @classmethod
    def standard(cls) -> "GammaData":
        return cls(
            ch_gamma=_ch_gamma(),
            q_degrees=np.diag([-0.5, 0.0, 0.5]).astype(complex),
            chi_p=np.array(CHI["P"], dtype=int),
            eta_flat=np.array([[0, 0, 1], [0, 2, 0], [1, 0, 0]], dtype=complex),
        )


class GammaIdentityResiduals(NamedTuple):
    monodromy: float
    pairing: float


def gamma_identities(data: GammaData | None = None) -> GammaIdentityResiduals:
    """Max-norm residuals of the two exact Gamma-matrix identities.

    monodromy: ||A^(-1) e[Q] A - chi_P^(-1) chi_P^T||_max
    pairing:   ||A^T e[Q/2] eta_flat A - chi_P||_max
    with A = (2 pi)^(-1/2) ch_gamma.  Both are pure linear algebra on exact
    constants and sit at machine precision.
    """
    d = data if data is not None else GammaData.standard()
    a = d.ch_gamma / math.sqrt(2 * math.pi)
    e_q = np.diag(np.exp(TWO_PI_I * np.diag(d.q_degrees)))
    e_q_half = np.diag(np.exp(TWO_PI_I * np.diag(d.q_degrees) / 2))
    chi = d.chi_p.astype(complex)
    chi_inv = np.linalg.inv(chi)
    lhs1 = np.linalg.inv(a) @ e_q @ a
    rhs1 = chi_inv @ chi.T
    lhs2 = a.T @ e_q_half @ d.eta_flat @ a
    return GammaIdentityResiduals(
        float(np.max(np.abs(lhs1 - rhs1))),
        float(np.max(np.abs(lhs2 - chi))),
    )


class CorrespondenceRow(NamedTuple):
    label: str
    kclass: KClass
    p_coords: tuple[int, int, int]
    image: tuple[complex, complex, complex]


def kclass_correspondence() -> tuple[CorrespondenceRow, ...]:
    """The K-classes carried by the three cycles, and their Gamma images.

    -delta2 maps to (1, 0, 0), -alpha to (0, -sqrt(pi), 0), and delta1 to
    (0, 0, 2 pi i); each image is verified exactly against ch_gamma applied
    to the class's coordinates in the projective basis.
    """
    ch = _ch_gamma()
    rows = []
    table = (
        ("-delta2", -DELTA2, (1.0, 0.0, 0.0)),
        ("-alpha", -ALPHA, (0.0, -SQRT_PI, 0.0)),
        ("delta1", DELTA1, (0.0, 0.0, TWO_PI_I)),
    )
    for label, cls, image in table:
        coords = cls.to("P").coords
        computed = ch @ np.array(coords, dtype=complex)
        if not np.array_equal(computed, np.array(image, dtype=complex)):
            raise DegenerateInput(
                f"Gamma image of {label} disagrees with the stated correspondence"
            )
        rows.append(CorrespondenceRow(label, cls, coords, tuple(computed)))
    return tuple(rows)


# ---------------------------------------------------------------------------
# exponential periods
# ---------------------------------------------------------------------------

#: segment endpoints as affine functions of tau: z = a + b*tau
_PATH_ENDPOINTS = {
    "path1": ((0.5, 0.0), (0.5, 1.0)),
    "path2a": ((0.0, 0.0), (0.0, 1.0)),
    "path2b": ((0.5, 0.0), (0.5, 1.0)),
    "path3": ((0.0, 0.5), (1.0, 0.5)),
}


@dataclass(frozen=True)
class CyclePath:
    """A straight integration segment in the z-plane, affine in tau."""

    id: str

    def __post_init__(self) -> None:
        if self.id not in _PATH_ENDPOINTS:
            raise DegenerateInput(
                f"unknown path {self.id!r}; expected one of {sorted(_PATH_ENDPOINTS)}"
            )

    def endpoints(self, tau: complex) -> tuple[complex, complex]:
        (a0, b0), (a1, b1) = _PATH_ENDPOINTS[self.id]
        return a0 + b0 * tau, a1 + b1 * tau


def _flat_triple(t) -> tuple[complex, complex, complex]:
    t1, t2, t3 = (complex(v) for v in t)
    tau = t3 / TWO_PI_I
    if tau.imag <= 0 and t3.imag > 0 and abs(t3.real) < 1e-12:
        tau = t3  # convenience: third slot given as tau itself
    if tau.imag <= 0:
        raise DegenerateInput("third flat coordinate must encode Im tau > 0")
    return t1, t2, tau


def _require_chamber(t2: complex, tau: complex, u: float) -> None:
    if abs(t2.imag) > 1e-12 or t2.real <= 0:
        raise DegenerateInput(f"t2 must be positive real in the chamber, got {t2}")
    if abs(tau.real) > 1e-12:
        raise DegenerateInput(f"tau must be purely imaginary in the chamber, got {tau}")
    if not u > 0:
        raise DegenerateInput(f"u must be positive, got {u}")


_NODE_COUNT = 16
_F_CACHE: dict = {}


def _f_on_panels(
    path_id: str,
    t1: complex,
    t2: complex,
    tau: complex,
    panels: int,
    cfg: SeriesConfig,
) -> tuple[np.ndarray, np.ndarray, complex]:
    """(F at nodes, GL weights, dz) for the path split into equal panels.

    F(z) = s1 + s2^2 wp~(z; tau) is independent of u, so values are cached
    and shared across a whole u-grid.  Points that land on the pole lattice
    produce nonfinite F; the integrand treats those as exact zeros (the
    superexponential decay of exp(-F/u) at the poles in the chamber).
    """
    key = (path_id, complex(t1), complex(t2), complex(tau), panels, cfg.max_terms)
    hit = _F_CACHE.get(key)
    if hit is not None:
        return hit
    x, w = np.polynomial.legendre.leggauss(_NODE_COUNT)
    edges = np.linspace(0.0, 1.0, panels + 1)
    mid = (edges[:-1] + edges[1:]) / 2
    half = (edges[1:] - edges[:-1]) / 2
    s_nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    z0, z1 = CyclePath(path_id).endpoints(tau)
    z_nodes = z0 + s_nodes * (z1 - z0)
    with np.errstate(all="ignore"):
        wp, _, _ = _wp_values(z_nodes, tau, cfg)
    e2 = eisenstein(2, tau, cfg)
    f_vals = (t1 - t2**2 * e2 / 12) + t2**2 * wp
    if len(_F_CACHE) > 64:
        _F_CACHE.clear()
    _F_CACHE[key] = (f_vals, weights, z1 - z0)
    return f_vals, weights, z1 - z0


class PeriodValue(NamedTuple):
    value: complex
    error: float


def exponential_period(
    path: CyclePath | str,
    t,
    u: float,
    cfg: SeriesConfig = DEFAULT_CONFIG,
    *,
    quad_tol: float = 1e-10,
    base_panels: int = 8,
    max_doublings: int = 10,
) -> PeriodValue:
    """u^(-1/2) (2 pi i) int exp(-F(z;t)/u) dz along a straight segment.

    Adaptive composite Gauss-Legendre: the panel count doubles until the
    value moves by less than quad_tol, and the last move is reported as the
    error estimate.  Valid in the chamber u > 0, t2 real positive, tau purely
    imaginary (the third flat coordinate may be given as t3 = 2 pi i tau or,
    for convenience, as tau itself).
    """
    if isinstance(path, str):
        path = CyclePath(path)
    t1, t2, tau = _flat_triple(t)
    _require_chamber(t2, tau, float(u))
    pref = 2j * math.pi / math.sqrt(float(u))
    prev = None
    panels = base_panels
    for _ in range(max_doublings + 1):
        f_vals, weights, dz = _f_on_panels(path.id, t1, t2, tau, panels, cfg)
        expo = -f_vals / float(u)
        mask = np.isfinite(f_vals) & (expo.real < 700.0)
        with np.errstate(all="ignore"):
            integrand = np.where(mask, np.exp(np.where(mask, expo, 0.0)), 0.0)
        value = pref * dz * complex(np.sum(weights * integrand))
        if prev is not None and abs(value - prev) < quad_tol:
            return PeriodValue(value, abs(value - prev))
        prev = value
        panels *= 2
    raise QuadratureUnconverged(
        f"period on {path.id} did not settle below {quad_tol} "
        f"after {max_doublings} panel doublings (u = {u})"
    )


_COMBINATIONS = ("path1", "path2", "path3")


def _series_value(which: str, t, u: float, cfg: SeriesConfig, quad_tol: float) -> complex:
    """The signed period combination whose expansion has constant leading sign.

    path1 is traversed with the minus orientation (-I about [1/2, 1/2+tau]),
    path2 means I(path2a) - I(path2b), path3 is +I about [tau/2, 1+tau/2].
    """
    if which == "path1":
        return -exponential_period("path1", t, u, cfg, quad_tol=quad_tol).value
    if which == "path2":
        a = exponential_period("path2a", t, u, cfg, quad_tol=quad_tol).value
        b = exponential_period("path2b", t, u, cfg, quad_tol=quad_tol).value
        return a - b
    if which == "path3":
        return exponential_period("path3", t, u, cfg, quad_tol=quad_tol).value
    raise DegenerateInput(f"which must be one of {_COMBINATIONS}, got {which!r}")


def _exponents(which: str) -> tuple[float, float]:
    return (1.0, 2.0) if which == "path2" else (0.5, 1.5)


class AsymptoticFit(NamedTuple):
    leading: complex
    subleading: complex
    exponents: tuple[float, float]
    residual: float


def asymptotic_fit(
    which: str,
    t,
    u_grid: Sequence[float],
    cfg: SeriesConfig = DEFAULT_CONFIG,
    *,
    quad_tol: float = 1e-10,
) -> AsymptoticFit:
    """Least-squares (leading, subleading) of I(u) ~ a u^(-p1) + b u^(-p2).

    The exponents are fixed per combination: (1/2, 3/2) for path1/path3 and
    (1, 2) for the path2 difference.  The fit runs on S(u) = I(u) u^(p1)
    against the design [1, 1/u]; u_grid needs at least three values.
    """
    u_vals = [float(u) for u in u_grid]
    if len(u_vals) < 3:
        raise DegenerateInput("u_grid needs at least 3 values")
    p1, p2 = _exponents(which)
    design = np.array([[1.0, 1.0 / u] for u in u_vals])
    cond = float(np.linalg.cond(design))
    if cond > 1e8:
        raise IllConditioned(f"fit design condition number {cond:.3g} exceeds 1e8")
    s_vals = np.array(
        [_series_value(which, t, u, cfg, quad_tol) * u**p1 for u in u_vals]
    )
    coef, *_ = np.linalg.lstsq(design, s_vals, rcond=None)
    residual = float(np.max(np.abs(design @ coef - s_vals)))
    return AsymptoticFit(complex(coef[0]), complex(coef[1]), (p1, p2), residual)


def richardson_coefficients(
    which: str,
    t,
    u0: float,
    cfg: SeriesConfig = DEFAULT_CONFIG,
    *,
    quad_tol: float = 1e-10,
) -> tuple[complex, complex]:
    """Richardson-improved (leading, subleading) from u0, 2 u0, 4 u0.

    Solves S(u) = a + b/u + c/u^2 exactly through the three doubling points
    (Neville extrapolation to 1/u = 0, one order beyond the two-term fit);
    the leading lands at O(u0^-3) error and the subleading at O(u0^-2).
    """
    p1, _ = _exponents(which)
    u_vals = [u0 * 2**k for k in range(3)]
    s_vals = [_series_value(which, t, u, cfg, quad_tol) * u**p1 for u in u_vals]
    design = np.array([[1.0, 1.0 / u, 1.0 / u**2] for u in u_vals])
    a, b, _ = np.linalg.solve(design, np.array(s_vals))
    return complex(a), complex(b)


def richardson_leading(
    which: str,
    t,
    u0: float,
    cfg: SeriesConfig = DEFAULT_CONFIG,
    *,
    quad_tol: float = 1e-10,
) -> complex:
    """Richardson estimate of the leading coefficient (see above).

    Equivalent to the step-doubling table R(u) = 2 S(2u) - S(u) followed by
    (4 R(2u) - R(u))/3, which cancels the 1/u and 1/u^2 terms.
    """
    return richardson_coefficients(which, t, u0, cfg, quad_tol=quad_tol)[0]


def reference_targets(t) -> dict:
    """Closed-form leading/subleading targets for the three combinations.

    These are the classical stated values; the honestly fitted path1
    subleading has the opposite sign, and the path2 subleading carries
    s1 = t1 - (1/12) t2^2 E2 where the stated target has t1 (see the module
    docstring expansions).  Both discrepancies are reported, not hidden.
    """
    t1, t2, tau = _flat_triple(t)
    return {
        "path1": {
            "leading": -2j * math.pi * tau,
            "subleading": -(2j * math.pi * tau * t1 + t2**2),
            "exponents": _exponents("path1"),
        },
        "path2": {
            "leading": 2 * SQRT_PI * t2,
            "subleading": -2 * SQRT_PI * t2 * t1,
            "exponents": _exponents("path2"),
        },
        "path3": {
            "leading": 2j * math.pi,
            "subleading": -2j * math.pi * t1,
            "exponents": _exponents("path3"),
        },
    }
