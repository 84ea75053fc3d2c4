"""The three-dimensional Frobenius manifold of the elliptic unfolding.

The base space is M = {(s1, s2, tau) : s2 != 0, Im tau > 0} carrying the
family F(z; s) = s2^2 wp(z; tau) + s1, whose critical points are the three
half-periods with critical values u_a = s1 + s2^2 e_a(tau).  Flat coordinates
of the residue pairing are

    t1 = s1 + (1/12) s2^2 E2(tau),   t2 = s2,   t3 = 2 pi i tau,

in which the pairing is the constant matrix eta = antidiag-ish
(0,0,1),(0,2,0),(1,0,0) and the product comes from the potential

    FF = (1/2) t1^2 t3 + t1 t2^2 - (1/24) t2^4 E2(tau).

Three independent constructions of the product are implemented and must agree:
third derivatives of the potential, the critical-value (Kodaira-Spencer)
route through the canonical coordinates u_a, and the contravariant        \
Christoffel route through the intersection form g.

Conventions: c = (2 pi i)^2, D = (1/(2 pi i)) d/dtau, P = wp - E2/12, and
A = -zeta - (1/12) E2 z, so that dA/dz = P and A ~ -(1/c)/z at the origin.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import (
    ContourTooLarge,
    DegenerateInput,
    DegenerateJacobian,
    NewtonDiverged,
)
from .modular_forms import (
    C_SQ,
    DEFAULT_CONFIG,
    TWO_PI_I,
    HalfPlanePoint,
    SeriesConfig,
    _tau_value,
    eisenstein,
    eisenstein_derivative_ring,
)
from .theta_weierstrass import (
    FD_STEP,
    POLE_MARGIN,
    TorusPoint,
    _check_margin,
    _wp_values,
    half_periods,
    weierstrass,
)

#: flat-coordinate pairing, rows (0,0,1),(0,2,0),(1,0,0)
ETA_FLAT = np.array([[0, 0, 1], [0, 2, 0], [1, 0, 0]], dtype=complex)
ETA_FLAT_INV = np.array([[0, 0, 1], [0, 0.5, 0], [1, 0, 0]], dtype=complex)


@dataclass(frozen=True)
class ModuliPoint:
    """A point (s1, s2, tau) of M, with the flat coordinates derived on demand."""

    s1: complex
    s2: complex
    tau: complex

    def __post_init__(self) -> None:
        tau = self.tau.tau if isinstance(self.tau, HalfPlanePoint) else self.tau
        tau = complex(tau)
        if not tau.imag > 0:
            raise DegenerateInput(f"tau must lie in the upper half-plane, got {tau}")
        if self.s2 == 0:
            raise DegenerateInput("s2 must be nonzero")
        object.__setattr__(self, "s1", complex(self.s1))
        object.__setattr__(self, "s2", complex(self.s2))
        object.__setattr__(self, "tau", tau)

    def flat(self, cfg: SeriesConfig = DEFAULT_CONFIG) -> tuple[complex, complex, complex]:
        """(t1, t2, t3) = (s1 + (1/12) s2^2 E2(tau), s2, 2 pi i tau)."""
        e2 = eisenstein(2, self.tau, cfg)
        return (self.s1 + self.s2**2 * e2 / 12, self.s2, TWO_PI_I * self.tau)

    @classmethod
    def from_flat(
        cls, t: Sequence[complex], cfg: SeriesConfig = DEFAULT_CONFIG
    ) -> "ModuliPoint":
        t1, t2, t3 = (complex(v) for v in t)
        tau = t3 / TWO_PI_I
        if not tau.imag > 0:
            raise DegenerateInput(f"t3/(2 pi i) must lie in the upper half-plane, got {tau}")
        e2 = eisenstein(2, tau, cfg)
        return cls(t1 - t2**2 * e2 / 12, t2, tau)


@dataclass(frozen=True)
class CanonicalCoords:
    """Critical values (u1, u2, u3) at the half-periods (1/2, (1+tau)/2, tau/2)."""

    u1: complex
    u2: complex
    u3: complex

    def __post_init__(self) -> None:
        vals = (complex(self.u1), complex(self.u2), complex(self.u3))
        object.__setattr__(self, "u1", vals[0])
        object.__setattr__(self, "u2", vals[1])
        object.__setattr__(self, "u3", vals[2])
        scale = max(1.0, max(abs(v) for v in vals))
        for i in range(3):
            for j in range(i + 1, 3):
                if abs(vals[i] - vals[j]) < 1e-10 * scale:
                    raise DegenerateInput(
                        f"canonical coordinates must be pairwise distinct, got {vals}"
                    )

    def __iter__(self):
        return iter((self.u1, self.u2, self.u3))


@dataclass(frozen=True)
class FrobeniusTensors:
    """eta, C, g, Gamma and the potential value at one point of M.

    C[k][i][j] = C^k_ij (product in the flat frame); Gamma[k][i][j] = the
    contravariant Christoffel symbol Gamma^{ij}_k of the intersection form.
    """

    eta: np.ndarray
    C: np.ndarray
    g: np.ndarray
    Gamma: np.ndarray
    potential_value: complex


def _flat_coords(t, cfg: SeriesConfig):
    """Normalize a ModuliPoint or coordinate triple to (t1, t2, t3, tau)."""
    if isinstance(t, ModuliPoint):
        t1, t2, t3 = t.flat(cfg)
    else:
        t1, t2, t3 = (complex(v) for v in t)
    tau = t3 / TWO_PI_I
    if not tau.imag > 0:
        raise DegenerateInput(f"t3/(2 pi i) must lie in the upper half-plane, got {tau}")
    if t2 == 0:
        raise DegenerateInput("t2 must be nonzero")
    return t1, t2, t3, tau


# ---------------------------------------------------------------------------
# the unfolding and its derivatives
# ---------------------------------------------------------------------------

def unfolding(
    z: complex,
    p: ModuliPoint,
    cfg: SeriesConfig = DEFAULT_CONFIG,
    *,
    pole_margin: float = POLE_MARGIN,
) -> complex:
    """F(z; s) = s2^2 wp(z; tau) + s1."""
    wp = weierstrass("p", TorusPoint(z, p.tau), cfg, pole_margin=pole_margin)
    return p.s2**2 * wp + p.s1


def _unfolding_data(z, t2: complex, tau: complex, cfg: SeriesConfig) -> dict:
    """All z-local quantities entering the product identities, at one (z, t).

    Array-capable in z.  Keys: P, Pz (= wp'), A, dF (3 honest t-derivatives of
    F), Fz, dtA (= D_tau A), dt2A (= D_tau^2 A), dtP, dt2P.
    """
    e2 = eisenstein(2, tau, cfg)
    e4 = eisenstein(4, tau, cfg)
    d_e2 = eisenstein_derivative_ring(2, 1, tau, cfg)
    d2_e2 = eisenstein_derivative_ring(2, 2, tau, cfg)
    wp, wp_dz, zeta = _wp_values(z, tau, cfg)
    za = np.asarray(z, dtype=complex)
    p = wp - e2 / 12
    a = -zeta - e2 * za / 12
    wp_d2 = C_SQ * (6 * wp * wp - e4 / 24)
    dt_p = 2 * p * p + e2 * p / 2 + d_e2 / 4 - a * wp_dz
    dt_wp_dz = 4 * wp * wp_dz + e2 * wp_dz / 6 - p * wp_dz - a * wp_d2
    dt_a = -a * p + wp_dz / (2 * C_SQ)
    dt2_a = -dt_a * p - a * dt_p + dt_wp_dz / (2 * C_SQ)
    dt2_p = (
        4 * p * dt_p
        + d_e2 * p / 2
        + e2 * dt_p / 2
        + d2_e2 / 4
        - dt_a * wp_dz
        - a * dt_wp_dz
    )
    d_f = (np.ones_like(za), 2 * t2 * p, t2**2 * dt_p)
    return {
        "P": p,
        "Pz": wp_dz,
        "A": a,
        "dF": d_f,
        "Fz": t2**2 * wp_dz,
        "dtA": dt_a,
        "dt2A": dt2_a,
        "dtP": dt_p,
        "dt2P": dt2_p,
    }


# ---------------------------------------------------------------------------
# residue pairing
# ---------------------------------------------------------------------------

def _nearest_half_lattice(tau: complex) -> float:
    """Distance from 0 to the nearest nonzero half-lattice point (m + n tau)/2."""
    best = math.inf
    for m in range(-4, 5):
        for n in range(-4, 5):
            if (m, n) != (0, 0):
                best = min(best, abs((m + n * tau) / 2))
    return best


def _raw_to_flat_frame(t2: complex, tau: complex, cfg: SeriesConfig) -> np.ndarray:
    """Columns express (d/dt1, d/dt2, d/dt3) in the raw frame (d/ds1, d/ds2, D_tau)."""
    e2 = eisenstein(2, tau, cfg)
    d_e2 = eisenstein_derivative_ring(2, 1, tau, cfg)
    return np.array(
        [
            [1, -t2 * e2 / 6, -(t2**2) * d_e2 / 12],
            [0, 1, 0],
            [0, 0, 1],
        ],
        dtype=complex,
    )


def residue_pairing(
    p: ModuliPoint,
    cfg: SeriesConfig = DEFAULT_CONFIG,
    *,
    frame: str = "raw",
    nodes: int = 256,
    radius: Union[float, None] = None,
) -> np.ndarray:
    """The residue pairing eta_ij = -2 pi i * contour integral of f_i f_j / F_z.

    The contour is |z| = r around the origin, integrated by the trapezoid rule
    (spectrally accurate for this analytic integrand):

        eta_ij = -(2 pi i)^2 * (1/N) * sum_k z_k f_i(z_k) f_j(z_k) / F_z(z_k).

    The frame functions are the Kodaira-Spencer representatives f = (1,
    2 s2 wp, s2^2 (2 wp^2 + E2 wp / 6 - E4/36)); the third entry is the
    elliptic representative of D_tau F, equal to it modulo a multiple of F_z.
    frame="raw" gives the matrix in (d/ds1, d/ds2, D_tau); frame="flat"
    conjugates to the flat frame, where the result is the constant ETA_FLAT.
    """
    if frame not in ("raw", "flat"):
        raise DegenerateInput(f"frame must be 'raw' or 'flat', got {frame!r}")
    tau = p.tau
    d = _nearest_half_lattice(tau)
    if radius is None:
        r = min(0.25, d / 2)
    else:
        if radius >= d:
            raise ContourTooLarge(
                f"radius {radius:g} reaches the nearest pole/critical point at {d:g}"
            )
        r = float(radius)
    zk = r * np.exp(TWO_PI_I * np.arange(nodes) / nodes)
    e2 = eisenstein(2, tau, cfg)
    e4 = eisenstein(4, tau, cfg)
    wp, wp_dz, _ = _wp_values(zk, tau, cfg)
    s2 = p.s2
    f = (
        np.ones_like(zk),
        2 * s2 * wp,
        s2**2 * (2 * wp * wp + e2 * wp / 6 - e4 / 36),
    )
    fz = s2**2 * wp_dz
    eta = np.empty((3, 3), dtype=complex)
    for i in range(3):
        for j in range(i, 3):
            val = -C_SQ * np.mean(zk * f[i] * f[j] / fz)
            eta[i, j] = val
            eta[j, i] = val
    if frame == "flat":
        a = _raw_to_flat_frame(p.s2, tau, cfg)
        eta = a.T @ eta @ a
    return eta


# ---------------------------------------------------------------------------
# tensors from the potential
# ---------------------------------------------------------------------------

def frobenius_tensors(t, cfg: SeriesConfig = DEFAULT_CONFIG) -> FrobeniusTensors:
    """eta, C, g, Gamma, and the potential at a flat-coordinate point.

    C is raised from the symbolic third derivatives of the potential:
    the nonzero ones are FF_113 = 1, FF_122 = 2, FF_222 = -t2 E2,
    FF_223 = -(1/2) t2^2 DE2, FF_233 = -(1/6) t2^3 D^2 E2, and
    FF_333 = -(1/24) t2^4 D^3 E2 (up to index symmetry).
    """
    t1, t2, t3, tau = _flat_coords(t, cfg)
    e2 = eisenstein(2, tau, cfg)
    d1 = eisenstein_derivative_ring(2, 1, tau, cfg)
    d2 = eisenstein_derivative_ring(2, 2, tau, cfg)
    d3 = eisenstein_derivative_ring(2, 3, tau, cfg)

    potential = 0.5 * t1**2 * t3 + t1 * t2**2 - t2**4 * e2 / 24

    fff = np.zeros((3, 3, 3), dtype=complex)

    def set_sym(i, j, k, val):
        for a, b, c in {(i, j, k), (i, k, j), (j, i, k), (j, k, i), (k, i, j), (k, j, i)}:
            fff[a, b, c] = val

    set_sym(0, 0, 2, 1.0)
    set_sym(0, 1, 1, 2.0)
    set_sym(1, 1, 1, -t2 * e2)
    set_sym(1, 1, 2, -(t2**2) * d1 / 2)
    set_sym(1, 2, 2, -(t2**3) * d2 / 6)
    set_sym(2, 2, 2, -(t2**4) * d3 / 24)

    c_tensor = np.einsum("kl,lij->kij", ETA_FLAT_INV, fff)

    g = np.array(
        [
            [-(t2**4) * d2 / 12, -(t2**3) * d1 / 8, t1],
            [-(t2**3) * d1 / 8, 0.5 * t1 - t2**2 * e2 / 8, 0.5 * t2],
            [t1, 0.5 * t2, 0.0],
        ],
        dtype=complex,
    )

    gamma = np.zeros((3, 3, 3), dtype=complex)
    gamma[0] = [[0, 0, 0], [0, 0.25, 0], [1, 0, 0]]
    gamma[1] = [
        [-(t2**3) * d2 / 6, -(t2**2) * d1 / 8, 0],
        [-(t2**2) * d1 / 4, -t2 * e2 / 8, 0],
        [0, 0.5, 0],
    ]
    gamma[2] = [
        [-(t2**4) * d3 / 24, -(t2**3) * d2 / 24, 0],
        [-(t2**3) * d2 / 12, -(t2**2) * d1 / 16, 0],
        [0, 0, 0],
    ]

    return FrobeniusTensors(
        eta=ETA_FLAT.copy(), C=c_tensor, g=g, Gamma=gamma, potential_value=potential
    )


def structure_constants_from_gamma(t, cfg: SeriesConfig = DEFAULT_CONFIG) -> np.ndarray:
    """C recovered from the contravariant Christoffel symbols.

    C^k_ij = sum_a eta_ia * X^{ka}_j with X^{k1}_j = Gamma^{k1}_j,
    X^{k2}_j = 2 Gamma^{k2}_j, X^{k3}_j = delta_kj; must agree with the
    potential route.
    """
    ft = frobenius_tensors(t, cfg)
    gamma = ft.Gamma
    x = np.zeros((3, 3, 3), dtype=complex)  # x[k][a][j]
    for k in range(3):
        for j in range(3):
            x[k, 0, j] = gamma[j, k, 0]
            x[k, 1, j] = 2 * gamma[j, k, 1]
            x[k, 2, j] = 1.0 if k == j else 0.0
    return np.einsum("ia,kaj->kij", ETA_FLAT, x)


def frobenius_product(t, x, y, cfg: SeriesConfig = DEFAULT_CONFIG) -> np.ndarray:
    """The product of two flat-frame tangent vectors: (x o y)^k = C^k_ij x^i y^j."""
    c = frobenius_tensors(t, cfg).C
    return np.einsum("kij,i,j->k", c, np.asarray(x, complex), np.asarray(y, complex))


def euler_scaling_residual(t, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """|E(FF) - 2 FF| for the Euler field E = t1 d/dt1 + (1/2) t2 d/dt2."""
    t1, t2, t3, tau = _flat_coords(t, cfg)
    e2 = eisenstein(2, tau, cfg)
    ff = 0.5 * t1**2 * t3 + t1 * t2**2 - t2**4 * e2 / 24
    ff1 = t1 * t3 + t2**2
    ff2 = 2 * t1 * t2 - t2**3 * e2 / 6
    return abs(t1 * ff1 + 0.5 * t2 * ff2 - 2 * ff)


def wdvv_residual(t, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Max associativity defect |((e_i o e_j) o e_k) - (e_i o (e_j o e_k))|."""
    c = frobenius_tensors(t, cfg).C
    left = np.einsum("mij,lmk->lijk", c, c)
    right = np.einsum("mjk,lim->lijk", c, c)
    return float(np.max(np.abs(left - right)))


# ---------------------------------------------------------------------------
# canonical coordinates and the critical-value product
# ---------------------------------------------------------------------------

def lyashko_looijenga(p: ModuliPoint, cfg: SeriesConfig = DEFAULT_CONFIG) -> CanonicalCoords:
    """Critical values u_a = s1 + s2^2 e_a(tau), ordered by (1/2, (1+tau)/2, tau/2).

    As a map to unordered triples this is the Lyashko-Looijenga map; the
    returned ordering is the fixed convention of the half-period labels.
    """
    e = half_periods(p.tau, cfg)
    return CanonicalCoords(*(p.s1 + p.s2**2 * ea for ea in e))


def canonical_jacobian(t, cfg: SeriesConfig = DEFAULT_CONFIG) -> tuple[CanonicalCoords, np.ndarray]:
    """(u, J) with J_ai = du_a/dt_i in closed form.

    J rows are (1, 2 t2 (e_a - E2/12), t2^2 (De_a - DE2/12)) with
    De_a = 2 e_a^2 + E2 e_a / 6 - E4/36.
    """
    t1, t2, t3, tau = _flat_coords(t, cfg)
    e2 = eisenstein(2, tau, cfg)
    e4 = eisenstein(4, tau, cfg)
    d_e2 = eisenstein_derivative_ring(2, 1, tau, cfg)
    e = half_periods(tau, cfg)
    s1 = t1 - t2**2 * e2 / 12
    u = CanonicalCoords(*(s1 + t2**2 * ea for ea in e))
    rows = []
    for ea in e:
        de_a = 2 * ea**2 + e2 * ea / 6 - e4 / 36
        rows.append([1.0, 2 * t2 * (ea - e2 / 12), t2**2 * (de_a - d_e2 / 12)])
    return u, np.array(rows, dtype=complex)


def product_via_critical_values(
    t, i: int, j: int, cfg: SeriesConfig = DEFAULT_CONFIG
) -> np.ndarray:
    """The flat-frame product vector of d/dt_i and d/dt_j via critical values.

    The algebra at a semisimple point is C^3, functions being evaluated at
    the three critical points; there dF/dt_i = du_a/dt_i, so the product has
    canonical components (du_a/dt_i)(du_a/dt_j) and pushes forward through
    the inverse Jacobian.  i, j are 1-based flat frame indices.
    """
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise DegenerateInput(f"frame indices must be in 1..3, got ({i}, {j})")
    _, jac = canonical_jacobian(t, cfg)
    if abs(np.linalg.det(jac)) < 1e-12:
        raise DegenerateJacobian("du/dt is numerically singular at this point")
    w = jac[:, i - 1] * jac[:, j - 1]
    return np.linalg.solve(jac, w)


# ---------------------------------------------------------------------------
# primitive form identities
# ---------------------------------------------------------------------------

class PrimitiveFormResiduals(NamedTuple):
    """Relative residuals of the three product identities and the three
    d phi / dz = d^2 F / dt_i dt_j finite-difference conditions."""

    identity_22: float
    identity_23: float
    identity_33: float
    dz_phi_22: float
    dz_phi_23: float
    dz_phi_33: float


def _rel(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def primitive_form_residuals(
    z: complex, t, cfg: SeriesConfig = DEFAULT_CONFIG
) -> PrimitiveFormResiduals:
    """Check dF_i dF_j = sum_k C^k_ij dF_k + phi_ij F_z pointwise in z.

    The correction one-forms are phi_22 = 2A, phi_23 = 2 t2 D_tau A and
    phi_33 = t2^2 D_tau^2 A; their z-derivatives must reproduce the honest
    second t-derivatives of F (2P, 2 t2 D_tau P, t2^2 D_tau^2 P), which is
    verified with 5-point finite differences in z.
    """
    t1, t2, t3, tau = _flat_coords(t, cfg)
    _check_margin(complex(z), tau, POLE_MARGIN)
    c = frobenius_tensors(t, cfg).C
    d = _unfolding_data(z, t2, tau, cfg)
    df, fz = d["dF"], d["Fz"]
    phi = {
        (1, 1): 2 * d["A"],
        (1, 2): 2 * t2 * d["dtA"],
        (2, 2): t2**2 * d["dt2A"],
    }
    ident = []
    for i, j in ((1, 1), (1, 2), (2, 2)):
        lhs = df[i] * df[j]
        rhs = sum(c[k, i, j] * df[k] for k in range(3)) + phi[(i, j)] * fz
        ident.append(_rel(complex(lhs), complex(rhs)))

    h = FD_STEP
    analytic = (2 * d["P"], 2 * t2 * d["dtP"], t2**2 * d["dt2P"])
    dz = []
    for idx, (i, j) in enumerate(((1, 1), (1, 2), (2, 2))):
        def phi_at(zz, i=i, j=j):
            dd = _unfolding_data(zz, t2, tau, cfg)
            return {
                (1, 1): 2 * dd["A"],
                (1, 2): 2 * t2 * dd["dtA"],
                (2, 2): t2**2 * dd["dt2A"],
            }[(i, j)]
        fd = (
            -phi_at(z + 2 * h) + 8 * phi_at(z + h) - 8 * phi_at(z - h) + phi_at(z - 2 * h)
        ) / (12 * h)
        dz.append(_rel(complex(fd), complex(analytic[idx])))
    return PrimitiveFormResiduals(*ident, *dz)


# ---------------------------------------------------------------------------
# discriminant and the Lyashko-Looijenga inversion
# ---------------------------------------------------------------------------

def discriminant(t, cfg: SeriesConfig = DEFAULT_CONFIG, *, method: str = "canonical") -> complex:
    """u1 u2 u3; with method="euler", det of multiplication by the Euler field.

    The Euler multiplication matrix is M^k_j = sum_i E^i C^k_ij with
    E = (t1, t2/2, 0); its determinant equals the product of critical values.
    """
    t1, t2, t3, tau = _flat_coords(t, cfg)
    if method == "canonical":
        e = half_periods(tau, cfg)
        e2 = eisenstein(2, tau, cfg)
        s1 = t1 - t2**2 * e2 / 12
        vals = [s1 + t2**2 * ea for ea in e]
        return vals[0] * vals[1] * vals[2]
    if method == "euler":
        c = frobenius_tensors(t, cfg).C
        ev = np.array([t1, 0.5 * t2, 0.0], dtype=complex)
        m = np.einsum("i,kij->kj", ev, c)
        return complex(np.linalg.det(m))
    raise DegenerateInput(f"method must be 'canonical' or 'euler', got {method!r}")


_NEWTON_STARTS = [
    complex(re, im)
    for im in np.linspace(0.5, 2.5, 9)
    for re in np.linspace(-0.5, 0.5, 9)
]


def _modulus_ratio(tau: complex, cfg: SeriesConfig) -> tuple[complex, complex]:
    """m(tau) = (e3 - e2)/(e1 - e2) and dm/dtau."""
    e2m = eisenstein(2, tau, cfg)
    e4 = eisenstein(4, tau, cfg)
    e = half_periods(tau, cfg)
    de = [2 * ea**2 + e2m * ea / 6 - e4 / 36 for ea in e]
    num, den = e.e3 - e.e2, e.e1 - e.e2
    m = num / den
    dm = TWO_PI_I * ((de[2] - de[1]) * den - num * (de[0] - de[1])) / den**2
    return m, dm


def ll_inverse(
    u: Union[CanonicalCoords, Sequence[complex]],
    ordering: Union[Sequence[int], None] = None,
    cfg: SeriesConfig = DEFAULT_CONFIG,
    *,
    max_iter: int = 60,
) -> ModuliPoint:
    """Invert the Lyashko-Looijenga map: find p with critical values u.

    s1 = (u1+u2+u3)/3 because the half-period values sum to zero; tau solves
    the modulus equation (e3-e2)/(e1-e2) = (u3-u2)/(u1-u2) by damped Newton
    iteration from a grid of starts in the fundamental strip; s2 is the
    principal square root of (u1-u2)/(e1-e2).  ``ordering`` permutes u first
    (a choice of labeling of the critical points by the given values).
    """
    vals = list(u)
    if ordering is not None:
        if sorted(ordering) != [0, 1, 2]:
            raise DegenerateInput(f"ordering must be a permutation of (0,1,2), got {ordering}")
        vals = [vals[k] for k in ordering]
    u1, u2, u3 = (complex(v) for v in vals)
    scale = max(1.0, abs(u1), abs(u2), abs(u3))
    if min(abs(u1 - u2), abs(u1 - u3), abs(u2 - u3)) < 1e-10 * scale:
        raise DegenerateInput("critical values nearly coincide; the point is off M")
    target = (u3 - u2) / (u1 - u2)
    s1 = (u1 + u2 + u3) / 3

    for start in _NEWTON_STARTS:
        tau = start
        res_prev = math.inf
        damping = 1.0
        for _ in range(max_iter):
            if not 0.15 < tau.imag < 60:
                break
            try:
                m, dm = _modulus_ratio(tau, cfg)
            except Exception:
                break
            res = abs(m - target)
            if res < 1e-13 * max(1.0, abs(target)):
                break
            if res >= res_prev:
                damping *= 0.5
                if damping < 1e-6:
                    break
            else:
                damping = min(1.0, damping * 2)
            res_prev = res
            if dm == 0:
                break
            tau = tau - damping * (m - target) / dm
        else:
            continue
        if not tau.imag > 0.15:
            continue
        try:
            m, _ = _modulus_ratio(tau, cfg)
        except Exception:
            continue
        if abs(m - target) > 1e-10 * max(1.0, abs(target)):
            continue
        e = half_periods(tau, cfg)
        s2 = cmath.sqrt((u1 - u2) / (e.e1 - e.e2))
        if s2 == 0:
            continue
        p = ModuliPoint(s1, s2, tau)
        got = lyashko_looijenga(p, cfg)
        err = max(abs(a - b) for a, b in zip(got, (u1, u2, u3)))
        if err < 1e-6 * scale:
            return p
    raise NewtonDiverged("no Newton start recovered the requested critical values")
