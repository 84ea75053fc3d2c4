"""The elliptic Weyl group action and its invariant theory.

Points of the extended space carry coordinates (phi, x, tau).  The group is
generated by three reflections r1, r2, r3, two translations t1, t2, and the
central-ish element c = r1 r2 r3, acting by the affine formulas

    r1(phi, x, tau) = (phi, -x + 1, tau)
    r2(phi, x, tau) = (phi - 2x + 1 + tau, -x + 1 + tau, tau)
    r3(phi, x, tau) = (phi - 2x + tau,     -x + tau,     tau)
    t1(phi, x, tau) = (phi + 1, x + 1, tau)
    t2(phi, x, tau) = (phi + 2x - 1 + tau, x + tau, tau)
    c (phi, x, tau) = (phi + 1, -x, tau)

together with SL(2, Z) acting by
gamma(phi, x, tau) = (phi - c x^2/(c tau + d), x/(c tau + d), (a tau + b)/(c tau + d)).

The fundamental invariants and anti-invariant are

    y1 = (theta(x)/theta'(0))^2 wp(x) e[phi]
    y2 = (theta(x)/theta'(0)) e[phi/2]
    y3 = 2 pi i tau
    J  = -(1/2)(1/(2 pi i)) (theta(x)/theta'(0))^3 wp'(x) e[3 phi/2]
       = (1/(2 pi i)^3) (theta(2x)/(2 theta(x))) e[3 phi/2],

with e[phi/2] computed as exp(pi i phi) directly (single-valued in phi; the
integer ambiguity of phi is the central c^2 action).  They satisfy the cubic
relation J^2 = y1^3 - (1/48) E4 y1 y2^4 + (1/864) E6 y2^6 — the unique
homogeneous combination under the phi-degrees (2, 1, 3), equivalent to the
classical cubic for wp via wp = (2 pi i)^2 wp~ — and the flat coordinates are
t1 = -y1 + (1/12) E2 y2^2, t2 = y2, t3 = y3.

In these coordinates the intersection form is the constant matrix
g = (1/(2 pi i)^2) [(0,0,1), (0,-1/2,0), (1,0,0)] on (d phi, d x, d tau);
pushing it through the analytic Jacobian of (t1, t2, t3) must reproduce the
closed-form g of the Frobenius module.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

import numpy as np

from .errors import DegenerateInput, DegenerateJacobian, UnknownIdentity
from .modular_forms import (
    C_SQ,
    DEFAULT_CONFIG,
    TWO_PI_I,
    HalfPlanePoint,
    SeriesConfig,
    e_of,
    eisenstein,
    eisenstein_derivative_ring,
)
from .theta_weierstrass import (
    POLE_MARGIN,
    _check_margin,
    _theta_derivs,
    _wp_values,
    fd5,
)


@dataclass(frozen=True)
class TildeEPoint:
    """A point (phi, x, tau) of the extended elliptic space."""

    phi: complex
    x: complex
    tau: complex

    def __post_init__(self) -> None:
        tau = self.tau.tau if isinstance(self.tau, HalfPlanePoint) else self.tau
        tau = complex(tau)
        if not tau.imag > 0:
            raise DegenerateInput(f"tau must lie in the upper half-plane, got {tau}")
        object.__setattr__(self, "phi", complex(self.phi))
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "tau", tau)


_GENERATORS = ("r1", "r2", "r3", "t1", "t2", "c")


@dataclass(frozen=True)
class GroupElement:
    """A word in the generators, or an SL(2, Z) matrix.

    Words parse from strings like ``"r1 t2 c^-2"``; as usual for function
    composition, the leftmost factor acts last (the rightmost is applied to
    the point first).
    """

    tokens: tuple[tuple[str, int], ...] = ()
    sl2: Union[tuple[tuple[int, int], tuple[int, int]], None] = None

    def __post_init__(self) -> None:
        if self.sl2 is not None:
            (a, b), (c, d) = self.sl2
            if a * d - b * c != 1:
                raise DegenerateInput("SL(2, Z) matrix must have determinant 1")
            object.__setattr__(self, "sl2", ((int(a), int(b)), (int(c), int(d))))
            if self.tokens:
                raise DegenerateInput("an element is either a word or an SL(2, Z) matrix")

    @classmethod
    def parse(cls, text: str) -> "GroupElement":
        tokens = []
        for raw in text.split():
            name, _, exp = raw.partition("^")
            if name not in _GENERATORS:
                raise DegenerateInput(
                    f"unknown generator {name!r}; expected one of {', '.join(_GENERATORS)}"
                )
            k = int(exp) if exp else 1
            tokens.append((name, k))
        return cls(tuple(tokens))

    @classmethod
    def from_sl2(cls, matrix) -> "GroupElement":
        (a, b), (c, d) = matrix
        return cls(sl2=((a, b), (c, d)))


def _apply_generator(name: str, p: TildeEPoint) -> TildeEPoint:
    phi, x, tau = p.phi, p.x, p.tau
    if name == "r1":
        return TildeEPoint(phi, -x + 1, tau)
    if name == "r2":
        return TildeEPoint(phi - 2 * x + 1 + tau, -x + 1 + tau, tau)
    if name == "r3":
        return TildeEPoint(phi - 2 * x + tau, -x + tau, tau)
    if name == "t1":
        return TildeEPoint(phi + 1, x + 1, tau)
    if name == "t1^-1":
        return TildeEPoint(phi - 1, x - 1, tau)
    if name == "t2":
        return TildeEPoint(phi + 2 * x - 1 + tau, x + tau, tau)
    if name == "t2^-1":
        return TildeEPoint(phi - 2 * x + tau + 1, x - tau, tau)
    if name == "c":
        return TildeEPoint(phi + 1, -x, tau)
    if name == "c^-1":
        return TildeEPoint(phi - 1, -x, tau)
    raise DegenerateInput(f"unknown generator {name!r}")


def apply_group(g: GroupElement, p: TildeEPoint) -> TildeEPoint:
    """Apply a group element; words compose right-to-left (rightmost first)."""
    if g.sl2 is not None:
        (a, b), (c, d) = g.sl2
        den = c * p.tau + d
        return TildeEPoint(
            p.phi - c * p.x**2 / den, p.x / den, (a * p.tau + b) / den
        )
    out = p
    for name, k in reversed(g.tokens):
        if k >= 0:
            step, reps = name, k
        else:
            step, reps = (name if name in ("r1", "r2", "r3") else name + "^-1"), -k
        for _ in range(reps):
            out = _apply_generator(step, out)
    return out


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

class Invariants(NamedTuple):
    y1: complex
    y2: complex
    y3: complex
    j: complex


def _theta_ratio_data(p: TildeEPoint, cfg: SeriesConfig, kmax: int = 1):
    """theta derivatives at x and the normalization theta'(0)."""
    th_x = _theta_derivs(p.x, p.tau, cfg, kmax)
    th0 = _theta_derivs(0.0, p.tau, cfg, 1)[1]
    return [complex(v) for v in th_x], complex(th0)


def invariants(p: TildeEPoint, cfg: SeriesConfig = DEFAULT_CONFIG) -> Invariants:
    """(y1, y2, y3, J) at a regular point."""
    _check_margin(p.x, p.tau, POLE_MARGIN)
    th, th0 = _theta_ratio_data(p, cfg)
    ratio = th[0] / th0
    wp, wp_dz, _ = _wp_values(p.x, p.tau, cfg)
    half = cmath.exp(1j * math.pi * p.phi)
    y1 = ratio**2 * complex(wp) * half**2
    y2 = ratio * half
    y3 = TWO_PI_I * p.tau
    j = -0.5 / TWO_PI_I * ratio**3 * complex(wp_dz) * half**3
    return Invariants(y1, y2, y3, j)


def j_theta_quotient(p: TildeEPoint, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """J through the quotient form (1/(2 pi i)^3) theta(2x)/(2 theta(x)) e[3 phi/2]."""
    th2 = complex(_theta_derivs(2 * p.x, p.tau, cfg, 0)[0])
    th1 = complex(_theta_derivs(p.x, p.tau, cfg, 0)[0])
    half = cmath.exp(1j * math.pi * p.phi)
    return th2 / (2 * th1) * half**3 / TWO_PI_I**3


def j_product_form(p: TildeEPoint, cfg: SeriesConfig = DEFAULT_CONFIG) -> complex:
    """J through infinite products: expand theta(2x)/theta(x) by the triple product.

    theta(2x)/(2 theta(x)) = (e[x] - e[-x]) / (2 (e[x/2] - e[-x/2]))
        * prod_n (1 - q^n e[2x]) (1 - q^n e[-2x]) / ((1 - q^n e[x]) (1 - q^n e[-x])).

    Convergence requires |Im x| < Im tau / 2 after reduction; samples with
    larger imaginary part should use :func:`j_theta_quotient` instead.
    """
    x, tau = p.x, p.tau
    q = e_of(tau)
    w = e_of(x)
    prefactor = (w - 1 / w) / (2 * (e_of(x / 2) - e_of(-x / 2)))
    prod = 1.0 + 0j
    qn = 1.0 + 0j
    streak = 0
    for _ in range(cfg.max_terms):
        qn *= q
        num = (1 - qn * w * w) * (1 - qn / (w * w))
        den = (1 - qn * w) * (1 - qn / w)
        prod *= num / den
        if abs(qn) * max(abs(w) ** 2, abs(1 / w) ** 2, 1.0) < cfg.tail_tol:
            streak += 1
            if streak >= 2:
                break
        else:
            streak = 0
    half = cmath.exp(1j * math.pi * p.phi)
    return prefactor * prod * half**3 / TWO_PI_I**3


def chevalley_residual(p: TildeEPoint, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """|J^2 - (y1^3 - (1/48) E4 y1 y2^4 + (1/864) E6 y2^6)| (absolute)."""
    y1, y2, _, j = invariants(p, cfg)
    e4 = eisenstein(4, p.tau, cfg)
    e6 = eisenstein(6, p.tau, cfg)
    cubic = y1**3 - e4 * y1 * y2**4 / 48 + e6 * y2**6 / 864
    return abs(j * j - cubic)


class InvarianceResiduals(NamedTuple):
    dy1: float
    dy2: float
    dj: float


def invariance_residuals(
    p: TildeEPoint,
    generator: Union[str, GroupElement],
    cfg: SeriesConfig = DEFAULT_CONFIG,
) -> InvarianceResiduals:
    """Invariance defects of (y1, y2) and the (anti-)invariance defect of J.

    For the reflections r1, r2, r3 and for c the last entry is |J(g p) + J(p)|
    (J is anti-invariant); for the translations t1, t2 it is |J(g p) - J(p)|.
    For an SL(2, Z) element y2 is weight-1 equivariant, |y2(gamma p)(c tau + d)
    - y2(p)|, while y1 and J are plainly invariant (wp~ and wp~' carry weights
    2 and 3 that cancel the theta-ratio weights exactly).
    """
    if isinstance(generator, str):
        generator = GroupElement.parse(generator)
    base = invariants(p, cfg)
    moved = invariants(apply_group(generator, p), cfg)
    if generator.sl2 is not None:
        (_, _), (c, d) = generator.sl2
        den = c * p.tau + d
        return InvarianceResiduals(
            abs(moved.y1 - base.y1),
            abs(moved.y2 * den - base.y2),
            abs(moved.j - base.j),
        )
    flips = sum(abs(k) for name, k in generator.tokens if name in ("r1", "r2", "r3", "c"))
    sign = -1 if flips % 2 else 1
    return InvarianceResiduals(
        abs(moved.y1 - base.y1),
        abs(moved.y2 - base.y2),
        abs(moved.j - sign * base.j),
    )


def degree_residual(p: TildeEPoint, which: str, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """|(1/(pi i)) d y/d phi - k y| by finite differences; degrees (2,1,0,3)."""
    degrees = {"y1": 2, "y2": 1, "y3": 0, "j": 3}
    if which not in degrees:
        raise UnknownIdentity(f"which must be one of {sorted(degrees)}, got {which!r}")
    idx = ("y1", "y2", "y3", "j").index(which)
    val = invariants(p, cfg)[idx]
    fd = fd5(
        lambda ph: invariants(TildeEPoint(ph, p.x, p.tau), cfg)[idx], p.phi
    )
    return abs(fd / (1j * math.pi) - degrees[which] * val)


# ---------------------------------------------------------------------------
# flat coordinates and the pullback metric
# ---------------------------------------------------------------------------

#: constant intersection form on (d phi, d x, d tau)
G_TILDE = np.array([[0, 0, 1], [0, -0.5, 0], [1, 0, 0]], dtype=complex) / C_SQ


def t_coordinates(p: TildeEPoint, cfg: SeriesConfig = DEFAULT_CONFIG):
    """(t1, t2, t3) = (-y1 + (1/12) E2 y2^2, y2, y3)."""
    y1, y2, y3, _ = invariants(p, cfg)
    e2 = eisenstein(2, p.tau, cfg)
    return (-y1 + e2 * y2**2 / 12, y2, y3)


def _t_jacobian(p: TildeEPoint, cfg: SeriesConfig) -> np.ndarray:
    """Analytic B with B[i][a] = d t_i / d w_a, w = (phi, x, tau).

    tau-derivatives of theta come from the heat equation
    d theta^(k)/d tau = (1/(4 pi i)) theta^(k+2) and the weight-2 relation
    theta'''(0) = ((2 pi i)^2/4) E2 theta'(0).
    """
    th = _theta_derivs(p.x, p.tau, cfg, 4)
    th = [complex(v) for v in th]
    th0 = complex(_theta_derivs(0.0, p.tau, cfg, 1)[1])
    e2 = eisenstein(2, p.tau, cfg)
    half = cmath.exp(1j * math.pi * p.phi)

    t2 = th[0] / th0 * half
    g = (th[2] * th[0] - th[1] ** 2) / th0**2
    t1 = g * half**2 / C_SQ

    dt2_dphi = 1j * math.pi * t2
    dt2_dx = th[1] / th0 * half
    dt2_dtau = (th[2] - (C_SQ / 4) * e2 * th[0]) / th0 * half / (2 * TWO_PI_I)

    dt1_dphi = TWO_PI_I * t1
    dg_dx = (th[3] * th[0] - th[2] * th[1]) / th0**2
    dt1_dx = dg_dx * half**2 / C_SQ
    dg_dtau = (
        (th[4] * th[0] + th[2] ** 2 - 2 * th[1] * th[3]) / th0**2
        - 2 * (C_SQ / 4) * e2 * g
    ) / (2 * TWO_PI_I)
    dt1_dtau = dg_dtau * half**2 / C_SQ

    return np.array(
        [
            [dt1_dphi, dt1_dx, dt1_dtau],
            [dt2_dphi, dt2_dx, dt2_dtau],
            [0.0, 0.0, TWO_PI_I],
        ],
        dtype=complex,
    )


def pullback_metric(p: TildeEPoint, cfg: SeriesConfig = DEFAULT_CONFIG) -> np.ndarray:
    """g(dt_i, dt_j) = B g~ B^T through the analytic Jacobian B.

    Must reproduce the closed-form intersection form of the Frobenius module
    at the matching flat point.
    """
    _check_margin(p.x, p.tau, POLE_MARGIN)
    b = _t_jacobian(p, cfg)
    if abs(np.linalg.det(b)) < 1e-12:
        raise DegenerateJacobian("d(t1,t2,t3)/d(phi,x,tau) is numerically singular")
    return b @ G_TILDE @ b.T


def jacobian_residual(p: TildeEPoint, cfg: SeriesConfig = DEFAULT_CONFIG) -> float:
    """Relative defect of dy1 ^ dy2 ^ dy3 = (2 pi i)^3 J dphi ^ dx ^ dtau."""
    _check_margin(p.x, p.tau, POLE_MARGIN)
    y1, y2, y3, j = invariants(p, cfg)
    e2 = eisenstein(2, p.tau, cfg)
    d_e2 = eisenstein_derivative_ring(2, 1, p.tau, cfg)
    b = _t_jacobian(p, cfg)
    row_t1, row_t2, row_t3 = b
    row_y2 = row_t2
    row_y1 = (
        -row_t1
        + e2 * y2 / 6 * row_y2
        + np.array([0.0, 0.0, y2**2 / 12 * TWO_PI_I * d_e2], dtype=complex)
    )
    jac = np.array([row_y1, row_y2, row_t3])
    lhs = complex(np.linalg.det(jac))
    rhs = TWO_PI_I**3 * j
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
