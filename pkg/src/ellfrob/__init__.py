"""ellfrob: an elliptic Frobenius-manifold toolkit.

Layers, bottom up:

- :mod:`ellfrob.modular_forms` — Eisenstein series, their tau-derivative
  ring, Dedekind eta, Klein j.
- :mod:`ellfrob.theta_weierstrass` — the odd Jacobi theta function with
  derivatives, normalized Weierstrass functions, half-period values, and a
  named suite of exactly checkable identities.
- :mod:`ellfrob.frobenius_structure` — the rank-3 Frobenius structure:
  unfolding, residue pairing, flat/canonical coordinates, WDVV, the
  Lyashko-Looijenga map and its Newton inverse.
- :mod:`ellfrob.k_lattice` — the exact integer K-lattice: Euler forms,
  braid-group mutations, spherical twists, roots and reflections.
- :mod:`ellfrob.weyl_invariants` — the extended affine Weyl action on
  (phi, x, tau), the fundamental invariants y1, y2, y3 and anti-invariant J,
  and the pullback of the constant intersection form.
- :mod:`ellfrob.gamma_periods` — Gamma-class matrix identities and
  exponential-period asymptotics with Richardson extraction.
- :mod:`ellfrob.cli` — the ``ellfrob`` command-line front end.
"""

from .errors import (
    ContourTooLarge,
    DegenerateInput,
    DegenerateJacobian,
    IllConditioned,
    NewtonDiverged,
    NonConvergence,
    NotARoot,
    NotExceptional,
    NotInvertible,
    PoleTooClose,
    QuadratureUnconverged,
    ToolkitError,
    UnknownIdentity,
    UnknownRelation,
    UnsupportedOrder,
)
from .frobenius_structure import (
    CanonicalCoords,
    FrobeniusTensors,
    ModuliPoint,
    PrimitiveFormResiduals,
    canonical_jacobian,
    discriminant,
    euler_scaling_residual,
    frobenius_product,
    frobenius_tensors,
    ll_inverse,
    lyashko_looijenga,
    primitive_form_residuals,
    product_via_critical_values,
    residue_pairing,
    structure_constants_from_gamma,
    unfolding,
    wdvv_residual,
)
from .gamma_periods import (
    AsymptoticFit,
    CyclePath,
    GammaData,
    PeriodValue,
    asymptotic_fit,
    exponential_period,
    gamma_identities,
    kclass_correspondence,
    reference_targets,
    richardson_coefficients,
    richardson_leading,
)
from .k_lattice import (
    ALPHA,
    ALPHA1,
    ALPHA2,
    ALPHA3,
    DELTA1,
    DELTA2,
    PROJECTIVE_TRIPLE,
    BraidWord,
    KClass,
    LatticeMap,
    Rank5Class,
    braid_to_sl2,
    chi_a_spectrum,
    embed_rank5,
    enumerate_roots,
    euler_form,
    group_relation_check,
    is_class_exceptional,
    is_real_root,
    mutate,
    reflection,
    relation_ids,
    serre_matrix,
    twist_matrix,
)
from .modular_forms import (
    DEFAULT_CONFIG,
    HalfPlanePoint,
    SeriesConfig,
    dedekind_eta,
    eisenstein,
    eisenstein_derivative_ring,
    eisenstein_tau_derivative,
    klein_j,
)
from .theta_weierstrass import (
    HalfPeriodValues,
    TorusPoint,
    half_periods,
    identity_names,
    identity_residual,
    lattice_distance,
    theta11_d,
    weierstrass,
)
from .weyl_invariants import (
    GroupElement,
    Invariants,
    TildeEPoint,
    apply_group,
    chevalley_residual,
    invariance_residuals,
    invariants,
    j_product_form,
    j_theta_quotient,
    jacobian_residual,
    pullback_metric,
    t_coordinates,
)

__version__ = "0.1.0"
