"""Exact checks for the K-theory lattice layer.

Everything here is integer arithmetic — Euler-form Gram matrices, Serre
and twist operators, braid-group images, mutations of exceptional
triples, the elliptic root system, and the rank-5 hyperbolic extension —
so almost every assertion is an exact equality with zero tolerance.
The only floats are the eigenvalues/phases of the interpolating pairing
chi_a, and even there the characteristic-polynomial coefficients are
dyadic rationals that must come out exactly.
"""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellfrob import k_lattice as kl
from ellfrob.errors import (
    DegenerateInput,
    NotARoot,
    NotExceptional,
    NotInvertible,
    UnknownRelation,
)

BASES = ("S", "P", "R")

IDENTITY_3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

small_ints = st.integers(min_value=-6, max_value=6)
int_triples = st.tuples(small_ints, small_ints, small_ints)


def mat_mul(a, b):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def chi(x, y):
    return kl.euler_form(x, y)


def sym_form(x, y):
    """The symmetrized pairing I = chi + chi^T used by the root system."""
    return kl.euler_form(x, y) + kl.euler_form(y, x)


class TestEulerFormDisplays:
    """The three Gram matrices and the values they encode."""

    def test_gram_matrices_match_displays(self):
        assert kl.CHI["S"] == ((1, -2, 2), (0, 1, -2), (0, 0, 1))
        assert kl.CHI["P"] == ((1, 2, 2), (0, 1, 2), (0, 0, 1))
        assert kl.CHI["R"] == ((1, 0, 0), (0, 0, 1), (0, -1, 0))

    @pytest.mark.parametrize("basis", BASES)
    def test_euler_form_agrees_with_gram_matrix(self, basis):
        # chi(x, y) must equal x^T . CHI[basis] . y once both classes are
        # expressed in that basis, for every basis.
        gram = kl.CHI[basis]
        samples = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (2, -1, 3), (-1, 4, -2)]
        for xc in samples:
            for yc in samples:
                x = kl.KClass(xc, basis)
                y = kl.KClass(yc, basis)
                direct = sum(
                    xc[i] * gram[i][j] * yc[j] for i in range(3) for j in range(3)
                )
                assert chi(x, y) == direct

    def test_values_on_named_classes(self):
        assert chi(kl.ALPHA, kl.ALPHA) == 1
        assert chi(kl.DELTA1, kl.DELTA1) == 0
        assert chi(kl.DELTA2, kl.DELTA2) == 0
        assert chi(kl.DELTA1, kl.DELTA2) == 1
        assert chi(kl.DELTA2, kl.DELTA1) == -1
        # exceptional objects have chi(E, E) = 1
        for e in kl.PROJECTIVE_TRIPLE:
            assert chi(e, e) == 1
        for e in (kl.S1, kl.S2, kl.S3):
            assert chi(e, e) == 1

    def test_euler_form_is_basis_independent(self):
        x = kl.KClass((2, -1, 3), "S")
        y = kl.KClass((-1, 0, 2), "S")
        for basis in BASES:
            assert chi(x.to(basis), y.to(basis)) == chi(x, y)

    @given(int_triples, int_triples, int_triples)
    def test_bilinearity(self, a, b, c):
        x = kl.KClass(a, "R")
        y = kl.KClass(b, "R")
        z = kl.KClass(c, "R")
        xy = kl.KClass(tuple(u + v for u, v in zip(a, b)), "R")
        assert chi(xy, z) == chi(x, z) + chi(y, z)
        assert chi(z, xy) == chi(z, x) + chi(z, y)


class TestBasisChanges:
    def test_named_classes_in_r_coordinates(self):
        assert kl.ALPHA.coords == (1, 0, 0) and kl.ALPHA.basis == "R"
        assert kl.DELTA1.coords == (0, 1, 0)
        assert kl.DELTA2.coords == (0, 0, 1)
        assert kl.ALPHA1.coords == (1, -1, 0)
        assert kl.ALPHA2.coords == (-1, 1, 1)
        assert kl.ALPHA3.coords == (1, 0, -1)
        assert kl.P3.to("R").coords == (1, 0, -1)
        assert kl.P2.to("R").coords == (1, 1, -1)
        assert kl.P1.to("R").coords == (1, 1, 0)
        assert kl.S1.to("R").coords == (1, -1, 0)
        assert kl.S2.to("R").coords == (-1, 1, 1)
        assert kl.S3.to("R").coords == (1, 0, -1)

    def test_spherical_constants_are_the_delta_classes(self):
        assert kl.SPHERICAL_1.to("R").coords == kl.DELTA1.coords
        assert kl.SPHERICAL_2.to("R").coords == kl.DELTA2.coords

    @given(int_triples, st.sampled_from(BASES), st.sampled_from(BASES))
    def test_round_trip(self, coords, b1, b2):
        x = kl.KClass(coords, b1)
        back = x.to(b2).to(b1)
        assert back.coords == coords
        assert back.basis == b1

    def test_projective_triple_is_exceptional(self):
        assert kl.is_class_exceptional(kl.PROJECTIVE_TRIPLE)
        assert kl.is_class_exceptional((kl.S1, kl.S2, kl.S3))


class TestSerreOperator:
    def test_serre_is_chi_inverse_chi_transpose(self):
        for basis in BASES:
            gram = kl.CHI[basis]
            serre = kl.serre_matrix(basis).matrix
            # chi . serre == chi^T, checked entrywise in integers
            prod = mat_mul(gram, serre)
            transpose = tuple(
                tuple(gram[j][i] for j in range(3)) for i in range(3)
            )
            assert prod == transpose

    def test_serre_in_r_basis_is_diagonal(self):
        assert kl.serre_matrix("R").matrix == ((1, 0, 0), (0, -1, 0), (0, 0, -1))

    def test_serre_squares_to_identity(self):
        for basis in BASES:
            s = kl.serre_matrix(basis)
            assert s.power(2).matrix == IDENTITY_3
            assert s.is_involution()

    def test_serre_preserves_euler_form(self):
        s = kl.serre_matrix("R")
        assert s.preserved_form == "chi"
        x = kl.KClass((2, -1, 3), "R")
        y = kl.KClass((1, 4, -2), "R")
        assert chi(s.apply(x), s.apply(y)) == chi(x, y)


class TestTwistOperators:
    def test_spherical_twist_displays(self):
        t1 = kl.twist_matrix([kl.SPHERICAL_1])
        t2 = kl.twist_matrix([kl.SPHERICAL_2])
        assert t1.matrix == ((1, 0, 0), (0, 1, -1), (0, 0, 1))
        assert t1.inverse().matrix == ((1, 0, 0), (0, 1, 1), (0, 0, 1))
        assert t2.inverse().matrix == ((1, 0, 0), (0, 1, 0), (0, -1, 1))

    def test_twist_formula_on_classes(self):
        # T_S(x) = x - chi(S, x) S
        s = kl.SPHERICAL_1
        t = kl.twist_matrix([s])
        for coords in ((1, 0, 0), (0, 0, 1), (3, -2, 5)):
            x = kl.KClass(coords, "R")
            image = t.apply(x)
            expected = tuple(
                xi - chi(s, x) * si
                for xi, si in zip(coords, s.to("R").coords)
            )
            assert image.coords == expected

    def test_braid_relation_on_twists(self):
        t1 = kl.twist_matrix([kl.SPHERICAL_1])
        t2 = kl.twist_matrix([kl.SPHERICAL_2])
        assert (t1 @ t2 @ t1).matrix == (t2 @ t1 @ t2).matrix

    def test_inverse_cube_of_product_is_serre(self):
        t1 = kl.twist_matrix([kl.SPHERICAL_1])
        t2 = kl.twist_matrix([kl.SPHERICAL_2])
        assert (t1 @ t2).power(-3).matrix == kl.serre_matrix("R").matrix

    def test_double_alpha_twist_is_minus_serre_inverse(self):
        t = kl.twist_matrix([kl.ALPHA, kl.ALPHA])
        assert t.matrix == ((-1, 0, 0), (0, 1, 0), (0, 0, 1))
        serre_inv = kl.serre_matrix("R").inverse().matrix
        assert t.matrix == tuple(
            tuple(-entry for entry in row) for row in serre_inv
        )

    @given(int_triples, int_triples)
    def test_twists_preserve_euler_form(self, a, b):
        t = kl.twist_matrix([kl.SPHERICAL_1]) @ kl.twist_matrix([kl.SPHERICAL_2])
        assert t.preserved_form == "chi"
        x = kl.KClass(a, "R")
        y = kl.KClass(b, "R")
        assert chi(t.apply(x), t.apply(y)) == chi(x, y)


class TestBraidToSL2:
    def test_generator_images(self):
        assert kl.braid_to_sl2("s1") == ((1, 1), (0, 1))
        assert kl.braid_to_sl2("s2") == ((1, 0), (-1, 1))

    def test_braid_relation(self):
        assert kl.braid_to_sl2("s1 s2 s1") == kl.braid_to_sl2("s2 s1 s2")
        assert kl.braid_to_sl2("s1 s2 s1") == ((0, 1), (-1, 0))

    def test_central_element_and_order_twelve(self):
        half = "s1 s2 " * 3
        assert kl.braid_to_sl2(half.strip()) == ((-1, 0), (0, -1))
        full = "s1 s2 " * 6
        assert kl.braid_to_sl2(full.strip()) == ((1, 0), (0, 1))

    def test_inverse_letters_cancel(self):
        assert kl.braid_to_sl2("s1 s1^-1") == ((1, 0), (0, 1))
        assert kl.braid_to_sl2("s2^-1 s1 s1^-1 s2") == ((1, 0), (0, 1))

    def test_shifts_map_to_identity(self):
        assert kl.braid_to_sl2("[1,0,2]") == ((1, 0), (0, 1))

    def test_braid_word_parsing(self):
        word = kl.BraidWord.parse("s1 s2^-2")
        assert word.tokens == (("s1", 1), ("s2", -1), ("s2", -1))
        joined = kl.BraidWord.parse("s1") + kl.BraidWord.parse("s2")
        assert joined.tokens == (("s1", 1), ("s2", 1))


class TestMutations:
    def test_left_mutation_of_projective_triple(self):
        triple = kl.mutate(kl.PROJECTIVE_TRIPLE, "s1")
        assert [c.basis for c in triple] == ["P", "P", "P"]
        assert [c.coords for c in triple] == [(2, -1, 0), (1, 0, 0), (0, 0, 1)]

    def test_mutation_braid_relation(self):
        lhs = kl.mutate(kl.PROJECTIVE_TRIPLE, "s1 s2 s1")
        rhs = kl.mutate(kl.PROJECTIVE_TRIPLE, "s2 s1 s2")
        assert [c.coords for c in lhs] == [c.coords for c in rhs]

    def test_mutation_round_trip(self):
        for word in ("s1", "s2", "s1 s2"):
            inverse = " ".join(
                f"{name}^-1" for name in reversed(word.split())
            )
            back = kl.mutate(kl.mutate(kl.PROJECTIVE_TRIPLE, word), inverse)
            assert [c.coords for c in back] == [
                c.coords for c in kl.PROJECTIVE_TRIPLE
            ]

    @pytest.mark.parametrize("word", ["s1", "s2", "s1 s2 s1", "s2^-1 s1"])
    def test_mutation_preserves_exceptionality(self, word):
        assert kl.is_class_exceptional(kl.mutate(kl.PROJECTIVE_TRIPLE, word))

    def test_shift_token_flips_signs_entrywise(self):
        triple = kl.mutate(kl.PROJECTIVE_TRIPLE, "[1,0,2]")
        assert [c.coords for c in triple] == [(-1, 0, 0), (0, 1, 0), (0, 0, 1)]

    def test_non_exceptional_triple_rejected(self):
        with pytest.raises(NotExceptional):
            kl.mutate((kl.ALPHA, kl.ALPHA, kl.ALPHA), "s1")


class TestEllipticRootSystem:
    def test_membership_rule(self):
        # real roots are +-alpha + b delta1 + c delta2 with (b+1)(c+1) even
        assert kl.is_real_root(kl.ALPHA1)
        assert kl.is_real_root(kl.ALPHA2)
        assert kl.is_real_root(kl.ALPHA3)
        assert not kl.is_real_root(kl.ALPHA)
        assert not kl.is_real_root(kl.DELTA1)
        assert not kl.is_real_root(kl.KClass((1, 2, 2), "R"))  # both even
        assert kl.is_real_root(kl.KClass((1, 1, 3), "R"))
        assert kl.is_real_root(kl.KClass((-1, 3, 2), "R"))
        assert not kl.is_real_root(kl.KClass((2, 1, 0), "R"))

    def test_enumerate_roots_height_two(self):
        roots = {r.coords for r in kl.enumerate_roots(2)}
        assert (1, -1, 0) in roots
        assert (-1, 1, 0) in roots
        assert (1, 0, 0) not in roots
        assert len(roots) == 42
        for r in roots:
            assert kl.is_real_root(kl.KClass(r, "R"))

    def test_real_roots_have_squared_length_two(self):
        for r in kl.enumerate_roots(2):
            assert sym_form(r, r) == 2

    def test_delta_classes_span_the_radical(self):
        probes = [kl.ALPHA, kl.ALPHA1, kl.DELTA1, kl.DELTA2, kl.P3.to("R")]
        for d in (kl.DELTA1, kl.DELTA2):
            for x in probes:
                assert sym_form(d, x) == 0

    def test_reflection_matrix_and_involution(self):
        r = kl.reflection(kl.ALPHA1)
        assert r.matrix == ((-1, 0, 0), (2, 1, 0), (0, 0, 1))
        assert r.is_involution()
        assert r.apply(kl.ALPHA1).coords == (-1, 1, 0)

    def test_reflection_formula(self):
        # r_beta(x) = x - I(beta, x) beta for a real root beta
        beta = kl.ALPHA3
        r = kl.reflection(beta)
        for coords in ((1, -1, 0), (0, 1, 0), (2, 3, -1)):
            x = kl.KClass(coords, "R")
            expected = tuple(
                xi - sym_form(beta, x) * bi
                for xi, bi in zip(coords, beta.coords)
            )
            assert r.apply(x).coords == expected

    def test_root_system_closed_under_simple_reflections(self):
        roots = kl.enumerate_roots(6)
        for simple in (kl.ALPHA1, kl.ALPHA2, kl.ALPHA3):
            r = kl.reflection(simple)
            for beta in roots:
                assert kl.is_real_root(r.apply(beta))

    def test_reflection_rejects_non_roots(self):
        with pytest.raises(NotARoot):
            kl.reflection(kl.ALPHA)
        with pytest.raises(NotARoot):
            kl.reflection(kl.DELTA1)  # isotropic


class TestRank5Extension:
    """The hyperbolic extension with basis (kappa1, kappa2, alpha, delta2, delta1)."""

    def test_embedding_of_rank_three_classes(self):
        assert kl.embed_rank5(kl.ALPHA).coords == (0, 0, 1, 0, 0)
        assert kl.embed_rank5(kl.DELTA2).coords == (0, 0, 0, 1, 0)
        assert kl.embed_rank5(kl.DELTA1).coords == (0, 0, 0, 0, 1)

    def test_coxeter_element_on_basis(self):
        # c~ fixes the deltas, negates alpha, and shears the kappas
        units = [
            kl.Rank5Class(tuple(1 if i == j else 0 for i in range(5)))
            for j in range(5)
        ]
        kappa1, kappa2, alpha, delta2, delta1 = units
        assert kl.C_TILDE.apply(alpha).coords == (0, 0, -1, 0, 0)
        assert kl.C_TILDE.apply(delta1).coords == delta1.coords
        assert kl.C_TILDE.apply(delta2).coords == delta2.coords
        assert kl.C_TILDE.apply(kappa1).coords == (1, 0, 0, -1, 0)
        assert kl.C_TILDE.apply(kappa2).coords == (0, 1, 0, 0, -1)

    def test_translation_commutator_is_central_square(self):
        comm = kl.TAU_1 @ kl.TAU_2 @ kl.TAU_1.inverse() @ kl.TAU_2.inverse()
        assert comm.matrix == kl.C_TILDE.inverse().power(2).matrix

    def test_central_square_commutes_with_generators(self):
        c2 = kl.C_TILDE.power(2)
        identity5 = tuple(
            tuple(1 if i == j else 0 for j in range(5)) for i in range(5)
        )
        assert c2.matrix != identity5
        for gen in (kl.R_TILDE_1, kl.R_TILDE_2, kl.R_TILDE_3, kl.TAU_1, kl.TAU_2):
            assert (c2 @ gen).matrix == (gen @ c2).matrix

    def test_lifted_reflections_are_involutions(self):
        for gen in (kl.R_TILDE_1, kl.R_TILDE_2, kl.R_TILDE_3):
            assert gen.is_involution()
            assert gen.preserved_form == "I_tilde"

    def test_translations_generated_by_reflections(self):
        assert kl.TAU_1.matrix == (kl.R_TILDE_2 @ kl.R_TILDE_3).matrix
        assert kl.TAU_2.matrix == (kl.R_TILDE_2 @ kl.R_TILDE_1).matrix


class TestGroupRelations:
    @pytest.mark.parametrize("relation", kl.relation_ids())
    def test_relation_holds(self, relation):
        assert kl.group_relation_check(relation)

    def test_unicode_aliases(self):
        assert kl.group_relation_check("(r1r2r3)² = 1")
        assert kl.group_relation_check("tilde-commutator = c̃⁻²")
        assert kl.group_relation_check("c̃² central")

    def test_unknown_relation_raises(self):
        with pytest.raises(UnknownRelation):
            kl.group_relation_check("r4^2=1")


class TestChiSpectrum:
    """chi_a interpolates the normalized pairings; a in {0, 1/2, 1, 3/2, 2}."""

    @pytest.mark.parametrize("a", [0.0, 0.5, 1.0, 1.5, 2.0])
    def test_characteristic_polynomial_coefficients(self, a):
        # det(t - chi_a^-1 chi_a^T) = (t - 1)(t^2 - (a^3 - 3a^2 + 2) t + 1);
        # the sampled a are dyadic, so the coefficients must be exact.
        b = a**3 - 3 * a**2 + 2
        spectrum = kl.chi_a_spectrum(a)
        assert spectrum.coefficients == (1.0, -(b + 1.0), b + 1.0, -1.0)

    @pytest.mark.parametrize("a", [0.0, 0.5, 1.0, 1.5, 2.0])
    def test_eigenvalues_satisfy_characteristic_polynomial(self, a):
        spectrum = kl.chi_a_spectrum(a)
        c0, c1, c2, c3 = spectrum.coefficients
        for lam in spectrum.eigenvalues:
            value = c0 * lam**3 + c1 * lam**2 + c2 * lam + c3
            assert abs(value) < 1e-12

    @pytest.mark.parametrize("a", [0.0, 0.5, 1.0, 1.5, 2.0])
    def test_unit_eigenvalue_and_symmetric_phases(self, a):
        spectrum = kl.chi_a_spectrum(a)
        assert abs(spectrum.eigenvalues[0] - 1.0) < 1e-14
        assert spectrum.phases[0] == 0.0
        assert spectrum.phases[1] == -spectrum.phases[2]

    def test_exponent_variance_identity(self):
        # at a = 2 the phases are the shifted exponents (-1/2, 0, 1/2) and
        # their squares sum to 1/12 * 3 * 2 = 1/2, both sides exactly
        spectrum = kl.chi_a_spectrum(2.0)
        assert sorted(spectrum.phases) == [-0.5, 0.0, 0.5]
        variance = sum(p**2 for p in spectrum.phases)
        assert variance == 0.25 + 0.0 + 0.25
        assert variance == (1.0 / 12.0) * 3.0 * 2.0


class TestValidation:
    def test_kclass_rejects_bad_input(self):
        with pytest.raises(DegenerateInput):
            kl.KClass((1, 2), "R")
        with pytest.raises(DegenerateInput):
            kl.KClass((1, 0, 0), "Q")

    def test_lattice_map_rejects_non_unimodular(self):
        with pytest.raises(NotInvertible):
            kl.LatticeMap(((2, 0, 0), (0, 1, 0), (0, 0, 1)))

    def test_lattice_map_rejects_wrong_form_tag(self):
        with pytest.raises(DegenerateInput):
            kl.LatticeMap(((1, 1, 0), (0, 1, 0), (0, 0, 1)), "chi")


@settings(max_examples=40)
@given(int_triples)
def test_real_roots_reflect_to_real_roots(coords):
    """Hypothesis sweep: whenever coords happens to be a real root, its
    image under every simple reflection is again a real root."""
    x = kl.KClass(coords, "R")
    if not kl.is_real_root(x):
        return
    for simple in (kl.ALPHA1, kl.ALPHA2, kl.ALPHA3):
        assert kl.is_real_root(kl.reflection(simple).apply(x))
