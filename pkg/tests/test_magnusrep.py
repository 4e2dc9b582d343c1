import pytest

from lagtrace.errors import DegreeTooLow, NotInHandlebodyGroup, NotMonomial
from lagtrace.freegroup import (
    SURFACE,
    FreeGroupMap,
    MappingClassRep,
    alpha,
    beta,
    mcr_commutator,
    mcr_compose,
    mcr_conjugate,
    mcr_identity,
    mcr_inverse,
)
from lagtrace.groupring import (
    abelianize_ring,
    laurent_one,
    laurent_zero,
    parse_laurent,
    render_laurent,
    ring_one,
    ring_zero,
)
from lagtrace.johnson import (
    annulus_twist,
    handle_swap,
    handlebody_sample_library,
    meridian_twist,
    sample_Ak,
)
from lagtrace.magnusrep import (
    additive_form,
    crossed_check,
    crossed_check_surface,
    det_handlebody,
    fox_matrix,
    handlebody_fox_matrix,
    handlebody_magnus,
    magnus_rep,
    truncated_identity_check,
    truncated_identity_check_A,
    verify_det_contraction,
    verify_theorem_A,
    verify_theorem_B,
)
from lagtrace.tensorlie import handlebody_alphabet, render_sym


def laurent_mat_mul(A, B, alphabet):
    n = len(A)
    return tuple(
        tuple(
            sum((A[i][k] * B[k][j] for k in range(n)), laurent_zero(alphabet))
            for j in range(n)
        )
        for i in range(n)
    )


class TestFoxMatrix:
    def test_identity_map(self):
        m = mcr_identity(2)
        M = fox_matrix(m)
        for i in range(4):
            for j in range(4):
                expected = ring_one(SURFACE, 2) if i == j else ring_zero(SURFACE, 2)
                assert M[i][j] == expected

    def test_magnus_rep_matches_literal_abelianization(self):
        for m in (annulus_twist(2), meridian_twist(2), handle_swap(2, 1, 2)):
            fast = magnus_rep(m)
            literal = fox_matrix(m)
            for i in range(4):
                for j in range(4):
                    assert fast[i][j] == abelianize_ring(literal[i][j])


class TestHandlebodyMatrix:
    def test_worked_example(self):
        M = handlebody_magnus(annulus_twist(2))
        assert render_laurent(M[0][0]) == "B2^-1"
        assert M[0][1].is_zero()
        assert render_laurent(M[1][0]) == "1 - B1^-1"
        assert render_laurent(M[1][1]) == "1"

    def test_identity(self):
        M = handlebody_magnus(mcr_identity(2))
        a = handlebody_alphabet(2)
        assert M[0][0] == laurent_one(a)
        assert M[1][1] == laurent_one(a)
        assert M[0][1].is_zero() and M[1][0].is_zero()

    def test_swap_is_permutation(self):
        M = handlebody_magnus(handle_swap(2, 1, 2))
        a = handlebody_alphabet(2)
        assert M[0][1] == laurent_one(a)
        assert M[1][0] == laurent_one(a)
        assert M[0][0].is_zero() and M[1][1].is_zero()

    def test_requires_handlebody_class(self):
        g = 2
        fwd = FreeGroupMap(
            SURFACE, g, [alpha(1, g) * beta(1, g), alpha(2, g), beta(1, g), beta(2, g)]
        )
        inv = FreeGroupMap(
            SURFACE, g, [alpha(1, g) * ~beta(1, g), alpha(2, g), beta(1, g), beta(2, g)]
        )
        m = MappingClassRep(fwd, inv)
        with pytest.raises(NotInHandlebodyGroup):
            handlebody_fox_matrix(m)


class TestDeterminant:
    def test_worked_example(self):
        det = det_handlebody(annulus_twist(2))
        assert render_laurent(det) == "B2^-1"
        assert render_sym(additive_form(det)) == "-x2"

    def test_degree_two_sample_has_trivial_det(self):
        for fm in sample_Ak(2, 2, 3, seed=7):
            det = det_handlebody(fm.rep)
            assert det == laurent_one(handlebody_alphabet(2))

    def test_multiplicative_on_degree_one(self):
        phi = annulus_twist(2)
        psi = mcr_conjugate(phi, handle_swap(2, 1, 2))
        both = det_handlebody(mcr_compose(phi, psi))
        assert both == det_handlebody(phi) * det_handlebody(psi)

    def test_additive_form_rejects_sums(self):
        a = handlebody_alphabet(2)
        with pytest.raises(NotMonomial):
            additive_form(laurent_one(a) + parse_laurent("B1", a))
        with pytest.raises(NotMonomial):
            additive_form(parse_laurent("B1", a).scale(-1))


class TestCrossedLaw:
    def test_library_pairs(self):
        import random

        lib = handlebody_sample_library(2)
        rng = random.Random(170)
        for _ in range(8):
            m = rng.choice(lib)
            n = rng.choice(lib)
            assert crossed_check(m, n)

    def test_identity_consequence(self):
        # Id = r(psi) (psi . r(psi^-1))
        for psi in (annulus_twist(2), meridian_twist(2)):
            assert crossed_check(psi, mcr_inverse(psi))

    def test_surface_analogue(self):
        phi = annulus_twist(2)
        assert crossed_check_surface(phi, meridian_twist(2))
        assert crossed_check_surface(handle_swap(2, 1, 2), phi)

    def test_magnus_rep_multiplicative_on_torelli(self):
        phi = annulus_twist(2)
        psi = mcr_conjugate(phi, handle_swap(2, 1, 2))
        from lagtrace.tensorlie import surface_alphabet

        a = surface_alphabet(2)
        lhs = magnus_rep(mcr_compose(phi, psi))
        rhs = laurent_mat_mul(magnus_rep(phi), magnus_rep(psi), a)
        assert lhs == rhs


class TestTruncatedIdentities:
    def test_surface_degree_one(self):
        assert truncated_identity_check(annulus_twist(2), 1)

    def test_quotient_degree_one(self):
        assert truncated_identity_check_A(annulus_twist(2), 1)

    def test_degree_two(self):
        phi = annulus_twist(2)
        comm = mcr_commutator(phi, mcr_conjugate(phi, handle_swap(2, 1, 2)))
        assert truncated_identity_check(comm, 2)
        assert truncated_identity_check_A(comm, 2)

    def test_identity_class(self):
        assert truncated_identity_check(mcr_identity(2), 1)
        assert truncated_identity_check_A(mcr_identity(2), 2)

    def test_degree_too_low(self):
        with pytest.raises(DegreeTooLow):
            truncated_identity_check(meridian_twist(2), 1)


class TestVerifiers:
    def test_theorem_B_report(self):
        rep = verify_theorem_B(annulus_twist(2))
        assert rep["equal"] is True
        assert rep["lhs"] == "-x2"
        assert rep["rhs"] == "-x2"
        assert set(rep) == {"claim", "inputs", "lhs", "rhs", "equal", "wall_time_ms"}

    def test_theorem_B_on_conjugate(self):
        phi = annulus_twist(2)
        rep = verify_theorem_B(mcr_conjugate(phi, handle_swap(2, 1, 2)))
        assert rep["equal"] is True
        assert rep["lhs"] == "-x1"

    def test_theorem_A_on_commutator(self):
        phi = annulus_twist(2)
        comm = mcr_commutator(phi, mcr_conjugate(phi, handle_swap(2, 1, 2)))
        rep = verify_theorem_A(comm, 2)
        assert rep["equal"] is True

    def test_theorem_A_needs_degree_two(self):
        with pytest.raises(ValueError):
            verify_theorem_A(annulus_twist(2), 1)

    def test_det_contraction_on_twist(self):
        rep = verify_det_contraction(annulus_twist(2))
        assert rep["equal"] is True

    def test_det_contraction_on_samples(self):
        for fm in sample_Ak(2, 1, 4, seed=23):
            assert verify_det_contraction(fm.rep)["equal"] is True

    def test_det_contraction_degree_two_gives_trivial_det(self):
        # degree-1 derivation is zero there, so the doubled contraction is
        # the zero vector and the determinant must be 1
        for fm in sample_Ak(2, 2, 2, seed=41):
            rep = verify_det_contraction(fm.rep)
            assert rep["equal"] is True
            assert "exponents [0, 0, 0, 0]" in rep["rhs"]
