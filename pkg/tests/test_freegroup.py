import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagtrace.errors import (
    AmbientMismatch,
    CertificationError,
    NotInHandlebodyGroup,
    ParseError,
)
from lagtrace.freegroup import (
    HANDLEBODY,
    SURFACE,
    FreeGroupMap,
    MappingClassRep,
    abelianize_word,
    alpha,
    apply,
    beta,
    beta_prime,
    boundary_word,
    commutator,
    compose,
    conjugate,
    extends_to_handlebody,
    format_word,
    identity_map,
    identity_word,
    induced_handlebody_map,
    is_boundary_fixing,
    mcr_commutator,
    mcr_compose,
    mcr_conjugate,
    mcr_identity,
    mcr_inverse,
    parse_word,
    preserves_symplectic_form,
    project_to_handlebody,
    random_reduced_word,
    symplectic_action,
    symplectic_form_matrix,
    word_from_codes,
)


def words(genus=2, ambient=SURFACE, max_len=12):
    rank = 2 * genus if ambient == SURFACE else genus
    codes = st.integers(min_value=1, max_value=rank).flatmap(
        lambda k: st.sampled_from([k, -k])
    )
    return st.lists(codes, max_size=max_len).map(
        lambda ls: word_from_codes(ambient, genus, ls)
    )


class TestReduction:
    def test_cancellation(self):
        w = word_from_codes(SURFACE, 2, [1, 2, -2, -1, 3])
        assert w.letters == (3,)

    def test_identity(self):
        assert word_from_codes(SURFACE, 2, [1, -1]).is_identity()

    def test_nested_cancellation(self):
        w = word_from_codes(SURFACE, 2, [1, 2, 3, -3, -2, -1])
        assert w.is_identity()

    @given(words())
    def test_inverse_cancels(self, w):
        assert (w * ~w).is_identity()
        assert (~w * w).is_identity()

    @given(words(), words())
    def test_antihomomorphism(self, u, v):
        assert ~(u * v) == ~v * ~u

    @given(words(), words(), words())
    def test_associative(self, u, v, w):
        assert (u * v) * w == u * (v * w)

    def test_power(self):
        a1 = alpha(1, 2)
        assert a1**3 == a1 * a1 * a1
        assert a1**-2 == ~a1 * ~a1
        assert (a1**0).is_identity()

    def test_ambient_mismatch(self):
        a = alpha(1, 2)
        bp = beta_prime(1, 2)
        with pytest.raises(AmbientMismatch):
            a * bp

    def test_genus_mismatch(self):
        with pytest.raises(AmbientMismatch):
            alpha(1, 2) * alpha(1, 3)


class TestParseFormat:
    @pytest.mark.parametrize(
        "text,codes",
        [
            ("a1", (1,)),
            ("b2", (4,)),
            ("a1^-1", (-1,)),
            ("a1 b1 a1^-1 b1^-1", (1, 3, -1, -3)),
            ("1", ()),
        ],
    )
    def test_parse_surface(self, text, codes):
        assert parse_word(text, 2).letters == codes

    def test_parse_handlebody(self):
        w = parse_word("B1 B2^-1", 2, ambient=HANDLEBODY)
        assert w.letters == (1, -2)

    @given(words(genus=3))
    def test_round_trip(self, w):
        assert parse_word(format_word(w), 3) == w

    def test_identity_formats_as_one(self):
        assert format_word(identity_word(SURFACE, 2)) == "1"

    @pytest.mark.parametrize(
        "bad",
        ["a0", "a3", "c1", "B1", "a1^2", "a1^", "a", "a1b1", "b1^+1"],
    )
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_word(bad, 2)

    def test_rejects_surface_letter_in_handlebody(self):
        with pytest.raises(ParseError):
            parse_word("a1", 2, ambient=HANDLEBODY)

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as exc:
            parse_word("a1 c2", 2, line=7)
        assert exc.value.line == 7
        assert exc.value.column == 4


class TestCommutators:
    def test_commutator_form(self):
        u, v = alpha(1, 2), beta(1, 2)
        assert commutator(u, v) == u * v * ~u * ~v

    def test_conjugate_form(self):
        u, v = alpha(2, 2), beta(2, 2)
        assert conjugate(u, v) == v * u * ~v

    @given(words(), words())
    def test_commutator_inverse(self, u, v):
        assert ~commutator(u, v) == commutator(v, u)


class TestMaps:
    def test_apply_extends_letterwise(self):
        g = 2
        f = FreeGroupMap(
            SURFACE,
            g,
            [alpha(1, g) * beta(1, g), alpha(2, g), beta(1, g), beta(2, g)],
        )
        w = parse_word("a1 b1^-1", g)
        assert apply(f, w) == parse_word("a1 b1 b1^-1", g)

    def test_compose_is_f_after_h(self):
        g = 2
        f = FreeGroupMap(SURFACE, g, [parse_word(s, g) for s in ["a1 b1", "a2", "b1", "b2"]])
        h = FreeGroupMap(SURFACE, g, [parse_word(s, g) for s in ["a1", "a2", "b1 a1", "b2"]])
        fh = compose(f, h)
        # (f.h)(b1) = f(b1 a1) = b1 a1 b1
        assert apply(fh, beta(1, g)) == parse_word("b1 a1 b1", g)

    def test_wrong_image_count(self):
        with pytest.raises(ValueError):
            FreeGroupMap(SURFACE, 2, [alpha(1, 2)])


def twist_map(g):
    # beta_1 -> beta_1 alpha_1, everything else fixed
    images = [alpha(i, g) for i in range(1, g + 1)] + [beta(i, g) for i in range(1, g + 1)]
    images[g] = beta(1, g) * alpha(1, g)
    inv_images = list(images)
    inv_images[g] = beta(1, g) * ~alpha(1, g)
    return MappingClassRep(
        FreeGroupMap(SURFACE, g, images), FreeGroupMap(SURFACE, g, inv_images)
    )


class TestMappingClassRep:
    def test_certifies(self):
        m = twist_map(2)
        assert apply(m.forward, beta(1, 2)) == parse_word("b1 a1", 2)

    def test_rejects_non_inverse(self):
        g = 2
        f = FreeGroupMap(
            SURFACE, g, [alpha(1, g) * beta(1, g), alpha(2, g), beta(1, g), beta(2, g)]
        )
        with pytest.raises(CertificationError):
            MappingClassRep(f, f)

    def test_compose_and_inverse(self):
        m = twist_map(2)
        mm = mcr_compose(m, m)
        assert apply(mm.forward, beta(1, 2)) == parse_word("b1 a1 a1", 2)
        inv = mcr_inverse(m)
        ident = mcr_compose(m, inv)
        for i in range(1, 5):
            w = word_from_codes(SURFACE, 2, [i])
            assert apply(ident.forward, w) == w

    def test_conjugate_and_commutator_certify(self):
        m = twist_map(2)
        n = mcr_conjugate(m, mcr_compose(m, m))
        assert isinstance(n, MappingClassRep)
        c = mcr_commutator(m, n)
        assert isinstance(c, MappingClassRep)

    def test_identity(self):
        m = mcr_identity(2)
        assert apply(m.forward, alpha(1, 2)) == alpha(1, 2)


class TestProjection:
    def test_kills_alpha(self):
        w = parse_word("a1 b1 a2^-1 b2", 2)
        assert format_word(project_to_handlebody(w)) == "B1 B2"

    def test_projection_is_homomorphism(self):
        u = parse_word("a1 b1", 2)
        v = parse_word("b1^-1 a2 b2", 2)
        assert project_to_handlebody(u * v) == project_to_handlebody(
            u
        ) * project_to_handlebody(v)

    def test_twist_extends(self):
        # beta_1 -> beta_1 alpha_1 sends the kernel's normal generators into the kernel
        assert extends_to_handlebody(twist_map(2))

    def test_induced_map(self):
        ind = induced_handlebody_map(twist_map(2))
        assert apply(ind, beta_prime(1, 2)) == beta_prime(1, 2)

    def test_non_extending(self):
        g = 2
        # alpha_1 -> alpha_1 beta_1 does not keep alpha_1's image in the kernel
        images = [parse_word(s, g) for s in ["a1 b1", "a2", "b1", "b2"]]
        inv = [parse_word(s, g) for s in ["a1 b1^-1", "a2", "b1", "b2"]]
        m = MappingClassRep(FreeGroupMap(SURFACE, g, images), FreeGroupMap(SURFACE, g, inv))
        assert not extends_to_handlebody(m)
        with pytest.raises(NotInHandlebodyGroup):
            induced_handlebody_map(m)


class TestHomology:
    def test_abelianize(self):
        w = parse_word("a1 b1 a1 b1^-1 a2^-1", 2)
        assert abelianize_word(w) == (2, -1, 0, 0)

    def test_symplectic_action_of_twist(self):
        m = twist_map(2)
        M = symplectic_action(m)
        # beta_1 -> beta_1 alpha_1 adds the alpha_1 row entry in beta_1's column
        assert M[0][2] == 1 and M[2][2] == 1
        assert preserves_symplectic_form(M, 2)

    def test_form_matrix(self):
        J = symplectic_form_matrix(2)
        assert J[0][2] == 1 and J[2][0] == -1 and J[1][3] == 1 and J[3][1] == -1

    def test_action_respects_composition(self):
        m = twist_map(2)
        mm = mcr_compose(m, m)
        M = symplectic_action(m)
        MM = symplectic_action(mm)
        prod = [
            [sum(M[i][k] * M[k][j] for k in range(4)) for j in range(4)]
            for i in range(4)
        ]
        assert tuple(tuple(r) for r in prod) == MM


class TestBoundary:
    def test_descending_order(self):
        z = boundary_word(2)
        assert z == commutator(alpha(2, 2), beta(2, 2)) * commutator(
            alpha(1, 2), beta(1, 2)
        )

    def test_twist_fixes_boundary(self):
        # [a1, b1 a1] reduces to [a1, b1], so the twist fixes zeta on the nose
        assert is_boundary_fixing(twist_map(2))

    def test_plain_swap_moves_boundary(self):
        g = 2
        images = [alpha(2, g), alpha(1, g), beta(2, g), beta(1, g)]
        swap = MappingClassRep(
            FreeGroupMap(SURFACE, g, images), FreeGroupMap(SURFACE, g, images)
        )
        assert not is_boundary_fixing(swap)

    def test_identity_fixes_boundary(self):
        assert is_boundary_fixing(mcr_identity(2))


class TestRandomWords:
    def test_reduced_and_deterministic(self):
        import random

        w1 = random_reduced_word(random.Random(5), SURFACE, 2, 30)
        w2 = random_reduced_word(random.Random(5), SURFACE, 2, 30)
        assert w1 == w2
        assert len(w1.letters) == 30

    def test_handlebody_ambient(self):
        import random

        w = random_reduced_word(random.Random(1), HANDLEBODY, 3, 10)
        assert w.ambient == HANDLEBODY
        assert all(1 <= abs(c) <= 3 for c in w.letters)
