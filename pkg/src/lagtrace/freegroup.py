"""Exact words and automorphisms of the surface and handlebody free groups.

The surface group is free on 2g generators alpha_1..alpha_g, beta_1..beta_g;
the handlebody group is free on g generators beta'_1..beta'_g.  Killing the
alphas and priming the betas gives the projection between them.

Letters are stored as nonzero signed integers: +k is the k-th basis generator,
-k its inverse.  For the surface, codes 1..g are alpha_1..alpha_g and codes
g+1..2g are beta_1..beta_g, matching the ordering gamma_i = alpha_i,
gamma_{g+i} = beta_i used everywhere downstream (Fox matrices, homology
coordinates).  For the handlebody, codes 1..g are beta'_1..beta'_g.
Words are always stored freely reduced; constructors reduce.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AmbientMismatch, CertificationError, ParseError

SURFACE = "surface"
HANDLEBODY = "handlebody"

MIN_GENUS = 2


def _rank(ambient: str, genus: int) -> int:
    if ambient == SURFACE:
        return 2 * genus
    if ambient == HANDLEBODY:
        return genus
    raise AmbientMismatch(f"unknown ambient {ambient!r}")


def _check_genus(genus: int) -> None:
    if genus < MIN_GENUS:
        raise ValueError(f"genus must be at least {MIN_GENUS}, got {genus}")


@dataclass(frozen=True)
class Generator:
    """A named basis generator; kind is 'a' or 'b' ('b' primed in the handlebody)."""

    kind: str
    index: int
    ambient: str = SURFACE

    def __post_init__(self):
        if self.ambient not in (SURFACE, HANDLEBODY):
            raise AmbientMismatch(f"unknown ambient {self.ambient!r}")
        if self.ambient == HANDLEBODY and self.kind != "b":
            raise ValueError("handlebody generators are all of kind 'b'")
        if self.kind not in ("a", "b"):
            raise ValueError(f"kind must be 'a' or 'b', got {self.kind!r}")
        if self.index < 1:
            raise ValueError("generator index is 1-based")

    def code(self, genus: int) -> int:
        """Signed-letter code of this generator inside a given genus."""
        if self.index > genus:
            raise ValueError(f"generator index {self.index} exceeds genus {genus}")
        if self.ambient == HANDLEBODY:
            return self.index
        return self.index if self.kind == "a" else genus + self.index


def generator_from_code(code: int, genus: int, ambient: str) -> Generator:
    k = abs(code)
    if k < 1 or k > _rank(ambient, genus):
        raise ValueError(f"letter code {code} out of range for {ambient} genus {genus}")
    if ambient == HANDLEBODY:
        return Generator("b", k, HANDLEBODY)
    return Generator("a", k, SURFACE) if k <= genus else Generator("b", k - genus, SURFACE)


def _reduce(letters) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class GroupWord:
    """A freely reduced word in the surface or handlebody free group."""

    __slots__ = ("ambient", "genus", "letters", "_hash")

    def __init__(self, ambient: str, genus: int, letters=()):
        _check_genus(genus)
        rank = _rank(ambient, genus)
        reduced = _reduce(letters)
        for x in reduced:
            if x == 0 or abs(x) > rank:
                raise ValueError(f"letter code {x} out of range for {ambient} genus {genus}")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "letters", reduced)
        object.__setattr__(self, "_hash", hash((ambient, genus, reduced)))

    def __setattr__(self, name, value):
        raise AttributeError("GroupWord is immutable")

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, GroupWord)
            and self.ambient == other.ambient
            and self.genus == other.genus
            and self.letters == other.letters
        )

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        _same_group(self, other)
        return GroupWord(self.ambient, self.genus, self.letters + other.letters)

    def __invert__(self) -> "GroupWord":
        return GroupWord(self.ambient, self.genus, tuple(-x for x in reversed(self.letters)))

    def __pow__(self, n: int) -> "GroupWord":
        base = self if n >= 0 else ~self
        out = identity_word(self.ambient, self.genus)
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.letters

    def __repr__(self):
        return f"GroupWord({format_word(self)!r}, genus={self.genus}, ambient={self.ambient!r})"


def _same_group(u: GroupWord, v: GroupWord) -> None:
    if u.ambient != v.ambient or u.genus != v.genus:
        raise AmbientMismatch(
            f"cannot combine {u.ambient} genus {u.genus} with {v.ambient} genus {v.genus}"
        )


def identity_word(ambient: str, genus: int) -> GroupWord:
    return GroupWord(ambient, genus, ())


def word_from_codes(ambient: str, genus: int, codes) -> GroupWord:
    return GroupWord(ambient, genus, codes)


def reduce(ambient: str, genus: int, letters) -> GroupWord:
    """Freely reduce a letter sequence; the constructor already does this."""
    return GroupWord(ambient, genus, letters)


def multiply(u: GroupWord, v: GroupWord) -> GroupWord:
    return u * v


def invert(u: GroupWord) -> GroupWord:
    return ~u


def conjugate(u: GroupWord, by: GroupWord) -> GroupWord:
    """by * u * by^-1."""
    return by * u * ~by


def commutator(u: GroupWord, v: GroupWord) -> GroupWord:
    """u v u^-1 v^-1."""
    return u * v * ~u * ~v


def alpha(i: int, genus: int) -> GroupWord:
    return GroupWord(SURFACE, genus, (i,))


def beta(i: int, genus: int) -> GroupWord:
    return GroupWord(SURFACE, genus, (genus + i,))


def beta_prime(i: int, genus: int) -> GroupWord:
    return GroupWord(HANDLEBODY, genus, (i,))


# ---------------------------------------------------------------------------
# word grammar


def _letter_token(code: int, genus: int, ambient: str) -> str:
    k = abs(code)
    if ambient == HANDLEBODY:
        name = f"B{k}"
    else:
        name = f"a{k}" if k <= genus else f"b{k - genus}"
    return name + ("^-1" if code < 0 else "")


def format_word(w: GroupWord) -> str:
    """Render a word in the grammar accepted by parse_word; identity is '1'."""
    if w.is_identity():
        return "1"
    return " ".join(_letter_token(x, w.genus, w.ambient) for x in w.letters)


def parse_word(text: str, genus: int, ambient: str = SURFACE, line: int | None = None) -> GroupWord:
    """Parse whitespace-separated tokens a1..ag / b1..bg (B1..Bg primed), '^-1' inverts."""
    _check_genus(genus)
    tokens = text.split()
    if tokens == ["1"]:
        return identity_word(ambient, genus)
    letters = []
    col = 0
    for tok in tokens:
        col = text.index(tok, col)
        sign = 1
        body = tok
        if tok.endswith("^-1"):
            sign = -1
            body = tok[:-3]
        elif "^" in tok:
            raise ParseError(f"bad exponent in token {tok!r} (only ^-1 is allowed)", line, col + 1)
        if len(body) < 2 or body[0] not in "abB" or not body[1:].isdigit():
            raise ParseError(f"malformed letter {tok!r}", line, col + 1)
        idx = int(body[1:])
        if idx < 1 or idx > genus:
            raise ParseError(f"letter index out of range in {tok!r} (genus {genus})", line, col + 1)
        if body[0] == "B":
            if ambient != HANDLEBODY:
                raise ParseError(f"primed letter {tok!r} in a surface word", line, col + 1)
            code = idx
        else:
            if ambient != SURFACE:
                raise ParseError(f"surface letter {tok!r} in a handlebody word", line, col + 1)
            code = idx if body[0] == "a" else genus + idx
        letters.append(sign * code)
        col += len(tok)
    return GroupWord(ambient, genus, letters)


# ---------------------------------------------------------------------------
# homomorphisms


class FreeGroupMap:
    """Endomorphism of a free group, stored as the tuple of generator images."""

    __slots__ = ("ambient", "genus", "images")

    def __init__(self, ambient: str, genus: int, images):
        _check_genus(genus)
        images = tuple(images)
        if len(images) != _rank(ambient, genus):
            raise ValueError(
                f"need {_rank(ambient, genus)} images for {ambient} genus {genus}, got {len(images)}"
            )
        for im in images:
            if not isinstance(im, GroupWord) or im.ambient != ambient or im.genus != genus:
                raise AmbientMismatch("image words must live in the same group")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("FreeGroupMap is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, FreeGroupMap)
            and self.ambient == other.ambient
            and self.genus == other.genus
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.ambient, self.genus, self.images))

    def image_of_code(self, code: int) -> GroupWord:
        im = self.images[abs(code) - 1]
        return im if code > 0 else ~im

    def __repr__(self):
        ims = ", ".join(format_word(im) for im in self.images)
        return f"FreeGroupMap(genus={self.genus}, ambient={self.ambient!r}, [{ims}])"


def identity_map(ambient: str, genus: int) -> FreeGroupMap:
    rank = _rank(ambient, genus)
    return FreeGroupMap(ambient, genus, [GroupWord(ambient, genus, (k,)) for k in range(1, rank + 1)])


def apply(f: FreeGroupMap, w: GroupWord) -> GroupWord:
    if f.ambient != w.ambient or f.genus != w.genus:
        raise AmbientMismatch("map and word live in different groups")
    # cancel at the seams while substituting; long compositions collapse
    # far below their unreduced length
    out: list[int] = []
    push = out.append
    pop = out.pop
    for x in w.letters:
        im = f.images[abs(x) - 1].letters
        if x < 0:
            im = tuple(-y for y in reversed(im))
        for y in im:
            if out and out[-1] == -y:
                pop()
            else:
                push(y)
    return GroupWord(w.ambient, w.genus, out)


def compose(f: FreeGroupMap, h: FreeGroupMap) -> FreeGroupMap:
    """The map sending w to f(h(w))."""
    if f.ambient != h.ambient or f.genus != h.genus:
        raise AmbientMismatch("cannot compose maps of different groups")
    return FreeGroupMap(f.ambient, f.genus, [apply(f, im) for im in h.images])


class MappingClassRep:
    """An automorphism certified by an explicitly supplied inverse.

    Construction checks that forward and inverse compose to the identity in
    both orders; there is no automatic inverter.  The cache slot memoises
    derived flags (handlebody membership, filtration depth) keyed by name.
    """

    __slots__ = ("forward", "inverse", "_cache")

    def __init__(self, forward: FreeGroupMap, inverse: FreeGroupMap):
        if forward.ambient != inverse.ambient or forward.genus != inverse.genus:
            raise AmbientMismatch("forward and inverse live in different groups")
        ident = identity_map(forward.ambient, forward.genus)
        if compose(forward, inverse) != ident or compose(inverse, forward) != ident:
            raise CertificationError("supplied inverse does not invert the forward map")
        object.__setattr__(self, "forward", forward)
        object.__setattr__(self, "inverse", inverse)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("MappingClassRep is immutable")

    @property
    def ambient(self) -> str:
        return self.forward.ambient

    @property
    def genus(self) -> int:
        return self.forward.genus

    def __eq__(self, other):
        return isinstance(other, MappingClassRep) and self.forward == other.forward

    def __hash__(self):
        return hash(self.forward)

    def __repr__(self):
        return f"MappingClassRep({self.forward!r})"


def mcr_identity(genus: int, ambient: str = SURFACE) -> MappingClassRep:
    ident = identity_map(ambient, genus)
    return MappingClassRep(ident, ident)


def _trusted_rep(forward: FreeGroupMap, inverse: FreeGroupMap) -> MappingClassRep:
    # for pairs that are inverse by construction (compositions and inverses
    # of certified reps); skips the quadratic certification pass
    obj = object.__new__(MappingClassRep)
    object.__setattr__(obj, "forward", forward)
    object.__setattr__(obj, "inverse", inverse)
    object.__setattr__(obj, "_cache", {})
    return obj


def mcr_compose(m: MappingClassRep, n: MappingClassRep) -> MappingClassRep:
    """The automorphism w -> m(n(w))."""
    return _trusted_rep(compose(m.forward, n.forward), compose(n.inverse, m.inverse))


def mcr_inverse(m: MappingClassRep) -> MappingClassRep:
    return _trusted_rep(m.inverse, m.forward)


def mcr_conjugate(m: MappingClassRep, by: MappingClassRep) -> MappingClassRep:
    """by m by^-1."""
    return mcr_compose(mcr_compose(by, m), mcr_inverse(by))


def mcr_commutator(m: MappingClassRep, n: MappingClassRep) -> MappingClassRep:
    return mcr_compose(mcr_compose(m, n), mcr_compose(mcr_inverse(m), mcr_inverse(n)))


def max_image_length(m: MappingClassRep) -> int:
    return max(len(im) for im in m.forward.images + m.inverse.images)


# ---------------------------------------------------------------------------
# handlebody projection and homology


def project_to_handlebody(w: GroupWord) -> GroupWord:
    """Delete the alphas and prime the betas; only defined on surface words."""
    if w.ambient != SURFACE:
        raise AmbientMismatch("projection expects a surface word")
    g = w.genus
    letters = []
    for x in w.letters:
        k = abs(x)
        if k > g:
            letters.append((k - g) if x > 0 else -(k - g))
    return GroupWord(HANDLEBODY, g, letters)


def abelianize_word(w: GroupWord) -> tuple[int, ...]:
    """Exponent vector, ordered a_1..a_g, b_1..b_g (or b'_1..b'_g)."""
    vec = [0] * _rank(w.ambient, w.genus)
    for x in w.letters:
        vec[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(vec)


def extends_to_handlebody(m: MappingClassRep) -> bool:
    """True when both the map and its inverse send every alpha into the kernel."""
    if m.ambient != SURFACE:
        raise AmbientMismatch("handlebody membership is about surface automorphisms")
    if "extends" not in m._cache:
        g = m.genus
        ok = all(
            project_to_handlebody(f.images[i]).is_identity()
            for f in (m.forward, m.inverse)
            for i in range(g)
        )
        m._cache["extends"] = ok
    return m._cache["extends"]


def induced_handlebody_map(m: MappingClassRep) -> FreeGroupMap:
    """The automorphism of the handlebody group induced on the beta classes."""
    from .errors import NotInHandlebodyGroup

    if not extends_to_handlebody(m):
        raise NotInHandlebodyGroup("automorphism does not preserve the handlebody kernel")
    g = m.genus
    return FreeGroupMap(
        HANDLEBODY, g, [project_to_handlebody(m.forward.images[g + i]) for i in range(g)]
    )


def symplectic_action(m: MappingClassRep) -> tuple[tuple[int, ...], ...]:
    """Matrix of the action on first homology; column j is the image of gamma_j."""
    if m.ambient != SURFACE:
        raise AmbientMismatch("symplectic action is about surface automorphisms")
    cols = [abelianize_word(im) for im in m.forward.images]
    n = len(cols)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def symplectic_form_matrix(genus: int) -> tuple[tuple[int, ...], ...]:
    """Gram matrix of the intersection form, omega(a_i, b_j) = delta_ij."""
    n = 2 * genus
    J = [[0] * n for _ in range(n)]
    for i in range(genus):
        J[i][genus + i] = 1
        J[genus + i][i] = -1
    return tuple(tuple(row) for row in J)


def preserves_symplectic_form(matrix, genus: int) -> bool:
    n = 2 * genus
    J = symplectic_form_matrix(genus)
    for i in range(n):
        for j in range(n):
            s = sum(matrix[k][i] * J[k][l] * matrix[l][j] for k in range(n) for l in range(n))
            if s != J[i][j]:
                return False
    return True


def boundary_word(genus: int) -> GroupWord:
    """[alpha_g, beta_g] ... [alpha_1, beta_1]; the class of the boundary curve.

    Descending handle order: the sample automorphisms shipped with the package
    fix this word exactly, so changing the order here breaks their contract.
    """
    z = identity_word(SURFACE, genus)
    for i in range(genus, 0, -1):
        z = z * commutator(alpha(i, genus), beta(i, genus))
    return z


def is_boundary_fixing(m: MappingClassRep) -> bool:
    z = boundary_word(m.genus)
    return apply(m.forward, z) == z


def random_reduced_word(rng, ambient: str, genus: int, length: int) -> GroupWord:
    """Uniform random reduced word of exactly the given length (0 gives identity)."""
    rank = _rank(ambient, genus)
    letters: list[int] = []
    while len(letters) < length:
        x = rng.choice([c for c in range(-rank, rank + 1) if c != 0])
        if letters and letters[-1] == -x:
            continue
        letters.append(x)
    return GroupWord(ambient, genus, letters)
