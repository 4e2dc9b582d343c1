"""Integral group rings of the surface and handlebody free groups, Fox
calculus, and exact Laurent-polynomial arithmetic for their abelianizations.

Ring elements keep exact integer coefficients throughout.  The noncommutative
ring ZF stores words of the free group as keys; the abelianized rings Z[H] and
Z[H'] are Laurent polynomial rings keyed by exponent vectors (same letter
order as the tensor alphabets: a_1..a_g, b_1..b_g for H, b'_1..b'_g for H').
"""

from __future__ import annotations

from .errors import AmbientMismatch, NotMonomial
from .freegroup import (
    HANDLEBODY,
    SURFACE,
    FreeGroupMap,
    GroupWord,
    abelianize_word,
    apply,
    identity_word,
    project_to_handlebody,
    word_from_codes,
    _rank,
)
from .tensorlie import (
    Alphabet,
    SymPoly,
    TensorPoly,
    handlebody_alphabet,
    magnus_of_word,
    surface_alphabet,
    tensor_zero,
)


def _merge(into: dict, key, coeff: int) -> None:
    c = into.get(key, 0) + coeff
    if c:
        into[key] = c
    else:
        into.pop(key, None)


class GroupRingElem:
    """Finite integer combination of free group words (noncommutative)."""

    __slots__ = ("ambient", "genus", "terms")

    def __init__(self, ambient: str, genus: int, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            if not isinstance(w, GroupWord):
                raise TypeError("group ring keys must be group words")
            if w.ambient != ambient or w.genus != genus:
                raise AmbientMismatch("word key does not match the ring")
            if c:
                _merge(clean, w, c)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "genus", genus)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElem is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElem)
            and self.ambient == other.ambient
            and self.genus == other.genus
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ambient, self.genus, frozenset(self.terms.items())))

    def _check(self, other: "GroupRingElem"):
        if self.ambient != other.ambient or self.genus != other.genus:
            raise AmbientMismatch("ring elements over different groups")

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _merge(out, w, c)
        return GroupRingElem(self.ambient, self.genus, out)

    def __sub__(self, other: "GroupRingElem") -> "GroupRingElem":
        return self + other.scale(-1)

    def __neg__(self) -> "GroupRingElem":
        return self.scale(-1)

    def scale(self, k: int) -> "GroupRingElem":
        return GroupRingElem(
            self.ambient, self.genus, {w: k * c for w, c in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _merge(out, w1 * w2, c1 * c2)
        return GroupRingElem(self.ambient, self.genus, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return NotImplemented

    def __repr__(self):
        return f"GroupRingElem({render_ring(self)!r})"


def ring_zero(ambient: str, genus: int) -> GroupRingElem:
    return GroupRingElem(ambient, genus, {})


def ring_one(ambient: str, genus: int) -> GroupRingElem:
    return GroupRingElem(ambient, genus, {identity_word(ambient, genus): 1})


def ring_word(w: GroupWord) -> GroupRingElem:
    return GroupRingElem(w.ambient, w.genus, {w: 1})


def bar(e: GroupRingElem) -> GroupRingElem:
    """The antiautomorphism sum c_w w  ->  sum c_w w^-1."""
    return GroupRingElem(e.ambient, e.genus, {~w: c for w, c in e.terms.items()})


def augmentation(e: GroupRingElem) -> int:
    return sum(e.terms.values())


def apply_ring(f: FreeGroupMap, e: GroupRingElem) -> GroupRingElem:
    """Extend a free group map linearly over the group ring."""
    out: dict = {}
    for w, c in e.terms.items():
        _merge(out, apply(f, w), c)
    return GroupRingElem(e.ambient, e.genus, out)


def project_ring(e: GroupRingElem) -> GroupRingElem:
    """Linear extension of the surface-to-handlebody projection."""
    if e.ambient != SURFACE:
        raise AmbientMismatch("projection starts from the surface ring")
    out: dict = {}
    for w, c in e.terms.items():
        _merge(out, project_to_handlebody(w), c)
    return GroupRingElem(HANDLEBODY, e.genus, out)


def render_ring(e: GroupRingElem) -> str:
    from .freegroup import format_word

    if e.is_zero():
        return "0"
    keys = sorted(e.terms, key=lambda w: (len(w.letters), w.letters))
    out = ""
    for w in keys:
        c = e.terms[w]
        body = format_word(w)
        mag = abs(c)
        if body == "1":
            piece = str(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{mag}*{body}"
        if not out:
            out = piece if c > 0 else f"-{piece}"
        else:
            out += f" + {piece}" if c > 0 else f" - {piece}"
    return out


# ---------------------------------------------------------------------------
# Fox calculus


def fox_derivative(u: GroupWord, j: int) -> GroupRingElem:
    """Free derivative of a word with respect to generator j (1-based code).

    Characterized by d(gamma_i) = delta_ij together with the product rule
    d(uv) = d(u) + u d(v); on a reduced word x_1..x_n this collapses to a sum
    of prefixes:  + x_1..x_{p-1} where x_p = gamma_j, - x_1..x_p where
    x_p = gamma_j^-1.
    """
    rank = _rank(u.ambient, u.genus)
    if not 1 <= j <= rank:
        raise ValueError(f"generator index {j} out of range 1..{rank}")
    out: dict = {}
    letters = u.letters
    for p, x in enumerate(letters):
        if x == j:
            _merge(out, word_from_codes(u.ambient, u.genus, letters[:p]), 1)
        elif x == -j:
            _merge(out, word_from_codes(u.ambient, u.genus, letters[: p + 1]), -1)
    return GroupRingElem(u.ambient, u.genus, out)


def fox_derivative_ring(e: GroupRingElem, j: int) -> GroupRingElem:
    out = ring_zero(e.ambient, e.genus)
    for w, c in e.terms.items():
        out = out + fox_derivative(w, j).scale(c)
    return out


def magnus_expand(e: GroupRingElem, truncate: int) -> TensorPoly:
    """Magnus expansion extended linearly over the group ring."""
    alphabet = (
        surface_alphabet(e.genus) if e.ambient == SURFACE else handlebody_alphabet(e.genus)
    )
    out = tensor_zero(alphabet)
    for w, c in e.terms.items():
        out = out + magnus_of_word(w, truncate).scale(c)
    return out


def _word_alphabet(w: GroupWord) -> Alphabet:
    return surface_alphabet(w.genus) if w.ambient == SURFACE else handlebody_alphabet(w.genus)


def _letter_series(alphabet: Alphabet, code: int, truncate: int) -> TensorPoly:
    i = abs(code) - 1
    if code > 0:
        terms = {(): 1}
        if truncate >= 1:
            terms[(i,)] = 1
    else:
        terms = {(i,) * e: (1 if e % 2 == 0 else -1) for e in range(truncate + 1)}
    return TensorPoly(alphabet, terms)


def fox_expand_column(w: GroupWord, truncate: int) -> list[TensorPoly]:
    """Magnus expansions of all the Fox derivatives of one word in a single pass.

    Returns [expand(dw/dgamma_1), ..., expand(dw/dgamma_rank)].  Equivalent to
    magnus_expand(fox_derivative(w, j), truncate) but linear in the word length
    (the literal route materializes every prefix).
    """
    alphabet = _word_alphabet(w)
    rank = alphabet.size
    acc = [tensor_zero(alphabet) for _ in range(rank)]
    prefix = TensorPoly(alphabet, {(): 1})
    for code in w.letters:
        nxt = prefix.concat(_letter_series(alphabet, code, truncate), truncate=truncate)
        if code > 0:
            acc[code - 1] = acc[code - 1] + prefix
        else:
            acc[-code - 1] = acc[-code - 1] - nxt
        prefix = nxt
    return acc


def fox_bar_expand_column(w: GroupWord, truncate: int) -> list[TensorPoly]:
    """Magnus expansions of bar(dw/dgamma_j) for all j, single pass.

    bar sends each prefix u to u^-1, so the running state is the expansion of
    the inverted prefix, updated by left multiplication.
    """
    alphabet = _word_alphabet(w)
    rank = alphabet.size
    acc = [tensor_zero(alphabet) for _ in range(rank)]
    inv_prefix = TensorPoly(alphabet, {(): 1})
    for code in w.letters:
        nxt = _letter_series(alphabet, -code, truncate).concat(inv_prefix, truncate=truncate)
        if code > 0:
            acc[code - 1] = acc[code - 1] + inv_prefix
        else:
            acc[-code - 1] = acc[-code - 1] - nxt
        inv_prefix = nxt
    return acc


def fox_abelian_column(w: GroupWord) -> list[LaurentElem]:
    """Abelianizations of all the Fox derivatives of one word, single pass."""
    alphabet = _word_alphabet(w)
    rank = alphabet.size
    acc: list[dict] = [{} for _ in range(rank)]
    vec = [0] * rank
    for code in w.letters:
        if code > 0:
            _merge(acc[code - 1], tuple(vec), 1)
            vec[code - 1] += 1
        else:
            vec[-code - 1] -= 1
            _merge(acc[-code - 1], tuple(vec), -1)
    return [LaurentElem(alphabet, d) for d in acc]


# ---------------------------------------------------------------------------
# Laurent polynomials (abelianized group rings)


class LaurentElem:
    """Element of Z[H] or Z[H']: Laurent polynomial keyed by exponent vectors."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != alphabet.size:
                raise ValueError(f"exponent vector {e} has wrong length")
            if c:
                _merge(clean, e, c)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentElem is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, LaurentElem)
            and self.alphabet == other.alphabet
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def _check(self, other: "LaurentElem"):
        if self.alphabet != other.alphabet:
            raise AmbientMismatch("Laurent elements over different alphabets")

    def __add__(self, other: "LaurentElem") -> "LaurentElem":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            _merge(out, e, c)
        return LaurentElem(self.alphabet, out)

    def __sub__(self, other: "LaurentElem") -> "LaurentElem":
        return self + other.scale(-1)

    def __neg__(self) -> "LaurentElem":
        return self.scale(-1)

    def scale(self, k: int) -> "LaurentElem":
        return LaurentElem(self.alphabet, {e: k * c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _merge(out, tuple(x + y for x, y in zip(e1, e2)), c1 * c2)
        return LaurentElem(self.alphabet, out)

    __rmul__ = __mul__

    def __repr__(self):
        return f"LaurentElem({render_laurent(self)!r})"


def laurent_zero(alphabet: Alphabet) -> LaurentElem:
    return LaurentElem(alphabet, {})


def laurent_one(alphabet: Alphabet) -> LaurentElem:
    return LaurentElem(alphabet, {(0,) * alphabet.size: 1})


def laurent_bar(e: LaurentElem) -> LaurentElem:
    """Abelianized antiautomorphism: negate all exponents."""
    return LaurentElem(
        e.alphabet, {tuple(-x for x in k): c for k, c in e.terms.items()}
    )


def abelianize_ring(e: GroupRingElem) -> LaurentElem:
    alphabet = (
        surface_alphabet(e.genus) if e.ambient == SURFACE else handlebody_alphabet(e.genus)
    )
    out: dict = {}
    for w, c in e.terms.items():
        _merge(out, abelianize_word(w), c)
    return LaurentElem(alphabet, out)


def as_group_element(e: LaurentElem) -> tuple[tuple[int, ...], int]:
    """Read a +/- single monomial with unit coefficient as (exponents, sign)."""
    if len(e.terms) != 1:
        raise NotMonomial(f"{render_laurent(e)} is not a single monomial")
    (expo, c), = e.terms.items()
    if c not in (1, -1):
        raise NotMonomial(f"coefficient {c} is not a unit")
    return expo, c


def laurent_expand(e: LaurentElem, truncate: int) -> SymPoly:
    """Substitute each group variable by 1 + x_i (inverses by the truncated
    geometric series) and drop degrees above truncate."""
    n = e.alphabet.size
    zero = (0,) * n

    def unit(i: int, power: int) -> dict:
        # (1 + x_i)^power truncated, power may be negative
        out = {zero: 1}
        step = 1 if power >= 0 else -1
        for _ in range(abs(power)):
            nxt: dict = {}
            for expo, c in out.items():
                if step == 1:
                    _merge(nxt, expo, c)
                    if sum(expo) < truncate:
                        up = list(expo)
                        up[i] += 1
                        _merge(nxt, tuple(up), c)
                else:
                    # multiply by (1+x_i)^-1 = 1 - x_i + x_i^2 - ...
                    sign = 1
                    up = list(expo)
                    for extra in range(truncate - sum(expo) + 1):
                        _merge(nxt, tuple(up), sign * c)
                        up[i] += 1
                        sign = -sign
            out = nxt
        return out

    total: dict = {}
    for expo, c in e.terms.items():
        term = {zero: c}
        for i, power in enumerate(expo):
            if not power:
                continue
            factor = unit(i, power)
            nxt: dict = {}
            for e1, c1 in term.items():
                for e2, c2 in factor.items():
                    if sum(e1) + sum(e2) > truncate:
                        continue
                    _merge(nxt, tuple(x + y for x, y in zip(e1, e2)), c1 * c2)
            term = nxt
        for k, v in term.items():
            _merge(total, k, v)
    return SymPoly(e.alphabet, total)


def render_laurent(e: LaurentElem) -> str:
    """Group-style rendering: monomials as products of named letters with powers."""
    if e.is_zero():
        return "0"
    bits = []
    for expo in sorted(e.terms, key=lambda t: (sum(map(abs, t)), t)):
        c = e.terms[expo]
        factors = []
        for i, p in enumerate(expo):
            if p == 0:
                continue
            name = e.alphabet.letter_name(i)
            factors.append(name if p == 1 else f"{name}^{p}")
        bits.append((c, "*".join(factors) if factors else "1"))
    out = ""
    for c, body in bits:
        mag = abs(c)
        if body == "1":
            piece = str(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{mag}*{body}"
        if not out:
            out = piece if c > 0 else f"-{piece}"
        else:
            out += f" + {piece}" if c > 0 else f" - {piece}"
    return out


def parse_laurent(text: str, alphabet: Alphabet) -> LaurentElem:
    """Inverse of render_laurent: sums of signed monomials in the group letters."""
    from .errors import ParseError
    from .tensorlie import _split_terms

    text = text.strip()
    if text == "0":
        return laurent_zero(alphabet)
    if not text:
        raise ParseError("empty Laurent expression")
    total: dict = {}
    n = alphabet.size
    for sign, chunk in _split_terms(text):
        coeff = sign
        expo = [0] * n
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise ParseError(f"empty factor in {text!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            name, _, power = factor.partition("^")
            i = alphabet.letter_by_name(name)
            if power:
                stripped = power.lstrip("-")
                if not stripped.isdigit() or not stripped:
                    raise ParseError(f"bad exponent in {factor!r}")
                expo[i] += int(power)
            else:
                expo[i] += 1
        c = total.get(tuple(expo), 0) + coeff
        if c:
            total[tuple(expo)] = c
        else:
            total.pop(tuple(expo), None)
    return LaurentElem(alphabet, total)


# ---------------------------------------------------------------------------
# matrices


def mat_mul(A, B):
    """Product of matrices over any of the ring classes here (noncommutative safe:
    entries multiply in the order A entry * B entry)."""
    rows, inner, cols = len(A), len(B), len(B[0])
    if len(A[0]) != inner:
        raise ValueError("matrix shapes do not match")
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = None
            for k in range(inner):
                term = A[i][k] * B[k][j]
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return tuple(tuple(r) for r in out)


def mat_apply(f: FreeGroupMap, A):
    """Apply a free group map to every entry of a group-ring matrix."""
    return tuple(tuple(apply_ring(f, entry) for entry in row) for row in A)


def mat_identity_ring(ambient: str, genus: int, n: int):
    one, zero = ring_one(ambient, genus), ring_zero(ambient, genus)
    return tuple(
        tuple(one if i == j else zero for j in range(n)) for i in range(n)
    )


def mat_equal(A, B) -> bool:
    return len(A) == len(B) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(A, B)
    )


def laurent_det(A) -> LaurentElem:
    """Exact determinant over a Laurent ring by minor expansion.

    Dynamic programming over column subsets keeps it at n * 2^n ring
    multiplications; the matrices here are at most 2 * genus <= 8 wide.
    """
    n = len(A)
    if n == 0:
        raise ValueError("empty matrix")
    for row in A:
        if len(row) != n:
            raise ValueError("determinant needs a square matrix")
    alphabet = A[0][0].alphabet
    # minors[mask] = det of rows 0..popcount(mask)-1 against column set mask
    minors = {0: laurent_one(alphabet)}
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        i = len(cols) - 1
        acc = laurent_zero(alphabet)
        sign = -1 if i % 2 else 1  # (-1)^(i+pos) expanding along row i
        for pos, j in enumerate(cols):
            entry = A[i][j]
            if not entry.is_zero():
                term = entry * minors[mask ^ (1 << j)]
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        minors[mask] = acc
    return minors[(1 << n) - 1]
