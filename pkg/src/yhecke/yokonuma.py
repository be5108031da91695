"""The algebra engine for Y_{d,n}(u).

Basis and conventions
---------------------
Elements are linear combinations of canonical basis words

    t_1^{a_1} ... t_n^{a_n} g_w

with framing exponents a_j in 0..d-1 (the t-monomial always on the left)
and w a permutation of the strands.  g_w means the product of generators
along the fixed reduced word produced by ``canonical_reduced_word``; the
braid relations make g_w independent of the choice, so a basis word is
exactly a (framings, permutation) pair.

Permutations are 0-based one-line tuples; composition is (p * q)(j) =
p(q(j)), so in a product of generators the rightmost factor acts first.
Generator indices in the public API are 1-based (g_1 .. g_{n-1}),
matching the braid letters.

Multiplication rewrites products of basis words using the defining
relations: t_j g_i = g_i t_{s_i(j)}, the commuting/braid relations, and
the quadratic relation

    g_i^2 = 1 + (u-1) e_i - (u-1) e_i g_i,
    e_i   = (1/d) sum_m t_i^m t_{i+1}^{-m},

applied when a right multiplication by g_i shortens the permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .braid import BraidWord
from .exactnum import (
    LaurentU,
    Scalar,
    laurent_u_minus_one,
    laurent_uinv_minus_one,
)

# ---------------------------------------------------------------------------
# Permutations (0-based one-line tuples).
# ---------------------------------------------------------------------------

def identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def is_permutation(p: tuple[int, ...]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p * q)(j) = p(q(j)): q acts first."""
    return tuple(p[q[j]] for j in range(len(p)))


def inverse_perm(p: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for j, pj in enumerate(p):
        inv[pj] = j
    return tuple(inv)


def perm_length(p: tuple[int, ...]) -> int:
    """Number of inversions."""
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def transposition_perm(n: int, i: int) -> tuple[int, ...]:
    """The simple transposition s_i (1-based i) as a permutation of n strands."""
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _swap_positions(p: tuple[int, ...], pos: int) -> tuple[int, ...]:
    q = list(p)
    q[pos], q[pos + 1] = q[pos + 1], q[pos]
    return tuple(q)


@lru_cache(maxsize=None)
def canonical_reduced_word(perm: tuple[int, ...]) -> tuple[int, ...]:
    """The fixed reduced word for a permutation, as 1-based generator indices.

    Repeatedly applies s_i on the right for the smallest descent i, records
    the indices, and reverses; the length equals the inversion count.

    >>> canonical_reduced_word((0, 1, 2))
    ()
    >>> canonical_reduced_word((1, 0))
    (1,)
    >>> canonical_reduced_word((2, 1, 0))
    (1, 2, 1)
    """
    p = list(perm)
    word = []
    n = len(p)
    i = 0
    while i < n - 1:
        if p[i] > p[i + 1]:
            word.append(i + 1)
            p[i], p[i + 1] = p[i + 1], p[i]
            i = max(i - 1, 0)
        else:
            i += 1
    # Bubble passes with backtracking always pick the smallest descent first.
    assert all(p[j] == j for j in range(n))
    return tuple(reversed(word))


# ---------------------------------------------------------------------------
# Basis words and algebra elements.
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BasisWord:
    """Canonical basis word t^a g_w of Y_{d,n}: framings on the left of g_w."""

    d: int
    n: int
    framings: tuple[int, ...]
    perm: tuple[int, ...]

    def __post_init__(self):
        assert self.d >= 1 and self.n >= 1
        assert len(self.framings) == self.n
        assert all(0 <= a < self.d for a in self.framings)
        assert len(self.perm) == self.n
        # words are dict keys in every hot loop; cache the hash once
        object.__setattr__(
            self, "_hash", hash((self.d, self.n, self.framings, self.perm))
        )

    def __eq__(self, other):
        if not isinstance(other, BasisWord):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.d == other.d
            and self.n == other.n
            and self.framings == other.framings
            and self.perm == other.perm
        )

    def __hash__(self):
        return self._hash

    def __str__(self) -> str:
        factors = []
        for j, a in enumerate(self.framings):
            if a:
                factors.append(f"t{j + 1}" if a == 1 else f"t{j + 1}^{a}")
        factors.extend(f"g{i}" for i in canonical_reduced_word(self.perm))
        return "*".join(factors) if factors else "1"


def _sort_key(word: BasisWord):
    return (word.framings, word.perm)


class AlgebraElement:
    """A finite linear combination of basis words with LaurentU coefficients.

    Instances are immutable by convention: no method mutates ``terms`` after
    construction, so elements are safe to share, hash-free, and cacheable.
    """

    __slots__ = ("d", "n", "terms")

    def __init__(self, d: int, n: int, terms: Mapping[BasisWord, LaurentU]):
        self.d = d
        self.n = n
        self.terms = {w: c for w, c in terms.items() if not c.is_zero()}
        for w in self.terms:
            assert w.d == d and w.n == n

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(d: int, n: int) -> AlgebraElement:
        return AlgebraElement(d, n, {})

    @staticmethod
    def one(d: int, n: int) -> AlgebraElement:
        return AlgebraElement.from_word(
            BasisWord(d, n, (0,) * n, identity_perm(n))
        )

    @staticmethod
    def from_word(word: BasisWord, coeff: Scalar | LaurentU = 1) -> AlgebraElement:
        lu = coeff if isinstance(coeff, LaurentU) else LaurentU.from_scalar(coeff)
        return AlgebraElement(word.d, word.n, {word: lu})

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: AlgebraElement):
        if (self.d, self.n) != (other.d, other.n):
            raise ValueError(
                f"algebra mismatch: Y_({self.d},{self.n}) vs Y_({other.d},{other.n})"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.d, self.n) == (other.d, other.n) and self.terms == other.terms

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check_compatible(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, LaurentU.zero()) + c
        return AlgebraElement(self.d, self.n, acc)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.d, self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, LaurentU)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentU)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> AlgebraElement:
        if k < 0:
            raise ValueError("negative powers of a general element are not defined")
        acc = AlgebraElement.one(self.d, self.n)
        for _ in range(k):
            acc = multiply(acc, self)
        return acc

    def scale(self, c: Scalar | LaurentU) -> AlgebraElement:
        lu = c if isinstance(c, LaurentU) else LaurentU.from_scalar(c)
        return AlgebraElement(self.d, self.n, {w: co * lu for w, co in self.terms.items()})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=_sort_key):
            c = self.terms[w]
            cs = str(c)
            ws = str(w)
            if ws == "1":
                parts.append(cs if len(c.terms) == 1 and not cs.startswith("-") else f"({cs})")
            elif cs == "1":
                parts.append(ws)
            elif len(c.terms) == 1 and not cs.startswith("-"):
                parts.append(f"{cs}*{ws}")
            else:
                parts.append(f"({cs})*{ws}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<Y_({self.d},{self.n}) element: {self}>"


# ---------------------------------------------------------------------------
# Multiplication by rewriting.
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _word_times_g(word: BasisWord, i: int) -> tuple[tuple[BasisWord, LaurentU], ...]:
    """Right multiplication of a basis word by g_i (1-based), rewritten into
    canonical basis words.  Cached: products recur constantly."""
    d, n = word.d, word.n
    p = i - 1
    v = word.perm
    if v[p] < v[p + 1]:
        # length increases: t^a g_v g_i = t^a g_{v s_i}
        return ((BasisWord(d, n, word.framings, _swap_positions(v, p)), LaurentU.from_scalar(1)),)
    # length decreases: v = v' s_i with v' shorter, and
    # g_v g_i = g_{v'} (1 + (u-1) e_i - (u-1) e_i g_i)
    vp = _swap_positions(v, p)
    fr = word.framings
    acc: dict[BasisWord, LaurentU] = {}

    def add(w: BasisWord, c: LaurentU):
        acc[w] = acc.get(w, LaurentU.zero()) + c

    add(BasisWord(d, n, fr, vp), LaurentU.from_scalar(1))
    pos_a, pos_b = vp[p], vp[p + 1]
    plus = laurent_u_minus_one() * Fraction(1, d)
    minus = -plus
    for m in range(d):
        fr2 = list(fr)
        fr2[pos_a] = (fr2[pos_a] + m) % d
        fr2[pos_b] = (fr2[pos_b] - m) % d
        fr2t = tuple(fr2)
        add(BasisWord(d, n, fr2t, vp), plus)
        add(BasisWord(d, n, fr2t, v), minus)
    return tuple((w, c) for w, c in acc.items() if not c.is_zero())


def _terms_times_g(d: int, n: int, terms: dict[BasisWord, LaurentU], i: int) -> dict[BasisWord, LaurentU]:
    out: dict[BasisWord, LaurentU] = {}
    for w, c in terms.items():
        for w2, c2 in _word_times_g(w, i):
            prev = out.get(w2)
            val = c * c2
            out[w2] = val if prev is None else prev + val
    return {w: c for w, c in out.items() if not c.is_zero()}


def _shift_framings(fr: tuple[int, ...], perm: tuple[int, ...],
                    add: tuple[int, ...], d: int) -> tuple[int, ...]:
    """Framings of (t^fr g_perm) * t^add: exponent add_j lands at perm(j)."""
    out = list(fr)
    for j, a in enumerate(add):
        if a:
            k = perm[j]
            out[k] = (out[k] + a) % d
    return tuple(out)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """The product in Y_{d,n}, collected in canonical basis words."""
    a._check_compatible(b)
    d, n = a.d, a.n
    out: dict[BasisWord, LaurentU] = {}
    for w2, c2 in b.terms.items():
        # a * (t^{a2} g_{w2}): first absorb the t-monomial, then the g-word.
        cur: dict[BasisWord, LaurentU] = {}
        for w1, c1 in a.terms.items():
            fr = _shift_framings(w1.framings, w1.perm, w2.framings, d)
            key = BasisWord(d, n, fr, w1.perm)
            prev = cur.get(key)
            cur[key] = c1 if prev is None else prev + c1
        for i in canonical_reduced_word(w2.perm):
            cur = _terms_times_g(d, n, cur, i)
        for w, c in cur.items():
            val = c * c2
            prev = out.get(w)
            out[w] = val if prev is None else prev + val
    return AlgebraElement(d, n, out)


# ---------------------------------------------------------------------------
# Distinguished elements.
# ---------------------------------------------------------------------------

def _check_gen_index(n: int, i: int):
    if not 1 <= i <= n - 1:
        raise ValueError(f"generator index {i} out of range 1..{n - 1}")


def generator(d: int, n: int, i: int) -> AlgebraElement:
    """The generator g_i of Y_{d,n} (1-based index)."""
    _check_gen_index(n, i)
    return AlgebraElement.from_word(
        BasisWord(d, n, (0,) * n, transposition_perm(n, i))
    )


def framing_generator(d: int, n: int, j: int, m: int = 1) -> AlgebraElement:
    """The framing element t_j^m (1-based strand j)."""
    if not 1 <= j <= n:
        raise ValueError(f"strand index {j} out of range 1..{n}")
    fr = [0] * n
    fr[j - 1] = m % d
    return AlgebraElement.from_word(BasisWord(d, n, tuple(fr), identity_perm(n)))


def idempotent_e(d: int, n: int, i: int) -> AlgebraElement:
    """The idempotent e_i = (1/d) sum_{m} t_i^m t_{i+1}^{-m}."""
    _check_gen_index(n, i)
    coeff = LaurentU.from_scalar(Fraction(1, d))
    terms: dict[BasisWord, LaurentU] = {}
    ident = identity_perm(n)
    for m in range(d):
        fr = [0] * n
        fr[i - 1] = m % d
        fr[i] = (-m) % d
        terms[BasisWord(d, n, tuple(fr), ident)] = coeff
    return AlgebraElement(d, n, terms)


def generator_inverse(d: int, n: int, i: int) -> AlgebraElement:
    """g_i^-1 = g_i - (u^-1 - 1) e_i + (u^-1 - 1) e_i g_i."""
    _check_gen_index(n, i)
    g = generator(d, n, i)
    e = idempotent_e(d, n, i)
    w = laurent_uinv_minus_one()
    return g - e.scale(w) + multiply(e, g).scale(w)


def power_formula(d: int, n: int, i: int, m: int) -> AlgebraElement:
    """Closed form for g_i^m: an even power is 1 + c*e_i - c*e_i*g_i and an
    odd power is g_i - c*e_i + c*e_i*g_i, where c is a geometric sum in u
    (in u^-1 for negative m)."""
    _check_gen_index(n, i)
    one = AlgebraElement.one(d, n)
    g = generator(d, n, i)
    e = idempotent_e(d, n, i)
    eg = multiply(e, g)
    if m == 0:
        return one
    if m > 0:
        k, odd = divmod(m, 2)
        geom = LaurentU.from_dict({2 * l: 1 for l in range(k)})
        if odd:
            beta = LaurentU.u(1) * laurent_u_minus_one() * geom
            return g - e.scale(beta) + eg.scale(beta)
        alpha = laurent_u_minus_one() * geom
        return one + e.scale(alpha) - eg.scale(alpha)
    # m < 0: m = -2k even, or m = -2k+1 odd with k = (1-m)/2
    if m % 2 == 0:
        k = -m // 2
        geom = LaurentU.from_dict({-2 * l: 1 for l in range(k)})
        alpha = LaurentU.u(-1) * laurent_uinv_minus_one() * geom
        return one + e.scale(alpha) - eg.scale(alpha)
    k = (1 - m) // 2
    geom = LaurentU.from_dict({-2 * l: 1 for l in range(k)})
    beta = laurent_uinv_minus_one() * geom
    return g - e.scale(beta) + eg.scale(beta)


@lru_cache(maxsize=None)
def _letter_image(d: int, n: int, letter: int) -> AlgebraElement:
    i = abs(letter)
    return generator(d, n, i) if letter > 0 else generator_inverse(d, n, i)


@lru_cache(maxsize=None)
def _word_times_letter(word: BasisWord, letter: int) -> tuple[tuple[BasisWord, LaurentU], ...]:
    prod = multiply(
        AlgebraElement.from_word(word), _letter_image(word.d, word.n, letter)
    )
    return tuple(prod.terms.items())


def represent_braid(d: int, b: BraidWord) -> AlgebraElement:
    """Image of a braid word in Y_{d,n}: each positive letter maps to g_i,
    each negative letter to the inverse formula, multiplied left to right."""
    n = b.strands
    cur: dict[BasisWord, LaurentU] = {
        BasisWord(d, n, (0,) * n, identity_perm(n)): LaurentU.from_scalar(1)
    }
    for k in b.letters:
        nxt: dict[BasisWord, LaurentU] = {}
        for w, c in cur.items():
            for w2, c2 in _word_times_letter(w, k):
                val = c * c2
                prev = nxt.get(w2)
                nxt[w2] = val if prev is None else prev + val
        cur = {w: c for w, c in nxt.items() if not c.is_zero()}
    return AlgebraElement(d, n, cur)


def embed(a: AlgebraElement, n_new: int) -> AlgebraElement:
    """The natural inclusion Y_{d,n} into Y_{d,n_new} on trivial extra strands."""
    if n_new < a.n:
        raise ValueError(f"cannot embed Y_(d,{a.n}) into the smaller Y_(d,{n_new})")
    pad = n_new - a.n
    terms = {
        BasisWord(
            a.d,
            n_new,
            w.framings + (0,) * pad,
            w.perm + tuple(range(a.n, n_new)),
        ): c
        for w, c in a.terms.items()
    }
    return AlgebraElement(a.d, n_new, terms)
