"""The Markov trace on the tower of algebras Y_{d,n}.

The trace is the unique linear map with tr(1) = 1, tr(ab) = tr(ba),
tr(a g_n) = z tr(a) and tr(a t_{n+1}^m) = x_m tr(a) for a in Y_{d,n};
its values live in ``TracePolynomial`` (z and x_1..x_{d-1} over Laurent-u).

Evaluation works basis word by basis word, reducing the strand count:

- if the permutation fixes the last strand, strip it and multiply by x_m
  where m is that strand's framing (x_0 = 1);
- otherwise split off the unique coset factor g_{n-1} g_{n-2} ... g_k of the
  permutation, push the last framing through it (t_n g_{n-1} = g_{n-1}
  t_{n-1}), and use cyclicity: tr(x g_{n-1} y) = z tr(y x) with x, y one
  strand down.

Uniqueness of the trace is certified by the property suite (cyclicity and
the two multiplicative rules on random elements) rather than assumed.
"""

from __future__ import annotations

from functools import lru_cache

from .braid import BraidWord
from .exactnum import RatFunc, TracePolynomial, trace_poly_substitute
from .yokonuma import (
    AlgebraElement,
    BasisWord,
    compose,
    multiply,
    represent_braid,
)


@lru_cache(maxsize=None)
def _trace_word(word: BasisWord) -> TracePolynomial:
    d, n = word.d, word.n
    fr, perm = word.framings, word.perm
    if n == 1:
        return TracePolynomial.x_var(d, fr[0])
    if perm[n - 1] == n - 1:
        sub = BasisWord(d, n - 1, fr[: n - 1], perm[: n - 1])
        return TracePolynomial.x_var(d, fr[n - 1]) * _trace_word(sub)
    # perm moves the last strand: perm = u . c_k with u fixing it and
    # c_k the cycle sending k to the last position (0-based k).
    k = perm.index(n - 1)
    c_inv = tuple(
        j if j < k else (k if j == n - 1 else j + 1) for j in range(n)
    )
    u_full = compose(perm, c_inv)
    assert u_full[n - 1] == n - 1
    x_word = BasisWord(d, n - 1, fr[: n - 1], u_full[: n - 1])
    # y = t_{n-1}^{a_n} g_{n-2} ... g_k, entirely one strand down.
    y_perm = tuple(
        j if j < k else (n - 2 if j == k else j - 1) for j in range(n - 1)
    )
    y_fr = [0] * (n - 1)
    y_fr[n - 2] = fr[n - 1]
    y_word = BasisWord(d, n - 1, tuple(y_fr), y_perm)
    prod = multiply(
        AlgebraElement.from_word(y_word), AlgebraElement.from_word(x_word)
    )
    return TracePolynomial.z_var(d) * markov_trace(prod)


def markov_trace(a: AlgebraElement) -> TracePolynomial:
    """The trace of an algebra element, extended linearly over basis words.

    >>> from .yokonuma import AlgebraElement, generator
    >>> str(markov_trace(AlgebraElement.one(3, 2)))
    '1'
    >>> str(markov_trace(generator(3, 2, 1)))
    'z'
    """
    acc: dict = {}
    for word, coeff in a.terms.items():
        for mono, c in _trace_word(word).terms:
            val = c * coeff
            prev = acc.get(mono)
            acc[mono] = val if prev is None else prev + val
    return TracePolynomial.from_dict(a.d, acc)


def trace_of_braid(d: int, b: BraidWord, sol=None) -> "TracePolynomial | RatFunc":
    """Trace of the image of a braid in Y_{d,n}; if an E-system solution is
    given, its exact values are substituted for the x_m."""
    poly = markov_trace(represent_braid(d, b))
    if sol is None:
        return poly
    return trace_poly_substitute(poly, sol)
