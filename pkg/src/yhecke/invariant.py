"""The 2-variable link invariant built from the Markov trace.

For an E-system solution with zeta = 1/|S|, the rescaling factor

    lambda = (z - (1-u) zeta) / (u z)

enters through a formal square root: sqrt(lambda) is never given a branch,
only (sqrt(lambda))^2 = lambda is used.  An ``InvariantValue`` is therefore
a parity bit h together with a rational-function body, denoting
body * sqrt(lambda)^h; whole lambda factors are folded into the body, so
equality of invariants is structural equality of (h, body).

On the closure of an n-strand braid with exponent sum eps the invariant is

    D^(n-1) * sqrt(lambda)^eps * (trace of the braid image),

where D = 1 / (sqrt(lambda) z) is the normalization making the value of the
unknot equal to 1.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

from .braid import BraidWord, exponent_sum
from .esystem import ESolution, solution_from_subset, zeta_value
from .exactnum import RatFunc
from .trace import trace_of_braid


@dataclass(frozen=True)
class InvariantValue:
    """body * sqrt(lambda)^half with half in {0, 1}; equality is structural."""

    order: int
    half: int
    body: RatFunc

    def __post_init__(self):
        assert self.half in (0, 1)
        assert self.body.order == self.order
        assert not (self.body.is_zero() and self.half == 1)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def __str__(self) -> str:
        return f"sqrtLambda^{self.half} * (({self.body.num}) / ({self.body.den}))"


def lambda_param(d: int, sol: ESolution) -> RatFunc:
    """The rescaling factor (z - (1-u) zeta) / (u z) with zeta = 1/|S|."""
    zeta = zeta_value(sol)
    u = RatFunc.u_var(d)
    z = RatFunc.z_var(d)
    return (z - (1 - u) * zeta) / (u * z)


def _make_value(d: int, half_power: int, body: RatFunc, lam: RatFunc) -> InvariantValue:
    """Canonicalize body * sqrt(lambda)^half_power by folding whole lambdas."""
    if body.is_zero():
        return InvariantValue(d, 0, body)
    h = half_power % 2
    fold = (half_power - h) // 2
    if fold:
        body = body * lam**fold
    return InvariantValue(d, h, body)


def value_scale(v: InvariantValue, f: RatFunc) -> InvariantValue:
    """Multiply by a rational function (no sqrt-lambda content)."""
    body = v.body * f
    if body.is_zero():
        return InvariantValue(v.order, 0, body)
    return InvariantValue(v.order, v.half, body)


def value_scale_half(v: InvariantValue, k: int, lam: RatFunc) -> InvariantValue:
    """Multiply by sqrt(lambda)^k, re-canonicalizing the parity bit."""
    return _make_value(v.order, v.half + k, v.body, lam)


def value_add(a: InvariantValue, b: InvariantValue) -> InvariantValue:
    if a.order != b.order:
        raise ValueError("cannot add invariant values of different orders")
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.half != b.half:
        raise ValueError("cannot add invariant values of different sqrt-lambda parity")
    body = a.body + b.body
    if body.is_zero():
        return InvariantValue(a.order, 0, body)
    return InvariantValue(a.order, a.half, body)


def value_sub(a: InvariantValue, b: InvariantValue) -> InvariantValue:
    return value_add(a, value_scale(b, RatFunc.from_scalar(b.order, -1)))


def delta_invariant(d: int, sol: ESolution, b: BraidWord) -> InvariantValue:
    """The invariant of the closure of a braid word.

    >>> from .braid import parse_braid
    >>> sol = solution_from_subset(1, {0})
    >>> delta_invariant(1, sol, parse_braid("1:")).half
    0
    """
    traced = trace_of_braid(d, b, sol)
    assert isinstance(traced, RatFunc)
    lam = lambda_param(d, sol)
    n = b.strands
    eps = exponent_sum(b)
    z = RatFunc.z_var(d)
    body = traced / z ** (n - 1)
    return _make_value(d, eps - (n - 1), body, lam)


def skein_check(d: int, sol: ESolution, b: BraidWord, i: int) -> bool:
    """Verify the cubic skein relation at the i-th letter of b (0-based):

        sqrt(lambda) D(L-) = (1/(lambda u)) D(L++) + (1/sqrt(lambda)) D(L+)
                              - (1/u) D(L0)

    where L++, L+, L0, L- replace the letter with exponents +2, +1, 0, -1.
    """
    if not 0 <= i < len(b.letters):
        raise ValueError(f"letter index {i} out of range 0..{len(b.letters) - 1}")
    gen = abs(b.letters[i])

    def variant(exponent: int) -> BraidWord:
        if exponent >= 0:
            middle = (gen,) * exponent
        else:
            middle = (-gen,) * (-exponent)
        return BraidWord(b.strands, b.letters[:i] + middle + b.letters[i + 1 :])

    lam = lambda_param(d, sol)
    u = RatFunc.u_var(d)
    v_pp = delta_invariant(d, sol, variant(2))
    v_p = delta_invariant(d, sol, variant(1))
    v_0 = delta_invariant(d, sol, variant(0))
    v_m = delta_invariant(d, sol, variant(-1))
    lhs = value_scale_half(v_m, 1, lam)
    rhs = value_add(
        value_scale(v_pp, 1 / (lam * u)),
        value_sub(
            value_scale_half(v_p, -1, lam),
            value_scale(v_0, 1 / u),
        ),
    )
    return lhs == rhs


def homflypt_specialize(b: BraidWord) -> InvariantValue:
    """The d = 1 specialization: the idempotent collapses to 1, the quadratic
    relation becomes g^2 = u - (u-1)g, and the invariant is the 2-variable
    (HOMFLYPT) polynomial of the closure in the (u, z) normalization."""
    return delta_invariant(1, solution_from_subset(1, {0}), b)


def mirror_value(d: int, sol: ESolution, v: InvariantValue) -> InvariantValue:
    """The involution matching crossing-sign reversal: u -> 1/u, z -> lambda z
    (which sends lambda to 1/lambda and sqrt(lambda)^h to sqrt(lambda)^h
    lambda^-h).  The mirror image of a closed braid has this transformed
    invariant."""
    lam = lambda_param(d, sol)
    u_new = 1 / RatFunc.u_var(d)
    z_new = lam * RatFunc.z_var(d)
    body = v.body.substitute(u_new, z_new)
    if v.half:
        body = body * lam**-1
    if body.is_zero():
        return InvariantValue(d, 0, body)
    return InvariantValue(d, v.half, body)


def evaluate_numeric(v: InvariantValue, sol: ESolution, u: complex, z: complex) -> complex:
    """Approximate complex value at a numeric point, taking the principal
    square root for the formal sqrt(lambda).  Display only: equality
    decisions are always exact."""
    lam = lambda_param(v.order, sol).eval_complex(u, z)
    out = v.body.eval_complex(u, z)
    if v.half:
        out *= cmath.sqrt(lam)
    return out
