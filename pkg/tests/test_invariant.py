"""The link invariant: normalization identities, closed-form values,
Markov-move invariance, the cubic skein relation, and the d = 1
2-variable (HOMFLYPT) specialization."""

from __future__ import annotations

import random

import pytest

from conftest import random_braid, random_conjugator
from yhecke.braid import BraidWord, markov_conjugate, markov_stabilize, parse_braid
from yhecke.esystem import solution_from_subset, zeta_value
from yhecke.exactnum import RatFunc
from yhecke.invariant import (
    InvariantValue,
    delta_invariant,
    evaluate_numeric,
    homflypt_specialize,
    lambda_param,
    mirror_value,
    skein_check,
    value_add,
    value_scale,
    value_scale_half,
    value_sub,
)

PAIRS = [(1, {0}), (2, {0}), (2, {0, 1}), (3, {0, 1, 2}), (4, {0, 2})]


def uz(d: int):
    return RatFunc.u_var(d), RatFunc.z_var(d)


@pytest.mark.parametrize("d,subset", PAIRS)
def test_lambda_identities(d, subset):
    sol = solution_from_subset(d, subset)
    lam = lambda_param(d, sol)
    u, z = uz(d)
    zeta = zeta_value(sol)
    assert lam == (z - (1 - u) * zeta) / (u * z)
    # 1 - lambda u = z^-1 zeta (1 - u)
    assert 1 - lam * u == (1 / z) * zeta * (1 - u)


@pytest.mark.parametrize("d,subset", PAIRS)
def test_normalization_times_sqrt_lambda_times_z_is_one(d, subset):
    sol = solution_from_subset(d, subset)
    lam = lambda_param(d, sol)
    u, z = uz(d)
    zeta = RatFunc.from_scalar(d, zeta_value(sol))
    # D = (1 - lambda u) / (sqrt(lambda) (1 - u) zeta), assembled literally.
    D = value_scale_half(
        InvariantValue(d, 0, (1 - lam * u) / ((1 - u) * zeta)), -1, lam
    )
    prod = value_scale(value_scale_half(D, 1, lam), z)
    assert prod == InvariantValue(d, 0, RatFunc.from_scalar(d, 1))


@pytest.mark.parametrize("d,subset", PAIRS)
def test_unknot_presentations_evaluate_to_one(d, subset):
    sol = solution_from_subset(d, subset)
    one = InvariantValue(d, 0, RatFunc.from_scalar(d, 1))
    assert delta_invariant(d, sol, BraidWord(1, ())) == one
    # stabilized presentations of the unknot
    assert delta_invariant(d, sol, parse_braid("1")) == one
    assert delta_invariant(d, sol, parse_braid("-1")) == one
    assert delta_invariant(d, sol, parse_braid("1 2")) == one
    assert delta_invariant(d, sol, parse_braid("1 -2")) == one


@pytest.mark.parametrize("d,subset", PAIRS)
def test_right_trefoil_formula(d, subset):
    sol = solution_from_subset(d, subset)
    lam = lambda_param(d, sol)
    u, z = uz(d)
    zeta = zeta_value(sol)
    got = delta_invariant(d, sol, parse_braid("1 1 1"))
    body = (lam / z) * ((u * u - u + 1) * z - (u * u - u) * zeta)
    assert got == InvariantValue(d, 0, body)


@pytest.mark.parametrize("d,subset", PAIRS)
def test_left_trefoil_formula(d, subset):
    sol = solution_from_subset(d, subset)
    lam = lambda_param(d, sol)
    u, z = uz(d)
    zeta = zeta_value(sol)
    got = delta_invariant(d, sol, parse_braid("-1 -1 -1"))
    ui = 1 / u
    bracket = (ui**3 - ui**2 + ui) * z - (ui**3 - ui**2 + ui - 1) * zeta
    # D (sqrt lambda)^-3 = lambda^-2 z^-1 at parity 0
    body = lam**-2 / z * bracket
    assert got == InvariantValue(d, 0, body)


@pytest.mark.parametrize("d,subset", PAIRS)
def test_hopf_link_derived_value(d, subset):
    """z^-1 sqrt(lambda) (1 + (u-1)(zeta - z)): the coefficient u-1 follows
    from the quadratic relation and the trace rules."""
    sol = solution_from_subset(d, subset)
    u, z = uz(d)
    zeta = RatFunc.from_scalar(d, zeta_value(sol))
    got = delta_invariant(d, sol, parse_braid("1 1"))
    body = (1 / z) * (1 + (u - 1) * (zeta - z))
    assert got == InvariantValue(d, 1, body)


@pytest.mark.parametrize("d,subset", PAIRS)
def test_markov_invariance_random(d, subset):
    sol = solution_from_subset(d, subset)
    rng = random.Random(d * 100 + len(subset))
    for _ in range(6):
        b = random_braid(rng, n_max=3, len_max=6)
        w = random_conjugator(rng, b.strands, len_max=4)
        base = delta_invariant(d, sol, b)
        assert delta_invariant(d, sol, markov_conjugate(b, w)) == base
        assert delta_invariant(d, sol, markov_stabilize(b, rng.choice((1, -1)))) == base


@pytest.mark.parametrize("d,subset", [(1, {0}), (2, {0, 1}), (3, {0, 1})])
def test_skein_relation_random(d, subset):
    sol = solution_from_subset(d, subset)
    rng = random.Random(d * 5)
    for _ in range(8):
        b = random_braid(rng, n_max=3, len_max=5)
        i = rng.randrange(len(b.letters))
        assert skein_check(d, sol, b, i)


def test_skein_check_spec_examples():
    sol = solution_from_subset(2, {0, 1})
    for i in range(3):
        assert skein_check(2, sol, parse_braid("1 1 1"), i)
        assert skein_check(2, sol, parse_braid("1 2 1"), i)
    with pytest.raises(ValueError):
        skein_check(2, sol, parse_braid("1 1"), 5)


def test_value_arithmetic_guards():
    sol = solution_from_subset(2, {0})
    lam = lambda_param(2, sol)
    one = InvariantValue(2, 0, RatFunc.from_scalar(2, 1))
    rooted = value_scale_half(one, 1, lam)
    with pytest.raises(ValueError):
        value_add(one, rooted)
    zero = value_sub(one, one)
    assert zero.is_zero() and zero.half == 0
    assert value_add(zero, rooted) == rooted
    # folding: sqrt(lambda)^2 is a whole lambda
    assert value_scale_half(one, 2, lam) == InvariantValue(2, 0, lam)
    assert value_scale_half(rooted, -1, lam) == one
    assert value_scale_half(one, -3, lam) == InvariantValue(2, 1, lam**-2)


def test_homflypt_values_and_mirror():
    one = InvariantValue(1, 0, RatFunc.from_scalar(1, 1))
    assert homflypt_specialize(BraidWord(1, ())) == one
    sol = solution_from_subset(1, {0})
    u, z = uz(1)
    lam = lambda_param(1, sol)
    hopf = homflypt_specialize(parse_braid("1 1"))
    assert hopf == InvariantValue(1, 1, (1 / z) * (1 + (u - 1) * (1 - z)))
    tre = homflypt_specialize(parse_braid("1 1 1"))
    assert tre == InvariantValue(1, 0, (lam / z) * ((u * u - u + 1) * z - (u * u - u)))
    # mirror: the involution u -> 1/u, z -> lambda z exchanges the trefoils
    left = homflypt_specialize(parse_braid("-1 -1 -1"))
    assert mirror_value(1, sol, tre) == left
    assert mirror_value(1, sol, left) == tre
    assert mirror_value(1, sol, mirror_value(1, sol, hopf)) == hopf


def test_homflypt_quadratic_skein():
    """At d = 1 the quadratic relation g^-1 = u^-1 g + (1 - u^-1) gives the
    2-variable skein identity
    D(L-) = (1/(lambda u)) D(L+) + (1 - u^-1) (1/sqrt(lambda)) D(L0)."""
    sol = solution_from_subset(1, {0})
    lam = lambda_param(1, sol)
    u, _ = uz(1)
    rng = random.Random(11)
    for _ in range(10):
        b = random_braid(rng, n_max=3, len_max=5)
        i = rng.randrange(len(b.letters))
        gen = abs(b.letters[i])

        def variant(exponent, b=b, i=i, gen=gen):
            middle = (gen,) * exponent if exponent >= 0 else (-gen,) * (-exponent)
            return BraidWord(b.strands, b.letters[:i] + middle + b.letters[i + 1 :])

        v_m = homflypt_specialize(variant(-1))
        v_p = homflypt_specialize(variant(1))
        v_0 = homflypt_specialize(variant(0))
        rhs = value_add(
            value_scale(v_p, 1 / (lam * u)),
            value_scale_half(value_scale(v_0, 1 - 1 / u), -1, lam),
        )
        assert v_m == rhs


def test_numeric_evaluation_tracks_symbolic():
    sol = solution_from_subset(2, {0, 1})
    b = parse_braid("1 1 1")
    v = delta_invariant(2, sol, b)
    u0, z0 = 0.7 + 0.2j, 1.3 - 0.4j
    lam = lambda_param(2, sol).eval_complex(u0, z0)
    direct = v.body.eval_complex(u0, z0) * (lam**0.5) ** v.half
    assert abs(evaluate_numeric(v, sol, u0, z0) - direct) < 1e-12


def test_rendering():
    sol = solution_from_subset(1, {0})
    v = delta_invariant(1, sol, BraidWord(1, ()))
    assert str(v) == "sqrtLambda^0 * ((1) / (1))"
