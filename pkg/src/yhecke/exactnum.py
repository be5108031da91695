"""Exact scalar arithmetic tower.

Everything here is exact and immutable:

- rationals are stdlib ``fractions.Fraction``;
- ``Cyclotomic`` is a number in Q(zeta_d), stored in the power basis
  1, zeta_d, ..., zeta_d^(phi(d)-1) and reduced modulo the d-th cyclotomic
  polynomial, so equality of values is equality of coefficient vectors;
- ``LaurentU`` is a Laurent polynomial in the variable u over Q;
- ``TracePolynomial`` is a polynomial in z and x_1..x_{d-1} whose
  coefficients are ``LaurentU`` (x_0 is identified with the constant 1);
- ``PolyUZ`` is an ordinary polynomial in u, z over Q(zeta_d);
- ``RatFunc`` is a quotient of two ``PolyUZ``, kept in canonical form
  (gcd-reduced, denominator with leading coefficient 1) so that equality
  is structural.

Monomial orders, and hence all renderings, are deterministic: total degree
first, then lexicographically with z before u before x_1 before x_2, etc.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence, Union

Scalar = Union[int, Fraction]


class OrderMismatchError(ValueError):
    """Raised when combining exact values over different cyclotomic orders."""


# ---------------------------------------------------------------------------
# Univariate polynomials over Q (dense lists, low degree first).
# Only used internally, for cyclotomic polynomials and power-basis reduction.
# ---------------------------------------------------------------------------

_QPoly = tuple  # tuple[Fraction, ...] with no trailing zeros ("zero" is ())


def _qp_trim(cs: Sequence[Fraction]) -> _QPoly:
    i = len(cs)
    while i > 0 and cs[i - 1] == 0:
        i -= 1
    return tuple(cs[:i])


def _qp_mul(a: _QPoly, b: _QPoly) -> _QPoly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _qp_trim(out)


def _qp_divmod(a: _QPoly, b: _QPoly) -> tuple[_QPoly, _QPoly]:
    assert b, "division by the zero polynomial"
    rem = list(a)
    lead = b[-1]
    db = len(b) - 1
    quot = [Fraction(0)] * max(len(a) - db, 0)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        q = c / lead
        quot[i - db] = q
        for j in range(db + 1):
            rem[i - db + j] -= q * b[j]
    return _qp_trim(quot), _qp_trim(rem)


def _qp_xgcd(a: _QPoly, b: _QPoly) -> tuple[_QPoly, _QPoly, _QPoly]:
    """Extended Euclid in Q[x]: returns (g, s, t) with s*a + t*b = g."""
    r0, r1 = a, b
    s0, s1 = (Fraction(1),), ()
    t0, t1 = (), (Fraction(1),)
    while r1:
        q, r = _qp_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qp_trim([x - y for x, y in _zip_pad(s0, _qp_mul(q, s1))])
        t0, t1 = t1, _qp_trim([x - y for x, y in _zip_pad(t0, _qp_mul(q, t1))])
    return r0, s0, t0


def _zip_pad(a: Sequence[Fraction], b: Sequence[Fraction]):
    n = max(len(a), len(b))
    za = tuple(a) + (Fraction(0),) * (n - len(a))
    zb = tuple(b) + (Fraction(0),) * (n - len(b))
    return zip(za, zb)


def _divisors(d: int) -> list[int]:
    return [e for e in range(1, d + 1) if d % e == 0]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(d: int) -> tuple[Fraction, ...]:
    """The d-th cyclotomic polynomial, low degree first.

    Computed by exact division of x^d - 1 by the cyclotomic polynomials of
    the proper divisors of d.

    >>> cyclotomic_polynomial(1)
    (Fraction(-1, 1), Fraction(1, 1))
    >>> cyclotomic_polynomial(6)
    (Fraction(1, 1), Fraction(-1, 1), Fraction(1, 1))
    """
    if d < 1:
        raise ValueError(f"order must be positive, got {d}")
    poly: _QPoly = _qp_trim([Fraction(-1)] + [Fraction(0)] * (d - 1) + [Fraction(1)])
    for e in _divisors(d)[:-1]:
        poly, rem = _qp_divmod(poly, cyclotomic_polynomial(e))
        assert not rem
    return poly


def euler_phi(d: int) -> int:
    """Degree of the d-th cyclotomic polynomial."""
    return len(cyclotomic_polynomial(d)) - 1


# ---------------------------------------------------------------------------
# Cyclotomic numbers.
# ---------------------------------------------------------------------------

def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class Cyclotomic:
    """A number in Q(zeta_d), in the power basis reduced mod the d-th
    cyclotomic polynomial.  ``coeffs`` always has exactly phi(d) entries,
    so equality of values is equality of the dataclass fields.
    """

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        assert self.order >= 1
        assert len(self.coeffs) == euler_phi(self.order)

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rational(order: int, value: Scalar) -> Cyclotomic:
        phi = euler_phi(order)
        v = _as_fraction(value)
        if order == 1:
            # Phi_1 = x - 1, so the basis element "1" is the single slot.
            return Cyclotomic(1, (v,))
        return Cyclotomic(order, (v,) + (Fraction(0),) * (phi - 1))

    @staticmethod
    def zero(order: int) -> Cyclotomic:
        return Cyclotomic.from_rational(order, 0)

    @staticmethod
    def one(order: int) -> Cyclotomic:
        return Cyclotomic.from_rational(order, 1)

    @staticmethod
    def root(order: int, a: int) -> Cyclotomic:
        """zeta_d^a in canonical form (x^a reduced mod the cyclotomic polynomial)."""
        a %= order
        raw = [Fraction(0)] * (a + 1)
        raw[a] = Fraction(1)
        return Cyclotomic(order, _reduce_mod_cyclotomic(order, raw))

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"cyclotomic orders differ: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.order, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        conv = [Fraction(0)] * (2 * len(self.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        conv[i + j] += a * b
        return Cyclotomic(self.order, _reduce_mod_cyclotomic(self.order, conv))

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic number")
        phi_poly = cyclotomic_polynomial(self.order)
        g, s, _t = _qp_xgcd(_qp_trim(self.coeffs), phi_poly)
        assert len(g) == 1, "cyclotomic polynomial must be coprime to a nonzero element"
        scale = 1 / g[0]
        return Cyclotomic(
            self.order,
            _reduce_mod_cyclotomic(self.order, [c * scale for c in s]),
        )

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> Cyclotomic:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        acc = Cyclotomic.one(self.order)
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def raise_order(self, new_order: int) -> Cyclotomic:
        """Embed Q(zeta_d) into Q(zeta_d') along d | d', zeta_d -> zeta_d'^(d'/d)."""
        if new_order % self.order != 0:
            raise OrderMismatchError(
                f"{self.order} does not divide {new_order}; cannot raise order"
            )
        step = new_order // self.order
        out = Cyclotomic.zero(new_order)
        for i, c in enumerate(self.coeffs):
            if c:
                out = out + Cyclotomic.root(new_order, i * step) * c
        return out

    # -- output --------------------------------------------------------------

    def eval_complex(self) -> complex:
        zeta = cmath.exp(2j * cmath.pi / self.order)
        return sum((complex(c) * zeta**i for i, c in enumerate(self.coeffs)), 0j)

    def __str__(self) -> str:
        sym = f"zeta{self.order}"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append((c < 0, str(abs(c))))
            else:
                mono = sym if i == 1 else f"{sym}^{i}"
                mag = abs(c)
                body = mono if mag == 1 else f"{mag}*{mono}"
                parts.append((c < 0, body))
        return _join_signed(parts)


def _reduce_mod_cyclotomic(order: int, raw: Sequence[Fraction]) -> tuple[Fraction, ...]:
    phi_poly = cyclotomic_polynomial(order)
    deg = len(phi_poly) - 1
    rem = list(raw)
    for i in range(len(rem) - 1, deg - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        for j in range(deg + 1):
            rem[i - deg + j] -= c * phi_poly[j]
    rem = rem[:deg]
    rem += [Fraction(0)] * (deg - len(rem))
    return tuple(rem)


def _join_signed(parts: list[tuple[bool, str]]) -> str:
    if not parts:
        return "0"
    out = []
    for k, (neg, body) in enumerate(parts):
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# Laurent polynomials in u over Q.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LaurentU:
    """Sparse Laurent polynomial in u with Fraction coefficients.

    ``terms`` is sorted by exponent and stores no zero coefficients, so the
    zero polynomial is the empty tuple and equality/hash are structural.
    """

    terms: tuple[tuple[int, Fraction], ...]

    @staticmethod
    def from_dict(d: Mapping[int, Scalar]) -> LaurentU:
        items = []
        for e, c in d.items():
            f = _as_fraction(c)
            if f:
                items.append((int(e), f))
        items.sort()
        return LaurentU(tuple(items))

    @staticmethod
    def zero() -> LaurentU:
        return LaurentU(())

    @staticmethod
    def from_scalar(c: Scalar) -> LaurentU:
        return LaurentU.from_dict({0: c})

    @staticmethod
    def u(exp: int = 1, coeff: Scalar = 1) -> LaurentU:
        return LaurentU.from_dict({exp: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def min_exponent(self) -> int:
        if not self.terms:
            return 0
        return self.terms[0][0]

    def _coerce(self, other) -> "LaurentU | None":
        if isinstance(other, LaurentU):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentU.from_scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.terms)
        for e, c in o.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return LaurentU.from_dict(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentU(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                e = e1 + e2
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return LaurentU.from_dict(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentU:
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            e, c = self.terms[0]
            return LaurentU.from_dict({e * k: c**k})
        acc = LaurentU.from_scalar(1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def eval_complex(self, u: complex) -> complex:
        return sum((complex(c) * u**e for e, c in self.terms), 0j)

    def __str__(self) -> str:
        parts = []
        for e, c in sorted(self.terms, reverse=True):
            if e == 0:
                parts.append((c < 0, str(abs(c))))
            else:
                mono = "u" if e == 1 else f"u^{e}"
                mag = abs(c)
                body = mono if mag == 1 else f"{mag}*{mono}"
                parts.append((c < 0, body))
        return _join_signed(parts)


def laurent_u_minus_one() -> LaurentU:
    """The recurring coefficient u - 1."""
    return LaurentU.from_dict({1: 1, 0: -1})


def laurent_uinv_minus_one() -> LaurentU:
    """The recurring coefficient u^-1 - 1."""
    return LaurentU.from_dict({-1: 1, 0: -1})


# ---------------------------------------------------------------------------
# Trace polynomials: polynomials in z and x_1 .. x_{d-1} over LaurentU.
# ---------------------------------------------------------------------------

_XMono = tuple  # tuple[int, ...], length d-1, exponents of x_1..x_{d-1}
_TMono = tuple  # (z_exponent, _XMono)


@dataclass(frozen=True)
class TracePolynomial:
    """Element of the trace codomain: polynomial in z and x_1..x_{d-1} with
    Laurent-in-u coefficients.  x_0 is the constant 1 and never stored.
    """

    order: int
    terms: tuple[tuple[_TMono, LaurentU], ...]

    def __post_init__(self):
        nx = self.order - 1
        for (ze, xe), c in self.terms:
            assert ze >= 0 and len(xe) == nx and all(e >= 0 for e in xe)
            assert not c.is_zero()

    @staticmethod
    def from_dict(order: int, d: Mapping[_TMono, LaurentU]) -> TracePolynomial:
        items = [(mono, c) for mono, c in d.items() if not c.is_zero()]
        items.sort(key=lambda it: it[0])
        return TracePolynomial(order, tuple(items))

    @staticmethod
    def zero(order: int) -> TracePolynomial:
        return TracePolynomial(order, ())

    @staticmethod
    def one(order: int) -> TracePolynomial:
        return TracePolynomial.from_scalar(order, 1)

    @staticmethod
    def from_scalar(order: int, c: Scalar | LaurentU) -> TracePolynomial:
        lu = c if isinstance(c, LaurentU) else LaurentU.from_scalar(c)
        mono = (0, (0,) * (order - 1))
        return TracePolynomial.from_dict(order, {mono: lu})

    @staticmethod
    def z_var(order: int) -> TracePolynomial:
        mono = (1, (0,) * (order - 1))
        return TracePolynomial.from_dict(order, {mono: LaurentU.from_scalar(1)})

    @staticmethod
    def x_var(order: int, m: int) -> TracePolynomial:
        """The trace parameter x_m; x_0 (and any m = 0 mod d) is 1."""
        m %= order
        if m == 0:
            return TracePolynomial.one(order)
        xe = [0] * (order - 1)
        xe[m - 1] = 1
        return TracePolynomial.from_dict(
            order, {(0, tuple(xe)): LaurentU.from_scalar(1)}
        )

    def is_zero(self) -> bool:
        return not self.terms

    def _check_order(self, other: TracePolynomial):
        if self.order != other.order:
            raise OrderMismatchError(
                f"trace polynomial orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if not isinstance(other, TracePolynomial):
            return NotImplemented
        self._check_order(other)
        acc = dict(self.terms)
        for mono, c in other.terms:
            acc[mono] = acc.get(mono, LaurentU.zero()) + c
        return TracePolynomial.from_dict(self.order, acc)

    def __neg__(self):
        return TracePolynomial(self.order, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        if not isinstance(other, TracePolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentU)):
            return self.scale(other)
        if not isinstance(other, TracePolynomial):
            return NotImplemented
        self._check_order(other)
        acc: dict[_TMono, LaurentU] = {}
        for (z1, x1), c1 in self.terms:
            for (z2, x2), c2 in other.terms:
                mono = (z1 + z2, tuple(a + b for a, b in zip(x1, x2)))
                prod = c1 * c2
                acc[mono] = acc.get(mono, LaurentU.zero()) + prod
        return TracePolynomial.from_dict(self.order, acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentU)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Scalar | LaurentU) -> TracePolynomial:
        lu = c if isinstance(c, LaurentU) else LaurentU.from_scalar(c)
        if lu.is_zero():
            return TracePolynomial.zero(self.order)
        return TracePolynomial.from_dict(
            self.order, {mono: coeff * lu for mono, coeff in self.terms}
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"

        def sort_key(item):
            (ze, xe), _ = item
            return (ze + sum(xe), ze, xe)

        parts = []
        for (ze, xe), c in sorted(self.terms, key=sort_key, reverse=True):
            factors = []
            if ze:
                factors.append("z" if ze == 1 else f"z^{ze}")
            for i, e in enumerate(xe):
                if e:
                    factors.append(f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}")
            mono = "*".join(factors)
            cs = str(c)
            if not mono:
                body = cs if len(c.terms) == 1 and not cs.startswith("-") else f"({cs})"
                parts.append((False, body))
            elif cs == "1":
                parts.append((False, mono))
            elif cs == "-1":
                parts.append((True, mono))
            elif len(c.terms) == 1 and not cs.startswith("-"):
                parts.append((False, f"{cs}*{mono}"))
            else:
                parts.append((False, f"({cs})*{mono}"))
        return _join_signed(parts)


# ---------------------------------------------------------------------------
# Bivariate polynomials in u, z over Q(zeta_d).
# ---------------------------------------------------------------------------

_UZMono = tuple  # (u_exponent, z_exponent)


@dataclass(frozen=True)
class PolyUZ:
    """Polynomial in u and z with Cyclotomic coefficients (sparse, canonical)."""

    order: int
    terms: tuple[tuple[_UZMono, Cyclotomic], ...]

    def __post_init__(self):
        for (ue, ze), c in self.terms:
            assert ue >= 0 and ze >= 0
            assert c.order == self.order and not c.is_zero()

    @staticmethod
    def from_dict(order: int, d: Mapping[_UZMono, Cyclotomic]) -> PolyUZ:
        items = [(m, c) for m, c in d.items() if not c.is_zero()]
        items.sort(key=lambda it: it[0])
        return PolyUZ(order, tuple(items))

    @staticmethod
    def zero(order: int) -> PolyUZ:
        return PolyUZ(order, ())

    @staticmethod
    def from_cyclotomic(c: Cyclotomic) -> PolyUZ:
        return PolyUZ.from_dict(c.order, {(0, 0): c})

    @staticmethod
    def from_scalar(order: int, c: Scalar) -> PolyUZ:
        return PolyUZ.from_cyclotomic(Cyclotomic.from_rational(order, c))

    @staticmethod
    def one(order: int) -> PolyUZ:
        return PolyUZ.from_scalar(order, 1)

    @staticmethod
    def monomial(order: int, ue: int, ze: int, c: Scalar | Cyclotomic = 1) -> PolyUZ:
        cy = c if isinstance(c, Cyclotomic) else Cyclotomic.from_rational(order, c)
        return PolyUZ.from_dict(order, {(ue, ze): cy})

    def is_zero(self) -> bool:
        return not self.terms

    def _check_order(self, other: PolyUZ):
        if self.order != other.order:
            raise OrderMismatchError(
                f"polynomial orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if not isinstance(other, PolyUZ):
            return NotImplemented
        self._check_order(other)
        acc = dict(self.terms)
        zero = Cyclotomic.zero(self.order)
        for m, c in other.terms:
            acc[m] = acc.get(m, zero) + c
        return PolyUZ.from_dict(self.order, acc)

    def __neg__(self):
        return PolyUZ(self.order, tuple((m, -c) for m, c in self.terms))

    def __sub__(self, other):
        if not isinstance(other, PolyUZ):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PolyUZ):
            return NotImplemented
        self._check_order(other)
        acc: dict[_UZMono, Cyclotomic] = {}
        zero = Cyclotomic.zero(self.order)
        for (u1, z1), c1 in self.terms:
            for (u2, z2), c2 in other.terms:
                m = (u1 + u2, z1 + z2)
                acc[m] = acc.get(m, zero) + c1 * c2
        return PolyUZ.from_dict(self.order, acc)

    def scale(self, c: Cyclotomic) -> PolyUZ:
        if c.is_zero():
            return PolyUZ.zero(self.order)
        return PolyUZ.from_dict(self.order, {m: co * c for m, co in self.terms})

    def leading_monomial(self) -> tuple[_UZMono, Cyclotomic]:
        assert self.terms, "zero polynomial has no leading monomial"
        return max(self.terms, key=lambda it: (it[0][0] + it[0][1], it[0][1], it[0][0]))

    def eval_complex(self, u: complex, z: complex) -> complex:
        return sum(
            (c.eval_complex() * u**ue * z**ze for (ue, ze), c in self.terms), 0j
        )

    def substitute(self, u_val: "RatFunc", z_val: "RatFunc") -> "RatFunc":
        out = RatFunc.from_scalar(self.order, 0)
        upow: dict[int, RatFunc] = {0: RatFunc.from_scalar(self.order, 1)}
        zpow: dict[int, RatFunc] = {0: RatFunc.from_scalar(self.order, 1)}
        for (ue, ze), c in self.terms:
            if ue not in upow:
                upow[ue] = u_val**ue
            if ze not in zpow:
                zpow[ze] = z_val**ze
            out = out + RatFunc.from_cyclotomic(c) * upow[ue] * zpow[ze]
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"

        def sort_key(item):
            (ue, ze), _ = item
            return (ue + ze, ze, ue)

        parts = []
        for (ue, ze), c in sorted(self.terms, key=sort_key, reverse=True):
            factors = []
            if ze:
                factors.append("z" if ze == 1 else f"z^{ze}")
            if ue:
                factors.append("u" if ue == 1 else f"u^{ue}")
            mono = "*".join(factors)
            if c.is_rational():
                q = c.as_fraction()
                if not mono:
                    parts.append((q < 0, str(abs(q))))
                elif q == 1:
                    parts.append((False, mono))
                elif q == -1:
                    parts.append((True, mono))
                else:
                    parts.append((q < 0, f"{abs(q)}*{mono}"))
            else:
                body = f"({c})"
                parts.append((False, f"{body}*{mono}" if mono else body))
        return _join_signed(parts)


# -- gcd machinery for PolyUZ ------------------------------------------------
# A PolyUZ is viewed as a polynomial in z whose coefficients are dense
# polynomials in u over Q(zeta_d); gcds use the primitive Euclidean algorithm.

_UPoly = list  # list[Cyclotomic], low degree first, trimmed


def _up_trim(cs: list[Cyclotomic]) -> _UPoly:
    while cs and cs[-1].is_zero():
        cs.pop()
    return cs


def _up_is_zero(a: _UPoly) -> bool:
    return not a


def _up_mul(a: _UPoly, b: _UPoly, order: int) -> _UPoly:
    if not a or not b:
        return []
    zero = Cyclotomic.zero(order)
    out = [zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca.is_zero():
            for j, cb in enumerate(b):
                if not cb.is_zero():
                    out[i + j] = out[i + j] + ca * cb
    return _up_trim(out)


def _up_sub(a: _UPoly, b: _UPoly, order: int) -> _UPoly:
    zero = Cyclotomic.zero(order)
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(x - y)
    return _up_trim(out)


def _up_divmod(a: _UPoly, b: _UPoly, order: int) -> tuple[_UPoly, _UPoly]:
    assert b, "division by zero u-polynomial"
    zero = Cyclotomic.zero(order)
    rem = list(a)
    lead_inv = b[-1].inverse()
    db = len(b) - 1
    quot = [zero] * max(len(a) - db, 0)
    for i in range(len(rem) - 1, db - 1, -1):
        c = rem[i]
        if c.is_zero():
            continue
        q = c * lead_inv
        quot[i - db] = q
        for j in range(db + 1):
            rem[i - db + j] = rem[i - db + j] - q * b[j]
    return _up_trim(quot), _up_trim(rem)


def _up_monic(a: _UPoly, order: int) -> _UPoly:
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _up_gcd(a: _UPoly, b: _UPoly, order: int) -> _UPoly:
    while b:
        _, r = _up_divmod(a, b, order)
        a, b = b, r
    return _up_monic(a, order)


def _uz_to_zrep(p: PolyUZ) -> list[_UPoly]:
    """Dense representation: index by z-exponent, entries are u-polynomials."""
    if not p.terms:
        return []
    zero = Cyclotomic.zero(p.order)
    zdeg = max(ze for (_, ze), _ in p.terms)
    udegs = [0] * (zdeg + 1)
    for (ue, ze), _ in p.terms:
        udegs[ze] = max(udegs[ze], ue)
    rep: list[_UPoly] = [[zero] * (udegs[i] + 1) for i in range(zdeg + 1)]
    for (ue, ze), c in p.terms:
        rep[ze][ue] = c
    return [_up_trim(cs) for cs in rep]


def _zrep_to_uz(rep: list[_UPoly], order: int) -> PolyUZ:
    acc: dict[_UZMono, Cyclotomic] = {}
    for ze, cs in enumerate(rep):
        for ue, c in enumerate(cs):
            if not c.is_zero():
                acc[(ue, ze)] = c
    return PolyUZ.from_dict(order, acc)


def _zrep_trim(rep: list[_UPoly]) -> list[_UPoly]:
    while rep and _up_is_zero(rep[-1]):
        rep.pop()
    return rep


def _zrep_content(rep: list[_UPoly], order: int) -> _UPoly:
    g: _UPoly = []
    for cs in rep:
        if cs:
            g = _up_gcd(g, cs, order) if g else _up_monic(list(cs), order)
            if len(g) == 1:
                break
    return g


def _zrep_div_content(rep: list[_UPoly], content: _UPoly, order: int) -> list[_UPoly]:
    out = []
    for cs in rep:
        if not cs:
            out.append([])
            continue
        q, r = _up_divmod(cs, content, order)
        assert _up_is_zero(r), "content division must be exact"
        out.append(q)
    return out


def _zrep_pseudo_rem(a: list[_UPoly], b: list[_UPoly], order: int) -> list[_UPoly]:
    """Pseudo-remainder of a by b as polynomials in z over Q(zeta_d)[u]."""
    da, db = len(a) - 1, len(b) - 1
    lead = b[-1]
    rem = [list(cs) for cs in a]
    while len(rem) - 1 >= db and not _up_is_zero(rem[-1]):
        shift = len(rem) - 1 - db
        top = rem[-1]
        rem = [_up_mul(cs, lead, order) for cs in rem]
        for j in range(db + 1):
            rem[shift + j] = _up_sub(rem[shift + j], _up_mul(b[j], top, order), order)
        rem = _zrep_trim(rem)
    return rem


def poly_gcd(p: PolyUZ, q: PolyUZ) -> PolyUZ:
    """Gcd of two bivariate polynomials over Q(zeta_d), normalized so its
    leading coefficient (total degree, then z, then u) is 1."""
    if p.order != q.order:
        raise OrderMismatchError("gcd of polynomials over different orders")
    order = p.order
    if p.is_zero():
        return _normalize_lead(q)
    if q.is_zero():
        return _normalize_lead(p)
    a, b = _uz_to_zrep(p), _uz_to_zrep(q)
    ca, cb = _zrep_content(a, order), _zrep_content(b, order)
    cg = _up_gcd(ca, cb, order)
    a = _zrep_div_content(a, ca, order)
    b = _zrep_div_content(b, cb, order)
    if len(a) < len(b):
        a, b = b, a
    while True:
        if not b:
            g = a
            break
        r = _zrep_pseudo_rem(a, b, order)
        if not r:
            g = b
            break
        cr = _zrep_content(r, order)
        a, b = b, _zrep_div_content(r, cr, order)
    cgg = _zrep_content(g, order)
    g = _zrep_div_content(g, cgg, order)
    g = [_up_mul(cs, cg, order) for cs in g]
    return _normalize_lead(_zrep_to_uz(g, order))


def _normalize_lead(p: PolyUZ) -> PolyUZ:
    if p.is_zero():
        return p
    _, lead = p.leading_monomial()
    return p.scale(lead.inverse())


def poly_exact_div(p: PolyUZ, g: PolyUZ) -> PolyUZ:
    """Divide p by a known divisor g, asserting exactness."""
    if p.order != g.order:
        raise OrderMismatchError("division of polynomials over different orders")
    order = p.order
    assert not g.is_zero(), "division by the zero polynomial"
    if p.is_zero():
        return p
    a, b = _uz_to_zrep(p), _uz_to_zrep(g)
    db = len(b) - 1
    quot: list[_UPoly] = [[] for _ in range(len(a) - db)]
    rem = [list(cs) for cs in a]
    while len(rem) - 1 >= db:
        rem = _zrep_trim(rem)
        if len(rem) - 1 < db:
            break
        top, r = _up_divmod(rem[-1], b[-1], order)
        assert _up_is_zero(r), "leading coefficient division must be exact"
        shift = len(rem) - 1 - db
        quot[shift] = top
        for j in range(db + 1):
            rem[shift + j] = _up_sub(rem[shift + j], _up_mul(b[j], top, order), order)
        rem.pop()
    assert not _zrep_trim(rem), "polynomial division was not exact"
    return _zrep_to_uz(quot, order)


# ---------------------------------------------------------------------------
# Rational functions in u, z over Q(zeta_d).
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatFunc:
    """Quotient of two PolyUZ in canonical form: gcd-reduced, denominator's
    leading coefficient equal to 1, and zero stored as 0/1.  Structural
    equality therefore coincides with equality of rational functions.
    """

    order: int
    num: PolyUZ
    den: PolyUZ

    @staticmethod
    def make(num: PolyUZ, den: PolyUZ) -> RatFunc:
        if num.order != den.order:
            raise OrderMismatchError("numerator and denominator orders differ")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in rational function")
        order = num.order
        if num.is_zero():
            return RatFunc(order, PolyUZ.zero(order), PolyUZ.one(order))
        g = poly_gcd(num, den)
        num = poly_exact_div(num, g)
        den = poly_exact_div(den, g)
        _, lead = den.leading_monomial()
        inv = lead.inverse()
        return RatFunc(order, num.scale(inv), den.scale(inv))

    @staticmethod
    def from_poly(p: PolyUZ) -> RatFunc:
        return RatFunc(p.order, p, PolyUZ.one(p.order))

    @staticmethod
    def from_cyclotomic(c: Cyclotomic) -> RatFunc:
        return RatFunc.from_poly(PolyUZ.from_cyclotomic(c))

    @staticmethod
    def from_scalar(order: int, c: Scalar) -> RatFunc:
        return RatFunc.from_poly(PolyUZ.from_scalar(order, c))

    @staticmethod
    def u_var(order: int) -> RatFunc:
        return RatFunc.from_poly(PolyUZ.monomial(order, 1, 0))

    @staticmethod
    def z_var(order: int) -> RatFunc:
        return RatFunc.from_poly(PolyUZ.monomial(order, 0, 1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def _coerce(self, other) -> "RatFunc | None":
        if isinstance(other, RatFunc):
            if other.order != self.order:
                raise OrderMismatchError(
                    f"rational function orders differ: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, Cyclotomic):
            return RatFunc.from_cyclotomic(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc.from_scalar(self.order, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc.make(self.num + o.num, self.den)
        return RatFunc.make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.order, -self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc.make(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc.make(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int) -> RatFunc:
        if k < 0:
            return (RatFunc.from_scalar(self.order, 1) / self) ** (-k)
        acc = RatFunc.from_scalar(self.order, 1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def equal_cross(self, other: RatFunc) -> bool:
        """Equality by cross-multiplication, independent of canonical form."""
        if self.order != other.order:
            raise OrderMismatchError("comparing rational functions over different orders")
        return self.num * other.den == other.num * self.den

    def substitute(self, u_val: RatFunc, z_val: RatFunc) -> RatFunc:
        return self.num.substitute(u_val, z_val) / self.den.substitute(u_val, z_val)

    def eval_complex(self, u: complex, z: complex) -> complex:
        return self.num.eval_complex(u, z) / self.den.eval_complex(u, z)

    def __str__(self) -> str:
        if self.den == PolyUZ.one(self.order):
            return str(self.num)
        return f"({self.num}) / ({self.den})"


def trace_poly_substitute(p: TracePolynomial, sol) -> RatFunc:
    """Substitute exact values for the x_m variables of a trace polynomial.

    ``sol`` must expose ``d`` (the order) and ``values`` (a length-d sequence
    of Cyclotomic values with values[0] = 1); the result is a rational
    function in u, z over Q(zeta_d) with denominator a power of u.
    """
    if p.order != sol.d:
        raise OrderMismatchError(
            f"trace polynomial order {p.order} does not match solution order {sol.d}"
        )
    return substitute_x_values(p, sol.values)


def substitute_x_values(p: TracePolynomial, values: Sequence[Cyclotomic]) -> RatFunc:
    order = p.order
    if len(values) != order:
        raise ValueError(f"expected {order} values, got {len(values)}")
    min_u = 0
    for _, c in p.terms:
        min_u = min(min_u, c.min_exponent())
    acc: dict[_UZMono, Cyclotomic] = {}
    zero = Cyclotomic.zero(order)
    for (ze, xe), lu in p.terms:
        scalar = Cyclotomic.one(order)
        for idx, e in enumerate(xe):
            if e:
                scalar = scalar * values[idx + 1] ** e
        if scalar.is_zero():
            continue
        for ue, q in lu.terms:
            m = (ue - min_u, ze)
            acc[m] = acc.get(m, zero) + scalar * q
    num = PolyUZ.from_dict(order, acc)
    den = PolyUZ.monomial(order, -min_u, 0)
    return RatFunc.make(num, den)
