"""Exact arithmetic in the two variables q and T.

Everything downstream of this module lives in one of two value types:

* :class:`BivariatePolynomial` -- a Laurent polynomial in q whose T-exponents
  are nonnegative, with arbitrary-precision integer coefficients.  Stored as
  a sparse map ``(e_q, e_T) -> coefficient``; zero coefficients are never
  stored.

* :class:`FactoredRational` -- ``T^tshift * num / prod (1 - q^a T^b)^mult``
  with the denominator kept as a multiset of factors, never expanded.  All
  generating functions and zeta functions in this package are values of this
  type, and equality is decided by exact cross-multiplication.

The module also provides q-Pochhammer symbols, Gaussian binomial and
multinomial coefficients, exact division by a factor ``1 - q^a T^b``, the
substitutions ``(q,T) -> (q^-1,T^-1)``, ``q -> 1``, ``T -> q^c T^d``, and
power-series expansion in T.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .errors import NotRegularAtZero, SubstitutionSingular

Term = tuple[int, int]  # (e_q, e_T)

# ---------------------------------------------------------------------------
# raw dict helpers (kept free functions for speed; the classes wrap them)
# ---------------------------------------------------------------------------


def _p_add(a: dict, b: dict) -> dict:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for k, c in b.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _p_neg(a: dict) -> dict:
    return {k: -c for k, c in a.items()}


def _p_mul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(b) < len(a):
        a, b = b, a
    out: dict = {}
    for (qa, ta), ca in a.items():
        for (qb, tb), cb in b.items():
            k = (qa + qb, ta + tb)
            s = out.get(k, 0) + ca * cb
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _p_scale(a: dict, c: int, dq: int = 0, dt: int = 0) -> dict:
    """a * c * q^dq * T^dt as a raw dict."""
    if c == 0:
        return {}
    if c == 1 and dq == 0 and dt == 0:
        return dict(a)
    return {(eq + dq, et + dt): cc * c for (eq, et), cc in a.items()}


def _p_tslices(a: dict) -> dict[int, dict[int, int]]:
    """Group terms by T-degree: {e_T: {e_q: coeff}}."""
    out: dict[int, dict[int, int]] = {}
    for (eq, et), c in a.items():
        out.setdefault(et, {})[eq] = c
    return out


class BivariatePolynomial:
    """Sparse exact polynomial in T with Laurent exponents in q.

    Immutable by convention: no method mutates ``self``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Term, int]] = None):
        t = {}
        if terms:
            for (eq, et), c in terms.items():
                if c == 0:
                    continue
                if et < 0:
                    raise ValueError("negative T-exponent in polynomial term")
                t[(eq, et)] = c
        self.terms = t

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, terms: dict) -> "BivariatePolynomial":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "BivariatePolynomial":
        return cls._raw({})

    @classmethod
    def monomial(cls, coeff: int, e_q: int = 0, e_T: int = 0) -> "BivariatePolynomial":
        if e_T < 0:
            raise ValueError("negative T-exponent in polynomial term")
        return cls._raw({(e_q, e_T): coeff} if coeff else {})

    @classmethod
    def one(cls) -> "BivariatePolynomial":
        return cls.monomial(1)

    @classmethod
    def one_minus(cls, a: int, b: int) -> "BivariatePolynomial":
        """The factor 1 - q^a T^b."""
        if (a, b) == (0, 0):
            return cls.zero()
        return cls._raw({(0, 0): 1, (a, b): -1})

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _coerce_poly(other)
        return BivariatePolynomial._raw(_p_add(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return BivariatePolynomial._raw(_p_neg(self.terms))

    def __sub__(self, other):
        other = _coerce_poly(other)
        return BivariatePolynomial._raw(_p_add(self.terms, _p_neg(other.terms)))

    def __rsub__(self, other):
        return _coerce_poly(other) - self

    def __mul__(self, other):
        other = _coerce_poly(other)
        return BivariatePolynomial._raw(_p_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = BivariatePolynomial.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = BivariatePolynomial.monomial(other)
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # mutable dict inside; not hashable

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- inspection ---------------------------------------------------------

    def coefficient(self, e_q: int, e_T: int) -> int:
        return self.terms.get((e_q, e_T), 0)

    def t_degree(self) -> int:
        """Largest T-exponent; -1 for the zero polynomial."""
        return max((et for _, et in self.terms), default=-1)

    def t_valuation(self) -> int:
        """Smallest T-exponent; 0 for the zero polynomial."""
        return min((et for _, et in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        """Terms as (coeff, e_q, e_T), ordered lexicographically by (e_T, e_q)."""
        return [
            (self.terms[(eq, et)], eq, et)
            for (et, eq) in sorted((et, eq) for (eq, et) in self.terms)
        ]

    def shift(self, dq: int = 0, dt: int = 0) -> "BivariatePolynomial":
        """Multiply by q^dq T^dt (dt may not push any exponent below zero)."""
        return BivariatePolynomial(_p_scale(self.terms, 1, dq, dt))

    def scaled(self, c: int) -> "BivariatePolynomial":
        return BivariatePolynomial._raw(_p_scale(self.terms, c))

    def eval_q(self, q: int) -> dict[int, int]:
        """Exact evaluation at an integer q (q != 0): {e_T: integer coeff}.

        Negative q-exponents must cancel; raises if the result is not an
        integer polynomial in T.
        """
        slices = _p_tslices(self.terms)
        out = {}
        for et, sl in slices.items():
            num = 0
            neg = -min(0, min(sl))
            for eq, c in sl.items():
                num += c * q ** (eq + neg)
            if num % (q**neg):
                raise ValueError("evaluation at q=%d is not integral" % q)
            val = num // (q**neg)
            if val:
                out[et] = val
        return out

    def subs_q_one(self) -> "BivariatePolynomial":
        out: dict = {}
        for (eq, et), c in self.terms.items():
            k = (0, et)
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return BivariatePolynomial._raw(out)

    def __repr__(self):
        return "BivariatePolynomial(%s)" % format_poly(self)


def _coerce_poly(x) -> BivariatePolynomial:
    if isinstance(x, BivariatePolynomial):
        return x
    if isinstance(x, int):
        return BivariatePolynomial.monomial(x)
    if isinstance(x, SignedMonomial):
        return x.to_poly()
    raise TypeError("cannot coerce %r to BivariatePolynomial" % (x,))


@dataclass(frozen=True)
class SignedMonomial:
    """The monomial sign * q^e_q * T^e_T (sign in {1, -1})."""

    sign: int
    e_q: int
    e_T: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +-1")

    def __mul__(self, other: "SignedMonomial") -> "SignedMonomial":
        return SignedMonomial(
            self.sign * other.sign, self.e_q + other.e_q, self.e_T + other.e_T
        )

    def __pow__(self, k: int) -> "SignedMonomial":
        return SignedMonomial(
            self.sign if k % 2 else 1, self.e_q * k, self.e_T * k
        )

    def to_poly(self) -> BivariatePolynomial:
        return BivariatePolynomial.monomial(self.sign, self.e_q, self.e_T)


def mono(e_q: int = 0, e_T: int = 0, sign: int = 1) -> SignedMonomial:
    """Shorthand constructor for sign * q^e_q * T^e_T."""
    return SignedMonomial(sign, e_q, e_T)


# ---------------------------------------------------------------------------
# exact division by 1 - q^a T^b
# ---------------------------------------------------------------------------


def divide_out_factor(
    p: BivariatePolynomial, a: int, b: int
) -> Optional[BivariatePolynomial]:
    """Exact quotient p / (1 - q^a T^b), or None when the factor does not divide.

    For b >= 1 the division runs in the main variable T (the divisor's leading
    T-coefficient -q^a is a unit in Laurent-q coefficients).  For b == 0 the
    divisor is constant in T and each T-slice is divided separately.
    """
    if (a, b) == (0, 0):
        raise ValueError("1 - q^0 T^0 = 0 is not a divisor")
    if p.is_zero():
        return BivariatePolynomial.zero()
    if b < 0:
        raise ValueError("factor must have b >= 0")
    if b == 0:
        return _divide_out_qfactor(p, a)

    slices = {et: dict(sl) for et, sl in _p_tslices(p.terms).items()}
    quotient: dict = {}
    while slices:
        m = max(slices)
        lead = slices.pop(m)
        if m < b:
            return None
        # quotient slice at T^(m-b): lead / (-q^a)
        qslice = {eq - a: -c for eq, c in lead.items()}
        for eq, c in qslice.items():
            quotient[(eq, m - b)] = quotient.get((eq, m - b), 0) + c
        # remainder gains -qslice at T^(m-b)  (from the divisor's constant 1)
        tgt = slices.setdefault(m - b, {})
        for eq, c in qslice.items():
            s = tgt.get(eq, 0) - c
            if s:
                tgt[eq] = s
            else:
                tgt.pop(eq, None)
        if not tgt:
            del slices[m - b]
    return BivariatePolynomial({k: c for k, c in quotient.items() if c})


def _divide_out_qfactor(
    p: BivariatePolynomial, a: int
) -> Optional[BivariatePolynomial]:
    """p / (1 - q^a) with a != 0, or None."""
    if a < 0:
        # 1 - q^a = -q^a (1 - q^-a)
        q = _divide_out_qfactor(p, -a)
        if q is None:
            return None
        return q.scaled(-1).shift(dq=-a)
    out: dict = {}
    for et, sl in _p_tslices(p.terms).items():
        lo, hi = min(sl), max(sl)
        qs: dict[int, int] = {}
        for j in range(lo, hi + 1):
            c = sl.get(j, 0) + qs.get(j - a, 0)
            if c:
                qs[j] = c
        # exactness: (1 - q^a) * qs must reproduce the slice
        for j in range(hi + 1, hi + a + 1):
            if qs.get(j - a, 0):
                return None
        for j, c in qs.items():
            out[(j, et)] = c
    return BivariatePolynomial._raw(out)


# ---------------------------------------------------------------------------
# FactoredRational
# ---------------------------------------------------------------------------

FactorKey = tuple[int, int]  # (a, b) denoting 1 - q^a T^b


class FactoredRational:
    """T^tshift * num / prod over den of (1 - q^a T^b)^mult.

    ``den`` maps (a, b) to a positive multiplicity.  Factors are normalized at
    insertion so that b >= 0, and a > 0 whenever b == 0 (the flipped unit is
    folded into the numerator and tshift).  The represented value never
    changes under normalization or :meth:`reduced`.
    """

    __slots__ = ("num", "den", "tshift")

    def __init__(
        self,
        num: BivariatePolynomial | int = 1,
        den: Optional[Mapping[FactorKey, int]] = None,
        tshift: int = 0,
    ):
        num = _coerce_poly(num)
        clean_den: dict[FactorKey, int] = {}
        if den:
            for (a, b), m in den.items():
                if m < 0:
                    raise ValueError("negative factor multiplicity")
                if m:
                    num, tshift = _insert_factor(clean_den, a, b, m, num, tshift)
        if num.is_zero():
            clean_den, tshift = {}, 0
        self.num = num
        self.den = clean_den
        self.tshift = tshift

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "FactoredRational":
        return cls(0)

    @classmethod
    def from_monomial(cls, m: SignedMonomial) -> "FactoredRational":
        return cls(m.to_poly())

    @classmethod
    def one_over(cls, factors: Iterable[FactorKey]) -> "FactoredRational":
        den: dict[FactorKey, int] = {}
        for k in factors:
            den[k] = den.get(k, 0) + 1
        return cls(1, den)

    # -- arithmetic ---------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, BivariatePolynomial, SignedMonomial)):
            return FactoredRational(
                self.num * _coerce_poly(other), self.den, self.tshift
            )
        if not isinstance(other, FactoredRational):
            return NotImplemented
        den = dict(self.den)
        for k, m in other.den.items():
            den[k] = den.get(k, 0) + m
        return FactoredRational(
            self.num * other.num, den, self.tshift + other.tshift
        )

    __rmul__ = __mul__

    def __neg__(self):
        return FactoredRational(self.num.scaled(-1), self.den, self.tshift)

    def __add__(self, other):
        if isinstance(other, (int, BivariatePolynomial, SignedMonomial)):
            other = FactoredRational(_coerce_poly(other))
        if not isinstance(other, FactoredRational):
            return NotImplemented
        return FactoredRational.sum([self, other])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, BivariatePolynomial, SignedMonomial)):
            other = FactoredRational(_coerce_poly(other))
        return self + (-other)

    def divided_by_factor(self, a: int, b: int, mult: int = 1) -> "FactoredRational":
        """Multiply the denominator by (1 - q^a T^b)^mult."""
        den = dict(self.den)
        num, tshift = _insert_factor(den, a, b, mult, self.num, self.tshift)
        return FactoredRational(num, den, tshift)

    @staticmethod
    def sum(items: Sequence["FactoredRational"]) -> "FactoredRational":
        """Exact sum over the least common factor multiset."""
        items = [it for it in items if not it.num.is_zero()]
        if not items:
            return FactoredRational.zero()
        if len(items) == 1:
            return items[0]
        lcm: dict[FactorKey, int] = {}
        for it in items:
            for k, m in it.den.items():
                if lcm.get(k, 0) < m:
                    lcm[k] = m
        big = expand_factors(lcm)
        tmin = min(it.tshift for it in items)
        total = BivariatePolynomial.zero()
        for it in items:
            extra = big
            for (a, b), m in it.den.items():
                for _ in range(m):
                    extra = divide_out_factor(extra, a, b)
                    assert extra is not None  # lcm contains it.den
            total = total + (it.num * extra).shift(dt=it.tshift - tmin)
        return FactoredRational(total, lcm, tmin)

    # -- equality by cross-multiplication ------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, BivariatePolynomial, SignedMonomial)):
            other = FactoredRational(_coerce_poly(other))
        if not isinstance(other, FactoredRational):
            return NotImplemented
        if (
            self.tshift == other.tshift
            and self.den == other.den
            and self.num == other.num
        ):
            return True
        left = self.num * expand_factors(other.den)
        right = other.num * expand_factors(self.den)
        d = self.tshift - other.tshift
        if d > 0:
            left = left.shift(dt=d)
        elif d < 0:
            right = right.shift(dt=-d)
        return left == right

    __hash__ = None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # -- normalization -------------------------------------------------------

    def reduced(self, constants_only: bool = False) -> "FactoredRational":
        """Cancel denominator factors that exactly divide the numerator.

        Factors with b == 0 are attempted first (the zeta sums must clear all
        of them), then the T-positive factors; finally the numerator's
        T-content is folded into tshift.  With constants_only the T-positive
        factors are left untouched even when they would cancel, which is what
        keeps the zeta functions in their conventional displayed shape.
        """
        if self.num.is_zero():
            return FactoredRational.zero()
        num = self.num
        den = dict(self.den)
        for (a, b) in sorted(den, key=lambda k: (k[1], k[0])):
            if constants_only and b != 0:
                continue
            m = den[(a, b)]
            while m:
                quot = divide_out_factor(num, a, b)
                if quot is None:
                    break
                num = quot
                m -= 1
            if m:
                den[(a, b)] = m
            else:
                del den[(a, b)]
        tshift = self.tshift
        tv = num.t_valuation()
        if tv > 0:
            num = num.shift(dt=-tv)
            tshift += tv
        out = FactoredRational.__new__(FactoredRational)
        out.num, out.den, out.tshift = num, den, tshift
        return out

    # -- substitutions -------------------------------------------------------

    def subs_inverse(self) -> "FactoredRational":
        """Joint substitution q -> q^-1, T -> T^-1, renormalized to standard form."""
        if self.num.is_zero():
            return FactoredRational.zero()
        deg = self.num.t_degree()
        num = BivariatePolynomial(
            {(-eq, deg - et): c for (eq, et), c in self.num.terms.items()}
        )
        tshift = -self.tshift - deg
        sign = 1
        dq = 0
        for (a, b), m in self.den.items():
            # 1/(1 - q^-a T^-b) = -q^a T^b / (1 - q^a T^b)
            if m % 2:
                sign = -sign
            dq += a * m
            tshift += b * m
        num = num.scaled(sign).shift(dq=dq)
        return FactoredRational(num, self.den, tshift)

    def subs_q_one(self) -> "FactoredRational":
        """Substitution q -> 1; denominator factors constant in T must be gone."""
        for (a, b) in self.den:
            if b == 0:
                raise SubstitutionSingular(
                    "factor 1 - q^%d vanishes under q -> 1; reduce first" % a
                )
        den = {}
        for (a, b), m in self.den.items():
            den[(0, b)] = den.get((0, b), 0) + m
        return FactoredRational(self.num.subs_q_one(), den, self.tshift)

    def subs_T_monomial(self, e_q: int, e_T: int) -> "FactoredRational":
        """Substitution T -> q^e_q T^e_T with e_T >= 1."""
        if e_T < 1:
            raise ValueError("T must map to a monomial with positive T-exponent")
        num = BivariatePolynomial(
            {
                (eq + e_q * et, e_T * et): c
                for (eq, et), c in self.num.terms.items()
            }
        )
        den = {}
        for (a, b), m in self.den.items():
            k = (a + e_q * b, e_T * b)
            den[k] = den.get(k, 0) + m
        num = num.shift(dq=e_q * self.tshift)
        return FactoredRational(num, den, e_T * self.tshift)

    # -- series -------------------------------------------------------------

    def series_in_T(self, order: int) -> list[BivariatePolynomial]:
        """Coefficients of T^0 .. T^order as Laurent polynomials in q."""
        f = self.reduced()
        if f.num.is_zero():
            return [BivariatePolynomial.zero()] * (order + 1)
        if f.tshift < 0:
            raise NotRegularAtZero("pole of order %d at T = 0" % -f.tshift)
        for (a, b) in f.den:
            if b == 0:
                raise NotRegularAtZero(
                    "denominator factor 1 - q^%d does not divide the numerator" % a
                )
        coeffs: list[dict] = [{} for _ in range(order + 1)]
        for (eq, et), c in f.num.terms.items():
            k = et + f.tshift
            if k <= order:
                coeffs[k][eq] = coeffs[k].get(eq, 0) + c
        for (a, b), m in sorted(f.den.items()):
            for _ in range(m):
                # divide the series by (1 - q^a T^b): y_k = x_k + q^a y_{k-b}
                for k in range(b, order + 1):
                    prev = coeffs[k - b]
                    if prev:
                        cur = coeffs[k]
                        for eq, c in prev.items():
                            s = cur.get(eq + a, 0) + c
                            if s:
                                cur[eq + a] = s
                            else:
                                del cur[eq + a]
        return [
            BivariatePolynomial({(eq, 0): c for eq, c in d.items()}) for d in coeffs
        ]

    def __repr__(self):
        return "FactoredRational(%s)" % format_plain(self)


def _insert_factor(
    den: dict[FactorKey, int],
    a: int,
    b: int,
    mult: int,
    num: BivariatePolynomial,
    tshift: int,
) -> tuple[BivariatePolynomial, int]:
    """Add (1 - q^a T^b)^mult to den in normalized form; returns adjusted (num, tshift)."""
    if (a, b) == (0, 0):
        raise ValueError("denominator factor 1 - q^0 T^0 = 0")
    if b < 0:
        # 1/(1 - q^a T^b) = -q^-a T^-b / (1 - q^-a T^-b)
        sign = -1 if mult % 2 else 1
        num = num.scaled(sign).shift(dq=-a * mult)
        tshift += -b * mult
        a, b = -a, -b
    elif b == 0 and a < 0:
        # 1/(1 - q^a) = -q^-a / (1 - q^-a)
        sign = -1 if mult % 2 else 1
        num = num.scaled(sign).shift(dq=-a * mult)
        a = -a
    den[(a, b)] = den.get((a, b), 0) + mult
    return num, tshift


def expand_factors(den: Mapping[FactorKey, int]) -> BivariatePolynomial:
    """Expanded product of (1 - q^a T^b)^mult."""
    out = BivariatePolynomial.one()
    for (a, b), m in sorted(den.items()):
        f = BivariatePolynomial.one_minus(a, b)
        for _ in range(m):
            out = out * f
    return out


# ---------------------------------------------------------------------------
# q-Pochhammer symbols and Gaussian binomials
# ---------------------------------------------------------------------------


def qpochhammer(a: SignedMonomial, step_exponent: int, m: int) -> FactoredRational:
    """(a; q^step)_m = prod_{i=0}^{m-1} (1 - a q^{step*i}), reciprocal for m < 0."""
    if m >= 0:
        num = BivariatePolynomial.one()
        for i in range(m):
            num = num * BivariatePolynomial(
                {
                    (0, 0): 1,
                    (a.e_q + step_exponent * i, a.e_T): -a.sign,
                }
            )
        return FactoredRational(num)
    # (a;q)_m = ((a q^m; q)_{-m})^-1
    if a.sign == 1:
        factors = [
            (a.e_q + step_exponent * (m + i), a.e_T) for i in range(-m)
        ]
        return FactoredRational.one_over(factors)
    # negative monomial: 1/(1 + u) = (1 - u)/(1 - u^2)
    num = BivariatePolynomial.one()
    den: dict[FactorKey, int] = {}
    for i in range(-m):
        eq = a.e_q + step_exponent * (m + i)
        num = num * BivariatePolynomial.one_minus(eq, a.e_T)
        k = (2 * eq, 2 * a.e_T)
        den[k] = den.get(k, 0) + 1
    return FactoredRational(num, den)


def qpochhammer_factors(
    a: SignedMonomial, step_exponent: int, m: int
) -> list[FactorKey]:
    """Factor list [(a_i, b)] with (a; q^step)_m = prod (1 - q^{a_i} T^b); m >= 0."""
    if m < 0 or a.sign != 1:
        raise ValueError("factor list needs m >= 0 and a positive monomial")
    return [(a.e_q + step_exponent * i, a.e_T) for i in range(m)]


@lru_cache(maxsize=None)
def gauss_binom(n: int, r: int, y_exponent: int) -> BivariatePolynomial:
    """Gaussian binomial coefficient binom(n, r)_Y at Y = q^y_exponent.

    Built from the Pascal recurrence
    binom(n,r) = binom(n-1,r) + Y^{n-r} binom(n-1,r-1), which keeps every
    intermediate value a Laurent polynomial.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if r < 0 or r > n:
        return BivariatePolynomial.zero()
    if r == 0 or r == n:
        return BivariatePolynomial.one()
    return gauss_binom(n - 1, r, y_exponent) + gauss_binom(
        n - 1, r - 1, y_exponent
    ).shift(dq=y_exponent * (n - r))


def gauss_multinom(n: int, I: Iterable[int], y_exponent: int) -> BivariatePolynomial:
    """binom(n, I)_Y = binom(n,i_l) binom(i_l,i_{l-1}) ... for I = {i_1<...<i_l}."""
    idx = sorted(set(I))
    if any(i < 0 or i > n for i in idx):
        raise ValueError("subset must lie in {0,...,n}")
    out = BivariatePolynomial.one()
    upper = n
    for i in reversed(idx):
        out = out * gauss_binom(upper, i, y_exponent)
        upper = i
    return out


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def poly_to_json(p: BivariatePolynomial) -> list[list]:
    return [[str(c), eq, et] for (c, eq, et) in p.sorted_terms()]


def poly_from_json(data: Sequence[Sequence]) -> BivariatePolynomial:
    return BivariatePolynomial({(int(eq), int(et)): int(c) for c, eq, et in data})


def rational_to_json(f: FactoredRational) -> dict:
    return {
        "num": poly_to_json(f.num),
        "unit": [1, 0, f.tshift],
        "den": sorted([a, b, m] for (a, b), m in f.den.items()),
    }


def rational_from_json(data: Mapping) -> FactoredRational:
    sign, e_q, e_T = data["unit"]
    num = poly_from_json(data["num"]).scaled(int(sign)).shift(dq=int(e_q))
    return FactoredRational(
        num,
        {(int(a), int(b)): int(m) for a, b, m in data["den"]},
        int(e_T),
    )


def rational_dumps(f: FactoredRational) -> str:
    return json.dumps(rational_to_json(f), separators=(",", ":"), sort_keys=True)


def rational_loads(s: str) -> FactoredRational:
    return rational_from_json(json.loads(s))


# ---------------------------------------------------------------------------
# textual rendering (plain and LaTeX-like, deterministic)
# ---------------------------------------------------------------------------


def _format_monomial(
    c: int, eq: int, et: int, latex: bool = False, qvar: str = "q", tvar: str = "T"
) -> str:
    parts = []
    if eq:
        parts.append(
            qvar if eq == 1 else ("%s^{%d}" % (qvar, eq) if latex else "%s^%d" % (qvar, eq))
        )
    if et:
        parts.append(
            tvar if et == 1 else ("%s^{%d}" % (tvar, et) if latex else "%s^%d" % (tvar, et))
        )
    body = (" " if not latex else "").join(parts)
    if not parts:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return "%d%s%s" % (c, "" if latex else " ", body)


def format_poly(
    p: BivariatePolynomial, latex: bool = False, qvar: str = "q", tvar: str = "T"
) -> str:
    if p.is_zero():
        return "0"
    out = []
    for c, eq, et in p.sorted_terms():
        s = _format_monomial(c, eq, et, latex, qvar, tvar)
        if out:
            if s.startswith("-"):
                out.append(" - " + s[1:])
            else:
                out.append(" + " + s)
        else:
            out.append(s)
    return "".join(out)


def _format_factor(a: int, b: int, m: int, latex: bool = False) -> str:
    inner = "1 - " + _format_monomial(1, a, b, latex)
    s = "(%s)" % inner
    if m > 1:
        s += "^{%d}" % m if latex else "^%d" % m
    return s


def sorted_factors(den: Mapping[FactorKey, int]) -> list[tuple[int, int, int]]:
    """(a, b, mult) ordered by ascending b, then ascending a."""
    return [(a, b, den[(a, b)]) for (b, a) in sorted((b, a) for (a, b) in den)]


def format_plain(f: FactoredRational) -> str:
    num = format_poly(f.num)
    if f.tshift:
        tpow = "T" if f.tshift == 1 else "T^%d" % f.tshift
        num = "%s (%s)" % (tpow, num) if f.num.terms != {(0, 0): 1} else tpow
    if not f.den:
        return num
    den = "".join(_format_factor(a, b, m) for a, b, m in sorted_factors(f.den))
    return "(%s) / (%s)" % (num, den)


def format_latex(f: FactoredRational) -> str:
    num = format_poly(f.num, latex=True)
    if f.tshift:
        tpow = "T" if f.tshift == 1 else "T^{%d}" % f.tshift
        num = "%s(%s)" % (tpow, num) if f.num.terms != {(0, 0): 1} else tpow
    if not f.den:
        return num
    den = "".join(_format_factor(a, b, m, latex=True) for a, b, m in sorted_factors(f.den))
    return "\\frac{%s}{%s}" % (num, den)
