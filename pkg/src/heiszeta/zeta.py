"""The subalgebra zeta functions of the higher Heisenberg Lie algebras.

Three closed forms of the same rational function (the 2^n-term augmented
Igusa sum, the (n+1)-term compact sum, and the hyperoctahedral form), the
ideal and graded variants, series/Dirichlet-coefficient extraction, the
functional equation and pole analysis, the q -> 1 reduced zeta functions,
and the global Euler-factor polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .combinat import (
    Partition,
    brenti_B,
    eulerian_A,
    gen_W,
    partitions_up_to,
    signed_perms,
    w_partial_sums,
    weight_C,
)
from .counts import birkhoff_alpha, nprime_closed
from .errors import FunctionalEquationFailure, IdentityMismatch, SizeGuard
from .exactalg import (
    BivariatePolynomial,
    FactoredRational,
    SignedMonomial,
    divide_out_factor,
    mono,
)
from .igusa import igusa_A, igusa_B

IGUSA_SUM_GUARD = 5
COMPACT_GUARD = 12
HYPEROCT_GUARD = 6
REDUCED_GUARD = 8
GLOBAL_GUARD = 6
CN_GUARD = 20


def c_exponents(n: int) -> list[int]:
    """c_i = (n(n+5) - i(i+1)) / 2 for i in [n]_0."""
    return [(n * (n + 5) - i * (i + 1)) // 2 for i in range(n + 1)]


def c_exponents_graded(n: int) -> list[int]:
    """c_i' = binom(n+1, 2) - binom(i+1, 2); equals c_i - 2n."""
    top = n * (n + 1) // 2
    return [top - i * (i + 1) // 2 for i in range(n + 1)]


def special_exponent(n: int, r: int) -> int:
    """a_{n,r} = 2n + r(2n+1-r)/2, the q-exponent of the T^{n+1} factor."""
    return 2 * n + r * (2 * n + 1 - r) // 2


# ---------------------------------------------------------------------------
# the three closed forms
# ---------------------------------------------------------------------------


def igusa_args(n: int, w: Sequence[int]) -> list[SignedMonomial]:
    """Slots (X_0, X_1, ..., X_n) for the w-indexed augmented Igusa summand.

    X_k = q^{(partial sum) + 2k(n-k)} T^k and X_0 = q^{2n} T * X_n.
    """
    ps = w_partial_sums(w)
    X = [mono(ps[k - 1] + 2 * k * (n - k), k) for k in range(1, n + 1)]
    return [mono(2 * n, 1) * X[-1]] + X


@lru_cache(maxsize=None)
def zeta_igusa_sum(n: int, max_n: int = IGUSA_SUM_GUARD) -> FactoredRational:
    """2^n-term form: sum over w of C(w) times an augmented Igusa function."""
    if n > max_n:
        raise SizeGuard("zeta_igusa_sum guard: n = %d exceeds %d" % (n, max_n))
    terms = [
        weight_C(w) * igusa_A(n, "augmented", -2, igusa_args(n, w))
        for w in gen_W(n)
    ]
    return FactoredRational.sum(terms).reduced()


@lru_cache(maxsize=None)
def zeta_compact(n: int, max_n: int = COMPACT_GUARD) -> FactoredRational:
    """(n+1)-term compact form, the reference implementation.

    Summand r: special factor (1 - q^{a_{n,r}} T^{n+1}) times
    (-q)^r (1 - q^{2n-2r+1}) (q^2;q^2)_n over
    (q;q)_{2n-r+1} (q;q)_r (q^r T; q^2)_{n-r} (q^{2n-r} T; q)_r.
    """
    if n > max_n:
        raise SizeGuard("zeta_compact guard: n = %d exceeds %d" % (n, max_n))
    terms = []
    for r in range(n + 1):
        num = BivariatePolynomial.monomial((-1) ** r, r, 0)
        num = num * BivariatePolynomial.one_minus(2 * n - 2 * r + 1, 0)
        for i in range(n):
            num = num * BivariatePolynomial.one_minus(2 * i + 2, 0)
        den: dict = {}

        def bump(key, den=den):
            den[key] = den.get(key, 0) + 1

        bump((special_exponent(n, r), n + 1))
        for i in range(2 * n - r + 1):
            bump((1 + i, 0))
        for i in range(r):
            bump((1 + i, 0))
        for i in range(n - r):
            bump((r + 2 * i, 1))
        for i in range(r):
            bump((2 * n - r + i, 1))
        terms.append(FactoredRational(num, den))
    return FactoredRational.sum(terms).reduced(constants_only=True)


def hyperoctahedral_numerator(n: int, c: Sequence[int]) -> BivariatePolynomial:
    """Sum over B_n of (-1)^neg q^{C(g)} T^{(n+1) des_B(g) + neg(g)}."""
    terms: dict = {}
    for g in signed_perms(n):
        key = (g.stat_C(c), g.stat_D())
        coeff = -1 if g.neg() % 2 else 1
        terms[key] = terms.get(key, 0) + coeff
    return BivariatePolynomial(terms)


@lru_cache(maxsize=None)
def zeta_hyperoctahedral(n: int, max_n: int = HYPEROCT_GUARD) -> FactoredRational:
    """Hyperoctahedral form: type-B Igusa specialization over (T;q)_{2n}.

    Built from the type-B Igusa function at Y = q^-1, Z = -q^n T and slots
    q^{c_i} T^{n+1}; the numerator is cross-checked against the direct
    statistic sum over B_n.
    """
    if n > max_n:
        raise SizeGuard("zeta_hyperoctahedral guard: n = %d exceeds %d" % (n, max_n))
    c = c_exponents(n)
    X = [mono(ci, n + 1) for ci in c]
    f = igusa_B(n, -1, mono(n, 1, -1), X, max_n=max_n)
    if f.num != hyperoctahedral_numerator(n, c):
        raise IdentityMismatch("type-B numerator disagrees with statistic sum")
    for i in range(2 * n):
        f = f.divided_by_factor(i, 1)
    return f


def zeta_ideal(n: int) -> FactoredRational:
    """Ideal zeta function 1 / ((T;q)_{2n} (1 - q^{2n} T^{2n+1})).

    Counts finite-index two-sided ideals.  The special factor sees the
    whole rank-(2n+1) lattice scaled by the uniformizer: index q^{2n+1}
    with q^{2n} central lifts per step.  Verified against brute-force
    ideal enumeration (for n = 1 this is the classical
    zeta(s) zeta(s-1) zeta(3s-2) local factor).
    """
    den = {(i, 1): 1 for i in range(2 * n)}
    den[(2 * n, 2 * n + 1)] = 1
    return FactoredRational.one_over(den)


def zeta_graded(n: int, max_n: int = HYPEROCT_GUARD) -> FactoredRational:
    """EXPERIMENTAL graded variant: c_i replaced by c_i' everywhere.

    The substitution is applied both in the Igusa slots and inside the
    statistic C; no external cross-check is asserted.
    """
    if n > max_n:
        raise SizeGuard("zeta_graded guard: n = %d exceeds %d" % (n, max_n))
    c = c_exponents_graded(n)
    num = hyperoctahedral_numerator(n, c)
    den = {(i, 1): 1 for i in range(2 * n)}
    for cm in c:
        den[(cm, n + 1)] = den.get((cm, n + 1), 0) + 1
    return FactoredRational(num, den)


# ---------------------------------------------------------------------------
# the w-indexed building block and the series oracle
# ---------------------------------------------------------------------------


def Z_of_w(w: Sequence[int], n: int) -> FactoredRational:
    """Analytic contribution of one w: truncated Igusa over (1-X_0)(1-X_n)."""
    X = igusa_args(n, w)
    f = igusa_A(n, "truncated", -2, X[1:n])
    f = f.divided_by_factor(X[0].e_q, X[0].e_T)
    return f.divided_by_factor(X[n].e_q, X[n].e_T)


def Z_of_w_partition_sum(
    w: Sequence[int], n: int, max_size: int
) -> FactoredRational:
    """Partition-sum form of Z(w), truncated to |mu| <= max_size.

    Exact for series coefficients of T^0 .. T^{max_size}: partitions of
    larger size only contribute higher T-orders.
    """
    total = BivariatePolynomial.zero()
    for mu in partitions_up_to(max_size, n):
        padded = mu.padded(n)
        dot = sum(wi * mi for wi, mi in zip(w, padded))
        alpha = birkhoff_alpha(mu, n, base_exponent=2)
        last = padded[-1]
        factor = BivariatePolynomial.one_minus(2 * n * (last + 1), last + 1)
        total = total + alpha.shift(dq=dot, dt=mu.size()) * factor
    return FactoredRational(total, {(2 * n, 1): 1})


def zeta_series_oracle(n: int, truncation: int) -> list[BivariatePolynomial]:
    """T-series through T^truncation from the partition-sum formula.

    Sums N'(mu) alpha_n(mu; q^2) T^{|mu|} (1 - q^{(mu_n+1) 2n} T^{mu_n+1})
    over |mu| <= truncation, over (1 - q^{2n} T), then expands.
    """
    total = BivariatePolynomial.zero()
    for mu in partitions_up_to(truncation, n):
        padded = mu.padded(n)
        alpha = nprime_closed(padded) * birkhoff_alpha(mu, n, base_exponent=2)
        last = padded[-1]
        factor = BivariatePolynomial.one_minus(2 * n * (last + 1), last + 1)
        total = total + alpha.shift(dt=mu.size()) * factor
    f = FactoredRational(total, {(2 * n, 1): 1})
    return f.series_in_T(truncation)


def dirichlet_coeffs(n: int, p: int, order: int) -> list[int]:
    """Subalgebra counts a_{p^i} for i <= order, from the compact form."""
    coeffs = zeta_compact(n).series_in_T(order)
    out = []
    for c in coeffs:
        vals = c.eval_q(p)
        if any(et != 0 for et in vals):
            raise AssertionError("series coefficient not constant in T")
        out.append(vals.get(0, 0))
    return out


# ---------------------------------------------------------------------------
# functional equation and poles
# ---------------------------------------------------------------------------


def funeq_check(n: int) -> dict:
    """Verify the local functional equation.

    Substituting q -> q^-1 (hence T = q^-s -> T^-1) multiplies the zeta
    function by -q^{binom(2n+1,2) - (2n+1)s}, i.e. by
    -q^{binom(2n+1,2)} T^{2n+1}.  Raises FunctionalEquationFailure.
    """
    f = zeta_compact(n)
    lhs = f.subs_inverse()
    binom = (2 * n + 1) * n  # binom(2n+1, 2)
    rhs = FactoredRational(
        f.num.scaled(-1).shift(dq=binom), f.den, f.tshift + (2 * n + 1)
    )
    if lhs != rhs:
        raise FunctionalEquationFailure("functional equation failed at n = %d" % n)
    return {"n": n, "factor": "-q^%d T^%d" % (binom, 2 * n + 1), "status": "pass"}


@dataclass
class PoleReport:
    """Pole locations and orders of the local zeta function at tested primes."""

    n: int
    tested_at_q: list[int]
    integral_poles: list[tuple[int, int]] = field(default_factory=list)
    fractional_poles: list[tuple[Fraction, int]] = field(default_factory=list)
    double_poles: list[Fraction] = field(default_factory=list)
    discrepancies: list[str] = field(default_factory=list)

    def order_at(self, s) -> int:
        s = Fraction(s)
        for loc, order in self.integral_poles:
            if loc == s:
                return order
        for loc, order in self.fractional_poles:
            if loc == s:
                return order
        return 0


def pole_candidates(n: int) -> tuple[list[int], list[Fraction]]:
    """Integral candidates [2n-1]_0 and fractional candidates a_{n,r}/(n+1)."""
    integral = list(range(2 * n))
    fractional = sorted(
        {Fraction(special_exponent(n, r), n + 1) for r in range(n + 1)}
    )
    return integral, fractional


def _t_poly_at_prime(num: BivariatePolynomial, p: int) -> dict[int, int]:
    return num.eval_q(p)


def _vanishing_order(coeffs: dict[int, int], p: int, c: int, d: int) -> int:
    """Largest k with (1 - p^c T^d)^k dividing the integer polynomial."""
    order = 0
    cur = dict(coeffs)
    scale = p**c
    while cur:
        deg = max(cur)
        quot: dict[int, int] = {}
        for k in range(deg + 1):
            v = cur.get(k, 0) + scale * quot.get(k - d, 0)
            if v:
                quot[k] = v
        if any(quot.get(k, 0) for k in range(max(deg - d, -1) + 1, deg + 1)):
            return order
        cur = {k: v for k, v in quot.items() if k <= deg - d}
        order += 1
    return order


def pole_analysis(n: int, test_primes: Sequence[int] = (2, 3, 5)) -> PoleReport:
    """Exact pole orders at specialized primes q = p.

    Every denominator factor of the reduced compact form must sit over a
    candidate location; the order at s = c/d is the matching factor
    multiplicity minus the numerator's vanishing order at T = p^{-c/d}.
    """
    f = zeta_compact(n)
    integral, fractional = pole_candidates(n)
    candidates = sorted({Fraction(s) for s in integral} | set(fractional))
    for (a, b) in f.den:
        if b == 0:
            raise AssertionError("unreduced constant factor in denominator")
        if Fraction(a, b) not in candidates:
            raise AssertionError(
                "denominator factor (1 - q^%d T^%d) off the candidate list" % (a, b)
            )
    report = PoleReport(n=n, tested_at_q=list(test_primes))
    per_location: dict[Fraction, dict[int, int]] = {}
    for p in test_primes:
        coeffs = _t_poly_at_prime(f.num, p)
        for s in candidates:
            mult = sum(
                m for (a, b), m in f.den.items() if Fraction(a, b) == s
            )
            if mult == 0:
                continue
            van = _vanishing_order(coeffs, p, s.numerator, s.denominator)
            per_location.setdefault(s, {})[p] = mult - van
    for s in sorted(per_location):
        orders = per_location[s]
        vals = set(orders.values())
        if len(vals) > 1:
            report.discrepancies.append(
                "order at s = %s varies with q: %s" % (s, orders)
            )
        order = max(vals)
        if order <= 0:
            continue
        if s.denominator == 1:
            report.integral_poles.append((int(s), order))
        else:
            report.fractional_poles.append((s, order))
        if order >= 2:
            report.double_poles.append(s)
    return report


# ---------------------------------------------------------------------------
# reduced zeta functions (q -> 1)
# ---------------------------------------------------------------------------


def _brenti_substituted(n: int) -> BivariatePolynomial:
    """B_n(T^{n+1}, -T) as a polynomial in T."""
    terms: dict = {}
    for (i, j), coeff in brenti_B(n).terms.items():
        e = (n + 1) * i + j
        c = coeff * ((-1) ** j)
        key = (0, e)
        terms[key] = terms.get(key, 0) + c
    return BivariatePolynomial(terms)


def reduced_zeta(n: int, max_n: int = REDUCED_GUARD) -> FactoredRational:
    """The q -> 1 degeneration, normalized over (1-T)^n (1-T^{n+1})^{n+1}.

    Computed from the type-B Eulerian polynomial and checked against the
    classical Eulerian-sum form; self-reciprocity and the lattice-point
    oracle are exercised in the test suite.
    """
    if n > max_n:
        raise SizeGuard("reduced_zeta guard: n = %d exceeds %d" % (n, max_n))
    num = _brenti_substituted(n)
    brenti_form = FactoredRational(num, {(0, 1): 2 * n, (0, n + 1): n + 1})
    eulerian = FactoredRational.sum(
        [
            FactoredRational(
                BivariatePolynomial(
                    {(0, (n + 1) * k): c * math.comb(n, d)
                     for k, c in enumerate(eulerian_A(d)) if c}
                ),
                {(0, 1): 2 * n - d, (0, n + 1): d + 1},
            )
            for d in range(n + 1)
        ]
    )
    if brenti_form != eulerian:
        raise IdentityMismatch("Brenti and Eulerian forms disagree at n = %d" % n)
    P = num
    for _ in range(n):
        quot = divide_out_factor(P, 0, 1)
        if quot is None:
            raise IdentityMismatch("(1-T)^%d does not divide the numerator" % n)
        P = quot
    return FactoredRational(P, {(0, 1): n, (0, n + 1): n + 1})


def reduced_cone_series(n: int, order: int) -> list[int]:
    """Lattice-point transform oracle: counts of (e_0, ..., e_{2n}) with
    e_0 <= e_{2i-1} + e_{2i} for all i, graded by coordinate sum."""
    out = []
    for m in range(order + 1):
        total = 0
        for e0 in range(m + 1):
            total += _pair_count(n, m - e0, e0)
        out.append(total)
    return out


@lru_cache(maxsize=None)
def _pair_count(pairs: int, rem: int, floor: int) -> int:
    # number of (s_1..s_pairs), s_i >= floor, sum rem, weighted by prod (s_i + 1)
    if pairs == 0:
        return 1 if rem == 0 else 0
    total = 0
    for s in range(floor, rem + 1):
        total += (s + 1) * _pair_count(pairs - 1, rem - s, floor)
    return total


def reduced_c(n: int, max_n: int = CN_GUARD) -> Fraction:
    """Leading coefficient c_n = lim (1-T)^{2n+1} Z_red(T) at T = 1.

    Evaluated three ways: the binomial sum, its telescoped complement, and
    P_n(1) / (n+1)^{n+1} from the normalized form; all must agree.
    """
    if n > max_n:
        raise SizeGuard("reduced_c guard: n = %d exceeds %d" % (n, max_n))
    direct = sum(
        Fraction(math.comb(n, k) * math.factorial(k), (n + 1) ** (k + 1))
        for k in range(n + 1)
    )
    telescoped = 1 - n * sum(
        Fraction(math.comb(n - 1, k - 1) * math.factorial(k), (n + 1) ** (k + 1))
        for k in range(1, n + 1)
    )
    if direct != telescoped:
        raise IdentityMismatch("c_n formulas disagree at n = %d" % n)
    if n <= REDUCED_GUARD:
        P = reduced_zeta(n).num
        p_one = sum(P.terms.values())
        if direct != Fraction(p_one, (n + 1) ** (n + 1)):
            raise IdentityMismatch("c_n limit disagrees at n = %d" % n)
    if not 0 < direct < 1:
        raise IdentityMismatch("c_n out of (0, 1)")
    return direct


# ---------------------------------------------------------------------------
# global Euler factor
# ---------------------------------------------------------------------------


def global_factor(n: int, max_n: int = GLOBAL_GUARD) -> BivariatePolynomial:
    """N_n(X, Y) = sum over B_n of (-1)^neg X^{C(g)} Y^{D(g)}.

    Returned with (e_q, e_T) read as (X-, Y-) exponents; identical to the
    compact-form numerator after T^{(n+1) des + neg} is regrouped by D.
    """
    if n > max_n:
        raise SizeGuard("global_factor guard: n = %d exceeds %d" % (n, max_n))
    return hyperoctahedral_numerator(n, c_exponents(n))


def global_factor_eval(n: int) -> BivariatePolynomial:
    """N_n(p, p^{-2n}) as an exact Laurent polynomial in p (variable q)."""
    out: dict = {}
    for (C, D), coeff in global_factor(n).terms.items():
        key = (C - 2 * n * D, 0)
        s = out.get(key, 0) + coeff
        if s:
            out[key] = s
        else:
            del out[key]
    return BivariatePolynomial(out)


def lemma_global_bound(n: int) -> tuple[int, tuple[int, ...]]:
    """Exhaustive maximum of C(g) - 2n D(g) over g != 1, with its argmax.

    The maximum equals -(3n^2 - n + 4)/2 and is attained uniquely (at the
    sign flip for n = 1, at the first transposition for n >= 2).
    """
    best = None
    argmax = []
    c = c_exponents(n)
    for g in signed_perms(n):
        if g.length() == 0:
            continue
        val = g.stat_C(c) - 2 * n * g.stat_D()
        if best is None or val > best:
            best, argmax = val, [g.window]
        elif val == best:
            argmax.append(g.window)
    if len(argmax) != 1:
        raise IdentityMismatch("maximizer of C - 2nD not unique at n = %d" % n)
    return best, argmax[0]


def _primes_up_to(bound: int) -> list[int]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i in range(bound + 1) if sieve[i]]


def _euler_zeta(s: int, primes: Sequence[int]) -> float:
    out = 1.0
    for p in primes:
        out /= 1.0 - float(p) ** (-s)
    return out


def rn_numeric(n: int, prime_bound: int = 1000, max_n: int = GLOBAL_GUARD) -> dict:
    """Truncated numeric approximation of the residue factor R_n (n >= 2).

    Product over primes <= prime_bound of N_n(p, p^{-2n}), times truncated
    Euler products for the Riemann zeta values at the integer arguments
    dictated by the denominator.  APPROXIMATE by construction; the report
    echoes the truncation parameters.
    """
    if n < 2:
        raise ValueError("n >= 2 required; n = 1 has a double pole")
    if n > max_n:
        raise SizeGuard("rn_numeric guard: n = %d exceeds %d" % (n, max_n))
    primes = _primes_up_to(prime_bound)
    ev = global_factor_eval(n)
    nprod = 1.0
    for p in primes:
        val = 0.0
        for (e, _), coeff in ev.terms.items():
            val += coeff * float(p) ** e
        nprod *= val
    zargs = [2 * n - i for i in range(2 * n - 1)]
    zargs += [
        2 * n * n - n * (n + 1) // 2 + i * (i + 1) // 2 for i in range(n + 1)
    ]
    value = nprod
    for s in zargs:
        value *= _euler_zeta(s, primes)
    return {
        "n": n,
        "value": value,
        "prime_bound": prime_bound,
        "zeta_arguments": sorted(zargs),
        "label": "APPROXIMATE",
    }
