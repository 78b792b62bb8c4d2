"""Igusa-type generating functions and the fibre-sum machinery.

Type-A Igusa functions in truncated, plain and augmented form (subset
expansion with Gaussian multinomial weights, plus the descent form over
S_n), their type-B analogues over the hyperoctahedral group (descent form,
subset expansion, residue factorization), and the fibre apparatus used to
collapse the 2^n-term zeta formula to n+1 terms: coefficient families
E_{k,r} / B_{k,r}^(t), fibre sums over the terminal-entry fibres of the
w-vectors, and their coset model on S_n / S_k.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .combinat import (
    coset_reps,
    coset_stats,
    descent_set,
    fibre_W,
    inversions,
    perms,
    signed_perms,
    weight_C,
)
from .errors import ArityMismatch, IdentityMismatch, SizeGuard
from .exactalg import (
    BivariatePolynomial,
    FactoredRational,
    SignedMonomial,
    gauss_multinom,
    mono,
    qpochhammer,
)

IGUSA_A_DESCENT_GUARD = 8
IGUSA_B_GUARD = 6
FIBRE_K_GUARD = 8

_VARIANT_INDEX = {
    "truncated": (1, -1),  # slots X_1 .. X_{n-1}
    "plain": (1, 0),  # slots X_1 .. X_n
    "augmented": (0, 0),  # slots X_0 .. X_n
}


def _check_positive(X: Sequence[SignedMonomial]):
    for x in X:
        if x.sign != 1:
            raise ValueError("Igusa slot arguments must be positive monomials")


def igusa_A(
    n: int, variant: str, y_exponent: int, X: Sequence[SignedMonomial]
) -> FactoredRational:
    """Type-A Igusa function of degree n.

    Subset sum of binom(n, I)_Y prod_{i in I} X_i / (1 - X_i); the variant
    selects the index set: truncated I in [n-1], plain I in [n], augmented
    I in [n]_0.  Slots are passed in index order.
    """
    if variant not in _VARIANT_INDEX:
        raise ValueError("unknown variant %r" % variant)
    lo, hi_off = _VARIANT_INDEX[variant]
    indices = list(range(lo, n + 1 + hi_off))
    if len(X) != len(indices):
        raise ArityMismatch(
            "variant %s of degree %d needs %d slots, got %d"
            % (variant, n, len(indices), len(X))
        )
    _check_positive(X)
    if n == 0:
        if variant == "plain":
            return FactoredRational(1)
        if variant == "augmented":
            return FactoredRational(1).divided_by_factor(X[0].e_q, X[0].e_T)
        raise ArityMismatch("truncated variant needs n >= 1")
    slot = dict(zip(indices, X))
    num = BivariatePolynomial.zero()
    for mask in range(1 << len(indices)):
        I = [indices[i] for i in range(len(indices)) if mask >> i & 1]
        term = gauss_multinom(n, I, y_exponent)
        for i in indices:
            if i in I:
                term = term * slot[i].to_poly()
            else:
                term = term * BivariatePolynomial.one_minus(slot[i].e_q, slot[i].e_T)
        num = num + term
    out = FactoredRational(num)
    for x in X:
        out = out.divided_by_factor(x.e_q, x.e_T)
    return out


def igusa_A_descent(
    n: int, y_exponent: int, X: Sequence[SignedMonomial]
) -> FactoredRational:
    """Augmented type-A Igusa function via its descent form over S_n.

    Numerator sum of Y^{l(g)} prod_{j in Des(g)} X_j; asserted equal to the
    subset-expansion form.
    """
    if n > IGUSA_A_DESCENT_GUARD:
        raise SizeGuard("igusa_A_descent guard: n = %d" % n)
    if len(X) != n + 1:
        raise ArityMismatch("need n + 1 slots X_0 .. X_n")
    _check_positive(X)
    num = BivariatePolynomial.zero()
    for g in perms(n):
        term = BivariatePolynomial.monomial(1, y_exponent * inversions(g), 0)
        for j in descent_set(g):
            term = term * X[j].to_poly()
        num = num + term
    out = FactoredRational(num)
    for x in X:
        out = out.divided_by_factor(x.e_q, x.e_T)
    if out != igusa_A(n, "augmented", y_exponent, X):
        raise IdentityMismatch("descent form disagrees with subset expansion")
    return out


# ---------------------------------------------------------------------------
# type-B Igusa functions
# ---------------------------------------------------------------------------


def igusa_B(
    n: int,
    y_exponent: int,
    Z: SignedMonomial,
    X: Sequence[SignedMonomial],
    variant: str = "full",
    max_n: int = IGUSA_B_GUARD,
) -> FactoredRational:
    """Type-B Igusa function: numerator over B_n with Y^l Z^neg prod X_i.

    The full variant takes slots X_0 .. X_n and denominator over all of
    them; the truncated variant takes X_0 .. X_{n-1} (the slot X_n never
    occurs in the numerator, so truncation just drops its denominator
    factor).
    """
    if n > max_n:
        raise SizeGuard("igusa_B guard: n = %d exceeds %d" % (n, max_n))
    want = n + 1 if variant == "full" else n
    if variant not in ("full", "truncated"):
        raise ValueError("unknown variant %r" % variant)
    if len(X) != want:
        raise ArityMismatch("variant %s needs %d slots, got %d" % (variant, want, len(X)))
    _check_positive(X)
    num = BivariatePolynomial.zero()
    for g in signed_perms(n, max_n=max_n):
        m = mono(y_exponent * g.length(), 0) * (Z ** g.neg())
        term = m.to_poly()
        for i in g.descent_set_B():
            term = term * X[i].to_poly()
        num = num + term
    out = FactoredRational(num)
    for x in X:
        out = out.divided_by_factor(x.e_q, x.e_T)
    return out


def igusa_B_subset(
    n: int,
    y_exponent: int,
    Z: SignedMonomial,
    X: Sequence[SignedMonomial],
    variant: str = "full",
) -> FactoredRational:
    """Subset expansion of the type-B Igusa function.

    Sum over I of binom(n, I)_Y (-Y^n Z; Y^-1)_{n - min(I + {n})}
    prod_{i in I} X_i / (1 - X_i), with I over [n]_0 (full) or [n-1]_0
    (truncated).
    """
    want = n + 1 if variant == "full" else n
    if variant not in ("full", "truncated"):
        raise ValueError("unknown variant %r" % variant)
    if len(X) != want:
        raise ArityMismatch("variant %s needs %d slots, got %d" % (variant, want, len(X)))
    _check_positive(X)
    indices = list(range(want))
    a0 = mono(y_exponent * n, 0, -1) * Z  # -Y^n Z
    num = BivariatePolynomial.zero()
    for mask in range(1 << len(indices)):
        I = [i for i in indices if mask >> i & 1]
        depth = n - min(I + [n])
        term = gauss_multinom(n, I, y_exponent) * qpochhammer(a0, -y_exponent, depth).num
        for i in indices:
            if i in I:
                term = term * X[i].to_poly()
            else:
                term = term * BivariatePolynomial.one_minus(X[i].e_q, X[i].e_T)
        num = num + term
    out = FactoredRational(num)
    for x in X:
        out = out.divided_by_factor(x.e_q, x.e_T)
    return out


def igusa_B_residue(
    n: int,
    m: int,
    y_exponent: int,
    Z: SignedMonomial,
    X: Sequence[SignedMonomial],
) -> FactoredRational:
    """Residue of the full type-B Igusa function at X_m -> 1, factored form.

    X lists the n remaining slots X_0 .. X_{m-1}, X_{m+1} .. X_n.  Computed
    as binom(n, m)_Y (-Y^n Z; Y^-1)_{n-m} times the truncated type-B
    function of degree m times the plain type-A function of degree n - m.
    """
    if not 0 <= m <= n:
        raise ValueError("m must lie in [n]_0")
    if len(X) != n:
        raise ArityMismatch("need the n slots other than X_m")
    head, tail = list(X[:m]), list(X[m:])
    a0 = mono(y_exponent * n, 0, -1) * Z
    pref = gauss_multinom(n, [m], y_exponent) * qpochhammer(a0, -y_exponent, n - m).num
    left = igusa_B(m, y_exponent, Z, head, variant="truncated")
    right = igusa_A(n - m, "plain", y_exponent, tail)
    return left * right * pref


def igusa_B_residue_limit(
    n: int,
    m: int,
    y_exponent: int,
    Z: SignedMonomial,
    X: Sequence[SignedMonomial],
) -> FactoredRational:
    """Residue at X_m -> 1 straight from the descent sum.

    (1 - X_m) * Ig_Bn is regular at X_m = 1: the singular factor cancels
    syntactically, leaving the descent numerator with the X_m slot set to 1
    over the remaining denominator factors.  Independent of the factored
    form above.
    """
    if not 0 <= m <= n:
        raise ValueError("m must lie in [n]_0")
    if len(X) != n:
        raise ArityMismatch("need the n slots other than X_m")
    slots = {i: x for i, x in zip([i for i in range(n + 1) if i != m], X)}
    num = BivariatePolynomial.zero()
    for g in signed_perms(n):
        mm = mono(y_exponent * g.length(), 0) * (Z ** g.neg())
        term = mm.to_poly()
        for i in g.descent_set_B():
            if i != m:
                term = term * slots[i].to_poly()
        num = num + term
    out = FactoredRational(num)
    for x in X:
        out = out.divided_by_factor(x.e_q, x.e_T)
    return out


# ---------------------------------------------------------------------------
# fibre machinery
# ---------------------------------------------------------------------------


def fibre_F(s: int, x: SignedMonomial) -> FactoredRational:
    """F_s(x) = (-q^{1-s} x; q^2)_{floor(s/2)}; rational for negative s."""
    a = mono(1 - s, 0, -1) * x
    return qpochhammer(a, 2, s // 2)


def _E_series(k: int, r: int, order: int) -> list[BivariatePolynomial]:
    """Power-series coefficients of E_{k,r}(x) = F_r(x) F_{2k+1-r}(x) in x."""
    f = fibre_F(r, mono(0, 1)) * fibre_F(2 * k + 1 - r, mono(0, 1))
    return f.series_in_T(order)


def fibre_E(k: int, r: int) -> tuple[list[BivariatePolynomial], list[BivariatePolynomial]]:
    """Coefficients e_{k,r}^(t) for t in [k]_0, and B_{k,r}^(t).

    e is zero outside r in [2k+1]_0; B^(t) = q^{-t(t-1)} [t]_{q^2}!
    [k-t]_{q^2}! e^(t).
    """
    if r < 0 or r > 2 * k + 1:
        zero = [BivariatePolynomial.zero()] * (k + 1)
        return zero, list(zero)
    e = _E_series(k, r, k)
    B = []
    for t in range(k + 1):
        B.append(
            (_qsquare_factorial(t) * _qsquare_factorial(k - t) * e[t]).shift(
                dq=-t * (t - 1)
            )
        )
    return e, B


@lru_cache(maxsize=None)
def _qsquare_factorial(t: int) -> BivariatePolynomial:
    """[t]_{q^2}!"""
    out = BivariatePolynomial.one()
    for k in range(2, t + 1):
        out = out * BivariatePolynomial({(2 * i, 0): 1 for i in range(k)})
    return out


def epsilon_kr(k: int, r: int, t: int) -> BivariatePolynomial:
    """Series coefficient [x^t] E_{k,r}(x) for any integer r (no support cut)."""
    if t < 0:
        return BivariatePolynomial.zero()
    return _E_series(k, r, t)[t]


def Y_slot(j: int, r: int, T_arg: SignedMonomial) -> SignedMonomial:
    """The slot Y_j(r, T) = q^{r(2j+1-r)/2 - 2 j^2} T^j evaluated at T = T_arg."""
    num = r * (2 * j + 1 - r)
    if num % 2:
        raise ValueError("r(2j+1-r) must be even")
    return mono(num // 2 - 2 * j * j, 0) * (T_arg**j)


def fibre_I(
    n: int,
    k: int,
    r: int,
    X_tail: Sequence[SignedMonomial],
    T_arg: SignedMonomial,
) -> FactoredRational:
    """Fibre sum over the w-vectors with terminal entry in {r, 2k+1-r}.

    Sum of C_k(w) times the plain degree-n Igusa function at
    (Y_1(w_1,T), ..., Y_k(w_k,T), X_{k+1}, ..., X_n); slots X_tail are the
    trailing n - k arguments.
    """
    if k > n:
        raise ValueError("k must be at most n")
    if len(X_tail) != n - k:
        raise ArityMismatch("need the %d trailing slots" % (n - k))
    terms = []
    for w in fibre_W(k, r):
        slots = [Y_slot(j, wj, T_arg) for j, wj in enumerate(w, start=1)]
        terms.append(
            weight_C(w) * igusa_A(n, "plain", -2, slots + list(X_tail))
        )
    return FactoredRational.sum(terms)


def fibre_K(
    n: int,
    k: int,
    r: int,
    X_tail: Sequence[SignedMonomial],
    T_arg: SignedMonomial,
    max_n: int = FIBRE_K_GUARD,
) -> BivariatePolynomial:
    """Coset model: sum over S_n / S_k of B^(t_k) q^{-2 l_k^+} X^{Des_>k} T^{t_k}.

    X_tail supplies X_{k+1} .. X_n (the last slot is never used by descents
    beyond position n - 1 but is accepted for signature symmetry with the
    fibre sum).
    """
    if n > max_n:
        raise SizeGuard("fibre_K guard: n = %d exceeds %d" % (n, max_n))
    if k > n:
        raise ValueError("k must be at most n")
    if len(X_tail) != n - k:
        raise ArityMismatch("need the %d trailing slots" % (n - k))
    slots = dict(zip(range(k + 1, n + 1), X_tail))
    _, B = fibre_E(k, r)
    out = BivariatePolynomial.zero()
    for g in coset_reps(n, k):
        t_k, ell, des = coset_stats(g, k)
        term = B[t_k].shift(dq=-2 * ell) * (T_arg**t_k).to_poly()
        for j in des:
            term = term * slots[j].to_poly()
        out = out + term
    return out


def fibre_prefactor(k: int, r: int) -> FactoredRational:
    """P_{k,r}(q) = (-q)^r (1-q^2)^k (1-q^{2k-2r+1}) / ((q;q)_{2k-r+1} (q;q)_r)."""
    num = BivariatePolynomial.monomial((-1) ** r, r, 0)
    num = num * BivariatePolynomial.one_minus(2, 0) ** k
    num = num * BivariatePolynomial.one_minus(2 * k - 2 * r + 1, 0)
    out = FactoredRational(num)
    for i in range(2 * k - r + 1):
        out = out.divided_by_factor(1 + i, 0)
    for i in range(r):
        out = out.divided_by_factor(1 + i, 0)
    return out


def E_at_minus_T(k: int, r: int, T_arg: SignedMonomial) -> BivariatePolynomial:
    """E_{k,r}(-T) as a polynomial; requires r in [2k+1]_0."""
    if r < 0 or r > 2 * k + 1:
        raise ValueError("E_{k,r}(-T) is polynomial only for r in [2k+1]_0")
    minus = SignedMonomial(-T_arg.sign, T_arg.e_q, T_arg.e_T)
    f = fibre_F(r, minus) * fibre_F(2 * k + 1 - r, minus)
    assert not f.den
    return f.num.shift(dt=f.tshift) if f.tshift else f.num


def check_I_equals_K(
    n: int, k: int, r: int, X_tail: Sequence[SignedMonomial] | None = None
) -> dict:
    """Verify the fibre-sum identity I = P * K / (E(-T) prod (1 - X_j)).

    Slots default to generic independent monomials (large distinct prime
    exponents).  Raises IdentityMismatch on failure; returns a report dict.
    """
    if X_tail is None:
        X_tail = generic_slots(n - k)
    T_arg = mono(0, 1)
    lhs = fibre_I(n, k, r, X_tail, T_arg)
    if r < 0 or r > 2 * k + 1:
        ok = lhs.is_zero() and fibre_K(n, k, r, X_tail, T_arg).is_zero()
        if not ok:
            raise IdentityMismatch("empty fibre (k=%d, r=%d) not zero" % (k, r))
        return {"n": n, "k": k, "r": r, "status": "pass", "empty": True}
    K = fibre_K(n, k, r, X_tail, T_arg)
    left = lhs * E_at_minus_T(k, r, T_arg)
    for x in X_tail:
        left = left * BivariatePolynomial.one_minus(x.e_q, x.e_T)
    right = fibre_prefactor(k, r) * K
    if left != right:
        raise IdentityMismatch(
            "fibre identity failed at (n, k, r) = (%d, %d, %d)" % (n, k, r)
        )
    return {"n": n, "k": k, "r": r, "status": "pass", "empty": False}


_GENERIC_PRIMES = (101, 211, 307, 401, 503, 601, 701, 809, 907, 1009)


def generic_slots(count: int, t_exponents: Sequence[int] | None = None) -> list[SignedMonomial]:
    """Monomial slots q^P T^b with large distinct prime q-exponents.

    Algebraically independent markers for identity testing: accidental
    cancellation between distinct slots would need an exact match of prime
    combinations, impossible at the tested degrees.
    """
    if count > len(_GENERIC_PRIMES):
        raise SizeGuard("not enough generic markers")
    if t_exponents is None:
        t_exponents = [1] * count
    return [
        mono(_GENERIC_PRIMES[i], t_exponents[i]) for i in range(count)
    ]
