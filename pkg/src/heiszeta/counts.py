"""Closed-form counting polynomials.

Birkhoff numbers (sublattices of o^n of a given quotient type, in both the
multiplicity and the support form), the Lagrangian count N'(mu) in closed and
recursive form, and the aggregated lattice count N(mu).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .combinat import Partition, gen_W, weight_C
from .errors import NonPolynomialReduction, RankMismatch
from .exactalg import (
    BivariatePolynomial,
    FactoredRational,
    gauss_binom,
    gauss_multinom,
)


def _as_partition(mu) -> Partition:
    return mu if isinstance(mu, Partition) else Partition(tuple(mu))


def birkhoff_alpha(mu, n: int, base_exponent: int = 1) -> BivariatePolynomial:
    """Number of finite-index sublattices of o^n of quotient type mu, at q^base.

    Computed in the multiplicity form
    q^{<mu, 2 rho>} [n]_Y! / prod_j [m_j]_Y!  (Y = q^{-base})
    and cross-checked against the support form
    q^{d . rho'} binom(n, Supp^+(d))_Y; the two must agree.

    The result depends on the padding rank n, not only on the partition.
    """
    mu = _as_partition(mu)
    if mu.num_parts() > n:
        raise RankMismatch(
            "partition %s has more than n = %d parts" % (mu, n)
        )
    padded = mu.padded(n)
    y = -base_exponent

    # multiplicity form: the multinomial [n]!/prod [m_j]! as nested binomials
    pairing = sum(p * (n - 2 * i + 1) for i, p in enumerate(padded, start=1))
    mults = [padded.count(j) for j in range(padded[0] + 1)] if padded else []
    multinom = BivariatePolynomial.one()
    upper = n
    for m in mults:
        if m:
            multinom = multinom * gauss_binom(upper, m, y)
            upper -= m
    alpha = multinom.shift(dq=base_exponent * pairing)

    # support form
    d = mu.difference_vector(n)
    rho_prime = [k * (n - k) for k in range(1, n + 1)]
    exp = sum(di * ri for di, ri in zip(d, rho_prime))
    supp = [i for i in range(1, n) if d[i - 1] > 0]
    alpha2 = gauss_multinom(n, supp, y).shift(dq=base_exponent * exp)
    if alpha != alpha2:
        raise AssertionError(
            "Birkhoff forms disagree for mu=%s, n=%d" % (mu, n)
        )
    return alpha


def nprime_closed(mu) -> BivariatePolynomial:
    """Lagrangian count N'(mu) = sum over w of C(w) q^{w . mu}.

    mu may carry trailing zeros; the rank is the number of retained parts and
    the value is padding-independent.  The rational sum must reduce to a
    polynomial in q.
    """
    mu = tuple(mu.parts) if isinstance(mu, Partition) else tuple(mu)
    if any(mu[i] < mu[i + 1] for i in range(len(mu) - 1)):
        raise ValueError("mu must be weakly decreasing")
    n = len(mu)
    terms = []
    for w in gen_W(n):
        dot = sum(wi * mi for wi, mi in zip(w, mu))
        terms.append(weight_C(w) * BivariatePolynomial.monomial(1, dot, 0))
    total = FactoredRational.sum(terms).reduced()
    if total.den or total.tshift:
        raise NonPolynomialReduction(
            "N'(%s) did not reduce to a polynomial" % (mu,)
        )
    return total.num


@lru_cache(maxsize=None)
def _nprime_rec(mu: tuple[int, ...]) -> BivariatePolynomial:
    # mu is a strictly normalized partition tuple (weakly decreasing, no zeros)
    if not mu:
        return BivariatePolynomial.one()
    head = (mu[0] - 1,) + mu[1:]
    size = sum(mu)
    return nprime_recursive(head) + nprime_recursive(mu[1:]).shift(dq=size)


def nprime_recursive(mu: Sequence[int]) -> BivariatePolynomial:
    """N'(mu) for an arbitrary composition, via the defining recursion.

    Zero parts are dropped and the entries sorted (the count only depends on
    the multiset); the first-part recursion then applies, memoized on the
    normalized tuple.
    """
    key = tuple(sorted((x for x in mu if x), reverse=True))
    if any(x < 0 for x in key):
        raise ValueError("negative part")
    return _nprime_rec(key)


def n_aggregate(mu, n: int) -> BivariatePolynomial:
    """Lattice count N(mu) = N'(mu) * alpha_n(mu; q^2)."""
    mu = _as_partition(mu)
    return nprime_closed(mu.padded(n)) * birkhoff_alpha(mu, n, base_exponent=2)
