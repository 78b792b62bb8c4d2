from fractions import Fraction

import pytest

from heiszeta.combinat import gen_W, weight_C
from heiszeta.errors import SizeGuard
from heiszeta.exactalg import (
    BivariatePolynomial as Poly,
    FactoredRational as FR,
    mono,
)
from heiszeta.igusa import igusa_B
from heiszeta.oracle import enum_subalgebras
from heiszeta.zeta import (
    Z_of_w,
    Z_of_w_partition_sum,
    c_exponents,
    c_exponents_graded,
    dirichlet_coeffs,
    funeq_check,
    global_factor,
    global_factor_eval,
    lemma_global_bound,
    pole_analysis,
    pole_candidates,
    reduced_c,
    reduced_cone_series,
    reduced_zeta,
    rn_numeric,
    special_exponent,
    zeta_graded,
    zeta_ideal,
    zeta_series_oracle,
    zeta_igusa_sum,
    zeta_compact,
    zeta_hyperoctahedral,
)

N1_FORM = FR(
    Poly.one_minus(3, 3),
    {(0, 1): 1, (1, 1): 1, (2, 2): 1, (3, 2): 1},
)

N2_NUMERATOR = Poly(
    {
        (0, 0): 1,
        (5, 3): 1,
        (5, 4): -1,
        (6, 4): -1,
        (7, 4): -1,
        (8, 4): -1,
        (8, 5): 1,
        (13, 8): 1,
    }
)
N2_DEN = {
    (0, 1): 1,
    (1, 1): 1,
    (2, 1): 1,
    (3, 1): 1,
    (4, 3): 1,
    (6, 3): 1,
    (7, 3): 1,
}


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def test_n1_closed_forms():
    assert zeta_igusa_sum(1) == N1_FORM
    assert zeta_compact(1) == N1_FORM
    assert zeta_hyperoctahedral(1) == N1_FORM
    # the compact form lands on the displayed shape on the nose
    b = zeta_compact(1)
    assert b.num == Poly.one_minus(3, 3)
    assert b.den == N1_FORM.den


def test_n2_closed_form_display():
    b = zeta_compact(2)
    assert b.num == N2_NUMERATOR
    assert b.den == N2_DEN
    assert b.tshift == 0


def test_n3_denominator_exponents():
    b = zeta_compact(3)
    assert b.den == {
        **{(i, 1): 1 for i in range(6)},
        (6, 4): 1,
        (9, 4): 1,
        (11, 4): 1,
        (12, 4): 1,
    }


def test_n3_numerator_fixture():
    # the 40-term numerator: spot-check the displayed monomials and the count
    num = zeta_compact(3).num
    assert len(num.terms) == 40
    assert num.coefficient(0, 0) == 1
    for e in (7, 8, 9, 10):
        assert num.coefficient(e, 4) == 1
    for e, c in [(7, -1), (8, -1), (9, -2), (10, -2), (11, -2), (12, -2), (13, -1), (14, -1)]:
        assert num.coefficient(e, 5) == c
    for e in (10, 11, 12, 13, 14, 15):
        assert num.coefficient(e, 6) == 1
    assert num.coefficient(15, 7) == -1
    assert num.coefficient(17, 8) == 1
    assert num.coefficient(17, 9) == -1
    assert num.coefficient(22, 9) == -1
    assert num.coefficient(20, 10) == 2
    assert num.coefficient(25, 10) == 1
    assert num.coefficient(22, 11) == -1
    assert num.coefficient(25, 11) == -1
    assert num.coefficient(32, 15) == -1


@pytest.mark.parametrize("n", (1, 2, 3, 4))
def test_cross_form_identity(n):
    a, b, c = zeta_igusa_sum(n), zeta_compact(n), zeta_hyperoctahedral(n)
    assert a == b
    assert b == c


def test_cross_form_identity_n5():
    # the 2^5-term sum is still within budget
    assert zeta_igusa_sum(5) == zeta_compact(5)
    assert zeta_compact(5) == zeta_hyperoctahedral(5)


def test_compact_equals_hyperoctahedral_n6():
    assert zeta_compact(6) == zeta_hyperoctahedral(6)


def test_igusa_sum_n2_first_block():
    # the w = (0,0) summand of the 2^n-term form:
    # 1/((1-q)(1-q^3)(1-T)(1-q^2 T)(1-q^4 T^3))
    from heiszeta.igusa import igusa_A
    from heiszeta.zeta import igusa_args

    w = (0, 0)
    summand = weight_C(w) * igusa_A(2, "augmented", -2, igusa_args(2, w))
    expect = FR(
        1, {(1, 0): 1, (3, 0): 1, (0, 1): 1, (2, 1): 1, (4, 3): 1}
    )
    assert summand == expect


def test_igusa_sum_n3_second_summand():
    # the w = (0,0,5) summand: prefactor 1/((1-q)(1-q^3)(1-q^-5)) times
    # (1 + T + q^2 T + T^2 + q^2 T^2 + q^2 T^3) over
    # (1-q^4 T)(1-q^4 T^2)(1-q^5 T^3)(1-q^11 T^4)
    from heiszeta.igusa import igusa_A
    from heiszeta.zeta import igusa_args

    w = (0, 0, 5)
    summand = weight_C(w) * igusa_A(3, "augmented", -2, igusa_args(3, w))
    num = Poly(
        {
            (0, 0): 1,
            (0, 1): 1,
            (2, 1): 1,
            (0, 2): 1,
            (2, 2): 1,
            (2, 3): 1,
        }
    )
    expect = FR(num, {(1, 0): 1, (3, 0): 1, (-5, 0): 1})
    expect = expect.divided_by_factor(4, 1)
    expect = expect.divided_by_factor(4, 2)
    expect = expect.divided_by_factor(5, 3)
    expect = expect.divided_by_factor(11, 4)
    assert summand == expect


def test_compact_n2_first_summand():
    # the r=0 summand equals 1/((1-q)(1-q^3)(1-T)(1-q^2 T)(1-q^4 T^3))
    n, r = 2, 0
    num = Poly.monomial(1, r, 0) * Poly.one_minus(2 * n - 2 * r + 1, 0)
    for i in range(n):
        num = num * Poly.one_minus(2 * i + 2, 0)
    den = {}
    den[(special_exponent(n, r), n + 1)] = 1
    for i in range(2 * n - r + 1):
        den[(1 + i, 0)] = den.get((1 + i, 0), 0) + 1
    for i in range(n - r):
        den[(r + 2 * i, 1)] = den.get((r + 2 * i, 1), 0) + 1
    summand = FR(num, den)
    expect = FR(
        1, {(1, 0): 1, (3, 0): 1, (0, 1): 1, (2, 1): 1, (4, 3): 1}
    )
    assert summand == expect


def test_guards():
    with pytest.raises(SizeGuard):
        zeta_igusa_sum(6)
    with pytest.raises(SizeGuard):
        zeta_hyperoctahedral(7)
    with pytest.raises(SizeGuard):
        zeta_graded(7)


# ---------------------------------------------------------------------------
# ideal, graded
# ---------------------------------------------------------------------------


def test_zeta_ideal_fixtures():
    # n = 1: the classical zeta(s) zeta(s-1) zeta(3s-2) local factor
    assert zeta_ideal(1) == FR(1, {(0, 1): 1, (1, 1): 1, (2, 3): 1})
    assert zeta_ideal(2) == FR(
        1, {(0, 1): 1, (1, 1): 1, (2, 1): 1, (3, 1): 1, (4, 5): 1}
    )


def _enum_ideals(n, p, max_valuation):
    # an HNF row lattice is an ideal iff [h_n, L] <= L, i.e. every
    # x-coordinate of every basis row is divisible by the y-index
    from heiszeta.oracle import hnf_enumerate

    rank = 2 * n + 1
    counts = []
    for j in range(max_valuation + 1):
        c = 0
        for H in hnf_enumerate(rank, p, j):
            ylat = H.rows[rank - 1][rank - 1]
            c += all(
                H.rows[a][i] % ylat == 0
                for a in range(rank)
                for i in range(rank - 1)
            )
        counts.append(c)
    return counts


@pytest.mark.parametrize("n,p,maxval", [(1, 2, 4), (1, 3, 2), (2, 2, 2)])
def test_ideal_zeta_matches_brute_force(n, p, maxval):
    series = zeta_ideal(n).series_in_T(maxval)
    formula = []
    for c in series:
        vals = c.eval_q(p)
        assert set(vals) <= {0}
        formula.append(vals.get(0, 0))
    assert formula == _enum_ideals(n, p, maxval)


@pytest.mark.parametrize("n", (1, 2, 3, 4))
def test_truncated_factor_identity(n):
    # zeta times (T;q)_{2n} (1 - q^{c_n} T^{n+1}) is the truncated type-B
    # specialization, since c_n = 2n and truncation divides out that slot
    c = c_exponents(n)
    assert c[n] == 2 * n
    X = [mono(ci, n + 1) for ci in c[:n]]
    igm = igusa_B(n, -1, mono(n, 1, -1), X, variant="truncated")
    den = {(i, 1): 1 for i in range(2 * n)}
    den[(2 * n, n + 1)] = 1
    assert zeta_hyperoctahedral(n) == FR(1, den) * igm


def test_graded_fixture_and_shift():
    g = zeta_graded(1)
    assert g.num == Poly.one_minus(1, 3)
    for n in (1, 2, 3):
        c, cg = c_exponents(n), c_exponents_graded(n)
        assert all(ci - cgi == 2 * n for ci, cgi in zip(c, cg))


def test_graded_n1_inverse_symmetry_shape():
    # recorded sanity property: the n=1 graded form transforms with -q T^3
    g = zeta_graded(1)
    lhs = g.subs_inverse()
    rhs = FR(g.num.scaled(-1).shift(dq=1), g.den, g.tshift + 3)
    assert lhs == rhs


# ---------------------------------------------------------------------------
# w-blocks and series
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", (1, 2, 3))
def test_zeta_is_weighted_sum_of_Z_w(n):
    total = FR.sum([weight_C(w) * Z_of_w(w, n) for w in gen_W(n)])
    assert total == zeta_compact(n)


def test_Z_of_w_shape_n1():
    # w = (0): 1/((1-T)(1-q^2 T^2))
    assert Z_of_w((0,), 1) == FR(1, {(0, 1): 1, (2, 2): 1})


@pytest.mark.parametrize(
    "n,w", [(1, (0,)), (1, (1,)), (2, (0, 3)), (2, (1, 2)), (3, (1, 2, 3))]
)
def test_Z_of_w_closed_vs_partition_sum(n, w):
    closed = Z_of_w(w, n).series_in_T(4)
    trunc = Z_of_w_partition_sum(w, n, 4).series_in_T(4)
    assert closed == trunc


def test_series_fixture_n1():
    series = zeta_compact(1).series_in_T(2)
    assert series[0] == Poly.one()
    assert series[1] == Poly({(0, 0): 1, (1, 0): 1})
    assert series[2] == Poly({(0, 0): 1, (1, 0): 1, (2, 0): 2, (3, 0): 1})


@pytest.mark.parametrize("n", (1, 2, 3))
def test_series_oracle_matches(n):
    assert zeta_series_oracle(n, 4) == zeta_compact(n).series_in_T(4)


def test_series_oracle_order_zero():
    assert zeta_series_oracle(2, 0) == [Poly.one()]


def test_dirichlet_coeffs_fixtures():
    assert dirichlet_coeffs(1, 2, 2) == [1, 3, 19]
    assert dirichlet_coeffs(1, 3, 1) == [1, 4]


def test_n2_linear_coefficient_symbolic():
    # coefficient of T for n = 2 equals 1 + q + q^2 + q^3
    coeff = zeta_compact(2).series_in_T(1)[1]
    assert coeff == Poly({(i, 0): 1 for i in range(4)})


def test_aggregate_count_matches_oracle():
    # sum over lambda of the two-invariant oracle counts equals N(mu)
    from heiszeta.counts import n_aggregate
    from heiszeta.oracle import enum_sublattices

    for n, p, maxval in ((1, 2, 3), (2, 2, 2), (2, 3, 2)):
        table = enum_sublattices(n, p, maxval)
        mus = {mu for _, mu in table}
        for mu in mus:
            total = sum(c for (_, m2), c in table.items() if m2 == mu)
            vals = n_aggregate(mu, n).eval_q(p)
            assert set(vals) <= {0}
            assert total == vals.get(0, 0), (n, p, mu)


@pytest.mark.parametrize("n,p,order", [(1, 2, 4), (1, 3, 2), (2, 2, 2), (2, 3, 1)])
def test_dirichlet_coeffs_match_oracle(n, p, order):
    assert dirichlet_coeffs(n, p, order) == enum_subalgebras(n, p, order)


@pytest.mark.parametrize("n", (1, 2, 3))
def test_series_nonnegativity(n):
    for p in (2, 3, 5):
        assert all(a >= 0 for a in dirichlet_coeffs(n, p, 8))
        assert dirichlet_coeffs(n, p, 0) == [1]


# ---------------------------------------------------------------------------
# functional equation and poles
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", (1, 2, 3, 4, 5, 6))
def test_functional_equation(n):
    rep = funeq_check(n)
    assert rep["status"] == "pass"


def test_functional_equation_factors():
    assert funeq_check(1)["factor"] == "-q^3 T^3"
    assert funeq_check(2)["factor"] == "-q^10 T^5"


def test_pole_candidates_n1():
    integral, fractional = pole_candidates(1)
    assert integral == [0, 1]
    assert fractional == [Fraction(1), Fraction(3, 2)]


def test_pole_analysis_n1():
    rep = pole_analysis(1)
    assert rep.integral_poles == [(0, 1), (1, 1)]
    assert rep.fractional_poles == [(Fraction(3, 2), 1)]
    assert not rep.double_poles
    assert not rep.discrepancies


def test_pole_analysis_n2_simple():
    rep = pole_analysis(2)
    assert not rep.double_poles
    assert rep.order_at(Fraction(7, 3)) == 1


def test_pole_analysis_n3_double():
    rep = pole_analysis(3)
    assert rep.double_poles == [Fraction(3)]
    assert rep.order_at(3) == 2
    others = [o for s, o in rep.integral_poles if s != 3]
    assert set(others) == {1}


@pytest.mark.parametrize("n", (1, 2, 3, 4, 5, 6))
def test_pole_locations_within_candidates_and_criterion(n):
    # the double-pole law m(m+1) = 4n: n = 3 gives s = 3, n = 5 gives s = 4
    rep = pole_analysis(n)
    expected = [Fraction(m) for m in range(1, n + 1) if m * (m + 1) == 4 * n]
    assert rep.double_poles == expected
    assert not rep.discrepancies


# ---------------------------------------------------------------------------
# reduced zeta functions
# ---------------------------------------------------------------------------


def test_reduced_fixtures():
    r1 = reduced_zeta(1)
    assert r1 == FR(
        Poly({(0, 0): 1, (0, 1): 1, (0, 2): 1}), {(0, 1): 1, (0, 2): 2}
    )
    r2 = reduced_zeta(2)
    expect2 = Poly({(0, k): c for k, c in enumerate([1, 2, 3, 5, 3, 2, 1])})
    assert r2.num == expect2 and r2.den == {(0, 1): 2, (0, 3): 3}
    r3 = reduced_zeta(3)
    coeffs = [1, 3, 6, 10, 19, 21, 22, 21, 19, 10, 6, 3, 1]
    assert r3.num == Poly({(0, k): c for k, c in enumerate(coeffs)})
    assert r3.den == {(0, 1): 3, (0, 4): 4}


def test_reduced_matches_q_to_one_substitution():
    for n in (1, 2, 3):
        assert zeta_compact(n).reduced().subs_q_one() == reduced_zeta(n)


@pytest.mark.parametrize("n", (1, 2, 3, 4, 5))
def test_reduced_cone_oracle(n):
    series = [c.coefficient(0, 0) for c in reduced_zeta(n).series_in_T(10)]
    assert series == reduced_cone_series(n, 10)


@pytest.mark.parametrize("n", (1, 2, 3, 4, 5))
def test_reduced_self_reciprocity(n):
    f = reduced_zeta(n)
    lhs = f.subs_inverse()
    rhs = FR(f.num.scaled(-1), f.den, f.tshift + 2 * n + 1)
    assert lhs == rhs


def test_reduced_c_values():
    assert reduced_c(1) == Fraction(3, 4)
    assert reduced_c(2) == Fraction(17, 27)
    assert reduced_c(3) == Fraction(71, 128)
    for n in range(1, 21):
        assert 0 < reduced_c(n) < 1


# ---------------------------------------------------------------------------
# global factors
# ---------------------------------------------------------------------------


def test_global_factor_matches_hyperoctahedral_numerator():
    for n in (1, 2, 3):
        assert global_factor(n) == zeta_hyperoctahedral(n).num


def test_global_factor_eval_table_rows():
    assert global_factor_eval(1) == Poly({(0, 0): 1, (-3, 0): -1})
    row2 = {0: 1, -7: 1, -8: -1, -9: -1, -10: -1, -11: -1, -12: 1, -19: 1}
    assert global_factor_eval(2) == Poly({(e, 0): c for e, c in row2.items()})
    row3 = {
        0: 1,
        -14: 1,
        -15: 1,
        -18: -2,
        -19: -2,
        -20: -2,
        -21: -1,
        -24: 1,
        -25: 1,
        -26: 1,
        -27: -1,
        -31: 1,
        -32: -1,
        -33: -1,
        -34: -1,
        -37: 1,
        -38: 2,
        -39: 2,
        -40: 2,
        -43: -1,
        -44: -1,
        -58: -1,
    }
    assert global_factor_eval(3) == Poly({(e, 0): c for e, c in row3.items()})


@pytest.mark.parametrize("n", (1, 2, 3, 4, 5))
def test_global_bound_exhaustive(n):
    val, argmax = lemma_global_bound(n)
    assert val == -(3 * n * n - n + 4) // 2
    if n == 1:
        assert argmax == (-1,)
    else:
        assert argmax == (2, 1) + tuple(range(3, n + 1))


def test_rn_numeric_monotone_refinement():
    vals = [rn_numeric(2, bound)["value"] for bound in (20, 50, 200, 800)]
    deltas = [abs(vals[i + 1] - vals[i]) for i in range(len(vals) - 1)]
    assert deltas[0] > deltas[-1]
    assert all(v > 0 for v in vals)
    rep = rn_numeric(2, 100)
    assert rep["label"] == "APPROXIMATE" and rep["prime_bound"] == 100


def test_rn_numeric_rejects_n1():
    with pytest.raises(ValueError):
        rn_numeric(1, 10)
