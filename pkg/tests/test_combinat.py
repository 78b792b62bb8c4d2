import random

import pytest

from heiszeta.combinat import (
    Partition,
    SignedPermutation,
    brenti_B,
    coset_reps,
    coset_stats,
    descent_set,
    eulerian_A,
    fibre_W,
    gen_W,
    inversions,
    is_w_vector,
    partitions_up_to,
    perms,
    signed_perm_length_bfs,
    signed_perms,
    w_partial_sums,
    weight_C,
)
from heiszeta.errors import SizeGuard
from heiszeta.exactalg import BivariatePolynomial as Poly, FactoredRational as FR


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


def test_partition_normalizes_trailing_zeros():
    assert Partition((2, 1, 0, 0)) == Partition((2, 1))
    assert hash(Partition((2, 1, 0))) == hash(Partition((2, 1)))


def test_partition_rejects_bad_input():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((1, -1))


def test_partition_difference_vector_reconstructs():
    mu = Partition((4, 2, 2))
    d = mu.difference_vector(4)
    assert d == (2, 0, 2, 0)
    rebuilt = tuple(sum(d[i:]) for i in range(4))
    assert rebuilt == mu.padded(4)


def test_partition_n_stat():
    assert Partition((3, 2, 1)).n_stat() == 0 * 3 + 1 * 2 + 2 * 1


def test_partition_string_round_trip():
    assert Partition.from_string("2,1") == Partition((2, 1))
    assert Partition.from_string("") == Partition(())
    assert str(Partition((2, 1))) == "2,1"


def test_partitions_up_to_small():
    assert [p.parts for p in partitions_up_to(0, 3)] == [()]
    assert [p.parts for p in partitions_up_to(2, 2)] == [(), (1,), (2,), (1, 1)]
    assert len(partitions_up_to(4, 2)) == 9


def test_partitions_up_to_respects_bounds():
    for p in partitions_up_to(6, 3):
        assert p.size() <= 6 and p.num_parts() <= 3
    seen = set(p.parts for p in partitions_up_to(6, 3))
    assert len(seen) == len(partitions_up_to(6, 3))


# ---------------------------------------------------------------------------
# the sets W_n
# ---------------------------------------------------------------------------


def test_gen_W_paper_fixtures():
    assert set(gen_W(1)) == {(0,), (1,)}
    assert set(gen_W(2)) == {(0, 0), (0, 3), (1, 1), (1, 2)}
    assert gen_W(3) == (
        (0, 0, 0),
        (0, 0, 5),
        (0, 3, 2),
        (0, 3, 3),
        (1, 1, 1),
        (1, 1, 4),
        (1, 2, 2),
        (1, 2, 3),
    )


@pytest.mark.parametrize("n", range(13))
def test_gen_W_cardinality_and_membership(n):
    vecs = gen_W(n)
    assert len(vecs) == 2**n
    assert len(set(vecs)) == 2**n
    assert all(is_w_vector(w) for w in vecs)


@pytest.mark.parametrize("n", range(1, 9))
def test_partial_sum_law(n):
    for w in gen_W(n):
        ps = w_partial_sums(w)
        for j in range(1, n + 1):
            assert ps[j - 1] == w[j - 1] * (2 * j + 1 - w[j - 1]) // 2


def test_weight_C_fixtures():
    assert weight_C((0,)) == FR(1, {(1, 0): 1})
    assert weight_C((1,)) == FR(1, {(-1, 0): 1})
    assert weight_C((0, 3)) == FR(1, {(1, 0): 1, (-3, 0): 1})


def test_fibre_W_examples():
    assert fibre_W(2, 0) == ((0, 0),)
    assert set(fibre_W(2, 2)) == {(0, 3), (1, 2)}
    assert fibre_W(0, 0) == ((),) and fibre_W(0, 1) == ((),)
    assert fibre_W(2, 9) == ()


@pytest.mark.parametrize("k", range(7))
def test_fibre_W_partition_and_symmetry(k):
    union = []
    for r in range(k + 1):
        union.extend(fibre_W(k, r))
    assert sorted(union) == sorted(gen_W(k))
    for r in range(2 * k + 2):
        assert fibre_W(k, r) == fibre_W(k, 2 * k + 1 - r)


@pytest.mark.parametrize("k", range(5))
def test_fibre_W_recursion(k):
    for r in range(2 * k + 4):
        rp = 2 * k + 3 - r
        expect = [w + (r,) for w in fibre_W(k, r)] + [
            w + (rp,) for w in fibre_W(k, rp) if rp != r
        ]
        assert sorted(fibre_W(k + 1, r)) == sorted(expect)


# ---------------------------------------------------------------------------
# permutations and coset statistics
# ---------------------------------------------------------------------------


def test_descents_and_inversions():
    assert descent_set((3, 1, 2)) == {1}
    assert inversions((3, 1, 2)) == 2
    assert descent_set((1, 2, 3)) == frozenset()


def test_coset_stats_examples():
    for k in range(3):
        assert coset_stats((1, 2, 3), k) == (0, 0, frozenset())
    assert coset_stats((2, 1), 1)[0] == 1
    t0, ell0, des0 = coset_stats((3, 1, 2), 0)
    assert (t0, ell0, des0) == (0, 2, frozenset({1}))


def test_coset_stats_invariance_under_right_Sk():
    rng = random.Random(5)
    for n in (3, 4, 5):
        for _ in range(20):
            g = list(rng.sample(range(1, n + 1), n))
            k = rng.randint(0, n)
            ref = coset_stats(tuple(g), k)
            head = g[:k]
            rng.shuffle(head)
            assert coset_stats(tuple(head + g[k:]), k) == ref


def test_coset_reps_are_canonical_and_complete():
    for n in range(5):
        for k in range(n + 1):
            reps = list(coset_reps(n, k))
            import math

            assert len(reps) == math.factorial(n) // math.factorial(k)
            assert all(list(r[:k]) == sorted(r[:k]) for r in reps)
            assert len(set(reps)) == len(reps)


# ---------------------------------------------------------------------------
# signed permutations
# ---------------------------------------------------------------------------


def test_signed_perm_identity_stats():
    g = SignedPermutation((1,))
    assert g.length() == 0 and g.descent_set_B() == frozenset()
    assert g.neg() == 0 and g.stat_C([3, 2]) == 0 and g.stat_D() == 0


def test_signed_perm_flip_stats():
    g = SignedPermutation((-1,))
    assert g.length() == 1
    assert g.descent_set_B() == {0}
    assert g.neg() == 1
    assert g.stat_C([3, 2]) == 1 * 1 - 1 + 3  # n*neg - length + c_0
    assert g.stat_D() == 2 * 1 + 1


def test_signed_perms_counts():
    assert sum(1 for _ in signed_perms(2)) == 8
    assert sum(1 for _ in signed_perms(3)) == 48
    with pytest.raises(SizeGuard):
        list(signed_perms(9))


def test_signed_perm_rejects_bad_window():
    with pytest.raises(ValueError):
        SignedPermutation((1, 1))
    with pytest.raises(ValueError):
        SignedPermutation((2, 3))


@pytest.mark.parametrize("n", (1, 2, 3))
def test_length_formula_matches_bfs(n):
    dist = signed_perm_length_bfs(n)
    assert len(dist) == 2**n * __import__("math").factorial(n)
    for g in signed_perms(n):
        assert g.length() == dist[g.window]


def test_signed_perm_serialization():
    assert str(SignedPermutation((-2, 1, 3))) == "-2,1,3"


# ---------------------------------------------------------------------------
# Eulerian polynomials
# ---------------------------------------------------------------------------


def test_eulerian_A_fixtures():
    assert eulerian_A(0) == (1,)
    assert eulerian_A(2) == (0, 1, 1)
    assert sum(eulerian_A(3)) == 6


@pytest.mark.parametrize("d", range(1, 6))
def test_eulerian_identity(d):
    # sum_i i^d X^i = A_d(X) / (1 - X)^{d+1}, checked through X^8
    order = 8
    lhs = [i**d for i in range(order + 1)]
    coeffs = list(eulerian_A(d)) + [0] * (order + 1)
    series = FR(
        Poly({(0, e): c for e, c in enumerate(coeffs[: order + 1]) if c}),
        {(0, 1): d + 1},
    ).series_in_T(order)
    assert [c.coefficient(0, 0) for c in series] == lhs


def test_brenti_B_fixtures():
    b1 = brenti_B(1)
    assert b1 == Poly({(0, 0): 1, (1, 1): 1})  # 1 + XY
    for n in (1, 2, 3, 8):
        total = sum(brenti_B(n).terms.values())
        assert total == 2**n * __import__("math").factorial(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_brenti_B_matches_group_enumeration(n):
    from heiszeta.combinat import brenti_B_by_enumeration

    assert brenti_B(n) == brenti_B_by_enumeration(n)


def test_brenti_B_reduced_numerator_fixture():
    # B_1(T^2, -T) = 1 - T^3
    b1 = brenti_B(1)
    val = Poly.zero()
    for (i, j), c in b1.terms.items():
        val = val + Poly.monomial(c * (-1) ** j, 0, 2 * i + j)
    assert val == Poly.one_minus(0, 3)


@pytest.mark.parametrize("n", range(1, 5))
def test_brenti_generating_identity(n):
    # sum_i (1 + (1+Y) i)^n X^i = B_n(X, Y)/(1-X)^{n+1} at Y = 2, through X^6
    y = 2
    order = 6
    lhs = [(1 + (1 + y) * i) ** n for i in range(order + 1)]
    bn = brenti_B(n)
    num = Poly({(0, i): sum(c * y**j for (ii, j), c in bn.terms.items() if ii == i)
                for i in range(n + 1)})
    series = FR(num, {(0, 1): n + 1}).series_in_T(order)
    assert [c.coefficient(0, 0) for c in series] == lhs
