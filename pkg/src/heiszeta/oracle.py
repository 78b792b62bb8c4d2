"""Brute-force enumeration oracles over Z/p^k.

Ground truth for every closed form in the package: Lagrangian submodules of
finite alternating modules, Hermite-normal-form sublattice enumeration
classified by quotient and symplectic type, and Heisenberg subalgebra counts.
Budgets are hard errors, never silent truncation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .combinat import Partition, partitions_up_to
from .counts import birkhoff_alpha
from .errors import (
    BudgetExceeded,
    DegenerateForm,
    FactorizationMismatch,
    SingularMatrix,
)

LAGRANGIAN_BUDGET = 3**10
HNF_BUDGET = 2_000_000


# ---------------------------------------------------------------------------
# Smith normal form and alternating type
# ---------------------------------------------------------------------------


def _smith_diagonal(mat: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith normal form (absolute values, divisibility chain)."""
    m = [list(row) for row in mat]
    rows, cols = len(m), len(m[0])
    diag = []
    top = 0
    while top < min(rows, cols):
        pivot = None
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    pivot, best = (i, j), v
        if pivot is None:
            break
        pi, pj = pivot
        m[top], m[pi] = m[pi], m[top]
        for row in m:
            row[top], row[pj] = row[pj], row[top]
        p = m[top][top]
        dirty = False
        for i in range(top + 1, rows):
            f = m[i][top] // p
            if f:
                for j in range(top, cols):
                    m[i][j] -= f * m[top][j]
            if m[i][top]:
                dirty = True
        for j in range(top + 1, cols):
            f = m[top][j] // p
            if f:
                for i in range(top, rows):
                    m[i][j] -= f * m[i][top]
            if m[top][j]:
                dirty = True
        if dirty:
            continue
        bad = None
        for i in range(top + 1, rows):
            if any(m[i][j] % p for j in range(top + 1, cols)):
                bad = i
                break
        if bad is not None:
            for j in range(top, cols):
                m[top][j] += m[bad][j]
            continue
        diag.append(abs(p))
        top += 1
    return diag


def _valuation(x: int, p: int) -> int:
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def smith_type(
    mat: Sequence[Sequence[int]], p: int, cap: Optional[int] = None
) -> Partition:
    """Quotient type of Z^r / M Z^r at p: p-valuations of the SNF diagonal.

    With cap = k the valuations are truncated at k (submodule types inside a
    finite module of exponent p^k).
    """
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("matrix must be square")
    diag = _smith_diagonal(mat)
    if len(diag) < n:
        raise SingularMatrix("matrix has determinant zero")
    vals = [_valuation(d, p) for d in diag]
    if cap is not None:
        vals = [min(v, cap) for v in vals]
    return Partition(tuple(sorted(vals, reverse=True)))


def alt_type(gram: Sequence[Sequence[int]], p: int) -> Partition:
    """Symplectic elementary-divisor type of an alternating Gram matrix.

    Over a local ring an alternating form admits a symplectic basis, so the
    Smith divisors pair up; the type keeps one valuation per pair.
    """
    n = len(gram)
    if n % 2:
        raise DegenerateForm("alternating matrix of odd size is degenerate")
    for i in range(n):
        if gram[i][i] != 0:
            raise DegenerateForm("nonzero diagonal entry")
        for j in range(n):
            if gram[i][j] != -gram[j][i]:
                raise DegenerateForm("matrix is not alternating")
    diag = _smith_diagonal(gram)
    if len(diag) < n:
        raise DegenerateForm("form is degenerate over the fraction field")
    vals = sorted((_valuation(d, p) for d in diag), reverse=True)
    pairs = []
    for i in range(0, n, 2):
        if vals[i] != vals[i + 1]:
            raise AssertionError("alternating divisors failed to pair up")
        pairs.append(vals[i])
    return Partition(tuple(pairs))


# ---------------------------------------------------------------------------
# finite alternating modules
# ---------------------------------------------------------------------------

Element = tuple[int, ...]


@dataclass
class AltModule:
    """The alternating module M_mu: blocks (Z/p^{mu_i}) e_i + (Z/p^{mu_i}) f_i.

    Elements are coordinate tuples (a_1, b_1, ..., a_l, b_l); the pairing
    takes values in (1/p^{mu_1}) Z / Z, represented by integers modulo
    p^{mu_1} with zero meaning perpendicular.
    """

    mu: tuple[int, ...]
    p: int

    def __post_init__(self):
        self.mods = tuple(self.p**m for m in self.mu for _ in (0, 1))
        self.exponent = self.p ** (self.mu[0] if self.mu else 0)
        self.scale = tuple(self.exponent // self.p**m for m in self.mu)
        self.size = 1
        for b in self.mods:
            self.size *= b
        self.zero = (0,) * len(self.mods)

    def elements(self) -> Iterator[Element]:
        return itertools.product(*(range(b) for b in self.mods))

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.mods))

    def scalar(self, k: int, a: Element) -> Element:
        return tuple((k * x) % m for x, m in zip(a, self.mods))

    def pairing(self, a: Element, b: Element) -> int:
        total = 0
        for i, s in enumerate(self.scale):
            e = 2 * i
            total += s * (a[e] * b[e + 1] - a[e + 1] * b[e])
        return total % self.exponent

    def closure(self, gens: Sequence[Element]) -> frozenset[Element]:
        seen = {self.zero}
        frontier = [self.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def perp(self, gens: Sequence[Element]) -> list[Element]:
        return [
            v
            for v in self.elements()
            if all(self.pairing(v, g) == 0 for g in gens)
        ]

    def subgroup_type(self, sub: frozenset[Element]) -> Partition:
        """Abelian type of a subgroup from the sizes of its p^k multiples."""
        sizes = [len(sub)]
        cur = set(sub)
        while len(cur) > 1:
            cur = {self.scalar(self.p, x) for x in cur}
            sizes.append(len(cur))
        heights = [
            _valuation(sizes[k - 1] // sizes[k], self.p)
            for k in range(1, len(sizes))
        ]
        lam = [
            sum(1 for t in heights if t > i)
            for i in range(heights[0] if heights else 0)
        ]
        return Partition(tuple(sorted(lam, reverse=True)))


def enum_lagrangians(
    mu, p: int, budget: int = LAGRANGIAN_BUDGET
) -> dict[Partition, int]:
    """Count Lagrangian submodules of M_mu by module type.

    Grows isotropic subgroups one index-p step at a time; a subgroup of order
    p^{|mu|} contained in its own perp equals it, hence is Lagrangian.
    Returns {quotient type lambda: count}; the total is N'(mu).
    """
    mu = mu if isinstance(mu, Partition) else Partition(tuple(mu))
    m = mu.size()
    if p ** (2 * m) > budget:
        raise BudgetExceeded(
            "|M_mu| = %d^%d exceeds the budget %d" % (p, 2 * m, budget)
        )
    if m == 0:
        return {Partition(()): 1}
    mod = AltModule(tuple(mu.parts), p)
    # subgroup -> perp list; grown by index p per step, deduplicated globally
    level: dict[frozenset[Element], list[Element]] = {
        frozenset({mod.zero}): list(mod.elements())
    }
    found: set[frozenset[Element]] = set()
    for step in range(m):
        last = step == m - 1
        nxt: dict[frozenset[Element], list[Element]] = {}
        for sub, perp in level.items():
            processed = set(sub)
            for v in perp:
                if v in processed:
                    continue
                if mod.scalar(p, v) not in sub:
                    continue  # index-p^2 jump; reached later along a chain
                grown = set(sub)
                for j in range(1, p):
                    jv = mod.scalar(j, v)
                    grown.update(mod.add(x, jv) for x in sub)
                processed |= grown
                fz = frozenset(grown)
                if last:
                    found.add(fz)
                elif fz not in nxt:
                    nxt[fz] = [
                        x for x in perp if mod.pairing(x, v) == 0
                    ]
        level = nxt
    out: dict[Partition, int] = {}
    for sub in found:
        lam = mod.subgroup_type(sub)
        out[lam] = out.get(lam, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Hermite normal form enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HermiteBasis:
    """Upper-triangular canonical basis matrix; rows are the basis vectors.

    Above-diagonal entries are reduced modulo the diagonal entry of their
    column, giving exactly one representative per finite-index sublattice of
    the row span.
    """

    rows: tuple[tuple[int, ...], ...]

    def determinant(self) -> int:
        d = 1
        for i, row in enumerate(self.rows):
            d *= row[i]
        return d

    def contains(self, vec: Sequence[int]) -> bool:
        """Membership of an integer vector in the row span."""
        x = list(vec)
        r = len(x)
        for i in range(r):
            d = self.rows[i][i]
            if x[i] % d:
                return False
            t = x[i] // d
            if t:
                for jj in range(i, r):
                    x[jj] -= t * self.rows[i][jj]
        return True


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def hnf_count(rank: int, p: int, valuation: int) -> int:
    """Number of HNF matrices with determinant p^valuation in the given rank."""
    total = 0
    for comp in _compositions(valuation, rank):
        prod = 1
        for j, b in enumerate(comp):  # column j has j entries above the diagonal
            prod *= (p**b) ** j
        total += prod
    return total


def hnf_enumerate(rank: int, p: int, valuation: int) -> Iterator[HermiteBasis]:
    """All canonical sublattice bases of Z^rank with index p^valuation."""
    for comp in _compositions(valuation, rank):
        diag = [p**b for b in comp]
        ranges = []
        for j in range(rank):
            ranges.extend(range(diag[j]) for _ in range(j))
        for above in itertools.product(*ranges):
            rows = [[0] * rank for _ in range(rank)]
            it = iter(above)
            for j in range(rank):
                for i in range(j):
                    rows[i][j] = next(it)
                rows[j][j] = diag[j]
            yield HermiteBasis(tuple(tuple(r) for r in rows))


def _standard_J(n: int) -> list[list[int]]:
    J = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        J[i][n + i] = 1
        J[n + i][i] = -1
    return J


def _gram(H: HermiteBasis, J: Sequence[Sequence[int]]) -> list[list[int]]:
    """H J H^T for the row basis H."""
    r = len(J)
    out = [[0] * r for _ in range(r)]
    for a in range(r):
        Ja = [sum(J[i][k] * H.rows[a][k] for k in range(r)) for i in range(r)]
        for b in range(r):
            out[b][a] = sum(H.rows[b][i] * Ja[i] for i in range(r))
    return out


def enum_sublattices(
    n: int, p: int, max_valuation: int, budget: int = HNF_BUDGET
) -> dict[tuple[Partition, Partition], int]:
    """Sublattices of the symplectic Z^{2n} by (quotient type, alternating type)."""
    total = sum(hnf_count(2 * n, p, j) for j in range(max_valuation + 1))
    if total > budget:
        raise BudgetExceeded("HNF enumeration size %d exceeds %d" % (total, budget))
    J = _standard_J(n)
    out: dict[tuple[Partition, Partition], int] = {}
    for j in range(max_valuation + 1):
        for H in hnf_enumerate(2 * n, p, j):
            lam = smith_type(H.rows, p)
            mu = alt_type(_gram(H, J), p)
            key = (lam, mu)
            out[key] = out.get(key, 0) + 1
    return out


def check_factorization(
    n: int, p: int, max_valuation: int, budget: int = HNF_BUDGET
) -> list[dict]:
    """Verify lattice count = Lagrangian count x Birkhoff number, entrywise.

    Compares enum_sublattices against enum_lagrangians * alpha_n(mu; q^2)
    at q = p over every (lambda, mu) in range; raises FactorizationMismatch
    on any discrepancy (the factorization is a theorem, so a mismatch means
    an implementation bug).
    """
    lattice = enum_sublattices(n, p, max_valuation, budget=budget)
    mus = sorted(
        {mu.parts for _, mu in lattice}
        | {pt.parts for pt in partitions_up_to(max_valuation, n)}
    )
    rows = []
    for mu_parts in mus:
        mu = Partition(mu_parts)
        lagr = enum_lagrangians(mu, p, budget=budget)
        alpha = _eval_poly_at(birkhoff_alpha(mu, n, base_exponent=2), p)
        lambdas = {lam.parts for lam, m2 in lattice if m2 == mu}
        lambdas |= {lam.parts for lam in lagr}
        for lam_parts in sorted(lambdas):
            lam = Partition(lam_parts)
            got = lattice.get((lam, mu), 0)
            expect = lagr.get(lam, 0) * alpha
            rows.append(
                {
                    "lambda": str(lam),
                    "mu": str(mu),
                    "p": p,
                    "lattice": got,
                    "lagrangian": lagr.get(lam, 0),
                    "birkhoff": alpha,
                    "ok": got == expect,
                }
            )
            if got != expect:
                raise FactorizationMismatch(
                    "N(%s; %s) = %d but N'(%s; %s) * alpha = %d at p = %d"
                    % (lam, mu, got, lam, mu, expect, p)
                )
    return rows


def _eval_poly_at(poly, p: int) -> int:
    vals = poly.eval_q(p)
    if any(et != 0 for et in vals):
        raise ValueError("polynomial is not constant in T")
    return vals.get(0, 0)


# ---------------------------------------------------------------------------
# Heisenberg subalgebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HnLieRing:
    """The rank-(2n+1) Lie lattice with [x_{2i-1}, x_{2i}] = y, rest zero.

    Coordinates (x_1, ..., x_{2n}, y); every bracket lands in the centre
    Z y, so it is encoded by its y-coefficient.  The class is nilpotent of
    class 2: [[a, b], c] = 0 identically, which makes the Jacobi identity
    automatic.
    """

    n: int

    @property
    def rank(self) -> int:
        return 2 * self.n + 1

    def bracket_y(self, u: Sequence[int], v: Sequence[int]) -> int:
        """y-coefficient of [u, v]: sum (u_{2i-1} v_{2i} - u_{2i} v_{2i-1})."""
        total = 0
        for i in range(self.n):
            total += u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i]
        return total

    def structure_constants(self) -> dict[tuple[int, int], int]:
        """Nonzero brackets on basis pairs (i, j), i < j, as y-coefficients."""
        out = {}
        for i in range(self.n):
            out[(2 * i, 2 * i + 1)] = 1
        return out


def enum_subalgebras(
    n: int, p: int, max_index_valuation: int, budget: int = HNF_BUDGET
) -> list[int]:
    """Counts a_{p^i}, i <= max_index_valuation, of finite-index subalgebras.

    Enumerates HNF sublattices of Z^{2n+1} (coordinates x_1, ..., x_{2n}, y)
    and keeps those closed under the bracket; closure is checked on the basis
    rows.  [u, v] is a multiple of the central y, so membership reduces to
    divisibility by the last diagonal entry.
    """
    lie = HnLieRing(n)
    rank = lie.rank
    total = sum(hnf_count(rank, p, j) for j in range(max_index_valuation + 1))
    if total > budget:
        raise BudgetExceeded("HNF enumeration size %d exceeds %d" % (total, budget))
    counts = []
    for j in range(max_index_valuation + 1):
        c = 0
        for H in hnf_enumerate(rank, p, j):
            ylat = H.rows[rank - 1][rank - 1]
            ok = True
            for a in range(rank):
                for b in range(a + 1, rank):
                    w = lie.bracket_y(H.rows[a], H.rows[b])
                    if w % ylat:
                        ok = False
                        break
                if not ok:
                    break
            c += ok
        counts.append(c)
    return counts
