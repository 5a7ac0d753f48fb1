"""Semantic distances: entrywise order on matrices, total variation, tvmax.

All values are exact.  ``tv`` has three independent implementations (the
half-L1 sum, the maximum over subsets, and the optimal-coupling LP) which the
test suite cross-checks.
"""
from __future__ import annotations

import itertools
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .quantale import QuantaleValue, boolean, lawvere
from .semantics import (
    BOOL_SEMIRING,
    Matrix,
    SemiringSpec,
    mat_compose,
    mat_dsum,
    model_for,
    random_stochastic,
)

SUP_LIMIT = 12
COUPLING_LIMIT = 6


class DistanceError(ValueError):
    pass


class MethodUnavailable(DistanceError):
    pass


Dist = Sequence[Fraction]


def _check_pair(mu: Dist, nu: Dist) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    if len(mu) != len(nu):
        raise DistanceError(f"support sizes differ: {len(mu)} vs {len(nu)}")
    mu, nu = tuple(Fraction(x) for x in mu), tuple(Fraction(x) for x in nu)
    for d in (mu, nu):
        if not is_distribution(d):
            raise DistanceError(f"not a probability distribution: {[str(x) for x in d]}")
    return mu, nu


def is_distribution(mu: Dist) -> bool:
    return len(mu) > 0 and all(x >= 0 for x in mu) and sum(mu) == 1


# -- entrywise order --------------------------------------------------------------


def entrywise_leq(a: Matrix, b: Matrix, semiring: SemiringSpec = BOOL_SEMIRING) -> bool:
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DistanceError(f"dimension mismatch: {a.rows}×{a.cols} vs {b.rows}×{b.cols}")
    return all(semiring.leq(x, y) for ra, rb in zip(a.entries, b.entries) for x, y in zip(ra, rb))


def first_violation(a: Matrix, b: Matrix, semiring: SemiringSpec = BOOL_SEMIRING):
    """Index ``(i, j)`` of the first entry with ``a[i,j] ≰ b[i,j]``, or ``None``."""
    for i in range(a.rows):
        for j in range(a.cols):
            if not semiring.leq(a[i, j], b[i, j]):
                return (i, j)
    return None


# -- total variation ----------------------------------------------------------------


def tv_sum(mu: Dist, nu: Dist) -> Fraction:
    mu, nu = _check_pair(mu, nu)
    return sum((abs(x - y) for x, y in zip(mu, nu)), Fraction(0)) / 2


def tv_sup(mu: Dist, nu: Dist) -> Fraction:
    mu, nu = _check_pair(mu, nu)
    if len(mu) > SUP_LIMIT:
        raise MethodUnavailable(f"sup method limited to support ≤ {SUP_LIMIT}; use method 'sum'")
    best = Fraction(0)
    idx = range(len(mu))
    for r in range(len(mu) + 1):
        for subset in itertools.combinations(idx, r):
            d = abs(sum((mu[i] for i in subset), Fraction(0)) - sum((nu[i] for i in subset), Fraction(0)))
            best = max(best, d)
    return best


@dataclass(frozen=True)
class Coupling:
    """Joint weights ``omega[i][j]`` with marginals ``mu`` (rows) and ``nu`` (columns)."""

    omega: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.omega)

    def marginals(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        m = self.size
        left = tuple(sum(self.omega[i], Fraction(0)) for i in range(m))
        right = tuple(sum((self.omega[i][j] for i in range(m)), Fraction(0)) for j in range(m))
        return left, right

    def is_coupling_of(self, mu: Dist, nu: Dist) -> bool:
        if any(w < 0 for row in self.omega for w in row):
            return False
        left, right = self.marginals()
        return list(left) == list(mu) and list(right) == list(nu)

    def off_diagonal(self) -> Fraction:
        m = self.size
        return sum((self.omega[i][j] for i in range(m) for j in range(m) if i != j), Fraction(0))


def exact_lp_min(c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]):
    """Minimise ``c·x`` subject to ``A x = b``, ``x ≥ 0`` exactly (two-phase simplex, Bland's rule).

    Returns ``(value, x)`` or ``None`` when infeasible.  Assumes a bounded
    objective, which holds for the transportation problems used here.
    """
    m, n = len(A), len(c)
    rows = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row, rhs = [-x for x in row], -rhs
        rows.append(row + [Fraction(int(i == k)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    total = n + m

    def pivot(r, col):
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        basis[r] = col

    def run(cost, allowed):
        while True:
            # reduced costs
            entering = None
            for j in range(total):
                if j not in allowed or j in basis:
                    continue
                rc = cost[j] - sum((cost[basis[i]] * rows[i][j] for i in range(m)), Fraction(0))
                if rc < 0:
                    entering = j
                    break
            if entering is None:
                return
            best = None
            for i in range(m):
                a = rows[i][entering]
                if a > 0:
                    ratio = rows[i][-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                raise DistanceError("unbounded linear program")
            pivot(best[1], entering)

    phase1 = [Fraction(0)] * n + [Fraction(1)] * m
    run(phase1, set(range(total)))
    if any(rows[i][-1] != 0 for i in range(m) if basis[i] >= n):
        return None
    # drive remaining artificial variables out of the basis, dropping redundant rows
    i = 0
    while i < len(rows):
        if basis[i] >= n:
            col = next((j for j in range(n) if rows[i][j] != 0), None)
            if col is None:
                del rows[i]
                del basis[i]
                m -= 1
                continue
            pivot(i, col)
        i += 1
    cost = [Fraction(x) for x in c] + [Fraction(0)] * (total - n)
    run(cost, set(range(n)))
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        x[j] = rows[i][-1]
    return sum((ci * xi for ci, xi in zip(c, x)), Fraction(0)), x


def optimal_coupling(mu: Dist, nu: Dist) -> Coupling:
    """A coupling minimising the off-diagonal mass, found by exact LP."""
    mu, nu = _check_pair(mu, nu)
    m = len(mu)
    if m > COUPLING_LIMIT:
        raise MethodUnavailable(f"coupling method limited to support ≤ {COUPLING_LIMIT}; use method 'sum'")
    var = [(i, j) for i in range(m) for j in range(m)]
    c = [Fraction(int(i != j)) for i, j in var]
    A, b = [], []
    for i in range(m):
        A.append([Fraction(int(vi == i)) for vi, _ in var])
        b.append(mu[i])
    for j in range(m):
        A.append([Fraction(int(vj == j)) for _, vj in var])
        b.append(nu[j])
    res = exact_lp_min(c, A, b)
    if res is None:
        raise DistanceError("no coupling exists (are both inputs distributions of equal mass?)")
    _, x = res
    omega = tuple(tuple(x[i * m + j] for j in range(m)) for i in range(m))
    return Coupling(omega)


def tv_coupling(mu: Dist, nu: Dist) -> Fraction:
    return optimal_coupling(mu, nu).off_diagonal()


TV_METHODS: dict[str, Callable[[Dist, Dist], Fraction]] = {
    "sum": tv_sum,
    "sup": tv_sup,
    "coupling": tv_coupling,
}


def tv(mu: Dist, nu: Dist, method: str = "sum") -> Fraction:
    try:
        fn = TV_METHODS[method]
    except KeyError:
        raise DistanceError(f"unknown tv method {method!r} (sum, sup or coupling)") from None
    return fn(mu, nu)


def tvmax(a: Matrix, b: Matrix, method: str = "sum") -> Fraction:
    """Largest column-wise total variation; ``0`` (with a warning) when there are no columns."""
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise DistanceError(f"dimension mismatch: {a.rows}×{a.cols} vs {b.rows}×{b.cols}")
    if a.cols == 0:
        warnings.warn("tvmax of matrices with no columns is taken to be 0", stacklevel=2)
        return Fraction(0)
    return max(tv(a.column(j), b.column(j), method) for j in range(a.cols))


# -- splitting ----------------------------------------------------------------------


def mix(p: Dist, q: Dist, lam: Fraction) -> tuple[Fraction, ...]:
    """The convex combination ``p +_λ q = λ·p + (1−λ)·q``."""
    return tuple(lam * x + (1 - lam) * y for x, y in zip(p, q))


@dataclass(frozen=True)
class SplitResult:
    lam: Fraction
    mu_p: tuple[Fraction, ...]
    nu_p: tuple[Fraction, ...]
    tau: tuple[Fraction, ...]

    def recombines(self, mu: Dist, nu: Dist) -> bool:
        return mix(self.mu_p, self.tau, self.lam) == tuple(mu) and mix(self.nu_p, self.tau, self.lam) == tuple(nu)


def split(mu: Dist, nu: Dist) -> SplitResult:
    mu, nu = _check_pair(mu, nu)
    lam = tv_sum(mu, nu)
    if lam == 0:
        return SplitResult(lam, mu, mu, mu)
    if lam == 1:
        uniform = tuple(Fraction(1, len(mu)) for _ in mu)
        return SplitResult(lam, mu, nu, uniform)
    lows = [min(x, y) for x, y in zip(mu, nu)]
    tau = tuple(w / (1 - lam) for w in lows)
    mu_p = tuple((x - w) / lam for x, w in zip(mu, lows))
    nu_p = tuple((y - w) / lam for y, w in zip(nu, lows))
    return SplitResult(lam, mu_p, nu_p, tau)


# -- distances in a theory's model ----------------------------------------------------


def semantic_distance(theory, lhs, rhs) -> QuantaleValue:
    """Distance between the evaluations of two terms in the theory's model."""
    model = model_for(theory)
    a, b = model.eval(lhs), model.eval(rhs)
    if theory.model == "matrix":
        return boolean(entrywise_leq(a, b, theory.semiring))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return lawvere(tvmax(a, b))


# -- enrichment law checks ------------------------------------------------------------

# Witness that tvmax is not a meet-enrichment for sequential composition.
# With B = A no witness can exist (post-processing never increases tv), so the
# second kernel differs from A; both are at tvmax 1/2 from each other.
WITNESS_A = Matrix.from_rows([[1, Fraction(1, 2)], [0, Fraction(1, 2)]])
WITNESS_B = Matrix.from_rows([[Fraction(1, 2), 0], [Fraction(1, 2), 1]])
WITNESS_C = Matrix.from_columns([[1, 0]])
WITNESS_C2 = Matrix.from_columns([[Fraction(1, 2), Fraction(1, 2)]])


@dataclass
class LawReport:
    samples: int = 0
    seq_violations: list = field(default_factory=list)
    dsum_violations: list = field(default_factory=list)
    witness_seq: Fraction | None = None
    witness_bound: Fraction | None = None

    @property
    def witness_breaks_meet(self) -> bool:
        return self.witness_seq is not None and self.witness_seq > self.witness_bound

    @property
    def ok(self) -> bool:
        return not self.seq_violations and not self.dsum_violations and self.witness_breaks_meet

    def summary(self) -> str:
        return (
            f"{self.samples} samples: {len(self.seq_violations)} sequential, "
            f"{len(self.dsum_violations)} direct-sum violations; "
            f"meet witness {self.witness_seq} > {self.witness_bound}: {self.witness_breaks_meet}"
        )


def stochastic_quadruple(rng: random.Random, max_dim: int = 4):
    n, m, k = (rng.randint(1, max_dim) for _ in range(3))
    a, b = random_stochastic(rng, m, n), random_stochastic(rng, m, n)
    a2, b2 = random_stochastic(rng, k, m), random_stochastic(rng, k, m)
    return a, b, a2, b2


def law_checks(rng: random.Random | None = None, samples: int = 200, sampler=None) -> LawReport:
    """Check sequential (sum) and direct-sum (max) bounds on random quadruples."""
    rng = rng or random.Random(0)
    sampler = sampler or (lambda r: stochastic_quadruple(r))
    rep = LawReport(samples=samples)
    for _ in range(samples):
        a, b, a2, b2 = sampler(rng)
        lhs = tvmax(mat_compose(a, a2), mat_compose(b, b2))
        bound = tvmax(a, b) + tvmax(a2, b2)
        if lhs > bound:
            rep.seq_violations.append((a, b, a2, b2, lhs, bound))
        ds = tvmax(mat_dsum(a, a2), mat_dsum(b, b2))
        expect = max(tvmax(a, b), tvmax(a2, b2))
        if ds != expect:
            rep.dsum_violations.append((a, b, a2, b2, ds, expect))
    rep.witness_seq = tvmax(mat_compose(WITNESS_C, WITNESS_A), mat_compose(WITNESS_C2, WITNESS_B))
    rep.witness_bound = max(tvmax(WITNESS_C, WITNESS_C2), tvmax(WITNESS_A, WITNESS_B))
    return rep
