import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmonoidal.distance import (
    WITNESS_A,
    WITNESS_B,
    WITNESS_C,
    WITNESS_C2,
    Coupling,
    DistanceError,
    MethodUnavailable,
    entrywise_leq,
    exact_lp_min,
    law_checks,
    mix,
    optimal_coupling,
    semantic_distance,
    split,
    tv,
    tvmax,
)
from qmonoidal.quantale import boolean, lawvere
from qmonoidal.semantics import (
    BOOL_SEMIRING,
    NONNEG_SEMIRING,
    Matrix,
    mat_compose,
    mat_dsum,
    random_distribution,
    random_stochastic,
)

F = Fraction


def dist_pair(max_support=6):
    return st.integers(1, max_support).flatmap(
        lambda k: st.tuples(st.integers(0, 10**9), st.just(k))
    ).map(lambda sk: (random_distribution(random.Random(sk[0]), sk[1]),
                      random_distribution(random.Random(sk[0] + 1), sk[1])))


def test_entrywise_examples():
    a = Matrix.from_rows([[0, 1], [0, 0]])
    assert entrywise_leq(a, a, BOOL_SEMIRING)
    assert entrywise_leq(a, Matrix.from_rows([[1, 1], [0, 1]]), BOOL_SEMIRING)
    assert not entrywise_leq(Matrix.from_rows([[1, 0]]), Matrix.from_rows([[0, 1]]), BOOL_SEMIRING)
    with pytest.raises(DistanceError):
        entrywise_leq(Matrix.identity(2), Matrix.identity(3))


@pytest.mark.parametrize("method", ["sum", "sup", "coupling"])
def test_tv_examples(method):
    lam = F(3, 10)
    assert tv([lam, 1 - lam, 0], [0, 1 - lam, lam], method) == lam
    assert tv([F(1, 3), F(2, 3)], [F(1, 3), F(2, 3)], method) == 0
    assert tv([1, 0], [0, 1], method) == 1


def test_method_limits():
    big = [F(1, 13)] * 13
    with pytest.raises(MethodUnavailable, match="sum"):
        tv(big, big, "sup")
    seven = [F(1, 7)] * 7
    with pytest.raises(MethodUnavailable):
        tv(seven, seven, "coupling")


def test_tv_rejects_non_distributions():
    with pytest.raises(DistanceError):
        tv([F(1, 2)], [1])
    with pytest.raises(DistanceError):
        tv([1, 0], [1])


@given(dist_pair())
def test_methods_agree(pair):
    mu, nu = pair
    assert tv(mu, nu, "sum") == tv(mu, nu, "sup") == tv(mu, nu, "coupling")


@given(dist_pair(4))
def test_optimal_coupling_marginals(pair):
    mu, nu = pair
    c = optimal_coupling(mu, nu)
    assert isinstance(c, Coupling)
    assert c.marginals() == (tuple(mu), tuple(nu))
    assert c.off_diagonal() == tv(mu, nu)


def test_exact_lp_small():
    # minimise x + y subject to x + 2y = 2, x, y >= 0  -> y = 1
    val, x = exact_lp_min([1, 1], [[1, 2]], [2])
    assert val == 1 and x == [0, 1]


@given(st.integers(0, 10**9), st.integers(1, 5))
def test_tv_pseudometric(seed, k):
    rng = random.Random(seed)
    a, b, c = (random_distribution(rng, k) for _ in range(3))
    assert tv(a, b) == tv(b, a)
    assert tv(a, c) <= tv(a, b) + tv(b, c)


@given(st.integers(0, 10**9), st.integers(1, 4), st.integers(1, 3))
def test_tv_convexity(seed, k, parts):
    rng = random.Random(seed)
    ps = random_distribution(rng, parts)
    mus = [random_distribution(rng, k) for _ in range(parts)]
    nus = [random_distribution(rng, k) for _ in range(parts)]
    mu = [sum(p * m[i] for p, m in zip(ps, mus)) for i in range(k)]
    nu = [sum(p * n[i] for p, n in zip(ps, nus)) for i in range(k)]
    assert tv(mu, nu) <= sum(p * tv(m, n) for p, m, n in zip(ps, mus, nus))


def test_tvmax_examples():
    assert tvmax(WITNESS_A, WITNESS_A) == 0
    assert tvmax(WITNESS_C, WITNESS_C2) == F(1, 2)
    assert tvmax(mat_compose(WITNESS_C, WITNESS_A), mat_compose(WITNESS_C2, WITNESS_B)) == F(3, 4)


def test_witness_with_b_equal_a():
    # with the second kernel equal to the first, post-processing can only shrink the distance
    assert mat_compose(WITNESS_C, WITNESS_A) == Matrix.from_columns([[1, 0]])
    assert mat_compose(WITNESS_C2, WITNESS_A) == Matrix.from_columns([[F(3, 4), F(1, 4)]])
    assert tvmax(mat_compose(WITNESS_C, WITNESS_A), mat_compose(WITNESS_C2, WITNESS_A)) == F(1, 4)


def test_tvmax_empty_warns():
    with pytest.warns(UserWarning):
        assert tvmax(Matrix(2, 0), Matrix(2, 0)) == 0


def test_tvmax_dimension_mismatch():
    with pytest.raises(DistanceError):
        tvmax(Matrix.identity(2), Matrix.identity(3))


def test_split_example():
    s = split([F(1, 2), F(1, 2)], [F(4, 5), F(1, 5)])
    assert s.lam == F(3, 10)
    assert s.tau == (F(5, 7), F(2, 7))
    assert s.mu_p == (0, 1) and s.nu_p == (1, 0)
    assert mix(s.mu_p, s.tau, s.lam) == (F(1, 2), F(1, 2))
    assert mix(s.nu_p, s.tau, s.lam) == (F(4, 5), F(1, 5))


def test_split_edges():
    mu = (F(1, 3), F(2, 3))
    s = split(mu, mu)
    assert s.lam == 0 and s.tau == mu == s.mu_p == s.nu_p
    s = split((1, 0), (0, 1))
    assert s.lam == 1 and s.mu_p == (1, 0) and s.nu_p == (0, 1)
    assert s.recombines((1, 0), (0, 1))


@given(dist_pair(5))
def test_split_recombines(pair):
    mu, nu = pair
    s = split(mu, nu)
    assert s.lam == tv(mu, nu)
    assert s.recombines(mu, nu)


def test_law_checks():
    rep = law_checks(random.Random(0), 200)
    assert rep.ok, rep.summary()
    assert rep.witness_seq == F(3, 4) and rep.witness_bound == F(1, 2)


def test_law_checks_identities_tight():
    eye = Matrix.identity(2)
    rep = law_checks(random.Random(0), 5, sampler=lambda r: (eye, eye, eye, eye))
    assert not rep.seq_violations and not rep.dsum_violations


@pytest.mark.parametrize("semiring, values", [(BOOL_SEMIRING, [0, 1]), (NONNEG_SEMIRING, [0, F(1, 2), 1, 2])])
def test_order_is_monotone(semiring, values):
    rng = random.Random(4)
    for _ in range(100):
        n, m, k = (rng.randint(1, 3) for _ in range(3))
        a = Matrix(m, n, [[rng.choice(values) for _ in range(n)] for _ in range(m)])
        b = Matrix(m, n, [[x + rng.choice([0, 1]) if semiring is NONNEG_SEMIRING else max(x, rng.choice(values)) for x in r] for r in a.entries])
        c = Matrix(k, m, [[rng.choice(values) for _ in range(m)] for _ in range(k)])
        assert entrywise_leq(a, b, semiring)
        assert entrywise_leq(mat_compose(a, c, semiring), mat_compose(b, c, semiring), semiring)
        assert entrywise_leq(mat_dsum(a, c), mat_dsum(b, c), semiring)


def test_semantic_distance(ba, preord):
    assert semantic_distance(ba, ba.parse("cc(1/2) * del"), ba.parse("del * cc(1/2)")) == lawvere(F(1, 2))
    assert semantic_distance(preord, preord.parse("scalar(0)"), preord.parse("scalar(1)")) == boolean(True)
    assert semantic_distance(preord, preord.parse("scalar(1)"), preord.parse("scalar(0)")) == boolean(False)
