import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmonoidal.diagram import Par, Seq
from qmonoidal.semantics import (
    BOOL_SEMIRING,
    NONNEG_SEMIRING,
    RATIONAL_SEMIRING,
    DimensionMismatch,
    Matrix,
    SemanticsError,
    Undecidable,
    equal_in_theory,
    eval_CA,
    eval_HA,
    get_semiring,
    mat_compose,
    mat_dsum,
    model_for,
    random_stochastic,
)
from qmonoidal.samplers import random_stochastic_term, random_term, smc_axiom_instance
from qmonoidal.theory import loads_theory

H = Fraction(1, 2)


def stoch(rng_seed, rows, cols):
    return random_stochastic(random.Random(rng_seed), rows, cols)


def test_identity_composition():
    a = Matrix.from_rows([[1, 2], [3, 4], [5, 6]])
    assert mat_compose(Matrix.identity(2), a) == a
    assert mat_compose(a, Matrix.identity(3)) == a


def test_dsum_example():
    got = mat_dsum(Matrix.from_columns([[H, H]]), Matrix.from_rows([[1]]))
    assert got == Matrix.from_rows([[H, 0], [H, 0], [0, 1]])


def test_composite_witness():
    c = Matrix.from_columns([[1, 0]])
    a = Matrix.from_rows([[1, H], [0, H]])
    assert mat_compose(c, a) == Matrix.from_columns([[1, 0]])


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_compose(Matrix.identity(2), Matrix.identity(3))
    with pytest.raises(DimensionMismatch):
        Matrix(2, 2, [[1, 2]])


def test_empty_matrices():
    z = Matrix(0, 3)
    assert z.to_text() == "[] (0×3)"
    # 2 → 0 followed by 0 → 2 is the zero map
    assert mat_compose(Matrix(0, 2), Matrix(2, 0)) == Matrix.zeros(2, 2)
    assert mat_compose(Matrix(2, 0), Matrix(0, 2)) == Matrix(0, 0)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_stochastic_closed_under_composition(n, m, k, seed):
    a, b = stoch(seed, m, n), stoch(seed + 1, k, m)
    assert a.is_stochastic() and b.is_stochastic()
    assert mat_compose(a, b).is_stochastic()
    assert mat_dsum(a, b).is_stochastic()


def test_json_round_trip():
    a = Matrix.from_rows([[H, Fraction(1, 3)], [H, Fraction(2, 3)]])
    assert Matrix.from_json(a.to_json()) == a
    assert a.to_csv() == "1/2,1/3\n1/2,2/3\n"


def test_ha_generator_clauses(ha_nonneg):
    sig = ha_nonneg.signature
    ev = lambda t: eval_HA(ha_nonneg.parse(t), NONNEG_SEMIRING)  # noqa: E731
    assert ev("copy") == Matrix.from_rows([[1], [1]])
    assert ev("add") == Matrix.from_rows([[1, 1]])
    assert ev("del") == Matrix(0, 1)
    assert ev("zero") == Matrix(1, 0)
    assert ev("scalar(2/3)") == Matrix.from_rows([[Fraction(2, 3)]])
    assert ev("sym") == Matrix.from_rows([[0, 1], [1, 0]])
    assert sig.gen("copy").type == (1, 2)


def test_scalar_outside_semiring(ha):
    with pytest.raises(SemanticsError):
        eval_HA(ha.parse("scalar(2)"), BOOL_SEMIRING)


def test_ca_generator_clauses(ca):
    assert eval_CA(ca.parse("cc(1/3)")) == Matrix.from_columns([[Fraction(1, 3), Fraction(2, 3)]])
    assert eval_CA(ca.parse("cop")) == Matrix.from_rows([[1, 1]])
    assert eval_CA(ca.parse("cc(1/2) * del")).column(0) == (H, H, 0)


def test_functoriality(ca):
    rng = random.Random(0)
    for _ in range(50):
        s = random_term(ca, rng, 3)
        t = random_term(ca, rng, 3, arity=s.coarity)
        u = random_term(ca, rng, 2)
        assert eval_CA(Seq(s, t)) == mat_compose(eval_CA(s), eval_CA(t))
        assert eval_CA(Par(s, u)) == mat_dsum(eval_CA(s), eval_CA(u))


def test_random_ca_terms_are_stochastic(ca):
    rng = random.Random(2)
    for _ in range(100):
        n, m = rng.randint(0, 3), rng.randint(1, 3)
        t = random_stochastic_term(rng, n, m, ca)
        assert eval_CA(t).is_stochastic()


@pytest.mark.parametrize("ring", [BOOL_SEMIRING, NONNEG_SEMIRING, RATIONAL_SEMIRING])
def test_semiring_laws(ring):
    assert ring.law_violations(random.Random(0), 200) == []


def test_monotonicity():
    rng = random.Random(0)
    assert BOOL_SEMIRING.monotonicity_violation(rng) is None
    assert NONNEG_SEMIRING.monotonicity_violation(rng) is None
    assert RATIONAL_SEMIRING.monotonicity_violation(rng) is not None


def test_get_semiring():
    assert get_semiring("bool") is BOOL_SEMIRING
    with pytest.raises(SemanticsError):
        get_semiring("tropical")


def test_equality_decided_by_faithful_model(ca, ha):
    assert equal_in_theory(ca.parse("sym ; cop"), ca.parse("cop"), ca)
    assert not equal_in_theory(ca.parse("cc(1/3)"), ca.parse("cc(1/2)"), ca)
    assert equal_in_theory(ha.parse("copy ; sym"), ha.parse("copy"), ha)


def test_smc_axioms_hold(ca, ha_nonneg):
    rng = random.Random(11)
    for th in (ca, ha_nonneg):
        for _ in range(100):
            name, lhs, rhs = smc_axiom_instance(th, rng)
            assert equal_in_theory(lhs, rhs, th), name


def test_no_model_is_undecidable():
    th = loads_theory("[theory]\nname = bare\n[quantale]\nboolean\n[model]\nnone\n[signature]\na : 1 -> 1\n")
    with pytest.raises(Undecidable):
        model_for(th)
