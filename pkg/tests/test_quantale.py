import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmonoidal.quantale import (
    LAWVERE_INF,
    QuantaleError,
    VariantMismatch,
    boolean,
    get_quantale,
    ijd_check,
    integrality_check,
    lawvere,
    product_space,
    space_from_table,
    tensor,
)
from qmonoidal.selftest import quantale_laws

L = get_quantale("lawvere")
B = get_quantale("boolean")

law_vals = st.one_of(st.just(LAWVERE_INF), st.builds(lambda p, q: lawvere(Fraction(p, q)), st.integers(0, 20), st.integers(1, 5)))
bool_vals = st.builds(boolean, st.booleans())


def test_lawvere_tensor_is_addition():
    assert tensor(lawvere(Fraction(3, 10)), lawvere(Fraction(4, 10))) == lawvere(Fraction(7, 10))
    assert tensor(LAWVERE_INF, lawvere(Fraction(1, 2))) == LAWVERE_INF


def test_boolean_tensor_is_meet():
    assert tensor(boolean(True), boolean(True)) == boolean(True)
    assert tensor(boolean(True), boolean(False)) == boolean(False)


def test_mixed_variants_rejected():
    with pytest.raises(VariantMismatch):
        tensor(boolean(True), lawvere(0))


def test_lawvere_order_is_reversed():
    assert L.leq(lawvere(1), lawvere(Fraction(1, 2)))
    assert not L.leq(lawvere(0), lawvere(1))
    assert L.top == lawvere(0) and L.bottom == LAWVERE_INF
    assert L.meet([lawvere(Fraction(1, 4)), lawvere(Fraction(1, 2))]) == lawvere(Fraction(1, 2))
    assert L.join([lawvere(Fraction(1, 4)), lawvere(Fraction(1, 2))]) == lawvere(Fraction(1, 4))


def test_values_are_exact():
    with pytest.raises(QuantaleError):
        lawvere(0.5)
    with pytest.raises(QuantaleError):
        lawvere(-1)


@pytest.mark.parametrize("text, value", [("top", boolean(True)), ("⊥", boolean(False))])
def test_boolean_parse(text, value):
    assert B.parse(text) == value


@pytest.mark.parametrize("text", ["inf", "∞"])
def test_lawvere_parse_infinity(text):
    assert L.parse(text) == LAWVERE_INF


@given(law_vals, law_vals)
def test_integrality_lawvere(a, b):
    assert integrality_check(a, b)


@given(bool_vals, bool_vals)
def test_integrality_boolean(a, b):
    assert integrality_check(a, b)


def test_integrality_examples():
    assert integrality_check(lawvere(Fraction(3, 10)), lawvere(Fraction(4, 10)))
    assert integrality_check(boolean(False), boolean(True))
    assert integrality_check(lawvere(0), lawvere(0))


@given(law_vals, law_vals, law_vals)
def test_lawvere_monoid_laws(a, b, c):
    assert L.tensor(L.tensor(a, b), c) == L.tensor(a, L.tensor(b, c))
    assert L.tensor(a, b) == L.tensor(b, a)
    assert L.tensor(a, L.unit) == a


@given(law_vals, st.lists(law_vals, max_size=5))
def test_join_continuity(a, family):
    assert L.tensor(a, L.join(family)) == L.join([L.tensor(a, s) for s in family])


@pytest.mark.parametrize("name", ["boolean", "lawvere"])
def test_sampled_law_suite(name):
    assert quantale_laws(name, random.Random(5), 200) == []


@pytest.mark.parametrize("name", ["boolean", "lawvere"])
def test_ijd(name):
    assert ijd_check(get_quantale(name), random.Random(0))


def _line(points, pos):
    return space_from_table("lawvere", points, {(x, y): lawvere(abs(pos[x] - pos[y])) for x in points for y in points}, True)


def test_product_space_sum_and_max():
    X = _line(["a", "b"], {"a": 0, "b": Fraction(1, 4)})
    Y = _line(["u", "v"], {"u": 0, "v": Fraction(1, 2)})
    assert product_space(X, Y, "sum").d(("a", "u"), ("b", "v")) == lawvere(Fraction(3, 4))
    assert product_space(X, Y, "max").d(("a", "u"), ("b", "v")) == lawvere(Fraction(1, 2))
    for mode in ("sum", "max"):
        assert product_space(X, Y, mode).violations() == []


def test_product_of_points_is_point():
    one = space_from_table("lawvere", ["*"], {("*", "*"): lawvere(0)})
    p = product_space(one, one, "sum")
    assert p.points == (("*", "*"),) and p.d(("*", "*"), ("*", "*")) == L.top


def test_product_space_variant_mismatch():
    X = space_from_table("lawvere", ["*"], {("*", "*"): lawvere(0)})
    Y = space_from_table("boolean", ["*"], {("*", "*"): boolean(True)})
    with pytest.raises(VariantMismatch):
        product_space(X, Y)


def test_violations_detected():
    bad = space_from_table("lawvere", [0, 1, 2], {
        (x, y): lawvere(0 if x == y else (5 if (x, y) == (0, 2) else 1)) for x in range(3) for y in range(3)
    })
    assert any("triangle" in v for v in bad.violations())
