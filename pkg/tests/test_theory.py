import random
from fractions import Fraction

import pytest
from hypothesis import given

from qmonoidal.quantale import get_quantale, lawvere, boolean
from qmonoidal.semantics import RATIONAL_SEMIRING, eval_CA
from qmonoidal.theory import (
    ALL_CLOSURES,
    SCALAR_GRID,
    SHIPPED,
    THEORY_DIR_ENV,
    ClosureConfig,
    DomainError,
    TheoryError,
    TheoryFileError,
    axiom_soundness,
    builtin_theory,
    dumps_theory,
    load_theory,
    loads_theory,
    resolve_theory,
    save_theory,
    shipped_theory_text,
)

from conftest import unit_interval


def test_ha_has_18_equations(ha):
    assert len(ha.equations) == 18
    assert ha.quantitative == ()


def test_preord_closure(preord):
    assert preord.closure == ClosureConfig("sum", "sum", False)
    assert preord.quantale_name == "boolean"


def test_ba_closure(ba):
    assert ba.closure == ClosureConfig("sum", "meet", True)
    assert ba.quantale_name == "lawvere"


def test_unknown_theory():
    with pytest.raises(TheoryError):
        builtin_theory("nope")


def test_preord_rejects_non_monotone_semiring():
    with pytest.raises(TheoryError, match="not monotone"):
        builtin_theory("PreOrd_R", RATIONAL_SEMIRING)


def test_order_instance(preord):
    q = preord.instantiate("order", (0, 1))
    assert str(q.lhs) == "scalar(0)" and str(q.rhs) == "scalar(1)"
    assert q.eps == boolean(True)


def test_order_domain(preord):
    with pytest.raises(DomainError):
        preord.instantiate("order", (1, 0))


def test_tv_instances(ba):
    q = ba.instantiate("tv", (Fraction(1, 2),))
    assert str(q.lhs) == "cc(1/2) * del" and str(q.rhs) == "del * cc(1/2)"
    assert q.eps == lawvere(Fraction(1, 2))
    assert ba.instantiate("tv", (0,)).eps == get_quantale("lawvere").top
    assert ba.instantiate("tv", (Fraction(3, 10),)).eps == lawvere(Fraction(3, 10))
    with pytest.raises(DomainError):
        ba.instantiate("tv", (Fraction(3, 2),))


@given(unit_interval, unit_interval)
def test_convex_associativity_holds(lam, mu):
    ca = builtin_theory("CA")
    q = ca.instantiate("convassoc", (lam, mu))
    assert eval_CA(q.lhs) == eval_CA(q.rhs)


def test_convex_associativity_zero_over_zero(ca):
    # λ = μ = 1 makes the second weight 0/0, read as 1
    q = ca.instantiate("convassoc", (1, 1))
    assert eval_CA(q.lhs) == eval_CA(q.rhs)
    assert "cc(1)" in str(q.rhs)


@pytest.mark.parametrize("name, ring", [("HA_R", "bool"), ("HA_R", "nonneg"), ("CA", None), ("BA", None),
                                        ("PreOrd_R", "bool"), ("PreOrd_R", "nonneg")])
def test_axiom_soundness(name, ring):
    assert axiom_soundness(builtin_theory(name, ring), SCALAR_GRID) == []


def test_closure_text_round_trip():
    for c in ALL_CLOSURES:
        assert ClosureConfig.from_text(c.to_text()) == c
    assert len(ALL_CLOSURES) == 8


def test_closure_rejects_bad_values():
    with pytest.raises(TheoryError):
        ClosureConfig("max", "sum")
    with pytest.raises(TheoryError):
        ClosureConfig.from_text("seq=sum colour=red")


def test_meet_closure_needs_ijd(monkeypatch):
    import qmonoidal.quantale as Q

    monkeypatch.setattr(Q, "ijd_check", lambda *a, **k: False)
    with pytest.raises(TheoryError, match="IJD"):
        ClosureConfig("sum", "meet").validate(get_quantale("lawvere"))


@pytest.mark.parametrize("name", sorted(SHIPPED))
def test_shipped_files_match_builtins(name):
    base, ring = SHIPPED[name]
    assert loads_theory(shipped_theory_text(name)) == builtin_theory(base, ring)


@pytest.mark.parametrize("name, ring", [("BA", None), ("PreOrd_R", "nonneg"), ("HA_R", "bool")])
def test_save_load_round_trip(tmp_path, name, ring):
    th = builtin_theory(name, ring)
    p = tmp_path / "t.thy"
    save_theory(th, p)
    assert load_theory(p) == th
    assert loads_theory(dumps_theory(th)) == th


def test_ill_typed_equation_reports_line_and_label():
    text = shipped_theory_text("ca").replace("comm: sym ; cop == cop", "comm: sym ; cop == cop * cop")
    with pytest.raises(TheoryFileError) as exc:
        loads_theory(text, "bad.thy")
    msg = str(exc.value)
    assert msg.startswith("bad.thy:17:") and "comm" in msg
    assert exc.value.line == 17


def test_unknown_section():
    with pytest.raises(TheoryFileError):
        loads_theory("[colours]\nred\n")


def test_user_theory(tmp_path):
    text = """\
[theory]
name = tiny
[quantale]
lawvere
[model]
none
[signature]
a : 1 -> 1
b : 1 -> 1
[equations]
ab: a ; b == b ; a
[quantitative]
near: a ==(1/3) b
[closure]
seq=sum par=sum symm=true
"""
    th = loads_theory(text)
    assert th.model is None
    assert th.instantiate("near").eps == lawvere(Fraction(1, 3))
    assert loads_theory(dumps_theory(th)) == th


def test_resolve_theory_from_env(tmp_path, monkeypatch):
    (tmp_path / "mine.thy").write_text(shipped_theory_text("ba"))
    monkeypatch.setenv(THEORY_DIR_ENV, str(tmp_path))
    assert resolve_theory("mine") == builtin_theory("BA")
    assert resolve_theory("ha_bool") == builtin_theory("HA_R", "bool")
    assert resolve_theory("preord:nonneg") == builtin_theory("PreOrd_R", "nonneg")
    with pytest.raises(TheoryError):
        resolve_theory("missing")
