import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qmonoidal.diagram import (
    EMPTY,
    ID,
    SYM,
    DiagramError,
    DiagramTypeError,
    GeneratorSpec,
    Par,
    Seq,
    Signature,
    UnknownGenerator,
    canonical_wires,
    fritz_merge,
    id_n,
    permutation,
    sym_mn,
    tensor_all,
    typecheck,
)
from qmonoidal.samplers import random_term
from qmonoidal.semantics import Matrix, eval_CA, eval_HA, NONNEG_SEMIRING
from qmonoidal.syntax import ParseError, parse_term, print_term
from qmonoidal.diagram import distribution_term

SIG = Signature([GeneratorSpec("f", 2, 3), GeneratorSpec("g", 3, 1), GeneratorSpec("h", 2, 1), GeneratorSpec("k", 1, 1)])


def test_typing_rules():
    f, g, h, k = (SIG.gen(n) for n in "fghk")
    assert typecheck(Seq(f, g), SIG) == (2, 1)
    assert typecheck(Par(f, k), SIG) == (3, 4)
    with pytest.raises(DiagramTypeError, match="coarity 3 ≠ arity 2"):
        Seq(f, h)


def test_atoms():
    assert ID.type == (1, 1) and EMPTY.type == (0, 0) and SYM.type == (2, 2)


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        SIG.gen("nope")
    with pytest.raises(DiagramError):
        Signature([GeneratorSpec("id", 1, 1)])


def test_identities_and_symmetries():
    assert id_n(0) == EMPTY
    assert id_n(3).type == (3, 3)
    assert sym_mn(1, 1) == SYM
    assert sym_mn(2, 3).type == (5, 5)


def test_sym_2_1_matrix():
    assert eval_HA(sym_mn(2, 1)) == Matrix.from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 0]])


@pytest.mark.parametrize("m, n", [(1, 2), (2, 2), (3, 1), (2, 3)])
def test_sym_mn_is_block_swap(m, n):
    got = eval_HA(sym_mn(m, n), NONNEG_SEMIRING)
    size = m + n
    # input wire i goes to output (i + n) for the first block, (i - m) for the second
    want = [[0] * size for _ in range(size)]
    for i in range(size):
        want[(i + n) if i < m else (i - m)][i] = 1
    assert got == Matrix.from_rows(want)


def test_permutation_round_trip():
    p = permutation([2, 0, 1])
    assert eval_HA(p) == Matrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def test_canonical_wires_examples(ha):
    b, w = canonical_wires(2, 2, ha.signature)
    assert eval_HA(w) == Matrix.from_rows([[1, 0, 1, 0], [0, 1, 0, 1]])
    assert eval_HA(b) == Matrix.from_rows([[1, 0], [1, 0], [0, 1], [0, 1]])
    b1, w1 = canonical_wires(1, 1, ha.signature)
    assert eval_HA(b1) == Matrix.from_rows([[1]]) == eval_HA(w1)


def test_fritz_merge_examples(ca):
    sig = ca.signature
    e1, e2 = distribution_term([1, 0], sig), distribution_term([0, 1], sig)
    assert eval_CA(Seq(Par(e1, e2), fritz_merge(2, 2, sig))) == Matrix.from_rows([[1, 0], [0, 1]])
    half = distribution_term([Fraction(1, 2)] * 2, sig)
    assert eval_CA(Seq(Par(half, half), fritz_merge(2, 2, sig))) == Matrix.from_rows([[Fraction(1, 2)] * 2] * 2)
    col = distribution_term([Fraction(1, 3), Fraction(2, 3)], sig)
    assert eval_CA(Seq(col, fritz_merge(1, 2, sig))) == eval_CA(col)
    with pytest.raises(DiagramError):
        fritz_merge(2, 0, sig)


def test_parse_examples(ha, ca):
    t = parse_term("copy ; (id * del)", ha.signature)
    assert t == Seq(ha.signature.gen("copy"), Par(ID, ha.signature.gen("del")))
    assert t.type == (1, 1)
    u = parse_term("cc(1/2) * del", ca.signature)
    assert u == Par(ca.signature.gen("cc", Fraction(1, 2)), ca.signature.gen("del"))


def test_parse_type_error_has_span(ha):
    with pytest.raises(ParseError) as exc:
        parse_term("copy ; add ; add", ha.signature)
    assert "1 ≠ 2" in str(exc.value)
    assert exc.value.span[0] > 0


@pytest.mark.parametrize("text", ["copy ;", "copy * * del", "(copy", "copy$", "scalar", "copy(1/2)"])
def test_parse_rejects(ha, text):
    with pytest.raises(ParseError):
        parse_term(text, ha.signature)


def test_decimal_literals_are_exact(ha_nonneg):
    assert parse_term("scalar(0.25)", ha_nonneg.signature).gen.param == Fraction(1, 4)


def test_indexed_atoms(ha):
    assert parse_term("id_3", ha.signature) == id_n(3)
    assert parse_term("sym_2_1", ha.signature) == sym_mn(2, 1)


def test_precedence(ha):
    sig = ha.signature
    c, d = sig.gen("copy"), sig.gen("del")
    assert parse_term("copy ; del * del", sig) == Seq(c, Par(d, d))
    assert print_term(Seq(c, Par(d, d))) == "copy ; del * del"
    assert print_term(Par(Seq(c, Par(d, d)), ID)) == "(copy ; del * del) * id"


def test_round_trip_500_random_terms(ca, ha_nonneg):
    rng = random.Random(0)
    for i in range(500):
        th = ca if i % 2 else ha_nonneg
        t = random_term(th, rng, size=rng.randint(1, 7))
        assert parse_term(print_term(t), th.signature) == t


@given(st.lists(st.sampled_from(["copy", "del", "add", "zero", "id", "sym"]), min_size=1, max_size=4))
def test_tensor_types_add_up(names):
    from qmonoidal.theory import ha_signature

    sig = ha_signature()
    atoms = [parse_term(n, sig) for n in names]
    t = tensor_all(atoms)
    assert t.type == (sum(a.arity for a in atoms), sum(a.coarity for a in atoms))
    assert parse_term(print_term(t), sig) == t


def test_ill_typed_mutations_rejected(ha):
    # replacing the second half of a sequential composite with a wrongly typed term
    rng = random.Random(3)
    sig = ha.signature
    for _ in range(100):
        t = random_term(ha, rng, size=3)
        bad = [g for g in (sig.gen("copy"), sig.gen("add"), sig.gen("zero"), EMPTY) if g.arity != t.coarity]
        with pytest.raises(DiagramTypeError):
            Seq(t, rng.choice(bad))
