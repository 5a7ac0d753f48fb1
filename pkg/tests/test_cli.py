import dataclasses
import json
import re
import time

import pytest

from qmonoidal import certify as C
from qmonoidal import theory as T
from qmonoidal.cartesian import dumps_qel, qel_corpus
from qmonoidal.cli import main, parse_matrix_literal
from qmonoidal.diagram import Seq, stochastic_term
from qmonoidal.distance import WITNESS_A, WITNESS_B, WITNESS_C, WITNESS_C2
from qmonoidal.semantics import Matrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def columns(m: Matrix):
    return [m.column(j) for j in range(m.cols)]


def witness_terms(ca):
    sig = ca.signature
    c, c2 = stochastic_term(columns(WITNESS_C), 2, sig), stochastic_term(columns(WITNESS_C2), 2, sig)
    a, b = stochastic_term(columns(WITNESS_A), 2, sig), stochastic_term(columns(WITNESS_B), 2, sig)
    return Seq(c, a), Seq(c2, b)


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "--theory", "ca", "cc(1/2) * del")
    assert code == 0 and out.strip() == "[[1/2], [1/2], [0]]"
    code, out, _ = run(capsys, "eval", "--theory", "ha_bool", "copy")
    assert code == 0 and out.strip() == "[[1], [1]]"


def test_eval_json_roundtrip(capsys):
    code, out, _ = run(capsys, "--format", "json", "eval", "-t", "ca", "cc(1/3)")
    data = json.loads(out)
    assert data["entries"] == [["1/3"], ["2/3"]]
    assert Matrix.from_json(data).to_json() == data


def test_malformed_term(capsys):
    code, _, err = run(capsys, "eval", "copy ; ; del")
    assert code == 2
    assert "error" in err and "^" in err


def test_ill_typed_term(capsys):
    code, _, err = run(capsys, "parse", "copy ; copy")
    assert code == 2 and "type error" in err and "^" in err


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "-t", "ca", "cc(1/2) ; cop")
    assert code == 0 and out.splitlines()[-1] == ": 1 -> 1"


def test_term_from_file(capsys, tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("copy ; add\n")
    code, out, _ = run(capsys, "eval", f"@{p}")
    assert code == 0 and out.strip() == "[[1]]"
    code, _, err = run(capsys, "eval", f"@{tmp_path / 'missing'}")
    assert code == 2 and "cannot read" in err


def test_dist_composite_witness(capsys):
    f, g = witness_terms(T.builtin_theory("CA"))
    code, out, _ = run(capsys, "dist", "-t", "ca", str(f), str(g))
    assert code == 0 and out.strip() == "3/4"
    code, out, _ = run(capsys, "dist", "-t", "ca", "[[1], [0]]", "[[1/4], [3/4]]")
    assert out.strip() == "3/4"


def test_dist_identical(capsys):
    code, out, _ = run(capsys, "dist", "-t", "ca", "cc(1/3)", "cc(1/3)")
    assert out.strip() == "0"
    code, out, _ = run(capsys, "dist", "-t", "ha_bool", "copy", "copy")
    assert out.strip() == "⊤"
    code, out, _ = run(capsys, "dist", "-t", "ha_bool", "scalar(1)", "scalar(0)")
    assert out.strip() == "⊥"


def test_dist_all_methods(capsys):
    mu = "[[1/5], [1/5], [1/5], [1/5], [1/5]]"
    nu = "[[1/2], [0], [1/4], [0], [1/4]]"
    code, out, _ = run(capsys, "dist", "-t", "ca", mu, nu, "--method", "all")
    assert code == 0
    vals = dict(line.split(": ") for line in out.splitlines()[:-1])
    assert set(vals) == {"sum", "sup", "coupling"}
    assert set(vals.values()) == {"2/5"}
    assert out.splitlines()[-1] == "agree"


def test_dist_bad_inputs(capsys):
    code, _, err = run(capsys, "dist", "-t", "ca", "[[1/2], [1/3]]", "[[1], [0]]")
    assert code == 2 and "stochastic" in err
    code, _, err = run(capsys, "dist", "-t", "ca", "[[1], [0]]", "[[1]]")
    assert code == 2 and "shapes" in err
    with pytest.raises(Exception):
        parse_matrix_literal("[[1, x]]")


def test_prove_then_check(capsys, tmp_path):
    out_file = tmp_path / "c.cert"
    code, out, _ = run(capsys, "prove", "-t", "ba", "cc(1/2)", "cc(4/5)", "-o", str(out_file))
    assert code == 0
    eps1 = re.search(r"ε = (\S+)", out).group(1)
    assert eps1 == "3/10"
    code, out, _ = run(capsys, "check", str(out_file))
    assert code == 0
    assert re.search(r"ε = (\S+)", out).group(1) == eps1


def test_prove_random_pair_roundtrip(capsys, tmp_path):
    import random

    from qmonoidal.samplers import random_stochastic_term

    ba = T.builtin_theory("BA")
    rng = random.Random(2)
    f, g = random_stochastic_term(rng, 2, 3, ba), random_stochastic_term(rng, 2, 3, ba)
    p = tmp_path / "r.cert"
    run(capsys, "prove", "-t", "ba", str(f), str(g), "-o", str(p))
    code, out, _ = run(capsys, "check", str(p))
    assert code == 0
    assert re.search(r"ε = (\S+)", out).group(1) == str(C.expected_tvmax(f, g))


def test_check_corrupted(capsys, tmp_path):
    p = tmp_path / "c.cert"
    run(capsys, "prove", "-t", "ba", "cc(1/2)", "cc(4/5)", "-o", str(p))
    text = p.read_text()
    assert "AXIOM@tv[3/10] 3/10" in text
    p.write_text(text.replace("AXIOM@tv[3/10] 3/10", "AXIOM@tv[3/10] 1/10"))
    code, out, _ = run(capsys, "check", str(p))
    assert code == 1
    path = out.split(": ")[1]
    assert out.startswith("invalid certificate") and path.endswith("AXIOM@tv[3/10]") and "/" in path


def test_check_json(capsys, tmp_path):
    p = tmp_path / "c.json"
    run(capsys, "--format", "json", "prove", "-t", "ba", "cc(1/2)", "cc(0)", "-o", str(p))
    ba = T.builtin_theory("BA")
    cert = C.loads_certificate(p.read_text(), ba)
    assert str(C.check(cert, ba)) == "1/2"
    code, out, _ = run(capsys, "check", "--format", "json", "-t", "ba", str(p))
    data = json.loads(out)
    assert code == 0 and data["valid"] and data["eps"] == "1/2"


def test_prove_order_violation(capsys):
    code, out, _ = run(capsys, "prove", "-t", "preord_bool", "scalar(1)", "scalar(0)")
    assert code == 1 and "entry (0,0)" in out


def test_prove_order_ok_to_stdout(capsys):
    code, out, err = run(capsys, "prove", "-t", "preord_bool", "scalar(0)", "scalar(1)")
    assert code == 0 and out.startswith("; theory PreOrd_R") and "ε = ⊤" in err


def test_prove_without_quantitative_axioms(capsys):
    code, _, err = run(capsys, "prove", "-t", "ha_bool", "copy", "copy")
    assert code == 2


def test_axioms(capsys):
    for name in ("ha_bool", "ca", "ba", "preord_nonneg"):
        code, out, _ = run(capsys, "axioms", "-t", name)
        assert code == 0 and "hold" in out


def test_unknown_theory(capsys):
    code, _, err = run(capsys, "eval", "-t", "nonsense", "id")
    assert code == 2 and "nonsense" in err


def test_translate(capsys):
    code, out, _ = run(capsys, "translate", "f(x1,x1)")
    assert code == 0 and out.splitlines()[0] == "copy ; f"
    code, out, _ = run(capsys, "translate", "x1", "--context", "2")
    assert out.splitlines()[0] == "id * del"
    code, _, err = run(capsys, "translate", "x3", "--context", "2")
    assert code == 2 and "too small" in err


def test_translate_qel(capsys, tmp_path):
    cert = qel_corpus(count=1, seed=4)[0]
    p = tmp_path / "p.qel"
    p.write_text(dumps_qel(cert))
    out_file = tmp_path / "sim.cert"
    code, out, _ = run(capsys, "translate", "--qel", str(p), "-o", str(out_file))
    assert code == 0
    qel, mono = re.findall(r"ε = ([^\s;]+)", out)[:2]
    assert qel == mono
    assert out_file.read_text().startswith("(")


def test_selftest_quantale_fast(capsys):
    t0 = time.perf_counter()
    code, out, _ = run(capsys, "selftest", "quantale", "--seed", "7")
    assert time.perf_counter() - t0 < 1.0
    assert code == 0 and "all suites passed" in out


def test_selftest_json(capsys):
    code, out, _ = run(capsys, "selftest", "cartesian", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and "cartesian" in data["suites"]


def test_flipped_tv_axiom_is_caught(capsys, monkeypatch):
    flipped = dataclasses.replace(T.TV_SCHEMA, eps="{co}")
    monkeypatch.setattr(T, "TV_SCHEMA", flipped)
    code, out, _ = run(capsys, "selftest", "distance")
    assert code == 1 and "FAIL" in out
    code, out, _ = run(capsys, "selftest", "certify")
    assert code == 1 and "FAIL" in out
