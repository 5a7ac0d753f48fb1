"""Command-line interface: ``qmt <subcommand> …``.

Exit codes: 0 success, 1 semantic failure (not derivable, invalid certificate,
law violation), 2 input error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import certify as C
from . import selftest
from .cartesian import (
    CartesianError,
    QELError,
    associated_monoidal_theory,
    check_qel,
    load_cart_theory,
    loads_qel,
    phi_translate,
    sample_theory,
    simulate_qel_in_monoidal,
)
from .diagram import DiagramError
from .distance import DistanceError, MethodUnavailable, TV_METHODS, entrywise_leq, tv, tvmax
from .quantale import QuantaleError, boolean
from .semantics import Matrix, SemanticsError, model_for
from .syntax import ParseError
from .theory import THEORY_DIR_ENV, TheoryError, axiom_soundness, resolve_theory

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read_arg(text: str) -> str:
    """``@path`` reads a term (or other input) from a file."""
    if text.startswith("@"):
        try:
            return Path(text[1:]).read_text(encoding="utf-8").strip()
        except OSError as exc:
            raise InputError(f"cannot read {text[1:]}: {exc.strerror}") from None
    return text


def _theory(args):
    return resolve_theory(args.theory)


def _term(theory, text):
    return theory.parse(_read_arg(text))


def _emit(args, text: str, data) -> None:
    if args.format == "json":
        print(json.dumps(data, indent=2, ensure_ascii=False))
    else:
        print(text)


# -- subcommands ----------------------------------------------------------------------


def cmd_parse(args) -> int:
    th = _theory(args)
    t = _term(th, args.term)
    _emit(args, f"{t}\n: {t.arity} -> {t.coarity}", {"term": str(t), "arity": t.arity, "coarity": t.coarity})
    return OK


def cmd_eval(args) -> int:
    th = _theory(args)
    t = _term(th, args.term)
    m = model_for(th).eval(t)
    _emit(args, m.to_text(), m.to_json())
    return OK


_NUMBER = re.compile(r"(-?\d+(?:\.\d+)?(?:/\d+)?)")


def parse_matrix_literal(text: str) -> Matrix:
    """``[[1, 1/2], [0, 1/2]]`` (a list of rows) to an exact matrix."""
    try:
        rows = json.loads(_NUMBER.sub(r'"\1"', text))
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ValueError("expected a list of rows")
        return Matrix.from_rows([[Fraction(x) for x in r] for r in rows])
    except (ValueError, TypeError, ZeroDivisionError, SemanticsError) as exc:
        raise InputError(f"bad matrix literal {text!r}: {exc}") from None


def _operand(th, text):
    """A term, or an inline matrix literal, evaluated in the theory's model."""
    text = _read_arg(text)
    if text.lstrip().startswith("["):
        return parse_matrix_literal(text)
    return model_for(th).eval(th.parse(text))


def cmd_dist(args) -> int:
    th = _theory(args)
    a, b = _operand(th, args.lhs), _operand(th, args.rhs)
    if (a.rows, a.cols) != (b.rows, b.cols):
        raise InputError(f"operands have different shapes {a.rows}×{a.cols} and {b.rows}×{b.cols}")
    if th.model == "matrix":
        d = boolean(entrywise_leq(a, b, th.semiring))
        _emit(args, str(d), {"distance": d.to_text()})
        return OK
    if th.model != "stochastic":
        raise InputError(f"theory {th.name} has no model to measure distances in")
    if not (a.is_stochastic() and b.is_stochastic()):
        raise InputError("operands are not stochastic matrices")
    if args.method == "default":
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            d = tvmax(a, b)
        _emit(args, str(d), {"distance": str(d)})
        return OK
    methods = list(TV_METHODS) if args.method == "all" else [args.method]
    per = {}
    for meth in methods:
        try:
            per[meth] = max((tv(a.column(j), b.column(j), meth) for j in range(a.cols)), default=0)
        except MethodUnavailable as exc:
            per[meth] = None
            print(f"warning: {exc}", file=sys.stderr)
    values = {v for v in per.values() if v is not None}
    agree = len(values) == 1
    if args.method != "all":
        v = per[args.method]
        _emit(args, str(v), {"distance": str(v), "method": args.method})
        return OK
    lines = [f"{m}: {v if v is not None else 'unavailable'}" for m, v in per.items()]
    lines.append("agree" if agree else "DISAGREE")
    _emit(args, "\n".join(lines), {"methods": {m: None if v is None else str(v) for m, v in per.items()}, "agree": agree})
    return OK if agree else FAILED


def _prover(th):
    if th.model == "matrix" and th.closure.seq == "sum" and th.schema("order"):
        return C.prove_matrix_order
    if th.model == "stochastic":
        return C.prove_tv_general
    raise InputError(f"no prover for theory {th.name}")


def cmd_prove(args) -> int:
    th = _theory(args)
    try:
        prover = _prover(th)
    except TheoryError:
        raise InputError(f"theory {th.name} has no quantitative axioms to prove with") from None
    f, g = _term(th, args.lhs), _term(th, args.rhs)
    try:
        cert = prover(f, g, th)
    except C.NotDerivable as exc:
        _emit(args, str(exc), {"derivable": False, "error": str(exc),
                               "entry": list(exc.entry) if getattr(exc, "entry", None) else None})
        return FAILED
    eps = C.check(cert, th)
    text = json.dumps(C.certificate_to_json(cert), indent=2) if args.format == "json" else C.dumps_certificate(cert, th.name)
    if args.output:
        Path(args.output).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        _emit(args, f"ε = {eps}  ({cert.size()} nodes, written to {args.output})",
              {"eps": eps.to_text(), "nodes": cert.size(), "output": args.output})
    else:
        print(text, end="" if text.endswith("\n") else "\n")
        print(f"; ε = {eps}", file=sys.stderr)
    return OK


def cmd_check(args) -> int:
    try:
        text = Path(args.certificate).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {args.certificate}: {exc.strerror}") from None
    name = args.theory or C.certificate_theory_hint(text)
    if name is None:
        raise InputError("certificate names no theory; pass --theory")
    th = resolve_theory(name)
    try:
        cert = C.loads_certificate(text, th)
        report = C.check_report(cert, th, assume_refl=args.assume_refl)
    except C.CertificateError as exc:
        path = "/".join(exc.path) if getattr(exc, "path", None) else "root"
        _emit(args, f"invalid certificate: {exc}", {"valid": False, "error": str(exc), "path": path})
        return FAILED
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON certificate: {exc}") from None
    trusted = [f"{l} = {r}" for l, r in report.trusted]
    text_out = f"ε = {report.eps}  ({report.nodes} nodes checked)"
    if trusted:
        text_out += "\ntaken on trust:\n" + "\n".join(f"  {t}" for t in trusted)
    _emit(args, text_out, {"valid": True, "eps": report.eps.to_text(), "nodes": report.nodes, "trusted": trusted})
    return OK


def cmd_axioms(args) -> int:
    th = _theory(args)
    failures = axiom_soundness(th)
    n = len(th.equations) + len(th.quantitative)
    if failures:
        _emit(args, "\n".join(["FAIL " + f for f in failures]), {"ok": False, "failures": failures})
        return FAILED
    _emit(args, f"all {n} axiom schemas of {th.name} hold on the scalar grid", {"ok": True, "schemas": n})
    return OK


def _cart_theory(args):
    if args.theory in (None, "sample"):
        return sample_theory()
    return load_cart_theory(args.theory)


def cmd_translate(args) -> int:
    ct = _cart_theory(args)
    mono = associated_monoidal_theory(ct)
    if args.qel:
        try:
            cert = loads_qel(Path(args.qel).read_text(encoding="utf-8"), ct)
        except OSError as exc:
            raise InputError(f"cannot read {args.qel}: {exc.strerror}") from None
        try:
            eps = check_qel(cert, ct)
            _, mc = simulate_qel_in_monoidal(cert, ct, mono)
            report = C.check_report(mc, mono, assume_refl=args.assume_refl)
        except (QELError, C.CertificateError) as exc:
            _emit(args, f"invalid: {exc}", {"valid": False, "error": str(exc)})
            return FAILED
        same = report.eps == eps
        text = f"QEL ε = {eps}; monoidal ε = {report.eps} ({report.nodes} nodes){'' if same else '  MISMATCH'}"
        if args.output:
            Path(args.output).write_text(C.dumps_certificate(mc), encoding="utf-8")
        _emit(args, text, {"qel_eps": eps.to_text(), "monoidal_eps": report.eps.to_text(), "nodes": report.nodes, "agree": same})
        return OK if same else FAILED
    if args.term is None:
        raise InputError("give a term or --qel FILE")
    t = ct.parse(_read_arg(args.term))
    from .cartesian import max_var

    n = args.context if args.context is not None else max_var(t)
    d = phi_translate(t, n, mono.signature)
    _emit(args, f"{d}\n: {d.arity} -> {d.coarity}", {"term": str(d), "arity": d.arity, "coarity": d.coarity})
    return OK


def cmd_selftest(args) -> int:
    try:
        results = selftest.run(args.scope, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    ok = all(o.ok for outs in results.values() for o in outs)
    if args.format == "json":
        data = {s: [{"name": o.name, "ok": o.ok, "detail": o.detail} for o in outs] for s, outs in results.items()}
        print(json.dumps({"ok": ok, "suites": data}, indent=2, ensure_ascii=False))
    else:
        for suite, outs in results.items():
            print(f"[{suite}]")
            for o in outs:
                print("  " + o.line())
        print("all suites passed" if ok else "FAILURES")
    return OK if ok else FAILED


# -- wiring -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qmt",
        description="Quantitative monoidal theories: evaluate diagrams, compute distances, "
        "produce and check derivation certificates.",
        epilog=f"Theories are built-in names (ha_bool, preord_nonneg, ca, ba, …), .thy files, "
        f"or files in ${THEORY_DIR_ENV}.",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, theory=True):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        if theory:
            sp.add_argument("--theory", "-t", default="ha_bool", help="theory name or .thy path")
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        return sp

    sp = add("parse", cmd_parse, "parse and type a term")
    sp.add_argument("term")
    sp = add("eval", cmd_eval, "evaluate a term to its matrix")
    sp.add_argument("term")
    sp = add("dist", cmd_dist, "semantic distance between two terms")
    sp.add_argument("lhs")
    sp.add_argument("rhs")
    sp.add_argument("--method", choices=("default", "all") + tuple(TV_METHODS), default="default")
    sp = add("prove", cmd_prove, "emit a certificate for lhs =ε rhs")
    sp.add_argument("lhs")
    sp.add_argument("rhs")
    sp.add_argument("--output", "-o")
    sp = add("check", cmd_check, "validate a certificate file", theory=False)
    sp.add_argument("certificate")
    sp.add_argument("--theory", "-t", help="override the theory named in the certificate header")
    sp.add_argument("--assume-refl", action="store_true", help="trust REFL leaves that cannot be decided")
    sp = add("axioms", cmd_axioms, "check a theory's axioms in its model")
    sp = add("translate", cmd_translate, "translate cartesian terms or QEL proofs", theory=False)
    sp.add_argument("term", nargs="?")
    sp.add_argument("--theory", "-t", help="cartesian theory file (default: a built-in two-operation sample)")
    sp.add_argument("--context", "-n", type=int)
    sp.add_argument("--qel", help="QEL certificate to check and simulate")
    sp.add_argument("--output", "-o", help="where to write the simulated certificate")
    sp.add_argument("--assume-refl", action="store_true")
    sp = add("selftest", cmd_selftest, "run the property suites", theory=False)
    sp.add_argument("scope", nargs="?", default="all", choices=tuple(selftest.SUITES) + ("all",))
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"error: {exc.render()}", file=sys.stderr)
    except (InputError, TheoryError, CartesianError, QELError, DiagramError, QuantaleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (SemanticsError, DistanceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return BAD_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
