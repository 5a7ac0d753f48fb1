"""Cartesian terms, unconditional quantitative equational logic, and the Φ-translation.

Variables are 1-based indices ``x1, x2, …`` into an explicit context of size
``n``.  :func:`phi_translate` turns a term in context ``n`` into a diagram
``n → 1`` over the operations plus a copy/delete comonoid, and
:func:`simulate_qel_in_monoidal` replays a QEL proof as a monoidal certificate.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

from .diagram import (
    EMPTY,
    ID,
    SYM,
    DiagramError,
    Empty,
    Gen,
    GeneratorSpec,
    Id,
    Par,
    Seq,
    Signature,
    Sym,
    Term,
    id_n,
    permutation,
    seq_all,
    tensor_all,
    _block_transpose,
)
from .quantale import QuantaleError, QuantaleValue, get_quantale
from .semantics import SemanticsError, Undecidable
from .theory import ClosureConfig, QuantTheory, Schema, TheoryError, TheoryFileError


class CartesianError(ValueError):
    pass


# -- terms ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise CartesianError(f"variable indices start at 1, got x{self.index}")

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class Op:
    name: str
    args: tuple = ()

    def __str__(self):
        return f"{self.name}({', '.join(str(a) for a in self.args)})" if self.args else self.name


CartTerm = Union[Var, Op]


def variables(t: CartTerm) -> set[int]:
    if isinstance(t, Var):
        return {t.index}
    out: set[int] = set()
    for a in t.args:
        out |= variables(a)
    return out


def max_var(t: CartTerm) -> int:
    return max(variables(t), default=0)


def substitute(t: CartTerm, sigma: Union[Mapping[int, CartTerm], Sequence[CartTerm]]) -> CartTerm:
    """Simultaneous substitution; ``sigma`` maps indices (or is a list for x1, x2, …)."""
    if not isinstance(sigma, Mapping):
        sigma = {i + 1: s for i, s in enumerate(sigma)}
    if isinstance(t, Var):
        try:
            return sigma[t.index]
        except KeyError:
            raise CartesianError(f"unbound variable x{t.index} in substitution") from None
    return Op(t.name, tuple(substitute(a, sigma) for a in t.args))


def positions(t: CartTerm, prefix=()):
    yield prefix, t
    if isinstance(t, Op):
        for i, a in enumerate(t.args):
            yield from positions(a, prefix + (i,))


def replace_at(t: CartTerm, pos, new: CartTerm) -> CartTerm:
    if not pos:
        return new
    args = list(t.args)
    args[pos[0]] = replace_at(args[pos[0]], pos[1:], new)
    return Op(t.name, tuple(args))


def subterm(t: CartTerm, pos) -> Optional[CartTerm]:
    for i in pos:
        if not isinstance(t, Op) or i >= len(t.args):
            return None
        t = t.args[i]
    return t


def match(pattern: CartTerm, t: CartTerm, binding: dict) -> bool:
    if isinstance(pattern, Var):
        bound = binding.get(pattern.index)
        if bound is None:
            binding[pattern.index] = t
            return True
        return bound == t
    if not isinstance(t, Op) or t.name != pattern.name or len(t.args) != len(pattern.args):
        return False
    return all(match(p, a, binding) for p, a in zip(pattern.args, t.args))


_CTOK = re.compile(r"\s*(?:(x\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


def parse_cart(text: str, ops: Mapping[str, int]) -> CartTerm:
    """Parse ``xN | IDENT "(" t ("," t)* ")"`` (a bare IDENT denotes a constant)."""
    toks = []
    for m in _CTOK.finditer(text):
        if m.group(0).strip() == "":
            continue
        toks.append((m.group(1) or m.group(2) or m.group(3), m.start(0)))
    pos = 0

    def fail(msg):
        at = toks[pos][1] if pos < len(toks) else len(text)
        raise CartesianError(f"{msg} at {at}")

    def term():
        nonlocal pos
        if pos >= len(toks):
            fail("unexpected end of input")
        tok = toks[pos][0]
        pos += 1
        if re.fullmatch(r"x\d+", tok) and tok not in ops:
            return Var(int(tok[1:]))
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok):
            pos -= 1
            fail(f"unexpected {tok!r}")
        if tok not in ops:
            pos -= 1
            fail(f"unknown operation {tok!r}")
        args = []
        if pos < len(toks) and toks[pos][0] == "(":
            pos += 1
            args.append(term())
            while pos < len(toks) and toks[pos][0] == ",":
                pos += 1
                args.append(term())
            if pos >= len(toks) or toks[pos][0] != ")":
                fail("expected ')'")
            pos += 1
        if len(args) != ops[tok]:
            pos -= 1
            fail(f"operation {tok} takes {ops[tok]} argument(s), got {len(args)}")
        return Op(tok, tuple(args))

    t = term()
    if pos != len(toks):
        fail(f"unexpected {toks[pos][0]!r}")
    return t


# -- theories ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CartAxiom:
    label: str
    ctx: int
    lhs: CartTerm
    rhs: CartTerm
    eps: Optional[QuantaleValue] = None


@dataclass
class CartTheory:
    name: str
    ops: dict
    equations: list = field(default_factory=list)
    quantitative: list = field(default_factory=list)
    quantale_name: str = "lawvere"
    symm: bool = True

    def __post_init__(self):
        for ax in self.equations + self.quantitative:
            for t in (ax.lhs, ax.rhs):
                self.check_term(t, ax.ctx)

    @property
    def quantale(self):
        return get_quantale(self.quantale_name)

    def axiom(self, label: str) -> CartAxiom:
        for ax in self.equations + self.quantitative:
            if ax.label == label:
                return ax
        raise CartesianError(f"theory {self.name} has no axiom {label!r}")

    def check_term(self, t: CartTerm, ctx: int) -> None:
        if isinstance(t, Var):
            if t.index > ctx:
                raise CartesianError(f"variable x{t.index} outside context of size {ctx}")
            return
        if self.ops.get(t.name) != len(t.args):
            raise CartesianError(f"ill-formed application {t}")
        for a in t.args:
            self.check_term(a, ctx)

    def parse(self, text: str) -> CartTerm:
        return parse_cart(text, self.ops)


def loads_cart_theory(text: str, path: str | None = None) -> CartTheory:
    """Sections: [theory] name=…, [quantale], [operations] ``f : 2``,
    [equations] ``label: s == t``, [quantitative] ``label: s ==(eps) t``, [closure] ``symm=…``."""
    section = None
    name, quantale, symm = None, "lawvere", True
    ops: dict[str, int] = {}
    raw_eq, raw_q = [], []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            section = line.strip("[]").strip().lower()
            continue
        if section == "theory":
            name = line.partition("=")[2].strip()
        elif section == "quantale":
            quantale = line
        elif section == "operations":
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_']*)\s*:\s*(\d+)", line)
            if not m:
                raise TheoryFileError(f"bad operation line {line!r}", ln, path)
            ops[m.group(1)] = int(m.group(2))
        elif section == "equations":
            raw_eq.append((ln, line))
        elif section == "quantitative":
            raw_q.append((ln, line))
        elif section == "closure":
            for part in line.split():
                k, _, v = part.partition("=")
                if k == "symm":
                    symm = v == "true"
        else:
            raise TheoryFileError(f"unexpected line {line!r}", ln, path)
    try:
        q = get_quantale(quantale)
    except QuantaleError as exc:
        raise TheoryFileError(str(exc), None, path) from None

    def axiom(ln, line, quant):
        label, _, body = line.partition(":")
        try:
            if quant:
                m = re.fullmatch(r"(.*?)==\(([^)]*)\)(.*)", body)
                if not m:
                    raise CartesianError("expected 'lhs ==(eps) rhs'")
                s, eps, t = m.group(1), q.parse(m.group(2)), m.group(3)
            else:
                s, _, t = body.partition("==")
                eps = None
            ls, rs = parse_cart(s.strip(), ops), parse_cart(t.strip(), ops)
        except (CartesianError, QuantaleError) as exc:
            raise TheoryFileError(f"axiom {label.strip()}: {exc}", ln, path) from None
        return CartAxiom(label.strip(), max(max_var(ls), max_var(rs)), ls, rs, eps)

    return CartTheory(
        name or "cartesian",
        ops,
        [axiom(ln, line, False) for ln, line in raw_eq],
        [axiom(ln, line, True) for ln, line in raw_q],
        q.name,
        symm,
    )


def load_cart_theory(path) -> CartTheory:
    return loads_cart_theory(Path(path).read_text(encoding="utf-8"), str(path))


# -- Φ translation ----------------------------------------------------------------------


def comonoid_signature(theory: CartTheory) -> Signature:
    specs = [GeneratorSpec(o, p, 1) for o, p in theory.ops.items()]
    return Signature(specs + [GeneratorSpec("copy", 1, 2), GeneratorSpec("del", 1, 0)])


def _fan(sig: Signature, k: int) -> Term:
    if k == 0:
        return sig.gen("del")
    if k == 1:
        return ID
    if k == 2:
        return sig.gen("copy")
    return Seq(sig.gen("copy"), Par(ID, _fan(sig, k - 1)))


def copy_bundle(sig: Signature, n: int, k: int) -> Term:
    """``n → k·n``: ``k`` copies of the ``n`` context wires, bundle after bundle."""
    fans = tensor_all([_fan(sig, k) for _ in range(n)])
    if n <= 1 or k <= 1:
        return fans
    return Seq(fans, permutation(_block_transpose(n, k)))


def _seq_nontrivial(parts: Sequence[Term]) -> Term:
    kept = [p for p in parts if p != id_n(p.arity) or p.arity != p.coarity]
    if not kept:
        return parts[-1]
    return seq_all(kept)


def phi_translate(t: CartTerm, n: int, sig: Signature) -> Term:
    """The diagram ``n → 1`` of a term in context ``n``."""
    if isinstance(t, Var):
        if t.index > n:
            raise CartesianError(f"context of size {n} too small for x{t.index}")
        return tensor_all([ID if i == t.index else sig.gen("del") for i in range(1, n + 1)])
    p = len(t.args)
    o = sig.gen(t.name)
    if p == 0:
        if n == 0:
            return o
        return Seq(tensor_all([sig.gen("del")] * n), o)
    middle = tensor_all([phi_translate(a, n, sig) for a in t.args])
    return _seq_nontrivial([copy_bundle(sig, n, p), middle, o])


def tuple_term(terms: Sequence[CartTerm], n: int, sig: Signature) -> Term:
    """The diagram ``n → k`` of a ``k``-tuple of terms in context ``n``."""
    k = len(terms)
    if k == 0:
        return tensor_all([sig.gen("del")] * n) if n else EMPTY
    middle = tensor_all([phi_translate(a, n, sig) for a in terms])
    return _seq_nontrivial([copy_bundle(sig, n, k), middle])


# -- the free cartesian model ------------------------------------------------------------


def _shift(t: CartTerm, k: int) -> CartTerm:
    if isinstance(t, Var):
        return Var(t.index + k)
    return Op(t.name, tuple(_shift(a, k) for a in t.args))


class CartesianModel:
    """Evaluates a diagram ``n → m`` to an ``m``-tuple of terms over ``x1..xn``.

    This is the free cartesian category on the operations, so it decides
    equality modulo the comonoid and naturality equations; with extra
    equations it can only confirm equalities.
    """

    name = "cartesian"

    def __init__(self, ops: Mapping[str, int], faithful: bool):
        self.ops = dict(ops)
        self.faithful = faithful
        self._cache: dict = {}

    def eval(self, term: Term) -> tuple:
        hit = self._cache.get(term)
        if hit is not None:
            return hit
        if isinstance(term, Gen):
            g = term.gen.name
            if g == "copy":
                out = (Var(1), Var(1))
            elif g == "del":
                out = ()
            elif g in self.ops:
                out = (Op(g, tuple(Var(i + 1) for i in range(self.ops[g]))),)
            else:
                raise SemanticsError(f"generator {g!r} is not a cartesian operation")
        elif isinstance(term, Id):
            out = (Var(1),)
        elif isinstance(term, Sym):
            out = (Var(2), Var(1))
        elif isinstance(term, Empty):
            out = ()
        elif isinstance(term, Seq):
            first, second = self.eval(term.left), self.eval(term.right)
            out = tuple(substitute(t, first) for t in second)
        elif isinstance(term, Par):
            top, bottom = self.eval(term.top), self.eval(term.bottom)
            out = top + tuple(_shift(t, term.top.arity) for t in bottom)
        else:
            raise SemanticsError(f"not a diagram term: {term!r}")
        self._cache[term] = out
        return out


def associated_monoidal_theory(theory: CartTheory) -> QuantTheory:
    """The monoidal theory over operations + copy/delete with comonoid and naturality
    equations, the translated equations, and the translated quantitative axioms."""
    sig = comonoid_signature(theory)
    eqs = [
        Schema("copassoc", (), "copy ; (copy * id)", "copy ; (id * copy)"),
        Schema("copcomm", (), "copy ; sym", "copy"),
        Schema("copunit", (), "copy ; (del * id)", "id"),
    ]
    for o, p in theory.ops.items():
        gen = sig.gen(o)
        eqs.append(Schema(f"nat_copy_{o}", (), str(Seq(gen, sig.gen("copy"))),
                          str(Seq(copy_bundle(sig, p, 2), Par(gen, gen))) if p else str(Par(gen, gen))))
        eqs.append(Schema(f"nat_del_{o}", (), str(Seq(gen, sig.gen("del"))),
                          str(tensor_all([sig.gen("del")] * p)) if p else "empty"))
    for ax in theory.equations:
        eqs.append(Schema(ax.label, (), str(phi_translate(ax.lhs, ax.ctx, sig)), str(phi_translate(ax.rhs, ax.ctx, sig))))
    quants = [
        Schema(ax.label, (), str(phi_translate(ax.lhs, ax.ctx, sig)), str(phi_translate(ax.rhs, ax.ctx, sig)),
               ax.eps.to_text())
        for ax in theory.quantitative
    ]
    out = QuantTheory(theory.name + "'", sig, tuple(eqs), tuple(quants),
                      ClosureConfig("sum", "meet", theory.symm), theory.quantale_name, "cartesian", None)
    out.cartesian_ops = dict(theory.ops)  # type: ignore[attr-defined]
    out.cartesian_faithful = not theory.equations  # type: ignore[attr-defined]
    return out


def cartesian_model(theory: QuantTheory) -> CartesianModel:
    cached = getattr(theory, "_cartesian_model", None)
    if cached is None:
        ops = getattr(theory, "cartesian_ops", None)
        if ops is None:
            ops = {s.name: s.arity for s in theory.signature if s.name not in ("copy", "del") and s.coarity == 1}
        cached = CartesianModel(ops, getattr(theory, "cartesian_faithful", False))
        theory._cartesian_model = cached
    return cached


# -- QEL certificates ---------------------------------------------------------------------

QEL_RULES = ("BOT'", "MON'", "CONT'", "REFL'", "SYMM'", "TRIANG", "SUBQ", "NEXP", "AXIOM")


@dataclass(frozen=True)
class QELCertificate:
    rule: str
    eps: QuantaleValue
    ctx: int
    lhs: CartTerm
    rhs: CartTerm
    children: tuple = ()
    label: Optional[str] = None  # AXIOM: axiom label; NEXP: operation name
    sigma: tuple = ()  # SUBQ: terms substituted for x1..xk of the premise
    chain: tuple = ()  # REFL': intermediate terms of an equational rewrite chain

    def __post_init__(self):
        if self.rule not in QEL_RULES:
            raise CartesianError(f"unknown QEL rule {self.rule!r}")

    def nodes(self):
        stack = [((), self)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for i in reversed(range(len(node.children))):
                stack.append((path + (i,), node.children[i]))


class QELError(ValueError):
    def __init__(self, message, path=()):
        self.path = tuple(path)
        super().__init__(f"{'/'.join(self.path) or 'root'}: {message}")


def _one_step(u: CartTerm, v: CartTerm, theory: CartTheory) -> bool:
    """Whether ``v`` arises from ``u`` by rewriting one subterm with an equation of E."""
    for pos, sub in positions(u):
        target = subterm(v, pos)
        if target is None or replace_at(u, pos, target) != v:
            continue
        for ax in theory.equations:
            for l, r in ((ax.lhs, ax.rhs), (ax.rhs, ax.lhs)):
                binding: dict = {}
                if match(l, sub, binding) and match(r, target, binding):
                    return True
    return False


def check_qel(cert: QELCertificate, theory: CartTheory) -> QuantaleValue:
    q = theory.quantale

    def run(node: QELCertificate, path):
        here = path + [node.rule if node.rule != "AXIOM" else f"AXIOM@{node.label}"]

        def fail(msg):
            return QELError(msg, here)

        for t in (node.lhs, node.rhs):
            try:
                theory.check_term(t, node.ctx)
            except CartesianError as exc:
                raise fail(str(exc)) from None
        eps = [run(c, here[:-1] + [f"{here[-1]}[{i}]"]) for i, c in enumerate(node.children)]
        kids = node.children
        rule = node.rule

        def expect(v):
            if node.eps != v:
                raise fail(f"{rule} concludes ε={v}, node claims {node.eps}")

        def same(c):
            if (c.ctx, c.lhs, c.rhs) != (node.ctx, node.lhs, node.rhs):
                raise fail(f"{rule} premise concerns a different judgment")

        if rule == "BOT'":
            expect(q.bottom)
        elif rule == "MON'":
            if len(kids) != 1:
                raise fail("MON' takes one premise")
            same(kids[0])
            if not q.leq(node.eps, eps[0]):
                raise fail(f"MON' may only weaken: {node.eps} ⋢ {eps[0]}")
        elif rule == "CONT'":
            if not kids:
                raise fail("CONT' needs at least one premise")
            for c in kids:
                same(c)
            expect(q.join(eps))
        elif rule == "REFL'":
            expect(q.top)
            steps = (node.lhs,) + tuple(node.chain) + (node.rhs,)
            for u, v in zip(steps, steps[1:]):
                if u != v and not _one_step(u, v, theory):
                    raise fail(f"no single equation step from {u} to {v}")
        elif rule == "SYMM'":
            if not theory.symm:
                raise fail("SYMM' is not available in this theory")
            if len(kids) != 1 or (kids[0].ctx, kids[0].lhs, kids[0].rhs) != (node.ctx, node.rhs, node.lhs):
                raise fail("SYMM' premise is not the swapped conclusion")
            expect(eps[0])
        elif rule == "TRIANG":
            if len(kids) != 2:
                raise fail("TRIANG takes two premises")
            a, b = kids
            if a.ctx != node.ctx or b.ctx != node.ctx or a.lhs != node.lhs or b.rhs != node.rhs or a.rhs != b.lhs:
                raise fail("TRIANG premises do not chain to the conclusion")
            expect(q.tensor(*eps))
        elif rule == "SUBQ":
            if len(kids) != 1:
                raise fail("SUBQ takes one premise")
            c = kids[0]
            if len(node.sigma) != c.ctx:
                raise fail(f"substitution has {len(node.sigma)} terms for a context of size {c.ctx}")
            for s in node.sigma:
                try:
                    theory.check_term(s, node.ctx)
                except CartesianError as exc:
                    raise fail(str(exc)) from None
            if substitute(c.lhs, node.sigma) != node.lhs or substitute(c.rhs, node.sigma) != node.rhs:
                raise fail("SUBQ conclusion is not the substituted premise")
            expect(eps[0])
        elif rule == "NEXP":
            o = node.label
            if o not in theory.ops or theory.ops[o] != len(kids):
                raise fail(f"NEXP needs one premise per argument of {o}")
            for c in kids:
                if c.ctx != node.ctx:
                    raise fail("NEXP premises must share the conclusion's context")
            if node.lhs != Op(o, tuple(c.lhs for c in kids)) or node.rhs != Op(o, tuple(c.rhs for c in kids)):
                raise fail("NEXP conclusion is not the operation applied to the premises")
            expect(q.meet(eps))
        elif rule == "AXIOM":
            try:
                ax = theory.axiom(node.label or "")
            except CartesianError as exc:
                raise fail(str(exc)) from None
            if ax.ctx != node.ctx:
                raise fail(f"axiom {ax.label} lives in context {ax.ctx}, node uses {node.ctx}")
            if ax.eps is None:
                if (node.lhs, node.rhs) not in ((ax.lhs, ax.rhs), (ax.rhs, ax.lhs)):
                    raise fail(f"judgment does not match equation {ax.label}")
                expect(q.top)
            else:
                if (node.lhs, node.rhs) != (ax.lhs, ax.rhs):
                    raise fail(f"judgment does not match axiom {ax.label}")
                expect(ax.eps)
        return node.eps

    return run(cert, [])


# -- simulation -----------------------------------------------------------------------------


def simulate_qel_in_monoidal(cert: QELCertificate, theory: CartTheory, mono: QuantTheory | None = None):
    """Replay a valid QEL proof in the associated monoidal theory.

    Returns ``(monoidal theory, certificate)``; the certificate concludes
    ``Φ lhs =_ε Φ rhs`` with the same ``ε``.
    """
    from . import certify as C

    check_qel(cert, theory)
    mono = mono or associated_monoidal_theory(theory)
    sig = mono.signature

    def phi(t, n):
        return phi_translate(t, n, sig)

    def go(node: QELCertificate):
        n = node.ctx
        L, R = phi(node.lhs, n), phi(node.rhs, n)
        r = node.rule
        if r == "AXIOM":
            ax = theory.axiom(node.label)
            flip = ax.eps is None and (node.lhs, node.rhs) != (ax.lhs, ax.rhs)
            return C.axiom(mono, node.label, (), flip=flip)
        if r == "BOT'":
            return C.bot(L, R, mono)
        if r == "REFL'":
            return C.refl(L, R, mono)
        kids = [go(c) for c in node.children]
        if r == "MON'":
            return C.mon(kids[0], node.eps)
        if r == "CONT'":
            return C.join(kids, mono)
        if r == "SYMM'":
            return C.symm(kids[0])
        if r == "TRIANG":
            return C.triang(kids[0], kids[1], mono)
        if r == "SUBQ":
            k = node.children[0].ctx
            tup = tuple_term(node.sigma, n, sig)
            core = C.seq(C.refl(tup, tup, mono), kids[0], mono, "SEQ_SUM")
            return C.bridge(L, core, R, mono)
        if r == "NEXP":
            o = sig.gen(node.label)
            p = len(kids)
            if p == 0:
                return C.refl(L, R, mono)
            bundle = copy_bundle(sig, n, p)
            mid = C.par_fold(kids, mono, "PAR_MEET")
            core = C.seq(C.seq(C.refl(bundle, bundle, mono), mid, mono, "SEQ_SUM"), C.refl(o, o, mono), mono, "SEQ_SUM")
            return C.bridge(L, core, R, mono)
        raise CartesianError(f"cannot simulate rule {r}")

    return mono, go(cert)


# -- QEL certificate text format ----------------------------------------------------------

_QTOK = re.compile(r'\s+|;[^\n]*|\(|\)|\[|\]|"[^"]*"|[^\s()\[\]"]+')


def dumps_qel(cert: QELCertificate) -> str:
    lines: list[str] = []

    def emit(node, depth):
        tag = f"AXIOM@{node.label}" if node.rule == "AXIOM" else (
            f"NEXP@{node.label}" if node.rule == "NEXP" else node.rule)
        extra = ""
        if node.rule == "SUBQ":
            extra = " [" + " ".join(f'"{s}"' for s in node.sigma) + "]"
        elif node.rule == "REFL'" and node.chain:
            extra = " [" + " ".join(f'"{s}"' for s in node.chain) + "]"
        head = f'{"  " * depth}({tag} {node.eps.to_text()} {node.ctx} "{node.lhs}" "{node.rhs}"{extra}'
        if not node.children:
            lines.append(head + ")")
            return
        lines.append(head)
        for c in node.children:
            emit(c, depth + 1)
        lines[-1] += ")"

    emit(cert, 0)
    return "\n".join(lines) + "\n"


def _ctx(text: str) -> int:
    if not text.isdigit():
        raise QELError(f"bad context size {text!r}")
    return int(text)


def loads_qel(text: str, theory: CartTheory) -> QELCertificate:
    toks = [t for t in _QTOK.findall(text) if t.strip() and not t.startswith(";")]
    pos = 0
    q = theory.quantale

    def unq(t):
        if not (t.startswith('"') and t.endswith('"')):
            raise QELError(f"expected a quoted term, got {t!r}")
        return theory.parse(t[1:-1])

    def node():
        nonlocal pos
        if toks[pos] != "(":
            raise QELError(f"expected '(', got {toks[pos]!r}")
        if pos + 6 > len(toks):
            raise IndexError
        tag, eps_t, ctx_t, l, r = toks[pos + 1:pos + 6]
        pos += 6
        rule, _, label = tag.partition("@")
        extra: list = []
        if pos < len(toks) and toks[pos] == "[":
            pos += 1
            while toks[pos] != "]":
                extra.append(unq(toks[pos]))
                pos += 1
            pos += 1
        kids = []
        while toks[pos] == "(":
            kids.append(node())
        if toks[pos] != ")":
            raise QELError(f"expected ')', got {toks[pos]!r}")
        pos += 1
        return QELCertificate(
            rule, q.parse(eps_t), _ctx(ctx_t), unq(l), unq(r), tuple(kids), label or None,
            tuple(extra) if rule == "SUBQ" else (), tuple(extra) if rule == "REFL'" else (),
        )

    try:
        cert = node()
    except IndexError:
        raise QELError("truncated certificate") from None
    except (CartesianError, QuantaleError) as exc:
        raise QELError(str(exc)) from None
    if pos != len(toks):
        raise QELError("trailing input after certificate")
    return cert


# -- random proofs --------------------------------------------------------------------------

SAMPLE_THEORY = """\
[theory]
name = two-ops
[quantale]
lawvere
[operations]
f : 2
g : 1
[quantitative]
shrink: g(x1) ==(1/4) x1
swap: f(x1, x2) ==(1/2) f(x2, x1)
diag: f(x1, x1) ==(1/3) g(x1)
[closure]
symm=true
"""


def sample_theory() -> CartTheory:
    return loads_cart_theory(SAMPLE_THEORY)


def random_cart_term(theory: CartTheory, rng, ctx: int, depth: int = 2) -> CartTerm:
    ops = list(theory.ops.items())
    if ctx and (depth <= 0 or rng.random() < 0.35):
        return Var(rng.randint(1, ctx))
    usable = [(o, p) for o, p in ops if p or not ctx or depth > 0]
    o, p = rng.choice(usable)
    return Op(o, tuple(random_cart_term(theory, rng, ctx, depth - 1) for _ in range(p)))


def _lift(c: QELCertificate, theory, rng, n: int) -> QELCertificate:
    sigma = tuple(random_cart_term(theory, rng, n, 1) for _ in range(c.ctx))
    return QELCertificate("SUBQ", c.eps, n, substitute(c.lhs, sigma), substitute(c.rhs, sigma), (c,), sigma=sigma)


def random_qel_certificate(theory: CartTheory, rng, depth: int = 3) -> QELCertificate:
    """A random valid QEL proof; the root is always an NEXP step over lifted premises,
    so substitution and non-expansiveness nest."""
    q = theory.quantale

    def leaf():
        r = rng.random()
        if r < 0.7 and theory.quantitative:
            ax = rng.choice(theory.quantitative)
            return QELCertificate("AXIOM", ax.eps, ax.ctx, ax.lhs, ax.rhs, label=ax.label)
        n = rng.randint(1, 2)
        t = random_cart_term(theory, rng, n)
        return QELCertificate("REFL'", q.top, n, t, t)

    def build(d):
        if d <= 0:
            return leaf()
        r = rng.random()
        if r < 0.3:
            c = build(d - 1)
            return _lift(c, theory, rng, rng.randint(1, 3))
        if r < 0.55:
            return nexp(d)
        c = build(d - 1)
        if r < 0.65 and theory.symm:
            return QELCertificate("SYMM'", c.eps, c.ctx, c.rhs, c.lhs, (c,))
        if r < 0.75:
            weaker = q.tensor(c.eps, q.parse(str(rng.randint(0, 2))))
            return QELCertificate("MON'", weaker, c.ctx, c.lhs, c.rhs, (c,))
        if r < 0.85:
            refl = QELCertificate("REFL'", q.top, c.ctx, c.rhs, c.rhs)
            return QELCertificate("TRIANG", q.tensor(c.eps, q.top), c.ctx, c.lhs, c.rhs, (c, refl))
        other = QELCertificate("MON'", q.tensor(c.eps, q.parse("1")), c.ctx, c.lhs, c.rhs, (c,))
        return QELCertificate("CONT'", q.join([c.eps, other.eps]), c.ctx, c.lhs, c.rhs, (c, other))

    def nexp(d):
        o, p = rng.choice([(o, p) for o, p in theory.ops.items() if p])
        n = rng.randint(1, 3)
        kids = tuple(_lift(build(d - 1), theory, rng, n) for _ in range(p))
        return QELCertificate("NEXP", q.meet([k.eps for k in kids]), n,
                              Op(o, tuple(k.lhs for k in kids)), Op(o, tuple(k.rhs for k in kids)), kids, label=o)

    return nexp(max(1, depth))


def qel_corpus(theory: CartTheory | None = None, count: int = 50, seed: int = 0, depth: int = 3):
    import random

    theory = theory or sample_theory()
    rng = random.Random(seed)
    return [random_qel_certificate(theory, rng, depth) for _ in range(count)]
