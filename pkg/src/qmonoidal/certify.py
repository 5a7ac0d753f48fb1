"""Derivation certificates for quantitative equations.

A :class:`Certificate` is a finite proof tree; each node names an inference
rule and carries the judgment ``lhs =_eps rhs`` it concludes.  :func:`check`
re-validates every node against a theory and returns the root ``eps``.  The
``prove_*`` functions build certificates for the two built-in quantitative
theories: the matrix order (``PreOrd_R``) and total variation (``BA``).
"""
from __future__ import annotations

import json
import random
import re
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .diagram import (
    EMPTY,
    DiagramError,
    Gen,
    Par,
    Seq,
    Term,
    distribution_term,
    fritz_merge,
    id_n,
    matrix_term,
    tensor_all,
    typecheck,
)
from .distance import entrywise_leq, first_violation, semantic_distance, split, tvmax
from .quantale import QuantaleError, QuantaleValue
from .semantics import SemanticsError, Undecidable, equal_in_theory, model_for
from .syntax import ParseError, parse_term
from .theory import DomainError, QuantEq, QuantTheory, TheoryError, builtin_theory

RULES = (
    "REFL", "BOT", "MON", "JOIN", "TRIANG", "SYMM",
    "SEQ_SUM", "SEQ_MEET", "PAR_SUM", "PAR_MEET", "AXIOM",
)


class CertificateError(ValueError):
    """Invalid certificate; ``path`` locates the failing node from the root."""

    def __init__(self, message: str, path: Sequence[str] = ()):
        self.path = tuple(path)
        self.reason = message
        where = "/".join(self.path) or "root"
        super().__init__(f"{where}: {message}")


class NotDerivable(ValueError):
    def __init__(self, message: str, entry=None):
        super().__init__(message)
        self.entry = entry


@dataclass(frozen=True)
class Certificate:
    rule: str
    eps: QuantaleValue
    lhs: Term
    rhs: Term
    children: tuple["Certificate", ...] = ()
    schema: Optional[str] = None
    args: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.rule not in RULES:
            raise CertificateError(f"unknown rule {self.rule!r}")
        object.__setattr__(self, "children", tuple(self.children))
        object.__setattr__(self, "args", tuple(Fraction(a) for a in self.args))

    def nodes(self) -> Iterator[tuple[tuple[int, ...], "Certificate"]]:
        """Pre-order walk yielding ``(index path, node)``."""
        stack = [((), self)]
        while stack:
            path, node = stack.pop()
            yield path, node
            for i in reversed(range(len(node.children))):
                stack.append((path + (i,), node.children[i]))

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def height(self) -> int:
        return 1 + max((c.height() for c in self.children), default=0)

    def count(self, rule: str) -> int:
        return sum(1 for _, n in self.nodes() if n.rule == rule)

    def replace_at(self, path: Sequence[int], node: "Certificate") -> "Certificate":
        if not path:
            return node
        kids = list(self.children)
        kids[path[0]] = kids[path[0]].replace_at(path[1:], node)
        return replace(self, children=tuple(kids))

    def tag(self) -> str:
        if self.rule == "AXIOM":
            args = ",".join(str(a) for a in self.args)
            return f"AXIOM@{self.schema}[{args}]"
        return self.rule


# -- node constructors --------------------------------------------------------------


def refl(lhs: Term, rhs: Term, theory: QuantTheory) -> Certificate:
    return Certificate("REFL", theory.quantale.top, lhs, rhs)


def bot(lhs: Term, rhs: Term, theory: QuantTheory) -> Certificate:
    return Certificate("BOT", theory.quantale.bottom, lhs, rhs)


def axiom(theory: QuantTheory, schema_id: str, args: Sequence = (), flip: bool = False) -> Certificate:
    q = _instance(theory, schema_id, tuple(Fraction(a) for a in args))
    lhs, rhs = (q.rhs, q.lhs) if flip else (q.lhs, q.rhs)
    return Certificate("AXIOM", q.eps, lhs, rhs, (), schema_id, tuple(args))


def mon(child: Certificate, eps: QuantaleValue) -> Certificate:
    return Certificate("MON", eps, child.lhs, child.rhs, (child,))


def join(children: Sequence[Certificate], theory: QuantTheory) -> Certificate:
    eps = theory.quantale.join(c.eps for c in children)
    return Certificate("JOIN", eps, children[0].lhs, children[0].rhs, tuple(children))


def triang(first: Certificate, second: Certificate, theory: QuantTheory) -> Certificate:
    eps = theory.quantale.tensor(first.eps, second.eps)
    return Certificate("TRIANG", eps, first.lhs, second.rhs, (first, second))


def symm(child: Certificate) -> Certificate:
    return Certificate("SYMM", child.eps, child.rhs, child.lhs, (child,))


def seq(first: Certificate, second: Certificate, theory: QuantTheory, rule: str | None = None) -> Certificate:
    rule = rule or theory.closure.seq_rule
    q = theory.quantale
    eps = q.tensor(first.eps, second.eps) if rule == "SEQ_SUM" else q.meet([first.eps, second.eps])
    return Certificate(rule, eps, Seq(first.lhs, second.lhs), Seq(first.rhs, second.rhs), (first, second))


def par(top: Certificate, bottom: Certificate, theory: QuantTheory, rule: str | None = None) -> Certificate:
    rule = rule or theory.closure.par_rule
    q = theory.quantale
    eps = q.tensor(top.eps, bottom.eps) if rule == "PAR_SUM" else q.meet([top.eps, bottom.eps])
    return Certificate(rule, eps, Par(top.lhs, bottom.lhs), Par(top.rhs, bottom.rhs), (top, bottom))


def par_fold(certs: Sequence[Certificate], theory: QuantTheory, rule: str | None = None) -> Certificate:
    """Left-nested parallel composite, mirroring :func:`tensor_all`."""
    out = certs[0]
    for c in certs[1:]:
        out = par(out, c, theory, rule)
    return out


def bridge(lhs: Term, cert: Certificate, rhs: Term, theory: QuantTheory) -> Certificate:
    """Extend ``cert`` by REFL steps so that it concludes ``lhs =_eps rhs``."""
    if lhs != cert.lhs:
        cert = triang(refl(lhs, cert.lhs, theory), cert, theory)
    if rhs != cert.rhs:
        cert = triang(cert, refl(cert.rhs, rhs, theory), theory)
    return cert


# -- checking -----------------------------------------------------------------------

_INSTANCE_CACHE: dict = {}


def _instance(theory: QuantTheory, schema_id: str, args: tuple) -> QuantEq:
    key = (id(theory), schema_id, args)
    hit = _INSTANCE_CACHE.get(key)
    if hit is not None and hit[0] is theory:
        return hit[1]
    q = theory.instantiate(schema_id, args)
    if len(_INSTANCE_CACHE) > 50_000:
        _INSTANCE_CACHE.clear()
    _INSTANCE_CACHE[key] = (theory, q)
    return q


@dataclass
class CheckReport:
    eps: QuantaleValue
    nodes: int
    trusted: list = field(default_factory=list)


def _parts(t):
    return (t.left, t.right) if isinstance(t, Seq) else (t.top, t.bottom)


def _render_path(trail) -> list[str]:
    return [node.tag() if i is None else f"{node.tag()}[{i}]" for node, i in trail]


class _Checker:
    def __init__(self, theory: QuantTheory, assume_refl: bool):
        self.theory = theory
        self.q = theory.quantale
        self.assume_refl = assume_refl
        self.trusted: list[tuple[Term, Term]] = []
        # typing only depends on the signature, so it is shared across checks of one theory
        self.typed: set = theory.__dict__.setdefault("_typed_terms", set())
        if len(self.typed) > 200_000:
            self.typed.clear()
        self.nodes = 0

    def typecheck(self, t: Term, path):
        if t in self.typed:
            return
        if isinstance(t, Seq):
            self.typecheck(t.left, path)
            self.typecheck(t.right, path)
        elif isinstance(t, Par):
            self.typecheck(t.top, path)
            self.typecheck(t.bottom, path)
        else:
            try:
                typecheck(t, self.theory.signature)
            except DiagramError as exc:
                raise CertificateError(str(exc), _render_path(path)) from None
        self.typed.add(t)

    def run(self, node: Certificate, trail: tuple) -> QuantaleValue:
        # trail holds (certificate, child index) pairs; labels are rendered only on failure
        trail = trail + ((node, None),)
        self.nodes += 1
        fail = lambda msg: CertificateError(msg, _render_path(trail))  # noqa: E731
        path = trail
        if node.eps.variant != self.q.name:
            raise fail(f"ε {node.eps} is not a {self.q.name} value")
        self.typecheck(node.lhs, path)
        self.typecheck(node.rhs, path)
        if node.lhs.type != node.rhs.type:
            raise fail(f"sides have different types {node.lhs.type} and {node.rhs.type}")
        kids = node.children
        child_eps = []
        for i, c in enumerate(kids):
            child_eps.append(self.run(c, trail[:-1] + ((node, i),)))
        rule = node.rule
        closure = self.theory.closure

        def arity(k):
            if len(kids) != k:
                raise fail(f"{rule} takes {k} premise(s), got {len(kids)}")

        def expect(eps):
            if node.eps != eps:
                raise fail(f"{rule} concludes ε={eps}, node claims {node.eps}")

        if rule == "REFL":
            arity(0)
            expect(self.q.top)
            if node.lhs != node.rhs:
                try:
                    ok = equal_in_theory(node.lhs, node.rhs, self.theory)
                except Undecidable:
                    if not self.assume_refl:
                        raise fail("REFL cannot be decided in this theory (use assume-refl)") from None
                    self.trusted.append((node.lhs, node.rhs))
                    ok = True
                except SemanticsError as exc:
                    raise fail(f"REFL: {exc}") from None
                if not ok:
                    raise fail(f"REFL on terms not equal in {self.theory.name}: {node.lhs} vs {node.rhs}")
        elif rule == "BOT":
            arity(0)
            expect(self.q.bottom)
        elif rule == "AXIOM":
            arity(0)
            try:
                schema = self.theory.schema(node.schema or "")
                inst = _instance(self.theory, schema.id, node.args)
            except (TheoryError, DomainError) as exc:
                raise fail(str(exc)) from None
            if schema.quantitative:
                if (node.lhs, node.rhs) != (inst.lhs, inst.rhs):
                    raise fail(f"judgment does not match axiom instance {inst}")
            elif (node.lhs, node.rhs) not in ((inst.lhs, inst.rhs), (inst.rhs, inst.lhs)):
                raise fail(f"judgment does not match equation instance {inst.lhs} = {inst.rhs}")
            expect(inst.eps)
        elif rule == "MON":
            arity(1)
            self._same_sides(kids[0], node, fail)
            if not self.q.leq(node.eps, child_eps[0]):
                raise fail(f"MON may only weaken: {node.eps} ⋢ {child_eps[0]}")
        elif rule == "JOIN":
            if not kids:
                raise fail("JOIN needs at least one premise")
            for c in kids:
                self._same_sides(c, node, fail)
            expect(self.q.join(child_eps))
        elif rule == "TRIANG":
            arity(2)
            if kids[0].lhs != node.lhs or kids[1].rhs != node.rhs:
                raise fail("TRIANG premises do not start/end at the conclusion's sides")
            if kids[0].rhs != kids[1].lhs:
                raise fail(f"TRIANG middle terms differ: {kids[0].rhs} vs {kids[1].lhs}")
            expect(self.q.tensor(*child_eps))
        elif rule == "SYMM":
            if not closure.symm:
                raise fail("SYMM is not part of this theory's closure")
            arity(1)
            if (kids[0].lhs, kids[0].rhs) != (node.rhs, node.lhs):
                raise fail("SYMM premise is not the swapped conclusion")
            expect(child_eps[0])
        elif rule in ("SEQ_SUM", "SEQ_MEET", "PAR_SUM", "PAR_MEET"):
            wanted = closure.seq_rule if rule.startswith("SEQ") else closure.par_rule
            if rule != wanted:
                raise fail(f"{rule} is not permitted by the closure ({closure.to_text()})")
            arity(2)
            build = Seq if rule.startswith("SEQ") else Par
            # compare components rather than rebuilding: the parts are usually the very same objects
            if not all(isinstance(side, build) for side in (node.lhs, node.rhs)) or (
                tuple(_parts(node.lhs)) != (kids[0].lhs, kids[1].lhs)
                or tuple(_parts(node.rhs)) != (kids[0].rhs, kids[1].rhs)
            ):
                raise fail(f"{rule} conclusion is not the composite of its premises")
            if rule.endswith("SUM"):
                expect(self.q.tensor(*child_eps))
            else:
                expect(self.q.meet(child_eps))
        else:  # pragma: no cover - guarded by Certificate
            raise fail(f"unknown rule {rule}")
        return node.eps

    @staticmethod
    def _same_sides(child, node, fail):
        if child.lhs != node.lhs or child.rhs != node.rhs:
            raise fail(f"{node.rule} premise concerns a different pair of terms")


def check_report(cert: Certificate, theory: QuantTheory, assume_refl: bool = False) -> CheckReport:
    ch = _Checker(theory, assume_refl)
    eps = ch.run(cert, ())
    return CheckReport(eps, ch.nodes, ch.trusted)


def check(cert: Certificate, theory: QuantTheory, assume_refl: bool = False) -> QuantaleValue:
    """Validate every node; return the root ε or raise :class:`CertificateError`."""
    return check_report(cert, theory, assume_refl).eps


def truth_check(qe: QuantEq, theory) -> bool:
    """Whether ``qe.eps ⊑ d(M lhs, M rhs)`` in the theory's model."""
    if isinstance(theory, str):
        theory = {"ha-matrix": builtin_theory("PreOrd_R"), "ca-stoch": builtin_theory("BA")}[theory]
    d = semantic_distance(theory, qe.lhs, qe.rhs)
    if d.variant != qe.eps.variant:
        raise QuantaleError(f"model distance is {d.variant}, judgment is {qe.eps.variant}")
    return theory.quantale.leq(qe.eps, d)


def is_sound(cert: Certificate, theory: QuantTheory) -> bool:
    return truth_check(QuantEq(cert.lhs, cert.rhs, cert.eps), theory)


# -- generators ---------------------------------------------------------------------


def prove_matrix_order(f: Term, g: Term, theory: QuantTheory | None = None) -> Certificate:
    """Certificate of ``f =_⊤ g`` in ``PreOrd_R`` when ``F(f) ≤ F(g)`` entrywise."""
    theory = theory or builtin_theory("PreOrd_R")
    if f.type != g.type:
        raise NotDerivable(f"types differ: {f.type} vs {g.type}")
    model = model_for(theory)
    a, b = model.eval(f), model.eval(g)
    bad = first_violation(a, b, theory.semiring)
    if bad is not None:
        i, j = bad
        raise NotDerivable(f"not derivable: entry ({i},{j}) has {a[i, j]} > {b[i, j]}", bad)
    if f == g:
        return refl(f, g, theory)
    if isinstance(f, Gen) and isinstance(g, Gen) and f.gen.name == g.gen.name == "scalar":
        return axiom(theory, "order", (f.gen.param, g.gen.param))
    sig = theory.signature
    n = f.arity
    cf = matrix_term(a.to_lists(), n, sig)
    cg = matrix_term(b.to_lists(), n, sig)
    if a.rows == 0 or a.cols == 0:
        core = refl(cf, cg, theory)
    else:
        scalars = [
            axiom(theory, "order", (a[i, j], b[i, j]))
            for j in range(a.cols)
            for i in range(a.rows)
        ]
        b_wires, w_wires = cf.left.left, cf.right
        core = seq(seq(refl(b_wires, b_wires, theory), par_fold(scalars, theory), theory), refl(w_wires, w_wires, theory), theory)
    return bridge(f, core, g, theory)


def _column(m, j=0):
    return m.column(j)


def prove_tv_column(f: Term, g: Term, theory: QuantTheory | None = None) -> Certificate:
    """Certificate of ``f =_λ g`` for ``1 → m`` terms, with ``λ`` their tv distance."""
    theory = theory or builtin_theory("BA")
    if f.type != g.type or f.arity != 1:
        raise NotDerivable(f"expected two 1→m terms, got {f.type} and {g.type}")
    model = model_for(theory)
    mu, nu = _column(model.eval(f)), _column(model.eval(g))
    if f == g or mu == nu:
        return refl(f, g, theory)
    s = split(mu, nu)
    sig = theory.signature
    m = f.coarity
    h = Seq(
        tensor_all([distribution_term(s.mu_p, sig), distribution_term(s.tau, sig), distribution_term(s.nu_p, sig)]),
        fritz_merge(3, m, sig),
    )
    ax = axiom(theory, "tv", (s.lam,))
    core = seq(ax, refl(h, h, theory), theory, "SEQ_SUM")
    return bridge(f, core, g, theory)


def prove_tv_general(f: Term, g: Term, theory: QuantTheory | None = None) -> Certificate:
    """Certificate of ``f =_ε g`` for ``n → m`` terms with ``ε = tvmax(F f, F g)``."""
    theory = theory or builtin_theory("BA")
    if f.type != g.type:
        raise NotDerivable(f"types differ: {f.type} vs {g.type}")
    model = model_for(theory)
    a, b = model.eval(f), model.eval(g)
    n, m = f.arity, f.coarity
    if f == g or a == b or n == 0:
        return refl(f, g, theory)
    sig = theory.signature
    fs = [distribution_term(a.column(j), sig) for j in range(n)]
    gs = [distribution_term(b.column(j), sig) for j in range(n)]
    cols = [prove_tv_column(x, y, theory) for x, y in zip(fs, gs)]
    p = fritz_merge(n, m, sig)
    core = seq(par_fold(cols, theory, "PAR_MEET"), refl(p, p, theory), theory, "SEQ_SUM")
    return bridge(f, core, g, theory)


def expected_tvmax(f: Term, g: Term) -> Fraction:
    model = model_for(builtin_theory("BA"))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return tvmax(model.eval(f), model.eval(g))


# -- serialisation --------------------------------------------------------------------


def _eps_text(eps: QuantaleValue) -> str:
    return eps.to_text()


def dumps_certificate(cert: Certificate, theory_name: str | None = None) -> str:
    lines = [f"; theory {theory_name}"] if theory_name else []

    def emit(node: Certificate, depth: int):
        pad = "  " * depth
        head = f'{pad}({node.tag()} {_eps_text(node.eps)} "{node.lhs}" "{node.rhs}"'
        if not node.children:
            lines.append(head + ")")
            return
        lines.append(head)
        for c in node.children:
            emit(c, depth + 1)
        lines[-1] += ")"

    emit(cert, 0)
    return "\n".join(lines) + "\n"


_CERT_TOKEN = re.compile(r'\s+|;[^\n]*|\(|\)|"[^"]*"|[^\s()"]+')
_AXIOM_TAG = re.compile(r"^AXIOM@([A-Za-z_][A-Za-z0-9_'\-]*)\[([^\]]*)\]$")


def certificate_theory_hint(text: str) -> str | None:
    for line in text.splitlines():
        s = line.strip()
        if s.startswith(";") and s[1:].strip().startswith("theory"):
            return s[1:].strip()[len("theory"):].strip()
        if s:
            break
    return None


def loads_certificate(text: str, theory: QuantTheory) -> Certificate:
    if text.lstrip().startswith("{"):
        return certificate_from_json(json.loads(text), theory)
    toks = [t for t in _CERT_TOKEN.findall(text) if t.strip() and not t.startswith(";")]
    pos = 0

    def node(path):
        nonlocal pos
        if pos >= len(toks) or toks[pos] != "(":
            raise CertificateError("expected '('", path)
        pos += 1
        if pos + 3 > len(toks):
            raise CertificateError("truncated node", path)
        tag, eps_t, lhs_t, rhs_t = toks[pos:pos + 4]
        pos += 4
        here = path + [tag]
        schema, args = None, ()
        m = _AXIOM_TAG.match(tag)
        rule = tag
        if m:
            rule, schema = "AXIOM", m.group(1)
            try:
                args = tuple(Fraction(a) for a in m.group(2).split(",") if a.strip())
            except (ValueError, ZeroDivisionError):
                raise CertificateError(f"bad axiom arguments {m.group(2)!r}", here) from None
        if rule not in RULES:
            raise CertificateError(f"unknown rule {tag!r}", here)
        for t in (lhs_t, rhs_t):
            if not (t.startswith('"') and t.endswith('"')):
                raise CertificateError(f"expected a quoted term, got {t!r}", here)
        try:
            eps = theory.quantale.parse(eps_t)
            lhs = parse_term(lhs_t[1:-1], theory.signature)
            rhs = parse_term(rhs_t[1:-1], theory.signature)
        except (ParseError, DiagramError, QuantaleError) as exc:
            raise CertificateError(str(exc), here) from None
        kids = []
        while pos < len(toks) and toks[pos] == "(":
            kids.append(node(here[:-1] + [f"{tag}[{len(kids)}]"]))
        if pos >= len(toks) or toks[pos] != ")":
            raise CertificateError("expected ')'", here)
        pos += 1
        return Certificate(rule, eps, lhs, rhs, tuple(kids), schema, args)

    cert = node([])
    if pos != len(toks):
        raise CertificateError("trailing input after certificate")
    return cert


def certificate_to_json(cert: Certificate) -> dict:
    d = {"rule": cert.rule, "eps": cert.eps.to_text(), "lhs": str(cert.lhs), "rhs": str(cert.rhs)}
    if cert.rule == "AXIOM":
        d["schema"] = cert.schema
        d["args"] = [str(a) for a in cert.args]
    d["children"] = [certificate_to_json(c) for c in cert.children]
    return d


def certificate_from_json(data: dict, theory: QuantTheory) -> Certificate:
    try:
        return Certificate(
            data["rule"],
            theory.quantale.parse(data["eps"]),
            parse_term(data["lhs"], theory.signature),
            parse_term(data["rhs"], theory.signature),
            tuple(certificate_from_json(c, theory) for c in data.get("children", [])),
            data.get("schema"),
            tuple(Fraction(a) for a in data.get("args", [])),
        )
    except KeyError as exc:
        raise CertificateError(f"missing field {exc}") from None
    except (ParseError, DiagramError, QuantaleError) as exc:
        raise CertificateError(str(exc)) from None


# -- random valid certificates (for soundness testing) -------------------------------


def random_certificate(theory: QuantTheory, rng: random.Random, depth: int = 3) -> Certificate:
    """A random checker-valid certificate built from the theory's axioms and rules."""
    from .samplers import random_term

    q = theory.quantale

    def leaf():
        r = rng.random()
        if theory.name in ("BA", "CA") or theory.model == "stochastic":
            if r < 0.5 and theory.quantitative:
                lam = Fraction(rng.randint(0, 8), 8)
                return axiom(theory, "tv", (lam,))
        elif r < 0.5 and theory.quantitative:
            vals = [Fraction(0), Fraction(1)] if theory.semiring.name == "bool" else [Fraction(k, 2) for k in range(5)]
            k1, k2 = sorted(rng.choice(vals) for _ in range(2))
            return axiom(theory, "order", (k1, k2))
        if r < 0.65:
            s = rng.choice(theory.equations)
            args = _random_args(s, theory, rng)
            if args is not None:
                return axiom(theory, s.id, args, flip=rng.random() < 0.5)
        if r < 0.75:
            t = random_term(theory, rng, size=3)
            u = random_term(theory, rng, size=3, arity=t.arity, coarity=t.coarity)
            if u is not None:
                return bot(t, u, theory)
        t = random_term(theory, rng, size=4)
        return refl(t, Seq(t, id_n(t.coarity)) if t.coarity else t, theory)

    def build(d):
        if d == 0:
            return leaf()
        c = build(d - 1)
        r = rng.random()
        if r < 0.2:
            return par(c, build(d - 1), theory)
        if r < 0.4:
            n = c.lhs.coarity
            other = build(d - 1)
            pad = random_term(theory, rng, size=2, arity=n)
            if pad is None:
                pad = id_n(n)
            if other.lhs.arity == n:
                return seq(c, other, theory)
            return seq(c, refl(pad, pad, theory), theory)
        if r < 0.55:
            t = c.rhs
            t2 = Seq(t, id_n(t.coarity)) if t.coarity else Par(t, EMPTY)
            return triang(c, refl(t, t2, theory), theory)
        if r < 0.65 and theory.closure.symm:
            return symm(c)
        if r < 0.8:
            weaker = q.meet([c.eps, q.sample(rng)])
            return mon(c, weaker)
        if r < 0.9:
            return join([c, mon(c, q.meet([c.eps, q.sample(rng)]))], theory)
        return triang(c, refl(c.rhs, c.rhs, theory), theory)

    return build(depth)


def _random_args(schema, theory, rng):
    for _ in range(10):
        if theory.model == "matrix":
            pool = [Fraction(0), Fraction(1)] if theory.semiring.name == "bool" else [Fraction(k, 3) for k in range(7)]
        else:
            pool = [Fraction(k, 4) for k in range(5)]
        args = tuple(rng.choice(pool) for _ in schema.params)
        try:
            theory.instantiate(schema.id, args)
            return args
        except DomainError:
            continue
    return None
