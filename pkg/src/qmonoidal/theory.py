"""Quantitative monoidal theories: signature, equations, quantitative axioms, closure.

Axiom families indexed by scalars are kept as :class:`Schema` objects whose
sides are term templates with ``{name}`` placeholders; they are instantiated on
demand.  Four theories ship built in: ``HA_R``, ``PreOrd_R``, ``CA`` and ``BA``.
"""
from __future__ import annotations

import os
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Optional, Sequence

from .diagram import DiagramError, GeneratorSpec, Signature, Term, typecheck
from .quantale import Quantale, QuantaleError, QuantaleValue, get_quantale
from .semantics import (
    BOOL_SEMIRING,
    SEMIRINGS,
    SemanticsError,
    SemiringSpec,
    get_semiring,
)
from .syntax import ParseError, parse_term, print_term


class TheoryError(ValueError):
    pass


class DomainError(TheoryError):
    """Schema arguments outside the admissible domain."""


def ha_signature() -> Signature:
    return Signature(
        [
            GeneratorSpec("copy", 1, 2),
            GeneratorSpec("del", 1, 0),
            GeneratorSpec("add", 2, 1),
            GeneratorSpec("zero", 0, 1),
            GeneratorSpec("scalar", 1, 1, scalar=True),
        ]
    )


def ca_signature() -> Signature:
    return Signature(
        [
            GeneratorSpec("del", 0, 1),
            GeneratorSpec("cop", 2, 1),
            GeneratorSpec("cc", 1, 2, scalar=True),
        ]
    )


@dataclass(frozen=True)
class QuantEq:
    lhs: Term
    rhs: Term
    eps: QuantaleValue
    label: str = ""

    def __post_init__(self):
        if self.lhs.type != self.rhs.type:
            raise TheoryError(
                f"{self.label or 'equation'}: sides have types {self.lhs.type} and {self.rhs.type}"
            )

    def __str__(self):
        return f"{self.lhs} ==({self.eps.to_text()}) {self.rhs}"


# -- schemas ----------------------------------------------------------------------


def _fmt(x: Fraction) -> str:
    return str(x)


@dataclass(frozen=True)
class Schema:
    """An equation (``eps is None``) or quantitative axiom, possibly parametric.

    ``derive`` computes extra placeholder values from the arguments (and the
    semiring, for the HA family); ``domain`` returns an error message for
    inadmissible arguments, or ``None``.
    """

    id: str
    params: tuple[str, ...]
    lhs: str
    rhs: str
    eps: Optional[str] = None
    derive: Optional[Callable] = field(default=None, compare=False, repr=False)
    domain: Optional[Callable] = field(default=None, compare=False, repr=False)
    builtin: bool = field(default=False, compare=False, repr=False)

    @property
    def quantitative(self) -> bool:
        return self.eps is not None

    def values(self, args: Sequence, semiring: SemiringSpec | None) -> dict:
        if len(args) != len(self.params):
            raise DomainError(f"schema {self.id} takes {len(self.params)} argument(s), got {len(args)}")
        try:
            vals = {p: Fraction(a) for p, a in zip(self.params, args)}
        except (TypeError, ValueError) as exc:
            raise DomainError(f"schema {self.id}: non-rational argument ({exc})") from None
        if self.domain is not None:
            msg = self.domain(vals, semiring)
            if msg:
                raise DomainError(f"schema {self.id}: {msg}")
        if self.derive is not None:
            vals.update(self.derive(vals, semiring))
        return vals

    def render(self, args: Sequence, semiring: SemiringSpec | None = None) -> tuple[str, str, Optional[str]]:
        vals = {k: _fmt(v) for k, v in self.values(args, semiring).items()}
        eps = self.eps.format(**vals) if self.eps is not None else None
        return self.lhs.format(**vals), self.rhs.format(**vals), eps


def _in_semiring(*names):
    def check(vals, semiring):
        if semiring is None:
            return None
        for n in names:
            if not semiring.contains(vals[n]):
                return f"{n}={vals[n]} is not in the {semiring.name} semiring"
        return None

    return check


def _in_unit(*names):
    def check(vals, _):
        for n in names:
            if not 0 <= vals[n] <= 1:
                return f"{n}={vals[n]} is outside [0,1]"
        return None

    return check


def _order_domain(vals, semiring):
    msg = _in_semiring("k1", "k2")(vals, semiring)
    if msg:
        return msg
    leq = semiring.leq if semiring else (lambda a, b: a <= b)
    if not leq(vals["k1"], vals["k2"]):
        return f"requires k1 ≤ k2, got k1={vals['k1']} > k2={vals['k2']}"
    return None


def _convassoc_derive(vals, _):
    lam, mu = vals["lam"], vals["mu"]
    lt = lam * mu
    num, den = lam - lam * mu, 1 - lam * mu
    mt = Fraction(1) if den == 0 else num / den  # 0/0 = 1
    return {"lt": lt, "mt": mt}


def _mul(a, b, r):
    return r.mul(a, b) if r else a * b


def _add(a, b, r):
    return r.add(a, b) if r else a + b


def _eq(id_, lhs, rhs, params=(), derive=None, domain=None):
    return Schema(id_, tuple(params), lhs, rhs, None, derive, domain, builtin=True)


HA_EQUATIONS = (
    _eq("addassoc", "(add * id) ; add", "(id * add) ; add"),
    _eq("addcomm", "sym ; add", "add"),
    _eq("addunit", "(zero * id) ; add", "id"),
    _eq("copassoc", "copy ; (copy * id)", "copy ; (id * copy)"),
    _eq("copcomm", "copy ; sym", "copy"),
    _eq("copunit", "copy ; (del * id)", "id"),
    _eq("deladd", "add ; del", "del * del"),
    _eq("copadd", "add ; copy", "(copy * copy) ; (id * sym * id) ; (add * add)"),
    _eq("zercop", "zero ; copy", "zero * zero"),
    _eq("delzer", "zero ; del", "empty"),
    _eq("scalid", "scalar(1)", "id"),
    _eq("scalscal", "scalar({k}) ; scalar({l})", "scalar({lk})", ("k", "l"),
        derive=lambda v, r: {"lk": _mul(v["l"], v["k"], r)}, domain=_in_semiring("k", "l")),
    _eq("addscal", "add ; scalar({k})", "(scalar({k}) * scalar({k})) ; add", ("k",),
        domain=_in_semiring("k")),
    _eq("zerscal", "zero ; scalar({k})", "zero", ("k",), domain=_in_semiring("k")),
    _eq("scalcop", "scalar({k}) ; copy", "copy ; (scalar({k}) * scalar({k}))", ("k",),
        domain=_in_semiring("k")),
    _eq("scaldel", "scalar({k}) ; del", "del", ("k",), domain=_in_semiring("k")),
    _eq("zero", "scalar(0)", "del ; zero"),
    _eq("addingscalars", "copy ; (scalar({k}) * scalar({l})) ; add", "scalar({kl})", ("k", "l"),
        derive=lambda v, r: {"kl": _add(v["k"], v["l"], r)}, domain=_in_semiring("k", "l")),
)

CA_EQUATIONS = (
    _eq("assoc", "(cop * id) ; cop", "(id * cop) ; cop"),
    _eq("comm", "sym ; cop", "cop"),
    _eq("unit", "(del * id) ; cop", "id"),
    _eq("idemp", "cc({lam}) ; cop", "id", ("lam",), domain=_in_unit("lam")),
    _eq("convassoc", "cc({lam}) ; (cc({mu}) * id)", "cc({lt}) ; (id * cc({mt}))", ("lam", "mu"),
        derive=_convassoc_derive, domain=_in_unit("lam", "mu")),
    _eq("convcomm", "cc({lam}) ; sym", "cc({co})", ("lam",),
        derive=lambda v, _: {"co": 1 - v["lam"]}, domain=_in_unit("lam")),
    _eq("natdel", "del ; cc({lam})", "del * del", ("lam",), domain=_in_unit("lam")),
    _eq("zprob", "cc(1)", "id * del"),
    _eq("cccop", "(cc({lam}) * cc({lam})) ; (id * sym * id) ; (cop * cop)", "cop ; cc({lam})", ("lam",),
        domain=_in_unit("lam")),
)

ORDER_SCHEMA = Schema("order", ("k1", "k2"), "scalar({k1})", "scalar({k2})", "top",
                      domain=_order_domain, builtin=True)
TV_SCHEMA = Schema("tv", ("lam",), "cc({lam}) * del", "del * cc({co})", "{lam}",
                   derive=lambda v, _: {"co": 1 - v["lam"]}, domain=_in_unit("lam"), builtin=True)

BUILTIN_SCHEMAS = {s.id: s for s in HA_EQUATIONS + CA_EQUATIONS + (ORDER_SCHEMA, TV_SCHEMA)}

# parameter grid used by the soundness checks
SCALAR_GRID = tuple(Fraction(x) for x in ("0", "1/4", "1/3", "1/2", "2/3", "1"))


# -- closures ---------------------------------------------------------------------


@dataclass(frozen=True)
class ClosureConfig:
    seq: str = "sum"
    par: str = "sum"
    symm: bool = False

    def __post_init__(self):
        for k in (self.seq, self.par):
            if k not in ("sum", "meet"):
                raise TheoryError(f"closure rule must be 'sum' or 'meet', got {k!r}")

    @property
    def seq_rule(self) -> str:
        return "SEQ_SUM" if self.seq == "sum" else "SEQ_MEET"

    @property
    def par_rule(self) -> str:
        return "PAR_SUM" if self.par == "sum" else "PAR_MEET"

    @property
    def uses_meet(self) -> bool:
        return "meet" in (self.seq, self.par)

    def validate(self, quantale: Quantale, seed: int = 0) -> None:
        from .quantale import ijd_check

        if self.uses_meet and not ijd_check(quantale, random.Random(seed)):
            raise TheoryError(f"meet closure needs an IJD quantale; {quantale.name} failed the sampled check")

    def to_text(self) -> str:
        return f"seq={self.seq} par={self.par} symm={'true' if self.symm else 'false'}"

    @classmethod
    def from_text(cls, text: str) -> "ClosureConfig":
        kv = {}
        for part in text.split():
            if "=" not in part:
                raise TheoryError(f"bad closure item {part!r}")
            k, v = part.split("=", 1)
            kv[k.strip()] = v.strip()
        unknown = set(kv) - {"seq", "par", "symm"}
        if unknown:
            raise TheoryError(f"unknown closure key(s): {', '.join(sorted(unknown))}")
        symm = kv.get("symm", "false")
        if symm not in ("true", "false"):
            raise TheoryError(f"symm must be true or false, got {symm!r}")
        return cls(kv.get("seq", "sum"), kv.get("par", "sum"), symm == "true")


ALL_CLOSURES = tuple(
    ClosureConfig(s, p, y) for s in ("sum", "meet") for p in ("sum", "meet") for y in (False, True)
)


# -- theories ---------------------------------------------------------------------


@dataclass(eq=False)
class QuantTheory:
    name: str
    signature: Signature
    equations: tuple[Schema, ...]
    quantitative: tuple[Schema, ...]
    closure: ClosureConfig
    quantale_name: str
    model: Optional[str] = None  # "matrix" | "stochastic" | None
    semiring: Optional[SemiringSpec] = None

    def __post_init__(self):
        self.equations = tuple(self.equations)
        self.quantitative = tuple(self.quantitative)
        self.closure.validate(self.quantale)
        if self.model == "matrix" and self.semiring is None:
            raise TheoryError("matrix model needs a semiring")
        seen = set()
        for s in self.equations + self.quantitative:
            if s.id in seen:
                raise TheoryError(f"duplicate axiom label {s.id!r}")
            seen.add(s.id)
        for s in self.equations + self.quantitative:
            if not s.params:
                self.instantiate(s.id, ())  # validates typing

    @property
    def quantale(self) -> Quantale:
        return get_quantale(self.quantale_name)

    def schema(self, schema_id: str) -> Schema:
        for s in self.equations + self.quantitative:
            if s.id == schema_id:
                return s
        raise TheoryError(f"theory {self.name} has no axiom {schema_id!r}")

    def parse(self, text: str) -> Term:
        return parse_term(text, self.signature)

    def instantiate(self, schema_id: str, args: Sequence = ()) -> QuantEq:
        return instantiate_schema(self.schema(schema_id), args, self)

    def _key(self, s: Schema):
        if s.params:
            return (s.id, s.params, s.lhs, s.rhs, s.eps)
        q = self.instantiate(s.id, ())
        return (s.id, q.lhs, q.rhs, q.eps)

    def __eq__(self, other):
        if not isinstance(other, QuantTheory):
            return NotImplemented
        return (
            self.name == other.name
            and self.signature == other.signature
            and self.closure == other.closure
            and self.quantale_name == other.quantale_name
            and self.model == other.model
            and (self.semiring.name if self.semiring else None)
            == (other.semiring.name if other.semiring else None)
            and [self._key(s) for s in self.equations] == [other._key(s) for s in other.equations]
            and [self._key(s) for s in self.quantitative] == [other._key(s) for s in other.quantitative]
        )

    def __repr__(self):
        return (
            f"<QuantTheory {self.name}: {len(self.equations)} equations, "
            f"{len(self.quantitative)} quantitative, {self.closure.to_text()}>"
        )


def instantiate_schema(schema: Schema, args: Sequence, theory: QuantTheory) -> QuantEq:
    lhs_t, rhs_t, eps_t = schema.render(args, theory.semiring)
    try:
        lhs = parse_term(lhs_t, theory.signature)
        rhs = parse_term(rhs_t, theory.signature)
    except (ParseError, DiagramError) as exc:
        raise TheoryError(f"axiom {schema.id}: {exc}") from None
    q = theory.quantale
    eps = q.top if eps_t is None else q.parse(eps_t)
    if lhs.type != rhs.type:
        raise TheoryError(f"axiom {schema.id}: sides have types {lhs.type} and {rhs.type}")
    return QuantEq(lhs, rhs, eps, schema.id)


_ALIASES = {
    "ha_r": "HA_R", "ha": "HA_R",
    "preord_r": "PreOrd_R", "preord": "PreOrd_R",
    "ca": "CA", "ba": "BA",
}


def builtin_theory(name: str, semiring: SemiringSpec | str | None = None) -> QuantTheory:
    canon = _ALIASES.get(name.lower())
    if canon is None:
        raise TheoryError(f"unknown built-in theory {name!r} (expected HA_R, PreOrd_R, CA or BA)")
    if isinstance(semiring, str):
        semiring = get_semiring(semiring)
    if canon in ("HA_R", "PreOrd_R"):
        semiring = semiring or BOOL_SEMIRING
        if canon == "PreOrd_R":
            bad = semiring.monotonicity_violation(random.Random(0))
            if bad is not None:
                raise TheoryError(
                    f"semiring {semiring.name} is not monotone "
                    f"(a≤a′, b≤b′ but sums/products disagree at {tuple(str(x) for x in bad)})"
                )
        quant = (ORDER_SCHEMA,) if canon == "PreOrd_R" else ()
        return QuantTheory(canon, ha_signature(), HA_EQUATIONS, quant, ClosureConfig("sum", "sum", False),
                           "boolean", "matrix", semiring)
    quant = (TV_SCHEMA,) if canon == "BA" else ()
    return QuantTheory(canon, ca_signature(), CA_EQUATIONS, quant, ClosureConfig("sum", "meet", True),
                       "lawvere", "stochastic", None)


# -- theory files -------------------------------------------------------------------


class TheoryFileError(TheoryError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        where = ""
        if path:
            where += f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.line = line


_SIG_LINE = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)\s*:\s*(\d+)\s*->\s*(\d+)\s*(@scalar)?$")
_LABEL = re.compile(r"^([A-Za-z_][A-Za-z0-9_'\-]*)\s*:\s*(.*)$")
_QEQ = re.compile(r"^(.*?)==\(([^)]*)\)(.*)$")
SECTIONS = ("theory", "quantale", "model", "signature", "equations", "quantitative", "closure")


def loads_theory(text: str, path: str | None = None) -> QuantTheory:
    section = None
    name = None
    quantale_name = None
    model = None
    semiring = None
    specs: list[GeneratorSpec] = []
    eq_lines: list[tuple[int, str]] = []
    q_lines: list[tuple[int, str]] = []
    closure = None

    def err(msg, ln):
        return TheoryFileError(msg, ln, path)

    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in SECTIONS:
                raise err(f"unknown section [{section}]", ln)
            continue
        if section is None:
            raise err("content before the first section header", ln)
        if section == "theory":
            k, _, v = line.partition("=")
            if k.strip() != "name" or not v.strip():
                raise err("expected 'name = ...'", ln)
            name = v.strip()
        elif section == "quantale":
            try:
                quantale_name = get_quantale(line).name
            except QuantaleError as exc:
                raise err(str(exc), ln) from None
        elif section == "model":
            parts = line.split()
            model = parts[0]
            if model not in ("matrix", "stochastic", "none"):
                raise err(f"unknown model {model!r}", ln)
            for p in parts[1:]:
                k, _, v = p.partition("=")
                if k != "semiring":
                    raise err(f"unknown model option {k!r}", ln)
                try:
                    semiring = get_semiring(v)
                except SemanticsError as exc:
                    raise err(str(exc), ln) from None
            if model == "none":
                model = None
        elif section == "signature":
            m = _SIG_LINE.match(line)
            if not m:
                raise err(f"bad signature line {line!r} (expected 'name : a -> b [@scalar]')", ln)
            specs.append(GeneratorSpec(m.group(1), int(m.group(2)), int(m.group(3)), bool(m.group(4))))
        elif section == "equations":
            eq_lines.append((ln, line))
        elif section == "quantitative":
            q_lines.append((ln, line))
        elif section == "closure":
            try:
                closure = ClosureConfig.from_text(line)
            except TheoryError as exc:
                raise err(str(exc), ln) from None

    if name is None:
        raise err("missing [theory] name", None)
    if quantale_name is None:
        raise err("missing [quantale] section", None)
    try:
        sig = Signature(specs)
    except DiagramError as exc:
        raise err(str(exc), None) from None

    def schema_line(ln, line, quantitative):
        if line.startswith("@"):
            sid = line[1:].strip()
            s = BUILTIN_SCHEMAS.get(sid)
            if s is None:
                raise err(f"unknown built-in axiom @{sid}", ln)
            if s.quantitative != quantitative:
                raise err(f"@{sid} belongs in [{'quantitative' if s.quantitative else 'equations'}]", ln)
            return s
        m = _LABEL.match(line)
        if not m:
            raise err(f"expected 'label: lhs == rhs', got {line!r}", ln)
        label, body = m.group(1), m.group(2)
        if quantitative:
            mq = _QEQ.match(body)
            if not mq:
                raise err(f"{label}: expected 'lhs ==(eps) rhs'", ln)
            lhs, eps, rhs = mq.group(1).strip(), mq.group(2).strip(), mq.group(3).strip()
        else:
            if "==" not in body:
                raise err(f"{label}: expected 'lhs == rhs'", ln)
            lhs, rhs = (x.strip() for x in body.split("==", 1))
            eps = None
        try:
            lt, rt = parse_term(lhs, sig), parse_term(rhs, sig)
        except (ParseError, DiagramError) as exc:
            raise err(f"equation {label}: {exc}", ln) from None
        if lt.type != rt.type:
            raise err(f"equation {label} is ill-typed: {lt.type[0]}→{lt.type[1]} vs {rt.type[0]}→{rt.type[1]}", ln)
        if eps is not None:
            try:
                get_quantale(quantale_name).parse(eps)
            except QuantaleError as exc:
                raise err(f"equation {label}: {exc}", ln) from None
        # braces would be read as placeholders
        return Schema(label, (), print_term(lt), print_term(rt), eps)

    eqs = [schema_line(ln, line, False) for ln, line in eq_lines]
    qs = [schema_line(ln, line, True) for ln, line in q_lines]
    try:
        return QuantTheory(name, sig, tuple(eqs), tuple(qs), closure or ClosureConfig(), quantale_name, model, semiring)
    except (TheoryError, DiagramError, SemanticsError) as exc:
        raise err(str(exc), None) from None


def load_theory(path) -> QuantTheory:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise TheoryFileError(f"cannot read theory file: {exc}") from None
    return loads_theory(text, str(p))


def dumps_theory(theory: QuantTheory) -> str:
    out = ["[theory]", f"name = {theory.name}", "", "[quantale]", theory.quantale_name, ""]
    out.append("[model]")
    if theory.model == "matrix":
        out.append(f"matrix semiring={theory.semiring.name}")
    else:
        out.append(theory.model or "none")
    out += ["", "[signature]"]
    for spec in theory.signature:
        out.append(f"{spec.name} : {spec.arity} -> {spec.coarity}" + (" @scalar" if spec.scalar else ""))

    def line(s: Schema):
        if s.params:
            if s.builtin and BUILTIN_SCHEMAS.get(s.id) is s:
                return f"@{s.id}"
            raise TheoryError(f"cannot serialise user-defined parametric axiom {s.id!r}")
        q = theory.instantiate(s.id, ())
        if s.quantitative:
            return f"{s.id}: {q.lhs} ==({q.eps.to_text()}) {q.rhs}"
        return f"{s.id}: {q.lhs} == {q.rhs}"

    out += ["", "[equations]"] + [line(s) for s in theory.equations]
    out += ["", "[quantitative]"] + [line(s) for s in theory.quantitative]
    out += ["", "[closure]", theory.closure.to_text(), ""]
    return "\n".join(out)


def save_theory(theory: QuantTheory, path) -> None:
    Path(path).write_text(dumps_theory(theory), encoding="utf-8")


# -- lookup by name ---------------------------------------------------------------

THEORY_DIR_ENV = "QMT_THEORY_DIR"

SHIPPED = {
    "ha_bool": ("HA_R", "bool"),
    "ha_nonneg": ("HA_R", "nonneg"),
    "preord_bool": ("PreOrd_R", "bool"),
    "preord_nonneg": ("PreOrd_R", "nonneg"),
    "ca": ("CA", None),
    "ba": ("BA", None),
}


def shipped_theory_text(name: str) -> str:
    return resources.files("qmonoidal").joinpath("theories", f"{name}.thy").read_text(encoding="utf-8")


def resolve_theory(spec: str) -> QuantTheory:
    """Find a theory by file path, theory-directory entry, shipped file or built-in name."""
    p = Path(spec)
    if p.suffix == ".thy" and p.exists():
        return load_theory(p)
    env_dir = os.environ.get(THEORY_DIR_ENV)
    if env_dir:
        candidate = Path(env_dir) / f"{spec}.thy"
        if candidate.exists():
            return load_theory(candidate)
    if spec in SHIPPED:
        return loads_theory(shipped_theory_text(spec), f"{spec}.thy")
    base, _, ring = spec.partition(":")
    if base.lower() in _ALIASES:
        return builtin_theory(base, ring or None)
    raise TheoryError(f"unknown theory {spec!r}; try one of {', '.join(SHIPPED)} or a .thy path")


def axiom_soundness(theory: QuantTheory, grid: Sequence[Fraction] = SCALAR_GRID) -> list[str]:
    """Evaluate every equation (over a parameter grid) and every quantitative axiom.

    Returns a list of failure descriptions; empty means all axioms hold.
    """
    import itertools

    from .semantics import model_for

    model = model_for(theory)
    failures = []
    for s in theory.equations + theory.quantitative:
        for args in itertools.product(grid, repeat=len(s.params)):
            try:
                q = instantiate_schema(s, args, theory)
            except DomainError:
                continue
            if s.quantitative:
                from .certify import truth_check

                ok = truth_check(q, theory)
            else:
                ok = model.eval(q.lhs) == model.eval(q.rhs)
            if not ok:
                failures.append(f"{s.id}{tuple(str(a) for a in args)}: {q}")
    return failures


__all__ = [
    "ALL_CLOSURES",
    "BUILTIN_SCHEMAS",
    "ClosureConfig",
    "DomainError",
    "QuantEq",
    "QuantTheory",
    "SCALAR_GRID",
    "Schema",
    "TheoryError",
    "TheoryFileError",
    "axiom_soundness",
    "builtin_theory",
    "ca_signature",
    "dumps_theory",
    "ha_signature",
    "instantiate_schema",
    "load_theory",
    "loads_theory",
    "resolve_theory",
    "save_theory",
    "typecheck",
]
