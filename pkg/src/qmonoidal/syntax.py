"""Concrete syntax for diagram terms.

Grammar (``;`` binds looser than ``*``, both left-associative)::

    term := term ";" term | term "*" term | "(" term ")" | atom
    atom := IDENT | IDENT "(" RATIONAL ")" | "id" | "sym" | "empty"
          | "id_" NAT | "sym_" NAT "_" NAT

Rationals are written ``p/q`` or as decimals; both are converted exactly.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .diagram import (
    EMPTY,
    ID,
    SYM,
    DiagramError,
    DiagramTypeError,
    Gen,
    Par,
    Seq,
    Signature,
    Term,
    id_n,
    sym_mn,
)


class ParseError(DiagramError):
    """Lexical, syntactic, signature or typing error with a source span."""

    def __init__(self, message: str, span: tuple[int, int], text: str = ""):
        self.span = span
        self.text = text
        super().__init__(f"{message} at {span[0]}:{span[1]}")

    def render(self) -> str:
        lo, hi = self.span
        caret = " " * lo + "^" * max(1, hi - lo)
        return f"{self}\n  {self.text}\n  {caret}"


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[;*()\-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    start: int
    end: int


def tokenize(text: str) -> list[Token]:
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", (pos, pos + 1), text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), m.start(), m.end()))
        pos = m.end()
    out.append(Token("eof", "", len(text), len(text)))
    return out


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise DiagramError(f"bad rational literal {text!r}") from None


_ID_N = re.compile(r"id_(\d+)$")
_SYM_MN = re.compile(r"sym_(\d+)_(\d+)$")


class _Parser:
    def __init__(self, text: str, sig: Signature):
        self.text = text
        self.sig = sig
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> Token:
        tok = self.take()
        if tok.value != value:
            found = tok.value or "end of input"
            raise ParseError(f"expected {value!r}, found {found!r}", (tok.start, tok.end), self.text)
        return tok

    def error(self, msg, start, end):
        return ParseError(msg, (start, end), self.text)

    def parse(self) -> Term:
        term, _ = self.seq()
        tok = self.peek()
        if tok.kind != "eof":
            raise self.error(f"unexpected {tok.value!r}", tok.start, tok.end)
        return term

    def seq(self):
        left, start = self.par()
        while self.peek().value == ";":
            op = self.take()
            right, _ = self.par()
            try:
                left = Seq(left, right)
            except DiagramTypeError:
                raise self.error(
                    f"type error: {left.coarity} ≠ {right.arity} in sequential composition",
                    op.start,
                    self.toks[self.i - 1].end,
                ) from None
        return left, start

    def par(self):
        left, start = self.atom()
        while self.peek().value == "*":
            self.take()
            right, _ = self.atom()
            left = Par(left, right)
        return left, start

    def atom(self):
        tok = self.take()
        if tok.value == "(":
            inner, _ = self.seq()
            self.expect(")")
            return inner, tok.start
        if tok.kind != "ident":
            found = tok.value or "end of input"
            raise self.error(f"expected a term, found {found!r}", tok.start, tok.end)
        name = tok.value
        if name == "id":
            return ID, tok.start
        if name == "sym":
            return SYM, tok.start
        if name == "empty":
            return EMPTY, tok.start
        if m := _ID_N.match(name):
            return id_n(int(m.group(1))), tok.start
        if m := _SYM_MN.match(name):
            return sym_mn(int(m.group(1)), int(m.group(2))), tok.start
        if name not in self.sig:
            raise self.error(f"unknown generator {name!r}", tok.start, tok.end)
        spec = self.sig[name]
        param = None
        if self.peek().value == "(" and spec.scalar:
            self.take()
            neg = False
            if self.peek().value == "-":
                self.take()
                neg = True
            num = self.take()
            if num.kind != "num":
                raise self.error(f"expected a rational, found {num.value!r}", num.start, num.end)
            param = parse_rational(num.value)
            if neg:
                param = -param
            self.expect(")")
        if spec.scalar and param is None:
            raise self.error(f"generator {name!r} needs a scalar argument", tok.start, tok.end)
        return self.sig.gen(name, param), tok.start


def parse_term(text: str, sig: Signature) -> Term:
    return _Parser(text, sig).parse()


def _print(term: Term, level: int) -> str:
    # level 0: inside a ';' chain (left operand); 1: inside '*'; 2: atom position
    if isinstance(term, Seq):
        s = f"{_print(term.left, 0)} ; {_print(term.right, 1)}"
        return s if level == 0 else f"({s})"
    if isinstance(term, Par):
        s = f"{_print(term.top, 1)} * {_print(term.bottom, 2)}"
        return s if level <= 1 else f"({s})"
    if isinstance(term, Gen):
        return str(term.gen)
    if term is ID or term == ID:
        return "id"
    if term == SYM:
        return "sym"
    if term == EMPTY:
        return "empty"
    raise DiagramError(f"cannot print {term!r}")


def print_term(term: Term) -> str:
    return _print(term, 0)
