"""Exact matrix semantics for diagram terms.

``Matrix`` is an immutable dense matrix of exact entries.  A morphism
``n → m`` is an ``m × n`` matrix; sequential composition ``s ; t`` is the
product ``F(t)·F(s)`` and parallel composition is the direct sum.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .diagram import Empty, Gen, Id, Par, Seq, Sym, Term


class SemanticsError(ValueError):
    pass


class DimensionMismatch(SemanticsError):
    pass


class Undecidable(SemanticsError):
    """Raised when no faithful model is available to decide an equality."""


# -- semirings ----------------------------------------------------------------


@dataclass(frozen=True)
class SemiringSpec:
    """An ordered semiring over (a subset of) the rationals.

    ``contains`` says which rationals belong to the carrier; ``sample`` draws
    test elements for the law checks.
    """

    name: str
    add: Callable[[Fraction, Fraction], Fraction]
    mul: Callable[[Fraction, Fraction], Fraction]
    zero: Fraction
    one: Fraction
    leq: Callable[[Fraction, Fraction], bool]
    contains: Callable[[Fraction], bool]
    sample: Callable[[random.Random], Fraction]

    def check_element(self, x) -> Fraction:
        if isinstance(x, float):
            raise SemanticsError(f"float {x!r} is not an exact scalar")
        x = Fraction(x)
        if not self.contains(x):
            raise SemanticsError(f"{x} is not an element of the {self.name} semiring")
        return x

    def sum(self, xs) -> Fraction:
        out = self.zero
        for x in xs:
            out = self.add(out, x)
        return out

    def law_violations(self, rng: random.Random, samples: int = 200) -> list[str]:
        """Semiring laws on sampled triples."""
        out = []
        a_, m_, z, o = self.add, self.mul, self.zero, self.one
        for _ in range(samples):
            a, b, c = (self.sample(rng) for _ in range(3))
            checks = {
                "add-assoc": a_(a_(a, b), c) == a_(a, a_(b, c)),
                "add-comm": a_(a, b) == a_(b, a),
                "add-unit": a_(a, z) == a,
                "mul-assoc": m_(m_(a, b), c) == m_(a, m_(b, c)),
                "mul-unit": m_(a, o) == a and m_(o, a) == a,
                "distrib": m_(a, a_(b, c)) == a_(m_(a, b), m_(a, c)),
                "annihil": m_(a, z) == z and m_(z, a) == z,
            }
            out += [f"{k} fails at {(str(a), str(b), str(c))}" for k, ok in checks.items() if not ok]
        return out

    def monotonicity_violation(self, rng: random.Random, samples: int = 200):
        """First sampled quadruple breaking ``a≤a′, b≤b′ ⇒ a+b≤a′+b′, ab≤a′b′``."""
        for _ in range(samples):
            a, a2, b, b2 = (self.sample(rng) for _ in range(4))
            if not self.leq(a, a2):
                a, a2 = a2, a
            if not self.leq(b, b2):
                b, b2 = b2, b
            if not self.leq(self.add(a, b), self.add(a2, b2)) or not self.leq(
                self.mul(a, b), self.mul(a2, b2)
            ):
                return (a, a2, b, b2)
        return None


def _rand_frac(rng, lo=0):
    if rng.random() < 0.2:
        return Fraction(rng.choice([0, 1]))
    num = rng.randint(lo * 12, 24)
    return Fraction(num, rng.randint(1, 6))


BOOL_SEMIRING = SemiringSpec(
    "bool",
    add=max,
    mul=min,
    zero=Fraction(0),
    one=Fraction(1),
    leq=lambda a, b: a <= b,
    contains=lambda x: x in (0, 1),
    sample=lambda rng: Fraction(rng.randint(0, 1)),
)

NONNEG_SEMIRING = SemiringSpec(
    "nonneg",
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    zero=Fraction(0),
    one=Fraction(1),
    leq=lambda a, b: a <= b,
    contains=lambda x: x >= 0,
    sample=lambda rng: _rand_frac(rng),
)

# Ordered field of rationals: a semiring, but multiplication is not monotone.
RATIONAL_SEMIRING = SemiringSpec(
    "rational",
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    zero=Fraction(0),
    one=Fraction(1),
    leq=lambda a, b: a <= b,
    contains=lambda x: True,
    sample=lambda rng: _rand_frac(rng, lo=-1),
)

# the unit interval with ordinary arithmetic, used by the stochastic model
PROB_SEMIRING = SemiringSpec(
    "prob",
    add=lambda a, b: a + b,
    mul=lambda a, b: a * b,
    zero=Fraction(0),
    one=Fraction(1),
    leq=lambda a, b: a <= b,
    contains=lambda x: x >= 0,
    sample=lambda rng: Fraction(rng.randint(0, 6), 6),
)

SEMIRINGS = {s.name: s for s in (BOOL_SEMIRING, NONNEG_SEMIRING, RATIONAL_SEMIRING)}


def get_semiring(name: str) -> SemiringSpec:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise SemanticsError(f"unknown semiring {name!r} (known: {', '.join(SEMIRINGS)})") from None


# -- matrices -------------------------------------------------------------------


class Matrix:
    """Immutable ``rows × cols`` matrix; either dimension may be zero."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence] = ()):
        ents = tuple(tuple(Fraction(x) for x in row) for row in entries)
        if rows == 0:
            ents = ()
        elif cols == 0 and not ents:
            ents = ((),) * rows
        if len(ents) != rows or any(len(r) != cols for r in ents):
            raise DimensionMismatch(f"entries do not form a {rows}×{cols} matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ents)
        object.__setattr__(self, "_hash", hash((rows, cols, ents)))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, cols or 0)
        return cls(len(rows), len(rows[0]), rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        columns = [list(c) for c in columns]
        m = len(columns[0]) if columns else (rows or 0)
        return cls(m, len(columns), [[c[i] for c in columns] for i in range(m)])

    @classmethod
    def identity(cls, n: int, semiring: SemiringSpec = NONNEG_SEMIRING) -> "Matrix":
        z, o = semiring.zero, semiring.one
        return cls(n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Matrix({self.rows}, {self.cols}, {self.to_text()})"

    def to_text(self) -> str:
        if self.rows == 0 or self.cols == 0:
            return f"[] ({self.rows}×{self.cols})"
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.entries) + "]"

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [[str(x) for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "Matrix":
        return cls(data["rows"], data["cols"], [[Fraction(x) for x in r] for r in data["entries"]])

    def to_csv(self) -> str:
        return "\n".join(",".join(str(x) for x in r) for r in self.entries) + ("\n" if self.rows else "")

    def is_stochastic(self) -> bool:
        if self.rows == 0 and self.cols > 0:
            return False
        if any(x < 0 or x > 1 for r in self.entries for x in r):
            return False
        return all(sum(self.column(j)) == 1 for j in range(self.cols))


def mat_compose(a: Matrix, b: Matrix, semiring: SemiringSpec = NONNEG_SEMIRING) -> Matrix:
    """Diagrammatic composite ``a ; b`` (first ``a : n → m`` then ``b : m → l``) = ``b·a``."""
    if a.rows != b.cols:
        raise DimensionMismatch(f"cannot compose {a.cols}→{a.rows} with {b.cols}→{b.rows}")
    add, mul = semiring.add, semiring.mul
    ents = []
    for i in range(b.rows):
        brow = b.entries[i]
        row = []
        for j in range(a.cols):
            acc = semiring.zero
            for k in range(a.rows):
                acc = add(acc, mul(brow[k], a.entries[k][j]))
            row.append(acc)
        ents.append(row)
    return Matrix(b.rows, a.cols, ents)


def mat_dsum(a: Matrix, b: Matrix, semiring: SemiringSpec = NONNEG_SEMIRING) -> Matrix:
    """Block-diagonal direct sum."""
    z = semiring.zero
    ents = [list(r) + [z] * b.cols for r in a.entries]
    ents += [[z] * a.cols + list(r) for r in b.entries]
    return Matrix(a.rows + b.rows, a.cols + b.cols, ents)


# -- evaluation -------------------------------------------------------------------


class Model:
    """A strict symmetric monoidal functor into matrices over ``semiring``."""

    name = "model"

    def __init__(self, semiring: SemiringSpec):
        self.semiring = semiring
        # identity lookups first; the structural cache is consulted once per new object
        self._by_id: dict[int, tuple[Term, Matrix]] = {}
        self._cache: dict[Term, Matrix] = {}

    def generator(self, g) -> Matrix:
        raise NotImplementedError

    def check_result(self, term: Term, m: Matrix) -> None:
        pass

    def __call__(self, term: Term) -> Matrix:
        return self.eval(term)

    def eval(self, term: Term) -> Matrix:
        hit = self._by_id.get(id(term))
        if hit is not None and hit[0] is term:
            return hit[1]
        out = self._cache.get(term)
        if out is not None:
            self._remember(term, out)
            return out
        r = self.semiring
        if isinstance(term, Gen):
            out = self.generator(term.gen)
        elif isinstance(term, Id):
            out = Matrix.identity(1, r)
        elif isinstance(term, Empty):
            out = Matrix(0, 0)
        elif isinstance(term, Sym):
            out = Matrix(2, 2, [[r.zero, r.one], [r.one, r.zero]])
        elif isinstance(term, Seq):
            out = mat_compose(self.eval(term.left), self.eval(term.right), r)
        elif isinstance(term, Par):
            out = mat_dsum(self.eval(term.top), self.eval(term.bottom), r)
        else:
            raise SemanticsError(f"not a diagram term: {term!r}")
        self.check_result(term, out)
        self._remember(term, out)
        return out

    def _remember(self, term: Term, m: Matrix) -> None:
        if len(self._by_id) > 400_000:
            self._cache.clear()
            self._by_id.clear()
        self._cache[term] = m
        self._by_id[id(term)] = (term, m)


class MatrixModel(Model):
    """The functor ``F_R`` on the HA signature."""

    name = "matrix"

    def generator(self, g):
        r = self.semiring
        z, o = r.zero, r.one
        if g.name == "copy":
            return Matrix(2, 1, [[o], [o]])
        if g.name == "del":
            return Matrix(0, 1)
        if g.name == "add":
            return Matrix(1, 2, [[o, o]])
        if g.name == "zero":
            return Matrix(1, 0, [[]])
        if g.name == "scalar":
            return Matrix(1, 1, [[r.check_element(g.param)]])
        raise SemanticsError(f"generator {g.name!r} has no interpretation in the matrix model")


class StochasticModel(Model):
    """The functor ``F`` on the CA signature, landing in stochastic matrices."""

    name = "stochastic"

    def __init__(self):
        super().__init__(PROB_SEMIRING)

    def generator(self, g):
        if g.name == "del":
            return Matrix(1, 0, [[]])
        if g.name == "cop":
            return Matrix(1, 2, [[1, 1]])
        if g.name == "cc":
            lam = g.param
            if lam is None or not 0 <= lam <= 1:
                raise SemanticsError(f"cc needs a parameter in [0,1], got {lam}")
            return Matrix(2, 1, [[lam], [1 - lam]])
        raise SemanticsError(f"generator {g.name!r} has no interpretation in the stochastic model")

    def check_result(self, term, m):
        if term.coarity == 0 and term.arity > 0:
            raise SemanticsError(f"no stochastic matrix of type {term.arity}→0")


_MODELS: dict[str, Model] = {}


def matrix_model(semiring: SemiringSpec) -> MatrixModel:
    key = "matrix:" + semiring.name
    if key not in _MODELS:
        _MODELS[key] = MatrixModel(semiring)
    return _MODELS[key]  # type: ignore[return-value]


def stochastic_model() -> StochasticModel:
    if "stochastic" not in _MODELS:
        _MODELS["stochastic"] = StochasticModel()
    return _MODELS["stochastic"]  # type: ignore[return-value]


def eval_HA(term: Term, semiring: SemiringSpec = BOOL_SEMIRING) -> Matrix:
    return matrix_model(semiring).eval(term)


def eval_CA(term: Term) -> Matrix:
    return stochastic_model().eval(term)


def is_stochastic(m: Matrix) -> bool:
    return m.is_stochastic()


def model_for(theory) -> Model:
    """The faithful model attached to a theory, or :class:`Undecidable`."""
    kind = getattr(theory, "model", None)
    if kind == "matrix":
        return matrix_model(theory.semiring)
    if kind == "stochastic":
        return stochastic_model()
    if kind == "cartesian":
        from .cartesian import cartesian_model

        return cartesian_model(theory)
    raise Undecidable(f"theory {getattr(theory, 'name', theory)!r} has no faithful model; equality is undecidable here")


def equal_in_theory(s: Term, t: Term, theory) -> bool:
    """Decide ``s = t`` modulo the theory's equations by evaluating both sides."""
    if s.type != t.type:
        return False
    if s == t:
        return True
    model = model_for(theory)
    if model.eval(s) == model.eval(t):
        return True
    if getattr(model, "faithful", True):
        return False
    raise Undecidable("the free model separates these terms but extra equations may identify them")


# -- small helpers used by tests and samplers -----------------------------------


def random_stochastic(rng: random.Random, rows: int, cols: int, denom: int = 12) -> Matrix:
    cols_ = []
    for _ in range(cols):
        cuts = sorted(rng.randint(0, denom) for _ in range(rows - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [denom])]
        cols_.append([Fraction(p, denom) for p in parts])
    return Matrix.from_columns(cols_, rows)


def random_distribution(rng: random.Random, size: int, denom: int | None = None) -> tuple[Fraction, ...]:
    denom = denom or rng.choice([2, 3, 4, 5, 6, 10, 12])
    return random_stochastic(rng, size, 1, denom).column(0)


def all_matrices(rows: int, cols: int, values: Sequence) -> list[Matrix]:
    out = []
    for flat in itertools.product(values, repeat=rows * cols):
        out.append(Matrix(rows, cols, [flat[i * cols:(i + 1) * cols] for i in range(rows)]))
    return out
