"""Seeded random generators for terms, matrices and distributions."""
from __future__ import annotations

import random
from fractions import Fraction

from .diagram import EMPTY, ID, SYM, Par, Seq, Term, id_n, stochastic_term, tensor_all
from .semantics import Matrix, random_distribution, random_stochastic  # noqa: F401  (re-export)

MAX_WIRES = 4


def random_param(theory, spec_name: str, rng: random.Random) -> Fraction:
    if theory.model == "matrix":
        if theory.semiring.name == "bool":
            return Fraction(rng.randint(0, 1))
        if theory.semiring.name == "rational":
            return Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        return Fraction(rng.randint(0, 6), rng.randint(1, 3))
    return Fraction(rng.randint(0, 6), 6)


def atoms(theory, rng: random.Random) -> list[Term]:
    out: list[Term] = [ID, SYM]
    for spec in theory.signature:
        param = random_param(theory, spec.name, rng) if spec.scalar else None
        out.append(theory.signature.gen(spec.name, param))
    return out


def _layer(theory, rng, width: int) -> Term:
    """A tensor of atoms consuming exactly ``width`` wires."""
    parts: list[Term] = []
    left = width
    pool = atoms(theory, rng)
    while left > 0 or (rng.random() < 0.1 and len(parts) < 3):
        fitting = [a for a in pool if 0 < a.arity <= left] if left > 0 else [a for a in pool if a.arity == 0]
        if not fitting:
            break
        a = rng.choice(fitting)
        parts.insert(rng.randint(0, len(parts)), a)
        left -= a.arity
    if not parts:
        return EMPTY if width == 0 else id_n(width)
    return tensor_all(parts)


def _build(theory, rng, size: int, arity: int | None) -> Term:
    if size <= 1:
        if arity is None:
            return rng.choice(atoms(theory, rng))
        return _layer(theory, rng, arity)
    r = rng.random()
    if r < 0.35 and arity is None:
        k = rng.randint(1, size - 1)
        t = Par(_build(theory, rng, k, None), _build(theory, rng, size - k, None))
    elif r < 0.5 and arity is not None and arity >= 2:
        a1 = rng.randint(1, arity - 1)
        k = rng.randint(1, size - 1)
        t = Par(_build(theory, rng, k, a1), _build(theory, rng, size - k, arity - a1))
    else:
        k = rng.randint(1, size - 1)
        left = _build(theory, rng, k, arity)
        t = Seq(left, _build(theory, rng, size - k, left.coarity))
    if t.coarity > MAX_WIRES:
        t = Seq(t, _shrink(theory, rng, t.coarity))
    return t


def _shrink(theory, rng, width: int) -> Term:
    # merge wires pairwise with a 2→1 generator when one exists, else keep them
    merges = [a for a in atoms(theory, rng) if a.arity == 2 and a.coarity == 1]
    if not merges:
        return id_n(width)
    parts = []
    w = width
    while w >= 2 and len(parts) + w > MAX_WIRES:
        parts.append(rng.choice(merges))
        w -= 2
    parts += [ID] * w
    return tensor_all(parts)


def random_term(theory, rng: random.Random, size: int = 4, arity: int | None = None,
                coarity: int | None = None, attempts: int = 60) -> Term | None:
    """A random well-typed term over the theory's signature, or ``None`` if the
    requested type was not hit within ``attempts`` tries."""
    for _ in range(attempts):
        t = _build(theory, rng, max(1, size), arity)
        if coarity is None or t.coarity == coarity:
            return t
    return None


def random_stochastic_term(rng: random.Random, n: int, m: int, theory=None) -> Term:
    """A CA term of type ``n → m``: a random normal form, sometimes padded with structure."""
    from .theory import builtin_theory

    theory = theory or builtin_theory("CA")
    sig = theory.signature
    if rng.random() < 0.3:
        t = random_term(theory, rng, size=rng.randint(2, 6), arity=n, coarity=m, attempts=40)
        if t is not None:
            return t
    a = random_stochastic(rng, m, n, rng.choice([2, 3, 4, 6]))
    t = stochastic_term(a.columns(), m, sig)
    if rng.random() < 0.3 and m >= 2:
        # a swap on the output followed by its inverse: equal in the theory, different syntax
        swap = tensor_all([SYM] + [ID] * (m - 2))
        t = Seq(Seq(t, swap), swap)
    return t


def random_bool_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    return Matrix(rows, cols, [[rng.randint(0, 1) for _ in range(cols)] for _ in range(rows)])


def random_nonneg_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    return Matrix(rows, cols, [[Fraction(rng.randint(0, 6), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)])


def smc_axiom_instance(theory, rng: random.Random):
    """One random instance ``(name, lhs, rhs)`` of the symmetric strict monoidal axioms."""
    from .diagram import sym_mn

    def rt(arity=None):
        return random_term(theory, rng, size=rng.randint(1, 3), arity=arity)

    name = rng.choice(["seq-assoc", "par-assoc", "interchange", "par-unit", "seq-unit", "sym-natural", "sym-iso"])
    if name == "seq-assoc":
        a = rt()
        b = rt(a.coarity)
        c = rt(b.coarity)
        return name, Seq(Seq(a, b), c), Seq(a, Seq(b, c))
    if name == "par-assoc":
        a, b, c = rt(), rt(), rt()
        return name, Par(Par(a, b), c), Par(a, Par(b, c))
    if name == "interchange":
        a, c = rt(), rt()
        b, d = rt(a.coarity), rt(c.coarity)
        return name, Par(Seq(a, b), Seq(c, d)), Seq(Par(a, c), Par(b, d))
    if name == "par-unit":
        a = rt()
        return name, Par(EMPTY, a) if rng.random() < 0.5 else Par(a, EMPTY), a
    if name == "seq-unit":
        a = rt()
        return name, Seq(id_n(a.arity), a) if rng.random() < 0.5 else Seq(a, id_n(a.coarity)), a
    if name == "sym-natural":
        s, t = rt(), rt()
        return (name, Seq(Par(s, t), sym_mn(s.coarity, t.coarity)),
                Seq(sym_mn(s.arity, t.arity), Par(t, s)))
    return name, Seq(SYM, SYM), id_n(2)
