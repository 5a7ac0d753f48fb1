"""Typed string-diagram terms (raw syntax, no quotienting).

A term is one of :class:`Gen`, :class:`Id`, :class:`Empty`, :class:`Sym`,
:class:`Seq` or :class:`Par`.  Every term knows its type ``(arity, coarity)``
at construction time; building an ill-typed composite raises
:class:`DiagramTypeError`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence


class DiagramError(ValueError):
    pass


class DiagramTypeError(DiagramError):
    pass


class UnknownGenerator(DiagramError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    arity: int
    coarity: int
    param: Optional[Fraction] = None

    def __post_init__(self):
        if self.param is not None:
            object.__setattr__(self, "param", Fraction(self.param))

    def __str__(self):
        if self.param is None:
            return self.name
        return f"{self.name}({self.param})"


@dataclass(frozen=True)
class GeneratorSpec:
    """Signature entry; ``scalar`` marks a rational-indexed family."""

    name: str
    arity: int
    coarity: int
    scalar: bool = False


class Signature:
    """A finite set of generator families, looked up by name."""

    def __init__(self, specs: Iterable[GeneratorSpec] = ()):
        self._specs: dict[str, GeneratorSpec] = {}
        self._gens: dict = {}
        for spec in specs:
            self.add(spec)

    def add(self, spec: GeneratorSpec) -> None:
        if spec.name in self._specs:
            raise DiagramError(f"duplicate generator {spec.name!r}")
        if spec.name in RESERVED:
            raise DiagramError(f"{spec.name!r} is reserved")
        self._specs[spec.name] = spec

    def __contains__(self, name: str) -> bool:
        return name in self._specs

    def __getitem__(self, name: str) -> GeneratorSpec:
        try:
            return self._specs[name]
        except KeyError:
            raise UnknownGenerator(f"unknown generator {name!r}") from None

    def __iter__(self):
        return iter(self._specs.values())

    def __len__(self):
        return len(self._specs)

    def __eq__(self, other):
        return isinstance(other, Signature) and self._specs == other._specs

    def __repr__(self):
        return f"Signature({list(self._specs.values())!r})"

    def union(self, other: "Signature") -> "Signature":
        return Signature(list(self) + list(other))

    def gen(self, name: str, param=None) -> "Gen":
        key = (name, param)
        hit = self._gens.get(key)
        if hit is not None:
            return hit
        spec = self[name]
        if spec.scalar and param is None:
            raise DiagramError(f"generator {name!r} needs a scalar parameter")
        if not spec.scalar and param is not None:
            raise DiagramError(f"generator {name!r} takes no scalar parameter")
        g = Gen(Generator(name, spec.arity, spec.coarity, None if param is None else Fraction(param)))
        self._gens[key] = g
        return g


RESERVED = frozenset({"id", "sym", "empty"})


class Term:
    """Base class; subclasses are immutable and hash in O(1)."""

    __slots__ = ()
    arity: int
    coarity: int

    @property
    def type(self) -> tuple[int, int]:
        return (self.arity, self.coarity)

    def then(self, other: "Term") -> "Seq":
        return Seq(self, other)

    def __rshift__(self, other: "Term") -> "Seq":
        return Seq(self, other)

    def __matmul__(self, other: "Term") -> "Par":
        return Par(self, other)

    def __str__(self):
        from .syntax import print_term

        return print_term(self)

    def generators(self) -> Iterable[Generator]:
        stack = [self]
        while stack:
            t = stack.pop()
            if isinstance(t, Gen):
                yield t.gen
            elif isinstance(t, (Seq, Par)):
                stack.append(t.right if isinstance(t, Seq) else t.bottom)
                stack.append(t.left if isinstance(t, Seq) else t.top)

    def size(self) -> int:
        if isinstance(self, Seq):
            return 1 + self.left.size() + self.right.size()
        if isinstance(self, Par):
            return 1 + self.top.size() + self.bottom.size()
        return 1


def _frozen(cls):
    cls = dataclass(frozen=True, eq=False, repr=True)(cls)
    return cls


@_frozen
class Gen(Term):
    gen: Generator
    arity: int = field(init=False)
    coarity: int = field(init=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "arity", self.gen.arity)
        object.__setattr__(self, "coarity", self.gen.coarity)
        object.__setattr__(self, "_hash", hash(("gen", self.gen)))

    def __eq__(self, other):
        return isinstance(other, Gen) and self.gen == other.gen

    def __hash__(self):
        return self._hash


class _Atom(Term):
    __slots__ = ()
    _tag = ""

    def __eq__(self, other):
        return type(other) is type(self)

    def __hash__(self):
        return hash(self._tag)

    def __repr__(self):
        return f"{type(self).__name__}()"


class Id(_Atom):
    __slots__ = ()
    _tag = "id"
    arity = 1
    coarity = 1


class Empty(_Atom):
    __slots__ = ()
    _tag = "empty"
    arity = 0
    coarity = 0


class Sym(_Atom):
    __slots__ = ()
    _tag = "sym"
    arity = 2
    coarity = 2


@_frozen
class Seq(Term):
    left: Term
    right: Term
    arity: int = field(init=False)
    coarity: int = field(init=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        if self.left.coarity != self.right.arity:
            raise DiagramTypeError(
                f"cannot compose: coarity {self.left.coarity} ≠ arity {self.right.arity}"
            )
        object.__setattr__(self, "arity", self.left.arity)
        object.__setattr__(self, "coarity", self.right.coarity)
        object.__setattr__(self, "_hash", hash(("seq", self.left, self.right)))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Seq)
            and self._hash == other._hash
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self):
        return self._hash


@_frozen
class Par(Term):
    top: Term
    bottom: Term
    arity: int = field(init=False)
    coarity: int = field(init=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "arity", self.top.arity + self.bottom.arity)
        object.__setattr__(self, "coarity", self.top.coarity + self.bottom.coarity)
        object.__setattr__(self, "_hash", hash(("par", self.top, self.bottom)))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Par)
            and self._hash == other._hash
            and self.top == other.top
            and self.bottom == other.bottom
        )

    def __hash__(self):
        return self._hash


ID = Id()
EMPTY = Empty()
SYM = Sym()


def typecheck(term: Term, sig: Signature) -> tuple[int, int]:
    """Check that every generator of ``term`` belongs to ``sig``; return its type."""
    for g in term.generators():
        spec = sig[g.name]
        if (spec.arity, spec.coarity) != (g.arity, g.coarity):
            raise DiagramTypeError(
                f"generator {g.name} used with type {g.arity}→{g.coarity}, "
                f"signature says {spec.arity}→{spec.coarity}"
            )
        if spec.scalar != (g.param is not None):
            raise DiagramTypeError(f"generator {g.name}: scalar parameter mismatch")
    return term.type


# -- structural builders -----------------------------------------------------


def tensor_all(terms: Sequence[Term]) -> Term:
    """Left-nested parallel composite; ``EMPTY`` for no terms."""
    if not terms:
        return EMPTY
    out = terms[0]
    for t in terms[1:]:
        out = Par(out, t)
    return out


def seq_all(terms: Sequence[Term]) -> Term:
    if not terms:
        raise DiagramError("seq_all needs at least one term")
    out = terms[0]
    for t in terms[1:]:
        out = Seq(out, t)
    return out


def id_n(n: int) -> Term:
    return tensor_all([ID] * n)


def _swap_layer(i: int, n: int) -> Term:
    parts = [id_n(i)] if i else []
    parts.append(SYM)
    if n - i - 2:
        parts.append(id_n(n - i - 2))
    return tensor_all(parts)


def permutation(perm: Sequence[int]) -> Term:
    """Wiring ``n → n`` sending input ``k`` to output ``perm[k]``.

    Built from adjacent transpositions (bubble sort), one layer per swap.
    """
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise DiagramError(f"not a permutation: {perm!r}")
    # current[pos] = destination of the wire now sitting at position pos
    current = list(perm)
    layers: list[Term] = []
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if current[i] > current[i + 1]:
                current[i], current[i + 1] = current[i + 1], current[i]
                layers.append(_swap_layer(i, n))
                changed = True
    if not layers:
        return id_n(n)
    return seq_all(layers)


def sym_mn(m: int, n: int) -> Term:
    """Symmetry ``m+n → n+m`` moving the first ``m`` wires below the last ``n``."""
    if m == 1 and n == 1:
        return SYM
    if m == 0 or n == 0:
        return id_n(m + n)
    perm = [n + k for k in range(m)] + [k for k in range(n)]
    return permutation(perm)


def _fan_out(one_to_two: Term, unit: Term, k: int) -> Term:
    """``1 → k`` by iterating a ``1 → 2`` comultiplication; ``unit`` when k=0."""
    if k == 0:
        return unit
    if k == 1:
        return ID
    return Seq(one_to_two, Par(ID, _fan_out(one_to_two, unit, k - 1)))


def _fan_in(two_to_one: Term, unit: Term, k: int) -> Term:
    """``k → 1`` by iterating a ``2 → 1`` multiplication; ``unit`` when k=0."""
    if k == 0:
        return unit
    if k == 1:
        return ID
    return Seq(Par(ID, _fan_in(two_to_one, unit, k - 1)), two_to_one)


def _block_transpose(n: int, m: int) -> list[int]:
    # wire (j, i) at position j*m + i goes to position i*n + j
    return [i * n + j for j in range(n) for i in range(m)]


def copy_bundle(copy: Term, delete: Term, n: int, k: int) -> Term:
    """``n → k·n``: ``k`` side-by-side copies of an ``n``-wire bundle."""
    fans = tensor_all([_fan_out(copy, delete, k) for _ in range(n)])
    if n <= 1 or k <= 1:
        return fans
    return Seq(fans, permutation(_block_transpose(n, k)))


def canonical_wires(n: int, m: int, sig: Signature | None = None) -> tuple[Term, Term]:
    """The wirings ``b : n → nm`` (copy/del) and ``w : nm → m`` (zero/add/sym).

    Wires in the middle are ordered column-major: position ``j*m + i`` carries
    the ``(i, j)`` matrix entry.
    """
    from .theory import ha_signature

    sig = sig or ha_signature()
    key = ("wires", n, m)
    if key in sig._gens:
        return sig._gens[key]
    copy, delete = sig.gen("copy"), sig.gen("del")
    add, zero = sig.gen("add"), sig.gen("zero")
    b = tensor_all([_fan_out(copy, delete, m) for _ in range(n)])
    sums = tensor_all([_fan_in(add, zero, n) for _ in range(m)])
    if n <= 1 or m <= 1:
        w = sums
    else:
        w = Seq(permutation(_block_transpose(n, m)), sums)
    sig._gens[key] = (b, w)
    return b, w


def scalar_tensor(matrix, sig: Signature | None = None) -> Term:
    """Tensor of scalar generators in column-major entry order."""
    from .theory import ha_signature

    sig = sig or ha_signature()
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    return tensor_all([sig.gen("scalar", matrix[i][j]) for j in range(cols) for i in range(rows)])


def matrix_term(matrix, n: int | None = None, sig: Signature | None = None) -> Term:
    """``b ; (⊗ scalars) ; w`` realising a matrix over the HA signature.

    ``matrix`` is a list of rows; pass ``n`` when there are no rows.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else (n or 0)
    key = ("matrix", tuple(tuple(r) for r in matrix), cols)
    if sig is not None and key in sig._gens:
        return sig._gens[key]
    b, w = canonical_wires(cols, rows, sig)
    out = seq_all([b, scalar_tensor(matrix, sig), w])
    if sig is not None:
        sig._gens[key] = out
    return out


def fritz_merge(n: int, m: int, sig: Signature | None = None) -> Term:
    """The merge ``nm → m`` over the CA signature (cop/del/sym)."""
    from .theory import ca_signature

    if m == 0:
        raise DiagramError("fritz_merge needs m ≥ 1")
    sig = sig or ca_signature()
    cop, unit = sig.gen("cop"), sig.gen("del")
    sums = tensor_all([_fan_in(cop, unit, n) for _ in range(m)])
    if n <= 1 or m <= 1:
        return sums
    return Seq(permutation(_block_transpose(n, m)), sums)


def distribution_term(weights: Sequence[Fraction], sig: Signature | None = None) -> Term:
    """A ``1 → m`` CA diagram whose column is ``weights`` (a thick-wire node)."""
    from .theory import ca_signature

    sig = sig or ca_signature()
    weights = [Fraction(w) for w in weights]
    m = len(weights)
    if m == 0:
        raise DiagramError("a distribution needs at least one point")
    if sum(weights) != 1 or any(w < 0 for w in weights):
        raise DiagramError(f"not a distribution: {[str(w) for w in weights]}")
    if m == 1:
        return ID
    head = weights[0]
    rest_mass = 1 - head
    if rest_mass == 0:
        rest = [Fraction(1)] + [Fraction(0)] * (m - 2)
    else:
        rest = [w / rest_mass for w in weights[1:]]
    return Seq(sig.gen("cc", head), Par(ID, distribution_term(rest, sig)))


def stochastic_term(columns: Sequence[Sequence[Fraction]], m: int, sig: Signature | None = None) -> Term:
    """Fritz normal form ``(f_1 ⊗ … ⊗ f_n) ; p`` of a stochastic matrix given by columns."""
    from .theory import ca_signature

    sig = sig or ca_signature()
    if not columns:
        return fritz_merge(0, m, sig)
    return Seq(tensor_all([distribution_term(c, sig) for c in columns]), fritz_merge(len(columns), m, sig))
