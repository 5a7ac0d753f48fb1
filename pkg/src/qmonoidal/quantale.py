"""Integral commutative quantales and quantale-valued hemimetric spaces.

Two quantales ship built in:

* ``boolean``: two elements ``bot <= top``, monoid ``(meet, top)``.
* ``lawvere``: ``[0, inf]`` ordered by *reversed* numeric order, so ``0`` is
  the top and ``inf`` the bottom; the monoid operation is addition.

Values are immutable :class:`QuantaleValue` instances tagged with their
quantale.  All arithmetic is exact (:class:`fractions.Fraction`).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

BOOLEAN = "boolean"
LAWVERE = "lawvere"


class QuantaleError(ValueError):
    pass


class VariantMismatch(QuantaleError):
    pass


@dataclass(frozen=True)
class QuantaleValue:
    """An element of one of the built-in quantales.

    ``payload`` is a ``bool`` for the Boolean quantale, and a non-negative
    ``Fraction`` or ``None`` (meaning infinity) for the Lawvere quantale.
    """

    variant: str
    payload: object

    def __post_init__(self):
        if self.variant == BOOLEAN:
            if not isinstance(self.payload, bool):
                raise QuantaleError(f"boolean payload must be bool, got {self.payload!r}")
        elif self.variant == LAWVERE:
            if self.payload is None:
                return
            if isinstance(self.payload, bool) or isinstance(self.payload, float):
                raise QuantaleError(f"lawvere payload must be exact, got {self.payload!r}")
            value = Fraction(self.payload)
            if value < 0:
                raise QuantaleError(f"lawvere values are non-negative, got {value}")
            object.__setattr__(self, "payload", value)
        else:
            raise QuantaleError(f"unknown quantale {self.variant!r}")

    @property
    def is_infinite(self) -> bool:
        return self.variant == LAWVERE and self.payload is None

    def __str__(self) -> str:
        if self.variant == BOOLEAN:
            return "⊤" if self.payload else "⊥"
        return "∞" if self.payload is None else str(self.payload)

    def to_text(self) -> str:
        """ASCII rendering used in files (``top``/``bot``/``inf``/rationals)."""
        if self.variant == BOOLEAN:
            return "top" if self.payload else "bot"
        return "inf" if self.payload is None else str(self.payload)


def boolean(b: bool) -> QuantaleValue:
    return QuantaleValue(BOOLEAN, bool(b))


def lawvere(x) -> QuantaleValue:
    """A finite Lawvere value; strings such as ``"3/10"`` are accepted."""
    if isinstance(x, str):
        x = Fraction(x)
    return QuantaleValue(LAWVERE, x)


LAWVERE_INF = QuantaleValue(LAWVERE, None)


class Quantale:
    """Operations of an integral commutative quantale restricted to finite joins."""

    name: str

    @property
    def top(self) -> QuantaleValue:
        raise NotImplementedError

    @property
    def bottom(self) -> QuantaleValue:
        raise NotImplementedError

    @property
    def unit(self) -> QuantaleValue:
        # integral: the monoid unit is the top
        return self.top

    def _check(self, *values: QuantaleValue) -> None:
        for v in values:
            if not isinstance(v, QuantaleValue):
                raise QuantaleError(f"not a quantale value: {v!r}")
            if v.variant != self.name:
                raise VariantMismatch(f"expected a {self.name} value, got {v.variant} value {v}")

    def leq(self, a: QuantaleValue, b: QuantaleValue) -> bool:
        raise NotImplementedError

    def tensor(self, a: QuantaleValue, b: QuantaleValue) -> QuantaleValue:
        raise NotImplementedError

    def join(self, values: Iterable[QuantaleValue]) -> QuantaleValue:
        result = self.bottom
        for v in values:
            self._check(v)
            result = v if self.leq(result, v) else result
        return result

    def meet(self, values: Iterable[QuantaleValue]) -> QuantaleValue:
        result = self.top
        for v in values:
            self._check(v)
            result = v if self.leq(v, result) else result
        return result

    def parse(self, text: str) -> QuantaleValue:
        raise NotImplementedError

    def sample(self, rng: random.Random) -> QuantaleValue:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<quantale {self.name}>"


class BooleanQuantale(Quantale):
    name = BOOLEAN

    @property
    def top(self):
        return boolean(True)

    @property
    def bottom(self):
        return boolean(False)

    def leq(self, a, b):
        self._check(a, b)
        return (not a.payload) or b.payload

    def tensor(self, a, b):
        self._check(a, b)
        return boolean(a.payload and b.payload)

    def parse(self, text):
        t = text.strip().lower()
        if t in ("top", "⊤", "true", "1"):
            return self.top
        if t in ("bot", "⊥", "false", "0"):
            return self.bottom
        raise QuantaleError(f"not a boolean quantale value: {text!r}")

    def sample(self, rng):
        return boolean(rng.random() < 0.5)


class LawvereQuantale(Quantale):
    name = LAWVERE

    @property
    def top(self):
        return lawvere(0)

    @property
    def bottom(self):
        return LAWVERE_INF

    def leq(self, a, b):
        # reversed numeric order; inf is the bottom
        self._check(a, b)
        if a.payload is None:
            return True
        if b.payload is None:
            return False
        return a.payload >= b.payload

    def tensor(self, a, b):
        self._check(a, b)
        if a.payload is None or b.payload is None:
            return LAWVERE_INF
        return lawvere(a.payload + b.payload)

    def parse(self, text):
        t = text.strip()
        if t.lower() in ("inf", "∞", "bot", "⊥"):
            return LAWVERE_INF
        if t.lower() in ("top", "⊤"):
            return self.top
        try:
            return lawvere(Fraction(t))
        except (ValueError, ZeroDivisionError) as exc:
            raise QuantaleError(f"not a lawvere quantale value: {text!r}") from exc

    def sample(self, rng):
        r = rng.random()
        if r < 0.05:
            return LAWVERE_INF
        if r < 0.15:
            return self.top
        return lawvere(Fraction(rng.randint(0, 40), rng.randint(1, 12)))


_QUANTALES = {BOOLEAN: BooleanQuantale(), LAWVERE: LawvereQuantale()}


def get_quantale(name: str) -> Quantale:
    try:
        return _QUANTALES[name]
    except KeyError:
        raise QuantaleError(f"unknown quantale {name!r} (expected 'boolean' or 'lawvere')") from None


def quantale_of(value: QuantaleValue) -> Quantale:
    return get_quantale(value.variant)


def _same(a: QuantaleValue, b: QuantaleValue) -> Quantale:
    if a.variant != b.variant:
        raise VariantMismatch(f"cannot combine {a.variant} value {a} with {b.variant} value {b}")
    return quantale_of(a)


def tensor(a: QuantaleValue, b: QuantaleValue) -> QuantaleValue:
    return _same(a, b).tensor(a, b)


def leq(a: QuantaleValue, b: QuantaleValue) -> bool:
    return _same(a, b).leq(a, b)


def meet2(a: QuantaleValue, b: QuantaleValue) -> QuantaleValue:
    return _same(a, b).meet([a, b])


def join2(a: QuantaleValue, b: QuantaleValue) -> QuantaleValue:
    return _same(a, b).join([a, b])


def finite_join(values: Iterable[QuantaleValue], quantale: Quantale) -> QuantaleValue:
    return quantale.join(values)


def finite_meet(values: Iterable[QuantaleValue], quantale: Quantale) -> QuantaleValue:
    return quantale.meet(values)


def integrality_check(a: QuantaleValue, b: QuantaleValue) -> bool:
    """Whether ``a ⊕ b ⊑ a ⊓ b``; always true in an integral quantale."""
    q = _same(a, b)
    return q.leq(q.tensor(a, b), q.meet([a, b]))


def ijd_check(quantale: Quantale, rng: random.Random, samples: int = 100, family: int = 4) -> bool:
    """Sampled check that finite meets distribute over finite joins."""
    for _ in range(samples):
        x = quantale.sample(rng)
        xs = [quantale.sample(rng) for _ in range(rng.randint(0, family))]
        lhs = quantale.meet([x, quantale.join(xs)])
        rhs = quantale.join(quantale.meet([x, s]) for s in xs)
        if lhs != rhs:
            return False
    return True


# -- hemimetric spaces -------------------------------------------------------


@dataclass(frozen=True)
class HemimetricSpace:
    """A finite set of opaque points with a quantale-valued distance."""

    quantale: str
    points: tuple
    dist: Callable[[Hashable, Hashable], QuantaleValue]
    pseudometric: bool = False

    def d(self, x, y) -> QuantaleValue:
        return self.dist(x, y)

    def violations(self) -> list[str]:
        """Exhaustively check reflexivity, triangle and (if flagged) symmetry."""
        q = get_quantale(self.quantale)
        out = []
        for x in self.points:
            if not q.leq(q.unit, self.d(x, x)):
                out.append(f"reflexivity fails at {x!r}")
        for x, y, z in itertools.product(self.points, repeat=3):
            if not q.leq(q.tensor(self.d(x, y), self.d(y, z)), self.d(x, z)):
                out.append(f"triangle fails at {(x, y, z)!r}")
        if self.pseudometric:
            for x, y in itertools.product(self.points, repeat=2):
                if self.d(x, y) != self.d(y, x):
                    out.append(f"symmetry fails at {(x, y)!r}")
        return out


def space_from_table(quantale: str, points: Sequence, table: dict, pseudometric: bool = False) -> HemimetricSpace:
    pts = tuple(points)
    return HemimetricSpace(quantale, pts, lambda x, y: table[(x, y)], pseudometric)


def product_space(X: HemimetricSpace, Y: HemimetricSpace, mode: str = "sum") -> HemimetricSpace:
    """Sum (``⊕``) or max (``⊓``) product of two hemimetric spaces."""
    if X.quantale != Y.quantale:
        raise VariantMismatch(f"cannot take product of {X.quantale} and {Y.quantale} spaces")
    q = get_quantale(X.quantale)
    if mode == "sum":
        combine = q.tensor
    elif mode == "max":
        if not ijd_check(q, random.Random(0)):
            raise QuantaleError(f"{q.name} failed the IJD check; max product unavailable")
        combine = lambda a, b: q.meet([a, b])  # noqa: E731
    else:
        raise ValueError(f"unknown product mode {mode!r}")

    def dist(p, p2):
        return combine(X.d(p[0], p2[0]), Y.d(p[1], p2[1]))

    points = tuple(itertools.product(X.points, Y.points))
    return HemimetricSpace(q.name, points, dist, X.pseudometric and Y.pseudometric)
