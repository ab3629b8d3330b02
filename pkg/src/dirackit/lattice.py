"""Exact weights on classical root systems, with Weyl group enumeration.

Weights live in epsilon-coordinates and are stored as doubled integers, so
every half-integral vector is represented exactly and all arithmetic is
integer arithmetic.  Weyl group elements are signed permutations written in
one-line notation: ``images[i] = s * (j + 1)`` means ``e_i -> s * e_j``.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import ConfigurationError, ResourceError, ShapeError, UsageError

MAX_WEYL_ORDER = 10**6
DEFAULT_RANK_CAP = 8
FAMILIES = ("A", "B", "C", "D")


def rank_cap() -> int:
    """Largest rank accepted by :func:`build_root_datum`.

    Reads ``DIRACKIT_RANK_CAP`` from the environment, defaulting to 8.
    """
    raw = os.environ.get("DIRACKIT_RANK_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_RANK_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ConfigurationError(f"DIRACKIT_RANK_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ConfigurationError("DIRACKIT_RANK_CAP must be positive")
    return cap


def _doubled(x) -> int:
    if isinstance(x, bool):
        raise TypeError("booleans are not weight coordinates")
    if isinstance(x, int):
        return 2 * x
    if isinstance(x, str):
        x = Fraction(x.strip())
    elif isinstance(x, float):
        x = Fraction(x)
    if isinstance(x, Fraction):
        t = 2 * x
        if t.denominator != 1:
            raise ValueError(f"{x} is not a half-integer")
        return int(t)
    raise TypeError(f"cannot read a weight coordinate from {x!r}")


def _fmt(t: int) -> str:
    return str(t // 2) if t % 2 == 0 else f"{t}/2"


@dataclass(frozen=True, order=True)
class Weight:
    """A vector in epsilon-coordinates with entries in (1/2)Z."""

    twice: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "twice", tuple(int(t) for t in self.twice))

    @classmethod
    def of(cls, *coords) -> "Weight":
        return cls(tuple(_doubled(c) for c in coords))

    @classmethod
    def from_coords(cls, coords: Iterable) -> "Weight":
        return cls(tuple(_doubled(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> "Weight":
        return cls((0,) * rank)

    @classmethod
    def unit(cls, rank: int, i: int, scale: int = 1) -> "Weight":
        t = [0] * rank
        t[i] = 2 * scale
        return cls(tuple(t))

    @property
    def rank(self) -> int:
        return len(self.twice)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(t, 2) for t in self.twice)

    def _check(self, other: "Weight") -> None:
        if not isinstance(other, Weight):
            raise TypeError(f"expected a Weight, got {type(other).__name__}")
        if other.rank != self.rank:
            raise ShapeError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a + b for a, b in zip(self.twice, other.twice)))

    def __sub__(self, other: "Weight") -> "Weight":
        self._check(other)
        return Weight(tuple(a - b for a, b in zip(self.twice, other.twice)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.twice))

    def __mul__(self, k: int) -> "Weight":
        if not isinstance(k, int) or isinstance(k, bool):
            return NotImplemented
        return Weight(tuple(k * a for a in self.twice))

    __rmul__ = __mul__

    def half(self) -> "Weight":
        if any(t % 2 for t in self.twice):
            raise ValueError(f"{self} / 2 leaves the half-integer lattice")
        return Weight(tuple(t // 2 for t in self.twice))

    def is_zero(self) -> bool:
        return not any(self.twice)

    def is_integral(self) -> bool:
        return all(t % 2 == 0 for t in self.twice)

    def concat(self, other: "Weight") -> "Weight":
        return Weight(self.twice + other.twice)

    def split(self, n: int) -> tuple["Weight", "Weight"]:
        return Weight(self.twice[:n]), Weight(self.twice[n:])

    def __str__(self) -> str:
        return "(" + ", ".join(_fmt(t) for t in self.twice) + ")"

    def __repr__(self) -> str:
        return f"Weight{self}"


def inner(mu: Weight, nu: Weight) -> Fraction:
    """Standard Euclidean pairing in epsilon-coordinates."""
    mu._check(nu)
    return Fraction(sum(a * b for a, b in zip(mu.twice, nu.twice)), 4)


def _dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


# signed permutations ------------------------------------------------------

def compose_images(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """One-line notation of ``a o b`` (apply b first)."""
    out = []
    for v in b:
        j = abs(v) - 1
        out.append(a[j] if v > 0 else -a[j])
    return tuple(out)


def invert_images(a: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, v in enumerate(a):
        out[abs(v) - 1] = (i + 1) if v > 0 else -(i + 1)
    return tuple(out)


def act_images(images: Sequence[int], twice: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(images)
    for i, v in enumerate(images):
        out[abs(v) - 1] = twice[i] if v > 0 else -twice[i]
    return tuple(out)


def parse_signed_permutation(text: str) -> tuple[int, ...]:
    """Read one-line notation such as ``"[2,-1]"``."""
    body = text.strip()
    if not re.fullmatch(r"\[\s*(-?\d+\s*(,\s*-?\d+\s*)*)?\]", body):
        raise UsageError(f"not a signed permutation: {text!r}")
    vals = tuple(int(v) for v in body[1:-1].split(",") if v.strip())
    if sorted(abs(v) for v in vals) != list(range(1, len(vals) + 1)):
        raise UsageError(f"not a signed permutation: {text!r}")
    return vals


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element acting on epsilon-coordinates."""

    images: tuple[int, ...]
    length: int = field(default=0, compare=False)

    @property
    def rank(self) -> int:
        return len(self.images)

    @cached_property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        m = [[0] * n for _ in range(n)]
        for i, v in enumerate(self.images):
            m[abs(v) - 1][i] = 1 if v > 0 else -1
        return tuple(tuple(r) for r in m)

    def act(self, mu: Weight) -> Weight:
        if mu.rank != self.rank:
            raise ShapeError(f"rank mismatch: element of rank {self.rank}, weight of rank {mu.rank}")
        return Weight(act_images(self.images, mu.twice))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.images))

    def is_involution(self) -> bool:
        return compose_images(self.images, self.images) == tuple(range(1, self.rank + 1))

    def det(self) -> int:
        sign = 1
        perm = [abs(v) - 1 for v in self.images]
        seen = [False] * len(perm)
        for i in range(len(perm)):
            if seen[i]:
                continue
            j, cyc = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                cyc += 1
            if cyc % 2 == 0:
                sign = -sign
        for v in self.images:
            if v < 0:
                sign = -sign
        return sign

    def one_line(self) -> str:
        return "[" + ",".join(str(v) for v in self.images) + "]"

    def __str__(self) -> str:
        return self.one_line()


# root data ----------------------------------------------------------------

def _classical_positive_roots(family: str, n: int) -> list[Weight]:
    def e(i, s=1):
        return Weight.unit(n, i, s)

    roots = []
    for i in range(n):
        for j in range(i + 1, n):
            roots.append(e(i) - e(j))
            if family != "A":
                roots.append(e(i) + e(j))
        if family == "B":
            roots.append(e(i))
        elif family == "C":
            roots.append(e(i, 2))
    return roots


def _weyl_order(family: str, n: int) -> int | None:
    if family == "A":
        return math.factorial(n)
    if family in ("B", "C"):
        return 2**n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return None


@dataclass(frozen=True)
class RootDatum:
    """A reduced root system in epsilon-coordinates with a positive system.

    ``rank`` is the number of coordinates.  For family A of rank n this is
    the A_{n-1} system inside n coordinates.
    """

    family: str
    rank: int
    positive_roots: tuple[Weight, ...]
    simple_roots: tuple[Weight, ...]
    rho: Weight
    order_hint: int | None = field(default=None, compare=False)

    @classmethod
    def from_positive_roots(cls, positive_roots: Iterable[Weight], rank: int,
                            family: str = "sub", order_hint: int | None = None) -> "RootDatum":
        pos = tuple(sorted(set(positive_roots), reverse=True))
        for r in pos:
            if r.rank != rank:
                raise ShapeError(f"root {r} does not have rank {rank}")
        pset = set(pos)
        simple = tuple(a for a in pos
                       if not any((a - b) in pset for b in pos if b != a))
        total = Weight.zero(rank)
        for r in pos:
            total = total + r
        return cls(family, rank, pos, simple, total.half(), order_hint)

    @cached_property
    def roots(self) -> frozenset[Weight]:
        return frozenset(self.positive_roots) | frozenset(-r for r in self.positive_roots)

    @cached_property
    def positive_set(self) -> frozenset[Weight]:
        return frozenset(self.positive_roots)

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def simple_reflections(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.reflection(a).images for a in self.simple_roots)

    def length_of(self, images: Sequence[int]) -> int:
        pos = self.positive_set
        return sum(1 for r in self.positive_roots
                   if Weight(act_images(images, r.twice)) not in pos)

    def element(self, images: Sequence[int]) -> WeylElement:
        images = tuple(images)
        if len(images) != self.rank:
            raise ShapeError(f"element of rank {len(images)} for a datum of rank {self.rank}")
        return WeylElement(images, self.length_of(images))

    def identity(self) -> WeylElement:
        return WeylElement(tuple(range(1, self.rank + 1)), 0)

    def reflection(self, beta: Weight) -> WeylElement:
        nb = _dot(beta.twice, beta.twice)
        images = []
        for i in range(self.rank):
            x = Weight.unit(self.rank, i).twice
            c = 2 * _dot(x, beta.twice)
            if any((c * bi) % nb for bi in beta.twice):
                raise UsageError(f"{beta} is not a root of a classical system")
            y = [xi - (c * bi) // nb for xi, bi in zip(x, beta.twice)]
            nz = [(j, v) for j, v in enumerate(y) if v]
            if len(nz) != 1 or abs(nz[0][1]) != 2:
                raise UsageError(f"reflection in {beta} is not a signed permutation")
            j, v = nz[0]
            images.append((j + 1) if v > 0 else -(j + 1))
        return self.element(images)

    def compose(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.element(compose_images(a.images, b.images))

    def inverse(self, a: WeylElement) -> WeylElement:
        return WeylElement(invert_images(a.images), a.length)

    def pairing_signs(self, mu: Weight) -> tuple[int, ...]:
        return tuple(_dot(mu.twice, a.twice) for a in self.simple_roots)

    def is_dominant(self, mu: Weight) -> bool:
        return all(p >= 0 for p in self.pairing_signs(mu))

    def is_regular(self, mu: Weight) -> bool:
        return all(_dot(mu.twice, r.twice) != 0 for r in self.positive_roots)

    def longest(self) -> WeylElement:
        return max(enumerate_weyl(self), key=lambda w: w.length)

    def weyl_order_bound(self) -> int | None:
        return self.order_hint if self.order_hint is not None else _weyl_order(self.family, self.rank)

    def contains(self, images: Sequence[int]) -> bool:
        return tuple(images) in _element_index(self)

    def direct_sum(self, other: "RootDatum") -> "RootDatum":
        n = self.rank
        pad_r = (0,) * other.rank
        pad_l = (0,) * n
        pos = [Weight(r.twice + pad_r) for r in self.positive_roots]
        pos += [Weight(pad_l + r.twice) for r in other.positive_roots]
        a, b = self.weyl_order_bound(), other.weyl_order_bound()
        hint = a * b if a is not None and b is not None else None
        return RootDatum.from_positive_roots(pos, n + other.rank,
                                             family=f"{self.family}+{other.family}", order_hint=hint)


def build_root_datum(family: str, rank: int) -> RootDatum:
    """Standard epsilon-coordinate realization of a classical root system."""
    fam = str(family).upper()
    if fam not in FAMILIES:
        raise ConfigurationError(f"unsupported root family {family!r}; expected one of {FAMILIES}")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise ConfigurationError(f"rank must be a positive integer, got {rank!r}")
    if fam == "D" and rank < 2:
        raise ConfigurationError("family D needs rank at least 2")
    cap = rank_cap()
    if rank > cap:
        raise ResourceError(f"rank {rank} exceeds the rank cap {cap}")
    return RootDatum.from_positive_roots(_classical_positive_roots(fam, rank), rank, family=fam,
                                         order_hint=_weyl_order(fam, rank))


@lru_cache(maxsize=128)
def _enumerate(datum: RootDatum) -> tuple[WeylElement, ...]:
    bound = datum.weyl_order_bound()
    if bound is not None and bound > MAX_WEYL_ORDER:
        raise ResourceError(f"|W| = {bound} exceeds the enumeration cap {MAX_WEYL_ORDER}")
    ident = tuple(range(1, datum.rank + 1))
    gens = datum.simple_reflections
    out = [WeylElement(ident, 0)]
    seen = {ident}
    frontier = [ident]
    level = 0
    # breadth-first search on the Cayley graph: the level is the word length
    while frontier:
        level += 1
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose_images(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    out.append(WeylElement(y, level))
                    if len(out) > MAX_WEYL_ORDER:
                        raise ResourceError(f"Weyl group exceeds the enumeration cap {MAX_WEYL_ORDER}")
        frontier = nxt
    return tuple(out)


@lru_cache(maxsize=128)
def _element_index(datum: RootDatum) -> dict[tuple[int, ...], WeylElement]:
    return {w.images: w for w in _enumerate(datum)}


def enumerate_weyl(datum: RootDatum) -> list[WeylElement]:
    """All Weyl group elements, identity first, ordered by length."""
    return list(_enumerate(datum))


def weyl_element(datum: RootDatum, images: Sequence[int] | str) -> WeylElement:
    """Look up an element given in one-line notation, validating membership."""
    if isinstance(images, str):
        images = parse_signed_permutation(images)
    images = tuple(images)
    if len(images) != datum.rank:
        raise UsageError(f"{list(images)} has rank {len(images)}, expected {datum.rank}")
    found = _element_index(datum).get(images)
    if found is None:
        raise UsageError(f"{list(images)} is not in the Weyl group of {datum.family}{datum.rank}")
    return found


class DominantRep(NamedTuple):
    w: WeylElement
    dominant: Weight
    status: str


def dominant_rep(mu: Weight, datum: RootDatum) -> DominantRep:
    """Return ``(w, w*mu, status)`` with ``w*mu`` dominant.

    ``w`` is reached by reflecting in simple roots with negative pairing, so
    it is the shortest element carrying ``mu`` into the closed chamber.
    """
    if mu.rank != datum.rank:
        raise ShapeError(f"weight of rank {mu.rank} for a datum of rank {datum.rank}")
    x = mu.twice
    gens = datum.simple_reflections
    simple = [a.twice for a in datum.simple_roots]
    images = tuple(range(1, datum.rank + 1))
    steps = 0
    while True:
        for g, a in zip(gens, simple):
            if _dot(x, a) < 0:
                x = act_images(g, x)
                images = compose_images(g, images)
                steps += 1
                break
        else:
            break
    status = "singular" if any(_dot(x, a) == 0 for a in simple) else "regular"
    return DominantRep(WeylElement(images, steps), Weight(x), status)


def reflect_to_dominant(twice: tuple[int, ...], datum: RootDatum) -> tuple[int, tuple[int, ...]]:
    """Fast path of :func:`dominant_rep`: returns ``(parity sign, dominant)``."""
    gens = datum.simple_reflections
    simple = [a.twice for a in datum.simple_roots]
    sign = 1
    x = twice
    while True:
        for g, a in zip(gens, simple):
            if _dot(x, a) < 0:
                x = act_images(g, x)
                sign = -sign
                break
        else:
            return sign, x
