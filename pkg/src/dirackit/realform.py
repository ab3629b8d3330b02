"""(g, K) pairs given by a Cartan involution, and their real Cartan classes.

Three families are supported:

``complex``
    A complex group viewed as a real group.  The complexified Cartan is
    h + h with theta swapping the two copies; t is the diagonal copy and
    a the antidiagonal one.  K-weights live in the coordinates of g.
``equal_rank``
    A real form with a compact Cartan t = h, described by the set of
    compact positive roots.  theta is trivial on h.
``gl_real``
    GL(m, R) in the coordinates of its fundamental Cartan, with
    theta(z) = -w0(z).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import ConfigurationError, ShapeError
from .lattice import RootDatum, Weight, WeylElement, build_root_datum, enumerate_weyl

FAMILY_TAGS = ("complex", "equal_rank", "gl_real")

Matrix = tuple[tuple[int, ...], ...]


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def mat_act(a: Matrix, mu: Weight) -> Weight:
    if len(a) != mu.rank:
        raise ShapeError(f"matrix of size {len(a)} applied to a weight of rank {mu.rank}")
    return Weight(tuple(sum(r * t for r, t in zip(row, mu.twice)) for row in a))


def element_matrix(w: WeylElement) -> Matrix:
    return w.matrix


def reflection_matrix(beta: Weight) -> Matrix:
    n = beta.rank
    nb = sum(b * b for b in beta.twice)
    rows = []
    for i in range(n):
        rows.append(tuple((1 if i == j else 0) * nb - 2 * beta.twice[i] * beta.twice[j] for j in range(n)))
    # every root of a classical system has a signed-permutation reflection
    return tuple(tuple(v // nb for v in r) for r in rows)


def _check_involution(theta: Matrix, roots: frozenset[Weight], what: str) -> None:
    n = len(theta)
    if mat_mul(theta, theta) != identity_matrix(n):
        raise ConfigurationError(f"{what}: theta is not an involution")
    for r in roots:
        if mat_act(theta, r) not in roots:
            raise ConfigurationError(f"{what}: theta does not preserve the root {r}")


@dataclass(frozen=True)
class CartanClass:
    """A conjugacy class of theta-stable Cartan subalgebras h = t + a."""

    index_k: int
    t_dim: int
    a_dim: int
    t_embedding: str
    theta: Matrix = field(repr=False)
    cayley_roots: tuple[Weight, ...] = ()

    @property
    def is_fundamental(self) -> bool:
        return self.index_k == 0


@dataclass(frozen=True)
class PairDatum:
    """A (g, K) pair.

    ``h_datum`` carries the roots of g in the coordinates of the complexified
    Cartan h (two copies of g's coordinates for complex groups).  K-weights
    live in the coordinates of ``k_datum``.
    """

    family_tag: str
    g_datum: RootDatum
    h_datum: RootDatum
    theta: Matrix = field(repr=False)
    compact_roots: tuple[Weight, ...]
    s_weights: tuple[tuple[Weight, int], ...]
    k_datum: RootDatum
    m: int | None = None
    label: str = ""

    def __post_init__(self):
        if self.family_tag not in FAMILY_TAGS:
            raise ConfigurationError(f"unknown family tag {self.family_tag!r}")
        _check_involution(self.theta, self.h_datum.roots, self.label or self.family_tag)

    # coordinates ----------------------------------------------------------

    @property
    def h_rank(self) -> int:
        return self.h_datum.rank

    @property
    def t_rank(self) -> int:
        return self.k_datum.rank

    @property
    def rank(self) -> int:
        """Dimension of t (and of a) for complex pairs, of h otherwise."""
        if self.family_tag == "complex":
            return self.g_datum.semisimple_rank
        return self.h_rank

    @property
    def is_equal_rank(self) -> bool:
        return self.family_tag == "equal_rank"

    @cached_property
    def s_weight_map(self) -> dict[Weight, int]:
        return dict(self.s_weights)

    @property
    def dim_s(self) -> int:
        return sum(m for _, m in self.s_weights)

    @property
    def zero_multiplicity(self) -> int:
        return self.s_weight_map.get(Weight.zero(self.t_rank), 0)

    @cached_property
    def noncompact_positive(self) -> tuple[Weight, ...]:
        """Positive noncompact roots (equal-rank pairs)."""
        if not self.is_equal_rank:
            return ()
        cset = set(self.compact_roots)
        return tuple(r for r in self.g_datum.positive_roots if r not in cset)

    @property
    def rho_k(self) -> Weight:
        return self.k_datum.rho

    @property
    def rho_n(self) -> Weight:
        total = Weight.zero(self.t_rank)
        for b in self.noncompact_positive:
            total = total + b
        return total.half()

    def is_compact(self, root: Weight) -> bool:
        return root in self.k_datum.roots

    def restrict(self, mu: Weight) -> Weight:
        """Restriction of an h-weight to t."""
        if mu.rank != self.h_rank:
            raise ShapeError(f"h-weight of rank {mu.rank}, expected {self.h_rank}")
        if self.family_tag == "complex":
            left, right = mu.split(self.g_datum.rank)
            return left + right
        if self.family_tag == "gl_real":
            n = self.t_rank
            return Weight(tuple(mu.twice[i] - mu.twice[self.h_rank - 1 - i] for i in range(n)))
        return mu

    def extend_doubled(self, tau: Weight) -> Weight:
        """Twice the extension of a t-weight to h by zero on a.

        Doubling keeps the result on the half-integer lattice.
        """
        if tau.rank != self.t_rank:
            raise ShapeError(f"t-weight of rank {tau.rank}, expected {self.t_rank}")
        if self.family_tag == "complex":
            return tau.concat(tau)
        if self.family_tag == "gl_real":
            m, n = self.h_rank, self.t_rank
            out = [0] * m
            for i in range(n):
                out[i] = tau.twice[i]
                out[m - 1 - i] = -tau.twice[i]
            return Weight(tuple(out))
        return 2 * tau

    def theta_on(self, mu: Weight) -> Weight:
        return mat_act(self.theta, mu)

    def lift_weyl(self, w: WeylElement) -> WeylElement:
        """View an element of W(g) as an element acting on h-coordinates."""
        if w.rank == self.h_rank:
            return w
        if self.family_tag == "complex" and w.rank == self.g_datum.rank:
            n = w.rank
            images = w.images + tuple(v + n if v > 0 else v - n for v in w.images)
            return WeylElement(images, 2 * w.length)
        raise ShapeError(f"Weyl element of rank {w.rank} does not act on h of rank {self.h_rank}")


# construction -------------------------------------------------------------

def _weight(v) -> Weight:
    if isinstance(v, Weight):
        return v
    return Weight.from_coords(v)


def _swap_matrix(n: int) -> Matrix:
    rows = []
    for i in range(2 * n):
        j = i + n if i < n else i - n
        rows.append(tuple(1 if c == j else 0 for c in range(2 * n)))
    return tuple(rows)


def _reverse_negate(m: int, outer: int) -> Matrix:
    """theta of the GL(m) Cartan with ``outer`` untransformed outer pairs."""
    rows = []
    for i in range(m):
        if i < outer or i >= m - outer:
            j = m - 1 - i
        else:
            j = i
        rows.append(tuple(-1 if c == j else 0 for c in range(m)))
    return tuple(rows)


def _check_compact(g: RootDatum, compact: Sequence[Weight]) -> None:
    pos = g.positive_set
    for c in compact:
        if c not in pos:
            raise ConfigurationError(f"compact root {c} is not a positive root of {g.family}{g.rank}")
    rk = set(compact) | {-c for c in compact}
    for a in compact:
        s = g.reflection(a)
        for b in rk:
            if s.act(b) not in rk:
                raise ConfigurationError(f"compact roots are not closed under the reflection in {a}")
    # theta acts by +1 on compact and -1 on noncompact root spaces; this is a
    # Lie algebra automorphism exactly when the grading is additive
    roots = g.roots
    for a in roots:
        for b in roots:
            c = a + b
            if c in roots and ((a in rk) == (b in rk)) != (c in rk):
                raise ConfigurationError(
                    f"compact roots do not define an involution: {a} + {b} = {c} breaks the grading")


def _gl_k_roots(m: int) -> list[Weight]:
    n = m // 2
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            out.append(Weight.unit(n, i) - Weight.unit(n, j))
            out.append(Weight.unit(n, i) + Weight.unit(n, j))
        if m % 2:
            out.append(Weight.unit(n, i))
    return out


def complex_pair(family: str, rank: int) -> PairDatum:
    g = build_root_datum(family, rank)
    n = g.rank
    s = Counter({r: 1 for r in g.roots})
    s[Weight.zero(n)] = g.semisimple_rank
    return PairDatum("complex", g, g.direct_sum(g), _swap_matrix(n), (),
                     tuple(sorted(s.items())), g, label=f"complex {g.family}{rank}")


def equal_rank_pair(family: str, rank: int, compact_roots: Iterable) -> PairDatum:
    g = build_root_datum(family, rank)
    compact = tuple(sorted({_weight(c) for c in compact_roots}, reverse=True))
    for c in compact:
        if c.rank != g.rank:
            raise ConfigurationError(f"compact root {c} has rank {c.rank}, expected {g.rank}")
    _check_compact(g, compact)
    k = RootDatum.from_positive_roots(compact, g.rank, family="K")
    cset = set(compact) | {-c for c in compact}
    s = {r: 1 for r in g.roots if r not in cset}
    return PairDatum("equal_rank", g, g, identity_matrix(g.rank), compact,
                     tuple(sorted(s.items())), k, label=f"equal rank {g.family}{rank}")


def gl_pair(m: int) -> PairDatum:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ConfigurationError(f"GL(m, R) needs a positive integer m, got {m!r}")
    g = build_root_datum("A", m)
    n = m // 2
    k = RootDatum.from_positive_roots(_gl_k_roots(m), n, family="O")
    pair = PairDatum("gl_real", g, g, _reverse_negate(m, n), (), (), k, m=m, label=f"GL({m},R)")
    # weights of t on s: weights on g minus weights on k
    weights = Counter()
    for r in g.roots:
        weights[pair.restrict(r)] += 1
    weights[Weight.zero(n)] += m
    for r in k.roots:
        weights[r] -= 1
    weights[Weight.zero(n)] -= n
    s = tuple(sorted((w, c) for w, c in weights.items() if c))
    return PairDatum("gl_real", g, g, pair.theta, (), s, k, m=m, label=pair.label)


def build_pair(descriptor: Mapping) -> PairDatum:
    """Build a pair from a descriptor mapping.

    Keys: ``family_tag``, ``root_family``, ``rank``, ``compact_roots``
    (equal rank) and ``m`` (GL(m, R)).
    """
    if not isinstance(descriptor, Mapping):
        raise ConfigurationError("pair descriptor must be a mapping")
    tag = descriptor.get("family_tag")
    if tag not in FAMILY_TAGS:
        raise ConfigurationError(f"family_tag must be one of {FAMILY_TAGS}, got {tag!r}")
    if tag == "gl_real":
        m = descriptor.get("m", descriptor.get("rank"))
        return gl_pair(m)
    family = descriptor.get("root_family")
    rank = descriptor.get("rank")
    if family is None or rank is None:
        raise ConfigurationError("descriptor needs root_family and rank")
    if tag == "complex":
        return complex_pair(family, rank)
    compact = descriptor.get("compact_roots", [])
    try:
        compact = [_weight(c) for c in compact]
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"bad compact root: {exc}") from None
    return equal_rank_pair(family, rank, compact)


# Cartan classes -----------------------------------------------------------

def _strongly_orthogonal(a: Weight, b: Weight, roots: frozenset[Weight]) -> bool:
    return a != b and a != -b and (a + b) not in roots and (a - b) not in roots


def _positive_rep(r: Weight, pos: frozenset[Weight]) -> Weight:
    return r if r in pos else -r


def _orthogonal_sets(candidates: Sequence[Weight], roots: frozenset[Weight]) -> list[tuple[Weight, ...]]:
    out = [()]

    def grow(current: tuple[Weight, ...], start: int):
        for i in range(start, len(candidates)):
            b = candidates[i]
            if all(_strongly_orthogonal(a, b, roots) for a in current):
                nxt = current + (b,)
                out.append(nxt)
                grow(nxt, i + 1)

    grow((), 0)
    return out


def cartan_classes(pair: PairDatum) -> list[CartanClass]:
    """Conjugacy classes of theta-stable Cartan subalgebras, fundamental first."""
    if pair.family_tag == "complex":
        r = pair.rank
        return [CartanClass(0, r, r, "t = diagonal copy of h in h + h", pair.theta)]
    if pair.family_tag == "gl_real":
        m = pair.m
        n = m // 2
        out = []
        for c in range(n + 1):
            outer = n - c
            cay = tuple(Weight.unit(m, i) - Weight.unit(m, m - 1 - i) for i in range(outer, n))
            out.append(CartanClass(c, outer, m - outer,
                                   f"outer {outer} coordinate pairs compact, middle {m - 2 * outer} split",
                                   _reverse_negate(m, outer), cay))
        return out
    g = pair.g_datum
    pos = g.positive_set
    wk = enumerate_weyl(pair.k_datum)
    seen = {}
    for subset in _orthogonal_sets(pair.noncompact_positive, g.roots):
        # canonical representative of the W_K orbit of the set
        key = min(tuple(sorted((_positive_rep(w.act(b), pos) for b in subset), reverse=True)) for w in wk)
        seen.setdefault(key, subset)
    classes = []
    for key in sorted(seen, key=lambda s: (len(s), [b.twice for b in s])):
        theta = identity_matrix(g.rank)
        for b in key:
            theta = mat_mul(reflection_matrix(b), theta)
        desc = "compact" if not key else "Cayley transforms in " + ", ".join(str(b) for b in key)
        classes.append(CartanClass(len(key), g.rank - len(key), len(key), desc, theta, key))
    return classes


def theta_action_on_weight(pair: PairDatum, w: WeylElement | None, mu: Weight) -> Weight:
    """Return theta(mu), or theta(w(mu)) when ``w`` is given.

    For complex pairs ``w`` may be an element of W(g); it acts on both copies
    of h.
    """
    if mu.rank != pair.h_rank:
        raise ShapeError(f"weight of rank {mu.rank} for h of rank {pair.h_rank}")
    if w is not None:
        mu = pair.lift_weyl(w).act(mu)
    return pair.theta_on(mu)
