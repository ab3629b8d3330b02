"""Torus characters of spin modules and their K-type decompositions.

Characters are finite integer combinations of formal exponentials e^mu.
K-types E_tau are indexed by highest weights dominant for the compact
positive system of the pair.
"""

from __future__ import annotations

import cmath
from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ShapeError, UsageError
from .lattice import RootDatum, Weight, _dot, enumerate_weyl, inner, reflect_to_dominant
from .realform import PairDatum

ORIENTATION = "rho_n-positive"


def _clean(terms: Mapping[Weight, int]) -> dict[Weight, int]:
    return {w: int(m) for w, m in terms.items() if m}


class _Combination:
    """Integer combination of weights; shared algebra for both term types."""

    def __init__(self, terms: Mapping[Weight, int] | None = None, rank: int | None = None):
        terms = _clean(terms or {})
        ranks = {w.rank for w in terms}
        if rank is not None:
            ranks.add(rank)
        if len(ranks) > 1:
            raise ShapeError(f"mixed weight ranks {sorted(ranks)}")
        self.terms = terms
        self.rank = ranks.pop() if ranks else None

    def _like(self, terms, rank):
        return type(self)(terms, rank)

    def _merge(self, other, sign: int):
        if not isinstance(other, type(self)):
            return NotImplemented
        if self.rank is not None and other.rank is not None and self.rank != other.rank:
            raise ShapeError(f"rank {self.rank} combined with rank {other.rank}")
        out = defaultdict(int, self.terms)
        for w, m in other.terms.items():
            out[w] += sign * m
        return self._like(out, self.rank if self.rank is not None else other.rank)

    def __add__(self, other):
        return self._merge(other, 1)

    def __sub__(self, other):
        return self._merge(other, -1)

    def __neg__(self):
        return self._like({w: -m for w, m in self.terms.items()}, self.rank)

    def __rmul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return self._like({w: k * m for w, m in self.terms.items()}, self.rank)

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, w: Weight) -> int:
        return self.terms.get(w, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Weight, int]]:
        """Terms in decreasing lexicographic order of the weight."""
        return sorted(self.terms.items(), key=lambda t: t[0].twice, reverse=True)

    def rows(self) -> list[tuple[tuple[int, ...], int]]:
        """Doubled coordinates and multiplicities, for exact serialization."""
        return [(w.twice, m) for w, m in self.sorted_terms()]

    def __repr__(self):
        body = " + ".join(f"{m}*[{w}]" for w, m in self.sorted_terms()) or "0"
        return f"{type(self).__name__}({body})"


class CharacterPoly(_Combination):
    """A virtual torus character sum m_mu e^mu."""

    @classmethod
    def monomial(cls, mu: Weight, mult: int = 1) -> "CharacterPoly":
        return cls({mu: mult}, mu.rank)

    @classmethod
    def one(cls, rank: int) -> "CharacterPoly":
        return cls({Weight.zero(rank): 1}, rank)

    def __mul__(self, other):
        if isinstance(other, int):
            return other * self
        if not isinstance(other, CharacterPoly):
            return NotImplemented
        out = defaultdict(int)
        for a, m in self.terms.items():
            for b, n in other.terms.items():
                out[a + b] += m * n
        return CharacterPoly(out, self.rank if self.rank is not None else other.rank)

    def dimension(self) -> int:
        return sum(self.terms.values())

    def shift(self, mu: Weight) -> "CharacterPoly":
        return CharacterPoly({w + mu: m for w, m in self.terms.items()}, mu.rank)

    def evaluate(self, angles: Sequence[float]) -> complex:
        """Value at the torus point exp(i*angles)."""
        if self.rank is not None and len(angles) != self.rank:
            raise ShapeError(f"{len(angles)} angles for a character of rank {self.rank}")
        total = 0j
        for w, m in self.terms.items():
            phase = sum(float(c) * a for c, a in zip(w.coords, angles))
            total += m * cmath.exp(1j * phase)
        return total


class VirtualKModule(_Combination):
    """A virtual K-module sum m_tau E_tau.

    ``datum`` optionally records the compact root system the K-types refer
    to, so that modules of different pairs are not paired by accident.
    """

    def __init__(self, terms: Mapping[Weight, int] | None = None, rank: int | None = None,
                 datum: RootDatum | None = None):
        super().__init__(terms, rank if rank is not None or datum is None else datum.rank)
        self.datum = datum

    def _like(self, terms, rank):
        return VirtualKModule(terms, rank, self.datum)

    def _merge(self, other, sign: int):
        if isinstance(other, VirtualKModule) and self.datum is not None and other.datum is not None \
                and self.datum != other.datum:
            raise UsageError("virtual K-modules of different pairs cannot be combined")
        out = super()._merge(other, sign)
        if out is not NotImplemented and out.datum is None:
            out.datum = other.datum
        return out

    @classmethod
    def checked(cls, terms: Mapping[Weight, int], k_datum: RootDatum) -> "VirtualKModule":
        for tau in terms:
            if tau.rank != k_datum.rank:
                raise ShapeError(f"K-type {tau} for K of rank {k_datum.rank}")
            if not k_datum.is_dominant(tau):
                raise UsageError(f"{tau} is not dominant for K")
        return cls(terms, k_datum.rank, k_datum)

    @classmethod
    def single(cls, tau: Weight, mult: int = 1, datum: RootDatum | None = None) -> "VirtualKModule":
        return cls({tau: mult}, tau.rank, datum)

    @classmethod
    def zero(cls, rank: int, datum: RootDatum | None = None) -> "VirtualKModule":
        return cls({}, rank, datum)


# spin modules --------------------------------------------------------------

def _lex_positive(mu: Weight) -> bool:
    for t in mu.twice:
        if t:
            return t > 0
    return False


def _binomial(mu: Weight, sign: int) -> CharacterPoly:
    h = mu.half()
    return CharacterPoly({h: 1, -h: sign}, mu.rank)


def spin_character(pair: PairDatum) -> CharacterPoly:
    """Character of one spin module of s restricted to t."""
    n = pair.t_rank
    out = CharacterPoly.one(n)
    for mu, mult in pair.s_weights:
        if _lex_positive(mu):
            for _ in range(mult):
                out = out * _binomial(mu, 1)
    return 2 ** (pair.zero_multiplicity // 2) * out


def spin_difference(pair: PairDatum) -> CharacterPoly:
    """ch(S+) - ch(S-): the noncompact part of the Weyl denominator."""
    if not pair.is_equal_rank:
        raise UsageError("the +/- split of the spin module needs an equal-rank pair")
    out = CharacterPoly.one(pair.t_rank)
    for beta in pair.noncompact_positive:
        out = out * _binomial(beta, -1)
    return out


def spin_plus_minus(pair: PairDatum) -> tuple[CharacterPoly, CharacterPoly]:
    """Characters of S+ and S-, oriented so e^{rho_n} lies in S+."""
    total = spin_character(pair)
    diff = spin_difference(pair)
    plus = {w: (total[w] + diff[w]) // 2 for w in set(total.terms) | set(diff.terms)}
    minus = {w: (total[w] - diff[w]) // 2 for w in set(total.terms) | set(diff.terms)}
    return CharacterPoly(plus, pair.t_rank), CharacterPoly(minus, pair.t_rank)


# K-types -------------------------------------------------------------------

def _k_datum(pair_or_datum) -> RootDatum:
    return pair_or_datum if isinstance(pair_or_datum, RootDatum) else pair_or_datum.k_datum


def _is_regular(twice: Sequence[int], datum: RootDatum) -> bool:
    return all(_dot(twice, a.twice) != 0 for a in datum.simple_roots)


def decompose_into_ktypes(chi: CharacterPoly, pair) -> VirtualKModule:
    """Write a W_K-invariant torus character as a virtual sum of K-types.

    Each weight mu is moved to tau = w(mu + rho_k) - rho_k with sign det(w);
    weights with mu + rho_k singular drop out.
    """
    datum = _k_datum(pair)
    rho = datum.rho
    out = defaultdict(int)
    for mu, m in chi.terms.items():
        if mu.rank != datum.rank:
            raise ShapeError(f"weight {mu} for K of rank {datum.rank}")
        sign, dom = reflect_to_dominant((mu + rho).twice, datum)
        if not _is_regular(dom, datum):
            continue
        out[Weight(dom) - rho] += sign * m
    return VirtualKModule(out, datum.rank, datum)


def weyl_dimension(tau: Weight, pair) -> int:
    datum = _k_datum(pair)
    rho = datum.rho
    num = Fraction(1)
    for a in datum.positive_roots:
        num *= inner(tau + rho, a) / inner(rho, a)
    return int(num)


def _require_dominant(tau: Weight, datum: RootDatum) -> None:
    if tau.rank != datum.rank:
        raise ShapeError(f"weight {tau} for K of rank {datum.rank}")
    if not datum.is_dominant(tau):
        raise UsageError(f"{tau} is not dominant for K")


def k_character(tau: Weight, pair) -> CharacterPoly:
    """Full character of E_tau by the Weyl character formula.

    The alternant of tau + rho_k is divided by one factor e^{a/2} - e^{-a/2}
    at a time.  Quotients keep their support in the convex hull of the
    W_K-orbit of tau + rho_k, which bounds the geometric series.
    """
    datum = _k_datum(pair)
    _require_dominant(tau, datum)
    rho = datum.rho
    top = tau + rho
    poly: dict[Weight, int] = defaultdict(int)
    for w in enumerate_weyl(datum):
        poly[w.act(top)] += w.det()
    floor = -inner(top, rho)
    for a in datum.positive_roots:
        step = inner(a, rho)
        shifted = {mu - a.half(): m for mu, m in poly.items() if m}
        quotient: dict[Weight, int] = defaultdict(int)
        # 1/(1 - e^{-a}) = sum_j e^{-j a}; accumulate from the top down
        for mu, m in shifted.items():
            nu = mu
            level = inner(nu, rho)
            while level >= floor:
                quotient[nu] += m
                nu = nu - a
                level -= step
        poly = quotient
    out = CharacterPoly(poly, datum.rank)
    if out.dimension() != weyl_dimension(tau, datum):
        raise ArithmeticError(f"character of {tau} failed the dimension check")
    return out


def spin_rho_multiplicity(pair: PairDatum) -> int:
    """Multiplicity of E_rho in the spin module of a complex pair."""
    if pair.family_tag != "complex":
        raise UsageError("the spin multiplicity of E_rho is defined for complex pairs")
    return decompose_into_ktypes(spin_character(pair), pair)[pair.k_datum.rho]


def prv_component(mu: Weight, nu: Weight, pair) -> Weight:
    """Dominant W_K-conjugate of mu + w0 nu."""
    datum = _k_datum(pair)
    _require_dominant(mu, datum)
    _require_dominant(nu, datum)
    w0 = datum.longest()
    _, dom = reflect_to_dominant((mu + w0.act(nu)).twice, datum)
    return Weight(dom)


def tensor_decompose(mu: Weight, nu: Weight, pair) -> VirtualKModule:
    """E_mu tensor E_nu by the Klimyk rule."""
    datum = _k_datum(pair)
    _require_dominant(mu, datum)
    _require_dominant(nu, datum)
    return decompose_into_ktypes(k_character(nu, datum).shift(mu), datum)


def module_character(v: VirtualKModule, pair) -> CharacterPoly:
    """Torus character of a virtual K-module."""
    datum = _k_datum(pair)
    out = CharacterPoly({}, datum.rank)
    for tau, m in v.terms.items():
        out = out + m * k_character(tau, datum)
    return out


def virtual_dimension(v: VirtualKModule, pair) -> int:
    return sum(m * weyl_dimension(tau, pair) for tau, m in v.terms.items())


def character_sum(polys: Iterable[CharacterPoly], rank: int) -> CharacterPoly:
    out = CharacterPoly({}, rank)
    for p in polys:
        out = out + p
    return out
