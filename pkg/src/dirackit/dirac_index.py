"""Dirac indices of standard modules and the checks they must pass.

Real standard modules are described by a Cartan class, a positive system
Delta(u) = w R+ in h-coordinates and a weight lambda on h; the
Harish-Chandra parameter is lambda + rho(u).  Complex standard modules
X(lambda, w lambda) have their own parameter type.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import ShapeError, SingularPointError, UsageError
from .lattice import Weight, WeylElement, dominant_rep, enumerate_weyl, inner, weyl_element
from .realform import CartanClass, PairDatum, cartan_classes, mat_act
from .spin_characters import (CharacterPoly, VirtualKModule, module_character, spin_character,
                              spin_difference, spin_rho_multiplicity)

log = logging.getLogger(__name__)

CASE_TAGS = ("case1", "case2", "case3")
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class InfinitesimalChar:
    """An infinitesimal character, stored as the dominant h-weight of its W_g-orbit."""

    value: Weight

    @classmethod
    def of(cls, mu: Weight, pair: PairDatum) -> "InfinitesimalChar":
        if mu.rank != pair.h_rank:
            raise ShapeError(f"infinitesimal character of rank {mu.rank} for h of rank {pair.h_rank}")
        return cls(dominant_rep(mu, pair.h_datum).dominant)

    def __str__(self):
        return str(self.value)


def _check_sign(eps) -> int:
    if eps not in (1, -1):
        raise UsageError(f"epsilon must be +1 or -1, got {eps!r}")
    return eps


@dataclass(frozen=True)
class StandardParamComplex:
    """X_eps(lambda, w lambda) for a complex group."""

    lam: Weight
    w: WeylElement
    epsilon: int = 1
    pair: PairDatum | None = field(default=None, compare=False)

    def __post_init__(self):
        _check_sign(self.epsilon)
        if not self.w.is_involution():
            raise UsageError(f"{self.w} is not an involution")
        if self.lam.rank != self.w.rank:
            raise ShapeError(f"lambda of rank {self.lam.rank} with w of rank {self.w.rank}")


@dataclass(frozen=True)
class StandardParamReal:
    """A standard module A_b(lambda) attached to a Cartan class.

    ``positive_system`` is the Weyl element w of the h root system with
    Delta(u) = w R+.  ``lam`` lives on h (t + a).
    """

    pair: PairDatum
    cartan: CartanClass
    positive_system: WeylElement
    lam: Weight
    epsilon: int = 1
    case_tag: str = "case1"
    name: str = ""

    def __post_init__(self):
        pair = self.pair
        _check_sign(self.epsilon)
        if self.case_tag not in CASE_TAGS:
            raise UsageError(f"case_tag must be one of {CASE_TAGS}")
        if self.lam.rank != pair.h_rank:
            raise ShapeError(f"lambda of rank {self.lam.rank} for h of rank {pair.h_rank}")
        if self.positive_system.rank != pair.h_rank or not pair.h_datum.contains(self.positive_system.images):
            raise UsageError(f"{self.positive_system} is not a Weyl element for h")
        for a in self.delta_u:
            if inner(self.harish_chandra, a) < 0:
                raise UsageError(
                    f"lambda = {self.lam} is outside the weakly good range: "
                    f"<lambda + rho(u), {a}> < 0")

    @cached_property
    def delta_u(self) -> frozenset[Weight]:
        w = self.positive_system
        return frozenset(w.act(a) for a in self.pair.h_datum.positive_roots)

    @property
    def rho_u(self) -> Weight:
        return self.positive_system.act(self.pair.h_datum.rho)

    @property
    def harish_chandra(self) -> Weight:
        return self.lam + self.rho_u

    @property
    def infinitesimal_character(self) -> InfinitesimalChar:
        return InfinitesimalChar.of(self.harish_chandra, self.pair)

    def theta(self, mu: Weight) -> Weight:
        return mat_act(self.cartan.theta, mu)

    @property
    def theta_stable(self) -> bool:
        return frozenset(self.theta(a) for a in self.delta_u) == self.delta_u

    @property
    def theta_fixed_lambda(self) -> bool:
        return self.theta(self.lam) == self.lam


def param_from_harish_chandra(pair: PairDatum, cartan: CartanClass | int, w: WeylElement | None,
                              hc: Weight, epsilon: int = 1, case_tag: str = "case1",
                              name: str = "") -> StandardParamReal:
    """Build a standard parameter from its Harish-Chandra parameter lambda + rho(u)."""
    if isinstance(cartan, int):
        cartan = cartan_classes(pair)[cartan]
    if w is None:
        w = pair.h_datum.identity()
    lam = hc - w.act(pair.h_datum.rho)
    return StandardParamReal(pair, cartan, w, lam, epsilon, case_tag, name)


def discrete_series(pair: PairDatum, hc: Weight, epsilon: int = 1, name: str = "") -> StandardParamReal:
    """The (limit of) discrete series with Harish-Chandra parameter ``hc``.

    The positive system is the one making ``hc`` dominant.
    """
    if not pair.is_equal_rank:
        raise UsageError("discrete series need an equal-rank pair")
    rep = dominant_rep(hc, pair.h_datum)
    w = pair.h_datum.inverse(rep.w)
    return param_from_harish_chandra(pair, 0, w, hc, epsilon, "case1", name)


# spin and compact parts of u ------------------------------------------------

def _u_weights(p: StandardParamReal) -> tuple[list[Weight], list[Weight]]:
    """t-weights of u cap k and u cap s for a theta-stable b."""
    pair = p.pair
    k_part, s_part = [], []
    done = set()
    for a in sorted(p.delta_u):
        if a in done:
            continue
        ta = p.theta(a)
        r = pair.restrict(a)
        if ta == a:
            if pair.is_compact(r) and p.cartan.is_fundamental and pair.is_equal_rank:
                k_part.append(r)
            else:
                s_part.append(r)
            done.add(a)
        else:
            # g_a + g_{theta a} meets k and s in one line each
            k_part.append(r)
            s_part.append(r)
            done |= {a, ta}
    return k_part, s_part


def _half_sum(weights: Iterable[Weight], rank: int) -> Weight:
    total = Weight.zero(rank)
    for w in weights:
        total = total + w
    return total.half()


def rho_u_cap_s(p: StandardParamReal) -> Weight:
    _, s_part = _u_weights(p)
    return _half_sum(s_part, p.pair.t_rank)


def lowest_k_type(p: StandardParamReal) -> Weight:
    """tau = lambda|_t + rho(u cap s), conjugated by W_K so Delta(u cap k) is standard."""
    pair = p.pair
    if not p.theta_stable:
        raise UsageError("b is not theta-stable")
    k_part, s_part = _u_weights(p)
    rho_k_u = _half_sum(k_part, pair.t_rank)
    wk = dominant_rep(rho_k_u, pair.k_datum).w
    tau = wk.act(pair.restrict(p.lam) + _half_sum(s_part, pair.t_rank))
    if not pair.k_datum.is_dominant(tau):
        raise UsageError(f"lambda|_t + rho(u cap s) = {tau} is not dominant for K")
    return tau


def eta_sign(p: StandardParamReal) -> int:
    """eta = epsilon (-1)^{dim(u cap s)}; reported, never used."""
    _, s_part = _u_weights(p)
    return p.epsilon * (-1) ** len(s_part)


def orientation_sign(p: StandardParamReal) -> int:
    """Sign of the index against the fixed rho_n-positive spin orientation.

    For a theta-stable b on the compact Cartan this is (-1)^{|Delta(u) cap R_n^+|}.
    The index operations report E_tau with coefficient +1; this value is
    exposed as metadata only.
    """
    if not p.pair.is_equal_rank or not p.theta_stable:
        return 1
    return (-1) ** sum(1 for b in p.pair.noncompact_positive if b in p.delta_u)


# indices --------------------------------------------------------------------

def index_standard_complex(p: StandardParamComplex, pair: PairDatum | None = None) -> VirtualKModule:
    """Twisted index of X_eps(lambda, w lambda): 0 unless w = 1, then r eps E_{2 lambda - rho}."""
    pair = pair or p.pair
    if pair is None or pair.family_tag != "complex":
        raise UsageError("index_standard_complex needs a complex pair")
    g = pair.g_datum
    if p.lam.rank != g.rank:
        raise ShapeError(f"lambda of rank {p.lam.rank} for g of rank {g.rank}")
    if not g.contains(p.w.images):
        raise UsageError(f"{p.w} is not in the Weyl group of {g.family}{g.rank}")
    rep = dominant_rep(2 * p.lam, g)
    if rep.status != "regular":
        raise UsageError(f"2*lambda = {2 * p.lam} is singular")
    k = pair.k_datum
    if not p.w.is_identity():
        return VirtualKModule.zero(k.rank, k)
    r = spin_rho_multiplicity(pair)
    return VirtualKModule.single(rep.dominant - g.rho, r * p.epsilon, k)


def complex_to_real(p: StandardParamComplex, pair: PairDatum | None = None) -> StandardParamReal:
    """The same module as a real standard parameter on h + h.

    lambda is first made dominant by the diagonal Weyl group (w moves to a
    conjugate).  Then lambda_h = (lambda - rho, w lambda - w rho) and
    Delta(u) = R+ x w R+, so lambda_h + rho(u) = (lambda, w lambda).
    """
    pair = pair or p.pair
    if pair is None or pair.family_tag != "complex":
        raise UsageError("complex_to_real needs a complex pair")
    g = pair.g_datum
    rep = dominant_rep(p.lam, g)
    v = rep.w
    lam = rep.dominant
    w = g.compose(g.compose(v, p.w), g.inverse(v))
    rho = g.rho
    lam_h = (lam - rho).concat(w.act(lam) - w.act(rho))
    ident = g.identity()
    pos = weyl_element(pair.h_datum, ident.images + tuple(x + g.rank if x > 0 else x - g.rank
                                                          for x in w.images))
    cartan = cartan_classes(pair)[0]
    if w.is_identity():
        case = "case1"
    elif mat_act(cartan.theta, lam_h) != lam_h:
        case = "case3"
    else:
        # lambda = rho: theta fixes lambda_h although b is not theta-stable
        case = "case2"
    return StandardParamReal(pair, cartan, pos, lam_h, p.epsilon, case)


def index_standard_real(p: StandardParamReal) -> VirtualKModule:
    """Ordinary index: 0 if b is not theta-stable, otherwise E_{lambda + rho(u cap s)}."""
    pair = p.pair
    if not pair.is_equal_rank:
        raise UsageError("the ordinary index is only nontrivial for equal-rank pairs")
    k = pair.k_datum
    if not p.theta_stable:
        return VirtualKModule.zero(k.rank, k)
    return VirtualKModule.single(lowest_k_type(p), 1, k)


def check_case(p: StandardParamReal) -> None:
    stable, fixed = p.theta_stable, p.theta_fixed_lambda
    if p.case_tag == "case1" and not (stable and fixed):
        raise UsageError("case1 needs theta b = b and theta lambda = lambda")
    if p.case_tag == "case2" and stable and fixed:
        raise UsageError("case2 parameter satisfies theta b = b and theta lambda = lambda")
    if p.case_tag == "case3" and (stable or fixed):
        raise UsageError("case3 needs theta b != b and theta lambda != lambda")


def twisted_index_standard_real(p: StandardParamReal) -> VirtualKModule:
    """Twisted index: eps 2^{floor(a/2)} E_{lambda + rho(u cap s)} in case 1, else 0."""
    pair = p.pair
    if pair.family_tag == "gl_real":
        raise UsageError("indices are not available for GL(m, R) pairs")
    check_case(p)
    k = pair.k_datum
    if p.case_tag != "case1":
        return VirtualKModule.zero(k.rank, k)
    spin_a = 2 ** (p.cartan.a_dim // 2)
    return VirtualKModule.single(lowest_k_type(p), p.epsilon * spin_a, k)


Param = StandardParamReal | StandardParamComplex


def param_pair(p: Param) -> PairDatum:
    if p.pair is None:
        raise UsageError("parameter carries no pair")
    return p.pair


def param_infinitesimal_character(p: Param) -> InfinitesimalChar:
    if isinstance(p, StandardParamComplex):
        pair = param_pair(p)
        return InfinitesimalChar.of(p.lam.concat(p.w.act(p.lam)), pair)
    return p.infinitesimal_character


def index_of(p: Param, mode: str) -> VirtualKModule:
    if mode not in ("ordinary", "twisted"):
        raise UsageError(f"mode must be ordinary or twisted, got {mode!r}")
    if isinstance(p, StandardParamComplex):
        if mode == "ordinary":
            raise UsageError("the ordinary index is only nontrivial for equal-rank pairs")
        return index_standard_complex(p)
    if mode == "ordinary":
        return index_standard_real(p)
    return twisted_index_standard_real(p)


def index_virtual(combination: Sequence[tuple[int, Param]], mode: str) -> VirtualKModule:
    """Sum of coefficient * index over a combination sharing one infinitesimal character."""
    if not combination:
        raise UsageError("empty combination")
    chis = {param_infinitesimal_character(p) for _, p in combination}
    if len(chis) > 1:
        raise UsageError("combination mixes infinitesimal characters: "
                         + ", ".join(sorted(str(c) for c in chis)))
    total = None
    for c, p in combination:
        term = c * index_of(p, mode)
        total = term if total is None else total + term
    return total


# checks ---------------------------------------------------------------------

class VoganReport(NamedTuple):
    ok: bool
    violations: list[Weight]


def vogan_check(v: VirtualKModule, chi: InfinitesimalChar, pair: PairDatum) -> VoganReport:
    """Every constituent tau must have tau + rho_k in the W_g-orbit of Lambda
    (tau + rho_k extended by zero over a)."""
    target = dominant_rep(2 * chi.value, pair.h_datum).dominant
    bad = []
    for tau in sorted(v.terms):
        ext = pair.extend_doubled(tau + pair.rho_k)
        if dominant_rep(ext, pair.h_datum).dominant != target:
            bad.append(tau)
    return VoganReport(not bad, bad)


def d2_eigenvalue(tau: Weight, chi: InfinitesimalChar, pair: PairDatum) -> Fraction:
    """||tau + rho_k||^2 - ||Lambda||^2, the D^2 eigenvalue on E_tau."""
    if tau.rank != pair.t_rank:
        raise ShapeError(f"tau of rank {tau.rank} for t of rank {pair.t_rank}")
    if not pair.k_datum.is_dominant(tau):
        raise UsageError(f"{tau} is not dominant for K")
    ext = pair.extend_doubled(tau + pair.rho_k)
    return inner(ext, ext) / 4 - inner(chi.value, chi.value)


def w_one(pair: PairDatum) -> list[WeylElement]:
    """Elements w of W_g with w rho_g dominant for K."""
    g = pair.g_datum
    return [w for w in enumerate_weyl(g) if pair.k_datum.is_dominant(w.act(g.rho))]


def hd_multiplicity(tau: Weight, k_spectrum: Sequence[tuple[Weight, int]], chi: InfinitesimalChar,
                    pair: PairDatum) -> tuple[int, int]:
    """Multiplicities of E_tau in H_D^+ and H_D^-.

    Counts solutions of w1 tau = sigma rho - rho_k + mu with w1 in W_K,
    sigma in W^1 and mu a lowest weight from the K-spectrum.  A solution
    goes to H_D^+ when det(sigma) = +1, matching the rho_n-positive spin
    orientation.
    """
    if not pair.is_equal_rank:
        raise UsageError("hd_multiplicity needs an equal-rank pair")
    spectrum = {}
    for mu, m in k_spectrum:
        if m != 1 or mu in spectrum:
            raise UsageError("the K-spectrum must be multiplicity free")
        spectrum[mu] = m
    if not spectrum or d2_eigenvalue(tau, chi, pair) != 0:
        return (0, 0)
    rho = pair.g_datum.rho
    rho_k = pair.rho_k
    plus = minus = 0
    for sigma in w_one(pair):
        for w1 in enumerate_weyl(pair.k_datum):
            mu = w1.act(tau) - sigma.act(rho) + rho_k
            if mu in spectrum:
                if sigma.det() == 1:
                    plus += 1
                else:
                    minus += 1
    return plus, minus


# characters -----------------------------------------------------------------

def elliptic_character(v: VirtualKModule, pair: PairDatum, mode: str = "ordinary"
                       ) -> tuple[CharacterPoly, CharacterPoly]:
    """Numerator and denominator of the character on the compact torus.

    ordinary: Theta = ch(I(X)) / ch(S+ - S-) on T_reg (equal rank);
    twisted:  Theta = ch(I_theta(X)) / ch(S) on theta T_reg.
    """
    if mode == "ordinary":
        if not pair.is_equal_rank:
            raise UsageError("the ordinary character formula needs an equal-rank pair")
        den = spin_difference(pair)
    elif mode == "twisted":
        den = spin_character(pair)
    else:
        raise UsageError(f"mode must be ordinary or twisted, got {mode!r}")
    return module_character(v, pair), den


def evaluate_quotient(num: CharacterPoly, den: CharacterPoly, angles: Sequence[float]) -> complex:
    d = den.evaluate(angles)
    if abs(d) < SINGULAR_TOL:
        raise SingularPointError(f"the denominator vanishes at angles {list(angles)}")
    return num.evaluate(angles) / d
