"""Euler-Poincare pairings computed from Dirac indices, and explicit Ext
groups between theta-stable standard modules and finite-dimensional modules."""

from __future__ import annotations

import logging
from math import comb
from typing import NamedTuple, Sequence, Union

from .dirac_index import (InfinitesimalChar, Param, StandardParamComplex, StandardParamReal,
                          discrete_series, index_of, param_from_harish_chandra,
                          param_infinitesimal_character)
from .errors import UsageError
from .lattice import Weight, enumerate_weyl, inner
from .realform import PairDatum
from .spin_characters import CharacterPoly, VirtualKModule

log = logging.getLogger(__name__)

Combination = Sequence[tuple[int, Param]]
Operand = Union[Param, Combination, VirtualKModule]


class EPEntry(NamedTuple):
    value: int
    diagnostic: str


def hom_dim(v: VirtualKModule, w: VirtualKModule) -> int:
    """Virtual dimension of Hom_K(v, w): sum of m_v(tau) m_w(tau)."""
    if v.rank is not None and w.rank is not None and v.rank != w.rank:
        raise UsageError("virtual modules of different pairs")
    if v.datum is not None and w.datum is not None and v.datum != w.datum:
        raise UsageError("virtual modules of different pairs")
    return sum(m * w[tau] for tau, m in v.terms.items())


def _as_combination(x: Operand) -> Combination | None:
    if isinstance(x, (StandardParamReal, StandardParamComplex)):
        return [(1, x)]
    if isinstance(x, VirtualKModule):
        return None
    return list(x)


def _chi(x: Operand) -> InfinitesimalChar | None:
    combo = _as_combination(x)
    if combo is None:
        return None
    chis = {param_infinitesimal_character(p) for _, p in combo}
    if len(chis) > 1:
        raise UsageError("combination mixes infinitesimal characters")
    return chis.pop() if chis else None


def _pair_of(x: Operand) -> PairDatum | None:
    combo = _as_combination(x)
    if not combo:
        return None
    return combo[0][1].pair


def _index(x: Operand, mode: str) -> VirtualKModule:
    combo = _as_combination(x)
    if combo is None:
        return x
    total = None
    for c, p in combo:
        term = c * index_of(p, mode)
        total = term if total is None else total + term
    if total is None:
        raise UsageError("empty combination")
    return total


def _entry(x: Operand, y: Operand, pair: PairDatum | None, mode: str, factor: int) -> EPEntry:
    for p in (_pair_of(x), _pair_of(y)):
        if pair is not None and p is not None and p != pair:
            raise UsageError("parameter belongs to a different pair")
    cx, cy = _chi(x), _chi(y)
    if cx is not None and cy is not None and cx != cy:
        msg = f"infinitesimal characters differ ({cx} vs {cy}); all Ext groups vanish"
        log.info(msg)
        return EPEntry(0, msg)
    return EPEntry(factor * hom_dim(_index(x, mode), _index(y, mode)), "")


def ep_pair_entry(x: Operand, y: Operand, pair: PairDatum | None = None) -> EPEntry:
    pair = pair or _pair_of(x) or _pair_of(y)
    if pair is not None and not pair.is_equal_rank:
        raise UsageError("the untwisted Euler-Poincare pairing vanishes for unequal-rank pairs")
    return _entry(x, y, pair, "ordinary", 1)


def ep_pair(x: Operand, y: Operand, pair: PairDatum | None = None) -> int:
    """EP(X, Y) = Hom_K(I(X), I(Y)) for equal-rank pairs."""
    return ep_pair_entry(x, y, pair).value


def twisted_constant(pair: PairDatum) -> int:
    """c = 2 when dim s is odd (two spin modules), else 1."""
    return 2 if pair.dim_s % 2 else 1


def ep_twisted_entry(x: Operand, y: Operand, pair: PairDatum | None = None) -> EPEntry:
    pair = pair or _pair_of(x) or _pair_of(y)
    if pair is None:
        raise UsageError("ep_twisted needs a pair")
    return _entry(x, y, pair, "twisted", twisted_constant(pair))


def ep_twisted(x: Operand, y: Operand, pair: PairDatum | None = None) -> int:
    """Trace of theta on EP(X, Y): c Hom_K(I_theta(X), I_theta(Y))."""
    return ep_twisted_entry(x, y, pair).value


def ep_matrix(params: Sequence[Operand], mode: str = "ordinary", pair: PairDatum | None = None
              ) -> tuple[list[list[int]], list[str]]:
    """EP matrix over a parameter list; mismatched entries are 0 with a footnote."""
    if mode not in ("ordinary", "twisted"):
        raise UsageError(f"mode must be ordinary or twisted, got {mode!r}")
    fn = ep_pair_entry if mode == "ordinary" else ep_twisted_entry
    rows, notes = [], []
    for i, x in enumerate(params):
        row = []
        for j, y in enumerate(params):
            e = fn(x, y, pair)
            row.append(e.value)
            if e.diagnostic and i < j:
                notes.append(f"({i},{j}): {e.diagnostic}")
        rows.append(row)
    return rows, notes


def ht_ep_vanishing(a_dim: int, v: CharacterPoly, w: CharacterPoly) -> int:
    """Alternating Ext sum for (h, T)-modules: the exterior algebra of a
    contributes sum (-1)^p C(a, p), which is 0 unless a = 0."""
    if a_dim < 0:
        raise UsageError("a_dim must be nonnegative")
    euler = sum((-1) ** p * comb(a_dim, p) for p in range(a_dim + 1))
    hom_t = sum(m * w[mu] for mu, m in v.terms.items())
    return euler * hom_t


# finite-dimensional modules ---------------------------------------------------

def kostant_ubar(p: StandardParamReal, y: Weight) -> list[tuple[int, Weight]]:
    """Weights of H^q(u-bar, F_y), one line per Weyl group element.

    For z in W(y + rho) the weight z + rho(u) occurs in degree
    q = #{a in Delta(u) : <z, a> > 0}.
    """
    pair = p.pair
    g = pair.h_datum
    if not g.is_dominant(y):
        raise UsageError(f"highest weight {y} is not dominant")
    top = y + g.rho
    out = []
    for w in enumerate_weyl(g):
        z = w.act(top)
        q = sum(1 for a in p.delta_u if inner(z, a) > 0)
        out.append((q, z + p.rho_u))
    return sorted(out, key=lambda t: (t[0], t[1].twice))


def ext_std_vs_findim(p: StandardParamReal, y: Weight, pair: PairDatum | None = None
                      ) -> list[tuple[int, int]]:
    """dim Ext^i(A_b(lambda), F_y) from the collapsed Zuckerman spectral sequence.

    Ext^{q-S} = Hom_T(C_{lambda + 2 rho(u)}, H^q(u-bar, F_y)) with
    S = dim(u cap k).
    """
    pair = pair or p.pair
    if not pair.is_equal_rank:
        raise UsageError("the finite-dimensional Ext pathway is implemented for equal-rank pairs")
    if not p.theta_stable:
        raise UsageError("b must be theta-stable")
    s_count = sum(1 for a in p.delta_u if pair.is_compact(pair.restrict(a)))
    target = p.lam + 2 * p.rho_u
    dims: dict[int, int] = {}
    for q, weight in kostant_ubar(p, y):
        if weight == target:
            dims[q - s_count] = dims.get(q - s_count, 0) + 1
    n_u = len(p.delta_u)
    lo, hi = max(0, -s_count), min(n_u - s_count, pair.dim_s)
    return [(i, dims.get(i, 0)) for i in range(lo, hi + 1)]


def alternating_sum(ext: Sequence[tuple[int, int]]) -> int:
    return sum((-1) ** i * d for i, d in ext)


def findim_as_standards(pair: PairDatum, y: Weight) -> list[tuple[int, StandardParamReal]]:
    """F_y = PS - DS+ - DS- in the Grothendieck group, for rank-one pairs.

    PS is the principal series on the split Cartan with the same
    infinitesimal character y + rho.
    """
    if not pair.is_equal_rank or pair.g_datum.semisimple_rank != 1 or pair.compact_roots:
        raise UsageError("findim_as_standards is implemented for sl(2, R)-type pairs")
    g = pair.h_datum
    if not g.is_dominant(y):
        raise UsageError(f"highest weight {y} is not dominant")
    hc = y + g.rho
    ps = param_from_harish_chandra(pair, 1, None, hc, case_tag="case2", name="PS")
    plus = discrete_series(pair, hc, name="DS+")
    minus = discrete_series(pair, -hc, name="DS-")
    return [(1, ps), (-1, plus), (-1, minus)]
