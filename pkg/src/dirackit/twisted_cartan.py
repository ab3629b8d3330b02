"""Twisted Cartan subgroups as conjugacy classes of Weyl involutions.

The GL(m, R) stratification comes with a brute-force subspace oracle."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ConfigurationError, ResourceError, UsageError
from .lattice import RootDatum, WeylElement, build_root_datum, compose_images, enumerate_weyl, invert_images
from .realform import PairDatum, mat_mul

GL_CLASS_CAP = 12
GL_ORACLE_CAP = 8


class TwistedClass(NamedTuple):
    representative: WeylElement
    size: int
    h_w_plus_dim: int
    h_w_minus_dim: int


class GLStratum(NamedTuple):
    cartan_index_k: int          # untransformed outer pairs
    classes: list[tuple[WeylElement, int]]


class OracleStratum(NamedTuple):
    cartan_index_k: int
    stable_count: int
    class_sizes: list[int]
    middle_touching: int

    @property
    def classes(self) -> int:
        return len(self.class_sizes)


def _rep_key(w: WeylElement):
    return (w.length, w.matrix)


def involution_partition(datum: RootDatum) -> list[list[WeylElement]]:
    """Conjugacy classes of involutions (identity included), found by
    conjugating with every element of W."""
    els = enumerate_weyl(datum)
    invols = {e.images: e for e in els if e.is_involution()}
    seen: set[tuple[int, ...]] = set()
    classes = []
    for key, x in invols.items():
        if key in seen:
            continue
        orbit = set()
        for g in els:
            orbit.add(compose_images(compose_images(g.images, key), invert_images(g.images)))
        seen |= orbit
        classes.append(sorted((invols[k] for k in orbit), key=_rep_key))
    classes.sort(key=lambda c: _rep_key(c[0]))
    return classes


def involution_classes(datum: RootDatum) -> list[tuple[WeylElement, int]]:
    """``(representative, class size)`` per conjugacy class of involutions.

    Representatives have minimal length in their class, ties broken by the
    matrix in lexicographic order.
    """
    return [(c[0], len(c)) for c in involution_partition(datum)]


def _signature(pair: PairDatum, w: WeylElement) -> tuple[int, int]:
    lifted = pair.lift_weyl(w)
    m = np.array(mat_mul(pair.theta, lifted.matrix), dtype=float)
    dim = m.shape[0]
    eye = np.eye(dim)
    plus = dim - np.linalg.matrix_rank(m - eye)
    minus = dim - np.linalg.matrix_rank(m + eye)
    centre = pair.g_datum.rank - pair.g_datum.semisimple_rank
    # the centre of gl(n) contributes one + and one - direction
    return int(plus) - centre, int(minus) - centre


def fixed_signature(pair: PairDatum, w: WeylElement) -> tuple[int, int]:
    """Dimensions of the +1 and -1 eigenspaces of theta*w on h (semisimple part)."""
    if pair.family_tag != "complex":
        raise UsageError("fixed-torus signatures are defined for complex pairs")
    if not w.is_involution():
        raise UsageError(f"{w} is not an involution")
    return _signature(pair, w)


def twisted_cartan_classes_complex(pair: PairDatum) -> list[TwistedClass]:
    if pair.family_tag != "complex":
        raise UsageError(f"expected a complex pair, got {pair.family_tag}")
    out = []
    for rep, size in involution_classes(pair.g_datum):
        plus, minus = _signature(pair, rep)
        out.append(TwistedClass(rep, size, plus, minus))
    return out


def _check_gl(m, cap: int) -> None:
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ConfigurationError(f"m must be a positive integer, got {m!r}")
    if m > cap:
        raise ResourceError(f"m = {m} exceeds the cap {cap}")


def twisted_cartan_classes_gl(m: int) -> list[GLStratum]:
    """For each Cartan class of GL(m, R) with k untransformed outer pairs,
    the conjugacy classes of involutions in S_k.  Strata run k = n, ..., 0."""
    _check_gl(m, GL_CLASS_CAP)
    out = []
    for k in range(m // 2, -1, -1):
        if k == 0:
            out.append(GLStratum(0, [(WeylElement((), 0), 1)]))
        else:
            out.append(GLStratum(k, involution_classes(build_root_datum("A", k))))
    return out


# oracle ------------------------------------------------------------------

def _rref_key(vectors: Sequence[Sequence[int]]) -> tuple:
    rows = [[Fraction(x) for x in v] for v in vectors]
    ncols = len(rows[0]) if rows else 0
    out = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    for row in rows[:r]:
        out.append(tuple(row))
    return tuple(out)


def _permute(perm: Sequence[int], v: Sequence) -> list:
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[perm[i]] = x
    return out


def sigma_stable_oracle(m: int) -> list[OracleStratum]:
    """Classify the conjugates w.t of the fundamental torus of GL(m, R).

    t is spanned by e_i - e_{m+1-i}.  In the stratum with k untransformed
    outer pairs the real structure acts on h by P_k, the reversal of the
    outer k pairs, and a conjugate w.t is stable when P_k maps it to itself.
    Stable subspaces are then grouped under the permutations commuting with
    P_k (the real Weyl group).
    """
    _check_gl(m, GL_ORACLE_CAP)
    n = m // 2
    basis = []
    for i in range(n):
        v = [0] * m
        v[i], v[m - 1 - i] = 1, -1
        basis.append(v)
    mid = {n} if m % 2 else set()

    subspaces: dict[tuple, list[list[int]]] = {}
    moved_middle: dict[tuple, bool] = {}
    for w in permutations(range(m)):
        vecs = [_permute(w, v) for v in basis]
        key = _rref_key(vecs) if vecs else ()
        if key not in subspaces:
            subspaces[key] = vecs
            # the coordinate fixed by w w0 w^-1 is w(middle)
            moved_middle[key] = bool(mid) and w[n] != n
    strata = []
    for k in range(n, -1, -1):
        p = [m - 1 - i if (i < k or i >= m - k) else i for i in range(m)]
        stable = []
        for key, vecs in subspaces.items():
            img = [_permute(p, v) for v in vecs]
            if (_rref_key(img) if img else ()) == key:
                stable.append(key)
        central = [g for g in permutations(range(m))
                   if all(g[p[i]] == p[g[i]] for i in range(m))]
        remaining = set(stable)
        sizes = []
        while remaining:
            key = min(remaining)
            vecs = subspaces[key]
            orbit = set()
            for g in central:
                img = [_permute(g, v) for v in vecs]
                orbit.add(_rref_key(img) if img else ())
            sizes.append(len(orbit & remaining))
            remaining -= orbit
        strata.append(OracleStratum(k, len(stable), sorted(sizes, reverse=True),
                                    sum(1 for key in stable if moved_middle[key])))
    return strata
