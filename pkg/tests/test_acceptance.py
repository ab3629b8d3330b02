"""Acceptance criteria 1-9.  Each test carries ``@pytest.mark.criterion(n)``;
the session summary prints one PASS/FAIL line per criterion."""

import io
import json
import random
import time
from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from conftest import INDEX_LEDGER, complex_sl2, complex_sl3, sl2r, sp4r, su21
from oracles import brute_involution_classes, expand_spin, swap_signature
from dirackit.cli import run
from dirackit.dirac_index import (StandardParamComplex, StandardParamReal, complex_to_real,
                                  d2_eigenvalue, discrete_series, index_of, index_standard_complex,
                                  index_standard_real, param_from_harish_chandra,
                                  twisted_index_standard_real, vogan_check)
from dirackit.ep import (alternating_sum, ep_pair, ep_twisted, ext_std_vs_findim,
                         findim_as_standards, hom_dim, ht_ep_vanishing, twisted_constant)
from dirackit.lattice import Weight, dominant_rep, enumerate_weyl
from dirackit.realform import build_pair, cartan_classes
from dirackit.spin_characters import (CharacterPoly, VirtualKModule, decompose_into_ktypes,
                                      k_character, spin_rho_multiplicity, tensor_decompose,
                                      weyl_dimension)
from dirackit.twisted_cartan import (fixed_signature, involution_partition, sigma_stable_oracle,
                                     twisted_cartan_classes_complex, twisted_cartan_classes_gl)

E = Weight.of
SEED = 20240917


def report(n, ok, detail=""):
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


def su22():
    return build_pair({"family_tag": "equal_rank", "root_family": "A", "rank": 4,
                       "compact_roots": [[1, -1, 0, 0], [0, 0, 1, -1]]})


def w1_reps(pair, hc):
    seen, out = set(), []
    for w in enumerate_weyl(pair.g_datum):
        p = discrete_series(pair, w.act(hc))
        v = index_standard_real(p)
        if v not in seen:
            seen.add(v)
            out.append(p)
    return out


def _real_descriptor(p):
    return {"name": p.name or str(list(p.harish_chandra.twice)), "kind": "real",
            "lambda": [f"{t}/2" for t in p.lam.twice],
            "cartan_k": p.cartan.index_k, "positive_system": p.positive_system.one_line()}


# 1 ---------------------------------------------------------------------------------

COMPLEX_TYPES = {"A1": ("A", 2), "A2": ("A", 3), "B2": ("B", 2), "C2": ("C", 2), "A3": ("A", 4)}


@pytest.mark.criterion(1)
@pytest.mark.parametrize("name", list(COMPLEX_TYPES))
def test_criterion_1_twisted_cartan_classes(name):
    family, rank = COMPLEX_TYPES[name]
    start = time.perf_counter()
    pair = build_pair({"family_tag": "complex", "root_family": family, "rank": rank})
    table = twisted_cartan_classes_complex(pair)
    brute = brute_involution_classes(family, rank)
    assert len(table) == len(brute)
    centre = pair.g_datum.rank - pair.g_datum.semisimple_rank
    brute_rows = Counter()
    for members in brute:
        sigs = {swap_signature(w, centre) for w in members}
        assert len(sigs) == 1
        brute_rows[(len(members), sigs.pop())] += 1
    table_rows = Counter((t.size, (t.h_w_plus_dim, t.h_w_minus_dim)) for t in table)
    assert table_rows == brute_rows
    for members in involution_partition(pair.g_datum):
        assert len({fixed_signature(pair, w) for w in members}) == 1
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    report(1, True, f"{name}: {len(table)} classes in {elapsed:.3f}s")


# 2 ---------------------------------------------------------------------------------

@pytest.mark.criterion(2)
@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_criterion_2_gl_oracle(m):
    start = time.perf_counter()
    oracle = [(s.cartan_index_k, s.classes) for s in sigma_stable_oracle(m)]
    table = [(s.cartan_index_k, len(s.classes)) for s in twisted_cartan_classes_gl(m)]
    elapsed = time.perf_counter() - start
    assert oracle == table
    if m == 4:
        assert sum(c for _, c in table) == 4
    assert elapsed < 30
    report(2, True, f"m={m}: strata {table} in {elapsed:.2f}s")


# 3 ---------------------------------------------------------------------------------

@pytest.mark.criterion(3)
@pytest.mark.parametrize("make,hc", [(sl2r, (3,)), (sp4r, (3, 1))], ids=["sl2R", "sp4R"])
def test_criterion_3_ds_orthogonality(make, hc):
    pair = make()
    reps = w1_reps(pair, E(*hc))
    assert len(reps) == len(enumerate_weyl(pair.g_datum)) // len(enumerate_weyl(pair.k_datum))
    descriptor = {"family_tag": "equal_rank", "root_family": pair.g_datum.family,
                  "rank": pair.g_datum.rank,
                  "compact_roots": [[int(c) for c in b.coords] for b in sorted(pair.compact_roots)
                                    if b.twice > tuple(0 for _ in b.twice)]}
    doc = {"pair": descriptor, "params": [_real_descriptor(p) for p in reps]}
    code, text = run(["ep"], stdin=io.StringIO(json.dumps(doc)))
    assert code == 0, text
    matrix = json.loads(text)["matrix"]
    n = len(reps)
    assert matrix == [[int(i == j) for j in range(n)] for i in range(n)]
    report(3, True, f"{pair.label}: {n}x{n} identity")


# 4 ---------------------------------------------------------------------------------

def _vanishing_params(rng, count):
    """(mode, param) with b not theta-stable, or tagged case2 / case3."""
    equal_rank = [sl2r(), sp4r(), su21(), su22()]
    complexes = [complex_sl2(), complex_sl3()]
    out = []
    while len(out) < count:
        kind = rng.randrange(4)
        if kind <= 1:
            pair = rng.choice(equal_rank)
            classes = cartan_classes(pair)
            if len(classes) < 2:
                continue
            k = rng.randrange(1, len(classes))
            hc = E(*[rng.randint(-4, 4) for _ in range(pair.h_rank)])
            if not pair.h_datum.is_regular(hc):
                continue
            w = pair.h_datum.inverse(dominant_rep(hc, pair.h_datum).w)
            p = param_from_harish_chandra(pair, k, w, hc, case_tag="case2")
            if p.theta_stable and p.theta_fixed_lambda:
                continue
            mode = "ordinary" if kind == 0 and not p.theta_stable else "twisted"
            out.append((mode, p))
        elif kind == 2:
            pair = rng.choice(complexes)
            g = pair.g_datum
            invols = [w for w in enumerate_weyl(g) if w.is_involution() and not w.is_identity()]
            lam = E(*[Fraction(rng.randint(-6, 6), 2) for _ in range(g.rank)])
            if not g.is_regular(2 * lam):
                continue
            p = StandardParamComplex(lam, rng.choice(invols), rng.choice((1, -1)), pair)
            out.append(("twisted", p if rng.random() < 0.5 else complex_to_real(p)))
        else:
            # theta-stable b on the fundamental Cartan but theta lambda != lambda
            pair = rng.choice(complexes)
            g = pair.g_datum
            a = dominant_rep(E(*[rng.randint(-3, 3) for _ in range(g.rank)]), g).dominant
            b = dominant_rep(E(*[rng.randint(-3, 3) for _ in range(g.rank)]), g).dominant
            if a == b:
                continue
            c = cartan_classes(pair)[0]
            p = StandardParamReal(pair, c, pair.h_datum.identity(), a.concat(b), 1, "case2")
            out.append(("twisted", p))
    return out


@pytest.mark.criterion(4)
def test_criterion_4_standard_vanishing():
    rng = random.Random(SEED)
    params = _vanishing_params(rng, 200)
    assert len(params) == 200
    tags = Counter()
    for mode, p in params:
        v = index_of(p, mode)
        assert not v.terms, (mode, p)
        if isinstance(p, StandardParamComplex):
            tags[(mode, "complex", "w != e")] += 1
        else:
            tags[(mode, p.case_tag, "stable" if p.theta_stable else "unstable")] += 1
    assert sum(tags.values()) == 200
    # every family of vanishing parameter is represented
    kinds = set(tags)
    assert ("ordinary", "case2", "unstable") in kinds
    assert ("twisted", "case2", "stable") in kinds
    assert ("twisted", "case3", "unstable") in kinds
    assert ("twisted", "complex", "w != e") in kinds
    report(4, True, "200 zero indices: " + ", ".join(f"{'/'.join(k)}={v}" for k, v in sorted(tags.items())))


# 5 ---------------------------------------------------------------------------------

@pytest.mark.criterion(5)
def test_criterion_5_vogan_and_d2():
    # sweep discrete series and complex w = e parameters; the session-wide
    # ledger checks every index produced by any test as it is computed
    before = INDEX_LEDGER.checked
    count = 0
    for make in (sl2r, sp4r, su21, su22):
        pair = make()
        for coords in product(range(-3, 4), repeat=pair.h_rank):
            hc = E(*coords)
            if not pair.h_datum.is_regular(hc):
                continue
            p = discrete_series(pair, hc)
            for v in (index_standard_real(p), twisted_index_standard_real(p)):
                assert vogan_check(v, p.infinitesimal_character, pair).ok
                assert all(d2_eigenvalue(t, p.infinitesimal_character, pair) == 0 for t in v.terms)
                count += len(v.terms)
    for make in (complex_sl2, complex_sl3):
        pair = make()
        g = pair.g_datum
        for coords in product(range(-2, 3), repeat=g.rank):
            lam = E(*[Fraction(c, 2) for c in coords])
            if not g.is_regular(2 * lam):
                continue
            p = StandardParamComplex(lam, g.identity(), 1, pair)
            v = index_standard_complex(p)
            q = complex_to_real(p)
            assert twisted_index_standard_real(q) == v
            count += len(v.terms)
    assert INDEX_LEDGER.checked > before
    assert not INDEX_LEDGER.violations
    report(5, True, f"{count} constituents here, {INDEX_LEDGER.checked} indices checked so far")


# 6 ---------------------------------------------------------------------------------

ROUND_TRIP_PAIRS = {
    "sl2R": sl2r, "sp4R": sp4r, "su21": su21, "csl2": complex_sl2, "csl3": complex_sl3,
    "csp4": lambda: build_pair({"family_tag": "complex", "root_family": "C", "rank": 2}),
    "cso5": lambda: build_pair({"family_tag": "complex", "root_family": "B", "rank": 2}),
    "cso6": lambda: build_pair({"family_tag": "complex", "root_family": "D", "rank": 3}),
    "so32": lambda: build_pair({"family_tag": "equal_rank", "root_family": "B", "rank": 2,
                                "compact_roots": [[1, 0]]}),
}


def _random_dominant(rng, pair, bound):
    coords = [rng.randint(-bound, bound) for _ in range(pair.t_rank)]
    return dominant_rep(E(*coords), pair.k_datum).dominant


@pytest.mark.criterion(6)
@pytest.mark.parametrize("name", list(ROUND_TRIP_PAIRS))
def test_criterion_6_round_trip(name):
    pair = ROUND_TRIP_PAIRS[name]()
    assert pair.t_rank <= 3
    rng = random.Random(f"{SEED}-{name}")
    for _ in range(100):
        tau = _random_dominant(rng, pair, 5)
        assert decompose_into_ktypes(k_character(tau, pair), pair) == VirtualKModule.single(tau)
    report(6, True, f"{name}: 100 round trips")


@pytest.mark.criterion(6)
def test_criterion_6_tensor_dimensions():
    rng = random.Random(SEED)
    names = list(ROUND_TRIP_PAIRS)
    pairs = {n: ROUND_TRIP_PAIRS[n]() for n in names}
    for _ in range(50):
        pair = pairs[rng.choice(names)]
        mu = _random_dominant(rng, pair, 3)
        nu = _random_dominant(rng, pair, 3)
        v = tensor_decompose(mu, nu, pair)
        total = sum(m * weyl_dimension(t, pair) for t, m in v.terms.items())
        assert total == weyl_dimension(mu, pair) * weyl_dimension(nu, pair)
        assert total == k_character(mu, pair).dimension() * k_character(nu, pair).dimension()
    report(6, True, "50 tensor products")


# 7 ---------------------------------------------------------------------------------

@pytest.mark.criterion(7)
@pytest.mark.parametrize("make", [complex_sl2, complex_sl3], ids=["csl2", "csl3"])
def test_criterion_7_complex_index(make):
    pair = make()
    g = pair.g_datum
    # r by character division: the spin character is r copies of E_rho
    spin, _ = expand_spin(pair)
    e_rho = k_character(g.rho, pair)
    r = spin.dimension() // e_rho.dimension()
    assert spin == CharacterPoly({mu: r * m for mu, m in e_rho.terms.items()}, pair.t_rank)
    assert spin_rho_multiplicity(pair) == r
    c = 2 if pair.dim_s % 2 else 1
    assert twisted_constant(pair) == c
    invols = [w for w in enumerate_weyl(g) if w.is_involution()]
    checked = 0
    for coords in product(range(-3, 4), repeat=g.rank):
        lam = E(*[Fraction(x, 2) for x in coords])
        if not g.is_regular(2 * lam):
            continue
        # X(lambda, lambda) only depends on the W-orbit of lambda
        top = dominant_rep(lam, g).dominant
        for eps in (1, -1):
            for w in invols:
                p = StandardParamComplex(lam, w, eps, pair)
                v = index_standard_complex(p)
                if w.is_identity():
                    assert v == VirtualKModule.single(2 * top - g.rho, r * eps, pair.k_datum)
                    assert ep_twisted(p, p) == c * r * r
                else:
                    assert not v.terms
                checked += 1
    report(7, True, f"{pair.label}: r={r}, c={c}, {checked} parameters")


# 8 ---------------------------------------------------------------------------------

@pytest.mark.criterion(8)
def test_criterion_8_bilinearity():
    rng = random.Random(SEED)
    pools = [w1_reps(sp4r(), E(3, 1)), w1_reps(su21(), E(2, 0, -1)), w1_reps(sl2r(), E(2))]
    pools = [pool + [param_from_harish_chandra(pool[0].pair, 1, None, pool[0].harish_chandra,
                                               case_tag="case2")]
             for pool in pools]

    def combo(pool):
        return [(rng.randint(-3, 3), rng.choice(pool)) for _ in range(rng.randint(1, 4))]

    for _ in range(50):
        pool = rng.choice(pools)
        x, y, z = combo(pool), combo(pool), combo(pool)
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        assert ep_pair(x, y) == ep_pair(y, x)
        lhs = ep_pair([(a * c, p) for c, p in x] + [(b * c, p) for c, p in z], y)
        assert lhs == a * ep_pair(x, y) + b * ep_pair(z, y)
        ix = sum((c * index_of(p, "ordinary") for c, p in x),
                 VirtualKModule.zero(pool[0].pair.t_rank, pool[0].pair.k_datum))
        iy = sum((c * index_of(p, "ordinary") for c, p in y),
                 VirtualKModule.zero(pool[0].pair.t_rank, pool[0].pair.k_datum))
        assert ep_pair(x, y) == hom_dim(ix, iy)
    for _ in range(50):
        a_dim = rng.randint(1, 10)
        v = CharacterPoly({E(rng.randint(-3, 3)): rng.randint(-3, 3) for _ in range(3)})
        w = CharacterPoly({E(rng.randint(-3, 3)): rng.randint(-3, 3) for _ in range(3)})
        assert ht_ep_vanishing(a_dim, v, w) == 0
    report(8, True, "50 combinations, 50 (h,T) inputs")


# 9 ---------------------------------------------------------------------------------

NINE = [(y, kind) for y in range(5) for kind in ("top", "bottom", "above", "below")]


@pytest.mark.criterion(9)
def test_criterion_9_finite_dimensional_ext():
    pair = sl2r()
    values = []
    for y, kind in NINE:
        hc = {"top": y + 1, "bottom": -(y + 1), "above": y + 2, "below": -(y + 3)}[kind]
        p = discrete_series(pair, E(hc))
        ext = ext_std_vs_findim(p, E(y))
        lhs = alternating_sum(ext)
        combo = findim_as_standards(pair, E(y))
        iy = sum((c * index_of(q, "ordinary") for c, q in combo), VirtualKModule.zero(1, pair.k_datum))
        assert lhs == hom_dim(index_of(p, "ordinary"), iy) == ep_pair(p, combo)
        values.append(lhs)
    assert len(values) == 20
    report(9, True, f"20 pairs, alternating sums {sorted(Counter(values).items())}")
