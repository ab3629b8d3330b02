import functools

import pytest

import dirackit.dirac_index as di
from dirackit.realform import build_pair


def sl2r():
    return build_pair({"family_tag": "equal_rank", "root_family": "C", "rank": 1})


def sp4r():
    return build_pair({"family_tag": "equal_rank", "root_family": "C", "rank": 2,
                       "compact_roots": [[1, -1]]})


def su21():
    return build_pair({"family_tag": "equal_rank", "root_family": "A", "rank": 3,
                       "compact_roots": [[1, -1, 0]]})


def complex_sl2():
    return build_pair({"family_tag": "complex", "root_family": "C", "rank": 1})


def complex_sl3():
    return build_pair({"family_tag": "complex", "root_family": "A", "rank": 3})


@pytest.fixture
def pair_sl2r():
    return sl2r()


@pytest.fixture
def pair_sp4r():
    return sp4r()


@pytest.fixture
def pair_csl2():
    return complex_sl2()


@pytest.fixture
def pair_csl3():
    return complex_sl3()


# every index computed during the run is checked against the Vogan constraint
# and the D^2 eigenvalue as soon as it is produced

class IndexLedger:
    def __init__(self):
        self.checked = 0
        self.constituents = 0
        self.violations = []

    def record(self, p, v, pair=None):
        pair = pair or p.pair
        chi = di.InfinitesimalChar.of(p.lam.concat(p.w.act(p.lam)), pair) \
            if isinstance(p, di.StandardParamComplex) else p.infinitesimal_character
        self.checked += 1
        self.constituents += len(v.terms)
        report = di.vogan_check(v, chi, pair)
        bad = list(report.violations)
        bad += [t for t in v.terms if di.d2_eigenvalue(t, chi, pair) != 0]
        if bad:
            self.violations.append((p, bad))
            raise AssertionError(f"index constituents {bad} of {p} fail the Vogan/D^2 check")


INDEX_LEDGER = IndexLedger()


def _recorded(fn):
    @functools.wraps(fn)
    def wrapper(p, *args, **kwargs):
        v = fn(p, *args, **kwargs)
        INDEX_LEDGER.record(p, v, args[0] if args else kwargs.get("pair"))
        return v
    return wrapper


for _name in ("index_standard_real", "twisted_index_standard_real", "index_standard_complex"):
    setattr(di, _name, _recorded(getattr(di, _name)))


# acceptance criteria report ------------------------------------------------

CRITERIA: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        CRITERIA.setdefault(marker.args[0], []).append(rep.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        tr.write_line(f"criterion {n}: {'PASS' if all(CRITERIA[n]) else 'FAIL'}")
    ok = not INDEX_LEDGER.violations
    tr.write_line(f"criterion 5 (whole run): {'PASS' if ok else 'FAIL'} "
                  f"({INDEX_LEDGER.checked} indices, {INDEX_LEDGER.constituents} constituents checked)")
