"""Command-line interface: classify | index | ep | character | selfcheck.

Input is one JSON document (``--input FILE`` or stdin) of the form::

    {"pair": {"family_tag": ..., "root_family": ..., "rank": ..., "compact_roots": [...], "m": ...},
     "params": [{"name": ..., "kind": "complex" | "real" | "index", "lambda": [...], ...}],
     "mode": "ordinary" | "twisted",
     "angles": [...]}

Weights in the output are doubled integers; every document carries
``"denominator": 2``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Sequence

import numpy as np

from .dirac_index import (StandardParamComplex, StandardParamReal, elliptic_character,
                          eta_sign, evaluate_quotient, index_of, orientation_sign,
                          param_infinitesimal_character, vogan_check, d2_eigenvalue)
from .ep import ep_matrix
from .errors import DiracKitError, UsageError
from .lattice import Weight, dominant_rep, weyl_element
from .realform import PairDatum, build_pair, cartan_classes
from .spin_characters import (ORIENTATION, VirtualKModule, decompose_into_ktypes, k_character)
from .twisted_cartan import (sigma_stable_oracle, twisted_cartan_classes_complex,
                             twisted_cartan_classes_gl)

MODES = ("ordinary", "twisted")


# input ----------------------------------------------------------------------

def _weight(v, what: str) -> Weight:
    if not isinstance(v, list):
        raise UsageError(f"{what} must be an array of numbers or 'p/2' strings")
    try:
        return Weight.from_coords(v)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad {what}: {exc}") from None


def _doubled_weight(v, what: str) -> Weight:
    if not isinstance(v, list) or not all(isinstance(x, int) for x in v):
        raise UsageError(f"{what} must be an array of doubled integers")
    return Weight(tuple(v))


def parse_param(d: dict, pair: PairDatum):
    """Turn one params entry into a standard parameter or a virtual K-module."""
    if not isinstance(d, dict):
        raise UsageError("each params entry must be an object")
    kind = d.get("kind", "real")
    name = str(d.get("name", ""))
    eps = d.get("epsilon", 1)
    if kind == "complex":
        if pair.family_tag != "complex":
            raise UsageError("complex parameters need a complex pair")
        lam = _weight(d.get("lambda"), "lambda")
        w = weyl_element(pair.g_datum, d.get("w", "[" + ",".join(str(i + 1) for i in range(lam.rank)) + "]"))
        return StandardParamComplex(lam, w, eps, pair)
    if kind == "real":
        lam = _weight(d.get("lambda"), "lambda")
        classes = cartan_classes(pair)
        k = d.get("cartan_k", 0)
        if not isinstance(k, int) or not 0 <= k < len(classes):
            raise UsageError(f"cartan_k must be an index below {len(classes)}")
        ps = d.get("positive_system")
        w = weyl_element(pair.h_datum, ps) if ps is not None else pair.h_datum.identity()
        return StandardParamReal(pair, classes[k], w, lam, eps, d.get("case_tag", "case1"), name)
    if kind == "index":
        denom = d.get("denominator", 1)
        terms = {}
        for row in d.get("terms", []):
            if not isinstance(row, list) or len(row) != 2 or not isinstance(row[1], int):
                raise UsageError("index terms are [weight, multiplicity] rows")
            if denom == 2:
                tau = _doubled_weight(row[0], "index weight")
            elif denom == 1:
                tau = _weight(row[0], "index weight")
            else:
                raise UsageError("denominator must be 1 or 2")
            terms[tau] = terms.get(tau, 0) + row[1]
        return VirtualKModule.checked(terms, pair.k_datum)
    raise UsageError(f"unknown parameter kind {kind!r}")


def _combination(doc: dict, pair: PairDatum):
    params = doc.get("params")
    if not isinstance(params, list) or not params:
        raise UsageError("params must be a nonempty list")
    return [(d.get("coefficient", 1) if isinstance(d, dict) else 1, parse_param(d, pair)) for d in params]


def _names(doc: dict) -> list[str]:
    return [str(d.get("name") or f"p{i}") for i, d in enumerate(doc["params"])]


def _index_of(x, mode: str) -> VirtualKModule:
    return x if isinstance(x, VirtualKModule) else index_of(x, mode)


# output ---------------------------------------------------------------------

def _rows(v) -> list:
    return [[list(t), m] for t, m in v.rows()]


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [[str(h) for h in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    return "\n".join(lines)


def _fmt_weight(t) -> str:
    return "(" + ", ".join(str(x) for x in t) + ")"


# commands -------------------------------------------------------------------

def _gl_signature(m: int, k: int, images: Sequence[int]) -> tuple[int, int]:
    """Eigenspace dimensions of theta_k composed with a permutation of the outer pairs."""
    perm = list(range(m))
    for i, v in enumerate(images):
        j = abs(v) - 1
        perm[i] = j
        perm[m - 1 - i] = m - 1 - j
    w = np.zeros((m, m))
    for i, j in enumerate(perm):
        w[j, i] = 1
    theta = np.zeros((m, m))
    for i in range(m):
        j = m - 1 - i if (i < k or i >= m - k) else i
        theta[j, i] = -1
    a = theta @ w
    eye = np.eye(m)
    return int(m - np.linalg.matrix_rank(a - eye)), int(m - np.linalg.matrix_rank(a + eye))


def cmd_classify(doc: dict) -> dict:
    pair = build_pair(doc.get("pair", {}))
    rows = []
    if pair.family_tag == "complex":
        for t in twisted_cartan_classes_complex(pair):
            rows.append({"representative": t.representative.one_line(), "size": t.size,
                         "h_w_plus": t.h_w_plus_dim, "h_w_minus": t.h_w_minus_dim, "stratum": 0})
    elif pair.family_tag == "gl_real":
        for stratum in twisted_cartan_classes_gl(pair.m):
            for rep, size in stratum.classes:
                plus, minus = _gl_signature(pair.m, stratum.cartan_index_k, rep.images)
                rows.append({"representative": rep.one_line(), "size": size,
                             "h_w_plus": plus, "h_w_minus": minus,
                             "stratum": stratum.cartan_index_k})
    else:
        for c in cartan_classes(pair):
            rows.append({"representative": "[" + ",".join(str(i + 1) for i in range(pair.h_rank)) + "]",
                         "size": 1, "h_w_plus": c.t_dim, "h_w_minus": c.a_dim,
                         "stratum": c.index_k, "cayley_roots": [list(b.twice) for b in c.cayley_roots]})
    return {"command": "classify", "pair": pair.label, "rows": rows}


def cmd_index(doc: dict, mode: str) -> dict:
    pair = build_pair(doc.get("pair", {}))
    combo = _combination(doc, pair)
    params = [p for _, p in combo if not isinstance(p, VirtualKModule)]
    chis = {param_infinitesimal_character(p) for p in params}
    if len(chis) > 1:
        raise UsageError("params mix infinitesimal characters")
    total = None
    for c, p in combo:
        term = c * _index_of(p, mode)
        total = term if total is None else total + term
    meta: dict[str, Any] = {"orientation": ORIENTATION, "mode": mode}
    if chis:
        chi = chis.pop()
        report = vogan_check(total, chi, pair)
        meta["infinitesimal_character"] = list(chi.value.twice)
        meta["vogan_check"] = report.ok
        meta["d2_zero"] = all(d2_eigenvalue(t, chi, pair) == 0 for t in total.terms)
    reals = [p for p in params if isinstance(p, StandardParamReal) and p.theta_stable]
    if reals:
        meta["eta"] = [eta_sign(p) for p in reals]
        meta["spin_orientation_sign"] = [orientation_sign(p) for p in reals]
    return {"command": "index", "pair": pair.label, "rows": _rows(total), "metadata": meta}


def cmd_ep(doc: dict, mode: str) -> dict:
    pair = build_pair(doc.get("pair", {}))
    combo = _combination(doc, pair)
    items = []
    for c, p in combo:
        items.append(p if c == 1 else [(c, p)] if not isinstance(p, VirtualKModule) else c * p)
    matrix, notes = ep_matrix(items, mode, pair)
    return {"command": "ep", "pair": pair.label, "mode": mode, "labels": _names(doc),
            "matrix": matrix, "footnotes": notes}


def cmd_character(doc: dict, mode: str, angles: Sequence[float] | None) -> dict:
    pair = build_pair(doc.get("pair", {}))
    combo = _combination(doc, pair)
    total = None
    for c, p in combo:
        term = c * _index_of(p, mode)
        total = term if total is None else total + term
    num, den = elliptic_character(total, pair, mode)
    out = {"command": "character", "pair": pair.label, "mode": mode,
           "numerator": _rows(num), "denominator_poly": _rows(den)}
    if angles is not None:
        val = evaluate_quotient(num, den, angles)
        out["angles"] = list(angles)
        out["value"] = [val.real, val.imag]
    return out


def cmd_selfcheck() -> dict:
    checks = []
    for m in range(2, 7):
        oracle = [(o.cartan_index_k, o.classes) for o in sigma_stable_oracle(m)]
        table = [(s.cartan_index_k, len(s.classes)) for s in twisted_cartan_classes_gl(m)]
        checks.append((f"gl oracle m={m}", oracle == table))
    pairs = [
        build_pair({"family_tag": "equal_rank", "root_family": "C", "rank": 2, "compact_roots": [[1, -1]]}),
        build_pair({"family_tag": "complex", "root_family": "A", "rank": 3}),
        build_pair({"family_tag": "equal_rank", "root_family": "A", "rank": 3, "compact_roots": [[1, -1, 0]]}),
    ]
    for pair in pairs:
        ok = True
        k = pair.k_datum
        for x in range(3):
            for y in range(3):
                coords = [x + y, y] + [0] * (k.rank - 2)
                tau = dominant_rep(Weight.from_coords(coords), k).dominant
                ok &= decompose_into_ktypes(k_character(tau, pair), pair) == VirtualKModule.single(tau)
        checks.append((f"round trip {pair.label}", ok))
    from .dirac_index import discrete_series
    from .lattice import enumerate_weyl
    pair = pairs[0]
    ok = True
    for w in enumerate_weyl(pair.g_datum):
        p = discrete_series(pair, w.act(Weight.of(3, 1)))
        v = index_of(p, "ordinary")
        ok &= vogan_check(v, p.infinitesimal_character, pair).ok
    checks.append(("vogan sweep sp(4,R)", ok))
    return {"command": "selfcheck", "checks": [{"name": n, "ok": bool(o)} for n, o in checks],
            "ok": all(o for _, o in checks)}


# driver ---------------------------------------------------------------------

def _render_table(result: dict) -> str:
    cmd = result["command"]
    if cmd == "classify":
        rows = [[r["stratum"], r["representative"], r["size"], r["h_w_plus"], r["h_w_minus"]]
                for r in result["rows"]]
        return _table(["stratum", "representative", "size", "h+", "h-"], rows)
    if cmd == "index":
        body = _table(["2*tau", "mult"], [[_fmt_weight(t), m] for t, m in result["rows"]])
        meta = "\n".join(f"# {k}: {v}" for k, v in sorted(result["metadata"].items()))
        return body + "\n" + meta
    if cmd == "ep":
        labels = result["labels"]
        body = _table([""] + labels, [[lab] + row for lab, row in zip(labels, result["matrix"])])
        return body + "".join(f"\n# {n}" for n in result["footnotes"])
    if cmd == "character":
        out = ["numerator"]
        out.append(_table(["2*mu", "mult"], [[_fmt_weight(t), m] for t, m in result["numerator"]]))
        out.append("denominator")
        out.append(_table(["2*mu", "mult"], [[_fmt_weight(t), m] for t, m in result["denominator_poly"]]))
        if "value" in result:
            out.append(f"value  {result['value'][0]:.12g} {result['value'][1]:+.12g}i")
        return "\n".join(out)
    return _table(["check", "ok"], [[c["name"], c["ok"]] for c in result["checks"]])


def _parse_angles(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad angle list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dirackit", description="Exact Dirac index computations "
                                 "for classical real groups")
    ap.add_argument("command", choices=["classify", "index", "ep", "character", "selfcheck"])
    ap.add_argument("--input", default="-", help="JSON document (default: stdin)")
    ap.add_argument("--table", action="store_true", help="aligned plain-text output")
    ap.add_argument("--mode", choices=MODES, help="index flavour (overrides the document)")
    ap.add_argument("--angles", help="comma-separated torus angles for character evaluation")
    return ap


def run(argv: Sequence[str] | None = None, stdin=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "selfcheck":
            result = cmd_selfcheck()
        else:
            if args.input == "-":
                text = (stdin or sys.stdin).read()
            else:
                with open(args.input) as fh:
                    text = fh.read()
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as exc:
                raise UsageError(f"input is not valid JSON: {exc}") from None
            if not isinstance(doc, dict):
                raise UsageError("input must be a JSON object")
            mode = args.mode or doc.get("mode", "ordinary")
            if mode not in MODES:
                raise UsageError(f"mode must be one of {MODES}")
            if args.command == "classify":
                result = cmd_classify(doc)
            elif args.command == "index":
                result = cmd_index(doc, mode)
            elif args.command == "ep":
                result = cmd_ep(doc, mode)
            else:
                angles = _parse_angles(args.angles) if args.angles else doc.get("angles")
                if angles is not None and not all(isinstance(a, (int, float)) and math.isfinite(a)
                                                  for a in angles):
                    raise UsageError("angles must be finite numbers")
                result = cmd_character(doc, mode, angles)
    except DiracKitError as exc:
        return exc.exit_code, f"error: {exc}"
    except OSError as exc:
        return 2, f"error: {exc}"
    result["denominator"] = 2
    text = _render_table(result) if args.table else json.dumps(result, sort_keys=True)
    code = 1 if args.command == "selfcheck" and not result["ok"] else 0
    return code, text


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code in (0, 1) else sys.stderr
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
