"""Command-line interface: ``artinkms <command> -m MONOID [options]``.

MONOID is a presentation file or the name of a bundled fixture (b3, b4,
raam_path3, ...).  Exit codes: 0 success, 1 negative verdict,
2 inconclusive, 3 input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import kms
from .cliques import NonUniformWeights, cliques_of, clique_polynomial, pinf
from .lambda_tree import build_tree, is_leaf, normalize, remove_dominated, step, z_poly
from .presentation import (
    PresentationError,
    classify,
    fixture_names,
    load_fixture,
    load_presentation,
)
from .reversing import LcmInconclusive, LcmTag, compare_with_oracle, lcm, oracle_lcm
from .set_algebra import (
    EMPTY,
    Cell,
    CellSyntaxError,
    Inconclusive,
    algebra_closure_check,
    complement_principal,
    intersect_cells,
    make_cell,
    member,
    omega_indicator,
    parse_word_set,
    rewrite_blockers,
    verify_equal,
)
from .words import INF, ArtinMonoid, CapExceeded, WordSyntaxError

EXIT_OK, EXIT_NEGATIVE, EXIT_INCONCLUSIVE, EXIT_INPUT = 0, 1, 2, 3


@dataclass
class Report:
    payload: dict
    code: int = EXIT_OK
    text: str = ""
    rows: list[dict] = field(default_factory=list)
    raw_csv: str | None = None


class InputError(ValueError):
    pass


def load_monoid(source: str) -> ArtinMonoid:
    path = Path(source)
    if path.is_file():
        return ArtinMonoid(load_presentation(path))
    if source in fixture_names():
        return ArtinMonoid(load_fixture(source))
    raise InputError(f"{source!r} is neither a file nor a bundled fixture ({', '.join(fixture_names())})")


def parse_list(M: ArtinMonoid, text: str):
    out = []
    for part in text.split(","):
        part = part.strip()
        out.append(INF if part.lower() in ("inf", "∞") else M.parse_word(part))
    return normalize(M, out)


def fmt_word(M: ArtinMonoid, w) -> str:
    if w is INF:
        return "inf"
    return M.format_word(w) or "e"


def fmt_list(M: ArtinMonoid, lam) -> list[str]:
    return [fmt_word(M, x) for x in lam]


def poly_payload(p) -> dict:
    return {"coefficients": list(p.coeffs), "polynomial": str(p)}


# -- word commands -------------------------------------------------------------


def cmd_lcm(M, args) -> Report:
    p, q = M.parse_word(args.w1), M.parse_word(args.w2)
    r = lcm(M, p, q, args.step_cap)
    payload = {"tag": r.tag.value, "steps_used": r.steps_used}
    if r.found:
        payload.update(lcm=fmt_word(M, r.lcm), length=len(r.lcm),
                       comp_left=fmt_word(M, r.comp_left), comp_right=fmt_word(M, r.comp_right))
    if args.oracle is not None:
        o = oracle_lcm(M, p, q, args.oracle)
        payload["oracle"] = {"tag": o.tag.value, "lcm": fmt_word(M, o.lcm) if o.found else None}
    code = EXIT_INCONCLUSIVE if r.inconclusive else EXIT_OK
    text = f"{r.tag.value}" + (f": {payload['lcm']}" if r.found else "")
    row = {k: v for k, v in payload.items() if k != "oracle"}
    return Report(payload, code, text, [row])


def cmd_equal(M, args) -> Report:
    u, v = M.parse_word(args.w1), M.parse_word(args.w2)
    eq = M.equal(u, v)
    return Report({"equal": eq}, EXIT_OK if eq else EXIT_NEGATIVE, str(eq).lower())


def cmd_divides(M, args) -> Report:
    p, q = M.parse_word(args.w1), M.parse_word(args.w2)
    rest = M.left_quotient(p, q)
    payload = {"divides": rest is not None, "quotient": None if rest is None else fmt_word(M, rest)}
    return Report(payload, EXIT_OK if rest is not None else EXIT_NEGATIVE, str(rest is not None).lower())


def cmd_ball(M, args) -> Report:
    levels = M.spheres(args.radius)
    payload = {"radius": args.radius, "counts": [len(x) for x in levels]}
    if not args.counts_only:
        payload["elements"] = [fmt_word(M, w) for level in levels for w in level]
    rows = [{"length": k, "count": len(x)} for k, x in enumerate(levels)]
    return Report(payload, text=" ".join(map(str, payload["counts"])), rows=rows)


# -- cliques -------------------------------------------------------------------


def cmd_cliques(M, args) -> Report:
    cl = cliques_of(M)
    items = [{"members": [fmt_word(M, w) for w in c.members], "lcm": fmt_word(M, c.lcm),
              "lcm_length": c.lcm_length} for c in cl]
    c = classify(M.presentation)
    payload = {"cliques": items, "finite_type": c.finite_type, "right_angled": c.right_angled,
               "components": [{"generators": [M.presentation.generators[i] for i in comp.generators],
                               "type": comp.type} for comp in c.components]}
    text = "\n".join(f"{{{', '.join(x['members'])}}} -> {x['lcm']}" for x in items)
    rows = [{"members": " ".join(x["members"]), "lcm": x["lcm"], "lcm_length": x["lcm_length"]} for x in items]
    return Report(payload, text=text, rows=rows)


def cmd_clique_poly(M, args) -> Report:
    h = clique_polynomial(M)
    return Report(poly_payload(h), text=str(h),
                  rows=[{"degree": d, "coefficient": c} for d, c in enumerate(h.coeffs)])


def cmd_pinf(M, args) -> Report:
    ps = pinf(M, args.max_iter)
    payload = {"elements": [fmt_word(M, w) for w in ps.elements], "saturated": ps.saturated,
               "iterations_used": ps.iterations_used, "size": len(ps.elements)}
    return Report(payload, EXIT_OK if ps.saturated else EXIT_INCONCLUSIVE,
                  ", ".join(payload["elements"]), rows=[{"element": e} for e in payload["elements"]])


# -- lists -----------------------------------------------------------------------


def cmd_tree(M, args) -> Report:
    lam = parse_list(M, args.list)
    rep = build_tree(M, lam, args.max_depth, args.max_nodes)
    payload = {"list": fmt_list(M, lam)} | rep.to_dict()
    if not is_leaf(lam):
        l1, l2, p = step(M, lam)
        payload["step"] = {"atom": fmt_word(M, p), "lambda1": fmt_list(M, l1), "lambda2": fmt_list(M, l2)}
    code = {True: EXIT_OK, False: EXIT_NEGATIVE, None: EXIT_INCONCLUSIVE}[rep.finite]
    text = f"finite={payload['finite']} nodes={rep.node_count} depth={rep.max_depth} leaves={rep.leaf_count}"
    return Report(payload, code, text, [{k: v for k, v in rep.to_dict().items()}])


def cmd_zpoly(M, args) -> Report:
    lam = parse_list(M, args.list)
    z = z_poly(M, lam)
    payload = {"list": fmt_list(M, lam)} | poly_payload(z)
    reduced = remove_dominated(M, lam)
    payload["dominated_removed"] = fmt_list(M, reduced)
    return Report(payload, text=str(z), rows=[{"degree": d, "coefficient": c} for d, c in enumerate(z.coeffs)])


# -- KMS ---------------------------------------------------------------------------


def cmd_kms_temps(M, args) -> Report:
    space = kms.temperature_space(M, args.family, force=args.force, allow_large=args.allow_large)
    payload = space.to_dict(M)
    if args.sample_grid:
        return Report(payload, raw_csv=kms.sample_grid(M, space.polynomials, args.sample_grid),
                      text=space.describe())
    return Report(payload, text=space.describe(), rows=space.csv_rows())


def cmd_kms_roots(M, args) -> Report:
    elements = kms.family_elements(M, args.family, force=args.force, allow_large=args.allow_large)
    members = kms.family_polynomials(M, elements)
    rows = kms.root_rows(members, M)
    return Report({"roots": rows}, text="\n".join(f"{r['J']}: t≈{r['t_approx']}" for r in rows), rows=rows)


def _parse_t(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad rational {text!r}") from None


def cmd_kms_eval(M, args) -> Report:
    Js = [parse_word_set(M, j) for j in args.J] if args.J else None
    if args.t is not None:
        rep = kms.evaluate_positivity(M, t=_parse_t(args.t), family=args.family, Js=Js, force=True)
    elif args.beta is not None:
        rep = kms.evaluate_positivity(M, beta=args.beta, family=args.family, Js=Js, force=True)
    else:
        raise InputError("kms eval needs --t or --beta")
    payload = rep.to_dict(M)
    text = "\n".join(f"{{{', '.join(v['J'])}}}: {v['value']}" for v in payload["values"])
    text += f"\nverdict: {'positive' if rep.verdict else 'fails'}"
    rows = [{"J": " ".join(v["J"]), "value": v["value"], "approx": v["approx"]} for v in payload["values"]]
    return Report(payload, EXIT_OK if rep.verdict else EXIT_NEGATIVE, text, rows)


def cmd_kms_critical(M, args) -> Report:
    try:
        beta, root = kms.critical_beta(M)
    except kms.NoPositiveRoot as exc:
        return Report({"critical_beta": "Inconclusive", "reason": str(exc)}, EXIT_INCONCLUSIVE, str(exc))
    payload = {"critical_beta": float(f"{beta:.12g}"), "t": root.to_dict()}
    return Report(payload, text=f"{beta:.12g}", rows=[{"beta": payload["critical_beta"],
                                                       "t_approx": root.to_dict()["approx"]}])


def cmd_kms_gaps(M, args) -> Report:
    rep = kms.detect_gap(M, args.family, force=args.force, allow_large=args.allow_large)
    payload = rep.to_dict(M)
    lines = [f"space: {payload['space']}", f"has_gap: {str(rep.has_gap).lower()}"]
    rows = []
    for g in payload["gaps"]:
        lo, hi = g["beta_interval"]
        w = g["witness"]
        lines.append(f"gap ({lo}, {hi}) witness {{{', '.join(w['J'])}}} at t={w['t']}: g={w['g_approx']:.6g}")
        rows.append({"beta_lo": lo, "beta_hi": hi, "J": " ".join(w["J"]), "t": w["t"], "g": w["g"]})
    return Report(payload, text="\n".join(lines), rows=rows)


# -- sets --------------------------------------------------------------------------


def cmd_sets_rewrite(M, args) -> Report:
    K = parse_word_set(M, args.K)
    prefix = M.parse_word(args.prefix)
    res = rewrite_blockers(M, K, args.target, prefix=prefix, depth_cap=args.max_depth)
    if isinstance(res, Inconclusive):
        return Report({"result": "Inconclusive", "reason": res.reason}, EXIT_INCONCLUSIVE, res.reason)
    cells = [c.to_dict(M) for c in res.cells]
    payload = {"cells": cells, "target": args.target}
    code = EXIT_OK
    if args.verify is not None:
        check = verify_equal(M, res, omega_indicator(M, prefix, K), args.verify)
        payload["verified"] = {"equal": check.equal, "checked": check.checked,
                               "counterexample": None if check.counterexample is None
                               else fmt_word(M, check.counterexample)}
        code = EXIT_OK if check else EXIT_NEGATIVE
    text = "\n".join(c.format(M) for c in res.cells) or "(empty)"
    rows = [{"prefix": c["prefix"], "blockers": " ".join(c["blockers"])} for c in cells]
    return Report(payload, code, text, rows)


def cmd_sets_check(M, args) -> Report:
    rep = algebra_closure_check(M, args.samples, args.ball, args.seed)
    samples = [{"s": fmt_word(M, x.s), "q": fmt_word(M, x.q), "K": [fmt_word(M, k) for k in x.K],
                "outcome": x.outcome, "cells": None if x.cells is None else len(x.cells)} for x in rep.samples]
    counts = rep.counts()
    code = EXIT_NEGATIVE if counts["counterexample"] else EXIT_INCONCLUSIVE if counts["inconclusive"] else EXIT_OK
    payload = {"counts": counts, "samples": samples}
    text = " ".join(f"{k}={v}" for k, v in counts.items())
    rows = [x | {"K": " ".join(x["K"])} for x in samples]
    return Report(payload, code, text, rows)


# -- oracle cross-checks ---------------------------------------------------------------


def run_verify(M: ArtinMonoid, radius: int) -> dict:
    """Oracle cross-checks on the ball: lcm vs brute force, complements and intersections."""
    ball = M.ball(radius)
    tally = {"agree": 0, "disagree": 0, "skip": 0}
    first_bad = None
    for p in ball:
        for q in ball:
            verdict = compare_with_oracle(M, p, q, 2 * radius, 20_000)
            tally[verdict] += 1
            if verdict == "disagree" and first_bad is None:
                first_bad = [fmt_word(M, p), fmt_word(M, q)]
    small = M.ball(min(radius, 2))
    comp_ok = True
    for p in small[1:]:
        partition = complement_principal(M, p).cells + [Cell(p)]
        for w in ball:
            if sum(member(M, w, c) for c in partition) != 1:
                comp_ok = False
    inter_ok = True
    for p in small:
        for q in small:
            for a in M.atoms:
                c1, c2 = make_cell(M, p, [a]), make_cell(M, q, [])
                meet = intersect_cells(M, c1, c2)
                if isinstance(meet, Inconclusive):
                    continue
                for w in ball:
                    lhs = member(M, w, c1) and member(M, w, c2)
                    rhs = meet is not EMPTY and member(M, w, meet)
                    inter_ok &= lhs == rhs
    disagree = tally["disagree"]
    return {"radius": radius, "lcm_agree": tally["agree"], "lcm_disagree": disagree,
            "lcm_skipped": tally["skip"], "first_disagreement": first_bad,
            "complement_partition": comp_ok, "intersection_semantics": inter_ok,
            "ok": disagree == 0 and comp_ok and inter_ok}


def cmd_verify(M, args) -> Report:
    payload = run_verify(M, args.ball)
    text = " ".join(f"{k}={v}" for k, v in payload.items())
    return Report(payload, EXIT_OK if payload["ok"] else EXIT_NEGATIVE, text, [payload])


def selftest() -> dict:
    b3, b4 = ArtinMonoid(load_fixture("b3")), ArtinMonoid(load_fixture("b4"))
    free = ArtinMonoid(load_fixture("free2"))
    checks = {
        "b3 clique polynomial": list(clique_polynomial(b3).coeffs) == [1, -2, 0, 1],
        "b4 clique polynomial": list(clique_polynomial(b4).coeffs) == [1, -3, 1, 2, 0, 0, -1],
        "b4 triple lcm": b4.equal(lcm(b4, (0, 1, 0), (2,)).lcm, (2, 1, 0, 2, 1, 2)),
        "free lcm": lcm(free, (0,), (1,)).tag is LcmTag.NO_COMMON_MULTIPLE,
        "b3 pinf": pinf(b3).elements == ((0,), (1,), (0, 1), (1, 0)),
        "b3 gap": kms.detect_gap(b3).has_gap,
        "b3 growth": b3.growth_coefficients(6) == clique_polynomial(b3).truncated_inverse(6),
    }
    return {"checks": checks, "ok": all(checks.values())}


def cmd_selftest(args) -> Report:
    payload = selftest()
    text = "\n".join(f"{'PASS' if v else 'FAIL'} {k}" for k, v in payload["checks"].items())
    rows = [{"check": k, "ok": v} for k, v in payload["checks"].items()]
    return Report(payload, EXIT_OK if payload["ok"] else EXIT_NEGATIVE, text, rows)


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-m", "--monoid", required=True, help="presentation file or fixture name")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("--family", choices=("atoms", "pinf"), default="atoms")
    fam.add_argument("--force", action="store_true", help="use atoms without a reduction guarantee")
    fam.add_argument("--allow-large", action="store_true", help="allow P_inf above 20 elements")

    parser = argparse.ArgumentParser(prog="artinkms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lcm", parents=[common], help="right LCM by subword reversing")
    p.add_argument("w1")
    p.add_argument("w2")
    p.add_argument("--step-cap", type=int, default=1_000_000)
    p.add_argument("--oracle", type=int, metavar="LEN", help="also run the brute-force oracle")
    p.set_defaults(func=cmd_lcm)

    for name, func in (("equal", cmd_equal), ("divides", cmd_divides)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("w1")
        p.add_argument("w2")
        p.set_defaults(func=func)

    p = sub.add_parser("ball", parents=[common], help="elements of length <= L")
    p.add_argument("radius", type=int)
    p.add_argument("--counts-only", action="store_true")
    p.set_defaults(func=cmd_ball)

    sub.add_parser("cliques", parents=[common]).set_defaults(func=cmd_cliques)
    sub.add_parser("clique-poly", parents=[common]).set_defaults(func=cmd_clique_poly)

    p = sub.add_parser("pinf", parents=[common])
    p.add_argument("--max-iter", type=int, default=1000)
    p.set_defaults(func=cmd_pinf)

    p = sub.add_parser("tree", parents=[common], help="expand the λ-list tree")
    p.add_argument("--list", required=True, help='e.g. "s1.s2,inf,s2.s1"')
    p.add_argument("--max-depth", type=int, default=10_000)
    p.add_argument("--max-nodes", type=int, default=1_000_000)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("zpoly", parents=[common])
    p.add_argument("--list", required=True)
    p.set_defaults(func=cmd_zpoly)

    k = sub.add_parser("kms", help="KMS temperature analysis")
    ksub = k.add_subparsers(dest="kms_command", required=True)
    p = ksub.add_parser("temps", parents=[common, fam])
    p.add_argument("--sample-grid", type=int, metavar="N", help="emit CSV of g_J on N grid points")
    p.set_defaults(func=cmd_kms_temps)
    ksub.add_parser("roots", parents=[common, fam]).set_defaults(func=cmd_kms_roots)
    p = ksub.add_parser("eval", parents=[common])
    p.add_argument("--t", help="rational t = e^-β, e.g. 4/5")
    p.add_argument("--beta", type=float)
    p.add_argument("--J", action="append", help='word set, e.g. "s1,s2" (repeatable)')
    p.add_argument("--family", choices=("atoms", "pinf"), default="atoms")
    p.set_defaults(func=cmd_kms_eval)
    ksub.add_parser("critical", parents=[common]).set_defaults(func=cmd_kms_critical)
    ksub.add_parser("gaps", parents=[common, fam]).set_defaults(func=cmd_kms_gaps)

    s = sub.add_parser("sets", help="symbolic set algebra")
    ssub = s.add_subparsers(dest="sets_command", required=True)
    p = ssub.add_parser("rewrite", parents=[common])
    p.add_argument("--K", required=True, help='blockers, e.g. "s1.s2.s1"')
    p.add_argument("--target", choices=("atoms", "pinf"), default="pinf")
    p.add_argument("--prefix", default="")
    p.add_argument("--max-depth", type=int, default=10_000)
    p.add_argument("--verify", type=int, metavar="L", help="check the result on the ball of radius L")
    p.set_defaults(func=cmd_sets_rewrite)
    p = ssub.add_parser("check-algebra", parents=[common])
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--ball", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sets_check)

    p = sub.add_parser("verify", parents=[common], help="oracle cross-check suite")
    p.add_argument("--ball", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.set_defaults(func=None)
    return parser


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt == "text":
        return report.text.rstrip("\n") + "\n"
    if report.raw_csv is not None:
        return report.raw_csv
    rows = report.rows or [report.payload]
    out = io.StringIO()
    fields = []
    for r in rows:
        fields.extend(k for k in r if k not in fields)
    writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({k: _csv_cell(v) for k, v in r.items()})
    return out.getvalue()


def _csv_cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, ensure_ascii=False)
    if isinstance(v, float):
        return repr(v)
    return v


INPUT_ERRORS = (InputError, PresentationError, WordSyntaxError, CellSyntaxError, KeyError,
                kms.GuaranteeUnavailable, NonUniformWeights, kms.FamilyTooLarge, OSError)
UNDECIDED = (LcmInconclusive, CapExceeded, kms.UnsaturatedPinf)


def run(argv=None) -> tuple[int, str, str]:
    """Parse and execute; returns (exit code, stdout text, stderr text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.func is None:
            report = cmd_selftest(args)
        else:
            report = args.func(load_monoid(args.monoid), args)
    except INPUT_ERRORS as exc:
        return EXIT_INPUT, "", f"error: {type(exc).__name__}: {exc}\n"
    except UNDECIDED as exc:
        payload = {"result": "Inconclusive", "reason": str(exc)}
        return EXIT_INCONCLUSIVE, json.dumps(payload, sort_keys=True) + "\n", ""
    return report.code, render(report, args.format), ""


def main(argv=None) -> int:
    try:
        code, out, err = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return EXIT_INPUT if exc.code else 0
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
