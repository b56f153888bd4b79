"""Batch command line front end.

Every subcommand reads exact inputs (JSON algebra specs, rational scalars as
strings), runs the requested computation, and emits a canonical JSON report
that echoes the inputs.  Identical inputs and seed give byte-identical
reports.  Exit status: 0 all checks pass, 1 a check failed, 2 parse error,
3 validation error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .scalars import Scalar, format_scalar, parse_rational, format_rational
from .elements import el_mono, format_element, format_lambda_poly
from .algebra import VertexAlgebra, TableError
from .liealg import LieError, sl2, osp12, with_x
from . import io as vio
from . import presets
from . import twisted
from . import zhu as zhu_mod
from . import cohomology as coh
from .sampling import sample_stream

EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_VALIDATE = 3


class ParseFailure(Exception):
    pass


class ValidateFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers

def _load_spec(path):
    try:
        with open(path) as fh:
            text = fh.read()
        obj = json.loads(text)
    except OSError as exc:
        raise ParseFailure("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise ParseFailure("malformed JSON in %s at line %d column %d: %s"
                           % (path, exc.lineno, exc.colno, exc.msg))
    known = {"generators", "table"}
    extra = set(obj) - known
    if extra:
        raise ParseFailure("unknown fields in %s: %s"
                           % (path, ", ".join(sorted(extra))))
    try:
        return vio.algebra_from_obj(obj)
    except (TableError, ValueError, KeyError) as exc:
        raise ValidateFailure("invalid algebra spec %s: %s" % (path, exc))


_FACTOR_RE = re.compile(r"^(?:D(\d*)\()?([A-Za-z_][A-Za-z_0-9]*)\)?$")


def _parse_expr(text, va):
    """An element: either inline JSON or a name expression like 'D2(e)'."""
    text = text.strip()
    if text.startswith("["):
        try:
            return vio.element_from_obj(json.loads(text))
        except (json.JSONDecodeError, ValueError, TypeError) as exc:
            raise ParseFailure("bad element JSON %r: %s" % (text, exc))
    names = {g.name: i for i, g in enumerate(va.generators)}
    m = _FACTOR_RE.match(text)
    if not m:
        raise ParseFailure("cannot parse expression %r" % text)
    kk = int(m.group(1) or 0) if m.group(1) is not None else 0
    name = m.group(2)
    if name not in names:
        raise ParseFailure("unknown generator %r" % name)
    return el_mono(((names[name], kk),))


def _parse_level(text):
    if text is None or text == "symbolic":
        return None
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseFailure("bad level %r: %s" % (text, exc))


def _lie_data(name):
    if name == "sl2":
        return sl2()
    if name == "osp12":
        return osp12()
    raise ParseFailure("unknown Lie superalgebra %r" % name)


def _with_x_choice(data, x_choice):
    half = Fraction(1, 2)
    if x_choice in (None, "0", 0):
        return with_x(data, {"h": Fraction(0)})
    if x_choice == "h/2":
        return with_x(data, {"h": half})
    try:
        return with_x(data, {"h": parse_rational(x_choice)})
    except ValueError:
        raise ParseFailure("bad x choice %r" % x_choice)


def _phases_for(data, twist, weights=None):
    if twist in (None, "none"):
        return None
    if twist == "theta":
        if weights is None:
            raise ParseFailure("theta twist needs weights")
        return presets.theta_phases(weights)
    m = re.match(r"^inner:(.+)$", twist)
    if m:
        return presets.inner_phases(data, parse_rational(m.group(1)))
    raise ParseFailure("unknown twist %r" % twist)


# ---------------------------------------------------------------------------
# report plumbing

def _emit(report, args):
    text = vio.dumps(report)
    if getattr(args, "output", None):
        tmp = args.output + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(text)
        import os
        os.replace(tmp, args.output)
    else:
        sys.stdout.write(text)
    return 0 if report.get("pass", True) else EXIT_FAIL


# ---------------------------------------------------------------------------
# subcommands

def cmd_preset(args):
    name = args.name
    level = _parse_level(args.level)
    if name in ("affine-sl2", "affine-osp12"):
        data = _lie_data("sl2" if name == "affine-sl2" else "osp12")
        data = _with_x_choice(data, args.x)
        weights = [1 - j for j in data.grading()]
        phases = _phases_for(data, args.twist, weights)
        va = presets.affine(data, level=level, phases=phases)
    elif name == "virasoro":
        c = parse_rational(args.c) if args.c is not None else Fraction(0)
        va = presets.virasoro(c)
    elif name == "free-fermion":
        phase = parse_rational(args.phase) if args.phase else Fraction(0)
        va = presets.free_fermion(phase)
    elif name in ("brst-sl2", "brst-osp12"):
        data = _lie_data("sl2" if name == "brst-sl2" else "osp12")
        data = _with_x_choice(data, args.x or "h/2")
        va = presets.BrstComplex(data, level=level).algebra
    else:
        raise ParseFailure("unknown preset %r" % name)
    return _emit(vio.algebra_to_obj(va), args)


def cmd_ope(args):
    va = _load_spec(args.algebra)
    left = _parse_expr(args.left, va)
    right = _parse_expr(args.right, va)
    names = [g.name for g in va.generators]
    report = {"inputs": {"algebra": args.algebra, "left": args.left,
                         "right": args.right}}
    if args.n is None:
        poly = va.lambda_bracket(left, right)
        report["lambda_bracket"] = vio.lambda_poly_to_obj(poly)
        report["text"] = format_lambda_poly(poly, names)
    else:
        report["inputs"]["n"] = args.n
        res = va.nth_product(left, right, args.n)
        report["product"] = vio.element_to_obj(res)
        report["text"] = format_element(res, names)
    return _emit(report, args)


def cmd_verify_identity(args):
    va = _load_spec(args.algebra)
    name = args.identity
    if name not in twisted.IDENTITIES:
        raise ParseFailure("unknown identity %r (known: %s)"
                           % (name, ", ".join(sorted(twisted.IDENTITIES))))
    fn, arity, param_keys = twisted.IDENTITIES[name]
    import random
    rng = random.Random(args.seed)
    names = [g.name for g in va.generators]
    failures = []
    trials = []
    for t in range(args.samples):
        elements = []
        from .sampling import random_homogeneous
        for _ in range(arity):
            elements.append(random_homogeneous(rng, va))
        params = {key: rng.randint(-args.index_bound, args.index_bound)
                  for key in param_keys}
        ok, lhs, rhs = twisted.verify_identity_detail(name, va, elements,
                                                      **params)
        trials.append(ok)
        if not ok:
            failures.append({
                "trial": t,
                "elements": [format_element(e, names) for e in elements],
                "params": params,
                "lhs": format_element(lhs, names),
                "rhs": format_element(rhs, names),
            })
    report = {
        "inputs": {"algebra": args.algebra, "identity": name,
                   "samples": args.samples, "seed": args.seed,
                   "index_bound": args.index_bound},
        "passed": sum(trials),
        "failed": len(failures),
        "failures": failures,
        "pass": not failures,
    }
    return _emit(report, args)


def cmd_zhu_project(args):
    va = _load_spec(args.algebra)
    zh = zhu_mod.ZhuAlgebra(va)
    el = _parse_expr(args.element, va)
    if not zh.is_fixed(el):
        raise ValidateFailure("element is not fixed by the twist")
    img = zh.tau(el)
    report = {"inputs": {"algebra": args.algebra, "element": args.element},
              "image": vio.zhu_element_to_obj(img),
              "text": zh.show(img)}
    return _emit(report, args)


def cmd_zhu_mul(args):
    va = _load_spec(args.algebra)
    zh = zhu_mod.ZhuAlgebra(va)
    a = zh.tau(_parse_expr(args.left, va))
    b = zh.tau(_parse_expr(args.right, va))
    res = zh.mul(a, b)
    report = {"inputs": {"algebra": args.algebra, "left": args.left,
                         "right": args.right},
              "product": vio.zhu_element_to_obj(res),
              "text": zh.show(res)}
    return _emit(report, args)


def cmd_zhu_census(args):
    va = _load_spec(args.algebra)
    zh = zhu_mod.ZhuAlgebra(va)
    rows = zhu_mod.pbw_census(zh, args.zmax)
    ok = all(r["words"] == r["rank"] for r in rows)
    report = {"inputs": {"algebra": args.algebra, "zmax": args.zmax},
              "rows": [{"zeta": str(r["zeta"]), "words": r["words"],
                        "rank": r["rank"]} for r in rows],
              "pass": ok}
    return _emit(report, args)


def cmd_theorem_e_check(args):
    va = _load_spec(args.algebra)
    zh = zhu_mod.ZhuAlgebra(va)
    gr, free = zhu_mod.theorem_e_dims(zh, args.dmax)
    ok = all(g["dim"] == f["dim"] for g, f in zip(gr, free))
    report = {"inputs": {"algebra": args.algebra, "dmax": args.dmax},
              "graded": [{"weight": str(r["weight"]), "dim": r["dim"]}
                         for r in gr],
              "free": [{"weight": str(r["weight"]), "dim": r["dim"]}
                       for r in free],
              "pass": ok}
    return _emit(report, args)


def cmd_theorem_c_check(args):
    data = _lie_data(args.lie)
    data = _with_x_choice(data, args.x)
    weights = [1 - j for j in data.grading()]
    phases = _phases_for(data, args.twist, weights)
    level = _parse_level(args.level)
    res = zhu_mod.theorem_c_check(data, phases=phases, level=level)
    report = {"inputs": {"lie": args.lie, "x": args.x or "0",
                         "twist": args.twist or "none",
                         "level": args.level or "symbolic"},
              "letters": res["letters"],
              "rows": res["rows"],
              "pass": res["pass"]}
    return _emit(report, args)


def _brst_and_window(args):
    data = _lie_data(args.lie)
    data = _with_x_choice(data, args.x or "h/2")
    level = _parse_level(args.level)
    brst = presets.BrstComplex(data)
    kv = level
    win = coh.TruncationWindow(args.dmax, args.zmax, kv,
                               dual_coxeter=data.dual_coxeter)
    return brst, win


def cmd_cohomology(args):
    brst, win = _brst_and_window(args)
    plus = coh.BrstPlus(brst)
    blocks = coh.truncated_cohomology(plus, win)
    rows = []
    for (weight, charge) in sorted(blocks, key=lambda t: (t[0], t[1])):
        b = blocks[(weight, charge)]
        rows.append({"weight": str(weight), "charge": charge,
                     "dim": b["dim"], "h": b["h"]})
    nonzero_other = any(r["h"] and r["charge"] != 0 for r in rows)
    report = {"inputs": {"lie": args.lie, "x": args.x or "h/2",
                         "level": args.level or "symbolic",
                         "dmax": args.dmax, "zmax": args.zmax},
              "blocks": rows,
              "h_nonzero_outside_charge_zero": nonzero_other,
              "pass": not nonzero_other}
    return _emit(report, args)


def cmd_zhu_h0(args):
    brst, win = _brst_and_window(args)
    plus = coh.BrstPlus(brst)
    res = coh.zhu_h0(plus, win)
    report = {"inputs": {"lie": args.lie, "x": args.x or "h/2",
                         "level": args.level or "symbolic",
                         "dmax": args.dmax, "zmax": args.zmax},
              "filtered": [{"zeta": str(r["zeta"]), "h0": r["h0"]}
                           for r in res["filtered"]],
              "pass": True}
    return _emit(report, args)


def cmd_theorem_b_check(args):
    brst, win = _brst_and_window(args)
    res = coh.theorem_b_check(brst, win)
    report = {"inputs": {"lie": args.lie, "x": args.x or "h/2",
                         "level": args.level or "symbolic",
                         "dmax": args.dmax, "zmax": args.zmax},
              "filtered": [{"zeta": str(r["zeta"]), "side_a": r["side_a"],
                            "side_b": r["side_b"]} for r in res["filtered"]],
              "commutative": res["commutative"],
              "generator_degrees": res["generator_degrees"],
              "pass": res["pass"]}
    return _emit(report, args)


def cmd_theorem_d_check(args):
    data = _lie_data(args.lie)
    data = _with_x_choice(data, args.x or "h/2")
    brst = presets.BrstComplex(data)
    levels = [parse_rational(t) for t in (args.levels or "7/3").split(",")]
    win = coh.TruncationWindow(args.dmax, args.zmax,
                               dual_coxeter=data.dual_coxeter)
    res = coh.theorem_d_check(brst, win, levels)
    sub_reports = []
    for rep in res["reports"]:
        sub_reports.append({
            "k": rep["k"],
            "pass": rep["pass"],
            "dims_match": rep["dims_match"],
            "commutative": rep["commutative"],
            "generator_degrees": rep["generator_degrees"],
            "filtered": [{"zeta": str(r["zeta"]), "side_a": r["side_a"],
                          "side_b": r["side_b"]} for r in rep["filtered"]],
        })
    report = {"inputs": {"lie": args.lie, "x": args.x or "h/2",
                         "levels": [format_rational(kv) for kv in levels],
                         "dmax": args.dmax, "zmax": args.zmax},
              "dims": res["dims"],
              "consistent": res["consistent"],
              "reports": sub_reports,
              "pass": res["pass"]}
    return _emit(report, args)


# ---------------------------------------------------------------------------

def _common(p, window=False, algebra=False, lie=False):
    p.add_argument("--output", help="write the JSON report here")
    if algebra:
        p.add_argument("--algebra", required=True,
                       help="algebra spec JSON path")
    if lie:
        p.add_argument("--lie", required=True, choices=["sl2", "osp12"])
        p.add_argument("--x", help="grading choice: 0, h/2, or a rational")
        p.add_argument("--level", help="level: p/q or 'symbolic'")
    if window:
        p.add_argument("--dmax", type=int, default=4)
        p.add_argument("--zmax", type=int, default=4)


def build_parser():
    ap = argparse.ArgumentParser(prog="vertexzhu")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preset", help="emit an algebra spec JSON")
    p.add_argument("name")
    p.add_argument("--x")
    p.add_argument("--c")
    p.add_argument("--phase")
    p.add_argument("--twist")
    p.add_argument("--level")
    _common(p)
    p.set_defaults(fn=cmd_preset)

    p = sub.add_parser("ope", help="lambda bracket or n-th product")
    _common(p, algebra=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(fn=cmd_ope)

    p = sub.add_parser("verify-identity")
    _common(p, algebra=True)
    p.add_argument("--identity", required=True)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--index-bound", type=int, default=2)
    p.set_defaults(fn=cmd_verify_identity)

    p = sub.add_parser("zhu-project")
    _common(p, algebra=True)
    p.add_argument("--element", required=True)
    p.set_defaults(fn=cmd_zhu_project)

    p = sub.add_parser("zhu-mul")
    _common(p, algebra=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(fn=cmd_zhu_mul)

    p = sub.add_parser("zhu-census")
    _common(p, algebra=True)
    p.add_argument("--zmax", type=int, default=6)
    p.set_defaults(fn=cmd_zhu_census)

    p = sub.add_parser("theorem-e-check")
    _common(p, algebra=True)
    p.add_argument("--dmax", type=int, default=4)
    p.set_defaults(fn=cmd_theorem_e_check)

    p = sub.add_parser("theorem-c-check")
    p.add_argument("--lie", required=True, choices=["sl2", "osp12"])
    p.add_argument("--x")
    p.add_argument("--twist")
    p.add_argument("--level")
    _common(p)
    p.set_defaults(fn=cmd_theorem_c_check)

    for name, fn in [("cohomology", cmd_cohomology),
                     ("zhu-h0", cmd_zhu_h0),
                     ("theorem-b-check", cmd_theorem_b_check)]:
        p = sub.add_parser(name)
        _common(p, window=True, lie=True)
        p.set_defaults(fn=fn)

    p = sub.add_parser("theorem-d-check")
    p.add_argument("--lie", required=True, choices=["sl2", "osp12"])
    p.add_argument("--x")
    p.add_argument("--levels", help="comma separated rational levels")
    _common(p, window=True)
    p.set_defaults(fn=cmd_theorem_d_check)

    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except ParseFailure as exc:
        print(json.dumps({"error": "parse", "detail": str(exc)}),
              file=sys.stderr)
        return EXIT_PARSE
    except ValidateFailure as exc:
        print(json.dumps({"error": "validation", "detail": str(exc)}),
              file=sys.stderr)
        return EXIT_VALIDATE
    except (TableError, LieError) as exc:
        print(json.dumps({"error": "validation", "detail": str(exc)}),
              file=sys.stderr)
        return EXIT_VALIDATE


if __name__ == "__main__":
    sys.exit(main())
