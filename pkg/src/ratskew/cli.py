"""Command-line front end: expressions in, JSON certificates out.

Subcommands map onto the library layers: ``series`` for rational power
series, ``skew`` for the extension ring and its quotient ideal, ``leavitt``
for the monoword algebras, ``k0`` for monoid presentations and their
universal groups, ``realize`` for the corner-embedding matrix families,
plus ``selftest`` (the pinned-seed acceptance suite) and ``verify-cert``
which re-checks any JSON certificate this tool emits.

Exit codes: 0 success (including predicates that answer false), 1
computation-level failure (not invertible, witness check failed, failed
verification), 2 usage error (bad flags, malformed expressions or files).
Output on standard output is deterministic for a fixed ``--seed``; timings
go to standard error.  No environment variables are consulted; the tool
never emits color, so NO_COLOR needs no handling.
"""

from __future__ import annotations

import argparse
import json
import signal
import sys

from .expr import (ExprSyntaxError, parse_expr, render_expr, eval_series,
                   eval_skew, eval_leavitt)
from .fields import field_from_name
from .linrep import SeriesMatrix
from .truncated import TruncSeries
from .words import word_key
from . import skew as sk
from . import leavitt as lv
from . import kzero as kz
from . import realize as rz

__all__ = ["parse_expr", "render_expr", "run_command", "main"]


class UsageError(Exception):
    """Invocation-level problem: report on stderr and exit 2."""


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise UsageError("%s is not valid JSON: %s" % (path, exc))


def _print_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


def _emit(args, obj, lines) -> None:
    if getattr(args, "json", False):
        _print_json(obj)
    else:
        for ln in lines:
            print(ln)


def _field(args):
    try:
        return field_from_name(args.field)
    except ValueError as exc:
        raise UsageError(str(exc))


def _word_str(w, letter: str = "x") -> str:
    return "*".join("%s%d" % (letter, i) for i in w) if w else "1"


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------

def _series_report(args, rep) -> int:
    field = rep.field
    window = args.window
    ts = TruncSeries.from_linrep(rep, window)
    items = sorted(ts.coeffs.items(), key=lambda t: word_key(t[0]))
    lines = ["dim: %d" % rep.dim,
             "coefficients of words shorter than %d:" % window]
    for w, c in items:
        lines.append("  %s: %s" % (_word_str(w), field.render(c)))
    if not items:
        lines.append("  (all zero)")
    obj = {"dim": rep.dim, "window": window,
           "coeffs": [[list(w), field.render(c)] for w, c in items]}
    _emit(args, obj, lines)
    return 0


def _cmd_series_eval(args) -> int:
    rep = eval_series(args.expr, _field(args), args.n)
    return _series_report(args, rep)


def _cmd_series_invert(args) -> int:
    rep = eval_series(args.expr, _field(args), args.n)
    return _series_report(args, rep.inv())


def _cmd_series_transduce(args) -> int:
    rep = eval_series(args.expr, _field(args), args.n)
    return _series_report(args, rep.delta(args.letter))


def _cmd_series_equal(args) -> int:
    field = _field(args)
    a = eval_series(args.lhs, field, args.n)
    b = eval_series(args.rhs, field, args.n)
    eq = a == b
    _emit(args, {"equal": eq}, ["true" if eq else "false"])
    return 0


# ---------------------------------------------------------------------------
# skew extension
# ---------------------------------------------------------------------------

def _skew_ring(args) -> sk.SkewRing:
    dom = sk.CoeffDomain(args.backend, _field(args), args.precision)
    return sk.SkewRing(dom, args.n)


def _cmd_skew_mul(args) -> int:
    ring = _skew_ring(args)
    c = eval_skew(args.lhs, ring) * eval_skew(args.rhs, ring)
    _emit(args, {"product": c.to_json(), "render": c.render()}, [c.render()])
    return 0


def _cmd_skew_member(args) -> int:
    ring = _skew_ring(args)
    v = sk.ideal_member(eval_skew(args.expr, ring))
    _emit(args, {"member": v.value, "precision": v.precision},
          ["true" if v.value else "false"])
    return 0


def _cmd_skew_equal(args) -> int:
    ring = _skew_ring(args)
    v = sk.t_equal(eval_skew(args.lhs, ring), eval_skew(args.rhs, ring))
    _emit(args, {"equal": v.value, "precision": v.precision},
          ["true" if v.value else "false"])
    return 0


def _cmd_skew_witness(args) -> int:
    ring = _skew_ring(args)
    w = sk.t_witness(eval_skew(args.expr, ring))
    lines = ["m: %s" % _word_str(w.m_word),
             "g: %s" % w.g.render(),
             "check: %s" % ("1" if w.check.value else "failed")]
    _emit(args, w.to_json(), lines)
    return 0 if w.check.value else 1


# ---------------------------------------------------------------------------
# monoword algebras
# ---------------------------------------------------------------------------

def _leavitt_bound(args):
    # --n 0 selects the unbounded-alphabet algebra
    return args.n if args.n > 0 else None


def _cmd_leavitt_nf(args) -> int:
    field = _field(args)
    n = _leavitt_bound(args)
    a = eval_leavitt(args.expr, field, n)
    nf = lv.v_normal_form(a) if n is not None else a  # monowords already a basis when unbounded
    _emit(args, nf.to_json(), [nf.render()])
    return 0


def _cmd_leavitt_witness(args) -> int:
    field = _field(args)
    n = _leavitt_bound(args)
    a = eval_leavitt(args.expr, field, n)
    w = lv.v_witness(a) if n is not None else lv.uinf_witness(a, args.beyond)
    obj = {"beta": w.beta.render(), "gamma": w.gamma.render(),
           "check": w.product.render(), "ok": w.ok, "cert": w.to_json()}
    lines = ["beta: %s" % w.beta.render(), "gamma: %s" % w.gamma.render(),
             "check: %s" % w.product.render(),
             "ok: %s" % ("true" if w.ok else "false")]
    _emit(args, obj, lines)
    return 0 if w.ok else 1


# ---------------------------------------------------------------------------
# K0 layer
# ---------------------------------------------------------------------------

def _presentation(text: str) -> kz.MonoidPresentation:
    try:
        return kz.parse_presentation(text)
    except kz.UnsupportedPresentation:
        raise
    except ValueError as exc:
        raise UsageError(str(exc))


def _group_payload(g: kz.AbGroup) -> dict:
    images = {name: list(c) for name, c in g.images.items()}
    return {"invariant_factors": list(g.factors), "generators": images,
            "generator_images": images, "group": g.render()}


def _group_lines(g: kz.AbGroup) -> list:
    lines = ["group: %s" % g.render()]
    for name, c in g.images.items():
        lines.append("  %s -> %s" % (name, list(c)))
    return lines


def _cmd_k0_group(args) -> int:
    g = kz.grothendieck_group(_presentation(args.presentation))
    _emit(args, _group_payload(g), _group_lines(g))
    return 0


def _cmd_k0_monoid(args) -> int:
    p = _presentation(args.presentation)
    g = kz.grothendieck_group(p)
    obj = _group_payload(g)
    lines = _group_lines(g)
    code = 0
    try:
        shape = kz.analyze_pisr_shape(p, args.bound)
        obj["shape_report"] = shape.to_json()
        lines.append("elements: %d%s" % (shape.size,
                                         "" if shape.complete else " (fragment)"))
        lines.append("conical: %s" % ("yes" if shape.conical else "no"))
        lines.append("simple: %s" % ("yes" if shape.simple else "no"))
        lines.append("nonzero part a group: %s"
                     % ("yes" if shape.nonzero_is_group else "no"))
        if shape.group is not None:
            lines.append("nonzero part: %s (matches universal group: %s)"
                         % (shape.group.render(),
                            "yes" if shape.matches_group_side else "no"))
        for note in shape.notes:
            lines.append("note: %s" % note)
    except kz.UnsupportedPresentation as exc:
        obj["shape_report"] = None
        obj["shape_error"] = str(exc)
        lines.append("shape: not analyzed (%s)" % exc)
        code = 1
    _emit(args, obj, lines)
    return code


# ---------------------------------------------------------------------------
# realization matrices
# ---------------------------------------------------------------------------

def _cmd_realize_build(args) -> int:
    spec = rz.hom_spec(args.src, args.dst, args.mult)
    g = rz.build_generators(spec, _field(args),
                            count=args.count, backend=args.backend)
    _print_json(g.to_json())
    return 0


def _cmd_realize_verify(args) -> int:
    obj = _load_json(args.file)
    if not isinstance(obj, dict) or obj.get("kind") != "generator_matrices":
        raise UsageError("expected a generator_matrices certificate")
    g = rz.generator_matrices_from_json(obj)
    rep = rz.verify_generators(g)
    out = rep.to_json()
    out.update({"kind": "verify_report", "label": g.spec.label(),
                "spec": g.spec.to_json(), "failed": rep.failed()})
    _print_json(out)
    return 0 if rep.ok else 1


def _cmd_realize_chain(args) -> int:
    obj = _load_json(args.file)
    if not isinstance(obj, dict) or "groups" not in obj or "maps" not in obj:
        raise UsageError("plan file needs 'groups' and 'maps'")
    plan = rz.plan_chain(obj["groups"], obj["maps"])
    out = plan.to_json()
    code = 0 if plan.ok else 1
    if args.verify and plan.ok:
        results = rz.verify_chain(plan, count=args.count)
        out["verification"] = [
            {"spec": s.to_json(), "label": s.label(), "ok": r.ok,
             "failed": r.failed()}
            for s, r in results
        ]
        if not all(r.ok for _, r in results):
            code = 1
    _print_json(out)
    return code


# ---------------------------------------------------------------------------
# acceptance suite
# ---------------------------------------------------------------------------

def _cmd_selftest(args) -> int:
    from .acceptance import CRITERIA, PINNED_SEED, run_criterion

    seed = PINNED_SEED if args.seed is None else args.seed
    nums = [args.criterion] if args.criterion else [c[0] for c in CRITERIA]
    results = []
    for num in nums:
        r = run_criterion(num, seed)
        results.append(r)
        over = "" if r["seconds"] <= r["budget"] else "  OVER BUDGET"
        print("criterion %2d: %6.2fs (budget %3.0fs)%s"
              % (num, r["seconds"], r["budget"], over), file=sys.stderr)
    passed = sum(1 for r in results if r["ok"])
    if args.json:
        _print_json({"seed": seed, "passed": passed, "total": len(results),
                     "criteria": [{"num": r["num"], "name": r["name"],
                                   "ok": r["ok"], "detail": r["detail"]}
                                  for r in results]})
    else:
        for r in results:
            print("%s %2d %s: %s" % ("PASS" if r["ok"] else "FAIL",
                                     r["num"], r["name"], r["detail"]))
        print("%d/%d criteria passed (seed %d)" % (passed, len(results), seed))
    return 0 if passed == len(results) else 1


# ---------------------------------------------------------------------------
# certificate re-checking
# ---------------------------------------------------------------------------

def _ring_for(elem_obj) -> sk.SkewRing:
    field = field_from_name(elem_obj["field"])
    return sk.SkewRing(sk.CoeffDomain(elem_obj["backend"], field), elem_obj["n"])


def _recheck_skew_witness(obj) -> dict:
    ring = _ring_for(obj["input"])
    a = sk.SkewElem.from_json(ring, obj["input"])
    g = sk.SkewElem.from_json(ring, obj["g"])
    m = ring.x_word(tuple(obj["m"]))
    v = sk.t_equal(m * a * g, ring.one())
    return {"kind": "skew_witness", "ok": v.value, "precision": v.precision}


def _recheck_paired_witness(obj) -> dict:
    field = field_from_name(obj["input"]["field"])
    a = lv.UElem.from_json(field, obj["input"])
    beta = lv.UElem.from_json(field, obj["beta"])
    gamma = lv.UElem.from_json(field, obj["gamma"])
    prod = beta * a * gamma
    one = lv.UElem.one(field, a.n)
    if obj["mode"] == "v":
        ok = lv.v_equal(prod, one)
    else:
        ok = not (prod - one).coeffs
    return {"kind": "paired_witness", "mode": obj["mode"], "ok": ok}


def _recheck_word_system(obj) -> dict:
    if not obj["qs"]:
        raise UsageError("word-system certificate carries no q elements")
    ring = _ring_for(obj["qs"][0])
    words = [tuple(w) for w in obj["words"]]
    qs = [sk.SkewElem.from_json(ring, q) for q in obj["qs"]]
    rep = sk.verify_word_system(ring, words, qs)
    return {"kind": "word_system", "ok": rep.ok, "s": rep.s,
            "s_mod": rep.s_mod, "violations": list(rep.violations)}


def _series_matrix_is_zero(m: SeriesMatrix) -> bool:
    return all(e.dim == 0 for row in m.entries() for e in row)


def _recheck_sigma_cert(obj) -> dict:
    field = field_from_name(obj["field"])
    mat = SeriesMatrix.from_json(field, obj["matrix"])
    inv = SeriesMatrix.from_json(field, obj["inverse"])
    ident = SeriesMatrix.identity(field, obj["size"])
    right = _series_matrix_is_zero(mat * inv - ident)
    left = _series_matrix_is_zero(inv * mat - ident)
    return {"kind": "sigma_cert", "ok": right and left,
            "ok_right": right, "ok_left": left}


def _recheck_generator_matrices(obj) -> dict:
    g = rz.generator_matrices_from_json(obj)
    rep = rz.verify_generators(g)
    return {"kind": "generator_matrices", "label": g.spec.label(),
            "ok": rep.ok, "failed": rep.failed()}


def _recheck_chain_plan(obj) -> dict:
    plan = rz.plan_chain(obj["groups"], obj["maps"])
    same = plan.to_json()["steps"] == obj["steps"]
    results = rz.verify_chain(plan) if plan.ok else []
    ok = plan.ok and same and all(r.ok for _, r in results)
    return {"kind": "chain_plan", "ok": ok, "replanned_identically": same,
            "specs_verified": len(results)}


_RECHECKERS = {
    "skew_witness": _recheck_skew_witness,
    "paired_witness": _recheck_paired_witness,
    "word_system": _recheck_word_system,
    "sigma_cert": _recheck_sigma_cert,
    "generator_matrices": _recheck_generator_matrices,
    "chain_plan": _recheck_chain_plan,
}


def recheck_certificate(obj) -> dict:
    """Re-run the computation a certificate claims, from its own inputs."""
    if not isinstance(obj, dict):
        raise UsageError("certificate must be a JSON object")
    if "kind" not in obj and isinstance(obj.get("cert"), dict):
        obj = obj["cert"]
    fn = _RECHECKERS.get(obj.get("kind"))
    if fn is None:
        raise UsageError("unknown certificate kind %r" % (obj.get("kind"),))
    return fn(obj)


def _cmd_verify_cert(args) -> int:
    out = recheck_certificate(_load_json(args.file))
    _print_json(out)
    return 0 if out["ok"] else 1


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------

def _common(p, precision: bool = True) -> None:
    p.add_argument("--field", default="q", metavar="F",
                   help="coefficient field: q, fp:<p>, or qt:<r> (default q)")
    p.add_argument("--n", type=int, default=2, metavar="N",
                   help="alphabet parameter; series/skew use letters 0..N, "
                        "monoword algebras use 1..N with 0 meaning unbounded")
    if precision:
        p.add_argument("--precision", type=int, default=16, metavar="P",
                       help="window for the truncated backend (default 16)")
    p.add_argument("--seed", type=int, default=None, metavar="S",
                   help="seed for randomized suites; fixed seed fixes stdout")
    p.add_argument("--json", action="store_true",
                   help="machine-readable JSON on stdout")


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ratskew",
        description="exact computation in skew extensions of rational series, "
                    "monoword algebras, and their K-theory")
    ap.add_argument("--verify-cert", metavar="FILE", dest="verify_cert_file",
                    help="re-check an emitted JSON certificate and exit")
    sub = ap.add_subparsers(dest="cmd", metavar="COMMAND")

    se = sub.add_parser("series", help="rational power series in x letters")
    ses = se.add_subparsers(dest="action", metavar="ACTION")
    ses.required = True
    p = ses.add_parser("eval", help="evaluate an expression to a series")
    _common(p)
    p.add_argument("--window", type=int, default=6,
                   help="print coefficients of words shorter than this")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_series_eval)
    p = ses.add_parser("invert", help="multiplicative inverse (unit constant term)")
    _common(p)
    p.add_argument("--window", type=int, default=6)
    p.add_argument("expr")
    p.set_defaults(func=_cmd_series_invert)
    p = ses.add_parser("transduce", help="pick out words ending in a letter")
    _common(p)
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--letter", type=int, default=0, metavar="I")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_series_transduce)
    p = ses.add_parser("equal", help="exact equality of two series")
    _common(p)
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=_cmd_series_equal)

    sw = sub.add_parser("skew", help="the extension ring and its ideal")
    sws = sw.add_subparsers(dest="action", metavar="ACTION")
    sws.required = True

    def skew_sub(name, helptext):
        q = sws.add_parser(name, help=helptext)
        _common(q)
        q.add_argument("--backend", default="rat", choices=("free", "rat", "trunc"),
                       help="coefficient backend (default rat)")
        return q

    p = skew_sub("mul", "multiply two elements")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=_cmd_skew_mul)
    p = skew_sub("member", "does the element lie in the defining ideal?")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_skew_member)
    p = skew_sub("equal", "equality in the quotient ring")
    p.add_argument("lhs")
    p.add_argument("rhs")
    p.set_defaults(func=_cmd_skew_equal)
    p = skew_sub("witness", "left/right factors driving the element to 1")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_skew_witness)

    le = sub.add_parser("leavitt", help="monoword algebras (letters from 1)")
    les = le.add_subparsers(dest="action", metavar="ACTION")
    les.required = True
    p = les.add_parser("nf", help="normal form under the unit-sum relation")
    _common(p, precision=False)
    p.add_argument("expr")
    p.set_defaults(func=_cmd_leavitt_nf)
    p = les.add_parser("witness", help="paired witness beta, gamma with beta*a*gamma = 1")
    _common(p, precision=False)
    p.add_argument("--beyond", type=int, default=0, metavar="K",
                   help="unbounded mode: treat letters above K as fresh")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_leavitt_witness)

    k0 = sub.add_parser("k0", help="monoid presentations and universal groups")
    k0s = k0.add_subparsers(dest="action", metavar="ACTION")
    k0s.required = True
    p = k0s.add_parser("monoid", help="enumerate, shape-check, and take the universal group")
    _common(p, precision=False)
    p.add_argument("--bound", type=int, default=64,
                   help="enumeration cutoff (default 64)")
    p.add_argument("presentation", help='e.g. "I | 3I=I" or "I,P | I=2I+P"')
    p.set_defaults(func=_cmd_k0_monoid)
    p = k0s.add_parser("group", help="universal group only (no enumeration)")
    _common(p, precision=False)
    p.add_argument("presentation")
    p.set_defaults(func=_cmd_k0_group)

    re_ = sub.add_parser("realize", help="corner-embedding matrix families")
    res = re_.add_subparsers(dest="action", metavar="ACTION")
    res.required = True
    p = res.add_parser("build", help="emit generator matrices for a tag map")
    _common(p)
    p.add_argument("--from", dest="src", type=int, required=True, metavar="N",
                   help="source tag (0 = infinite cyclic)")
    p.add_argument("--to", dest="dst", type=int, required=True, metavar="M",
                   help="target tag (0 = infinite cyclic)")
    p.add_argument("--mult", dest="mult", type=int, required=True, metavar="L",
                   help="order-unit multiplier")
    p.add_argument("--count", type=int, default=4,
                   help="generator pairs materialized when the family is infinite")
    p.add_argument("--backend", default="rat", choices=("free", "rat"),
                   help="coefficient backend for the entries (default rat)")
    p.set_defaults(func=_cmd_realize_build)
    p = res.add_parser("verify", help="re-check a generator_matrices certificate")
    _common(p)
    p.add_argument("file", help="certificate file, or - for stdin")
    p.set_defaults(func=_cmd_realize_verify)
    p = res.add_parser("chain", help="plan a stepwise realization of a group chain")
    _common(p)
    p.add_argument("--verify", action="store_true",
                   help="also build and verify every emitted spec")
    p.add_argument("--count", type=int, default=2,
                   help="generator pairs per spec when verifying")
    p.add_argument("file", help='JSON with "groups" and "maps", or - for stdin')
    p.set_defaults(func=_cmd_realize_chain)

    st = sub.add_parser("selftest", help="run the acceptance suite (pinned seed)")
    st.add_argument("--criterion", type=int, default=None, choices=range(1, 13),
                    metavar="1..12", help="run a single criterion")
    st.add_argument("--seed", type=int, default=None)
    st.add_argument("--json", action="store_true")
    st.set_defaults(func=_cmd_selftest)

    vc = sub.add_parser("verify-cert", help="re-check an emitted JSON certificate")
    vc.add_argument("file", help="certificate file, or - for stdin")
    vc.set_defaults(func=_cmd_verify_cert)

    return ap


def run_command(argv) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(list(argv))
    except SystemExit as exc:  # argparse handles --help and usage errors
        return exc.code if isinstance(exc.code, int) else 2
    if getattr(args, "verify_cert_file", None):
        handler = _cmd_verify_cert
        args = argparse.Namespace(file=args.verify_cert_file, json=True)
    elif getattr(args, "func", None) is not None:
        handler = args.func
    else:
        ap.print_usage(sys.stderr)
        return 2
    try:
        return handler(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ExprSyntaxError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, KeyError, ZeroDivisionError, ArithmeticError,
            RuntimeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


def main(argv=None) -> int:
    if hasattr(signal, "SIGPIPE"):
        signal.signal(signal.SIGPIPE, signal.SIG_DFL)
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
