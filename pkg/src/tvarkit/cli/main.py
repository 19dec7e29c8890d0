"""``tvarkit`` command line entry point.

Exit codes: 0 success, 1 a checked property is false, 2 bad input,
3 internal invariant breach.
"""
import argparse
import json
import sys
from fractions import Fraction

from .. import __version__
from ..cone_singularity import (Kind, classify, embed_into_cone_singularity, face_chain_steps,
                                open_embedding_check)
from ..discrepancy import (blowup_log_discrepancy, non_lc_blowup_sequence, product_germ,
                           toric_mld_search)
from ..errors import InstanceError, TvarkitError
from ..lattice import Cone
from ..pdivisor import evaluate, is_proper, validate
from ..properties import PROPERTIES
from ..weight_action import complexity, dependency_relations, is_effective_ambient, positive_grading
from . import instances
from .report import Report
from .verify import verify_directory

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_rational_list(text):
    """``"1/2, -3, 4"`` or ``"[1, \\"1/2\\"]"`` -> tuple of Fractions."""
    text = text.strip()
    if text.startswith("["):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad vector {text!r}: {exc.msg}") from None
    else:
        items = [t for t in text.split(",") if t.strip()]
    try:
        return tuple(Fraction(str(x).strip()) for x in items)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational list {text!r}") from None


def parse_face(text):
    """Rays of a face as ``"1,0;0,1"`` or JSON ``[[1,0],[0,1]]``."""
    text = text.strip()
    if text.startswith("["):
        try:
            rays = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"bad face {text!r}: {exc.msg}") from None
        return [parse_rational_list(json.dumps(r)) for r in rays]
    return [parse_rational_list(part) for part in text.split(";") if part.strip()]


def _load(path, kind):
    inst = instances.load(path)
    if inst.kind != kind:
        raise InstanceError(f"expected a {kind} instance, found {inst.kind}", str(path))
    return inst.obj


def _inputs(args, *keys):
    out = {"argv": {k: getattr(args, k) for k in keys}}
    for k in ("file", "file1", "file2"):
        if getattr(args, k, None):
            out[k] = instances.to_document(instances.load(getattr(args, k)))
    return out


# -- pdiv --------------------------------------------------------------------

def cmd_pdiv_check(args):
    D = _load(args.file, "pdivisor")
    report = Report("pdiv check", _inputs(args))
    problem = validate(D)
    if not report.check("valid", problem is None, problem):
        return report
    report.check("proper", is_proper(D))
    return report


def cmd_pdiv_eval(args):
    D = _load(args.file, "pdivisor")
    u = parse_rational_list(args.u)
    report = Report("pdiv eval", _inputs(args, "u"))
    report.result = {"u": u, "entries": dict(evaluate(D, u).entries)}
    return report


def _embedding_summary(emb):
    return {
        "added_rays": emb.added_rays,
        "face_chain": emb.face_chain,
        "extended_tail_rays": emb.extended.tail.rays,
        "extended": instances.to_payload("pdivisor", emb.extended),
    }


def cmd_pdiv_classify(args):
    D = _load(args.file, "pdivisor")
    report = Report("pdiv classify", _inputs(args))
    cl = classify(D)
    report.result = {"kind": cl.kind, "witness": cl.witness}
    if cl.kind is Kind.EMBEDDABLE_NON_CONE:
        report.result["embedding"] = _embedding_summary(embed_into_cone_singularity(D))
    return report


def cmd_pdiv_embed(args):
    D = _load(args.file, "pdivisor")
    report = Report("pdiv embed", _inputs(args))
    emb = embed_into_cone_singularity(D)
    report.result = _embedding_summary(emb)
    report.check("extended_tail_full_dimensional", emb.extended.tail.is_full_dimensional)
    report.check("face_chain_recovers_original", emb.recover() == D)
    if is_proper(D):
        report.check("extended_proper", is_proper(emb.extended))
    d = emb.extended
    for w, face in face_chain_steps(emb):
        report.check("open_embedding_step", open_embedding_check(d, face, w), w)
        d = face
    return report


def cmd_pdiv_embed_check(args):
    D1 = _load(args.file1, "pdivisor")
    D2 = _load(args.file2, "pdivisor")
    u = parse_rational_list(args.u)
    report = Report("pdiv embed-check", _inputs(args, "u"))
    report.check("open_embedding", open_embedding_check(D1, D2, u), u)
    return report


# -- mld ---------------------------------------------------------------------

def cmd_mld_toric(args):
    germ = _load(args.file, "toric_germ")
    report = Report("mld toric", _inputs(args, "center"))
    center = None
    if args.center is not None:
        center = Cone(parse_face(args.center), rank=germ.rank)
    res = toric_mld_search(germ, center)
    report.result = {"mld": res.value, "witness": res.witness, "scan_bound": res.bound}
    report.check("mld_positive", res.value > 0, res.value)
    report.check("mld_at_most_rank", res.value <= germ.rank, res.value)
    return report


def cmd_mld_blowup_seq(args):
    others = parse_rational_list(args.others) if args.others else ()
    d_e = parse_rational_list(args.dE)
    if len(d_e) != 1:
        raise UsageError("--dE takes a single rational")
    report = Report("mld blowup-seq", _inputs(args, "n", "dE", "others"))
    trace = non_lc_blowup_sequence(args.n, d_e[0], others)
    report.result = {
        "c": trace.c,
        "other_sum": trace.other_sum,
        "length": trace.length,
        "steps": [{"label": s.label, "center_codim": s.center_codim,
                   "coeffs_over_center": s.coeffs_over_center,
                   "log_discrepancy": s.log_discrepancy} for s in trace.steps],
        "final_log_discrepancy": trace.final_log_discrepancy,
        "final_bound": trace.final_bound,
    }
    report.check("steps_revalidate", all(
        blowup_log_discrepancy(s.center_codim, s.coeffs_over_center) == s.log_discrepancy
        for s in trace.steps))
    report.check("final_at_most_dimension", trace.final_log_discrepancy <= args.n,
                 trace.final_log_discrepancy)
    return report


def cmd_mld_product_check(args):
    germ = _load(args.file, "toric_germ")
    if args.extra < 1:
        raise UsageError("--extra must be positive")
    report = Report("mld product-check", _inputs(args, "extra"))
    base = toric_mld_search(germ).value
    prod = product_germ(germ, args.extra)
    along = toric_mld_search(prod, prod.sigma).value
    report.result = {"mld_point": base, "mld_along_orbit": along}
    report.check("product_formula", base == along)
    return report


# -- action ------------------------------------------------------------------

def cmd_action_analyze(args):
    wi = _load(args.file, "weight_matrix")
    W = wi.matrix
    report = Report("action analyze", _inputs(args))
    u = positive_grading(W)
    result = {"k": W.k, "m": W.m, "effective_ambient": is_effective_ambient(W), "positive_grading": u}
    if wi.dim_x is not None:
        result["complexity"] = complexity(W, wi.dim_x)
    if W.m % 2 == 0 and W.m >= 4:
        result["relations"] = [{"index": r.index, "holds": r.holds, "lhs": r.lhs, "rhs": r.rhs}
                               for r in dependency_relations(W)]
    report.result = result
    report.check("effective_ambient", result["effective_ambient"])
    report.check("positively_graded", u is not None, u)
    return report


# -- verify ------------------------------------------------------------------

def cmd_verify_all(args):
    outcomes, randoms = verify_directory(args.dir, jobs=args.jobs, random_count=args.random)
    report = Report("verify all", {"argv": {"dir": args.dir, "random": args.random},
                                   "files": [o[0] for o in outcomes]})
    files = []
    worst = EXIT_OK
    for name, status, payload in outcomes:
        entry = {"file": name, "status": status}
        if isinstance(payload, dict):
            entry["verdicts"] = payload["verdicts"]
            witness = [v["check"] for v in payload["verdicts"] if not v["pass"]] or None
        else:
            entry["error"] = witness = payload
        files.append(entry)
        report.check(f"file {name}", status == "ok", witness)
        worst = max(worst, {"ok": EXIT_OK, "fail": EXIT_FALSE, "input": EXIT_INPUT,
                            "internal": EXIT_INTERNAL}[status])
    for name, (passed, failure) in randoms.items():
        report.check(f"random {name} ({passed}/{args.random})", passed == args.random,
                     None if failure is None else repr(failure))
    report.result = {"files": files, "random_properties": {k: v[0] for k, v in randoms.items()}}
    report.summary = {"files_checked": len(files), "random_instances_per_property": args.random}
    report.exit_code = worst if worst else (EXIT_OK if report.all_passed else EXIT_FALSE)
    return report


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print the machine-readable report")
    parser = argparse.ArgumentParser(prog="tvarkit", parents=[common],
                                     description="Exact computations for polyhedral divisors, toric "
                                                 "minimal log discrepancies and torus actions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    pdiv = groups.add_parser("pdiv", help="polyhedral divisors").add_subparsers(dest="cmd", required=True)
    p = pdiv.add_parser("check", parents=[common], help="validate and test properness")
    p.add_argument("file")
    p.set_defaults(func=cmd_pdiv_check)
    p = pdiv.add_parser("eval", parents=[common], help="evaluate at a dual lattice vector")
    p.add_argument("file")
    p.add_argument("-u", required=True, help="comma separated, e.g. -u=2 or -u=1/2,-1")
    p.set_defaults(func=cmd_pdiv_eval)
    p = pdiv.add_parser("classify", parents=[common], help="cone singularity / toroidal / embeddable")
    p.add_argument("file")
    p.set_defaults(func=cmd_pdiv_classify)
    p = pdiv.add_parser("embed", parents=[common], help="embed into a divisor with full-dimensional tail")
    p.add_argument("file")
    p.set_defaults(func=cmd_pdiv_embed)
    p = pdiv.add_parser("embed-check", parents=[common], help="is the second divisor a u-face of the first")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("-u", required=True)
    p.set_defaults(func=cmd_pdiv_embed_check)

    mld = groups.add_parser("mld", help="minimal log discrepancies").add_subparsers(dest="cmd", required=True)
    p = mld.add_parser("toric", parents=[common], help="exact toric mld along an orbit")
    p.add_argument("file")
    p.add_argument("--center", help="rays of the center face, e.g. '1,0;0,1' (default: the whole cone)")
    p.set_defaults(func=cmd_mld_toric)
    p = mld.add_parser("blowup-seq", parents=[common], help="blow-up sequence over a non-lc point")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--dE", required=True, help="discrepancy of the bad divisor, below -1")
    p.add_argument("--others", default="", help="discrepancies of the other divisors, comma separated")
    p.set_defaults(func=cmd_mld_blowup_seq)
    p = mld.add_parser("product-check", parents=[common], help="mld of X vs X times a torus")
    p.add_argument("file")
    p.add_argument("--extra", type=int, required=True)
    p.set_defaults(func=cmd_mld_product_check)

    action = groups.add_parser("action", help="torus actions").add_subparsers(dest="cmd", required=True)
    p = action.add_parser("analyze", parents=[common], help="effectiveness, complexity, grading")
    p.add_argument("file")
    p.set_defaults(func=cmd_action_analyze)

    verify = groups.add_parser("verify", help="batch verification").add_subparsers(dest="cmd", required=True)
    p = verify.add_parser("all", parents=[common], help="check every instance in a directory")
    p.add_argument("dir")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--random", type=int, default=20,
                   help=f"instances per random property ({', '.join(PROPERTIES)})")
    p.set_defaults(func=cmd_verify_all)
    return parser


def run(argv=None, out=None, err=None):
    """Run the CLI; returns ``(exit_code, report_or_None)``."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (EXIT_OK if exc.code == 0 else EXIT_INPUT), None
    as_json = getattr(args, "json", False)
    try:
        report = args.func(args)
    except (InstanceError, UsageError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT, None
    except AssertionError as exc:
        print(f"internal invariant breach: {exc}", file=err)
        return EXIT_INTERNAL, None
    except TvarkitError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INPUT, None
    code = getattr(report, "exit_code", EXIT_OK if report.all_passed else EXIT_FALSE)
    print(report.render_json() if as_json else report.render_text(), file=out)
    return code, report


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
