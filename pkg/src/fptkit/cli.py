"""Command-line entry point.

Exit codes: 0 success, 2 usage or parse error, 3 resource budget exhausted,
4 ring not F-pure.  A report is printed for 0, 3 and 4.
"""

from __future__ import annotations

import argparse
import random
import sys
from contextlib import nullcontext
from fractions import Fraction
from pathlib import Path

from . import __version__
from . import fsing
from . import toric
from ._engine import step_budget
from .errors import FptkitError, ResourceError, UsageError
from .formats import (
    ConeFile,
    RingFile,
    format_rational,
    looks_like_cone,
    parse_cone,
    parse_poly_list,
    parse_ring,
    render_ring,
)
from .groebner import IdealHandle
from .report import (
    CITE_BOUND,
    CITE_CANDIDATE,
    CITE_CI,
    CITE_FEDDER,
    CITE_GORENSTEIN,
    CITE_NU,
    CITE_OMEGA,
    CITE_QGOR,
    CITE_TORIC_C,
    CITE_TORIC_GOR,
    Report,
    digest,
)

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_NOT_FPURE = 0, 2, 3, 4


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s.replace("−", "-"))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def _positive(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", default=argparse.SUPPRESS,
                        help="also write the report as JSON ('-' for stdout instead of text)")
    common.add_argument("--budget", type=_positive, metavar="N", default=argparse.SUPPRESS,
                        help="reduction step budget per Gröbner computation")
    common.add_argument("--seed", type=int, metavar="N", default=argparse.SUPPRESS,
                        help="seed recorded in the report (computations are deterministic)")

    parser = argparse.ArgumentParser(prog="fptkit", parents=[common],
                                     description="F-pure thresholds, nu_e and toric invariants.")
    parser.add_argument("--version", action="version", version=f"fptkit {__version__}")
    sub = parser.add_subparsers(dest="cmd", required=True, metavar="COMMAND")

    p = sub.add_parser("fpure", parents=[common], help="Fedder F-purity test")
    p.add_argument("ring")

    p = sub.add_parser("nu", parents=[common], help="table of nu_e")
    p.add_argument("ring")
    p.add_argument("--e-max", type=_positive, default=1)
    p.add_argument("--ideal", metavar="POLYS", help="generators of a, separated by ';'")

    p = sub.add_parser("fpt", parents=[common], help="F-pure threshold bounds and candidate")
    p.add_argument("ring")
    p.add_argument("--e-max", type=_positive, default=2)
    p.add_argument("--ainv", type=_rational)
    p.add_argument("--ideal", metavar="POLYS")

    p = sub.add_parser("pair", parents=[common], help="sharp F-purity of (R, a^t)")
    p.add_argument("ring")
    p.add_argument("--t", type=_rational, required=True)
    p.add_argument("--e", type=_positive, default=1)
    p.add_argument("--ideal", metavar="POLYS")

    p = sub.add_parser("omega-check", parents=[common], help="degree check of n(q-1) - nu_e")
    p.add_argument("ring")
    p.add_argument("--e", type=_positive, default=1)

    p = sub.add_parser("gorenstein", parents=[common], help="quasi-Gorenstein verdict")
    p.add_argument("input", metavar="ring|cone")
    p.add_argument("--e-max", type=_positive, default=2)
    p.add_argument("--ainv", type=_rational)

    p = sub.add_parser("toric", parents=[common], help="polyhedral invariants of a cone")
    p.add_argument("what", choices=["ainv", "gorenstein", "qgor", "present"])
    p.add_argument("cone")
    p.add_argument("--p", type=int, dest="prime", help="prime for 'present' (default: from the file)")
    return parser


# ------------------------------------------------------------------ helpers


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _a_ideal(rf: RingFile, gens_text: str | None) -> IdealHandle | None:
    """The ideal a for nu: --ideal, else the file's a line, else None (maximal ideal)."""
    if gens_text is not None:
        return IdealHandle(rf.ctx, parse_poly_list(rf.ctx, gens_text))
    if rf.a_generators is not None:
        return rf.a_ideal()
    return None


def _nu_rows(report: Report, I: IdealHandle, e_max: int, a: IdealHandle | None) -> fsing.NuTable:
    table = fsing.NuTable(I.ctx.p)
    for e in range(1, e_max + 1):
        nu = fsing.nu_e_maximal(I, e) if a is None else fsing.nu_e_general(I, a, e)
        row = fsing.NuRow(e, I.ctx.p ** e, nu)
        table.rows.append(row)
        report.rows.append({"e": e, "q": row.q, "nu": "NOT_F_PURE" if nu is fsing.NOT_F_PURE else nu})
        if nu is fsing.NOT_F_PURE:
            break
    return table


def _fpt_dict(est: fsing.FptEstimate) -> dict:
    return {"lower": est.lower, "upper": est.upper, "candidate": est.exact_candidate, "certified": est.certified}


def _not_fpure(report: Report):
    report.verdict = "not F-pure"
    report.status = EXIT_NOT_FPURE
    report.cite(CITE_FEDDER)


# ------------------------------------------------------------------ commands


def cmd_fpure(args, report: Report):
    rf = parse_ring(_read(args.ring))
    rf.require_homogeneous()
    ok = fsing.fedder_fpure(rf.ideal())
    report.result["f_pure"] = ok
    report.cite(CITE_FEDDER)
    if ok:
        report.verdict = "F-pure"
    else:
        _not_fpure(report)


def cmd_nu(args, report: Report):
    rf = parse_ring(_read(args.ring))
    rf.require_homogeneous()
    a = _a_ideal(rf, args.ideal)
    table = _nu_rows(report, rf.ideal(), args.e_max, a)
    report.result["ideal"] = "m" if a is None else [str(g) for g in a.generators]
    report.cite(CITE_NU)
    if not table.f_pure():
        _not_fpure(report)
    elif not table.monotone():
        report.warnings.append("nu_{e+1} >= p nu_e fails: inconsistent table")


def cmd_fpt(args, report: Report):
    rf = parse_ring(_read(args.ring))
    rf.require_homogeneous()
    a = _a_ideal(rf, args.ideal)
    ainv = args.ainv if args.ainv is not None else rf.ainv
    if a is not None and ainv is not None:
        report.warnings.append("the a-invariant bound applies to fpt(m) only; ignored for this ideal")
        ainv = None
    table = _nu_rows(report, rf.ideal(), args.e_max, a)
    report.cite(CITE_NU)
    est = fsing.estimate_from_table(table, ainv)
    if est is fsing.NOT_F_PURE:
        _not_fpure(report)
        return
    report.fpt = _fpt_dict(est)
    report.cite(CITE_CANDIDATE)
    if ainv is not None:
        report.cite(CITE_BOUND)
    if est.exact_candidate is not None and est.certified is None:
        report.warnings.append("the candidate is the repeated ratio nu_e/(p^e - 1), not a proof")
    if args.e_max < 2:
        report.warnings.append("a candidate needs at least two rows (--e-max 2)")


def cmd_pair(args, report: Report):
    rf = parse_ring(_read(args.ring))
    rf.require_homogeneous()
    a = _a_ideal(rf, args.ideal)
    I = rf.ideal()
    res = fsing.sharp_fpure_pair(I, a, args.t, args.e)
    report.cite(CITE_NU)
    if res is fsing.NOT_F_PURE:
        _not_fpure(report)
        return
    q = rf.p ** args.e
    nu = fsing.nu_e_maximal(I, args.e) if a is None else fsing.nu_e_general(I, a, args.e)
    report.rows.append({"e": args.e, "q": q, "nu": nu})
    report.result.update(t=args.t, threshold=-((-(q - 1) * args.t) // 1), sharply_f_pure=res)
    report.verdict = "sharply F-pure" if res else "not sharply F-pure"


def cmd_omega(args, report: Report):
    rf = parse_ring(_read(args.ring))
    rf.require_homogeneous()
    data = fsing.omega_degree_data(rf.ideal(), args.e)
    report.cite(CITE_OMEGA)
    if data.nu is fsing.NOT_F_PURE:
        report.rows.append({"e": data.e, "q": data.q, "nu": "NOT_F_PURE"})
        _not_fpure(report)
        return
    report.rows.append({"e": data.e, "q": data.q, "nu": data.nu})
    report.result.update(
        target=data.target,
        mingens_degrees=list(data.degrees),
        membership=data.membership,
        containment=data.containment,
    )
    report.verdict = "pass" if data.ok else "fail"


def _gorenstein_ring(args, text: str, report: Report):
    rf = parse_ring(text)
    rf.require_homogeneous()
    I = rf.ideal()
    ainv = args.ainv if args.ainv is not None else rf.ainv
    if ainv is None:
        ainv = fsing.ci_a_invariant(I)
        report.warnings.append(f"a(R) = {format_rational(ainv)} from the complete-intersection formula")
        report.cite(CITE_CI)
    table = _nu_rows(report, I, args.e_max, None)
    est = fsing.estimate_from_table(table, ainv)
    report.cite(CITE_NU, CITE_BOUND, CITE_GORENSTEIN)
    if est is fsing.NOT_F_PURE:
        _not_fpure(report)
        return
    report.fpt = _fpt_dict(est)
    v = fsing.gorenstein_criterion(est, ainv)
    report.result.update(a_invariant=v.a_invariant, reason=v.reason)
    report.verdict = v.verdict
    report.warnings.append(v.hypothesis_note)


def _gorenstein_cone(text: str, report: Report):
    cf = parse_cone(text)
    report.warnings.extend(cf.warnings)
    s = toric.summarize(cf.cone(), cf.grading)
    report.warnings.extend(s.warnings)
    report.cite(CITE_TORIC_GOR, CITE_TORIC_C)
    report.result.update(gorenstein=s.gorenstein, a_sigma=s.a_sigma)
    if s.qgor is toric.NOT_QGOR:
        report.result["qgor"] = "NOT_QGOR"
        report.result["reason"] = "omega^(c) is principal for no c, so R is not Q-Gorenstein"
        report.verdict = fsing.NOT_QGOR_VERDICT
        return
    if s.qgor is not None and s.hb.standard_graded:
        v = fsing.gorenstein_from_toric(s.qgor.fpt, s.a_sigma)
        report.fpt = {"lower": None, "upper": -s.a_sigma, "candidate": None, "certified": s.qgor.fpt}
        report.cite(CITE_QGOR, CITE_GORENSTEIN)
        report.result["reason"] = v.reason
        report.verdict = v.verdict
        if (v.verdict == fsing.QGOR) != s.gorenstein:
            report.warnings.append("polyhedral fpt and the Gorenstein test disagree")
    else:
        # normal toric rings are Cohen-Macaulay, so quasi-Gorenstein means Gorenstein
        report.result["reason"] = "omega principal" if s.gorenstein else "omega not principal"
        report.verdict = fsing.QGOR if s.gorenstein else fsing.NOT_QGOR_VERDICT


def cmd_gorenstein(args, report: Report):
    text = _read(args.input)
    if looks_like_cone(text):
        _gorenstein_cone(text, report)
    else:
        _gorenstein_ring(args, text, report)


def cmd_toric(args, report: Report):
    cf: ConeFile = parse_cone(_read(args.cone))
    report.warnings.extend(cf.warnings)
    cone = cf.cone()
    hb = toric.hilbert_basis(cone, cf.grading)
    report.result["hilbert_basis"] = [list(h) for h in hb.basis]
    if args.what == "ainv":
        P = toric.newton_polyhedron(hb)
        omega = toric.omega_mingens(cone, 1, hb)
        a = -min(toric.lambda_m(m, P) for m in omega.generators)
        report.result.update(
            omega_generators=[list(m) for m in omega.generators],
            a_sigma=a,
            c_m=-a,
            standard_graded=hb.standard_graded,
        )
        report.cite(CITE_TORIC_C)
    elif args.what == "gorenstein":
        g = toric.gorenstein_toric(cone)
        report.result["gorenstein"] = g
        report.verdict = "Gorenstein" if g else "not Gorenstein"
        report.cite(CITE_TORIC_GOR)
    elif args.what == "qgor":
        qg = toric.qgor_index_and_degree(cone, cf.grading, hb)
        report.cite(CITE_QGOR)
        if qg is toric.NOT_QGOR:
            report.result["qgor"] = "NOT_QGOR"
            report.verdict = "not Q-Gorenstein"
        else:
            report.result.update(index_c=qg.index, generator=list(qg.generator), degree_D=qg.degree)
            report.fpt = {"lower": None, "upper": None, "candidate": None, "certified": qg.fpt}
            if not hb.standard_graded:
                report.fpt = None
                report.result["D_over_c"] = qg.fpt
            report.warnings.extend(qg.warnings)
            report.verdict = "Q-Gorenstein"
    else:
        p = args.prime if args.prime is not None else cf.p
        if p is None:
            raise UsageError("no prime: add 'p = ...' to the cone file or pass --p")
        I, ctx = toric.toric_present(hb, p)
        ring = RingFile(ctx, I.generators)
        report.result.update(generators=[str(g) for g in I.generators], ring_file=render_ring(ring))


COMMANDS = {
    "fpure": cmd_fpure,
    "nu": cmd_nu,
    "fpt": cmd_fpt,
    "pair": cmd_pair,
    "omega-check": cmd_omega,
    "gorenstein": cmd_gorenstein,
    "toric": cmd_toric,
}


def _input_path(args) -> str:
    for attr in ("ring", "input", "cone"):
        if hasattr(args, attr):
            return getattr(args, attr)
    return ""


def cli_dispatch(argv: list[str] | None = None, stdout=None, stderr=None) -> tuple[int, Report | None]:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None

    path = _input_path(args)
    try:
        sha = digest(Path(path).read_bytes())
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror}", file=stderr)
        return EXIT_USAGE, None
    report = Report(command="fptkit " + " ".join(argv), input_sha=sha)
    seed = getattr(args, "seed", None)
    if seed is not None:
        random.seed(seed)
        report.result["seed"] = seed
    budget = getattr(args, "budget", None)
    try:
        with step_budget(budget) if budget is not None else nullcontext():
            COMMANDS[args.cmd](args, report)
    except ResourceError as exc:
        report.status = EXIT_RESOURCE
        report.verdict = None
        report.warnings.append(f"resource limit: {exc}")
    except FptkitError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE, None

    json_path = getattr(args, "json", None)
    if json_path == "-":
        stdout.write(report.to_json() + "\n")
    else:
        stdout.write(report.to_text())
        if json_path:
            Path(json_path).write_text(report.to_json() + "\n", encoding="utf-8")
    return report.status, report


def main(argv: list[str] | None = None) -> int:
    code, _ = cli_dispatch(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
