"""Batch front end: read a self-contained JSON problem file, dispatch to
the engine, emit a deterministic report.

Exit codes: 0 pass/ok, 1 fail (with an embedded witness), 2 unknown or
undetermined, 3 input error.  Identical input and seed give byte-identical
reports; `verify-report` re-checks the witnesses embedded in a previous
report against the same problem file.
"""
from __future__ import annotations

import argparse
import json
import sys

from .complexes import is_exact, total_exactness
from .engine import (
    EngineError, audit_equivalence, build_total_resolution, check_compat,
    check_conditions,
)
from .gpcert import certify_gorenstein_projective
from .jsonio import (
    InputError, ValidationFailure, certificate_from_json, certificate_to_json,
    dumps_report, load_problem_file, mat_to_json,
)
from .modules import Undetermined
from .morita import build_ring, classify_injectives, classify_projectives, \
    quadruple_to_module
from .nctensor import (
    NcTensorError, build_exact_context, build_nc_tensor, iso_with_morita,
    nc_morita_presentation, swap_context, swap_quadruple_generic,
)
from .verify import verify_certificate

OK, FAIL, UNKNOWN, BAD_INPUT = 0, 1, 2, 3


def _emit(args, payload: dict) -> None:
    text = dumps_report(payload)
    if args.json:
        sys.stdout.write(text)
    else:
        _pretty(payload)


def _pretty(payload: dict) -> None:
    for key in sorted(payload):
        if key in ("schema",):
            continue
        print(f"{key}: {json.dumps(payload[key], sort_keys=True)}")


def _clause(c) -> dict:
    return {"name": c.name, "holds": c.holds, "detail": c.detail}


def _criterion_payload(prob, rep) -> dict:
    a_name = _alg_name(prob, rep.coker_g_cert.module.algebra)
    b_name = _alg_name(prob, rep.coker_f_cert.module.algebra)
    return {
        "overall": rep.overall,
        "failing": rep.failing,
        "clauses": [_clause(rep.iso_b1), _clause(rep.iso_b2), _clause(rep.iso_b3)],
        "coker_g_certificate": certificate_to_json(rep.coker_g_cert, a_name),
        "coker_f_certificate": certificate_to_json(rep.coker_f_cert, b_name),
    }


def _alg_name(prob, algebra) -> str:
    return prob.algebra_names.get(id(algebra), algebra.name or "anonymous")


def _register(prob, name, algebra):
    prob.algebras[name] = algebra
    prob.algebra_names[id(algebra)] = name
    return name


def cmd_validate(args, prob) -> int:
    payload = {"command": "validate",
               "counts": {k: len(getattr(prob, k)) for k in
                          ("algebras", "modules", "bimodules", "maps",
                           "contexts", "extensions", "quadruples",
                           "complexes")},
               "verdict": "ok"}
    _emit(args, payload)
    return OK


def cmd_build_ring(args, prob) -> int:
    ctx = prob.named("contexts", args.context)
    mr = build_ring(ctx)
    payload = {"command": "build-ring", "context": args.context,
               "ring_dim": mr.ring.dim,
               "blocks": {"A": ctx.A.dim, "N": ctx.N.dim, "M": ctx.M.dim,
                          "B": ctx.B.dim},
               "verdict": "ok"}
    _emit(args, payload)
    return OK


def cmd_classify(args, prob) -> int:
    ctx = prob.named("contexts", args.context)
    mr = build_ring(ctx)
    projs = classify_projectives(ctx, args.seed)
    injs = classify_injectives(ctx, args.seed)
    payload = {"command": "classify", "context": args.context,
               "ring_dim": mr.ring.dim,
               "projectives": [{"name": q.name, "x_dim": q.x.dim,
                                "y_dim": q.y.dim} for q in projs],
               "injectives": [{"name": q.name, "x_dim": q.x.dim,
                               "y_dim": q.y.dim} for q in injs],
               "verdict": "ok"}
    _emit(args, payload)
    return OK


def cmd_check_gp(args, prob) -> int:
    ext = prob.named("extensions", args.extension)
    ctx = prob.named("contexts", args.context)
    q = prob.named("quadruples", args.quadruple)
    rep = check_conditions(ext, ctx, q, args.window, args.period_bound,
                           args.seed)
    payload = {"command": "check-gp", "quadruple": args.quadruple,
               "verdict": rep.overall}
    payload.update(_criterion_payload(prob, rep))
    _emit(args, payload)
    return {"pass": OK, "fail": FAIL, "unknown": UNKNOWN}[rep.overall]


def cmd_certify_gp(args, prob) -> int:
    if args.module:
        mod = prob.named("modules", args.module)
        a_name = _alg_name(prob, mod.algebra)
        tag = args.module
    else:
        ctx = prob.named("contexts", args.context)
        q = prob.named("quadruples", args.quadruple)
        mr = build_ring(ctx)
        mod = quadruple_to_module(mr, q)
        a_name = _register(prob, f"ring({args.context})", mr.ring)
        tag = args.quadruple
    cert = certify_gorenstein_projective(mod, args.window, args.period_bound,
                                         args.seed, args.budget)
    payload = {"command": "certify-gp", "module": tag,
               "verdict": cert.verdict,
               "certificate": certificate_to_json(cert, a_name)}
    _emit(args, payload)
    return {"gp": OK, "not_gp": FAIL, "unknown": UNKNOWN}[cert.verdict]


def cmd_build_resolution(args, prob) -> int:
    ext = prob.named("extensions", args.extension)
    ctx = prob.named("contexts", args.context)
    q = prob.named("quadruples", args.quadruple)
    rep = check_conditions(ext, ctx, q, args.window, args.period_bound,
                           args.seed)
    if not rep.passed:
        payload = {"command": "build-resolution", "quadruple": args.quadruple,
                   "verdict": "fail",
                   "detail": f"criterion verdict {rep.overall}",
                   "failing": rep.failing}
        _emit(args, payload)
        return FAIL if rep.overall == "fail" else UNKNOWN
    span = min(args.window, 3)
    asm = build_total_resolution(ext, ctx, q, rep, window=span, seed=args.seed)
    ring_name = _alg_name(prob, asm.tcx.algebra)
    payload = {"command": "build-resolution", "quadruple": args.quadruple,
               "verdict": "ok", "window": [asm.tcx.lo, asm.tcx.hi],
               "term_dims": [t.dim for t in asm.tcx.terms],
               "exact": is_exact(asm.tcx),
               "totally_exact": total_exactness(asm.tcx, seed=args.seed),
               "kernel_is_module": asm.kernel_iso.is_iso()}
    _emit(args, payload)
    return OK


def cmd_check_compat(args, prob) -> int:
    bim = prob.named("bimodules", args.bimodule)
    left = [prob.named("complexes", n) for n in (args.left_tests or [])]
    right = [prob.named("complexes", n) for n in (args.right_tests or [])]
    v = check_compat(bim, left, right, bound=args.window, seed=args.seed)
    witness = dict(v.witness) if v.witness else None
    if witness is not None and "test" in witness:
        names = args.left_tests if witness.get("side") == "left" else args.right_tests
        witness["test_name"] = names[witness["test"]]
    payload = {"command": "check-compat", "bimodule": args.bimodule,
               "verdict": v.kind, "reason": v.reason,
               "proof_grade": v.proof_grade,
               "inj_dims": list(v.inj_dims) if v.inj_dims else None,
               "witness": witness, "tests_used": v.tests_used}
    _emit(args, payload)
    if v.kind == "not_compatible":
        return FAIL
    if v.kind == "weakly_compatible":
        return OK
    return UNKNOWN


def cmd_nc_tensor(args, prob) -> int:
    ctx = prob.named("contexts", args.context)
    if args.mode == "build":
        nc = build_nc_tensor(ctx)
        exact = build_exact_context(ctx)
        payload = {"command": "nc-tensor", "mode": "build",
                   "context": args.context, "ring_dim": nc.ring.dim,
                   "tensor_block_dim": nc.mn.dim,
                   "exact_context": {"dims": [exact.dim_r, exact.dim_s,
                                              exact.dim_t, exact.dim_w],
                                     "exact": exact.exact,
                                     "euler": exact.euler},
                   "verdict": "ok" if exact.exact else "fail"}
        _emit(args, payload)
        return OK if exact.exact else FAIL
    if args.mode == "iso":
        nc = build_nc_tensor(ctx)
        pres = nc_morita_presentation(nc)
        bij = iso_with_morita(pres)
        payload = {"command": "nc-tensor", "mode": "iso",
                   "context": args.context,
                   "ring_dim": nc.ring.dim,
                   "bijection": mat_to_json(bij), "verdict": "ok"}
        _emit(args, payload)
        return OK
    # mode == "check": the mirrored criterion over a (phi, 0) context
    if not args.extension or not args.quadruple:
        raise InputError("nc-tensor check needs --extension and --quadruple")
    q = prob.named("quadruples", args.quadruple)
    ext = prob.named("extensions", args.extension)
    ctx_sw = swap_context(ctx)
    q_sw = swap_quadruple_generic(ctx_sw, q)
    rep = check_conditions(ext, ctx_sw, q_sw, args.window, args.period_bound,
                           args.seed)
    payload = {"command": "nc-tensor", "mode": "check",
               "quadruple": args.quadruple, "verdict": rep.overall}
    payload.update(_criterion_payload(prob, rep))
    _emit(args, payload)
    return {"pass": OK, "fail": FAIL, "unknown": UNKNOWN}[rep.overall]


def cmd_audit(args, prob) -> int:
    ext = prob.named("extensions", args.extension)
    ctx = prob.named("contexts", args.context)
    family = [prob.named("quadruples", n) for n in args.quadruples]
    report = audit_equivalence(ext, ctx, family, args.window,
                               args.period_bound, args.seed)
    payload = {"command": "audit",
               "entries": [{"name": e.name, "criterion": e.criterion,
                            "failing": e.failing, "certificate": e.certificate,
                            "classification": e.classification,
                            "detail": e.detail} for e in report.entries],
               "bimodules": {k: {"verdict": v.kind, "reason": v.reason,
                                 "proof_grade": v.proof_grade}
                             for k, v in report.bimodule_verdicts.items()},
               "semi_weak": {k: {"verdict": v.kind, "reason": v.reason,
                                 "witness": v.witness}
                             for k, v in report.semi_weak_verdicts.items()},
               "verdict": "ok" if report.consistent else "fail"}
    _emit(args, payload)
    if not report.consistent:
        return FAIL
    if any(e.classification == "undetermined" for e in report.entries):
        return UNKNOWN
    return OK


def cmd_verify_report(args, prob) -> int:
    try:
        with open(args.report) as fh:
            rep = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        print(f"input error: cannot read report: {e}", file=sys.stderr)
        return BAD_INPUT
    cmd = rep.get("command")
    problems: list[str] = []
    if cmd == "certify-gp":
        problems = _verify_cert_json(prob, rep.get("certificate", {}))
    elif cmd in ("check-gp", "nc-tensor"):
        for key in ("coker_g_certificate", "coker_f_certificate"):
            if key in rep:
                problems += _verify_cert_json(prob, rep[key])
        for clause in rep.get("clauses", []):
            if not isinstance(clause.get("holds"), bool):
                problems.append(f"clause {clause.get('name')} malformed")
    elif cmd == "check-compat":
        v = rep.get("verdict")
        if v == "not_compatible":
            w = rep.get("witness") or {}
            if "test_name" not in w:
                problems.append("refutation without a named witness")
            else:
                from .engine import recheck_compat_witness
                bim = prob.named("bimodules", rep.get("bimodule", ""))
                wc = prob.named("complexes", w["test_name"])
                if not recheck_compat_witness(bim, wc, rep.get("reason", ""), w):
                    problems.append("compat witness does not re-verify")
    else:
        print(f"input error: no verifier for command {cmd!r}", file=sys.stderr)
        return BAD_INPUT
    payload = {"command": "verify-report", "target": cmd,
               "problems": problems,
               "verdict": "ok" if not problems else "fail"}
    _emit(args, payload)
    return OK if not problems else FAIL


def _verify_cert_json(prob, cert_obj) -> list[str]:
    name = cert_obj.get("algebra", "")
    algebra = prob.algebras.get(name)
    if algebra is None and name.startswith("ring(") and name.endswith(")"):
        ctx_name = name[5:-1]
        if ctx_name in prob.contexts:
            algebra = build_ring(prob.contexts[ctx_name]).ring
    if algebra is None:
        return [f"certificate references unknown algebra {name!r}"]
    cert = certificate_from_json(algebra, cert_obj)
    return verify_certificate(cert, cert.module)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gpmorita", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, problem=True):
        if problem:
            sp.add_argument("problem", help="JSON problem file")
        sp.add_argument("--json", action="store_true",
                        help="emit the machine-readable report")
        sp.add_argument("--window", type=int, default=6)
        sp.add_argument("--period-bound", type=int, default=12)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--budget", type=int, default=600)
        return sp

    common(sub.add_parser("validate"))
    sp = common(sub.add_parser("build-ring"))
    sp.add_argument("--context", required=True)
    sp = common(sub.add_parser("classify"))
    sp.add_argument("--context", required=True)
    sp = common(sub.add_parser("check-gp"))
    sp.add_argument("--extension", required=True)
    sp.add_argument("--context", required=True)
    sp.add_argument("--quadruple", required=True)
    sp = common(sub.add_parser("certify-gp"))
    sp.add_argument("--module")
    sp.add_argument("--context")
    sp.add_argument("--quadruple")
    sp = common(sub.add_parser("build-resolution"))
    sp.add_argument("--extension", required=True)
    sp.add_argument("--context", required=True)
    sp.add_argument("--quadruple", required=True)
    sp = common(sub.add_parser("check-compat"))
    sp.add_argument("--bimodule", required=True)
    sp.add_argument("--left-tests", nargs="*", default=[])
    sp.add_argument("--right-tests", nargs="*", default=[])
    sp = sub.add_parser("nc-tensor")
    sp.add_argument("mode", choices=["build", "iso", "check"])
    common(sp)
    sp.add_argument("--context", required=True)
    sp.add_argument("--extension")
    sp.add_argument("--quadruple")
    sp = common(sub.add_parser("audit"))
    sp.add_argument("--extension", required=True)
    sp.add_argument("--context", required=True)
    sp.add_argument("--quadruples", nargs="+", required=True)
    sp = common(sub.add_parser("verify-report"))
    sp.add_argument("--report", required=True)
    return p


HANDLERS = {
    "validate": cmd_validate,
    "build-ring": cmd_build_ring,
    "classify": cmd_classify,
    "check-gp": cmd_check_gp,
    "certify-gp": cmd_certify_gp,
    "build-resolution": cmd_build_resolution,
    "check-compat": cmd_check_compat,
    "nc-tensor": cmd_nc_tensor,
    "audit": cmd_audit,
    "verify-report": cmd_verify_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        prob = load_problem_file(args.problem)
    except ValidationFailure as e:
        print(f"validation failed: {e}", file=sys.stderr)
        return FAIL
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return BAD_INPUT
    try:
        return HANDLERS[args.command](args, prob)
    except ValidationFailure as e:
        print(f"validation failed: {e}", file=sys.stderr)
        return FAIL
    except InputError as e:
        print(f"input error: {e}", file=sys.stderr)
        return BAD_INPUT
    except Undetermined as e:
        print(f"undetermined: {e}", file=sys.stderr)
        return UNKNOWN
    except (EngineError, NcTensorError) as e:
        print(f"failed: {e}", file=sys.stderr)
        return FAIL
    except ValueError as e:
        # mismatched or malformed mathematical inputs surface here
        print(f"input error: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
