"""JSON (de)serialization for problem files and reports.

A problem file is self-contained: a field spec plus named algebras,
modules, bimodules, balanced maps, contexts, trivial-extension
declarations, quadruples and complexes.  Names are resolved eagerly and
every referenced object is validated before any command runs.  Reports
are emitted with sorted keys and no volatile content, so identical input
and seed give byte-identical output.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, validate_algebra
from .bimodules import BalancedMap, Bimodule, validate_bimodule
from .complexes import ComplexWindow
from .fields import Field, FieldSpec
from .gpcert import GPCertificate, NotGPWitness, RightTailStep
from .homology import Resolution
from .linalg import Mat
from .modules import FDModule, ModuleHom, validate_module
from .morita import MoritaContext, make_quadruple, validate_context
from .trivext import recognize_trivial_extension

SCHEMA = "gpmorita-v1"


class InputError(ValueError):
    pass


class ValidationFailure(InputError):
    """A named object parsed fine but fails its own invariants."""


# -- scalars and matrices ------------------------------------------------------


def field_to_json(F: Field):
    return "Q" if F.is_rational else {"p": F.p}


def field_from_json(obj) -> Field:
    if obj == "Q":
        return Field(FieldSpec("Q"))
    if isinstance(obj, dict) and "p" in obj:
        return Field(FieldSpec("Fp", obj["p"]))
    raise InputError(f"unrecognized field spec {obj!r}")


def mat_to_json(m: Mat):
    F = m.field
    return {"rows": m.rows, "cols": m.cols,
            "entries": [F.format(x) for row in m.data for x in row]}


def mat_from_json(F: Field, obj) -> Mat:
    try:
        rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed matrix: {e}")
    if len(entries) != rows * cols:
        raise InputError("matrix entry count does not match its shape")
    vals = [F.parse(x) for x in entries]
    data = [vals[i * cols:(i + 1) * cols] for i in range(rows)]
    return Mat(F, data, cols)


# -- named objects ---------------------------------------------------------------


def algebra_to_json(a: Algebra):
    F = a.field
    return {"dim": a.dim,
            "mul": [[[F.format(c) for c in a.mul[i][j]] for j in range(a.dim)]
                    for i in range(a.dim)],
            "unit": [F.format(c) for c in a.unit]}


def algebra_from_json(F: Field, obj, name: str) -> Algebra:
    try:
        dim = obj["dim"]
        mul = [[[F.parse(c) for c in cell] for cell in row] for row in obj["mul"]]
        unit = [F.parse(c) for c in obj["unit"]]
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed algebra {name!r}: {e}")
    return Algebra(F, dim, mul, unit, name=name)


def module_to_json(x: FDModule, algebra_name: str):
    return {"algebra": algebra_name, "dim": x.dim,
            "acts": [mat_to_json(m) for m in x.acts]}


def bimodule_to_json(b: Bimodule, left_name: str, right_name: str):
    return {"left": left_name, "right": right_name, "dim": b.dim,
            "left_acts": [mat_to_json(m) for m in b.left_acts],
            "right_acts": [mat_to_json(m) for m in b.right_acts]}


def complex_to_json(wc: ComplexWindow, algebra_name: str):
    return {"algebra": algebra_name, "lo": wc.lo, "hi": wc.hi,
            "terms": [module_to_json(t, algebra_name) for t in wc.terms],
            "diffs": [mat_to_json(d.mat) for d in wc.diffs]}


# -- the problem file -------------------------------------------------------------


@dataclass
class Problem:
    field: Field
    algebras: dict = dc_field(default_factory=dict)
    modules: dict = dc_field(default_factory=dict)
    bimodules: dict = dc_field(default_factory=dict)
    maps: dict = dc_field(default_factory=dict)
    contexts: dict = dc_field(default_factory=dict)
    extensions: dict = dc_field(default_factory=dict)
    quadruples: dict = dc_field(default_factory=dict)
    complexes: dict = dc_field(default_factory=dict)
    algebra_names: dict = dc_field(default_factory=dict)   # id -> name

    def algebra(self, name: str) -> Algebra:
        if name not in self.algebras:
            raise InputError(f"unknown algebra {name!r}")
        return self.algebras[name]

    def named(self, kind: str, name: str):
        table = getattr(self, kind)
        if name not in table:
            raise InputError(f"unknown {kind[:-1]} {name!r}")
        return table[name]


def load_problem(doc: dict) -> Problem:
    if not isinstance(doc, dict) or "field" not in doc:
        raise InputError("problem file needs a field spec")
    F = field_from_json(doc["field"])
    prob = Problem(F)
    for name, obj in (doc.get("algebras") or {}).items():
        a = algebra_from_json(F, obj, name)
        bad = validate_algebra(a)
        if bad:
            raise ValidationFailure(f"algebra {name!r} invalid: {bad[0].kind} at "
                             f"{bad[0].indices}")
        prob.algebras[name] = a
        prob.algebra_names[id(a)] = name
    for name, obj in (doc.get("modules") or {}).items():
        a = prob.algebra(obj.get("algebra", ""))
        acts = [mat_from_json(F, m) for m in obj.get("acts", [])]
        x = FDModule(a, obj.get("dim", 0), acts, name=name)
        bad = validate_module(x)
        if bad:
            raise ValidationFailure(f"module {name!r} invalid: {bad[0]}")
        prob.modules[name] = x
    for name, obj in (doc.get("bimodules") or {}).items():
        left = prob.algebra(obj.get("left", ""))
        right = prob.algebra(obj.get("right", ""))
        b = Bimodule(left, right, obj.get("dim", 0),
                     [mat_from_json(F, m) for m in obj.get("left_acts", [])],
                     [mat_from_json(F, m) for m in obj.get("right_acts", [])],
                     name=name)
        bad = validate_bimodule(b)
        if bad:
            raise ValidationFailure(f"bimodule {name!r} invalid: {bad[0]}")
        prob.bimodules[name] = b
    for name, obj in (doc.get("maps") or {}).items():
        m = prob.named("bimodules", obj.get("m", ""))
        n = prob.named("bimodules", obj.get("n", ""))
        target = prob.algebra(obj.get("target", ""))
        bm = BalancedMap(m, n, target, mat_from_json(F, obj["mat"]))
        prob.maps[name] = bm
    for name, obj in (doc.get("contexts") or {}).items():
        ctx = MoritaContext(
            prob.algebra(obj.get("A", "")), prob.algebra(obj.get("B", "")),
            prob.named("bimodules", obj.get("M", "")),
            prob.named("bimodules", obj.get("N", "")),
            prob.named("maps", obj.get("phi", "")),
            prob.named("maps", obj.get("psi", "")), name=name)
        bad = validate_context(ctx)
        if bad:
            raise ValidationFailure(f"context {name!r} invalid: {bad[0]}")
        prob.contexts[name] = ctx
    for name, obj in (doc.get("extensions") or {}).items():
        a = prob.algebra(obj.get("algebra", ""))
        ext = recognize_trivial_extension(
            a, mat_from_json(F, obj["subring_rows"]),
            mat_from_json(F, obj["ideal_rows"]), name=name)
        prob.extensions[name] = ext
    for name, obj in (doc.get("quadruples") or {}).items():
        ctx = prob.named("contexts", obj.get("context", ""))
        x = prob.named("modules", obj.get("x", ""))
        y = prob.named("modules", obj.get("y", ""))
        q = make_quadruple(ctx, x, y, mat_from_json(F, obj["f_full"]),
                           mat_from_json(F, obj["g_full"]), name=name)
        from .morita import validate_quadruple
        bad = validate_quadruple(q)
        if bad:
            raise ValidationFailure(f"quadruple {name!r} invalid: {bad[0]}")
        prob.quadruples[name] = q
    for name, obj in (doc.get("complexes") or {}).items():
        a = prob.algebra(obj.get("algebra", ""))
        terms = []
        for k, t in enumerate(obj.get("terms", [])):
            acts = [mat_from_json(F, m) for m in t.get("acts", [])]
            terms.append(FDModule(a, t.get("dim", 0), acts,
                                  name=f"{name}[{k}]"))
        diffs = []
        for k, d in enumerate(obj.get("diffs", [])):
            diffs.append(ModuleHom(terms[k], terms[k + 1], mat_from_json(F, d)))
        prob.complexes[name] = ComplexWindow(obj.get("lo", 0), obj.get("hi", 0),
                                             terms, diffs)
    return prob


def load_problem_file(path: str) -> Problem:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read problem file: {e}")
    return load_problem(doc)


# -- certificates ----------------------------------------------------------------


def certificate_to_json(cert: GPCertificate, algebra_name: str):
    out = {"verdict": cert.verdict, "reason": cert.reason,
           "algebra": algebra_name,
           "module": module_to_json(cert.module, algebra_name),
           "period": cert.period}
    if cert.window is not None:
        out["window"] = complex_to_json(cert.window, algebra_name)
    if cert.kernel_ident is not None:
        out["kernel_ident"] = mat_to_json(cert.kernel_ident.mat)
    if cert.witness is not None:
        w = cert.witness
        wout = {"kind": w.kind, "degree": w.degree}
        if w.resolution is not None:
            res = w.resolution
            wout["resolution"] = {
                "terms": [module_to_json(t, algebra_name) for t in res.terms],
                "maps": [mat_to_json(d.mat) for d in res.maps],
                "aug": mat_to_json(res.aug.mat)}
        if w.steps is not None:
            wout["steps"] = [
                {"stage": module_to_json(st.stage, algebra_name),
                 "alpha": mat_to_json(st.alpha.mat),
                 "target": module_to_json(st.target, algebra_name),
                 "coker_proj": mat_to_json(st.coker_proj.mat)}
                for st in w.steps]
        if w.stage is not None:
            wout["fail_stage"] = module_to_json(w.stage, algebra_name)
            wout["fail_alpha"] = mat_to_json(w.alpha.mat)
            wout["kernel_row"] = mat_to_json(w.kernel_row)
        out["witness"] = wout
    if cert.bound is not None:
        out["bound"] = list(cert.bound)
    return out


def certificate_from_json(a: Algebra, obj) -> GPCertificate:
    F = a.field

    def mod(o):
        return FDModule(a, o["dim"], [mat_from_json(F, m) for m in o["acts"]])

    module = mod(obj["module"])
    window = None
    kernel_ident = None
    if "window" in obj:
        wobj = obj["window"]
        terms = [mod(t) for t in wobj["terms"]]
        diffs = [ModuleHom(terms[k], terms[k + 1], mat_from_json(F, d))
                 for k, d in enumerate(wobj["diffs"])]
        window = ComplexWindow(wobj["lo"], wobj["hi"], terms, diffs)
    if "kernel_ident" in obj and window is not None:
        kernel_ident = ModuleHom(module, window.term(0),
                                 mat_from_json(F, obj["kernel_ident"]))
    witness = None
    if "witness" in obj:
        wobj = obj["witness"]
        resolution = None
        steps = None
        stage = alpha = kernel_row = None
        if "resolution" in wobj:
            robj = wobj["resolution"]
            terms = [mod(t) for t in robj["terms"]]
            maps = [ModuleHom(terms[k + 1], terms[k], mat_from_json(F, d))
                    for k, d in enumerate(robj["maps"])]
            aug = ModuleHom(terms[0], module, mat_from_json(F, robj["aug"]))
            resolution = Resolution(module, terms, maps, aug, [], False)
        if "steps" in wobj:
            steps = []
            for st in wobj["steps"]:
                s_mod = mod(st["stage"])
                t_mod = mod(st["target"])
                al = ModuleHom(s_mod, t_mod, mat_from_json(F, st["alpha"]))
                ck = mat_from_json(F, st["coker_proj"])
                nxt = FDModule(a, ck.cols, _induced_acts(a, t_mod, ck))
                steps.append(RightTailStep(s_mod, al, t_mod,
                                           ModuleHom(t_mod, nxt, ck)))
        if "fail_stage" in wobj:
            stage = mod(wobj["fail_stage"])
            tgt_mat = mat_from_json(F, wobj["fail_alpha"])
            from .modules import free_module
            target = free_module(a, tgt_mat.cols // a.dim if a.dim else 0)
            alpha = ModuleHom(stage, target, tgt_mat)
            kernel_row = mat_from_json(F, wobj["kernel_row"])
        witness = NotGPWitness(wobj["kind"], wobj["degree"],
                               resolution=resolution, steps=steps,
                               stage=stage, alpha=alpha, kernel_row=kernel_row)
    return GPCertificate(obj["verdict"], module, reason=obj.get("reason", ""),
                         period=obj.get("period"), window=window,
                         kernel_ident=kernel_ident, witness=witness,
                         bound=tuple(obj["bound"]) if obj.get("bound") else None)


def _induced_acts(a: Algebra, src: FDModule, proj: Mat):
    from .linalg import solve
    acts = []
    for t in range(a.dim):
        induced = solve(proj, src.acts[t] @ proj)
        if induced is None:
            raise InputError("witness cokernel does not carry an action")
        acts.append(induced)
    return acts


def dumps_report(obj: dict) -> str:
    out = {"schema": SCHEMA}
    out.update(obj)
    return json.dumps(out, sort_keys=True, separators=(",", ":")) + "\n"
