"""Independent re-verification of Gorenstein-projectivity certificates.

This module deliberately avoids the builder's machinery: projectivity is
decided by splitting a free presentation (no idempotents, no covers),
exactness and Hom-complex exactness are recomputed from ranks, and
periodicity is checked against the stored window.  Shared ground is only
the exact linear algebra and the module/hom containers.
"""
from __future__ import annotations

from .algebra import opposite_algebra
from .complexes import ComplexWindow
from .linalg import Mat, in_row_space, left_kernel, rank
from .modules import (
    FDModule, ModuleHom, dual_module, free_module, hom_space, regular_module,
)
from .bimodules import _vec
from .gpcert import GPCertificate, NotGPWitness


def projective_by_splitting(m: FDModule) -> bool:
    """m is projective iff its canonical free presentation splits; the
    splitting is one linear system (intertwining + section condition)."""
    a = m.algebra
    F = a.field
    if m.dim == 0:
        return True
    if "proj_by_split" in m._cache:
        return m._cache["proj_by_split"]
    rows = []
    for i in range(m.dim):
        for t in range(a.dim):
            rows.append(m.acts[t].row(i))
    phi = Mat.from_rows(F, rows, m.dim)          # A^{dim m} ->> m
    free = free_module(a, m.dim)
    if rank(phi) != m.dim:
        m._cache["proj_by_split"] = False
        return False
    from .complexes import solve_module_hom
    sec = solve_module_hom(m, free, post=phi, post_rhs=Mat.identity(F, m.dim))
    m._cache["proj_by_split"] = sec is not None
    return sec is not None


def _window_is_complex(wc: ComplexWindow) -> str | None:
    for i in range(wc.lo, wc.hi):
        d = wc.diff(i)
        if (d.mat.rows, d.mat.cols) != (wc.term(i).dim, wc.term(i + 1).dim):
            return f"differential {i} has wrong shape"
        if not d.intertwines():
            return f"differential {i} is not a module map"
    for i in range(wc.lo, wc.hi - 1):
        if not (wc.diff(i).mat @ wc.diff(i + 1).mat).is_zero():
            return f"d.d != 0 at {i}"
    return None


def _window_exact(wc: ComplexWindow) -> str | None:
    for i in range(wc.lo + 1, wc.hi):
        ker = wc.term(i).dim - rank(wc.diff(i).mat)
        if ker != rank(wc.diff(i - 1).mat):
            return f"not exact at {i}"
    return None


def _hom_complex(wc: ComplexWindow, y: FDModule):
    F = y.algebra.field
    bases = [hom_space(wc.term(i), y) for i in range(wc.lo, wc.hi + 1)]
    maps = []
    from .linalg import solve_left
    for i in range(wc.lo, wc.hi):
        src = bases[i - wc.lo + 1]
        dst = bases[i - wc.lo]
        if not src or not dst:
            maps.append(Mat.zeros(F, len(src), len(dst)))
            continue
        stacked = Mat.vstack([_vec(h.mat) for h in dst])
        rows = []
        for h in src:
            c = solve_left(stacked, _vec(wc.diff(i).mat @ h.mat))
            if c is None:
                return None, None
            rows.append(c.row(0))
        maps.append(Mat.from_rows(F, rows, len(dst)))
    return [len(b) for b in bases], maps


def _window_totally_exact(wc: ComplexWindow) -> str | None:
    reg = regular_module(wc.algebra)
    dims, maps = _hom_complex(wc, reg)
    if dims is None:
        return "hom complex failed to assemble"
    for i in range(wc.lo + 1, wc.hi):
        into = maps[i - wc.lo]
        out_of = maps[i - 1 - wc.lo]
        if dims[i - wc.lo] - rank(out_of) != rank(into):
            return f"Hom(-, A) complex not exact at {i}"
    return None


def _window_periodic(wc: ComplexWindow, p: int) -> str | None:
    """Literal periodicity of the stored window (terms and differentials
    repeat); the builders emit genuinely repeating windows."""
    for i in range(wc.lo, wc.hi + 1 - p):
        a, b = wc.term(i), wc.term(i + p)
        if a.dim != b.dim or any(a.acts[t] != b.acts[t] for t in range(a.algebra.dim)):
            return f"terms at {i} and {i + p} differ"
    for i in range(wc.lo, wc.hi - p):
        if wc.diff(i).mat != wc.diff(i + p).mat:
            return f"differentials at {i} and {i + p} differ"
    return None


def _self_injective_by_splitting(algebra) -> bool:
    aop = opposite_algebra(algebra)
    return projective_by_splitting(dual_module(regular_module(aop), algebra))


def _approximation_property(alpha: ModuleHom) -> bool:
    """Hom(alpha, A): Hom(P, A) -> Hom(stage, A) surjective."""
    reg = regular_module(alpha.source.algebra)
    src_homs = hom_space(alpha.target, reg)
    dst_homs = hom_space(alpha.source, reg)
    if not dst_homs:
        return True
    stacked = Mat.vstack([_vec(h.mat) for h in dst_homs])
    images = [alpha.mat @ h.mat for h in src_homs]
    if not images:
        return False
    img_rows = Mat.vstack([_vec(m) for m in images])
    return rank(img_rows) == len(dst_homs)


def _verify_right_tail_chain(x: FDModule, steps, upto: int) -> str | None:
    cur = x
    for j in range(upto):
        st = steps[j]
        if st.stage.dim != cur.dim or st.stage.acts != cur.acts:
            return f"chain stage {j} does not match"
        if not st.alpha.intertwines():
            return f"approximation {j} is not a module map"
        if rank(st.alpha.mat) != st.stage.dim:
            return f"approximation {j} is not injective"
        if not projective_by_splitting(st.target):
            return f"approximation target {j} is not projective"
        if not _approximation_property(st.alpha):
            return f"map {j} is not a projective approximation"
        if not st.coker_proj.is_surjective():
            return f"cokernel projection {j} is not surjective"
        if not (st.alpha.mat @ st.coker_proj.mat).is_zero():
            return f"cokernel projection {j} does not kill the image"
        if rank(st.coker_proj.mat) != st.target.dim - st.stage.dim:
            return f"cokernel {j} has the wrong dimension"
        cur = st.coker_proj.target
    return None


def verify_certificate(cert: GPCertificate, x: FDModule) -> list[str]:
    """Re-check a certificate against the module it claims to describe;
    returns the list of discrepancies (empty = verified)."""
    out = []
    if cert.module.dim != x.dim or cert.module.acts != x.acts:
        return ["certificate is about a different module"]
    if cert.verdict == "gp":
        wc, ki = cert.window, cert.kernel_ident
        if wc is None or ki is None:
            return ["gp certificate lacks its window"]
        msg = _window_is_complex(wc)
        if msg:
            return [msg]
        for i in range(wc.lo, wc.hi + 1):
            if not projective_by_splitting(wc.term(i)):
                return [f"term {i} is not projective"]
        msg = _window_exact(wc) or _window_totally_exact(wc)
        if msg:
            return [msg]
        if cert.period is not None:
            msg = _window_periodic(wc, cert.period)
            if msg:
                return [msg]
        elif cert.reason == "self-injective":
            if not _self_injective_by_splitting(x.algebra):
                return ["algebra is not self-injective"]
        else:
            return ["gp certificate needs a period or self-injectivity"]
        if not ki.intertwines() or rank(ki.mat) != x.dim:
            return ["kernel identification is not an embedding"]
        ker_rows = left_kernel(wc.diff(0).mat)
        if ker_rows.rows != x.dim or not in_row_space(ker_rows, ki.mat):
            return ["kernel identification does not hit ker(d^0)"]
        return []
    if cert.verdict == "not_gp":
        w = cert.witness
        if w is None:
            return ["refutation lacks a witness"]
        if w.kind == "non_vanishing_ext":
            return _verify_ext_witness(x, w)
        if w.kind == "non_injective_approximation":
            msg = _verify_right_tail_chain(x, w.steps or [], len(w.steps or []))
            if msg:
                return [msg]
            stage = w.stage
            expected = x if not w.steps else w.steps[-1].coker_proj.target
            if stage.dim != expected.dim or stage.acts != expected.acts:
                return ["witness stage does not continue the chain"]
            if not w.alpha.intertwines():
                return ["witness approximation is not a module map"]
            if not _approximation_property(w.alpha):
                return ["witness map is not a projective approximation"]
            if not projective_by_splitting(w.alpha.target):
                return ["witness target is not projective"]
            if w.kernel_row is None or w.kernel_row.is_zero():
                return ["witness kernel row is zero"]
            if not (w.kernel_row @ w.alpha.mat).is_zero():
                return ["witness kernel row is not killed"]
            return []
        if w.kind == "homology_obstruction":
            msg = _verify_right_tail_chain(x, w.steps or [], len(w.steps or []))
            if msg:
                return [msg]
            return _verify_homology_obstruction(x, w)
        return [f"unknown witness kind {w.kind}"]
    if cert.verdict == "unknown":
        return []
    return [f"unknown verdict {cert.verdict}"]


def _verify_ext_witness(x: FDModule, w: NotGPWitness) -> list[str]:
    res = w.resolution
    if res is None or w.degree < 1 or w.degree >= len(res.terms):
        return ["ext witness out of range"]
    # the witness resolution must be an exact complex of projectives over x
    if not res.aug.is_surjective():
        return ["witness resolution does not surject onto the module"]
    if res.aug.source is not res.terms[0]:
        return ["witness resolution is misassembled"]
    if res.module.dim != x.dim or res.module.acts != x.acts:
        return ["witness resolution resolves a different module"]
    for t in res.terms:
        if not projective_by_splitting(t):
            return ["witness resolution has a non-projective term"]
    prev = res.aug
    for d in res.maps:
        if not d.intertwines():
            return ["witness resolution map is not a module map"]
        if not (d.mat @ prev.mat).is_zero():
            return ["witness resolution is not a complex"]
        ker = prev.source.dim - rank(prev.mat)
        if rank(d.mat) != ker:
            return ["witness resolution is not exact"]
        prev = d
    # Hom-complex homology at the claimed degree
    reg = regular_module(x.algebra)
    bases = [hom_space(t, reg) for t in res.terms]
    from .linalg import solve_left
    deltas = []
    F = x.algebra.field
    for j, d in enumerate(res.maps):
        src, dst = bases[j], bases[j + 1]
        if not src or not dst:
            deltas.append(Mat.zeros(F, len(src), len(dst)))
            continue
        stacked = Mat.vstack([_vec(h.mat) for h in dst])
        rows = []
        for h in src:
            c = solve_left(stacked, _vec(d.mat @ h.mat))
            if c is None:
                return ["hom complex failed to assemble"]
            rows.append(c.row(0))
        deltas.append(Mat.from_rows(F, rows, len(dst)))
    i = w.degree
    if i >= len(deltas):
        return ["ext witness degree beyond the resolution"]
    ker = deltas[i].rows - rank(deltas[i])
    if ker - rank(deltas[i - 1]) == 0:
        return ["claimed Ext group vanishes"]
    return []


def _verify_homology_obstruction(x: FDModule, w: NotGPWitness) -> list[str]:
    steps = w.steps or []
    if not steps or w.degree < 1 or w.degree >= len(steps) - 1:
        return ["homology obstruction out of range"]
    if steps[0].stage.dim != x.dim or steps[0].stage.acts != x.acts:
        return ["witness chain does not start at the module"]
    # Hom(-, A) of the right tail P^0 -> P^1 -> ... at the claimed degree
    reg = regular_module(x.algebra)
    terms = [st.target for st in steps]
    diffs = [steps[j].coker_proj.then(steps[j + 1].alpha)
             for j in range(len(steps) - 1)]
    F = x.algebra.field
    bases = [hom_space(t, reg) for t in terms]
    from .linalg import solve_left
    maps = []
    for j, d in enumerate(diffs):
        src, dst = bases[j + 1], bases[j]
        if not src or not dst:
            maps.append(Mat.zeros(F, len(src), len(dst)))
            continue
        stacked = Mat.vstack([_vec(h.mat) for h in dst])
        rows = []
        for h in src:
            c = solve_left(stacked, _vec(d.mat @ h.mat))
            if c is None:
                return ["hom complex failed to assemble"]
            rows.append(c.row(0))
        maps.append(Mat.from_rows(F, rows, len(dst)))
    i = w.degree
    ker = len(bases[i]) - rank(maps[i - 1])
    if ker == rank(maps[i]):
        return ["claimed homology obstruction vanishes"]
    return []
