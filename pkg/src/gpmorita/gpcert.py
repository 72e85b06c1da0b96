"""Bounded certification of Gorenstein-projectivity.

A module is certified Gorenstein-projective by exhibiting a window of a
total projective resolution together with data that extends it to all
degrees: either a period (the window repeats), or self-injectivity of the
algebra (any exact resolution is totally exact there).  Refutations carry
one of three independently checkable witnesses.  A bounded search that
finds neither returns an honest "unknown".
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import opposite_algebra
from .complexes import ComplexWindow, is_exact, total_exactness, validate_complex
from .homology import (
    Resolution, ext_dim, global_dimension, is_projective, is_self_injective,
    minimal_resolution, projective_cover,
)
from .linalg import Mat, left_kernel, rank
from .modules import (
    FDModule, ModuleHom, Undetermined, cokernel_of, direct_sum, dual_module,
    free_module, hom_space, is_isomorphic, kernel_of, regular_module,
    zero_hom,
)


class CertifyError(RuntimeError):
    pass


@dataclass
class RightTailStep:
    stage: FDModule              # cosyzygy C^j (stage 0 is the module itself)
    alpha: ModuleHom             # C^j -> P^j
    target: FDModule             # P^j, projective
    coker_proj: ModuleHom        # P^j -> C^{j+1}


@dataclass
class NotGPWitness:
    kind: str                    # "non_vanishing_ext" | "non_injective_approximation"
    degree: int                  # | "homology_obstruction"
    resolution: Resolution | None = None
    steps: list[RightTailStep] | None = None
    stage: FDModule | None = None          # module whose approximation failed
    alpha: ModuleHom | None = None         # the non-injective approximation
    kernel_row: Mat | None = None          # nonzero row killed by alpha


@dataclass
class GPCertificate:
    verdict: str                 # "gp" | "not_gp" | "unknown"
    module: FDModule
    reason: str = ""
    period: int | None = None
    window: ComplexWindow | None = None
    kernel_ident: ModuleHom | None = None
    witness: NotGPWitness | None = None
    bound: tuple | None = None

    @property
    def is_gp(self) -> bool:
        return self.verdict == "gp"


def _split_window(x: FDModule, span: int) -> tuple[ComplexWindow, ModuleHom]:
    """The contractible periodic window (x (+) x, shift differential) for a
    projective module.  One term instance is shared across all degrees."""
    F = x.algebra.field
    s, incls, _ = direct_sum([x, x], name="P+P")
    d_mat = Mat.zeros(F, 2 * x.dim, 2 * x.dim)
    for i in range(x.dim):
        d_mat.data[i + x.dim][i] = F.one()     # (u, v) |-> (v, 0)
    d = ModuleHom(s, s, d_mat)
    wc = ComplexWindow(-span, span, [s] * (2 * span + 1), [d] * (2 * span))
    ki = ModuleHom(x, s, incls[0].mat)
    return wc, ki


def strip_projective_summands(x: FDModule, seed: int = 0):
    """Split x as (projective part) (+) (core with no detected projective
    summand).  Returns (core, projs, overall) with overall an isomorphism
    x -> P_1 (+) ... (+) P_k (+) core.  The search is seeded and bounded;
    missing a summand only costs certificate strength, never soundness."""
    import random as _random
    from .homology import _block_reps
    a = x.algebra
    F = a.field
    rng = _random.Random(seed)
    projs: list[FDModule] = []
    cur = x
    overall = Mat.identity(F, x.dim)
    collected = 0
    while cur.dim > 0:
        found = None
        for mod, _, _, _ in _block_reps(a, seed):
            if mod.dim > cur.dim:
                continue
            basis = hom_space(mod, cur)
            if not basis:
                continue
            candidates = [h.mat for h in basis]
            for _ in range(20):
                m = Mat.zeros(F, mod.dim, cur.dim)
                for h in basis:
                    c = rng.randint(-2, 2) if F.is_rational else rng.randrange(F.p)
                    if c:
                        m = m.add(h.mat.scale(F.of_int(c)))
                candidates.append(m)
            from .complexes import solve_module_hom
            for u_mat in candidates:
                if rank(u_mat) != mod.dim:
                    continue
                u = ModuleHom(mod, cur, u_mat)
                v = solve_module_hom(cur, mod, pre=u_mat,
                                     pre_rhs=Mat.identity(F, mod.dim))
                if v is not None:
                    found = (mod, u, v)
                    break
            if found:
                break
        if not found:
            break
        mod, u, v = found
        # cur = im(u) (+) ker(v); sigma projects onto the complement
        e_mat = v.mat @ u.mat
        k_mod, k_incl = kernel_of(ModuleHom(cur, mod, v.mat))
        from .linalg import solve_left
        sigma = solve_left(k_incl.mat, Mat.identity(F, cur.dim).sub(e_mat))
        if sigma is None:
            raise CertifyError("projective summand complement failed")
        step = Mat.hstack([v.mat, sigma])
        overall = overall @ Mat.block_diag([Mat.identity(F, collected), step])
        projs.append(mod)
        collected += mod.dim
        cur = k_mod
    return cur, projs, overall


def _generator_approximation(cur: FDModule, reg: FDModule) -> tuple[ModuleHom, FDModule]:
    """The map into a free module built from a spanning set of Hom(cur, A);
    a left projective approximation by construction."""
    a = cur.algebra
    basis = hom_space(cur, reg)
    P = free_module(a, len(basis))
    if not basis:
        return zero_hom(cur, P), P
    mat = Mat.hstack([h.mat for h in basis])
    return ModuleHom(cur, P, mat), P


def _dual_embedding(cur: FDModule, seed: int) -> tuple[ModuleHom, FDModule]:
    """Minimal embedding into a projective over a self-injective algebra:
    the dual of the projective cover of the dual."""
    a = cur.algebra
    aop = opposite_algebra(a)
    dcur = dual_module(cur, aop)
    P_op, cov = projective_cover(dcur, seed)
    P = dual_module(P_op, a)
    P.name = f"D({P_op.name})"
    return ModuleHom(cur, P, cov.mat.transpose()), P


def _right_tail(x: FDModule, length: int, seed: int, dim_budget: int,
                use_dual: bool):
    """Build cosyzygy steps; returns (steps, final_stage) or a NotGPWitness."""
    reg = regular_module(x.algebra)
    steps: list[RightTailStep] = []
    cur = x
    for j in range(length):
        if use_dual:
            alpha, P = _dual_embedding(cur, seed)
        else:
            alpha, P = _generator_approximation(cur, reg)
        ker_rows = left_kernel(alpha.mat)
        if ker_rows.rows:
            return None, NotGPWitness("non_injective_approximation", j,
                                      steps=steps, stage=cur, alpha=alpha,
                                      kernel_row=Mat(ker_rows.field,
                                                     [ker_rows.row(0)],
                                                     ker_rows.cols))
        nxt, proj = cokernel_of(alpha, name=f"C{j + 1}")
        steps.append(RightTailStep(cur, alpha, P, proj))
        if P.dim > dim_budget:
            return steps, "budget"
        cur = nxt
    return steps, cur


def _two_sided_window(x: FDModule, res: Resolution, steps: list[RightTailStep],
                      span: int) -> tuple[ComplexWindow, ModuleHom]:
    """Left tail ++ right tail spliced at the module."""
    terms, diffs = [], []
    for i in range(-span, span + 1):
        terms.append(res.terms[-i - 1] if i < 0 else steps[i].target)
    for i in range(-span, span):
        if i < -1:
            diffs.append(res.maps[-i - 2])
        elif i == -1:
            glue = res.aug.then(steps[0].alpha)
            diffs.append(glue)
        else:
            diffs.append(steps[i].coker_proj.then(steps[i + 1].alpha))
    wc = ComplexWindow(-span, span, terms, diffs)
    return wc, steps[0].alpha


def _cosyzygy_periodic_window(x: FDModule, steps: list[RightTailStep], p: int,
                              theta: ModuleHom, span: int) -> tuple[ComplexWindow, ModuleHom]:
    """Periodic window from the block P^0..P^{p-1} and an isomorphism
    theta: C^p -> x closing it up."""
    block = [steps[j].target for j in range(p)]
    internal = [steps[j].coker_proj.then(steps[j + 1].alpha) for j in range(p - 1)]
    junction = steps[p - 1].coker_proj.then(theta).then(steps[0].alpha)
    terms, diffs = [], []
    for i in range(-span, span + 1):
        terms.append(block[i % p])
    for i in range(-span, span):
        r = i % p
        d = internal[r] if r < p - 1 else junction
        diffs.append(ModuleHom(terms[i + span], terms[i + span + 1], d.mat))
    return ComplexWindow(-span, span, terms, diffs), steps[0].alpha


def _syzygy_periodic_window(x: FDModule, res: Resolution, p: int,
                            theta: ModuleHom, span: int) -> tuple[ComplexWindow, ModuleHom]:
    """Periodic window from the resolution block, closed with
    theta: x -> (p-th syzygy)."""
    block = [res.terms[p - 1 - j] for j in range(p)]     # degrees 0..p-1
    if p == 1:
        ker, incl = kernel_of(res.aug)
    else:
        ker, incl = kernel_of(res.maps[p - 2])
    internal = [res.maps[p - 2 - j] for j in range(p - 1)]
    junction = res.aug.then(theta).then(incl)            # P_0 -> x -> ker -> P_{p-1}
    terms, diffs = [], []
    for i in range(-span, span + 1):
        terms.append(block[i % p])
    for i in range(-span, span):
        r = i % p
        d = internal[r] if r < p - 1 else junction
        diffs.append(ModuleHom(terms[i + span], terms[i + span + 1], d.mat))
    ki = theta.then(incl)
    return ComplexWindow(-span, span, terms, diffs), ki


def _finalize_gp(x: FDModule, wc: ComplexWindow, ki: ModuleHom, reason: str,
                 period: int | None, seed: int) -> GPCertificate:
    bad = validate_complex(wc)
    if bad:
        raise CertifyError(f"assembled window invalid: {bad[0]}")
    if not is_exact(wc):
        raise CertifyError("assembled window is not exact")
    if not total_exactness(wc, seed=seed):
        raise CertifyError("assembled window is not totally exact")
    ker_rows = left_kernel(wc.diff(0).mat)
    from .linalg import row_space, in_row_space
    if rank(ki.mat) != x.dim or ker_rows.rows != x.dim or \
            not in_row_space(ker_rows, ki.mat):
        raise CertifyError("kernel identification does not match degree 0")
    return GPCertificate("gp", x, reason=reason, period=period, window=wc,
                         kernel_ident=ki)


def _combine_with_split(x: FDModule, overall: Mat, projs: list[FDModule],
                        core_wc: ComplexWindow, core_ki: ModuleHom,
                        span: int) -> tuple[ComplexWindow, ModuleHom]:
    """Direct-sum a contractible window for the stripped projective part
    onto a certified window for the core."""
    psum = projs[0] if len(projs) == 1 else direct_sum(projs)[0]
    split_wc, split_ki = _split_window(psum, span)
    combined: dict[int, FDModule] = {}
    terms, diffs = [], []
    for i in range(core_wc.lo, core_wc.hi + 1):
        key = id(core_wc.term(i))
        if key not in combined:
            combined[key], _, _ = direct_sum([split_wc.term(i), core_wc.term(i)])
        terms.append(combined[key])
    for i in range(core_wc.lo, core_wc.hi):
        mat = Mat.block_diag([split_wc.diff(i).mat, core_wc.diff(i).mat])
        diffs.append(ModuleHom(terms[i - core_wc.lo], terms[i - core_wc.lo + 1], mat))
    wc = ComplexWindow(core_wc.lo, core_wc.hi, terms, diffs)
    ki_mat = overall @ Mat.block_diag([split_ki.mat, core_ki.mat])
    return wc, ModuleHom(x, terms[-core_wc.lo], ki_mat)


def _search_period(core: FDModule, steps: list[RightTailStep], tail_end,
                   res: Resolution, window: int, period_bound: int, seed: int):
    """(window, kernel_ident, period) for the core, or (None, None, None);
    raises Undetermined only when a decisive answer was blocked."""
    undetermined = False
    for p in range(1, period_bound + 1):
        if p < len(steps):
            cand = steps[p].stage
        elif p == len(steps) and isinstance(tail_end, FDModule):
            cand = tail_end
        else:
            break
        try:
            theta = is_isomorphic(cand, core, seed=seed)
        except Undetermined:
            undetermined = True
            continue
        if theta is not None:
            wc, ki = _cosyzygy_periodic_window(core, steps, p, theta, window)
            return wc, ki, p
    for p in range(1, min(period_bound, len(res.syzygies)) + 1):
        cand = res.syzygies[p - 1]
        try:
            theta = is_isomorphic(core, cand, seed=seed)
        except Undetermined:
            undetermined = True
            continue
        if theta is not None:
            wc, ki = _syzygy_periodic_window(core, res, p, theta, window)
            return wc, ki, p
    if undetermined:
        raise Undetermined("periodicity search hit an undetermined isomorphism test")
    return None, None, None


def certify_gorenstein_projective(x: FDModule, window: int = 6,
                                  period_bound: int = 12, seed: int = 0,
                                  dim_budget: int = 600) -> GPCertificate:
    """Decide Gorenstein-projectivity within the given bounds.

    Fast paths: projectives are certified by a contractible periodic
    window; over an algebra of finite global dimension the verdict is
    "projective or not GP"; over a self-injective algebra every module is
    certified.  The general path builds a minimal left tail, checks
    Ext^i(x, A) = 0 on the window, grows a right tail by projective
    approximations, and hunts for a syzygy or cosyzygy period of the
    module with its projective summands stripped off.
    """
    if window < 2:
        raise ValueError("window must be at least 2")
    a = x.algebra
    if x.dim == 0 or is_projective(x, seed):
        wc, ki = _split_window(x, window)
        return _finalize_gp(x, wc, ki, "split-projective", 1, seed)
    gl = global_dimension(a, window, seed)
    if gl is not None:
        res = minimal_resolution(x, gl + 1, seed)
        reg = regular_module(a)
        for i in range(1, gl + 1):
            if ext_dim(x, reg, i, seed, res=res) != 0:
                return GPCertificate(
                    "not_gp", x,
                    witness=NotGPWitness("non_vanishing_ext", i, resolution=res))
        raise CertifyError(
            "finite global dimension, not projective, but no Ext witness")
    self_inj = is_self_injective(a, seed)
    core, projs, overall = strip_projective_summands(x, seed)
    core_is_x = not projs

    def emit(core_wc, core_ki, reason, period):
        if core_is_x:
            return _finalize_gp(x, core_wc, core_ki, reason, period, seed)
        wc, ki = _combine_with_split(x, overall, projs, core_wc, core_ki, window)
        return _finalize_gp(x, wc, ki, reason, period, seed)

    if self_inj:
        core_res = minimal_resolution(core, window + 1, seed)
        steps, tail_end = _right_tail(core, window, seed, dim_budget, use_dual=True)
        if steps is None:
            raise CertifyError("embedding failed over a self-injective algebra")
        if tail_end == "budget":
            return GPCertificate("unknown", x, bound=(window, period_bound),
                                 reason="dimension budget exceeded")
        wc, ki, p = _search_period(core, steps, tail_end, core_res, window,
                                   period_bound, seed)
        if wc is not None:
            return emit(wc, ki, "self-injective", p)
        wc, ki = _two_sided_window(core, core_res, steps, window)
        return emit(wc, ki, "self-injective", None)

    res = minimal_resolution(x, window + 1, seed)
    reg = regular_module(a)
    for i in range(1, window + 1):
        if ext_dim(x, reg, i, seed, res=res) != 0:
            return GPCertificate(
                "not_gp", x,
                witness=NotGPWitness("non_vanishing_ext", i, resolution=res))
    steps_x, tail_x = _right_tail(x, window, seed, dim_budget, use_dual=False)
    if steps_x is None:
        return GPCertificate("not_gp", x, witness=tail_x)
    if tail_x == "budget":
        return GPCertificate("unknown", x, bound=(window, period_bound),
                             reason="dimension budget exceeded")
    probe, _ = _two_sided_window(x, res, steps_x, window)
    obstruction = _hom_obstruction(probe, seed)
    if obstruction is not None:
        return GPCertificate(
            "not_gp", x,
            witness=NotGPWitness("homology_obstruction", obstruction,
                                 steps=steps_x))
    if core_is_x:
        steps_c, tail_c, res_c = steps_x, tail_x, res
    else:
        res_c = minimal_resolution(core, window + 1, seed)
        steps_c, tail_c = _right_tail(core, window, seed, dim_budget,
                                      use_dual=False)
        if steps_c is None:
            return GPCertificate("not_gp", x, witness=tail_c)
        if tail_c == "budget":
            return GPCertificate("unknown", x, bound=(window, period_bound),
                                 reason="dimension budget exceeded")
    wc, ki, p = _search_period(core, steps_c, tail_c, res_c, window,
                               period_bound, seed)
    if wc is not None:
        return emit(wc, ki, "periodic", p)
    return GPCertificate("unknown", x, bound=(window, period_bound),
                         reason="no period found within the bound")


def _hom_obstruction(wc: ComplexWindow, seed: int) -> int | None:
    """First positive degree where Hom(window, A) fails exactness; sound
    as a refutation because the right-tail terms come from projective
    approximations, so non-vanishing there descends to the cosyzygies."""
    from .complexes import hom_complex_data
    reg = regular_module(wc.algebra)
    dims, maps = hom_complex_data(wc, reg)
    for i in range(1, wc.hi):
        into = maps[i - wc.lo]
        out_of = maps[i - 1 - wc.lo]
        ker = dims[i - wc.lo] - rank(out_of)
        if ker != rank(into):
            return i
    return None
