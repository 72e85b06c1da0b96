"""Trivial extensions A = Lambda |x I, induction of Lambda-modules to
quadruples over the one-sided-zero context ring, the structural
factorization maps (eta, theta, m) behind the Gorenstein-projectivity
criterion, and the hom/tensor transport identities used to reduce
computations on the context ring to the corners.

Everything here assumes phi = 0 and I = im(psi), the setting where the
criterion operates; validators enforce both.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, subalgebra
from .bimodules import (
    Bimodule, TensorModule, regular_bimodule, restrict_right,
    sub_bimodule_from_rows, tensor_functor_hom, tensor_module, _vec,
)
from .linalg import Mat, in_row_space, rank, row_space, solve, solve_left
from .modules import (
    FDModule, ModuleHom, cokernel_of, corestrict, hom_space, image_of,
    quotient_by_rows, restrict_along,
)
from .morita import (
    ContextError, MoritaContext, QuadrupleHom, QuadrupleModule, make_quadruple,
    quadruple_hom_space,
)


class ExtensionError(ValueError):
    pass


@dataclass
class TrivialExtension:
    Lam: Algebra
    ideal: Bimodule              # over (Lam, Lam)
    A: Algebra                   # Lambda |x I
    incl_rows: Mat               # Lam -> A
    proj_rows: Mat               # A -> Lam (the canonical surjection)
    ideal_rows: Mat              # I -> A

    def lam_module(self, x: FDModule, name: str = "") -> FDModule:
        """Restrict an A-module to Lambda along the inclusion."""
        return restrict_along(x, self.incl_rows, self.Lam, name=name)

    def inflate(self, x: FDModule, name: str = "") -> FDModule:
        """A Lambda-module as an A-module through the projection (I acts 0)."""
        return restrict_along(x, self.proj_rows, self.A, name=name)


def trivial_extension(lam: Algebra, ideal: Bimodule, name: str = "") -> TrivialExtension:
    """Build Lambda |x I on the basis Lambda ++ I with multiplication
    (l, x)(l', x') = (ll', l x' + x l')."""
    if ideal.left is not lam or ideal.right is not lam:
        raise ExtensionError("ideal must be a bimodule over (Lambda, Lambda)")
    F = lam.field
    dl, di = lam.dim, ideal.dim
    dim = dl + di
    z = F.zero()
    mul = [[[z] * dim for _ in range(dim)] for _ in range(dim)]
    for i in range(dl):
        for j in range(dl):
            prod = lam.mul[i][j]
            for k, c in enumerate(prod):
                mul[i][j][k] = c
        for j in range(di):
            vec = (Mat.unit_row(F, di, j) @ ideal.left_acts[i]).row(0)
            for k, c in enumerate(vec):
                mul[i][dl + j][dl + k] = c
    for i in range(di):
        for j in range(dl):
            vec = (Mat.unit_row(F, di, i) @ ideal.right_acts[j]).row(0)
            for k, c in enumerate(vec):
                mul[dl + i][j][dl + k] = c
    unit = [z] * dim
    unit[:dl] = lam.unit
    a = Algebra(F, dim, mul, unit, name=name or f"{lam.name}|x{ideal.name}")
    incl = Mat.zeros(F, dl, dim)
    proj = Mat.zeros(F, dim, dl)
    irows = Mat.zeros(F, di, dim)
    for i in range(dl):
        incl.data[i][i] = F.one()
        proj.data[i][i] = F.one()
    for i in range(di):
        irows.data[i][dl + i] = F.one()
    return TrivialExtension(lam, ideal, a, incl, proj, irows)


def recognize_trivial_extension(a: Algebra, lam_rows: Mat, ideal_rows: Mat,
                                name: str = "") -> TrivialExtension:
    """Certify that a = (span of lam_rows) |x (span of ideal_rows) and
    return the extension data on the given algebra instance."""
    F = a.field
    L = row_space(lam_rows)
    I = row_space(ideal_rows)
    if L.rows + I.rows != a.dim:
        raise ExtensionError("subring and ideal do not sum to the algebra")
    combined = Mat.vstack([L, I])
    if rank(combined) != a.dim:
        raise ExtensionError("subring and ideal overlap")
    for r in range(I.rows):
        x = I.row(r)
        for t in range(a.dim):
            moved = Mat.from_rows(F, [a.multiply(a.basis_el(t), x),
                                      a.multiply(x, a.basis_el(t))], a.dim)
            if not in_row_space(I, moved):
                raise ExtensionError("ideal span is not a two-sided ideal")
        for s in range(I.rows):
            prod = a.multiply(x, I.row(s))
            if any(not F.is_zero(c) for c in prod):
                raise ExtensionError("ideal does not square to zero")
    lam, _ = subalgebra(a, L, name=name or "Lambda")   # checks closure and unit
    # the ideal as a (Lambda, Lambda)-bimodule
    la, ra = [], []
    for t in range(lam.dim):
        el = L.row(t)
        lmoved = Mat.from_rows(F, [a.multiply(el, I.row(r)) for r in range(I.rows)],
                               a.dim)
        c = solve_left(I, lmoved)
        if c is None:
            raise ExtensionError("ideal is not stable under the subring")
        la.append(c)
        rmoved = Mat.from_rows(F, [a.multiply(I.row(r), el) for r in range(I.rows)],
                               a.dim)
        c2 = solve_left(I, rmoved)
        if c2 is None:
            raise ExtensionError("ideal is not stable under the subring")
        ra.append(c2)
    ideal = Bimodule(lam, lam, I.rows, la, ra, name="I")
    cinv = solve(combined, Mat.identity(F, a.dim))
    proj = Mat(F, [row[:lam.dim] for row in cinv.data], lam.dim)
    return TrivialExtension(lam, ideal, a, L, proj, I)


def check_extension_matches(ext: TrivialExtension, ctx: MoritaContext):
    if ctx.A is not ext.A:
        raise ExtensionError("context corner A is not the extension algebra")
    if not ctx.phi_is_zero:
        raise ExtensionError("the criterion setting needs phi = 0")
    I_ctx = ctx.ideal_rows_a()
    I_ext = row_space(ext.ideal_rows)
    if I_ctx.rows != I_ext.rows or not in_row_space(I_ext, I_ctx):
        raise ExtensionError("im(psi) differs from the extension ideal")


# -- induction of Lambda-modules ---------------------------------------------


def induced_module(ext: TrivialExtension, x: FDModule, name: str = "") -> FDModule:
    """X(I) = X (+) I (x)_Lambda X as an A-module, with the action
    (l, i).(v, w) = (l v, i (x) v + l.w)."""
    return induced_module_parts(ext, x, name)[0]


def induced_module_parts(ext: TrivialExtension, x: FDModule, name: str = ""):
    """(X(I), embed X, I (x)_Lambda X tensor data) with the ideal block on
    the balanced-tensor quotient coordinates."""
    if x.algebra is not ext.Lam:
        raise ExtensionError("induced module wants a Lambda-module")
    F = ext.Lam.field
    ix_t = tensor_module(ext.ideal, x, name=f"I(x){x.name}")
    dX, dIX = x.dim, ix_t.module.dim
    dim = dX + dIX
    acts = []
    for t in range(ext.A.dim):
        lam_c = ext.proj_rows.row(t)
        rest = [F.sub(u, v) for u, v in
                zip(ext.A.basis_el(t),
                    (Mat.from_rows(F, [lam_c], ext.Lam.dim) @ ext.incl_rows).row(0))]
        i_c = solve_left(ext.ideal_rows, Mat.from_rows(F, [rest], ext.A.dim))
        if i_c is None:
            raise ExtensionError("basis element does not split as (lambda, i)")
        i_c = i_c.row(0)
        m = Mat.zeros(F, dim, dim)
        xl = x.act_of(lam_c)
        for r in range(dX):
            m.data[r][:dX] = xl.data[r][:]
            # ideal part sends v to the class of i_c (x) v
            for s, c in enumerate(i_c):
                if not F.is_zero(c):
                    prow = ix_t.proj.row(s * dX + r)
                    for k2 in range(dIX):
                        m.data[r][dX + k2] = F.add(m.data[r][dX + k2],
                                                   F.mul(c, prow[k2]))
        il = ix_t.module.act_of(lam_c)
        for r in range(dIX):
            m.data[dX + r][dX:] = il.data[r][:]
        acts.append(m)
    xi = FDModule(ext.A, dim, acts, name=name or f"{x.name}(I)")
    e_x = Mat.zeros(F, dX, dim)
    for r in range(dX):
        e_x.data[r][r] = F.one()
    return xi, e_x, ix_t


def m_tensor_lambda(ext: TrivialExtension, ctx: MoritaContext, x: FDModule,
                    name: str = "") -> TensorModule:
    """M (x)_Lambda X for a Lambda-module X (restricting M's right action)."""
    m_lam = restrict_right(ctx.M, ext.incl_rows, ext.Lam, name="M|Lam")
    return tensor_module(m_lam, x, name=name or f"M(x){x.name}")


def psi_ideal_coords(ext: TrivialExtension, ctx: MoritaContext) -> Mat:
    """psi with values written in ideal coordinates: (N (x)_k M) -> I."""
    c = solve_left(ext.ideal_rows, ctx.psi.mat)
    if c is None:
        raise ExtensionError("im(psi) does not lie in the extension ideal")
    return c


def t_lambda(ext: TrivialExtension, ctx: MoritaContext, x: FDModule,
             name: str = "") -> QuadrupleModule:
    """The induced quadruple (X(I), M (x)_Lambda X, projection, psi-action)."""
    check_extension_matches(ext, ctx)
    F = ext.Lam.field
    xi, e_x, ix_t = induced_module_parts(ext, x)
    mx_lam = m_tensor_lambda(ext, ctx, x)
    y = mx_lam.module
    dX, dM, dN = x.dim, ctx.M.dim, ctx.N.dim
    dIX = ix_t.module.dim
    # f: M (x)_k X(I) -> Y = M (x)_Lambda X;
    # m (x) (v, w) |-> m (x) v + (m . i-part of w) (x) ... (zero since MI = 0)
    f_rows = []
    for i_m in range(dM):
        for c in range(xi.dim):
            if c < dX:
                f_rows.append(mx_lam.proj.row(i_m * dX + c))
            else:
                lift = ix_t.section.row(c - dX)
                acc = [F.zero()] * y.dim
                for amb, coef in enumerate(lift):
                    if F.is_zero(coef):
                        continue
                    s, j = divmod(amb, dX)
                    w = (Mat.unit_row(F, dM, i_m)
                         @ ctx.M.right_act_of(ext.ideal_rows.row(s))).row(0)
                    for t, wt in enumerate(w):
                        if not F.is_zero(wt):
                            prow = mx_lam.proj.row(t * dX + j)
                            acc = [F.add(u, F.mul(F.mul(coef, wt), v))
                                   for u, v in zip(acc, prow)]
                f_rows.append(acc)
    f_full = Mat.from_rows(F, f_rows, y.dim) if f_rows else Mat.zeros(F, 0, y.dim)
    # g: N (x)_k Y -> X(I); n (x) (m (x) v) |-> psi(n (x) m) (x) v in the
    # I (x) X block
    psi_i = psi_ideal_coords(ext, ctx)
    g_rows = []
    for i_n in range(dN):
        for t in range(y.dim):
            lift = mx_lam.section.row(t)
            acc = [F.zero()] * xi.dim
            for amb, coef in enumerate(lift):
                if F.is_zero(coef):
                    continue
                i_m, i_x = divmod(amb, dX)
                ivec = psi_i.row(i_n * dM + i_m)
                for s, c in enumerate(ivec):
                    if not F.is_zero(c):
                        prow = ix_t.proj.row(s * dX + i_x)
                        for k2 in range(dIX):
                            acc[dX + k2] = F.add(acc[dX + k2],
                                                 F.mul(F.mul(coef, c), prow[k2]))
            g_rows.append(acc)
    g_full = Mat.from_rows(F, g_rows, xi.dim) if g_rows else Mat.zeros(F, 0, xi.dim)
    return make_quadruple(ctx, xi, y, f_full, g_full,
                          name=name or f"T_Lam({x.name})")


def t_lambda_hom(ext: TrivialExtension, ctx: MoritaContext,
                 src: QuadrupleModule, dst: QuadrupleModule,
                 h: ModuleHom) -> QuadrupleHom:
    """T_Lambda on a morphism of Lambda-modules: (h (+) 1_I (x) h, 1_M (x) h)."""
    ix_src = tensor_module(ext.ideal, h.source)
    ix_dst = tensor_module(ext.ideal, h.target)
    one_i_h = tensor_functor_hom(ix_src, ix_dst, h)
    alpha = Mat.block_diag([h.mat, one_i_h.mat])
    m_lam = restrict_right(ctx.M, ext.incl_rows, ext.Lam)
    src_t = tensor_module(m_lam, h.source)
    dst_t = tensor_module(m_lam, h.target)
    beta = tensor_functor_hom(src_t, dst_t, h)
    return QuadrupleHom(src, dst, ModuleHom(src.x, dst.x, alpha),
                        ModuleHom(src.y, dst.y, beta.mat))


# -- structural maps of a quadruple (phi = 0) --------------------------------


@dataclass
class StructuralMaps:
    u: FDModule                  # Coker(g) over A
    lambda_x: ModuleHom          # X -> U
    v: FDModule                  # Coker(f) over B
    mu_y: ModuleHom              # Y -> V
    mu_tensor: ModuleHom         # 1_M (x) lambda_x : MX -> MU
    eta: ModuleHom               # M (x)_A U -> Y,   f = (1 (x) lambda) eta
    x_mod_ix: FDModule
    p_x: ModuleHom               # X -> X/IX
    theta: ModuleHom             # N (x)_B V -> X/IX, g p = (1 (x) mu) theta
    mlt: ModuleHom               # I (x)_A X -> X multiplication
    m_x: ModuleHom               # I (x)_A U -> X,   mlt = (1 (x) lambda) m_x
    mu_t: TensorModule           # M (x)_A U
    nv_t: TensorModule           # N (x)_B V
    iu_t: TensorModule           # I (x)_A U
    ix_t: TensorModule           # I (x)_A X
    ix_rows: Mat                 # row basis of IX inside X


def ideal_bimodule_a(ctx: MoritaContext) -> Bimodule:
    key = "ideal_bimodule_a"
    if key not in ctx._cache:
        bim, _ = sub_bimodule_from_rows(regular_bimodule(ctx.A),
                                        ctx.ideal_rows_a(), name="I")
        ctx._cache[key] = bim
    return ctx._cache[key]


def structural_maps(ctx: MoritaContext, q: QuadrupleModule) -> StructuralMaps:
    if not ctx.phi_is_zero:
        raise ContextError("structural maps require phi = 0")
    F = ctx.A.field
    u, lambda_x = cokernel_of(q.g, name=f"Coker(g:{q.name})")
    v, mu_y = cokernel_of(q.f, name=f"Coker(f:{q.name})")
    mu_t = tensor_module(ctx.M, u)
    one_lambda = tensor_functor_hom(q.mx, mu_t, lambda_x)
    eta_mat = solve(one_lambda.mat, q.f.mat)
    if eta_mat is None:
        raise ContextError("f does not factor through M (x) Coker(g)")
    eta = ModuleHom(mu_t.module, q.y, eta_mat)
    I = ctx.ideal_rows_a()
    ix_rows = (row_space(Mat.vstack([q.x.act_of(I.row(r)) for r in range(I.rows)]))
               if I.rows and q.x.dim else Mat.zeros(F, 0, q.x.dim))
    x_mod_ix, p_x = quotient_by_rows(q.x, ix_rows, name=f"{q.x.name}/IX")
    nv_t = tensor_module(ctx.N, v)
    one_mu = tensor_functor_hom(q.ny, nv_t, mu_y)
    theta_mat = solve(one_mu.mat, q.g.mat @ p_x.mat)
    if theta_mat is None:
        raise ContextError("g p does not factor through N (x) Coker(f)")
    theta = ModuleHom(nv_t.module, x_mod_ix, theta_mat)
    ibim = ideal_bimodule_a(ctx)
    ix_t = tensor_module(ibim, q.x)
    mlt_rows = []
    for s in range(ibim.dim):
        act = q.x.act_of(ctx.ideal_rows_a().row(s))
        mlt_rows.extend(act.data)
    mlt_full = Mat.from_rows(F, mlt_rows, q.x.dim) if mlt_rows else \
        Mat.zeros(F, 0, q.x.dim)
    mlt_mat = solve(ix_t.proj, mlt_full)
    if mlt_mat is None:
        raise ContextError("multiplication does not factor through I (x) X")
    mlt = ModuleHom(ix_t.module, q.x, mlt_mat)
    iu_t = tensor_module(ibim, u)
    one_lambda_i = tensor_functor_hom(ix_t, iu_t, lambda_x)
    m_mat = solve(one_lambda_i.mat, mlt.mat)
    if m_mat is None:
        raise ContextError("multiplication does not factor through I (x) Coker(g)")
    m_x = ModuleHom(iu_t.module, q.x, m_mat)
    sm = StructuralMaps(u, lambda_x, v, mu_y, one_lambda, eta, x_mod_ix, p_x,
                        theta, mlt, m_x, mu_t, nv_t, iu_t, ix_t, ix_rows)
    _check_structural(ctx, q, sm)
    return sm


def _check_structural(ctx: MoritaContext, q: QuadrupleModule, sm: StructuralMaps):
    # factorization identities, image identities, and I Coker(g) = I Im(g) = 0
    if sm.mu_tensor.mat @ sm.eta.mat != q.f.mat:
        raise ContextError("eta factorization identity fails")
    if q.g.mat @ sm.p_x.mat != \
            tensor_functor_hom(q.ny, sm.nv_t, sm.mu_y).mat @ sm.theta.mat:
        raise ContextError("theta factorization identity fails")
    one_lam = tensor_functor_hom(sm.ix_t, sm.iu_t, sm.lambda_x)
    if one_lam.mat @ sm.m_x.mat != sm.mlt.mat:
        raise ContextError("m factorization identity fails")
    if row_space(sm.m_x.mat).data != sm.ix_rows.data:
        raise ContextError("im(m) differs from IX")
    I = ctx.ideal_rows_a()
    for r in range(I.rows):
        if not sm.u.act_of(I.row(r)).is_zero():
            raise ContextError("I does not annihilate Coker(g)")
    img_g, _ = image_of(q.g)
    for r in range(I.rows):
        if not img_g.act_of(I.row(r)).is_zero():
            raise ContextError("I does not annihilate Im(g)")


def pushout_check(ctx: MoritaContext, q: QuadrupleModule, sm: StructuralMaps | None = None) -> bool:
    """Whether Im(g) is the pushout of 1_N (x) eta and psi (x) 1_U.

    Raises if the two comparison isomorphism preconditions (theta and m
    injective) fail, mirroring the criterion's clause (b)."""
    sm = sm or structural_maps(ctx, q)
    if not sm.theta.is_injective() or not sm.m_x.is_injective():
        raise ContextError("pushout check precondition: clause (b2)/(b3) isos fail")
    F = ctx.A.field
    # legs from N (x) M (x) U: psi (x) 1_U into I (x) U, 1_N (x) eta into N (x) Y
    nmu = tensor_module(ctx.N, sm.mu_t.module)
    one_eta = tensor_functor_hom(nmu, q.ny, sm.eta)
    psi_leg = _psi_tensor_one(ctx, sm, nmu)
    total = sm.iu_t.module.dim + q.ny.module.dim
    delta = Mat.hstack([psi_leg.mat, one_eta.mat.neg()])
    # pushout = (I (x) U (+) N (x) Y) / im(delta)
    from .algebra import quotient_maps
    po_proj, _ = quotient_maps(F, row_space(delta), total)
    img_g, incl_g = image_of(q.g)
    # canonical comparison: I (x) U -> Im(g) via m, N (x) Y -> Im(g) via g
    m_to_h = corestrict(ModuleHom(sm.iu_t.module, q.x, sm.m_x.mat), img_g, incl_g)
    g_to_h = corestrict(q.g, img_g, incl_g)
    legs = Mat.vstack([m_to_h.mat, g_to_h.mat])
    induced = solve(po_proj, legs)
    if induced is None:
        return False
    return rank(induced) == img_g.dim and po_proj.cols == img_g.dim


def _psi_tensor_one(ctx: MoritaContext, sm: StructuralMaps, nmu: TensorModule) -> ModuleHom:
    """psi (x) 1_U : N (x)_B M (x)_A U -> I (x)_A U."""
    F = ctx.A.field
    dN, dM, dU = ctx.N.dim, ctx.M.dim, sm.u.dim
    I = ctx.ideal_rows_a()
    psi_i = solve_left(I, ctx.psi.mat)
    if psi_i is None:
        raise ContextError("im(psi) escapes its own row space")
    rows = []
    for i_n in range(dN):
        for i_m in range(dM):
            ivec = psi_i.row(i_n * dM + i_m)
            for i_u in range(dU):
                acc = [F.zero()] * sm.iu_t.module.dim
                for s, c in enumerate(ivec):
                    if not F.is_zero(c):
                        prow = sm.iu_t.proj.row(s * dU + i_u)
                        acc = [F.add(p, F.mul(c, w)) for p, w in zip(acc, prow)]
                rows.append(acc)
    full = Mat.from_rows(F, rows, sm.iu_t.module.dim) if rows else \
        Mat.zeros(F, 0, sm.iu_t.module.dim)
    eye_n = Mat.identity(F, dN)
    big_proj = eye_n.kron(sm.mu_t.proj) @ nmu.proj
    mat = solve(big_proj, full)
    if mat is None:
        raise ContextError("psi (x) 1 does not factor through the quotient")
    return ModuleHom(nmu.module, sm.iu_t.module, mat)


# -- hom transport identities ---------------------------------------------------
#
# The extension-of-scalars isomorphisms between hom spaces over Lambda and
# over A = Lambda |x I, and their ring-level versions between corner hom
# spaces and quadruple hom spaces.  Each checker realizes the displayed
# elementwise formula as a linear map on canonical hom-space coordinates
# and certifies that every image is a genuine (quadruple) map and that the
# coordinate matrix is bijective.


@dataclass
class HomIsoCheck:
    dim_domain: int
    dim_codomain: int
    images_valid: bool
    bijective: bool

    @property
    def ok(self) -> bool:
        return self.images_valid and self.bijective


def _coords_in(basis_mats: list[Mat], target: Mat) -> Mat | None:
    from .bimodules import _vec
    if not basis_mats:
        return None if not target.is_zero() else Mat.zeros(target.field, 1, 0)
    stacked = Mat.vstack([_vec(m) for m in basis_mats])
    return solve_left(stacked, _vec(target))


def restriction_hom_iso(ext: TrivialExtension, x: FDModule, x2: FDModule) -> HomIsoCheck:
    """Hom_Lambda(X, X') = Hom_A(X(I), X'-inflated), f |-> (f on the X part,
    zero on the ideal part)."""
    xi = induced_module(ext, x)
    x2_a = ext.inflate(x2, name=f"{x2.name}|A")
    dom = hom_space(x, x2)
    cod = hom_space(xi, x2_a)
    rows = []
    ok = True
    for f in dom:
        img = Mat.vstack([f.mat, Mat.zeros(ext.Lam.field, xi.dim - x.dim, x2.dim)])
        h = ModuleHom(xi, x2_a, img)
        ok = ok and h.intertwines()
        c = _coords_in([g.mat for g in cod], img)
        if c is None:
            return HomIsoCheck(len(dom), len(cod), False, False)
        rows.append(c.row(0))
    mat = Mat.from_rows(ext.Lam.field, rows, len(cod)) if rows else \
        Mat.zeros(ext.Lam.field, 0, len(cod))
    bij = len(dom) == len(cod) and rank(mat) == len(dom)
    return HomIsoCheck(len(dom), len(cod), ok, bij)


def ideal_hom_embedding(ext: TrivialExtension, x: FDModule, x2: FDModule) -> HomIsoCheck:
    """Hom_Lambda(X, I (x) X') -> Hom_A(X-inflated, X'(I)), g |-> (0, g);
    a well-defined injective homomorphism (not claimed surjective)."""
    F = ext.Lam.field
    ix2 = tensor_module(ext.ideal, x2)
    x_a = ext.inflate(x, name=f"{x.name}|A")
    xi2 = induced_module(ext, x2)
    dom = hom_space(x, ix2.module)
    cod = hom_space(x_a, xi2)
    rows = []
    ok = True
    for g in dom:
        img = Mat.hstack([Mat.zeros(F, x.dim, x2.dim), g.mat])
        h = ModuleHom(x_a, xi2, img)
        ok = ok and h.intertwines()
        c = _coords_in([f.mat for f in cod], img)
        if c is None:
            return HomIsoCheck(len(dom), len(cod), False, False)
        rows.append(c.row(0))
    mat = Mat.from_rows(F, rows, len(cod)) if rows else Mat.zeros(F, 0, len(cod))
    injective = rank(mat) == len(dom)
    return HomIsoCheck(len(dom), len(cod), ok, injective)


def induced_hom_iso(ext: TrivialExtension, x: FDModule, x2: FDModule) -> HomIsoCheck:
    """Hom_Lambda(X, X' (+) I (x) X') = Hom_A(X(I), X'(I)),
    (a, c) |-> [[a, c], [0, 1_I (x) a]]."""
    F = ext.Lam.field
    xi = induced_module(ext, x)
    xi2 = induced_module(ext, x2)
    ix = tensor_module(ext.ideal, x)
    ix2 = tensor_module(ext.ideal, x2)
    dom_a = hom_space(x, x2)
    dom_c = hom_space(x, ix2.module)
    cod = hom_space(xi, xi2)
    rows = []
    ok = True
    for a_part, c_part in _pair_basis(F, dom_a, dom_c, x.dim, x2.dim,
                                      ix2.module.dim):
        one_i_a = tensor_functor_hom(ix, ix2, ModuleHom(x, x2, a_part)).mat
        img = Mat.vstack([
            Mat.hstack([a_part, c_part]),
            Mat.hstack([Mat.zeros(F, ix.module.dim, x2.dim), one_i_a])])
        h = ModuleHom(xi, xi2, img)
        ok = ok and h.intertwines()
        co = _coords_in([f.mat for f in cod], img)
        if co is None:
            return HomIsoCheck(len(dom_a) + len(dom_c), len(cod), False, False)
        rows.append(co.row(0))
    mat = Mat.from_rows(F, rows, len(cod)) if rows else Mat.zeros(F, 0, len(cod))
    n_dom = len(dom_a) + len(dom_c)
    bij = n_dom == len(cod) and rank(mat) == n_dom
    return HomIsoCheck(n_dom, len(cod), ok, bij)


def _pair_basis(F, dom_a, dom_c, dx, dx2, dix2):
    for f in dom_a:
        yield f.mat, Mat.zeros(F, dx, dix2)
    for g in dom_c:
        yield Mat.zeros(F, dx, dx2), g.mat


def column_hom_iso(ext: TrivialExtension, ctx: MoritaContext, kind: str,
                   x: FDModule | None = None, x2: FDModule | None = None,
                   y: FDModule | None = None, y2: FDModule | None = None) -> HomIsoCheck:
    """The seven corner-to-ring hom identities for the one-sided-zero
    context ring; `kind` names source and target functor columns."""
    from .morita import quadruple_hom_space, t_b as _t_b, z_b as _z_b
    F = ext.Lam.field

    def tl(mod):
        return t_lambda(ext, ctx, mod)

    def zl(mod):
        return z_a_of_lambda(ext, ctx, mod)

    if kind == "tl_tb":
        # Hom_Lambda(X, N (x) Y) = Hom(T_Lam(X), T_B(Y)), f |-> ((f; 0), 0)
        src, dst = tl(x), _t_b(ctx, y)
        ny = dst.x                      # N (x)_B Y
        dom = hom_space(x, _as_lam_module(ext, ny))
        build = lambda f: ( _column_alpha(F, src, f.mat), Mat.zeros(F, src.y.dim, dst.y.dim))
    elif kind == "tl_zl":
        src, dst = tl(x), zl(x2)
        dom = hom_space(x, x2)
        build = lambda f: (_column_alpha(F, src, f.mat),
                           Mat.zeros(F, src.y.dim, dst.y.dim))
    elif kind == "tl_tl":
        return _tl_tl_check(ext, ctx, x, x2)
    elif kind == "tb_tl":
        return _tb_tl_check(ext, ctx, x, y)
    elif kind == "tb_tb":
        src, dst = _t_b(ctx, y), _t_b(ctx, y2)
        dom = hom_space(y, y2)
        build = lambda t: (tensor_functor_hom(src_nyt(src), src_nyt(dst),
                                              ModuleHom(y, y2, t.mat)).mat, t.mat)
    elif kind == "tb_zb":
        src, dst = _t_b(ctx, y), _z_b(ctx, _killed_by_j(ctx, y2))
        dom = hom_space(y, dst.y)
        build = lambda t: (Mat.zeros(F, src.x.dim, dst.x.dim), t.mat)
    elif kind == "zero_pairs":
        a = len(quadruple_hom_space(_t_b(ctx, y), zl(x)))
        b = len(quadruple_hom_space(tl(x), _z_b(ctx, _killed_by_j(ctx, y))))
        return HomIsoCheck(0, a + b, True, a == 0 and b == 0)
    else:
        raise ExtensionError(f"unknown hom identity {kind!r}")
    cod = quadruple_hom_space(src, dst)
    from .morita import QuadrupleHom, validate_quadruple_hom
    rows = []
    ok = True
    for f in dom:
        am, bm = build(f)
        qh = QuadrupleHom(src, dst, ModuleHom(src.x, dst.x, am),
                          ModuleHom(src.y, dst.y, bm))
        ok = ok and validate_quadruple_hom(qh) == []
        vec = Mat.hstack([_flat(am), _flat(bm)])
        basis_vecs = [Mat.hstack([_flat(h.alpha.mat), _flat(h.beta.mat)])
                      for h in cod]
        co = _coords_in_flat(basis_vecs, vec)
        if co is None:
            return HomIsoCheck(len(dom), len(cod), False, False)
        rows.append(co.row(0))
    mat = Mat.from_rows(F, rows, len(cod)) if rows else Mat.zeros(F, 0, len(cod))
    bij = len(dom) == len(cod) and rank(mat) == len(dom)
    return HomIsoCheck(len(dom), len(cod), ok, bij)


def _flat(m: Mat) -> Mat:
    from .bimodules import _vec
    return _vec(m)


def _coords_in_flat(basis_vecs: list[Mat], target: Mat) -> Mat | None:
    if not basis_vecs:
        return None if not target.is_zero() else Mat.zeros(target.field, 1, 0)
    stacked = Mat.vstack(basis_vecs)
    return solve_left(stacked, target)


def _column_alpha(F, src, f_mat: Mat) -> Mat:
    """(f; 0): the X(I)-source column map vanishing on the ideal block."""
    return Mat.vstack([f_mat, Mat.zeros(F, src.x.dim - f_mat.rows, f_mat.cols)])


def _as_lam_module(ext: TrivialExtension, mod: FDModule) -> FDModule:
    return restrict_along(mod, ext.incl_rows, ext.Lam, name=f"{mod.name}|Lam")


def z_a_of_lambda(ext: TrivialExtension, ctx: MoritaContext, x2: FDModule):
    from .morita import z_a
    return z_a(ctx, ext.inflate(x2, name=f"{x2.name}|A"))


def _killed_by_j(ctx: MoritaContext, y: FDModule) -> FDModule:
    from .linalg import row_space
    J = ctx.ideal_rows_b()
    if J.rows == 0 or y.dim == 0:
        return y
    rows = row_space(Mat.vstack([y.act_of(J.row(r)) for r in range(J.rows)]))
    from .modules import quotient_by_rows
    return quotient_by_rows(y, rows)[0]


def src_nyt(q) -> "TensorModule":
    return q.ny


def _tl_tl_check(ext, ctx, x, x2) -> HomIsoCheck:
    """Hom_Lambda(X, X' (+) I (x) X') = Hom(T_Lam X, T_Lam X'),
    (a, c) |-> ([[a, c], [0, 1_I (x) a]], 1_M (x) a)."""
    from .morita import QuadrupleHom, quadruple_hom_space, validate_quadruple_hom
    F = ext.Lam.field
    src, dst = t_lambda(ext, ctx, x), t_lambda(ext, ctx, x2)
    ix = tensor_module(ext.ideal, x)
    ix2 = tensor_module(ext.ideal, x2)
    m_lam = restrict_right(ctx.M, ext.incl_rows, ext.Lam)
    mx = tensor_module(m_lam, x)
    mx2 = tensor_module(m_lam, x2)
    dom_a = hom_space(x, x2)
    dom_c = hom_space(x, ix2.module)
    cod = quadruple_hom_space(src, dst)
    rows = []
    ok = True
    for a_part, c_part in _pair_basis(F, dom_a, dom_c, x.dim, x2.dim,
                                      ix2.module.dim):
        a_hom = ModuleHom(x, x2, a_part)
        one_i_a = tensor_functor_hom(ix, ix2, a_hom).mat
        am = Mat.vstack([
            Mat.hstack([a_part, c_part]),
            Mat.hstack([Mat.zeros(F, ix.module.dim, x2.dim), one_i_a])])
        bm = tensor_functor_hom(mx, mx2, a_hom).mat
        qh = QuadrupleHom(src, dst, ModuleHom(src.x, dst.x, am),
                          ModuleHom(src.y, dst.y, bm))
        ok = ok and validate_quadruple_hom(qh) == []
        vec = Mat.hstack([_flat(am), _flat(bm)])
        basis_vecs = [Mat.hstack([_flat(h.alpha.mat), _flat(h.beta.mat)])
                      for h in cod]
        co = _coords_in_flat(basis_vecs, vec)
        if co is None:
            return HomIsoCheck(len(dom_a) + len(dom_c), len(cod), False, False)
        rows.append(co.row(0))
    n_dom = len(dom_a) + len(dom_c)
    mat = Mat.from_rows(F, rows, len(cod)) if rows else Mat.zeros(F, 0, len(cod))
    bij = n_dom == len(cod) and rank(mat) == n_dom
    return HomIsoCheck(n_dom, len(cod), ok, bij)


def _tb_tl_check(ext, ctx, x, y) -> HomIsoCheck:
    """Hom_B(Y, M (x) X) = Hom(T_B Y, T_Lam X), h |-> ((1_N (x) h) psi_X, h)."""
    from .morita import QuadrupleHom, quadruple_hom_space, t_b as _t_b, \
        validate_quadruple_hom
    F = ext.Lam.field
    src = _t_b(ctx, y)
    dst = t_lambda(ext, ctx, x)
    dom = hom_space(y, dst.y)           # Hom_B(Y, M (x)_Lambda X)
    cod = quadruple_hom_space(src, dst)
    rows = []
    ok = True
    for h in dom:
        one_h = tensor_functor_hom(src.ny, dst.ny, ModuleHom(y, dst.y, h.mat))
        am = one_h.mat @ dst.g.mat
        qh = QuadrupleHom(src, dst, ModuleHom(src.x, dst.x, am),
                          ModuleHom(src.y, dst.y, h.mat))
        ok = ok and validate_quadruple_hom(qh) == []
        vec = Mat.hstack([_flat(am), _flat(h.mat)])
        basis_vecs = [Mat.hstack([_flat(g.alpha.mat), _flat(g.beta.mat)])
                      for g in cod]
        co = _coords_in_flat(basis_vecs, vec)
        if co is None:
            return HomIsoCheck(len(dom), len(cod), False, False)
        rows.append(co.row(0))
    mat = Mat.from_rows(F, rows, len(cod)) if rows else Mat.zeros(F, 0, len(cod))
    bij = len(dom) == len(cod) and rank(mat) == len(dom)
    return HomIsoCheck(len(dom), len(cod), ok, bij)
