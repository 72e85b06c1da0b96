"""Bimodules, balanced tensor products over an algebra, and Hom-modules.

A bimodule over (B, A) carries a left B-action and a right A-action that
commute.  Tensor products M (x)_A X are computed as quotients of the full
k-tensor space (row-major basis, index (i, j) -> i * dim X + j) by the
span of the middle relations m.a (x) x - m (x) a.x; the quotient lives on
the pivot-complement coordinates of that relation span, so all bases are
canonical and reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, opposite_algebra, quotient_maps
from .fields import Field
from .linalg import Mat, row_space, solve
from .modules import FDModule, ModuleError, ModuleHom


class BimoduleError(ValueError):
    pass


@dataclass
class Bimodule:
    left: Algebra                # acts from the left
    right: Algebra               # acts from the right
    dim: int
    left_acts: list[Mat]         # b_t . x = x @ left_acts[t]
    right_acts: list[Mat]        # x . b_t = x @ right_acts[t]
    name: str = ""

    def __post_init__(self):
        if len(self.left_acts) != self.left.dim or len(self.right_acts) != self.right.dim:
            raise BimoduleError("one action matrix per algebra basis element required")

    def __repr__(self):
        return (f"Bimodule({self.name or '?'}, dim={self.dim} over "
                f"({self.left.name or '?'}, {self.right.name or '?'}))")

    def left_act_of(self, coeffs: list) -> Mat:
        out = Mat.zeros(self.left.field, self.dim, self.dim)
        for t, c in enumerate(coeffs):
            if not self.left.field.is_zero(c):
                out = out.add(self.left_acts[t].scale(c))
        return out

    def right_act_of(self, coeffs: list) -> Mat:
        out = Mat.zeros(self.right.field, self.dim, self.dim)
        for t, c in enumerate(coeffs):
            if not self.right.field.is_zero(c):
                out = out.add(self.right_acts[t].scale(c))
        return out

    def as_left_module(self, name: str = "") -> FDModule:
        return FDModule(self.left, self.dim, self.left_acts,
                        name=name or f"{self.name}|left")

    def as_right_module(self, name: str = "") -> FDModule:
        """The right action as a left module over the opposite algebra
        (same matrices; right rule R_{ab} = R_a @ R_b matches the opposite
        left rule)."""
        return FDModule(opposite_algebra(self.right), self.dim, self.right_acts,
                        name=name or f"{self.name}|right")


def validate_bimodule(m: Bimodule) -> list[str]:
    out = validate_left_action(m)
    if out:
        return out
    a = m.right
    F = a.field
    ident = Mat.identity(F, m.dim)
    if m.right_act_of(a.unit) != ident:
        return ["right unit does not act as identity"]
    for i in range(a.dim):
        for j in range(a.dim):
            if m.right_act_of(a.mul[i][j]) != m.right_acts[i] @ m.right_acts[j]:
                return [f"right action not multiplicative at ({i},{j})"]
    for s in range(m.left.dim):
        for t in range(a.dim):
            if m.left_acts[s] @ m.right_acts[t] != m.right_acts[t] @ m.left_acts[s]:
                return [f"left and right actions do not commute at ({s},{t})"]
    return []


def validate_left_action(m: Bimodule) -> list[str]:
    a = m.left
    F = a.field
    ident = Mat.identity(F, m.dim)
    if m.left_act_of(a.unit) != ident:
        return ["left unit does not act as identity"]
    for i in range(a.dim):
        for j in range(a.dim):
            # left rule under the row convention: act(ab) = act(b) @ act(a)
            if m.left_act_of(a.mul[i][j]) != m.left_acts[j] @ m.left_acts[i]:
                return [f"left action not multiplicative at ({i},{j})"]
    return []


def require_valid_bimodule(m: Bimodule):
    bad = validate_bimodule(m)
    if bad:
        raise BimoduleError(f"invalid bimodule {m.name!r}: {bad[0]}")


# -- constructions -----------------------------------------------------------


def regular_bimodule(a: Algebra, name: str = "") -> Bimodule:
    return Bimodule(a, a, a.dim, a.lmul_mats(), a.rmul_mats(),
                    name=name or a.name)


def zero_bimodule(left: Algebra, right: Algebra) -> Bimodule:
    F = left.field
    return Bimodule(left, right, 0,
                    [Mat.zeros(F, 0, 0) for _ in range(left.dim)],
                    [Mat.zeros(F, 0, 0) for _ in range(right.dim)], name="0")


def outer_bimodule(v: FDModule, w_right: FDModule, name: str = "") -> Bimodule:
    """V (x)_k W with B acting on the left factor and A on the right; the
    right module is supplied as a left module over A^op."""
    B = v.algebra
    Aop = w_right.algebra
    A = opposite_algebra(Aop)
    eye_v = Mat.identity(B.field, v.dim)
    eye_w = Mat.identity(B.field, w_right.dim)
    left_acts = [v.acts[t].kron(eye_w) for t in range(B.dim)]
    right_acts = [eye_v.kron(w_right.acts[t]) for t in range(A.dim)]
    return Bimodule(B, A, v.dim * w_right.dim, left_acts, right_acts,
                    name=name or f"{v.name}(x){w_right.name}")


def sub_bimodule_from_rows(m: Bimodule, rows: Mat, name: str = "") -> tuple[Bimodule, Mat]:
    """Sub-bimodule on the canonical basis of a two-sided invariant span."""
    from .linalg import solve_left
    basis = row_space(rows)
    la, ra = [], []
    for t in range(m.left.dim):
        c = solve_left(basis, basis @ m.left_acts[t])
        if c is None:
            raise BimoduleError("span not invariant under the left action")
        la.append(c)
    for t in range(m.right.dim):
        c = solve_left(basis, basis @ m.right_acts[t])
        if c is None:
            raise BimoduleError("span not invariant under the right action")
        ra.append(c)
    return Bimodule(m.left, m.right, basis.rows, la, ra, name=name), basis


def restrict_right(m: Bimodule, emb_rows: Mat, small: Algebra, name: str = "") -> Bimodule:
    """Restrict the right action along an algebra morphism small -> m.right."""
    ra = [m.right_act_of(emb_rows.row(t)) for t in range(small.dim)]
    return Bimodule(m.left, small, m.dim, m.left_acts, ra, name=name or m.name)


def restrict_left(m: Bimodule, emb_rows: Mat, small: Algebra, name: str = "") -> Bimodule:
    la = [m.left_act_of(emb_rows.row(t)) for t in range(small.dim)]
    return Bimodule(small, m.right, m.dim, la, m.right_acts, name=name or m.name)


# -- balanced tensor products ------------------------------------------------


@dataclass
class TensorModule:
    """M (x)_A X, with the projection from the full k-tensor space."""

    module: FDModule             # over M.left
    bim: Bimodule
    arg: FDModule
    proj: Mat                    # (bim.dim * arg.dim) x module.dim
    section: Mat                 # module.dim x (bim.dim * arg.dim)


def _middle_relations(F: Field, right_acts_m: list[Mat], acts_x: list[Mat],
                      dim_m: int, dim_x: int) -> Mat:
    rows = []
    amb = dim_m * dim_x
    for t in range(len(right_acts_m)):
        Ra = right_acts_m[t]
        La = acts_x[t]
        for s in range(dim_m):
            ra_row = Ra.data[s]
            for j in range(dim_x):
                vec = [F.zero()] * amb
                for s2 in range(dim_m):
                    if not F.is_zero(ra_row[s2]):
                        vec[s2 * dim_x + j] = F.add(vec[s2 * dim_x + j], ra_row[s2])
                la_row = La.data[j]
                for j2 in range(dim_x):
                    if not F.is_zero(la_row[j2]):
                        vec[s * dim_x + j2] = F.sub(vec[s * dim_x + j2], la_row[j2])
                rows.append(vec)
    return Mat.from_rows(F, rows, amb) if rows else Mat.zeros(F, 0, amb)


def tensor_module(m: Bimodule, x: FDModule, name: str = "") -> TensorModule:
    """M (x)_A X as a module over M's left algebra."""
    if x.algebra is not m.right:
        raise BimoduleError("tensor: module must live over the right-hand algebra")
    F = m.left.field
    amb = m.dim * x.dim
    rel = _middle_relations(F, m.right_acts, x.acts, m.dim, x.dim)
    proj, sec = quotient_maps(F, row_space(rel), amb)
    eye_x = Mat.identity(F, x.dim)
    acts = []
    for t in range(m.left.dim):
        big = m.left_acts[t].kron(eye_x)
        induced = solve(proj, big @ proj)
        if induced is None:
            raise BimoduleError("left action does not descend to the tensor quotient")
        acts.append(induced)
    mod = FDModule(m.left, proj.cols, acts,
                   name=name or f"{m.name}(x){x.name}")
    return TensorModule(mod, m, x, proj, sec)


def tensor_functor_hom(src: TensorModule, dst: TensorModule, h: ModuleHom) -> ModuleHom:
    """1_M (x) h on the tensor quotients."""
    if src.bim is not dst.bim:
        raise BimoduleError("tensor pushforward needs a common bimodule")
    if h.source.dim != src.arg.dim or h.target.dim != dst.arg.dim:
        raise ModuleError("tensor pushforward shape mismatch")
    eye_m = Mat.identity(src.proj.field, src.bim.dim)
    mat = src.section @ eye_m.kron(h.mat) @ dst.proj
    return ModuleHom(src.module, dst.module, mat)


@dataclass
class TensorSpace:
    """U (x)_A X for a right module U (given over A^op) and a left module X:
    a plain vector space quotient of U (x)_k X."""

    dim: int
    proj: Mat
    section: Mat


def balanced_tensor_space(u_op: FDModule, x: FDModule) -> TensorSpace:
    """Tensor over A of a right module (as a module over A^op) and a left
    module; returns the quotient of the k-tensor space."""
    if opposite_algebra(u_op.algebra) is not x.algebra:
        raise BimoduleError("balanced tensor: algebra mismatch")
    F = x.algebra.field
    amb = u_op.dim * x.dim
    # right action of a on u is u @ u_op.acts[a]
    rel = _middle_relations(F, u_op.acts, x.acts, u_op.dim, x.dim)
    proj, sec = quotient_maps(F, row_space(rel), amb)
    return TensorSpace(proj.cols, proj, sec)


def bimodule_tensor(m: Bimodule, n: Bimodule, name: str = "") -> tuple[Bimodule, Mat, Mat]:
    """M (x)_A N as a bimodule over (M.left, N.right); returns it with the
    projection from and section into M (x)_k N."""
    if m.right is not n.left:
        raise BimoduleError("bimodule tensor: middle algebras differ")
    F = m.left.field
    amb = m.dim * n.dim
    rel = _middle_relations(F, m.right_acts, n.left_acts, m.dim, n.dim)
    proj, sec = quotient_maps(F, row_space(rel), amb)
    eye_n = Mat.identity(F, n.dim)
    eye_m = Mat.identity(F, m.dim)
    la, ra = [], []
    for t in range(m.left.dim):
        big = m.left_acts[t].kron(eye_n)
        induced = solve(proj, big @ proj)
        if induced is None:
            raise BimoduleError("left action does not descend")
        la.append(induced)
    for t in range(n.right.dim):
        big = eye_m.kron(n.right_acts[t])
        induced = solve(proj, big @ proj)
        if induced is None:
            raise BimoduleError("right action does not descend")
        ra.append(induced)
    out = Bimodule(m.left, n.right, proj.cols, la, ra,
                   name=name or f"{m.name}(x){n.name}")
    return out, proj, sec


# -- Hom-modules -------------------------------------------------------------


def hom_module(n: Bimodule, x: FDModule, name: str = "") -> tuple[FDModule, list[ModuleHom]]:
    """Hom_A(N, X) as a left module over N's right-hand algebra B, with the
    action (b.f)(n) = f(n.b); returns the module and the hom basis."""
    from .modules import hom_space
    if x.algebra is not n.left:
        raise BimoduleError("hom module: module must live over the left algebra")
    B = n.right
    F = B.field
    basis = hom_space(n.as_left_module(), x)
    k = len(basis)
    if k == 0:
        from .modules import zero_module
        return zero_module(B), []
    stacked = Mat.vstack([_vec(h.mat) for h in basis])
    acts = []
    from .linalg import solve_left
    for t in range(B.dim):
        rows = []
        for h in basis:
            moved = n.right_acts[t] @ h.mat      # (b.f) = R_b then f
            c = solve_left(stacked, _vec(moved))
            if c is None:
                raise BimoduleError("Hom space not closed under the action")
            rows.append(c.row(0))
        acts.append(Mat.from_rows(F, rows, k))
    return FDModule(B, k, acts, name=name or f"Hom({n.name},{x.name})"), basis


def _vec(m: Mat) -> Mat:
    flat = []
    for row in m.data:
        flat.extend(row)
    return Mat(m.field, [flat], m.rows * m.cols)


# -- balanced maps (the phi and psi of a Morita context) ---------------------


@dataclass
class BalancedMap:
    """A bimodule map M (x)_A N -> C stored on the full k-tensor basis."""

    m: Bimodule                  # over (B, A)
    n: Bimodule                  # over (A, C) with target algebra C = ?
    target: Algebra
    mat: Mat                     # (m.dim * n.dim) x target.dim

    def __post_init__(self):
        if (self.mat.rows, self.mat.cols) != (self.m.dim * self.n.dim, self.target.dim):
            raise BimoduleError("balanced map matrix has wrong shape")

    def value(self, i: int, j: int) -> list:
        """Image of basis tensor m_i (x) n_j, as target coordinates."""
        return self.mat.row(i * self.n.dim + j)


def zero_balanced_map(m: Bimodule, n: Bimodule, target: Algebra) -> BalancedMap:
    return BalancedMap(m, n, target, Mat.zeros(target.field, m.dim * n.dim, target.dim))


def validate_balanced_map(f: BalancedMap) -> list[str]:
    """Middle-balancedness over the shared algebra and two-sided linearity
    over the target algebra (outer actions)."""
    F = f.target.field
    if f.n.left is not f.m.right:
        return ["middle algebras of the two bimodules differ"]
    if f.m.left is not f.target or f.n.right is not f.target:
        return ["outer algebras do not match the target"]
    out = []
    rel = _middle_relations(F, f.m.right_acts, f.n.left_acts, f.m.dim, f.n.dim)
    if not (rel @ f.mat).is_zero():
        out.append("not balanced over the middle algebra")
    eye_n = Mat.identity(F, f.n.dim)
    eye_m = Mat.identity(F, f.m.dim)
    for t in range(f.target.dim):
        if f.m.left_acts[t].kron(eye_n) @ f.mat != f.mat @ f.target.lmul_mats()[t]:
            out.append(f"not left-linear over the target at {t}")
            break
    for t in range(f.target.dim):
        if eye_m.kron(f.n.right_acts[t]) @ f.mat != f.mat @ f.target.rmul_mats()[t]:
            out.append(f"not right-linear over the target at {t}")
            break
    return out


def hom_functor_hom(n: Bimodule, h: ModuleHom,
                    src_basis: list[ModuleHom] | None = None,
                    dst_basis: list[ModuleHom] | None = None) -> ModuleHom:
    """Hom(N, h): the pushforward Hom_A(N, X) -> Hom_A(N, X') along
    h: X -> X', on the canonical hom-module coordinates."""
    from .linalg import solve_left
    src_mod, src_basis = hom_module(n, h.source) if src_basis is None else \
        (None, src_basis)
    dst_mod, dst_basis = hom_module(n, h.target) if dst_basis is None else \
        (None, dst_basis)
    if src_mod is None or dst_mod is None:
        src_mod, src_basis = hom_module(n, h.source)
        dst_mod, dst_basis = hom_module(n, h.target)
    F = n.right.field
    if not src_basis:
        return ModuleHom(src_mod, dst_mod, Mat.zeros(F, 0, len(dst_basis)))
    if not dst_basis:
        return ModuleHom(src_mod, dst_mod, Mat.zeros(F, len(src_basis), 0))
    stacked = Mat.vstack([_vec(g.mat) for g in dst_basis])
    rows = []
    for f in src_basis:
        c = solve_left(stacked, _vec(f.mat @ h.mat))
        if c is None:
            raise BimoduleError("hom pushforward failed to express")
        rows.append(c.row(0))
    return ModuleHom(src_mod, dst_mod, Mat.from_rows(F, rows, len(dst_basis)))
