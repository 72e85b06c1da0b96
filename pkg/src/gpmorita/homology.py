"""Projective covers, minimal resolutions, Ext/Tor and homological
dimensions over a split finite-dimensional algebra.

Right modules enter every signature as left modules over the opposite
algebra; duals swap the sides by transposing all action matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, opposite_algebra, radical_basis
from .bimodules import TensorSpace, balanced_tensor_space, _vec
from .idempotents import indecomposable_projectives
from .linalg import Mat, in_row_space, rank, row_space, solve_left
from .modules import (
    FDModule, ModuleError, ModuleHom, direct_sum, dual_module, hom_dim,
    hom_space, kernel_of, quotient_by_rows, regular_module, zero_hom,
    zero_module,
)


def _projectives(a: Algebra, seed: int = 0):
    key = ("indec_projectives", seed)
    if key not in a._cache:
        a._cache[key] = indecomposable_projectives(a, seed)
    return a._cache[key]


def _block_reps(a: Algebra, seed: int = 0):
    """One (module, inclusion, idempotent, block) per block of A/rad."""
    key = ("block_reps", seed)
    if key not in a._cache:
        seen = set()
        reps = []
        for item in _projectives(a, seed):
            if item[3] not in seen:
                seen.add(item[3])
                reps.append(item)
        a._cache[key] = reps
    return a._cache[key]


def radical_rows_of_module(x: FDModule) -> Mat:
    a = x.algebra
    rad = radical_basis(a)
    if rad.rows == 0 or x.dim == 0:
        return Mat.zeros(a.field, 0, x.dim)
    stacked = Mat.vstack([x.act_of(rad.row(i)) for i in range(rad.rows)])
    return row_space(stacked)


def top_of(x: FDModule) -> tuple[FDModule, ModuleHom]:
    return quotient_by_rows(x, radical_rows_of_module(x), name=f"top({x.name})")


def simple_modules(a: Algebra, seed: int = 0) -> list[FDModule]:
    """One simple module per block, as the top of the block's projective."""
    key = ("simples", seed)
    if key not in a._cache:
        out = []
        for mod, _, _, blk in _block_reps(a, seed):
            s, _ = top_of(mod)
            s.name = f"S{blk}"
            out.append(s)
        a._cache[key] = out
    return a._cache[key]


def projective_cover(x: FDModule, seed: int = 0) -> tuple[FDModule, ModuleHom]:
    """Minimal projective cover P ->> x (kernel inside rad P)."""
    a = x.algebra
    F = a.field
    if x.dim == 0:
        z = zero_module(a)
        return z, zero_hom(z, x)
    T, proj_T = top_of(x)
    summands: list[FDModule] = []
    blocks: list[Mat] = []
    for mod, incl, e, blk in _block_reps(a, seed):
        eT = row_space(T.act_of(e))
        for r in range(eT.rows):
            t_r = Mat(F, [eT.row(r)], T.dim)
            y = solve_left(proj_T.mat, t_r)
            if y is None:
                raise ModuleError("top projection is not surjective")
            x_r = y @ x.act_of(e)
            # hom A*e -> x, v |-> v . x_r with x_r in e.x
            rows = [(x_r @ x.act_of(incl.mat.row(i))).row(0) for i in range(mod.dim)]
            summands.append(mod)
            blocks.append(Mat.from_rows(F, rows, x.dim))
    if not summands:
        z = zero_module(a)
        return z, zero_hom(z, x)
    P, _, _ = direct_sum(summands, name=f"P({x.name})")
    phi = ModuleHom(P, x, Mat.vstack(blocks))
    if not phi.is_surjective():
        raise ModuleError("projective cover construction failed to surject")
    ker_rows = row_space(_left_kernel_rows(phi.mat))
    if ker_rows.rows and not in_row_space(radical_rows_of_module(P), ker_rows):
        raise ModuleError("projective cover is not minimal")
    return P, phi


def _left_kernel_rows(m: Mat) -> Mat:
    from .linalg import left_kernel
    return left_kernel(m)


def is_projective(x: FDModule, seed: int = 0) -> bool:
    key = ("is_projective", seed)
    if key not in x._cache:
        P, _ = projective_cover(x, seed)
        x._cache[key] = P.dim == x.dim
    return x._cache[key]


@dataclass
class Resolution:
    """Minimal projective resolution ... -> P_1 -> P_0 ->> module."""

    module: FDModule
    terms: list[FDModule]        # P_0 .. P_len
    maps: list[ModuleHom]        # maps[j]: P_{j+1} -> P_j
    aug: ModuleHom               # P_0 -> module
    syzygies: list[FDModule]     # ker(aug), ker(d_1), ...
    finished: bool               # resolution terminated within the window


def minimal_resolution(x: FDModule, length: int, seed: int = 0) -> Resolution:
    terms: list[FDModule] = []
    maps: list[ModuleHom] = []
    syzygies: list[FDModule] = []
    P0, aug = projective_cover(x, seed)
    terms.append(P0)
    cur_ker, cur_incl = kernel_of(aug)
    syzygies.append(cur_ker)
    finished = cur_ker.dim == 0
    for _ in range(length):
        if cur_ker.dim == 0:
            z = zero_module(x.algebra)
            terms.append(z)
            maps.append(zero_hom(z, terms[-2]))
            syzygies.append(z)
            continue
        P, cov = projective_cover(cur_ker, seed)
        terms.append(P)
        maps.append(cov.then(cur_incl))
        cur_ker, cur_incl = kernel_of(cov)
        syzygies.append(cur_ker)
        if cur_ker.dim == 0:
            finished = True
    return Resolution(x, terms, maps, aug, syzygies, finished)


def projective_dimension(x: FDModule, bound: int, seed: int = 0) -> int | None:
    if x.dim == 0:
        return 0
    res = minimal_resolution(x, bound, seed)
    for j, s in enumerate(res.syzygies):
        if s.dim == 0:
            return j
    return None


def ext_dim(x: FDModule, y: FDModule, i: int, seed: int = 0,
            res: Resolution | None = None) -> int:
    """dim Ext^i(x, y) from a minimal projective resolution of x."""
    if i == 0:
        return hom_dim(x, y)
    if x.dim == 0 or y.dim == 0:
        return 0
    res = res or minimal_resolution(x, i + 1, seed)
    deltas = _hom_complex_maps(res, y)
    # Ext^i = ker(delta_i) / im(delta_{i-1}) with delta_j : Hom(P_j) -> Hom(P_{j+1})
    ker_dim = deltas[i].rows - rank(deltas[i])
    return ker_dim - rank(deltas[i - 1])


def _hom_complex_maps(res: Resolution, y: FDModule) -> list[Mat]:
    """delta_j acting on Hom(P_j, y) coordinates, for j = 0..len-1."""
    F = y.algebra.field
    bases = [hom_space(P, y) for P in res.terms]
    out = []
    for j in range(len(res.maps)):
        src, dst = bases[j], bases[j + 1]
        if not src or not dst:
            out.append(Mat.zeros(F, len(src), len(dst)))
            continue
        stacked_dst = Mat.vstack([_vec(h.mat) for h in dst])
        rows = []
        for h in src:
            comp = res.maps[j].mat @ h.mat
            c = solve_left(stacked_dst, _vec(comp))
            if c is None:
                raise ModuleError("hom complex map failed to express")
            rows.append(c.row(0))
        out.append(Mat.from_rows(F, rows, len(dst)))
    return out


def tor_dim(u_op: FDModule, x: FDModule, i: int, seed: int = 0,
            res: Resolution | None = None) -> int:
    """dim Tor_i(U, x) for a right module U given over the opposite algebra."""
    if i == 0:
        return balanced_tensor_space(u_op, x).dim
    if x.dim == 0 or u_op.dim == 0:
        return 0
    res = res or minimal_resolution(x, i + 1, seed)
    spaces = [balanced_tensor_space(u_op, P) if P.dim else
              TensorSpace(0, Mat.zeros(x.algebra.field, 0, 0),
                          Mat.zeros(x.algebra.field, 0, 0))
              for P in res.terms]
    eye_u = Mat.identity(x.algebra.field, u_op.dim)

    def t_map(j: int) -> Mat:
        # U (x) P_{j+1} -> U (x) P_j
        if spaces[j + 1].dim == 0 or spaces[j].dim == 0:
            return Mat.zeros(x.algebra.field, spaces[j + 1].dim, spaces[j].dim)
        return spaces[j + 1].section @ eye_u.kron(res.maps[j].mat) @ spaces[j].proj

    ti = t_map(i - 1)       # U(x)P_i -> U(x)P_{i-1}
    tip = t_map(i)          # U(x)P_{i+1} -> U(x)P_i
    ker_dim = spaces[i].dim - rank(ti)
    return ker_dim - rank(tip)


def injective_dimension(x: FDModule, bound: int, seed: int = 0) -> int | None:
    """Via the projective dimension of the dual over the opposite algebra."""
    aop = opposite_algebra(x.algebra)
    return projective_dimension(dual_module(x, aop), bound, seed)


def global_dimension(a: Algebra, bound: int, seed: int = 0) -> int | None:
    best = 0
    for s in simple_modules(a, seed):
        d = projective_dimension(s, bound, seed)
        if d is None:
            return None
        best = max(best, d)
    return best


def is_self_injective(a: Algebra, seed: int = 0) -> bool:
    """The regular module is injective iff the dual of the regular right
    module is projective as a left module."""
    key = ("self_inj", seed)
    if key not in a._cache:
        aop = opposite_algebra(a)
        d = dual_module(regular_module(aop), a)
        a._cache[key] = is_projective(d, seed)
    return a._cache[key]


def indec_injectives(a: Algebra, seed: int = 0) -> list[FDModule]:
    """Indecomposable injectives: duals of the opposite's indecomposable
    projectives."""
    aop = opposite_algebra(a)
    out = []
    for mod, _, _, blk in _block_reps(aop, seed):
        inj = dual_module(mod, a)
        inj.name = f"I{blk}"
        out.append(inj)
    return out
