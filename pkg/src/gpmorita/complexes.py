"""Bounded windows of cochain complexes, exactness and total exactness,
and the two-sided horseshoe construction for exact complexes.

A window holds terms X^i for lo <= i <= hi and differentials
d^i : X^i -> X^{i+1} for lo <= i < hi.  Maps compose left to right, so
d^i then d^{i+1} is d^i.mat @ d^{i+1}.mat.
"""
from __future__ import annotations

from dataclasses import dataclass

from .linalg import Mat, rank, solve
from .modules import (
    FDModule, ModuleHom, hom_space, image_of, kernel_of, validate_module,
)
from .bimodules import _vec
from .homology import ext_dim, is_projective


class ComplexError(ValueError):
    pass


def _same_module(a: FDModule, b: FDModule) -> bool:
    return a.algebra is b.algebra and a.dim == b.dim and a.acts == b.acts


@dataclass
class ComplexWindow:
    lo: int
    hi: int
    terms: list[FDModule]
    diffs: list[ModuleHom]

    def __post_init__(self):
        if self.hi < self.lo:
            raise ComplexError("empty window")
        if len(self.terms) != self.hi - self.lo + 1:
            raise ComplexError("terms do not fill the window")
        if len(self.diffs) != self.hi - self.lo:
            raise ComplexError("one differential per adjacent pair required")

    def term(self, i: int) -> FDModule:
        if not self.lo <= i <= self.hi:
            raise ComplexError(f"degree {i} outside window [{self.lo}, {self.hi}]")
        return self.terms[i - self.lo]

    def diff(self, i: int) -> ModuleHom:
        if not self.lo <= i < self.hi:
            raise ComplexError(f"no differential at degree {i}")
        return self.diffs[i - self.lo]

    @property
    def algebra(self):
        return self.terms[0].algebra


def validate_complex(c: ComplexWindow) -> list[str]:
    out = []
    for i in range(c.lo, c.hi + 1):
        bad = validate_module(c.term(i))
        if bad:
            out.append(f"term {i}: {bad[0]}")
            return out
    for i in range(c.lo, c.hi):
        d = c.diff(i)
        if not _same_module(d.source, c.term(i)) or not _same_module(d.target, c.term(i + 1)):
            out.append(f"differential {i} connects the wrong terms")
            return out
        if not d.intertwines():
            out.append(f"differential {i} is not a module map")
            return out
    for i in range(c.lo, c.hi - 1):
        if not (c.diff(i).mat @ c.diff(i + 1).mat).is_zero():
            out.append(f"d.d != 0 at degree {i}")
            return out
    return out


def homology_dim(c: ComplexWindow, i: int) -> int:
    """dim ker(d^i) - rank(d^{i-1}); needs lo < i < hi."""
    if not c.lo < i < c.hi:
        raise ComplexError(f"homology at {i} needs interior degree of "
                           f"[{c.lo}, {c.hi}]")
    ker = c.term(i).dim - rank(c.diff(i).mat)
    return ker - rank(c.diff(i - 1).mat)


def is_exact(c: ComplexWindow, lo: int | None = None, hi: int | None = None) -> bool:
    lo = c.lo + 1 if lo is None else lo
    hi = c.hi - 1 if hi is None else hi
    return all(homology_dim(c, i) == 0 for i in range(lo, hi + 1))


def kernel_at(c: ComplexWindow, i: int) -> tuple[FDModule, ModuleHom]:
    return kernel_of(c.diff(i))


def hom_complex_data(c: ComplexWindow, y: FDModule):
    """The complex Hom(X^., y): dims per degree and the maps induced by
    precomposition with the differentials (degree-reversing)."""
    F = y.algebra.field
    bases = [hom_space(c.term(i), y) for i in range(c.lo, c.hi + 1)]
    maps = []
    for i in range(c.lo, c.hi):
        src = bases[i - c.lo + 1]       # Hom(X^{i+1}, y)
        dst = bases[i - c.lo]           # Hom(X^i, y)
        if not src or not dst:
            maps.append(Mat.zeros(F, len(src), len(dst)))
            continue
        stacked = Mat.vstack([_vec(h.mat) for h in dst])
        rows = []
        from .linalg import solve_left
        for h in src:
            comp = c.diff(i).mat @ h.mat
            co = solve_left(stacked, _vec(comp))
            if co is None:
                raise ComplexError("hom complex map failed to express")
            rows.append(co.row(0))
        maps.append(Mat.from_rows(F, rows, len(dst)))
    return [len(b) for b in bases], maps


def total_exactness(c: ComplexWindow, lo: int | None = None,
                    hi: int | None = None, seed: int = 0) -> bool:
    """Exactness of Hom(X^., regular) at the degrees whose two neighbouring
    maps lie inside the window; terms must be projective."""
    for i in range(c.lo, c.hi + 1):
        if not is_projective(c.term(i), seed):
            raise ComplexError(f"term {i} is not projective")
    if not is_exact(c):
        return False
    from .modules import regular_module
    reg = regular_module(c.algebra)
    dims, maps = hom_complex_data(c, reg)
    lo = c.lo + 1 if lo is None else lo
    hi = c.hi - 1 if hi is None else hi
    for i in range(lo, hi + 1):
        # exactness of ... -> Hom(X^{i+1}) -> Hom(X^i) -> Hom(X^{i-1}) -> ...
        into = maps[i - c.lo]           # Hom(X^{i+1}) -> Hom(X^i)
        out_of = maps[i - 1 - c.lo]     # Hom(X^i) -> Hom(X^{i-1})
        ker = dims[i - c.lo] - rank(out_of)
        if ker != rank(into):
            return False
    return True


# -- module-hom solving with side conditions ---------------------------------


def solve_module_hom(src: FDModule, dst: FDModule,
                     pre: Mat | None = None, pre_rhs: Mat | None = None,
                     post: Mat | None = None, post_rhs: Mat | None = None) -> ModuleHom | None:
    """A module hom J: src -> dst with optional affine side conditions
    pre @ J = pre_rhs  and/or  J @ post = post_rhs, or None."""
    F = src.algebra.field
    ds, dt = src.dim, dst.dim
    if ds == 0 or dt == 0:
        if pre_rhs is not None and not pre_rhs.is_zero():
            return None
        if post_rhs is not None and not post_rhs.is_zero():
            return None
        return ModuleHom(src, dst, Mat.zeros(F, ds, dt))
    eye_s = Mat.identity(F, ds)
    eye_t = Mat.identity(F, dt)
    blocks = []
    rhs_rows: list[list] = []
    for t in src.gens():
        blocks.append(src.acts[t].kron(eye_t).sub(eye_s.kron(dst.acts[t].transpose())))
        rhs_rows.extend([[F.zero()]] * (ds * dt))
    if pre is not None:
        blocks.append(pre.kron(eye_t))
        for i in range(pre.rows):
            for j in range(dt):
                rhs_rows.append([pre_rhs.data[i][j]])
    if post is not None:
        blocks.append(eye_s.kron(post.transpose()))
        for i in range(ds):
            for j in range(post.cols):
                rhs_rows.append([post_rhs.data[i][j]])
    system = Mat.vstack(blocks)
    rhs = Mat(F, rhs_rows, 1)
    sol = solve(system, rhs)
    if sol is None:
        return None
    J = Mat(F, [[sol.data[i * dt + j][0] for j in range(dt)] for i in range(ds)], dt)
    return ModuleHom(src, dst, J)


# -- horseshoe ----------------------------------------------------------------


@dataclass
class ShortExactSequence:
    inject: ModuleHom            # U -> W
    surject: ModuleHom           # W -> V

    def validate(self) -> list[str]:
        out = []
        if not self.inject.intertwines() or not self.surject.intertwines():
            out.append("maps are not module homs")
        if not self.inject.is_injective():
            out.append("first map is not injective")
        if not self.surject.is_surjective():
            out.append("second map is not surjective")
        if not (self.inject.mat @ self.surject.mat).is_zero():
            out.append("composite is not zero")
        if rank(self.inject.mat) + rank(self.surject.mat) != self.inject.target.dim:
            out.append("not exact in the middle")
        return out

    @property
    def u(self) -> FDModule:
        return self.inject.source

    @property
    def w(self) -> FDModule:
        return self.inject.target

    @property
    def v(self) -> FDModule:
        return self.surject.target


class HorseshoeError(ValueError):
    def __init__(self, msg: str, degree: int | None = None):
        super().__init__(msg)
        self.degree = degree


@dataclass
class HorseshoeResult:
    zc: ComplexWindow
    rho: dict                     # degree -> ModuleHom Y^i -> X^{i+1}
    embed: ModuleHom              # W -> Z^0 realizing the kernel
    x_incl: list[ModuleHom]       # X^i -> Z^i
    y_proj: list[ModuleHom]       # Z^i -> Y^i


def check_horseshoe_hypotheses(ses: ShortExactSequence, xc: ComplexWindow,
                               yc: ComplexWindow, seed: int = 0):
    """Ext^1(ker d_Y^i, X^i) = 0 and Ext^1(im d_Y^i, X^{i+1}) = 0 for the
    rightward degrees, Ext^1(Y^{-i}, im d_X^{-i}) = 0 for the leftward
    ones; raises with the offending degree."""
    for i in range(0, xc.hi):
        kv, _ = kernel_of(yc.diff(i))
        if ext_dim(kv, xc.term(i), 1, seed) != 0:
            raise HorseshoeError(
                f"Ext^1(ker d_Y^{i}, X^{i}) != 0", degree=i)
        iv, _ = image_of(yc.diff(i))
        if ext_dim(iv, xc.term(i + 1), 1, seed) != 0:
            raise HorseshoeError(
                f"Ext^1(im d_Y^{i}, X^{i+1}) != 0", degree=i)
    for i in range(1, -xc.lo + 1):
        img, _ = image_of(xc.diff(-i))
        if ext_dim(yc.term(-i), img, 1, seed) != 0:
            raise HorseshoeError(
                f"Ext^1(Y^{-i}, im d_X^{-i}) != 0", degree=-i)


def horseshoe(ses: ShortExactSequence, xc: ComplexWindow, kx: ModuleHom,
              yc: ComplexWindow, ky: ModuleHom, seed: int = 0,
              check: bool = True) -> HorseshoeResult:
    """Weave two exact complexes along a short exact sequence.

    kx: U -> X^0 and ky: V -> Y^0 identify the degree-0 kernels.  The
    result has Z^i = X^i (+) Y^i, differentials [[d_X, 0], [rho, d_Y]],
    and its degree-0 kernel sequence is the given one on the nose.
    """
    if (xc.lo, xc.hi) != (yc.lo, yc.hi):
        raise HorseshoeError("the two windows must agree")
    if xc.lo > 0 or xc.hi < 1:
        raise HorseshoeError("window must contain [0, 1]")
    bad = ses.validate()
    if bad:
        raise HorseshoeError(f"invalid short exact sequence: {bad[0]}")
    for c, k, tag in ((xc, kx, "X"), (yc, ky, "Y")):
        if not k.is_injective():
            raise HorseshoeError(f"kernel identification into {tag}^0 not injective")
        if not (k.mat @ c.diff(0).mat).is_zero():
            raise HorseshoeError(f"kernel identification into {tag}^0 misses the kernel")
        if rank(k.mat) != c.term(0).dim - rank(c.diff(0).mat):
            raise HorseshoeError(f"kernel identification into {tag}^0 not surjective")
    if not is_exact(xc) or not is_exact(yc):
        raise HorseshoeError("input complexes must be exact on the window")
    if check:
        check_horseshoe_hypotheses(ses, xc, yc, seed)
    F = xc.algebra.field
    lo, hi = xc.lo, xc.hi
    rho: dict[int, ModuleHom] = {}

    # stage 0 lifts the given sequence; later stages reuse the X-component
    # of the image of the previous differential, which makes d.d = 0 an
    # identity rather than an extra constraint.
    j0 = solve_module_hom(ses.w, xc.term(0), pre=ses.inject.mat, pre_rhs=kx.mat)
    if j0 is None:
        raise HorseshoeError("no equivariant extension at degree 0", degree=0)
    c_mat = solve(ses.surject.mat, (j0.mat @ xc.diff(0).mat).neg())
    if c_mat is None:
        raise HorseshoeError("factorization through V failed at degree 0", degree=0)
    rho0 = solve_module_hom(yc.term(0), xc.term(1), pre=ky.mat, pre_rhs=c_mat)
    if rho0 is None:
        raise HorseshoeError("no equivariant lift for rho^0", degree=0)
    rho[0] = rho0
    embed = Mat.hstack([j0.mat, ses.surject.mat @ ky.mat])
    from .modules import corestrict
    from .linalg import solve_left
    for i in range(1, hi):
        _, dz_prev = _z_term_and_diff(xc, yc, rho, i - 1)
        w_i, w_incl = image_of(dz_prev)
        dX = xc.term(i).dim
        j_mat = Mat(F, [row[:dX] for row in w_incl.mat.data], dX)
        wy_mat = Mat(F, [row[dX:] for row in w_incl.mat.data],
                     yc.term(i).dim)
        v_i_target, ky_i = kernel_of(yc.diff(i))
        v_i = solve_left(ky_i.mat, wy_mat)
        if v_i is None:
            raise HorseshoeError(f"kernel bookkeeping failed at degree {i}",
                                 degree=i)
        c_mat = solve(v_i, (j_mat @ xc.diff(i).mat).neg())
        if c_mat is None:
            raise HorseshoeError(f"factorization through V failed at degree {i}",
                                 degree=i)
        rho_i = solve_module_hom(yc.term(i), xc.term(i + 1), pre=ky_i.mat,
                                 pre_rhs=c_mat)
        if rho_i is None:
            raise HorseshoeError(f"no equivariant lift for rho^{i}", degree=i)
        rho[i] = rho_i
    for i in range(-1, lo - 1, -1):
        rhs = (yc.diff(i).mat @ rho[i + 1].mat).neg() if i + 1 in rho else None
        if rhs is None:
            rhs = Mat.zeros(F, yc.term(i).dim, xc.term(i + 1).dim)
        rho_i = solve_module_hom(yc.term(i), xc.term(i + 1),
                                 post=xc.diff(i + 1).mat, post_rhs=rhs)
        if rho_i is None:
            raise HorseshoeError(f"no equivariant lift for rho^{i}", degree=i)
        rho[i] = rho_i

    terms = []
    diffs = []
    x_incl, y_proj = [], []
    from .modules import direct_sum
    for i in range(lo, hi + 1):
        z, incls, projs = direct_sum([xc.term(i), yc.term(i)], name=f"Z^{i}")
        terms.append(z)
        x_incl.append(incls[0])
        y_proj.append(projs[1])
    for i in range(lo, hi):
        dz = Mat.zeros(F, terms[i - lo].dim, terms[i - lo + 1].dim)
        dx, dy = xc.diff(i).mat, yc.diff(i).mat
        dX = xc.term(i).dim
        dX1 = xc.term(i + 1).dim
        for r in range(dX):
            dz.data[r][:dX1] = dx.data[r][:]
        rmat = rho[i].mat
        for r in range(yc.term(i).dim):
            dz.data[dX + r][:dX1] = rmat.data[r][:]
            dz.data[dX + r][dX1:] = dy.data[r][:]
        diffs.append(ModuleHom(terms[i - lo], terms[i - lo + 1], dz))
    zc = ComplexWindow(lo, hi, terms, diffs)
    bad = validate_complex(zc)
    if bad:
        raise HorseshoeError(f"assembled complex invalid: {bad[0]}")
    if not is_exact(zc):
        raise HorseshoeError("assembled complex is not exact")
    embed_hom = ModuleHom(ses.w, zc.term(0), embed)
    if not embed_hom.intertwines():
        raise HorseshoeError("kernel embedding is not a module map")
    _check_kernel_sequence(ses, zc, embed_hom, kx, ky, x_incl[-lo], y_proj[-lo])
    return HorseshoeResult(zc, rho, embed_hom, x_incl, y_proj)


def _z_term_and_diff(xc: ComplexWindow, yc: ComplexWindow, rho: dict, i: int):
    from .modules import direct_sum
    F = xc.algebra.field
    z, _, _ = direct_sum([xc.term(i), yc.term(i)])
    z1, _, _ = direct_sum([xc.term(i + 1), yc.term(i + 1)])
    dz = Mat.zeros(F, z.dim, z1.dim)
    dX, dX1 = xc.term(i).dim, xc.term(i + 1).dim
    for r in range(dX):
        dz.data[r][:dX1] = xc.diff(i).mat.data[r][:]
    for r in range(yc.term(i).dim):
        dz.data[dX + r][:dX1] = rho[i].mat.data[r][:]
        dz.data[dX + r][dX1:] = yc.diff(i).mat.data[r][:]
    return z, ModuleHom(z, z1, dz)


def _check_kernel_sequence(ses, zc, embed, kx, ky, x0_incl, y0_proj):
    if rank(embed.mat) != ses.w.dim:
        raise HorseshoeError("kernel embedding is not injective")
    ker_rows = zc.term(0).dim - rank(zc.diff(0).mat)
    if not (embed.mat @ zc.diff(0).mat).is_zero() or rank(embed.mat) != ker_rows:
        raise HorseshoeError("embedded W is not the degree-0 kernel")
    if ses.inject.mat @ embed.mat != kx.mat @ x0_incl.mat:
        raise HorseshoeError("kernel sequence does not restrict to the given one")
    if embed.mat @ y0_proj.mat != ses.surject.mat @ ky.mat:
        raise HorseshoeError("kernel sequence does not project to the given one")
