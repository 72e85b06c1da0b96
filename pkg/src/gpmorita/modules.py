"""Finitely generated left modules over a finite-dimensional algebra.

A module is a list of row-action matrices, one per algebra basis element:
b_t . x = x @ acts[t].  With maps written on the right of elements, the
composite "first f then g" is fg, and a left-module structure satisfies
act(ab) = act(b) @ act(a) as matrices (the one place the row convention
shows a reversal; homs and all displayed block matrices transcribe with
no transposes).
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product as iter_product

from .algebra import Algebra, _quotient_projection, generating_subset
from .linalg import (
    Mat, in_row_space, kernel_basis, left_kernel, rank, row_space, solve,
    solve_left,
)


class ModuleError(ValueError):
    pass


class Undetermined(RuntimeError):
    """A bounded search could not decide; never silently coerced to 'no'."""


@dataclass
class FDModule:
    algebra: Algebra
    dim: int
    acts: list[Mat]
    name: str = ""
    _gen_cache: list[int] | None = dc_field(default=None, repr=False)
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.acts) != self.algebra.dim:
            raise ModuleError("one action matrix per algebra basis element required")
        for m in self.acts:
            if (m.rows, m.cols) != (self.dim, self.dim):
                raise ModuleError("action matrix has wrong shape")

    def __repr__(self):
        return f"FDModule({self.name or '?'}, dim={self.dim} over {self.algebra.name or '?'})"

    def act_of(self, coeffs: list) -> Mat:
        out = Mat.zeros(self.algebra.field, self.dim, self.dim)
        for t, c in enumerate(coeffs):
            if not self.algebra.field.is_zero(c):
                out = out.add(self.acts[t].scale(c))
        return out

    def gens(self) -> list[int]:
        if self._gen_cache is None:
            self._gen_cache = generating_subset(self.algebra)
        return self._gen_cache


def validate_module(x: FDModule) -> list[str]:
    out = []
    a = x.algebra
    ident = Mat.identity(a.field, x.dim)
    if x.act_of(a.unit) != ident:
        out.append("unit does not act as identity")
    for i in range(a.dim):
        for j in range(a.dim):
            # act(b_i b_j) = act(b_j) @ act(b_i) under the row convention
            if x.act_of(a.mul[i][j]) != x.acts[j] @ x.acts[i]:
                out.append(f"action not multiplicative at ({i},{j})")
                return out
    return out


def require_valid_module(x: FDModule):
    bad = validate_module(x)
    if bad:
        raise ModuleError(f"invalid module {x.name!r}: {bad[0]}")


def zero_module(a: Algebra) -> FDModule:
    return FDModule(a, 0, [Mat.zeros(a.field, 0, 0) for _ in range(a.dim)], name="0")


def regular_module(a: Algebra) -> FDModule:
    return FDModule(a, a.dim, a.lmul_mats(), name=f"{a.name or 'A'}")


def free_module(a: Algebra, n: int) -> FDModule:
    mats = [Mat.block_diag([m] * n) if n else Mat.zeros(a.field, 0, 0)
            for m in a.lmul_mats()]
    return FDModule(a, a.dim * n, mats, name=f"{a.name or 'A'}^{n}")


@dataclass
class ModuleHom:
    source: FDModule
    target: FDModule
    mat: Mat

    def __post_init__(self):
        if (self.mat.rows, self.mat.cols) != (self.source.dim, self.target.dim):
            raise ModuleError("hom matrix has wrong shape")
        if self.source.algebra is not self.target.algebra:
            raise ModuleError("hom between modules over different algebras")

    def then(self, other: "ModuleHom") -> "ModuleHom":
        if self.target is not other.source and self.target.dim != other.source.dim:
            raise ModuleError("composition mismatch")
        return ModuleHom(self.source, other.target, self.mat @ other.mat)

    def is_injective(self) -> bool:
        return rank(self.mat) == self.source.dim

    def is_surjective(self) -> bool:
        return rank(self.mat) == self.target.dim

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.is_injective()

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def intertwines(self) -> bool:
        x, y = self.source, self.target
        return all(x.acts[t] @ self.mat == self.mat @ y.acts[t]
                   for t in range(x.algebra.dim))


def identity_hom(x: FDModule) -> ModuleHom:
    return ModuleHom(x, x, Mat.identity(x.algebra.field, x.dim))


def zero_hom(x: FDModule, y: FDModule) -> ModuleHom:
    return ModuleHom(x, y, Mat.zeros(x.algebra.field, x.dim, y.dim))


def hom_space(x: FDModule, y: FDModule) -> list[ModuleHom]:
    """Canonical basis of Hom_A(x, y), via the intertwining linear system.
    Memoized per (x, y) instance pair."""
    if x.algebra is not y.algebra:
        raise ModuleError("hom space needs a common algebra")
    key = ("hom", id(y))
    hit = x._cache.get(key)
    if hit is not None and hit[0] is y:
        return hit[1]
    F = x.algebra.field
    dx, dy = x.dim, y.dim
    if dx == 0 or dy == 0:
        x._cache[key] = (y, [])
        return []
    eye_x = Mat.identity(F, dx)
    eye_y = Mat.identity(F, dy)
    blocks = []
    for t in x.gens():
        blocks.append(x.acts[t].kron(eye_y).sub(eye_x.kron(y.acts[t].transpose())))
    system = Mat.vstack(blocks) if blocks else Mat.zeros(F, 0, dx * dy)
    ker = kernel_basis(system)
    out = []
    for c in range(ker.cols):
        mat = Mat(F, [[ker.data[i * dy + j][c] for j in range(dy)] for i in range(dx)], dy)
        out.append(ModuleHom(x, y, mat))
    x._cache[key] = (y, out)
    return out


def hom_dim(x: FDModule, y: FDModule) -> int:
    return len(hom_space(x, y))


# -- sub / quotient / kernel / image --------------------------------------


def submodule_from_rows(x: FDModule, rows: Mat, name: str = "") -> tuple[FDModule, ModuleHom]:
    """Submodule on the canonical basis of an invariant row span."""
    basis = row_space(rows)
    acts = []
    for t in range(x.algebra.dim):
        moved = basis @ x.acts[t]
        coeffs = solve_left(basis, moved)
        if coeffs is None:
            raise ModuleError("row span is not invariant under the action")
        acts.append(coeffs)
    sub = FDModule(x.algebra, basis.rows, acts, name=name)
    return sub, ModuleHom(sub, x, basis)


def spanned_submodule(x: FDModule, rows: Mat, name: str = "") -> tuple[FDModule, ModuleHom]:
    """Submodule generated by arbitrary rows (closure under the action)."""
    span = row_space(rows)
    while True:
        new_rows = [r[:] for r in span.data]
        for t in range(x.algebra.dim):
            new_rows.extend((span @ x.acts[t]).data)
        new_span = row_space(Mat.from_rows(x.algebra.field, new_rows, x.dim))
        if new_span.rows == span.rows:
            return submodule_from_rows(x, new_span, name=name)
        span = new_span


def quotient_by_rows(x: FDModule, rows: Mat, name: str = "") -> tuple[FDModule, ModuleHom]:
    """Quotient by an invariant row span, on pivot-complement coordinates."""
    F = x.algebra.field
    sub = row_space(rows)
    for t in range(x.algebra.dim):
        if not in_row_space(sub, sub @ x.acts[t]):
            raise ModuleError("row span is not invariant under the action")
    proj = _quotient_projection(F, sub, x.dim)
    acts = []
    for t in range(x.algebra.dim):
        induced = solve(proj, x.acts[t] @ proj)
        acts.append(induced)
    quo = FDModule(x.algebra, proj.cols, acts, name=name)
    return quo, ModuleHom(x, quo, proj)


def kernel_of(h: ModuleHom, name: str = "") -> tuple[FDModule, ModuleHom]:
    rows = left_kernel(h.mat)
    return submodule_from_rows(h.source, rows, name=name)


def image_of(h: ModuleHom, name: str = "") -> tuple[FDModule, ModuleHom]:
    rows = row_space(h.mat)
    return submodule_from_rows(h.target, rows, name=name)


def cokernel_of(h: ModuleHom, name: str = "") -> tuple[FDModule, ModuleHom]:
    return quotient_by_rows(h.target, row_space(h.mat), name=name)


def corestrict(h: ModuleHom, sub: FDModule, incl: ModuleHom) -> ModuleHom:
    """Factor h through a submodule of its target containing the image."""
    coeffs = solve_left(incl.mat, h.mat)
    if coeffs is None:
        raise ModuleError("image does not lie in the submodule")
    return ModuleHom(h.source, sub, coeffs)


def direct_sum(mods: list[FDModule], name: str = "") -> tuple[FDModule, list[ModuleHom], list[ModuleHom]]:
    """Direct sum with canonical inclusions and projections."""
    if not mods:
        raise ModuleError("empty direct sum needs an algebra")
    a = mods[0].algebra
    F = a.field
    total = sum(m.dim for m in mods)
    acts = [Mat.block_diag([m.acts[t] for m in mods]) if total else Mat.zeros(F, 0, 0)
            for t in range(a.dim)]
    s = FDModule(a, total, acts, name=name or "+".join(m.name or "?" for m in mods))
    incls, projs = [], []
    off = 0
    for m in mods:
        inc = Mat.zeros(F, m.dim, total)
        prj = Mat.zeros(F, total, m.dim)
        for i in range(m.dim):
            inc.data[i][off + i] = F.one()
            prj.data[off + i][i] = F.one()
        incls.append(ModuleHom(m, s, inc))
        projs.append(ModuleHom(s, m, prj))
        off += m.dim
    return s, incls, projs


def dual_module(x: FDModule, opposite: Algebra, name: str = "") -> FDModule:
    """k-linear dual as a module over the opposite algebra (transposed actions)."""
    return FDModule(opposite, x.dim, [m.transpose() for m in x.acts],
                    name=name or f"D({x.name or '?'})")


def restrict_along(x: FDModule, hom_rows: Mat, source_alg: Algebra, name: str = "") -> FDModule:
    """Pull a module back along an algebra morphism given by its matrix.

    hom_rows[t] holds the image coordinates of the t-th basis element of
    source_alg inside x.algebra.
    """
    if hom_rows.rows != source_alg.dim or hom_rows.cols != x.algebra.dim:
        raise ModuleError("morphism matrix has wrong shape")
    acts = [x.act_of(hom_rows.row(t)) for t in range(source_alg.dim)]
    return FDModule(source_alg, x.dim, acts, name=name)


# -- isomorphism testing ----------------------------------------------------


def is_isomorphic(x: FDModule, y: FDModule, seed: int = 0, trials: int = 40,
                  grid_budget: int = 200_000) -> ModuleHom | None:
    """An invertible intertwiner, or None when provably none exists.

    Over Q a failed random search falls back to a decisive finite grid
    (determinant degree bound); over F_p to full enumeration when p^k is
    small.  If neither decisive step is affordable the search raises
    Undetermined rather than returning a false negative.
    """
    if x.algebra is not y.algebra:
        return None
    if x.dim != y.dim:
        return None
    if x.dim == 0:
        return ModuleHom(x, y, Mat.zeros(x.algebra.field, 0, 0))
    basis = hom_space(x, y)
    if not basis:
        return None
    F = x.algebra.field
    n, k = x.dim, len(basis)

    def combo(coeffs):
        m = Mat.zeros(F, n, n)
        for c, h in zip(coeffs, basis):
            if not F.is_zero(c):
                m = m.add(h.mat.scale(c))
        return m

    rng = random.Random(seed)
    if not F.is_rational and F.p ** k <= 4096:
        # decisive enumeration of the whole hom space
        for coeffs in iter_product(range(F.p), repeat=k):
            m = combo([F.of_int(c) for c in coeffs])
            if rank(m) == n:
                return ModuleHom(x, y, m)
        return None
    for _ in range(trials):
        if F.is_rational:
            coeffs = [F.of_int(rng.randint(-3, 3)) for _ in range(k)]
        else:
            coeffs = [F.of_int(rng.randrange(F.p)) for _ in range(k)]
        m = combo(coeffs)
        if rank(m) == n:
            return ModuleHom(x, y, m)
    if F.is_rational and (n + 1) ** k <= grid_budget:
        # det of a generic combination has degree <= n in each coefficient,
        # so vanishing on the whole grid {0..n}^k proves there is no iso
        for coeffs in iter_product(range(n + 1), repeat=k):
            m = combo([F.of_int(c) for c in coeffs])
            if rank(m) == n:
                return ModuleHom(x, y, m)
        return None
    raise Undetermined(
        f"isomorphism search exhausted its budget ({x.name or '?'} vs {y.name or '?'})")
