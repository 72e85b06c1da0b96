"""Small standard algebras and module generators used by tests, fixtures
and the randomized sweeps.  Everything here is deterministic given a seed.
"""
from __future__ import annotations

import random

from .algebra import Algebra
from .fields import Field
from .linalg import Mat, row_space
from .modules import (
    FDModule, ModuleHom, free_module, hom_space, quotient_by_rows,
    spanned_submodule,
)


def _empty_mul(F: Field, n: int):
    z = F.zero()
    return [[[z] * n for _ in range(n)] for _ in range(n)]


def field_algebra(F: Field, name: str = "k") -> Algebra:
    mul = _empty_mul(F, 1)
    mul[0][0][0] = F.one()
    return Algebra(F, 1, mul, [F.one()], name=name)


def product_fields(F: Field, n: int, name: str = "") -> Algebra:
    """k x ... x k with componentwise product."""
    mul = _empty_mul(F, n)
    for i in range(n):
        mul[i][i][i] = F.one()
    return Algebra(F, n, mul, [F.one()] * n, name=name or f"k^{n}")


def truncated_poly(F: Field, n: int, name: str = "") -> Algebra:
    """k[x]/(x^n) with basis 1, x, ..., x^{n-1}."""
    mul = _empty_mul(F, n)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                mul[i][j][i + j] = F.one()
    unit = [F.one()] + [F.zero()] * (n - 1)
    return Algebra(F, n, mul, unit, name=name or f"k[x]/x^{n}")


def path_a2(F: Field, name: str = "kA2") -> Algebra:
    """Upper triangular 2x2 matrices; basis e1 = E11, a = E12, e2 = E22."""
    mul = _empty_mul(F, 3)
    one = F.one()
    E1, A, E2 = 0, 1, 2
    mul[E1][E1][E1] = one
    mul[E2][E2][E2] = one
    mul[E1][A][A] = one     # e1 * a = a
    mul[A][E2][A] = one     # a * e2 = a
    unit = [one, F.zero(), one]
    return Algebra(F, 3, mul, unit, name=name)


def two_cycle_rad_square(F: Field, name: str = "2cyc") -> Algebra:
    """Path algebra of 1 <-> 2 modulo paths of length 2; basis e1, e2, a, b
    with a: 1 -> 2 and b: 2 -> 1 (so e1*a = a = a*e2, e2*b = b = b*e1)."""
    mul = _empty_mul(F, 4)
    one = F.one()
    E1, E2, A, B = 0, 1, 2, 3
    mul[E1][E1][E1] = one
    mul[E2][E2][E2] = one
    mul[E1][A][A] = one
    mul[A][E2][A] = one
    mul[E2][B][B] = one
    mul[B][E1][B] = one
    unit = [one, one, F.zero(), F.zero()]
    return Algebra(F, 4, mul, unit, name=name)


# -- hand-built modules -----------------------------------------------------


def simple_kx2(a: Algebra, name: str = "S") -> FDModule:
    """The simple module over k[x]/(x^n): x acts as zero."""
    F = a.field
    acts = [Mat.identity(F, 1)] + [Mat.zeros(F, 1, 1) for _ in range(a.dim - 1)]
    return FDModule(a, 1, acts, name=name)


def simple_at_idempotent(a: Algebra, idx: int, name: str = "") -> FDModule:
    """One-dimensional module where basis element idx acts as 1 and the
    other basis elements act as 0.  Caller guarantees this is a module
    (true for the catalog algebras whose idx-th element is a primitive
    orthogonal idempotent summing into the unit)."""
    F = a.field
    acts = [Mat.identity(F, 1) if t == idx else Mat.zeros(F, 1, 1)
            for t in range(a.dim)]
    return FDModule(a, 1, acts, name=name or f"S{idx}")


def proj_a2(a: Algebra) -> FDModule:
    """The 2-dimensional indecomposable projective A*e2 over path_a2,
    on the basis (a, e2)."""
    F = a.field
    z, one = F.zero(), F.one()
    acts = [
        Mat.from_rows(F, [[one, z], [z, z]]),   # e1 fixes a, kills e2
        Mat.from_rows(F, [[z, z], [one, z]]),   # arrow: a.a = 0, a.e2 = a
        Mat.from_rows(F, [[z, z], [z, one]]),   # e2
    ]
    return FDModule(a, 2, acts, name="P2")


# -- randomized module generation ------------------------------------------


def random_module(a: Algebra, rng: random.Random, max_free: int = 2,
                  max_cuts: int = 2, name: str = "") -> FDModule:
    """A random quotient of a small free module; valid by construction."""
    g = rng.randint(1, max_free)
    free = free_module(a, g)
    cuts = rng.randint(0, max_cuts)
    if cuts == 0 or free.dim == 0:
        free.name = name or free.name
        return free
    F = a.field
    vecs = []
    for _ in range(cuts):
        vecs.append([F.of_int(rng.randint(-2, 2)) if F.is_rational
                     else F.of_int(rng.randrange(F.p)) for _ in range(free.dim)])
    _, incl = spanned_submodule(free, Mat.from_rows(F, vecs, free.dim))
    quo, _ = quotient_by_rows(free, incl.mat)
    quo.name = name or "rand"
    return quo


def random_hom(x: FDModule, y: FDModule, rng: random.Random) -> ModuleHom:
    """A random element of Hom(x, y) with small integer coefficients."""
    basis = hom_space(x, y)
    F = x.algebra.field
    mat = Mat.zeros(F, x.dim, y.dim)
    for h in basis:
        c = rng.randint(-2, 2) if F.is_rational else rng.randrange(F.p)
        if c:
            mat = mat.add(h.mat.scale(F.of_int(c)))
    return ModuleHom(x, y, mat)


def random_submodule(x: FDModule, rng: random.Random):
    F = x.algebra.field
    if x.dim == 0:
        return spanned_submodule(x, Mat.zeros(F, 0, 0))
    k = rng.randint(0, x.dim)
    vecs = [[F.of_int(rng.randint(-2, 2)) if F.is_rational
             else F.of_int(rng.randrange(F.p)) for _ in range(x.dim)]
            for _ in range(k)]
    return spanned_submodule(x, Mat.from_rows(F, vecs, x.dim) if vecs
                             else Mat.zeros(F, 0, x.dim))


# -- standard Morita contexts -------------------------------------------------


def _one_dim_bimodule(left, right, name=""):
    """k as a bimodule over two algebras acting through their unit
    characters; caller must make sure those characters exist (they do for
    the catalog constructions below)."""
    F = left.field
    eye = Mat.identity(F, 1)
    zero = Mat.zeros(F, 1, 1)
    from .bimodules import Bimodule
    la = [eye if left.basis_el(t) == left.unit else zero for t in range(left.dim)]
    ra = [eye if right.basis_el(t) == right.unit else zero for t in range(right.dim)]
    return Bimodule(left, right, 1, la, ra, name=name or "k")


def zero_context(A, B, name=""):
    """(A, B, 0, 0, 0, 0): the triangular-with-no-glue context."""
    from .bimodules import zero_balanced_map, zero_bimodule
    from .morita import MoritaContext
    M = zero_bimodule(B, A)
    N = zero_bimodule(A, B)
    return MoritaContext(A, B, M, N, zero_balanced_map(M, N, B),
                         zero_balanced_map(N, M, A), name=name)


def triangular_context(F: Field, name="tri"):
    """A = B = k, M = 0, N = k with zero maps, together with the trivial
    extension A = k |x 0; the ring is the upper triangular 2x2 algebra."""
    from .bimodules import (Bimodule, zero_balanced_map, zero_bimodule)
    from .morita import MoritaContext
    from .trivext import trivial_extension
    lam = field_algebra(F, "k")
    ideal = zero_bimodule(lam, lam)
    ext = trivial_extension(lam, ideal, name="k")
    A = ext.A
    B = field_algebra(F, "B")
    eye = Mat.identity(F, 1)
    M = zero_bimodule(B, A)
    N = Bimodule(A, B, 1, [eye], [eye], name="N")
    ctx = MoritaContext(A, B, M, N, zero_balanced_map(M, N, B),
                        zero_balanced_map(N, M, A), name=name)
    return ext, ctx


def two_cycle_context(F: Field, name="2cyc"):
    """A = B = k, M = N = k, both maps zero; the ring is the radical-square
    -zero two-cycle algebra."""
    from .bimodules import Bimodule, zero_balanced_map
    from .morita import MoritaContext
    from .trivext import trivial_extension
    lam = field_algebra(F, "k")
    from .bimodules import zero_bimodule
    ext = trivial_extension(lam, zero_bimodule(lam, lam), name="k")
    A = ext.A
    B = field_algebra(F, "B")
    eye = Mat.identity(F, 1)
    M = Bimodule(B, A, 1, [eye], [eye], name="M")
    N = Bimodule(A, B, 1, [eye], [eye], name="N")
    ctx = MoritaContext(A, B, M, N, zero_balanced_map(M, N, B),
                        zero_balanced_map(N, M, A), name=name)
    return ext, ctx


def glued_psi_context(F: Field, name="5dim"):
    """Lambda = k, I = k, B = k, M = N = k, psi(n (x) m) = nm . x: the
    five-dimensional one-sided-zero context over A = k[x]/(x^2)."""
    from .bimodules import BalancedMap, Bimodule, zero_balanced_map
    from .morita import MoritaContext
    from .trivext import trivial_extension
    lam = field_algebra(F, "k")
    eye = Mat.identity(F, 1)
    ideal = Bimodule(lam, lam, 1, [eye], [eye], name="I")
    ext = trivial_extension(lam, ideal, name="A")
    A = ext.A                       # k[x]/(x^2) on the basis (1, x)
    B = field_algebra(F, "B")
    zero = Mat.zeros(F, 1, 1)
    M = Bimodule(B, A, 1, [eye], [eye, zero], name="M")
    N = Bimodule(A, B, 1, [eye, zero], [eye], name="N")
    psi = BalancedMap(N, M, A, Mat.from_rows(F, [[0, 1]], 2))
    ctx = MoritaContext(A, B, M, N, zero_balanced_map(M, N, B), psi, name=name)
    return ext, ctx


def full_context(R, scale=None, name="full"):
    """(R, R, R, R, phi = c.mult, psi = c.mult) for a commutative algebra R."""
    from .bimodules import BalancedMap
    from .morita import MoritaContext
    F = R.field
    c = scale if scale is not None else F.one()
    reg = regular_bimodule_of(R)
    mult_rows = []
    for i in range(R.dim):
        for j in range(R.dim):
            mult_rows.append([F.mul(c, v) for v in R.mul[i][j]])
    mult = Mat.from_rows(F, mult_rows, R.dim)
    phi = BalancedMap(reg, reg, R, mult)
    psi = BalancedMap(reg, reg, R, mult)
    from .morita import MoritaContext
    return MoritaContext(R, R, reg, reg, phi, psi, name=name)


def regular_bimodule_of(R):
    from .bimodules import regular_bimodule
    return regular_bimodule(R)


def arrow_ideal_context(F: Field, name="a2glue"):
    """Lambda = k x k with the arrow bimodule as ideal, so A = Lambda |x I
    is the upper triangular 2x2 algebra; B = k, M = N = k, psi hits the
    arrow.  A one-sided-zero context whose corner Lambda is not a field."""
    from .bimodules import BalancedMap, Bimodule, zero_balanced_map
    from .morita import MoritaContext
    from .trivext import trivial_extension
    lam = product_fields(F, 2, name="kxk")
    eye = Mat.identity(F, 1)
    zero = Mat.zeros(F, 1, 1)
    # left action through the first idempotent, right through the second
    ideal = Bimodule(lam, lam, 1, [eye, zero], [zero, eye], name="arrow")
    ext = trivial_extension(lam, ideal, name="A")
    A = ext.A                     # basis (e1, e2, arrow)
    B = field_algebra(F, "B")
    # N: left A-action through e1 (pi kills the arrow), right B trivial
    N = Bimodule(A, B, 1, [eye, zero, zero], [eye], name="N")
    # M: left B trivial, right A-action through e2
    M = Bimodule(B, A, 1, [eye], [zero, eye, zero], name="M")
    psi = BalancedMap(N, M, A, Mat.from_rows(F, [[0, 0, 1]], 3))
    ctx = MoritaContext(A, B, M, N, zero_balanced_map(M, N, B), psi, name=name)
    return ext, ctx


# -- randomized context generation (for the acceptance sweeps) -----------------


def _corner_pool(F: Field):
    """Small algebras with hand-listed one-dimensional characters, so the
    generator never needs radical machinery (which is unavailable over
    tiny prime fields)."""
    k = field_algebra(F, "k")
    kk = product_fields(F, 2)
    kx2 = truncated_poly(F, 2)
    chars = {
        id(k): [[F.one()]],
        id(kk): [[F.one(), F.zero()], [F.zero(), F.one()]],
        id(kx2): [[F.one(), F.zero()]],
    }
    return [k, kk, kx2], chars


def _char_module(alg, char, as_right=False):
    """The 1-dimensional module (or right module over the opposite) on
    which basis element t acts by char[t]."""
    from .algebra import opposite_algebra
    F = alg.field
    target = opposite_algebra(alg) if as_right else alg
    acts = [Mat.from_rows(F, [[char[t]]], 1) for t in range(alg.dim)]
    return FDModule(target, 1, acts, name="chi")


def random_zero_context(F: Field, rng: random.Random):
    """(A, B, M, N, 0, 0) with outer-tensor bimodules over small corners."""
    from .bimodules import outer_bimodule, zero_balanced_map, zero_bimodule
    from .morita import MoritaContext
    pool, chars = _corner_pool(F)
    A = rng.choice(pool)
    B = rng.choice(pool)

    def one_bimodule(left, right):
        if rng.random() < 0.2:
            return zero_bimodule(left, right)
        lc = rng.choice(chars[id(left)])
        rc = rng.choice(chars[id(right)])
        v = _char_module(left, lc)
        w = _char_module(right, rc, as_right=True)
        return outer_bimodule(v, w)

    M = one_bimodule(B, A)
    N = one_bimodule(A, B)
    return MoritaContext(A, B, M, N, zero_balanced_map(M, N, B),
                         zero_balanced_map(N, M, A), name="rand0")


def random_glued_context(F: Field, rng: random.Random):
    """A one-sided-zero context over a random trivial extension, with psi a
    random element of the space of admissible balanced maps."""
    from .bimodules import (
        BalancedMap, Bimodule, outer_bimodule, restrict_right, restrict_left,
        zero_balanced_map, _middle_relations,
    )
    from .linalg import kernel_basis
    from .morita import MoritaContext
    from .trivext import trivial_extension
    pool, chars = _corner_pool(F)
    lam = rng.choice(pool[:2])          # keep dim Lambda + dim I <= 3
    lc1 = rng.choice(chars[id(lam)])
    lc2 = rng.choice(chars[id(lam)])
    ideal = outer_bimodule(_char_module(lam, lc1),
                           _char_module(lam, lc2, as_right=True), name="I")
    ext = trivial_extension(lam, ideal)
    A = ext.A
    B = rng.choice(pool)
    bc = rng.choice(chars[id(B)])
    m0 = outer_bimodule(_char_module(B, bc),
                        _char_module(lam, rng.choice(chars[id(lam)]),
                                     as_right=True), name="M0")
    n0 = outer_bimodule(_char_module(lam, rng.choice(chars[id(lam)])),
                        _char_module(B, rng.choice(chars[id(B)]),
                                     as_right=True), name="N0")
    M = restrict_right(m0, ext.proj_rows, A, name="M")
    N = restrict_left(n0, ext.proj_rows, A, name="N")
    # admissible psi: B-balanced, A-A-bilinear, image inside the ideal
    dN, dM, dA = N.dim, M.dim, A.dim
    eye_a = Mat.identity(F, dA)
    eye_nm = Mat.identity(F, dN * dM)
    blocks = []
    rel = _middle_relations(F, N.right_acts, M.left_acts, dN, dM)
    if rel.rows:
        blocks.append(rel.kron(eye_a))
    for t in range(dA):
        left_big = N.left_acts[t].kron(Mat.identity(F, dM))
        blocks.append(left_big.kron(eye_a).sub(
            eye_nm.kron(A.lmul_mats()[t].transpose())))
        right_big = Mat.identity(F, dN).kron(M.right_acts[t])
        blocks.append(right_big.kron(eye_a).sub(
            eye_nm.kron(A.rmul_mats()[t].transpose())))
    blocks.append(eye_nm.kron(ext.proj_rows.transpose()))
    system = Mat.vstack(blocks)
    ker = kernel_basis(system)
    mat = Mat.zeros(F, dN * dM, dA)
    for c in range(ker.cols):
        coef = rng.randint(-1, 1) if F.is_rational else rng.randrange(F.p)
        if coef:
            for i in range(dN * dM):
                for j in range(dA):
                    mat.data[i][j] = F.add(mat.data[i][j],
                                           F.mul(F.of_int(coef),
                                                 ker.data[i * dA + j][c]))
    psi = BalancedMap(N, M, A, mat)
    ctx = MoritaContext(A, B, M, N, zero_balanced_map(M, N, B), psi,
                        name="randpsi")
    return ext, ctx


def random_context(F: Field, rng: random.Random):
    """A random valid Morita context of one of four kinds."""
    kind = rng.choice(["zero", "glued", "swapped", "full"])
    if kind == "zero":
        return kind, random_zero_context(F, rng)
    if kind == "glued":
        return kind, random_glued_context(F, rng)[1]
    if kind == "swapped":
        from .nctensor import swap_context
        return kind, swap_context(random_glued_context(F, rng)[1])
    R = rng.choice([truncated_poly(F, 2), product_fields(F, 2),
                    field_algebra(F)])
    c = F.of_int(rng.randrange(1, 5)) if F.is_rational else \
        F.of_int(rng.randrange(1, F.p))
    return kind, full_context(R, scale=c)


def corrupt_psi(ctx, rng: random.Random):
    """Perturb psi until validation fails; returns the corrupted context."""
    from .bimodules import BalancedMap
    from .morita import MoritaContext, validate_context
    F = ctx.A.field
    for _ in range(200):
        mat = ctx.psi.mat.copy()
        i = rng.randrange(max(1, mat.rows))
        j = rng.randrange(max(1, mat.cols))
        if mat.rows == 0 or mat.cols == 0:
            return None
        bump = F.of_int(rng.randint(1, 3)) if F.is_rational else \
            F.of_int(rng.randrange(1, F.p))
        mat.data[i][j] = F.add(mat.data[i][j], bump)
        bad_psi = BalancedMap(ctx.N, ctx.M, ctx.A, mat)
        broken = MoritaContext(ctx.A, ctx.B, ctx.M, ctx.N, ctx.phi, bad_psi)
        if validate_context(broken):
            return broken
    return None


def random_quadruple(ctx, rng: random.Random, allow_sum: bool = True):
    """A random valid quadruple: a functor image on a random corner module,
    or a direct sum of two of them."""
    from .linalg import row_space
    from .modules import quotient_by_rows
    from .morita import direct_sum_quadruples, h_a, h_b, t_a, t_b, z_a, z_b

    def one():
        kind = rng.choice(["t_a", "t_b", "h_a", "h_b", "z_a", "z_b"])
        if kind in ("t_a", "h_a", "z_a"):
            u = random_module(ctx.A, rng, max_free=1, max_cuts=1)
            if kind == "z_a":
                I = ctx.ideal_rows_a()
                if I.rows and u.dim:
                    rows = row_space(Mat.vstack(
                        [u.act_of(I.row(r)) for r in range(I.rows)]))
                    u, _ = quotient_by_rows(u, rows)
                return z_a(ctx, u, name="rand_za")
            return (t_a if kind == "t_a" else h_a)(ctx, u, name=f"rand_{kind}")
        v = random_module(ctx.B, rng, max_free=1, max_cuts=1)
        if kind == "z_b":
            J = ctx.ideal_rows_b()
            if J.rows and v.dim:
                rows = row_space(Mat.vstack(
                    [v.act_of(J.row(r)) for r in range(J.rows)]))
                v, _ = quotient_by_rows(v, rows)
            return z_b(ctx, v, name="rand_zb")
        return (t_b if kind == "t_b" else h_b)(ctx, v, name=f"rand_{kind}")

    q = one()
    if allow_sum and rng.random() < 0.4:
        q = direct_sum_quadruples([q, one()], name="rand_sum")
    return q
