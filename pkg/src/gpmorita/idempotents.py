"""Primitive orthogonal idempotents of a split finite-dimensional algebra.

Route: radical quotient -> central idempotents of the semisimple quotient
(splitting minimal polynomials of central elements) -> one minimal left
ideal per block and a decomposition of the block's regular module ->
projections give primitive idempotents -> lift through the radical.

Splitness is required: any minimal polynomial with an irreducible factor
of degree > 1 over the ground field, or a simple module with endomorphism
ring bigger than k, raises SplitError.
"""
from __future__ import annotations

import random

from .algebra import (
    Algebra, AlgebraError, corner_algebra, quotient_algebra, radical_basis,
)
from .fields import Field
from .linalg import Mat, left_kernel, rank, row_space, solve_left
from .modules import (
    FDModule, hom_space, regular_module, submodule_from_rows,
)


class SplitError(AlgebraError):
    """The algebra is not split over the ground field (or could not be
    certified split within the search budget)."""


# -- polynomial helpers (coefficient lists, lowest degree first) -----------


def _poly_trim(F: Field, a: list) -> list:
    while a and F.is_zero(a[-1]):
        a = a[:-1]
    return a


def _poly_mul(F: Field, a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return _poly_trim(F, out)


def _poly_divmod(F: Field, a: list, b: list) -> tuple[list, list]:
    b = _poly_trim(F, b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = a[:]
    q = [F.zero()] * max(0, len(a) - len(b) + 1)
    inv_lead = F.inv(b[-1])
    while len(a) >= len(b) and _poly_trim(F, a):
        a = _poly_trim(F, a)
        if len(a) < len(b):
            break
        c = F.mul(a[-1], inv_lead)
        d = len(a) - len(b)
        q[d] = c
        for i, y in enumerate(b):
            a[d + i] = F.sub(a[d + i], F.mul(c, y))
        a = _poly_trim(F, a)
    return _poly_trim(F, q), _poly_trim(F, a)


def _poly_gcd(F: Field, a: list, b: list) -> list:
    a, b = _poly_trim(F, a), _poly_trim(F, b)
    while b:
        _, r = _poly_divmod(F, a, b)
        a, b = b, r
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(inv, x) for x in a]
    return a


def _poly_deriv(F: Field, a: list) -> list:
    return _poly_trim(F, [F.mul(F.of_int(i), a[i]) for i in range(1, len(a))])


def _poly_powmod_xq(F: Field, modulus: list, q: int) -> list:
    """x^q mod modulus by binary powering."""
    result = [F.zero(), F.one()]
    _, result = _poly_divmod(F, result, modulus)
    # compute via repeated squaring of x
    base = result
    result = [F.one()]
    e = q
    while e:
        if e & 1:
            result = _poly_divmod(F, _poly_mul(F, result, base), modulus)[1]
        base = _poly_divmod(F, _poly_mul(F, base, base), modulus)[1]
        e >>= 1
    return result


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def squarefree_part(F: Field, a: list) -> list:
    d = _poly_deriv(F, a)
    if not d:
        return a
    g = _poly_gcd(F, a, d)
    q, r = _poly_divmod(F, a, g)
    assert not r
    return q


def linear_roots(F: Field, poly: list, seed: int = 0) -> tuple[list, bool]:
    """Distinct roots of `poly` in F, and whether its squarefree part is a
    product of linear factors over F."""
    sf = squarefree_part(F, poly)
    n = len(sf) - 1
    if n <= 0:
        return [], True
    roots = []
    if F.is_rational:
        # clear denominators, rational root theorem
        den = 1
        for c in sf:
            den = den * c.denominator // _gcd_int(den, c.denominator)
        zc = [int(c * den) for c in sf]
        lead, const = zc[-1], zc[0]
        if const == 0:
            roots.append(F.zero())
            sf2, _ = _poly_divmod(F, sf, [F.zero(), F.one()])
            more, split = linear_roots(F, sf2, seed)
            return sorted(set([F.zero()] + more)), split
        from fractions import Fraction
        cands = set()
        for p in _int_divisors(const):
            for q in _int_divisors(lead):
                cands.add(Fraction(p, q))
                cands.add(Fraction(-p, q))
        for cand in sorted(cands):
            if _poly_eval(F, sf, cand) == 0:
                roots.append(cand)
        return roots, len(roots) == n
    p = F.p
    # product of the distinct linear factors: gcd(x^p - x, sf)
    xp = _poly_powmod_xq(F, sf, p)
    width = max(len(xp), 2)
    a_ = xp + [F.zero()] * (width - len(xp))
    b_ = [F.zero(), F.one()] + [F.zero()] * (width - 2)
    xpx = _poly_trim(F, [F.sub(u, v) for u, v in zip(a_, b_)])
    lin = _poly_gcd(F, xpx, sf) if xpx else sf
    deg_lin = len(lin) - 1 if lin else 0
    if deg_lin == 0:
        return [], n == 0
    if p <= 4096:
        for c in range(p):
            if _poly_eval(F, lin, F.of_int(c)) == 0:
                roots.append(F.of_int(c))
        return roots, deg_lin == n
    roots = _cz_roots(F, lin, seed)
    return sorted(roots), deg_lin == n


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _poly_eval(F: Field, a: list, x):
    acc = F.zero()
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def _cz_roots(F: Field, lin: list, seed: int) -> list:
    """Roots of a product of distinct linear factors over a large F_p
    (equal-degree splitting with a seeded generator)."""
    rng = random.Random(seed)
    out = []

    def split(f):
        deg = len(f) - 1
        if deg == 0:
            return
        if deg == 1:
            out.append(F.mul(F.neg(f[0]), F.inv(f[1])))
            return
        while True:
            a = F.of_int(rng.randrange(F.p))
            shifted = [F.add(f[0], F.zero()), *f[1:]]
            # g = gcd((x + a)^((p-1)/2) - 1, f)
            base = [a, F.one()]
            e = (F.p - 1) // 2
            acc = [F.one()]
            b = _poly_divmod(F, base, f)[1]
            ee = e
            while ee:
                if ee & 1:
                    acc = _poly_divmod(F, _poly_mul(F, acc, b), f)[1]
                b = _poly_divmod(F, _poly_mul(F, b, b), f)[1]
                ee >>= 1
            acc = _poly_trim(F, [F.sub(c, F.one() if i == 0 else F.zero())
                                 for i, c in enumerate(acc + [F.zero()])])
            g = _poly_gcd(F, acc, f)
            if 0 < len(g) - 1 < deg:
                split(g)
                q, _ = _poly_divmod(F, f, g)
                split(q)
                return

    split(lin)
    return out


# -- minimal polynomials inside an algebra ---------------------------------


def element_min_poly(a: Algebra, el: list, unit: list | None = None) -> list:
    """Minimal polynomial of `el` in the (corner) algebra with the given unit."""
    F = a.field
    unit = unit if unit is not None else a.unit
    powers = [unit]
    rows = [unit]
    while True:
        nxt = a.multiply(powers[-1], el)
        coeffs = solve_left(Mat.from_rows(F, rows, a.dim),
                            Mat.from_rows(F, [nxt], a.dim))
        if coeffs is not None:
            c = coeffs.row(0)
            return _poly_trim(F, [F.neg(x) for x in c] + [F.one()])
        powers.append(nxt)
        rows.append(nxt)
        if len(rows) > a.dim + 1:
            raise AlgebraError("minimal polynomial did not terminate")


def _apply_poly(a: Algebra, poly: list, el: list, unit: list) -> list:
    out = a.zero_el()
    power = unit
    F = a.field
    for c in poly:
        if not F.is_zero(c):
            term = [F.mul(c, v) for v in power]
            out = [F.add(x, y) for x, y in zip(out, term)]
        power = a.multiply(power, el)
    return out


# -- semisimple split structure ---------------------------------------------


def center_rows(a: Algebra) -> Mat:
    diffs = [a.rmul_mats()[t].sub(a.lmul_mats()[t]) for t in range(a.dim)]
    return left_kernel(Mat.hstack(diffs)) if diffs else Mat.identity(a.field, a.dim)


def central_primitive_idempotents(ss: Algebra, seed: int = 0) -> list[list]:
    """Central primitive idempotents of a split semisimple algebra."""
    F = ss.field
    Z = center_rows(ss)
    idems = [ss.unit]
    for zi in range(Z.rows):
        z = Z.row(zi)
        new = []
        for e in idems:
            w = ss.multiply(z, e)
            mp = element_min_poly(ss, w, unit=e)
            roots, fully = linear_roots(F, mp, seed)
            if not fully:
                raise SplitError("central element with a non-linear irreducible factor")
            if len(roots) <= 1:
                new.append(e)
                continue
            for lam in roots:
                # Lagrange idempotent for the eigenvalue lam of w on the corner
                num = e
                den = F.one()
                for mu in roots:
                    if mu == lam:
                        continue
                    shift = [F.sub(x, F.mul(mu, y)) for x, y in zip(w, e)]
                    num = ss.multiply(num, shift)
                    den = F.mul(den, F.sub(lam, mu))
                piece = [F.mul(F.inv(den), x) for x in num]
                new.append(piece)
        idems = new
    for e in idems:
        if ss.multiply(e, e) != e:
            raise AlgebraError("central splitting produced a non-idempotent")
    return idems


def _singular_candidates(b: Algebra, seed: int, budget: int = 300):
    """Deterministic-then-seeded stream of elements to probe for zero divisors."""
    F = b.field
    for i in range(b.dim):
        yield b.basis_el(i)
    for i in range(b.dim):
        for j in range(b.dim):
            yield b.mul[i][j]
            if i < j:
                e = [F.add(x, y) for x, y in zip(b.basis_el(i), b.basis_el(j))]
                yield e
                e = [F.sub(x, y) for x, y in zip(b.basis_el(i), b.basis_el(j))]
                yield e
    for i in range(b.dim):
        el = b.basis_el(i)
        mp = element_min_poly(b, el)
        roots, _ = linear_roots(F, mp, seed)
        for lam in roots:
            yield [F.sub(x, F.mul(lam, u)) for x, u in zip(el, b.unit)]
    rng = random.Random(seed)
    for _ in range(budget):
        if F.is_rational:
            yield [F.of_int(rng.randint(-2, 2)) for _ in range(b.dim)]
        else:
            yield [F.of_int(rng.randrange(F.p)) for _ in range(b.dim)]


def _minimal_left_ideal(b: Algebra, seed: int = 0) -> FDModule:
    """A simple submodule of the regular module of a split simple algebra."""
    reg = regular_module(b)
    if b.dim == 1:
        return reg
    F = b.field
    current: FDModule | None = None
    current_incl = None
    for u in _singular_candidates(b, seed):
        img = row_space(b.rmul_of(u))   # B*u = image of right multiplication
        if 0 < img.rows < b.dim:
            if current is None or img.rows < current.dim:
                current, current_incl = submodule_from_rows(reg, img)
        if current is not None and current.dim <= _isqrt(b.dim):
            break
    if current is None:
        raise SplitError("no zero divisor found; possibly a division algebra")
    # descend to a simple submodule, certified by a 1-dimensional endo ring
    while True:
        endos = hom_space(current, current)
        if len(endos) == 1:
            return current
        descended = False
        for h in endos:
            if not h.mat.is_zero() and rank(h.mat) < current.dim:
                rows = row_space(h.mat @ current_incl.mat)
                current, current_incl = submodule_from_rows(reg, rows)
                descended = True
                break
        if descended:
            continue
        # no singular endo in the canonical basis: split the (strictly
        # smaller) endomorphism algebra recursively and use a projection
        proj = _idempotent_endo(b, endos, seed)
        if proj is None:
            raise SplitError("simple module with endomorphism ring bigger than k")
        rows = row_space(proj @ current_incl.mat)
        current, current_incl = submodule_from_rows(reg, rows)


def _idempotent_endo(b: Algebra, endos, seed: int) -> Mat | None:
    """A proper idempotent in an endomorphism algebra, as a matrix.

    The endo algebra (product = composition, source first) is strictly
    smaller than the block it came from, so the recursion terminates.
    """
    F = b.field
    k = len(endos)
    basis = Mat.vstack([_vec_rows(h.mat) for h in endos])
    mul = []
    for i in range(k):
        row = []
        for j in range(k):
            comp = endos[i].mat @ endos[j].mat
            c = solve_left(basis, _vec_rows(comp))
            if c is None:
                raise AlgebraError("endomorphisms not closed under composition")
            row.append(c.row(0))
        mul.append(row)
    ident = Mat.identity(F, endos[0].mat.rows)
    unit = solve_left(basis, _vec_rows(ident))
    if unit is None:
        raise AlgebraError("identity endo missing from the endo space")
    E = Algebra(F, k, mul, unit.row(0), name="End")
    prims = primitive_idempotents_semisimple(E, seed)
    coeffs, _ = prims[0]
    out = Mat.zeros(F, ident.rows, ident.cols)
    for c, h in zip(coeffs, endos):
        if not F.is_zero(c):
            out = out.add(h.mat.scale(c))
    if rank(out) == ident.rows:
        return None
    return out


def _vec_rows(m: Mat) -> Mat:
    flat = []
    for row in m.data:
        flat.extend(row)
    return Mat(m.field, [flat], m.rows * m.cols)


def _isqrt(n: int) -> int:
    r = int(n ** 0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


def primitive_idempotents_semisimple(ss: Algebra, seed: int = 0) -> list[tuple[list, int]]:
    """Primitive orthogonal idempotents of a split semisimple algebra,
    tagged with the index of their central block; they sum to 1."""
    F = ss.field
    out = []
    centrals = central_primitive_idempotents(ss, seed)
    for block_index, eps in enumerate(centrals):
        block, incl = corner_algebra(ss, eps, name=f"block{block_index}")
        simple = _minimal_left_ideal(block, seed)
        reg = regular_module(block)
        # decompose the regular module into copies of the simple
        chosen: list[Mat] = []
        span = Mat.zeros(F, 0, block.dim)
        for h in hom_space(simple, reg):
            img = h.mat
            cand = Mat.vstack([span, img]) if span.rows else img
            if rank(cand) == span.rows + simple.dim:
                chosen.append(img)
                span = row_space(cand)
                if span.rows == block.dim:
                    break
        if span.rows != block.dim:
            raise SplitError("regular module did not decompose into one simple")
        C = Mat.vstack(chosen)
        Cinv = solve_left(C, Mat.identity(F, block.dim))
        off = 0
        for img in chosen:
            sel = Mat.zeros(F, block.dim, block.dim)
            for i in range(img.rows):
                sel.data[off + i][off + i] = F.one()
            P = Cinv @ sel @ C
            e_block = (Mat.from_rows(F, [block.unit], block.dim) @ P).row(0)
            e = (Mat.from_rows(F, [e_block], block.dim) @ incl).row(0)
            out.append((e, block_index))
            off += img.rows
    total = [F.zero()] * ss.dim
    for e, _ in out:
        total = [F.add(x, y) for x, y in zip(total, e)]
    if total != list(ss.unit):
        raise AlgebraError("primitive idempotents do not sum to 1")
    for i, (e, _) in enumerate(out):
        if ss.multiply(e, e) != e:
            raise AlgebraError("projection produced a non-idempotent")
        for j, (f, _) in enumerate(out):
            if i != j and any(not F.is_zero(c) for c in ss.multiply(e, f)):
                raise AlgebraError("idempotents are not orthogonal")
    return out


def _newton_idempotent(a: Algebra, x: list, iters: int) -> list:
    F = a.field
    for _ in range(iters):
        x2 = a.multiply(x, x)
        x3 = a.multiply(x2, x)
        x = [F.sub(F.mul(F.of_int(3), u), F.mul(F.of_int(2), v))
             for u, v in zip(x2, x3)]
    return x


def primitive_idempotents(a: Algebra, seed: int = 0) -> list[tuple[list, int]]:
    """Complete list of primitive orthogonal idempotents of a split algebra,
    each tagged with its block (= isomorphism class of the projective Ae)."""
    F = a.field
    rad = radical_basis(a)
    if rad.rows == 0:
        return primitive_idempotents_semisimple(a, seed)
    ss, proj = quotient_algebra(a, rad, name=f"{a.name}/rad")
    section = solve_left(proj, Mat.identity(F, ss.dim))
    assert section is not None
    bars = primitive_idempotents_semisimple(ss, seed)
    # radical nilpotency index bounds the lifting iterations
    nilp = 1
    cur = rad
    while cur.rows:
        prods = []
        for i in range(cur.rows):
            for j in range(rad.rows):
                prods.append(a.multiply(cur.row(i), rad.row(j)))
        cur = row_space(Mat.from_rows(F, prods, a.dim)) if prods else Mat.zeros(F, 0, a.dim)
        nilp += 1
    iters = max(1, (nilp - 1).bit_length() + 1)
    lifted: list[tuple[list, int]] = []
    fsum = a.zero_el()
    for k, (ebar, blk) in enumerate(bars):
        if k == len(bars) - 1:
            e = [F.sub(u, v) for u, v in zip(a.unit, fsum)]
        else:
            x = (Mat.from_rows(F, [ebar], ss.dim) @ section).row(0)
            comp = [F.sub(u, v) for u, v in zip(a.unit, fsum)]
            x = a.multiply(a.multiply(comp, x), comp)
            e = _newton_idempotent(a, x, iters)
        if a.multiply(e, e) != e:
            raise AlgebraError("idempotent lifting failed")
        lifted.append((e, blk))
        fsum = [F.add(u, v) for u, v in zip(fsum, e)]
    if fsum != list(a.unit):
        raise AlgebraError("lifted idempotents do not sum to 1")
    for i in range(len(lifted)):
        for j in range(len(lifted)):
            if i != j:
                prod = a.multiply(lifted[i][0], lifted[j][0])
                if any(not F.is_zero(c) for c in prod):
                    raise AlgebraError("lifted idempotents are not orthogonal")
    return lifted


def indecomposable_projectives(a: Algebra, seed: int = 0):
    """One projective module A*e per primitive idempotent, with block tags.

    Returns a list of (module, inclusion-into-regular, idempotent, block).
    """
    reg = regular_module(a)
    out = []
    for e, blk in primitive_idempotents(a, seed):
        rows = row_space(a.rmul_of(e))
        mod, incl = submodule_from_rows(reg, rows, name=f"P(e{len(out)})")
        out.append((mod, incl, e, blk))
    return out
