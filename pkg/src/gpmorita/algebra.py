"""Finite-dimensional associative unital algebras via structure constants.

An algebra is a basis b_0..b_{n-1} with products b_i b_j = sum_k c[i][j][k] b_k
and a distinguished unit vector.  Elements are coordinate lists.

Matrix convention (package-wide): maps act on row vectors from the right.
Left multiplication by a, L_a : x |-> a x, then satisfies L_{ab} = L_b @ L_a
as matrices, while right multiplication R_a : x |-> x a satisfies
R_{ab} = R_a @ R_b.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import Field
from .linalg import Mat, in_row_space, left_kernel, row_space, rref, solve_left


class AlgebraError(ValueError):
    pass


@dataclass
class Algebra:
    field: Field
    dim: int
    mul: list[list[list]]          # mul[i][j] = coords of b_i * b_j
    unit: list                     # coords of 1
    name: str = ""
    _lmul: list[Mat] | None = dc_field(default=None, repr=False)
    _rmul: list[Mat] | None = dc_field(default=None, repr=False)
    _op: "Algebra | None" = dc_field(default=None, repr=False)
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        n = self.dim
        if len(self.mul) != n or any(len(r) != n for r in self.mul):
            raise AlgebraError("structure constant table has wrong shape")
        if any(len(self.mul[i][j]) != n for i in range(n) for j in range(n)):
            raise AlgebraError("structure constant entries have wrong length")
        if len(self.unit) != n:
            raise AlgebraError("unit vector has wrong length")

    def __repr__(self):
        return f"Algebra({self.name or '?'}, dim={self.dim} over {self.field})"

    # -- element arithmetic on coordinate lists ------------------------

    def zero_el(self) -> list:
        return [self.field.zero()] * self.dim

    def basis_el(self, i: int) -> list:
        e = self.zero_el()
        e[i] = self.field.one()
        return e

    def multiply(self, a: list, b: list) -> list:
        F = self.field
        out = self.zero_el()
        for i, ai in enumerate(a):
            if F.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                if F.is_zero(bj):
                    continue
                c = F.mul(ai, bj)
                row = self.mul[i][j]
                for k in range(self.dim):
                    if not F.is_zero(row[k]):
                        out[k] = F.add(out[k], F.mul(c, row[k]))
        return out

    def lmul_mats(self) -> list[Mat]:
        """Left multiplication by each basis element, as row-action matrices."""
        if self._lmul is None:
            self._lmul = [
                Mat(self.field, [self.mul[t][i][:] for i in range(self.dim)], self.dim)
                for t in range(self.dim)
            ]
        return self._lmul

    def rmul_mats(self) -> list[Mat]:
        """Right multiplication by each basis element."""
        if self._rmul is None:
            self._rmul = [
                Mat(self.field, [self.mul[i][t][:] for i in range(self.dim)], self.dim)
                for t in range(self.dim)
            ]
        return self._rmul

    def lmul_of(self, a: list) -> Mat:
        out = Mat.zeros(self.field, self.dim, self.dim)
        for t, c in enumerate(a):
            if not self.field.is_zero(c):
                out = out.add(self.lmul_mats()[t].scale(c))
        return out

    def rmul_of(self, a: list) -> Mat:
        out = Mat.zeros(self.field, self.dim, self.dim)
        for t, c in enumerate(a):
            if not self.field.is_zero(c):
                out = out.add(self.rmul_mats()[t].scale(c))
        return out


@dataclass
class Violation:
    kind: str                      # "associativity" | "unit"
    indices: tuple
    detail: str = ""


def validate_algebra(a: Algebra) -> list[Violation]:
    """Check associativity on all basis triples and both unit laws."""
    out = []
    n = a.dim
    for i in range(n):
        for j in range(n):
            ij = a.mul[i][j]
            for k in range(n):
                left = a.multiply(ij, a.basis_el(k))
                right = a.multiply(a.basis_el(i), a.mul[j][k])
                if left != right:
                    out.append(Violation("associativity", (i, j, k)))
    for i in range(n):
        e = a.basis_el(i)
        if a.multiply(a.unit, e) != e:
            out.append(Violation("unit", (i,), "1*b != b"))
        if a.multiply(e, a.unit) != e:
            out.append(Violation("unit", (i,), "b*1 != b"))
    return out


def require_valid(a: Algebra):
    bad = validate_algebra(a)
    if bad:
        v = bad[0]
        raise AlgebraError(f"invalid algebra {a.name!r}: {v.kind} fails at {v.indices}")


def opposite_algebra(a: Algebra) -> Algebra:
    """Opposite algebra; cached, and an involution on instances."""
    if a._op is None:
        op = Algebra(
            a.field, a.dim,
            [[a.mul[j][i][:] for j in range(a.dim)] for i in range(a.dim)],
            a.unit[:],
            name=f"{a.name}^op" if a.name else "op",
        )
        a._op = op
        op._op = a
    return a._op


def generating_subset(a: Algebra) -> list[int]:
    """Indices of basis elements generating a as a unital algebra.

    Intertwiner computations only need constraints for a generating set,
    which keeps the linear systems small.
    """
    F = a.field
    span = row_space(Mat.from_rows(F, [a.unit], a.dim))
    gens: list[int] = []
    for i in range(a.dim):
        e = Mat.from_rows(F, [a.basis_el(i)], a.dim)
        if in_row_space(span, e):
            continue
        gens.append(i)
        # close the span under products with everything already present
        while True:
            rows = [r[:] for r in span.data]
            for u in list(rows):
                for g in gens:
                    rows.append(a.multiply(u, a.basis_el(g)))
                    rows.append(a.multiply(a.basis_el(g), u))
            new_span = row_space(Mat.from_rows(F, rows, a.dim))
            if new_span.rows == span.rows:
                break
            span = new_span
        if span.rows == a.dim:
            break
    return gens


def subalgebra(a: Algebra, rows: Mat, name: str = "") -> tuple[Algebra, Mat]:
    """Subalgebra on the row span of `rows` (must contain 1, be closed).

    Returns (algebra on the canonical row-space basis, inclusion matrix).
    """
    basis = row_space(rows)
    q = basis.rows
    unit_c = solve_left(basis, Mat.from_rows(a.field, [a.unit], a.dim))
    if unit_c is None:
        raise AlgebraError("subalgebra does not contain the unit")
    mul = []
    for i in range(q):
        rowi = []
        for j in range(q):
            prod = a.multiply(basis.row(i), basis.row(j))
            c = solve_left(basis, Mat.from_rows(a.field, [prod], a.dim))
            if c is None:
                raise AlgebraError(f"span not closed under multiplication at ({i},{j})")
            rowi.append(c.row(0))
        mul.append(rowi)
    return Algebra(a.field, q, mul, unit_c.row(0), name=name), basis


def corner_algebra(a: Algebra, eps: list, name: str = "") -> tuple[Algebra, Mat]:
    """The corner eps * a * eps as an algebra with unit eps.

    Returns (corner algebra on the canonical basis, inclusion matrix).
    """
    rows = row_space(Mat.from_rows(
        a.field, [a.multiply(a.multiply(eps, a.basis_el(i)), eps) for i in range(a.dim)],
        a.dim))
    q = rows.rows
    unit_c = solve_left(rows, Mat.from_rows(a.field, [eps], a.dim))
    if unit_c is None:
        raise AlgebraError("idempotent does not lie in its own corner")
    mul = []
    for i in range(q):
        rowi = []
        for j in range(q):
            prod = a.multiply(rows.row(i), rows.row(j))
            c = solve_left(rows, Mat.from_rows(a.field, [prod], a.dim))
            if c is None:
                raise AlgebraError("corner not closed under multiplication")
            rowi.append(c.row(0))
        mul.append(rowi)
    return Algebra(a.field, q, mul, unit_c.row(0), name=name), rows


def quotient_algebra(a: Algebra, ideal_rows: Mat, name: str = "") -> tuple[Algebra, Mat]:
    """Quotient by a two-sided ideal given as a row span.

    Returns (quotient algebra, projection matrix a -> quotient); the
    quotient basis is the set of non-pivot coordinates of the ideal's
    reduced echelon form, so it is canonical.
    """
    F = a.field
    R = row_space(ideal_rows)
    for t in range(a.dim):
        if not in_row_space(R, R @ a.lmul_mats()[t]) or not in_row_space(R, R @ a.rmul_mats()[t]):
            raise AlgebraError("row span is not a two-sided ideal")
    proj = _quotient_projection(F, R, a.dim)
    q = proj.cols
    # products of quotient basis elements via arbitrary lifts
    lift = _quotient_section(F, R, a.dim)
    mul = []
    for i in range(q):
        rowi = []
        for j in range(q):
            prod = a.multiply(lift.row(i), lift.row(j))
            rowi.append((Mat.from_rows(F, [prod], a.dim) @ proj).row(0))
        mul.append(rowi)
    unit = (Mat.from_rows(F, [a.unit], a.dim) @ proj).row(0)
    return Algebra(F, q, mul, unit, name=name), proj


def _quotient_projection(F: Field, rel_rows: Mat, ambient: int) -> Mat:
    """Projection of k^ambient onto the non-pivot coordinates mod rel_rows."""
    return quotient_maps(F, rel_rows, ambient)[0]


def quotient_maps(F: Field, rel_rows: Mat, ambient: int) -> tuple[Mat, Mat]:
    """(projection, canonical section) for k^ambient modulo a row span.

    The quotient lives on the non-pivot coordinates of the span's reduced
    echelon form; the section lifts quotient coordinates to the matching
    ambient unit vectors, so sec @ proj = identity.
    """
    R, pivots = rref(rel_rows)
    pivset = set(pivots)
    free = [c for c in range(ambient) if c not in pivset]
    proj = Mat.zeros(F, ambient, len(free))
    sec = Mat.zeros(F, len(free), ambient)
    for k, c in enumerate(free):
        proj.data[c][k] = F.one()
        sec.data[k][c] = F.one()
    for i, pc in enumerate(pivots):
        for k, c in enumerate(free):
            proj.data[pc][k] = F.neg(R.data[i][c])
    return proj, sec


def _quotient_section(F: Field, rel_rows: Mat, ambient: int) -> Mat:
    _, pivots = rref(rel_rows)
    pivset = set(pivots)
    free = [c for c in range(ambient) if c not in pivset]
    sec = Mat.zeros(F, len(free), ambient)
    for k, c in enumerate(free):
        sec.data[k][c] = F.one()
    return sec


class UnsupportedField(AlgebraError):
    """The chosen algorithm does not apply over this field."""


def trace_form(a: Algebra) -> Mat:
    """T[i][j] = trace of left multiplication by b_i b_j on the regular module."""
    F = a.field
    lm = a.lmul_mats()
    traces = [sum((m.data[d][d] for d in range(a.dim)), F.zero()) if F.is_rational
              else sum(m.data[d][d] for d in range(a.dim)) % F.p
              for m in lm]
    T = Mat.zeros(F, a.dim, a.dim)
    for i in range(a.dim):
        for j in range(a.dim):
            acc = F.zero()
            row = a.mul[i][j]
            for k in range(a.dim):
                if not F.is_zero(row[k]):
                    acc = F.add(acc, F.mul(row[k], traces[k]))
            T.data[i][j] = acc
    return T


def radical_basis(a: Algebra) -> Mat:
    """Canonical row basis of the Jacobson radical.

    Uses the trace-form kernel, valid in characteristic 0 and in
    characteristic p > dim; other characteristics raise UnsupportedField.
    """
    p = a.field.characteristic
    if p != 0 and p <= a.dim:
        raise UnsupportedField(
            f"radical via trace form needs char 0 or p > dim; got p={p}, dim={a.dim}")
    return left_kernel(trace_form(a))


def nilpotency_index(a: Algebra, rows: Mat, cap: int | None = None) -> int | None:
    """Least m with span^m = 0 under products, or None if not nilpotent by cap."""
    cap = cap if cap is not None else a.dim + 1
    cur = row_space(rows)
    m = 1
    while cur.rows:
        if m > cap:
            return None
        prods = []
        for i in range(cur.rows):
            for j in range(rows.rows):
                prods.append(a.multiply(cur.row(i), rows.row(j)))
        cur = row_space(Mat.from_rows(a.field, prods, a.dim)) if prods else \
            Mat.zeros(a.field, 0, a.dim)
        m += 1
    return m


def ideal_closure(a: Algebra, rows: Mat) -> Mat:
    """Smallest two-sided ideal containing the row span."""
    span = row_space(rows)
    while True:
        prods = [r[:] for r in span.data]
        for i in range(span.rows):
            for t in range(a.dim):
                prods.append((Mat.from_rows(a.field, [span.row(i)], a.dim)
                              @ a.lmul_mats()[t]).row(0))
                prods.append((Mat.from_rows(a.field, [span.row(i)], a.dim)
                              @ a.rmul_mats()[t]).row(0))
        new = row_space(Mat.from_rows(a.field, prods, a.dim))
        if new.rows == span.rows:
            return new
        span = new
