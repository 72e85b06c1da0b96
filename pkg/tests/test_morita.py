from __future__ import annotations

import random

import pytest

from gpmorita.algebra import validate_algebra
from gpmorita.bimodules import BalancedMap
from gpmorita.catalog import (
    field_algebra, glued_psi_context, path_a2, random_module, triangular_context,
    truncated_poly, two_cycle_context, two_cycle_rad_square,
)
from gpmorita.fields import GF, QQ
from gpmorita.linalg import Mat, rank
from gpmorita.modules import (
    hom_dim, hom_space, is_isomorphic, regular_module, validate_module,
)
from gpmorita.morita import (
    ContextError, build_ring, classify_injectives, classify_projectives,
    direct_sum_quadruples, h_a, h_b, make_quadruple, module_to_quadruple,
    p_a, p_b, q_a, q_b, quadruple_cokernel, quadruple_hom_space,
    quadruple_is_isomorphic, quadruple_kernel, quadruple_to_module,
    regular_quadruple, regular_right_quadruples, t_a, t_b, tensor_over_ring,
    tensor_over_ring_oracle, u_a, validate_context, validate_quadruple,
    validate_quadruple_hom, z_a, z_b, zero_quadruple,
)
from gpmorita.homology import is_projective
from gpmorita.trivext import t_lambda


def _contexts():
    _, tri = triangular_context(QQ())
    _, cyc = two_cycle_context(QQ())
    _, glued = glued_psi_context(QQ())
    return [tri, cyc, glued]


def test_validate_standard_contexts():
    for ctx in _contexts():
        assert validate_context(ctx) == []


def test_validate_rejects_corrupted_psi():
    ext, ctx = glued_psi_context(QQ())
    # break balancedness/linearity: send n (x) m to 1 instead of x
    bad = BalancedMap(ctx.N, ctx.M, ctx.A, Mat.from_rows(QQ(), [[1, 0]], 2))
    from gpmorita.morita import MoritaContext
    broken = MoritaContext(ctx.A, ctx.B, ctx.M, ctx.N, ctx.phi, bad)
    assert validate_context(broken) != []
    with pytest.raises(ContextError):
        build_ring(broken)


def test_build_ring_two_cycle():
    _, ctx = two_cycle_context(QQ())
    mr = build_ring(ctx)
    assert mr.ring.dim == 4
    # both off-diagonal products vanish
    n, m = mr.embed_n([QQ().one()]), mr.embed_m([QQ().one()])
    assert mr.ring.multiply(n, m) == mr.ring.zero_el()
    assert mr.ring.multiply(m, n) == mr.ring.zero_el()
    # e1 + e2 = 1, orthogonal
    one = [a + b for a, b in zip(mr.e1, mr.e2)]
    assert one == mr.ring.unit
    assert mr.ring.multiply(mr.e1, mr.e2) == mr.ring.zero_el()


def test_build_ring_glued_psi():
    _, ctx = glued_psi_context(QQ())
    mr = build_ring(ctx)
    assert mr.ring.dim == 5
    n, m = mr.embed_n([QQ().one()]), mr.embed_m([QQ().one()])
    nm = mr.ring.multiply(n, m)           # = x inside the A corner
    assert nm == mr.embed_a([QQ().zero(), QQ().one()])
    assert mr.ring.multiply(m, n) == mr.ring.zero_el()


def test_build_ring_triangular_matches_path_algebra():
    _, ctx = triangular_context(QQ())
    mr = build_ring(ctx)
    assert mr.ring.dim == 3
    # basis order (A, N, B) gives literally the upper triangular table
    assert mr.ring.mul == path_a2(QQ()).mul


def test_functor_images_are_valid_quadruples():
    for ctx in _contexts():
        for x in [regular_module(ctx.A)]:
            assert validate_quadruple(t_a(ctx, x)) == []
            assert validate_quadruple(h_a(ctx, x)) == []
        for y in [regular_module(ctx.B)]:
            assert validate_quadruple(t_b(ctx, y)) == []
            assert validate_quadruple(h_b(ctx, y)) == []


def test_quadruple_to_module_round_trip():
    for ctx in _contexts():
        mr = build_ring(ctx)
        for q in [t_a(ctx, regular_module(ctx.A)), t_b(ctx, regular_module(ctx.B))]:
            v = quadruple_to_module(mr, q)
            assert validate_module(v) == []
            assert v.dim == q.dim
            q2 = module_to_quadruple(mr, v)
            assert (q2.x.dim, q2.y.dim) == (q.x.dim, q.y.dim)
            iso = quadruple_is_isomorphic(q, q2)
            assert iso is not None and validate_quadruple_hom(iso) == []


def test_regular_module_is_ta_plus_tb():
    for ctx in _contexts():
        mr = build_ring(ctx)
        reg = regular_quadruple(mr)
        split = direct_sum_quadruples(
            [t_a(ctx, regular_module(ctx.A)), t_b(ctx, regular_module(ctx.B))])
        assert validate_quadruple(split) == []
        iso = quadruple_is_isomorphic(reg, split)
        assert iso is not None


def test_u_a_section_of_t_a():
    _, ctx = glued_psi_context(QQ())
    x = regular_module(ctx.A)
    assert u_a(t_a(ctx, x)) is x


def test_adjunction_dims_t_a():
    rng = random.Random(1)
    for ctx in _contexts():
        for _ in range(3):
            x = random_module(ctx.A, rng, max_free=1)
            v = t_b(ctx, random_module(ctx.B, rng, max_free=1))
            lhs = len(quadruple_hom_space(t_a(ctx, x), v))
            rhs = hom_dim(x, u_a(v))
            assert lhs == rhs


def test_quadruple_hom_space_matches_ring_homs():
    for ctx in _contexts():
        mr = build_ring(ctx)
        qs = [t_a(ctx, regular_module(ctx.A)), t_b(ctx, regular_module(ctx.B))]
        for q1 in qs:
            for q2 in qs:
                lhs = len(quadruple_hom_space(q1, q2))
                rhs = hom_dim(quadruple_to_module(mr, q1), quadruple_to_module(mr, q2))
                assert lhs == rhs


def test_classify_projectives_triangular():
    _, ctx = triangular_context(QQ())
    mr = build_ring(ctx)
    projs = classify_projectives(ctx)
    dims = sorted((q.x.dim, q.y.dim) for q in projs)
    assert dims == [(1, 0), (1, 1)]
    assert sum(q.dim for q in projs) == mr.ring.dim
    for q in projs:
        assert is_projective(quadruple_to_module(mr, q))


def test_classify_projectives_two_cycle():
    _, ctx = two_cycle_context(QQ())
    mr = build_ring(ctx)
    projs = classify_projectives(ctx)
    assert sorted(q.dim for q in projs) == [2, 2]
    assert sum(q.dim for q in projs) == mr.ring.dim
    for q in projs:
        assert is_projective(quadruple_to_module(mr, q))


def test_classify_injectives_counts():
    _, ctx = triangular_context(QQ())
    mr = build_ring(ctx)
    injs = classify_injectives(ctx)
    assert len(injs) == 2
    for q in injs:
        assert validate_quadruple(q) == []


def test_z_functors_and_preconditions():
    ext, ctx = glued_psi_context(QQ())
    lamk = ext.inflate(regular_module(ext.Lam), name="k")
    q = z_a(ctx, lamk)
    assert validate_quadruple(q) == []
    with pytest.raises(ContextError):
        z_a(ctx, regular_module(ctx.A))   # I does not kill the regular module


def test_p_q_functors():
    _, ctx = triangular_context(QQ())
    p2 = t_b(ctx, regular_module(ctx.B))
    ker, _ = p_b(p2)
    assert ker.dim == 0                   # g is an isomorphism for T_B
    xq, _ = q_a(p2)
    assert xq.dim == p2.x.dim             # I = 0 here


def test_quadruple_kernel_cokernel_commute_with_equivalence():
    rng = random.Random(7)
    for ctx in _contexts():
        mr = build_ring(ctx)
        q1 = t_a(ctx, random_module(ctx.A, rng, max_free=1))
        q2 = t_a(ctx, random_module(ctx.A, rng, max_free=1))
        homs = quadruple_hom_space(q1, q2)
        if not homs:
            continue
        h = homs[0]
        assert validate_quadruple_hom(h) == []
        ker_q, _ = quadruple_kernel(h)
        cok_q, _ = quadruple_cokernel(h)
        assert validate_quadruple(ker_q) == []
        assert validate_quadruple(cok_q) == []
        # compare against kernels over the ring
        from gpmorita.modules import kernel_of, cokernel_of, ModuleHom
        v1, v2 = quadruple_to_module(mr, q1), quadruple_to_module(mr, q2)
        big = Mat.block_diag([h.alpha.mat, h.beta.mat])
        hv = ModuleHom(v1, v2, big)
        assert hv.intertwines()
        kv, _ = kernel_of(hv)
        cv, _ = cokernel_of(hv)
        assert kv.dim == ker_q.dim
        assert cv.dim == cok_q.dim
        iso = quadruple_is_isomorphic(ker_q, module_to_quadruple(mr, kv))
        assert iso is not None


def test_t_lambda_of_regular_is_projective_column():
    ext, ctx = glued_psi_context(QQ())
    tq = t_lambda(ext, ctx, regular_module(ext.Lam))
    assert validate_quadruple(tq) == []
    assert (tq.x.dim, tq.y.dim) == (2, 1)
    col = t_a(ctx, regular_module(ctx.A))
    # T_Lambda(Lambda) = Lambda_psi e1 = T_A(A)
    iso = quadruple_is_isomorphic(tq, col)
    assert iso is not None


def test_t_lambda_dim_formula():
    ext, ctx = glued_psi_context(QQ())
    rng = random.Random(3)
    for _ in range(3):
        x = random_module(ext.Lam, rng, max_free=2)
        tq = t_lambda(ext, ctx, x)
        assert tq.x.dim == x.dim + ext.ideal.dim * x.dim
        assert validate_quadruple(tq) == []


def test_tensor_over_ring_matches_oracle():
    rng = random.Random(5)
    for ctx in _contexts():
        mr = build_ring(ctx)
        rqs = regular_right_quadruples(mr)
        qs = [t_a(ctx, regular_module(ctx.A)), t_b(ctx, regular_module(ctx.B)),
              regular_quadruple(mr)]
        for rq in rqs:
            from gpmorita.morita import validate_right_quadruple
            assert validate_right_quadruple(mr, rq) == []
            for q in qs:
                assert tensor_over_ring(rq, q) == tensor_over_ring_oracle(mr, rq, q)


def test_regular_right_tensor_gives_module_dim():
    # e1L (x) V (+) e2L (x) V should recover dim V
    for ctx in _contexts():
        mr = build_ring(ctx)
        q = regular_quadruple(mr)
        r1, r2 = regular_right_quadruples(mr)
        assert tensor_over_ring(r1, q) + tensor_over_ring(r2, q) == q.dim
