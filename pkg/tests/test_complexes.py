from __future__ import annotations

import random

import pytest

from gpmorita.catalog import (
    path_a2, proj_a2, random_module, simple_at_idempotent, simple_kx2,
    truncated_poly, two_cycle_rad_square,
)
from gpmorita.complexes import (
    ComplexWindow, HorseshoeError, ShortExactSequence, check_horseshoe_hypotheses,
    homology_dim, horseshoe, is_exact, kernel_at, solve_module_hom,
    total_exactness, validate_complex,
)
from gpmorita.fields import GF, QQ
from gpmorita.gpcert import certify_gorenstein_projective
from gpmorita.homology import minimal_resolution, projective_cover
from gpmorita.linalg import Mat, rank, row_space
from gpmorita.modules import (
    FDModule, ModuleHom, direct_sum, hom_space, identity_hom, kernel_of,
    quotient_by_rows, regular_module, spanned_submodule, zero_hom, zero_module,
)


def _identity_complex(x, span=1):
    terms = [x, x]
    diffs = [identity_hom(x)]
    return ComplexWindow(0, 1, terms, diffs)


def test_identity_complex_exact():
    a = truncated_poly(QQ(), 2)
    x = regular_module(a)
    c = ComplexWindow(0, 2, [x, x, zero_module(a)],
                      [identity_hom(x), zero_hom(x, zero_module(a))])
    assert validate_complex(c) == []
    assert homology_dim(c, 1) == 0


def test_zero_differential_homology():
    a = truncated_poly(QQ(), 2)
    x = regular_module(a)
    c = ComplexWindow(0, 2, [x, x, x], [zero_hom(x, x), zero_hom(x, x)])
    assert homology_dim(c, 1) == x.dim


def test_periodic_complete_resolution_kx2_exact_and_total():
    a = truncated_poly(QQ(), 2)
    s = simple_kx2(a)
    cert = certify_gorenstein_projective(s, window=3)
    assert cert.verdict == "gp"
    wc = cert.window
    assert wc.lo <= -3 and wc.hi >= 3
    assert is_exact(wc)
    assert total_exactness(wc)


def test_total_exactness_fails_for_truncated_resolution():
    # minimal resolution of the non-projective simple over the path algebra,
    # padded by zero on the right: Hom(-, A) is not exact at the augmentation
    a = path_a2(QQ())
    s2 = simple_at_idempotent(a, 2, name="S2")
    res = minimal_resolution(s2, 1)
    z = zero_module(a)
    wc = ComplexWindow(-2, 0, [res.terms[1], res.terms[0], z],
                       [res.maps[0], zero_hom(res.terms[0], z)])
    assert validate_complex(wc) == []
    assert not total_exactness(wc)


def test_solve_module_hom_with_conditions():
    a = truncated_poly(QQ(), 2)
    x = regular_module(a)
    s = simple_kx2(a)
    # factor the cover through itself
    P, cov = projective_cover(s)
    sec = solve_module_hom(P, P, post=cov.mat, post_rhs=cov.mat)
    assert sec is not None
    # a section of the cover would split the simple off the cover: impossible
    assert solve_module_hom(s, P, post=cov.mat,
                            post_rhs=Mat.identity(QQ(), 1)) is None


def _random_ses(a, rng):
    from gpmorita.catalog import random_module
    w = random_module(a, rng, max_free=2, max_cuts=1)
    sub, incl = None, None
    from gpmorita.catalog import random_submodule
    sub, incl = random_submodule(w, rng)
    quo, proj = quotient_by_rows(w, incl.mat)
    return ShortExactSequence(incl, proj), w


def test_horseshoe_over_self_injective_random():
    rng = random.Random(31)
    count = 0
    for F in [QQ(), GF(7)]:
        for alg in [truncated_poly(F, 2), two_cycle_rad_square(F)]:
            for _ in range(3):
                ses, w = _random_ses(alg, rng)
                u, v = ses.u, ses.v
                cu = certify_gorenstein_projective(u, window=3)
                cv = certify_gorenstein_projective(v, window=3)
                assert cu.verdict == "gp" and cv.verdict == "gp"
                xc, kx = cu.window, cu.kernel_ident
                yc, ky = cv.window, cv.kernel_ident
                res = horseshoe(ses, xc, kx, yc, ky)
                assert is_exact(res.zc)
                count += 1
    assert count == 12


def test_horseshoe_kernel_sequence_identity():
    # the degree-0 kernel sequence must literally restrict and project to
    # the given one
    F = QQ()
    a = truncated_poly(F, 2)
    s = simple_kx2(a)
    reg = regular_module(a)
    # 0 -> S -> A -> S' -> 0: the radical inside the regular module
    rad_rows = Mat.from_rows(F, [[0, 1]])
    sub, incl = spanned_submodule(reg, rad_rows, name="S")
    quo, proj = quotient_by_rows(reg, rad_rows, name="S'")
    ses = ShortExactSequence(incl, proj)
    assert ses.validate() == []
    cu = certify_gorenstein_projective(sub, window=3)
    cv = certify_gorenstein_projective(quo, window=3)
    res = horseshoe(ses, cu.window, cu.kernel_ident, cv.window, cv.kernel_ident)
    # middle is an extension of two simples: dims add
    assert res.zc.term(0).dim == cu.window.term(0).dim + cv.window.term(0).dim
    assert rank(res.embed.mat) == 2


def test_horseshoe_split_input():
    F = QQ()
    a = two_cycle_rad_square(F)
    s1 = simple_at_idempotent(a, 0, name="S1")
    s2 = simple_at_idempotent(a, 1, name="S2")
    w, incls, projs = direct_sum([s1, s2])
    ses = ShortExactSequence(incls[0], projs[1])
    assert ses.validate() == []
    c1 = certify_gorenstein_projective(s1, window=3)
    c2 = certify_gorenstein_projective(s2, window=3)
    res = horseshoe(ses, c1.window, c1.kernel_ident, c2.window, c2.kernel_ident)
    assert is_exact(res.zc)
    assert validate_complex(res.zc) == []


def test_horseshoe_hypothesis_failure_reports_degree():
    # over the path algebra (not self-injective) Ext conditions can fail:
    # resolve the two simples and check the reported degree
    a = path_a2(QQ())
    s1 = simple_at_idempotent(a, 0, name="S1")   # projective simple
    s2 = simple_at_idempotent(a, 2, name="S2")
    w, incls, projs = direct_sum([s1, s2])
    ses = ShortExactSequence(incls[0], projs[1])
    c1 = certify_gorenstein_projective(s1, window=2)
    assert c1.verdict == "gp"           # projective
    c2 = certify_gorenstein_projective(s2, window=2)
    assert c2.verdict == "not_gp"
    # build a fake exact right tail for s2 is impossible; instead check the
    # hypothesis checker on mismatched data raises
    with pytest.raises(HorseshoeError):
        horseshoe(ses, c1.window, c1.kernel_ident, c1.window, c1.kernel_ident)
