from __future__ import annotations

import random

import pytest

from gpmorita.catalog import (
    field_algebra, path_a2, product_fields, proj_a2, random_module,
    simple_at_idempotent, simple_kx2, truncated_poly, two_cycle_rad_square,
)
from gpmorita.fields import GF, QQ
from gpmorita.gpcert import certify_gorenstein_projective
from gpmorita.homology import is_projective
from gpmorita.modules import direct_sum, regular_module, zero_module
from gpmorita.verify import projective_by_splitting, verify_certificate


def test_projective_certifies_with_period_one():
    a = path_a2(QQ())
    p2 = proj_a2(a)
    cert = certify_gorenstein_projective(p2)
    assert cert.verdict == "gp" and cert.period == 1
    assert cert.reason == "split-projective"
    assert verify_certificate(cert, p2) == []


def test_zero_module_certifies():
    a = path_a2(QQ())
    z = zero_module(a)
    cert = certify_gorenstein_projective(z)
    assert cert.verdict == "gp"
    assert verify_certificate(cert, z) == []


def test_simple_over_kx2_certifies_with_small_period():
    a = truncated_poly(QQ(), 2)
    s = simple_kx2(a)
    cert = certify_gorenstein_projective(s)
    assert cert.verdict == "gp"
    assert cert.period is not None and cert.period <= 2
    assert verify_certificate(cert, s) == []


def test_nonprojective_simple_over_hereditary_refuted():
    a = path_a2(QQ())
    s2 = simple_at_idempotent(a, 2, name="S2")
    cert = certify_gorenstein_projective(s2)
    assert cert.verdict == "not_gp"
    assert cert.witness.kind == "non_vanishing_ext"
    assert verify_certificate(cert, s2) == []


def test_calibration_kx2_all_small_modules_gp():
    # every module of dim <= 4 over k[x]/(x^2) up to isomorphism:
    # direct sums of S (dim 1) and A (dim 2)
    a = truncated_poly(QQ(), 2)
    s = simple_kx2(a)
    reg = regular_module(a)
    shapes = [[s], [s, s], [reg], [s, s, s], [s, reg], [s, s, s, s],
              [s, s, reg], [reg, reg]]
    for parts in shapes:
        m, _, _ = direct_sum(parts) if len(parts) > 1 else (parts[0], None, None)
        cert = certify_gorenstein_projective(m)
        assert cert.verdict == "gp", m.name
        assert cert.period is not None and cert.period <= 2
        assert verify_certificate(cert, m) == []


def test_calibration_path_a2_gp_iff_projective():
    # all modules of dim <= 4 up to isomorphism over the path algebra:
    # direct sums of S1, S2 and the projective P2
    a = path_a2(QQ())
    s1 = simple_at_idempotent(a, 0, name="S1")
    s2 = simple_at_idempotent(a, 2, name="S2")
    p2 = proj_a2(a)
    from itertools import product as iproduct
    for m1 in range(5):
        for m2 in range(5):
            for mp in range(3):
                dim = m1 + m2 + 2 * mp
                if dim == 0 or dim > 4:
                    continue
                parts = [s1] * m1 + [s2] * m2 + [p2] * mp
                m = parts[0] if len(parts) == 1 else direct_sum(parts)[0]
                cert = certify_gorenstein_projective(m, window=4)
                assert (cert.verdict == "gp") == is_projective(m), (m1, m2, mp)
                assert verify_certificate(cert, m) == []


def test_every_module_over_self_injective_two_cycle_certifies():
    rng = random.Random(17)
    a = two_cycle_rad_square(QQ())
    s1 = simple_at_idempotent(a, 0, name="S1")
    cert = certify_gorenstein_projective(s1)
    assert cert.verdict == "gp"
    assert cert.period is not None and cert.period <= 2
    assert verify_certificate(cert, s1) == []
    for _ in range(4):
        m = random_module(a, rng)
        cert = certify_gorenstein_projective(m)
        assert cert.verdict == "gp"
        assert verify_certificate(cert, m) == []


def test_self_injective_over_finite_field():
    a = truncated_poly(GF(7), 3)
    s = simple_kx2(a)
    cert = certify_gorenstein_projective(s)
    assert cert.verdict == "gp"
    assert verify_certificate(cert, s) == []


def test_semisimple_everything_projective():
    a = product_fields(QQ(), 2)
    s = simple_at_idempotent(a, 0)
    cert = certify_gorenstein_projective(s)
    assert cert.verdict == "gp" and cert.reason == "split-projective"
    assert verify_certificate(cert, s) == []


def test_verifier_rejects_forged_certificates():
    a = truncated_poly(QQ(), 2)
    s = simple_kx2(a)
    other = regular_module(a)
    cert = certify_gorenstein_projective(s)
    assert verify_certificate(cert, other) != []
    # break the window: swap a differential for zero
    from gpmorita.modules import zero_hom
    cert2 = certify_gorenstein_projective(s)
    w = cert2.window
    w.diffs[0] = zero_hom(w.term(w.lo), w.term(w.lo + 1))
    assert verify_certificate(cert2, s) != []


def test_projective_by_splitting_matches_cover_test():
    rng = random.Random(9)
    for alg in [path_a2(QQ()), truncated_poly(QQ(), 2), two_cycle_rad_square(GF(7))]:
        for _ in range(5):
            m = random_module(alg, rng)
            assert projective_by_splitting(m) == is_projective(m)


def test_finite_gldim_certify_iff_projective_random_sweep():
    # over algebras of finite global dimension certification must agree
    # with projectivity on random modules up to dimension 6
    rng = random.Random(21)
    for alg in [path_a2(QQ()), product_fields(QQ(), 3), path_a2(GF(7))]:
        seen = 0
        while seen < 6:
            m = random_module(alg, rng, max_free=2, max_cuts=2)
            if m.dim > 6:
                continue
            cert = certify_gorenstein_projective(m, window=4)
            assert (cert.verdict == "gp") == is_projective(m)
            seen += 1
