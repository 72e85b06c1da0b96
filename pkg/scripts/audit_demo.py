#!/usr/bin/env python3
"""Walk the bundled desk examples through the whole pipeline and print a
summary table: criterion verdict, independent certificate, and the audit
classification for each module.

Run from the repository root:  python3 scripts/audit_demo.py
"""
from __future__ import annotations

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from gpmorita.catalog import (
    arrow_ideal_context, glued_psi_context, triangular_context,
    two_cycle_context,
)
from gpmorita.engine import audit_equivalence, build_total_resolution, \
    check_conditions
from gpmorita.fields import QQ
from gpmorita.modules import regular_module
from gpmorita.morita import build_ring, t_a, t_b, z_a, z_b
from gpmorita.trivext import t_lambda


def families():
    ext, ctx = triangular_context(QQ())
    yield "triangular", ext, ctx, [
        t_a(ctx, regular_module(ctx.A), name="P1"),
        t_b(ctx, regular_module(ctx.B), name="P2"),
        z_b(ctx, regular_module(ctx.B), name="S2"),
    ]
    ext, ctx = two_cycle_context(QQ())
    yield "two-cycle", ext, ctx, [
        z_a(ctx, regular_module(ctx.A), name="S1"),
        z_b(ctx, regular_module(ctx.B), name="S2"),
        t_a(ctx, regular_module(ctx.A), name="P1"),
    ]
    ext, ctx = glued_psi_context(QQ())
    yield "glued (dim 5)", ext, ctx, [
        t_lambda(ext, ctx, regular_module(ext.Lam), name="T(k)"),
        t_b(ctx, regular_module(ctx.B), name="P2"),
        z_b(ctx, regular_module(ctx.B), name="ZB"),
    ]
    ext, ctx = arrow_ideal_context(QQ())
    yield "arrow ideal (dim 6)", ext, ctx, [
        t_lambda(ext, ctx, regular_module(ext.Lam), name="T(kxk)"),
        t_b(ctx, regular_module(ctx.B), name="P2"),
    ]


def main():
    for tag, ext, ctx, family in families():
        mr = build_ring(ctx)
        print(f"\n== {tag}: ring dim {mr.ring.dim} ==")
        report = audit_equivalence(ext, ctx, family)
        for e in report.entries:
            line = (f"  {e.name:8s} criterion={e.criterion:7s} "
                    f"certificate={e.certificate:7s} -> {e.classification}")
            if e.failing:
                line += f"  (failing: {', '.join(e.failing)})"
            print(line)
        for key, v in report.semi_weak_verdicts.items():
            print(f"  necessity hypothesis {key:9s}: {v.kind} ({v.reason})")
        passing = [q for q, e in zip(family, report.entries)
                   if e.criterion == "pass"]
        if passing:
            q = passing[0]
            rep = check_conditions(ext, ctx, q)
            asm = build_total_resolution(ext, ctx, q, rep, window=3)
            dims = [t.dim for t in asm.tcx.terms]
            print(f"  total resolution of {q.name}: window {asm.tcx.lo}..",
                  f"{asm.tcx.hi}, term dims {dims}")


if __name__ == "__main__":
    main()
