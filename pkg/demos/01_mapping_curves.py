"""Dump g(omega) curves for every weight-mapping family and classify each
set as order-preserving or not.

The staircase of the order-preserving family is substencil-independent: one
curve serves all three substencils, which is exactly why it can never invert
the ranking of two weights.  Every other family maps each substencil with a
different curve, and the classifier exhibits a concrete inversion witness.

Writes demos/output/curve_<scheme>.csv with columns omega,g0,g1,g2.
"""

import os

from opweno import classify_op_set, make_scheme
from opweno.runner import emit_plotdata

HERE = os.path.dirname(__file__)
OUT = os.path.join(HERE, "output")

SCHEMES = ["js", "m", "pm6", "im", "mip-acmk", "mop-acmk"]

os.makedirs(OUT, exist_ok=True)
for sid in SCHEMES:
    path = emit_plotdata("mapping-curve", os.path.join(OUT, f"curve_{sid}.csv"),
                         scheme=sid, samples=2001)
    verdict, witnesses = classify_op_set(make_scheme(sid))
    line = f"{sid:9s} -> {verdict:6s}  ({path})"
    if witnesses:
        w = witnesses[0]
        rel = "<" if w["w_a"] > w["w_b"] else "!="
        line += (f"  witness: g_{w['m']}({w['w_a']:.3f})={w['g_m']:.4f} {rel} "
                 f"g_{w['n']}({w['w_b']:.3f})={w['g_n']:.4f}")
    print(line)
