"""Why rank inversions hurt: the isolated-discontinuity probe.

Three substencil values (1, 1, -1) model a jump sitting on the third
substencil only; the exact upstream value is 1.  Feeding prescribed weight
triples into the convex combination shows that rank-inverted weights (the
non-OP rows) roughly double or triple the interface error relative to the
same numbers in their original order (the OP rows).
"""

from opweno.diagnostics import discontinuity_probe

print(f"{'case':14s} {'w0':>8s} {'w1':>8s} {'w2':>8s} {'u':>9s} "
      f"{'err':>9s} {'err %':>7s}")
for label, w0, w1, w2, u, err, pct in discontinuity_probe():
    print(f"{label:14s} {w0:8.5f} {w1:8.5f} {w2:8.5f} {u:9.5f} "
          f"{err:9.5f} {pct:6.2f}%")
