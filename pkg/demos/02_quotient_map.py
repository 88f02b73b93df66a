"""Enumerate B(n, delta+1) and S(n, delta), then check that g is a quotient map of posets."""
import sys

from higher_tamari.verification import verify_cell

cells = [(5, 1), (6, 2), (6, 3)] if len(sys.argv) < 3 else [(int(sys.argv[1]), int(sys.argv[2]))]
for n, delta in cells:
    r = verify_cell(n, delta)
    print(f"n={n} delta={delta}: |B|={r.sizes['bruhat']} |S|={r.sizes['hst']} "
          f"{'PASS' if r.passed else 'FAIL'} in {r.seconds} ms")
    for name, ok in sorted(r.checks.items()):
        print(f"  {name:22s} {ok}")
