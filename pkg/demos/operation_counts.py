"""Field multiplication counts for the three methods on one 256-bit prime.

All three share the same witness, so the counts compare only the work done
after witness search. The gap grows with r.
"""
import random

from rootfield import (
    FieldCtx, RootProblem, counting, find_witness, gen_prime_1_mod_r,
    root_hc, root_new, root_wh,
)
from rootfield.bench import ALGORITHM_PHASES

rs = (3, 11, 31)
p = gen_prime_1_mod_r(256, 3 * 11 * 31, seed="counts")
F = FieldCtx(p)
rng = random.Random(0)
print(f"{'r':>4} {'HC':>10} {'WH':>10} {'NEW':>10} {'HC/NEW':>7}")
for r in rs:
    prob = RootProblem(F, r, F(pow(rng.randrange(1, p), r, p)))
    w = find_witness(prob, seed=r)
    totals = []
    for fn in (root_hc, root_wh, root_new):
        with counting() as cnt:
            fn(prob, w)
        totals.append(cnt.total_of(*ALGORITHM_PHASES))
    print(f"{r:>4} {totals[0]:>10} {totals[1]:>10} {totals[2]:>10} {totals[0] / totals[2]:>7.1f}")
