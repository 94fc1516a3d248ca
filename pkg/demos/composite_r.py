"""Composite r: a 4th root at 256 bits.

The two exponentiation-based methods need r to be an odd prime and refuse
composite r. The accumulation method works for any r with p = 1 (mod r).
"""
import random

from rootfield import (
    AlgoId, FieldCtx, NotApplicableError, RootProblem, extract, gen_prime_1_mod_r,
)

p = gen_prime_1_mod_r(256, 4, seed="demo")
F = FieldCtx(p)
y = random.Random(1).randrange(1, p)
prob = RootProblem(F, 4, F(pow(y, 4, p)))
print(f"p = {p:#x}")
for algo in AlgoId:
    try:
        x, w, cnt = extract(prob, algo, seed=1)
        print(f"{algo.value:>3}: x^4 == c: {pow(x.value, 4, p) == prob.c.value}  "
              f"({cnt.total} multiplications, b = {w.b.value})")
    except NotApplicableError as e:
        print(f"{algo.value:>3}: not applicable ({e})")
