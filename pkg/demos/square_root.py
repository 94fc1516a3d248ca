"""r = 2: the method reduces to Cipolla's square root.

The accumulation loop runs r - 2 = 0 times, so the result is
(b - theta) * (b - theta)^((p-1)/2) = (b - theta)^((p+1)/2).
"""
from rootfield import (
    FieldCtx, RingCtx, RootProblem, find_witness, gen_prime_1_mod_r,
    ring_linear, ring_pow, root_new,
)

p = gen_prime_1_mod_r(128, 2, seed="sqrt")
F = FieldCtx(p)
prob = RootProblem(F, 2, F(pow(123456789, 2, p)))
w = find_witness(prob, seed=0)
trace = {}
x = root_new(prob, w, trace)
cipolla = ring_pow(ring_linear(RingCtx(F, 2, w.d), w.b, -1), (p + 1) // 2)
print(f"p = {p}")
print(f"x = {x.value}, loop iterations = {trace['loop_iterations']}")
print(f"x^2 == c: {x * x == prob.c}; matches (b - theta)^((p+1)/2): {cipolla == (x.value, 0)}")
