"""Cube root of 8 modulo 13, step by step.

With b = 1 the ring constant is d = b^3 - c = 6 and the primitive cube root
of unity is omega = d^((p-1)/3) = 9. The accumulated product P, its power
P^((p-1)/3) and the final product alpha * P^((p-1)/3) are printed, and the
result is a constant: a cube root of 8.
"""
from rootfield import RootProblem, all_roots, counting, find_witness, root_new

prob = RootProblem.make(13, 3, 8)
w = find_witness(prob, b=1)
print(f"p = 13, r = 3, c = 8, b = {w.b.value}")
print(f"d = b^r - c = {w.d.value}, omega = d^((p-1)/r) = {w.omega.value}")

trace = {}
with counting() as cnt:
    x = root_new(prob, w, trace)
print(f"P             = {trace['accumulated'].coeffs}")
print(f"P^((p-1)/r)   = {trace['powered'].coeffs}")
print(f"alpha * P^... = {trace['product'].coeffs}")
print(f"x = {x.value}, x^3 mod 13 = {pow(x.value, 3, 13)}")
print("all cube roots:", [y.value for y in all_roots(prob, x, w)])
print("multiplications by phase:", dict(cnt.phases))
