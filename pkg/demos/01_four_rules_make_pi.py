"""Four one-node rules that reproduce pi exactly.

The integral of 2*sin(x)^2 over [0, pi] is exactly pi.  Applied to the
whole interval at once, the rectangle and trapezoid rules are useless
here: the integrand vanishes at both endpoints and peaks at the middle.
Split the interval in two, though, and the symmetry of the integrand
makes L, R, M, T (and the corrected midpoint T2) all land on pi exactly.
"""

from mpmath import mp

from quadrules import (builtin_integrand, composite_values, pi_at,
                       simple_rule_values, workprec)

f = builtin_integrand("sin2")
print(f"integrand: {f.label()}")
print(f"target:    pi = {pi_at(53)}\n")

print("--- single-interval (simple) rules ---")
with workprec(53):
    a, b = f.interval.bounds()
    simple = simple_rule_values(f, a, b, ("L", "R", "M", "T", "S", "T2"))
for name, value in simple.items():
    print(f"  {name:>2} = {value}")
print("  L, R, T collapse to ~0 (endpoint values vanish) and M doubles pi.")
print("  S = (2M + T)/3 = 4pi/3 here: a weighted mean of two bad answers.\n")

print("--- two panels: [0, pi/2] and [pi/2, pi] ---")
pair = composite_values(f, f.interval, ("L", "R", "M", "T", "S", "T2"), 2)
for name, value in pair.items():
    print(f"  {name:>2} over 2 panels = {value}")
print("\nEvery one of them equals pi to the last bit carried at 53-bit")
print("precision: the area lost by a panel on one side of the hump is")
print("exactly the area gained by its mirror image on the other side.")
