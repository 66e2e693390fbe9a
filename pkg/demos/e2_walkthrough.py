"""
The curve E_2 one step at a time
================================

Build E_t at t = 2, check the point of order 13, and read off the local
Tamagawa numbers that multiply to c_E = 169.
"""

from fractions import Fraction

from c13tamagawa import build, primes_above, tamagawa
from c13tamagawa.family import sextic

# D(2) = 17, so the curve lives over Q(sqrt 17)
print(sextic(2))
fc = build(2)
print(fc.field, "s =", fc.s)
print("model:", fc.model)

# (0, 0) has order 13
M, P = fc.model, fc.marked_point
print("order of (0,0):", M.point_order(P, 20))

# j is rational even though the model is not
print("j =", M.j)

# 2 splits in Q(sqrt 17), and both primes above it see split I13
for v in primes_above(fc.field, 2):
    print(v.label, v.kind.value)

g = tamagawa(fc)
for ld in g.locals:
    print(f"{ld.prime.label:>4}  {ld.kodaira:<5} v(disc)={ld.v_delta_min:<3} c={ld.c}")
print("c_E =", g.c_E, " v13 =", g.v13)

# t = -1 and t = 1/2 land on the same curve
for t in (-1, Fraction(1, 2)):
    other = build(t)
    print(t, other.field, other.model.j == M.j)
