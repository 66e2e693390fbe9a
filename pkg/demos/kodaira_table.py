"""
Tate's algorithm on textbook curves
===================================

Curves over Q read inside Q(sqrt 17), where 5 is inert and 13 splits.
The Kodaira type does not depend on the prime, but split versus nonsplit
reduction can.
"""

from c13tamagawa import QuadraticField, primes_above, tate
from c13tamagawa.curve import WeierstrassModel

K = QuadraticField(17)

for p in (5, 13):
    v = primes_above(K, p)[0]
    print(f"--- {v.label} ({v.kind.value}, residue field of size {v.residue_field.q})")
    for name, coeffs in [
        ("y^2 = x^3 + p", [0, 0, 0, 0, p]),
        ("y^2 = x^3 + p x", [0, 0, 0, p, 0]),
        ("y^2 = x^3 + p^2", [0, 0, 0, 0, p**2]),
        ("y^2 = x^3 + p^3", [0, 0, 0, 0, p**3]),
        ("y^2 = x^3 + p^5", [0, 0, 0, 0, p**5]),
        ("y^2 = x^3 + p^7", [0, 0, 0, 0, p**7]),
        ("y^2 = x^3 + 2x^2 + p^4", [0, 2, 0, 0, p**4]),
    ]:
        ld = tate(WeierstrassModel.from_coeffs(K, coeffs), v)
        print(f"{name:<24} {ld.kodaira:<5} v(disc_min)={ld.v_delta_min:<3} c={ld.c}  {ld.reduction.value}")

# 2 is a square in F_25 but not in F_13, so the last curve is split at 5
# and nonsplit at 13
