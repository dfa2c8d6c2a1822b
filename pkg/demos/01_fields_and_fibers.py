"""Finite fields and norm fibers.

Walk through the exact arithmetic layer: build F_q for a few odd prime
powers, look at the quadratic extension F_q[Z] with Z^2 = c, and list the
norm fibers that later become the two sides of a datum.
"""

from ramshift import make_field, norm_fiber

for p, e in [(3, 1), (5, 1), (3, 2)]:
    spec = make_field(p, e)
    print(f"F_{spec.q}: modulus {spec.modulus}, non-square c = {spec.c_elem()}")

spec = make_field(3, 1)
one, z = spec.ext(1, 0), spec.ext(0, 1)

print("\nArithmetic in F_3[Z], Z^2 = 2 (= -1):")
alpha = spec.ext(1, 1)  # 1 + Z
print(f"  (1+Z) * (2+Z)      = {alpha * spec.ext(2, 1)}")
print(f"  conj(1+Z)          = {alpha.conj()}")
print(f"  N(1+Z)             = {alpha.norm()}")
print(f"  (1+Z)^-1           = {alpha.inverse()}")

print("\nNorm fibers over F_3 (each has q+1 = 4 elements, closed under negation):")
for target in (1, 2):
    fiber = norm_fiber(spec, spec.elem(target))
    print(f"  N = {target}: {{{', '.join(str(x) for x in fiber)}}}")

print("\nThe nine fibers of F_9[Z] partition the 80 units into 8 classes of 10:")
spec9 = make_field(3, 2)
sizes = [len(norm_fiber(spec9, t)) for t in spec9.elements() if not t.is_zero()]
print(f"  fiber sizes: {sizes}")
