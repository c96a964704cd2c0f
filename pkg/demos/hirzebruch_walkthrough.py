"""Hirzebruch trapezium: center of mass, the invariant I, and which b are mass linear.

Run with ``python demos/hirzebruch_walkthrough.py``.
"""
from fractions import Fraction

from toricmass import (
    center_of_mass,
    char_number_derivative,
    char_number_facets,
    enumerate_vertices,
    fit_mass_linear,
    hirzebruch,
)

fam = hirzebruch(1, tau=2, lam=1)
spec = fam.spec
print("vertices:", [tuple(str(x) for x in v) for v in enumerate_vertices(spec).vertices])
print("center of mass:", [str(x) for x in center_of_mass(spec)])
print("closed form:    ", [str(x) for x in fam.cm_closed(1, 2)])

res = char_number_facets(spec, (1, 0))
print(f"\nI(b=(1,0)) = {res.value}  (<Cm, b> = {res.cm_pairing})")
for j, term in res.facet_terms:
    print(f"  facet F{j + 1}: {term}")
print("derivative route:", char_number_derivative(spec, (1, 0)))

print("\nI and mass linearity for a few b:")
for b in [(1, 0), (0, 1), (2, 1), (4, 2), (1, 1)]:
    rep = fit_mass_linear(spec, b, seed=1)
    I = char_number_facets(spec, b).value
    print(f"  b={b}: I={I}, mass linear={rep.is_linear}, "
          f"predicate r*b1 = 2*b2: {fam.mass_linear_predicate(b)}")

# I is homogeneous of degree n = 2 in k
print("\nI at 2k:", char_number_facets(spec.with_k(2 * Fraction(x) for x in spec.k), (1, 0)).value)
