"""Mass linear directions of a Delta_2 bundle over Delta_1.

For a twist ``a`` the set of mass linear ``b`` is a hyperplane cut out by
``bundle_condition(a, b) = 0``.  The exact fit finds it from the center of
mass alone, without knowing the closed form.
"""
import itertools

from toricmass import bundle_condition, delta_p_bundle, fit_mass_linear, verify_pair

fam = delta_p_bundle(2, (1, -1), tau=1, lam=2)
print("polytope:", fam.spec.to_json())

linear = []
for b in itertools.product(range(-2, 3), repeat=3):
    rep = fit_mass_linear(fam.spec, b, seed=7)
    assert rep.is_linear == (bundle_condition(fam.params["a"], b) == 0)
    if rep.is_linear:
        linear.append((b, rep.sumR))
print(f"{len(linear)} of 125 directions in [-2,2]^3 are mass linear:")
for b, sumR in linear:
    print(f"  b={b}  sum R_j={sumR}")

res = verify_pair(fam.spec, (1, 0, -1), samples=4, seed=7)
print("\nverify (1,0,-1):", res.checks)
res = verify_pair(fam.spec, (1, 0, 1), samples=4, seed=7)
print("verify (1,0,1): linear =", res.report.is_linear,
      "; I never zero =", all(s.I_facets != 0 for s in res.all_points))
