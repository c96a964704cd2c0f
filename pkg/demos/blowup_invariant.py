"""One-point blow-up of CP^3: I is proportional to b1 + b2 - 3 b3."""
from toricmass import blowup_cpn, char_number_facets, char_number_vector, sample_chamber_points

fam = blowup_cpn(3, tau=3, lam=1)
for k in [fam.spec.k] + sample_chamber_points(fam.spec, 2, seed=3):
    sk = fam.spec.with_k(k)
    v = char_number_vector(sk)
    print("k =", [str(x) for x in k])
    print("   I(e_i) =", [str(x) for x in v],
          " routes agree:", v == char_number_vector(sk, "derivative"))
    for b in [(1, 2, 1), (2, 1, 0), (0, 0, 1)]:
        print(f"   I{b} = {char_number_facets(sk, b).value}"
              f" = ({b[0] + b[1] - 3 * b[2]}) * I(1,0,0)")
