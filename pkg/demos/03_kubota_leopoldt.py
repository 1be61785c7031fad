"""The Kubota-Leopoldt series for the character of Q(i) at p = 3.

Run: python3 demos/03_kubota_leopoldt.py
"""
from symsq_padic import CharacterPoint, DirichletCharacter, evaluate, kubota_leopoldt
from symsq_padic.kl import choose_regulator, kl_closed_form, kummer_check, riemann_crosscheck
from symsq_padic.padic import PadicNumber

eta, p, prec = DirichletCharacter.from_name("quad4"), 3, (12, 48)
c = choose_regulator(eta, p)
L = kubota_leopoldt(eta, p, prec, c=c)
# only components with (-1)^j = -eta(-1) can be nonzero
print(f"regulator c = {c}")
for j in range(p - 1):
    print(f"  component {j}: first coefficients", [str(x) for x in L.component(j)[:3]])

print("\n r  closed form     agrees to p^8")
for r in range(6):
    ref = kl_closed_form(eta, p, r)
    val = evaluate(L, CharacterPoint(r), 8)
    ok = (val - PadicNumber.from_rational(ref, p, 8)).add_bigoh(8).is_zero()
    print(f"{r:2d}  {str(ref):14s} {ok}")

print("\nRiemann sums at level 2:", riemann_crosscheck(L, eta, c, 2, min_precision=2)["holds"])
print("Kummer, p = 5, exponents 2 and 6:", kummer_check(5, 2, 6))
