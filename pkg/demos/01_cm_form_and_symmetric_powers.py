"""The CM form 32a: Hecke eigenvalues, point counts and Sym^m Euler factors.

Run: python3 demos/01_cm_form_and_symmetric_powers.py
"""
from symsq_padic import check_hypotheses, euler_poly_factored, euler_poly_sym, get_form
from symsq_padic.hecke import a_q, a_q_from_curve, primes_below

form = get_form("32a")
print(f"form {form.label}: weight {form.k}, level {form.N}, field Q(sqrt({form.field.d}))")

print("\n q   split   a_q  from curve")
for q in primes_below(40):
    if form.is_good(q):
        print(f"{q:3d}  {form.field.splitting(q):6s} {int(a_q(form, q)):4d}  "
              f"{a_q_from_curve(form.curve, q):4d}")

# Sym^2 at q = 5 splits as the induced piece times the abelian piece
brute, factored = euler_poly_sym(2, form, 5), euler_poly_factored(2, form, 5)
print("\nSym^2 Euler polynomial at 5:", [str(c) for c in brute.coefficients])
print("agrees with the factored form:", brute == factored)

for p in (3, 5):
    gate = check_hypotheses(form, p)
    print(f"\nhypotheses at p = {p}: all_ok = {gate['all_ok']}")
    for name, row in gate.items():
        if name != "all_ok" and not row["ok"]:
            print(f"  {name} fails, witness {row['witness']}")
