"""Filtered phi-modules with symbolic eps(p), and the exact interpolation bookkeeping.

Run: python3 demos/04_dieudonne_and_bookkeeping.py
"""
import sympy as sp

from symsq_padic import build_dcris_vf, sym_square_split, trivial_zero_factor
from symsq_padic.dieudonne import EPS_SYM, P_SYM, pairing_property_check
from symsq_padic.kl import consistency_sweep

for k in (2, 3):
    D = build_dcris_vf(k)
    split = sym_square_split(D)
    print(f"k = {k}: phi on D(V_f) =", D.phi.tolist())
    print("  eigenvalues on the induced piece:", list(split.D_V2.eigenvalues()))
    print("  Hodge-Tate weights:", split.D_V2.hodge_tate_weights())
    print("  pairing values equal 1:", pairing_property_check(split.D_V2, k)["ok"])

print("\nfactor at the central point, plus sign:")
for k in (2, 3):
    print(f"  k = {k}:", sp.factor(trivial_zero_factor(k, EPS_SYM, "+", P_SYM)))
print("  k = 2, eps = 1:", trivial_zero_factor(2, 1, "+"))

sweep = consistency_sweep()
print(f"\nbookkeeping identities: {len(sweep['rows'])} cases, all hold: {sweep['holds']}")
