"""Half-logarithms at p = 3 and splitting a pair of unbounded series.

Run: python3 demos/02_half_logarithms.py
"""
import random

from symsq_padic import CharacterPoint, LogPair, evaluate, split_pm, zero_pattern
from symsq_padic.pipeline import random_bounded
from symsq_padic.pollack import build_log, guard_precision, synthetic_pair
from symsq_padic.series import growth_check

p, k, prec = 3, 2, (12, 64)
logs = LogPair.build(k, p, prec)
for sign in ("+", "-"):
    g = growth_check(logs.series(sign), k - 1)
    print(f"log{sign}: cyclotomic layers {logs.factor_exponents(sign)}, "
          f"growth at r = {k - 1} ok: {g['ok']}")

print("\nzeros at finite-order characters (s = 0):")
for level in range(4):
    pt = CharacterPoint(0, 0, level, 1)
    row = {s: zero_pattern(k, s, pt, p) for s in ("+", "-")}
    print(f"  level {level}: log+ vanishes {row['+']!s:5}  log- vanishes {row['-']}")
    if level <= 2:
        v = evaluate(logs.series("+"), pt, 1)
        print(f"           series value of log+ is zero: {v.is_zero()}")

# a synthetic pair with known bounded parts, recovered by the split
rng = random.Random(1)
A, B = random_bounded(p, prec, rng), random_bounded(p, prec, rng)
W = guard_precision(*prec, p)
guard = LogPair(k, p, build_log(k, "+", p, (W, prec[1])), build_log(k, "-", p, (W, prec[1])))
plus, minus, defect = split_pm(*synthetic_pair(A, B, guard), k, guard)
print("\nrecovered A:", plus.truncate(*prec).equals(A))
print("recovered B:", minus.truncate(*prec).equals(B))
print("division defects vanish:", defect["+"]["holds"], defect["-"]["holds"])
