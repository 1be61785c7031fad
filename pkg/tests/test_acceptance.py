"""Acceptance criteria, one test per criterion.

Run with pytest; the terminal summary prints a CRITERION line per test.
Tolerances are pinned below as module constants.
"""
import json
import random
import subprocess
import sys
import time

import pytest
import sympy as sp

from symsq_padic.cyclotomic import CyclotomicNumber, characters_mod, gauss_sum
from symsq_padic.dieudonne import (EPS_SYM, P_SYM, build_dcris_vf, pairing_property_check,
                                   properties_a, sym_square_split, trivial_zero_factor,
                                   trivial_zero_laurent)
from symsq_padic.hecke import a_q_from_curve, get_form, primes_below
from symsq_padic.kl import (DirichletCharacter, choose_regulator, consistency_sweep,
                            kl_closed_form, kubota_leopoldt, kummer_check, zeta_value)
from symsq_padic.padic import PadicNumber
from symsq_padic.pipeline import random_bounded
from symsq_padic.pollack import (LogPair, build_log, factored_value, guard_precision,
                                 split_pm, synthetic_pair, zero_pattern)
from symsq_padic.series import (CharacterPoint, InsufficientDegreeError, IwasawaSeries,
                                evaluate, growth_check)
from symsq_padic.sympower import trace_via_components, trace_via_matrix, verify_factorization

FORMS = ("32a", "27a", "49a")
SYM_RUNTIME_LIMIT = 60.0          # seconds, criterion 1
KL_DIGITS = 10                    # criterion 5 agreement, p^10
SPLIT_PRECISION = (15, 96)        # criterion 4 round trip, mod (p^15, X^96)
FULL_PRECISION = (20, 128)
ROUND_TRIPS = 100
KUMMER_PAIRS = 50


# -- 1 --------------------------------------------------------------------------
@pytest.mark.criterion(1)
def test_criterion_1_sym_factorization():
    start = time.perf_counter()
    bad = []
    for label in FORMS:
        form = get_form(label)
        for m in range(2, 6):
            r = verify_factorization(m, form, 1000)
            assert r["primes_checked"] > 150
            bad += [(label, m, x["q"]) for x in r["mismatches"]]
    elapsed = time.perf_counter() - start
    assert bad == []
    assert elapsed < SYM_RUNTIME_LIMIT, f"{elapsed:.1f}s"


# -- 2 --------------------------------------------------------------------------
def _rational(x):
    return x.rational() if hasattr(x, "rational") else x


def _complete_homogeneous(a, d, m):
    # h_m(alpha, beta) from alpha + beta = a, alpha beta = d
    h = [1, a]
    for _ in range(2, m + 1):
        h.append(a * h[-1] - d * h[-2])
    return h[m]


@pytest.mark.criterion(2)
def test_criterion_2_trace_oracles():
    form32 = get_form("32a")
    spots = {(2, 5): -1, (3, 5): 12, (2, 7): -7}
    for (m, q), want in spots.items():
        assert _rational(trace_via_matrix(m, form32, q)) == want
        assert _rational(trace_via_components(m, form32, q)) == want
    bad = []
    for label in FORMS:
        form = get_form(label)
        for q in primes_below(500):
            if not form.is_good(q):
                continue
            # a third route: the curve's point count with det = q
            a = a_q_from_curve(form.curve, q)
            for m in range(2, 7):
                t1 = trace_via_matrix(m, form, q)
                t2 = trace_via_components(m, form, q)
                if t1 != t2 or _rational(t1) != _complete_homogeneous(a, q, m):
                    bad.append((label, m, q))
    assert bad == []


# -- 3 --------------------------------------------------------------------------
ROOTS_OF_UNITY = [(n, e) for n in (1, 2, 3, 4, 6) for e in range(n)]


@pytest.mark.criterion(3)
def test_criterion_3_dieudonne():
    eps, p = EPS_SYM, P_SYM
    for k in range(2, 7):
        D = build_dcris_vf(k, eps, p)
        alpha = eps * p ** (k - 1)
        assert sp.simplify(D.phi ** 2 + alpha * sp.eye(2)) == sp.zeros(2, 2)
        split = sym_square_split(D)
        eig = {sp.simplify(e) for e in split.D_V2.eigenvalues()}
        assert eig == {sp.simplify(alpha), sp.simplify(-alpha)}
        assert sorted(split.D_V2.hodge_tate_weights()) == [2 - 2 * k, 0]
        assert properties_a(split.D_V2, k, eps, p)
        assert pairing_property_check(split.D_V2, k, eps=eps, p=p)["ok"]

    # trivial zero of the plus factor: exactly at k = 2, eps(p) = 1
    for k in range(2, 7):
        for n, e in ROOTS_OF_UNITY:
            z = CyclotomicNumber.zeta(n, e)
            vanishes = trivial_zero_laurent(k, z, "+") == {}
            assert vanishes == (k == 2 and e == 0), (k, n, e)
        for e_val in (1, -1):
            f = trivial_zero_factor(k, e_val, "+")
            assert (sp.simplify(f) == 0) == (k == 2 and e_val == 1)
    assert sp.simplify(trivial_zero_factor(2, eps, "+").subs(eps, 1)) == 0


# -- 4 --------------------------------------------------------------------------
def _full_degree(p, precision, rng):
    M, D = precision
    comps = {j: [PadicNumber.from_rational(rng.randrange(p ** M), p) for _ in range(D)]
             for j in range(p - 1)}
    return IwasawaSeries(p, comps, precision, growth_class=0, tail_free=True)


def _guard_logs(k, p, precision):
    M, D = precision
    W = guard_precision(M, D, p)
    return LogPair(k, p, build_log(k, "+", p, (W, D)), build_log(k, "-", p, (W, D)), {})


@pytest.mark.criterion(4)
def test_criterion_4_pollack():
    p = 3
    # growth of the truncated logs to degree 128
    full_logs = {}
    for k in (2, 3):
        full_logs[k] = LogPair.build(k, p, FULL_PRECISION)
        for sign in ("+", "-"):
            g = growth_check(full_logs[k].series(sign), k - 1)
            assert g["ok"], (k, sign, g)
            assert full_logs[k].series(sign).D == 128

    # zero pattern: + vanishes iff level even >= 2, - iff level odd
    for k in (2, 3):
        for level in range(5):
            for s in range(2 * k - 2):
                pt = CharacterPoint(s, 0, level, 1)
                for sign in ("+", "-"):
                    rule = level >= 1 and (level % 2 == 0) == (sign == "+")
                    assert zero_pattern(k, sign, pt, p) == rule
                    direct = factored_value(k, sign, pt, p, layers=level + 2)
                    assert (direct.is_zero() and direct.is_exact()) == rule
                    try:
                        val = evaluate(full_logs[k].series(sign), pt, 1)
                    except InsufficientDegreeError:
                        continue
                    assert val.is_zero() == rule

    # split round trip on 100 pairs
    M, D = SPLIT_PRECISION
    rng = random.Random(20261016)
    for k in (2, 3):
        logs = _guard_logs(k, p, SPLIT_PRECISION)
        for i in range(ROUND_TRIPS // 2):
            if i % 2:
                A, B = _full_degree(p, SPLIT_PRECISION, rng), _full_degree(p, SPLIT_PRECISION, rng)
            else:
                A = random_bounded(p, SPLIT_PRECISION, rng)
                B = random_bounded(p, SPLIT_PRECISION, rng)
            plus, minus, defect = split_pm(*synthetic_pair(A, B, logs), k, logs)
            assert defect["+"]["holds"] and defect["-"]["holds"]
            assert plus.min_precision() >= M and minus.min_precision() >= M
            assert plus.truncate(M, D).equals(A.truncate(M, D))
            assert minus.truncate(M, D).equals(B.truncate(M, D))

    # precision stability
    for k in (2, 3):
        small = LogPair.build(k, p, SPLIT_PRECISION)
        for sign in ("+", "-"):
            assert full_logs[k].series(sign).truncate(M, D).equals(small.series(sign))
    k = 2
    A, B = random_bounded(p, FULL_PRECISION, rng), random_bounded(p, FULL_PRECISION, rng)
    big = split_pm(*synthetic_pair(A, B, _guard_logs(k, p, FULL_PRECISION)), k,
                   _guard_logs(k, p, FULL_PRECISION))
    A2, B2 = A.truncate(M, D), B.truncate(M, D)
    logs = _guard_logs(k, p, SPLIT_PRECISION)
    little = split_pm(*synthetic_pair(A2, B2, logs), k, logs)
    for x, y in zip(big[:2], little[:2]):
        assert x.truncate(M, D).equals(y.truncate(M, D))
    eta = DirichletCharacter.from_name("quad4")
    assert kubota_leopoldt(eta, p, FULL_PRECISION).truncate(M, D).equals(
        kubota_leopoldt(eta, p, SPLIT_PRECISION).truncate(M, D))


# -- 5 --------------------------------------------------------------------------
@pytest.mark.criterion(5)
def test_criterion_5_kubota_leopoldt():
    p = 3
    eta = DirichletCharacter.from_name("quad4")
    c1 = choose_regulator(eta, p)
    c2 = choose_regulator(eta, p, start=c1 + 1)
    L1 = kubota_leopoldt(eta, p, FULL_PRECISION, c=c1)
    L2 = kubota_leopoldt(eta, p, FULL_PRECISION, c=c2)
    for r in range(6):
        val = evaluate(L1, CharacterPoint(r), KL_DIGITS)
        ref = PadicNumber.from_rational(kl_closed_form(eta, p, r), p, KL_DIGITS)
        assert (val - ref).add_bigoh(KL_DIGITS).is_zero(), r
    assert L1.truncate(KL_DIGITS).equals(L2.truncate(KL_DIGITS))

    # (1-5) B_2 / 2 = (1-5^5) B_6 / 6 = 3 mod 5
    assert zeta_value(5, 2) == sp.Rational(-1, 3)
    inst = kummer_check(5, 2, 6)
    assert inst["holds"] and inst["residue"] == 3
    assert kummer_check(5, 6, 6)["residue"] == 3

    rng = random.Random(5)
    for _ in range(KUMMER_PAIRS):
        q = rng.choice([3, 5, 7, 11])
        n = rng.choice([x for x in range(2, 40) if x % (q - 1)])
        j = rng.randrange(0, 2 if q < 11 else 1)
        n2 = n + (q - 1) * q ** j * rng.randrange(1, 4)
        assert kummer_check(q, n, n2)["holds"], (q, n, n2)


# -- 6 --------------------------------------------------------------------------
@pytest.mark.criterion(6)
def test_criterion_6_interpolation_consistency():
    sweep = consistency_sweep(range(2, 7), range(1, 5))
    assert len(sweep["rows"]) == 40
    for row in sweep["rows"]:
        assert row["holds"], row
        assert all(row["checks"].values()), row


# -- 7 --------------------------------------------------------------------------
@pytest.mark.criterion(7)
def test_criterion_7_gauss_sums():
    count = 0
    for p in (3, 5, 7):
        for n in (1, 2, 3):
            for theta in characters_mod(p, n):
                lhs = gauss_sum(theta) * gauss_sum(theta.conjugate())
                rhs = theta(-1) * CyclotomicNumber.rational(p ** n)
                assert (lhs - rhs).is_zero(), (p, n, theta.t)
                count += 1
    # phi(p^n) - phi(p^(n-1)) primitive characters per level
    assert count == sum(p ** (n - 1) * (p - 1) - (p ** (n - 2) * (p - 1) if n > 1 else 1)
                        for p in (3, 5, 7) for n in (1, 2, 3))


# -- 8 --------------------------------------------------------------------------
def _verify_all(p):
    proc = subprocess.run([sys.executable, "-m", "symsq_padic", "verify-all",
                           "--form", "32a", "--p", str(p)],
                          capture_output=True, text=True, timeout=600)
    return proc.returncode, json.loads(proc.stdout)


@pytest.mark.criterion(8)
def test_criterion_8_end_to_end():
    code1, rep1 = _verify_all(3)
    code2, rep2 = _verify_all(3)
    assert code1 == code2 == 0
    assert rep1["status"] == "pass"
    assert all(s["ok"] for s in rep1["results"]["suites"].values())
    assert rep1["content_hash"] == rep2["content_hash"]
    code5, rep5 = _verify_all(5)
    assert code5 == 2 and rep5["status"] == "gated"
    assert not rep5["results"]["gate"]["p_inert"]["ok"]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
