import random

import pytest

from symsq_padic.padic import PadicNumber
from symsq_padic.pipeline import random_bounded
from symsq_padic.pollack import (LogPair, build_log, guard_precision, split_pm,
                                 symmetry_sign, synthetic_pair, zero_pattern)
from symsq_padic.series import CharacterPoint, IwasawaSeries, divide_exact, evaluate

P = 3
PREC = (12, 48)


@pytest.fixture(scope="module")
def logs2():
    return LogPair.build(2, P, PREC)


@pytest.fixture(scope="module")
def guard2():
    M, D = PREC
    W = guard_precision(M, D, P)
    return LogPair(2, P, build_log(2, "+", P, (W, D)), build_log(2, "-", P, (W, D)), {})


def test_zero_pattern_small_cases():
    assert zero_pattern(2, "-", CharacterPoint(0, 0, 1), P)
    assert not zero_pattern(2, "+", CharacterPoint(0, 0, 1), P)
    assert zero_pattern(2, "+", CharacterPoint(0, 0, 2), P)
    assert not zero_pattern(2, "+", CharacterPoint(1, 0, 0), P)


def test_zero_pattern_range_check():
    with pytest.raises(ValueError):
        zero_pattern(2, "+", CharacterPoint(5, 0, 1), P)


def test_one_more_layer_changes_nothing():
    pair = LogPair.build(2, P, PREC)
    for sign in ("+", "-"):
        more = build_log(2, sign, P, PREC, n_max=pair.n_max[sign] + 1)
        assert more.equals(pair.series(sign))


def test_series_vanishes_where_predicted(logs2):
    for level in (1, 2):
        for s in (0, 1):
            pt = CharacterPoint(s, 0, level, 1)
            for sign in ("+", "-"):
                val = evaluate(logs2.series(sign), pt, 1)
                assert val.is_zero() == zero_pattern(2, sign, pt, P)


def test_split_of_equal_inputs_has_no_minus_part(logs2):
    rng = random.Random(0)
    G = random_bounded(P, PREC, rng)
    plus, minus, defect = split_pm(G, G, 2, logs2)
    assert minus.equals(IwasawaSeries.zero(P, minus.precision))
    assert defect["-"]["holds"]


def test_split_round_trip(guard2):
    rng = random.Random(11)
    M, D = PREC
    for _ in range(5):
        A, B = random_bounded(P, PREC, rng), random_bounded(P, PREC, rng)
        plus, minus, defect = split_pm(*synthetic_pair(A, B, guard2), 2, guard2)
        assert defect["+"]["holds"] and defect["-"]["holds"]
        assert plus.truncate(M, D).equals(A.truncate(M, D))
        assert minus.truncate(M, D).equals(B.truncate(M, D))


def test_dividing_a_multiple_of_log_plus(guard2):
    M, D = PREC
    A = IwasawaSeries.from_polynomial(P, [2, -1, 5], PREC)
    Q, defect = divide_exact(A * guard2.log_plus, guard2.log_plus)
    assert defect["holds"]
    assert Q.truncate(M, D).equals(A.truncate(M, D))


def test_symmetry_at_wild_points(guard2):
    rng = random.Random(4)
    A, B = random_bounded(P, PREC, rng), random_bounded(P, PREC, rng)
    Lp, Lm = synthetic_pair(A, B, guard2)
    for level in (1, 2):
        for s in (0, 1):
            pt = CharacterPoint(s, 0, level, 1)
            lhs = evaluate(Lp, pt, 3)
            rhs = evaluate(Lm, pt, 3) * symmetry_sign(pt)
            assert (lhs - rhs).is_zero()


def test_log_pair_mismatched_weight(logs2):
    X = IwasawaSeries.X(P, PREC)
    with pytest.raises(ValueError):
        split_pm(X, X, 3, logs2)


def test_factor_exponents_alternate(logs2):
    plus, minus = logs2.factor_exponents("+"), logs2.factor_exponents("-")
    assert all(m % 2 == 0 for m in plus) and all(m % 2 == 1 for m in minus)
    assert isinstance(PadicNumber.from_rational(1, P), PadicNumber)
