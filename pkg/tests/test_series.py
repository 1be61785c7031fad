import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symsq_padic.padic import PadicNumber
from symsq_padic.series import (CharacterPoint, IncompatibleSeriesError, IwasawaSeries,
                                divide_exact, evaluate, growth_check, isotypic_project,
                                series_mul, twist)

P, PREC = 3, (20, 16)


def poly(coeffs, p=P, precision=PREC, components=None):
    return IwasawaSeries.from_polynomial(p, coeffs, precision, components)


def test_twist_of_X():
    F = twist(IwasawaSeries.X(P, PREC), 1)
    assert F.equals(poly([P, 1 + P]))


def test_evaluate_X_at_chi():
    X = IwasawaSeries.X(5, (20, 16))
    assert evaluate(X, CharacterPoint(1), 5).to_fraction() == 5


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=8), st.integers(-4, 4))
def test_twist_round_trip(coeffs, n):
    F = poly(coeffs)
    assert twist(twist(F, n), -n).equals(F, 15)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=6),
       st.lists(st.integers(-30, 30), min_size=1, max_size=6), st.integers(0, 4))
def test_evaluation_is_multiplicative(a, b, s):
    F, G = poly(a), poly(b)
    pt = CharacterPoint(s)
    lhs = evaluate(series_mul(F, G), pt, 5)
    rhs = evaluate(F, pt, 5) * evaluate(G, pt, 5)
    assert lhs.equals(rhs, 5)


def test_twist_moves_the_evaluation_point():
    F = poly([2, -1, 7, 3], p=5, precision=(20, 16))
    for n in (1, 2):
        for s in range(3):
            lhs = evaluate(twist(F, n), CharacterPoint(s), 8)
            rhs = evaluate(F, CharacterPoint(s + n), 8)
            assert lhs.equals(rhs, 8)


def test_projection_laws():
    p = 5
    F = IwasawaSeries(p, {j: [PadicNumber.from_rational(j + i + 1, p) for i in range(8)]
                          for j in range(p - 1)}, (20, 8), tail_free=True)
    total = isotypic_project(F, 0)
    for a in range(1, p - 1):
        total = total + isotypic_project(F, a)
    assert total.equals(F)
    assert isotypic_project(isotypic_project(F, 1), 1).equals(isotypic_project(F, 1))
    assert isotypic_project(isotypic_project(F, 1), 2).equals(IwasawaSeries.zero(p, (20, 8)))
    # twisting shifts the component index by the twist
    assert isotypic_project(twist(F, 1), 1).equals(twist(isotypic_project(F, 2), 1))


def test_growth_examples():
    D = 128
    assert growth_check(poly([1, 2, 3], precision=(20, D)), 0)["ok"]
    # the logarithm-like series X^j / j grows like log
    coeffs = [0] + [PadicNumber.from_rational(1, P) / j for j in range(1, D)]
    L = IwasawaSeries(P, {j: coeffs for j in range(P - 1)}, (20, D), growth_class=1)
    assert growth_check(L, 1)["ok"]
    assert not growth_check(L, 0)["ok"]


def test_exact_division_by_a_factor():
    G = poly([3, 1, 2])
    XG = series_mul(IwasawaSeries.X(P, PREC), G)
    Q, defect = divide_exact(XG, G)
    assert defect["holds"]
    assert Q.truncate(15, 10).equals(IwasawaSeries.X(P, PREC).truncate(15, 10))


def test_division_reports_a_remainder():
    F = poly([1, 1])
    G = poly([0, 1])  # X does not divide 1 + X
    _, defect = divide_exact(F, G)
    assert not defect["holds"]


def test_mismatched_primes_are_rejected():
    with pytest.raises(IncompatibleSeriesError):
        poly([1]) + IwasawaSeries.from_polynomial(5, [1], PREC)


def test_json_round_trip():
    rng = random.Random(3)
    F = poly([rng.randrange(-50, 50) for _ in range(10)])
    assert IwasawaSeries.from_json(F.to_json()).equals(F)


def test_truncation():
    F = poly(list(range(1, 12)))
    T = F.truncate(5, 4)
    assert T.precision == (5, 4)
    assert T.equals(poly([1, 2, 3, 4], precision=(5, 4)))
