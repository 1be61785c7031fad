import random
from fractions import Fraction

import pytest
import sympy as sp

from symsq_padic.kl import (BadRegulatorError, DirichletCharacter, InterpolationDatum,
                            assemble_symsq, assembly_compatibility, bernoulli, choose_regulator,
                            gen_bernoulli, interpolation_consistency, kl_closed_form,
                            kubota_leopoldt, nonvanishing_guard, riemann_crosscheck)
from symsq_padic.padic import PadicNumber
from symsq_padic.pipeline import random_bounded
from symsq_padic.pollack import LogPair, build_log, guard_precision, synthetic_pair
from symsq_padic.series import CharacterPoint, IwasawaSeries, evaluate, series_mul, twist

QUAD4 = DirichletCharacter.from_name("quad4")


def test_small_bernoulli_values():
    assert bernoulli(2) == Fraction(1, 6)
    assert gen_bernoulli(1, QUAD4) == Fraction(-1, 2)
    for n in range(2, 20):
        assert bernoulli(n) == Fraction(str(sp.bernoulli(n)))


def test_quad4_values_against_euler_numbers():
    # L(chi_-4, -2j) = E_2j / 2 and L(chi, 1 - n) = -B_{n,chi} / n
    for j in range(0, 6):
        n = 2 * j + 1
        assert -gen_bernoulli(n, QUAD4) / n == Fraction(int(sp.euler(2 * j)), 2)


@pytest.mark.parametrize("name", ["quad3", "quad4", "quad7", "quad8"])
def test_parity_vanishing(name):
    chi = DirichletCharacter.from_name(name)
    for n in range(2, 12):
        if (-1) ** n != chi.parity():
            assert gen_bernoulli(n, chi) == 0


def test_character_validation():
    with pytest.raises(ValueError):
        DirichletCharacter(4, [0, 1, 0, 1, 0])
    assert DirichletCharacter.from_name("quad3")(2) == -1
    assert QUAD4.parity() == -1


@pytest.mark.parametrize("name,p", [("quad4", 5), ("quad3", 5), ("quad7", 3)])
def test_small_precision_interpolation(name, p):
    eta = DirichletCharacter.from_name(name)
    L = kubota_leopoldt(eta, p, (8, 24))
    for r in range(4):
        val = evaluate(L, CharacterPoint(r), 6)
        ref = PadicNumber.from_rational(kl_closed_form(eta, p, r), p, 6)
        assert (val - ref).add_bigoh(6).is_zero()
    assert riemann_crosscheck(L, eta, choose_regulator(eta, p), 2, min_precision=2)["holds"]


def test_bad_regulator_is_refused():
    p, f = 3, 4
    with pytest.raises(BadRegulatorError):
        kubota_leopoldt(QUAD4, p, (6, 12), c=1 + f * p)
    with pytest.raises(BadRegulatorError):
        kubota_leopoldt(QUAD4, p, (6, 12), c=6)


def test_trivial_character_is_refused():
    with pytest.raises(ValueError):
        kubota_leopoldt(DirichletCharacter.trivial(), 3, (6, 12))


# -- assembly ------------------------------------------------------------------
P, PREC = 3, (10, 48)


@pytest.fixture(scope="module")
def kl_small():
    return kubota_leopoldt(QUAD4, P, PREC)


@pytest.fixture(scope="module")
def guard_logs():
    W = guard_precision(*PREC, P)
    return {k: LogPair(k, P, build_log(k, "+", P, (W, PREC[1])),
                       build_log(k, "-", P, (W, PREC[1])), {}) for k in (2, 3)}


def test_assembly_with_unit_inputs(kl_small):
    one = IwasawaSeries.one(P, PREC)
    for k in (2, 3):
        a, b = assemble_symsq((one, one), kl_small, k)
        assert a.equals(twist(kl_small, 1 - k)) and b.equals(a)


def test_assembly_is_linear_in_the_input(kl_small):
    rng = random.Random(2)
    F, G = random_bounded(P, PREC, rng), random_bounded(P, PREC, rng)
    lhs = assemble_symsq((series_mul(F, G), G), kl_small, 2)[0]
    rhs = series_mul(F, assemble_symsq((G, G), kl_small, 2)[0])
    assert lhs.equals(rhs)


def test_split_commutes_with_assembly(guard_logs):
    rng = random.Random(7)
    for i in range(50):
        k = 2 + i % 2
        A, B = random_bounded(P, PREC, rng), random_bounded(P, PREC, rng)
        KL = random_bounded(P, PREC, rng)
        Lp, Lm = synthetic_pair(A, B, guard_logs[k])
        assert assembly_compatibility(Lp, Lm, KL, k, guard_logs[k])["holds"]


def test_nonvanishing_guard(guard_logs):
    zero = IwasawaSeries.zero(P, PREC)
    g = nonvanishing_guard(zero, 0)
    assert not g.nonzero and not g.inconclusive
    A = IwasawaSeries.from_polynomial(P, [1, 2], PREC)
    assert nonvanishing_guard(A * guard_logs[2].log_plus, 0)
    fuzzy = IwasawaSeries(P, {j: [PadicNumber.zero(P, 5)] * 4 for j in range(P - 1)}, (5, 4))
    g = nonvanishing_guard(fuzzy, 0)
    assert not g.nonzero and g.inconclusive
    with pytest.raises(ValueError):
        nonvanishing_guard(A, 1)


def test_interpolation_single_case():
    res = interpolation_consistency(InterpolationDatum(2, 3, "+"))
    assert res["holds"] and res["split_formula_applies"]
    res = interpolation_consistency(InterpolationDatum(1, 3, "+"))
    assert res["holds"] and not res["split_formula_applies"]
