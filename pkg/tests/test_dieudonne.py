from fractions import Fraction

import pytest
import sympy as sp

from symsq_padic.cyclotomic import CyclotomicNumber
from symsq_padic.dieudonne import (EPS_SYM, P_SYM, DegeneratePairingError,
                                   FiltrationViolationError, TwistedVector, build_dcris_vf,
                                   build_v_pm, eigenvalue, pairing_property_check,
                                   sym_square_split, tate_twist, trivial_zero_factor,
                                   trivial_zero_laurent)


def test_v_pm_for_weight_two():
    D = sym_square_split(build_dcris_vf(2, 1, 3)).D_V2
    vp, vm = build_v_pm(D, 1, 1, 3, 2)
    assert list(vp) == [3, 1] and list(vm) == [-3, 1]


def test_zero_normalizer_is_refused():
    D = sym_square_split(build_dcris_vf(2)).D_V2
    with pytest.raises(DegeneratePairingError):
        build_v_pm(D, 0)


def test_pairing_that_breaks_the_filtration_raises():
    D = sym_square_split(build_dcris_vf(3)).D_V2
    with pytest.raises(FiltrationViolationError):
        pairing_property_check(D, 3, pairing=(1, 1))
    assert not pairing_property_check(D, 3, pairing=(1, 1), strict=False)["ok"]


@pytest.mark.parametrize("k", [2, 3, 4])
def test_twists_add_and_scale_eigenvalues(k):
    D = sym_square_split(build_dcris_vf(k)).D_V2
    vp, _ = build_v_pm(D, k=k)
    v = TwistedVector(vp)
    assert tate_twist(tate_twist(v, 2), 3) == tate_twist(v, 5)
    base = eigenvalue(v, D)
    assert sp.simplify(base - EPS_SYM * P_SYM ** (k - 1)) == 0
    for j in range(3):
        assert sp.simplify(eigenvalue(tate_twist(v, j), D) - base * P_SYM ** (-j)) == 0


def test_hodge_tate_weights_of_the_pieces():
    for k in range(2, 5):
        split = sym_square_split(build_dcris_vf(k))
        assert sorted(split.D_V2.hodge_tate_weights()) == [2 - 2 * k, 0]
        assert split.D_V1.dimension == 1


def test_trivial_zero_values():
    p = sp.Symbol("p", positive=True)
    assert sp.simplify(trivial_zero_factor(2, 1, "-", p) - (2 - 2 / p)) == 0
    assert trivial_zero_factor(3, 1, "+", 3) == sp.Rational(-20, 9)


def test_cyclotomic_eps_agrees_with_symbolic_form():
    for k in (2, 3, 4):
        for sign in ("+", "-"):
            for e in (1, -1):
                cyc = trivial_zero_factor(k, CyclotomicNumber.rational(e), sign, 5)
                sym = trivial_zero_factor(k, e, sign, 5)
                assert cyc.is_rational() and cyc == Fraction(str(sym))
                assert all(c.is_rational() for c in trivial_zero_laurent(k, CyclotomicNumber.rational(e), sign).values())
                laurent = trivial_zero_laurent(k, CyclotomicNumber.rational(e), sign)
                total = sum(sp.Rational(c.coefficients[0]) * sp.Rational(5) ** ex for ex, c in laurent.items())
                assert total == sym
