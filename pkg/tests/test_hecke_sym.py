import pytest

from symsq_padic.hecke import (BadPrimeError, a_q, a_q_from_curve, check_hypotheses, cm_form,
                               count_points, det_rho, get_form, load_catalog, primes_below)
from symsq_padic.sympower import (decompose, euler_poly_factored, euler_poly_sym,
                                  verify_factorization)


def _brute_affine_count(curve, q):
    a1, a2, a3, a4, a6 = curve
    return sum(1 for x in range(q) for y in range(q)
               if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % q == 0)


def test_eigenvalues_of_32a():
    f = get_form("32a")
    assert [int(a_q(f, q)) for q in (5, 7, 13)] == [-2, 0, 6]


def test_eigenvalue_of_27a_at_7():
    f = get_form("27a")
    assert int(a_q(f, 7)) == -1
    assert _brute_affine_count(f.curve, 7) == 8


@pytest.mark.parametrize("label", ["32a", "27a", "49a"])
def test_hecke_matches_point_counts(label):
    f = get_form(label)
    for q in primes_below(200):
        if f.is_good(q):
            assert int(a_q(f, q)) == a_q_from_curve(f.curve, q)
            if q < 60:
                assert count_points(f.curve, q) == _brute_affine_count(f.curve, q) + 1


@pytest.mark.parametrize("label", ["32a", "27a", "49a"])
def test_inert_primes_have_zero_eigenvalue(label):
    f = get_form(label)
    for q in primes_below(300):
        if f.is_good(q) and f.field.splitting(q) == "inert":
            assert int(a_q(f, q)) == 0


def test_determinant_two_ways():
    f = get_form("32a")
    for q in (5, 7):
        assert det_rho(f, q).rational() == q
        assert det_rho(f, q, "sigma").rational() == q


def test_bad_prime_is_refused():
    with pytest.raises(BadPrimeError):
        a_q(get_form("32a"), 2)


def test_hypotheses_for_32a():
    f = get_form("32a")
    good = check_hypotheses(f, 3)
    assert good["all_ok"]
    bad = check_hypotheses(f, 5)
    assert not bad["all_ok"] and not bad["p_inert"]["ok"]


def test_weight_three_form_fails_first_hypothesis():
    f = cm_form("32a-w3", -4, 3, 32, ["-2", "2"], [["1", "0"]])
    rep = check_hypotheses(f, 3)
    assert not rep["hypothesis_1"]["ok"]
    assert not rep["all_ok"]


def test_catalog_has_the_three_curves():
    assert {"32a", "27a", "49a"} <= set(load_catalog())


def test_decomposition_shapes():
    for m in range(2, 8):
        comps = decompose(m)
        assert sum(c.dimension for c in comps) == m + 1
        assert sum(c.kind == "abelian" for c in comps) == (m % 2 == 0)


def test_sym_square_euler_factor_at_5():
    f = get_form("32a")
    want = [1, 1, -5, -125]  # (1 + 6T + 25T^2)(1 - 5T)
    got = euler_poly_sym(2, f, 5)
    assert [c if isinstance(c, int) else c.rational() if hasattr(c, "rational") else c
            for c in got.coefficients] == want
    assert euler_poly_factored(2, f, 5) == got


def test_corrupted_eigenvalue_is_detected():
    f = get_form("32a")
    r = verify_factorization(2, f, 100, corrupt={13: 5})
    assert [x["q"] for x in r["mismatches"]] == [13]
    assert verify_factorization(2, f, 100)["mismatches"] == []
