"""Symmetric powers of the Frobenius of a CM form, computed two ways.

The brute-force route builds Sym^m of the 2x2 Frobenius matrix on the monomial
basis x^r y^(m-r) and takes a characteristic polynomial.  The structural route
splits Sym^m into inductions of phi^(m-2i) twisted by (eps_K det rho)^i, plus one
abelian character when m is even, and multiplies their local factors.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .hecke import CMFormData, QuadraticElement, frobenius_matrix, primes_below


@dataclass(frozen=True)
class RepComponent:
    """One summand of Sym^m V_f.

    ``kind`` is 'induced' (Ind phi^power, dimension 2) or 'abelian'
    ((eps_K eps)^(m/2) chi^((m/2)(k-1)), dimension 1); every summand is further
    twisted by (eps_K det rho_f)^twist.
    """

    kind: str
    power: int
    twist: int

    @property
    def dimension(self) -> int:
        return 2 if self.kind == "induced" else 1


@dataclass
class EulerPolynomial:
    q: int
    coefficients: list

    @property
    def degree(self) -> int:
        d = len(self.coefficients) - 1
        while d > 0 and self.coefficients[d] == 0:
            d -= 1
        return d

    def __eq__(self, other):
        if not isinstance(other, EulerPolynomial):
            return NotImplemented
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + [0] * (n - len(self.coefficients))
        b = other.coefficients + [0] * (n - len(other.coefficients))
        return self.q == other.q and all(x == y for x, y in zip(a, b))

    def to_json(self):
        return [c.to_json() if isinstance(c, QuadraticElement) else [str(c), "0"]
                for c in self.coefficients]


def decompose(m: int, form: CMFormData | None = None) -> list[RepComponent]:
    """Ind(phi^(m-2i)) x (eps_K det)^i for 2i < m, plus the abelian piece if m is even."""
    if m < 2:
        raise ValueError("m must be at least 2")
    comps = [RepComponent("induced", m - 2 * i, i) for i in range((m + 1) // 2)]
    if m % 2 == 0:
        comps.append(RepComponent("abelian", m // 2, 0))
    return comps


# -- polynomial helpers over K --------------------------------------------------
def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y == 0:
                continue
            out[i + j] = out[i + j] + x * y
    return out


def _mat_mul(A, B):
    n = len(A)
    C = [[0] * n for _ in range(n)]
    for i in range(n):
        row = A[i]
        for k in range(n):
            a = row[k]
            if a == 0:
                continue
            Bk = B[k]
            Ci = C[i]
            for j in range(n):
                b = Bk[j]
                if b != 0:
                    Ci[j] = Ci[j] + a * b
    return C


def sym_power_matrix(matrix, m: int):
    """Sym^m of [[a, b], [c, d]] on the basis x^r y^(m-r), r = 0..m.

    x maps to a x + c y and y to b x + d y; column r holds the image of x^r y^(m-r).
    """
    (a, b), (c, d) = matrix
    n = m + 1
    S = [[0] * n for _ in range(n)]
    # (a x + c y)^r (b x + d y)^(m-r): coefficient of x^s y^(m-s)
    apow = [1] * n
    cpow = [1] * n
    bpow = [1] * n
    dpow = [1] * n
    for e in range(1, n):
        apow[e], cpow[e] = apow[e - 1] * a, cpow[e - 1] * c
        bpow[e], dpow[e] = bpow[e - 1] * b, dpow[e - 1] * d
    for r in range(n):
        for i in range(r + 1):  # x^i from the first factor
            t1 = math.comb(r, i) * apow[i] * cpow[r - i]
            if t1 == 0:
                continue
            for j in range(m - r + 1):  # x^j from the second factor
                t2 = math.comb(m - r, j) * bpow[j] * dpow[m - r - j]
                if t2 == 0:
                    continue
                S[i + j][r] = S[i + j][r] + t1 * t2
    return S


def _trace(A):
    t = 0
    for i in range(len(A)):
        t = t + A[i][i]
    return t


def reverse_charpoly(A) -> list:
    """Coefficients of det(1 - A T) via traces of powers and Newton's identities."""
    n = len(A)
    powers = []
    P = A
    for k in range(1, n + 1):
        powers.append(_trace(P))
        if k < n:
            P = _mat_mul(P, A)
    e = [1]
    for k in range(1, n + 1):
        s = 0
        for i in range(1, k + 1):
            term = e[k - i] * powers[i - 1]
            s = s + term if i % 2 == 1 else s - term
        e.append(s / Fraction(k) if not isinstance(s, int) else Fraction(s, k))
    return [e[k] if k % 2 == 0 else -e[k] for k in range(n + 1)]


# -- the two routes ------------------------------------------------------------
def trace_via_matrix(m: int, form: CMFormData, q: int):
    fr = frobenius_matrix(form, q)
    return _trace(sym_power_matrix(fr.matrix, m))


def _det_twist(form: CMFormData, q: int) -> int:
    """eps_K(q) eps(q) q^(k-1), the Frobenius value of eps_K det rho_f."""
    return form.epsilon_K(q) * form.nebentypus(q) * q ** (form.k - 1)


def _phi_values(form: CMFormData, q: int):
    K = form.field
    if K.splitting(q) == "split":
        pi, pib = form.prime_pair(q)
        return form.phi(pi), form.phi(pib)
    return form.phi(K.element(q)), None


def trace_via_components(m: int, form: CMFormData, q: int):
    form.check_good(q)
    lam = _det_twist(form, q)
    x, y = _phi_values(form, q)
    total = form.field.element(0)
    for comp in decompose(m, form):
        if comp.kind == "abelian":
            total = total + lam ** comp.power
        elif y is not None:
            total = total + (x ** comp.power + y ** comp.power) * lam ** comp.twist
    return total


def euler_poly_sym(m: int, form: CMFormData, q: int) -> EulerPolynomial:
    fr = frobenius_matrix(form, q)
    return EulerPolynomial(q, reverse_charpoly(sym_power_matrix(fr.matrix, m)))


def component_euler_poly(comp: RepComponent, form: CMFormData, q: int) -> list:
    K = form.field
    lam = _det_twist(form, q)
    one = K.element(1)
    if comp.kind == "abelian":
        return [one, -K.element(lam ** comp.power)]
    x, y = _phi_values(form, q)
    scale = lam ** comp.twist
    if y is not None:
        return _poly_mul([one, -(x ** comp.power) * scale], [one, -(y ** comp.power) * scale])
    return [one, K.element(0), -(x ** comp.power) * (scale * scale)]


def euler_poly_factored(m: int, form: CMFormData, q: int) -> EulerPolynomial:
    form.check_good(q)
    poly = [form.field.element(1)]
    for comp in decompose(m, form):
        poly = _poly_mul(poly, component_euler_poly(comp, form, q))
    return EulerPolynomial(q, poly)


def verify_factorization(m: int, form: CMFormData, bound: int, corrupt: dict | None = None) -> dict:
    """Compare both Euler polynomials at every good q < bound.

    ``corrupt`` maps q to a replacement a_q used by the matrix route only
    (fault injection).
    """
    start = time.perf_counter()
    checked, mismatches = [], []
    for q in primes_below(bound):
        if not form.is_good(q):
            continue
        if corrupt and q in corrupt:
            lhs = _corrupted_sym(m, form, q, corrupt[q])
        else:
            lhs = euler_poly_sym(m, form, q)
        rhs = euler_poly_factored(m, form, q)
        checked.append(q)
        if lhs != rhs:
            mismatches.append({"q": q, "sym": lhs.to_json(), "factored": rhs.to_json()})
    return {"form": form.label, "m": m, "primes_checked": len(checked),
            "mismatches": mismatches, "wall_time": time.perf_counter() - start}


def _corrupted_sym(m: int, form: CMFormData, q: int, a: int) -> EulerPolynomial:
    """Sym^m Euler polynomial of the companion matrix with trace a and the true determinant."""
    K = form.field
    det = K.element(form.nebentypus(q) * q ** (form.k - 1))
    matrix = ((K.element(0), -det), (K.element(1), K.element(a)))
    return EulerPolynomial(q, reverse_charpoly(sym_power_matrix(matrix, m)))
