"""Grossencharacters of class-number-one imaginary quadratic fields and their CM forms.

A character of type (-k+1, 0) and conductor f is fixed by a set S of residues
mod f: every ideal prime to f has exactly one generator congruent to an element
of S, and the character sends the ideal to that generator raised to k-1.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

CLASS_NUMBER_ONE = (-3, -4, -7, -8, -11, -19, -43, -67, -163)

CATALOG_PATH = Path(__file__).with_name("data") / "catalog.json"


class BadPrimeError(ValueError):
    """The prime divides N * disc(K); callers skip it."""


class RamifiedEvaluationError(ValueError):
    """The ideal is not coprime to the conductor."""


class UnitFixingError(ValueError):
    """The residue set does not pick out exactly one generator."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_below(bound: int) -> list[int]:
    return [q for q in range(2, bound) if is_prime(q)]


def kronecker(d: int, q: int) -> int:
    """Kronecker symbol (d / q) for a prime q."""
    if q == 2:
        if d % 2 == 0:
            return 0
        return 1 if d % 8 in (1, 7) else -1
    r = d % q
    if r == 0:
        return 0
    return 1 if pow(r, (q - 1) // 2, q) == 1 else -1


# -- quadratic numbers --------------------------------------------------------
class QuadraticElement:
    """a + b*sqrt(m) with rational a, b and m < 0 squarefree."""

    __slots__ = ("a", "b", "m")

    def __init__(self, a, b=0, m: int = -1):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.m = m

    def _coerce(self, other):
        if isinstance(other, QuadraticElement):
            if other.m != self.m:
                raise ValueError("elements of different quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticElement(other, 0, self.m)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticElement(self.a + o.a, self.b + o.b, self.m)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticElement(-self.a, -self.b, self.m)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticElement(self.a - o.a, self.b - o.b, self.m)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticElement(self.a * o.a + self.m * self.b * o.b,
                                self.a * o.b + self.b * o.a, self.m)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticElement(self.a, -self.b, self.m)

    def norm(self) -> Fraction:
        return self.a * self.a - self.m * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        t = self * o.conjugate()
        return QuadraticElement(t.a / n, t.b / n, self.m)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return QuadraticElement(1, 0, self.m) / self ** (-e)
        result = QuadraticElement(1, 0, self.m)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadraticElement):
            return (self.a, self.b, self.m) == (other.a, other.b, other.m)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.m))

    def is_rational(self) -> bool:
        return self.b == 0

    def rational(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return self.a

    def __complex__(self):
        return complex(float(self.a), float(self.b) * math.sqrt(-self.m))

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a} + {self.b}*sqrt({self.m})"

    def to_json(self):
        return [str(self.a), str(self.b)]


def _squarefree_part(d: int) -> int:
    m = d
    f = 2
    while f * f <= abs(m):
        while m % (f * f) == 0:
            m //= f * f
        f += 1
    return m


class ImagQuadField:
    """K = Q(sqrt(d)) for a fundamental discriminant d < 0 of class number 1."""

    def __init__(self, d: int):
        if d not in CLASS_NUMBER_ONE:
            raise ValueError(f"discriminant {d} is not in the class number 1 list")
        self.d = d
        self.m = _squarefree_part(d)
        self.half_integral = self.m % 4 == 1

    def __repr__(self):
        return f"ImagQuadField({self.d})"

    def __eq__(self, other):
        return isinstance(other, ImagQuadField) and other.d == self.d

    def __hash__(self):
        return hash(self.d)

    def element(self, a, b=0) -> QuadraticElement:
        return QuadraticElement(a, b, self.m)

    @property
    def omega(self) -> QuadraticElement:
        """Generator of the ring of integers over Z."""
        if self.half_integral:
            return self.element(Fraction(1, 2), Fraction(1, 2))
        return self.element(0, 1)

    def is_integral(self, x: QuadraticElement) -> bool:
        if self.half_integral:
            A, B = 2 * x.a, 2 * x.b
            return A.denominator == 1 and B.denominator == 1 and (A - B) % 2 == 0
        return x.a.denominator == 1 and x.b.denominator == 1

    def congruent(self, x, y, modulus) -> bool:
        return self.is_integral((x - y) / modulus)

    @property
    def units(self) -> list[QuadraticElement]:
        if self.d == -4:
            return [self.element(1), self.element(0, 1), self.element(-1), self.element(0, -1)]
        if self.d == -3:
            w = self.element(Fraction(1, 2), Fraction(1, 2))  # primitive sixth root of 1
            return [w ** e for e in range(6)]
        return [self.element(1), self.element(-1)]

    def epsilon(self, n: int) -> int:
        """Quadratic character of K at an integer n (multiplicative extension)."""
        if n < 0:
            return -self.epsilon(-n) if self.d < 0 else self.epsilon(-n)
        out = 1
        q = 2
        while n > 1:
            if q * q > n:
                q = n
            while n % q == 0:
                out *= kronecker(self.d, q)
                n //= q
            q += 1
        return out

    def splitting(self, q: int) -> str:
        e = kronecker(self.d, q)
        return {1: "split", -1: "inert", 0: "ramified"}[e]

    @lru_cache(maxsize=None)
    def prime_element(self, q: int) -> QuadraticElement:
        """An element of norm q (q split or ramified)."""
        if self.splitting(q) == "inert":
            raise ValueError(f"{q} is inert in {self}")
        m = -self.m
        if self.half_integral:
            for B in range(0, int(math.isqrt(4 * q // m)) + 1):
                A2 = 4 * q - m * B * B
                A = math.isqrt(A2)
                if A * A == A2 and (A - B) % 2 == 0:
                    return self.element(Fraction(A, 2), Fraction(B, 2))
        else:
            for B in range(0, int(math.isqrt(q // m)) + 1):
                A2 = q - m * B * B
                A = math.isqrt(A2)
                if A * A == A2:
                    return self.element(A, B)
        raise ArithmeticError(f"no element of norm {q} found")


# -- Grossencharacters ---------------------------------------------------------
class Grossencharacter:
    """phi((alpha)) = alpha_can^(k-1), alpha_can the generator congruent to a
    residue in ``residues`` modulo the conductor generator."""

    def __init__(self, field: ImagQuadField, k: int, conductor: QuadraticElement,
                 residues):
        if k < 2:
            raise ValueError("weight must be at least 2")
        self.field = field
        self.k = k
        self.conductor = conductor
        self.residues = list(residues)

    @property
    def conductor_norm(self) -> int:
        return int(self.conductor.norm())

    def is_coprime(self, alpha: QuadraticElement) -> bool:
        return math.gcd(int(alpha.norm()), self.conductor_norm) == 1

    def canonical_generator(self, alpha: QuadraticElement) -> QuadraticElement:
        if not self.is_coprime(alpha):
            raise RamifiedEvaluationError(f"({alpha}) is not coprime to the conductor")
        hits = [u * alpha for u in self.field.units
                if any(self.field.congruent(u * alpha, s, self.conductor) for s in self.residues)]
        if len(hits) != 1:
            raise UnitFixingError(f"{len(hits)} generators of ({alpha}) satisfy the residue rule")
        return hits[0]

    def __call__(self, alpha: QuadraticElement, inverse: bool = False) -> QuadraticElement:
        return eval_grossencharacter(self, alpha, inverse)


def eval_grossencharacter(phi: Grossencharacter, alpha, inverse: bool = False):
    """Arithmetic value phi((alpha)); ``inverse`` gives the geometric one."""
    if isinstance(alpha, int):
        alpha = phi.field.element(alpha)
    value = phi.canonical_generator(alpha) ** (phi.k - 1)
    return 1 / value if inverse else value


# -- forms -------------------------------------------------------------------
@dataclass
class CMFormData:
    label: str
    field: ImagQuadField
    phi: Grossencharacter
    k: int
    N: int
    curve: tuple | None = None
    a_q_table: dict = field(default_factory=dict)

    def is_good(self, q: int) -> bool:
        return is_prime(q) and (self.N * abs(self.field.d)) % q != 0

    def check_good(self, q: int):
        if not self.is_good(q):
            raise BadPrimeError(f"q = {q} divides N*disc or is not prime")

    def nebentypus(self, n: int) -> int:
        """epsilon(n) = eps_K(n) phi((n)) / n^(k-1) for n prime to N."""
        if math.gcd(n, self.N) != 1:
            return 0
        val = eval_grossencharacter(self.phi, n) / Fraction(n) ** (self.k - 1)
        val = val * self.field.epsilon(n)
        r = val.rational()
        if r not in (1, -1):
            raise ValueError(f"nebentypus value {r} at {n} is not +-1")
        return int(r)

    def epsilon_K(self, n: int) -> int:
        return self.field.epsilon(n)

    def prime_pair(self, q: int):
        """(pi, conj pi) for split q."""
        pi = self.field.prime_element(q)
        return pi, pi.conjugate()


def a_q(form: CMFormData, q: int):
    """Hecke eigenvalue at a good prime (a rational integer here)."""
    form.check_good(q)
    if form.field.splitting(q) == "inert":
        return 0
    pi, pib = form.prime_pair(q)
    return int((form.phi(pi) + form.phi(pib)).rational())


@dataclass
class FrobeniusData:
    q: int
    split: bool
    matrix: tuple

    def trace(self):
        return self.matrix[0][0] + self.matrix[1][1]

    def det(self):
        (a, b), (c, d) = self.matrix
        return a * d - b * c


def frobenius_matrix(form: CMFormData, q: int) -> FrobeniusData:
    """rho_f(Frob_q) in the basis x, y.

    Split q: diag(phi(Q), phi(conj Q)).  Inert q: [[0, phi((q))], [1, 0]], the
    basis being scaled so that the lower-left entry is 1.
    """
    form.check_good(q)
    K = form.field
    if K.splitting(q) == "split":
        pi, pib = form.prime_pair(q)
        zero = K.element(0)
        return FrobeniusData(q, True, ((form.phi(pi), zero), (zero, form.phi(pib))))
    return FrobeniusData(q, False, ((K.element(0), form.phi(K.element(q))),
                                    (K.element(1), K.element(0))))


def det_rho(form: CMFormData, q: int, route: str = "character"):
    """epsilon(q) q^(k-1), or the same value read off the sigma-level formula."""
    form.check_good(q)
    if route == "character":
        return form.field.element(form.nebentypus(q) * q ** (form.k - 1))
    if route != "sigma":
        raise ValueError("route must be 'character' or 'sigma'")
    K = form.field
    if K.splitting(q) == "split":
        pi, pib = form.prime_pair(q)
        return form.phi(pi) * form.phi(pib)
    fr = frobenius_matrix(form, q).matrix
    return -(fr[1][0] * fr[0][1])


def check_hypotheses(form: CMFormData, p: int, bound: int = 200) -> dict:
    """Standing hypotheses at p, each with a witness."""
    K = form.field
    report = {}
    report["p_odd"] = {"ok": p % 2 == 1, "witness": p}
    report["p_good"] = {"ok": (form.N % p) != 0, "witness": form.N}
    split = K.splitting(p)
    report["p_inert"] = {"ok": split == "inert", "witness": {"eps_K(p)": kronecker(K.d, p)}}
    hyp1 = None
    eps_nontrivial = None
    for q in primes_below(bound):
        if not form.is_good(q):
            continue
        e, ek = form.nebentypus(q), K.epsilon(q)
        if hyp1 is None and e != ek:
            hyp1 = {"q": q, "epsilon": e, "eps_K": ek}
        if eps_nontrivial is None and e != 1:
            eps_nontrivial = {"q": q, "epsilon": e}
    report["hypothesis_1"] = {"ok": hyp1 is not None,
                              "witness": hyp1 or f"epsilon = eps_K at all good q < {bound}"}
    divides = (form.k - 1) % (p - 1) == 0
    report["hypothesis_2"] = {
        "ok": (not divides) or eps_nontrivial is not None,
        "witness": {"p-1 divides k-1": divides, "epsilon_nontrivial": eps_nontrivial},
    }
    report["all_ok"] = all(v["ok"] for v in report.values())
    return report


# -- point counting and catalog ---------------------------------------------
def count_points(curve, q: int) -> int:
    """#E(F_q) for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, point at infinity included."""
    a1, a2, a3, a4, a6 = (c % q for c in curve)
    total = 1
    if q == 2:
        for x in range(2):
            for y in range(2):
                if (y * y + a1 * x * y + a3 * y - (x ** 3 + a2 * x * x + a4 * x + a6)) % 2 == 0:
                    total += 1
        return total
    squares = [0] * q
    for y in range(q):
        squares[y * y % q] += 1
    for x in range(q):
        b = a1 * x + a3
        c = x ** 3 + a2 * x * x + a4 * x + a6
        total += squares[(b * b + 4 * c) % q]
    return total


def a_q_from_curve(curve, q: int) -> int:
    return q + 1 - count_points(curve, q)


def _element_from_json(K: ImagQuadField, pair) -> QuadraticElement:
    return K.element(Fraction(pair[0]), Fraction(pair[1]))


def form_from_entry(entry: dict) -> CMFormData:
    K = ImagQuadField(entry["d"])
    phi = Grossencharacter(K, entry["k"], _element_from_json(K, entry["conductor"]),
                           [_element_from_json(K, r) for r in entry["residues"]])
    curve = tuple(entry["curve"]) if entry.get("curve") else None
    table = {int(q): v for q, v in entry.get("a_q", {}).items()}
    return CMFormData(entry["label"], K, phi, entry["k"], entry["N"], curve, table)


def cm_form(label: str, d: int, k: int, N: int, conductor, residues, curve=None) -> CMFormData:
    return form_from_entry({"label": label, "d": d, "k": k, "N": N, "conductor": conductor,
                            "residues": residues, "curve": curve})


@lru_cache(maxsize=None)
def _catalog_raw(path: str) -> str:
    return Path(path).read_text()


def load_catalog(path=CATALOG_PATH) -> dict[str, CMFormData]:
    data = json.loads(_catalog_raw(str(path)))
    return {e["label"]: form_from_entry(e) for e in data["forms"]}


def get_form(label: str, path=CATALOG_PATH) -> CMFormData:
    catalog = load_catalog(path)
    if label not in catalog:
        raise KeyError(f"unknown form {label!r}; catalog has {sorted(catalog)}")
    return catalog[label]


# curve data and unit-fixing rules for the built-in forms
CATALOG_SEED = [
    {"label": "32a", "d": -4, "k": 2, "N": 32, "conductor": ["-2", "2"],
     "residues": [["1", "0"]], "curve": [0, 0, 0, -1, 0]},
    {"label": "27a", "d": -3, "k": 2, "N": 27, "conductor": ["3", "0"],
     "residues": [["1", "0"]], "curve": [0, 0, 1, 0, -7]},
    {"label": "49a", "d": -7, "k": 2, "N": 49, "conductor": ["0", "1"],
     "residues": [["1", "0"], ["2", "0"], ["4", "0"]], "curve": [1, -1, 0, -2, -1]},
]


def regenerate_catalog(path=CATALOG_PATH, bound: int = 1000) -> dict:
    """Recount points for every seed curve and write the catalog JSON."""
    forms = []
    for seed in CATALOG_SEED:
        entry = dict(seed)
        N, d = seed["N"], seed["d"]
        entry["a_q"] = {str(q): a_q_from_curve(seed["curve"], q)
                        for q in primes_below(bound) if (N * abs(d)) % q}
        entry["a_q_bound"] = bound
        forms.append(entry)
    data = {"forms": forms}
    Path(path).write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    _catalog_raw.cache_clear()
    return data
