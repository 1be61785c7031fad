"""Exact arithmetic in cyclotomic fields Q(zeta_m), characters mod p^n, Gauss sums."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce

import numpy as np


def totient(m: int) -> int:
    result, n, q = m, m, 2
    while q * q <= n:
        if n % q == 0:
            while n % q == 0:
                n //= q
            result -= result // q
        q += 1
    if n > 1:
        result -= result // n
    return result


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        out[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients (low to high) of the m-th cyclotomic polynomial."""
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> np.ndarray:
    """Row e holds x^e mod Phi_m for 0 <= e < 2m (as an object array)."""
    phi = cyclotomic_polynomial(m)
    d = len(phi) - 1
    rows = np.zeros((2 * m, d), dtype=object)
    cur = [0] * d
    cur[0] = 1
    for e in range(2 * m):
        rows[e, :] = cur
        # multiply by x and reduce the overflow term
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[j] for j, c in enumerate(cur)]
    return rows


@lru_cache(maxsize=None)
def _reduction_table_int64(m: int):
    table = _reduction_table(m)
    bound = max((abs(int(x)) for x in table.flat), default=0)
    return table.astype(np.int64), bound


def _reduce(m: int, vec) -> list[int]:
    """Reduce an integer coefficient vector of length <= 2m modulo Phi_m."""
    d = totient(m)
    vec = list(vec)
    if len(vec) <= d:
        return vec + [0] * (d - len(vec))
    fast, bound = _reduction_table_int64(m)
    size = max(abs(x) for x in vec)
    if size * max(bound, 1) * len(vec) < 2 ** 62:
        high = np.array(vec[d:], dtype=np.int64)
        out = np.array(vec[:d], dtype=np.int64) + high.dot(fast[d:len(vec)])
        return [int(x) for x in out]
    table = _reduction_table(m)
    high = np.array(vec[d:], dtype=object)
    low = np.array(vec[:d] + [0] * max(0, d - len(vec)), dtype=object)
    out = low + high.dot(table[d:len(vec)])
    return [int(x) for x in out]


def _lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


class CyclotomicNumber:
    """Element of Q(zeta_m) as rational coordinates on 1, zeta_m, ..., zeta_m^{phi(m)-1}."""

    __slots__ = ("m", "coefficients")

    def __init__(self, m: int, coefficients):
        self.m = m
        d = totient(m)
        coeffs = [Fraction(c) for c in coefficients]
        if len(coeffs) > d:
            den = _lcm(*(c.denominator for c in coeffs))
            ints = _reduce(m, [int(c * den) for c in coeffs])
            coeffs = [Fraction(c, den) for c in ints]
        self.coefficients = tuple(coeffs + [Fraction(0)] * (d - len(coeffs)))

    @classmethod
    def rational(cls, x, m: int = 1) -> "CyclotomicNumber":
        return cls(m, [x])

    @classmethod
    def zeta(cls, m: int, power: int = 1) -> "CyclotomicNumber":
        power %= m
        vec = [0] * (power + 1)
        vec[power] = 1
        return cls(m, vec)

    @classmethod
    def from_exponent_counts(cls, m: int, counts) -> "CyclotomicNumber":
        """sum_e counts[e] zeta_m^e for a length-m integer vector."""
        return cls(m, _reduce(m, list(counts)))

    def embed(self, M: int) -> "CyclotomicNumber":
        """Image in Q(zeta_M) for a multiple M of m (coefficient-exact)."""
        if M % self.m:
            raise ValueError(f"{self.m} does not divide {M}")
        if M == self.m:
            return self
        step = M // self.m
        vec = [Fraction(0)] * (step * (len(self.coefficients) - 1) + 1)
        for i, c in enumerate(self.coefficients):
            vec[i * step] = c
        return CyclotomicNumber(M, vec)

    def _common(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber(self.m, [other])
        M = _lcm(self.m, other.m)
        return self.embed(M), other.embed(M), M

    def __add__(self, other):
        a, b, M = self._common(other)
        return CyclotomicNumber(M, [x + y for x, y in zip(a.coefficients, b.coefficients)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.m, [-c for c in self.coefficients])

    def __sub__(self, other):
        return self + (-other if isinstance(other, CyclotomicNumber) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b, M = self._common(other)
        da = _lcm(*(c.denominator for c in a.coefficients))
        db = _lcm(*(c.denominator for c in b.coefficients))
        la = [int(c * da) for c in a.coefficients]
        lb = [int(c * db) for c in b.coefficients]
        if max(map(abs, la)) * max(map(abs, lb)) * len(la) < 2 ** 62:
            prod = np.convolve(np.array(la, dtype=np.int64), np.array(lb, dtype=np.int64))
        else:
            prod = np.convolve(np.array(la, dtype=object), np.array(lb, dtype=object))
        red = _reduce(M, [int(x) for x in prod])
        return CyclotomicNumber(M, [Fraction(c, da * db) for c in red])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber(self.m, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "CyclotomicNumber":
        vec = [Fraction(0)] * (self.m + 1)
        for i, c in enumerate(self.coefficients):
            vec[(-i) % self.m] += c
        return CyclotomicNumber(self.m, vec)

    def galois(self, a: int) -> "CyclotomicNumber":
        """Apply zeta -> zeta^a (gcd(a, m) = 1)."""
        vec = [Fraction(0)] * self.m
        for i, c in enumerate(self.coefficients):
            vec[(a * i) % self.m] += c
        return CyclotomicNumber(self.m, vec)

    def norm(self) -> Fraction:
        result = CyclotomicNumber(self.m, [1])
        for a in range(1, self.m + 1):
            if math.gcd(a, self.m) == 1:
                result = result * self.galois(a)
        return result.coefficients[0]

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        others = CyclotomicNumber(self.m, [1])
        for a in range(2, self.m + 1):
            if math.gcd(a, self.m) == 1:
                others = others * self.galois(a)
        n = (others * self).coefficients[0]
        return CyclotomicNumber(self.m, [c / n for c in others.coefficients])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.m, [c / other for c in self.coefficients])
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def is_rational(self) -> bool:
        return not any(self.coefficients[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber(1, [other])
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(self.coefficients) if self.m == 1 else hash((self.m, self.coefficients))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.m}^{i}")
        return " + ".join(terms) or "0"

    def to_json(self) -> dict:
        return {"conductor": self.m, "coefficients": [str(c) for c in self.coefficients]}

    @classmethod
    def from_json(cls, data: dict) -> "CyclotomicNumber":
        return cls(data["conductor"], [Fraction(c) for c in data["coefficients"]])


# ---------------------------------------------------------------------------
# Characters modulo p^n


@lru_cache(maxsize=None)
def primitive_root(p: int, n: int = 2) -> int:
    """Smallest generator of (Z/p^n)^x for odd p (a root mod p^2 works for all n)."""
    mod = p ** max(n, 2)
    order = totient(mod)
    factors = [q for q in range(2, order + 1) if order % q == 0 and all(q % r for r in range(2, int(q ** 0.5) + 1))]
    for g in range(2, mod):
        if g % p and all(pow(g, order // q, mod) != 1 for q in factors):
            return g
    raise ValueError("no primitive root")


@lru_cache(maxsize=None)
def _dlog_table(p: int, n: int) -> dict[int, int]:
    mod = p ** n
    g = primitive_root(p, n)
    table, x = {}, 1
    for j in range(totient(mod)):
        table[x] = j
        x = x * g % mod
    return table


class PrimePowerCharacter:
    """Dirichlet character mod p^n fixed by theta(g) = zeta_{phi(p^n)}^t.

    ``g`` is the recorded generator :func:`primitive_root`; values are
    :class:`CyclotomicNumber` elements.
    """

    def __init__(self, p: int, n: int, t: int):
        if p % 2 == 0:
            raise ValueError("p must be odd")
        self.p, self.n = p, n
        self.modulus = p ** n
        self.group_order = totient(self.modulus) if n else 1
        self.t = t % self.group_order
        self.generator = primitive_root(p, n) if n else 1

    @property
    def order(self) -> int:
        return self.group_order // math.gcd(self.t, self.group_order)

    def exponent(self, a: int) -> int | None:
        """theta(a) = zeta_order^e; None when gcd(a, p) > 1."""
        if self.n == 0:
            return 0
        if a % self.p == 0:
            return None
        j = _dlog_table(self.p, self.n)[a % self.modulus]
        return (self.t * j) % self.group_order // (self.group_order // self.order)

    def __call__(self, a: int) -> CyclotomicNumber:
        e = self.exponent(a)
        if e is None:
            return CyclotomicNumber(1, [0])
        return CyclotomicNumber.zeta(self.order, e)

    def parity(self) -> int:
        e = self.exponent(-1)
        return 1 if e == 0 else -1

    def conjugate(self) -> "PrimePowerCharacter":
        return PrimePowerCharacter(self.p, self.n, -self.t)

    def is_primitive(self) -> bool:
        if self.n == 0:
            return True
        if self.n == 1:
            return self.t != 0
        return self.t % self.p != 0

    def conductor_exponent(self) -> int:
        """Smallest k such that theta factors through (Z/p^k)^x."""
        for k in range(self.n + 1):
            if (self.t * totient(self.p ** k)) % self.group_order == 0:
                return k
        return self.n

    def __repr__(self):
        return f"PrimePowerCharacter(p={self.p}, n={self.n}, t={self.t}, g={self.generator})"


def characters_mod(p: int, n: int, primitive_only: bool = True) -> list[PrimePowerCharacter]:
    chars = [PrimePowerCharacter(p, n, t) for t in range(totient(p ** n))]
    return [c for c in chars if c.is_primitive()] if primitive_only else chars


def gauss_sum(theta: PrimePowerCharacter) -> CyclotomicNumber:
    """tau(theta) = sum_{a mod p^n, p not | a} theta(a) zeta_{p^n}^a."""
    if theta.n == 0:
        return CyclotomicNumber(1, [1])
    if not theta.is_primitive():
        raise ValueError("Gauss sums are only taken for primitive characters")
    pn, order = theta.modulus, theta.order
    M = _lcm(pn, order)
    counts = [0] * M
    for a in range(1, pn):
        e = theta.exponent(a)
        if e is None:
            continue
        counts[(e * (M // order) + a * (M // pn)) % M] += 1
    return CyclotomicNumber.from_exponent_counts(M, counts)
