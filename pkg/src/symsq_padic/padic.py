"""Capped-precision p-adic numbers and totally ramified extensions Q_p(mu_{p^n}).

A :class:`PadicNumber` is ``p^valuation * unit`` known modulo ``p^precision``
(absolute precision).  Precision ``INF`` marks an exact value; exact values are
only produced from integers (or p-power denominators) and stay exact under
ring operations.  Every operation propagates a precision that is a lower bound
on agreement with infinite-precision arithmetic.

A :class:`RamifiedPadic` lives in Q_p(zeta_{p^n}) and is stored in the power
basis of ``pi = zeta - 1`` with integer coefficients over a common p-power
denominator, reduced modulo the Eisenstein polynomial ``Phi_{p^n}(1 + pi)``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

INF = math.inf

# relative digits used when two exact values are divided by a non-trivial unit
DEFAULT_PRECISION = 40


class PrecisionError(ArithmeticError):
    """Raised when an operation has no correct digits left."""


def valuation(n: int, p: int) -> float:
    """p-adic valuation of an integer, ``INF`` for 0."""
    if n == 0:
        return INF
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_valuation(x, p: int) -> float:
    x = Fraction(x)
    if x == 0:
        return INF
    return valuation(x.numerator, p) - valuation(x.denominator, p)


def _min(*xs):
    return min(xs)


class PadicNumber:
    """An element of Q_p with capped absolute precision."""

    __slots__ = ("p", "valuation", "unit", "precision")

    def __init__(self, p: int, valuation, unit: int, precision):
        self.p = p
        if precision != INF and valuation >= precision:
            # zero to the known precision
            self.valuation, self.unit, self.precision = precision, 0, precision
            return
        if unit == 0:
            if precision != INF:
                self.valuation, self.unit, self.precision = precision, 0, precision
            else:
                self.valuation, self.unit, self.precision = INF, 0, INF
            return
        # absorb stray p-factors of the unit
        while unit % p == 0:
            unit //= p
            valuation += 1
        if precision != INF:
            if valuation >= precision:
                self.valuation, self.unit, self.precision = precision, 0, precision
                return
            unit %= p ** int(precision - valuation)
        self.valuation = valuation
        self.unit = unit
        self.precision = precision

    # -- construction -----------------------------------------------------
    @classmethod
    def from_rational(cls, x, p: int, precision=INF) -> "PadicNumber":
        """Embed a rational.  Exactness is kept only for p-power denominators."""
        x = Fraction(x)
        if x == 0:
            return cls(p, INF, 0, precision)
        num, den = x.numerator, x.denominator
        v = 0
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        if den == 1 or den == -1:
            return cls(p, v, num * den, precision)
        if precision == INF:
            precision = v + DEFAULT_PRECISION
        rel = int(precision - v)
        if rel <= 0:
            return cls(p, precision, 0, precision)
        mod = p ** rel
        return cls(p, v, num * pow(den, -1, mod) % mod, precision)

    @classmethod
    def zero(cls, p: int, precision=INF) -> "PadicNumber":
        return cls(p, INF, 0, precision)

    # -- basic queries ----------------------------------------------------
    @property
    def relative_precision(self):
        if self.is_zero():
            return 0
        return self.precision - self.valuation

    def is_zero(self) -> bool:
        return self.unit == 0

    def is_exact(self) -> bool:
        return self.precision == INF

    def residue(self, k: int | None = None) -> int:
        """Representative in [0, p^k) of the value (requires valuation >= 0)."""
        if k is None:
            k = int(self.precision)
        if self.is_zero():
            return 0
        if self.valuation < 0:
            raise ValueError("element is not p-integral")
        return (self.unit * self.p ** int(self.valuation)) % self.p ** k

    def to_fraction(self) -> Fraction:
        """The stored representative as an exact rational."""
        if self.is_zero():
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** int(self.valuation)

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise ValueError("mismatched primes")
            return other
        if isinstance(other, (int, Fraction)):
            return PadicNumber.from_rational(other, self.p)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        prec = _min(self.precision, other.precision)
        if self.is_zero() and self.valuation == INF:
            return PadicNumber(p, other.valuation, other.unit, prec)
        if other.is_zero() and other.valuation == INF:
            return PadicNumber(p, self.valuation, self.unit, prec)
        v = _min(self.valuation, other.valuation)
        if v == INF:
            return PadicNumber(p, INF, 0, prec)
        a = self.unit * p ** int(self.valuation - v) if not self.is_zero() else 0
        b = other.unit * p ** int(other.valuation - v) if not other.is_zero() else 0
        return PadicNumber(p, v, a + b, prec)

    __radd__ = __add__

    def __neg__(self):
        return PadicNumber(self.p, self.valuation, -self.unit, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = _min(self.valuation + other.precision, other.valuation + self.precision)
        if self.is_zero() or other.is_zero():
            return PadicNumber(self.p, INF, 0, prec)
        return PadicNumber(self.p, self.valuation + other.valuation,
                           self.unit * other.unit, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by a p-adic zero")
        v = self.valuation - other.valuation
        rel = _min(self.relative_precision if not self.is_exact() else INF,
                   other.relative_precision if not other.is_exact() else INF)
        if self.is_zero():
            return PadicNumber(self.p, INF, 0, self.precision - other.valuation)
        if rel == INF:
            if other.unit in (1, -1):
                return PadicNumber(self.p, v, self.unit * other.unit, INF)
            rel = DEFAULT_PRECISION
        mod = self.p ** int(rel)
        unit = self.unit * pow(other.unit, -1, mod) % mod
        return PadicNumber(self.p, v, unit, v + rel)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return PadicNumber(self.p, 0, 1, INF) / (self ** (-n))
        result = PadicNumber(self.p, 0, 1, INF)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def add_bigoh(self, precision) -> "PadicNumber":
        """Forget digits beyond ``precision``."""
        return PadicNumber(self.p, self.valuation, self.unit, _min(self.precision, precision))

    def equals(self, other, precision=None) -> bool:
        """Agreement to the jointly known precision (or ``precision`` if lower)."""
        other = self._coerce(other)
        diff = self - other
        if precision is not None:
            diff = diff.add_bigoh(precision)
        return diff.is_zero()

    def __eq__(self, other):
        if not isinstance(other, (PadicNumber, int, Fraction)):
            return NotImplemented
        return self.equals(other)

    def __hash__(self):
        return hash((self.p, self.valuation, self.unit, self.precision))

    def __repr__(self):
        if self.is_zero():
            return f"O({self.p}^{self.precision})" if self.precision != INF else "0"
        body = f"{self.unit}" + (f"*{self.p}^{self.valuation}" if self.valuation else "")
        return body + (f" + O({self.p}^{self.precision})" if self.precision != INF else "")

    def to_json(self) -> dict:
        return {
            "valuation": None if self.valuation == INF else int(self.valuation),
            "unit": str(self.unit),
            "precision": None if self.precision == INF else int(self.precision),
        }

    @classmethod
    def from_json(cls, p: int, data: dict) -> "PadicNumber":
        v = INF if data["valuation"] is None else data["valuation"]
        prec = INF if data["precision"] is None else data["precision"]
        return cls(p, v, int(data["unit"]), prec)


def teichmuller(a: int, p: int, M: int) -> PadicNumber:
    """Teichmuller lift omega(a): the (p-1)-th root of unity congruent to a mod p."""
    if a % p == 0:
        raise ValueError(f"{a} is not a unit mod {p}")
    mod = p ** M
    x = a % mod
    # x -> x^p converges to omega(a), gaining one digit per step
    for _ in range(M + 1):
        nxt = pow(x, p, mod)
        if nxt == x:
            break
        x = nxt
    return PadicNumber(p, 0, x, M)


def _log_truncation(p: int, vt: int, target) -> int:
    """Largest index i whose term t^i/i can still have valuation below ``target``.

    Every term with index above the returned value satisfies
    ``i*vt - v_p(i) >= target``; since v_p(i) <= log_p(i) the check below is a
    search over a range that provably contains all offending indices.
    """
    last = 0
    i = 1
    # i*vt - log_p(i) is increasing once i >= 1/ln p, so stop after it clears
    while True:
        if i * vt - valuation(i, p) < target:
            last = i
        if i * vt - math.log(i, p) >= target and i > 2:
            break
        i += 1
    return last


def padic_log(x: PadicNumber) -> PadicNumber:
    """Iwasawa-free logarithm on 1 + pZ_p via the series of log(1 + t).

    Terms are summed through index T where T is the last index with
    ``T*v(t) - v_p(T) < precision``; the result precision is the minimum of the
    propagated arithmetic precision and the tail bound.
    """
    p = x.p
    one = PadicNumber(p, 0, 1, INF)
    t = x - one
    if x.is_zero() or t.valuation < 1:
        raise ValueError("padic_log requires x = 1 mod p")
    if t.is_zero():
        return PadicNumber.zero(p, t.precision)
    target = x.precision
    if target == INF:
        target = DEFAULT_PRECISION
    vt = int(t.valuation)
    T = _log_truncation(p, vt, target)
    total = PadicNumber.zero(p)
    power = one
    for i in range(1, T + 1):
        power = power * t
        term = power / i
        total = total + term if i % 2 else total - term
    # smallest valuation of any omitted term
    tail = min(i * vt - valuation(i, p) for i in range(T + 1, T + 2 * p + 2))
    return total.add_bigoh(_min(target, tail))


def log_gamma_coordinate(a: int, p: int, M: int, u: PadicNumber | None = None) -> PadicNumber:
    """Coordinate l(a) in Z_p with <a> = u^{l(a)}, u the image of the generator."""
    if u is None:
        u = PadicNumber(p, 0, 1 + p, INF)
    w = teichmuller(a, p, M + 2)
    wild = PadicNumber.from_rational(a, p, M + 2) / w
    lu = padic_log(u.add_bigoh(M + 2))
    return padic_log(wild) / lu


# ---------------------------------------------------------------------------
# Totally ramified extensions


@lru_cache(maxsize=None)
def eisenstein_poly(p: int, n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of Phi_{p^n}(1 + x), monic of degree p^{n-1}(p-1)."""
    step = p ** (n - 1)
    deg = step * (p - 1)
    coeffs = [0] * (deg + 1)
    for i in range(p):
        e = i * step
        for j in range(e + 1):
            coeffs[j] += math.comb(e, j)
    return tuple(coeffs)


class RamifiedPadic:
    """Element of Q_p(zeta_{p^n}) in the basis pi^i, pi = zeta_{p^n} - 1.

    ``coeffs[i] / p^scale`` is the coordinate on pi^i; all coordinates are known
    modulo ``p^precision`` (``INF`` for exact values).
    """

    __slots__ = ("p", "level", "coeffs", "scale", "precision")

    def __init__(self, p: int, level: int, coeffs, scale: int = 0, precision=INF):
        self.p = p
        self.level = level
        d = self.degree
        coeffs = list(coeffs)
        if len(coeffs) > d:
            coeffs = _reduce_eisenstein(coeffs, p, level)
        coeffs += [0] * (d - len(coeffs))
        if precision != INF:
            mod = p ** int(precision + scale)
            coeffs = [c % mod for c in coeffs] if precision + scale > 0 else [0] * d
        # normalise the shared denominator
        while scale > 0 and all(c % p == 0 for c in coeffs):
            coeffs = [c // p for c in coeffs]
            scale -= 1
        if scale < 0:
            coeffs = [c * p ** (-scale) for c in coeffs]
            scale = 0
        self.coeffs = tuple(coeffs)
        self.scale = scale
        self.precision = precision

    @property
    def degree(self) -> int:
        return self.p ** (self.level - 1) * (self.p - 1) if self.level >= 1 else 1

    @classmethod
    def from_padic(cls, x: PadicNumber, level: int) -> "RamifiedPadic":
        p = x.p
        if x.is_zero():
            return cls(p, level, [0], 0, x.precision)
        v = int(x.valuation)
        if v >= 0:
            return cls(p, level, [x.unit * p ** v], 0, x.precision)
        return cls(p, level, [x.unit], -v, x.precision)

    @classmethod
    def pi(cls, p: int, level: int) -> "RamifiedPadic":
        return cls(p, level, [0, 1])

    @classmethod
    def zeta(cls, p: int, level: int) -> "RamifiedPadic":
        return cls(p, level, [1, 1] if level >= 1 else [1])

    def _coerce(self, other):
        if isinstance(other, RamifiedPadic):
            if (other.p, other.level) != (self.p, self.level):
                raise ValueError("elements live in different fields")
            return other
        if isinstance(other, PadicNumber):
            return RamifiedPadic.from_padic(other, self.level)
        if isinstance(other, (int, Fraction)):
            return RamifiedPadic.from_padic(PadicNumber.from_rational(other, self.p), self.level)
        return NotImplemented

    def _aligned(self, other):
        s = max(self.scale, other.scale)
        a = [c * self.p ** (s - self.scale) for c in self.coeffs]
        b = [c * self.p ** (s - other.scale) for c in other.coeffs]
        return a, b, s

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, s = self._aligned(other)
        return RamifiedPadic(self.p, self.level, [x + y for x, y in zip(a, b)], s,
                             _min(self.precision, other.precision))

    __radd__ = __add__

    def __neg__(self):
        return RamifiedPadic(self.p, self.level, [-c for c in self.coeffs], self.scale, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p, d = self.p, self.degree
        prec = _min(self.valuation() + other.precision, other.valuation() + self.precision)
        if prec != INF:
            prec = math.floor(prec)
        a, b = self.coeffs, other.coeffs
        if _is_scalar(b):
            prod = [c * b[0] for c in a]
        elif _is_scalar(a):
            prod = [c * a[0] for c in b]
        else:
            prod = [0] * (2 * d - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            prod[i + j] += x * y
        return RamifiedPadic(p, self.level, prod, self.scale + other.scale, prec)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = RamifiedPadic(self.p, self.level, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def valuation(self):
        """Normalised valuation (v(p) = 1); ``precision`` if zero to precision."""
        d = self.degree
        best = INF
        for i, c in enumerate(self.coeffs):
            if c:
                best = min(best, valuation(c, self.p) - self.scale + Fraction(i, d))
        return _min(best, self.precision)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_exact(self) -> bool:
        return self.precision == INF

    def coefficients(self) -> list[PadicNumber]:
        return [PadicNumber.from_rational(Fraction(c, self.p ** self.scale), self.p).add_bigoh(self.precision)
                for c in self.coeffs]

    def add_bigoh(self, precision):
        return RamifiedPadic(self.p, self.level, self.coeffs, self.scale, _min(self.precision, precision))

    def __repr__(self):
        terms = [f"{c}*pi^{i}" for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) or "0"
        if self.scale:
            body = f"({body})/{self.p}^{self.scale}"
        return body + (f" + O({self.p}^{self.precision})" if self.precision != INF else "")


def _is_scalar(c) -> bool:
    return all(x == 0 for x in c[1:])


def _reduce_eisenstein(coeffs: list[int], p: int, level: int) -> list[int]:
    E = eisenstein_poly(p, level)
    d = len(E) - 1
    c = list(coeffs)
    for top in range(len(c) - 1, d - 1, -1):
        lead = c[top]
        if lead:
            base = top - d
            for j in range(d):
                if E[j]:
                    c[base + j] -= lead * E[j]
            c[top] = 0
    return c[:d]


def cyclotomic_poly_eval(m: int, x):
    """Phi_{p^m}(x) = sum_{i<p} x^{i p^{m-1}} for a PadicNumber or RamifiedPadic."""
    if m < 1:
        raise ValueError("m must be >= 1")
    p = x.p
    step = p ** (m - 1)
    y = x ** step
    total = y * 0 + 1
    power = y * 0 + 1
    for _ in range(1, p):
        power = power * y
        total = total + power
    return total
