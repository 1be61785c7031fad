"""Plus and minus half-logarithms and the splitting of a symmetric pair.

For weight k the half-logarithms are the products over r = 0..2k-3 of
Phi_{p^m}(u^{-r} (1 + X)) / p, with m running over the even exponents (plus)
or the odd ones (minus).  Factors congruent to 1 modulo (p^W, X^D) are dropped,
W being the working precision; the same series sits in every Delta-component.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .padic import INF, PadicNumber, RamifiedPadic
from .series import (CharacterPoint, IwasawaSeries, _Component, divide_exact,
                     evaluate, growth_check)

SIGNS = ("+", "-")


def _parity_exponents(sign: str):
    """m = 2, 4, 6, ... for '+', m = 1, 3, 5, ... for '-'."""
    if sign not in SIGNS:
        raise ValueError("sign must be '+' or '-'")
    m = 2 if sign == "+" else 1
    while True:
        yield m
        m += 2


def _factor_component(p: int, m: int, c: int, W: int, D: int) -> _Component:
    """Phi_{p^m}(c (1 + X)) / p modulo (p^W, X^D) for an integer c = 1 mod p."""
    N = p ** (m - 1)
    mod = p ** (W + 1)
    nums = [0] * D
    for i in range(p):
        n = i * N
        ci = pow(c, n, mod)
        b = 1
        for j in range(min(D, n + 1)):
            nums[j] += ci * b
            b = b * (n - j) // (j + 1)
    return _Component(p, [x % mod for x in nums], 1, np.full(D, float(W)))


def _is_one(comp: _Component, p: int, W: int) -> bool:
    unit = p ** comp.scale
    mod = p ** (W + comp.scale)
    if (comp.nums[0] - unit) % mod:
        return False
    return all(x % mod == 0 for x in comp.nums[1:])


def _twist_constant(u: PadicNumber, r: int, W: int) -> int:
    """u^{-r} as an integer modulo p^(W+1)."""
    p = u.p
    mod = p ** (W + 1)
    return pow(u.residue(W + 1), -r, mod) if r else 1


def _build_component(k: int, sign: str, p: int, W: int, D: int, u: PadicNumber,
                     n_max=None):
    """Product of the factors at working precision W; returns (component, n_max)."""
    total = _Component(p, [1] + [0] * (D - 1), 0, np.full(D, INF))
    used = 0
    for idx, m in enumerate(_parity_exponents(sign), start=1):
        if n_max is not None and idx > n_max:
            break
        factors = [_factor_component(p, m, _twist_constant(u, r, W), W, D)
                   for r in range(2 * k - 2)]
        if n_max is None and all(_is_one(f, p, W) for f in factors):
            break
        for f in factors:
            total = total.mul(f)
        used = idx
    return total, used


def build_log(k: int, sign: str, p: int, precision=(20, 128), u=None, n_max=None,
              guard: int | None = None) -> IwasawaSeries:
    """Truncated log^+ or log^- in H_{k-1}, every coefficient known mod p^M."""
    return _build(k, sign, p, precision, u, n_max, guard)[0]


def _build(k, sign, p, precision, u, n_max, guard):
    if k < 2:
        raise ValueError("weight must be at least 2")
    if p == 2:
        raise ValueError("p must be odd")
    M, D = precision
    u = PadicNumber.from_rational(1 + p, p) if u is None else u
    g = guard if guard is not None else 2 * (k - 1) * (int(math.log(max(D, 2), p)) + 2)
    while True:
        comp, used = _build_component(k, sign, p, M + g, D, u, n_max)
        if float(comp.prec.min()) >= M or guard is not None:
            break
        g += int(M - float(comp.prec.min())) + 2
    comp = comp.truncate(D, M)
    series = IwasawaSeries(p, {j: comp for j in range(p - 1)}, (M, D),
                           growth_class=k - 1, u=u)
    return series, used


@dataclass
class LogPair:
    """log^+ and log^- for weight k with the number of factor layers kept."""

    k: int
    p: int
    log_plus: IwasawaSeries
    log_minus: IwasawaSeries
    n_max: dict = field(default_factory=dict)

    @classmethod
    def build(cls, k: int, p: int, precision=(20, 128), u=None):
        plus, n_plus = _build(k, "+", p, precision, u, None, None)
        minus, n_minus = _build(k, "-", p, precision, u, None, None)
        return cls(k, p, plus, minus, {"+": n_plus, "-": n_minus})

    def series(self, sign: str) -> IwasawaSeries:
        return self.log_plus if sign == "+" else self.log_minus

    def factor_exponents(self, sign: str) -> list[int]:
        """The p-power exponents m of the cyclotomic factors included."""
        gen = _parity_exponents(sign)
        return [next(gen) for _ in range(self.n_max[sign])]


# -- exact evaluation of the factored form ----------------------------------
def _factor_numerator(p: int, m: int, level: int, root: int, e: int, u_int: int):
    """Phi_{p^m}(zeta^root u^e) times the unit u^{-e (p-1) p^{m-1}} when e < 0.

    Exact in Q_p(zeta_{p^level}); vanishing is unaffected by the unit.
    """
    N = p ** (m - 1)
    zeta = RamifiedPadic.zeta(p, level) ** (root % p ** level) if level else \
        RamifiedPadic(p, 0, [1])
    zN = zeta ** N
    total = RamifiedPadic(p, level, [0])
    power = RamifiedPadic(p, level, [1])
    for i in range(p):
        scal = u_int ** (e * i * N) if e >= 0 else u_int ** (-e * (p - 1 - i) * N)
        total = total + power * scal
        power = power * zN
    return total


def factored_value(k: int, sign: str, pt: CharacterPoint, p: int, u: int | None = None,
                   layers: int | None = None):
    """Exact value at pt of the product of the first ``layers`` factor layers
    (all layers m <= wild_level + 1 by default), each factor up to a unit."""
    u_int = 1 + p if u is None else u
    level = pt.wild_level
    if layers is None:
        layers = max(1, (level + 2) // 2 + 1)
    value = RamifiedPadic(p, level, [1])
    gen = _parity_exponents(sign)
    for _ in range(layers):
        m = next(gen)
        for r in range(2 * k - 2):
            value = value * _factor_numerator(p, m, level, pt.root, pt.s - r, u_int)
    return value


def zero_pattern(k: int, sign: str, pt: CharacterPoint, p: int, u: int | None = None) -> bool:
    """True iff some cyclotomic factor of log^sign vanishes at pt.

    Factors with m > wild_level are evaluated at a point whose p^(m-1)-th power
    is u^(p^(m-1) (s-r)), so they equal Phi_{p^m}(u^t)/p for an integer t and
    are p-adic units; only m <= wild_level can vanish, and those are tested
    exactly.
    """
    if not 0 <= pt.s <= 2 * k - 3:
        raise ValueError(f"s = {pt.s} outside [0, {2 * k - 3}]")
    layers = (pt.wild_level + (2 if sign == "+" else 1)) // 2
    if layers == 0:
        return False
    value = factored_value(k, sign, pt, p, u, layers)
    return value.is_zero() and value.is_exact()


def log_value(pair: LogPair, sign: str, pt: CharacterPoint, min_precision: int = 1):
    """Evaluate the truncated series log^sign at pt."""
    return evaluate(pair.series(sign), pt, min_precision)


# -- plus/minus splitting ----------------------------------------------------
def _half(F: IwasawaSeries) -> IwasawaSeries:
    prec = F.min_precision()
    work = 40 if prec == INF else int(prec) + 5
    return F * PadicNumber.from_rational(Fraction(1, 2), F.p, work)


def split_pm(L_plus_alpha: IwasawaSeries, L_minus_alpha: IwasawaSeries, k: int,
             logs: LogPair | None = None):
    """(L_{+a} + L_{-a}) / 2 log^+ and (L_{+a} - L_{-a}) / 2 log^-.

    ``logs`` should be built with more digits than the inputs carry when the
    quotients are wanted at full precision: dividing by log^- costs about
    D/(p-1) digits at the top degree.
    """
    if logs is None:
        logs = LogPair.build(k, L_plus_alpha.p, L_plus_alpha.precision, L_plus_alpha.u)
    if logs.k != k:
        raise ValueError("log pair built for a different weight")
    total = _half(L_plus_alpha + L_minus_alpha)
    diff = _half(L_plus_alpha - L_minus_alpha)
    plus, d_plus = divide_exact(total, logs.log_plus)
    minus, d_minus = divide_exact(diff, logs.log_minus)
    return plus, minus, {"+": d_plus, "-": d_minus}


def symmetry_sign(pt: CharacterPoint) -> int:
    """(-1)^n for a character of conductor p^n, n = wild_level + 1."""
    return (-1) ** (pt.wild_level + 1)


def log_growth_report(pair: LogPair) -> dict:
    return {s: growth_check(pair.series(s), pair.k - 1) for s in SIGNS}


def synthetic_pair(A: IwasawaSeries, B: IwasawaSeries, logs: LogPair):
    """(A log^+ + B log^-, A log^+ - B log^-): a pair whose split is (A, B)."""
    a = A * logs.log_plus
    b = B * logs.log_minus
    return a + b, a - b


def guard_precision(M: int, D: int, p: int) -> int:
    """Log precision that leaves M digits after dividing by log^- at degree D."""
    return M + -(-D // (p - 1)) + 20
