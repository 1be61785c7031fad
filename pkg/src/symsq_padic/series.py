"""Truncated power series over Z_p[Delta][[X]] with honest precision tracking.

An :class:`IwasawaSeries` holds one truncated series in ``X = gamma - 1`` for
every power ``omega^j`` of the Teichmueller character, ``j = 0..p-2``.  Each
component stores integer numerators over a shared ``p^scale`` and a per-degree
absolute precision, so products and quotients can report exactly which digits
are still known.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .padic import (DEFAULT_PRECISION, INF, PadicNumber, PrecisionError,
                    RamifiedPadic, valuation)

# largest residue degree phi(p^n) accepted by evaluate()
MAX_EVALUATION_DEGREE = 600


class IncompatibleSeriesError(ValueError):
    """Raised when two series live over different p or different gamma."""


class InsufficientDegreeError(PrecisionError):
    """The truncation in X is too short to give any digit of a value."""

    def __init__(self, message: str, required_degree: int):
        super().__init__(message)
        self.required_degree = required_degree


@dataclass(frozen=True)
class CharacterPoint:
    """The character chi^s * omega^a * theta with theta(gamma) = zeta^root.

    ``wild_level`` n means theta sends gamma to a primitive p^n-th root of unity
    (n = 0 is the trivial wild part); ``root`` is an exponent prime to p
    choosing among those roots.
    """

    s: int
    a: int = 0
    wild_level: int = 0
    root: int = 1


class _Component:
    """nums[i] / p^scale is the X^i coefficient, known modulo p^prec[i]."""

    __slots__ = ("p", "nums", "scale", "prec", "_vals")

    def __init__(self, p: int, nums, scale: int, prec):
        self.p = p
        prec = np.asarray(prec, dtype=float)
        nums = [int(c) for c in nums]
        for i, pr in enumerate(prec):
            if pr != INF:
                e = int(pr) + scale
                nums[i] = nums[i] % p ** e if e > 0 else 0
        while scale > 0 and all(c % p == 0 for c in nums):
            nums = [c // p for c in nums]
            scale -= 1
        if scale < 0:
            nums = [c * p ** (-scale) for c in nums]
            scale = 0
        self.nums = nums
        self.scale = scale
        self.prec = prec
        self._vals = None

    @classmethod
    def zero(cls, p: int, D: int, precision=INF):
        return cls(p, [0] * D, 0, np.full(D, precision, dtype=float))

    @classmethod
    def from_padics(cls, p: int, coeffs):
        scale = max([0] + [-int(c.valuation) for c in coeffs
                           if not c.is_zero() and c.valuation < 0])
        nums = []
        for c in coeffs:
            nums.append(0 if c.is_zero() else c.unit * p ** (int(c.valuation) + scale))
        return cls(p, nums, scale, [c.precision for c in coeffs])

    def __len__(self):
        return len(self.nums)

    def vals(self) -> np.ndarray:
        """Lower bounds min(v(c_i), prec_i) as floats."""
        if self._vals is None:
            out = np.empty(len(self.nums))
            for i, c in enumerate(self.nums):
                out[i] = min(valuation(c, self.p) - self.scale, self.prec[i]) if c else self.prec[i]
            self._vals = out
        return self._vals

    def coefficient(self, i: int) -> PadicNumber:
        p = self.p
        c = self.nums[i]
        pr = self.prec[i]
        pr = INF if pr == INF else int(math.floor(pr))
        if c == 0:
            return PadicNumber(p, INF, 0, pr)
        return PadicNumber(p, -self.scale, c, pr)

    def padics(self) -> list[PadicNumber]:
        return [self.coefficient(i) for i in range(len(self.nums))]

    def truncate(self, D: int, M=INF):
        return _Component(self.p, self.nums[:D], self.scale, np.minimum(self.prec[:D], M))

    def aligned(self, other):
        s = max(self.scale, other.scale)
        a = [c * self.p ** (s - self.scale) for c in self.nums]
        b = [c * self.p ** (s - other.scale) for c in other.nums]
        return a, b, s

    def add(self, other, sign=1):
        a, b, s = self.aligned(other)
        return _Component(self.p, [x + sign * y for x, y in zip(a, b)], s,
                          np.minimum(self.prec, other.prec))

    def scalar_mul(self, c: PadicNumber):
        """Multiply every coefficient by a p-adic scalar."""
        p = self.p
        if c.is_zero():
            vals = self.vals()
            return _Component(p, [0] * len(self), 0, vals + c.precision)
        v = int(c.valuation)
        prec = np.minimum(self.prec + v, self.vals() + c.precision)
        nums = [x * c.unit for x in self.nums]
        if v >= 0:
            return _Component(p, [x * p ** v for x in nums], self.scale, prec)
        return _Component(p, nums, self.scale - v, prec)

    def mul(self, other):
        D = len(self)
        na = np.array(self.nums, dtype=object)
        nb = np.array(other.nums, dtype=object)
        nums = np.convolve(na, nb)[:D]
        va, vb = self.vals(), other.vals()
        pa, pb = self.prec, other.prec
        prec = np.empty(D)
        for n in range(D):
            x = va[:n + 1] + pb[n::-1]
            y = pa[:n + 1] + vb[n::-1]
            prec[n] = min(x.min(), y.min())
        return _Component(self.p, list(nums), self.scale + other.scale, prec)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def degree(self) -> int:
        """Index of the last nonzero numerator (-1 for zero)."""
        for i in range(len(self.nums) - 1, -1, -1):
            if self.nums[i]:
                return i
        return -1


def _as_padic(x, p: int) -> PadicNumber:
    if isinstance(x, PadicNumber):
        return x
    return PadicNumber.from_rational(Fraction(x), p)


class IwasawaSeries:
    """Element of H_r(G_infty) truncated to ``D`` coefficients per component.

    ``precision = (M, D)`` records the nominal coefficient precision and the
    X-degree cap; individual coefficients carry their own (possibly lower)
    precision.  ``growth_class`` is a non-negative rational or ``None`` for
    unknown growth.  ``tail_free`` marks genuine polynomials, whose dropped
    coefficients are exactly zero.
    """

    def __init__(self, p: int, components, precision, growth_class=0, u=None,
                 tail_free: bool = False):
        self.p = p
        self.u = _as_padic(1 + p if u is None else u, p)
        M, D = precision
        self.precision = (M, D)
        comps = {}
        for j in range(p - 1):
            c = components.get(j) if isinstance(components, dict) else components[j]
            if c is None:
                c = _Component.zero(p, D)
            elif not isinstance(c, _Component):
                c = _Component.from_padics(p, [_as_padic(x, p) for x in c])
            if len(c) != D:
                raise ValueError(f"component {j} has {len(c)} coefficients, expected {D}")
            comps[j] = c
        self._components = comps
        self.growth_class = None if growth_class is None else Fraction(growth_class)
        self.tail_free = tail_free

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_polynomial(cls, p: int, coeffs, precision, components=None, u=None):
        """The same polynomial placed in the listed components (all by default)."""
        M, D = precision
        coeffs = [_as_padic(c, p) for c in coeffs]
        if len(coeffs) > D:
            raise ValueError("polynomial degree exceeds the X-degree cap")
        coeffs = coeffs + [PadicNumber.zero(p)] * (D - len(coeffs))
        comp = _Component.from_padics(p, coeffs)
        idx = range(p - 1) if components is None else [j % (p - 1) for j in components]
        r = 0 if all(c.is_zero() or c.valuation >= 0 for c in coeffs) else None
        return cls(p, {j: comp for j in idx}, precision, r if r is not None else 0, u,
                   tail_free=True)

    @classmethod
    def one(cls, p: int, precision, u=None):
        return cls.from_polynomial(p, [1], precision, u=u)

    @classmethod
    def zero(cls, p: int, precision, u=None):
        return cls.from_polynomial(p, [], precision, u=u)

    @classmethod
    def X(cls, p: int, precision, u=None):
        return cls.from_polynomial(p, [0, 1], precision, u=u)

    # -- access -----------------------------------------------------------
    @property
    def M(self):
        return self.precision[0]

    @property
    def D(self):
        return self.precision[1]

    def component(self, j: int) -> list[PadicNumber]:
        return self._components[j % (self.p - 1)].padics()

    def coefficient(self, j: int, i: int) -> PadicNumber:
        return self._components[j % (self.p - 1)].coefficient(i)

    @property
    def components(self) -> dict[int, list[PadicNumber]]:
        return {j: self.component(j) for j in range(self.p - 1)}

    def _like(self, comps, precision=None, growth_class="same", tail_free=None):
        return IwasawaSeries(self.p, comps, precision or self.precision,
                             self.growth_class if growth_class == "same" else growth_class,
                             self.u, self.tail_free if tail_free is None else tail_free)

    def _check(self, other):
        if not isinstance(other, IwasawaSeries):
            raise TypeError("expected an IwasawaSeries")
        if other.p != self.p:
            raise IncompatibleSeriesError("series over different primes")
        if not self.u.equals(other.u):
            raise IncompatibleSeriesError("series use different generators gamma")

    def _joint_precision(self, other):
        return (min(self.M, other.M), min(self.D, other.D))

    # -- ring structure ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, IwasawaSeries):
            other = IwasawaSeries.from_polynomial(self.p, [other], self.precision, u=self.u)
        self._check(other)
        M, D = self._joint_precision(other)
        comps = {j: self._components[j].truncate(D).add(other._components[j].truncate(D))
                 for j in range(self.p - 1)}
        return self._like(comps, (M, D), _max_growth(self.growth_class, other.growth_class),
                          self.tail_free and other.tail_free)

    __radd__ = __add__

    def __neg__(self):
        comps = {j: _Component(self.p, [-c for c in comp.nums], comp.scale, comp.prec)
                 for j, comp in self._components.items()}
        return self._like(comps)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, IwasawaSeries):
            return series_mul(self, other)
        c = _as_padic(other, self.p)
        comps = {j: comp.scalar_mul(c) for j, comp in self._components.items()}
        return self._like(comps)

    __rmul__ = __mul__

    # -- utilities --------------------------------------------------------
    def truncate(self, M=None, D=None) -> "IwasawaSeries":
        """Forget digits beyond p^M and coefficients of degree >= D."""
        M = self.M if M is None else M
        D = self.D if D is None else D
        if D > self.D:
            raise ValueError("cannot extend the X-degree cap")
        tail_free = self.tail_free and all(c.degree() < D for c in self._components.values())
        comps = {j: c.truncate(D, M) for j, c in self._components.items()}
        return self._like(comps, (min(M, self.M), D), tail_free=tail_free)

    def equals(self, other, precision=None) -> bool:
        """Agreement of every jointly known digit (optionally capped at ``precision``)."""
        diff = self - other
        for comp in diff._components.values():
            for i, c in enumerate(comp.nums):
                if not c:
                    continue
                v = valuation(c, self.p) - comp.scale
                if precision is None or v < precision:
                    return False
        return True

    def min_precision(self):
        """Smallest absolute precision over all stored coefficients."""
        return min(float(c.prec.min()) for c in self._components.values())

    def valuations(self, j: int) -> np.ndarray:
        return self._components[j % (self.p - 1)].vals().copy()

    def precisions(self, j: int) -> np.ndarray:
        return self._components[j % (self.p - 1)].prec.copy()

    def __repr__(self):
        nz = [j for j, c in self._components.items() if not c.is_zero()]
        return (f"IwasawaSeries(p={self.p}, precision={self.precision}, "
                f"growth_class={self.growth_class}, nonzero_components={nz})")

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        M, D = self.precision
        return {
            "p": self.p,
            "u": self.u.to_json(),
            "precision": [None if M == INF else int(M), D],
            "components": {str(j): [c.to_json() for c in self.component(j)]
                           for j in range(self.p - 1)},
            "growth_class": "inf" if self.growth_class is None else str(self.growth_class),
            "tail_free": self.tail_free,
        }

    @classmethod
    def from_json(cls, data: dict) -> "IwasawaSeries":
        p = data["p"]
        M, D = data["precision"]
        comps = {int(j): [PadicNumber.from_json(p, c) for c in coeffs]
                 for j, coeffs in data["components"].items()}
        r = data["growth_class"]
        return cls(p, comps, (INF if M is None else M, D),
                   None if r == "inf" else Fraction(r),
                   PadicNumber.from_json(p, data["u"]), data.get("tail_free", False))


def _max_growth(a, b):
    if a is None or b is None:
        return None
    return max(a, b)


def series_mul(F: IwasawaSeries, G: IwasawaSeries) -> IwasawaSeries:
    """Componentwise Cauchy product truncated to the common X-degree cap."""
    F._check(G)
    M, D = F._joint_precision(G)
    comps = {j: F._components[j].truncate(D).mul(G._components[j].truncate(D))
             for j in range(F.p - 1)}
    r = None if F.growth_class is None or G.growth_class is None \
        else F.growth_class + G.growth_class
    tail_free = F.tail_free and G.tail_free and all(
        F._components[j].degree() + G._components[j].degree() < D for j in range(F.p - 1))
    return F._like(comps, (M, D), r, tail_free)


# -- growth -----------------------------------------------------------------
def _log_p(j: int, p: int) -> float:
    return math.log(j) / math.log(p)


def growth_check(F: IwasawaSeries, r, slack: float = 0.0) -> dict:
    """Fit the smallest C with v(c_j) >= -r log_p(j) - C for stored j >= 1.

    The fit is done separately on degrees below and above D/2; ``ok`` means the
    upper half needs no larger constant than the lower half (up to ``slack``),
    i.e. the coefficients grow no faster than the claimed rate.  Coefficients
    that are zero to their precision are skipped.
    """
    r = float(Fraction(r))
    p, D = F.p, F.D
    eps = 1e-9
    logs = np.array([_log_p(j, p) for j in range(1, D)])
    half = max(1, D // 2)
    lower, upper = -INF, -INF
    for comp in F._components.values():
        excess = -comp.vals()[1:] - r * logs
        # a coefficient that is zero to its precision says nothing about growth
        excess[np.array([c == 0 for c in comp.nums[1:]], dtype=bool)] = -INF
        lower = max(lower, float(excess[:half - 1].max(initial=-INF)))
        upper = max(upper, float(excess[half - 1:].max(initial=-INF)))
    C = max(lower, upper)
    ok = upper <= lower + slack + eps if math.isfinite(upper) else True
    return {"ok": bool(ok), "r": str(Fraction(r).limit_denominator(1000)),
            "fitted_constant": None if not math.isfinite(C) else round(C, 9),
            "lower_constant": None if not math.isfinite(lower) else round(lower, 9),
            "upper_constant": None if not math.isfinite(upper) else round(upper, 9)}


def _tail_constant(F: IwasawaSeries) -> tuple[float, float]:
    """(r, C) bounding the dropped coefficients, C never below 0."""
    if F.growth_class is None:
        raise PrecisionError("growth class unknown: the truncation tail cannot be bounded")
    r = float(F.growth_class)
    C = growth_check(F, r)["fitted_constant"]
    return r, max(0.0, C or 0.0)


def _tail_bound(r: float, C: float, vx: float, D: int, p: int, k: int = 0) -> float:
    """min over j >= D of (j - k) vx - r log_p j - C."""
    cands = [D]
    if r > 0 and vx > 0:
        jstar = r / (vx * math.log(p))
        if jstar > D:
            cands += [math.floor(jstar), math.ceil(jstar)]
    return min((j - k) * vx - r * _log_p(j, p) - C for j in cands)


# -- twisting ---------------------------------------------------------------
def _twist_matrix(b: int, c: int, D: int):
    """T[i][k] = binom(i, k) b^(i-k) c^k, the X^k coefficient of (b + cX)^i."""
    T = np.zeros((D, D), dtype=object)
    bp = [1] * D
    for e in range(1, D):
        bp[e] = bp[e - 1] * b
    cp = [1] * D
    for e in range(1, D):
        cp[e] = cp[e - 1] * c
    for i in range(D):
        for k in range(i + 1):
            T[i, k] = math.comb(i, k) * bp[i - k] * cp[k]
    return T


def twist(F: IwasawaSeries, n: int) -> IwasawaSeries:
    """Tw_n: gamma -> u^n gamma on Gamma; component j of the result is
    component j + n of F composed with X -> u^n (1 + X) - 1."""
    if n == 0:
        return F
    p, D = F.p, F.D
    c_pad = F.u ** n
    comps_in = [F._components[j] for j in range(p - 1)]
    finite = [float(x.prec[np.isfinite(x.prec)].max()) for x in comps_in
              if np.isfinite(x.prec).any()]
    low = min([float(x.vals()[np.isfinite(x.vals())].min()) for x in comps_in
               if np.isfinite(x.vals()).any()] or [0.0])
    if c_pad.is_exact():
        c_int, c_prec = int(c_pad.to_fraction()), INF
    else:
        work = int(max([DEFAULT_PRECISION] + [f - low + 2 for f in finite]))
        c_pad = PadicNumber.from_rational(1, p, work) / (F.u ** (-n)) if n < 0 \
            else c_pad.add_bigoh(work)
        c_int, c_prec = c_pad.residue(int(c_pad.precision)), c_pad.precision
    b = c_int - 1
    vb = valuation(b, p) if c_prec == INF else min(valuation(b, p), c_prec)
    T = _twist_matrix(b, c_int, D)
    if not F.tail_free:
        r, C = _tail_constant(F)
    out = {}
    for j in range(p - 1):
        src = F._components[(j + n) % (p - 1)]
        nums = list(np.dot(np.array(src.nums, dtype=object), T)) if D else []
        vals, prec = src.vals(), src.prec
        new_prec = np.empty(D)
        shift = np.arange(D, dtype=float)
        low_v = float(vals.min()) if D else 0.0
        for k in range(D):
            pk = float((prec[k:] + (shift[k:] - k) * vb).min())
            if c_prec != INF:
                pk = min(pk, low_v + c_prec)
            if not F.tail_free:
                pk = min(pk, _tail_bound(r, C, vb, D, p, k))
            new_prec[k] = pk
        out[j] = _Component(p, nums, src.scale, new_prec)
    return F._like(out)


def isotypic_project(F: IwasawaSeries, a: int) -> IwasawaSeries:
    """Keep only the omega^a component."""
    a %= F.p - 1
    comps = {j: (F._components[j] if j == a else _Component.zero(F.p, F.D))
             for j in range(F.p - 1)}
    return F._like(comps)


# -- evaluation -------------------------------------------------------------
def _evaluation_argument(F: IwasawaSeries, pt: CharacterPoint):
    """u^s zeta - 1 and its valuation."""
    p = F.p
    us = F.u ** pt.s
    if pt.wild_level == 0:
        x = us - 1
        return x, (x.valuation if not x.is_zero() else x.precision)
    if pt.root % p == 0:
        raise ValueError("wild root exponent must be prime to p")
    deg = (p - 1) * p ** (pt.wild_level - 1)
    if deg > MAX_EVALUATION_DEGREE:
        raise ValueError(f"wild level {pt.wild_level} exceeds the evaluation budget")
    zeta = RamifiedPadic.zeta(p, pt.wild_level) ** (pt.root % p ** pt.wild_level)
    x = zeta * us - 1
    return x, Fraction(1, deg)


def evaluate(F: IwasawaSeries, pt: CharacterPoint, min_precision: int = 1):
    """Value of F at chi^s omega^a theta: component a + s at X = u^s zeta - 1."""
    p, D = F.p, F.D
    comp = F._components[(pt.a + pt.s) % (p - 1)]
    x, vx = _evaluation_argument(F, pt)
    coeffs = comp.padics()
    if pt.wild_level == 0:
        acc = PadicNumber.zero(p)
        for c in reversed(coeffs):
            acc = acc * x + c
    else:
        acc = RamifiedPadic(p, pt.wild_level, [0])
        for c in reversed(coeffs):
            acc = acc * x + RamifiedPadic.from_padic(c, pt.wild_level)
    if F.tail_free or (pt.wild_level == 0 and x.is_zero() and x.is_exact()):
        return acc
    r, C = _tail_constant(F)
    vx = float(vx)
    tail = _tail_bound(r, C, vx, D, p)
    if tail < min_precision:
        target = max(min_precision, F.M if F.M != INF else min_precision)
        need = D
        while _tail_bound(r, C, vx, need, p) < target:
            need = max(need + 1, int(need * 1.25))
        lo = D
        while lo < need:
            mid = (lo + need) // 2
            if _tail_bound(r, C, vx, mid, p) >= target:
                need = mid
            else:
                lo = mid + 1
        raise InsufficientDegreeError(
            f"insufficient X-degree: D = {D} leaves {tail:.2f} digits at this point; "
            f"D >= {need} needed for {target} digits", need)
    prec = math.floor(tail)
    return acc.add_bigoh(prec)


# -- exact division ---------------------------------------------------------
def _divide_component(f: _Component, g: _Component, p: int):
    """Quotient and remainder of f by g with the low-degree shift of g."""
    D = len(f)
    gv = g.vals()
    d0 = next((i for i, c in enumerate(g.nums) if c), None)
    if d0 is None:
        raise ZeroDivisionError("divisor is zero to working precision")
    g0 = g.coefficient(d0)
    v0 = int(g0.valuation)
    rel_g0 = g0.precision - v0
    Dq = D - d0
    fv, fp, gp = f.vals(), f.prec, g.prec
    gnums = g.nums
    Sq = 0
    qnums: list[int] = []
    qv = np.empty(Dq)
    qp = np.empty(Dq)
    for n in range(Dq):
        fi = f.nums[n + d0]
        prec = float(fp[n + d0])
        if n:
            gs = np.array(gnums[d0 + n:d0:-1], dtype=object)
            tot = int(np.dot(np.array(qnums, dtype=object), gs))
            x = qv[:n] + gp[d0 + n:d0:-1]
            y = qp[:n] + gv[d0 + n:d0:-1]
            prec = min(prec, float(x.min()), float(y.min()))
        else:
            tot = 0
        S = max(f.scale, Sq + g.scale)
        rhs = fi * p ** (S - f.scale) - tot * p ** (S - Sq - g.scale)
        if prec != INF:
            e = int(prec) + S
            rhs = rhs % p ** e if e > 0 else 0
        # q_n = rhs / (p^S * g0)
        if rhs == 0:
            qn, qscale, qprec = 0, S + v0, prec - v0
        else:
            vr = valuation(rhs, p) - S
            rel = min(prec - vr, rel_g0)
            unit = g0.unit
            if rel == INF:
                if unit not in (1, -1):
                    rel = DEFAULT_PRECISION
                    inv = pow(unit, -1, p ** (rel + S + abs(v0) + int(max(0, -vr))))
                else:
                    inv = unit
            else:
                inv = pow(unit, -1, p ** int(max(rel, 1) + S + abs(v0) + max(0, -vr)))
            qn, qscale = rhs * inv, S + v0
            qprec = vr - v0 + rel
        if qscale < 0:
            qn, qscale = qn * p ** (-qscale), 0
        if qprec != INF:
            e = int(math.floor(qprec)) + qscale
            qn = qn % p ** e if e > 0 else 0
        while qscale > Sq and qn % p == 0 and qn:
            qn //= p
            qscale -= 1
        if qn == 0:
            qscale = Sq
        if qscale > Sq:
            qnums = [c * p ** (qscale - Sq) for c in qnums]
            Sq = qscale
        elif qscale < Sq:
            qn *= p ** (Sq - qscale)
        qnums.append(qn)
        qp[n] = qprec if qprec == INF else math.floor(qprec)
        qv[n] = min(valuation(qn, p) - Sq, qp[n]) if qn else qp[n]
    Q = _Component(p, qnums, Sq, qp)
    R = _Component(p, f.nums[:d0], f.scale, fp[:d0])
    return Q, R, d0


def divide_exact(F: IwasawaSeries, G: IwasawaSeries):
    """Q with F = Q*G + R per component; R collects the degrees below G's
    lowest nonzero coefficient.  Returns (Q, defect report)."""
    F._check(G)
    M, D = F._joint_precision(G)
    rG = G.growth_class or 0
    M_test = M if M == INF else M - math.ceil(float(rG) * _log_p(D, F.p)) if D > 1 else M
    comps, rem_report, D_min = {}, {}, D
    holds = True
    for j in range(F.p - 1):
        f = F._components[j].truncate(D)
        g = G._components[j].truncate(D)
        if f.is_zero() and all(x == INF for x in f.prec):
            comps[j] = _Component.zero(F.p, D)
            continue
        Q, R, d0 = _divide_component(f, g, F.p)
        D_min = min(D_min, D - d0)
        comps[j] = Q
        rv = R.vals()
        vanish = [bool(R.nums[i] == 0 or rv[i] >= M_test) for i in range(len(R))]
        holds = holds and all(vanish)
        rem_report[j] = [None if not math.isfinite(v) else float(v) for v in rv]
    comps = {j: c.truncate(D_min) for j, c in comps.items()}
    rF = F.growth_class
    r_q = None if rF is None else max(Fraction(0), rF - rG)
    Q = F._like(comps, (M, D_min), r_q, False)
    growth = growth_check(Q, r_q if r_q is not None else 0)
    if not growth["ok"]:
        Q.growth_class = None
    defect = {
        "remainder_valuations": rem_report,
        "remainder_vanishes": holds,
        "tested_precision": [None if M_test == INF else int(M_test), D_min],
        "quotient_growth": growth,
        "holds": bool(holds and growth["ok"]),
    }
    return Q, defect
