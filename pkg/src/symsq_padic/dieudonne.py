"""Filtered phi-modules for a CM form at an inert prime, and their symmetric square.

Conventions: a filtration jumps at i when dim Fil^i > dim Fil^(i+1), and the
Hodge-Tate weight attached to a jump i is -i.  Twisting follows
D(V(j)) = t^(-j) D(V) e_j, so Fil^i D(V(j)) = Fil^(i+j) D(V) and phi picks up a
factor p^(-j).  Duals use Fil^i D* = annihilator of Fil^(1-i) D.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy as sp

from .cyclotomic import CyclotomicNumber
from .sympower import sym_power_matrix

P_SYM = sp.Symbol("p", positive=True)
EPS_SYM = sp.Symbol("epsilon_p", nonzero=True)


class StructureError(ValueError):
    """Input module does not have the expected shape."""


class DegeneratePairingError(ValueError):
    pass


class FiltrationViolationError(ValueError):
    """A pairing does not kill Fil^0 x Fil^0."""


@dataclass
class FilteredPhiModule:
    """phi acts by ``phi`` on column coordinates in ``labels``.

    ``steps`` is a list of (i0, basis) with i0 increasing: Fil^i is spanned by
    the basis of the last step with i0 <= i, everything below the first step
    and nothing above the last (use an empty basis to end the filtration).
    """

    labels: list
    phi: sp.Matrix
    steps: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def fil(self, i: int) -> list:
        current = [sp.eye(self.dimension)[:, c] for c in range(self.dimension)]
        for i0, basis in self.steps:
            if i0 <= i:
                current = basis
        return current

    def fil_dim(self, i: int) -> int:
        vecs = self.fil(i)
        if not vecs:
            return 0
        return sp.Matrix.hstack(*vecs).rank()

    def jumps(self) -> list[int]:
        """Jump indices with multiplicity."""
        lo = min(i0 for i0, _ in self.steps) - 2
        hi = max(i0 for i0, _ in self.steps) + 2
        out = []
        for i in range(lo, hi):
            out += [i] * (self.fil_dim(i) - self.fil_dim(i + 1))
        return out

    def hodge_tate_weights(self) -> list[int]:
        return sorted(-j for j in self.jumps())

    def filtration_table(self, lo: int, hi: int) -> dict:
        return {i: self.fil_dim(i) for i in range(lo, hi + 1)}

    def eigenvalues(self) -> dict:
        return {sp.simplify(k): v for k, v in self.phi.eigenvals().items()}

    def charpoly(self, x=sp.Symbol("x")):
        return sp.expand(self.phi.charpoly(x).as_expr())

    def twist(self, j: int) -> "FilteredPhiModule":
        """D(V(j)): phi scaled by p^(-j), filtration indices shifted down by j."""
        return FilteredPhiModule(list(self.labels), self.phi * P_SYM ** (-j),
                                 [(i0 - j, b) for i0, b in self.steps])

    def dual(self) -> "FilteredPhiModule":
        n = self.dimension
        phi = (self.phi.T) ** -1
        cuts = sorted({i0 for i0, _ in self.steps})
        # Fil^i D* changes only where Fil^(1-i) D changes
        points = sorted({1 - c for c in cuts})
        steps = []
        for i in points:
            vecs = self.fil(1 - i)
            if vecs:
                A = sp.Matrix.hstack(*vecs).T
                ann = A.nullspace()
            else:
                ann = [sp.eye(n)[:, c] for c in range(n)]
            steps.append((i, ann))
        return FilteredPhiModule([f"{l}*" for l in self.labels], sp.simplify(phi), steps)

    def contains(self, i: int, vector: sp.Matrix) -> bool:
        vecs = self.fil(i)
        if not vecs:
            return all(sp.simplify(x) == 0 for x in vector)
        A = sp.Matrix.hstack(*vecs)
        return A.rank() == sp.Matrix.hstack(A, vector).rank()


def build_dcris_vf(k: int, eps=EPS_SYM, p=P_SYM) -> FilteredPhiModule:
    """Basis (omega, phi omega); phi^2 = -eps p^(k-1); Fil^1..Fil^(k-1) = E omega."""
    if k < 2:
        raise ValueError("weight must be at least 2")
    phi = sp.Matrix([[0, -eps * p ** (k - 1)], [1, 0]])
    omega = sp.Matrix([1, 0])
    return FilteredPhiModule(["omega", "phi_omega"], phi, [(1, [omega]), (k, [])])


@dataclass
class SymSquareSplit:
    D_V1: FilteredPhiModule
    D_V2: FilteredPhiModule
    change_of_basis: sp.Matrix
    sym2_phi: sp.Matrix
    sym2: FilteredPhiModule


def _sym2_filtration(D: FilteredPhiModule):
    """Fil^i of Sym^2 D in the monomial basis (y^2, xy, x^2), x = omega, y = phi omega."""
    cuts = sorted({i0 for i0, _ in D.steps})
    points = range(2 * min(cuts) - 1, 2 * max(cuts) + 1)

    def sym(u, w):
        # u, w in coordinates (omega, phi omega) -> monomial coordinates
        return sp.Matrix([u[1] * w[1], u[0] * w[1] + u[1] * w[0], u[0] * w[0]])

    def fil(i):
        vecs = []
        for a in range(min(cuts) - 1, max(cuts) + 1):
            for u in D.fil(a):
                for w in D.fil(i - a):
                    vecs.append(sym(u, w))
        if not vecs:
            return []
        return sp.Matrix.hstack(*vecs).columnspace()

    return [(i, fil(i)) for i in points]


def sym_square_split(D: FilteredPhiModule) -> SymSquareSplit:
    """D(Sym^2 V_f) = D(V_1) + D(V_2) with D(V_1) spanned by the mixed tensor."""
    if D.dimension != 2 or D.phi[0, 0] != 0 or D.phi[1, 0] != 1:
        raise StructureError("expected the module from build_dcris_vf")
    c = -D.phi[0, 1]  # phi^2 = -c on D, c = eps p^(k-1)
    sym2 = sym_power_matrix(((D.phi[0, 0], D.phi[0, 1]), (D.phi[1, 0], D.phi[1, 1])), 2)
    S = sp.Matrix(sym2)
    # monomial basis: y^2 = phi w (x) phi w, xy = mixed tensor, x^2 = w (x) w
    oo = sp.Matrix([0, 0, 1])
    pp = sp.Matrix([1, 0, 0])
    mixed = sp.Matrix([0, 1, 0])
    P = sp.Matrix.hstack(oo, pp, mixed)
    block = sp.simplify(P.inv() * S * P)
    A2 = block[:2, :2]
    A1 = block[2:, 2:]
    if any(sp.simplify(x) != 0 for x in list(block[:2, 2:]) + list(block[2:, :2])):
        raise StructureError("mixed tensor does not split off")
    steps = _sym2_filtration(D)
    sym2_mod = FilteredPhiModule(["phi_w^2", "mixed", "w^2"], S, steps)
    v2_steps, v1_steps = [], []
    for i0, basis in steps:
        if basis:
            coords = P.inv() * sp.Matrix.hstack(*basis)
        else:
            coords = sp.zeros(3, 0)
        # intersect the span with each summand
        v2 = _intersect(coords, [sp.Matrix([1, 0, 0]), sp.Matrix([0, 1, 0])])
        v1 = _intersect(coords, [sp.Matrix([0, 0, 1])])
        v2_steps.append((i0, [sp.Matrix(v[:2]) for v in v2]))
        v1_steps.append((i0, [sp.Matrix(v[2:]) for v in v1]))
    D_V2 = FilteredPhiModule(["w(x)w", "phi_w(x)phi_w"], A2, v2_steps)
    D_V1 = FilteredPhiModule(["mixed"], A1, v1_steps)
    if sp.simplify(A1[0, 0] + c) != 0:
        raise StructureError("phi on the mixed tensor is not -eps p^(k-1)")
    return SymSquareSplit(D_V1, D_V2, P, S, sym2_mod)


def _intersect(span_cols: sp.Matrix, subspace: list) -> list:
    """Basis of span(span_cols) intersected with span(subspace)."""
    if span_cols.shape[1] == 0:
        return []
    B = sp.Matrix.hstack(*subspace)
    M = sp.Matrix.hstack(span_cols, -B)
    out = []
    for v in M.nullspace():
        coeffs = v[span_cols.shape[1]:, 0]
        w = sp.simplify(B * coeffs)
        if any(x != 0 for x in w):
            out.append(w)
    if not out:
        return []
    return sp.Matrix.hstack(*out).columnspace()


# -- v-plus / v-minus and pairing --------------------------------------------
def build_v_pm(D_V2: FilteredPhiModule, c=1, eps=EPS_SYM, p=P_SYM, k: int | None = None):
    """v^(+-) = (+-eps p^(k-1) w(x)w + phi_w(x)phi_w) / c in the basis of D_V2."""
    if c == 0:
        raise DegeneratePairingError("normalizer [phi w (x) phi w, w-bar] is zero")
    if k is None:
        # weights of D_V2 are 0 and 2-2k
        k = 1 - min(D_V2.hodge_tate_weights()) // 2
    alpha = eps * p ** (k - 1)
    vp = sp.Matrix([alpha, 1]) / c
    vm = sp.Matrix([-alpha, 1]) / c
    return vp, vm


@dataclass(frozen=True)
class TwistedVector:
    """v (x) t^(-j) e_j inside D(V(j))."""

    base: sp.Matrix
    j: int = 0

    def phi(self, module: FilteredPhiModule) -> sp.Matrix:
        return module.phi * self.base * P_SYM ** (-self.j)


def tate_twist(v: TwistedVector, j: int) -> TwistedVector:
    return TwistedVector(v.base, v.j + j)


def eigenvalue(v: TwistedVector, module: FilteredPhiModule):
    """lambda with phi(v) = lambda v on the twisted module, or None."""
    image = v.phi(module)
    idx = next(i for i, x in enumerate(v.base) if sp.simplify(x) != 0)
    lam = sp.simplify(image[idx] / v.base[idx])
    if all(sp.simplify(image[i] - lam * v.base[i]) == 0 for i in range(len(v.base))):
        return lam
    return None


def pairing_property_check(D_V2: FilteredPhiModule, k: int, pairing=None, c=1,
                           eps=EPS_SYM, p=P_SYM, strict: bool = True) -> dict:
    """For r in [0, 2k-3]: [v+_(r+1), w-bar_(-r-1)] = [v-_(r+1), w-bar_(-r-1)] = 1.

    ``pairing`` gives ([w(x)w, w-bar], [phi_w(x)phi_w, w-bar]); default (0, c).
    The twists cancel in the pairing into D(E(1)), so the values are those of
    the untwisted vectors.  Fil^0 checks are done on the twisted modules.
    """
    if pairing is None:
        pairing = (0, c)
    pair_row = sp.Matrix([pairing])
    dual = D_V2.dual()
    vp, vm = build_v_pm(D_V2, pairing[1], eps, p, k)
    ww = sp.Matrix([1, 0])
    rows = []
    ok = True
    for r in range(0, 2 * k - 2):
        tw = D_V2.twist(r + 1)
        dual_tw = dual.twist(-r)
        ww_in_fil0 = tw.contains(0, ww)
        fil0_dual_dim = dual_tw.fil_dim(0)
        orth = sp.simplify((pair_row * ww)[0]) == 0
        if strict and ww_in_fil0 and not orth:
            raise FiltrationViolationError(
                f"[(w(x)w)_{r + 1}, w-bar] = {pairing[0]} but both lie in Fil^0")
        a = sp.simplify((pair_row * vp)[0])
        b = sp.simplify((pair_row * vm)[0])
        row_ok = bool(sp.simplify(a - b) == 0 and sp.simplify(a - 1) == 0
                      and ww_in_fil0 and fil0_dual_dim == 1)
        ok = ok and row_ok
        rows.append({"r": r, "plus": str(a), "minus": str(b), "ww_in_fil0": bool(ww_in_fil0),
                     "fil0_dual_dim": fil0_dual_dim, "ok": row_ok})
    return {"k": k, "rows": rows, "ok": ok}


def properties_a(D_V2: FilteredPhiModule, k: int, eps=EPS_SYM, p=P_SYM, c=1) -> bool:
    """phi(v+-) = +-eps p^(k-1) v+-."""
    vp, vm = build_v_pm(D_V2, c, eps, p, k)
    alpha = eps * p ** (k - 1)
    return all(sp.simplify(D_V2.phi * v - s * alpha * v) == sp.zeros(2, 1)
               for v, s in ((vp, 1), (vm, -1)))


# -- trivial zero factor ------------------------------------------------------
def trivial_zero_factor(k: int, eps=EPS_SYM, sign: str = "+", p=P_SYM):
    """1 - 1/p + (1 - eps^-2 p^(2k-3)) (+-eps p^(1-k)), exactly.

    ``eps`` may be a sympy expression or a CyclotomicNumber (then ``p`` must be
    an integer or None for the Laurent form in p, see trivial_zero_laurent).
    """
    s = 1 if sign == "+" else -1
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    if isinstance(eps, CyclotomicNumber):
        if not isinstance(p, int):
            raise TypeError("use trivial_zero_laurent for symbolic p with cyclotomic eps")
        pf = Fraction(p)
        return (CyclotomicNumber.rational(1 - 1 / pf)
                + (CyclotomicNumber.rational(1) - eps.inverse() ** 2 * (pf ** (2 * k - 3)))
                * eps * (s * pf ** (1 - k)))
    p, eps = sp.sympify(p), sp.sympify(eps)
    return sp.simplify(1 - 1 / p + (1 - eps ** -2 * p ** (2 * k - 3)) * (s * eps * p ** (1 - k)))


def trivial_zero_laurent(k: int, eps: CyclotomicNumber, sign: str = "+") -> dict:
    """The factor as {exponent of p: coefficient}, p an indeterminate."""
    s = 1 if sign == "+" else -1
    one = CyclotomicNumber.rational(1)
    terms = {}

    def add(e, c):
        terms[e] = terms.get(e, CyclotomicNumber.rational(0)) + c

    add(0, one)
    add(-1, -one)
    add(1 - k, eps * s)
    add(k - 2, eps.inverse() * (-s))
    return {e: c for e, c in terms.items() if not c.is_zero()}
