"""Check suites and the end-to-end verification run.

Every suite returns a JSON-ready dict with a boolean ``ok``.  Reports carry a
SHA-256 over their canonical serialization; wall-clock timings are kept out of
the hashed content so reruns hash identically.
"""
from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import asdict, dataclass, field

import sympy as sp

from . import __version__
from .dieudonne import (EPS_SYM, P_SYM, build_dcris_vf, pairing_property_check,
                        properties_a, sym_square_split, trivial_zero_factor)
from .hecke import CMFormData, a_q, a_q_from_curve, check_hypotheses, get_form, primes_below
from .kl import (BadRegulatorError, _is_fundamental, _kronecker_value, DirichletCharacter, choose_regulator, consistency_sweep,
                 kl_closed_form, kubota_leopoldt, kummer_check, riemann_crosscheck)
from .padic import PadicNumber
from .pollack import (LogPair, build_log, guard_precision, split_pm, synthetic_pair,
                      zero_pattern)
from .series import (CharacterPoint, InsufficientDegreeError, IwasawaSeries, evaluate,
                     growth_check)
from .sympower import trace_via_components, trace_via_matrix, verify_factorization


@dataclass
class RunConfig:
    form: str = "32a"
    p: int = 3
    m_max: int = 4
    bound: int = 500
    precision: tuple = (20, 128)
    seed: int = 0
    out: str | None = None
    extra: dict = field(default_factory=dict)

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d["precision"] = list(self.precision)
        return d


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)


def content_hash(obj) -> str:
    return hashlib.sha256(canonical(obj).encode()).hexdigest()


def make_report(command: str, config: dict, status: str, results: dict,
                timings: dict | None = None) -> dict:
    body = {"tool": "symsq_padic", "version": __version__, "command": command,
            "config": config, "status": status, "results": results}
    body["content_hash"] = content_hash(body)
    if timings is not None:
        body["timings"] = timings
    return body


# -- helpers ------------------------------------------------------------------
def eta_for_form(form: CMFormData, bound: int = 300) -> DirichletCharacter:
    """The quadratic character eps_K * eps, matched against values at good primes."""
    K = form.field
    target = {q: K.epsilon(q) * form.nebentypus(q) for q in primes_below(bound)
              if form.is_good(q)}
    base = 4 * form.N * abs(K.d)
    for D in sorted((s * m for m in range(1, base + 1) if base % m == 0 for s in (1, -1)),
                    key=abs):
        if D == 1 or not _is_fundamental(D):
            continue
        if all(_kronecker_value(D, q) == v for q, v in target.items()):
            return DirichletCharacter.quadratic(D)
    raise ValueError("eps_K * eps is not a quadratic character")


def _clean(v):
    return v if not isinstance(v, float) else round(v, 9)


# -- suites -------------------------------------------------------------------
def hecke_suite(form: CMFormData, bound: int) -> dict:
    rows = []
    for q in primes_below(bound):
        if not form.is_good(q) or form.curve is None:
            continue
        ours, counted = int(a_q(form, q)), a_q_from_curve(form.curve, q)
        if ours != counted:
            rows.append({"q": q, "hecke": ours, "count": counted})
    inert_nonzero = [q for q in primes_below(bound) if form.is_good(q)
                     and form.field.splitting(q) == "inert" and int(a_q(form, q)) != 0]
    return {"mismatches": rows, "inert_nonzero": inert_nonzero,
            "ok": not rows and not inert_nonzero}


def sym_suite(form: CMFormData, m_max: int, bound: int) -> dict:
    rows, ok = [], True
    for m in range(2, m_max + 1):
        r = verify_factorization(m, form, bound)
        r.pop("wall_time")
        r["ok"] = not r["mismatches"]
        ok = ok and r["ok"]
        rows.append(r)
    trace_bad = [(m, q) for m in range(2, m_max + 1) for q in primes_below(bound)
                 if form.is_good(q) and trace_via_matrix(m, form, q)
                 != trace_via_components(m, form, q)]
    return {"factorizations": rows, "trace_mismatches": trace_bad,
            "ok": ok and not trace_bad}


def dieudonne_suite(k: int, eps=EPS_SYM, p_value: int | None = None) -> dict:
    """Module checks with p symbolic; ``p_value`` adds the trivial-zero factor at p."""
    eps, p_ = sp.sympify(eps), P_SYM
    D = build_dcris_vf(k, eps, p_)
    phi2 = sp.simplify(D.phi ** 2 + eps * p_ ** (k - 1) * sp.eye(2)) == sp.zeros(2, 2)
    split = sym_square_split(D)
    alpha = sp.simplify(eps * p_ ** (k - 1))
    eig = split.D_V2.eigenvalues()
    eig_ok = {sp.simplify(e) for e in eig} == {alpha, sp.simplify(-alpha)}
    hts = {"V_f": D.hodge_tate_weights(), "V_2": split.D_V2.hodge_tate_weights(),
           "V_1": split.D_V1.hodge_tate_weights()}
    ht_ok = hts["V_2"] == [2 - 2 * k, 0]
    pairing = pairing_property_check(split.D_V2, k, eps=eps, p=p_)
    prop_a = properties_a(split.D_V2, k, eps, p_)
    tz = {s: str(trivial_zero_factor(k, eps, s, p_ if p_value is None else p_value))
          for s in ("+", "-")}
    return {"k": k, "eps": str(eps), "p": str(p_), "phi_squared": bool(phi2),
            "eigenvalues": sorted(str(e) for e in eig), "eigenvalues_ok": bool(eig_ok),
            "hodge_tate": hts, "hodge_tate_ok": bool(ht_ok),
            "properties_b": pairing["ok"], "properties_a": bool(prop_a),
            "trivial_zero_factor": tz,
            "ok": bool(phi2 and eig_ok and ht_ok and pairing["ok"] and prop_a)}


def random_bounded(p: int, precision, rng: random.Random, bound: int = 50) -> IwasawaSeries:
    """Polynomial with small random integer coefficients in every component."""
    M, D = precision
    deg = rng.randrange(1, min(D, 12))
    comps = {}
    for j in range(p - 1):
        coeffs = [rng.randrange(-bound, bound + 1) for _ in range(deg)]
        coeffs += [0] * (D - deg)
        comps[j] = [PadicNumber.from_rational(c, p) for c in coeffs]
    return IwasawaSeries(p, comps, precision, growth_class=0, tail_free=True)


def pollack_suite(k: int, p: int, precision, seed: int, trials: int = 5,
                  max_level: int = 3) -> dict:
    M, D = precision
    logs = LogPair.build(k, p, precision)
    growth = {s: growth_check(logs.series(s), k - 1)["ok"] for s in ("+", "-")}
    mismatches = []
    checked = 0
    for level in range(max_level + 1):
        for s in range(2 * k - 2):
            pt = CharacterPoint(s, 0, level, 1)
            for sign in ("+", "-"):
                predicted = zero_pattern(k, sign, pt, p)
                try:
                    val = evaluate(logs.series(sign), pt, 1)
                except InsufficientDegreeError:
                    continue
                checked += 1
                if predicted != val.is_zero():
                    mismatches.append({"s": s, "level": level, "sign": sign})
    W = guard_precision(M, D, p)
    guard_logs = LogPair(k, p, build_log(k, "+", p, (W, D)), build_log(k, "-", p, (W, D)),
                         {})
    rng = random.Random(seed)
    round_trips = 0
    for _ in range(trials):
        A, B = random_bounded(p, precision, rng), random_bounded(p, precision, rng)
        Lp, Lm = synthetic_pair(A, B, guard_logs)
        plus, minus, defect = split_pm(Lp, Lm, k, guard_logs)
        if (defect["+"]["holds"] and defect["-"]["holds"]
                and plus.truncate(M, D).equals(A.truncate(M, D))
                and minus.truncate(M, D).equals(B.truncate(M, D))):
            round_trips += 1
    ok = all(growth.values()) and not mismatches and round_trips == trials
    return {"k": k, "p": p, "growth_ok": growth, "layers": logs.n_max,
            "zero_pattern_points": checked, "zero_pattern_mismatches": mismatches,
            "round_trips": round_trips, "trials": trials, "ok": ok}


def kl_suite(eta: DirichletCharacter, p: int, precision, seed: int, digits: int = 10) -> dict:
    c1 = choose_regulator(eta, p)
    c2 = choose_regulator(eta, p, start=c1 + 1)
    L1 = kubota_leopoldt(eta, p, precision, c=c1)
    L2 = kubota_leopoldt(eta, p, precision, c=c2)
    closed = []
    for r in range(6):
        val = evaluate(L1, CharacterPoint(r), digits)
        ref = PadicNumber.from_rational(kl_closed_form(eta, p, r), p, digits)
        closed.append(bool((val - ref).add_bigoh(digits).is_zero()))
    indep = L1.truncate(digits).equals(L2.truncate(digits))
    riemann = riemann_crosscheck(L1, eta, c1, 2, min_precision=2)
    rng = random.Random(seed)
    kummer = []
    for _ in range(10):
        n = rng.choice([x for x in range(2, 40) if x % (p - 1)])
        n2 = n + (p - 1) * p ** rng.randrange(0, 2) * rng.randrange(1, 3)
        kummer.append(kummer_check(p, n, n2)["holds"])
    growth = growth_check(L1, 0)["ok"]
    ok = all(closed) and indep and riemann["holds"] and all(kummer) and growth
    return {"eta": eta.name, "p": p, "regulators": [c1, c2], "closed_form": closed,
            "c_independent": bool(indep), "riemann": riemann["holds"],
            "kummer": all(kummer), "growth_ok": bool(growth), "ok": bool(ok)}


def consistency_suite() -> dict:
    sw = consistency_sweep()
    return {"cases": len(sw["rows"]), "failures": [
        {"k": r["k"], "n": r["n"], "sign": r["sign"]} for r in sw["rows"] if not r["holds"]],
        "ok": sw["holds"]}


# -- the end-to-end run ---------------------------------------------------------
def run_pipeline(config: RunConfig, timings: bool = False) -> dict:
    form = get_form(config.form)
    p = config.p
    times = {}
    t0 = time.perf_counter()
    gate = check_hypotheses(form, p, bound=200)
    times["gate"] = time.perf_counter() - t0
    if not gate["all_ok"]:
        return make_report("verify-all", config.echo(), "gated", {"gate": gate},
                           times if timings else None)
    M, D = config.precision
    suites = {}
    plan = [
        ("hecke", lambda: hecke_suite(form, config.bound)),
        ("sym", lambda: sym_suite(form, config.m_max, config.bound)),
        ("dieudonne", lambda: dieudonne_suite(form.k)),
        ("dieudonne_at_p", lambda: dieudonne_suite(form.k, form.nebentypus(p), p)),
        ("pollack", lambda: pollack_suite(form.k, p, (min(M, 15), min(D, 96)), config.seed)),
        ("kl", lambda: kl_suite(eta_for_form(form), p, (M, D), config.seed)),
        ("consistency", consistency_suite),
    ]
    for name, fn in plan:
        t = time.perf_counter()
        try:
            suites[name] = fn()
        except (BadRegulatorError, InsufficientDegreeError, ValueError) as exc:
            suites[name] = {"ok": False, "error": str(exc)}
        times[name] = time.perf_counter() - t
    status = "pass" if all(s["ok"] for s in suites.values()) else "fail"
    return make_report("verify-all", config.echo(), status, {"gate": gate, "suites": suites},
                       {k: _clean(v) for k, v in times.items()} if timings else None)
