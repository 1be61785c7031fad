"""Command-line entry point: ``python3 -m symsq_padic <subcommand> ...``.

Each subcommand prints (or writes with --out) a JSON report.  Exit status is 0
when every suite that ran passed, 1 on a failed check and 2 when the
hypotheses gate stopped the run.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import sympy as sp

from .hecke import (CATALOG_PATH, CATALOG_SEED, a_q, a_q_from_curve, check_hypotheses,
                    get_form, primes_below)
from .kl import (BadRegulatorError, DirichletCharacter, assemble_symsq, kubota_leopoldt,
                 nonvanishing_guard)
from .pipeline import (RunConfig, dieudonne_suite, kl_suite, make_report,
                       pollack_suite, run_pipeline, sym_suite)
from .pollack import LogPair, split_pm
from .series import IwasawaSeries, growth_check

EXIT_OK, EXIT_FAIL, EXIT_GATED = 0, 1, 2


def _precision(text: str):
    try:
        M, D = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected M,D") from exc
    if M < 1 or D < 1:
        raise argparse.ArgumentTypeError("M and D must be positive")
    return M, D


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=1, default=str) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _status_code(report: dict) -> int:
    return {"pass": EXIT_OK, "gated": EXIT_GATED}.get(report["status"], EXIT_FAIL)


def _finish(command, config, results, ok, args, times=None) -> int:
    report = make_report(command, config, "pass" if ok else "fail", results,
                         times if args.timings else None)
    _emit(report, args.out)
    return _status_code(report)


# -- subcommands ------------------------------------------------------------------
def cmd_hecke(args) -> int:
    form = get_form(args.form)
    rows = []
    for q in primes_below(args.bound):
        if not form.is_good(q):
            continue
        row = {"q": q, "a_q": int(a_q(form, q)), "splitting": form.field.splitting(q)}
        if form.curve is not None:
            row["count"] = a_q_from_curve(form.curve, q)
        rows.append(row)
    ok = all(r.get("count", r["a_q"]) == r["a_q"] for r in rows)
    results = {"table": rows}
    if args.p is not None:
        gate = check_hypotheses(form, args.p)
        results["hypotheses"] = gate
    config = {"form": args.form, "bound": args.bound, "p": args.p}
    return _finish("hecke", config, results, ok, args)


def cmd_sym(args) -> int:
    form = get_form(args.form)
    res = sym_suite(form, args.m, args.bound)
    return _finish("sym", {"form": args.form, "m": args.m, "bound": args.bound},
                   res, res["ok"], args)


def cmd_dieudonne(args) -> int:
    eps = sp.Symbol("epsilon_p", nonzero=True) if args.epsp == "sym" else sp.Rational(args.epsp)
    res = dieudonne_suite(args.k, eps, args.p)
    return _finish("dieudonne", {"k": args.k, "epsp": args.epsp, "p": args.p},
                   res, res["ok"], args)


def cmd_pollack(args) -> int:
    t = time.perf_counter()
    logs = LogPair.build(args.k, args.p, args.prec)
    growth = {s: growth_check(logs.series(s), args.k - 1) for s in ("+", "-")}
    results = {"layers": logs.n_max, "growth": growth}
    if args.suite:
        results["suite"] = pollack_suite(args.k, args.p, args.prec, args.seed)
    ok = all(g["ok"] for g in growth.values()) and results.get("suite", {"ok": True})["ok"]
    if args.series_out:
        Path(args.series_out).write_text(json.dumps(
            {"plus": logs.log_plus.to_json(), "minus": logs.log_minus.to_json()}, sort_keys=True))
    config = {"k": args.k, "p": args.p, "precision": list(args.prec), "seed": args.seed}
    return _finish("pollack", config, results, ok, args,
                   {"total": round(time.perf_counter() - t, 9)})


def cmd_kl(args) -> int:
    eta = DirichletCharacter.from_name(args.char)
    config = {"char": args.char, "p": args.p, "precision": list(args.prec), "c": args.c}
    try:
        L = kubota_leopoldt(eta, args.p, args.prec, c=args.c)
    except BadRegulatorError as exc:
        return _finish("kl", config, {"error": str(exc)}, False, args)
    results = {"series": L.to_json()}
    ok = True
    if args.suite:
        results["suite"] = kl_suite(eta, args.p, args.prec, args.seed)
        ok = results["suite"]["ok"]
    return _finish("kl", config, results, ok, args)


def _load_pair(path: str):
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict) and "plus" in data:
        return IwasawaSeries.from_json(data["plus"]), IwasawaSeries.from_json(data["minus"])
    if isinstance(data, list) and len(data) == 2:
        return IwasawaSeries.from_json(data[0]), IwasawaSeries.from_json(data[1])
    raise ValueError("phi^2 file must hold {'plus': ..., 'minus': ...} or a two-element list")


def _load_series(path: str) -> IwasawaSeries:
    data = json.loads(Path(path).read_text())
    if "results" in data:
        data = data["results"]["series"]
    return IwasawaSeries.from_json(data)


def cmd_assemble(args) -> int:
    Lp, Lm = _load_pair(args.phi2)
    KL = _load_series(args.kl)
    guard = {s: nonvanishing_guard(L, 0) for s, L in (("+", Lp), ("-", Lm))}
    Ap, Am = assemble_symsq((Lp, Lm), KL, args.k)
    results = {"nonvanishing": {s: {"nonzero": g.nonzero, "inconclusive": g.inconclusive}
                                for s, g in guard.items()},
               "assembled": {"plus_alpha": Ap.to_json(), "minus_alpha": Am.to_json()}}
    if args.split:
        plus, minus, defect = split_pm(Ap, Am, args.k)
        results["split"] = {"plus": plus.to_json(), "minus": minus.to_json(),
                            "defect": defect}
    ok = all(g.nonzero for g in guard.values())
    return _finish("assemble", {"phi2": args.phi2, "kl": args.kl, "k": args.k},
                   results, ok, args)


def cmd_verify_all(args) -> int:
    config = RunConfig(form=args.form, p=args.p, m_max=args.m, bound=args.bound,
                       precision=args.prec, seed=args.seed, out=args.out)
    report = run_pipeline(config, timings=args.timings)
    _emit(report, args.out)
    return _status_code(report)


def cmd_regen_catalog(args) -> int:
    committed = json.loads(Path(args.catalog).read_text())
    diffs = []
    fresh = {}
    for seed in CATALOG_SEED:
        N, d = seed["N"], seed["d"]
        table = {str(q): a_q_from_curve(seed["curve"], q)
                 for q in primes_below(args.bound) if (N * abs(d)) % q}
        fresh[seed["label"]] = table
        old = next((e for e in committed["forms"] if e["label"] == seed["label"]), None)
        old_table = {} if old is None else old.get("a_q", {})
        for q, v in table.items():
            if q in old_table and old_table[q] != v:
                diffs.append({"form": seed["label"], "q": int(q), "committed": old_table[q],
                              "counted": v})
            elif q not in old_table:
                diffs.append({"form": seed["label"], "q": int(q), "committed": None,
                              "counted": v})
    if args.write and not diffs:
        from .hecke import regenerate_catalog
        regenerate_catalog(args.catalog, args.bound)
    results = {"diffs": diffs, "primes": {k: len(v) for k, v in fresh.items()}}
    return _finish("regen-catalog", {"bound": args.bound}, results, not diffs, args)


# -- parser ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symsq_padic")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp_):
        sp_.add_argument("--out", default=None, help="write the JSON report here")
        sp_.add_argument("--timings", action="store_true",
                         help="append wall-clock times (excluded from the hash)")
        sp_.add_argument("--seed", type=int, default=0)
        return sp_

    h = common(sub.add_parser("hecke", help="a_q table and hypothesis flags"))
    h.add_argument("--form", default="32a")
    h.add_argument("--bound", type=int, default=200)
    h.add_argument("--p", type=int, default=None)
    h.set_defaults(func=cmd_hecke)

    s = common(sub.add_parser("sym", help="Sym^m Euler factor comparison"))
    s.add_argument("--form", default="32a")
    s.add_argument("--m", type=int, default=4, help="largest symmetric power")
    s.add_argument("--bound", type=int, default=500)
    s.set_defaults(func=cmd_sym)

    d = common(sub.add_parser("dieudonne", help="filtered phi-module checks"))
    d.add_argument("--k", type=int, default=2)
    d.add_argument("--epsp", default="sym", help="value of eps(p), or 'sym'")
    d.add_argument("--p", type=int, default=None)
    d.set_defaults(func=cmd_dieudonne)

    po = common(sub.add_parser("pollack", help="half-logarithms and their checks"))
    po.add_argument("--k", type=int, default=2)
    po.add_argument("--p", type=int, default=3)
    po.add_argument("--prec", type=_precision, default=(20, 128))
    po.add_argument("--suite", action="store_true", help="also run the zero/round-trip suite")
    po.add_argument("--series-out", default=None)
    po.set_defaults(func=cmd_pollack)

    k = common(sub.add_parser("kl", help="Kubota-Leopoldt series"))
    k.add_argument("--char", default="quad4")
    k.add_argument("--p", type=int, default=3)
    k.add_argument("--prec", type=_precision, default=(20, 128))
    k.add_argument("--c", type=int, default=None)
    k.add_argument("--suite", action="store_true")
    k.set_defaults(func=cmd_kl)

    a = common(sub.add_parser("assemble", help="multiply injected phi^2 data by Tw(KL)"))
    a.add_argument("--phi2", required=True)
    a.add_argument("--kl", required=True)
    a.add_argument("--k", type=int, default=2)
    a.add_argument("--split", action="store_true")
    a.set_defaults(func=cmd_assemble)

    v = common(sub.add_parser("verify-all", help="gate plus every suite"))
    v.add_argument("--form", default="32a")
    v.add_argument("--p", type=int, default=3)
    v.add_argument("--m", type=int, default=4)
    v.add_argument("--bound", type=int, default=500)
    v.add_argument("--prec", type=_precision, default=(20, 128))
    v.set_defaults(func=cmd_verify_all)

    r = common(sub.add_parser("regen-catalog", help="recount points and diff the catalog"))
    r.add_argument("--bound", type=int, default=1000)
    r.add_argument("--catalog", default=str(CATALOG_PATH))
    r.add_argument("--write", action="store_true", help="rewrite the file when clean")
    r.set_defaults(func=cmd_regen_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
