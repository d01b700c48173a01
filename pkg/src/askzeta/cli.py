"""Command-line front end with JSON input/output.

Exit codes: 0 success, 1 verification mismatch (a finding), 2 input or schema
error, 3 budget exceeded, 4 internal consistency failure (always a bug).
Reports are deterministic: keys sorted, rationals serialized as decimal
strings in lowest terms.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from .catalog import catalog_module
from .closed_forms import (
    catalog_keys,
    closed_form,
    brenti_identity_check,
    brenti_polynomial,
    elliptic_point_count,
    ex_elliptic_formula,
)
from .engine import DEFAULT_BUDGET, ask_series
from .errors import (
    AskZetaError,
    BudgetExceededError,
    InputError,
    InternalConsistencyError,
)
from .grouporbits import (
    GroupGenSet,
    NilpotentAlgebra,
    catalog_algebra,
    cc_coefficients_direct,
    cc_via_ask,
    gl_generators,
    oc_coefficients,
    oc_of_exp_group,
    oc_via_ask,
)
from .intmat import IntMatrix
from .module import MatrixModule
from .ratfun import expand, functional_equation_check, parse_rational
from .structural import structure_report

SCHEMA = "askzeta/1"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


def _rat(value) -> dict:
    f = Fraction(value)
    return {"num": str(f.numerator), "den": str(f.denominator)}


def _parse_primes(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise InputError(f"bad prime list {text!r}") from exc


def load_module(path: str) -> MatrixModule:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    return module_from_json(data)


def module_from_json(data) -> MatrixModule:
    if not isinstance(data, dict):
        raise InputError("module document must be a JSON object")
    if data.get("schema") != SCHEMA:
        raise InputError(f'missing or unsupported "schema" (expected "{SCHEMA}")')
    for key in ("d", "e", "basis"):
        if key not in data:
            raise InputError(f"module document lacks {key!r}")
    d, e = data["d"], data["e"]
    if not isinstance(d, int) or not isinstance(e, int):
        raise InputError("d and e must be integers")
    basis = []
    for mat in data["basis"]:
        basis.append(IntMatrix(mat))
    return MatrixModule(d, e, basis, str(data.get("label", "")))


def module_to_json(m: MatrixModule) -> dict:
    return {
        "schema": SCHEMA,
        "d": m.d,
        "e": m.e,
        "basis": [[list(row) for row in b.entries] for b in m.basis],
        "label": m.label,
    }


def load_group(path: str) -> GroupGenSet:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise InputError(f'missing or unsupported "schema" (expected "{SCHEMA}")')
    if "generators" not in data or "d" not in data:
        raise InputError("group document needs d and generators")
    gens = tuple(IntMatrix(g) for g in data["generators"])
    return GroupGenSet(int(data["d"]), gens, str(data.get("label", "")))


def _emit(report: dict, args) -> None:
    fmt = getattr(args, "format", "json")
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        text = _to_csv(report)
    else:
        text = _to_text(report)
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _to_csv(report: dict) -> str:
    lines = ["p,n,num,den"]
    for res in report.get("results", []):
        p = res.get("p")
        if "coefficients" in res:
            for n, c in enumerate(res["coefficients"]):
                lines.append(f"{p},{n},{c['num']},{c['den']}")
        elif "orbits" in res:
            for n, c in enumerate(res["orbits"]):
                lines.append(f"{p},{n},{c},1")
    return "\n".join(lines) + "\n"


def _to_text(report: dict) -> str:
    lines = [f"command: {report.get('command')}"]
    for key, value in sorted(report.items()):
        if key in ("command", "results"):
            continue
        lines.append(f"{key}: {value}")
    for res in report.get("results", []):
        lines.append(json.dumps(res, sort_keys=True))
    return "\n".join(lines) + "\n"


def _get_module(args) -> MatrixModule:
    if getattr(args, "catalog", None):
        return catalog_module(args.catalog)
    if getattr(args, "module", None):
        return load_module(args.module)
    raise InputError("provide --catalog KEY or --module FILE")


def _series_task(payload):
    m, p, n_max, method, budget, jobs = payload
    return p, ask_series(m, p, n_max, method, budget, jobs).coefficients()


def _run_series(m, primes, n_max, method, budget, jobs):
    """Workers go to the per-prime tasks, or into the single enumeration when
    only one prime is requested; either way the results are exact and
    schedule-independent."""
    if jobs > 1 and len(primes) == 1:
        return [_series_task((m, primes[0], n_max, method, budget, jobs))]
    tasks = [(m, p, n_max, method, budget, 1) for p in primes]
    if jobs > 1 and len(tasks) > 1:
        from multiprocessing import Pool

        with Pool(processes=min(jobs, len(tasks))) as pool:
            results = pool.map(_series_task, tasks)
    else:
        results = [_series_task(t) for t in tasks]
    return results


def cmd_ask(args) -> int:
    m = _get_module(args)
    primes = _parse_primes(args.p)
    results = _run_series(m, primes, args.n_max, args.method, args.budget, args.jobs)
    report = {
        "schema": SCHEMA,
        "command": "ask",
        "input": args.catalog or args.module,
        "method": args.method,
        "n_max": args.n_max,
        "seed": args.seed,
        "results": [
            {"p": p, "coefficients": [_rat(c) for c in coeffs]}
            for p, coeffs in results
        ],
    }
    _emit(report, args)
    return EXIT_OK


def _verify_formula(args, m):
    if args.formula:
        return parse_rational(args.formula), None
    entry = closed_form(args.catalog)
    if entry.formula is not None:
        return entry.formula, entry
    if args.catalog == "ex_elliptic":
        return None, entry  # per-prime specialization below
    raise InputError(f"catalog entry {args.catalog!r} stores no fixed formula")


def cmd_verify(args) -> int:
    if args.catalog:
        m = catalog_module(args.catalog)
    else:
        if not (args.module and args.formula):
            raise InputError("verify needs --catalog KEY or --module FILE --formula EXPR")
        m = load_module(args.module)
    formula, entry = _verify_formula(args, m)
    primes = _parse_primes(args.p)
    results = []
    first_mismatch = None
    for p in primes:
        w = formula
        if w is None:  # elliptic entry: formula depends on a curve point count
            w = ex_elliptic_formula(elliptic_point_count(p))
        expected = expand(w, p, args.n_max + 1).coeffs
        # cross-check the engines when both enumerations fit the budget;
        # otherwise the affordable one alone carries the comparison
        both_ok = max(
            p ** (m.dim * args.n_max), p ** (m.d * args.n_max)
        ) <= args.budget
        method = "both" if both_ok else "auto"
        got = ask_series(m, p, args.n_max, method, args.budget).coefficients()
        per_n = []
        for n in range(args.n_max + 1):
            ok = expected[n] == got[n]
            per_n.append(
                {
                    "n": n,
                    "status": "match" if ok else "mismatch",
                    "expected": _rat(expected[n]),
                    "computed": _rat(got[n]),
                }
            )
            if not ok and first_mismatch is None:
                first_mismatch = {"p": p, "n": n}
        results.append({"p": p, "per_n": per_n})
    report = {
        "schema": SCHEMA,
        "command": "verify",
        "input": args.catalog or args.module,
        "n_max": args.n_max,
        "seed": args.seed,
        "status": "match" if first_mismatch is None else "mismatch",
        "first_mismatch": first_mismatch,
        "results": results,
    }
    _emit(report, args)
    return EXIT_OK if first_mismatch is None else EXIT_MISMATCH


def cmd_structure(args) -> int:
    m = _get_module(args)
    rep = structure_report(m, seed=args.seed)

    def cert_json(cert):
        out = {"status": cert.status}
        if cert.witness is not None:
            out["witness"] = list(cert.witness)
            out["witness_rank"] = cert.witness_rank
        if cert.excluded_primes:
            out["excluded_primes"] = list(cert.excluded_primes)
        if cert.reason:
            out["reason"] = cert.reason
        if cert.combinations:
            out["certified_degrees"] = sorted({i for (_, i) in cert.combinations})
        return out

    report = {
        "schema": SCHEMA,
        "command": "structure",
        "input": args.catalog or args.module,
        "seed": args.seed,
        "grk": rep.grk,
        "gor": rep.gor,
        "o_maximal": cert_json(rep.o_maximal),
        "k_minimal": cert_json(rep.k_minimal),
        "constant_rank": rep.constant_rank,
        "constant_orbit_dim": rep.constant_orbit_dim,
        "template_key": rep.template_key,
        "template": str(rep.template) if rep.template is not None else None,
        "results": [],
    }
    _emit(report, args)
    return EXIT_OK


def _get_algebra(args) -> NilpotentAlgebra:
    if getattr(args, "algebra", None):
        return catalog_algebra(args.algebra)
    if getattr(args, "module", None):
        with open(args.module, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not data.get("lie"):
            raise InputError('algebra documents must set "lie": true')
        return NilpotentAlgebra(module_from_json(data))
    raise InputError("provide --algebra KEY or --module FILE")


def cmd_cc(args) -> int:
    alg = _get_algebra(args)
    primes = _parse_primes(args.p)
    results = []
    internal_problem = False
    first_mismatch = None
    for p in primes:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            via = cc_via_ask(alg, p, args.n_max, args.budget)
            notes = [str(w.message) for w in caught]
        entry = {"p": p, "coefficients": [_rat(c) for c in via], "warnings": notes}
        if not args.skip_direct:
            try:
                direct = cc_coefficients_direct(alg, p, args.n_max, args.budget)
                entry["direct"] = direct
                if [Fraction(v) for v in direct] != via:
                    if notes:
                        entry["status"] = "hypotheses violated; counts differ"
                    else:
                        internal_problem = True
            except BudgetExceededError as exc:
                entry["direct"] = None
                entry["direct_skipped"] = str(exc)
        if args.algebra:
            try:
                table = closed_form(f"cc:{args.algebra}").formula
                expected = expand(table, p, args.n_max + 1).coeffs
                entry["table"] = [_rat(c) for c in expected]
                for n, (a, b) in enumerate(zip(expected, via)):
                    if a != b and first_mismatch is None:
                        first_mismatch = {"p": p, "n": n}
            except InputError:
                pass
        results.append(entry)
    report = {
        "schema": SCHEMA,
        "command": "cc",
        "input": args.algebra or args.module,
        "n_max": args.n_max,
        "seed": args.seed,
        "first_mismatch": first_mismatch,
        "results": results,
    }
    _emit(report, args)
    if internal_problem:
        return EXIT_INTERNAL
    return EXIT_OK if first_mismatch is None else EXIT_MISMATCH


def cmd_oc(args) -> int:
    primes = _parse_primes(args.p)
    results = []
    internal_problem = False
    if args.gl:
        groups = [(p, gl_generators(args.gl, p, max(args.n_max, 1))) for p in primes]
    elif args.neg1:
        g = GroupGenSet(1, (IntMatrix([[-1]]),), "neg1")
        groups = [(p, g) for p in primes]
    elif args.swap:
        g = GroupGenSet(2, (IntMatrix([[0, 1], [1, 0]]),), "swap")
        groups = [(p, g) for p in primes]
    elif args.group:
        g = load_group(args.group)
        groups = [(p, g) for p in primes]
    elif args.algebra:
        groups = None
    else:
        raise InputError("provide a group source (--group/--gl/--neg1/--swap/--algebra)")
    if groups is not None:
        for p, g in groups:
            counts = oc_coefficients(g, p, args.n_max, args.budget)
            results.append({"p": p, "orbits": counts, "label": g.label})
    else:
        alg = catalog_algebra(args.algebra)
        for p in primes:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                via = oc_via_ask(alg, p, args.n_max, args.budget)
                notes = [str(w.message) for w in caught]
            direct = oc_of_exp_group(alg, p, args.n_max, args.budget)
            entry = {
                "p": p,
                "orbits": direct,
                "coefficients": [_rat(c) for c in via],
                "warnings": notes,
            }
            if [Fraction(v) for v in direct] != via and not notes:
                internal_problem = True
            results.append(entry)
    report = {
        "schema": SCHEMA,
        "command": "oc",
        "n_max": args.n_max,
        "seed": args.seed,
        "results": results,
    }
    _emit(report, args)
    return EXIT_INTERNAL if internal_problem else EXIT_OK


def cmd_feqn(args) -> int:
    w = parse_rational(args.form)
    holds = functional_equation_check(w, args.d)
    report = {
        "schema": SCHEMA,
        "command": "feqn",
        "form": str(w),
        "d": args.d,
        "holds": holds,
        "results": [],
    }
    _emit(report, args)
    return EXIT_OK if holds else EXIT_MISMATCH


def cmd_catalog(args) -> int:
    keys = [args.key] if args.key else catalog_keys()
    entries = []
    for key in keys:
        e = closed_form(key)
        entries.append(
            {
                "key": e.key,
                "kind": e.kind,
                "formula": str(e.formula) if e.formula is not None else None,
                "module": e.module_key,
                "validity": e.validity,
                "tested_at": list(e.tested_at),
                "notes": e.notes,
            }
        )
    report = {
        "schema": SCHEMA,
        "command": "catalog",
        "results": entries,
    }
    _emit(report, args)
    return EXIT_OK


def cmd_brenti(args) -> int:
    poly = brenti_polynomial(args.n)
    report = {
        "schema": SCHEMA,
        "command": "brenti",
        "n": args.n,
        "polynomial": {f"{i},{j}": c for (i, j), c in sorted(poly.items())},
        "results": [],
    }
    if args.order:
        report["identity_order"] = args.order
        report["identity_holds"] = brenti_identity_check(args.n, args.order)
    _emit(report, args)
    if args.order and not report["identity_holds"]:
        return EXIT_MISMATCH
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="askzeta",
        description="Exact kernel-average zeta coefficients over Z/p^n",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, primes=True):
        sp.add_argument("--n-max", type=int, default=2)
        if primes:
            sp.add_argument("--p", type=str, default="3")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--output", type=str, default=None)
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")

    sp = sub.add_parser("ask", help="coefficient stream of a module")
    sp.add_argument("--catalog", type=str)
    sp.add_argument("--module", type=str)
    sp.add_argument("--method", choices=("auto", "average", "orbit", "both"), default="auto")
    common(sp)
    sp.set_defaults(func=cmd_ask)

    sp = sub.add_parser("verify", help="check coefficients against a closed form")
    sp.add_argument("--catalog", type=str)
    sp.add_argument("--module", type=str)
    sp.add_argument("--formula", type=str)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("structure", help="structural certificates and template")
    sp.add_argument("--catalog", type=str)
    sp.add_argument("--module", type=str)
    common(sp, primes=False)
    sp.set_defaults(func=cmd_structure)

    sp = sub.add_parser("cc", help="conjugacy class counts of a unipotent group")
    sp.add_argument("--algebra", type=str)
    sp.add_argument("--module", type=str)
    sp.add_argument("--skip-direct", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_cc)

    sp = sub.add_parser("oc", help="orbit counts of a linear group")
    sp.add_argument("--group", type=str)
    sp.add_argument("--algebra", type=str)
    sp.add_argument("--gl", type=int)
    sp.add_argument("--neg1", action="store_true")
    sp.add_argument("--swap", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_oc)

    sp = sub.add_parser("feqn", help="functional equation check for a formula")
    sp.add_argument("--form", type=str, required=True)
    sp.add_argument("--d", type=int, required=True)
    common(sp, primes=False)
    sp.set_defaults(func=cmd_feqn)

    sp = sub.add_parser("catalog", help="export the closed-form catalog")
    sp.add_argument("--key", type=str)
    common(sp, primes=False)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("brenti", help="signed-permutation polynomial and identity")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--order", type=int, default=0)
    common(sp, primes=False)
    sp.set_defaults(func=cmd_brenti)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AskZetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
