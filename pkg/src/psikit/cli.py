"""Command-line front end: batch evaluation, the Mersenne test battery,
identity suites, the period catalogue, and a deterministic reproduction run.

Output is newline-delimited JSON with fixed field order by default; every
subcommand also renders as text or CSV.  Exit codes: 0 success, 1 a
mathematical check failed, 2 usage error, 3 capacity exceeded.  Reports are
byte-deterministic for a fixed seed; wall-clock timings are zeroed unless
--timing is given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import bridges as bridges_mod
from . import eightlevels, mersenne, powersums
from .errors import CapacityError
from .psicore import (
    PsiParams,
    psi_mod_ladder,
    psi_recurrence,
    psi_symbolic,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


def _parse_scalar(text: str) -> Fraction | int:
    """Accept integers and exact fractions like ``-3`` or ``3/2``."""
    try:
        if "/" in text:
            return Fraction(text)
        return int(text)
    except ValueError as err:
        raise ValueError(f"not an exact scalar: {text!r}") from err


def _parse_index(text: str) -> int:
    """Accept ``37634``, ``2^61`` and ``3*2^61`` for astronomically large n."""
    text = text.strip()
    mult = 1
    if "*" in text:
        head, _, text = text.partition("*")
        mult = int(head)
    if "^" in text:
        base, _, exp = text.partition("^")
        value = mult * int(base) ** int(exp)
    else:
        value = mult * int(text)
    if value < 0:
        raise ValueError("index must be >= 0")
    return value


def _worker_count() -> int:
    env = os.environ.get("PSI_THREADS", "")
    if env.strip():
        return max(1, int(env))
    return 4


# -- record rendering --------------------------------------------------------


def _flatten(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "|".join(_flatten(v) for v in value)
    if value is None:
        return ""
    return str(value)


def render_records(records: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        for rec in records:
            out.write(json.dumps(rec, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        if not records:
            return
        writer = csv.writer(out, lineterminator="\n")
        header = list(records[0].keys())
        writer.writerow(header)
        for rec in records:
            writer.writerow([_flatten(rec.get(k)) for k in header])
    else:
        for rec in records:
            out.write(
                " ".join(f"{k}={_flatten(v)}" for k, v in rec.items()) + "\n"
            )


def _records_ok(records: list[dict]) -> bool:
    for rec in records:
        if rec.get("ok") is False or rec.get("matches_catalogue") is False:
            return False
    return True


# -- subcommand implementations ------------------------------------------------


def _cmd_psi(args) -> list[dict]:
    if args.psi_command == "eval":
        params = PsiParams(_parse_scalar(args.a), _parse_scalar(args.b), args.mod)
        n = _parse_index(args.n)
        if params.modulus is not None:
            value = psi_mod_ladder(params.a, params.b, n, params.modulus)
        else:
            if n > 100_000:
                raise CapacityError("exact evaluation capped at n <= 100000; use --mod")
            value = psi_recurrence(params.a, params.b, n)
        return [
            {
                "command": "psi-eval",
                "a": str(params.a),
                "b": str(params.b),
                "n": str(n),
                "mod": str(params.modulus) if params.modulus is not None else None,
                "value": str(value),
            }
        ]
    if args.psi_command == "poly":
        poly = psi_symbolic(args.n)
        return [{"command": "psi-poly", "n": args.n, "poly": str(poly)}]
    # ladder
    a = int(args.a)
    b = int(args.b)
    n = _parse_index(args.n)
    value = psi_mod_ladder(a, b, n, args.mod)
    return [
        {
            "command": "psi-ladder",
            "a": str(a),
            "b": str(b),
            "n": str(n),
            "mod": str(args.mod),
            "value": str(value),
        }
    ]


def _cmd_coeff(args) -> list[dict]:
    records = []
    for n in range(args.nmin, args.n + 1):
        table = eightlevels.coeff_table(n)
        records.append(
            {"command": "coeff-table", "n": n, "entries": table.as_strings()}
        )
    return records


_VERIFY_SUITES = {
    "eightlevels": lambda n, seed: eightlevels.verify_expansion(n, seed=seed),
    "powersums": lambda n, seed: powersums.verify_special_case(n),
    "theta": lambda n, seed: eightlevels.theta_sum_check(n),
    "fundamental": lambda n, seed: (
        eightlevels.first_fundamental_check(n)
        and eightlevels.second_fundamental_check(n)
        and eightlevels.scaling_check(n)
        and eightlevels.power_sum_representation_check(n)
    ),
}


def _cmd_verify(args) -> list[dict]:
    suite = _VERIFY_SUITES[args.suite]
    start = 2 if args.suite == "powersums" else 1
    records = []
    for n in range(start, args.nmax + 1):
        ok = suite(n, args.seed)
        records.append({"command": "verify", "suite": args.suite, "n": n, "ok": ok})
    return records


def _battery_kwargs(args, method: str) -> dict:
    kwargs = {}
    if method == "mu":
        kwargs["mu_max"] = args.mu_max
    if method == "sum":
        kwargs["mu"] = args.mu
        if args.max_p is not None:
            kwargs["max_p"] = args.max_p
    if method in ("necessary", "ab") and args.max_p is not None:
        kwargs["max_p"] = args.max_p
    return kwargs


def _cmd_mersenne(args) -> list[dict]:
    timing = args.timing
    if args.mersenne_command == "test":
        report = mersenne.run_method(
            args.p, args.method, **_battery_kwargs(args, args.method)
        )
        return [report.to_dict(with_timing=timing)]
    # scan
    if args.method not in ("ll", "psi"):
        raise ValueError("scan supports methods ll and psi")
    lower = max(args.pmin, 3 if args.method == "ll" else 5)
    exponents = [p for p in range(lower, args.pmax + 1) if mersenne.is_prime_small(p)]
    runner = mersenne.METHODS[args.method]
    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        reports = list(pool.map(runner, exponents))
    return [rep.to_dict(with_timing=timing) for rep in reports]


def _cmd_bridges(args) -> list[dict]:
    registry = bridges_mod.default_bridges()
    if args.bridges_command == "list":
        return [
            {"command": "bridge-spec", **spec.describe()} for spec in registry
        ]
    if args.bridges_command == "check":
        records = []
        for spec in registry:
            failures = spec.check(args.nmax)
            records.append(
                {
                    "command": "bridge",
                    "name": spec.name,
                    "nmax": args.nmax,
                    "ok": not failures,
                    "failures": [str(n) for n in failures],
                }
            )
        return records
    # period
    labels = [args.label] if args.label else sorted(bridges_mod.PERIOD_CATALOGUE)
    records = []
    for label in labels:
        entry = bridges_mod.catalogue_entry(label)
        result = bridges_mod.detect_period(entry["a"], entry["b"])
        matches = (
            result.period == entry["period"]
            and list(result.table) == list(entry["table"])
        )
        records.append(
            {
                "command": "period",
                "label": label,
                "a": str(entry["a"]),
                "b": str(entry["b"]),
                "period": result.period,
                "table": [str(v) for v in result.table],
                "matches_catalogue": matches,
            }
        )
    return records


_TAU_VARIANTS = ("quarter", "half", "root2")


def _cmd_identities(args) -> list[dict]:
    variants = _TAU_VARIANTS if args.variant == "all" else (args.variant,)
    records = []
    for variant in variants:
        value = mersenne.tau_identity_value(args.l, variant)
        ok = mersenne.tau_identity_check(args.l, variant)
        records.append(
            {
                "command": "tau",
                "l": args.l,
                "variant": variant,
                "value": str(value),
                "ok": ok,
            }
        )
    return records


def _repro_jobs(seed: int):
    """Fixed desk-scale evidence base regenerated by ``repro all``."""

    def scan():
        records = []
        for method in ("ll", "psi"):
            for p in range(5, 32):
                if mersenne.is_prime_small(p):
                    records.append(mersenne.METHODS[method](p).to_dict())
        return records

    def battery():
        records = []
        for p in (5, 7, 11, 13):
            records.append(mersenne.ll_classic(p).to_dict())
            records.append(mersenne.psi_test(p).to_dict())
            records.append(mersenne.mu_pattern_test(p, mu_max=12).to_dict())
            for mu in (1, 2):
                records.append(mersenne.enhanced_sum_test(p, mu=mu).to_dict())
            records.append(mersenne.necessary_condition(p).to_dict())
            records.append(mersenne.composite_criterion(p).to_dict())
            records.append(mersenne.ab_ratio_test(p).to_dict())
        return records

    def coeff_tables():
        return [
            {
                "command": "coeff-table",
                "n": n,
                "entries": eightlevels.coeff_table(n).as_strings(),
            }
            for n in range(1, 13)
        ]

    def basis_rows():
        return [
            {
                "command": "powersum-basis",
                "n": n,
                "coeffs": [str(c) for c in eightlevels.expand_powersum_basis(n)],
            }
            for n in range(1, 25)
        ]

    def verify():
        records = []
        for n in range(1, 13):
            records.append(
                {
                    "command": "verify",
                    "suite": "eightlevels",
                    "n": n,
                    "ok": eightlevels.verify_expansion(n, seed=seed),
                }
            )
        for n in range(1, 11):
            records.append(
                {
                    "command": "verify",
                    "suite": "theta",
                    "n": n,
                    "ok": eightlevels.theta_sum_check(n),
                }
            )
        for n in range(1, 13):
            records.append(
                {
                    "command": "verify",
                    "suite": "fundamental",
                    "n": n,
                    "ok": _VERIFY_SUITES["fundamental"](n, seed),
                }
            )
        for n in range(2, 9):
            records.append(
                {
                    "command": "verify",
                    "suite": "powersums",
                    "n": n,
                    "ok": powersums.verify_special_case(n),
                }
            )
        return records

    def bridge_records():
        records = []
        for spec in bridges_mod.default_bridges():
            failures = spec.check(40)
            records.append(
                {
                    "command": "bridge",
                    "name": spec.name,
                    "nmax": 40,
                    "ok": not failures,
                    "failures": [str(n) for n in failures],
                }
            )
        return records

    def periods():
        records = []
        for label in sorted(bridges_mod.PERIOD_CATALOGUE):
            entry = bridges_mod.catalogue_entry(label)
            result = bridges_mod.detect_period(entry["a"], entry["b"])
            records.append(
                {
                    "command": "period",
                    "label": label,
                    "a": str(entry["a"]),
                    "b": str(entry["b"]),
                    "period": result.period,
                    "table": [str(v) for v in result.table],
                    "matches_catalogue": result.period == entry["period"]
                    and list(result.table) == list(entry["table"]),
                }
            )
        return records

    def tau():
        records = []
        for l in range(3, 8):
            for variant in _TAU_VARIANTS:
                records.append(
                    {
                        "command": "tau",
                        "l": l,
                        "variant": variant,
                        "value": str(mersenne.tau_identity_value(l, variant)),
                        "ok": mersenne.tau_identity_check(l, variant),
                    }
                )
        return records

    return {
        "scan.ndjson": scan,
        "battery.ndjson": battery,
        "coeff_tables.ndjson": coeff_tables,
        "powersum_basis.ndjson": basis_rows,
        "verify.ndjson": verify,
        "bridges.ndjson": bridge_records,
        "periods.ndjson": periods,
        "tau.ndjson": tau,
    }


def _cmd_repro(args) -> list[dict]:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    summary = []
    for filename, job in _repro_jobs(args.seed).items():
        records = job()
        buf = io.StringIO()
        render_records(records, "json", buf)
        (outdir / filename).write_text(buf.getvalue())
        summary.append(
            {
                "command": "repro",
                "file": str(outdir / filename),
                "records": len(records),
                "ok": _records_ok(records),
            }
        )
    return summary


# -- parser ---------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    """Global flags, accepted both before and after the subcommand."""
    parser.add_argument(
        "--format",
        choices=("json", "text", "csv"),
        default=argparse.SUPPRESS,
        help="output rendering (default: json, newline-delimited)",
    )
    parser.add_argument(
        "--seed", type=int, default=argparse.SUPPRESS, help="seed for randomized checks"
    )
    parser.add_argument(
        "--timing",
        action="store_true",
        default=argparse.SUPPRESS,
        help="include wall-clock timings (breaks byte determinism)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="psikit",
        description="Exact toolkit for the psi sequence, its quadratic-form "
        "expansions, and the Mersenne test battery.",
    )
    _add_common(parser)
    parser.set_defaults(format="json", seed=0, timing=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def leaf(group, name: str, help_: str) -> argparse.ArgumentParser:
        p = group.add_parser(name, help=help_)
        _add_common(p)
        return p

    p_psi = sub.add_parser("psi", help="evaluate the sequence")
    psi_sub = p_psi.add_subparsers(dest="psi_command", required=True)
    p_eval = leaf(psi_sub, "eval", "exact or modular value")
    p_eval.add_argument("--a", required=True)
    p_eval.add_argument("--b", required=True)
    p_eval.add_argument("--n", required=True)
    p_eval.add_argument("--mod", type=int)
    p_poly = leaf(psi_sub, "poly", "canonical polynomial in (a, b)")
    p_poly.add_argument("--n", type=int, required=True)
    p_ladder = leaf(psi_sub, "ladder", "modular value by doubling ladder")
    p_ladder.add_argument("--a", required=True)
    p_ladder.add_argument("--b", required=True)
    p_ladder.add_argument("--n", required=True, help="index; accepts 2^k and m*2^k")
    p_ladder.add_argument("--mod", type=int, required=True)

    p_coeff = sub.add_parser("coeff", help="expansion coefficient tables")
    coeff_sub = p_coeff.add_subparsers(dest="coeff_command", required=True)
    p_table = leaf(coeff_sub, "table", "full table for one index")
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--nmin", type=int, default=None, help="emit a range of tables")

    p_verify = sub.add_parser("verify", help="identity suites")
    _add_common(p_verify)
    p_verify.add_argument("suite", choices=sorted(_VERIFY_SUITES))
    p_verify.add_argument("--nmax", type=int, default=None)

    p_mers = sub.add_parser("mersenne", help="primality test battery")
    mers_sub = p_mers.add_subparsers(dest="mersenne_command", required=True)
    p_test = leaf(mers_sub, "test", "one method at one exponent")
    p_test.add_argument("--p", type=int, required=True)
    p_test.add_argument("--method", choices=sorted(mersenne.METHODS), required=True)
    p_test.add_argument("--mu", type=int, default=1)
    p_test.add_argument("--mu-max", type=int, default=8, dest="mu_max")
    p_test.add_argument(
        "--max-p",
        type=int,
        default=None,
        dest="max_p",
        help="override the capacity cap of sum/necessary/ab",
    )
    p_scan = leaf(mers_sub, "scan", "all prime exponents up to a bound")
    p_scan.add_argument("--pmax", type=int, required=True)
    p_scan.add_argument("--pmin", type=int, default=5)
    p_scan.add_argument("--method", choices=("ll", "psi"), default="psi")

    p_bridges = sub.add_parser("bridges", help="classical-sequence bridges")
    bridges_sub = p_bridges.add_subparsers(dest="bridges_command", required=True)
    p_check = leaf(bridges_sub, "check", "run every registered bridge")
    p_check.add_argument("--nmax", type=int, default=40)
    leaf(bridges_sub, "list", "dump the registry")
    p_period = leaf(bridges_sub, "period", "catalogued period detection")
    p_period.add_argument("--label", default=None)

    p_ident = sub.add_parser("identities", help="combinatorial identities")
    ident_sub = p_ident.add_subparsers(dest="identities_command", required=True)
    p_tau = leaf(ident_sub, "tau", "power-of-two factorial-product sums")
    p_tau.add_argument("--l", type=int, required=True)
    p_tau.add_argument(
        "--variant", choices=_TAU_VARIANTS + ("all",), default="all"
    )

    p_repro = sub.add_parser("repro", help="regenerate the evidence base")
    repro_sub = p_repro.add_subparsers(dest="repro_command", required=True)
    p_all = leaf(repro_sub, "all", "write every desk-scale table")
    p_all.add_argument("--outdir", default="docs/results")

    return parser


_DEFAULT_NMAX = {"eightlevels": 12, "powersums": 8, "theta": 10, "fundamental": 12}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    try:
        if args.command == "psi":
            records = _cmd_psi(args)
        elif args.command == "coeff":
            if args.nmin is None:
                args.nmin = args.n
            records = _cmd_coeff(args)
        elif args.command == "verify":
            if args.nmax is None:
                args.nmax = _DEFAULT_NMAX[args.suite]
            records = _cmd_verify(args)
        elif args.command == "mersenne":
            records = _cmd_mersenne(args)
        elif args.command == "bridges":
            records = _cmd_bridges(args)
        elif args.command == "identities":
            records = _cmd_identities(args)
        else:
            records = _cmd_repro(args)
    except CapacityError as exc:
        render_records(
            [{"command": args.command, "error": "capacity", "reason": str(exc)}],
            args.format,
            sys.stdout,
        )
        return EXIT_CAPACITY
    except (ValueError, KeyError) as exc:
        render_records(
            [{"command": args.command, "error": "usage", "reason": str(exc)}],
            args.format,
            sys.stdout,
        )
        return EXIT_USAGE

    render_records(records, args.format, sys.stdout)
    return EXIT_OK if _records_ok(records) else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
