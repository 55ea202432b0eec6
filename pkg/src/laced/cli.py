"""Command-line interface.

Every subcommand produces a list of records ``{command, parameters, results}``.
Result values are rendered as strings: exact integers in decimal, rationals
as ``num/den``, floats with 12 significant digits. ``--format json`` writes
one JSON object per line, ``--format csv`` writes a header row plus one row
per record, ``--format text`` writes ``key: value`` lines.

Exit codes: 0 success, 1 domain or usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import analysis, brute, counting, sieve
from .core import eval_f, format_bits, parse_bits, s_of
from .errors import DomainError
from .modmath import LacedParams, is_prime

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_VERIFY = 2
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    def __init__(self, records):
        super().__init__("verification failed")
        self.records = records


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def render(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return format(value, ".12g")
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return " ".join(render(v) for v in value)
    return str(value)


def record(command: str, parameters: dict, results: dict) -> dict:
    return {
        "command": command,
        "parameters": {k: render(v) for k, v in parameters.items()},
        "results": {k: render(v) for k, v in results.items()},
    }


def emit(records: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "".join(json.dumps(r, sort_keys=False) + "\n" for r in records)
    if fmt == "csv":
        if not records:
            return ""
        buf = io.StringIO()
        fields = list(records[0]["results"])
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for r in records:
            writer.writerow(r["results"])
        return buf.getvalue()
    lines = []
    for r in records:
        params = " ".join(f"{k}={v}" for k, v in r["parameters"].items())
        lines.append(f"[{r['command']}] {params}".rstrip())
        lines.extend(f"  {k}: {v}" for k, v in r["results"].items())
    return "\n".join(lines) + "\n"


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise DomainError(f"expected a comma-separated integer list, got {text!r}") from None


def _residue_set(args) -> counting.ResidueMultiset:
    if args.set is not None:
        if args.p is None:
            raise DomainError("--set needs --p")
        return counting.ResidueMultiset.of(args.p, _int_list(args.set), reduce=True)
    if args.n is None:
        raise DomainError("give either --set with --p, or --n for the laced weight set")
    params = LacedParams.for_n(args.n)
    if args.p is not None and args.p != params.p:
        raise DomainError(f"--p {args.p} disagrees with the least prime >= n ({params.p})")
    return counting.laced_weight_multiset(params, _int_list(args.exclude or ""))


# subcommands ---------------------------------------------------------------


def cmd_eval(args) -> list[dict]:
    params = LacedParams.for_n(args.n)
    X = parse_bits(args.x)
    s = s_of(params, X)
    return [
        record(
            "eval",
            {"n": params.n, "p": params.p, "x": format_bits(X)},
            {"s": s, "f": eval_f(params, X), "sensitivity": brute.brute_sensitivity_at(params, X)},
        )
    ]


def cmd_weight(args) -> list[dict]:
    params = LacedParams.for_n(args.n)
    if args.method == "brute":
        w = brute.brute_weight(params, args.limit)
    else:
        w = analysis.weight_exact(params)
    return [
        record(
            "weight",
            {"n": params.n, "p": params.p, "method": args.method},
            {"weight": w, "weight_ratio": float(Fraction(w, 1 << (params.n - 1)))},
        )
    ]


def cmd_avgsens(args) -> list[dict]:
    params = LacedParams.for_n(args.n)
    if args.method == "brute":
        rep = brute.brute_avg_sensitivity(params, args.limit)
    else:
        rep = analysis.avg_sensitivity_exact(params)
    results = {
        "total_flips": rep.total_flips,
        "average": rep.average,
        "ratio": float(rep.average / params.n),
    }
    if rep.maximum is not None:
        results["maximum"] = rep.maximum
    return [record("avgsens", {"n": params.n, "p": params.p, "method": args.method}, results)]


def cmd_bias(args) -> list[dict]:
    D = _residue_set(args)
    rep = sieve.fourier_bias(D)
    results = {"size": len(D), "phi": rep.phi, "witness_t": rep.witness_t}
    if len(D) >= 1:
        smooth = sieve.is_smooth(D, args.ambient or D.p, args.constant)
        results.update(smooth=smooth.smooth, smooth_ratio=smooth.ratio)
    return [record("bias", {"p": D.p, "elements": list(D.elements)}, results)]


def cmd_bound(args) -> list[dict]:
    if args.kind == "complement":
        if args.p is None or args.c is None:
            raise DomainError("complement bound needs --p and --c")
        if not is_prime(args.p):
            raise DomainError(f"--p must be prime, got {args.p}")
        value = sieve.complement_bound(args.p, args.c, args.k)
        return [
            record(
                "bound",
                {"kind": "complement", "p": args.p, "c": args.c, "k": args.k},
                {"rhs": value, "rhs_float": float(value)},
            )
        ]
    D = _residue_set(args)
    rep = sieve.bias_bound(D, args.b, args.k)
    rec = record(
        "bound",
        {"kind": "bias", "p": D.p, "elements": list(D.elements), "b": args.b, "k": args.k},
        {"exact_over_kfact": rep.exact_over_kfact, "rhs": rep.rhs, "phi": rep.phi, "holds": rep.holds},
    )
    if not rep.holds:
        raise VerificationFailure([rec])
    return [rec]


def sieve_trial(D: counting.ResidueMultiset, k: int) -> dict:
    """Compare every counting route for one residue set, over all targets b."""
    mismatches = []
    bound_violations = []
    char_failures = []
    kfact = math.factorial(k)
    dp = counting.count_k_subsets_mod_p(D, k)
    for b in range(D.p):
        exact = sieve.sieve_distinct_count(D, b, k)
        by_brute = brute.brute_count_distinct_tuples(D, b, k)
        by_dp = kfact * dp[b]
        if not exact == by_brute == by_dp:
            mismatches.append(b)
        if abs(sieve.character_sieve_count(D, b, k) - exact) >= 0.5:
            char_failures.append(b)
        if not sieve.bias_bound(D, b, k).holds:
            bound_violations.append(b)
    return {
        "agree": not mismatches,
        "mismatch_b": mismatches,
        "character_ok": not char_failures,
        "character_fail_b": char_failures,
        "bound_ok": not bound_violations,
        "bound_fail_b": bound_violations,
    }


def cmd_sieve_verify(args) -> list[dict]:
    if not is_prime(args.p):
        raise DomainError(f"--p must be prime, got {args.p}")
    if not 0 <= args.size <= args.p:
        raise DomainError(f"--size must lie in [0, p], got {args.size}")
    if args.k < 1:
        raise DomainError(f"--k must be >= 1, got {args.k}")
    rng = random.Random(args.seed)
    records = []
    ok = 0
    for trial in range(args.trials):
        D = counting.ResidueMultiset(args.p, tuple(sorted(rng.sample(range(args.p), args.size))))
        res = sieve_trial(D, args.k)
        passed = res["agree"] and res["character_ok"] and res["bound_ok"]
        ok += passed
        records.append(
            record(
                "sieve-verify",
                {"p": args.p, "k": args.k, "seed": args.seed, "trial": trial},
                {"elements": list(D.elements), "passed": passed, **res},
            )
        )
    summary = record(
        "sieve-verify",
        {"p": args.p, "size": args.size, "k": args.k, "trials": args.trials, "seed": args.seed},
        {"agreements": ok, "trials": args.trials, "passed": ok == args.trials},
    )
    out = (records if args.verbose else []) + [summary]
    if ok != args.trials:
        raise VerificationFailure(out)
    return out


def cmd_identity(args) -> list[dict]:
    records = []
    failed = False
    for k in range(1, args.k_max + 1):
        class_total = sum(sieve.type_count(t) for t in sieve.enumerate_types(k))
        q_ok = True
        for q in range(0, args.q_max + 1):
            lhs, rhs = sieve.cycle_index_identity_check(k, q)
            q_ok &= lhs == rhs
        passed = q_ok and class_total == math.factorial(k)
        failed |= not passed
        records.append(
            record(
                "identity",
                {"k": k, "q_max": args.q_max},
                {"k": k, "types": len(sieve.enumerate_types(k)), "class_total": class_total, "cycle_index_ok": q_ok, "passed": passed},
            )
        )
    if failed:
        raise VerificationFailure(records)
    return records


def cmd_table(args) -> list[dict]:
    ns = args.n or [16, 32, 64, 128]
    rows = analysis.asymptotic_table(ns, with_sensitivity=not args.no_sens)
    records = []
    for row in rows:
        records.append(
            record(
                "table",
                {"n": row.n},
                {
                    "n": row.n,
                    "p": row.p,
                    "weight": row.weight,
                    "weight_ratio": row.weight_ratio,
                    "sens_total_flips": row.sens_total,
                    "sens_avg": row.sens_avg,
                    "sens_ratio": row.sens_ratio,
                },
            )
        )
        if row.error:
            print(f"table: n={row.n} failed: {row.error}", file=sys.stderr)
    return records


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="laced", description="Exact analysis of the laced Boolean function.")
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--out", help="write records to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="s(X) and f(X) for one input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", required=True, help="bit string, leftmost character is x_1")
    p.set_defaults(func=cmd_eval)

    for name, methods, func in (
        ("weight", ["dp", "brute"], cmd_weight),
        ("avgsens", ["exact", "brute"], cmd_avgsens),
    ):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--method", choices=methods, default=methods[0])
        p.add_argument("--limit", type=int, default=brute.DEFAULT_LIMIT, help="brute-force size cap")
        p.set_defaults(func=func)

    def residue_args(p):
        p.add_argument("--p", type=int)
        p.add_argument("--set", help="comma-separated residues")
        p.add_argument("--n", type=int, help="use the laced weight set {1..n} mod p")
        p.add_argument("--exclude", help="coordinates dropped from the laced weight set")

    p = sub.add_parser("bias", parents=[common], help="Fourier bias of a residue set")
    residue_args(p)
    p.add_argument("--ambient", type=int, help="ambient size for the smoothness test (default p)")
    p.add_argument("--constant", type=float, default=1.0)
    p.set_defaults(func=cmd_bias)

    p = sub.add_parser("bound", parents=[common], help="lower bounds on distinct-tuple counts")
    residue_args(p)
    p.add_argument("--kind", choices=["bias", "complement"], default="bias")
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=int, help="number of removed residues (complement bound)")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("sieve-verify", parents=[common], help="randomized agreement of counting routes")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--verbose", action="store_true", help="emit one record per trial")
    p.set_defaults(func=cmd_sieve_verify)

    p = sub.add_parser("identity", parents=[common], help="cycle-type counting identities")
    p.add_argument("--k-max", type=int, default=12)
    p.add_argument("--q-max", type=int, default=10)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("table", parents=[common], help="weight and sensitivity ratios over n")
    p.add_argument("--n", type=int, nargs="+")
    p.add_argument("--no-sens", action="store_true", help="skip the sensitivity columns")
    p.set_defaults(func=cmd_table)
    return parser


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_DOMAIN
    try:
        records = args.func(args)
    except VerificationFailure as exc:
        _write(emit(exc.records, args.format), args.out)
        print(f"{args.command}: verification failed", file=sys.stderr)
        return EXIT_VERIFY
    except (DomainError, ValueError) as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _write(emit(records, args.format), args.out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
