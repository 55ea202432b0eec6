"""Exit criteria for the package. Each test reports one PASS/FAIL line."""

import csv
import io
import json
import math
import random
import time
from fractions import Fraction

from laced.analysis import asymptotic_row, avg_sensitivity_exact, weight_exact
from laced.brute import brute_avg_sensitivity, brute_count_distinct_tuples, brute_weight
from laced.cli import run
from laced.counting import ResidueMultiset, count_k_subsets_mod_p
from laced.modmath import LacedParams
from laced.sieve import (
    bias_bound,
    character_sieve_count,
    cycle_index_identity_check,
    enumerate_types,
    fourier_bias,
    sieve_distinct_count,
    type_count,
)

SIEVE_SEED = 42
SIEVE_TRIALS = 120


def sieve_instances():
    rng = random.Random(SIEVE_SEED)
    out = []
    for _ in range(SIEVE_TRIALS):
        p = rng.choice([5, 7, 11, 13])
        size = rng.randint(1, min(8, p))
        D = ResidueMultiset(p, tuple(sorted(rng.sample(range(p), size))))
        out.append((D, rng.randint(1, 5)))
    return out


INSTANCES = sieve_instances()


def test_c01_weight_oracle(criterion):
    start = time.perf_counter()
    bad = [n for n in range(1, 17) if weight_exact(LacedParams.for_n(n)) != brute_weight(LacedParams.for_n(n))]
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    criterion(1, "weight DP == brute force, n in [1,16]", ok, f"mismatches={bad} time={elapsed:.1f}s")
    assert ok


def test_c02_sensitivity_oracle(criterion):
    start = time.perf_counter()
    bad = []
    for n in range(1, 17):
        params = LacedParams.for_n(n)
        if avg_sensitivity_exact(params).average != brute_avg_sensitivity(params).average:
            bad.append(n)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 300
    criterion(2, "average sensitivity exact == brute force, n in [1,16]", ok, f"mismatches={bad} time={elapsed:.1f}s")
    assert ok


def test_c03_three_way_sieve(criterion):
    start = time.perf_counter()
    failures = []
    for D, k in INSTANCES:
        dp = count_k_subsets_mod_p(D, k)
        for b in range(D.p):
            a = sieve_distinct_count(D, b, k)
            if not a == brute_count_distinct_tuples(D, b, k) == math.factorial(k) * dp[b]:
                failures.append((D.elements, b, k))
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 60
    criterion(3, f"sieve == brute == k!*DP on {len(INSTANCES)} instances, all b", ok, f"failures={len(failures)} time={elapsed:.1f}s")
    assert ok


def test_c04_cycle_index(criterion):
    start = time.perf_counter()
    bad = []
    for k in range(1, 13):
        if sum(type_count(t) for t in enumerate_types(k)) != math.factorial(k):
            bad.append(("classes", k))
        for q in range(0, 11):
            lhs, rhs = cycle_index_identity_check(k, q)
            if lhs != rhs:
                bad.append((k, q))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 5
    criterion(4, "cycle index identity k<=12, q<=10; class sizes sum to k!", ok, f"failures={bad} time={elapsed:.2f}s")
    assert ok


def bound_spot_checks():
    rng = random.Random(SIEVE_SEED + 1)
    out = []
    for _ in range(30):
        p = rng.choice([17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101])
        D = ResidueMultiset(p, tuple(sorted(rng.sample(range(p), rng.randint(1, min(40, p))))))
        out.append((D, rng.randint(1, 6)))
    return out


def test_c05_bias_bound(criterion):
    start = time.perf_counter()
    violations = []
    for D, k in INSTANCES + bound_spot_checks():
        for b in range(D.p):
            rep = bias_bound(D, b, k)
            if not rep.holds:
                violations.append((D.p, D.elements, b, k, rep.k_below_p))
    elapsed = time.perf_counter() - start
    ok = not violations and elapsed < 60
    outside = sum(1 for v in violations if not v[-1])
    criterion(
        5,
        "bias lower bound holds on every instance",
        ok,
        f"violations={len(violations)} (with k>=p: {outside}) time={elapsed:.1f}s",
    )
    assert ok, violations[:5]


def test_c06_complement_bias(criterion):
    rng = random.Random(SIEVE_SEED + 2)
    primes = [q for q in range(11, 102) if all(q % d for d in range(2, int(q**0.5) + 1))]
    worst = -math.inf
    violations = 0
    for _ in range(50):
        p = rng.choice(primes)
        c = rng.randint(0, 10)
        A = set(rng.sample(range(p), c))
        phi = fourier_bias(ResidueMultiset(p, tuple(a for a in range(p) if a not in A))).phi
        worst = max(worst, phi - c)
        violations += phi > c + 1e-9
    ok = violations == 0
    criterion(6, "bias of Z_p minus c residues <= c (50 sets)", ok, f"violations={violations} max(phi-c)={worst:.3g}")
    assert ok


def test_c07_weight_balance(criterion):
    start = time.perf_counter()
    ratios = {}
    for n in (32, 64, 128, 256):
        w = weight_exact(LacedParams.for_n(n))
        ratios[n] = float(Fraction(w, 2 ** (n - 1)))
    elapsed = time.perf_counter() - start
    ok = all(0.98 <= r <= 1.02 for r in ratios.values()) and elapsed < 120
    detail = " ".join(f"n={n}:{r:.12g}" for n, r in ratios.items())
    criterion(7, "wt/2^(n-1) in [0.98, 1.02]", ok, f"{detail} time={elapsed:.1f}s")
    assert ok


def test_c08_sensitivity_half(criterion):
    start = time.perf_counter()
    rows = {n: asymptotic_row(n) for n in (64, 128)}
    elapsed = time.perf_counter() - start
    dev = {n: abs(r.sens_ratio - 0.5) for n, r in rows.items()}
    ok = (
        all(0.45 <= r.sens_ratio <= 0.55 for r in rows.values())
        and dev[128] <= dev[64] + 0.01
        and elapsed < 600
    )
    detail = " ".join(f"n={n}:{r.sens_ratio:.12g}" for n, r in rows.items())
    criterion(8, "avg sensitivity / n in [0.45, 0.55], deviation shrinking", ok, f"{detail} time={elapsed:.1f}s")
    assert ok


def test_c09_character_backend(criterion):
    worst = 0.0
    failures = 0
    for D, k in INSTANCES:
        for b in range(D.p):
            err = abs(character_sieve_count(D, b, k) - sieve_distinct_count(D, b, k))
            worst = max(worst, err)
            failures += err >= 0.5
    ok = failures == 0
    criterion(9, "character expansion rounds to exact sieve", ok, f"failures={failures} max_err={worst:.2e}")
    assert ok


def _capture(capsys, argv):
    code = run(argv)
    out, _ = capsys.readouterr()
    return code, out


def test_c10_cli_determinism(criterion, capsys):
    sieve_argv = ["sieve-verify", "--p", "7", "--size", "5", "--k", "3", "--trials", "10", "--seed", "42", "--verbose", "--format", "json"]
    table_argv = ["table", "--n", "8", "16", "32", "--format", "csv"]
    runs = [(_capture(capsys, sieve_argv), _capture(capsys, table_argv)) for _ in range(2)]
    identical = runs[0] == runs[1]
    exit_ok = all(code == 0 for pair in runs for code, _ in pair)

    _, j = _capture(capsys, ["avgsens", "--n", "12", "--method", "exact", "--format", "json"])
    _, c = _capture(capsys, ["avgsens", "--n", "12", "--method", "exact", "--format", "csv"])
    json_vals = json.loads(j)["results"]
    csv_vals = next(csv.DictReader(io.StringIO(c)))
    same_values = json_vals == csv_vals and json_vals["total_flips"] == str(brute_avg_sensitivity(LacedParams.for_n(12)).total_flips)

    ok = identical and exit_ok and same_values
    criterion(10, "CLI output byte-identical across runs; JSON/CSV values equal", ok, f"identical={identical} exit_ok={exit_ok} json==csv={same_values}")
    assert ok
