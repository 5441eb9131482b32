"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the summary.
"""

import random
import time
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest
from sympy import isprime, primerange

from catalog import double_coset_catalog, random_instance
from cmnewton.cyclotomic import decomposition_and_inertia, split_conductor, unit_group
from cmnewton.groups import double_cosets, double_cosets_naive, random_subgroup, trivial_subgroup
from cmnewton.instance import read_spec, run_instance, scan_primes
from cmnewton.newton import ORDINARY, SPLIT, SUPERSINGULAR, evaluate
from cmnewton.oracle import CURVES, deuring_agreement

pytestmark = pytest.mark.acceptance

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
HALF = Fraction(1, 2)


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[acceptance {number}] {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip())
        assert ok, f"criterion {number} failed: {detail}"
    return emit


def test_c1_zeta8_induced_type(report):
    spec = read_spec(FIXTURES / "example1_zeta8.json")
    start = time.perf_counter()
    res = scan_primes(spec, 1000)
    elapsed = time.perf_counter() - start
    wrong = []
    for p, _, _, _, label, _ in res.rows:
        expected = SUPERSINGULAR if p == 2 or p % 4 == 3 else ORDINARY
        if label != expected:
            wrong.append(p)
    ok = not wrong and len(res.rows) == len(list(primerange(2, 1001))) and elapsed < 1.0
    report(1, "Q(zeta8) induced type, p <= 1000", ok,
           f"primes={len(res.rows)} wrong={wrong[:5]} time={elapsed:.3f}s (<1s)")


def test_c2_d8_example(report):
    ss_doc, _ = run_instance(read_spec(FIXTURES / "example2_d8.json"))
    ord_doc, _ = run_instance(read_spec(FIXTURES / "example2_d8_ordinary.json"))
    ss, od = ss_doc["results"][0], ord_doc["results"][0]

    def multiset(res):
        out = {}
        for b in res["slopes"]:
            key = Fraction(b["slope"])
            out[key] = out.get(key, 0) + b["multiplicity"]
        return out

    ok = (
        multiset(ss) == {HALF: 4}
        and ss["classification"] == SUPERSINGULAR
        and [v["behavior"] for v in ss["splitting"]["places"]] == [SPLIT]
        and multiset(od) == {Fraction(1): 2, Fraction(0): 2}
        and od["classification"] == ORDINARY
    )
    report(2, "D8 example, D=<xy> and D=<xy^3>", ok,
           f"<xy>: {ss['slope_summary']} {ss['classification']}; "
           f"<xy^3>: {od['slope_summary']} {od['classification']}")


def test_c3_deuring_oracle(report):
    start = time.perf_counter()
    details, ok = [], True
    for key in ("i", "zeta3"):
        curve = CURVES[key]
        rep = deuring_agreement(curve, 1000)
        good = [p for p in primerange(5, 1001) if p not in curve.bad_primes]
        ok &= not rep.mismatches and [r[0] for r in rep.rows] == good
        details.append(f"{key}: {len(rep.rows)} primes, {len(rep.mismatches)} mismatches")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 5.0
    report(3, "point-count oracle agreement, 5 <= p <= 1000", ok,
           "; ".join(details) + f" time={elapsed:.3f}s (<5s)")


def _violations(fld, t, pc):
    ev = evaluate(t, pc)
    poly, bad = ev.polygon, []
    if poly.height != 2 * fld.g or poly.dimension != fld.g:
        bad.append("mass")
    ms = dict(poly.slope_multiset())
    if any(ms.get(1 - s) != m for s, m in ms.items()):
        bad.append("symmetry")
    for v in ev.splitting.places:
        if len(v.above) == 2:
            w1, w2 = v.above
            if w1.slope + w2.slope != 1 or w1.local_degree != w2.local_degree:
                bad.append("pairing")
        elif v.above[0].slope != HALF:
            bad.append("unique-prime")
    bad += [name for name, r in ev.criteria.results if not r.satisfied]
    return bad


def test_c4_property_suite(report):
    rng = random.Random(20240601)
    n, failures = 600, []
    for _ in range(n):
        fld, t, pc = random_instance(rng)
        bad = _violations(fld, t, pc)
        if bad:
            failures.append((fld.G.name, bad))
    report(4, "randomized invariants and implications", not failures,
           f"instances={n} violations={len(failures)} {failures[:3]}")


def test_c5_double_coset_oracle(report):
    rng = random.Random(77)
    groups = double_coset_catalog()
    discrepancies = 0
    for _ in range(200):
        G = rng.choice(groups)
        D, H = random_subgroup(G, rng), random_subgroup(G, rng)
        if double_cosets(G, D, H) != double_cosets_naive(G, D, H):
            discrepancies += 1
    report(5, "double_cosets vs naive oracle", discrepancies == 0,
           f"instances=200 discrepancies={discrepancies}")


def _phi(n):
    return sum(1 for r in range(1, n + 1) if gcd(r, n) == 1)


def _order(p, m):
    k, x = 1, p % m
    while x != 1 % m:
        x, k = x * p % m, k + 1
    return k


def test_c6_cyclotomic_decomposition(report):
    rng = random.Random(6)
    primes = [p for p in range(2, 1001) if isprime(p)]
    violations = []
    for _ in range(100):
        n, p = rng.randint(3, 200), rng.choice(primes)
        U = unit_group(n)
        D, I = decomposition_and_inertia(U, p)
        pa, m = split_conductor(n, p)
        above = len(double_cosets(U.group, D, trivial_subgroup(U.group)))
        if D.order != _phi(pa) * _order(p, m) or not I.issubset(D) or above != _phi(n) // D.order:
            violations.append((n, p))
    report(6, "cyclotomic decomposition/inertia", not violations,
           f"instances=100 violations={violations[:5]}")


def test_c7_density(report):
    spec = read_spec(FIXTURES / "example1_zeta8.json")
    start = time.perf_counter()
    res = scan_primes(spec, 10_000)
    elapsed = time.perf_counter() - start
    frac = res.densities()[SUPERSINGULAR]
    ok = abs(frac - 0.5) <= 0.03 and elapsed < 2.0
    report(7, "supersingular density, p <= 10^4", ok,
           f"fraction={frac:.4f} (|x-1/2|<=0.03) time={elapsed:.3f}s (<2s)")
