"""Acceptance criteria 1-7, each printing a single PASS/FAIL line."""
import io
import itertools
import json
import random
import re
import time
from contextlib import redirect_stdout
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings

from ast_strategies import formulas
from oagspine.cli import main
from oagspine.distal import distal_verdict
from oagspine.laws import LAWS, default_roster, witness_case
from oagspine.lexgroup import EMPTY, FULL, Cut, Element, coset_member
from oagspine.specfile import parse_spec
from oagspine.spine import in_sqbracket, quotient_size_mod, s_val, spine_set
from oagspine.syn import parse_formula, print_formula

README = Path(__file__).resolve().parent.parent / "README.md"


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")

    return emit


def cli_jsonl(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["--format", "jsonl"] + argv)
    return code, [json.loads(line) for line in buf.getvalue().splitlines()]


# 1 -------------------------------------------------------------------------


def test_criterion_1_xi_spine(report):
    start = time.perf_counter()
    results = {}
    for n in (2, 3):
        code, (rec,) = cli_jsonl(["spine", "@roster", "xi", "--prime", str(n)])
        results[n] = (code, rec["order_type"], [e["size"] for e in rec["entries"]])
    elapsed = time.perf_counter() - start
    ok = all(
        r == (0, "(-inf) + (a) + (b) + (c)", [str(n), str(n * n), "inf"]) for n, r in results.items()
    ) and elapsed < 1.0
    report(1, ok, f"xi rib sizes {({n: r[2] for n, r in results.items()})} in {elapsed:.3f}s")
    assert ok


# 2 -------------------------------------------------------------------------


def brute_zz_mod2():
    """Classes of [0,4)^2 under coordinatewise congruence mod 2 (raw tuples)."""
    reps = []
    for v in itertools.product(range(4), repeat=2):
        if not any(all((x - y) % 2 == 0 for x, y in zip(v, r)) for r in reps):
            reps.append(v)
    return len(reps)


def test_criterion_2_product_formula(groups, report):
    start = time.perf_counter()
    zz = groups["ZZ"]
    q = quotient_size_mod(zz, 2)
    sizes = [e.size for e in spine_set(zz, 2).singles()]
    brute = brute_zz_mod2()
    elapsed = time.perf_counter() - start
    ok = q == 4 == brute and sizes == [2, 2] and elapsed < 1.0
    report(2, ok, f"|ZZ/2ZZ| = {q}, brute force {brute}, ribs {sizes} in {elapsed:.3f}s")
    assert ok


# 3 -------------------------------------------------------------------------

VERDICT_SPEC = """
group Z { segment a : Z; }
group Q { segment a : Q; }
group ZQ { segment a : Z; segment b : Q; }
group multrat { segment a : MultRationals; }
group omega_growing { segment g : omega growing; }
group omega_const { segment head : Z; segment tail : omega Z; }
"""

VERDICTS = {
    "Z": (True, None),
    "Q": (True, None),
    "ZQ": (True, None),
    "multrat": (False, "InfiniteRib"),
    "omega_growing": (False, "UnboundedFamily"),
    "omega_const": (True, None),
}


def test_criterion_3_distal_table(report):
    start = time.perf_counter()
    got = {}
    for name, g in parse_spec(VERDICT_SPEC).items():
        v = distal_verdict(g)
        got[name] = (v.distal, v.witness.kind if v.witness else None)
    elapsed = time.perf_counter() - start
    ok = got == VERDICTS and elapsed < 1.0
    report(3, ok, f"{sum(got[k] == VERDICTS[k] for k in VERDICTS)}/{len(VERDICTS)} verdicts in {elapsed:.3f}s")
    assert ok


# 4 -------------------------------------------------------------------------


def test_criterion_4_law_suite(report):
    start = time.perf_counter()
    code, records = cli_jsonl(["verify", "--seed", "42", "--iters", "500"])
    elapsed = time.perf_counter() - start
    fails = [r for r in records if r["status"] == "fail"]
    skips = [r for r in records if r["status"] == "skip"]
    laws_run = {r["law"] for r in records}
    groups = {r["group"] for r in records}
    skips_ok = all(
        r["law"] == "product_formula" and r["group"].startswith("omega") and r.get("reason") for r in skips
    )
    ok = code == 0 and not fails and len(laws_run) >= 18 and len(groups) == 8 and skips_ok and elapsed < 120
    report(
        4, ok,
        f"{len(laws_run)} laws x {len(groups)} groups: {len(records) - len(skips) - len(fails)} pass, "
        f"{len(fails)} fail, {len(skips)} skip in {elapsed:.1f}s",
    )
    assert ok


# 5 -------------------------------------------------------------------------


def test_criterion_5_witness_equivalence(report):
    gen = LAWS["unique_witness"].gen
    total = agree = 0
    for entry in default_roster():
        rng = random.Random(f"witness:{entry.name}")
        for _ in range(300):
            case = gen(entry, rng)
            total += 1
            agree += witness_case(entry, case["pred"], case["params"], case["a"])
    ok = agree == total == 300 * 8
    report(5, ok, f"{agree}/{total} witness cases agree with the existential scan")
    assert ok


# 6 -------------------------------------------------------------------------

SMALL = ("Z", "Q", "ZZ", "QZ", "multrat")
BOUND = 6
MULT_PRIMES = (2, 3, 5)


def raw_sample(kind, rng):
    if kind == "Z":
        return rng.randint(-BOUND, BOUND)
    if kind == "Q":
        return Fraction(rng.randint(-BOUND, BOUND), rng.randint(1, BOUND))
    return math_prod(Fraction(p) ** rng.randint(-BOUND, BOUND) for p in MULT_PRIMES)


def math_prod(xs):
    out = Fraction(1)
    for x in xs:
        out *= x
    return out


def root_box(kind):
    """Every candidate n-th part of a sampled coordinate, for n <= BOUND."""
    if kind == "Z":
        return range(-BOUND, BOUND + 1)
    if kind == "Q":
        return {Fraction(j, e) for j in range(-BOUND, BOUND + 1) for e in range(1, BOUND * BOUND + 1)}
    return [math_prod(Fraction(p) ** e for p, e in zip(MULT_PRIMES, es))
            for es in itertools.product(range(-BOUND, BOUND + 1), repeat=3)]


def raw_scale(kind, n, g):
    return n * g if kind in ("Z", "Q") else g ** n


def identity(kind):
    return 0 if kind in ("Z", "Q") else Fraction(1)


class EnumerationOracle:
    """a in H + nG decided by looking a's projection up in the enumerated set n * box."""

    def __init__(self, schema):
        self.schema = schema
        self.positions = [schema.position_at(i) for i in range(len(schema.segments))]
        self.kinds = [schema.block_at(p).kind for p in self.positions]
        self.cuts = [Cut(p) for p in self.positions] + [FULL]
        self._cache = {}

    def multiples(self, n, j):
        key = (n, j)
        if key not in self._cache:
            boxes = [[raw_scale(k, n, g) for g in root_box(k)] for k in self.kinds[j:]]
            self._cache[key] = set(itertools.product(*boxes))
        return self._cache[key]

    def coords(self, a):
        return [a.get(p) if a.get(p) is not None else identity(k) for p, k in zip(self.positions, self.kinds)]

    def member(self, a, H, n):
        if H.position is None:
            return True
        j = H.position.seg
        return tuple(self.coords(a)[j:]) in self.multiples(n, j)

    def s_val(self, a, n):
        failing = [H for H in self.cuts if not self.member(a, H, n)]
        return max(failing) if failing else EMPTY

    def sqbracket(self, a, H, n):
        return all(self.member(a, c, n) for c in self.cuts if c > H)


def test_criterion_6_oracle_equivalence(groups, report):
    totals = {"s_val": 0, "coset_member": 0, "in_sqbracket": 0}
    agree = dict.fromkeys(totals, 0)
    for name in SMALL:
        schema = groups[name]
        oracle = EnumerationOracle(schema)
        rng = random.Random(f"oracle:{name}")
        for _ in range(500):
            entries = {
                p: raw_sample(k, rng) for p, k in zip(oracle.positions, oracle.kinds) if rng.random() < 0.75
            }
            a = Element(schema, entries)
            n = rng.randint(2, BOUND)
            H = rng.choice(oracle.cuts)
            H_sq = rng.choice(oracle.cuts + [EMPTY])
            for key, ours, theirs in (
                ("s_val", s_val(n, a), oracle.s_val(a, n)),
                ("coset_member", coset_member(a, H, n), oracle.member(a, H, n)),
                ("in_sqbracket", in_sqbracket(a, H_sq, n), oracle.sqbracket(a, H_sq, n)),
            ):
                totals[key] += 1
                agree[key] += ours == theirs
    ok = agree == totals
    report(6, ok, ", ".join(f"{k} {agree[k]}/{totals[k]}" for k in totals))
    assert ok


# 7 -------------------------------------------------------------------------


def readme_rows():
    text = README.read_text(encoding="utf-8")
    block = text.split("<!-- formulas:begin -->")[1].split("<!-- formulas:end -->")[0]
    rows = []
    for line in block.strip().splitlines()[2:]:
        cells = [c.strip().strip("`") for c in line.strip().strip("|").split("|")]
        group, formula, bindings, value = cells
        lets = [b.strip() for b in re.split(r";\s*(?=\w+=)", bindings)]
        rows.append((group, formula, lets, value == "true"))
    return rows


roundtrip_count = {"n": 0}


@settings(max_examples=500, deadline=None, derandomize=True)
@given(formulas)
def _roundtrip(f):
    roundtrip_count["n"] += 1
    assert parse_formula(print_formula(f)) == f


def test_criterion_7_parser_contract(report):
    roundtrip_count["n"] = 0
    try:
        _roundtrip()
        round_ok = True
    except AssertionError:
        round_ok = False
    rows = readme_rows()
    matched = 0
    for group, formula, lets, expected in rows:
        argv = ["eval", "@roster", group, "--formula", formula]
        for b in lets:
            argv += ["--let", b]
        code, recs = cli_jsonl(argv)
        matched += code == 0 and recs[0]["value"] is expected
    ok = round_ok and roundtrip_count["n"] >= 500 and rows and matched == len(rows)
    report(
        7, ok,
        f"round trip on {roundtrip_count['n']} ASTs {'ok' if round_ok else 'FAILED'}; "
        f"README formulas {matched}/{len(rows)}",
    )
    assert ok
