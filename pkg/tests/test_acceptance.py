"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Each check uses an oracle that does not share code with the part under
test: the third-party validator for verdicts and witnesses, exhaustive
word listing and path counting for automata, and plain scans of multiples
for numbers.
"""

import itertools
import math
import random
import time
from decimal import Decimal
from fractions import Fraction

import pytest

from jswitness.algebra import Betw, MulOf, NotMulOf, XBetw, validate_doc, validate_in_env
from jswitness.json_model import INF, NEG_INF, from_python
from jswitness.normalizer import stage_documents
from jswitness.patterns import automata, enumerate_words
from jswitness.pipeline import check_containment, check_equivalence, solve
from jswitness.translator import translate
from oracles import ReferenceValidator, ValueFactory, containment_cases, handwritten_cases, probe_values

D = Decimal
RUNS: dict = {}  # suite name -> list of runs, shared by criteria 3, 4, 5 and 7


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nCRITERION {n} {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail

    return emit


def timed(f, *args):
    start = time.perf_counter()
    out = f(*args)
    return out, time.perf_counter() - start


def _handwritten_runs():
    if "hw" not in RUNS:
        RUNS["hw"] = []
        for name, schema, verdict in handwritten_cases():
            res, secs = timed(solve, schema)
            RUNS["hw"].append((name, res, secs, verdict, schema))
    return RUNS["hw"]


def _containment_runs():
    if "ct" not in RUNS:
        RUNS["ct"] = []
        for name, left, right, included in containment_cases():
            res, secs = timed(check_containment, left, right)
            RUNS["ct"].append((name, res, secs, included, (left, right)))
    return RUNS["ct"]


# 1 -------------------------------------------------------------------------


def test_criterion_1_forbidden_key_equivalence(report):
    a = from_python({"type": "object", "properties": {"foo": False}})
    b = from_python({"not": {"required": ["foo"]}})
    (ab, ba), secs = timed(check_equivalence, a, b)
    ok = ab.included and ba.included and secs < 1.0
    report(1, ok, f"equivalent={ab.included and ba.included} in {secs:.3f}s (limit 1s)")


# 2 -------------------------------------------------------------------------


def test_criterion_2_single_member_pattern_witness(report):
    raw = {
        "required": ["abz"],
        "not": {"patternProperties": {"^a": {"$ref": "#/$defs/var1"}}},
        "maxProperties": 1,
        "patternProperties": {"z$": {"$ref": "#/$defs/var2"}},
        "$defs": {"var1": {"type": "number", "multipleOf": 10}, "var2": {"type": "number", "multipleOf": 5}},
    }
    schema = from_python(raw)
    res, secs = timed(solve, schema)
    w = res.witness
    ok = (
        res.satisfiable
        and res.validated
        and isinstance(w, dict)
        and list(w) == ["abz"]
        and isinstance(w["abz"], Decimal)
        and w["abz"] % 5 == 0
        and w["abz"] % 10 != 0
        and ReferenceValidator(schema).is_valid(w)
        and secs < 5.0
    )
    report(2, ok, f"witness={w} validated={res.validated} in {secs:.3f}s (limit 5s)")


# 3 -------------------------------------------------------------------------


def test_criterion_3_handwritten_suite(report):
    runs = _handwritten_runs()
    wrong, logical, slow = [], [], []
    for label, res, secs, verdict, schema in runs:
        if res.satisfiable != (verdict == "sat"):
            wrong.append(label)
        if res.satisfiable and not (res.validated and ReferenceValidator(schema).is_valid(res.witness)):
            logical.append(label)
        if secs >= 5.0:
            slow.append(label)
    ok = len(runs) >= 50 and not wrong and not logical and not slow
    worst = max(secs for _, _, secs, _, _ in runs)
    report(
        3,
        ok,
        f"{len(runs)} schemas, {len(runs) - len(wrong)} correct, {len(logical)} logical errors, "
        f"{len(slow)} over 5s (slowest {worst:.3f}s)",
    )


# 4 -------------------------------------------------------------------------


def test_criterion_4_containment(report):
    runs = _containment_runs()
    wrong, bad_cex = [], []
    for label, res, _, included, (left, right) in runs:
        if res.included != included:
            wrong.append(label)
        if not res.included:
            j = res.counterexample
            if not (res.validated and ReferenceValidator(left).is_valid(j) and not ReferenceValidator(right).is_valid(j)):
                bad_cex.append(label)
    ok = len(runs) >= 30 and not wrong and not bad_cex
    report(4, ok, f"{len(runs)} pairs, {len(runs) - len(wrong)} correct, {len(bad_cex)} invalid counterexamples")


# 5 -------------------------------------------------------------------------


def test_criterion_5_unsat_soundness(report):
    found = []
    checked = 0
    for label, res, _, verdict, schema in _handwritten_runs():
        if res.satisfiable:
            continue
        v = ReferenceValidator(schema)
        for x in ValueFactory(schema, seed=5).sample(10_000, 4):
            if v.is_valid(x):
                found.append((label, x))
                break
        checked += 1
    for label, res, _, included, (left, right) in _containment_runs():
        if not res.included:
            continue
        vl, vr = ReferenceValidator(left), ReferenceValidator(right)
        for x in ValueFactory([left, right], seed=5).sample(10_000, 4):
            if vl.is_valid(x) and not vr.is_valid(x):
                found.append((label, x))
                break
        checked += 1
    report(5, not found, f"{checked} unsat verdicts x 10000 fuzz values, witnesses found: {found[:3]}")


# 6 -------------------------------------------------------------------------


def test_criterion_6_stage_preservation(report):
    schemas = [(n, s) for n, s, _ in handwritten_cases()]
    for n, left, right, _ in containment_cases():
        schemas += [(n + ":left", left), (n + ":right", right)]
    disagreements = []
    probes = 0
    for name, schema in schemas:
        doc = translate(schema)
        stages = stage_documents(doc)
        v = ReferenceValidator(schema)
        for j in probe_values(schema, 200, seed=6):
            expected = v.is_valid(j)
            probes += 1
            if validate_doc(j, doc) != expected:
                disagreements.append((name, "translate", j))
            for stage, d in stages.items():
                if validate_doc(j, d) != expected:
                    disagreements.append((name, stage, j))
    report(6, not disagreements, f"{len(schemas)} schemas, {probes} probes, {len(disagreements)} disagreements")


# 7 -------------------------------------------------------------------------


def test_criterion_7_pass_bound(report):
    over = []
    runs = 0
    for label, res, *_ in _handwritten_runs() + _containment_runs():
        s = res if hasattr(res, "pass_count") else res.solve
        runs += 1
        if s.pass_count > s.variables + 1:
            over.append((label, s.pass_count, s.variables))
    report(7, not over, f"{runs} runs, {len(over)} exceed |Vars|+1")


# 8 -------------------------------------------------------------------------


def random_dfa(rng: random.Random):
    """A complete DFA over {a, b, c} with at most six states, sink included."""
    n = rng.randint(1, 5)
    sink = n
    delta = [{c: rng.choice(range(n + 1)) for c in "abc"} for _ in range(n)] + [{c: sink for c in "abc"}]
    accept = {s for s in range(n) if rng.random() < 0.4}
    # keep the reachable part, numbered in discovery order from state 0
    order = {0: 0}
    queue = [0]
    for s in queue:
        for c in "abc":
            t = delta[s][c]
            if t not in order:
                order[t] = len(order)
                queue.append(t)
    dead = None
    trans = [None] * len(order)
    for s, i in order.items():
        row = []
        cut = [(0, ord("a") - 1, None), (ord("a"), ord("a"), delta[s]["a"]), (ord("b"), ord("b"), delta[s]["b"]),
               (ord("c"), ord("c"), delta[s]["c"]), (ord("c") + 1, automata.MAX_CODEPOINT, None)]
        for lo, hi, t in cut:
            row.append((lo, hi, "dead" if t is None else order[t]))
        trans[i] = row
    if any(t == "dead" for row in trans for _, _, t in row):
        dead = len(trans)
        trans.append([(0, automata.MAX_CODEPOINT, dead)])
    trans = [[(lo, hi, dead if t == "dead" else t) for lo, hi, t in row] for row in trans]
    return automata.Dfa(trans, {order[s] for s in accept if s in order}), delta, accept


def words_by_bfs(delta, accept, max_len):
    """Shortlex listing of accepted words over {a, b, c}, from the transition table."""
    out = []
    for n in range(max_len + 1):
        for w in itertools.product("abc", repeat=n):
            s = 0
            for c in w:
                s = delta[s][c]
            if s in accept:
                out.append("".join(w))
    return out


def count_words(delta, accept, length):
    """Number of accepted words of the given length, by counting paths."""
    counts = {0: 1}
    for _ in range(length):
        nxt = {}
        for s, k in counts.items():
            for c in "abc":
                nxt[delta[s][c]] = nxt.get(delta[s][c], 0) + k
        counts = nxt
    return sum(k for s, k in counts.items() if s in accept)


def test_criterion_8_enumeration(report):
    rng = random.Random(8)
    mismatches = []
    impossible = 0
    for trial in range(100):
        d, delta, accept = random_dfa(rng)
        size = len(delta)
        listed = words_by_bfs(delta, accept, size - 1)
        for i in range(1, 6):
            got = enumerate_words(d, i)
            if got is None:
                impossible += 1
                # pumping bound: a language with a word of length in [n, 2n)
                # is infinite, and a finite one has all words shorter than n
                long_words = sum(count_words(delta, accept, k) for k in range(size, 2 * size))
                if long_words or len(listed) >= i:
                    mismatches.append((trial, i, "impossible", len(listed)))
            else:
                need = max(len(w) for w in got)
                expected = words_by_bfs(delta, accept, need)[:i]
                if got != expected:
                    mismatches.append((trial, i, got, expected))
    report(8, not mismatches, f"100 DFAs x i=1..5, {impossible} impossible verdicts, mismatches: {mismatches[:3]}")


# 9 -------------------------------------------------------------------------


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p**0.5) + 1))


def _lcm_by_search(qs):
    """Smallest positive common multiple of the rationals ``qs``, by scanning multiples of the first."""
    k = 1
    while True:
        x = qs[0] * k
        if all((x / q).denominator == 1 for q in qs):
            return x
        k += 1


def _random_group(rng: random.Random):
    def dec():
        return D(rng.randint(-200, 200)) / 10

    def pos():
        return D(rng.choice([1, 2, 3, 4, 5, 6, 8, 10, 12, 15, 25])) / rng.choice([1, 1, 2, 10])

    itos = []
    for _ in range(rng.randint(0, 2)):
        lo = dec() if rng.random() < 0.7 else NEG_INF
        hi = dec() if rng.random() < 0.7 else INF
        itos.append(rng.choice([Betw, XBetw])(lo, hi))
    itos += [MulOf(pos()) for _ in range(rng.randint(0, 2))]
    itos += [NotMulOf(pos()) for _ in range(rng.randint(0, 3))]
    return itos


def _interval(itos):
    lo, lo_open, hi, hi_open = None, False, None, False
    for a in itos:
        if isinstance(a, (Betw, XBetw)):
            opened = isinstance(a, XBetw)
            if a.lo != NEG_INF:
                x = Fraction(a.lo)
                if lo is None or x > lo or (x == lo and opened):
                    lo, lo_open = x, opened
            if a.hi != INF:
                x = Fraction(a.hi)
                if hi is None or x < hi or (x == hi and opened):
                    hi, hi_open = x, opened
    return lo, lo_open, hi, hi_open


def _confirm_none(itos):
    """Independent evidence that no number satisfies ``itos``; returns a reason or None."""
    lo, lo_open, hi, hi_open = _interval(itos)
    if lo is not None and hi is not None and (lo > hi or (lo == hi and (lo_open or hi_open))):
        return "empty interval"
    mods = [Fraction(a.q) for a in itos if isinstance(a, MulOf)]
    excl = [Fraction(a.q) for a in itos if isinstance(a, NotMulOf)]
    if not mods:
        if lo is not None and hi is not None and lo == hi:
            return "point excluded" if any((lo / n).denominator == 1 for n in excl) else None
        return None
    m = _lcm_by_search(mods)
    if any((m / n).denominator == 1 for n in excl):
        return "every multiple excluded"
    if lo is not None and hi is not None:
        k = math.ceil(lo / m)
        while k * m <= hi:
            x = k * m
            inside = (x > lo or (x == lo and not lo_open)) and (x < hi or (x == hi and not hi_open))
            if inside and not any((x / n).denominator == 1 for n in excl):
                return None  # a witness exists
            k += 1
        return "no admissible multiple in range"
    return None


def test_criterion_9_numbers(report):
    from jswitness.numbers import gen_number

    rng = random.Random(9)
    problems = []
    nones = case5 = 0
    for trial in range(200):
        itos = _random_group(rng)
        x = gen_number(itos)
        if x is None:
            nones += 1
            if _confirm_none(itos) is None:
                problems.append((trial, itos, "none without evidence"))
            continue
        if not all(validate_in_env(a, x, {}) for a in itos):
            problems.append((trial, itos, x))
            continue
        lo, _, hi, _ = _interval(itos)
        mods = [Fraction(a.q) for a in itos if isinstance(a, MulOf)]
        excl = [Fraction(a.q) for a in itos if isinstance(a, NotMulOf)]
        if mods and excl and (lo is None or hi is None):
            # unbounded side with exclusions: the output is ±p·M for a prime p
            case5 += 1
            p = Fraction(x) / _lcm_by_search(mods)
            if p.denominator != 1 or not _is_prime(abs(p.numerator)):
                problems.append((trial, itos, x, "not a prime multiple of the modulus"))
    report(9, not problems, f"200 groups, {nones} none verdicts confirmed, {case5} unbounded-with-exclusions outputs, problems: {problems[:3]}")
