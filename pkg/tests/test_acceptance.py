"""Acceptance criteria 1-12, each with its time limit.

Golden words and edges below were produced by a brute-force oracle over
exact fractions and are frozen here, independent of the package code.
"""
import random
import time
from fractions import Fraction
from itertools import product

from conftest import ACCEPTANCE
from ratbase import Base, QValue, evaluate, in_value_set, represent_integer, represent_value
from ratbase.approximation import TOP, cut_approximation
from ratbase.blip import blip_scan, max_left_iteration, prefix_set
from ratbase.monoid import MonoidSpec, monoid_enumerate, monoid_language, threshold, translate_cover
from ratbase.transducers import build_converter, build_incrementer, run
from ratbase.tree import appendable, children, suffix_residue

B = Base(3, 2)

GOLDEN_WORDS = [
    "", "2", "21", "210", "212", "2101", "2120", "2122", "21011", "21200", "21202", "21221",
    "210110", "210112", "212001", "212020", "212022", "212211", "2101100", "2101102", "2101121",
    "2120010", "2120012", "2120201", "2120220", "2120222", "2122111", "21011000", "21011002",
    "21011021", "21011210", "21011212", "21200101", "21200120", "21200122", "21202011", "21202200",
    "21202202", "21202221", "21221110", "21221112",
]

# (state, input, output, next) for the A_5 -> A_3 converter
GOLDEN_CONVERTER = {
    (0, 0, 0, 0), (0, 1, 1, 0), (0, 2, 2, 0), (0, 3, 0, 1), (0, 4, 1, 1),
    (1, 0, 2, 0), (1, 1, 0, 1), (1, 2, 1, 1), (1, 3, 2, 1), (1, 4, 0, 2),
    (2, 0, 1, 1), (2, 1, 2, 1), (2, 2, 0, 2), (2, 3, 1, 2), (2, 4, 2, 2),
}
GOLDEN_CONVERTER_FINAL = {0: (), 1: (2,), 2: (2, 1)}

GOLDEN_CUTS = {
    2: {(0, 2, 1), (1, 1, TOP)} | {(TOP, a, TOP) for a in range(3)},
    5: {(0, 2, 1), (1, 1, 2), (2, 0, 3), (2, 2, 4), (3, 1, 5), (4, 0, 6), (4, 2, 7),
        (5, 1, TOP), (6, 0, TOP), (6, 2, TOP), (7, 1, TOP)} | {(TOP, a, TOP) for a in range(3)},
}


def frac_value(w, p=3, q=2) -> Fraction:
    return sum((Fraction(a, q) * Fraction(p, q) ** i for i, a in enumerate(reversed(w))), Fraction(0))


def as_fraction(x: QValue) -> Fraction:
    return Fraction(x.num, x.q ** x.exp)


def record(n, name, ok, detail, start, limit):
    elapsed = time.perf_counter() - start
    ok = bool(ok) and elapsed < limit
    ACCEPTANCE[n] = (name, ok, f"{detail} [{elapsed:.2f}s < {limit}s]")
    print(f"criterion {n} {'PASS' if ok else 'FAIL'}: {name}: {detail} ({elapsed:.2f}s)")
    assert ok, f"{name}: {detail} ({elapsed:.2f}s, limit {limit}s)"


def test_c01_tree_golden():
    t0 = time.perf_counter()
    words_ok = all(str(represent_integer(B, n)) == GOLDEN_WORDS[n] for n in range(41))
    index = {w: n for n, w in enumerate(GOLDEN_WORDS)}
    golden_edges = {(index[w[:-1]], int(w[-1]), n) for n, w in enumerate(GOLDEN_WORDS) if w}
    edges = {(n, a, c) for n in range(41) for a, c in children(B, n) if c <= 40}
    record(1, "tree golden", words_ok and edges == golden_edges and len(edges) == 40,
           f"41 words, {len(edges)} edges", t0, 1)


def test_c02_converter_golden():
    t0 = time.perf_counter()
    t = build_converter(B, 5)
    edges = {(s, a, t.eta[s, a], t.delta[s, a]) for s in t.states for a in range(5)}
    final = {s: tuple(t.final_out[s]) for s in t.states}
    ok = len(t.states) == 3 and edges == GOLDEN_CONVERTER and final == GOLDEN_CONVERTER_FINAL
    record(2, "converter golden", ok, f"{len(t.states)} states, {len(edges)} edges", t0, 1)


def test_c03_converter_values():
    t0 = time.perf_counter()
    t = build_converter(B, 5)
    bad = 0
    n = 0
    for length in range(7):
        for w in product(range(5), repeat=length):
            n += 1
            if as_fraction(evaluate(B, run(t, w))) != frac_value(w):
                bad += 1
    rng = random.Random(20260101)
    sampled = 0
    for length in (7, 8):
        for _ in range(20000):
            w = tuple(rng.randrange(5) for _ in range(length))
            sampled += 1
            if as_fraction(evaluate(B, run(t, w))) != frac_value(w):
                bad += 1
    record(3, "converter preserves value", bad == 0,
           f"{n} words |w|<=6 exhaustive, {sampled} sampled at 7-8, {bad} failures", t0, 30)


def test_c04_incrementer():
    t0 = time.perf_counter()
    bad = 0
    runs = 0
    for w in ("2", "21", "121"):
        t = build_incrementer(B, w)
        wv = frac_value(tuple(int(c) for c in w))
        for length in range(9):
            for u in product(range(3), repeat=length):
                runs += 1
                out = run(t, u)
                total = frac_value(u) + wv
                if as_fraction(evaluate(B, out)) != total:
                    bad += 1
                elif out.strip() != represent_value(B, QValue.from_fraction(total, 2)):
                    bad += 1
    record(4, "incrementer", bad == 0, f"{runs} runs, {bad} failures", t0, 30)


def test_c05_future_congruence():
    t0 = time.perf_counter()
    words = [u for k in range(5) for u in product(range(3), repeat=k)]
    app = {}
    oracle_bad = 0
    for n in range(201):
        rep = represent_integer(B, n).digits
        for u in words:
            app[n, u] = appendable(B, n, u)
            # independent: the value of <n>.u is an integer
            if app[n, u] != (frac_value(rep + u).denominator == 1):
                oracle_bad += 1
    violations = 0
    for u in words:
        mod = 2 ** len(u)
        ns = [n for n in range(201) if app[n, u]]
        # (i) joint appendability forces one class
        violations += len({n % mod for n in ns}) > 1
        # (ii) the class determines appendability
        for r in range(mod):
            violations += len({app[n, u] for n in range(r, 201, mod)}) > 1
    record(5, "future congruence", violations == 0 and oracle_bad == 0,
           f"n,m<=200, |u|<=4, {violations} violations, {oracle_bad} oracle mismatches", t0, 60)


def test_c06_suffix_classes():
    t0 = time.perf_counter()
    violations = 0
    for k in range(1, 5):
        mod = 3 ** k
        seen = {}
        for u in product(range(3), repeat=k):
            r, m = suffix_residue(B, u)
            if m != mod or not 0 <= r < mod:
                violations += 1
            seen.setdefault(r, []).append(u)
            # brute force: exactly the N in class r carry u as padded suffix
            for n in range(mod * 6):
                rep = represent_integer(B, n).digits
                rep = (0,) * max(0, k - len(rep)) + rep
                if (rep[len(rep) - k:] == u) != (n % mod == r):
                    violations += 1
        if sorted(seen) != list(range(mod)) or any(len(v) != 1 for v in seen.values()):
            violations += 1
    record(6, "suffix classes", violations == 0, f"k<=4, {violations} violations", t0, 60)


def test_c07_blip_exact():
    t0 = time.perf_counter()
    capped = []
    pairs = 0
    worst = 0
    for total in range(1, 5):
        for vlen in range(1, total + 1):
            for u in product(range(3), repeat=total - vlen):
                for v in product(range(3), repeat=vlen):
                    pairs += 1
                    i, cap_hit = max_left_iteration(B, u, v, cap=64)
                    if cap_hit:
                        capped.append((u, v))
                    # oracle: u v^i integral, u v^(i+1) not
                    if i >= 0:
                        assert frac_value(u + v * i).denominator == 1
                        assert frac_value(u + v * (i + 1)).denominator != 1 or (u + v * (i + 1))[0] == 0
                    worst = max(worst, i)
    special = max_left_iteration(B, "2", "1", cap=64)
    record(7, "left iteration exact", not capped and special == (1, False),
           f"{pairs} pairs uncapped, max_i<= {worst}, ('2','1') -> {special[0]}", t0, 60)


def test_c08_thresholds():
    t0 = time.perf_counter()
    got = [threshold(B, k)[0] for k in range(3)]
    ok = got == [0, 0, 2]
    for k, m in enumerate(got):
        if m > 0 and in_value_set(B, QValue(m - 1, k, 2)):
            ok = False
        if not all(in_value_set(B, QValue(n, k, 2)) for n in range(m, m + 200)):
            ok = False
    record(8, "thresholds", ok, f"m_0..m_2 = {got}", t0, 10)


GENERATOR_SETS = {
    "{1/2}": (QValue(1, 1, 2),),
    "{1, 25/8}": (QValue(1, 0, 2), QValue(25, 3, 2)),
    "{25/8}": (QValue(25, 3, 2),),
}


def brute_monoid(gens, bound):
    gens = [as_fraction(g) for g in gens]
    out = {Fraction(0)}
    frontier = [Fraction(0)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x + g
                if y <= bound and y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def test_c09_cover():
    t0 = time.perf_counter()
    bad = []
    count = 0
    for name, gens in GENERATOR_SETS.items():
        spec = MonoidSpec(B, gens)
        cover = translate_cover(spec)
        elems = monoid_enumerate(spec, 20)
        if {as_fraction(x) for x in elems} != brute_monoid(gens, 20):
            bad.append(f"{name} enumeration")
        for x in elems:
            count += 1
            if not cover.covers(x):
                bad.append(f"{name} {x}")
    record(9, "translate cover", not bad, f"{count} elements <= 20, uncovered {bad[:3]}", t0, 30)


def test_c10_monoid_blip():
    t0 = time.perf_counter()
    sizes = {}
    nonempty = []
    for name, gens in GENERATOR_SETS.items():
        lang = monoid_language(MonoidSpec(B, gens), 12)
        sizes[name] = len(lang)
        if blip_scan(prefix_set(lang), max_uv=4, min_i=3):
            nonempty.append(name)
    control = blip_scan(prefix_set([(1, 0) * 6]), max_uv=4, min_i=3)
    ok = not nonempty and bool(control) and all(sizes.values())
    record(10, "monoid scans", ok,
           f"languages {sizes}, non-empty {nonempty}, control pairs {len(control)}", t0, 120)


def test_c11_cut_golden():
    t0 = time.perf_counter()
    ok = True
    detail = []
    for k, edges in GOLDEN_CUTS.items():
        cut = cut_approximation(B, k)
        ok &= cut.tree_edges() == edges
        detail.append(f"k={k}: {len(cut.live_states)} live")
    ok &= [len(cut_approximation(B, k).live_states) for k in (2, 5)] == [3, 9]
    accepted = checked = 0
    for k in (2, 5):
        dfa = cut_approximation(B, k).dfa
        n = 0
        while True:
            rep = represent_integer(B, n).digits
            if len(rep) > 10:
                break
            if len(rep) >= k:
                checked += 1
                accepted += dfa.accepts(rep)
            n += 1
    ok &= accepted == checked
    detail.append(f"{accepted}/{checked} representations accepted")
    record(11, "cut automata", ok, ", ".join(detail), t0, 30)


def test_c12_oracle_equivalence():
    t0 = time.perf_counter()
    length = 10
    num_limit = -(-3 ** length // 2)  # a leading-zero-free word of length 11 is worth >= 3^10/2^11
    brute = set()
    for k in range(length + 1):
        for w in product(range(3), repeat=k):
            # value times 2^length, an integer since |w| <= length
            num = sum(a * 3 ** i * 2 ** (length - 1 - i) for i, a in enumerate(reversed(w)))
            if num < num_limit:
                brute.add(num)
    member = {n for n in range(num_limit) if in_value_set(B, QValue(n, length, 2))}
    record(12, "value set oracle", brute == member,
           f"{len(brute)} values below {num_limit}/2^{length}, symmetric difference {len(brute ^ member)}",
           t0, 60)
