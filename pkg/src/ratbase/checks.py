"""Invariant suites run by ``ratbase check``.

Each check returns ``(passed, detail)``.  Checks tied to the worked base 3/2
(tree, converter and cut automata reference data) are skipped for other
bases.
"""
from __future__ import annotations

import math
import time
from itertools import product
from typing import Callable

from .approximation import TOP, approximation_checks, cut_approximation, refinement_holds
from .automata import contains, finite_language_dfa, prefix_irs_test
from .blip import (
    EXAMPLE_KINDS,
    blip_scan,
    generate_example_language,
    incrementer_image_iteration,
    max_left_iteration,
    prefix_set,
)
from .monoid import MonoidSpec, guarantee_bound, monoid_enumerate, monoid_language, threshold, translate_cover
from .numeration import Base, DigitWord, QValue, evaluate, in_value_set, represent_integer, represent_value
from .transducers import build_converter, build_incrementer, export_transducer, run, transducer_from_json
from .tree import appendable, children, enumerate_tree, is_in_L, separating_suffix, suffix_residue

# Reference data for base 3/2: tree edges (parent, digit, child) for children up to 40.
L32_TREE_EDGES = (
    (0, 2, 1), (1, 1, 2), (2, 0, 3), (2, 2, 4), (3, 1, 5), (4, 0, 6), (4, 2, 7), (5, 1, 8),
    (6, 0, 9), (6, 2, 10), (7, 1, 11), (8, 0, 12), (8, 2, 13), (9, 1, 14), (10, 0, 15),
    (10, 2, 16), (11, 1, 17), (12, 0, 18), (12, 2, 19), (13, 1, 20), (14, 0, 21), (14, 2, 22),
    (15, 1, 23), (16, 0, 24), (16, 2, 25), (17, 1, 26), (18, 0, 27), (18, 2, 28), (19, 1, 29),
    (20, 0, 30), (20, 2, 31), (21, 1, 32), (22, 0, 33), (22, 2, 34), (23, 1, 35), (24, 0, 36),
    (24, 2, 37), (25, 1, 38), (26, 0, 39), (26, 2, 40),
)

# Converter from A_5 to A_3 in base 3/2: (state, input, output, next state).
L32_CONVERTER_5_EDGES = (
    (0, 0, 0, 0), (0, 1, 1, 0), (0, 2, 2, 0), (0, 3, 0, 1), (0, 4, 1, 1),
    (1, 0, 2, 0), (1, 1, 0, 1), (1, 2, 1, 1), (1, 3, 2, 1), (1, 4, 0, 2),
    (2, 0, 1, 1), (2, 1, 2, 1), (2, 2, 0, 2), (2, 3, 1, 2), (2, 4, 2, 2),
)
L32_CONVERTER_5_FINAL = {0: (), 1: (2,), 2: (2, 1)}

# Cut automata for base 3/2 at depths 2 and 5: live edges (src, digit, dst).
L32_CUT_EDGES = {
    2: {(0, 2, 1), (1, 1, TOP)} | {(TOP, a, TOP) for a in range(3)},
    5: {(0, 2, 1), (1, 1, 2), (2, 0, 3), (2, 2, 4), (3, 1, 5), (4, 0, 6), (4, 2, 7),
        (5, 1, TOP), (6, 0, TOP), (6, 2, TOP), (7, 1, TOP)} | {(TOP, a, TOP) for a in range(3)},
}


def _is_32(base: Base) -> bool:
    return (base.p, base.q) == (3, 2)


def desk_depth(base: Base, nodes: int = 20000, top: int = 12) -> int:
    """Largest tree depth <= top whose level sizes stay near ``nodes``."""
    return max(3, min(top, int(math.log(nodes) / math.log(base.p / base.q))))


def desk_len(n: int, budget: int, top: int) -> int:
    """Largest word length <= top with ``n**length <= budget``."""
    length = 1
    while length < top and n ** (length + 1) <= budget:
        length += 1
    return length


def words_upto(n: int, max_len: int):
    for k in range(max_len + 1):
        yield from product(range(n), repeat=k)


def tree_words_from_edges(edges) -> dict[int, tuple[int, ...]]:
    """Root-path words of every node reached by the given edges."""
    words = {0: ()}
    for parent, a, child in sorted(edges, key=lambda e: e[2]):
        words[child] = words[parent] + (a,)
    return words


class Skip(Exception):
    pass


# -- core -----------------------------------------------------------------

def check_roundtrip(base, n_max=2000):
    bad = [n for n in range(n_max + 1) if evaluate(base, represent_integer(base, n)) != n]
    return not bad, f"N <= {n_max}, failures {bad[:3]}"


def check_uniqueness(base, max_len=None):
    max_len = max_len if max_len is not None else desk_len(base.p, 50000, 7)
    seen = {}
    for w in words_upto(base.p, max_len):
        if w and w[0] == 0:
            continue
        x = evaluate(base, w)
        if x in seen:
            return False, f"{seen[x]} and {w} share value {x}"
        seen[x] = w
    return True, f"{len(seen)} leading-zero-free words of length <= {max_len}"


def check_prefix_recurrence(base, n_max=500):
    for n in range(1, n_max + 1):
        n1, a0 = divmod(base.q * n, base.p)
        if represent_integer(base, n).digits != represent_integer(base, n1).digits + (a0,):
            return False, f"fails at {n}"
    return True, f"N <= {n_max}"


def check_leading_zeros(base, max_len=None):
    max_len = max_len if max_len is not None else desk_len(base.p, 5000, 6)
    for w in words_upto(base.p, max_len):
        if evaluate(base, (0,) + w) != evaluate(base, w):
            return False, f"fails on {w}"
    return True, f"|w| <= {max_len}"


def value_window(base: Base, max_len: int) -> tuple[int, int]:
    """``(exp, num_limit)``: all ``n / q**exp`` with ``n < num_limit`` need words of length <= max_len.

    A word of length ``max_len + 1`` without leading zero is worth at least
    ``p**max_len / q**(max_len + 1)``.
    """
    exp = max_len
    num_limit = -(-base.p ** max_len // base.q)  # ceil(p^L / q)
    return exp, num_limit


def check_value_set_oracle(base, max_len=None):
    max_len = max_len if max_len is not None else desk_len(base.p, 20000, 8)
    exp, limit = value_window(base, max_len)
    brute = set()
    for w in words_upto(base.p, max_len):
        x = evaluate(base, w)
        if x.scaled_num(exp) < limit:
            brute.add(x)
    fast = {QValue(n, exp, base.q) for n in range(limit) if in_value_set(base, QValue(n, exp, base.q))}
    return brute == fast, f"{len(brute)} values below {limit}/{base.q}^{exp}"


# -- transducers ----------------------------------------------------------

def check_converter_reference(base):
    if not _is_32(base):
        raise Skip
    t = build_converter(base, 5)
    edges = {(s, a, t.eta[s, a], t.delta[s, a]) for s in t.states for a in range(5)}
    ok = (t.states == (0, 1, 2) and edges == set(L32_CONVERTER_5_EDGES)
          and t.final_out == L32_CONVERTER_5_FINAL)
    return ok, f"{len(t.states)} states, {len(edges)} edges"


def check_converter_values(base, max_len=None):
    n = 2 * base.p - 1
    max_len = max_len if max_len is not None else desk_len(n, 20000, 5)
    t = build_converter(base, n)
    count = 0
    for w in words_upto(n, max_len):
        out = run(t, DigitWord(w, n))
        if evaluate(base, out) != evaluate(base, DigitWord(w, n)):
            return False, f"value changed on {w}"
        count += 1
    return True, f"{count} words over A_{n}"


def check_converter_bound(base, n_max=12):
    for n in range(2, n_max + 1):
        t = build_converter(base, n)
        bound = -(-(n - 1) // (base.p - base.q))
        if max(t.states) > bound:
            return False, f"n={n}: carry {max(t.states)} > {bound}"
        for s in t.states:
            for a in range(min(n, base.p)):
                if t.delta[s, a] > s:
                    return False, f"carry increases at ({s}, {a})"
    return True, f"n <= {n_max}"


def check_incrementer(base, max_len=None):
    max_len = max_len if max_len is not None else desk_len(base.p, 5000, 6)
    ws = [represent_integer(base, n) for n in (1, 2, 5)] + [DigitWord((1,), base.p)]
    count = 0
    for w in ws:
        t = build_incrementer(base, w)
        for u in words_upto(base.p, max_len):
            out = run(t, u)
            target = evaluate(base, u) + evaluate(base, w)
            if evaluate(base, out) != target or out.strip() != represent_value(base, target):
                return False, f"w={w}, u={u}"
            if run(t, DigitWord(u, base.p).padded(len(w))) != out:
                return False, f"padding mismatch w={w}, u={u}"
            count += 1
    return True, f"{count} runs"


def check_json_roundtrip(base):
    for t in (build_converter(base, 2 * base.p - 1), build_incrementer(base, represent_integer(base, 7))):
        if transducer_from_json(export_transducer(t, "json")) != t:
            return False, "roundtrip differs"
    return True, "converter and incrementer"


# -- tree -----------------------------------------------------------------

def check_tree_reference(base):
    if not _is_32(base):
        raise Skip
    words = tree_words_from_edges(L32_TREE_EDGES)
    ok_words = all(represent_integer(base, n).digits == words[n] for n in range(41))
    edges = {(n, a, c) for n in range(41) for a, c in children(base, n) if c <= 40}
    return ok_words and edges == set(L32_TREE_EDGES), f"41 nodes, {len(edges)} edges"


def check_prefix_closed_prolongable(base, depth=None):
    depth = depth if depth is not None else min(10, desk_depth(base))
    root = enumerate_tree(base, depth)
    for node in root.walk():
        w = represent_integer(base, node.value)
        if not all(is_in_L(base, w[:k]) for k in range(len(w) + 1)):
            return False, f"prefix of {w} outside L"
        if not children(base, node.value):
            return False, f"{node.value} has no child"
    return True, f"depth {depth}"


def check_future_congruence(base, n_max=60, max_len=3):
    for k in range(1, max_len + 1):
        mod = base.q ** k
        for u in product(range(base.p), repeat=k):
            app = [appendable(base, n, u) for n in range(n_max + 1)]
            for n in range(n_max + 1):
                if app[n] != app[n % mod]:
                    return False, f"(ii) fails n={n}, u={u}"
            hits = [n for n in range(n_max + 1) if app[n]]
            if len({n % mod for n in hits}) > 1:
                return False, f"(i) fails u={u}"
    return True, f"n <= {n_max}, |u| <= {max_len}"


def check_suffix_classes(base, max_len=3):
    for k in range(1, max_len + 1):
        residues = {suffix_residue(base, u)[0] for u in product(range(base.p), repeat=k)}
        if residues != set(range(base.p ** k)):
            return False, f"k={k}: classes do not partition"
    return True, f"k <= {max_len}"


def check_left_quotients(base, depth=None):
    depth = depth if depth is not None else min(5, desk_depth(base, 40))
    nodes = list(enumerate_tree(base, depth).walk())
    words = [represent_integer(base, n.value) for n in nodes]
    # n and m differ modulo q^k once q^k > max value, so k extra digits suffice
    sep_len = 1 + int(math.log(max(n.value for n in nodes) + 1, base.q)) + 1
    for i, u in enumerate(words):
        for v in words[i + 1:]:
            if separating_suffix(base, u, v, sep_len) is None:
                return False, f"no separator for {u}, {v}"
    return True, f"{len(words)} words pairwise separated"


# -- automata ---------------------------------------------------------------

def check_containment_order(base):
    cuts = [cut_approximation(base, k).dfa for k in range(1, 6)]
    for i, a in enumerate(cuts):
        if not contains(a, a):
            return False, "not reflexive"
        for j, b in enumerate(cuts):
            if contains(a, b) != (i <= j):
                return False, f"cut {i + 1} vs {j + 1}"
    return True, "cuts 1..5 form a chain"


def check_irs_test(base):
    finite = finite_language_dfa([represent_integer(base, n).digits for n in range(30)], base.p)
    ok = prefix_irs_test(finite) and not prefix_irs_test(cut_approximation(base, 3).dfa)
    return ok, "finite language vs cut automaton"


# -- blip -------------------------------------------------------------------

def check_blip_exact(base, max_uv=4, cap=64):
    count = 0
    for total in range(1, max_uv + 1):
        for vlen in range(1, total + 1):
            for u in product(range(base.p), repeat=total - vlen):
                for v in product(range(base.p), repeat=vlen):
                    if max_left_iteration(base, u, v, cap)[1]:
                        return False, f"capped at ({u}, {v})"
                    count += 1
    return True, f"{count} pairs uncapped at {cap}"


def check_blip_samples(base, length=None):
    length = length if length is not None else desk_depth(base)
    lang = [represent_integer(base, n.value) for n in enumerate_tree(base, length).walk()]
    hits = blip_scan(lang, 4, 3)
    if _is_32(base) and hits:
        return False, "integer language sample reports iteration"
    # elsewhere short chains are expected; each must have a finite exact maximum
    for e in hits.pairs:
        if max_left_iteration(base, e.u, e.v, 64)[1]:
            return False, f"({e.u}, {e.v}) iterates past the cap"
    for kind in EXAMPLE_KINDS:
        if blip_scan(generate_example_language(kind, 8), 4, 3, prefix_closed=False):
            return False, f"{kind} reports iteration"
    if not blip_scan(prefix_set([(1, 0) * 6]), 2, 3):
        return False, "periodic control not detected"
    return True, "integer sample and example families empty, control detected"


def check_image_iteration(base):
    w = represent_integer(base, 5)
    for u, v in (((2,), (1,)), ((2, 1), (2,)), ((2,), (0, 1))):
        ev = incrementer_image_iteration(base, w, u, v, 6)
        if not ev.ok:
            return False, f"u={u}, v={v}"
    return True, "carries monotone and image shape fixed"


# -- monoid -----------------------------------------------------------------

def _specs(base):
    q = base.q
    if _is_32(base):
        return [MonoidSpec(base, (QValue(1, 1, q),)), MonoidSpec(base, (QValue(1, 0, q), QValue(25, 3, q))),
                MonoidSpec(base, (QValue(25, 3, q),))]
    return [MonoidSpec(base, (QValue(1, 1, q),)), MonoidSpec(base, (QValue(1, 0, q),))]


def check_thresholds(base, k_max=None):
    if k_max is None:
        k_max = 1
        while k_max < 5 and guarantee_bound(base, k_max + 1) <= 200000:
            k_max += 1
    for k in range(k_max + 1):
        m, bound = threshold(base, k)
        if m > 0 and in_value_set(base, QValue(m - 1, k, base.q)):
            return False, f"k={k}: not minimal"
        if not all(in_value_set(base, QValue(n, k, base.q)) for n in range(m, bound + 1)):
            return False, f"k={k}: gap above m_k"
    if _is_32(base) and [threshold(base, k)[0] for k in range(3)] != [0, 0, 2]:
        return False, "reference thresholds differ"
    return True, f"k <= {k_max}"


def check_cover(base, bound=20):
    for spec in _specs(base):
        cover = translate_cover(spec)
        for x in monoid_enumerate(spec, bound):
            if not cover.covers(x) or not in_value_set(base, x):
                return False, f"{x} not covered"
    return True, f"elements <= {bound}"


def check_monoid_blip(base, max_len=12):
    if not _is_32(base):
        raise Skip
    for spec in _specs(base):
        lang = monoid_language(spec, max_len)
        if blip_scan(prefix_set(lang), 4, 3):
            return False, f"generators {spec.generators}"
        w = represent_value(base, spec.generators[-1])
        t = build_incrementer(base, w)
        image = [run(t, u) for u in lang]
        if blip_scan(prefix_set(image), 4, 3):
            return False, f"incrementer image, generators {spec.generators}"
    return True, f"words <= {max_len}"


# -- approximation ----------------------------------------------------------

def check_cut_reference(base):
    if not _is_32(base):
        raise Skip
    for k, edges in L32_CUT_EDGES.items():
        cut = cut_approximation(base, k)
        if cut.tree_edges() != edges:
            return False, f"k={k} edges differ"
    return True, "depths 2 and 5"


def check_cut_acceptance(base, sample_len=10):
    for k in (2, 3, 5):
        rep = approximation_checks(base, k, sample_len, deeper=k + 2)
        if not rep.ok or rep.overapproximation_witness is None:
            return False, f"k={k}"
        if not refinement_holds(base, k):
            return False, f"refinement k={k}"
    return True, f"k in 2,3,5, lengths <= {sample_len}"


SUITES: dict[str, list[tuple[str, Callable]]] = {
    "core": [("roundtrip", check_roundtrip), ("uniqueness", check_uniqueness),
             ("prefix-recurrence", check_prefix_recurrence), ("leading-zeros", check_leading_zeros),
             ("value-set-oracle", check_value_set_oracle)],
    "transducers": [("converter-reference", check_converter_reference), ("converter-values", check_converter_values),
                    ("converter-bound", check_converter_bound), ("incrementer", check_incrementer),
                    ("json-roundtrip", check_json_roundtrip)],
    "tree": [("tree-reference", check_tree_reference), ("prefix-closed", check_prefix_closed_prolongable),
             ("future-congruence", check_future_congruence), ("suffix-classes", check_suffix_classes),
             ("left-quotients", check_left_quotients)],
    "automata": [("containment-order", check_containment_order), ("irs-test", check_irs_test)],
    "blip": [("exact-maxima", check_blip_exact), ("sample-scans", check_blip_samples),
             ("image-iteration", check_image_iteration)],
    "monoid": [("thresholds", check_thresholds), ("cover", check_cover), ("monoid-blip", check_monoid_blip)],
    "approx": [("cut-reference", check_cut_reference), ("cut-acceptance", check_cut_acceptance)],
}


def run_suites(base: Base, names: list[str]) -> list[tuple[str, str, str, str, float]]:
    """Rows ``(suite, check, status, detail, seconds)`` with status PASS / FAIL / SKIP."""
    rows = []
    for suite in names:
        for name, fn in SUITES[suite]:
            t0 = time.perf_counter()
            try:
                ok, detail = fn(base)
                status = "PASS" if ok else "FAIL"
            except Skip:
                status, detail = "SKIP", "reference data and empty-report bounds are for base 3/2"
            except Exception as exc:  # a crashing check is a failing check
                status, detail = "FAIL", f"{type(exc).__name__}: {exc}"
            rows.append((suite, name, status, detail, time.perf_counter() - t0))
    return rows
