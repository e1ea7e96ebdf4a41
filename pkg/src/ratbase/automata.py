"""Small complete-DFA toolkit over digit alphabets ``{0, ..., n-1}``."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Any, Iterable

from .errors import AlphabetMismatch

__all__ = [
    "Dfa",
    "dfa_product",
    "complement",
    "is_empty",
    "contains",
    "equivalent",
    "trim",
    "prefix_irs_test",
    "finite_language_dfa",
    "all_words_dfa",
    "min_length_dfa",
    "export_dfa",
]


@dataclass(frozen=True, eq=False)
class Dfa:
    states: tuple
    alphabet_size: int
    initial: Any
    delta: dict
    accepting: frozenset

    def __post_init__(self):
        known = set(self.states)
        if self.initial not in known:
            raise ValueError(f"initial state {self.initial!r} not among states")
        if not set(self.accepting) <= known:
            raise ValueError("accepting states must be states")
        for s in self.states:
            for a in range(self.alphabet_size):
                if self.delta.get((s, a)) not in known:
                    raise ValueError(f"transition map not total at ({s!r}, {a})")
        object.__setattr__(self, "accepting", frozenset(self.accepting))

    def step(self, state, a: int):
        return self.delta[state, a]

    def run(self, word: Iterable[int]):
        s = self.initial
        for a in word:
            s = self.delta[s, a]
        return s

    def accepts(self, word: Iterable[int]) -> bool:
        return self.run(word) in self.accepting

    def words(self, max_len: int) -> set[tuple[int, ...]]:
        """Accepted words of length at most ``max_len`` (brute force)."""
        out = set()
        for k in range(max_len + 1):
            for w in product(range(self.alphabet_size), repeat=k):
                if self.accepts(w):
                    out.add(w)
        return out

    def reachable(self) -> set:
        seen = {self.initial}
        todo = [self.initial]
        while todo:
            s = todo.pop()
            for a in range(self.alphabet_size):
                t = self.delta[s, a]
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return seen

    def coaccessible(self) -> set:
        back: dict = {}
        for (s, _), t in self.delta.items():
            back.setdefault(t, set()).add(s)
        seen = set(self.accepting)
        todo = list(seen)
        while todo:
            t = todo.pop()
            for s in back.get(t, ()):
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
        return seen


_MODES = {
    "intersect": lambda x, y: x and y,
    "union": lambda x, y: x or y,
    "difference": lambda x, y: x and not y,
}


def dfa_product(a: Dfa, b: Dfa, mode: str = "intersect") -> Dfa:
    """Reachable part of the product automaton."""
    if a.alphabet_size != b.alphabet_size:
        raise AlphabetMismatch(f"alphabets A_{a.alphabet_size} and A_{b.alphabet_size} differ")
    try:
        keep = _MODES[mode]
    except KeyError:
        raise ValueError(f"unknown product mode {mode!r}") from None
    start = (a.initial, b.initial)
    states = [start]
    seen = {start}
    delta = {}
    todo = deque([start])
    while todo:
        s = todo.popleft()
        for x in range(a.alphabet_size):
            t = (a.delta[s[0], x], b.delta[s[1], x])
            delta[s, x] = t
            if t not in seen:
                seen.add(t)
                states.append(t)
                todo.append(t)
    acc = {s for s in states if keep(s[0] in a.accepting, s[1] in b.accepting)}
    return Dfa(tuple(states), a.alphabet_size, start, delta, frozenset(acc))


def complement(a: Dfa) -> Dfa:
    return Dfa(a.states, a.alphabet_size, a.initial, a.delta, frozenset(set(a.states) - a.accepting))


def is_empty(a: Dfa) -> bool:
    return not (a.reachable() & a.accepting)


def contains(a: Dfa, b: Dfa) -> bool:
    """``L(b)`` is a subset of ``L(a)``."""
    return is_empty(dfa_product(b, a, "difference"))


def equivalent(a: Dfa, b: Dfa) -> bool:
    return contains(a, b) and contains(b, a)


def trim(a: Dfa) -> tuple[set, dict]:
    """Useful states (reachable and co-accessible) and the edges between them."""
    useful = a.reachable() & a.coaccessible()
    edges = {(s, x): t for (s, x), t in a.delta.items() if s in useful and t in useful}
    return useful, edges


def prefix_irs_test(a: Dfa) -> bool:
    """True iff the prefix language of ``L(a)`` has no infinite rational subset.

    For a rational language this holds exactly when the language is finite,
    i.e. when the trimmed automaton has no cycle.
    """
    useful, edges = trim(a)
    succ: dict = {s: [] for s in useful}
    for (s, _), t in edges.items():
        succ[s].append(t)
    # iterative DFS cycle detection
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(useful, WHITE)
    for root in useful:
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(succ[root]))]
        colour[root] = GREY
        while stack:
            node, it = stack[-1]
            for t in it:
                if colour[t] == GREY:
                    return False
                if colour[t] == WHITE:
                    colour[t] = GREY
                    stack.append((t, iter(succ[t])))
                    break
            else:
                colour[node] = BLACK
                stack.pop()
    return True


def finite_language_dfa(words: Iterable[Iterable[int]], alphabet_size: int) -> Dfa:
    """Trie automaton of a finite language, completed with a dead state."""
    dead = ("dead",)
    root = ()
    states = [root]
    seen = {root}
    accepting = set()
    delta = {}
    for w in words:
        w = tuple(w)
        for k in range(1, len(w) + 1):
            if w[:k] not in seen:
                seen.add(w[:k])
                states.append(w[:k])
        accepting.add(w)
    states.append(dead)
    for s in states:
        for x in range(alphabet_size):
            t = s + (x,) if s is not dead else dead
            delta[s, x] = t if t in seen else dead
    return Dfa(tuple(states), alphabet_size, root, delta, frozenset(accepting))


def all_words_dfa(alphabet_size: int) -> Dfa:
    return Dfa((0,), alphabet_size, 0, {(0, x): 0 for x in range(alphabet_size)}, frozenset({0}))


def min_length_dfa(alphabet_size: int, k: int) -> Dfa:
    """Words of length at least ``k``."""
    delta = {(i, x): min(i + 1, k) for i in range(k + 1) for x in range(alphabet_size)}
    return Dfa(tuple(range(k + 1)), alphabet_size, 0, delta, frozenset({k}))


def _sid(s):
    if isinstance(s, tuple):
        return [_sid(x) for x in s]
    return s


def export_dfa(a: Dfa, fmt: str = "dot", labels: dict | None = None, hide: Iterable = ()) -> str:
    labels = labels or {}
    hidden = set(hide)
    if fmt == "json":
        doc = {
            "alphabet_size": a.alphabet_size,
            "initial": _sid(a.initial),
            "states": [{"id": _sid(s), "accepting": s in a.accepting} for s in a.states],
            "edges": [{"from": _sid(s), "in": x, "to": _sid(a.delta[s, x])}
                      for s in a.states for x in range(a.alphabet_size)],
        }
        return json.dumps(doc)
    if fmt != "dot":
        raise ValueError(f"unknown format {fmt!r}")
    names = {s: f"s{i}" for i, s in enumerate(a.states)}
    lines = ["digraph dfa {", "  rankdir=LR;", "  init [shape=point];", f"  init -> {names[a.initial]};"]
    for s in a.states:
        if s in hidden:
            continue
        shape = "doublecircle" if s in a.accepting else "circle"
        lines.append(f'  {names[s]} [shape={shape}, label="{labels.get(s, s)}"];')
    for s in a.states:
        if s in hidden:
            continue
        grouped: dict = {}
        for x in range(a.alphabet_size):
            t = a.delta[s, x]
            if t in hidden:
                continue
            grouped.setdefault(t, []).append(str(x))
        for t, xs in grouped.items():
            lines.append(f'  {names[s]} -> {names[t]} [label="{",".join(xs)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
