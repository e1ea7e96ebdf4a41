"""Sequential letter-to-letter right transducers.

Right transducers read the input from the least significant digit.  Output
digits sit at the position of the input digit that produced them, and the
final output of the reached state is prepended as the most significant part.

Two constructions are provided: the converter ``chi_n`` that rewrites a word
over ``A_n`` into a word over ``A_p`` of the same value, and the incrementer
``A_w`` that adds the value of a fixed word ``w`` while reading.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Hashable

from .errors import DigitOutOfRange, NotFinal, StateCapExceeded
from .numeration import Base, DigitWord, WordLike, as_word, format_word, parse_word, represent_integer

__all__ = [
    "SeqRightTransducer",
    "run",
    "run_with_padding",
    "build_converter",
    "build_incrementer",
    "converter",
    "add",
    "export_transducer",
    "transducer_from_json",
    "DEFAULT_STATE_CAP",
]

DEFAULT_STATE_CAP = 10**6

State = Hashable


@dataclass(frozen=True)
class SeqRightTransducer:
    states: tuple
    input_alphabet_size: int
    output_alphabet_size: int
    initial: Any
    delta: dict = field(compare=True)
    eta: dict = field(compare=True)
    final_out: dict = field(compare=True)
    base: Base | None = None

    def __post_init__(self):
        known = set(self.states)
        if self.initial not in known:
            raise ValueError(f"initial state {self.initial!r} not among states")
        for s in self.states:
            for a in range(self.input_alphabet_size):
                if (s, a) not in self.delta or (s, a) not in self.eta:
                    raise ValueError(f"transducer not complete at ({s!r}, {a})")
                if self.delta[s, a] not in known:
                    raise ValueError(f"transition to unknown state {self.delta[s, a]!r}")
                if not 0 <= self.eta[s, a] < self.output_alphabet_size:
                    raise ValueError(f"output digit {self.eta[s, a]} outside A_{self.output_alphabet_size}")
        for s, w in self.final_out.items():
            if any(not 0 <= d < self.output_alphabet_size for d in w):
                raise ValueError(f"final output of {s!r} outside A_{self.output_alphabet_size}")

    def __hash__(self):
        return hash((self.states, self.input_alphabet_size, self.initial))

    @property
    def edge_count(self) -> int:
        return len(self.states) * self.input_alphabet_size

    def step(self, state, digit: int):
        return self.delta[state, digit], self.eta[state, digit]

    def is_final(self, state) -> bool:
        return state in self.final_out

    def reachable(self) -> set:
        seen = {self.initial}
        todo = [self.initial]
        while todo:
            s = todo.pop()
            for a in range(self.input_alphabet_size):
                t = self.delta[s, a]
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return seen


def run(t: SeqRightTransducer, u: WordLike) -> DigitWord:
    """Image of ``u`` by ``t``."""
    state, out = trace(t, u)
    if state not in t.final_out:
        raise NotFinal(f"state {state!r} reached on {u} has no final output")
    return DigitWord(tuple(t.final_out[state]) + tuple(reversed(out)), t.output_alphabet_size)


def trace(t: SeqRightTransducer, u: WordLike):
    """Return the state reached on ``u`` and the LSD-first transition outputs."""
    digits = u.digits if isinstance(u, DigitWord) else parse_word(u) if isinstance(u, str) else tuple(u)
    state = t.initial
    out = []
    for a in reversed(digits):
        if not 0 <= a < t.input_alphabet_size:
            raise DigitOutOfRange(f"digit {a} outside input alphabet A_{t.input_alphabet_size}")
        state, c = t.delta[state, a], t.eta[state, a]
        out.append(c)
    return state, out


def run_with_padding(t: SeqRightTransducer, u: WordLike, length: int) -> DigitWord:
    """Run on ``u`` left-padded with zeros up to ``length`` digits."""
    u = as_word(u, t.input_alphabet_size)
    return run(t, u.padded(length))


def _closure(start, alphabet_size: int, step, cap: int):
    """Breadth-first reachable part of an implicitly defined machine."""
    states = [start]
    seen = {start}
    delta, eta = {}, {}
    todo = deque([start])
    while todo:
        s = todo.popleft()
        for a in range(alphabet_size):
            t, c = step(s, a)
            delta[s, a] = t
            eta[s, a] = c
            if t not in seen:
                if len(seen) >= cap:
                    raise StateCapExceeded(f"more than {cap} reachable states")
                seen.add(t)
                states.append(t)
                todo.append(t)
    return states, delta, eta


def build_converter(base: Base, n: int, cap: int = DEFAULT_STATE_CAP) -> SeqRightTransducer:
    """Reachable part of the converter from ``A_n`` to ``A_p``.

    States are carries; ``s --a|c--> s'`` iff ``q*s + a = p*s' + c``.
    """
    if n < 2:
        raise ValueError("converter needs an input alphabet of size >= 2")
    p, q = base.p, base.q

    def step(s, a):
        return divmod(q * s + a, p)

    states, delta, eta = _closure(0, n, step, cap)
    states.sort()
    final = {s: represent_integer(base, s).digits for s in states}
    return SeqRightTransducer(tuple(states), n, p, 0, delta, eta, final, base)


@lru_cache(maxsize=64)
def converter(base: Base, n: int) -> SeqRightTransducer:
    return build_converter(base, n)


def build_incrementer(base: Base, w: WordLike, cap: int = DEFAULT_STATE_CAP) -> SeqRightTransducer:
    """Transducer adding the value of ``w`` to its input.

    States are pairs ``(carry, phase)``.  While ``phase < len(w)`` the input
    digit is increased by the digit of ``w`` at the same position; afterwards
    the machine behaves as the plain converter.  The final output of an early
    phase follows the zero transitions down to the last phase, which amounts
    to reading enough leading zeros.
    """
    w = as_word(w, base.p)
    p, q = base.p, base.q
    b = tuple(reversed(w.digits))  # b[0] is the least significant digit
    n = len(b)

    def step(state, a):
        s, i = state
        if i < n:
            s2, c = divmod(q * s + a + b[i], p)
            return (s2, i + 1), c
        s2, c = divmod(q * s + a, p)
        return (s2, n), c

    states, delta, eta = _closure((0, 0), p, step, cap)
    states.sort(key=lambda st: (st[1], st[0]))

    final: dict = {}

    def psi(state):
        if state in final:
            return final[state]
        chain = []
        cur = state
        while cur[1] < n and cur not in final:
            chain.append(cur)
            cur = delta[cur, 0]
        word = final[cur] if cur in final else represent_integer(base, cur[0]).digits
        final[cur] = word
        for st in reversed(chain):
            word = word + (eta[st, 0],)
            final[st] = word
        return final[state]

    for st in states:
        psi(st)
    final = {st: final[st] for st in states}
    return SeqRightTransducer(tuple(states), p, p, (0, 0), delta, eta, final, base)


def add(base: Base, u: WordLike, v: WordLike) -> DigitWord:
    """Sum of two words through digit-wise addition and the converter ``chi_{2p-1}``."""
    u = as_word(u, base.p)
    v = as_word(v, base.p)
    length = max(len(u), len(v))
    u, v = u.padded(length), v.padded(length)
    wide = DigitWord(tuple(a + b for a, b in zip(u.digits, v.digits)), 2 * base.p - 1)
    return run(converter(base, 2 * base.p - 1), wide).strip()


def _state_id(s):
    return list(s) if isinstance(s, tuple) else s


def _state_label(s) -> str:
    return ",".join(map(str, s)) if isinstance(s, tuple) else str(s)


def export_transducer(t: SeqRightTransducer, fmt: str = "dot") -> str:
    if fmt == "json":
        doc = {
            "p": t.base.p if t.base else None,
            "q": t.base.q if t.base else None,
            "input_n": t.input_alphabet_size,
            "output_n": t.output_alphabet_size,
            "initial": _state_id(t.initial),
            "states": [],
            "edges": [],
        }
        for s in t.states:
            entry = {"id": _state_id(s)}
            if s in t.final_out:
                entry["final"] = format_word(t.final_out[s], t.output_alphabet_size)
            doc["states"].append(entry)
        for s in t.states:
            for a in range(t.input_alphabet_size):
                doc["edges"].append({"from": _state_id(s), "in": a, "out": t.eta[s, a],
                                     "to": _state_id(t.delta[s, a])})
        return json.dumps(doc)
    if fmt != "dot":
        raise ValueError(f"unknown format {fmt!r}")
    lines = ["digraph transducer {", "  rankdir=LR;"]
    names = {s: f"s{i}" for i, s in enumerate(t.states)}
    lines.append('  init [shape=point];')
    lines.append(f"  init -> {names[t.initial]};")
    for s in t.states:
        label = _state_label(s)
        if s in t.final_out:
            fin = format_word(t.final_out[s], t.output_alphabet_size) or "ε"
            lines.append(f'  {names[s]} [shape=doublecircle, label="{label}\\n{fin}"];')
        else:
            lines.append(f'  {names[s]} [shape=circle, label="{label}"];')
    for s in t.states:
        for a in range(t.input_alphabet_size):
            lines.append(f'  {names[s]} -> {names[t.delta[s, a]]} [label="{a}|{t.eta[s, a]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _load_id(x):
    return tuple(x) if isinstance(x, list) else x


def transducer_from_json(text: str) -> SeqRightTransducer:
    doc = json.loads(text)
    base = Base(doc["p"], doc["q"]) if doc.get("p") is not None else None
    states = tuple(_load_id(e["id"]) for e in doc["states"])
    final = {_load_id(e["id"]): parse_word(e["final"]) for e in doc["states"] if "final" in e}
    delta, eta = {}, {}
    for e in doc["edges"]:
        s = _load_id(e["from"])
        delta[s, e["in"]] = _load_id(e["to"])
        eta[s, e["in"]] = e["out"]
    return SeqRightTransducer(states, doc["input_n"], doc["output_n"], _load_id(doc["initial"]),
                              delta, eta, final, base)
