"""Left iteration: exact maxima on the integer language, evidence scans on samples.

A language is left-iterable when some ``u v^i`` is a prefix of a word of the
language for infinitely many ``i``.  For the integer representation language
the largest such ``i`` is computed exactly from the value of ``u v^i``.  For
an arbitrary finite sample only bounded evidence is possible, and every
report carries the bounds it was obtained under.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .errors import NoCommonState, NotPrefixClosed, UnknownKind
from .numeration import Base, DigitWord, WordLike, as_word, format_word
from .transducers import SeqRightTransducer, build_incrementer, run
from .tree import is_in_L

__all__ = [
    "IterationEntry",
    "IterationReport",
    "max_left_iteration",
    "blip_scan",
    "prefix_set",
    "generate_example_language",
    "prime_length_language",
    "ImageIterationEvidence",
    "incrementer_image_iteration",
    "EXAMPLE_KINDS",
]

EXAMPLE_KINDS = ("aperiodic_prefixes", "fibonacci_powers", "fij_family")


@dataclass(frozen=True)
class IterationEntry:
    u: tuple[int, ...]
    v: tuple[int, ...]
    max_i: int
    capped: bool

    def to_json(self, alphabet_size: int = 10) -> str:
        return json.dumps({"u": format_word(self.u, alphabet_size), "v": format_word(self.v, alphabet_size),
                           "max_i": self.max_i, "capped": self.capped})


@dataclass
class IterationReport:
    pairs: list[IterationEntry] = field(default_factory=list)
    max_u: int = 0
    max_v: int = 0
    iteration_cap: int = 0
    alphabet_size: int = 10

    def __bool__(self):
        return bool(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def to_jsonl(self) -> str:
        return "".join(e.to_json(self.alphabet_size) + "\n" for e in self.pairs)


def max_left_iteration(base: Base, u: WordLike, v: WordLike, cap: int = 64) -> tuple[int, bool]:
    """Largest ``i <= cap`` with ``u v^i`` representing an integer.

    The language is prefix-closed, so the first failing exponent ends the
    search.  Returns ``(-1, False)`` when ``u`` itself is not a
    representation, and ``(cap, True)`` when the cap is reached.
    """
    u = as_word(u, base.p)
    v = as_word(v, base.p)
    if not v.digits:
        raise ValueError("v must be non-empty")
    if not is_in_L(base, u):
        return -1, False
    word = u
    for i in range(1, cap + 1):
        word = word + v
        if not is_in_L(base, word):
            return i - 1, False
    return cap, True


def prefix_set(words: Iterable[Iterable[int]]) -> set[tuple[int, ...]]:
    out = set()
    for w in words:
        w = tuple(w)
        for k in range(len(w) + 1):
            out.add(w[:k])
    return out


def _digits(w) -> tuple[int, ...]:
    if isinstance(w, DigitWord):
        return w.digits
    if isinstance(w, str):
        return tuple(int(c) for c in w)
    return tuple(w)


def blip_scan(sample: Iterable, max_uv: int = 4, min_i: int = 3, prefix_closed: bool = True) -> IterationReport:
    """Pairs ``(u, v)`` iterating inside the prefix set of ``sample``.

    A pair with ``|uv| <= max_uv`` is reported when ``u v^i`` is in the
    prefix set for every ``i >= 1`` with ``|u v^i|`` at most the longest
    sample word, and there are at least ``min_i`` such exponents.  An empty
    report is consistent with bounded left iteration at these bounds; it is
    not a proof.
    """
    words = {_digits(w) for w in sample}
    prefixes = prefix_set(words)
    if prefix_closed and prefixes != words:
        missing = min(prefixes - words, key=lambda w: (len(w), w))
        raise NotPrefixClosed(f"sample claimed prefix-closed but lacks {format_word(missing, 10) or 'ε'}")
    alphabet = sorted({d for w in words for d in w})
    alphabet_size = (max(alphabet) + 1) if alphabet else 1
    longest = max((len(w) for w in words), default=0)
    report = IterationReport(max_u=max_uv - 1, max_v=max_uv, iteration_cap=longest,
                             alphabet_size=max(alphabet_size, 2))
    for total in range(1, max_uv + 1):
        for vlen in range(1, total + 1):
            ulen = total - vlen
            for u in _words_in(prefixes, ulen):
                for v in product(alphabet, repeat=vlen):
                    count = 0
                    word = u
                    ok = True
                    while len(word) + vlen <= longest:
                        word = word + v
                        if word not in prefixes:
                            ok = False
                            break
                        count += 1
                    if ok and count >= min_i:
                        report.pairs.append(IterationEntry(u, v, count, True))
    report.pairs.sort(key=lambda e: (len(e.u) + len(e.v), e.u, e.v))
    return report


def _words_in(prefixes: set, length: int):
    return sorted(w for w in prefixes if len(w) == length)


def generate_example_language(kind: str, size: int, j_size: int | None = None) -> set[DigitWord]:
    """Finite truncation of one of the example BLIP families.

    ``aperiodic_prefixes``: ``u_0 = ε``, ``u_{i+1} = u_i . 1 . 0^i`` for ``i < size``
    words.  ``fibonacci_powers``: ``σ^i(0)`` for ``i < size`` with
    ``σ(0) = 01, σ(1) = 0``.  ``fij_family``: ``u_{i,0} = 1``,
    ``u_{i,j+1} = u_{i,j} . 1 . 0^{f_i(j)}`` with ``f_i(j) = j`` except
    ``f_i(i) = 0``, for ``i < size`` and ``j < j_size`` (defaults to ``size``).
    """
    words: list[tuple[int, ...]] = []
    if kind == "aperiodic_prefixes":
        u: tuple[int, ...] = ()
        for i in range(size):
            words.append(u)
            u = u + (1,) + (0,) * i
    elif kind == "fibonacci_powers":
        u = (0,)
        for _ in range(size):
            words.append(u)
            u = tuple(d for a in u for d in ((0, 1) if a == 0 else (0,)))
    elif kind == "fij_family":
        for i in range(size):
            u = (1,)
            for j in range(j_size if j_size is not None else size):
                words.append(u)
                u = u + (1,) + (0,) * (0 if j == i else j)
    else:
        raise UnknownKind(f"unknown example language {kind!r}; expected one of {EXAMPLE_KINDS}")
    return {DigitWord(w, 2) for w in words}


def prime_length_language(n_max: int) -> set[DigitWord]:
    """``{a^n : n prime, n <= n_max}`` over the one-letter alphabet ``{0}``."""
    sieve = [True] * (n_max + 1)
    sieve[:2] = [False] * min(2, n_max + 1)
    for i in range(2, int(n_max ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = [False] * len(sieve[i * i::i])
    return {DigitWord((0,) * n, 1) for n in range(n_max + 1) if sieve[n]}


@dataclass
class ImageIterationEvidence:
    w: DigitWord
    u: DigitWord
    v: DigitWord
    start_state: tuple  # common state reached after every padder
    padders: list[DigitWord]
    carries: list[list[int]]  # per i: carry after each digit of v^i
    monotone: bool
    stationary_carry: int
    stationary_after: int  # number of v-blocks read before the carry is constant
    u_image: DigitWord | None  # image of u read from the stationary state, final output included
    v_image: DigitWord | None
    images: list[DigitWord]
    shape_holds: bool

    @property
    def ok(self) -> bool:
        return self.monotone and self.shape_holds


def _common_state_padders(t: SeqRightTransducer, min_len: int, count: int, max_len: int):
    """Words of strictly increasing length >= ``min_len`` all leading to one state.

    Among the states reached at ``count`` distinct lengths the one with the
    largest carry is chosen, so that the carry has room to decrease.
    """
    frontier = {t.initial: ()}
    by_state: dict = {}
    for length in range(1, max_len + 1):
        nxt: dict = {}
        for s, word in frontier.items():
            for a in range(t.input_alphabet_size):
                s2 = t.delta[s, a]
                cand = (a,) + word  # a is read after word, so it is more significant
                if s2 not in nxt or cand < nxt[s2]:
                    nxt[s2] = cand
        frontier = nxt
        if length >= min_len:
            for s, word in frontier.items():
                by_state.setdefault(s, []).append(word)
    full = [s for s, ws in by_state.items() if len(ws) >= count]
    if not full:
        raise NoCommonState(f"no state reached by {count} padders of length <= {max_len}")
    best = max(full, key=lambda s: (s[0], s))
    return best, by_state[best][:count]


def incrementer_image_iteration(base: Base, w: WordLike, u: WordLike, v: WordLike, family_len: int = 8,
                                max_pad: int | None = None) -> ImageIterationEvidence:
    """Follow the incrementer on ``u v^i y_i`` for ``i = 1..family_len``.

    The padders ``y_i`` have increasing lengths, at least ``|w|``, and all end
    in one state of the last phase.  Along ``v^i`` the carry can only
    decrease, so it becomes constant; from then on each ``v`` block has one
    fixed image, and the image of the whole word is ``u' v'^j z_i``.
    """
    w = as_word(w, base.p)
    u = as_word(u, base.p)
    v = as_word(v, base.p)
    if not v.digits:
        raise ValueError("v must be non-empty")
    t = build_incrementer(base, w)
    n = len(w)
    if max_pad is None:
        max_pad = max(n, 1) + 2 * family_len
    start, pads = _common_state_padders(t, max(n, 1), family_len, max_pad)
    padders = [DigitWord(y, base.p) for y in pads]

    carries = []
    monotone = True
    for i in range(1, family_len + 1):
        s = start
        seq = []
        for _ in range(i):
            for a in reversed(v.digits):
                s2 = t.delta[s, a]
                if s2[0] > s[0]:
                    monotone = False
                s = s2
                seq.append(s[0])
        carries.append(seq)

    # carry after each complete block for the longest run
    longest = carries[-1]
    block_ends = [start[0]] + [longest[(j + 1) * len(v) - 1] for j in range(family_len)]
    stationary_after = next(j for j in range(family_len + 1) if len(set(block_ends[j:])) == 1)
    stationary_carry = block_ends[-1]
    stat_state = (stationary_carry, n)

    u_image = v_image = None
    shape_holds = False
    images = [run(t, u + v * i + y) for i, y in enumerate(padders, start=1)]
    within_block_constant = all(c == stationary_carry for c in longest[stationary_after * len(v):])
    if within_block_constant:
        v_image = _image_from(t, stat_state, v.digits, with_final=False)
        u_image = _image_from(t, stat_state, u.digits, with_final=True)
        shape_holds = True
        for i, (img, y) in enumerate(zip(images, padders), start=1):
            j = i - stationary_after
            if j < 0:
                continue
            head = u_image.digits + v_image.digits * j
            if img.digits[:len(head)] != head:
                shape_holds = False
    return ImageIterationEvidence(w, u, v, start, padders, carries, monotone, stationary_carry,
                                  stationary_after, u_image, v_image, images, shape_holds)


def _image_from(t: SeqRightTransducer, state, digits: tuple[int, ...], with_final: bool) -> DigitWord:
    out = []
    for a in reversed(digits):
        out.append(t.eta[state, a])
        state = t.delta[state, a]
    head = tuple(t.final_out[state]) if with_final else ()
    return DigitWord(head + tuple(reversed(out)), t.output_alphabet_size)
