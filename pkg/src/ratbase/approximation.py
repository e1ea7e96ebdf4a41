"""Depth-k rational over-approximations of the integer representation language.

The automaton is the tree of representations cut at depth ``k``: internal
nodes keep their tree edges, nodes at depth ``k-1`` send their legal digits
to an all-accepting sink, and every illegal digit goes to a dead state.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .automata import Dfa, contains, dfa_product, export_dfa, min_length_dfa
from .numeration import Base, DigitWord, represent_integer
from .tree import DEFAULT_DEPTH_CAP, children, enumerate_tree, is_in_L
from .errors import DepthCapExceeded

__all__ = ["TOP", "DEAD", "CutApproximation", "cut_approximation", "approximation_checks",
           "ApproximationReport", "export_approximation", "refinement_holds"]

TOP = "top"
DEAD = "dead"


@dataclass(frozen=True)
class CutApproximation:
    k: int
    dfa: Dfa
    frontier: frozenset  # words of length exactly k, as digit tuples
    include_short: bool = False

    @property
    def live_states(self) -> tuple:
        return tuple(s for s in self.dfa.states if s != DEAD)

    def tree_edges(self) -> set[tuple]:
        """Edges ``(src, digit, dst)`` between live states."""
        return {(s, a, self.dfa.delta[s, a]) for s in self.live_states
                for a in range(self.dfa.alphabet_size) if self.dfa.delta[s, a] != DEAD}


def cut_approximation(base: Base, k: int, include_short: bool = False,
                      cap: int = DEFAULT_DEPTH_CAP) -> CutApproximation:
    """Automaton accepting ``X . A_p^*`` with ``X`` the length-``k`` representations.

    With ``include_short`` the internal tree nodes accept as well, giving the
    reading where ``X`` holds every representation of length at most ``k``.
    """
    if k < 1:
        raise ValueError("cut depth must be positive")
    if k > cap:
        raise DepthCapExceeded(f"depth {k} exceeds cap {cap}")
    p = base.p
    root = enumerate_tree(base, k - 1, cap)
    nodes = list(root.walk())
    states = [n.value for n in nodes] + [TOP, DEAD]
    delta = {}
    for node in nodes:
        legal = dict(children(base, node.value))
        for a in range(p):
            if a not in legal:
                delta[node.value, a] = DEAD
            elif node.depth == k - 1:
                delta[node.value, a] = TOP
            else:
                delta[node.value, a] = legal[a]
    for a in range(p):
        delta[TOP, a] = TOP
        delta[DEAD, a] = DEAD
    accepting = {TOP}
    if include_short:
        accepting |= {n.value for n in nodes}
    frontier = frozenset(
        represent_integer(base, n.value).digits + (a,)
        for n in nodes if n.depth == k - 1 for a, _ in children(base, n.value)
    )
    dfa = Dfa(tuple(states), p, 0, delta, frozenset(accepting))
    return CutApproximation(k, dfa, frontier, include_short)


@dataclass
class ApproximationReport:
    k: int
    sample_len: int
    long_words_accepted: bool
    long_words_checked: int
    refines_deeper: dict = field(default_factory=dict)
    acceptance: list = field(default_factory=list)  # (n, |accepted words of length n|, |L cap A^n|)
    overapproximation_witness: DigitWord | None = None

    @property
    def ok(self) -> bool:
        return self.long_words_accepted and all(self.refines_deeper.values())


def approximation_checks(base: Base, k: int, sample_len: int, deeper: int | None = None,
                         stats_len: int | None = None) -> ApproximationReport:
    """Finite consistency checks for the cut automaton at depth ``k``.

    (a) every representation of length ``k..sample_len`` is accepted;
    (b) the cut at each deeper level up to ``deeper`` accepts a subset;
    (c) per-length counts of accepted words against representations.
    """
    if sample_len < k:
        raise ValueError("sample_len must be at least k")
    cut = cut_approximation(base, k)
    root = enumerate_tree(base, sample_len, cap=max(sample_len, DEFAULT_DEPTH_CAP))
    checked = 0
    ok = True
    counts = {}
    for node in root.walk():
        counts[node.depth] = counts.get(node.depth, 0) + 1
        if node.depth >= k:
            checked += 1
            if not cut.dfa.accepts(represent_integer(base, node.value).digits):
                ok = False
    report = ApproximationReport(k, sample_len, ok, checked)
    for k2 in range(k + 1, (deeper or k + 3) + 1):
        report.refines_deeper[k2] = contains(cut.dfa, cut_approximation(base, k2).dfa)
    top_len = min(stats_len if stats_len is not None else sample_len, 12)
    for n in range(k, top_len + 1):
        accepted = _count_accepted_of_length(cut.dfa, n)
        report.acceptance.append((n, accepted, counts.get(n, 0)))
    report.overapproximation_witness = _non_integer_accepted(base, cut.dfa, k + 4)
    return report


def _count_accepted_of_length(dfa: Dfa, n: int) -> int:
    # dynamic programming over state multiplicities
    counts = {dfa.initial: 1}
    for _ in range(n):
        nxt: dict = {}
        for s, c in counts.items():
            for a in range(dfa.alphabet_size):
                t = dfa.delta[s, a]
                nxt[t] = nxt.get(t, 0) + c
        counts = nxt
    return sum(c for s, c in counts.items() if s in dfa.accepting)


def _non_integer_accepted(base: Base, dfa: Dfa, max_len: int) -> DigitWord | None:
    for n in range(max_len + 1):
        for w in product(range(base.p), repeat=n):
            if dfa.accepts(w) and not is_in_L(base, w):
                return DigitWord(w, base.p)
    return None


def refinement_holds(base: Base, k: int) -> bool:
    """Words of length ``>= k+1`` accepted at depth ``k+1`` are accepted at depth ``k``."""
    outer = cut_approximation(base, k).dfa
    inner = dfa_product(cut_approximation(base, k + 1).dfa, min_length_dfa(base.p, k + 1), "intersect")
    return contains(outer, inner)


def export_approximation(cut: CutApproximation, fmt: str = "dot", show_dead: bool = False) -> str:
    labels = {TOP: "⊤", DEAD: "dead"}
    hide = () if show_dead else (DEAD,)
    return export_dfa(cut.dfa, fmt, labels=labels, hide=hide)
