"""The language of integer representations seen as an infinite tree.

Node ``N`` has a child ``(N*p + a) / q`` for every digit ``a < p`` making the
division exact; the edge is labelled ``a`` and the child's representation is
the parent's followed by ``a``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

from .errors import DepthCapExceeded, PropositionViolated
from .numeration import Base, DigitWord, WordLike, as_word, evaluate, represent_integer

__all__ = [
    "TreeNode",
    "children",
    "enumerate_tree",
    "level_sizes",
    "is_in_L",
    "suffix_residue",
    "appendable",
    "separating_suffix",
    "export_tree",
    "DEFAULT_DEPTH_CAP",
]

DEFAULT_DEPTH_CAP = 40


@dataclass
class TreeNode:
    value: int
    depth: int
    children: list[tuple[int, "TreeNode"]] = field(default_factory=list)

    def word(self, base: Base) -> DigitWord:
        return represent_integer(base, self.value)

    def walk(self):
        """Breadth-first iteration over the subtree."""
        level = [self]
        while level:
            yield from level
            level = [child for node in level for _, child in node.children]


def children(base: Base, n: int, *, root_loop: bool = False) -> list[tuple[int, int]]:
    """Edges ``(digit, child)`` leaving node ``n``, ascending by digit.

    The 0-loop at the root is left out unless ``root_loop`` is set.
    """
    p, q = base.p, base.q
    out = []
    # a must satisfy a = -n*p (mod q); start from the least such digit
    a = (-n * p) % q
    while a < p:
        out.append((a, (n * p + a) // q))
        a += q
    if n == 0 and not root_loop:
        out = [(a, c) for a, c in out if c != 0]
    return out


def enumerate_tree(base: Base, depth: int, cap: int = DEFAULT_DEPTH_CAP) -> TreeNode:
    """All representations of length at most ``depth`` as a tree rooted at 0."""
    if depth > cap:
        raise DepthCapExceeded(f"depth {depth} exceeds cap {cap}")
    root = TreeNode(0, 0)
    level = [root]
    for d in range(1, depth + 1):
        nxt = []
        for node in level:
            for a, c in children(base, node.value):
                child = TreeNode(c, d)
                node.children.append((a, child))
                nxt.append(child)
        level = nxt
    return root


def level_sizes(base: Base, depth: int, cap: int = DEFAULT_DEPTH_CAP) -> list[int]:
    """Number of representations of each exact length ``0..depth``."""
    if depth > cap:
        raise DepthCapExceeded(f"depth {depth} exceeds cap {cap}")
    sizes = [1]
    level = [0]
    for _ in range(depth):
        level = [c for n in level for _, c in children(base, n)]
        sizes.append(len(level))
    return sizes


def is_in_L(base: Base, w: WordLike) -> bool:
    w = as_word(w, base.p)
    if not w.digits:
        return True
    return not w.has_leading_zero and evaluate(base, w).is_integer()


def appendable(base: Base, n: int, u: WordLike) -> bool:
    """Whether ``<n>.u`` represents an integer.

    Decided on values: ``n * (p/q)**|u| + value(u)`` must be an integer.
    Leading zeros of ``u`` are not rejected when ``n == 0``, so that the test
    depends on the residue of ``n`` only.
    """
    u = as_word(u, base.p)
    k = len(u)
    v = evaluate(base, u)
    # n * p^k / q^k + v.num / q^v.exp, over q^k (v.exp <= k)
    total = n * base.p ** k + v.scaled_num(k)
    return total % base.q ** k == 0


def _ends_with(word: DigitWord, suffix: tuple[int, ...]) -> bool:
    k = len(suffix)
    return word.padded(k).digits[-k:] == suffix if k else True


def suffix_residue(base: Base, u: WordLike) -> tuple[int, int]:
    """Residue ``(n, p**k)`` of the integers whose representation ends with ``u``.

    Representations shorter than ``k`` are left-padded with zeros.  Scans all
    ``m < p**k`` and raises :class:`PropositionViolated` unless exactly one
    matches.
    """
    u = as_word(u, base.p)
    k = len(u)
    if k < 1:
        raise ValueError("suffix must be non-empty")
    modulus = base.p ** k
    hits = [m for m in range(modulus) if _ends_with(represent_integer(base, m), u.digits)]
    if len(hits) != 1:
        raise PropositionViolated(f"suffix {u} matched residues {hits[:5]} modulo {modulus}")
    return hits[0], modulus


def separating_suffix(base: Base, u: WordLike, v: WordLike, max_len: int = 12) -> DigitWord | None:
    """Shortest ``w`` (then lexicographically least) with ``u.w`` in L and ``v.w`` not in L."""
    u = as_word(u, base.p)
    v = as_word(v, base.p)
    for k in range(max_len + 1):
        for digits in product(range(base.p), repeat=k):
            w = DigitWord(digits, base.p)
            if is_in_L(base, u + w) and not is_in_L(base, v + w):
                return w
    return None


def _node_json(node: TreeNode) -> dict:
    return {"value": node.value,
            "edges": [{"digit": a, "child": _node_json(c)} for a, c in node.children]}


def export_tree(root: TreeNode, fmt: str = "dot") -> str:
    if fmt == "json":
        return json.dumps(_node_json(root))
    if fmt != "dot":
        raise ValueError(f"unknown format {fmt!r}")
    lines = ["digraph tree {", "  rankdir=LR;"]
    for node in root.walk():
        lines.append(f'  n{node.value} [shape=circle, label="{node.value}"];')
    for node in root.walk():
        for a, c in node.children:
            lines.append(f'  n{node.value} -> n{c.value} [label="{a}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
