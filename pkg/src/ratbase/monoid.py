"""Finitely generated additive submonoids of the value set.

Covers the threshold above which every ``n / q**k`` is representable, the
finite translate cover ``M ⊆ ∪ (g_i + ℕ)``, brute-force enumeration of a
monoid and extraction of its representation language.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded, NotRepresentable
from .numeration import Base, DigitWord, QValue, evaluate, in_value_set, represent_value

__all__ = [
    "MonoidSpec",
    "TranslateCover",
    "threshold",
    "guarantee_bound",
    "translate_cover",
    "monoid_enumerate",
    "monoid_language",
    "DEFAULT_K_CAP",
    "DEFAULT_GRID_CAP",
]

DEFAULT_K_CAP = 16
DEFAULT_GRID_CAP = 10**7


@dataclass(frozen=True)
class MonoidSpec:
    base: Base
    generators: tuple[QValue, ...]

    def __post_init__(self):
        gens = tuple(g if isinstance(g, QValue) else QValue(int(g), 0, self.base.q) for g in self.generators)
        for g in gens:
            if g.q != self.base.q:
                raise ValueError(f"generator {g} is over q={g.q}, base has q={self.base.q}")
            if not in_value_set(self.base, g):
                raise NotRepresentable(f"generator {g} is not representable in base {self.base}")
        object.__setattr__(self, "generators", gens)

    @property
    def k(self) -> int:
        return max((g.exp for g in self.generators), default=0)


@dataclass(frozen=True)
class TranslateCover:
    k: int
    offsets: tuple  # offsets[i] is the least element of V in ℕ + i/q^k, or None

    def covers(self, x: QValue) -> bool:
        """Whether ``x`` lies in ``g_i + ℕ`` for its residue ``i``."""
        if x.exp > self.k:
            return False
        n = x.scaled_num(self.k)
        g = self.offsets[n % len(self.offsets)]
        return g is not None and x >= g


def guarantee_bound(base: Base, k: int) -> int:
    """Numerator from which ``n / q**k`` is certainly in the value set.

    Every ``n >= (p**(k-1) - 1) * (q**(k-1) - 1)`` is a non-negative
    combination of ``p**(k-1)`` and ``q**(k-1)``, the numerators of the
    values of ``1.0^(k-1)`` and ``1`` over ``q**k``.
    """
    if k <= 0:
        return 0
    return (base.p ** (k - 1) - 1) * (base.q ** (k - 1) - 1)


def threshold(base: Base, k: int, cap: int = DEFAULT_K_CAP) -> tuple[int, int]:
    """Return ``(m_k, guarantee)``: the least ``m`` with ``n/q**k`` representable for all ``n >= m``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > cap:
        raise CapExceeded(f"k={k} exceeds cap {cap}")
    bound = guarantee_bound(base, k)
    m = bound
    while m > 0 and in_value_set(base, QValue(m - 1, k, base.q)):
        m -= 1
    return m, bound


def translate_cover(spec: MonoidSpec) -> TranslateCover:
    base, k = spec.base, spec.k
    q = base.q
    modulus = q ** k
    bound = guarantee_bound(base, k)
    offsets = []
    for i in range(modulus):
        g = None
        num = i
        # above the guarantee bound membership is certain, so the scan stops
        while g is None:
            x = QValue(num, k, q)
            if in_value_set(base, x):
                g = x
            elif num >= bound:
                raise AssertionError(f"{x} above guarantee bound but not representable")
            num += modulus
        offsets.append(g)
    return TranslateCover(k, tuple(offsets))


def monoid_enumerate(spec: MonoidSpec, bound: QValue | int, grid_cap: int = DEFAULT_GRID_CAP) -> list[QValue]:
    """Sorted elements of the monoid not exceeding ``bound``."""
    q = spec.base.q
    if isinstance(bound, int):
        bound = QValue(bound, 0, q)
    k = max(spec.k, bound.exp)
    # elements are integers on the grid (1/q^k) ℤ; floor the bound onto it
    top = bound.scaled_num(k)
    if top + 1 > grid_cap:
        raise CapExceeded(f"value grid of {top + 1} cells exceeds cap {grid_cap}")
    steps = sorted({g.scaled_num(k) for g in spec.generators if g.num > 0})
    reach = bytearray(top + 1)
    reach[0] = 1
    for s in steps:
        for x in range(s, top + 1):
            if reach[x - s]:
                reach[x] = 1
    return [QValue(x, k, q) for x in range(top + 1) if reach[x]]


def max_word_value(base: Base, length: int) -> QValue:
    """Value of the largest word of the given length, ``(p-1)^length``."""
    return evaluate(base, DigitWord((base.p - 1,) * length, base.p))


def monoid_language(spec: MonoidSpec, max_len: int, grid_cap: int = DEFAULT_GRID_CAP) -> set[DigitWord]:
    """Representations of length at most ``max_len`` of the monoid elements."""
    words = set()
    for x in monoid_enumerate(spec, max_word_value(spec.base, max_len), grid_cap):
        w = represent_value(spec.base, x)
        if len(w) <= max_len:
            words.add(w)
    return words
