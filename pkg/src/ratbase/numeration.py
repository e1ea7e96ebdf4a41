"""Exact arithmetic for rational base numeration systems.

A base is a pair ``(p, q)`` of coprime integers with ``p > q > 1``.  A word
``a_n ... a_1 a_0`` over the digits ``{0, ..., p-1}`` has value

    sum(a_i / q * (p / q) ** i)

so every value is a non-negative rational whose denominator divides a power
of ``q``.  Values are kept as :class:`QValue` (``num / q**exp``) and words as
:class:`DigitWord` (most significant digit first).
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

from .errors import (
    BadOrdering,
    DigitOutOfRange,
    NegativeValue,
    NotCoprime,
    NotRepresentable,
)

__all__ = [
    "Base",
    "DigitWord",
    "QValue",
    "validate_base",
    "represent_integer",
    "evaluate",
    "represent_value",
    "in_value_set",
    "as_word",
    "format_word",
    "parse_word",
    "parse_qvalue",
]


@dataclass(frozen=True)
class Base:
    p: int
    q: int

    def __post_init__(self):
        if self.p <= self.q or self.q <= 1:
            raise BadOrdering(f"base requires p > q > 1, got p={self.p}, q={self.q}")
        if math.gcd(self.p, self.q) != 1:
            raise NotCoprime(f"base requires gcd(p, q) = 1, got gcd({self.p}, {self.q}) = "
                             f"{math.gcd(self.p, self.q)}")

    def __str__(self):
        return f"{self.p}/{self.q}"


def validate_base(p: int, q: int) -> Base:
    return Base(int(p), int(q))


@dataclass(frozen=True)
class DigitWord:
    """Finite digit sequence, most significant digit first."""

    digits: tuple[int, ...]
    alphabet_size: int

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        for d in self.digits:
            if not 0 <= d < self.alphabet_size:
                raise DigitOutOfRange(f"digit {d} outside alphabet A_{self.alphabet_size}")

    @classmethod
    def parse(cls, text: str, alphabet_size: int) -> "DigitWord":
        return cls(parse_word(text), alphabet_size)

    def __len__(self):
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return DigitWord(self.digits[item], self.alphabet_size)
        return self.digits[item]

    def __add__(self, other: "DigitWord") -> "DigitWord":
        if not isinstance(other, DigitWord):
            return NotImplemented
        return DigitWord(self.digits + other.digits, max(self.alphabet_size, other.alphabet_size))

    def __mul__(self, times: int) -> "DigitWord":
        return DigitWord(self.digits * times, self.alphabet_size)

    def __str__(self):
        return format_word(self.digits, self.alphabet_size)

    def __repr__(self):
        return f"DigitWord({str(self)!r}, n={self.alphabet_size})"

    @property
    def has_leading_zero(self) -> bool:
        return bool(self.digits) and self.digits[0] == 0

    def strip(self) -> "DigitWord":
        """Drop leading zeros."""
        i = 0
        while i < len(self.digits) and self.digits[i] == 0:
            i += 1
        return DigitWord(self.digits[i:], self.alphabet_size)

    def padded(self, length: int) -> "DigitWord":
        return DigitWord((0,) * max(0, length - len(self.digits)) + self.digits, self.alphabet_size)

    def with_alphabet(self, alphabet_size: int) -> "DigitWord":
        return DigitWord(self.digits, alphabet_size)


WordLike = Union[DigitWord, str, Sequence[int]]


def as_word(w: WordLike, alphabet_size: int) -> DigitWord:
    """Coerce text or a digit sequence to a :class:`DigitWord` over ``A_n``.

    An existing DigitWord keeps its own alphabet unless it is narrower than
    ``alphabet_size``; the digits are re-checked against the requested size.
    """
    if isinstance(w, DigitWord):
        if w.alphabet_size == alphabet_size:
            return w
        return DigitWord(w.digits, alphabet_size)
    if isinstance(w, str):
        return DigitWord(parse_word(w), alphabet_size)
    return DigitWord(tuple(w), alphabet_size)


def format_word(digits: Iterable[int], alphabet_size: int) -> str:
    digits = tuple(digits)
    if alphabet_size <= 10:
        return "".join(str(d) for d in digits)
    return ",".join(str(d) for d in digits)


def parse_word(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "ε", "eps"):
        return ()
    if "," in text:
        return tuple(int(t) for t in text.split(","))
    if not text.isdigit():
        raise ValueError(f"not a digit word: {text!r}")
    return tuple(int(c) for c in text)


@total_ordering
@dataclass(frozen=True, eq=False)
class QValue:
    """Non-negative rational ``num / q**exp`` in canonical (minimal ``exp``) form."""

    num: int
    exp: int
    q: int

    def __post_init__(self):
        num, exp, q = int(self.num), int(self.exp), int(self.q)
        if num < 0:
            raise NegativeValue(f"negative value {num}/{q}^{exp}")
        if exp < 0:
            num *= q ** (-exp)
            exp = 0
        if num == 0:
            exp = 0
        while exp > 0 and num % q == 0:
            num //= q
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)
        object.__setattr__(self, "q", q)

    @classmethod
    def from_fraction(cls, x, q: int) -> "QValue":
        """Build from a Fraction / int; raise ValueError if the denominator is not a q-power divisor."""
        x = Fraction(x)
        if x < 0:
            raise NegativeValue(f"negative value {x}")
        den = x.denominator
        exp = 0
        # den | q**exp is possible only if exp <= log2(den)
        while q ** exp % den:
            exp += 1
            if exp > den.bit_length():
                raise ValueError(f"denominator {den} does not divide a power of {q}")
        scale = q ** exp
        return cls(x.numerator * (scale // den), exp, q)

    @classmethod
    def integer(cls, n: int, q: int) -> "QValue":
        return cls(n, 0, q)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.num, self.q ** self.exp)

    def is_integer(self) -> bool:
        return self.exp == 0

    def scaled_num(self, exp: int) -> int:
        """Numerator of this value over ``q**exp`` (requires ``exp >= self.exp``)."""
        if exp < self.exp:
            raise ValueError("target exponent below canonical exponent")
        return self.num * self.q ** (exp - self.exp)

    def _check(self, other):
        if isinstance(other, int):
            return QValue(other, 0, self.q)
        if isinstance(other, QValue):
            if other.q != self.q:
                raise ValueError("QValues over different q")
            return other
        return None

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        e = max(self.exp, other.exp)
        return QValue(self.scaled_num(e) + other.scaled_num(e), e, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        e = max(self.exp, other.exp)
        return QValue(self.scaled_num(e) - other.scaled_num(e), e, self.q)

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return QValue(self.num * k, self.exp, self.q)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, QValue):
            return (self.num, self.exp, self.q) == (other.num, other.exp, other.q)
        if isinstance(other, (int, Fraction)):
            return self.fraction == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, QValue):
            return self.fraction < other.fraction
        if isinstance(other, (int, Fraction)):
            return self.fraction < other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.exp, self.q))

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{self.q}^{self.exp}"

    def __repr__(self):
        return f"QValue({self})"


_QVALUE_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+)\s*(?:\^\s*(\d+))?)?\s*$")


def parse_qvalue(text: str, q: int) -> QValue:
    """Parse ``"num/q^exp"``, a plain integer, or ``"num/den"`` with ``den`` a power divisor of q."""
    m = _QVALUE_RE.match(text)
    if not m:
        raise ValueError(f"not a value: {text!r}")
    num, den, exp = m.groups()
    if den is None:
        return QValue(int(num), 0, q)
    if exp is not None:
        if int(den) != q:
            raise ValueError(f"value {text!r} is not over a power of q={q}")
        return QValue(int(num), int(exp), q)
    return QValue.from_fraction(Fraction(int(num), int(den)), q)


def represent_integer(base: Base, n: int) -> DigitWord:
    """Representation of the integer ``n`` by the modified Euclidean division."""
    if n < 0:
        raise NegativeValue(f"cannot represent negative integer {n}")
    p, q = base.p, base.q
    lsd_first = []
    while n > 0:
        n, a = divmod(q * n, p)
        lsd_first.append(a)
    return DigitWord(tuple(reversed(lsd_first)), p)


def evaluate(base: Base, w: WordLike) -> QValue:
    """Exact value of ``w``; wide alphabets (e.g. ``A_{2p-1}``) are allowed."""
    if not isinstance(w, DigitWord):
        w = as_word(w, base.p)
    p, q = base.p, base.q
    length = len(w.digits)
    total = 0
    for i, a in enumerate(reversed(w.digits)):
        total += a * p ** i * q ** (length - 1 - i)
    return QValue(total, length, q)


def _forced_digit(base: Base, x: QValue) -> int:
    p, q = base.p, base.q
    if x.exp == 0:
        return (q * x.num) % p
    return (x.num * pow(q ** (x.exp - 1), -1, p)) % p


def represent_value(base: Base, x: QValue | int) -> DigitWord:
    """Unique leading-zero-free word of value ``x``.

    Raises :class:`NotRepresentable` when ``x`` is outside the value set.
    """
    p, q = base.p, base.q
    if isinstance(x, int):
        x = QValue(x, 0, q)
    if x.q != q:
        raise ValueError("value is over a different q")
    lsd_first = []
    num, exp = x.num, x.exp
    while num > 0:
        cur = QValue(num, exp, q)
        a = _forced_digit(base, cur)
        # q*x - a, over q**(exp-1) (or over 1 when exp == 0)
        if cur.exp == 0:
            rest = q * cur.num - a
            new_exp = 0
        else:
            rest = cur.num - a * q ** (cur.exp - 1)
            new_exp = cur.exp - 1
        if rest < 0:
            raise NotRepresentable(f"{x} is not in V_{base}")
        assert rest % p == 0
        lsd_first.append(a)
        reduced = QValue(rest // p, new_exp, q)
        num, exp = reduced.num, reduced.exp
    return DigitWord(tuple(reversed(lsd_first)), p)


def in_value_set(base: Base, x: QValue | int) -> bool:
    try:
        represent_value(base, x)
    except NotRepresentable:
        return False
    return True
