"""Mixed-radix (Cantor series) expansions over a pairwise-coprime base sequence.

A base sequence is a list of moduli ``m_0, m_1, ...`` (all >= 2, pairwise
coprime) with cumulative products ``B_0 = 1``, ``B_{j+1} = B_j * m_j``.  Every
rational in ``[0, 1)`` has a digit expansion

    alpha = sum_j  b_j / B_{j+1},     0 <= b_j < m_j,

and the level-``n`` grid partitions ``[0, 1)`` into ``B_n`` half-open
intervals of width ``1/B_n``, one per digit prefix of length ``n``.

Everything here is exact: values are ``fractions.Fraction``, never floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

from .errors import (
    DepthExceeded,
    IndexOutOfRange,
    LevelExceeded,
    ModulusTooSmall,
    NotCoprime,
    OutOfRange,
)

RationalLike = Union[Fraction, int, str]


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce an int, "p/q" string, or Fraction to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True, slots=True)
class BaseSequence:
    """Validated moduli with precomputed cumulative products.

    ``products[0] == 1`` and ``products[j + 1] == products[j] * moduli[j]``,
    so ``products[n]`` is the number of level-``n`` grid intervals.
    Immutable; safe to share between threads.
    """

    moduli: tuple[int, ...]
    products: tuple[int, ...]

    @property
    def depth(self) -> int:
        return len(self.moduli)

    def period(self, level: int) -> int:
        """Number of grid intervals at ``level`` (the product of the first
        ``level`` moduli)."""
        return self.products[level]

    def __str__(self) -> str:
        return ",".join(str(m) for m in self.moduli)


def make_base(moduli: Union[Sequence[int], str]) -> BaseSequence:
    """Build a BaseSequence, validating every modulus and pairwise coprimality.

    Accepts a sequence of ints or a comma-separated string like ``"2,3,5"``.
    """
    if isinstance(moduli, str):
        moduli = [int(part) for part in moduli.split(",")]
    mods = tuple(int(m) for m in moduli)
    if not mods:
        raise ModulusTooSmall("base sequence must be non-empty")
    for m in mods:
        if m < 2:
            raise ModulusTooSmall(f"modulus {m} < 2")
    for (i, a), (j, b) in combinations(enumerate(mods), 2):
        if math.gcd(a, b) != 1:
            raise NotCoprime(f"moduli {a} (level {i}) and {b} (level {j}) share a factor")
    products = [1]
    for m in mods:
        products.append(products[-1] * m)
    return BaseSequence(moduli=mods, products=tuple(products))


@dataclass(frozen=True, slots=True)
class DigitExpansion:
    """A finite digit vector ``b_0, ..., b_{K-1}``, most significant first.

    The constructor trusts its arguments (orbit evaluation creates millions of
    these); use :func:`make_expansion` for inputs that need checking.  The
    exact value is recomputed on access, not stored.
    """

    digits: tuple[int, ...]
    base: BaseSequence

    @property
    def depth(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> Fraction:
        """Exact value ``sum_j digits[j] / products[j+1]`` in ``[0, 1)``."""
        num = 0
        for b, m in zip(self.digits, self.base.moduli):
            num = num * m + b
        return Fraction(num, self.base.products[len(self.digits)])

    def prefix_index(self, level: int) -> int:
        """Index of the level-``level`` grid interval this expansion lies in."""
        idx = 0
        for j in range(level):
            idx = idx * self.base.moduli[j] + self.digits[j]
        return idx

    def replace_digit(self, position: int, digit: int) -> "DigitExpansion":
        digits = list(self.digits)
        digits[position] = digit
        return DigitExpansion(tuple(digits), self.base)

    def __str__(self) -> str:
        return ",".join(str(b) for b in self.digits)


def make_expansion(digits: Sequence[int], base: BaseSequence) -> DigitExpansion:
    """Validated DigitExpansion constructor: each digit in its level's range."""
    digs = tuple(int(b) for b in digits)
    if len(digs) > base.depth:
        raise DepthExceeded(f"{len(digs)} digits but base has depth {base.depth}")
    for j, (b, m) in enumerate(zip(digs, base.moduli)):
        if not 0 <= b < m:
            raise OutOfRange(f"digit {b} at position {j} not in [0, {m})")
    return DigitExpansion(digs, base)


@dataclass(frozen=True, slots=True)
class GridInterval:
    """The half-open interval ``[index/B_level, (index+1)/B_level)``."""

    level: int
    index: int
    lower: Fraction
    upper: Fraction

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    def contains(self, x: Fraction) -> bool:
        return self.lower <= x < self.upper


def grid_interval(level: int, index: int, base: BaseSequence) -> GridInterval:
    """Grid interval at ``level`` with the given index."""
    if level > base.depth or level < 0:
        raise LevelExceeded(f"level {level} not in [0, {base.depth}]")
    count = base.products[level]
    if not 0 <= index < count:
        raise IndexOutOfRange(f"index {index} not in [0, {count})")
    return GridInterval(
        level=level,
        index=index,
        lower=Fraction(index, count),
        upper=Fraction(index + 1, count),
    )


def _greedy_digits(alpha: Fraction, base: BaseSequence, depth: int) -> tuple[list[int], Fraction]:
    """Greedy digit extraction; returns (digits, tail) with
    ``alpha == value(digits) + tail / products[depth]`` and ``0 <= tail < 1``."""
    num, den = alpha.numerator, alpha.denominator
    digits = []
    for j in range(depth):
        num *= base.moduli[j]
        b, num = divmod(num, den)
        digits.append(b)
    return digits, Fraction(num, den)


def encode(alpha: RationalLike, base: BaseSequence, depth: int) -> DigitExpansion:
    """Digits of ``alpha`` to the given depth, by greedy extraction.

    The result is the canonical (terminating-preferred) expansion: the digits
    are exactly the first ``depth`` digits of the unique expansion of
    ``alpha`` that does not end in an all-maximal tail, and

        value(result) <= alpha < value(result) + 1/products[depth].
    """
    alpha = as_fraction(alpha)
    if not 0 <= alpha < 1:
        raise OutOfRange(f"{alpha} not in [0, 1)")
    if depth > base.depth or depth < 0:
        raise DepthExceeded(f"depth {depth} exceeds base depth {base.depth}")
    digits, _ = _greedy_digits(alpha, base, depth)
    return DigitExpansion(tuple(digits), base)


def decode(expansion: DigitExpansion) -> Fraction:
    """Exact value of a digit expansion (inverse of :func:`encode` on grid
    rationals)."""
    return expansion.value


def interval_of(alpha: RationalLike, level: int, base: BaseSequence) -> GridInterval:
    """The level-``level`` grid interval containing ``alpha``.

    Consistent with the codec: ``alpha`` lies in interval ``j`` iff its first
    ``level`` digits equal ``prefix_of_interval(level, j, base)``.
    """
    alpha = as_fraction(alpha)
    if not 0 <= alpha < 1:
        raise OutOfRange(f"{alpha} not in [0, 1)")
    if level > base.depth or level < 0:
        raise LevelExceeded(f"level {level} exceeds base depth {base.depth}")
    index = (alpha.numerator * base.products[level]) // alpha.denominator
    return grid_interval(level, index, base)


def prefix_of_interval(level: int, index: int, base: BaseSequence) -> tuple[int, ...]:
    """The unique digit prefix ``(b_0, ..., b_{level-1})`` whose value is
    ``index / products[level]``; inverse of :func:`interval_of` on grid points."""
    if level > base.depth or level < 0:
        raise LevelExceeded(f"level {level} exceeds base depth {base.depth}")
    count = base.products[level]
    if not 0 <= index < count:
        raise IndexOutOfRange(f"index {index} not in [0, {count})")
    digits = []
    q = index
    for j in range(level):
        weight = count // base.products[j + 1]
        b, q = divmod(q, weight)
        digits.append(b)
    return tuple(digits)
