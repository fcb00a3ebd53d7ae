"""The digit-permutation map and exact random-access orbit evaluation.

The map sends an expansion ``(b_0, b_1, ...)`` to ``(p_0(b_0), p_1(b_1), ...)``
digit-wise.  Because level ``j`` evolves independently under powers of its own
permutation, the ``n``-th iterate of any point is computable digit-by-digit in
O(depth), independent of ``n`` -- orbits have exact random access.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .base import DigitExpansion, _greedy_digits, as_fraction
from .errors import CheckFalsified, DepthMismatch, LevelExceeded, OutOfRange, ValidationError
from .perms import PermutationVector


@dataclass(frozen=True, slots=True)
class OrbitSpec:
    """Seed expansion plus the permutation vector driving it.

    Precomputes one (cycle, start position, length) triple per level so that
    :func:`orbit_point` runs a few list lookups per digit and nothing else.
    """

    alpha_digits: DigitExpansion
    pv: PermutationVector
    depth: int
    _tables: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.depth != len(self.alpha_digits.digits):
            raise DepthMismatch(
                f"declared depth {self.depth} != {len(self.alpha_digits.digits)} seed digits"
            )
        if self.depth > self.pv.depth:
            raise DepthMismatch(
                f"depth {self.depth} exceeds permutation vector depth {self.pv.depth}"
            )
        if self.alpha_digits.base is not self.pv.base and self.alpha_digits.base != self.pv.base:
            raise DepthMismatch("seed digits and permutations use different bases")
        tables = []
        for j, b in enumerate(self.alpha_digits.digits):
            perm = self.pv.perms[j]
            cycle = perm.cycles[perm.cycle_id[b]]
            tables.append((cycle, perm.cycle_pos[b], len(cycle)))
        object.__setattr__(self, "_tables", tuple(tables))


@dataclass(frozen=True, slots=True)
class OrbitPoint:
    """The ``index``-th iterate of the seed, as an exact digit expansion."""

    index: int
    digits: DigitExpansion

    @property
    def value(self) -> Fraction:
        return self.digits.value


def make_orbit(alpha_digits: DigitExpansion, pv: PermutationVector) -> OrbitSpec:
    return OrbitSpec(alpha_digits, pv, depth=len(alpha_digits.digits))


def apply_map(pv: PermutationVector, x: DigitExpansion) -> DigitExpansion:
    """One application of the map: permute each digit by its level's
    permutation."""
    if len(x.digits) > pv.depth:
        raise DepthMismatch(
            f"expansion has {len(x.digits)} digits, vector only {pv.depth} levels"
        )
    return DigitExpansion(
        tuple(pv.perms[j].image[b] for j, b in enumerate(x.digits)), x.base
    )


def orbit_point(spec: OrbitSpec, n: int) -> OrbitPoint:
    """The ``n``-th iterate of the seed in O(depth), for arbitrarily large ``n``.

    Digit ``j`` is read off the precomputed cycle of the seed digit, advanced
    ``n mod cycle_length`` steps; agrees with ``n``-fold :func:`apply_map`.
    """
    if n < 0:
        raise ValidationError("orbit index must be >= 0")
    digits = tuple([cycle[(start + n) % length] for cycle, start, length in spec._tables])
    return OrbitPoint(n, DigitExpansion(digits, spec.alpha_digits.base))


def orbit_prefix(spec: OrbitSpec, count: int) -> list[OrbitPoint]:
    """The first ``count`` orbit points, indices ``0 .. count-1``."""
    if count < 1:
        raise ValidationError("count must be >= 1")
    return [orbit_point(spec, n) for n in range(count)]


def apply_truncated(pv: PermutationVector, x, depth: int) -> Fraction:
    """The depth-``depth`` truncation of the map on an arbitrary rational:
    permute the first ``depth`` digits, carry the remaining tail unchanged.

    On grid rationals (denominator dividing ``products[depth]``) the tail is
    zero and the result is the exact digit-permuted value.  On any point the
    result differs from the fully-permuted value by less than
    ``1/products[depth]``, and the map is a bijection of ``[0, 1)`` (it
    translates each level-``depth`` grid interval onto another one).
    """
    x = as_fraction(x)
    if not 0 <= x < 1:
        raise OutOfRange(f"{x} not in [0, 1)")
    if depth > pv.depth:
        raise DepthMismatch(f"depth {depth} exceeds permutation vector depth {pv.depth}")
    base = pv.base
    digits, tail = _greedy_digits(x, base, depth)
    num = 0
    for j, b in enumerate(digits):
        num = num * base.moduli[j] + pv.perms[j].image[b]
    return (num + tail) / base.products[depth]


def modulus_of_continuity_check(pv: PermutationVector, level: int) -> Fraction:
    """Certify the uniform-continuity bound at ``level`` and return it.

    Two points in the same level-``level`` grid interval share their first
    ``level`` digits, so their images share the first ``level`` permuted
    digits and differ by at most ``1/products[level]``.  The check verifies
    the finite content of that argument: the induced map on interval indices
    is a bijection of ``[0, products[level])``.
    """
    base = pv.base
    if level > base.depth or level < 0:
        raise LevelExceeded(f"level {level} not in [0, {base.depth}]")
    if level == 0:
        return Fraction(1)
    count = base.products[level]
    seen = [False] * count
    for index in range(count):
        image_index = 0
        q = index
        # walk the prefix most significant digit first
        for j in range(level):
            weight = count // base.products[j + 1]
            b, q = divmod(q, weight)
            image_index = image_index * base.moduli[j] + pv.perms[j].image[b]
        if seen[image_index]:
            raise CheckFalsified(
                f"interval map not injective at level {level}: index {image_index} hit twice"
            )
        seen[image_index] = True
    return Fraction(1, count)
