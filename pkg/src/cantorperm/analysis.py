"""Non-monotonicity witnesses and difference-quotient probes.

Two points that differ in a single digit have an exactly computable slope
under the map:

    ( T(a) - T(a') ) / ( a - a' )  =  ( p(b) - p(b') ) / ( b - b' )

where ``b, b'`` are the differing digits and ``p`` the permutation at their
level.  Witness search and the derivative probe are built on this identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .base import DigitExpansion, prefix_of_interval
from .dynamics import apply_map
from .errors import (
    CheckFalsified,
    DegenerateDigit,
    DigitOutOfRange,
    IndexOutOfRange,
    LevelExceeded,
    NoWitnessAtLevel,
)
from .perms import CyclicPermutation, PermutationVector


@dataclass(frozen=True, slots=True)
class MonotonicityWitness:
    """Four points in one grid interval: the first pair has increasing images,
    the second pair decreasing images, so the map is monotone in no
    subinterval containing them."""

    level: int
    interval_index: int
    points: tuple[Fraction, Fraction, Fraction, Fraction]
    images: tuple[Fraction, Fraction, Fraction, Fraction]
    increasing_digits: tuple[int, int]
    decreasing_digits: tuple[int, int]


@dataclass(frozen=True, slots=True)
class QuotientSample:
    digit_level: int
    original_digit: int
    perturbed_digit: int
    quotient: Fraction


def _adjacent_rise(perm: CyclicPermutation):
    for k in range(perm.modulus - 1):
        if perm.image[k] < perm.image[k + 1]:
            return k, k + 1
    return None


def _adjacent_fall(perm: CyclicPermutation):
    for k in range(perm.modulus - 1):
        if perm.image[k] > perm.image[k + 1]:
            return k, k + 1
    return None


def _point_at(pv: PermutationVector, level: int, interval_index: int, digit: int):
    base = pv.base
    prefix = prefix_of_interval(level, interval_index, base)
    digits = prefix + (digit,) + (0,) * (base.depth - level - 1)
    x = DigitExpansion(digits, base)
    return x.value, apply_map(pv, x).value


def find_monotonicity_witness(
    pv: PermutationVector, level: int, interval_index: int
) -> MonotonicityWitness:
    """Search the digit permutation below interval ``interval_index`` at
    ``level`` for an increasing and a decreasing adjacent pair and return the
    corresponding four-point witness.

    Scanning adjacent digit pairs is a complete decision procedure: a
    permutation with no adjacent rise is strictly decreasing and one with no
    adjacent fall is strictly increasing, so non-adjacent pairs never help.
    Raises NoWitnessAtLevel when one orientation is missing (identity
    permutations; the swap on two digits); callers retry one level deeper,
    where sub-intervals of the same interval are governed by the next
    permutation.
    """
    base = pv.base
    if level >= base.depth or level < 0:
        raise LevelExceeded(f"level {level} not in [0, {base.depth})")
    if not 0 <= interval_index < base.products[level]:
        raise IndexOutOfRange(
            f"interval {interval_index} not in [0, {base.products[level]})"
        )
    perm = pv.perms[level]
    rise = _adjacent_rise(perm)
    fall = _adjacent_fall(perm)
    if rise is None or fall is None:
        missing = "increasing" if rise is None else "decreasing"
        raise NoWitnessAtLevel(
            f"permutation at level {level} has no {missing} digit pair"
        )
    chosen = (rise[0], rise[1], fall[0], fall[1])
    evaluated = [_point_at(pv, level, interval_index, k) for k in chosen]
    points = tuple(x for x, _ in evaluated)
    images = tuple(y for _, y in evaluated)
    # all four share the digit prefix and the zero tail, so the image
    # comparisons are decided entirely by the varying digit
    if not (points[0] < points[1] and images[0] < images[1]):
        raise CheckFalsified("increasing pair failed re-evaluation")
    if not (points[2] < points[3] and images[2] > images[3]):
        raise CheckFalsified("decreasing pair failed re-evaluation")
    return MonotonicityWitness(
        level=level,
        interval_index=interval_index,
        points=points,
        images=images,
        increasing_digits=rise,
        decreasing_digits=fall,
    )


def find_witness_descending(
    pv: PermutationVector,
    level: int,
    interval_index: int,
    max_descent: int | None = None,
) -> MonotonicityWitness:
    """Witness search with the descent rule: when a level lacks one
    orientation, retry inside the first sub-interval one level deeper.

    The witness points stay inside the original interval, so the
    non-monotonicity conclusion for it survives the descent.
    """
    base = pv.base
    budget = base.depth - level if max_descent is None else max_descent + 1
    s, j = level, interval_index
    last_error = None
    for _ in range(budget):
        if s >= base.depth:
            break
        try:
            return find_monotonicity_witness(pv, s, j)
        except NoWitnessAtLevel as exc:
            last_error = exc
            j = j * base.moduli[s]
            s += 1
    raise NoWitnessAtLevel(
        f"no witness for interval {interval_index} at level {level} "
        f"within descent budget"
    ) from last_error


def difference_quotient(
    pv: PermutationVector, alpha: DigitExpansion, s: int, ell: int
) -> QuotientSample:
    """Slope of the map between ``alpha`` and its single-digit perturbation at
    level ``s``, computed by the closed form and cross-checked against direct
    evaluation of both images."""
    if s >= len(alpha.digits) or s < 0:
        raise LevelExceeded(f"digit level {s} not in [0, {len(alpha.digits)})")
    perm = pv.perms[s]
    a = alpha.digits[s]
    if not 0 <= ell < perm.modulus:
        raise DigitOutOfRange(f"digit {ell} not in [0, {perm.modulus})")
    if ell == a:
        raise DegenerateDigit(f"perturbed digit equals original digit {a}")
    closed = Fraction(perm.image[a] - perm.image[ell], a - ell)
    perturbed = alpha.replace_digit(s, ell)
    direct = (apply_map(pv, alpha).value - apply_map(pv, perturbed).value) / (
        alpha.value - perturbed.value
    )
    if closed != direct:
        raise CheckFalsified(
            f"difference-quotient identity violated at level {s}: {closed} != {direct}"
        )
    return QuotientSample(
        digit_level=s, original_digit=a, perturbed_digit=ell, quotient=closed
    )


@dataclass(frozen=True, slots=True)
class LevelQuotients:
    """All slopes achievable by perturbing one digit level, plus the
    candidate integer derivative values read off the permutation."""

    level: int
    digit: int
    quotients: tuple[Fraction, ...]
    achieves_one: bool
    successor_candidate: int | None
    zero_candidate: int


@dataclass(frozen=True, slots=True)
class DerivativeProbeReport:
    levels: tuple[LevelQuotients, ...]
    one_at_every_level: bool
    candidates: tuple[int, ...]
    candidates_stable: bool


def derivative_probe(
    pv: PermutationVector, alpha: DigitExpansion, max_level: int
) -> DerivativeProbeReport:
    """Enumerate achievable difference quotients at digit levels
    ``0 .. max_level-1``.

    Any derivative the map could have at a point must be an integer (the
    quotient ``p(b) - p(b-1)`` over successive digits); and if slope 1 stays
    achievable at every level -- automatic for shift permutations away from
    the wrap digit -- no derivative can exist anywhere, since derivative 1
    everywhere would force the identity map.  The report carries the finite
    evidence: quotient sets per level, whether 1 is achievable throughout,
    and whether the integer candidates stabilize over the probed range.
    """
    if max_level > len(alpha.digits) or max_level < 0:
        raise LevelExceeded(
            f"max level {max_level} not in [0, {len(alpha.digits)}]"
        )
    levels = []
    candidates = []
    for s in range(max_level):
        perm = pv.perms[s]
        a = alpha.digits[s]
        quotients = sorted(
            {
                Fraction(perm.image[a] - perm.image[ell], a - ell)
                for ell in range(perm.modulus)
                if ell != a
            }
        )
        successor = perm.image[a] - perm.image[a - 1] if a > 0 else None
        # digit 0 has no lower neighbour; the adjacent slope comes from above:
        # (image[0] - image[1]) / (0 - 1) = image[1] - image[0]
        zero_cand = perm.image[1] - perm.image[0]
        candidates.append(successor if successor is not None else zero_cand)
        levels.append(
            LevelQuotients(
                level=s,
                digit=a,
                quotients=tuple(quotients),
                achieves_one=Fraction(1) in quotients,
                successor_candidate=successor,
                zero_candidate=zero_cand,
            )
        )
    return DerivativeProbeReport(
        levels=tuple(levels),
        one_at_every_level=all(lq.achieves_one for lq in levels),
        candidates=tuple(candidates),
        candidates_stable=len(set(candidates)) <= 1,
    )
