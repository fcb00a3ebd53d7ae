"""Digit permutations, their powers and discrete logarithms, and the
residue-class bookkeeping that combines per-level conditions by the
Chinese remainder theorem.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .base import BaseSequence
from .errors import (
    DigitOutOfRange,
    LengthMismatch,
    ModuliNotCoprime,
    NotBijection,
    NotFullCycle,
    ValidationError,
)


@dataclass(frozen=True, slots=True)
class CyclicPermutation:
    """A permutation of ``{0, ..., m-1}`` in image form, with its cycle
    decomposition precomputed so that arbitrary powers apply in O(1).

    ``cycles[cycle_id[b]][cycle_pos[b]] == b`` for every digit ``b``.
    Use :func:`make_cyclic` (enforces a single full-length cycle) or
    :func:`make_unchecked` (any bijection, e.g. the identity).
    """

    modulus: int
    image: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    cycle_id: tuple[int, ...]
    cycle_pos: tuple[int, ...]
    full_cycle: bool

    def apply(self, b: int) -> int:
        return self.image[b]

    def power(self, n: int, b: int) -> int:
        cycle = self.cycles[self.cycle_id[b]]
        return cycle[(self.cycle_pos[b] + n) % len(cycle)]

    def is_identity(self) -> bool:
        return all(i == b for b, i in enumerate(self.image))

    def __str__(self) -> str:
        return f"{self.modulus}: " + ",".join(str(i) for i in self.image)


def _decompose(image: tuple[int, ...]):
    m = len(image)
    cycles: list[tuple[int, ...]] = []
    cycle_id = [-1] * m
    cycle_pos = [0] * m
    for start in range(m):
        if cycle_id[start] != -1:
            continue
        cycle = []
        b = start
        while cycle_id[b] == -1:
            cycle_id[b] = len(cycles)
            cycle_pos[b] = len(cycle)
            cycle.append(b)
            b = image[b]
        cycles.append(tuple(cycle))
    return tuple(cycles), tuple(cycle_id), tuple(cycle_pos)


def _check_bijection(modulus: int, image: Sequence[int]) -> tuple[int, ...]:
    img = tuple(int(i) for i in image)
    if len(img) != modulus:
        raise NotBijection(f"image has length {len(img)}, expected {modulus}")
    if sorted(img) != list(range(modulus)):
        raise NotBijection(f"image {img} is not a bijection of Z_{modulus}")
    return img


def make_cyclic(modulus: int, image: Sequence[int]) -> CyclicPermutation:
    """Validated constructor: ``image`` must be a single cycle of full length
    ``modulus``, as the power/discrete-log machinery requires."""
    img = _check_bijection(modulus, image)
    cycles, cycle_id, cycle_pos = _decompose(img)
    if len(cycles) != 1:
        raise NotFullCycle(
            f"permutation splits into {len(cycles)} cycles, need a single {modulus}-cycle"
        )
    return CyclicPermutation(modulus, img, cycles, cycle_id, cycle_pos, full_cycle=True)


def make_unchecked(modulus: int, image: Sequence[int]) -> CyclicPermutation:
    """Accept any bijection (identity, products of shorter cycles, ...).

    Powers still work per cycle; operations that need a unique discrete log
    (discrete_log, prefix_residue) reject non-full-cycle permutations.
    """
    img = _check_bijection(modulus, image)
    cycles, cycle_id, cycle_pos = _decompose(img)
    return CyclicPermutation(
        modulus, img, cycles, cycle_id, cycle_pos, full_cycle=(len(cycles) == 1)
    )


def from_cycle(modulus: int, cycle: Sequence[int]) -> CyclicPermutation:
    """Convert one-cycle notation ``(c_0, c_1, ..., c_{m-1})``, meaning
    ``c_0 -> c_1 -> ... -> c_{m-1} -> c_0``, to image form."""
    cyc = [int(c) for c in cycle]
    if len(cyc) != modulus:
        raise NotFullCycle(f"cycle lists {len(cyc)} digits, need all {modulus}")
    image = [-1] * modulus
    for a, b in zip(cyc, cyc[1:] + cyc[:1]):
        if not 0 <= a < modulus:
            raise DigitOutOfRange(f"cycle entry {a} not in [0, {modulus})")
        image[a] = b
    return make_cyclic(modulus, image)


def shift(modulus: int) -> CyclicPermutation:
    """The full cycle ``b -> b + 1 (mod m)``."""
    return make_cyclic(modulus, [(b + 1) % modulus for b in range(modulus)])


def identity(modulus: int) -> CyclicPermutation:
    return make_unchecked(modulus, range(modulus))


def power_apply(perm: CyclicPermutation, n: int, b: int) -> int:
    """``n``-th power of the permutation applied to digit ``b``, in O(1)."""
    if not 0 <= b < perm.modulus:
        raise DigitOutOfRange(f"digit {b} not in [0, {perm.modulus})")
    if n < 0:
        raise ValidationError("negative powers are not supported")
    return perm.power(n, b)


def discrete_log(perm: CyclicPermutation, r: int, s: int) -> int:
    """The unique ``k`` in ``[0, m)`` with ``perm^n(r) == s  iff  n == k (mod m)``.

    Exists exactly because the permutation is one full cycle.
    """
    if not perm.full_cycle:
        raise NotFullCycle("discrete log needs a single full-length cycle")
    for d in (r, s):
        if not 0 <= d < perm.modulus:
            raise DigitOutOfRange(f"digit {d} not in [0, {perm.modulus})")
    return (perm.cycle_pos[s] - perm.cycle_pos[r]) % perm.modulus


@dataclass(frozen=True, slots=True)
class ResidueCondition:
    """The congruence condition ``n == residue (mod modulus)`` on naturals."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValidationError(f"modulus {self.modulus} < 1")
        if not 0 <= self.residue < self.modulus:
            raise ValidationError(f"residue {self.residue} not in [0, {self.modulus})")

    def contains(self, n: int) -> bool:
        return n % self.modulus == self.residue

    def __str__(self) -> str:
        return f"{self.residue}+({self.modulus})"


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    # m1, m2 coprime: unique solution mod m1*m2
    t = ((r2 - r1) * pow(m1, -1, m2)) % m2
    return r1 + m1 * t, m1 * m2


def combine_crt(conditions: Iterable[ResidueCondition]) -> ResidueCondition:
    """Collapse simultaneous congruences with pairwise coprime moduli into a
    single condition with the product modulus (Chinese remainder theorem).

    An empty list gives the vacuous condition ``0+(1)``.
    """
    residue, modulus = 0, 1
    for cond in conditions:
        if math.gcd(modulus, cond.modulus) != 1:
            raise ModuliNotCoprime(
                f"modulus {cond.modulus} not coprime to accumulated {modulus}"
            )
        residue, modulus = _crt_pair(residue, modulus, cond.residue, cond.modulus)
    return ResidueCondition(residue, modulus)


@dataclass(frozen=True, slots=True)
class PermutationVector:
    """One permutation per base level; level ``j`` acts on digit ``j``."""

    perms: tuple[CyclicPermutation, ...]
    base: BaseSequence

    def __post_init__(self):
        if len(self.perms) != self.base.depth:
            raise LengthMismatch(
                f"{len(self.perms)} permutations for base depth {self.base.depth}"
            )
        for j, perm in enumerate(self.perms):
            if perm.modulus != self.base.moduli[j]:
                raise ValidationError(
                    f"permutation at level {j} has modulus {perm.modulus}, "
                    f"base has {self.base.moduli[j]}"
                )

    @property
    def full_cycle(self) -> bool:
        return all(p.full_cycle for p in self.perms)

    @property
    def depth(self) -> int:
        return len(self.perms)


def shift_vector(base: BaseSequence) -> PermutationVector:
    """The all-shift vector: digit ``b`` at level ``j`` maps to ``b+1 mod m_j``."""
    return PermutationVector(tuple(shift(m) for m in base.moduli), base)


def identity_vector(base: BaseSequence) -> PermutationVector:
    return PermutationVector(tuple(identity(m) for m in base.moduli), base)


def prefix_residue(
    pv: PermutationVector,
    from_digits: Sequence[int],
    to_digits: Sequence[int],
) -> ResidueCondition:
    """The residue class of all ``n`` whose ``n``-th power maps every digit of
    ``from_digits`` onto the matching digit of ``to_digits``.

    With full cycles at every level, the per-level discrete logs combine by
    the Chinese remainder theorem into one class mod ``products[len]``.
    """
    if len(from_digits) != len(to_digits):
        raise LengthMismatch(
            f"prefix lengths differ: {len(from_digits)} vs {len(to_digits)}"
        )
    if len(from_digits) > pv.depth:
        raise LengthMismatch(
            f"prefix length {len(from_digits)} exceeds vector depth {pv.depth}"
        )
    conditions = [
        ResidueCondition(discrete_log(pv.perms[i], r, s), pv.perms[i].modulus)
        for i, (r, s) in enumerate(zip(from_digits, to_digits))
    ]
    return combine_crt(conditions)


def parse_permutations(text: str, base: BaseSequence) -> PermutationVector:
    """Parse one validated permutation per line, ``"m: i0,i1,...,i{m-1}"``.

    Blank lines and ``#`` comments are skipped.  Levels are taken in file
    order and must match the base moduli.  Any bijection is accepted;
    operations that need a single full cycle (orbit residue classes,
    equivalence reports) check that themselves.
    """
    perms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            head, imgpart = line.split(":", 1)
            modulus = int(head)
            image = [int(p) for p in imgpart.split(",")]
        except ValueError as exc:
            raise ValidationError(f"line {lineno}: cannot parse {raw!r}") from exc
        perms.append(make_unchecked(modulus, image))
    return PermutationVector(tuple(perms), base)
