"""Measure density of residue-class sets, covering upper bounds, and the
partition criterion that turns verified bounds into exact measures.

A periodic set is a finite union of residue classes ``r+(M)``; its density is
``|residues| / M``, agreeing with natural density.  For sets given only by a
membership oracle, a verified covering by residue classes yields the upper
bound ``sum 1/D_j``.  The partition criterion: if finitely many disjoint sets
cover the naturals and the sum of their verified upper bounds is at most 1,
subadditivity forces every bound to be the exact measure.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import (
    BoundsExceedOne,
    NotACovering,
    NotAPartition,
    ValidationError,
)
from .perms import ResidueCondition


@dataclass(frozen=True, slots=True)
class PeriodicSet:
    """A union of residue classes mod ``modulus``, stored as a residue set.

    The stored modulus need not be minimal (:func:`normalize` reduces it).
    """

    modulus: int
    residues: frozenset[int]

    def __post_init__(self):
        if self.modulus < 1:
            raise ValidationError(f"modulus {self.modulus} < 1")
        for r in self.residues:
            if not 0 <= r < self.modulus:
                raise ValidationError(f"residue {r} not in [0, {self.modulus})")

    def contains(self, n: int) -> bool:
        return n % self.modulus in self.residues

    def __str__(self) -> str:
        return ",".join(str(r) for r in sorted(self.residues)) + f"({self.modulus})"


def periodic_set(residues: Iterable[int], modulus: int) -> PeriodicSet:
    return PeriodicSet(modulus, frozenset(int(r) for r in residues))


def from_condition(cond: ResidueCondition) -> PeriodicSet:
    return PeriodicSet(cond.modulus, frozenset((cond.residue,)))


def parse_periodic_set(text: str) -> PeriodicSet:
    """Parse the literal syntax ``"r1,r2,...(M)"``, e.g. ``"0,3(6)"``."""
    text = text.strip()
    if not text.endswith(")") or "(" not in text:
        raise ValidationError(f"cannot parse periodic set {text!r}")
    respart, modpart = text[:-1].rsplit("(", 1)
    try:
        modulus = int(modpart)
        residues = [int(r) for r in respart.split(",")] if respart else []
    except ValueError as exc:
        raise ValidationError(f"cannot parse periodic set {text!r}") from exc
    return periodic_set(residues, modulus)


def density(ps: PeriodicSet) -> Fraction:
    """Measure density ``|residues| / modulus``; for a single class ``r+(m)``
    this is ``1/m``."""
    return Fraction(len(ps.residues), ps.modulus)


def expand_to(ps: PeriodicSet, modulus: int) -> PeriodicSet:
    """Rewrite the same set with a larger modulus (must be a multiple)."""
    if modulus % ps.modulus != 0:
        raise ValidationError(f"{modulus} is not a multiple of {ps.modulus}")
    residues = frozenset(
        r + k * ps.modulus for r in ps.residues for k in range(modulus // ps.modulus)
    )
    return PeriodicSet(modulus, residues)


def normalize(ps: PeriodicSet) -> PeriodicSet:
    """Equivalent set with the least modulus."""
    for d in range(1, ps.modulus + 1):
        if ps.modulus % d != 0:
            continue
        reduced = frozenset(r % d for r in ps.residues)
        if len(reduced) * (ps.modulus // d) == len(ps.residues):
            candidate = PeriodicSet(d, reduced)
            if expand_to(candidate, ps.modulus).residues == ps.residues:
                return candidate
    return ps


def intersect(ps1: PeriodicSet, ps2: PeriodicSet) -> PeriodicSet:
    """Intersection, computed exhaustively over one common period."""
    modulus = math.lcm(ps1.modulus, ps2.modulus)
    residues = frozenset(
        n for n in range(modulus) if ps1.contains(n) and ps2.contains(n)
    )
    return PeriodicSet(modulus, residues)


def union(ps1: PeriodicSet, ps2: PeriodicSet) -> PeriodicSet:
    modulus = math.lcm(ps1.modulus, ps2.modulus)
    residues = frozenset(
        n for n in range(modulus) if ps1.contains(n) or ps2.contains(n)
    )
    return PeriodicSet(modulus, residues)


@dataclass(frozen=True, slots=True)
class CoveringBound:
    """A verified covering by residue classes and the upper bound it proves."""

    covering: tuple[ResidueCondition, ...]
    bound: Fraction


def covering_bound(
    target_period: int,
    member_oracle: Callable[[int], bool],
    covering: Sequence[ResidueCondition],
) -> CoveringBound:
    """Check that every member of the target set lies in some class of the
    covering, then report ``sum 1/D_j`` as a density upper bound.

    The target set is periodic with period ``target_period`` and membership
    decided by ``member_oracle`` on ``[0, target_period)``; verification scans
    one full common period.
    """
    if target_period < 1:
        raise ValidationError(f"target period {target_period} < 1")
    period = target_period
    for cond in covering:
        period = math.lcm(period, cond.modulus)
    for n in range(period):
        if member_oracle(n % target_period):
            if not any(cond.contains(n) for cond in covering):
                raise NotACovering(f"member {n} escapes every covering class")
    bound = sum((Fraction(1, cond.modulus) for cond in covering), Fraction(0))
    return CoveringBound(tuple(covering), bound)


PartLike = Union[PeriodicSet, tuple]


@dataclass(frozen=True, slots=True)
class PartitionVerdict:
    """Outcome of the partition criterion: every part measurable, with the
    supplied bound as its exact measure."""

    parts: tuple[PeriodicSet, ...]
    measures: tuple[Fraction, ...]

    @property
    def measurable(self) -> bool:
        return True


def measurable_partition_check(parts: Iterable[PartLike]) -> PartitionVerdict:
    """Verify disjointness, full cover of the naturals, and bound sum <= 1;
    on success each part is measurable with measure equal to its bound.

    Each part is a PeriodicSet (bound defaults to its exact density) or a
    ``(PeriodicSet, bound)`` pair where the bound is a verified density upper
    bound.  The measure 1 of the naturals is at most the sum of the parts'
    densities by subadditivity, and at most 1 by hypothesis, so every
    inequality in the chain is an equality.
    """
    pairs: list[tuple[PeriodicSet, Fraction]] = []
    for part in parts:
        if isinstance(part, PeriodicSet):
            pairs.append((part, density(part)))
        else:
            ps, bound = part
            pairs.append((ps, Fraction(bound)))
    if not pairs:
        raise NotAPartition("no parts given")
    period = 1
    for ps, _ in pairs:
        period = math.lcm(period, ps.modulus)
    for n in range(period):
        hits = sum(1 for ps, _ in pairs if ps.contains(n))
        if hits == 0:
            raise NotAPartition(f"{n} is covered by no part")
        if hits > 1:
            raise NotAPartition(f"{n} is covered by {hits} parts")
    total = sum((bound for _, bound in pairs), Fraction(0))
    if total > 1:
        raise BoundsExceedOne(f"bounds sum to {total} > 1, criterion inapplicable")
    return PartitionVerdict(
        parts=tuple(ps for ps, _ in pairs),
        measures=tuple(bound for _, bound in pairs),
    )
