"""Predicates and constructions for pairwise-non-coprime divisor families.

A family here is a set of divisors > 1 in which, for the interesting
predicates, every two members share a prime ("intersecting").  Maximality
means no further divisor of N can be added without creating a coprime pair.
Divisor 1 is excluded throughout: it is coprime to everything, so any family
containing it could never be intersecting in a useful sense.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from . import lattice
from .errors import PreconditionError
from .lattice import Divisor, Mask, Signature


class DivisorFamily:
    """Immutable, canonically sorted set of divisors > 1 with cached radicals."""

    __slots__ = ("members", "radicals", "_member_set")

    def __init__(self, divisors: Iterable[Divisor]):
        members = sorted({tuple(d) for d in divisors}, key=lattice.divisor_key)
        for d in members:
            if not any(d):
                raise ValueError("divisor 1 cannot belong to a family")
        object.__setattr__(self, "members", tuple(members))
        object.__setattr__(self, "radicals", tuple(lattice.radical(d) for d in members))
        object.__setattr__(self, "_member_set", frozenset(members))

    def __setattr__(self, name, value):
        raise AttributeError("DivisorFamily is immutable")

    def __contains__(self, d: Divisor) -> bool:
        return tuple(d) in self._member_set

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        return isinstance(other, DivisorFamily) and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"DivisorFamily({[lattice.format_divisor(d) for d in self.members]})"

    def squarefree_part(self) -> tuple[Mask, ...]:
        """Masks of the squarefree members, ascending."""
        return tuple(sorted(
            r for d, r in zip(self.members, self.radicals) if all(e <= 1 for e in d)
        ))


@dataclass(frozen=True)
class FamilyReport:
    """Outcome of the intersecting / maximality predicates, with witnesses.

    `coprime_witness` is the canonically first coprime member pair when the
    family is not intersecting; `extension_witness` is the canonically first
    divisor that could still be added when the family is intersecting but not
    maximal.  `is_maximal` is None when only the intersecting check ran.
    """

    is_intersecting: bool
    is_maximal: Optional[bool] = None
    coprime_witness: Optional[tuple[Divisor, Divisor]] = None
    extension_witness: Optional[Divisor] = None


def check_intersecting(family: DivisorFamily) -> FamilyReport:
    """Do all member pairs share a prime?  Witness: first violating pair."""
    rads = family.radicals
    for i in range(len(rads)):
        for j in range(i + 1, len(rads)):
            if not rads[i] & rads[j]:
                return FamilyReport(
                    is_intersecting=False,
                    coprime_witness=(family.members[i], family.members[j]),
                )
    return FamilyReport(is_intersecting=True)


def _compatible_masks(family: DivisorFamily, sig: Signature) -> list[Mask]:
    """Non-empty supports whose divisors could be added without a coprime pair.

    Addability of a divisor depends only on its radical, so the scan runs over
    the 2^n - 1 masks instead of the full lattice.
    """
    rads = set(family.radicals)
    return [m for m in range(1, 1 << sig.n) if all(m & r for r in rads)]


def check_maximal(family: DivisorFamily, sig: Signature) -> FamilyReport:
    """Full predicate: intersecting and admitting no further divisor of N."""
    base = check_intersecting(family)
    if not base.is_intersecting:
        return FamilyReport(False, False, coprime_witness=base.coprime_witness)
    compatible = set(_compatible_masks(family, sig))
    expected = sum(lattice.alpha_weight(m, sig) for m in compatible)
    if len(family) == expected:
        return FamilyReport(True, True)
    for d in lattice.enumerate_divisors(sig):
        if any(d) and lattice.radical(d) in compatible and d not in family:
            return FamilyReport(True, False, extension_witness=d)
    raise AssertionError("family larger than its compatible closure")


def maximalize(family: DivisorFamily, sig: Signature) -> DivisorFamily:
    """Deterministic completion to a maximal family by canonical ascending scan.

    Maximal completions are not unique; the fixed scan order makes the output
    reproducible.  Input must already be intersecting.
    """
    base = check_intersecting(family)
    if not base.is_intersecting:
        raise PreconditionError(
            f"family contains the coprime pair {base.coprime_witness}",
            witness=base.coprime_witness,
        )
    chosen = list(family.members)
    rads = list(family.radicals)
    for d in lattice.enumerate_divisors(sig):
        if not any(d) or d in family:
            continue
        r = lattice.radical(d)
        if all(r & x for x in rads):
            chosen.append(d)
            rads.append(r)
    return DivisorFamily(chosen)


def minimal_members(family: DivisorFamily) -> DivisorFamily:
    """Members not properly divisible by another member; an antichain."""
    keep = [
        d for d in family.members
        if not any(e != d and lattice.divides(e, d) for e in family.members)
    ]
    return DivisorFamily(keep)


def upward_closure(generators: DivisorFamily, sig: Signature) -> DivisorFamily:
    """All divisors of N divisible by at least one generator."""
    for t in generators.members:
        if len(t) != sig.n or any(e > a for e, a in zip(t, sig.alphas)):
            raise ValueError(f"generator {t} does not divide the {sig} lattice")
    gens = generators.members
    return DivisorFamily(
        d for d in lattice.enumerate_divisors(sig)
        if any(lattice.divides(t, d) for t in gens)
    )
