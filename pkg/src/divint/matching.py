"""Complement pairings on upward-closed squarefree families.

For an upward-closed family F of divisors of a squarefree M there is always a
permutation sigma of F pairing each member d_j with a member d_sigma(j) whose
complement M/d_sigma(j) divides d_j.  The permutation is found by maximum
bipartite matching on the divisibility graph and returned with one explicit
divisibility certificate per member; a non-perfect matching would be a
counterexample to the underlying combinatorial fact and is raised as a
diagnostic, never silently absorbed.

On a minimum-size maximal family of divisors of N this pairing, applied to
the squarefree members not divisible by the last prime, additionally
preserves the exponent-product weight of each member; that equality is what
forces the extremal structure and is re-verified here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import families, lattice
from .errors import PreconditionError, TheoremViolationError
from .families import DivisorFamily
from .lattice import Mask, Signature


@dataclass(frozen=True)
class UpwardClosedFamily:
    """Masks `members` within `ground`, expected upward closed in the ground."""

    ground: Mask
    members: tuple[Mask, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))
        for m in self.members:
            if m & ~self.ground:
                raise ValueError(f"member {m:#b} is not a divisor of ground {self.ground:#b}")


@dataclass(frozen=True)
class PermutationWitness:
    """sigma plus one (position, source, complement-mask) certificate each.

    For every position j: complement of members[sigma[j]] within the ground
    is a subset of members[j].
    """

    sigma: tuple[int, ...]
    certificates: tuple[tuple[int, int, Mask], ...]

    def verify(self, family: UpwardClosedFamily) -> bool:
        if sorted(self.sigma) != list(range(len(family.members))):
            return False
        for j, (pos, src, comp) in enumerate(self.certificates):
            if pos != j or src != self.sigma[j]:
                return False
            expected = family.ground ^ family.members[src]
            if comp != expected or comp & family.members[j] != comp:
                return False
        return True


def validate_upward_closed(family: UpwardClosedFamily) -> None:
    """Raise with a violating (member, missing superset) pair if not closed."""
    member_set = set(family.members)
    for m in family.members:
        free = family.ground ^ m
        for b in lattice.iter_bits(free):
            q = m | (1 << b)
            if q not in member_set:
                raise PreconditionError(
                    f"family is not upward closed: {m:#b} is a member but {q:#b} is not",
                    witness=(m, q),
                )


def _max_matching(n_left: int, n_right: int, adj: list[list[int]]):
    """Augmenting-path maximum bipartite matching with deterministic scan order.

    Returns (match_left, match_right) with -1 for unmatched vertices.
    """
    match_left = [-1] * n_left
    match_right = [-1] * n_right

    def augment(j: int, seen: list[bool]) -> bool:
        for i in adj[j]:
            if not seen[i]:
                seen[i] = True
                if match_right[i] == -1 or augment(match_right[i], seen):
                    match_left[j] = i
                    match_right[i] = j
                    return True
        return False

    for j in range(n_left):
        augment(j, [False] * n_right)
    return match_left, match_right


def _hall_violator(adj: list[list[int]], match_left: list[int],
                   match_right: list[int]) -> list[int]:
    """Left vertex set whose joint neighborhood is smaller than itself."""
    n_left = len(match_left)
    start = [j for j in range(n_left) if match_left[j] == -1]
    reach = set(start)
    frontier = list(start)
    while frontier:
        j = frontier.pop()
        for i in adj[j]:
            j2 = match_right[i]
            if j2 != -1 and j2 not in reach:
                reach.add(j2)
                frontier.append(j2)
    return sorted(reach)


def complement_permutation(family: UpwardClosedFamily) -> PermutationWitness:
    """Permutation sigma with complement(members[sigma[j]]) | members[j] for all j.

    The input must be upward closed within its ground; a perfect matching then
    always exists.  A non-perfect matching is raised as a diagnostic carrying
    the offending member subset.
    """
    validate_upward_closed(family)
    members = family.members
    s = len(members)
    adj = [
        [i for i in range(s) if (family.ground ^ members[i]) & ~members[j] == 0]
        for j in range(s)
    ]
    match_left, match_right = _max_matching(s, s, adj)
    if any(i == -1 for i in match_left):
        violator = _hall_violator(adj, match_left, match_right)
        raise TheoremViolationError(
            "no perfect complement matching on an upward-closed family",
            counterexample={
                "ground": family.ground,
                "members": list(members),
                "violator_positions": violator,
                "violator_members": [members[j] for j in violator],
            },
        )
    sigma = tuple(match_left)
    certificates = tuple(
        (j, sigma[j], family.ground ^ members[sigma[j]]) for j in range(s)
    )
    return PermutationWitness(sigma, certificates)


def all_upward_closed_families(k: int, include_constants: bool = False):
    """Every upward-closed family of non-empty subsets of [k].

    Generated as upward closures of all antichains of non-empty masks.  The
    two constant families (empty, and everything including the empty set) are
    excluded unless requested.
    """
    full = (1 << k) - 1
    masks = list(range(1, full + 1))
    out = []
    for r in range(0, len(masks) + 1):
        for combo in itertools.combinations(masks, r):
            if any(a != b and a & b == a for a in combo for b in combo):
                continue  # not an antichain
            if r == 0:
                continue
            closure = tuple(sorted(
                m for m in masks if any(m & t == t for t in combo)
            ))
            out.append(UpwardClosedFamily(full, closure))
    if include_constants:
        out.append(UpwardClosedFamily(full, ()))
        out.append(UpwardClosedFamily(full, tuple(range(full + 1))))
    return out


@dataclass(frozen=True)
class PairingEntry:
    """One pairing certificate on the minimum-family squarefree part.

    `position` and `source` are squarefree members (masks without the last
    prime); `bar_source` is the full-lattice complement of the source, which
    divides position * p_n; `excess` is (position * p_n) / bar_source.  The
    weights alpha(position) and alpha(bar_source) agree on minimum families;
    in the flat regime alpha(excess) is 1.
    """

    position: Mask
    source: Mask
    bar_source: Mask
    excess: Mask
    alpha_position: int
    alpha_bar_source: int
    alpha_excess: int


@dataclass(frozen=True)
class PairingReport:
    members: tuple[Mask, ...]
    sigma: tuple[int, ...]
    entries: tuple[PairingEntry, ...]


def alpha_pairing(family: DivisorFamily, sig: Signature) -> PairingReport:
    """Weight-preserving complement pairing on a minimum-size maximal family.

    Applies the complement permutation to the squarefree members not divisible
    by the last prime (ground: the first n-1 primes), lifts each certificate
    back to the full lattice, and verifies the weight equality
    alpha(d_j) = alpha(complement(d_sigma(j))).  A failed equality would
    contradict minimality and is raised as a diagnostic.
    """
    report = families.check_maximal(family, sig)
    if not report.is_maximal:
        witness = report.coprime_witness or report.extension_witness
        raise PreconditionError(
            "pairing requires a maximal intersecting family", witness=witness
        )
    bound = lattice.min_size_bound(sig)
    if len(family) != bound:
        raise PreconditionError(
            f"pairing requires a minimum-size family: got {len(family)}, minimum {bound}"
        )
    n = sig.n
    last = 1 << (n - 1)
    squarefree = family.squarefree_part()
    without_last = tuple(sorted(m for m in squarefree if not m & last))
    ground = (1 << (n - 1)) - 1
    witness = complement_permutation(UpwardClosedFamily(ground, without_last))
    full = (1 << n) - 1
    entries = []
    for j, pos in enumerate(without_last):
        src = without_last[witness.sigma[j]]
        bar_src = full ^ src
        excess = (pos | last) & ~bar_src
        entry = PairingEntry(
            position=pos,
            source=src,
            bar_source=bar_src,
            excess=excess,
            alpha_position=lattice.alpha_weight(pos, sig),
            alpha_bar_source=lattice.alpha_weight(bar_src, sig),
            alpha_excess=lattice.alpha_weight(excess, sig),
        )
        if entry.alpha_position != entry.alpha_bar_source:
            raise TheoremViolationError(
                "weight equality failed on a minimum-size family",
                counterexample={
                    "signature": list(sig.alphas),
                    "position": pos,
                    "source": src,
                    "alpha_position": entry.alpha_position,
                    "alpha_bar_source": entry.alpha_bar_source,
                },
            )
        entries.append(entry)
    return PairingReport(without_last, witness.sigma, tuple(entries))
