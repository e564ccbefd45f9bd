"""Minimum maximal-family sizes inside restricted divisor universes.

Fix t >= 2 and keep only the divisors with exactly t distinct prime factors
(omega mode) or exactly t prime factors counted with multiplicity (bigomega
mode).  These solvers exhaustively enumerate the maximal pairwise-non-coprime
families inside that universe and report the minimum size, how many families
attain it, and the attaining families themselves.  No closed form for these
minima is known; the output is data, cross-checked rather than compared to a
formula: every search runs twice under independent vertex orders, and every
witness is re-verified by direct extension tests.

Maximality defaults to the restricted reading (no divisor from the same
universe can be added).  The global reading (no divisor of N at all can be
added) is also available; under it a universe may contain no admissible
family, which is reported as a status rather than an error.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from . import families, lattice, oracle
from .errors import DivintError, ResourceLimitError
from .families import DivisorFamily
from .lattice import Divisor, Signature

UNIVERSE_CAP = 300
MODES = ("omega", "bigomega")
MAXIMALITIES = ("restricted", "global")

_COUNTERS = {"omega": lattice.omega, "bigomega": lattice.big_omega}


@dataclass(frozen=True)
class RestrictedUniverse:
    signature: Signature
    mode: str
    t: int
    members: tuple[Divisor, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class OpenProblemResult:
    """Outcome of one (signature, mode, t, maximality) cell.

    status is "ok", "empty-universe" (no divisor has the requested count), or
    "no-maximal-family" (global maximality only: no subset of the universe is
    maximal among all divisors).  value and attaining_count are 0 outside
    "ok".  witnesses holds the minimum-size families, or None above the
    materialization cap.
    """

    signature: Signature
    mode: str
    t: int
    maximality: str
    status: str
    value: int
    attaining_count: int
    universe_size: int
    witnesses: Optional[tuple[DivisorFamily, ...]]
    note: Optional[str] = None


def _validate(mode: str, t: int, maximality: str, allow_t1: bool) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}: expected one of {MODES}")
    if maximality not in MAXIMALITIES:
        raise ValueError(
            f"unknown maximality {maximality!r}: expected one of {MAXIMALITIES}"
        )
    if t < 1 or (t == 1 and not allow_t1):
        raise ValueError(
            f"t must be at least 2 (got {t}); pass allow_t1 / --allow-t1 to "
            f"explore t=1 anyway"
        )


def build_universe(sig: Signature, mode: str, t: int,
                   allow_t1: bool = False) -> RestrictedUniverse:
    """All divisors with the requested factor count, in canonical order.

    An out-of-range t yields an empty universe, not an error; emptiness is a
    legitimate answer for a cell.
    """
    _validate(mode, t, "restricted", allow_t1)
    count = _COUNTERS[mode]
    members = tuple(
        d for d in lattice.enumerate_divisors(sig) if count(d) == t
    )
    return RestrictedUniverse(sig, mode, t, members)


def _cliques_two_orders(universe: tuple[Divisor, ...]) -> list[frozenset[int]]:
    """Maximal cliques of the non-coprimality graph, as member-index sets.

    The search runs under ascending and descending vertex orders and the two
    results must agree exactly; a mismatch means the search itself is broken
    and is raised rather than reported as data.
    """
    nv = len(universe)
    rads = [lattice.radical(d) for d in universe]
    adj = [0] * nv
    for i in range(nv):
        for j in range(i + 1, nv):
            if rads[i] & rads[j]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    asc = {
        frozenset(lattice.iter_bits(c))
        for c in oracle._maximal_cliques(adj)
    }
    flip = nv - 1
    adj_desc = [0] * nv
    for i in range(nv):
        for j in lattice.iter_bits(adj[i]):
            adj_desc[flip - i] |= 1 << (flip - j)
    desc = {
        frozenset(flip - v for v in lattice.iter_bits(c))
        for c in oracle._maximal_cliques(adj_desc)
    }
    if asc != desc:
        raise DivintError(
            "clique searches under two vertex orders disagree; "
            "the enumeration engine is unsound"
        )
    return sorted(asc, key=lambda s: sorted(s))


def _verify_witness(fam: DivisorFamily, universe: RestrictedUniverse) -> None:
    """Independent re-check: in-universe, intersecting, unextendable there."""
    allowed = set(universe.members)
    for d in fam:
        if d not in allowed:
            raise DivintError(f"witness member {d} lies outside the universe")
    if not families.check_intersecting(fam).is_intersecting:
        raise DivintError("witness family contains a coprime pair")
    for d in universe.members:
        if d in fam:
            continue
        if all(not lattice.is_coprime(d, q) for q in fam):
            raise DivintError(
                f"witness family is not maximal in the universe: {d} extends it"
            )


def solve_restricted(
    sig: Signature,
    mode: str,
    t: int,
    *,
    maximality: str = "restricted",
    universe_cap: int = UNIVERSE_CAP,
    materialize_cap: int = oracle.MATERIALIZE_CAP,
    allow_t1: bool = False,
) -> OpenProblemResult:
    """Minimum maximal-family size within one restricted universe."""
    _validate(mode, t, maximality, allow_t1)
    universe = build_universe(sig, mode, t, allow_t1)
    note = (
        "t=1 lies outside the stated problem range (t >= 2)" if t == 1 else None
    )
    if not universe.members:
        return OpenProblemResult(sig, mode, t, maximality, "empty-universe",
                                 0, 0, 0, (), note)
    if len(universe) > universe_cap:
        raise ResourceLimitError(
            f"universe has {len(universe)} divisors, above the cap of "
            f"{universe_cap} (override with universe_cap)"
        )
    cliques = _cliques_two_orders(universe.members)
    fams = [
        DivisorFamily(universe.members[v] for v in idxs) for idxs in cliques
    ]
    if maximality == "global":
        fams = [
            f for f in fams if families.check_maximal(f, sig).is_maximal
        ]
        if not fams:
            return OpenProblemResult(sig, mode, t, maximality,
                                     "no-maximal-family", 0, 0,
                                     len(universe), (), note)
    value = min(len(f) for f in fams)
    attaining = sorted(
        (f for f in fams if len(f) == value), key=oracle._family_sort_key
    )
    for f in attaining:
        if maximality == "restricted":
            _verify_witness(f, universe)
        else:
            report = families.check_maximal(f, sig)
            if not report.is_maximal:
                raise DivintError("witness family failed the global re-check")
    witnesses: Optional[tuple[DivisorFamily, ...]] = tuple(attaining)
    if sum(len(f) for f in attaining) > materialize_cap:
        witnesses = None
    return OpenProblemResult(sig, mode, t, maximality, "ok", value,
                             len(attaining), len(universe), witnesses, note)


def _cell(args) -> dict:
    alphas, mode, t, maximality = args
    sig = Signature(alphas)
    row = {
        "signature": str(sig),
        "n": sig.n,
        "mode": mode,
        "t": t,
        "maximality": maximality,
        "universe_size": None,
        "status": None,
        "value": None,
        "attaining_count": None,
        "error": None,
    }
    try:
        res = solve_restricted(sig, mode, t, maximality=maximality)
    except ResourceLimitError as exc:
        row["status"] = "error"
        row["error"] = str(exc)
        return row
    row["universe_size"] = res.universe_size
    row["status"] = res.status
    row["value"] = res.value
    row["attaining_count"] = res.attaining_count
    return row


def sweep_tables(
    max_n: int,
    max_exp: int,
    t_values,
    mode: str,
    *,
    maximality: str = "restricted",
    threads: int = 1,
) -> list[dict]:
    """One row per (signature, t) over the grid, in deterministic order.

    Per-cell resource exhaustion is recorded in the row and the sweep
    continues; only malformed arguments abort.
    """
    _validate(mode, min(t_values, default=2), maximality, allow_t1=False)
    cells = [
        (sig.alphas, mode, t, maximality)
        for sig in lattice.signature_grid(max_n, max_exp)
        for t in sorted(set(t_values))
    ]
    if threads > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_cell, cells))
    return [_cell(c) for c in cells]
