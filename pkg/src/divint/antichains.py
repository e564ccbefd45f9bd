"""Maximal intersecting families of subsets of [k] and their generating antichains.

A maximal intersecting family of non-empty subsets of a k-element ground set
contains exactly one of each complement pair {S, S^c} (the pair {empty, full}
is forced to the full set), is upward closed, and has exactly 2^(k-1) members.
Its minimal elements form an antichain T that is pairwise intersecting and
covers the cube: every non-empty subset is either disjoint from some member of
T or a superset of some member.  Upward closure inverts the correspondence, so
enumerating families and enumerating such antichains are the same problem.

Subsets are int bitmasks; a family or antichain is a sorted tuple of masks.
"""

from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from pathlib import Path
from typing import Optional

from ._version import __version__
from .errors import ResourceLimitError

MaskFamily = tuple[int, ...]

DEFAULT_K_CAP = 6


def _check_k(k: int, k_cap: int) -> None:
    if k < 1:
        raise ValueError(f"ground set must have at least one element, got k={k}")
    if k > k_cap:
        raise ResourceLimitError(
            f"k={k} exceeds the antichain enumeration cap of {k_cap} "
            f"(override with k_cap / --k-cap)"
        )


def _pair_representatives(k: int) -> list[int]:
    """One representative per free complement pair, most constraining first.

    The representative of {S, S^c} is the side with the smaller (popcount,
    value); pairs are processed in that order so that small, highly
    constraining sets are decided early.
    """
    full = (1 << k) - 1
    reps = [s for s in range(1, full)
            if (s.bit_count(), s) < ((full ^ s).bit_count(), full ^ s)]
    reps.sort(key=lambda s: (s.bit_count(), s))
    return reps


def _dfs(reps: list[int], start: int, full: int,
         chosen: list[int], constraints: list[int], out: list[MaskFamily]) -> None:
    """Pick one side of each remaining pair, pruning on pairwise intersection.

    `constraints` holds only the minimal chosen sets: a candidate meeting all
    of them meets every chosen set.
    """
    if start == len(reps):
        out.append(tuple(sorted(chosen)))
        return
    s = reps[start]
    for cand in (s, full ^ s):
        if all(cand & c for c in constraints):
            if any(c & cand == c for c in constraints):
                kept = constraints  # a chosen subset already implies cand
            else:
                kept = [c for c in constraints if cand & c != cand]
                kept.append(cand)
            chosen.append(cand)
            _dfs(reps, start + 1, full, chosen, kept, out)
            chosen.pop()


def _antichain_key(family: MaskFamily) -> tuple:
    mins = minimal_masks(family)
    return (len(mins), mins)


def _enumerate_sequential(k: int) -> list[MaskFamily]:
    full = (1 << k) - 1
    reps = _pair_representatives(k)
    out: list[MaskFamily] = []
    _dfs(reps, 0, full, [full], [full], out)
    return out


def _complete_prefix(args: tuple[int, tuple[int, ...]]) -> list[MaskFamily]:
    """Worker: finish the DFS below a fixed assignment of the first pairs."""
    k, prefix = args
    full = (1 << k) - 1
    reps = _pair_representatives(k)
    chosen = [full] + list(prefix)
    constraints: list[int] = []
    for c in [full] + list(prefix):
        if not any(x & c == x for x in constraints):
            constraints = [x for x in constraints if c & x != c]
            constraints.append(c)
    out: list[MaskFamily] = []
    _dfs(reps, len(prefix), full, chosen, constraints, out)
    return out


def _viable_prefixes(k: int, depth: int) -> list[tuple[int, ...]]:
    full = (1 << k) - 1
    reps = _pair_representatives(k)[:depth]
    prefixes = []
    for bits in itertools.product((0, 1), repeat=len(reps)):
        prefix = tuple(s if b == 0 else full ^ s for s, b in zip(reps, bits))
        ok = all(a & b for a, b in itertools.combinations([full, *prefix], 2))
        if ok:
            prefixes.append(prefix)
    return prefixes


@lru_cache(maxsize=None)
def _families_cached(k: int) -> tuple[MaskFamily, ...]:
    out = _enumerate_sequential(k)
    out.sort(key=_antichain_key)
    return tuple(out)


def enumerate_families(k: int, *, k_cap: int = DEFAULT_K_CAP,
                       threads: int = 1) -> tuple[MaskFamily, ...]:
    """All maximal intersecting families on [k], canonically ordered.

    The order follows the canonical order of the generating antichains, so
    this list and `enumerate_antichains` correspond elementwise.  With
    threads > 1 the top-level DFS branches are farmed to worker processes;
    results are merged and sorted, so the output is identical for any thread
    count.
    """
    _check_k(k, k_cap)
    if threads > 1 and k >= 4:
        depth = min(4, (1 << (k - 1)) - 1)
        tasks = [(k, p) for p in _viable_prefixes(k, depth)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_complete_prefix, tasks))
        out = [fam for chunk in chunks for fam in chunk]
        out.sort(key=_antichain_key)
        return tuple(out)
    return _families_cached(k)


def enumerate_antichains(k: int, *, k_cap: int = DEFAULT_K_CAP,
                         threads: int = 1) -> tuple[MaskFamily, ...]:
    """Generating antichains of all maximal intersecting families on [k].

    Sorted by cardinality, then lexicographically on the sorted mask lists.
    """
    return tuple(minimal_masks(f)
                 for f in enumerate_families(k, k_cap=k_cap, threads=threads))


def minimal_masks(family: MaskFamily) -> MaskFamily:
    """Members with no proper subset in the family, ascending."""
    return tuple(sorted(
        m for m in family
        if not any(x != m and x & m == x for x in family)
    ))


def mask_closure(antichain: MaskFamily, k: int) -> MaskFamily:
    """Upward closure within the non-empty subsets of [k], ascending."""
    return tuple(sorted(
        m for m in range(1, 1 << k)
        if any(m & t == t for t in antichain)
    ))


def antichain_conditions(sets: MaskFamily, k: int) -> tuple[bool, Optional[str]]:
    """Check the three generating-antichain conditions; name the first violated.

    (a) pairwise intersecting, (b) antichain under inclusion, (c) every
    non-empty subset of [k] is disjoint from some member or a superset of
    some member.
    """
    full = (1 << k) - 1
    for s in sets:
        if s == 0:
            raise ValueError("antichain members must be non-empty masks")
        if s & ~full:
            raise ValueError(f"mask {s:#b} has bits outside the {k}-element ground set")
    sets = tuple(sorted(set(sets)))
    for a, b in itertools.combinations(sets, 2):
        if not a & b:
            return False, "a"
    for a, b in itertools.combinations(sets, 2):
        if a & b in (a, b):
            return False, "b"
    for m in range(1, full + 1):
        if not any(m & t == 0 for t in sets) and not any(m & t == t for t in sets):
            return False, "c"
    return True, None


def reference_families(k: int) -> tuple[MaskFamily, ...]:
    """Slow independent enumeration: literal filter over all choice vectors.

    Exponential in 2^k; used only to validate the pruned DFS on small k.
    """
    full = (1 << k) - 1
    reps = [s for s in range(1, full) if s < (full ^ s)]
    out = []
    for bits in itertools.product((0, 1), repeat=len(reps)):
        chosen = [full] + [s if b == 0 else full ^ s for s, b in zip(reps, bits)]
        if all(a & b for a, b in itertools.combinations(chosen, 2)):
            out.append(tuple(sorted(chosen)))
    out.sort(key=_antichain_key)
    return tuple(out)


# --- advisory on-disk cache -------------------------------------------------

def _cache_path(cache_dir: Path, k: int) -> Path:
    return Path(cache_dir) / f"antichains-k{k}.json"


def load_cached_antichains(cache_dir: Path, k: int) -> Optional[tuple[MaskFamily, ...]]:
    """Read a cache entry; None when missing, stale, or malformed."""
    path = _cache_path(cache_dir, k)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, ValueError):
        return None
    if (doc.get("k") != k or doc.get("tool_version") != __version__
            or not isinstance(doc.get("antichains"), list)
            or doc.get("count") != len(doc["antichains"])):
        return None
    try:
        return tuple(tuple(int(m) for m in ac) for ac in doc["antichains"])
    except (TypeError, ValueError):
        return None


def write_antichain_cache(cache_dir: Path, k: int,
                          antichains: tuple[MaskFamily, ...]) -> None:
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    doc = {
        "k": k,
        "antichains": [list(ac) for ac in antichains],
        "count": len(antichains),
        "tool_version": __version__,
    }
    path = _cache_path(cache_dir, k)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
    os.replace(tmp, path)


def cached_antichains(k: int, *, cache_dir: Optional[Path] = None,
                      no_cache: bool = False, k_cap: int = DEFAULT_K_CAP,
                      threads: int = 1) -> tuple[MaskFamily, ...]:
    """enumerate_antichains with an advisory JSON cache keyed by k."""
    if cache_dir is not None and not no_cache:
        hit = load_cached_antichains(cache_dir, k)
        if hit is not None:
            return hit
    result = enumerate_antichains(k, k_cap=k_cap, threads=threads)
    if cache_dir is not None:
        write_antichain_cache(cache_dir, k, result)
    return result
