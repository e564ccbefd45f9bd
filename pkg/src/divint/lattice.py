"""Divisor-lattice arithmetic over an exponent signature.

A positive integer N = p1^a1 * ... * pn^an is represented purely by its
exponent vector (a1 >= ... >= an); primes are abstract indices.  A divisor is
an exponent tuple bounded componentwise by the signature, and a squarefree
divisor is an n-bit mask (bit i set iff prime i divides it).  No prime values
are ever multiplied: every quantity of interest depends only on exponents and
supports.  A display mapping to actual primes (2, 3, 5, ...) exists purely for
readable output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod

from .errors import ResourceLimitError

# A divisor is an exponent tuple; a squarefree divisor is an int bitmask.
Divisor = tuple[int, ...]
Mask = int

MAX_PRIMES = 16
MAX_DIVISORS = 100_000


@dataclass(frozen=True, init=False)
class Signature:
    """Exponent vector of the ambient integer, sorted descending.

    `alphas` is the normalized (descending) vector; `original` preserves the
    caller's order and `perm` maps normalized index -> original index, so
    user-facing prime labels can be kept consistent after normalization.
    Equality and hashing consider `alphas` only.
    """

    alphas: tuple[int, ...]
    original: tuple[int, ...] = field(compare=False, repr=False)
    perm: tuple[int, ...] = field(compare=False, repr=False)

    def __init__(self, exponents, max_primes: int = MAX_PRIMES):
        orig = tuple(int(a) for a in exponents)
        if not orig:
            raise ValueError("signature needs at least one exponent")
        if any(a < 1 for a in orig):
            raise ValueError(f"exponents must be positive, got {orig}")
        if len(orig) > max_primes:
            raise ResourceLimitError(
                f"{len(orig)} primes exceeds the cap of {max_primes} "
                f"(override with max_primes / --max-primes)"
            )
        perm = tuple(sorted(range(len(orig)), key=lambda i: (-orig[i], i)))
        object.__setattr__(self, "alphas", tuple(orig[i] for i in perm))
        object.__setattr__(self, "original", orig)
        object.__setattr__(self, "perm", perm)

    @property
    def n(self) -> int:
        return len(self.alphas)

    @property
    def u(self) -> int:
        """Number of exponents strictly above the smallest one.

        Zero exactly when all exponents are equal; always < n.
        """
        return sum(1 for a in self.alphas if a > self.alphas[-1])

    @property
    def was_normalized(self) -> bool:
        return self.original != self.alphas

    def divisor_count(self) -> int:
        return prod(a + 1 for a in self.alphas)

    def __str__(self) -> str:
        return ",".join(str(a) for a in self.alphas)


def divisor_key(d: Divisor) -> tuple[int, ...]:
    """Canonical sort key: the first prime's exponent varies fastest.

    Under this order p1 < p1^2 < ... < p2 < p1*p2 < ..., i.e. divisors
    supported on earlier primes come first.
    """
    return d[::-1]


def enumerate_divisors(sig: Signature, cap: int = MAX_DIVISORS) -> list[Divisor]:
    """All exponent vectors of the lattice (including divisor 1), canonically ordered."""
    count = sig.divisor_count()
    if count > cap:
        raise ResourceLimitError(
            f"lattice has {count} divisors, above the cap of {cap} "
            f"(override with cap / --divisor-cap)"
        )
    axes = [range(a + 1) for a in reversed(sig.alphas)]
    return [t[::-1] for t in itertools.product(*axes)]


def divides(a: Divisor, b: Divisor) -> bool:
    return all(x <= y for x, y in zip(a, b))


def is_coprime(a: Divisor, b: Divisor) -> bool:
    """True iff the divisors share no prime."""
    if len(a) != len(b):
        raise ValueError("divisors come from different lattices")
    return not any(x and y for x, y in zip(a, b))


def radical(d: Divisor) -> Mask:
    """Support mask: bit i set iff prime i divides d."""
    m = 0
    for i, e in enumerate(d):
        if e:
            m |= 1 << i
    return m


def mask_to_divisor(mask: Mask, n: int) -> Divisor:
    """The squarefree divisor with the given support."""
    return tuple((mask >> i) & 1 for i in range(n))


def complement_bar(mask: Mask, sig: Signature) -> Mask:
    """Complement within the squarefree lattice: the mask of N'/d for d | N'."""
    full = (1 << sig.n) - 1
    if mask & ~full:
        raise ValueError(f"mask {mask:#b} has bits outside the {sig.n}-prime lattice")
    return full ^ mask


def alpha_weight(mask: Mask, sig: Signature) -> int:
    """Product of the exponents over the primes in `mask`; 1 for the empty mask.

    This is the number of divisors of N whose radical is exactly the given
    squarefree divisor.
    """
    if mask >> sig.n:
        raise ValueError(f"mask {mask:#b} has bits outside the {sig.n}-prime lattice")
    w = 1
    for i in iter_bits(mask):
        w *= sig.alphas[i]
    return w


def min_size_bound(sig: Signature) -> int:
    """Smallest possible size of a maximal pairwise-non-coprime divisor family.

    Equals an * prod(ai + 1 for i < n); attained by the family of all
    multiples of the last prime.
    """
    return sig.alphas[-1] * prod(a + 1 for a in sig.alphas[:-1])


def omega(d: Divisor) -> int:
    """Number of distinct primes dividing d."""
    return sum(1 for e in d if e)


def big_omega(d: Divisor) -> int:
    """Number of prime factors of d counted with multiplicity."""
    return sum(d)


def unit_divisor(i: int, n: int) -> Divisor:
    """The i-th prime itself, as an exponent vector."""
    return tuple(1 if j == i else 0 for j in range(n))


def iter_bits(mask: Mask):
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def signature_grid(max_n: int, max_exp: int) -> list[Signature]:
    """Every normalized signature with n <= max_n primes and exponents <= max_exp.

    Deterministic order: by prime count, then lexicographically on the
    exponent vector.  Only descending vectors are emitted, so each signature
    appears exactly once.
    """
    if max_n < 1 or max_exp < 1:
        raise ValueError("signature grid needs max_n >= 1 and max_exp >= 1")
    out = []
    for n in range(1, max_n + 1):
        for alphas in itertools.product(range(max_exp, 0, -1), repeat=n):
            if all(alphas[i] >= alphas[i + 1] for i in range(n - 1)):
                out.append(Signature(alphas))
    out.sort(key=lambda s: (s.n, s.alphas))
    return out


# --- display helpers (human-readable output only; never used in the math) ---

def first_primes(n: int) -> tuple[int, ...]:
    """The n smallest primes, for labeling abstract prime indices."""
    primes: list[int] = []
    c = 2
    while len(primes) < n:
        if all(c % p for p in primes):
            primes.append(c)
        c += 1
    return tuple(primes)


def display_value(d: Divisor, primes: tuple[int, ...]) -> int:
    """Integer value of a divisor under a concrete prime labeling."""
    return prod(p ** e for p, e in zip(primes, d))


def format_divisor(d: Divisor) -> str:
    """Symbolic form like 'p1^2*p3'; '1' for the empty divisor."""
    parts = []
    for i, e in enumerate(d):
        if e == 1:
            parts.append(f"p{i + 1}")
        elif e > 1:
            parts.append(f"p{i + 1}^{e}")
    return "*".join(parts) if parts else "1"


def factor_int(value: int) -> tuple[Signature, tuple[int, ...]]:
    """Factor a small integer by trial division (input convenience only).

    Returns the normalized signature together with its primes reordered to
    match, so display output uses the integer's own primes.  Limited to
    2 <= value <= 2**63; expect trial division to be slow near the top of
    that range.
    """
    if value < 2:
        raise ValueError(f"cannot build a signature from {value}: need an integer >= 2")
    if value > 2**63:
        raise ValueError(f"{value} exceeds the 2^63 factoring convenience limit")
    pairs = []
    rest = value
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                e += 1
                rest //= d
            pairs.append((d, e))
        d += 1 if d == 2 else 2
    if rest > 1:
        pairs.append((rest, 1))
    sig = Signature([e for _, e in pairs])
    primes = tuple(pairs[i][0] for i in sig.perm)
    return sig, primes
