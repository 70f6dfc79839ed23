"""Gal-type GCD sums sum_{m,n in M} sqrt((m,n)/[m,n]) over finite squarefree
sets, a deterministic near-extremal set builder (k-prime products over a
minimal prime pool), and the asymptotic reference curve for display.
"""

import math
from dataclasses import dataclass, field
from itertools import combinations, islice

import numpy as np

from . import arith
from ._parallel import map_chunks

__all__ = [
    "GcdSet",
    "gcd_sum",
    "construct_extremal_set",
    "gcd_sum_reference",
    "load_gcd_set",
    "save_gcd_set",
]


@dataclass(frozen=True)
class GcdSet:
    """A finite set of positive squarefree integers, stored ascending.

    y_M is the largest prime factor appearing anywhere in the set.
    """

    members: tuple[int, ...]
    y_M: int = field(init=False)

    def __post_init__(self):
        m = tuple(int(v) for v in self.members)
        if not m:
            raise ValueError("GcdSet needs at least one member")
        if any(v < 1 for v in m):
            raise ValueError("members must be positive")
        if any(a >= b for a, b in zip(m, m[1:])):
            raise ValueError("members must be strictly ascending")
        for v in m:
            if not arith.is_squarefree(v):
                raise ValueError(f"member {v} is not squarefree")
        object.__setattr__(self, "members", m)
        object.__setattr__(self, "y_M", max(arith.largest_prime_factor(v) for v in m))

    @classmethod
    def from_iterable(cls, values) -> "GcdSet":
        return cls(tuple(sorted(set(int(v) for v in values))))

    @property
    def N(self) -> int:
        return len(self.members)


_ROW_BLOCK = 1024


def gcd_sum(mset, threads: int = 1) -> float:
    """Double sum of sqrt((m,n)/[m,n]) over all ordered pairs of the set
    (diagonal included), accumulated with exact compensated summation.

    (m,n)/[m,n] = (m,n)^2/(m*n), so each term is gcd(m,n)/sqrt(m*n).
    """
    members = mset.members if isinstance(mset, GcdSet) else GcdSet.from_iterable(mset).members
    arr = np.array(members, dtype=np.int64)
    vals = arr.astype(np.float64)

    def fold(rows):
        parts = []
        for i0 in range(rows[0], rows[-1] + 1, _ROW_BLOCK):
            i1 = min(i0 + _ROW_BLOCK, rows[-1] + 1)
            g = np.gcd.outer(arr[i0:i1], arr).astype(np.float64)
            # g*g/(m*n) keeps the diagonal exactly 1 (same float products).
            terms = np.sqrt(g * g / np.outer(vals[i0:i1], vals))
            parts.append(math.fsum(terms.ravel()))
        return math.fsum(parts)

    partials = map_chunks(fold, range(len(arr)), threads)
    return math.fsum(partials)


def _first_primes(count: int) -> list[int]:
    bound = 1 << 13
    primes = arith.primes_up_to(bound)
    while len(primes) < count:
        bound *= 2
        primes = arith.primes_up_to(bound)
    return primes[:count]


def construct_extremal_set(N: int) -> GcdSet:
    """Deterministic set of N squarefree k-prime products with a large GCD sum.

    For each k in 1..6 the pool is the fewest smallest primes with
    C(pool, k) >= N and the members are the first N products in lexicographic
    combination order; k is picked by the largest pilot GCD sum (ties to the
    smaller k).
    """
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    best = None
    best_score = -1.0
    for k in range(1, 7):
        pool_size = k
        while math.comb(pool_size, k) < N:
            pool_size += 1
        pool = _first_primes(pool_size)
        members = sorted(math.prod(c) for c in islice(combinations(pool, k), N))
        pilot = members[: min(N, 128)]
        score = gcd_sum(GcdSet(tuple(sorted(pilot))))
        if score > best_score:
            best_score = score
            best = members
    return GcdSet(tuple(best))


def gcd_sum_reference(N: int) -> float:
    """Display-only reference curve N*exp(2*sqrt(log N * log3 N / log2 N)).

    Needs N >= 16 so the triple logarithm is positive; never asserted against.
    """
    N = int(N)
    if N < 16:
        raise ValueError(f"N must be >= 16, got {N}")
    l1 = math.log(N)
    l2 = math.log(l1)
    l3 = math.log(l2)
    return N * math.exp(2.0 * math.sqrt(l1 * l3 / l2))


def load_gcd_set(path) -> GcdSet:
    """Read a newline-delimited integer file as a GcdSet."""
    with open(path, "r", encoding="ascii") as fh:
        values = [int(line) for line in fh if line.strip()]
    return GcdSet.from_iterable(values)


def save_gcd_set(mset: GcdSet, path) -> None:
    """Write members one per line."""
    with open(path, "w", encoding="ascii") as fh:
        for m in mset.members:
            fh.write(f"{m}\n")
