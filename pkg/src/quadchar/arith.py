"""Exact integer arithmetic shared by the whole package: Kronecker symbols,
fundamental discriminants, squarefree structure, smooth numbers, prime sieves.

Everything returns exact integers except error_factors, which is binary64.
The cached sieves are grown under a lock and read-only afterwards, so all
functions here can be called concurrently.
"""

import math
import threading
from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "Discriminant",
    "SquarefreeDecomposition",
    "SmoothnessParams",
    "kronecker",
    "is_fundamental",
    "enumerate_fundamental",
    "fundamental_flags",
    "is_squarefree",
    "squarefree_decompose",
    "largest_prime_factor",
    "divisor_count",
    "factorize",
    "primes_up_to",
    "smallest_prime_factors",
    "enumerate_smooth",
    "psi_count",
    "error_factors",
]

_LOCK = threading.RLock()
_MIN_SIEVE = 1 << 12

_primes: list[int] = []
_prime_bound = -1
_spf: list[int] = []
_spf_bound = -1
_sqfree: np.ndarray = np.zeros(0, dtype=bool)
_sqfree_bound = -1
_fund: tuple[np.ndarray, np.ndarray] = (np.zeros(0, dtype=bool), np.zeros(0, dtype=bool))
_fund_bound = -1


def _ensure_primes(n: int) -> list[int]:
    global _primes, _prime_bound
    if n > _prime_bound:
        with _LOCK:
            if n > _prime_bound:
                bound = max(n, 2 * _prime_bound, _MIN_SIEVE)
                flags = np.ones(bound + 1, dtype=bool)
                flags[:2] = False
                for p in range(2, math.isqrt(bound) + 1):
                    if flags[p]:
                        flags[p * p :: p] = False
                _primes = [int(p) for p in np.flatnonzero(flags)]
                _prime_bound = bound
    return _primes


def primes_up_to(n: int) -> list[int]:
    """All primes p <= n, ascending."""
    if n < 2:
        return []
    lst = _ensure_primes(int(n))
    return lst[: bisect_right(lst, int(n))]


def smallest_prime_factors(n: int) -> list[int]:
    """Table t with t[k] = smallest prime factor of k for 2 <= k <= n (t[1] = 1).

    The returned list is a shared cache; treat it as read-only.
    """
    global _spf, _spf_bound
    n = int(n)
    if n > _spf_bound:
        with _LOCK:
            if n > _spf_bound:
                bound = max(n, 2 * _spf_bound, _MIN_SIEVE)
                spf = np.arange(bound + 1, dtype=np.int64)
                spf[1] = 1
                for p in range(2, math.isqrt(bound) + 1):
                    if spf[p] == p:
                        sl = spf[p * p :: p]
                        idx = np.arange(p * p, bound + 1, p, dtype=np.int64)
                        sl[sl == idx] = p
                _spf = spf.tolist()
                _spf_bound = bound
    return _spf


def _squarefree_flags(n: int) -> np.ndarray:
    global _sqfree, _sqfree_bound
    if n > _sqfree_bound:
        with _LOCK:
            if n > _sqfree_bound:
                bound = max(n, 2 * _sqfree_bound, _MIN_SIEVE)
                flags = np.ones(bound + 1, dtype=bool)
                flags[0] = False
                for p in primes_up_to(math.isqrt(bound)):
                    flags[p * p :: p * p] = False
                _sqfree = flags
                _sqfree_bound = bound
    return _sqfree


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n), totally extended to all integer pairs.

    Agrees with the Legendre symbol when n is an odd prime not dividing d
    and is completely multiplicative in n.  Conventions at the edges:
    (d/0) = 1 iff |d| = 1 else 0; (d/-1) = -1 iff d < 0; (d/2) = 0 for even
    d and +1/-1 according to d mod 8 being +-1 / +-3.
    """
    a, b = int(d), int(n)
    if b == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and b % 2 == 0:
        return 0
    k = 1
    if b < 0:
        b = -b
        if a < 0:
            k = -k
    # Pull the even part out of the bottom argument.
    v = 0
    while b % 2 == 0:
        b //= 2
        v += 1
    if v & 1 and a % 8 in (3, 5):
        k = -k
    # Jacobi loop; b is odd and positive, so (./b) is periodic mod b.
    a %= b
    while a:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                k = -k
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            k = -k
        a %= b
    return k if b == 1 else 0


def is_squarefree(n: int) -> bool:
    """True iff no prime square divides n (n >= 1)."""
    n = _pos_int(n, "n")
    if n < 4:
        return True
    for p in _ensure_primes(math.isqrt(n)):
        if p * p > n:
            break
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
    return True


def is_fundamental(d: int) -> bool:
    """Membership test for fundamental discriminants (d = 1 included).

    d qualifies iff d = 1, or d == 1 (mod 4) and squarefree, or d = 4m with
    m == 2 or 3 (mod 4) and m squarefree.  d = 0 is rejected.
    """
    d = int(d)
    if d == 0:
        raise ValueError("d = 0 is not a discriminant")
    r = d % 4
    if r == 1:
        return is_squarefree(abs(d))
    if r == 0:
        m = d // 4
        if m % 4 in (2, 3):
            return is_squarefree(abs(m))
    return False


def fundamental_flags(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Boolean arrays (pos, neg) with pos[v] = is_fundamental(v) and
    neg[w] = is_fundamental(-w) for 0 <= v, w <= limit.

    Shared cached arrays; treat them as read-only.
    """
    global _fund, _fund_bound
    limit = max(int(limit), 1)
    if limit > _fund_bound:
        with _LOCK:
            if limit > _fund_bound:
                bound = max(limit, 2 * _fund_bound, _MIN_SIEVE)
                sq = _squarefree_flags(bound)[: bound + 1]
                v = np.arange(bound + 1, dtype=np.int64)
                r4 = v & 3
                q = v >> 2
                mq = q & 3
                sq_q = sq[q]
                div4 = r4 == 0
                pos = ((r4 == 1) & sq) | (div4 & ((mq == 2) | (mq == 3)) & sq_q)
                neg = ((r4 == 3) & sq) | (div4 & ((mq == 1) | (mq == 2)) & sq_q)
                pos[0] = False
                neg[0] = False
                _fund = (pos, neg)
                _fund_bound = bound
    return _fund


def enumerate_fundamental(lo: int, hi: int, include_unit: bool = True) -> list[int]:
    """All fundamental discriminants d with lo < d <= hi, ascending.

    d = 1 is dropped when include_unit is False.  The window may span zero;
    an empty result is allowed.
    """
    lo_i, hi_i = math.floor(lo), math.floor(hi)
    if lo_i >= hi_i:
        raise ValueError(f"window ({lo}, {hi}] is inverted or empty")
    limit = max(abs(lo_i), abs(hi_i), 1)
    pos, neg = fundamental_flags(limit)
    out: list[int] = []
    if lo_i + 1 <= -1:
        w_hi = -(lo_i + 1)
        w_lo = max(1, -min(hi_i, -1))
        ws = np.flatnonzero(neg[w_lo : w_hi + 1]) + w_lo
        out.extend(-int(w) for w in ws[::-1])
    if hi_i >= 1:
        p_lo = max(lo_i + 1, 1)
        ps = np.flatnonzero(pos[p_lo : hi_i + 1]) + p_lo
        out.extend(int(p) for p in ps)
    if not include_unit and lo_i < 1 <= hi_i:
        out.remove(1)
    return out


@dataclass(frozen=True)
class Discriminant:
    """A validated fundamental discriminant; rejects everything else."""

    value: int

    def __post_init__(self):
        if not is_fundamental(self.value):
            raise ValueError(f"{self.value} is not a fundamental discriminant")

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """n = n0 * n1**2 with n0 squarefree (n0 = 1 iff n is a perfect square)."""

    n0: int
    n1: int

    @property
    def n(self) -> int:
        return self.n0 * self.n1 * self.n1


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 1 as (p, exponent) pairs, ascending."""
    n = _pos_int(n, "n")
    out: list[tuple[int, int]] = []
    if n == 1:
        return out
    for p in _ensure_primes(max(math.isqrt(n), 2)):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        out.append((n, 1))
    return out


def squarefree_decompose(n: int) -> SquarefreeDecomposition:
    """Split n >= 1 into squarefree kernel n0 and cokernel n1 (n = n0*n1^2)."""
    n = _pos_int(n, "n")
    n0 = n1 = 1
    for p, e in factorize(n):
        if e & 1:
            n0 *= p
        n1 *= p ** (e // 2)
    return SquarefreeDecomposition(n0, n1)


def largest_prime_factor(n: int) -> int:
    """P+(n); equals 1 when n = 1 by convention."""
    n = _pos_int(n, "n")
    if n == 1:
        return 1
    return factorize(n)[-1][0]


def divisor_count(m: int) -> int:
    """Number of positive divisors of m >= 1."""
    m = _pos_int(m, "m")
    out = 1
    for _, e in factorize(m):
        out *= e + 1
    return out


@dataclass(frozen=True)
class SmoothnessParams:
    """A validated (range cutoff, smoothness bound) pair, both >= 1."""

    x: float
    y: float

    def __post_init__(self):
        if not (self.x >= 1 and self.y >= 1):
            raise ValueError(f"need x >= 1 and y >= 1, got ({self.x}, {self.y})")


@lru_cache(maxsize=16)
def _smooth_table(cap: int, ybound: int) -> tuple[int, ...]:
    vals = [1]
    for p in primes_up_to(ybound):
        w = p
        extra = []
        for v in vals:
            w = v * p
            while w <= cap:
                extra.append(w)
                w *= p
        vals.extend(extra)
    vals.sort()
    return tuple(vals)


def _smooth_prefix(x: float, y: float) -> tuple[tuple[int, ...], int]:
    if not (x >= 1 and y >= 1):
        raise ValueError(f"need x >= 1 and y >= 1, got ({x}, {y})")
    m = math.floor(x)
    yb = min(math.floor(y), m)
    cap = max(1 << (m - 1).bit_length() if m > 1 else 1, _MIN_SIEVE)
    tbl = _smooth_table(cap, yb)
    return tbl, bisect_right(tbl, m)


def enumerate_smooth(x: float, y: float) -> list[int]:
    """All n <= x whose prime factors are all <= y, ascending (1 included)."""
    m = math.floor(x)
    if y >= m:
        if not (x >= 1 and y >= 1):
            raise ValueError(f"need x >= 1 and y >= 1, got ({x}, {y})")
        return list(range(1, m + 1))
    tbl, cut = _smooth_prefix(x, y)
    return list(tbl[:cut])


def psi_count(x: float, y: float) -> int:
    """Psi(x, y): the number of y-smooth integers in [1, x]."""
    m = math.floor(x)
    if y >= m:
        if not (x >= 1 and y >= 1):
            raise ValueError(f"need x >= 1 and y >= 1, got ({x}, {y})")
        return m
    _, cut = _smooth_prefix(x, y)
    return cut


def error_factors(n: int, eps: float = 0.05) -> tuple[float, float]:
    """Smoothed error-term factors (f, g) attached to mean-value remainders.

    f = exp((log n0)^(1-eps)) on the squarefree kernel n0 of n, and
    g = sum over squarefree divisors e of the cokernel n1 of e^-(1/2+eps),
    i.e. the product of (1 + p^-(1/2+eps)) over primes p | n1.  Both are >= 1.
    """
    n = _pos_int(n, "n")
    if not 0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    dec = squarefree_decompose(n)
    f = math.exp(math.log(dec.n0) ** (1.0 - eps)) if dec.n0 > 1 else 1.0
    g = 1.0
    for p, _ in factorize(dec.n1):
        g *= 1.0 + p ** -(0.5 + eps)
    return f, g


def _pos_int(n, name: str) -> int:
    n = int(n)
    if n < 1:
        raise ValueError(f"{name} must be a positive integer, got {n}")
    return n
