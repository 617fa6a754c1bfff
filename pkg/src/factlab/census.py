"""Exact counts of balanced semiprimes N = pq <= x with p < q < c*p."""

from __future__ import annotations

import bisect
import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import isqrt

# a bytearray sieve costs one byte per integer; refuse beyond this
MAX_SIEVE = 1 << 31


class ResourceError(MemoryError):
    pass


@dataclass(frozen=True)
class CensusRow:
    x: int
    c: Fraction
    exact_count: int
    model: float
    ratio: float

    def csv_fields(self) -> list[str]:
        return [str(self.x), str(self.c), str(self.exact_count), repr(self.model), repr(self.ratio)]


CSV_HEADER = ["x", "c", "count", "model", "ratio"]


def primes_upto(n: int) -> list[int]:
    """Sieve of Eratosthenes."""
    if n < 2:
        return []
    if n > MAX_SIEVE:
        raise ResourceError(f"sieve limit {n} exceeds {MAX_SIEVE}")
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytes(len(range(i * i, n + 1, i)))
    return [i for i, v in enumerate(sieve) if v]


def count_balanced(x: int, c) -> CensusRow:
    """#{N = pq <= x : p < q < c*p, p and q prime}.

    For each prime p the admissible q lie in (p, min(c*p, x/p)], counted by
    bisection in a sorted prime list.  q < c*p is strict, q <= x/p is not.
    """
    c = Fraction(c)
    if x < 100:
        raise ValueError("x must be >= 100")
    if c <= 1:
        raise ValueError("c must exceed 1")
    # q <= x/p and q < c*p force q < sqrt(c*x), and p < q forces p < sqrt(x)
    qmax = isqrt(int(c * x)) + 1
    primes = primes_upto(qmax)
    total = 0
    for i, p in enumerate(primes):
        if p * p >= x:
            break
        # largest admissible q: q < c*p strictly and q <= x // p
        cp = c * p
        hi_c = math.ceil(cp) - 1
        hi = min(hi_c, x // p)
        if hi <= p:
            continue
        total += bisect.bisect_right(primes, hi) - (i + 1)
    model = x / math.log(x) ** 2
    return CensusRow(x, c, total, model, total / model)


def count_balanced_naive(x: int, c) -> int:
    """Independent oracle: double loop with trial-division primality."""
    c = Fraction(c)

    def is_prime(n: int) -> bool:
        if n < 2:
            return False
        d = 2
        while d * d <= n:
            if n % d == 0:
                return False
            d += 1
        return True

    ps = [n for n in range(2, x // 2 + 1) if is_prime(n)]
    count = 0
    for p in ps:
        if p * p > x:
            break
        for q in ps:
            if q <= p:
                continue
            if p * q > x:
                break
            if q < c * p:
                count += 1
    return count


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r.csv_fields())
    return buf.getvalue()
