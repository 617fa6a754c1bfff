"""Integer helpers and balanced-semiprime generation."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

# Deterministic Miller-Rabin witness sets, (upper limit, bases).
_WITNESSES = (
    (2047, (2,)),
    (1373653, (2, 3)),
    (25326001, (2, 3, 5)),
    (3215031751, (2, 3, 5, 7)),
    (2152302898747, (2, 3, 5, 7, 11)),
    (3474749660383, (2, 3, 5, 7, 11, 13)),
    (341550071728321, (2, 3, 5, 7, 11, 13, 17)),
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class GenerationError(RuntimeError):
    """Raised when no instance meeting the constraints could be produced."""


def isqrt(n: int) -> int:
    """Floor square root of a nonnegative integer."""
    if n < 0:
        raise ValueError(f"isqrt of negative number {n}")
    return math.isqrt(n)


def is_perfect_square(n: int) -> int | None:
    """Return r with r*r == n, or None if n is not a square."""
    if n < 0:
        raise ValueError(f"is_perfect_square of negative number {n}")
    # quadratic residues mod 64 reject ~80% of non-squares cheaply
    if (0x202021202030213 >> (n & 63)) & 1 == 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def iroot_ceil(n: int, k: int) -> int:
    """Smallest r >= 0 with r**k >= n."""
    if n <= 0:
        return 0
    r = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else 1 << -(-n.bit_length() // k)
    # walk to the exact answer; the float guess is within a few units
    while r > 0 and (r - 1) ** k >= n:
        r -= 1
    while r**k < n:
        r += 1
    return r


def iroot_floor(n: int, k: int) -> int:
    """Largest r >= 0 with r**k <= n."""
    r = iroot_ceil(n, k)
    return r if r**k == n else r - 1


def round_sqrt(v: Fraction | int) -> int:
    """Nearest integer to sqrt(v) for a nonnegative rational v (halves round up)."""
    v = Fraction(v)
    if v < 0:
        raise ValueError("round_sqrt of negative number")
    m = math.isqrt(v.numerator // v.denominator)
    # (m + 1/2)^2 <= v  <=>  (2m+1)^2 * den <= 4 * num
    if (2 * m + 1) ** 2 * v.denominator <= 4 * v.numerator:
        m += 1
    return m


def _mr_round(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int, rounds: int = 32, rng: random.Random | None = None) -> bool:
    """Miller-Rabin test.

    Deterministic below 341550071728321 using the known minimal witness sets;
    above that, ``rounds`` random bases give error probability at most
    4**-rounds.  The random bases come from ``rng`` (seeded on ``n`` when not
    supplied) so results are reproducible.
    """
    if n < 2:
        raise ValueError(f"primality undefined for n={n}")
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for limit, bases in _WITNESSES:
        if n < limit:
            return all(_mr_round(n, d, s, a) for a in bases)
    rng = rng or random.Random(n)
    return all(_mr_round(n, d, s, rng.randrange(2, n - 1)) for _ in range(rounds))


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    if n <= 2:
        return 2
    n |= 1
    while not is_probable_prime(n):
        n += 2
    return n


def random_prime(lo: int, hi: int, rng: random.Random, tries: int = 100000) -> int:
    """Uniformly sampled odd candidates in [lo, hi) until one is prime."""
    if hi - lo < 2:
        raise GenerationError(f"empty prime interval [{lo}, {hi})")
    for _ in range(tries):
        c = rng.randrange(lo, hi) | 1
        if lo <= c < hi and c > 2 and is_probable_prime(c):
            return c
    raise GenerationError(f"no prime found in [{lo}, {hi})")


@dataclass(frozen=True)
class Semiprime:
    n: int
    p: int
    q: int
    c: Fraction

    def __post_init__(self):
        if self.p * self.q != self.n:
            raise ValueError("n != p*q")
        if not (self.p < self.q < self.c * self.p):
            raise ValueError(f"unbalanced pair p={self.p} q={self.q} for c={self.c}")
        if not (is_probable_prime(self.p) and is_probable_prime(self.q)):
            raise ValueError("factors must be prime")

    @property
    def bits(self) -> int:
        return self.n.bit_length()


def gen_balanced_semiprime(bits: int, c: Fraction | float | str = 2, seed: int = 0,
                           retries: int = 1000) -> Semiprime:
    """Random N = p*q of ``bits`` bits (+-1) with p < q < c*p.

    p is drawn from (sqrt(2^(bits-1)/c), sqrt(2^bits)) so that a partner q in
    (p, c*p) can land in the requested size; q is then drawn from the part of
    (p, c*p) that keeps N within one bit of the target.
    """
    c = Fraction(c)
    if bits < 16:
        raise ValueError("bits must be >= 16")
    if c <= 1:
        raise ValueError("ratio bound c must exceed 1")
    rng = random.Random(seed)
    lo_n, hi_n = 1 << (bits - 2), 1 << (bits + 1)   # +-1 bit window
    target_lo, target_hi = 1 << (bits - 1), 1 << bits
    p_lo = isqrt(int(target_lo / c)) + 1
    p_hi = isqrt(target_hi)
    for _ in range(retries):
        try:
            p = random_prime(p_lo, p_hi + 1, rng, tries=2000)
        except GenerationError:
            continue
        q_lo = max(p + 1, -(-target_lo // p))
        q_hi = min(math.ceil(c * p), target_hi // p + 1)
        if q_hi - q_lo < 2:
            continue
        try:
            q = random_prime(q_lo, q_hi, rng, tries=2000)
        except GenerationError:
            continue
        if p < q < c * p and lo_n <= p * q < hi_n:
            return Semiprime(p * q, p, q, c)
    raise GenerationError(f"could not build a {bits}-bit semiprime with ratio < {c}")


def trial_division(n: int) -> list[int]:
    """Prime factors of n with multiplicity. Test oracle only; O(sqrt n)."""
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def parse_rational(text: str) -> Fraction:
    """Parse "a/b", an integer, or a decimal literal into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
