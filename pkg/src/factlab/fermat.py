"""Difference-of-squares factoring: 4N = x^2 - y^2 with x = p + q, y = q - p.

Three candidate sequences for x are provided: consecutive integers from
ceil(sqrt(4N)) (classic Fermat), triangular numbers m(m+1)/2 advanced with the
sum-of-cubes identity, and consecutive integers from a shifted start
ceil(2*gamma*sqrt(N)).  All searches return ``None`` when the step budget runs
out; that is a normal outcome, not an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import is_perfect_square, isqrt


@dataclass(frozen=True)
class FactorResult:
    n: int
    p: int
    q: int
    steps: int
    method: str
    x: int
    y: int

    def __post_init__(self):
        if self.p * self.q != self.n:
            raise AssertionError(f"{self.p} * {self.q} != {self.n}")
        if self.x * self.x - self.y * self.y != 4 * self.n:
            raise AssertionError("x^2 - y^2 != 4N")
        if not (self.x == self.p + self.q and self.y == self.q - self.p):
            raise AssertionError("x, y inconsistent with p, q")
        if self.steps < 1 or self.p > self.q:
            raise AssertionError("malformed result")

    @property
    def trivial(self) -> bool:
        """True for the x = N + 1 solution, which yields no factorization."""
        return self.p == 1

    def as_dict(self) -> dict:
        return {"n": str(self.n), "p": str(self.p), "q": str(self.q), "steps": self.steps,
                "method": self.method, "x": str(self.x), "y": str(self.y),
                "trivial": self.trivial}


def _check_input(n: int) -> None:
    if n < 1:
        raise ValueError("N must be positive")
    if n % 4 == 2:
        raise ValueError(f"N = {n} is 2 mod 4 and has no difference-of-squares representation")


def ceil_sqrt(v: Fraction | int) -> int:
    """Smallest integer s >= 0 with s*s >= v."""
    v = Fraction(v)
    if v <= 0:
        return 0
    s = isqrt(v.numerator // v.denominator)
    if s * s * v.denominator < v.numerator:
        s += 1
    return s


def _scan(n: int, start: int, max_steps: int | None, method: str) -> FactorResult | None:
    x = start
    r = x * x - 4 * n
    last = n + 1  # the trivial solution closes the sequence
    steps = 0
    while x <= last and (max_steps is None or steps < max_steps):
        steps += 1
        y = is_perfect_square(r)
        if y is not None:
            return FactorResult(n, (x - y) // 2, (x + y) // 2, steps, method, x, y)
        r += 2 * x + 1
        x += 1
    return None


def fermat_factor(n: int, max_steps: int | None = None) -> FactorResult | None:
    """Classic Fermat search over x = ceil(sqrt(4N)), ceil(sqrt(4N)) + 1, ...

    ``steps`` counts every candidate tested, the first included.  A prime N
    ends on the trivial solution (p = 1), which the caller can detect via
    ``FactorResult.trivial``.
    """
    _check_input(n)
    return _scan(n, ceil_sqrt(4 * n), max_steps, "fermat")


def shifted_fermat(n: int, gamma: Fraction | int | str, max_steps: int | None = None
                   ) -> FactorResult | None:
    """Fermat search started at max(ceil(sqrt(4N)), ceil(2*gamma*sqrt(N))).

    Succeeds only if the start does not overshoot p + q.
    """
    _check_input(n)
    gamma = Fraction(gamma)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    start = max(ceil_sqrt(4 * n), ceil_sqrt(4 * gamma * gamma * n))
    return _scan(n, start, max_steps, "shifted")


def triangular_start(n: int) -> int:
    """Smallest m whose triangular number m(m+1)/2 is at least sqrt(4N)."""
    lo = ceil_sqrt(4 * n)
    m = isqrt(2 * lo)
    while m * (m + 1) // 2 < lo:
        m += 1
    while m > 1 and (m - 1) * m // 2 >= lo:
        m -= 1
    return m


def triangular_fermat(n: int, max_steps: int | None = None) -> FactorResult | None:
    """Search only triangular x = m(m+1)/2, updating x^2 by (m+1)^3 per step.

    Finds the factors exactly when p + q is a triangular number.
    """
    _check_input(n)
    m = triangular_start(n)
    x = m * (m + 1) // 2
    x2 = x * x
    four_n = 4 * n
    steps = 0
    while x <= n + 1 and (max_steps is None or steps < max_steps):
        steps += 1
        y = is_perfect_square(x2 - four_n)
        if y is not None:
            return FactorResult(n, (x - y) // 2, (x + y) // 2, steps, "triangular", x, y)
        m += 1
        x2 += m * m * m  # sum of the first m cubes is T(m)^2
        x += m
    return None


def count_representations(n: int) -> int:
    """Number of pairs x > y >= 0 with n = x^2 - y^2.

    Each pair corresponds to a factorization n = d*e with d <= e and d, e of
    equal parity (d = x - y, e = x + y).
    """
    if n < 1:
        raise ValueError("N must be positive")
    count = 0
    d = 1
    while d * d <= n:
        if n % d == 0 and (d - n // d) % 2 == 0:
            count += 1
        d += 1
    return count
