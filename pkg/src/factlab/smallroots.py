"""Small integer roots of bivariate polynomials and three factoring applications.

The solver follows Coron's direct construction for integer (non-modular)
bivariate equations.  With W the height of f(xX, yY) and a00 = f(0, 0), pick
u = W + ((1 - W) mod |a00|) and n = u * (XY)^k.  The lattice is spanned by

    x^i y^j X^(k-i) Y^(k-j) q(x, y)      0 <= i, j <= k
    x^i y^j n                            (i, j) in [0, d+k]^2 minus [0, k]^2

with q = a00^-1 f mod n, all evaluated at (xX, yY).  Every lattice vector is a
polynomial vanishing mod n at the root, so a short enough one vanishes over
the integers.  Eliminating y between f and that polynomial leaves a
univariate whose integer roots give x0.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .arith import iroot_ceil, is_probable_prime, isqrt, random_prime, round_sqrt
from .lattice import lll_reduce
from .poly import MPoly, height, integer_roots_univariate, is_irreducible, resultant


class BoundConditionError(ValueError):
    """The box is too large for the small-root theorem to apply."""


class FactoringFailure(RuntimeError):
    """No factorization was found within the stated bounds."""


@dataclass
class BivariateProblem:
    f: MPoly
    X: int
    Y: int
    W: int = field(init=False)

    def __post_init__(self):
        if len(self.f.vars) != 2:
            raise ValueError("bivariate problem needs a polynomial in two variables")
        if self.X < 1 or self.Y < 1:
            raise ValueError("root bounds must be positive")
        if not is_irreducible(self.f):
            raise ValueError(f"polynomial is reducible: {self.f!r}")
        self.W = height(self.f, (self.X, self.Y))

    @property
    def d(self) -> int:
        return self.f.max_degree()

    def bound_ok(self, condition: str = "max") -> bool:
        """XY < W^(2/(3d)) for max degree d, or XY < W^(1/d) for total degree d."""
        xy = self.X * self.Y
        if condition == "max":
            return xy ** (3 * self.d) < self.W ** 2
        if condition == "total":
            return xy ** self.f.total_degree() < self.W
        raise ValueError(f"unknown bound condition {condition!r}")


@dataclass
class SolveReport:
    roots: list[tuple[int, int]]
    status: str  # "found", "no-root", "no-short-vector"
    lattice_dim: int = 0
    norms: list[int] = field(default_factory=list)
    vectors_tried: int = 0


def _coprime_bound(b: int, a00: int) -> int:
    while math.gcd(b, a00) != 1:
        b += 1
    return b


def _nonzero_shift(f: MPoly) -> tuple[int, int]:
    for r in range(1, 64):
        for s in range(r + 1):
            for cand in ((s, r - s), (-s, r - s), (s, s - r), (-s, s - r)):
                if f.evaluate(cand) != 0:
                    return cand
    raise ValueError("polynomial vanishes on a neighbourhood of the origin")


def coron_lattice(f: MPoly, X: int, Y: int, k: int) -> tuple[list[list[int]], list[tuple[int, int]], int]:
    """Rows, column monomials and modulus n of the shift lattice.

    Requires f(0, 0) != 0 and gcd(f(0, 0), XY) = 1.
    """
    a00 = f.constant_term()
    if a00 == 0 or math.gcd(a00, X * Y) != 1:
        raise ValueError("need f(0,0) != 0 coprime to XY")
    d = f.max_degree()
    W = height(f, (X, Y))
    u = W + ((1 - W) % abs(a00))
    n = u * (X * Y) ** k
    inv = pow(a00, -1, n)
    q = {e: c * inv % n for e, c in f.terms.items()}
    span = d + k
    monos = [(i, j) for i in range(span + 1) for j in range(span + 1)]
    col = {m: t for t, m in enumerate(monos)}
    rows = []
    for i in range(span + 1):
        for j in range(span + 1):
            row = [0] * len(monos)
            if i <= k and j <= k:
                scale = X ** (k - i) * Y ** (k - j)
                for (a, b), c in q.items():
                    row[col[(a + i, b + j)]] = c * scale * X ** (a + i) * Y ** (b + j)
            else:
                row[col[(i, j)]] = n * X ** i * Y ** j
            rows.append(row)
    return rows, monos, n


def _vector_to_poly(vec: list[int], monos: list[tuple[int, int]], X: int, Y: int,
                    names: tuple[str, str]) -> MPoly:
    terms = {}
    for v, (i, j) in zip(vec, monos):
        if v:
            s = X ** i * Y ** j
            if v % s:
                raise ArithmeticError("lattice vector not divisible by its monomial scaling")
            terms[(i, j)] = v // s
    return MPoly(names, terms)


def _roots_from_pair(f: MPoly, g: MPoly, X: int, Y: int) -> list[tuple[int, int]] | None:
    """Common integer roots in the box, or None when f and g are dependent."""
    xv, yv = f.vars
    r = resultant(f, g, yv)
    if r.is_zero():
        return None
    r = r.drop_unused()
    if r.is_constant():
        return []
    found = []
    for x0 in integer_roots_univariate(r, X):
        fx = f.subs({xv: x0})
        if fx.is_zero():
            continue
        for y0 in integer_roots_univariate(fx.drop_unused(), Y) if not fx.is_constant() else []:
            if f.evaluate((x0, y0)) == 0 and g.evaluate((x0, y0)) == 0:
                found.append((x0, y0))
    return found


def solve_bivariate_report(problem: BivariateProblem, k: int = 2, condition: str = "max",
                           max_vectors: int = 4) -> SolveReport:
    """Like :func:`solve_bivariate` but returns the full outcome record."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not problem.bound_ok(condition):
        raise BoundConditionError(
            f"XY = {problem.X * problem.Y} violates the small-root bound for W = {problem.W}")
    f, X, Y = problem.f, problem.X, problem.Y
    sx, sy = 0, 0
    if f.constant_term() == 0:
        sx, sy = _nonzero_shift(f)
        f = f.translate({f.vars[0]: sx, f.vars[1]: sy})
        X, Y = X + abs(sx), Y + abs(sy)
    a00 = f.constant_term()
    Xl, Yl = _coprime_bound(X, a00), _coprime_bound(Y, a00)
    rows, monos, n = coron_lattice(f, Xl, Yl, k)
    reduced, rep = lll_reduce(rows)
    dim = len(rows)
    vecs = sorted(reduced.rows, key=lambda v: sum(t * t for t in v))
    report = SolveReport([], "no-short-vector", dim, list(rep.vector_norms_squared))
    for vec in vecs[:max_vectors]:
        # Howgrave-Graham gate: dim * ||g(xX, yY)||^2 < n^2
        if dim * sum(t * t for t in vec) >= n * n:
            break
        g = _vector_to_poly(list(vec), monos, Xl, Yl, f.vars)
        report.vectors_tried += 1
        pairs = _roots_from_pair(f, g, Xl, Yl)
        if pairs is None:
            continue  # g shares a factor with f; try the next vector
        roots = sorted({(x0 + sx, y0 + sy) for x0, y0 in pairs})
        roots = [(a, b) for a, b in roots if abs(a) <= problem.X and abs(b) <= problem.Y
                 and problem.f.evaluate((a, b)) == 0]
        report.roots = roots
        report.status = "found" if roots else "no-root"
        return report
    return report


def solve_bivariate(problem: BivariateProblem, k: int = 2, condition: str = "max") -> list[tuple[int, int]]:
    """All integer roots (x0, y0) of ``problem.f`` with |x0| <= X, |y0| <= Y.

    Raises BoundConditionError when XY >= W^(2/(3d)).  An empty list means the
    lattice produced no usable polynomial or the box holds no root; see
    :func:`solve_bivariate_report` to tell these apart.
    """
    return solve_bivariate_report(problem, k, condition).roots


# -- factoring applications ------------------------------------------------------

@dataclass(frozen=True)
class LatticeFactorResult:
    n: int
    p: int
    q: int
    x0: int
    y0: int
    method: str

    def __post_init__(self):
        if self.p * self.q != self.n or self.p <= 1 or self.q <= 1:
            raise AssertionError(f"{self.p} * {self.q} != {self.n}")

    def as_dict(self) -> dict:
        return {"n": str(self.n), "p": str(self.p), "q": str(self.q), "x0": str(self.x0),
                "y0": str(self.y0), "method": self.method}


def _check_odd_composite(n: int) -> None:
    if n < 9 or n % 2 == 0:
        raise ValueError("N must be an odd composite")
    if is_probable_prime(n):
        raise ValueError("N is prime")


def shifted_center_polynomial(n: int, alpha: Fraction, beta: Fraction) -> tuple[MPoly, int, int]:
    """f = xy - a*x - b*y + (ab - N) with a = round(sqrt(alpha N)), b = round(sqrt(beta N)).

    f = (x - b)(y - a) - N, so a root gives q = b - x0 and p = a - y0.
    """
    a = round_sqrt(Fraction(alpha) * n)
    b = round_sqrt(Fraction(beta) * n)
    f = MPoly(("x", "y"), {(1, 1): 1, (1, 0): -a, (0, 1): -b, (0, 0): a * b - n})
    return f, a, b


def nominal_constant(n: int, alpha: Fraction, beta: Fraction) -> Fraction:
    """(alpha*beta - 1) N, the constant as usually written for this polynomial.

    It differs from the root-preserving constant a*b - N, which is close to
    (sqrt(alpha*beta) - 1) N.
    """
    return (Fraction(alpha) * Fraction(beta) - 1) * n


def _recentred(n: int, A: int) -> MPoly:
    B = (2 * n + A) // (2 * A)  # round(N / A)
    return MPoly(("x", "y"), {(1, 1): 1, (1, 0): -A, (0, 1): -B, (0, 0): A * B - n}), B


def _comfortable(prob: BivariateProblem, margin_bits: int = 5) -> bool:
    # lattice dimension constants eat a few bits below the asymptotic bound
    return ((prob.X * prob.Y) << margin_bits) ** 3 < prob.W ** 2


def shifted_center_subproblems(n: int, a: int, Y: int, splits: int):
    """Cover p in [a - Y, a + Y] by ``splits`` intervals, one bivariate problem each.

    Interval j is centred at A_j with half-width h; the matching q range follows
    from q = N/p, so the x bound is derived rather than guessed.
    """
    h = -(-(2 * Y + 1) // (2 * splits))
    for j in range(splits):
        A = a - Y + h + 2 * h * j
        if A - h < 2:
            continue
        f, B = _recentred(n, A)
        q_hi = -(-n // (A - h))
        q_lo = n // (A + h)
        Xs = max(abs(q_hi - B), abs(B - q_lo)) + 1
        yield BivariateProblem(f, Xs, h), A, B


def factor_shifted_center(n: int, alpha, beta, X: int, Y: int, k: int = 1,
                          splits: int | None = None, max_splits: int = 1 << 12
                          ) -> LatticeFactorResult:
    """Factor N whose factors lie near sqrt(alpha N) and sqrt(beta N).

    Y bounds |round(sqrt(alpha N)) - p| and X bounds |round(sqrt(beta N)) - q|.
    With ``splits`` = 1 a single lattice covers the whole box.  Otherwise the p
    range is cut into sub-intervals, each solved as a polynomial of the same
    shape with re-rounded centers; ``None`` picks the smallest power of two
    whose sub-boxes sit a few bits inside the small-root bound.
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    if alpha == beta:
        raise ValueError("coinciding centers: use the difference-of-squares methods")
    _check_odd_composite(n)
    f, a, b = shifted_center_polynomial(n, alpha, beta)
    whole = BivariateProblem(f, X + 1, Y + 1)
    if not whole.bound_ok():
        raise BoundConditionError(f"XY = {whole.X * whole.Y} too large for W = {whole.W}")
    if splits is None:
        splits = 1
        while splits < max_splits and not all(
                _comfortable(pr) for pr, _, _ in shifted_center_subproblems(n, a, Y + 1, splits)):
            splits *= 2
    if splits == 1:
        parts = [(whole, a, b)]
    else:
        parts = shifted_center_subproblems(n, a, Y + 1, splits)
    for prob, A, B in parts:
        for x0, y0 in solve_bivariate(prob, k):
            p, q = A - y0, B - x0
            if p > 1 and q > 1 and p * q == n:
                return LatticeFactorResult(n, min(p, q), max(p, q), b - q, a - p, "shifted-center")
    raise FactoringFailure("no root of the shifted-center polynomial in the box")


def residue_polynomial(n: int, center: int, base: int, p_res: int) -> tuple[MPoly, int]:
    """Bilinear f for p = center + base*x + p_res, q = center + base*y + q_res.

    q_res is forced by (center + p_res)(center + q_res) = N mod base.  Dividing
    the expanded product by ``base`` gives

        f = base*xy + (center + q_res)*x + (center + p_res)*y + ((center+p_res)(center+q_res) - N)/base
    """
    if math.gcd(center + p_res, base) != 1:
        raise ValueError("known part of p is not invertible modulo the base")
    q_res = (n * pow(center + p_res, -1, base) - center) % base
    cp, cq = center + p_res, center + q_res
    c0 = cp * cq - n
    assert c0 % base == 0
    f = MPoly(("x", "y"), {(1, 1): base, (1, 0): cq, (0, 1): cp, (0, 0): c0 // base})
    return f.primitive() if f.content() > 1 else f, q_res


def _solve_residue(n: int, center: int, base: int, p_res: int, X: int, Y: int, k: int,
                   method: str) -> LatticeFactorResult:
    f, q_res = residue_polynomial(n, center, base, p_res)
    if f.constant_term() == 0 and f.terms.get((1, 0), 0) * f.terms.get((0, 1), 0) == 0:
        raise FactoringFailure("degenerate polynomial")
    roots = solve_bivariate(BivariateProblem(f, X, Y), k)
    for x0, y0 in roots:
        p = center + base * x0 + p_res
        q = center + base * y0 + q_res
        if p > 1 and q > 1 and p * q == n:
            return LatticeFactorResult(n, min(p, q), max(p, q), x0, y0, method)
    raise FactoringFailure("no root within the bounds yields a factorization")


def factor_known_low_bits(n: int, p_low: int, t: int, X: int | None = None, Y: int | None = None,
                          k: int = 2) -> LatticeFactorResult:
    """Factor N = pq given p mod 2^t.

    With p = p_low + 2^t x and q = q_low + 2^t y the product relation becomes
    2^t xy + q_low x + p_low y + (p_low q_low - N)/2^t = 0.  Default bounds
    assume p < q < 2p: |x| <= sqrt(N)/2^t and |y| <= sqrt(2N)/2^t.
    """
    _check_odd_composite(n)
    if t < 1:
        raise ValueError("t must be >= 1")
    base = 1 << t
    p_low %= base
    if p_low % 2 == 0:
        raise ValueError("p_low must be odd to be invertible mod 2^t")
    if p_low > 1 and n % p_low == 0:
        return LatticeFactorResult(n, *sorted((p_low, n // p_low)), 0, 0, "lowbits")
    if X is None:
        X = isqrt(n) // base + 1
    if Y is None:
        Y = isqrt(2 * n) // base + 1
    return _solve_residue(n, 0, base, p_low, X, Y, k, "lowbits")


GAMMA_SQUARED = Fraction(9, 8)  # ((sqrt 2 + sqrt(1/2)) / 2)^2


def sixth_center(n: int, gamma_squared: Fraction = GAMMA_SQUARED) -> int:
    """round(gamma * sqrt(N)), computed exactly from the rational gamma^2 (default 9/8)."""
    return round_sqrt(Fraction(gamma_squared) * n)


def sixth_base(n: int) -> int:
    return iroot_ceil(n, 6)


def factor_known_bits_sixth(n: int, x0_digits: int, X: int | None = None, Y: int | None = None,
                            k: int = 2, gamma_squared: Fraction = GAMMA_SQUARED) -> LatticeFactorResult:
    """Factor N given the low base-B digit of p - C, B = ceil(N^(1/6)), C = round(gamma sqrt N).

    p = C + B*x + x0 and q = C + B*y + y0 with y0 forced mod B.  The default
    box is |x|, |y| <= ceil(N^(1/3)).
    """
    _check_odd_composite(n)
    if Fraction(gamma_squared) <= 1:
        raise ValueError("gamma^2 must exceed 1")
    C, B = sixth_center(n, gamma_squared), sixth_base(n)
    if not 0 <= x0_digits < B:
        raise ValueError(f"x0 must lie in [0, {B})")
    if X is None:
        X = iroot_ceil(n, 3)
    if Y is None:
        Y = iroot_ceil(n, 3)
    return _solve_residue(n, C, B, x0_digits, X, Y, k, "sixth")


# -- instance generators ---------------------------------------------------------

@dataclass(frozen=True)
class PlantedInstance:
    n: int
    p: int
    q: int
    hint: dict


def shifted_center_instance(bits: int, alpha, beta, offset_bound: int | None = None,
                            seed: int = 0) -> PlantedInstance:
    """N = pq with p within ``offset_bound`` of sqrt(alpha N) and q of sqrt(beta N).

    Primes are drawn around sqrt(alpha M), sqrt(beta M) for M = 2^bits and
    rejected until the offsets against the final N are within the bound
    (default floor(N^(1/4))).
    """
    alpha, beta = Fraction(alpha), Fraction(beta)
    rng = random.Random(seed)
    M = 1 << bits
    pc, qc = round_sqrt(alpha * M), round_sqrt(beta * M)
    for _ in range(10000):
        ob = offset_bound if offset_bound is not None else isqrt(isqrt(M))
        p = random_prime(max(3, pc - ob), pc + ob + 1, rng)
        q = random_prime(max(3, qc - ob), qc + ob + 1, rng)
        if p == q:
            continue
        n = p * q
        bound = offset_bound if offset_bound is not None else isqrt(isqrt(n))
        _, a, b = shifted_center_polynomial(n, alpha, beta)
        if abs(a - p) <= bound and abs(b - q) <= bound:
            return PlantedInstance(n, p, q, {"alpha": alpha, "beta": beta, "offset_bound": bound,
                                             "x0": b - q, "y0": a - p})
    raise RuntimeError("could not plant a shifted-center instance")


def iter_known_bits_instances(count: int, bits_lo: int, bits_hi: int, seed: int = 0
                              ) -> Iterable[tuple[int, int, int, int]]:
    """Yield (N, p, q, t) with t = ceil(bits/2.5) for balanced N of varying size."""
    from .arith import gen_balanced_semiprime

    rng = random.Random(seed)
    for i in range(count):
        bits = rng.randint(bits_lo, bits_hi)
        sp = gen_balanced_semiprime(bits, 2, seed=rng.randrange(1 << 30))
        t = math.ceil(Fraction(sp.n.bit_length() * 2, 5))
        yield sp.n, sp.p, sp.q, t
