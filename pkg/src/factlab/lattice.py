"""Exact LLL reduction over the integers plus Minkowski/Hermite diagnostics.

Row-vector convention: the lattice is generated by the rows of the basis.
The reduction is the all-integer variant of LLL (Gram-Schmidt data kept as
the integers d_i = prod ||b*_j||^2 and lambda_ij = d_j * mu_ij), so no
rational or floating-point arithmetic is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


class RankError(ValueError):
    """The rows of a basis are linearly dependent."""


@dataclass(frozen=True)
class Basis:
    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Sequence[Sequence[int]], check: bool = True):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if not rows:
            raise ValueError("empty basis")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("rows of unequal length")
        object.__setattr__(self, "rows", rows)
        if check and gram_det_squared(self) == 0:
            raise RankError("basis rows are linearly dependent")

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def m(self) -> int:
        return len(self.rows[0])

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [" ".join(str(v) for v in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Basis":
        lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or len(lines[0]) != 2:
            raise ValueError("first line must be 'n m'")
        n, m = int(lines[0][0]), int(lines[0][1])
        rows = [[int(v) for v in ln] for ln in lines[1:]]
        if len(rows) != n or any(len(r) != m for r in rows):
            raise ValueError(f"expected {n} rows of {m} integers")
        return cls(rows)


@dataclass
class ReductionReport:
    vector_norms_squared: list[int]
    det_squared: int
    lovasz_delta: Fraction
    thm10_bound_ok: list[bool]
    swaps: int
    hermite_diagnostic: list[bool] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "vector_norms_squared": [str(v) for v in self.vector_norms_squared],
            "det_squared": str(self.det_squared),
            "lovasz_delta": str(self.lovasz_delta),
            "thm10_bound_ok": self.thm10_bound_ok,
            "hermite_diagnostic": self.hermite_diagnostic,
            "swaps": self.swaps,
        }


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _int_det(m: list[list[int]]) -> int:
    """Integer determinant by Bareiss elimination."""
    m = [row[:] for row in m]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def gram_det_squared(basis: Basis | Sequence[Sequence[int]]) -> int:
    """det(B B^T) = det(L)^2, exact."""
    rows = basis.rows if isinstance(basis, Basis) else [tuple(r) for r in basis]
    gram = [[_dot(a, b) for b in rows] for a in rows]
    return _int_det(gram)


def _rank_checked_det2(basis: Basis) -> int:
    d2 = gram_det_squared(basis)
    if d2 <= 0:
        raise RankError("basis rows are linearly dependent")
    return d2


def lll_norm_bounds(norms2: Sequence[int], det2: int) -> list[bool]:
    """For each position i (1-based), ||b_i|| <= 2^(n(n-1)/(4e)) det^(1/e), e = n+1-i.

    Raised to the power 4e this is (||b_i||^2)^(2e) <= 2^(n(n-1)) * (det^2)^2,
    an integer comparison.
    """
    n = len(norms2)
    rhs = (det2 * det2) << (n * (n - 1))
    return [v ** (2 * (n - i)) <= rhs for i, v in enumerate(norms2)]


def hermite_diagnostic(norms2_sorted: Sequence[int], det2: int, slack: float = 1.5) -> list[bool]:
    """prod_{i<=d} ||V_i|| <= gamma^(d/2) det^(d/n) with gamma = slack * n/(e*pi).

    Informational only; the true Hermite constant is unknown for general n and
    this stand-in undershoots it in low dimension.
    """
    n = len(norms2_sorted)
    gamma = slack * n / (math.e * math.pi)
    log_det = 0.5 * _log(det2)
    out, acc = [], 0.0
    for d, v in enumerate(norms2_sorted, 1):
        acc += 0.5 * _log(v)
        out.append(acc <= 0.5 * d * math.log(gamma) + d * log_det / n + 1e-9)
    return out


def _log(v: int) -> float:
    return math.log(v) if v > 0 else float("-inf")


def lll_reduce(basis: Basis | Sequence[Sequence[int]], delta: Fraction | str | float = Fraction(3, 4)
               ) -> tuple[Basis, ReductionReport]:
    """LLL-reduce the rows of ``basis`` with Lovasz parameter ``delta``.

    The returned basis spans the same lattice, is size reduced
    (|mu_ij| <= 1/2) and satisfies the Lovasz condition at ``delta`` for
    every consecutive pair.
    """
    if not isinstance(basis, Basis):
        basis = Basis(basis, check=False)
    delta = Fraction(delta)
    if not (Fraction(1, 4) < delta < 1):
        raise ValueError("delta must lie in (1/4, 1)")
    dn, dd = delta.numerator, delta.denominator
    b = [list(r) for r in basis.rows]
    n = len(b)
    # d[i] = d_i with d[0] = 1 (1-based GS data), lam[i][j] = lambda_ij
    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * (n + 1) for _ in range(n + 1)]
    swaps = 0

    def gso_row(k: int) -> None:
        # incremental integral Gram-Schmidt for row k (1-based)
        for j in range(1, k + 1):
            u = _dot(b[k - 1], b[j - 1])
            for i in range(1, j):
                u = (d[i] * u - lam[k][i] * lam[j][i]) // d[i - 1]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise RankError("basis rows are linearly dependent")
                d[k] = u

    def redi(k: int, l: int) -> None:
        two_lam = 2 * lam[k][l]
        if abs(two_lam) > d[l]:
            q = (two_lam + d[l]) // (2 * d[l])  # nearest integer to lam/d
            bl, bk = b[l - 1], b[k - 1]
            for t in range(len(bk)):
                bk[t] -= q * bl[t]
            lam[k][l] -= q * d[l]
            for i in range(1, l):
                lam[k][i] -= q * lam[l][i]

    def swapi(k: int, kmax: int) -> None:
        b[k - 1], b[k - 2] = b[k - 2], b[k - 1]
        for j in range(1, k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        bb = (d[k - 2] * d[k] + lm * lm) // d[k - 1]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k] * lam[i][k - 1] - lm * t) // d[k - 1]
            lam[i][k - 1] = (bb * t + lm * lam[i][k]) // d[k]
        d[k - 1] = bb

    gso_row(1)
    k, kmax = 2, 1
    while k <= n:
        if k > kmax:
            kmax = k
            gso_row(k)
        redi(k, k - 1)
        # Lovasz: d_k d_{k-2} + lambda^2 >= delta d_{k-1}^2
        lm = lam[k][k - 1]
        if dd * (d[k] * d[k - 2] + lm * lm) < dn * d[k - 1] * d[k - 1]:
            swapi(k, kmax)
            swaps += 1
            k = max(2, k - 1)
        else:
            for l in range(k - 2, 0, -1):
                redi(k, l)
            k += 1

    out = Basis(b, check=False)
    det2 = d[n]  # Gram determinant is the last d_i
    norms2 = sorted(_dot(r, r) for r in b)
    report = ReductionReport(
        vector_norms_squared=norms2,
        det_squared=det2,
        lovasz_delta=delta,
        thm10_bound_ok=lll_norm_bounds(norms2, det2),
        swaps=swaps,
        hermite_diagnostic=hermite_diagnostic(norms2, det2),
    )
    return out, report


def minkowski_check(basis: Basis | Sequence[Sequence[int]]) -> bool:
    """True iff some basis vector has ||V|| <= sqrt(n) det(L)^(1/n).

    Compared as (||V||^2)^n <= n^n det^2.
    """
    if not isinstance(basis, Basis):
        basis = Basis(basis, check=False)
    det2 = _rank_checked_det2(basis)
    n = basis.n
    rhs = n ** n * det2
    return any(_dot(r, r) ** n <= rhs for r in basis.rows)


def gram_schmidt_fractions(rows: Sequence[Sequence[int]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Exact rational Gram-Schmidt: (||b*_i||^2 list, mu matrix)."""
    n = len(rows)
    bstar: list[list[Fraction]] = []
    B: list[Fraction] = []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = [Fraction(x) for x in rows[i]]
        for j in range(i):
            mu[i][j] = sum((Fraction(a) * c for a, c in zip(rows[i], bstar[j])), Fraction(0)) / B[j]
            v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
        bstar.append(v)
        B.append(sum((a * a for a in v), Fraction(0)))
    return B, mu


def is_lll_reduced(basis: Basis | Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> bool:
    """Size reduction and Lovasz condition, checked with exact rationals."""
    rows = basis.rows if isinstance(basis, Basis) else basis
    B, mu = gram_schmidt_fractions(rows)
    n = len(rows)
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, n):
        if B[k] < (Fraction(delta) - mu[k][k - 1] ** 2) * B[k - 1]:
            return False
    return True
