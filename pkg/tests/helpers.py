"""Independent oracles shared by the tests."""

import math
from fractions import Fraction

import sympy


def same_lattice_unimodular(before, after) -> bool:
    """For square full-rank bases: after = U * before with U integral and det U = +-1."""
    B = sympy.Matrix(before)
    A = sympy.Matrix(after)
    U = A * B.inv()
    if any(not v.is_integer for v in U):
        return False
    return abs(U.det()) == 1


def shortest_vector_norm2(rows) -> int:
    """Exact SVP by Fincke-Pohst enumeration over an exact Gram-Schmidt basis.

    The basis is first reduced with sympy's LLL, which keeps the enumeration
    tree small without involving the reduction under test.
    """
    from sympy import ZZ
    from sympy.polys.matrices import DomainMatrix

    dm = DomainMatrix([[ZZ(v) for v in r] for r in rows], (len(rows), len(rows[0])), ZZ)
    rows = [[int(v) for v in r] for r in dm.lll().to_Matrix().tolist()]
    n = len(rows)
    bstar, B, mu = [], [], [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = [Fraction(x) for x in rows[i]]
        for j in range(i):
            mu[i][j] = sum(Fraction(a) * c for a, c in zip(rows[i], bstar[j])) / B[j]
            v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
        bstar.append(v)
        B.append(sum(a * a for a in v))
    best = min(sum(a * a for a in r) for r in rows)
    coeffs = [0] * n

    def rec(i: int, partial: Fraction) -> None:
        nonlocal best
        if i < 0:
            if partial > 0:
                vec = [sum(coeffs[k] * rows[k][t] for k in range(n)) for t in range(len(rows[0]))]
                best = min(best, sum(a * a for a in vec))
            return
        c = -sum(coeffs[j] * mu[j][i] for j in range(i + 1, n))
        # (x + c)^2 * B[i] <= best - partial
        room = (best - partial) / B[i]
        if room < 0:
            return
        r = math.isqrt(int(room)) + 1
        lo, hi = math.floor(-c - r), math.ceil(-c + r)
        for x in range(lo, hi + 1):
            val = partial + (x + c) ** 2 * B[i]
            if val <= best:
                coeffs[i] = x
                rec(i - 1, val)
        coeffs[i] = 0

    rec(n - 1, Fraction(0))
    return best


def to_sympy(poly):
    """MPoly -> sympy expression, for symbolic cross-checks."""
    syms = sympy.symbols(poly.vars) if poly.vars else ()
    expr = sympy.Integer(0)
    for e, c in poly.terms.items():
        t = sympy.Integer(c)
        for s, k in zip(syms, e):
            t *= s ** k
        expr += t
    return expr
