"""Sparse multivariate polynomials over the integers.

An :class:`MPoly` is an ordered tuple of variable names plus a mapping from
exponent tuples to nonzero integer coefficients.  Values are treated as
immutable.  Binary operations between polynomials over different variable
lists embed both into the union (left operand's order first).
"""

from __future__ import annotations

import heapq
import math
from typing import Mapping, Sequence

Exps = tuple


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exps, int] | None = None):
        self.vars = tuple(vars)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names {self.vars}")
        k = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != k:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            if c:
                clean[tuple(e)] = int(c)
        self.terms = clean

    # -- construction -------------------------------------------------------

    @classmethod
    def const(cls, c: int, vars: Sequence[str] = ()) -> "MPoly":
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def gens(cls, *names: str) -> tuple["MPoly", ...]:
        """Generators of Z[names], e.g. ``x, y, z = MPoly.gens("x", "y", "z")``."""
        out = []
        for i in range(len(names)):
            e = [0] * len(names)
            e[i] = 1
            out.append(cls(names, {tuple(e): 1}))
        return tuple(out)

    @classmethod
    def monomial(cls, vars: Sequence[str], exps: Exps, coeff: int = 1) -> "MPoly":
        return cls(vars, {tuple(exps): coeff})

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, int):
            return MPoly.const(other, self.vars)
        return NotImplemented

    def embed(self, vars: Sequence[str]) -> "MPoly":
        """Same polynomial viewed over a variable list containing ours."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in self.vars:
            if v not in vars:
                if self.degree(v) > 0:
                    raise ValueError(f"variable {v} missing from {vars}")
                idx.append(None)
            else:
                idx.append(vars.index(v))
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, j in enumerate(idx):
                if j is not None:
                    ne[j] = e[i]
            terms[tuple(ne)] = c
        return MPoly(vars, terms)

    def _aligned(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        if self.vars == other.vars:
            return self, other
        union = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.embed(union), other.embed(union)

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def drop_unused(self) -> "MPoly":
        return self.embed(self.used_vars())

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> int:
        return self.terms.get((0,) * len(self.vars), 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MPoly.const(other, self.vars)
        if not isinstance(other, MPoly):
            return NotImplemented
        try:
            a, b = self._aligned(other)
        except ValueError:
            return False
        return a.terms == b.terms

    def __hash__(self):
        items = []
        for e, c in self.terms.items():
            items.append((tuple(sorted((v, k) for v, k in zip(self.vars, e) if k)), c))
        return hash(frozenset(items))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._aligned(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MPoly(a.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return MPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._aligned(other)
        terms: dict = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MPoly(a.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out, base = MPoly.const(1, self.vars), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift_monomial(self, exps: Exps, coeff: int = 1) -> "MPoly":
        """self * coeff * x^exps."""
        return MPoly(self.vars, {tuple(i + j for i, j in zip(e, exps)): c * coeff
                                 for e, c in self.terms.items()})

    # -- structure ----------------------------------------------------------

    def _index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise ValueError(f"unknown variable {var!r} (have {self.vars})") from None

    def degree(self, var: str) -> int:
        """Degree in ``var`` (0 if absent, -1 for the zero polynomial)."""
        if not self.terms:
            return -1
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def max_degree(self) -> int:
        """Largest degree in any single variable."""
        return max((max(e, default=0) for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coeffs_in(self, var: str) -> list["MPoly"]:
        """[c_0, ..., c_d] with self = sum c_i var^i; the c_i omit ``var``."""
        i = self._index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        d = self.degree(var)
        buckets: list[dict] = [dict() for _ in range(max(d, 0) + 1)]
        for e, c in self.terms.items():
            buckets[e[i]][e[:i] + e[i + 1:]] = c
        return [MPoly(rest, b) for b in buckets]

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
        return g

    def primitive(self) -> "MPoly":
        g = self.content()
        if g <= 1:
            return self
        return MPoly(self.vars, {e: c // g for e, c in self.terms.items()})

    def exact_div(self, other: "MPoly | int") -> "MPoly":
        """Quotient self / other, which must divide exactly (ValueError otherwise)."""
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero polynomial")
            out = {}
            for e, c in self.terms.items():
                q, r = divmod(c, other)
                if r:
                    raise ValueError("inexact division")
                out[e] = q
            return MPoly(self.vars, out)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            return self.exact_div(other.constant_term()).embed(
                self.vars + tuple(v for v in other.vars if v not in self.vars))
        a, b = self._aligned(other)
        return _exact_div(a, b)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, point: Sequence[int]) -> int:
        if len(point) != len(self.vars):
            raise ValueError(f"point of arity {len(point)} for variables {self.vars}")
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(point, e):
                if k:
                    t *= v ** k
            total += t
        return total

    __call__ = evaluate

    def subs(self, values: Mapping[str, int]) -> "MPoly":
        """Substitute integers for some variables; those variables are removed."""
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        vals = [(i, values[v]) for i, v in enumerate(self.vars) if v in values]
        out: dict = {}
        for e, c in self.terms.items():
            t = c
            for i, val in vals:
                if e[i]:
                    t *= val ** e[i]
            key = tuple(e[i] for i in keep)
            out[key] = out.get(key, 0) + t
        return MPoly([self.vars[i] for i in keep], out)

    def translate(self, shifts: Mapping[str, int]) -> "MPoly":
        """f(v + s_v) for the given variable shifts."""
        out = self
        for v, s in shifts.items():
            if not s:
                continue
            i = out._index(v)
            unit = [0] * len(out.vars)
            unit[i] = 1
            lin = MPoly(out.vars, {tuple(unit): 1, (0,) * len(out.vars): s})
            coeffs = out.coeffs_in(v)
            acc = MPoly(out.vars)
            for c in reversed(coeffs):  # Horner in v
                acc = acc * lin + c.embed(out.vars)
            out = acc
        return out

    def scale_vars(self, factors: Sequence[int]) -> "MPoly":
        """f(x1*F1, ..., xk*Fk)."""
        out = {}
        for e, c in self.terms.items():
            t = c
            for f, k in zip(factors, e):
                if k:
                    t *= f ** k
            out[e] = t
        return MPoly(self.vars, out)

    # -- display / serialization -------------------------------------------

    def sorted_terms(self) -> list[tuple[Exps, int]]:
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            mag = abs(c)
            body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_text(self) -> str:
        lines = ["vars: " + " ".join(self.vars)]
        for e, c in self.sorted_terms():
            lines.append(" ".join([str(c)] + [str(k) for k in e]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MPoly":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("vars:"):
            raise ValueError("missing 'vars:' header")
        vars = lines[0][len("vars:"):].split()
        terms: dict = {}
        for ln in lines[1:]:
            fields = ln.split()
            if len(fields) != len(vars) + 1:
                raise ValueError(f"bad term line {ln!r}")
            e = tuple(int(f) for f in fields[1:])
            if e in terms:
                raise ValueError(f"duplicate monomial {e}")
            terms[e] = int(fields[0])
        return cls(vars, terms)


def _order_key(e: Exps):
    return (sum(e), e)


def _exact_div(a: MPoly, b: MPoly) -> MPoly:
    # leading-term division in graded-lex order; exact iff remainder hits zero
    lead_b = max(b.terms, key=_order_key)
    lc_b = b.terms[lead_b]
    rem = dict(a.terms)
    heap = [tuple(-x for x in (sum(e),) + e) for e in rem]
    heapq.heapify(heap)
    quot = {}
    while rem:
        while True:
            key = heapq.heappop(heap)
            e = tuple(-x for x in key[1:])
            if e in rem:
                break
        c = rem[e]
        shift = tuple(i - j for i, j in zip(e, lead_b))
        if min(shift) < 0 or c % lc_b:
            raise ValueError("inexact division")
        qc = c // lc_b
        quot[shift] = qc
        for eb, cb in b.terms.items():
            t = tuple(i + j for i, j in zip(eb, shift))
            v = rem.get(t, 0) - qc * cb
            if v:
                if t not in rem:
                    heapq.heappush(heap, tuple(-x for x in (sum(t),) + t))
                rem[t] = v
            elif t in rem:
                del rem[t]
    return MPoly(a.vars, quot)


# -- operations ----------------------------------------------------------------

def evaluate(f: MPoly, point: Sequence[int]) -> int:
    return f.evaluate(point)


def arith(f: MPoly, g: MPoly, op: str) -> MPoly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def norms(f: MPoly) -> tuple[int, int]:
    """(squared euclidean norm, sup norm) of the coefficient vector."""
    l2 = sum(c * c for c in f.terms.values())
    sup = max((abs(c) for c in f.terms.values()), default=0)
    return l2, sup


def _bounds_tuple(f: MPoly, bounds) -> tuple[int, ...]:
    if isinstance(bounds, Mapping):
        return tuple(bounds[v] for v in f.vars)
    bounds = tuple(bounds)
    if len(bounds) != len(f.vars):
        raise ValueError("one bound per variable required")
    return bounds


def height(f: MPoly, bounds) -> int:
    """max over terms of |coeff| * prod bound^exponent, i.e. ||f(xX, yY, ...)||_inf."""
    b = _bounds_tuple(f, bounds)
    if any(v < 1 for v in b):
        raise ValueError("bounds must be >= 1")
    return norms(f.scale_vars(b))[1]


def det_bareiss(matrix: list[list[MPoly]]) -> MPoly:
    """Determinant by fraction-free (Bareiss) elimination; entries share variables."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    m = [row[:] for row in matrix]
    vars = m[0][0].vars
    sign = 1
    prev = MPoly.const(1, vars)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return MPoly(vars)
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            for j in range(k + 1, n):
                t = pivot * m[i][j]
                if not mik.is_zero() and not m[k][j].is_zero():
                    t = t - mik * m[k][j]
                m[i][j] = t.exact_div(prev) if not t.is_zero() else t
            m[i][k] = MPoly(vars)
        prev = pivot
    return m[n - 1][n - 1] * sign


def sylvester_matrix(f: MPoly, g: MPoly, var: str) -> list[list[MPoly]]:
    f, g = f._aligned(g)
    fc = f.coeffs_in(var)[::-1]  # leading coefficient first
    gc = g.coeffs_in(var)[::-1]
    m, n = len(fc) - 1, len(gc) - 1
    rest = fc[0].vars
    zero = MPoly(rest)
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return rows


def resultant(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Resultant of f and g with respect to ``var`` (Sylvester determinant).

    Orientation: g's coefficient rows come first, so for f = X + Y - z the
    result equals g(X, Y, X + Y) exactly; swapping the arguments multiplies by
    (-1)^(deg f * deg g).  The result lives over the remaining variables.  If
    exactly one input is constant in ``var`` the result is that constant raised
    to the other's degree.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial")
    g, f = g._aligned(f)
    if var not in f.vars:
        f, g = f.embed(f.vars + (var,)), g.embed(g.vars + (var,))
    m, n = f.degree(var), g.degree(var)
    if m == 0 and n == 0:
        raise ValueError(f"both polynomials are constant in {var}")
    rest = tuple(v for v in f.vars if v != var)
    if m == 0:
        return f.coeffs_in(var)[0] ** n
    if n == 0:
        return g.coeffs_in(var)[0] ** m
    if m == 1 and n == 1:
        a1, a0 = g.coeffs_in(var)[::-1]
        b1, b0 = f.coeffs_in(var)[::-1]
        return a1 * b0 - a0 * b1
    out = det_bareiss(sylvester_matrix(g, f, var))
    return out.embed(rest) if out.vars != rest else out


def not_multiple_certificate(g: MPoly, f: MPoly) -> bool:
    """True when ||g||_2 < 2^-((d+1)^(n+1)) * ||f||_inf, which certifies that g
    is not an integer-polynomial multiple of f.

    d is the largest single-variable degree over both inputs and n the number
    of variables.  False means "no certificate", never "is a multiple".
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("certificate needs nonzero polynomials")
    f, g = f._aligned(g)
    d = max(f.max_degree(), g.max_degree(), 1)
    n = len(f.vars)
    e = (d + 1) ** (n + 1)
    g2, _ = norms(g)
    _, fsup = norms(f)
    # ||g||_2^2 * 2^(2e) < ||f||_inf^2
    return (g2 << (2 * e)) < fsup * fsup


def is_bilinear(f: MPoly) -> bool:
    return len(f.vars) == 2 and all(a <= 1 and b <= 1 for a, b in f.terms)


def is_irreducible(f: MPoly) -> bool:
    """Irreducibility over Z for bilinear a*xy + b*x + c*y + e.

    Over Q such an f is reducible iff a*e == b*c (a != 0) or it is constant;
    over Z a content greater than one also splits off.  For other shapes only
    the content test is applied, which is a necessary condition.
    """
    if f.is_zero() or f.is_constant():
        return False
    if f.content() != 1:
        return False
    if not is_bilinear(f):
        return True
    a = f.terms.get((1, 1), 0)
    b = f.terms.get((1, 0), 0)
    c = f.terms.get((0, 1), 0)
    e = f.terms.get((0, 0), 0)
    if a == 0:
        return True  # nonconstant linear form
    return a * e != b * c


# -- univariate integer roots ----------------------------------------------------

def _uni_coeffs(f: MPoly) -> list[int]:
    used = f.used_vars()
    if len(used) > 1:
        raise ValueError(f"polynomial is not univariate (uses {used})")
    if not used:
        return [f.constant_term()]
    i = f.vars.index(used[0])
    d = f.degree(used[0])
    c = [0] * (d + 1)
    for e, v in f.terms.items():
        c[e[i]] = v
    return c


def _horner(c: Sequence[int], x: int) -> int:
    acc = 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def _brackets(c: list[int], lo: int, hi: int) -> set[int]:
    """Integers a such that every real root of c in [lo, hi] lies in some [a, a+1]."""
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    deg = len(c) - 1
    if deg <= 0:
        return set()
    if deg == 1:
        # root -c0/c1; floor division gives the bracket start
        a = (-c[0]) // c[1]
        return {a} if lo - 1 <= a <= hi else set()
    deriv = [i * c[i] for i in range(1, deg + 1)]
    crit = _brackets(deriv, lo, hi)
    points = sorted({lo, hi} | {a for a in crit if lo <= a <= hi}
                    | {a + 1 for a in crit if lo <= a + 1 <= hi})
    out = set(crit)
    for s, t in zip(points, points[1:]):
        fs, ft = _sign(_horner(c, s)), _sign(_horner(c, t))
        if fs == 0:
            out.add(s)
        if ft == 0:
            out.add(t)
        if fs * ft < 0:
            # no critical point strictly inside (s, t): f is monotone there
            while t - s > 1:
                mid = (s + t) // 2
                fm = _sign(_horner(c, mid))
                if fm == 0:
                    s = t = mid
                    break
                if fm == fs:
                    s = mid
                else:
                    t = mid
            out.add(s)
    return out


def integer_roots_univariate(f: MPoly, bound: int) -> list[int]:
    """All integer roots r of a univariate f with |r| <= bound, ascending.

    Real roots are isolated recursively: the critical points of f (roots of f')
    cut [-bound, bound] into monotone pieces, each bisected on a sign change.
    Every integer root is an endpoint of some width-one bracket and is
    confirmed by exact evaluation.
    """
    if f.is_zero():
        raise ValueError("zero polynomial has every integer as a root")
    c = _uni_coeffs(f)
    lo, hi = -bound, bound
    cands = set()
    for a in _brackets(c, lo, hi):
        cands.update((a, a + 1))
    return sorted(r for r in cands if lo <= r <= hi and _horner(c, r) == 0)
