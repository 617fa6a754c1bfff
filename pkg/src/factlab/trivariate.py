"""Trivariate lattice pipeline for f0 = c0*xy + c1*x + c2*y + c3*z + c4.

With approximations p0, q0, a multiplier m0 and a shift r0, the identity
(r0 + m0 p)(r0 + m0 q) = r0^2 + r0 m0 (p + q) + m0^2 N gives, after
substituting p = p0 + x, q = q0 + y, z = p + q,

    f0 = m0 xy + (r0 + m0 q0) x + (r0 + m0 p0) y - r0 z + m0 p0 q0 + r0 (p0 + q0) - m0 N

which vanishes at (p - p0, q - q0, p + q).  The lattice step looks for two
more polynomials with the same small root; resultants then eliminate z and y.

Note that f0 = m0 * g + r0 * h with g = (x + p0)(y + q0) - N and
h = x + y - z + p0 + q0, so every member of the f0 family lives in the ideal
(g, h).  Whether lattice reduction escapes that ideal is what the harness
measures; it records every outcome instead of assuming success.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arith import gen_balanced_semiprime
from .fermat import ceil_sqrt
from .lattice import lll_reduce, lll_norm_bounds
from .poly import (MPoly, height, integer_roots_univariate, not_multiple_certificate,
                   resultant)

VARS = ("x", "y", "z")
OUTCOMES = ("factors-found", "dependent-polynomials", "no-short-vectors", "bound-infeasible")


# -- polynomial construction -----------------------------------------------------

def build_f0(n: int, p0: int, q0: int, m0: int, r0: int) -> MPoly:
    if r0 == 0:
        raise ValueError("r0 must be nonzero")
    if math.gcd(m0, r0) != 1:
        raise ValueError(f"gcd(m0, r0) = {math.gcd(m0, r0)} != 1")
    return MPoly(VARS, {
        (1, 1, 0): m0,
        (1, 0, 0): r0 + m0 * q0,
        (0, 1, 0): r0 + m0 * p0,
        (0, 0, 1): -r0,
        (0, 0, 0): m0 * p0 * q0 + r0 * (p0 + q0) - m0 * n,
    })


def build_f4(p0: int, q0: int) -> MPoly:
    """x + y - z + p0 + q0, the linear relation z = p + q."""
    return MPoly(VARS, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): -1, (0, 0, 0): p0 + q0})


def second_pair(m0: int, r0: int) -> tuple[int, int]:
    """(m1, r1) = (m0 + 2, r0 + 1 or 2), nudged until gcd(m0, m1, r0, r1) = 1 and gcd(m1, r1) = 1."""
    m1 = m0 + 2
    r1 = r0 + (1 if r0 % 2 == 0 else 2)
    while math.gcd(math.gcd(m0, m1), math.gcd(r0, r1)) != 1 or math.gcd(m1, r1) != 1 or r1 == 0:
        r1 += 1
    return m1, r1


def build_u_family(n: int) -> list[MPoly]:
    """The nine relations u0..u8 in (X, Y, z) satisfied by (p, q, p + q) when N = pq."""
    if n < 1:
        raise ValueError("N must be >= 1")
    X, Y, z = MPoly.gens("X", "Y", "z")
    s2 = z ** 2 - 2 * n
    s3 = z ** 3 - 3 * n * z
    s4 = z ** 4 - 4 * n * z ** 2 + 2 * n * n
    out = [X + Y - z, X ** 2 - z * X + n, Y ** 2 - z * Y + n]
    for s, k in ((s2, 2), (s3, 3), (s4, 4)):
        out.append(X ** (2 * k) - s * X ** k + n ** k)
        out.append(Y ** (2 * k) - s * Y ** k + n ** k)
    return out


# -- instances and feasibility ---------------------------------------------------

@dataclass
class TrivariateInstance:
    n: int
    p0: int
    q0: int
    m0: int
    r0: int
    X: int
    Y: int
    Z: int
    tau: Fraction = Fraction(0)
    beta: Fraction = Fraction(1)
    eps: Fraction = Fraction(1, 100)
    m: int = 1  # base shift depth of the lattice
    f0: MPoly = field(init=False, repr=False)

    def __post_init__(self):
        self.tau, self.beta, self.eps = Fraction(self.tau), Fraction(self.beta), Fraction(self.eps)
        self.f0 = build_f0(self.n, self.p0, self.q0, self.m0, self.r0)
        if self.f0.content() != 1:
            raise ValueError("coefficients of f0 share a common factor")

    @property
    def W(self) -> int:
        return height(self.f0, (self.X, self.Y, self.Z))

    @property
    def t(self) -> int:
        """Extra y-shift depth realizing tau."""
        return round(self.tau * self.m)

    def scalars(self) -> dict:
        return {"n": str(self.n), "p0": str(self.p0), "q0": str(self.q0), "m0": str(self.m0),
                "r0": str(self.r0), "X": str(self.X), "Y": str(self.Y), "Z": str(self.Z),
                "tau": str(self.tau), "beta": str(self.beta), "eps": str(self.eps), "m": self.m}


def parameter_feasibility(beta, tau, eps) -> bool:
    """(3 tau^2 / 2 + 2 eps) / (2 + 3 tau - eps) < beta, exactly."""
    beta, tau, eps = Fraction(beta), Fraction(tau), Fraction(eps)
    if beta <= 0 or eps <= 0 or tau < 0:
        raise ValueError("need beta > 0, eps > 0, tau >= 0")
    return (Fraction(3, 2) * tau * tau + 2 * eps) / (2 + 3 * tau - eps) < beta


def ejm_bound_check(X: int, Y: int, Z: int, W: int, tau, eps) -> bool:
    """X^(3+3t) Y^(3+6t+3t^2) Z^(2+3t) < W^(2+3t-e) with t = tau, e = eps, exactly.

    Both sides are raised to the common denominator D of the exponents so
    the comparison is between integers.
    """
    tau, eps = Fraction(tau), Fraction(eps)
    if min(X, Y, Z) < 1 or W < 2:
        raise ValueError("bounds must be >= 1 and W >= 2")
    ex = [3 + 3 * tau, 3 + 6 * tau + 3 * tau * tau, 2 + 3 * tau, 2 + 3 * tau - eps]
    if ex[3] <= 0:
        return False
    D = math.lcm(*(e.denominator for e in ex))
    a, b, c, w = (int(e * D) for e in ex)
    lhs_bits = a * X.bit_length() + b * Y.bit_length() + c * Z.bit_length()
    rhs_bits = w * (W.bit_length() - 1)
    if lhs_bits < rhs_bits:  # cheap certain cases before the exact powers
        return True
    if a * (X.bit_length() - 1) + b * (Y.bit_length() - 1) + c * (Z.bit_length() - 1) > w * W.bit_length():
        return False
    return X ** a * Y ** b * Z ** c < W ** w


# -- lattice ---------------------------------------------------------------------

@dataclass
class LatticeReport:
    dim: int = 0
    modulus: int = 0
    norms_squared: list[int] = field(default_factory=list)
    gate_passed: int = 0
    norm_bounds_ok: list[bool] = field(default_factory=list)


def _support(p: MPoly) -> set[tuple[int, ...]]:
    return set(p.terms)


def ejm_lattice(f: MPoly, X: int, Y: int, Z: int, m: int, t: int):
    """Jochemsz-May style integer lattice for f with extra y-shifts t.

    S = monomials of f^(m-1) times y^j (0 <= j <= t); M = monomials of s*f
    for s in S.  Rows are s * f' * X^(lx-i) Y^(ly-j) Z^(lz-k) for s in S and
    R * mono for mono in M \\ S, with f' = f / f(0,0) mod R and
    R = u * X^lx Y^ly Z^lz, u >= W coprime to f(0,0).
    """
    a0 = f.constant_term()
    if a0 == 0:
        raise ValueError("lattice needs f(0,0) != 0")
    base = _support(f ** (m - 1)) if m > 1 else {(0, 0, 0)}
    S = {(i, j + s, k) for (i, j, k) in base for s in range(t + 1)}
    M = set()
    for (i, j, k) in S:
        for (a, b, c) in f.terms:
            M.add((i + a, j + b, k + c))
    lx = max(e[0] for e in S)
    ly = max(e[1] for e in S)
    lz = max(e[2] for e in S)
    W = height(f, (X, Y, Z))
    u = W + ((1 - W) % abs(a0))
    R = u * X ** lx * Y ** ly * Z ** lz
    if math.gcd(R, a0) != 1:
        raise ValueError("modulus not coprime to f(0,0); adjust the bounds")
    inv = pow(a0, -1, R)
    fp = {e: c * inv % R for e, c in f.terms.items()}
    monos = sorted(M, key=lambda e: (sum(e), e))
    col = {e: i for i, e in enumerate(monos)}
    scale = {e: X ** e[0] * Y ** e[1] * Z ** e[2] for e in monos}
    rows = []
    for s in sorted(S, key=lambda e: (sum(e), e)):
        row = [0] * len(monos)
        mult = X ** (lx - s[0]) * Y ** (ly - s[1]) * Z ** (lz - s[2])
        for e, c in fp.items():
            tgt = (e[0] + s[0], e[1] + s[1], e[2] + s[2])
            row[col[tgt]] = c * mult * scale[tgt]
        rows.append(row)
    for e in monos:
        if e not in S:
            row = [0] * len(monos)
            row[col[e]] = R * scale[e]
            rows.append(row)
    return rows, monos, R, scale


def ejm_reduce(inst: TrivariateInstance, max_polys: int = 2):
    """Reduce the lattice of f0 and return (f1, f2, report).

    f1, f2 are the shortest reduced vectors that pass the gate
    dim * ||v||^2 < R^2 (so they vanish at the root over the integers);
    either is None when fewer vectors pass.  Raises BoundInfeasible when the
    determinant/height inequality fails for the instance.
    """
    if not ejm_bound_check(inst.X, inst.Y, inst.Z, inst.W, inst.tau, inst.eps):
        raise BoundInfeasible("determinant/height inequality fails")
    X, Y, Z = inst.X, inst.Y, inst.Z
    a0 = inst.f0.constant_term()
    X, Y, Z = (_coprime(b, a0) for b in (X, Y, Z))
    rows, monos, R, scale = ejm_lattice(inst.f0, X, Y, Z, inst.m, inst.t)
    reduced, rep = lll_reduce(rows)
    dim = len(rows)
    vecs = sorted(reduced.rows, key=lambda v: sum(c * c for c in v))
    report = LatticeReport(dim, R, list(rep.vector_norms_squared), 0,
                           lll_norm_bounds(rep.vector_norms_squared, rep.det_squared))
    polys = []
    for v in vecs:
        if dim * sum(c * c for c in v) >= R * R:
            break
        report.gate_passed += 1
        if len(polys) < max_polys:
            terms = {}
            for c, e in zip(v, monos):
                if c:
                    assert c % scale[e] == 0
                    terms[e] = c // scale[e]
            polys.append(MPoly(VARS, terms))
    while len(polys) < 2:
        polys.append(None)
    return polys[0], polys[1], report


def _coprime(b: int, a: int) -> int:
    while math.gcd(b, a) != 1:
        b += 1
    return b


class BoundInfeasible(ValueError):
    pass


# -- elimination -----------------------------------------------------------------

def _normal(p: MPoly) -> MPoly:
    """Primitive part with positive leading coefficient, for deduplication."""
    q = p.primitive()
    lead = q.sorted_terms()[0][1]
    return -q if lead < 0 else q


def _distinct(polys: Sequence[MPoly]) -> list[MPoly]:
    seen, out = set(), []
    for p in polys:
        if p.is_zero() or p.is_constant():
            continue
        key = _normal(p)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


@dataclass
class Diagnostics:
    first_level: dict = field(default_factory=dict)    # "i,j,var" -> nonzero?
    second_level: dict = field(default_factory=dict)   # "(i,j),(k,l),v,w" -> nonzero?
    identical_first_level: list = field(default_factory=list)
    certificates: dict = field(default_factory=dict)

    @property
    def second_level_vanishing(self) -> bool:
        return any(not v for v in self.second_level.values())

    @property
    def first_level_vanishing(self) -> bool:
        return not all(self.first_level.values())

    @property
    def structurally_dependent(self) -> bool:
        return (bool(self.identical_first_level) or self.second_level_vanishing
                or self.first_level_vanishing)

    def as_dict(self) -> dict:
        return {"first_level": self.first_level, "second_level": self.second_level,
                "identical_first_level": self.identical_first_level,
                "certificates": self.certificates,
                "second_level_vanishing": self.second_level_vanishing,
                "structurally_dependent": self.structurally_dependent}


def independence_diagnostics(polys: Sequence[MPoly]) -> Diagnostics:
    """First- and second-level resultant tests on 2 to 4 trivariate polynomials.

    First level: R(f_i, f_j, v) for every pair and variable.  Second level:
    for every variable v and every two distinct first-level resultants in v,
    R(R_ij, R_kl, w) for each remaining variable w.  First-level resultants
    that agree up to sign and content are listed as identical.
    """
    if not 2 <= len(polys) <= 4:
        raise ValueError("diagnostics take 2 to 4 polynomials")
    vs = polys[0].vars
    if len(vs) != 3 or any(p.vars != vs for p in polys):
        raise ValueError("all polynomials must share the same three variables")
    diag = Diagnostics()
    pairs = list(itertools.combinations(range(len(polys)), 2))
    for v in vs:
        level1 = {}
        for i, j in pairs:
            r = resultant(polys[i], polys[j], v) if polys[i].degree(v) + polys[j].degree(v) > 0 else None
            ok = r is not None and not r.is_zero()
            diag.first_level[f"{i},{j},{v}"] = ok
            if ok:
                level1[(i, j)] = r
        keys = list(level1)
        for a, b in itertools.combinations(keys, 2):
            ra, rb = level1[a], level1[b]
            if not ra.is_constant() and not rb.is_constant() and _normal(ra) == _normal(rb):
                diag.identical_first_level.append(f"{a[0]},{a[1]}|{b[0]},{b[1]} in {v}")
            for w in vs:
                if w == v or ra.degree(w) + rb.degree(w) == 0:
                    continue
                if ra.degree(w) == 0 and rb.degree(w) == 0:
                    continue
                try:
                    rr = resultant(ra, rb, w)
                    nz = not rr.is_zero()
                except ValueError:
                    nz = False
                diag.second_level[f"{a[0]},{a[1]}|{b[0]},{b[1]} {v}->{w}"] = nz
    return diag


@dataclass
class SolveOutcome:
    status: str  # "solved", "no-roots", "dependent-polynomials"
    roots: list[tuple[int, int, int]] = field(default_factory=list)
    path: str = ""


def _roots_in(p: MPoly, bound: int) -> list[int]:
    p = p.drop_unused()
    if p.is_zero():
        return []
    if p.is_constant():
        return []
    return integer_roots_univariate(p, bound)


def _complete(polys: Sequence[MPoly], partial: dict[str, int], order: Sequence[str],
              bounds: dict[str, int]) -> list[dict[str, int]]:
    """Extend a partial assignment one variable at a time from the polynomials themselves."""
    if len(partial) == len(order):
        return [dict(partial)]
    v = next(u for u in reversed(order) if u not in partial)
    cands = None
    for p in polys:
        s = p.subs(partial) if partial else p
        s = s.drop_unused()
        if s.is_zero() or s.is_constant():
            continue
        if s.used_vars() != (v,):
            continue
        r = set(_roots_in(s, bounds[v]))
        cands = r if cands is None else cands & r
    if cands is None:
        return []
    out = []
    for c in sorted(cands):
        out.extend(_complete(polys, {**partial, v: c}, order, bounds))
    return out


def _verify(polys: Sequence[MPoly], pt: dict[str, int]) -> bool:
    vs = polys[0].vars
    return all(p.evaluate(tuple(pt[v] for v in vs)) == 0 for p in polys)


def _bivariate_collapse(G: MPoly, polys, bounds, vs) -> list[dict[str, int]]:
    """Small roots of a single surviving bivariate polynomial, when its box allows."""
    from .smallroots import BivariateProblem, BoundConditionError, solve_bivariate

    used = G.used_vars()
    if len(used) != 2:
        return []
    g2 = G.drop_unused()
    try:
        prob = BivariateProblem(g2, bounds[g2.vars[0]], bounds[g2.vars[1]])
        roots = solve_bivariate(prob)
    except (ValueError, BoundConditionError):
        return []
    out = []
    for a, b in roots:
        partial = {g2.vars[0]: a, g2.vars[1]: b}
        for full in _complete(polys, partial, [*g2.vars, *(v for v in vs if v not in partial)], bounds):
            out.append(full)
    return out


def solve_system(polys: Sequence[MPoly], bounds: Sequence[int], order: Sequence[str] | None = None
                 ) -> SolveOutcome:
    """Common integer roots of three or more trivariate polynomials within bounds.

    Eliminates one variable over all pairs, then a second over all pairs of
    the surviving resultants, and reads roots from nonzero univariates.  All
    elimination orders are tried.  If every path collapses, the single
    surviving bivariate relation (if any) is handed to the bivariate
    small-root solver; that is reported as path "bivariate-collapse".  Every
    returned triple is checked against every input polynomial.
    """
    if len(polys) < 3:
        raise ValueError("need at least three polynomials")
    vs = polys[0].vars
    if len(vs) != 3 or any(p.vars != vs for p in polys):
        raise ValueError("polynomials must share three variables")
    bmap = dict(zip(vs, bounds))
    orders = [tuple(order)] if order else [(c, b, a) for a, b, c in itertools.permutations(vs)]
    # orders are (eliminate-first, eliminate-second, keep); default tries z first
    orders.sort(key=lambda o: (o[0] != vs[2], o))
    collapsed: list[MPoly] = []
    for first, second, keep in orders:
        level1 = _distinct([resultant(a, b, first) for a, b in itertools.combinations(polys, 2)
                            if a.degree(first) + b.degree(first) > 0])
        level1 = [r for r in level1 if r.degree(first) == 0]
        uni = []
        for a, b in itertools.combinations(level1, 2):
            if a.degree(second) + b.degree(second) == 0:
                continue
            try:
                r = resultant(a, b, second)
            except ValueError:
                continue
            if not r.is_zero() and r.used_vars() == (keep,):
                uni.append(r)
        uni += [r for r in level1 if r.used_vars() == (keep,)]
        if uni:
            sols = {}
            for r in uni:
                for c in _roots_in(r, bmap[keep]):
                    for full in _complete([*level1, *polys], {keep: c}, (first, second, keep), bmap):
                        if _verify(polys, full):
                            sols[tuple(full[v] for v in vs)] = True
            return SolveOutcome("solved" if sols else "no-roots", sorted(sols), f"eliminate {first},{second}")
        collapsed.extend(r for r in level1 if len(r.used_vars()) == 2)
    for G in sorted(_distinct(collapsed), key=lambda p: (p.total_degree(), len(p.terms))):
        sols = {tuple(f[v] for v in vs) for f in _bivariate_collapse(G, polys, bmap, vs) if _verify(polys, f)}
        if sols:
            return SolveOutcome("solved", sorted(sols), "bivariate-collapse")
    return SolveOutcome("dependent-polynomials", [], "collapsed")


# -- presets and instances -------------------------------------------------------

def _scaled_power(n: int, coeff: str, expo: str) -> int:
    """floor(coeff * N^expo) computed with enough decimal precision for N."""
    from decimal import Decimal, localcontext

    with localcontext() as ctx:
        ctx.prec = len(str(n)) + 30
        v = Decimal(coeff) * (Decimal(expo) * Decimal(n).ln()).exp()
        return int(v.to_integral_value(rounding="ROUND_FLOOR"))


def preset_parameters(n: int, preset: str = "paper-exact", r_exp: int = 0) -> dict:
    """Algorithm parameters (p0, q0, m0, r0) read with fractional exponents.

    "paper-exact": p0 = 2[.492343 N^.378549] + 1, q0 = 2[.649287 N^.487532] + 1,
    m0 = 2[841.013799 N^2] + 1, r0 = 2^r_exp.
    "scaled": same p0, q0 with m0 = 1682 N^2 + 1 (made odd).
    """
    p0 = 2 * _scaled_power(n, ".492343", ".378549") + 1
    q0 = 2 * _scaled_power(n, ".649287", ".487532") + 1
    if preset == "paper-exact":
        from decimal import Decimal, localcontext
        with localcontext() as ctx:
            ctx.prec = 2 * len(str(n)) + 30
            m0 = 2 * int((Decimal("841.013799") * n * n).to_integral_value(rounding="ROUND_FLOOR")) + 1
    elif preset == "scaled":
        m0 = 1682 * n * n + 1
        m0 += 1 - m0 % 2
    else:
        raise ValueError(f"unknown preset {preset!r}")
    r0 = 1 << r_exp
    while math.gcd(m0, r0) != 1:
        r0 <<= 1
    return {"p0": p0, "q0": q0, "m0": m0, "r0": r0}


def realistic_instance(n: int, preset: str = "paper-exact", tau=0, beta=1, eps=Fraction(1, 100),
                       m: int = 1) -> TrivariateInstance:
    """Instance with the full boxes X = Y = ceil(sqrt N), Z = 3 * ceil(sqrt N)."""
    par = preset_parameters(n, preset)
    s = ceil_sqrt(n)
    return TrivariateInstance(n, par["p0"], par["q0"], par["m0"], par["r0"], s, s, 3 * s,
                              tau, beta, eps, m)


def planted_instance(bits: int, seed: int, offset_bits: int = 6, tau=0, beta=1,
                     eps=Fraction(1, 100), m: int = 1) -> tuple[TrivariateInstance, int, int]:
    """Cooperative instance: p0, q0 within 2^offset_bits of the true factors.

    Returns (instance, p, q).  m0 = 1682 N^2 + 1 as in the scaled preset.
    """
    rng = random.Random(seed)
    sp = gen_balanced_semiprime(bits, 2, seed=rng.randrange(1 << 30))
    n, p, q = sp.n, sp.p, sp.q
    lim = 1 << offset_bits
    x0, y0 = rng.randint(-lim, lim), rng.randint(-lim, lim)
    m0 = 1682 * n * n + 1
    m0 += 1 - m0 % 2
    s = ceil_sqrt(n)
    inst = TrivariateInstance(n, p - x0, q - y0, m0, 1, 2 * lim, 2 * lim, 3 * s, tau, beta, eps, m)
    return inst, p, q


# -- the pipeline ----------------------------------------------------------------

@dataclass
class ExperimentRecord:
    instance: dict
    lattice_dim: int
    norms: list[str]
    diagnostics: dict
    outcome: str
    p: int | None
    q: int | None
    wall_ms: float
    solve_path: str = ""

    def __post_init__(self):
        if self.outcome not in OUTCOMES:
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.outcome == "factors-found":
            if self.p is None or self.q is None or self.p * self.q != int(self.instance["n"]):
                raise AssertionError("factors-found without verified factors")

    def to_json(self) -> str:
        ins = self.instance
        obj = {
            "n": ins["n"], "p0": ins["p0"], "q0": ins["q0"], "m0": ins["m0"], "r0": ins["r0"],
            "tau": ins["tau"], "beta": ins["beta"], "eps": ins["eps"],
            "lattice_dim": self.lattice_dim, "norms": self.norms, "outcome": self.outcome,
            "p": None if self.p is None else str(self.p),
            "q": None if self.q is None else str(self.q),
            "wall_ms": round(self.wall_ms, 3),
            "X": ins["X"], "Y": ins["Y"], "Z": ins["Z"], "m": ins["m"],
            "solve_path": self.solve_path, "diagnostics": self.diagnostics,
        }
        return json.dumps(obj, sort_keys=False)


def _certificates(f1: MPoly | None, f2: MPoly | None, f3: MPoly) -> dict:
    out = {}
    for name, f in (("f1", f1), ("f2", f2)):
        if f is not None:
            out[f"{name}_not_multiple_of_f3"] = not_multiple_certificate(f, f3)
    return out


def run_algorithm_one(inst: TrivariateInstance, use_f3: bool = True) -> ExperimentRecord:
    """Build f0, reduce, diagnose, solve, and return a complete record.

    Never raises for mathematical failure; the outcome field says what
    happened.  Factors are reported only after p * q == N is checked.
    """
    t0 = time.perf_counter()
    n = inst.n
    scal = inst.scalars()

    def record(outcome, dim=0, nrm=(), diag=None, p=None, q=None, path=""):
        return ExperimentRecord(scal, dim, [str(v) for v in nrm], diag or {}, outcome, p, q,
                                (time.perf_counter() - t0) * 1000, path)

    if not parameter_feasibility(inst.beta, inst.tau, inst.eps):
        return record("bound-infeasible")
    try:
        f1, f2, rep = ejm_reduce(inst)
    except BoundInfeasible:
        return record("bound-infeasible")
    if f1 is None or f2 is None:
        return record("no-short-vectors", rep.dim, rep.norms_squared)
    polys = [inst.f0, f1, f2]
    diag = independence_diagnostics(polys)
    ddict = diag.as_dict()
    if use_f3:
        m1, r1 = second_pair(inst.m0, inst.r0)
        f3 = build_f0(n, inst.p0, inst.q0, m1, r1)
        ddict["certificates"] = _certificates(f1, f2, f3)
        polys.append(f3)
    sol = solve_system(polys, (inst.X, inst.Y, inst.Z))
    for x0, y0, z0 in sol.roots:
        p, q = inst.p0 + x0, inst.q0 + y0
        if p > 1 and q > 1 and p * q == n and z0 == p + q:
            return record("factors-found", rep.dim, rep.norms_squared, ddict, min(p, q), max(p, q),
                          sol.path)
    outcome = "dependent-polynomials" if sol.status == "dependent-polynomials" else "no-short-vectors"
    return record(outcome, rep.dim, rep.norms_squared, ddict, path=sol.path or sol.status)
