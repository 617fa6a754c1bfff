"""Command-line entry point ``factlab``.

Exit codes: 0 success, 1 a reported failure outcome (search exhausted, no
root found), 2 usage or domain error.  Big integers are read and written as
decimal strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import census as census_mod
from . import fermat, smallroots, trivariate
from .arith import GenerationError, gen_balanced_semiprime, iroot_floor, parse_rational
from .lattice import Basis, RankError, lll_reduce, minkowski_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _bigint(text: str) -> int:
    t = text.strip()
    if not t.lstrip("-").isdigit():
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")
    return int(t)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _seed(args) -> int:
    env = os.environ.get("FACTLAB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"FACTLAB_SEED is not an integer: {env!r}")
    return args.seed


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_line(obj) -> str:
    return json.dumps(obj) + "\n"


def _params(args, skip=("func", "out", "format")) -> dict:
    out = {}
    for k, v in vars(args).items():
        if k in skip or v is None:
            continue
        out[k] = str(v) if isinstance(v, (int, Fraction)) and not isinstance(v, bool) else v
    return out


# -- factor ----------------------------------------------------------------------

def cmd_factor(args) -> int:
    n, m = args.n, args.method
    res = None
    try:
        if m == "fermat":
            r = fermat.fermat_factor(n, args.max_steps)
            res = None if r is None or r.trivial else r.as_dict()
        elif m == "triangular":
            r = fermat.triangular_fermat(n, args.max_steps)
            res = None if r is None or r.trivial else r.as_dict()
        elif m == "shifted":
            if args.gamma is None:
                raise UsageError("--gamma is required for --method shifted")
            r = fermat.shifted_fermat(n, args.gamma, args.max_steps)
            res = None if r is None or r.trivial else r.as_dict()
        elif m == "lowbits":
            if args.plow is None or args.t is None:
                raise UsageError("--plow and --t are required for --method lowbits")
            try:
                res = smallroots.factor_known_low_bits(n, args.plow, args.t).as_dict()
            except smallroots.FactoringFailure:
                res = None
        elif m == "shifted-center":
            if args.alpha is None or args.beta is None:
                raise UsageError("--alpha and --beta are required for --method shifted-center")
            bound = args.bound if args.bound is not None else iroot_floor(n, 4)
            try:
                res = smallroots.factor_shifted_center(n, args.alpha, args.beta, bound, bound).as_dict()
            except smallroots.FactoringFailure:
                res = None
    except smallroots.BoundConditionError as exc:
        raise UsageError(str(exc))
    except ValueError as exc:
        raise UsageError(str(exc))
    params = _params(args)
    if res is None:
        _emit(args, _json_line({"status": "failure", "method": m, "n": str(n), "params": params}))
        return EXIT_FAIL
    p, q = int(res["p"]), int(res["q"])
    if p * q != n or p <= 1 or q <= 1:  # never print unverified factors
        _emit(args, _json_line({"status": "failure", "method": m, "n": str(n), "params": params,
                                "error": "verification failed"}))
        return EXIT_FAIL
    res.update(status="ok", method=m, params=params)
    if args.format == "text":
        _emit(args, f"{n} = {p} * {q}\n")
    else:
        _emit(args, _json_line(res))
    return EXIT_OK


# -- gen -------------------------------------------------------------------------

def cmd_gen(args) -> int:
    seed = _seed(args)
    try:
        sp = gen_balanced_semiprime(args.bits, args.ratio, seed=seed)
    except GenerationError as exc:
        _emit(args, _json_line({"status": "failure", "error": str(exc)}))
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc))
    obj = {"n": str(sp.n), "p": str(sp.p), "q": str(sp.q), "bits": sp.bits,
           "ratio": str(args.ratio), "seed": seed}
    if args.format == "text":
        _emit(args, f"{sp.n}\n")
    elif args.format == "csv":
        _emit(args, "n,p,q,bits,ratio,seed\n" + ",".join(str(obj[k]) for k in
                                                         ("n", "p", "q", "bits", "ratio", "seed")) + "\n")
    else:
        _emit(args, _json_line(obj))
    return EXIT_OK


# -- census ----------------------------------------------------------------------

def cmd_census(args) -> int:
    try:
        row = census_mod.count_balanced(args.x, args.ratio)
    except census_mod.ResourceError as exc:
        _emit(args, _json_line({"status": "failure", "error": str(exc)}))
        return EXIT_FAIL
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "csv":
        _emit(args, census_mod.rows_to_csv([row]))
    else:
        _emit(args, _json_line({"x": str(row.x), "c": str(row.c), "count": row.exact_count,
                                "model": row.model, "ratio": row.ratio}))
    return EXIT_OK


# -- lll -------------------------------------------------------------------------

def cmd_lll(args) -> int:
    try:
        with open(args.inp) as fh:
            basis = Basis.from_text(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.inp}: {exc}")
    except (ValueError, RankError) as exc:
        raise UsageError(f"bad basis file: {exc}")
    try:
        reduced, rep = lll_reduce(basis, args.delta)
    except ValueError as exc:
        raise UsageError(str(exc))
    report = rep.as_dict()
    report["minkowski_ok"] = minkowski_check(reduced)
    report["delta"] = str(args.delta)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(reduced.to_text())
        sys.stdout.write(_json_line(report))
    else:
        report["basis"] = [[str(v) for v in row] for row in reduced.rows]
        sys.stdout.write(_json_line(report))
    return EXIT_OK


# -- experiment ------------------------------------------------------------------

def _trial(job: tuple) -> str:
    bits, seed, preset, tau, beta, eps, m = job
    if preset == "planted":
        inst, _, _ = trivariate.planted_instance(bits, seed, tau=tau, beta=beta, eps=eps, m=m)
    else:
        sp = gen_balanced_semiprime(bits, 2, seed=seed)
        inst = trivariate.realistic_instance(sp.n, preset, tau, beta, eps, m)
    return trivariate.run_algorithm_one(inst).to_json()


def cmd_experiment(args) -> int:
    if args.kind != "trivariate":
        raise UsageError(f"unknown experiment {args.kind!r}")
    seed = _seed(args)
    jobs = [(args.bits, seed + i, args.preset, args.tau, args.beta, args.eps, args.m)
            for i in range(args.trials)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            lines = list(pool.map(_trial, jobs))
    else:
        lines = [_trial(j) for j in jobs]
    text = "".join(line + "\n" for line in lines)
    _emit(args, text)
    return EXIT_OK


# -- bench -----------------------------------------------------------------------

def cmd_bench(args) -> int:
    seed = _seed(args)
    out = []
    for i in range(args.trials):
        sp = gen_balanced_semiprime(args.bits, args.ratio, seed=seed + i)
        row = {"n": str(sp.n), "seed": seed + i}
        for name, fn in (("fermat", lambda: fermat.fermat_factor(sp.n, args.max_steps)),
                         ("triangular", lambda: fermat.triangular_fermat(sp.n, args.max_steps))):
            t0 = time.perf_counter()
            r = fn()
            row[name] = {"found": r is not None and not r.trivial,
                         "steps": None if r is None else r.steps,
                         "wall_ms": round((time.perf_counter() - t0) * 1000, 3)}
        t = -(-sp.n.bit_length() * 2 // 5)
        t0 = time.perf_counter()
        try:
            smallroots.factor_known_low_bits(sp.n, sp.p % (1 << t), t)
            ok = True
        except smallroots.FactoringFailure:
            ok = False
        row["lowbits"] = {"t": t, "found": ok, "wall_ms": round((time.perf_counter() - t0) * 1000, 3)}
        out.append(json.dumps(row))
    _emit(args, "".join(line + "\n" for line in out))
    return EXIT_OK


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="factlab", description="integer factorization experiments")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt=("json", "text")):
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=fmt, default=fmt[0])

    f = sub.add_parser("factor", help="factor N with one method")
    f.add_argument("--method", required=True,
                   choices=["fermat", "triangular", "shifted", "lowbits", "shifted-center"])
    f.add_argument("--n", required=True, type=_bigint)
    f.add_argument("--gamma", type=_rational)
    f.add_argument("--alpha", type=_rational)
    f.add_argument("--beta", type=_rational)
    f.add_argument("--plow", type=_bigint)
    f.add_argument("--t", type=int)
    f.add_argument("--bound", type=_bigint, help="offset bound for shifted-center (default N^(1/4))")
    f.add_argument("--max-steps", type=int)
    common(f)
    f.set_defaults(func=cmd_factor)

    g = sub.add_parser("gen", help="generate a balanced semiprime")
    g.add_argument("--bits", required=True, type=int)
    g.add_argument("--ratio", type=_rational, default=Fraction(2))
    g.add_argument("--seed", type=int, default=0)
    common(g, ("json", "csv", "text"))
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("census", help="count balanced semiprimes up to x")
    c.add_argument("--x", required=True, type=_bigint)
    c.add_argument("--ratio", type=_rational, default=Fraction(2))
    common(c, ("json", "csv"))
    c.set_defaults(func=cmd_census)

    lp = sub.add_parser("lll", help="LLL-reduce a basis file")
    lp.add_argument("--in", dest="inp", required=True)
    lp.add_argument("--delta", type=_rational, default=Fraction(3, 4))
    lp.add_argument("--out")
    lp.set_defaults(func=cmd_lll)

    e = sub.add_parser("experiment", help="run an experiment harness")
    e.add_argument("kind", choices=["trivariate"])
    e.add_argument("--bits", required=True, type=int)
    e.add_argument("--trials", required=True, type=int)
    e.add_argument("--tau", type=_rational, default=Fraction(0))
    e.add_argument("--beta", type=_rational, default=Fraction(1))
    e.add_argument("--eps", type=_rational, default=Fraction(1, 100))
    e.add_argument("--m", type=int, default=1, help="base shift depth of the lattice")
    e.add_argument("--preset", choices=["paper-exact", "scaled", "planted"], default="paper-exact")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_experiment)

    b = sub.add_parser("bench", help="compare methods on generated semiprimes")
    b.add_argument("--bits", type=int, default=40)
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--ratio", type=_rational, default=Fraction(2))
    b.add_argument("--max-steps", type=int, default=100000)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"factlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
