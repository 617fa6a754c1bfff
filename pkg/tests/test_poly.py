import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from helpers import to_sympy
from factlab.poly import (MPoly, det_bareiss, height, integer_roots_univariate, is_bilinear,
                          is_irreducible, norms, not_multiple_certificate, resultant)

x, y, z = MPoly.gens("x", "y", "z")


def rand_poly(rng, vars, deg, terms=5, coef=50):
    t = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, deg) for _ in vars)
        t[e] = rng.randint(-coef, coef)
    return MPoly(vars, t)


def test_arith_and_eval():
    f = (x + 2 * y) * (x - z) + 3
    assert f.evaluate((1, 2, 3)) == (1 + 4) * (1 - 3) + 3
    assert (f - f).is_zero()
    assert (x ** 2 - y ** 2) == (x - y) * (x + y)
    with pytest.raises(ValueError):
        f.evaluate((1, 2))


def test_repr_and_text_roundtrip():
    X, Y = MPoly.gens("X", "Y")
    assert repr(X * Y - 12345) == "X*Y - 12345"
    f = 3 * x ** 2 * y - 7 * z + 11
    assert MPoly.from_text(f.to_text()) == f


def test_norms_and_height():
    f = MPoly(("x", "y"), {(1, 1): 1, (1, 0): -3, (0, 0): 4})
    assert norms(f) == (1 + 9 + 16, 4)
    assert height(f, (10, 5)) == 50
    assert height(f, {"x": 2, "y": 1}) == 6
    with pytest.raises(ValueError):
        height(f, (0, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_resultant_against_sympy(seed):
    rng = random.Random(seed)
    f = rand_poly(rng, ("x", "y"), 3)
    g = rand_poly(rng, ("x", "y"), 3)
    if f.degree("y") < 1 or g.degree("y") < 1:
        return
    ours = resultant(f, g, "y")
    X, Y = sympy.symbols("x y")
    ref = sympy.resultant(to_sympy(f), to_sympy(g), Y)
    # the g-first Sylvester layout differs from the f-first one by (-1)^(deg f * deg g)
    sign = (-1) ** (f.degree("y") * g.degree("y"))
    assert sympy.expand(to_sympy(ours) - sign * ref) == 0


def test_resultant_examples():
    X, Y, zz = MPoly.gens("X", "Y", "z")
    N = 1000003
    u0 = X + Y - zz
    u1 = X ** 2 - zz * X + N
    u3 = X ** 4 - (zz ** 2 - 2 * N) * X ** 2 + N ** 2
    u5 = X ** 6 - (zz ** 3 - 3 * N * zz) * X ** 3 + N ** 3
    assert resultant(u0, u1, "z") == -X * Y + N
    assert resultant(u0, u3, "z") == -2 * X ** 3 * Y + (2 * N - Y ** 2) * X ** 2 + N ** 2
    assert resultant(u0, u5, "z") == (-3 * X ** 5 * Y + (3 * N - 3 * Y ** 2) * X ** 4
                                     + (3 * N * Y - Y ** 3) * X ** 3 + N ** 3)
    a, = MPoly.gens("a")
    assert resultant(a - 1, a + 1, "a") == -2
    # shared factor -> zero resultant
    assert resultant((x - y) * (x + 1), (x - y) * (x + 2), "x").is_zero()


def test_exact_div_translate_subs():
    f = (x + y + 1) * (x - 2 * z)
    assert f.exact_div(x + y + 1) == x - 2 * z
    with pytest.raises(ValueError):
        f.exact_div(x + 5)
    g = x ** 2 + y
    assert g.translate({"x": 3}) == (x + 3) ** 2 + y
    s = g.subs({"x": 2})
    assert s.vars == ("y", "z") and s.evaluate((5, 0)) == 9


def test_det_bareiss():
    m = [[MPoly.const(v) for v in row] for row in [[2, 0, 1], [1, 3, 2], [1, 1, 1]]]
    assert det_bareiss(m) == int(sympy.Matrix([[2, 0, 1], [1, 3, 2], [1, 1, 1]]).det())


def test_irreducibility():
    X, Y = MPoly.gens("x", "y")
    assert is_bilinear(X * Y - 3 * X - 5 * Y + 7)
    assert is_irreducible(X * Y - 3 * X - 5 * Y + 7)
    assert not is_irreducible((X + 1) * (Y - 2))       # a*e == b*c
    assert not is_irreducible(2 * X * Y + 4 * X + 6)   # content 2
    assert not is_irreducible(MPoly.const(5, ("x", "y")))


def test_not_multiple_certificate():
    f = 10 ** 40 * x + 1 + y
    g = x + y + z + 1
    assert not_multiple_certificate(g, f)
    assert not not_multiple_certificate(f * 1, f)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-500, 500), min_size=1, max_size=5), st.integers(1, 5))
def test_integer_roots_property(roots, lead):
    t, = MPoly.gens("t")
    f = MPoly.const(lead, ("t",))
    for r in roots:
        f = f * (t - r)
    f = f * (2 * t - 1)  # a rational non-integer root
    assert integer_roots_univariate(f, 1000) == sorted(set(roots))
    assert integer_roots_univariate(f, 10) == sorted({r for r in roots if abs(r) <= 10})


def test_integer_roots_examples():
    t, = MPoly.gens("t")
    assert integer_roots_univariate((t - 2) * (t - 3), 10) == [2, 3]
    assert integer_roots_univariate(t ** 2 + 1, 100) == []
    assert integer_roots_univariate((t - 3) ** 2 * (t + 7) ** 3 * (2 * t - 1), 100) == [-7, 3]
    with pytest.raises(ValueError):
        integer_roots_univariate(MPoly(("t",)), 5)
