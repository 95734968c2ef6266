from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from charspan.errors import GeneratorCapExceeded, NonHomogeneous, NotZeroDimensional, VariableMismatch
from charspan.exactalg import Subspace
from charspan.multipoly import (
    GREVLEX,
    LEX,
    Ideal,
    Poly,
    buchberger,
    eliminate,
    ideal_dimension,
    intersect,
    linear_part,
    minimal_polynomial,
    normal_form,
    radical_membership,
    saturate,
    saturate_irrelevant,
    squarefree_part,
    variables,
    zero_dim_radical,
)

X = sympy.symbols("x1:5")


def to_sympy(p: Poly):
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[X[i] ** e for i, e in enumerate(m)])
         for m, c in p.terms.items()),
        sympy.Integer(0),
    )


def from_sympy(expr, n: int) -> Poly:
    sp = sympy.Poly(expr, *X[:n])
    return Poly({m: F(int(c.p), int(c.q)) for m, c in sp.terms()}, n)


def sympy_reduced_gb(gens, n, order):
    if not gens:
        return set()
    g = sympy.groebner([to_sympy(p) for p in gens], *X[:n], order=order)
    return {from_sympy(e, n).monic(GREVLEX if order == "grevlex" else LEX) for e in g.exprs}


def polys(n=3, max_terms=3, max_deg=2):
    mono = st.tuples(*[st.integers(0, max_deg)] * n)
    coeff = st.integers(-3, 3).filter(bool)
    return st.dictionaries(mono, coeff, min_size=1, max_size=max_terms).map(lambda d: Poly(d, n))


def homogeneous_polys(n=3, deg=2, max_terms=3):
    monos = [m for m in _monos(n, deg)]
    return st.dictionaries(st.sampled_from(monos), st.integers(-3, 3).filter(bool),
                           min_size=1, max_size=max_terms).map(lambda d: Poly(d, n))


def _monos(n, deg):
    if n == 1:
        return [(deg,)]
    return [(e,) + rest for e in range(deg + 1) for rest in _monos(n - 1, deg - e)]


x, y = variables(2)


# ---------------------------------------------------------------- polynomial basics


def test_poly_print():
    x1, x2, x3 = variables(3)
    p = (x1 ** 2 * x3).scale(F(3, 2)) - x2
    assert p.to_str() == "3/2*x1^2*x3 - x2"


def test_poly_arith():
    assert (x + y) * (x - y) == x ** 2 - y ** 2
    assert (x + 1).evaluate([2, 5]) == 3
    assert not (x - x)
    assert (x * y).is_homogeneous() and not (x + 1).is_homogeneous()


def test_substitute():
    p = x * y + y
    assert p.substitute([y, x]) == x * y + x


# ---------------------------------------------------------------- normal form and Buchberger


def test_normal_form_examples():
    gx = buchberger([x], GREVLEX)
    assert normal_form(x ** 2, gx).is_zero()
    assert normal_form(y, gx) == y
    g = buchberger([x - y], LEX)
    assert normal_form(x * y + y ** 2, g) == (y ** 2).scale(2)


def test_normal_form_mismatch():
    with pytest.raises(VariableMismatch):
        normal_form(Poly.var(0, 3), buchberger([x], GREVLEX))


def test_buchberger_examples():
    assert buchberger([x], GREVLEX).gb == (x,)
    assert set(buchberger([x ** 2, x * y], GREVLEX).gb) == {x ** 2, x * y}
    g = buchberger([x - y, y ** 2], LEX)
    assert set(g.gb) == {x - y, y ** 2}
    assert normal_form(x ** 2, g).is_zero()


def test_empty_ideal():
    assert buchberger([], GREVLEX, nvars=2).gb == ()


def test_generator_cap():
    x1, x2, x3 = variables(3)
    gens = [x1 * x2 - x3, x2 * x3 - x1, x1 * x3 - x2]
    assert len(buchberger(gens, GREVLEX).gb) > 3
    with pytest.raises(GeneratorCapExceeded):
        buchberger(gens, GREVLEX, cap=3)


@given(st.lists(polys(), min_size=1, max_size=3))
def test_gb_matches_sympy_grevlex(gens):
    ours = set(buchberger(gens, GREVLEX).gb)
    assert ours == sympy_reduced_gb(gens, 3, "grevlex")


@given(st.lists(polys(n=2, max_deg=3), min_size=1, max_size=3))
def test_gb_matches_sympy_lex(gens):
    ours = set(buchberger(gens, LEX).gb)
    assert ours == sympy_reduced_gb(gens, 2, "lex")


@given(st.lists(polys(), min_size=1, max_size=3), st.randoms(use_true_random=False))
def test_gb_order_canonical(gens, rnd):
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert buchberger(gens, GREVLEX).gb == buchberger(shuffled, GREVLEX).gb


@given(st.lists(polys(), min_size=1, max_size=3), polys(), polys())
def test_remainder_difference_in_ideal(gens, f, cofactor):
    g = buchberger(gens, GREVLEX)
    member = gens[0] * cofactor
    assert normal_form(member, g).is_zero()
    r = normal_form(f, g)
    assert normal_form(f - r, g).is_zero()
    assert normal_form(f + member, g) == r


# ---------------------------------------------------------------- elimination and saturation


def test_eliminate_examples():
    t, x1 = variables(2)
    assert eliminate(Ideal([t * x1 - 1, x1], 2), [1]).is_unit()
    assert eliminate(Ideal([x - y], 2), [0, 1]) == Ideal([x - y], 2)
    assert eliminate(Ideal([x], 2), [1]).is_zero() or eliminate(Ideal([x], 2), [1]).groebner().gb == ()


def test_eliminate_matches_lex_sympy():
    x1, x2, x3 = variables(3)
    i = Ideal([x1 - x2 ** 2, x3 - x2 ** 3], 3)
    e = eliminate(i, [0, 2])
    assert e == Ideal([x1 ** 3 - x3 ** 2], 3)


def test_saturate_examples():
    x1, x2 = variables(2)
    assert saturate(Ideal([x2 ** 2], 2), x2).is_unit()
    assert saturate(Ideal([x2 ** 2], 2), x1) == Ideal([x2 ** 2], 2)
    assert saturate(Ideal([x1 * x2], 2), x1) == Ideal([x2], 2)


@given(st.lists(homogeneous_polys(), min_size=1, max_size=2), st.integers(0, 2))
def test_saturate_contains_and_idempotent(gens, k):
    i = Ideal(gens, 3)
    f = Poly.var(k, 3)
    s = saturate(i, f)
    assert all(s.contains(g) for g in gens)
    assert saturate(s, f) == s


def test_intersect():
    x1, x2 = variables(2)
    assert intersect(Ideal([x1], 2), Ideal([x2], 2)) == Ideal([x1 * x2], 2)


def test_saturate_irrelevant_examples():
    x1, x2 = variables(2)
    assert saturate_irrelevant(Ideal([x2 ** 2], 2)) == Ideal([x2 ** 2], 2)
    assert saturate_irrelevant(Ideal([x1 * x2, x1 ** 2], 2)) == Ideal([x1], 2)
    assert saturate_irrelevant(Ideal([], 2)).groebner().gb == ()


def test_saturate_irrelevant_rejects_inhomogeneous():
    with pytest.raises(NonHomogeneous):
        saturate_irrelevant(Ideal([x + 1], 2))


# ---------------------------------------------------------------- linear part, dimension, radicals


def test_linear_part_examples():
    x1, x2, x3 = variables(3)
    assert linear_part(Ideal([x2], 3)) == Subspace([[0, 1, 0]], 3)
    assert linear_part(Ideal([x2 ** 2], 3)).is_zero()
    assert linear_part(Ideal([x1 + x2, x3 ** 2], 3)) == Subspace([[1, 1, 0]], 3)


@given(st.lists(homogeneous_polys(), min_size=1, max_size=2))
def test_linear_part_chain(gens):
    i = Ideal(gens, 3)
    assert linear_part(i) <= linear_part(saturate_irrelevant(i))


def test_dimension_examples():
    x1, x2 = variables(2)
    assert ideal_dimension(Ideal([x2 ** 2], 2)) == 1
    assert ideal_dimension(Ideal([], 4)) == 4
    assert ideal_dimension(Ideal([Poly.const(1, 2)], 2)) == -1


@given(st.lists(homogeneous_polys(), min_size=1, max_size=3))
def test_dimension_monotone(gens):
    dims = [ideal_dimension(Ideal(gens[:k], 3)) for k in range(len(gens) + 1)]
    assert all(a >= b for a, b in zip(dims, dims[1:]))


def test_radical_membership_examples():
    x1, x2 = variables(2)
    i = Ideal([x2 ** 2], 2)
    assert radical_membership(x2, i)
    assert not radical_membership(x1, i)
    assert radical_membership(Poly.zero(2), i)


@given(st.lists(polys(), min_size=1, max_size=2), polys())
def test_radical_membership_sound(gens, f):
    i = Ideal(gens, 3)
    g = i.groebner()
    powers_in = any(normal_form(f ** k, g).is_zero() for k in range(1, 4))
    if powers_in:
        assert radical_membership(f, i)


def test_zero_dim_radical_examples():
    (t,) = variables(1)
    assert zero_dim_radical(Ideal([t ** 2], 1)) == Ideal([t], 1)
    assert zero_dim_radical(Ideal([t ** 2 - 1], 1)) == Ideal([t ** 2 - 1], 1)
    assert zero_dim_radical(Ideal([(x - 1) ** 2, y], 2)) == Ideal([x - 1, y], 2)


def test_zero_dim_radical_rejects_curves():
    with pytest.raises(NotZeroDimensional):
        zero_dim_radical(Ideal([x * y], 2))


def test_minimal_polynomial_and_squarefree():
    i = Ideal([x ** 2 - 2, y - x], 2)
    assert minimal_polynomial(i, 1) == [F(-2), F(0), F(1)]
    assert squarefree_part([F(1), F(-2), F(1)]) == [F(-1), F(1)]


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=3),
       st.integers(1, 3))
def test_zero_dim_radical_of_point_set(points, mult):
    # ideal of the point set raised to a power; its radical is the vanishing ideal again
    pts = sorted(set(points))
    ideal_pts = [sympy.Poly(e, X[0], X[1]).as_expr()
                 for e in sympy.groebner(_vanishing(pts), X[0], X[1], order="grevlex").exprs]
    base = [from_sympy(e, 2) for e in ideal_pts]
    powered = [a * b for a in base for b in base] if mult > 1 else base
    rad = zero_dim_radical(Ideal(powered, 2))
    assert rad == Ideal(base, 2)


def _vanishing(pts):
    gens = None
    for a, b in pts:
        pt = [X[0] - a, X[1] - b]
        gens = pt if gens is None else [f * g for f in gens for g in pt]
    return gens
