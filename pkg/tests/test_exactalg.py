from fractions import Fraction as F

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from charspan.errors import InvarianceViolated, ShapeError
from charspan.exactalg import (
    Mat,
    Subspace,
    format_scalar,
    is_nilpotent,
    kernel_basis,
    parse_scalar,
    restrict_endo,
    rref,
    solve,
)

small = st.integers(-3, 3)


def mats(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(Mat)


def square(max_d=4):
    return st.integers(1, max_d).flatmap(
        lambda d: st.lists(st.lists(small, min_size=d, max_size=d), min_size=d, max_size=d)
    ).map(Mat)


# ---------------------------------------------------------------- scalars


def test_scalar_lowest_terms():
    x = parse_scalar("6/-4")
    assert (x.numerator, x.denominator) == (-3, 2)
    assert format_scalar(x) == "-3/2"
    assert format_scalar(F(4, 2)) == "2"


@pytest.mark.parametrize("bad", ["1/0", "", "a", "1.5", "1/2/3"])
def test_malformed_rational(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


# ---------------------------------------------------------------- rref


def test_rref_identity():
    m, piv, rank = rref(Mat.identity(2))
    assert m == Mat.identity(2) and piv == [0, 1] and rank == 2


def test_rref_reduced_input():
    m, piv, rank = rref(Mat([[0, 1], [0, 0]]))
    assert m == Mat([[0, 1], [0, 0]]) and piv == [1] and rank == 1


def test_rref_hand_example():
    m, piv, rank = rref(Mat([[1, 2], [2, 4]]))
    assert m == Mat([[1, 2], [0, 0]]) and rank == 1


@given(mats())
def test_rref_matches_sympy(m):
    ours, piv, rank = rref(m)
    theirs, spiv = sympy.Matrix(m.rows).rref()
    assert [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in ours.rows] == theirs.tolist()
    assert tuple(piv) == spiv and rank == len(spiv)


@given(mats())
def test_rref_idempotent(m):
    once = rref(m)
    twice = rref(once[0])
    assert once == twice


# ---------------------------------------------------------------- kernel


def test_kernel_identity():
    assert kernel_basis(Mat.identity(3)).is_zero()


def test_kernel_zero_matrix():
    assert kernel_basis(Mat.zeros(2, 2)) == Subspace.full(2)


def test_kernel_hand_example():
    assert kernel_basis(Mat([[1, 2], [2, 4]])) == Subspace([[-2, 1]], 2)


@given(mats())
def test_kernel_vectors_annihilated(m):
    k = kernel_basis(m)
    assert k.dim == m.ncols - m.rank()
    for v in k.vectors:
        assert all(x == 0 for x in m.apply(v))


@given(mats(), st.lists(small, min_size=4, max_size=4))
def test_solve(m, b):
    b = b[: m.nrows] + [0] * (m.nrows - len(b))
    x = solve(m, b)
    consistent = Mat.hstack(m, Mat([[v] for v in b])).rank() == m.rank()
    assert (x is not None) == consistent
    if x is not None:
        assert list(m.apply(x)) == [F(v) for v in b]


# ---------------------------------------------------------------- nilpotency


def test_nilpotent_examples():
    assert is_nilpotent(Mat([[0, 1], [0, 0]]))
    assert not is_nilpotent(Mat.identity(2))
    assert is_nilpotent(Mat([[1, 1], [-1, -1]]))


def test_nilpotent_rejects_non_square():
    with pytest.raises(ShapeError):
        is_nilpotent(Mat([[0, 1, 0], [0, 0, 0]]))


@given(square())
def test_nilpotent_matches_charpoly(m):
    lam = sympy.Symbol("lam")
    cp = sympy.Matrix(m.rows).charpoly(lam).as_expr()
    assert is_nilpotent(m) == (sympy.expand(cp - lam ** m.nrows) == 0)


@given(st.integers(1, 4), st.lists(small, min_size=16, max_size=16))
def test_strict_upper_is_nilpotent(d, vals):
    m = Mat([[vals[i * 4 + j] if j > i else 0 for j in range(d)] for i in range(d)])
    assert is_nilpotent(m)


# ---------------------------------------------------------------- restriction


def test_restrict_full_space_is_identity_map():
    m = Mat([[1, 2], [3, 4]])
    assert restrict_endo(m, Subspace.full(2)) == m


def test_restrict_nilpotent_to_line():
    assert restrict_endo(Mat([[0, 1], [0, 0]]), Subspace([[1, 0]], 2)) == Mat([[0]])


def test_restrict_identity_to_line():
    assert restrict_endo(Mat.identity(3), Subspace([[1, 2, 3]], 3)) == Mat([[1]])


def test_restrict_not_invariant():
    with pytest.raises(InvarianceViolated):
        restrict_endo(Mat([[0, 1], [0, 0]]), Subspace([[0, 1]], 2))


# ---------------------------------------------------------------- subspaces


@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=4), st.randoms(use_true_random=False))
def test_subspace_canonical(vecs, rnd):
    a = Subspace(vecs, 4)
    shuffled = list(vecs)
    rnd.shuffle(shuffled)
    scaled = [[2 * x for x in v] for v in shuffled]
    assert a == Subspace(scaled, 4)
    assert a.basis == Subspace(scaled, 4).basis


@given(st.lists(st.lists(small, min_size=3, max_size=3), max_size=3),
       st.lists(st.lists(small, min_size=3, max_size=3), max_size=3))
def test_subspace_lattice(u, v):
    a, b = Subspace(u, 3), Subspace(v, 3)
    assert a.join(b).dim + a.intersect(b).dim == a.dim + b.dim
    assert a <= a.join(b) and a.intersect(b) <= a
    assert a.annihilator().annihilator() == a
    assert a.annihilator().dim == 3 - a.dim


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(small, min_size=3, max_size=3), max_size=3))
def test_image_preimage(rows, vecs):
    m = Mat(rows)
    s = Subspace(vecs, 3)
    assert s.image(m) <= Subspace.full(3)
    assert s <= s.image(m).preimage(m)


def test_matrix_inverse():
    m = Mat([[2, 1], [1, 1]])
    assert m @ m.inverse() == Mat.identity(2)
    with pytest.raises(ZeroDivisionError):
        Mat([[1, 2], [2, 4]]).inverse()
