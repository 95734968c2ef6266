"""Independent sympy computations used as test oracles."""

from fractions import Fraction as F
import math
from itertools import product

import sympy


def rat(x):
    return sympy.Rational(x.numerator, x.denominator) if isinstance(x, F) else sympy.Rational(x)


def rank_one_matrix(space_vectors, r, n, xi):
    """Matrix of z -> (z (x) xi) modulo A, as rows of the annihilator of A applied to z (x) xi."""
    A = sympy.Matrix([[rat(x) for x in v] for v in space_vectors]) if space_vectors else sympy.zeros(0, r * n)
    ann = A.nullspace() if A.rows else [sympy.eye(r * n)[:, i] for i in range(r * n)]
    rows = []
    for K in ann:
        rows.append([sum(K[a * n + k] * rat(xi[k]) for k in range(n)) for a in range(r)])
    return sympy.Matrix(rows) if rows else sympy.zeros(0, r)


def kernel_of_symbol(space_vectors, r, n, xi):
    """{z : z (x) xi in A}."""
    M = rank_one_matrix(space_vectors, r, n, xi)
    if M.rows == 0:
        return [sympy.eye(r)[:, i] for i in range(r)]
    return M.nullspace()


def rational_characteristic_points(space_vectors, r, n, box=2):
    """Primitive integer covectors in [-box, box]^n with a nonzero rank-one element z (x) xi in A."""
    pts = []
    for xi in product(range(-box, box + 1), repeat=n):
        if not any(xi):
            continue
        first = next(x for x in xi if x)
        if first < 0 or math.gcd(*xi) != 1:
            continue
        if kernel_of_symbol(space_vectors, r, n, xi):
            pts.append(xi)
    return pts


def sympy_rank(vectors):
    if not vectors:
        return 0
    return sympy.Matrix([[rat(x) for x in v] for v in vectors]).rank()
