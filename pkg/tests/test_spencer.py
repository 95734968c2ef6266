import random
from math import comb

import pytest
import sympy

from charspan.elemred import _restrict_a_slot
from charspan.exactalg import Mat, Subspace
from charspan.fixtures import (
    FIXTURES,
    INVOLUTIVE_FIXTURES,
    crossed,
    full_tableau,
    heat_1d,
    random_broken,
    random_involutive,
    zero_tableau,
)
from charspan.charvar import variety_span
from charspan.spencer import (
    SpencerComplex,
    base_prolonged,
    cartan_test,
    delta_x_kernel,
    is_symmetric,
    prolong,
    prolongations,
    spencer_h_dims,
)
from charspan.tableau import from_generators, is_involutive_gnf, restrict

from .oracles import rat


def sympy_dim_first_prolongation(t):
    """Independent count: Q in W (x) V* (x) V*, symmetric, every slice Q(., ., m) in A."""
    r, n = t.r, t.n
    A = t.subspace()
    ann = A.annihilator().vectors
    nunk = r * n * n
    idx = lambda a, k, m: (a * n + k) * n + m  # noqa: E731
    rows = []
    for a in range(r):
        for k in range(n):
            for m in range(k + 1, n):
                row = [0] * nunk
                row[idx(a, k, m)] += 1
                row[idx(a, m, k)] -= 1
                rows.append(row)
    for K in ann:
        for m in range(n):
            row = [0] * nunk
            for a in range(r):
                for k in range(n):
                    row[idx(a, k, m)] += rat(K[a * n + k])
            rows.append(row)
    if not rows:
        return nunk
    return nunk - sympy.Matrix(rows).rank()


# ---------------------------------------------------------------- prolongation


def test_full_tableau_prolongation():
    for n, r in [(2, 1), (3, 2)]:
        p = prolong(base_prolonged(full_tableau(n, r)))
        assert p.dim == r * n * (n + 1) // 2


def test_heat_prolongation_dim():
    assert prolong(base_prolonged(heat_1d())).dim == 2


def test_zero_tableau_prolongations():
    assert all(p.dim == 0 for p in prolongations(zero_tableau(3, 2), 2))


def test_rho_zero_is_base():
    t = heat_1d()
    assert base_prolonged(t).space == t.subspace()


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_prolongation_matches_sympy(name):
    t = FIXTURES[name]()
    assert prolong(base_prolonged(t)).dim == sympy_dim_first_prolongation(t)


@pytest.mark.parametrize("name", ["heat1d", "heat2d", "crossed"])
def test_prolongations_fully_symmetric(name):
    t = FIXTURES[name]()
    for p in prolongations(t, 2):
        for v in p.space.vectors:
            assert is_symmetric(v, t.r, t.n, p.rho + 1)


# ---------------------------------------------------------------- Cartan's test


def test_cartan_examples():
    assert cartan_test(heat_1d()) == (True, 2, 2)
    assert cartan_test(FIXTURES["heat2d"]()) == (True, 7, 7)
    assert cartan_test(full_tableau(2, 1)) == (True, 3, 3)


def test_cartan_crossed():
    ok, dim1, bound = cartan_test(crossed())
    assert not ok and dim1 < bound


# ---------------------------------------------------------------- Spencer cohomology


def test_spencer_examples():
    assert spencer_h_dims(heat_1d()).dims_H[2] == 0
    z = spencer_h_dims(zero_tableau(2, 2))
    assert all(v == 0 for v in z.dims_H.values()) and z.involutive
    assert spencer_h_dims(crossed()).dims_H[2] != 0


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_delta_squared_zero(name):
    t = FIXTURES[name]()
    cx = SpencerComplex(t, 2)
    for p in range(1, 3):
        for q in range(0, t.n - 1):
            assert (cx.delta(p - 1, q + 1) @ cx.delta(p, q)).rank() == 0


@pytest.mark.parametrize("name", ["heat1d", "heat2d", "crossed", "heat1d-cauchy"])
def test_euler_characteristic(name):
    # along each row A^(p) -> A^(p-1) (x) V* -> ... the alternating sums of chains and of cohomology agree
    t = FIXTURES[name]()
    n = t.n
    cx = SpencerComplex(t, 3)
    for total in range(1, 4):
        chains = sum((-1) ** q * cx.dim_space(total - q) * comb(n, q) for q in range(0, min(total + 1, n) + 1))
        homology = sum((-1) ** q * cx.cohomology(total - q, q) for q in range(0, min(total + 1, n) + 1))
        assert chains == homology


def test_literal_cokernel_is_not_an_involutivity_test():
    # recorded for the decisions ledger: the sequence-row cokernel is nonzero on involutive inputs
    assert spencer_h_dims(FIXTURES["heat2d"]()).cokernels[2] == 1
    assert spencer_h_dims(zero_tableau(2, 2)).cokernels[2] == 2


def _three_way(t):
    return is_involutive_gnf(t)[0], cartan_test(t)[0], spencer_h_dims(t).involutive


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_three_way_fixtures(name):
    verdicts = _three_way(FIXTURES[name]())
    assert len(set(verdicts)) == 1
    assert verdicts[0] == (name in INVOLUTIVE_FIXTURES)


@pytest.mark.parametrize("seed", range(8))
def test_three_way_random(seed):
    assert _three_way(random_involutive(seed)) == (True, True, True)
    assert _three_way(random_broken(seed)) == (False, False, False)


# ---------------------------------------------------------------- restricted skewing


def test_delta_x_kernel_heat():
    t = heat_1d()
    x = Subspace([[0, 1]], 2)
    E = delta_x_kernel(t, x)
    assert E.dim == 2  # E = A (x) X*, no skew condition on one variable
    assert _restrict_a_slot(E, 2, 2, x, 1).dim == 1  # its image in A|_X (x) X*


def test_delta_x_kernel_full_space():
    t = full_tableau(2, 2)
    E = delta_x_kernel(t, Subspace.full(2))
    assert E.dim == 2 * 3
    assert E == prolong(base_prolonged(t)).space


@pytest.mark.parametrize("name", sorted(INVOLUTIVE_FIXTURES))
def test_delta_x_kernel_full_space_is_prolongation(name):
    t = FIXTURES[name]()
    assert delta_x_kernel(t, Subspace.full(t.n)) == prolong(base_prolonged(t)).space


def test_delta_x_kernel_artificial_z4zero():
    t = FIXTURES["art355-z4zero"]()
    x = variety_span(t).x_one
    assert x.dim == 1
    E = delta_x_kernel(t, x)
    assert E.dim == t.dim
    image = _restrict_a_slot(E, t.r, t.n, x, 1)
    assert image.dim == restrict(t, x).dim  # zero: X^1 is the Cauchy space here


@pytest.mark.parametrize("name", ["heat1d", "heat1d-cauchy", "art355-z4zero"])
def test_restricted_tableau_spencer_vanishes(name):
    t = FIXTURES[name]()
    x = variety_span(t).x_one
    rt = restrict(t, x)
    rep = spencer_h_dims(rt, rho_max=min(rt.n + 1, 3))
    assert rep.involutive
