from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from charspan.charvar import classify
from charspan.errors import GenerationFailed, ParameterDomain
from charspan.exactalg import Mat, Subspace
from charspan.fixtures import (
    FAMILIES,
    FIXTURES,
    FixtureParams,
    artificial_355,
    artificial_355_matrix,
    artificial_coefficients,
    full_tableau,
    heat_1d,
    heat_2d,
    random_broken,
    random_involutive,
)
from charspan.spencer import cartan_test
from charspan.tableau import b_matrix, is_involutive_gnf, symbol_endo, unit_covector, unit_vector

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def test_heat_1d_shape():
    t = heat_1d()
    assert (t.n, t.r, t.dim, t.s) == (2, 2, 2, (2, 0))
    assert is_involutive_gnf(t)[0]


def test_heat_1d_classify():
    rep = classify(heat_1d())
    assert (rep.ell, rep.L, rep.nu, rep.n) == (1, 1, 2, 2)


def test_heat_2d_characters():
    t = heat_2d()
    assert t.s == (3, 2, 0) and t.ell == 2


def test_heat_2d_endomorphism():
    t = heat_2d()
    assert symbol_endo(t, unit_covector(3, 1), unit_vector(3, 3)) == Mat([[0, 0, 0], [0, 0, 0], [1, 0, 0]])


def test_artificial_characters():
    assert artificial_355().s == (3, 2, 2, 0, 0)


def _span_of_display(prm):
    mats = []
    for i in range(7):
        pis = [1 if j == i else 0 for j in range(7)]
        mats.append(artificial_355_matrix(prm, pis).flat())
    return Subspace(mats, 15)


def test_artificial_display_matches_reduced_construction():
    prm = FixtureParams()
    assert _span_of_display(prm) == artificial_355(prm).input_subspace()


@settings(max_examples=15)
@given(p=rationals, q=rationals.filter(bool), g=rationals, h=rationals.filter(bool),
       z2=rationals, z3=rationals, z4=rationals)
def test_artificial_display_matches_for_all_parameters(p, q, g, h, z2, z3, z4):
    prm = FixtureParams(p=p, q=q, g=g, h=h, z2=z2, z3=z3, z4=z4)
    t = artificial_355(prm)
    assert _span_of_display(prm) == t.input_subspace()
    assert is_involutive_gnf(t)[0]


def test_artificial_constructed_relations():
    prm = FixtureParams(p=F(5, 3), q=F(-2), g=F(7), h=F(1, 2))
    t = artificial_355(prm)
    assert b_matrix(t, 2, 4) == b_matrix(t, 2, 5).scale(prm.p)
    assert b_matrix(t, 3, 4) == b_matrix(t, 3, 5).scale(prm.p)


def test_artificial_coefficients_respect_triangularity():
    s = (3, 2, 2, 0, 0)
    for (a, lam, k, b) in artificial_coefficients(FixtureParams()):
        assert a > s[k - 1] and lam < k and b <= s[lam - 1]


@pytest.mark.parametrize("bad", [{"q": 0}, {"h": 0}])
def test_parameter_domain(bad):
    with pytest.raises(ParameterDomain):
        FixtureParams(**bad)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_builds(name):
    t = FIXTURES[name]()
    assert t.dim == len(t.generators)


def test_random_single_generator():
    t = random_involutive(0, dims=(2, 1, (1, 0)))
    assert (t.n, t.r, t.s, t.dim) == (2, 1, (1, 0), 1)


def test_random_full_staircase():
    t = random_involutive(0, dims=(3, 2, (2, 2, 2)))
    assert t.subspace() == full_tableau(3, 2).subspace()


@pytest.mark.parametrize("family", FAMILIES)
def test_random_families_pass_both_oracles(family):
    for seed in range(3):
        t = random_involutive(seed, family=family)
        assert is_involutive_gnf(t)[0] and cartan_test(t)[0]


def test_random_deterministic():
    assert random_involutive(17).subspace() == random_involutive(17).subspace()


def test_random_generation_failure():
    with pytest.raises(GenerationFailed):
        random_involutive(0, family="nope-not-a-family-but-retries-zero", retries=0)


def test_random_broken_not_involutive():
    for seed in range(5):
        t = random_broken(seed)
        assert not is_involutive_gnf(t)[0]
        assert not cartan_test(t)[0]


def test_random_broken_failure_when_commuting_forced():
    with pytest.raises(GenerationFailed):
        random_broken(0, n=2, r=1, retries=5)
