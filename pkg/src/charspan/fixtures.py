"""Worked-example tableaux and random involutive / broken tableau generators."""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Callable

from .errors import GenerationFailed, ParameterDomain
from .exactalg import Mat, Subspace, to_scalar
from .spencer import cartan_test
from .tableau import (
    Tableau,
    from_generators,
    from_reduced,
    is_involutive_gnf,
    random_invertible,
    rng_for,
)

F = Fraction


def heat_1d() -> Tableau:
    """[[pi1, pi2], [pi2, 0]] with n = 2, r = 2."""
    return from_generators(2, 2, [Mat([[1, 0], [0, 0]]), Mat([[0, 1], [1, 0]])])


def _heat_2d_element(v: dict) -> Mat:
    p = lambda a, k: v.get((a, k), 0)  # noqa: E731
    return Mat([
        [p(1, 1), p(1, 2), -p(2, 2)],
        [p(2, 1), p(2, 2), p(1, 2)],
        [p(3, 1), p(2, 1), p(1, 1)],
    ])


def heat_2d() -> Tableau:
    """Rows (p11, p12, -p22), (p21, p22, p12), (p31, p21, p11) with n = r = 3."""
    free = [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2)]
    return from_generators(3, 3, [_heat_2d_element({f: 1}) for f in free])


@dataclass(frozen=True)
class FixtureParams:
    p: Fraction = F(2)
    q: Fraction = F(3)
    g: Fraction = F(1)
    h: Fraction = F(1)
    z2: Fraction = F(1)
    z3: Fraction = F(1)
    z4: Fraction = F(1)

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, to_scalar(getattr(self, f.name)))
        if self.q == 0 or self.h == 0:
            raise ParameterDomain("q and h must be nonzero")


def artificial_coefficients(prm: FixtureParams) -> dict:
    """Relation coefficients (a, lam, k, b) -> value for the artificial example, s = (3,2,2,0,0)."""
    p, q, g, h = prm.p, prm.q, prm.g, prm.h
    blocks = {
        (2, 4): [[0, p], [0, 0]],
        (2, 5): [[0, 1], [0, 0]],
        (3, 4): [[p, p / q], [-p * q, -p]],
        (3, 5): [[1, 1 / q], [-q, -1]],
        (1, 2): [[0, 0, 0], [0, 0, 0], [0, 0, prm.z2]],
        (1, 3): [[0, 0, 0], [0, 0, 0], [0, 0, prm.z3]],
        (1, 4): [[p * g, p * g / h, 0], [-p * h * g, -p * g, 0], [0, 0, prm.z4]],
        (1, 5): [[g, g / h, 0], [-h * g, -g, 0], [0, 0, 0]],
    }
    s = (3, 2, 2, 0, 0)
    B = {}
    for (lam, k), m in blocks.items():
        for a, row in enumerate(m, start=1):
            for b, val in enumerate(row, start=1):
                if val and a > s[k - 1]:
                    B[(a, lam, k, b)] = to_scalar(val)
    return B


def artificial_355(params: FixtureParams | None = None) -> Tableau:
    """Involutive (n, r) = (5, 3) tableau with characters (3, 2, 2, 0, 0) built from its relation blocks."""
    prm = params or FixtureParams()
    return from_reduced((3, 2, 2, 0, 0), artificial_coefficients(prm), r=3)


def artificial_355_matrix(params: FixtureParams, pis) -> Mat:
    """The tableau element written out entrywise from the free entries pi1..pi7."""
    p, q, g, h = params.p, params.q, params.g, params.h
    p1, p2, p3, p4, p5, p6, p7 = (to_scalar(x) for x in pis)
    c5_1 = g * p1 + g / h * p2 + p5 + p6 + p7 / q
    c5_2 = -g * h * p1 - g * p2 - q * p6 - p7
    return Mat([
        [p1, p4, p6, p * c5_1, c5_1],
        [p2, p5, p7, p * c5_2, c5_2],
        [p3, p3 * params.z2, p3 * params.z3, p3 * params.z4, 0],
    ])


def crossed() -> Tableau:
    """[[z1, z2, 0], [z2, 0, z1]]: the relation blocks fail to commute, so not involutive."""
    return from_generators(3, 2, [Mat([[1, 0, 0], [0, 0, 1]]), Mat([[0, 1, 0], [1, 0, 0]])])


def with_cauchy_columns(t: Tableau, extra: int = 1) -> Tableau:
    """Append coordinates that no element touches; they span part of the Cauchy space."""
    gens = [Mat([list(row) + [0] * extra for row in g.rows]) for g in t.input_generators]
    return from_generators(t.n + extra, t.r, gens)


def heat_1d_cauchy() -> Tableau:
    return with_cauchy_columns(heat_1d(), 1)


def zero_tableau(n: int = 2, r: int = 2) -> Tableau:
    return from_generators(n, r, [])


def full_tableau(n: int, r: int) -> Tableau:
    return from_generators(n, r, [Mat.unit(r, n, a, k) for a in range(r) for k in range(n)])


# ---------------------------------------------------------------- random generators


def _staircase_gens(s: tuple, r: int) -> list[Mat]:
    n = len(s)
    return [Mat.unit(r, n, a, k) for k in range(n) for a in range(s[k])]


def _random_staircase_s(rng, n: int, r: int) -> tuple:
    vals = sorted((rng.randint(0, r) for _ in range(n)), reverse=True)
    if vals[0] == 0:
        vals[0] = 1
    return tuple(vals)


def _commuting_gens(rng, n: int, r: int) -> list[Mat]:
    """ell = 1: pi = [z, M_2 z, ..., M_n z] with M_k polynomials in one matrix."""
    N = Mat([[rng.randint(-2, 2) for _ in range(r)] for _ in range(r)])
    if rng.random() < 0.5:
        # strictly upper triangular: nilpotent blocks
        N = Mat([[N[i, j] if j > i else 0 for j in range(r)] for i in range(r)])
    Ms = []
    for _ in range(n - 1):
        coeffs = [rng.randint(-2, 2) for _ in range(3)]
        M = Mat.identity(r).scale(coeffs[0]) + N.scale(coeffs[1]) + (N @ N).scale(coeffs[2])
        Ms.append(M)
    return _ell_one_gens(Ms, n, r)


def _ell_one_gens(Ms: list[Mat], n: int, r: int) -> list[Mat]:
    gens = []
    for b in range(r):
        z = [1 if a == b else 0 for a in range(r)]
        cols = [z] + [list(M.apply(z)) for M in Ms]
        gens.append(Mat.from_columns(cols))
    return gens


def _random_fraction(rng, nonzero: bool = False) -> Fraction:
    while True:
        v = F(rng.randint(-4, 4), rng.randint(1, 3))
        if v or not nonzero:
            return v


def _block_sum(a: list[Mat], na: int, ra: int, b: list[Mat], nb: int, rb: int) -> list[Mat]:
    out = []
    for m in a:
        out.append(Mat([list(row) + [0] * nb for row in m.rows] + [[0] * (na + nb)] * rb))
    for m in b:
        out.append(Mat([[0] * (na + nb)] * ra + [[0] * na + list(row) for row in m.rows]))
    return out


def _apply_basis_change(rng, gens: list[Mat], n: int, r: int) -> list[Mat]:
    """Random change of W, and of V keeping U* = span(u^1..u^ell) of the construction fixed.

    Moving U* itself can break the coefficient criterion for involutive tableaux (the
    artificial family is an example), so samples stay in constructed coordinates up to it.
    """
    ell = _free_columns(gens, n, r)
    while True:
        g = random_invertible(rng, n)
        # new u_k for k > ell stay inside span(u_{ell+1}, ..., u_n)
        g = Mat([[g[i, j] if j < ell or i >= ell else 0 for j in range(n)] for i in range(n)])
        if g.rank() == n:
            break
    h = random_invertible(rng, r)
    return [h @ m @ g for m in gens]


def _free_columns(gens: list[Mat], n: int, r: int) -> int:
    """ell of the constructed form: the last column holding the pivot of some element."""
    ell = 0
    for k in range(n):
        if any(m[a, k] and all(m[b, j] == 0 for j in range(k) for b in range(r)) for m in gens for a in range(r)):
            ell = k + 1
    return ell


FAMILIES = ("staircase", "commuting", "artificial", "sum", "cauchy")


def _draw(rng, family: str, n: int | None, r: int | None, s: tuple | None) -> tuple[list[Mat], int, int]:
    if family == "staircase":
        n = n or rng.randint(1, 4)
        r = r or rng.randint(1, 3)
        s = tuple(s) if s is not None else _random_staircase_s(rng, n, r)
        return _staircase_gens(s, r), len(s), r
    if family == "commuting":
        n = n or rng.randint(2, 4)
        r = r or rng.randint(1, 3)
        return _commuting_gens(rng, n, r), n, r
    if family == "artificial":
        prm = FixtureParams(
            p=_random_fraction(rng), q=_random_fraction(rng, True), g=_random_fraction(rng),
            h=_random_fraction(rng, True), z2=_random_fraction(rng), z3=_random_fraction(rng),
            z4=_random_fraction(rng),
        )
        return list(artificial_355(prm).generators), 5, 3
    if family == "sum":
        ga, na, ra = _draw(rng, rng.choice(["staircase", "commuting"]), None, None, None)
        gb, nb, rb = _draw(rng, rng.choice(["staircase", "commuting"]), None, None, None)
        if na + nb > 5 or ra + rb > 4:
            return _draw(rng, "staircase", n, r, s)
        return _block_sum(ga, na, ra, gb, nb, rb), na + nb, ra + rb
    if family == "cauchy":
        inner = rng.choice(["staircase", "commuting"])
        gens, n0, r0 = _draw(rng, inner, None, None, None)
        extra = rng.randint(1, 2)
        return [Mat([list(row) + [0] * extra for row in m.rows]) for m in gens], n0 + extra, r0
    raise ValueError(f"unknown family {family!r}")


def random_involutive(seed, dims: tuple | None = None, family: str | None = None,
                      basis_change: bool = True, retries: int = 20) -> Tableau:
    """A random involutive tableau, verified by the coefficient criterion and Cartan's test.

    dims may be None, (n, r) or (n, r, s); with s given the staircase family is used.
    """
    n = r = None
    s = None
    if dims is not None:
        n, r = dims[0], dims[1]
        if len(dims) > 2:
            s = tuple(dims[2])
            family = "staircase"
    for attempt in range(retries):
        rng = rng_for(seed, "random-involutive", attempt)
        fam = family or rng.choice(FAMILIES)
        if dims is not None and fam not in ("staircase", "commuting"):
            fam = "staircase"
        gens, gn, gr = _draw(rng, fam, n, r, s)
        if basis_change and gens:
            gens = _apply_basis_change(rng, gens, gn, gr)
        gens = [Mat.from_flat(gr, gn, v) for v in Subspace([m.flat() for m in gens], gr * gn).vectors]
        t = from_generators(gn, gr, gens, seed=(seed, attempt))
        if is_involutive_gnf(t)[0] and cartan_test(t)[0]:
            return t
    raise GenerationFailed(f"no involutive sample after {retries} attempts")


def random_broken(seed, n: int = 3, r: int = 2, basis_change: bool = True, retries: int = 50) -> Tableau:
    """ell = 1 tableau [z, M_2 z, ..., M_n z] whose blocks do not all commute."""
    for attempt in range(retries):
        rng = rng_for(seed, "random-broken", attempt)
        Ms = [Mat([[rng.randint(-2, 2) for _ in range(r)] for _ in range(r)]) for _ in range(n - 1)]
        if all((A @ B) == (B @ A) for i, A in enumerate(Ms) for B in Ms[i + 1:]):
            continue
        gens = _ell_one_gens(Ms, n, r)
        if basis_change:
            gens = _apply_basis_change(rng, gens, n, r)
        return from_generators(n, r, gens, seed=(seed, attempt))
    raise GenerationFailed("could not draw a non-commuting family")


# ---------------------------------------------------------------- registry


FIXTURES: dict[str, Callable[[], Tableau]] = {
    "heat1d": heat_1d,
    "heat2d": heat_2d,
    "art355": lambda: artificial_355(FixtureParams()),
    "art355-z4zero": lambda: artificial_355(FixtureParams(z4=0)),
    "heat1d-cauchy": heat_1d_cauchy,
    "crossed": crossed,
    "zero": zero_tableau,
}

INVOLUTIVE_FIXTURES = ("heat1d", "heat2d", "art355", "art355-z4zero", "heat1d-cauchy", "zero")
