"""Characteristic ideal, the span of the characteristic variety, and classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import ChainViolation, InvarianceViolated, MinorExplosion, Unstable
from .exactalg import Mat, Subspace, is_nilpotent, kernel_basis, restrict_endo, solve
from .multipoly import (
    GREVLEX,
    Ideal,
    Poly,
    buchberger,
    ideal_dimension,
    linear_part,
    radical_membership,
    saturate,
    zero_dim_radical,
)
from .tableau import (
    ENTRY_BOX,
    Tableau,
    input_cauchy_space,
    is_involutive_gnf,
    rng_for,
    symbol_endo,
    symbol_matrix,
    w_one,
)

DEFAULT_MAX_MINORS = 20000
DEFAULT_ROUNDS = 3
DEFAULT_MAX_ROUNDS = 10
TRIALS_PER_ROUND = 2


# ---------------------------------------------------------------- minors


def minors(rows: Sequence[Sequence[Poly]], p: int, nvars: int, cap: int = DEFAULT_MAX_MINORS) -> list[Poly]:
    """All p x p minors of a (len(rows) x p) polynomial matrix, by memoized Laplace expansion."""
    m = len(rows)
    if p == 0:
        return [Poly.const(1, nvars)]
    if m < p:
        return []
    count = comb(m, p)
    if count > cap:
        raise MinorExplosion(f"{count} minors exceed the cap {cap}")
    memo: dict = {}

    def det(sel: tuple) -> Poly:
        # rows in sel against the last len(sel) columns
        if sel in memo:
            return memo[sel]
        col = p - len(sel)
        if len(sel) == 1:
            val = rows[sel[0]][col]
        else:
            val = Poly.zero(nvars)
            for pos, i in enumerate(sel):
                e = rows[i][col]
                if e:
                    rest = det(sel[:pos] + sel[pos + 1:])
                    if rest:
                        term = e * rest
                        val = val - term if pos % 2 else val + term
        memo[sel] = val
        return val

    out = []
    seen = set()
    for sel in combinations(range(m), p):
        d = det(sel)
        if d:
            d = d.monic()
            if d not in seen:
                seen.add(d)
                out.append(d)
    return out


def _poly_rows(t: Tableau) -> list[list[Poly]]:
    return symbol_matrix(t)


def char_ideal(t: Tableau, max_minors: int = DEFAULT_MAX_MINORS) -> Ideal:
    """Ideal of the r x r minors of the symbol, in adapted coordinates."""
    rows = _poly_rows(t)
    if len(rows) < t.r:
        return Ideal([], t.n)
    return Ideal(minors(rows, t.r, t.n, max_minors), t.n)


def to_input_coordinates(t: Tableau, i: Ideal) -> Ideal:
    """Rewrite an ideal in adapted covector coordinates using xi_adapted = xi_input g."""
    g = t.basis_change[0]
    n = t.n
    images = [Poly.linear([g[j, k] for j in range(n)]) for k in range(n)]
    return Ideal([f.substitute(images) if f.nvars else f for f in i.generators], n)


def char_dimension(t: Tableau, max_minors: int = DEFAULT_MAX_MINORS) -> int:
    """Affine cone dimension of the characteristic variety (0 when it is empty)."""
    return max(ideal_dimension(char_ideal(t, max_minors)), 0)


def formal_char_ideal(space: Subspace, p: int, m: int, max_minors: int = DEFAULT_MAX_MINORS) -> Ideal:
    """Characteristic ideal of a tableau T in Q^p (x) (Q^m)*, coordinates w*m + beta.

    xi is characteristic iff some nonzero w has w (x) xi in T.  Such w lie in the span of
    the contractions of T, so unknowns are taken in that span only.
    """
    if space.ambient_dim != p * m:
        raise ValueError("space does not match the declared shape")
    if space.is_zero():
        return Ideal([Poly.const(1, m)], m)
    contr = Subspace([[e[w * m + beta] for w in range(p)] for e in space.vectors for beta in range(m)], p)
    ann = space.annihilator().vectors
    rows = []
    for K in ann:
        row = []
        for w in contr.vectors:
            row.append(Poly.linear([sum((w[i] * K[i * m + beta] for i in range(p) if w[i]), Fraction(0))
                                    for beta in range(m)]))
        if any(row):
            rows.append(row)
    q = contr.dim
    if len(rows) < q:
        return Ideal([], m)
    return Ideal(minors(rows, q, m, max_minors), m)


# ---------------------------------------------------------------- span of the variety


@dataclass(frozen=True)
class SliceRecord:
    round: int
    trial: int
    cuts: int
    status: str  # "points", "empty", "positive-dimensional", "degenerate-chart"
    points: int = 0  # observed degree: number of points of the slice over the algebraic closure
    stage: int = 0  # 0 for the whole variety, k for the k-th residual after saturation


@dataclass(frozen=True)
class CharData:
    ideal: Ideal
    ell: int
    span: Subspace  # in V*, adapted coordinates
    x_one: Subspace  # in V, adapted coordinates
    L: int
    slice_log: tuple = ()
    certified: bool = False  # every linear form in x_one was shown to vanish on the variety

    @property
    def observed_degree(self) -> int | None:
        """Point count of a top-dimensional slice (the degree, when the variety is equidimensional)."""
        pts = [s.points for s in self.slice_log if s.status == "points" and s.stage == 0]
        return max(pts) if pts else None


def _slice_span(ideal: Ideal, n: int, cuts: int, rng) -> tuple[str, Subspace | None, int]:
    chart = [rng.randint(-ENTRY_BOX, ENTRY_BOX) for _ in range(n)]
    forms = [[rng.randint(-ENTRY_BOX, ENTRY_BOX) for _ in range(n)] for _ in range(cuts)]
    system = Mat([chart] + forms)
    if system.rank() != cuts + 1:
        return "degenerate-chart", None, 0
    p0 = solve(system, [1] + [0] * cuts)
    dirs = kernel_basis(system).vectors
    m = len(dirs)
    # xi_k(t) = p0_k + sum_j dirs[j][k] t_j
    coords = [Poly.linear([d[k] for d in dirs], p0[k]) if m else Poly.const(p0[k], 0) for k in range(n)]
    if m == 0:
        vals = [f.evaluate(p0) for f in ideal.generators]
        if any(vals):
            return "empty", None, 0
        return "points", Subspace([p0], n), 1
    sub = Ideal([f.substitute(coords) for f in ideal.generators], m).groebner(GREVLEX)
    if sub.is_unit():
        return "empty", None, 0
    if sub.standard_monomials() is None:
        return "positive-dimensional", None, 0
    rad = zero_dim_radical(sub)
    npts = len(rad.standard_monomials())
    perp = linear_part(rad, coords)  # vectors c in V with sum c_k xi_k = 0 on every point
    return "points", perp.annihilator(), npts


def _accumulate(I: Ideal, n: int, cone_dim: int, seed, tag, rounds: int, max_rounds: int,
                log: list, start: Subspace) -> Subspace:
    """Join point spans of random slices of the top-dimensional part until stable."""
    cuts = cone_dim - 1  # fewer cuts leave positive-dimensional slices, more cuts leave none
    span = start
    stable = 0
    grew = False
    for rnd in range(max_rounds):
        grew = False
        for trial in range(TRIALS_PER_ROUND):
            rng = rng_for(seed, "slice", tag, rnd, trial)
            status, pts, npts = _slice_span(I, n, cuts, rng)
            log.append(SliceRecord(rnd, trial, cuts, status, npts, tag))
            if pts is not None and not pts.issubspace(span):
                span = span.join(pts)
                grew = True
        if span.is_full():
            return span
        stable = 0 if grew else stable + 1
        if stable >= rounds:
            return span
    if grew:
        raise Unstable(f"span still growing after {max_rounds} rounds (dim {span.dim})")
    return span


def variety_span(t: Tableau, seed=0, rounds: int = DEFAULT_ROUNDS, max_rounds: int = DEFAULT_MAX_ROUNDS,
                 max_minors: int = DEFAULT_MAX_MINORS, ideal: Ideal | None = None,
                 certify: bool = True) -> CharData:
    """Span of the (reduced) characteristic variety.

    Random zero-dimensional slices of the top-dimensional part give points; then every
    linear form vanishing on the points found is tested for membership in the radical.
    A form that fails exposes components off the current span: saturating by it isolates
    them and they are sliced in turn.  On return every form in x_one vanishes on the variety.
    """
    n = t.n
    I = ideal if ideal is not None else char_ideal(t, max_minors)
    if I.is_zero():
        full = Subspace.full(n)
        return CharData(I, n, full, full.annihilator(), n, (), True)
    ell = max(ideal_dimension(I), 0)
    if ell == 0:
        zero = Subspace.zero(n)
        return CharData(I, 0, zero, zero.annihilator(), 0, (), True)
    log: list = []
    span = _accumulate(I, n, ell, seed, 0, rounds, max_rounds, log, Subspace.zero(n))
    if not certify:
        return CharData(I, ell, span, span.annihilator(), span.dim, tuple(log), False)
    stage = 0
    while not span.is_full():
        missing = None
        for c in span.annihilator().vectors:
            if not radical_membership(Poly.linear(c), I):
                missing = c
                break
        if missing is None:
            break
        stage += 1
        J = saturate(I, Poly.linear(missing))
        d = ideal_dimension(J)
        if d <= 0:
            raise AssertionError("a form outside the radical must leave a nonempty residual variety")
        before = span
        span = _accumulate(J, n, d, seed, stage, rounds, max_rounds, log, span)
        if span == before:
            raise Unstable("residual components produced no new points")
    return CharData(I, ell, span, span.annihilator(), span.dim, tuple(log), True)


# ---------------------------------------------------------------- nilpotency


def random_u_covector(t: Tableau, rng) -> tuple:
    while True:
        phi = [rng.randint(-ENTRY_BOX, ENTRY_BOX) if k < t.ell else 0 for k in range(t.n)]
        if any(phi):
            return tuple(Fraction(x) for x in phi)


def nilpotency_certificate(t: Tableau, x1: Subspace, sample_count: int = 16, seed=0) -> bool:
    """For random phi in U*: B(phi)(v) preserves W1(phi) and is nilpotent there, for every basis v of x1."""
    if t.ell == 0 or x1.is_zero():
        return True
    rng = rng_for(seed, "nilpotency")
    for _ in range(sample_count):
        phi = random_u_covector(t, rng)
        w1 = w_one(t, phi)
        for v in x1.vectors:
            try:
                m = restrict_endo(symbol_endo(t, phi, v), w1)
            except InvarianceViolated:
                return False
            if not is_nilpotent(m):
                return False
    return True


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class Report:
    n: int
    r: int
    characters: tuple
    ell: int
    L: int
    nu: int
    frobenius: bool
    elementary: bool
    cauchy_free: bool
    involutive: bool
    x1: Subspace  # input coordinates
    S: Subspace  # input coordinates
    char_ideal: Ideal  # reduced Groebner basis, input coordinates
    span: Subspace = field(default=None)  # <Xi> in input covector coordinates
    chardata: CharData = field(default=None, compare=False)


def check_chain(ell: int, L: int, nu: int, n: int) -> None:
    if not (0 <= ell <= L <= nu <= n):
        raise ChainViolation(f"chain fails: ell={ell}, L={L}, nu={nu}, n={n}")


def classify(t: Tableau, seed=0, rounds: int = DEFAULT_ROUNDS,
             max_minors: int = DEFAULT_MAX_MINORS) -> Report:
    cd = variety_span(t, seed=seed, rounds=rounds, max_minors=max_minors)
    S = input_cauchy_space(t)
    nu = t.n - S.dim
    check_chain(cd.ell, cd.L, nu, t.n)
    ideal_in = to_input_coordinates(t, cd.ideal)
    gb = buchberger(ideal_in.generators, GREVLEX, nvars=t.n)
    return Report(
        n=t.n,
        r=t.r,
        characters=tuple(t.s),
        ell=cd.ell,
        L=cd.L,
        nu=nu,
        frobenius=cd.ell == 0,
        elementary=cd.L == t.n,
        cauchy_free=nu == t.n,
        involutive=is_involutive_gnf(t)[0],
        x1=t.subspace_to_input(cd.x_one),
        S=S,
        char_ideal=gb,
        span=t.covectors_to_input(cd.span),
        chardata=cd,
    )
