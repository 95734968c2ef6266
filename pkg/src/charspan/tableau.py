"""Tableaux A in W (x) V*: characters, reduced symbol coefficients and symbol endomorphisms.

A tableau element pi is an r x n matrix with entries pi[a][k] (row a indexes W,
column k indexes V*).  Internally everything is stored in an adapted generic
basis; ``basis_change = (g, h)`` relates it to the input coordinates by
pi_adapted = h^-1 pi_input g.  Public indices in the coefficient map B are
1-based quadruples (a, lam, k, b), meaning

    pi[a][k] = sum B[(a, lam, k, b)] * pi[b][lam]   for a > s_k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DependentGenerators,
    GenericityFailure,
    ShapeError,
    SupportViolation,
    TriangularityViolated,
)
from .exactalg import Mat, Subspace, _rref_rows, kernel_basis, to_scalar
from .multipoly import Ideal, Poly

DEFAULT_TRIALS = 32
DEFAULT_MAX_DIM = 8
ENTRY_BOX = 3

_ZERO = Fraction(0)
_ONE = Fraction(1)

SymbolEndo = Mat  # r x r matrix of B(phi)(v)


def rng_for(seed, *tags) -> random.Random:
    """Deterministic sub-generator derived from a seed and a purpose tag."""
    return random.Random(":".join(str(x) for x in (seed,) + tags))


def random_invertible(rng: random.Random, d: int, box: int = ENTRY_BOX) -> Mat:
    while True:
        m = Mat([[rng.randint(-box, box) for _ in range(d)] for _ in range(d)])
        if m.rank() == d:
            return m


@dataclass(frozen=True)
class Tableau:
    n: int
    r: int
    generators: tuple  # canonical generators in adapted coordinates, one per free entry
    s: tuple
    B: Mapping
    basis_change: tuple  # (g, h)
    input_generators: tuple = field(default=(), compare=False)

    @property
    def ell(self) -> int:
        return max((k + 1 for k, sk in enumerate(self.s) if sk > 0), default=0)

    @property
    def dim(self) -> int:
        return sum(self.s)

    def is_zero(self) -> bool:
        return self.dim == 0

    def free_entries(self) -> list[tuple[int, int]]:
        """1-based (lam, b) with b <= s_lam, in generator order."""
        return [(lam + 1, b + 1) for lam in range(self.n) for b in range(self.s[lam])]

    def relations(self) -> list[tuple[int, int]]:
        """1-based (k, a) with a > s_k: one row of the symbol each."""
        return [(k + 1, a + 1) for k in range(self.n) for a in range(self.s[k], self.r)]

    def subspace(self) -> Subspace:
        """A as a subspace of Q^(r n), row-major flattening (index a*n + k)."""
        return Subspace([g.flat() for g in self.generators], self.r * self.n)

    def input_subspace(self) -> Subspace:
        return Subspace([g.flat() for g in self.input_generators], self.r * self.n)

    def element(self, free_values: Mapping) -> Mat:
        """The element of A with prescribed free entries {(lam, b): value} (1-based)."""
        rows = [[_ZERO] * self.n for _ in range(self.r)]
        for (lam, b), val in free_values.items():
            if not (1 <= lam <= self.n and 1 <= b <= self.s[lam - 1]):
                raise ValueError(f"({lam}, {b}) is not a free entry")
            rows[b - 1][lam - 1] = to_scalar(val)
        for (a, lam, k, b), c in self.B.items():
            v = free_values.get((lam, b))
            if v:
                rows[a - 1][k - 1] += c * to_scalar(v)
        return Mat(rows)

    def vector_to_input(self, v: Sequence) -> tuple:
        return self.basis_change[0].apply(v)

    def subspace_to_input(self, x: Subspace) -> Subspace:
        return x.image(self.basis_change[0])

    def subspace_from_input(self, x: Subspace) -> Subspace:
        return x.image(self.basis_change[0].inverse())

    def covectors_to_input(self, span: Subspace) -> Subspace:
        """xi_input = xi_adapted g^-1 (row vectors)."""
        ginv = self.basis_change[0].inverse()
        return span.image(ginv.T)


# ---------------------------------------------------------------- construction


def _check_shapes(n: int, r: int, mats: Sequence[Mat], max_dim: int) -> None:
    if n < 0 or r < 0:
        raise ShapeError("dimensions must be non-negative")
    if n > max_dim or r > max_dim:
        raise ShapeError(f"dimensions ({n}, {r}) exceed the cap {max_dim}")
    for m in mats:
        if m.shape != (r, n):
            raise ShapeError(f"generator of shape {m.shape}, expected {(r, n)}")


def _colmajor(m: Mat) -> list:
    return [m[a, k] for k in range(m.ncols) for a in range(m.nrows)]


def _echelon(mats: Sequence[Mat], n: int, r: int) -> tuple[list, list]:
    """Column-major RREF of the span: row i is the element with pivot piv[i]."""
    rows = [_colmajor(m) for m in mats]
    return _rref_rows(rows, n * r)


def _characters(pivots: Sequence[int], n: int, r: int) -> tuple:
    s = [0] * n
    for p in pivots:
        s[p // r] += 1
    return tuple(s)


def _flag_blocks(rows: list, pivots: list, n: int, r: int) -> list[Subspace]:
    """D_k: column-k values of elements vanishing in columns before k."""
    out = []
    for k in range(n):
        vecs = [row[k * r:(k + 1) * r] for row, p in zip(rows, pivots) if p >= k * r]
        out.append(Subspace(vecs, r))
    return out


def _adapted_w_basis(blocks: list[Subspace], s: tuple, r: int) -> Mat | None:
    """Columns w_1..w_r with span(w_1..w_{s_k}) = D_k for every k, or None if D is not nested."""
    ell = max((k + 1 for k, sk in enumerate(s) if sk), default=0)
    for k in range(ell - 1):
        if not blocks[k + 1].issubspace(blocks[k]):
            return None
    if all(blocks[k] == Subspace.coordinate(r, range(s[k])) for k in range(ell)):
        return Mat.identity(r)
    chosen: list = []
    current = Subspace.zero(r)
    levels = [blocks[k] for k in range(ell - 1, -1, -1)] + [Subspace.full(r)]
    for target in levels:
        for v in target.vectors:
            if not current.contains(v):
                chosen.append(v)
                current = current.join(Subspace([v], r))
    return Mat.from_columns(chosen)


def _read_reduced(rows: list, pivots: list, n: int, r: int, s: tuple) -> tuple[tuple, dict]:
    gens = []
    B: dict = {}
    for row, p in zip(rows, pivots):
        lam, b = divmod(p, r)
        if b >= s[lam]:
            raise GenericityFailure("pivot outside the free block")
        gens.append(Mat([[row[k * r + a] for k in range(n)] for a in range(r)]))
        for k in range(n):
            for a in range(s[k], r):
                c = row[k * r + a]
                if c:
                    if not lam < k:
                        raise GenericityFailure(
                            f"triangularity fails at {(a + 1, lam + 1, k + 1, b + 1)}"
                        )
                    B[(a + 1, lam + 1, k + 1, b + 1)] = c
    return tuple(gens), B


def _transform(mats: Sequence[Mat], g: Mat, hinv: Mat | None) -> list[Mat]:
    if hinv is None:
        return [m @ g for m in mats]
    return [hinv @ m @ g for m in mats]


def from_generators(n: int, r: int, mats: Iterable, seed=0, trials: int = DEFAULT_TRIALS,
                    max_dim: int = DEFAULT_MAX_DIM) -> Tableau:
    """Analyze span(mats) in a generic basis maximizing the characters lexicographically."""
    mats = [m if isinstance(m, Mat) else Mat(m) for m in mats]
    _check_shapes(n, r, mats, max_dim)
    if mats and Subspace([m.flat() for m in mats], r * n).dim != len(mats):
        raise DependentGenerators(f"{len(mats)} generators span a smaller space")
    if not mats:
        return Tableau(n, r, (), (0,) * n, {}, (Mat.identity(n), Mat.identity(r)), ())

    rng = rng_for(seed, "generic-basis")
    candidates = [Mat.identity(n)] + [random_invertible(rng, n) for _ in range(trials)]
    scored = []
    for idx, g in enumerate(candidates):
        rows, piv = _echelon(_transform(mats, g, None), n, r)
        scored.append((_characters(piv, n, r), -idx, g, rows, piv))
    best_s = max(t[0] for t in scored)
    for s, _, g, rows, piv in sorted((t for t in scored if t[0] == best_s), key=lambda t: -t[1]):
        h = _adapted_w_basis(_flag_blocks(rows, piv, n, r), s, r)
        if h is None:
            continue
        hinv = h.inverse()
        adapted = _transform(mats, g, hinv)
        rows2, piv2 = _echelon(adapted, n, r)
        try:
            gens, B = _read_reduced(rows2, piv2, n, r, s)
        except GenericityFailure:
            continue
        return Tableau(n, r, gens, s, B, (g, h), tuple(mats))
    raise GenericityFailure("no sampled basis is generic; retry with another seed")


def _check_reduced(s: Sequence[int], B: Mapping, r: int) -> None:
    n = len(s)
    for k in range(n - 1):
        if s[k] < s[k + 1]:
            raise ValueError(f"characters must be non-increasing, got {tuple(s)}")
    if any(x < 0 or x > r for x in s):
        raise ValueError("characters must lie between 0 and r")
    for key, val in B.items():
        a, lam, k, b = key
        if not (1 <= a <= r and 1 <= b <= r and 1 <= lam <= n and 1 <= k <= n):
            raise TriangularityViolated(key, f"index {key} out of range")
        if to_scalar(val) and not (lam < k and b <= s[lam - 1] and s[k - 1] < a):
            raise TriangularityViolated(key)


def from_reduced(s: Sequence[int], B: Mapping, r: int | None = None,
                 max_dim: int = DEFAULT_MAX_DIM) -> Tableau:
    """Rebuild generators from characters and relation coefficients (identity basis change)."""
    s = tuple(int(x) for x in s)
    n = len(s)
    if r is None:
        r = max(s, default=0)
    _check_reduced(s, B, r)
    _check_shapes(n, r, [], max_dim)
    clean = {tuple(k): to_scalar(v) for k, v in B.items() if to_scalar(v)}
    base = Tableau(n, r, (), s, clean, (Mat.identity(n), Mat.identity(r)), ())
    gens = tuple(base.element({fe: 1}) for fe in base.free_entries())
    return Tableau(n, r, gens, s, clean, base.basis_change, gens)


def reduced_form(t: Tableau) -> tuple[tuple, dict, int]:
    return t.s, dict(t.B), t.r


# ---------------------------------------------------------------- symbol


def symbol_matrix(t: Tableau) -> list[list[Poly]]:
    """Rows indexed by relations (k, a), columns by b: delta^a_b xi_k - sum_lam B^{a,lam}_{k,b} xi_lam."""
    n = t.n
    rows = []
    for k, a in t.relations():
        row = []
        for b in range(1, t.r + 1):
            coeffs = [_ZERO] * n
            if a == b:
                coeffs[k - 1] += 1
            for lam in range(1, k):
                c = t.B.get((a, lam, k, b))
                if c:
                    coeffs[lam - 1] -= c
            row.append(Poly.linear(coeffs))
        rows.append(row)
    return rows


def symbol_at(t: Tableau, xi: Sequence) -> Mat:
    """sigma_xi as a numeric matrix (relations x r)."""
    rows = [[p.evaluate(xi) for p in row] for row in symbol_matrix(t)]
    return Mat(rows, ncols=t.r)


def _check_u_support(t: Tableau, phi: Sequence) -> None:
    if len(phi) != t.n:
        raise ShapeError("covector has wrong length")
    if any(to_scalar(x) for x in phi[t.ell:]):
        raise SupportViolation("covector has components outside U*")


def symbol_endo(t: Tableau, phi: Sequence, v: Sequence) -> SymbolEndo:
    """B(phi)(v): identity summand on a <= s_k plus the relation coefficients on a > s_k."""
    _check_u_support(t, phi)
    if len(v) != t.n:
        raise ShapeError("vector has wrong length")
    phi = [to_scalar(x) for x in phi]
    v = [to_scalar(x) for x in v]
    m = [[_ZERO] * t.r for _ in range(t.r)]
    for k in range(t.n):
        if v[k] and phi[k]:
            for a in range(t.s[k]):
                m[a][a] += phi[k] * v[k]
    for (a, lam, k, b), c in t.B.items():
        w = phi[lam - 1] * v[k - 1]
        if w:
            m[a - 1][b - 1] += c * w
    return Mat(m, ncols=t.r)


def unit_covector(n: int, i: int) -> tuple:
    """u^i (1-based)."""
    return tuple(_ONE if j == i - 1 else _ZERO for j in range(n))


unit_vector = unit_covector


def b_matrix(t: Tableau, lam: int, k: int) -> Mat:
    """B^lam_k = B(u^lam)(u_k), 1-based."""
    return symbol_endo(t, unit_covector(t.n, lam), unit_vector(t.n, k))


# ---------------------------------------------------------------- W filtration


def w_minus(t: Tableau, k: int) -> Subspace:
    """span(w_1..w_{s_k}): the block where the identity summand of B(u^k)(u_k) acts."""
    if not 1 <= k <= t.n:
        raise ValueError("k out of range")
    return Subspace.coordinate(t.r, range(t.s[k - 1]))


def w_plus(t: Tableau, k: int) -> Subspace:
    if not 1 <= k <= t.n:
        raise ValueError("k out of range")
    return Subspace.coordinate(t.r, range(t.s[k - 1], t.r))


def w_one(t: Tableau, phi: Sequence) -> Subspace:
    """{z : z (x) phi + sum_{rho > ell} J_rho (x) u^rho lies in A for some J}."""
    _check_u_support(t, phi)
    phi = [to_scalar(x) for x in phi]
    if t.ell == 0:
        return Subspace.zero(t.r)  # U* = 0 and A has no rank-one elements
    if not any(phi):
        raise ValueError("phi must be nonzero")
    n, r, ell = t.n, t.r, t.ell
    # unknowns: z (r entries) then J[a][rho] for rho = ell..n-1
    nunk = r + r * (n - ell)

    def entry(a: int, k: int) -> list:
        vec = [_ZERO] * nunk
        if k < ell:
            if phi[k]:
                vec[a] = phi[k]
        else:
            vec[r + a * (n - ell) + (k - ell)] = _ONE
        return vec

    eqs = []
    for k, a in t.relations():
        row = entry(a - 1, k - 1)
        for lam in range(1, k):
            for b in range(1, t.s[lam - 1] + 1):
                c = t.B.get((a, lam, k, b))
                if c:
                    e = entry(b - 1, lam - 1)
                    row = [x - c * y for x, y in zip(row, e)]
        eqs.append(row)
    sol = kernel_basis(Mat(eqs, ncols=nunk)) if eqs else Subspace.full(nunk)
    return Subspace([v[:r] for v in sol.vectors], r)


def w_minus_of(t: Tableau, phi: Sequence) -> Subspace:
    """W^-(phi) = W^-(u^lam) for the first lam with phi_lam != 0."""
    _check_u_support(t, phi)
    lam = next(i for i, x in enumerate(phi) if to_scalar(x)) + 1
    return w_minus(t, lam)


def w_one_explicit(t: Tableau, phi: Sequence) -> Subspace:
    """Explicit description: z in W^-(phi) with (B(phi)(u_mu) z)^a = phi_mu z^a for mu <= ell, a > s_mu."""
    wm = w_minus_of(t, phi)
    phi = [to_scalar(x) for x in phi]
    r = t.r
    eqs = []
    for mu in range(1, t.ell + 1):
        m = symbol_endo(t, phi, unit_vector(t.n, mu))
        for a in range(t.s[mu - 1], r):
            row = list(m.row(a))
            row[a] -= phi[mu - 1]
            eqs.append(row)
    ann = wm.annihilator()
    eqs.extend(list(v) for v in ann.vectors)
    return kernel_basis(Mat(eqs, ncols=r)) if eqs else Subspace.full(r)


# ---------------------------------------------------------------- involutivity


def _gnf_violations(bm, s: tuple, r: int, n: int, ell: int) -> list:
    """Nonzero entries of both coefficient conditions; bm(lam, k) returns r x r nested lists."""
    out = []
    for lam in range(1, ell + 1):
        for k in range(1, n + 1):
            m = bm(lam, k)
            for a in range(max(s[k - 1], s[lam - 1]), r):
                for b in range(r):
                    if m[a][b]:
                        out.append(("cond1", (a + 1, lam, k, b + 1), m[a][b]))
    for lam in range(1, ell + 1):
        for l in range(lam + 1, n + 1):
            for k in range(l + 1, n + 1):
                for mu in range(lam, min(k - 1, ell) + 1):
                    d = _sub(_mul(bm(lam, l), bm(mu, k)), _mul(bm(lam, k), bm(mu, l)))
                    for a in range(s[l - 1], r):
                        for b in range(r):
                            if d[a][b]:
                                out.append(("cond2", (lam, l, k, mu, a + 1, b + 1), d[a][b]))
    return out


def _mul(x: list, y: list) -> list:
    inner = len(y)
    out = []
    for row in x:
        nz = [(j, row[j]) for j in range(inner) if row[j]]
        out.append([sum((v * y[j][c] for j, v in nz), 0 * row[0]) if nz else 0 * row[0]
                    for c in range(len(y[0]))])
    return out


def _sub(x: list, y: list) -> list:
    return [[a - b for a, b in zip(rx, ry)] for rx, ry in zip(x, y)]


def gnf_violations(t: Tableau) -> list:
    """Index tuples violating the coefficient conditions in the analysis basis of W."""
    cache: dict = {}

    def bm(lam: int, k: int) -> list:
        if (lam, k) not in cache:
            cache[(lam, k)] = [list(row) for row in b_matrix(t, lam, k).rows]
        return cache[(lam, k)]

    return [(tag, idx) for tag, idx, _ in _gnf_violations(bm, t.s, t.r, t.n, t.ell)]


def _flag_unknowns(s: tuple, r: int) -> list[tuple[int, int]]:
    """Entries (i, j) of the unipotent part of the group fixing every span(w_1..w_{s_k})."""
    cuts = sorted({x for x in s if 0 < x < r})
    level = [sum(1 for c in cuts if c <= i) for i in range(r)]
    return [(i, j) for i in range(r) for j in range(r) if level[i] < level[j]]


def _unipotent_inverse(m: list, size: int, nv: int) -> list:
    """Inverse of an upper unitriangular polynomial matrix by the finite Neumann series."""
    one, zero = Poly.const(1, nv), Poly.zero(nv)
    eye = [[one if i == j else zero for j in range(size)] for i in range(size)]
    nil = _sub(eye, m)
    out, power = eye, eye
    for _ in range(size - 1):
        power = _mul(power, nil)
        out = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(out, power)]
    return out


def gnf_w_basis_equations(t: Tableau) -> tuple[list, int]:
    """Both conditions as polynomials in the entries c of a unipotent change of W basis.

    The new basis is w' = w T with T = I + sum c_ij E_ij preserving every span(w_1..w_{s_k});
    block-diagonal changes only conjugate the B^lam_k and leave the conditions invariant.
    """
    r, n, s, ell = t.r, t.n, t.s, t.ell
    unknowns = _flag_unknowns(s, r)
    nv = len(unknowns)
    one, zero = Poly.const(1, nv), Poly.zero(nv)
    T = [[one if i == j else zero for j in range(r)] for i in range(r)]
    for v, (i, j) in enumerate(unknowns):
        T[i][j] = Poly.var(v, nv)
    Tinv = _unipotent_inverse(T, r, nv)
    free = [(lam, b) for lam in range(1, ell + 1) for b in range(s[lam - 1])]
    N = len(free)
    # column k of an element as a function of the old free values, then in the new W coordinates
    cols = {}
    for k in range(1, n + 1):
        old = [[zero] * N for _ in range(r)]
        for idx, (lam, b) in enumerate(free):
            m = b_matrix(t, lam, k)
            for a in range(r):
                if m[a, b]:
                    old[a][idx] = Poly.const(m[a, b], nv)
        cols[k] = _mul(Tinv, old)
    # new free values z' = M z; M is block lower triangular with unitriangular diagonal blocks
    M = [cols[lam][b] for lam, b in free]
    starts = {}
    for idx, (lam, _) in enumerate(free):
        starts.setdefault(lam, idx)
    blocks = [(lam, starts[lam], starts[lam] + s[lam - 1]) for lam in range(1, ell + 1)]
    X = [[zero] * N for _ in range(N)]
    for bi, (lam, lo, hi) in enumerate(blocks):
        diag_inv = _unipotent_inverse([row[lo:hi] for row in M[lo:hi]], hi - lo, nv)
        for i in range(hi - lo):
            for j in range(hi - lo):
                X[lo + i][lo + j] = diag_inv[i][j]
        for mlam, mlo, mhi in blocks[:bi]:
            # X_lam,mu = -D^-1 sum_{mu <= nu < lam} M_lam,nu X_nu,mu
            acc = [[zero] * (mhi - mlo) for _ in range(hi - lo)]
            for _, nlo, nhi in blocks[:bi]:
                part = _mul([row[nlo:nhi] for row in M[lo:hi]], [row[mlo:mhi] for row in X[nlo:nhi]])
                acc = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(acc, part)]
            val = _mul(diag_inv, acc)
            for i in range(hi - lo):
                for j in range(mhi - mlo):
                    X[lo + i][mlo + j] = -val[i][j]
    newB = {k: _mul(cols[k], X) for k in cols}

    def bm(lam: int, k: int) -> list:
        if lam > ell:
            return [[zero] * r for _ in range(r)]
        lo = starts[lam]
        return [[newB[k][a][lo + b] if b < s[lam - 1] else zero for b in range(r)] for a in range(r)]

    eqs = [v for _, _, v in _gnf_violations(bm, s, r, n, ell)]
    return eqs, nv


def is_involutive_gnf(t: Tableau, search: bool = True) -> tuple[bool, list]:
    """Coefficient criterion: involutive iff some basis of W satisfies both conditions.

    The analysis basis is tried first; its violations form the certificate.  With search,
    a failure is retried over every unipotent change of W basis compatible with the flag:
    the conditions become polynomial equations in its entries, solvable (over the algebraic
    closure) exactly when they do not generate the unit ideal.
    """
    cert = gnf_violations(t)
    if not cert:
        return True, []
    if search and _flag_unknowns(t.s, t.r):
        eqs, nv = gnf_w_basis_equations(t)
        if not eqs or not Ideal(eqs, nv).is_unit():
            return True, []
    return False, cert


def cauchy_space(t: Tableau) -> Subspace:
    """S = {v : pi v = 0 for all pi in A}, in adapted coordinates."""
    rows = [row for g in t.generators for row in g.rows]
    if not rows:
        return Subspace.full(t.n)
    return kernel_basis(Mat(rows, ncols=t.n))


def input_cauchy_space(t: Tableau) -> Subspace:
    rows = [row for g in t.input_generators for row in g.rows]
    if not rows:
        return Subspace.full(t.n)
    return kernel_basis(Mat(rows, ncols=t.n))


def restrict(t: Tableau, x: Subspace, seed=0, trials: int = DEFAULT_TRIALS) -> Tableau:
    """Tableau of {pi|_x}; its input coordinates are those of x's canonical basis."""
    if x.ambient_dim != t.n:
        raise ShapeError("subspace does not live in V")
    if x.is_zero():
        raise ValueError("cannot restrict to the zero subspace")
    xmat = Mat.from_columns(list(x.vectors))
    images = [g @ xmat for g in t.generators]
    span = Subspace([m.flat() for m in images], t.r * x.dim)
    gens = [Mat.from_flat(t.r, x.dim, v) for v in span.vectors]
    return from_generators(x.dim, t.r, gens, seed=seed, trials=trials)


def decompose(t: Tableau, pi: Mat) -> Mat:
    """Rebuild pi column by column as sum_lam B^lam_k z_lam with z_lam its free part."""
    cols = []
    for k in range(1, t.n + 1):
        col = [_ZERO] * t.r
        for lam in range(1, t.ell + 1):
            z = [pi[b, lam - 1] if b < t.s[lam - 1] else _ZERO for b in range(t.r)]
            if any(z):
                img = b_matrix(t, lam, k).apply(z)
                col = [x + y for x, y in zip(col, img)]
        cols.append(col)
    return Mat.from_columns(cols)
