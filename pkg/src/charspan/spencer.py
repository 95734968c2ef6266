"""Prolongations, Cartan's test and Spencer cohomology of a tableau.

Prolonged tableaux are stored in full tensor coordinates W (x) (V*)^(rho+1),
flattened row-major: index a*n^(rho+1) + k_0*n^rho + ... + k_rho.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from .exactalg import Mat, Subspace, kernel_basis
from .tableau import Tableau

_ZERO = Fraction(0)


@dataclass(frozen=True)
class ProlongedTableau:
    base: Tableau
    rho: int
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


@dataclass(frozen=True)
class SpencerReport:
    dims_A: tuple  # dim A^(p) for p = 0..len-1
    dims_H: dict  # rho -> dim H^rho, rho = 2..rho_max
    involutive: bool
    bigraded: dict = field(default_factory=dict)  # (p, q) -> dim of the cohomology at A^(p) (x) wedge^q
    cokernels: dict = field(default_factory=dict)  # rho -> dim coker(A^(rho-2) (x) V* -> W (x) wedge^rho V*)


# ---------------------------------------------------------------- tensor helpers


def _slot_swap_index(idx: int, n: int, nslots: int, i: int, j: int) -> int:
    digits = []
    for _ in range(nslots):
        idx, d = divmod(idx, n)
        digits.append(d)
    digits.reverse()
    digits[i], digits[j] = digits[j], digits[i]
    out = 0
    for d in digits:
        out = out * n + d
    return out


def is_symmetric(vec: Sequence, r: int, n: int, nslots: int) -> bool:
    """True iff the tensor in W (x) (V*)^nslots is invariant under every slot transposition."""
    block = n ** nslots
    for i in range(nslots - 1):
        for a in range(r):
            for idx in range(block):
                jdx = _slot_swap_index(idx, n, nslots, i, i + 1)
                if vec[a * block + idx] != vec[a * block + jdx]:
                    return False
    return True


def prolong_space(space: Subspace, outer: int, n: int) -> Subspace:
    """{Q in space (x) (Q^n)* : Q symmetric in its last two slots}.

    `space` lives in Q^(outer * n^j); the result lives in Q^(outer * n^(j+1)).
    """
    d = space.dim
    total = space.ambient_dim
    if d == 0:
        return Subspace.zero(total * n)
    inner = total // outer  # n^j
    prev = inner // n  # n^(j-1): slots before the one being paired
    basis = space.vectors
    # coefficient c[i][m] multiplies basis_i (x) u^m; Q[a, K, k, m] = sum_i c[i][m] basis_i[a, K, k]
    eqs = []
    for a in range(outer):
        for K in range(prev):
            base = a * inner + K * n
            for k in range(n):
                for m in range(k + 1, n):
                    row = [_ZERO] * (d * n)
                    nz = False
                    for i, e in enumerate(basis):
                        x = e[base + k]
                        y = e[base + m]
                        if x:
                            row[i * n + m] += x
                            nz = True
                        if y:
                            row[i * n + k] -= y
                            nz = True
                    if nz:
                        eqs.append(row)
    sol = kernel_basis(Mat(eqs, ncols=d * n)) if eqs else Subspace.full(d * n)
    vecs = []
    for c in sol.vectors:
        v = [_ZERO] * (total * n)
        for i, e in enumerate(basis):
            for m in range(n):
                cm = c[i * n + m]
                if cm:
                    for idx, x in enumerate(e):
                        if x:
                            v[idx * n + m] += cm * x
        vecs.append(v)
    return Subspace(vecs, total * n)


# ---------------------------------------------------------------- prolongation


def base_prolonged(t: Tableau) -> ProlongedTableau:
    return ProlongedTableau(t, 0, t.subspace())


def prolong(p: ProlongedTableau, check: bool = True) -> ProlongedTableau:
    t = p.base
    space = prolong_space(p.space, t.r, t.n)
    if check:
        for v in space.vectors:
            if not is_symmetric(v, t.r, t.n, p.rho + 2):
                raise AssertionError("prolongation is not fully symmetric")
    return ProlongedTableau(t, p.rho + 1, space)


def prolongations(t: Tableau, upto: int) -> list[ProlongedTableau]:
    out = [base_prolonged(t)]
    for _ in range(upto):
        out.append(prolong(out[-1]))
    return out


def cartan_bound(t: Tableau) -> int:
    return sum((k + 1) * sk for k, sk in enumerate(t.s))


def cartan_test(t: Tableau) -> tuple[bool, int, int]:
    dim1 = prolong(base_prolonged(t)).dim
    bound = cartan_bound(t)
    if dim1 > bound:
        raise AssertionError(f"Cartan inequality violated: {dim1} > {bound}")
    return (dim1 == bound, dim1, bound)


# ---------------------------------------------------------------- Spencer complex


def _contractions(upper: Subspace, lower: Subspace | None, r: int, n: int) -> list[Mat]:
    """C_k: coordinates of (basis_i contracted with u_k in the last slot) in lower's basis.

    lower=None means the target is W itself (coordinates are the entries).
    """
    size = upper.ambient_dim // n
    mats = []
    for k in range(n):
        cols = []
        for e in upper.vectors:
            w = [e[j * n + k] for j in range(size)]
            cols.append(lower.coordinates(w) if lower is not None else tuple(w))
        rows_count = lower.dim if lower is not None else size
        mats.append(Mat.from_columns(cols, nrows=rows_count) if cols else Mat.zeros(rows_count, 0))
    return mats


def _wedge_basis(n: int, q: int) -> list[tuple]:
    return list(combinations(range(n), q))


def _delta_matrix(contr: list[Mat], dim_hi: int, dim_lo: int, n: int, q: int) -> Mat:
    """delta: X (x) wedge^q -> Y (x) wedge^(q+1), (P (x) u^I) -> sum_k (P _| u_k) (x) u^k ^ u^I."""
    src = _wedge_basis(n, q)
    dst = _wedge_basis(n, q + 1)
    dst_index = {I: i for i, I in enumerate(dst)}
    ncols = dim_hi * len(src)
    nrows = dim_lo * len(dst)
    rows = [[_ZERO] * ncols for _ in range(nrows)]
    for si, I in enumerate(src):
        for k in range(n):
            if k in I:
                continue
            J = tuple(sorted(I + (k,)))
            sign = -1 if sum(1 for i in I if i < k) % 2 else 1
            di = dst_index[J]
            ck = contr[k]
            for j in range(dim_lo):
                for i in range(dim_hi):
                    c = ck[j, i]
                    if c:
                        rows[j * len(dst) + di][i * len(src) + si] += sign * c
    return Mat(rows, ncols=ncols) if nrows else Mat.zeros(0, ncols)


class SpencerComplex:
    """Bigraded complex A^(p) (x) wedge^q V*, with A^(-1) = W."""

    def __init__(self, t: Tableau, pmax: int):
        self.t = t
        self.pros = prolongations(t, pmax)
        self._contr: dict = {}
        self._delta: dict = {}

    def dim_space(self, p: int) -> int:
        return self.t.r if p == -1 else self.pros[p].dim

    def contraction(self, p: int) -> list[Mat]:
        """From A^(p) to A^(p-1)."""
        if p not in self._contr:
            lower = None if p == 0 else self.pros[p - 1].space
            self._contr[p] = _contractions(self.pros[p].space, lower, self.t.r, self.t.n)
        return self._contr[p]

    def delta(self, p: int, q: int) -> Mat:
        """delta: A^(p) (x) wedge^q -> A^(p-1) (x) wedge^(q+1)."""
        if p < 0:
            raise ValueError("delta starts at A^(0)")
        if (p, q) not in self._delta:
            n = self.t.n
            self._delta[(p, q)] = _delta_matrix(
                self.contraction(p), self.dim_space(p), self.dim_space(p - 1), n, q
            )
        return self._delta[(p, q)]

    def cohomology(self, p: int, q: int) -> int:
        n = self.t.n
        dim_c = self.dim_space(p) * comb(n, q)
        if dim_c == 0:
            return 0
        out_rank = self.delta(p, q).rank() if q < n and p >= 0 else 0
        in_rank = self.delta(p + 1, q - 1).rank() if q >= 1 else 0
        return dim_c - out_rank - in_rank


def spencer_h_dims(t: Tableau, rho_max: int | None = None) -> SpencerReport:
    """H^rho = direct sum of the cohomology at A^(p) (x) wedge^q V* over p + q = rho, p >= 0, q >= 2."""
    n = t.n
    if rho_max is None:
        rho_max = min(n + 1, 3)
    if rho_max > n + 1:
        raise ValueError("rho_max must not exceed n + 1")
    pmax = max(rho_max - 1, 1)
    cx = SpencerComplex(t, pmax)
    bigraded = {}
    dims_H = {}
    for rho in range(2, rho_max + 1):
        total = 0
        for q in range(2, min(rho, n) + 1):
            p = rho - q
            h = cx.cohomology(p, q)
            bigraded[(p, q)] = h
            total += h
        dims_H[rho] = total
    cokernels = {rho: _cokernel(cx, rho) for rho in range(2, min(rho_max, n) + 1)}
    dims_A = tuple(pr.dim for pr in cx.pros)
    return SpencerReport(dims_A, dims_H, all(v == 0 for v in dims_H.values()), bigraded, cokernels)


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _cokernel(cx: SpencerComplex, rho: int) -> int:
    """Cokernel of full skew-symmetrization A^(rho-2) (x) V* -> W (x) wedge^rho V*."""
    t = cx.t
    n, r = t.n, t.r
    space = cx.pros[rho - 2].space
    subsets = _wedge_basis(n, rho)
    perms = [(p, _perm_sign(p)) for p in permutations(range(rho))]
    rows = []
    for e in space.vectors:
        for j in range(n):
            img = []
            for a in range(r):
                for I in subsets:
                    acc = _ZERO
                    for p, sgn in perms:
                        idx = [I[i] for i in p]
                        if idx[-1] != j:
                            continue
                        flat = 0
                        for k in idx[:-1]:
                            flat = flat * n + k
                        v = e[a * n ** (rho - 1) + flat]
                        if v:
                            acc += sgn * v
                    img.append(acc)
            rows.append(img)
    rank = Mat(rows, ncols=r * len(subsets)).rank() if rows else 0
    return r * len(subsets) - rank


# ---------------------------------------------------------------- restricted skewing


def _x_matrix(x: Subspace) -> list:
    return [list(v) for v in x.vectors]


def restrict_slots(vec: Sequence, outer: int, n: int, nslots: int, first: int, x: Subspace) -> list:
    """Restrict V*-slots first..nslots-1 of a tensor in Q^outer (x) (V*)^nslots to X (basis coordinates)."""
    xs = _x_matrix(x)
    m = x.dim
    cur = list(vec)
    shape_n = [n] * nslots
    for slot in range(first, nslots):
        before = 1
        for s in shape_n[:slot]:
            before *= s
        after = 1
        for s in shape_n[slot + 1:]:
            after *= s
        new = [_ZERO] * (outer * before * m * after)
        nb = shape_n[slot]
        for o in range(outer * before):
            for beta in range(m):
                xb = xs[beta]
                for aft in range(after):
                    acc = _ZERO
                    for k in range(nb):
                        c = xb[k]
                        if c:
                            v = cur[(o * nb + k) * after + aft]
                            if v:
                                acc += c * v
                    new[(o * m + beta) * after + aft] = acc
        cur = new
        shape_n[slot] = m
    return cur


def delta_x_kernel(t: Tableau, x: Subspace, rho: int = 0) -> Subspace:
    """{Q in A (x) (X*)^(rho+1) : Q with its A-slot restricted to X is symmetric in all X-slots}.

    Coordinates: W (x) V* (x) (X*)^(rho+1), flattened row-major.
    """
    n, r, m = t.n, t.r, x.dim
    A = t.subspace()
    d = A.dim
    blocks = m ** (rho + 1)
    nunk = d * blocks
    if nunk == 0:
        return Subspace.zero(r * n * blocks)
    restricted = [restrict_slots(e, r, n, 1, 0, x) for e in A.vectors]  # r x m each
    nslots = rho + 2
    total = m ** nslots
    eqs = []
    for a in range(r):
        for idx in range(total):
            for i in range(nslots - 1):
                jdx = _slot_swap_index(idx, m, nslots, i, i + 1)
                if jdx <= idx:
                    continue
                row = [_ZERO] * nunk
                # Q|[a, idx] = sum_i c[i, tail] * restricted_i[a, head]
                h1, t1 = divmod(idx, blocks)
                h2, t2 = divmod(jdx, blocks)
                nz = False
                for ii, e in enumerate(restricted):
                    v1 = e[a * m + h1]
                    v2 = e[a * m + h2]
                    if v1:
                        row[ii * blocks + t1] += v1
                        nz = True
                    if v2:
                        row[ii * blocks + t2] -= v2
                        nz = True
                if nz:
                    eqs.append(row)
    sol = kernel_basis(Mat(eqs, ncols=nunk)) if eqs else Subspace.full(nunk)
    return Subspace([_expand(c, A.vectors, blocks) for c in sol.vectors], r * n * blocks)


def _expand(coeffs: Sequence, basis: Sequence, blocks: int) -> list:
    size = len(basis[0])
    v = [_ZERO] * (size * blocks)
    for i, e in enumerate(basis):
        for tail in range(blocks):
            c = coeffs[i * blocks + tail]
            if c:
                for idx, x in enumerate(e):
                    if x:
                        v[idx * blocks + tail] += c * x
    return v


def e_prolongations(t: Tableau, x: Subspace, upto: int) -> list[Subspace]:
    """E^(0) = ker delta_X in A (x) X*, then E^(rho) = prolongation in the X*-slots."""
    out = [delta_x_kernel(t, x, 0)]
    outer = t.r * t.n
    for _ in range(upto):
        out.append(prolong_space(out[-1], outer, x.dim))
    return out


def restricted_prolongation(t: Tableau, rho: int, x: Subspace) -> Subspace:
    """A^(rho+1) with its last rho+1 slots restricted to X, in W (x) V* (x) (X*)^(rho+1)."""
    pro = prolongations(t, rho + 1)[-1]
    return Subspace(
        [restrict_slots(v, t.r, t.n, rho + 2, 1, x) for v in pro.space.vectors],
        t.r * t.n * x.dim ** (rho + 1),
    )
