"""Sparse multivariate polynomials over Q and Groebner-basis ideal operations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import GeneratorCapExceeded, NonHomogeneous, NotZeroDimensional, VariableMismatch
from .exactalg import Mat, Subspace, format_scalar, kernel_basis, to_scalar

DEFAULT_GENERATOR_CAP = 512

_ONE = Fraction(1)
_ZERO = Fraction(0)

Monomial = tuple  # exponent tuple


# ---------------------------------------------------------------- orders


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex, lex, or a block order: grevlex on the first `split` variables, ties by grevlex on the rest."""

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, m: Monomial):
        if self.kind == "grevlex":
            return _grevlex_key(m)
        if self.kind == "lex":
            return m
        k = self.split
        return (_grevlex_key(m[:k]), _grevlex_key(m[k:]))


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


# ---------------------------------------------------------------- polynomials


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class Poly:
    """Immutable sparse polynomial: a map from exponent tuples to nonzero rationals."""

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: dict | None = None, nvars: int = 0):
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != nvars:
                raise VariableMismatch(f"monomial {m} has wrong length for {nvars} variables")
            c = to_scalar(c)
            if c:
                clean[m] = clean.get(m, _ZERO) + c
                if not clean[m]:
                    del clean[m]
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Poly":
        p = object.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        c = to_scalar(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        m = [0] * nvars
        m[i] = 1
        return cls._raw({tuple(m): _ONE}, nvars)

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "Poly":
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = to_scalar(c)
            if c:
                m = [0] * n
                m[i] = 1
                terms[tuple(m)] = c
        c0 = to_scalar(const)
        if c0:
            terms[(0,) * n] = c0
        return cls._raw(terms, n)

    # structure

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    def leading_monomial(self, order: MonomialOrder = GREVLEX) -> Monomial:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = GREVLEX) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = GREVLEX) -> "Poly":
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    def linear_coefficients(self) -> tuple | None:
        """Coefficient vector if the polynomial is a linear form, else None."""
        out = [_ZERO] * self.nvars
        for m, c in self.terms.items():
            if sum(m) != 1:
                return None
            out[m.index(1)] = c
        return tuple(out)

    # arithmetic

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise VariableMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        return Poly.const(other, self.nvars)

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            v = t.get(m, _ZERO) + c
            if v:
                t[m] = v
            else:
                t.pop(m, None)
        return Poly._raw(t, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = to_scalar(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly._raw({m: c * v for m, v in self.terms.items()}, self.nvars)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        t: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                v = t.get(m, _ZERO) + c1 * c2
                if v:
                    t[m] = v
                else:
                    t.pop(m, None)
        return Poly._raw(t, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        out = Poly.const(1, self.nvars)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def mul_monomial(self, mono: Monomial, c=_ONE) -> "Poly":
        return Poly._raw({_mono_mul(m, mono): c * v for m, v in self.terms.items()}, self.nvars)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # evaluation and change of variables

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise VariableMismatch("point has wrong dimension")
        pt = [to_scalar(x) for x in point]
        total = _ZERO
        for m, c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Compose: replace variable i by images[i] (all images share one variable count)."""
        if len(images) != self.nvars:
            raise VariableMismatch("need one image per variable")
        if not images:
            return self
        target = images[0].nvars
        out = Poly.zero(target)
        cache: dict = {}
        for m, c in self.terms.items():
            term = Poly.const(c, target)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            out = out + term
        return out

    def rename(self, perm: Sequence[int], nvars: int) -> "Poly":
        """Move variable i to position perm[i] in a ring with `nvars` variables."""
        t = {}
        for m, c in self.terms.items():
            nm = [0] * nvars
            for i, e in enumerate(m):
                nm[perm[i]] += e
            t[tuple(nm)] = c
        return Poly._raw(t, nvars)

    def extend(self, extra: int) -> "Poly":
        """Same polynomial in a ring with `extra` more trailing variables."""
        z = (0,) * extra
        return Poly._raw({m + z: c for m, c in self.terms.items()}, self.nvars + extra)

    def drop_trailing(self, k: int) -> "Poly":
        """Inverse of extend; the dropped variables must not occur."""
        n = self.nvars - k
        t = {}
        for m, c in self.terms.items():
            if any(m[n:]):
                raise VariableMismatch("dropped variable occurs in polynomial")
            t[m[:n]] = c
        return Poly._raw(t, n)

    # printing

    def to_str(self, names: Sequence[str] | None = None, order: MonomialOrder = GREVLEX) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            mag = abs(c)
            if not mono:
                body = format_scalar(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_scalar(mag)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({self.to_str()!r}, nvars={self.nvars})"


def variables(n: int) -> list[Poly]:
    return [Poly.var(i, n) for i in range(n)]


# ---------------------------------------------------------------- reduction core
#
# Internally a polynomial is a dict; a basis element is (lm, lc, terms).


def _reduce_full(f: dict, basis: list, key) -> dict:
    """Full remainder of f modulo basis elements (lm, lc, terms)."""
    p = dict(f)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, lc, g in basis:
            if _divides(lm, m):
                q = _mono_div(m, lm)
                coef = c / lc
                for gm, gc in g.items():
                    tm = _mono_mul(gm, q)
                    v = p.get(tm, _ZERO) - coef * gc
                    if v:
                        p[tm] = v
                    else:
                        p.pop(tm, None)
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _monic(f: dict, key) -> tuple:
    lm = max(f, key=key)
    lc = f[lm]
    if lc != 1:
        f = {m: c / lc for m, c in f.items()}
    return lm, _ONE, f


def _spoly(a: tuple, b: tuple) -> dict:
    lma, lca, fa = a
    lmb, lcb, fb = b
    l = _lcm(lma, lmb)
    qa = _mono_div(l, lma)
    qb = _mono_div(l, lmb)
    out: dict = {}
    for m, c in fa.items():
        out[_mono_mul(m, qa)] = c / lca
    for m, c in fb.items():
        tm = _mono_mul(m, qb)
        v = out.get(tm, _ZERO) - c / lcb
        if v:
            out[tm] = v
        else:
            out.pop(tm, None)
    return out


def _groebner(gens: Iterable[dict], n: int, order: MonomialOrder, cap: int) -> list[dict]:
    key = order.key
    polys: list[tuple] = []  # every element ever added, indexed
    active: list[int] = []
    pairs: list[tuple[int, int]] = []

    def update(h: int) -> None:
        nonlocal active, pairs
        lmh = polys[h][0]
        cand = [g for g in active]
        # chain criterion (Gebauer-Moeller form)
        c_list = list(cand)
        d_list: list[int] = []
        while c_list:
            g = c_list.pop(0)
            lg = _lcm(polys[g][0], lmh)
            if _coprime(polys[g][0], lmh) or not any(
                _divides(_lcm(polys[g2][0], lmh), lg) for g2 in c_list + d_list
            ):
                d_list.append(g)
        new_pairs = [(g, h) for g in d_list if not _coprime(polys[g][0], lmh)]
        kept = []
        for g1, g2 in pairs:
            l12 = _lcm(polys[g1][0], polys[g2][0])
            if (
                _divides(lmh, l12)
                and _lcm(polys[g1][0], lmh) != l12
                and _lcm(polys[g2][0], lmh) != l12
            ):
                continue
            kept.append((g1, g2))
        pairs = kept + new_pairs
        active = [g for g in active if not _divides(lmh, polys[g][0])] + [h]

    # seed with the interreduced generators
    seeds = [_monic(f, key) for f in gens if f]
    seeds.sort(key=lambda t: key(t[0]))
    for s in seeds:
        r = _reduce_full(s[2], [polys[g] for g in active], key)
        if r:
            polys.append(_monic(r, key))
            update(len(polys) - 1)
    while pairs:
        best = min(
            range(len(pairs)),
            key=lambda i: key(_lcm(polys[pairs[i][0]][0], polys[pairs[i][1]][0])),
        )
        g1, g2 = pairs.pop(best)
        s = _spoly(polys[g1], polys[g2])
        r = _reduce_full(s, [polys[g] for g in active], key)
        if r:
            polys.append(_monic(r, key))
            if len(active) + 1 > cap:
                raise GeneratorCapExceeded(f"Groebner basis exceeded {cap} generators")
            update(len(polys) - 1)
            if not any(polys[-1][0]):
                return [{(0,) * n: _ONE}]
    # reduce to the unique reduced basis
    elems = [polys[g] for g in active]
    minimal = [
        e for i, e in enumerate(elems)
        if not any(j != i and _divides(o[0], e[0]) and (o[0] != e[0] or j < i) for j, o in enumerate(elems))
    ]
    reduced = []
    for i, e in enumerate(minimal):
        others = [o for j, o in enumerate(minimal) if j != i]
        tail = {m: c for m, c in e[2].items() if m != e[0]}
        r = _reduce_full(tail, others, key)
        r[e[0]] = _ONE
        reduced.append(r)
    reduced.sort(key=lambda f: key(max(f, key=key)), reverse=True)
    return reduced


# ---------------------------------------------------------------- ideals


class Ideal:
    """Ideal in Q[x1..xn]; the reduced Groebner basis, when present, is fixed at construction."""

    __slots__ = ("nvars", "generators", "gb", "order")

    def __init__(self, generators: Iterable[Poly], nvars: int, gb: Sequence[Poly] | None = None,
                 order: MonomialOrder | None = None):
        gens = tuple(generators)
        for g in gens:
            if g.nvars != nvars:
                raise VariableMismatch("generator lives in a different ring")
        self.nvars = nvars
        self.generators = gens
        self.gb = tuple(gb) if gb is not None else None
        self.order = order if gb is not None else None

    def __repr__(self) -> str:
        shown = self.gb if self.gb is not None else self.generators
        return f"Ideal([{', '.join(str(g) for g in shown)}], nvars={self.nvars})"

    def has_gb(self) -> bool:
        return self.gb is not None

    def groebner(self, order: MonomialOrder = GREVLEX, cap: int = DEFAULT_GENERATOR_CAP) -> "Ideal":
        if self.gb is not None and self.order == order:
            return self
        return buchberger(self.generators, order, nvars=self.nvars, cap=cap)

    def is_unit(self) -> bool:
        g = self.groebner(self.order or GREVLEX)
        return len(g.gb) == 1 and g.gb[0].is_constant() and not g.gb[0].is_zero()

    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def contains(self, f: Poly) -> bool:
        return normal_form(f, self.groebner(self.order or GREVLEX)).is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal) or other.nvars != self.nvars:
            return False
        return self.groebner().gb == other.groebner().gb

    def __hash__(self) -> int:
        return hash((self.nvars, self.groebner().gb))

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.nvars != self.nvars:
            raise VariableMismatch("ideals in different rings")
        return Ideal(self.generators + other.generators, self.nvars)

    def leading_monomials(self) -> list[Monomial]:
        g = self.groebner(self.order or GREVLEX)
        return [p.leading_monomial(g.order) for p in g.gb]

    def standard_monomials(self, limit: int = 100000) -> list[Monomial] | None:
        """Monomials outside the leading-term ideal, or None if there are infinitely many."""
        lms = self.leading_monomials()
        n = self.nvars
        if any(not any(m) for m in lms):
            return []
        bounds = []
        for i in range(n):
            pure = [m[i] for m in lms if m[i] and all(e == 0 for j, e in enumerate(m) if j != i)]
            if not pure:
                return None
            bounds.append(min(pure))
        out = []
        stack = [(0,) * n]
        seen = {stack[0]}
        while stack:
            m = stack.pop()
            if any(_divides(l, m) for l in lms):
                continue
            out.append(m)
            if len(out) > limit:
                raise NotZeroDimensional("standard monomial count exceeds limit")
            for i in range(n):
                nm = m[:i] + (m[i] + 1,) + m[i + 1:]
                if nm[i] < bounds[i] and nm not in seen:
                    seen.add(nm)
                    stack.append(nm)
        return sorted(out, key=GREVLEX.key)


def _as_ideal(x, nvars: int | None = None) -> Ideal:
    if isinstance(x, Ideal):
        return x
    x = list(x)
    if nvars is None:
        if not x:
            raise VariableMismatch("cannot infer variable count of an empty generator list")
        nvars = x[0].nvars
    return Ideal(x, nvars)


def buchberger(gens: Iterable[Poly], order: MonomialOrder = GREVLEX, nvars: int | None = None,
               cap: int = DEFAULT_GENERATOR_CAP) -> Ideal:
    """Reduced Groebner basis with the coprime and chain criteria."""
    gens = list(gens)
    if nvars is None:
        if not gens:
            raise VariableMismatch("variable count required for an empty generator list")
        nvars = gens[0].nvars
    for g in gens:
        if g.nvars != nvars:
            raise VariableMismatch("generators live in different rings")
    gb = _groebner((g.terms for g in gens), nvars, order, cap)
    return Ideal(gens, nvars, gb=[Poly._raw(t, nvars) for t in gb], order=order)


def normal_form(f: Poly, gb: Ideal) -> Poly:
    if not gb.has_gb():
        raise ValueError("normal_form needs an ideal with a computed Groebner basis")
    if f.nvars != gb.nvars:
        raise VariableMismatch(f"polynomial has {f.nvars} variables, ideal has {gb.nvars}")
    key = gb.order.key
    basis = [(p.leading_monomial(gb.order), p.leading_coefficient(gb.order), p.terms) for p in gb.gb]
    return Poly._raw(_reduce_full(f.terms, basis, key), f.nvars)


def eliminate(i: Ideal, keep: Iterable[int], cap: int = DEFAULT_GENERATOR_CAP) -> Ideal:
    """i intersected with Q[keep], via a block order with the eliminated variables first."""
    n = i.nvars
    keep = sorted(set(keep))
    drop = [v for v in range(n) if v not in keep]
    if not drop:
        return i.groebner(cap=cap)
    perm = [0] * n
    for pos, v in enumerate(drop + keep):
        perm[v] = pos
    inv = drop + keep
    moved = [g.rename(perm, n) for g in i.generators]
    g = buchberger(moved, block(len(drop)), nvars=n, cap=cap)
    k = len(drop)
    survivors = [p for p in g.gb if not any(any(m[:k]) for m in p.terms)]
    back = [p.rename(inv, n) for p in survivors]
    return buchberger(back, GREVLEX, nvars=n, cap=cap)


def _with_aux(i: Ideal, extra: Sequence[Poly]) -> Ideal:
    return Ideal([g.extend(1) for g in i.generators] + list(extra), i.nvars + 1)


def _drop_aux(i: Ideal, n: int, cap: int) -> Ideal:
    e = eliminate(i, range(n), cap=cap)
    return buchberger([p.drop_trailing(1) for p in e.gb], GREVLEX, nvars=n, cap=cap)


def saturate(i: Ideal, f: Poly, cap: int = DEFAULT_GENERATOR_CAP) -> Ideal:
    """i : f^infinity via 1 - t*f and elimination of t."""
    n = i.nvars
    if f.nvars != n:
        raise VariableMismatch("saturating polynomial lives in a different ring")
    t = Poly.var(n, n + 1)
    aux = Poly.const(1, n + 1) - t * f.extend(1)
    return _drop_aux(_with_aux(i, [aux]), n, cap)


def intersect(i: Ideal, j: Ideal, cap: int = DEFAULT_GENERATOR_CAP) -> Ideal:
    n = i.nvars
    if j.nvars != n:
        raise VariableMismatch("ideals in different rings")
    t = Poly.var(n, n + 1)
    gens = [t * g.extend(1) for g in i.generators] + [(1 - t) * g.extend(1) for g in j.generators]
    return _drop_aux(Ideal(gens, n + 1), n, cap)


def saturate_irrelevant(i: Ideal, cap: int = DEFAULT_GENERATOR_CAP) -> Ideal:
    """Saturation at (x1..xn): the intersection of the saturations by each variable."""
    for g in i.generators:
        if not g.is_homogeneous():
            raise NonHomogeneous(f"generator {g} is not homogeneous")
    n = i.nvars
    if i.is_zero():
        return buchberger([], GREVLEX, nvars=n, cap=cap)
    acc = None
    for k in range(n):
        s = saturate(i, Poly.var(k, n), cap=cap)
        acc = s if acc is None else intersect(acc, s, cap=cap)
    return acc


def linear_part(i: Ideal, forms: Sequence[Poly] | None = None) -> Subspace:
    """Coefficient vectors c with sum_k c_k f_k in i; f defaults to the variables."""
    g = i.groebner()
    fs = list(forms) if forms is not None else variables(i.nvars)
    m = len(fs)
    nfs = [normal_form(f, g) for f in fs]
    monos = sorted({mm for p in nfs for mm in p.terms}, key=GREVLEX.key)
    rows = [[p.terms.get(mm, _ZERO) for p in nfs] for mm in monos]
    if not rows:
        return Subspace.full(m)
    return kernel_basis(Mat(rows))


def ideal_dimension(i: Ideal) -> int:
    """Krull dimension from leading monomials; -1 for the unit ideal."""
    g = i.groebner()
    n = i.nvars
    if any(p.is_constant() and not p.is_zero() for p in g.gb):
        return -1
    supports = [frozenset(k for k, e in enumerate(p.leading_monomial(g.order)) if e) for p in g.gb if p]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            s = set(subset)
            if all(not sup <= s for sup in supports):
                return size
    return 0


def radical_membership(f: Poly, i: Ideal, cap: int = DEFAULT_GENERATOR_CAP) -> bool:
    if f.is_zero():
        return True
    n = i.nvars
    t = Poly.var(n, n + 1)
    aux = Poly.const(1, n + 1) - t * f.extend(1)
    return buchberger(_with_aux(i, [aux]).generators, GREVLEX, nvars=n + 1, cap=cap).is_unit()


# ---------------------------------------------------------------- univariate helpers


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _udivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    q = [_ZERO] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lb
        d = len(a) - len(b)
        q[d] = c
        for j, bj in enumerate(b):
            a[d + j] -= c * bj
        _trim(a)
    return _trim(q), a


def _ugcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _udivmod(a, b)[1]
    return [c / a[-1] for c in a] if a else a


def squarefree_part(p: Sequence) -> list:
    """Coefficients low-to-high of p / gcd(p, p')."""
    p = _trim([to_scalar(c) for c in p])
    if len(p) <= 1:
        return p
    dp = [k * c for k, c in enumerate(p)][1:]
    g = _ugcd(p, dp)
    q, r = _udivmod(p, g)
    assert not r
    return [c / q[-1] for c in q]


def minimal_polynomial(i: Ideal, var: int) -> list:
    """Monic minimal polynomial (low-to-high) of x_var modulo a zero-dimensional ideal."""
    g = i.groebner()
    n = i.nvars
    x = Poly.var(var, n)
    power = Poly.const(1, n)
    vecs: list[dict] = []
    while True:
        nf = normal_form(power, g)
        vecs.append(nf.terms)
        monos = sorted({m for v in vecs for m in v}, key=GREVLEX.key)
        cols = [[v.get(m, _ZERO) for v in vecs] for m in monos]
        # a dependency among the normal forms of 1, x, ..., x^d
        ker = kernel_basis(Mat(cols)) if cols else Subspace.full(len(vecs))
        if ker.dim:
            c = list(ker.vectors[0])
            c = _trim(c)
            return [a / c[-1] for a in c]
        power = normal_form(power * x, g)


def zero_dim_radical(i: Ideal, cap: int = DEFAULT_GENERATOR_CAP) -> Ideal:
    """Seidenberg: adjoin the squarefree part of each variable's minimal polynomial."""
    g = i.groebner(cap=cap)
    if g.is_unit():
        return g
    if g.standard_monomials() is None:
        raise NotZeroDimensional("quotient ring is infinite-dimensional")
    n = i.nvars
    extra = []
    for v in range(n):
        mp = minimal_polynomial(g, v)
        sf = squarefree_part(mp)
        if len(sf) < len(mp):
            x = Poly.var(v, n)
            extra.append(sum((x ** k * c for k, c in enumerate(sf) if c), Poly.zero(n)))
    if not extra:
        return g
    return buchberger(list(g.gb) + extra, GREVLEX, nvars=n, cap=cap)
