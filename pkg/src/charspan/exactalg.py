"""Exact rational linear algebra: scalars, dense matrices and subspaces."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvarianceViolated, ShapeError

Scalar = Fraction
Vector = tuple  # tuple of Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def to_scalar(x) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def parse_scalar(text: str) -> Fraction:
    s = text.strip()
    if not s:
        raise ValueError("empty rational")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_scalar(x: Fraction) -> str:
    x = to_scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Mat:
    """Immutable dense matrix over the rationals."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_scalar(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ShapeError("ragged matrix rows")
            if ncols is not None and ncols != width:
                raise ShapeError("column count mismatch")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    @classmethod
    def _raw(cls, rows: tuple, ncols: int) -> "Mat":
        m = object.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, r: int, c: int) -> "Mat":
        return cls._raw(tuple((_ZERO,) * c for _ in range(r)), c)

    @classmethod
    def identity(cls, d: int) -> "Mat":
        return cls._raw(
            tuple(tuple(_ONE if i == j else _ZERO for j in range(d)) for i in range(d)), d
        )

    @classmethod
    def unit(cls, r: int, c: int, i: int, j: int) -> "Mat":
        rows = [[_ZERO] * c for _ in range(r)]
        rows[i][j] = _ONE
        return cls._raw(tuple(tuple(x) for x in rows), c)

    @classmethod
    def from_flat(cls, r: int, c: int, flat: Sequence) -> "Mat":
        if len(flat) != r * c:
            raise ShapeError("flat length does not match shape")
        vals = [to_scalar(x) for x in flat]
        return cls._raw(tuple(tuple(vals[i * c:(i + 1) * c]) for i in range(r)), c)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "Mat":
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls(zip(*cols)) if cols[0] else cls.zeros(0, len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple:
        return self._rows

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def flat(self) -> tuple:
        return tuple(x for r in self._rows for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self._rows)
        return f"Mat([{body}])"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def T(self) -> "Mat":
        if self.nrows == 0:
            return Mat.zeros(self.ncols, 0)
        return Mat._raw(tuple(zip(*self._rows)), self.nrows)

    def _check_same(self, other: "Mat") -> None:
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        return Mat._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        return Mat._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ncols,
        )

    def __neg__(self) -> "Mat":
        return Mat._raw(tuple(tuple(-a for a in r) for r in self._rows), self.ncols)

    def scale(self, c) -> "Mat":
        c = to_scalar(c)
        return Mat._raw(tuple(tuple(c * a for a in r) for r in self._rows), self.ncols)

    def __rmul__(self, c) -> "Mat":
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other._rows)) if other.nrows else [()] * other.ncols
            out = []
            for r in self._rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                out.append(tuple(sum((a * c[k] for k, a in nz), _ZERO) for c in cols))
            return Mat._raw(tuple(out), other.ncols)
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ShapeError("vector length mismatch")
        nz = [(k, to_scalar(x)) for k, x in enumerate(v) if x]
        return tuple(sum((r[k] * x for k, x in nz), _ZERO) for r in self._rows)

    def __pow__(self, e: int) -> "Mat":
        if not self.is_square():
            raise ShapeError("power of a non-square matrix")
        result = Mat.identity(self.nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def hstack(self, other: "Mat") -> "Mat":
        if self.nrows != other.nrows:
            raise ShapeError("row count mismatch")
        return Mat._raw(tuple(a + b for a, b in zip(self._rows, other._rows)), self.ncols + other.ncols)

    def vstack(self, other: "Mat") -> "Mat":
        if self.ncols != other.ncols:
            raise ShapeError("column count mismatch")
        return Mat._raw(self._rows + other._rows, self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat._raw(tuple(tuple(self._rows[i][j] for j in cols) for i in rows), len(cols))

    def trace(self) -> Fraction:
        return sum((self._rows[i][i] for i in range(min(self.shape))), _ZERO)

    def rank(self) -> int:
        return _rref_rows([list(r) for r in self._rows], self.ncols)[1].__len__()

    def inverse(self) -> "Mat":
        if not self.is_square():
            raise ShapeError("inverse of a non-square matrix")
        d = self.nrows
        aug = [list(r) + [(_ONE if i == j else _ZERO) for j in range(d)] for i, r in enumerate(self._rows)]
        red, piv = _rref_rows(aug, 2 * d)
        if piv[:d] != list(range(d)):
            raise ZeroDivisionError("singular matrix")
        return Mat._raw(tuple(tuple(red[i][d:]) for i in range(d)), d)


def _rref_rows(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """In-place Gauss-Jordan on a list of rows; returns (nonzero rows, pivots)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = _ONE / prow[c]
        if inv != 1:
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    ri = rows[i]
                    for j in nz:
                        ri[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Mat) -> tuple[Mat, list[int], int]:
    """Reduced row echelon form; zero rows kept at the bottom so the shape is unchanged."""
    red, piv = _rref_rows([list(r) for r in m.rows], m.ncols)
    full = [tuple(r) for r in red] + [(_ZERO,) * m.ncols] * (m.nrows - len(red))
    return Mat._raw(tuple(full), m.ncols), piv, len(piv)


class Subspace:
    """A linear subspace of Q^d held by its canonical RREF basis (one vector per row)."""

    __slots__ = ("ambient_dim", "_basis", "_pivots")

    def __init__(self, vectors: Iterable[Sequence], ambient_dim: int):
        rows = [[to_scalar(x) for x in v] for v in vectors]
        for row in rows:
            if len(row) != ambient_dim:
                raise ShapeError("vector length does not match ambient dimension")
        red, piv = _rref_rows(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self._basis = tuple(tuple(r) for r in red)
        self._pivots = tuple(piv)

    @classmethod
    def zero(cls, d: int) -> "Subspace":
        return cls([], d)

    @classmethod
    def full(cls, d: int) -> "Subspace":
        return cls._from_rref(tuple(tuple(_ONE if i == j else _ZERO for j in range(d)) for i in range(d)), tuple(range(d)), d)

    @classmethod
    def _from_rref(cls, basis: tuple, pivots: tuple, d: int) -> "Subspace":
        s = object.__new__(cls)
        s.ambient_dim = d
        s._basis = basis
        s._pivots = pivots
        return s

    @classmethod
    def coordinate(cls, d: int, indices: Iterable[int]) -> "Subspace":
        idx = sorted(set(indices))
        return cls._from_rref(
            tuple(tuple(_ONE if j == i else _ZERO for j in range(d)) for i in idx), tuple(idx), d
        )

    @property
    def dim(self) -> int:
        return len(self._basis)

    @property
    def basis(self) -> Mat:
        return Mat._raw(self._basis, self.ambient_dim)

    @property
    def vectors(self) -> tuple:
        return self._basis

    @property
    def pivots(self) -> tuple:
        return self._pivots

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self._basis == other._basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self._basis))

    def __repr__(self) -> str:
        vs = ", ".join("(" + ", ".join(format_scalar(x) for x in v) + ")" for v in self._basis)
        return f"Subspace(dim={self.dim}/{self.ambient_dim}: {vs})"

    def is_zero(self) -> bool:
        return not self._basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _reduce(self, v: Sequence) -> list:
        w = [to_scalar(x) for x in v]
        for row, p in zip(self._basis, self._pivots):
            c = w[p]
            if c:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        w[j] -= c * row[j]
        return w

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ShapeError("vector length mismatch")
        return not any(self._reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: Sequence) -> tuple:
        """Coefficients of v in the canonical basis; raises if v is not in the span."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(to_scalar(v[p]) for p in self._pivots)

    def issubspace(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        return all(other.contains(v) for v in self._basis)

    __le__ = issubspace

    def _same_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ShapeError("ambient dimension mismatch")

    def join(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return Subspace(self._basis + other._basis, self.ambient_dim)

    __add__ = join

    def annihilator(self) -> "Subspace":
        """{w : <w, v> = 0 for all v in self}, as a subspace of the dual coordinate space."""
        return kernel_basis(Mat._raw(self._basis, self.ambient_dim))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return self.annihilator().join(other.annihilator()).annihilator()

    def image(self, m: Mat) -> "Subspace":
        """Span of m·v over the basis vectors v."""
        if m.ncols != self.ambient_dim:
            raise ShapeError("map does not act on this space")
        return Subspace([m.apply(v) for v in self._basis], m.nrows)

    def preimage(self, m: Mat) -> "Subspace":
        """{v : m·v in self}."""
        if m.nrows != self.ambient_dim:
            raise ShapeError("map does not land in this space")
        ann = self.annihilator().basis
        return kernel_basis(ann @ m) if ann.nrows else Subspace.full(m.ncols)


def kernel_basis(m: Mat) -> Subspace:
    """Null space {v : m·v = 0} in canonical form."""
    n = m.ncols
    red, piv = _rref_rows([list(r) for r in m.rows], n)
    pivset = set(piv)
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        v = [_ZERO] * n
        v[f] = _ONE
        for row, p in zip(red, piv):
            if row[f]:
                v[p] = -row[f]
        vecs.append(v)
    return Subspace(vecs, n)


def solve(m: Mat, b: Sequence) -> tuple | None:
    """One solution x of m·x = b, or None if inconsistent."""
    aug = [list(r) + [to_scalar(bi)] for r, bi in zip(m.rows, b)]
    red, piv = _rref_rows(aug, m.ncols + 1)
    if piv and piv[-1] == m.ncols:
        return None
    x = [_ZERO] * m.ncols
    for row, p in zip(red, piv):
        x[p] = row[-1]
    return tuple(x)


def is_nilpotent(m: Mat) -> bool:
    if not m.is_square():
        raise ShapeError("nilpotency is defined for square matrices only")
    d = m.nrows
    p = m
    # m^k = 0 for some k iff m^d = 0; stop early on a zero power
    for _ in range(d):
        if p.is_zero():
            return True
        p = p @ m
    return p.is_zero() or d == 0


def restrict_endo(m: Mat, s: Subspace) -> Mat:
    """Matrix R of m on s: m·b_j = sum_i R[i][j] b_i over the canonical basis b of s."""
    if not m.is_square() or m.nrows != s.ambient_dim:
        raise ShapeError("endomorphism and subspace dimensions disagree")
    cols = []
    for j, b in enumerate(s.vectors):
        img = m.apply(b)
        if not s.contains(img):
            raise InvarianceViolated(f"basis vector {j} is mapped out of the subspace")
        cols.append(tuple(img[p] for p in s.pivots))
    if not cols:
        return Mat.zeros(0, 0)
    return Mat(zip(*cols))


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), _ZERO)
