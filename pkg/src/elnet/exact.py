"""Exact rational scalars, dense matrices and the linear algebra built on them.

Scalars are :class:`fractions.Fraction` (aliased ``Rat``); they are stored in
lowest terms with a positive denominator, which is exactly the normal form we
need for O(1) equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    NotNilpotent,
    ParseError,
    SingularInterior,
    UnsupportedMatrix,
)

Rat = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/4"`` into a Rat.

    Floats are refused: nothing in this package is allowed to go through
    binary floating point.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"not a rational: {value!r}") from None
    raise ParseError(f"not a rational: {value!r}")


def rat_str(q: Fraction) -> str:
    """``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(Fraction(q))


class Mat:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        grid = tuple(tuple(rat(x) for x in row) for row in data)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise DimensionMismatch("ragged matrix rows")
        self.rows = len(grid)
        self.cols = cols
        self.data = grid
        self._hash = None

    @classmethod
    def _raw(cls, grid: tuple, cols: int) -> "Mat":
        # trusted constructor: grid is already a tuple of tuples of Fractions
        m = object.__new__(cls)
        m.rows = len(grid)
        m.cols = cols
        m.data = grid
        m._hash = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Mat":
        cols = rows if cols is None else cols
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, size: int) -> "Mat":
        return cls._raw(
            tuple(tuple(ONE if i == j else ZERO for j in range(size)) for i in range(size)),
            size,
        )

    @classmethod
    def unit(cls, size: int, i: int, j: int) -> "Mat":
        """The matrix unit E_ij (0-based indices)."""
        return cls._raw(
            tuple(
                tuple(ONE if (r, c) == (i, j) else ZERO for c in range(size))
                for r in range(size)
            ),
            size,
        )

    @classmethod
    def from_entries(cls, size: int, entries: Mapping[tuple[int, int], object]) -> "Mat":
        grid = [[ZERO] * size for _ in range(size)]
        for (i, j), v in entries.items():
            grid[i][j] += rat(v)
        return cls(grid, size)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["Mat"]]) -> "Mat":
        rows = []
        for brow in blocks:
            height = brow[0].rows
            for r in range(height):
                line: list = []
                for b in brow:
                    if b.rows != height:
                        raise DimensionMismatch("block heights differ")
                    line.extend(b.data[r])
                rows.append(line)
        return cls(rows)

    @classmethod
    def direct_sum(cls, *mats: "Mat") -> "Mat":
        size = sum(m.rows for m in mats)
        grid = [[ZERO] * size for _ in range(size)]
        off = 0
        for m in mats:
            if not m.is_square:
                raise DimensionMismatch("direct sum needs square summands")
            for i in range(m.rows):
                for j in range(m.cols):
                    grid[off + i][off + j] = m.data[i][j]
            off += m.rows
        return cls._raw(tuple(tuple(r) for r in grid), size)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.cols == other.cols and self.data == other.data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.cols, self.data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rat_str(x) for x in row) for row in self.data)
        return f"Mat[{body}]"

    def _check_same(self, other: "Mat") -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        return Mat._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
            self.cols,
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same(other)
        return Mat._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
            self.cols,
        )

    def __neg__(self) -> "Mat":
        return Mat._raw(tuple(tuple(-a for a in r) for r in self.data), self.cols)

    def scale(self, c) -> "Mat":
        c = rat(c)
        return Mat._raw(tuple(tuple(c * a for a in r) for r in self.data), self.cols)

    def __rmul__(self, c) -> "Mat":
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, Mat):
            return self.scale(other)
        return self @ other

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols_t = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for r in self.data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * col[k] for k, a in nz), ZERO) for col in cols_t))
        return Mat._raw(tuple(out), other.cols)

    def transpose(self) -> "Mat":
        return Mat._raw(tuple(zip(*self.data)) if self.rows else (), self.rows)

    @property
    def T(self) -> "Mat":
        return self.transpose()

    def is_zero(self) -> bool:
        return all(not x for r in self.data for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.transpose()

    def row_sums(self) -> tuple:
        return tuple(sum(r, ZERO) for r in self.data)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Mat":
        return Mat._raw(tuple(tuple(self.data[i][j] for j in cols) for i in rows), len(cols))

    def flat(self) -> tuple:
        return tuple(x for r in self.data for x in r)

    def power(self, k: int) -> "Mat":
        out = Mat.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def inverse(self) -> "Mat":
        """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
        if not self.is_square:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        a = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(self.data)]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            a[col] = [x / p for x in a[col]]
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return Mat._raw(tuple(tuple(r[n:]) for r in a), n)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "data": [[rat_str(x) for x in r] for r in self.data],
        }

    @classmethod
    def from_json(cls, obj) -> "Mat":
        try:
            rows, cols, data = obj["rows"], obj["cols"], obj["data"]
        except (KeyError, TypeError):
            raise ParseError("matrix JSON needs 'rows', 'cols' and 'data'") from None
        if len(data) != rows:
            raise ParseError(f"matrix JSON declares {rows} rows but has {len(data)}")
        for i, r in enumerate(data):
            if len(r) != cols:
                raise ParseError(f"matrix JSON row {i} has {len(r)} entries, expected {cols}")
        return cls(data, cols)


def lie_bracket(a: Mat, b: Mat) -> Mat:
    """Commutator ``ab - ba``."""
    if not (a.is_square and a.shape == b.shape):
        raise DimensionMismatch(f"bracket of {a.shape} and {b.shape}")
    return a @ b - b @ a


def ad_power(x: Mat, y: Mat, k: int) -> Mat:
    """``ad(x)^k (y)``."""
    for _ in range(k):
        y = lie_bracket(x, y)
    return y


def schur_complement(k: Mat, interior: Iterable[int]) -> Mat:
    """``K_B - K_BI K_I^{-1} K_IB``, rows and columns kept in original order."""
    if not k.is_square:
        raise DimensionMismatch("Schur complement of a non-square matrix")
    inner = sorted(set(interior))
    if any(i < 0 or i >= k.rows for i in inner):
        raise DimensionMismatch("interior index out of range")
    outer = [i for i in range(k.rows) if i not in set(inner)]
    kb = k.submatrix(outer, outer)
    if not inner:
        return kb
    try:
        ki_inv = k.submatrix(inner, inner).inverse()
    except ZeroDivisionError:
        raise SingularInterior(
            "interior block is singular: some interior vertex has no path to the boundary"
        ) from None
    return kb - k.submatrix(outer, inner) @ ki_inv @ k.submatrix(inner, outer)


def exp_nilpotent(n: Mat, t) -> Mat:
    """Finite exponential series of a nilpotent matrix."""
    if not n.is_square:
        raise DimensionMismatch("exp of a non-square matrix")
    t = rat(t)
    size = n.rows
    total = Mat.identity(size)
    term = Mat.identity(size)
    for m in range(1, size + 1):
        term = (term @ n).scale(t / m)
        if term.is_zero():
            return total
        total = total + term
    # a size x size nilpotent matrix has N^size = 0 regardless of t
    if not (n.power(size)).is_zero():
        raise NotNilpotent("power series did not terminate within size steps")
    return total


class ScaledMat:
    """A group element ``e^exponent * body``; the transcendental factor stays formal."""

    __slots__ = ("exponent", "body")

    def __init__(self, exponent, body: Mat):
        if not body.is_square:
            raise DimensionMismatch("ScaledMat body must be square")
        self.exponent = rat(exponent)
        self.body = body

    def __mul__(self, other: "ScaledMat") -> "ScaledMat":
        return ScaledMat(self.exponent + other.exponent, self.body @ other.body)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScaledMat):
            return NotImplemented
        return self.exponent == other.exponent and self.body == other.body

    def __hash__(self) -> int:
        return hash((self.exponent, self.body))

    def __repr__(self) -> str:
        return f"ScaledMat(e^{rat_str(self.exponent)} * {self.body!r})"

    @classmethod
    def identity(cls, size: int) -> "ScaledMat":
        return cls(0, Mat.identity(size))


def scaled_exp(m: Mat, t) -> ScaledMat:
    """``exp(tM)`` for ``M = cI + N`` with N nilpotent."""
    if not m.is_square:
        raise UnsupportedMatrix("scaled_exp needs a square matrix")
    diag = {m[i, i] for i in range(m.rows)}
    if len(diag) > 1:
        raise UnsupportedMatrix("diagonal is not constant")
    c = diag.pop() if diag else ZERO
    nil = m - Mat.identity(m.rows).scale(c)
    if not nil.power(m.rows).is_zero():
        raise UnsupportedMatrix("M - cI is not nilpotent")
    t = rat(t)
    return ScaledMat(t * c, exp_nilpotent(nil, t))


class EchelonBasis:
    """Incrementally row-reduced basis of sparse vectors ``{key: Rat}``.

    Keys must be mutually comparable; the pivot of a vector is its smallest
    key with a nonzero coefficient, so reduction is deterministic.
    """

    def __init__(self):
        self._rows: dict = {}  # pivot key -> vector normalized to 1 at pivot

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Mapping) -> dict:
        v = {k: x for k, x in vec.items() if x}
        # rows are fully reduced: no row touches another row's pivot
        for key, row in self._rows.items():
            f = v.get(key)
            if not f:
                continue
            for k, x in row.items():
                nx = v.get(k, ZERO) - f * x
                if nx:
                    v[k] = nx
                else:
                    v.pop(k, None)
        return v

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True iff it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        p = v[piv]
        v = {k: x / p for k, x in v.items()}
        for key, row in self._rows.items():
            f = row.get(piv)
            if f:
                for k, x in v.items():
                    nx = row.get(k, ZERO) - f * x
                    if nx:
                        row[k] = nx
                    else:
                        row.pop(k, None)
        self._rows[piv] = v
        return True

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)


def mat_vector(m: Mat) -> dict:
    """Sparse coordinates of a matrix, keyed by (row, col)."""
    return {(i, j): x for i, r in enumerate(m.data) for j, x in enumerate(r) if x}


def span_dim(vectors: Sequence[Mat]) -> int:
    """Dimension over Q of the span of equally-shaped matrices."""
    vectors = list(vectors)
    if not vectors:
        return 0
    shape = vectors[0].shape
    basis = EchelonBasis()
    for v in vectors:
        if v.shape != shape:
            raise DimensionMismatch(f"shapes {shape} and {v.shape} differ")
        basis.add(mat_vector(v))
    return len(basis)
