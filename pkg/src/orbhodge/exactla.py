"""Exact linear algebra over the rationals and Gaussian rationals.

Scalars are complex numbers a + b*i with rational a, b (GaussRational, built
on fractions.Fraction).  Matrices are immutable and row-major (QiMatrix);
column spans of matrices are Subspace values kept in a canonical reduced
column echelon form, so two subspaces are equal exactly when their stored
bases are equal.  There is no floating point anywhere in this module: rank,
containment and positivity verdicts are decided by exact arithmetic on
reduced fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

Rational = Fraction

Scalar = Union[int, Fraction, "GaussRational"]


class DimensionMismatch(ValueError):
    """Operands live in different ambient spaces or have incompatible shapes."""


class NotHermitian(ValueError):
    """A matrix that must be Hermitian is not."""


class SingularMatrix(ValueError):
    """A matrix that must be invertible is singular."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class GaussRational:
    """A Gaussian rational re + im*i with exact Fraction parts."""

    re: Fraction
    im: Fraction

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def conj(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus re^2 + im^2, an exact rational."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussRational(self.re / n, -self.im / n)

    def __add__(self, other: Scalar) -> "GaussRational":
        other = as_gauss(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> "GaussRational":
        other = as_gauss(other)
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: Scalar) -> "GaussRational":
        return as_gauss(other) - self

    def __mul__(self, other: Scalar) -> "GaussRational":
        other = as_gauss(other)
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "GaussRational":
        return self * as_gauss(other).inverse()

    def __neg__(self) -> "GaussRational":
        return GaussRational(-self.re, -self.im)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __repr__(self) -> str:
        return f"GaussRational({self.re!r}, {self.im!r})"


ZERO = GaussRational(0)
ONE = GaussRational(1)
I = GaussRational(0, 1)


def as_gauss(x: Scalar) -> GaussRational:
    """Promote an int, Fraction or GaussRational to GaussRational."""
    if isinstance(x, GaussRational):
        return x
    return GaussRational(_frac(x))


def i_power(k: int) -> GaussRational:
    """i^k for any integer k."""
    return (ONE, I, -ONE, -I)[k % 4]


@dataclass(frozen=True)
class QiMatrix:
    """Immutable matrix with GaussRational entries, stored row-major."""

    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> "QiMatrix":
        nrows = len(rows)
        if nrows == 0:
            if cols is None:
                cols = 0
            return cls(0, cols, ())
        ncols = len(rows[0])
        if cols is not None and cols != ncols:
            raise DimensionMismatch("row length disagrees with declared column count")
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged rows")
            flat.extend(as_gauss(x) for x in r)
        return cls(nrows, ncols, tuple(flat))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]], rows: Optional[int] = None) -> "QiMatrix":
        if not columns:
            return cls(rows or 0, 0, ())
        nrows = len(columns[0])
        if rows is not None and rows != nrows:
            raise DimensionMismatch("column length disagrees with declared row count")
        return cls.from_rows([[columns[j][i] for j in range(len(columns))] for i in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "QiMatrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QiMatrix":
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence[Scalar]) -> "QiMatrix":
        n = len(diag)
        return cls(n, n, tuple(as_gauss(diag[i]) if i == j else ZERO for i in range(n) for j in range(n)))

    def entry(self, i: int, j: int) -> GaussRational:
        return self.entries[i * self.cols + j]

    def row_list(self, i: int) -> list:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list:
        return [self.row_list(i) for i in range(self.rows)]

    def column(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "QiMatrix":
        return QiMatrix(self.cols, self.rows,
                        tuple(self.entries[i * self.cols + j]
                              for j in range(self.cols) for i in range(self.rows)))

    def conj(self) -> "QiMatrix":
        return QiMatrix(self.rows, self.cols, tuple(x.conj() for x in self.entries))

    def conj_transpose(self) -> "QiMatrix":
        return self.transpose().conj()

    def is_zero(self) -> bool:
        return all(x.is_zero() for x in self.entries)

    def is_real(self) -> bool:
        return all(x.is_real() for x in self.entries)

    def __add__(self, other: "QiMatrix") -> "QiMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix shapes differ")
        return QiMatrix(self.rows, self.cols,
                        tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QiMatrix") -> "QiMatrix":
        return self + (-other)

    def __neg__(self) -> "QiMatrix":
        return QiMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, c: Scalar) -> "QiMatrix":
        c = as_gauss(c)
        return QiMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def __matmul__(self, other: "QiMatrix") -> "QiMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, k, m = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            for j in range(m):
                acc = ZERO
                for t in range(k):
                    x = arow[t]
                    if x.is_zero():
                        continue
                    acc = acc + x * b[t * m + j]
                out.append(acc)
        return QiMatrix(n, m, tuple(out))

    def power(self, k: int) -> "QiMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative power")
        result = QiMatrix.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def apply(self, vector: Sequence[Scalar]) -> list:
        if len(vector) != self.cols:
            raise DimensionMismatch("vector length disagrees with matrix columns")
        vec = [as_gauss(x) for x in vector]
        out = []
        for i in range(self.rows):
            acc = ZERO
            row = self.entries[i * self.cols : (i + 1) * self.cols]
            for x, v in zip(row, vec):
                if not x.is_zero():
                    acc = acc + x * v
            out.append(acc)
        return out

    def hstack(self, other: "QiMatrix") -> "QiMatrix":
        if self.rows != other.rows:
            raise DimensionMismatch("row counts differ")
        rows = [self.row_list(i) + other.row_list(i) for i in range(self.rows)]
        return QiMatrix.from_rows(rows, cols=self.cols + other.cols)

    def vstack(self, other: "QiMatrix") -> "QiMatrix":
        if self.cols != other.cols:
            raise DimensionMismatch("column counts differ")
        return QiMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "QiMatrix":
        return QiMatrix(len(row_idx), len(col_idx),
                        tuple(self.entries[i * self.cols + j] for i in row_idx for j in col_idx))

    def det(self) -> GaussRational:
        if self.rows != self.cols:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.rows
        rows = self.to_rows()
        det = ONE
        for c in range(n):
            pivot_row = None
            for i in range(c, n):
                if not rows[i][c].is_zero():
                    pivot_row = i
                    break
            if pivot_row is None:
                return ZERO
            if pivot_row != c:
                rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
                det = -det
            pivot = rows[c][c]
            det = det * pivot
            inv = pivot.inverse()
            for i in range(c + 1, n):
                f = rows[i][c]
                if f.is_zero():
                    continue
                f = f * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return det

    def inverse(self) -> "QiMatrix":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = [self.row_list(i) + QiMatrix.identity(n).row_list(i) for i in range(n)]
        pivots = _rref(aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(pivots) != n:
            raise SingularMatrix("matrix is singular")
        return QiMatrix.from_rows([row[n:] for row in aug], cols=n)

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(x) for x in self.row_list(i)) for i in range(self.rows)) + "]"


def _rref(rows: list, ncols: int) -> list:
    """In-place reduced row echelon form; returns the pivot column indices."""
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= len(rows):
            break
        pivot_row = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: QiMatrix) -> int:
    rows = m.to_rows()
    return len(_rref(rows, m.cols))


def kernel(m: QiMatrix) -> "Subspace":
    """Null space of m, as a subspace of the domain (dimension = m.cols)."""
    rows = m.to_rows()
    pivots = _rref(rows, m.cols)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    vectors = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        vectors.append(v)
    return Subspace.span(m.cols, vectors)


def image(m: QiMatrix) -> "Subspace":
    """Column space of m, as a subspace of the codomain."""
    return Subspace.span(m.rows, m.columns())


def solve_unique(a: QiMatrix, b: Sequence[Scalar]) -> list:
    """Solve a x = b where a has full column rank; raises if inconsistent."""
    if len(b) != a.rows:
        raise DimensionMismatch("right-hand side length disagrees")
    aug = [a.row_list(i) + [as_gauss(b[i])] for i in range(a.rows)]
    pivots = _rref(aug, a.cols + 1)
    if a.cols in pivots:
        raise ValueError("inconsistent system")
    if len(pivots) != a.cols:
        raise ValueError("solution is not unique")
    x = [ZERO] * a.cols
    for r, p in enumerate(pivots):
        x[p] = aug[r][a.cols]
    return x


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of C^ambient_dim spanned by Gaussian-rational vectors.

    The stored basis matrix (columns = basis vectors) is always the reduced
    column echelon form of any spanning set, so dataclass equality decides
    subspace equality.
    """

    ambient_dim: int
    basis: QiMatrix

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[Scalar]]) -> "Subspace":
        """Canonical subspace spanned by the given vectors (may be dependent)."""
        vecs = [[as_gauss(x) for x in v] for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionMismatch("vector length disagrees with ambient dimension")
        pivots_cols = _rref(vecs, ambient_dim)
        nonzero = vecs[: len(pivots_cols)]
        return cls(ambient_dim, QiMatrix.from_columns(nonzero, rows=ambient_dim))

    @classmethod
    def from_matrix(cls, m: QiMatrix) -> "Subspace":
        return cls.span(m.rows, m.columns())

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, QiMatrix.zeros(ambient_dim, 0))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, QiMatrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list:
        return self.basis.columns()

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def contains_vector(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length disagrees with ambient dimension")
        stacked = self.basis.hstack(QiMatrix.from_columns([list(v)], rows=self.ambient_dim))
        return rank(stacked) == self.dim

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        if other.dim > self.dim:
            return False
        return rank(self.basis.hstack(other.basis)) == self.dim

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_matrix(self.basis.hstack(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of [A | -B] on stacked coefficients."""
        self._check_ambient(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        stacked = self.basis.hstack(-other.basis)
        ker = kernel(stacked)
        vectors = []
        for coeffs in ker.basis.columns():
            vectors.append(self.basis.apply(coeffs[: self.dim]))
        return Subspace.span(self.ambient_dim, vectors)

    def conjugate(self) -> "Subspace":
        return Subspace.span(self.ambient_dim, [[x.conj() for x in v] for v in self.vectors()])

    def apply(self, m: QiMatrix) -> "Subspace":
        """Image of this subspace under the linear map m."""
        if m.cols != self.ambient_dim:
            raise DimensionMismatch("map domain disagrees with ambient dimension")
        return Subspace.from_matrix(m @ self.basis)

    def coordinates_of(self, v: Sequence[Scalar]) -> list:
        """Coordinates of v in the canonical basis; raises if v is outside."""
        return solve_unique(self.basis, list(v))

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")


def sum_all(ambient_dim: int, spaces: Iterable[Subspace]) -> Subspace:
    vectors = []
    for s in spaces:
        if s.ambient_dim != ambient_dim:
            raise DimensionMismatch("subspaces live in different ambient spaces")
        vectors.extend(s.vectors())
    return Subspace.span(ambient_dim, vectors)


def extend_basis(inner: Subspace, outer: Subspace) -> list:
    """Columns of outer's canonical basis that extend inner to outer.

    The returned vectors span a complement of inner in outer; the greedy
    pivot choice over outer's echelon basis makes the result deterministic.
    Raises if inner is not contained in outer.
    """
    if not outer.contains(inner):
        raise ValueError("inner subspace is not contained in outer subspace")
    current = [list(v) for v in inner.vectors()]
    chosen = []
    r = len(current)
    for v in outer.vectors():
        trial = [list(w) for w in current] + [list(v)]
        if len(_rref(trial, inner.ambient_dim)) > r:
            current.append(list(v))
            chosen.append(list(v))
            r += 1
    return chosen


def first_nonpositive_minor(h: QiMatrix) -> Optional[int]:
    """1-based index of the first non-positive leading principal minor.

    Returns None when every leading principal minor is a positive rational,
    which by the Sylvester criterion is equivalent to h being positive
    definite.  h must be Hermitian; the pivots of the uninterrupted
    elimination are then real and the k-th minor is the product of the
    first k pivots.  A zero pivot means a zero minor, which already refutes
    positive definiteness, so no pivoting is ever needed.
    """
    if h.rows != h.cols:
        raise DimensionMismatch("positivity of a non-square matrix")
    if h != h.conj_transpose():
        raise NotHermitian("matrix is not Hermitian")
    n = h.rows
    rows = h.to_rows()
    minor = Fraction(1)
    for k in range(n):
        pivot = rows[k][k]
        if not pivot.is_real():
            raise NotHermitian("elimination produced a non-real pivot")
        minor = minor * pivot.re
        if minor <= 0:
            return k + 1
        inv = pivot.inverse()
        for i in range(k + 1, n):
            f = rows[i][k]
            if f.is_zero():
                continue
            f = f * inv
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[k])]
    return None


def is_positive_definite_hermitian(h: QiMatrix) -> bool:
    """Exact positive definiteness of a Hermitian Gaussian-rational matrix."""
    return first_nonpositive_minor(h) is None
