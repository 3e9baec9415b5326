"""Dense matrices over the three scalar kinds, plus tuples of them.

Two linear-algebra engines sit behind one interface:

* exact (rational kind): rows are cleared to integers and reduced with
  fraction-free Bareiss elimination (see ``_kernels``); determinants,
  ranks, nullspaces and solves are exact, with no rounding anywhere.
* float (real/complex kinds): numpy-backed Gauss-Jordan with partial
  pivoting; a pivot counts iff its magnitude exceeds
  ``tol * max(|initial entries|)``, with ``tol`` defaulting to 1e-9.

All values are immutable after construction and every operation is a pure
function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import KindMismatchError, ShapeError, SingularMatrixError
from .fields import Field, Kind, StarMode, abs_value

DEFAULT_FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class Matrix:
    field: Field
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_rows(field: Field, data: Sequence[Sequence]) -> "Matrix":
        rows = len(data)
        if rows == 0:
            raise ShapeError("matrix needs at least one row")
        cols = len(data[0])
        flat = []
        for row in data:
            if len(row) != cols:
                raise ShapeError("ragged rows")
            flat.extend(field.coerce(x) for x in row)
        return Matrix(field, rows, cols, tuple(flat))

    @staticmethod
    def zeros(field: Field, rows: int, cols: int) -> "Matrix":
        return Matrix(field, rows, cols, (field.zero(),) * (rows * cols))

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return Matrix(field, n, n, tuple(o if i == j else z for i in range(n) for j in range(n)))

    @staticmethod
    def unit(field: Field, n: int, i: int, j: int) -> "Matrix":
        """Standard matrix unit E_ij (0-based) in M_n."""
        z, o = field.zero(), field.one()
        return Matrix(field, n, n, tuple(o if (r, c) == (i, j) else z for r in range(n) for c in range(n)))

    @staticmethod
    def diagonal(field: Field, values: Sequence) -> "Matrix":
        n = len(values)
        z = field.zero()
        ent = [z] * (n * n)
        for i, v in enumerate(values):
            ent[i * n + i] = field.coerce(v)
        return Matrix(field, n, n, tuple(ent))

    @staticmethod
    def from_numpy(field: Field, arr) -> "Matrix":
        arr = np.asarray(arr)
        if arr.ndim != 2:
            raise ShapeError("expected a 2-d array")
        if field.kind is Kind.RATIONAL:
            raise KindMismatchError("cannot build exact rationals from a float array")
        caster = float if field.kind is Kind.REAL64 else complex
        return Matrix(field, arr.shape[0], arr.shape[1],
                      tuple(caster(x) for x in arr.reshape(-1)))

    # -- basic access ------------------------------------------------------

    def at(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def __getitem__(self, ij):
        return self.at(*ij)

    def row_list(self) -> list:
        n = self.cols
        e = self.entries
        return [list(e[i * n:(i + 1) * n]) for i in range(self.rows)]

    def to_numpy(self):
        if self.field.kind is Kind.RATIONAL:
            dtype = float
        elif self.field.kind is Kind.REAL64:
            dtype = np.float64
        else:
            dtype = np.complex128
        return np.array([dtype(x) for x in self.entries], dtype=dtype).reshape(self.rows, self.cols)

    def astype(self, field: Field) -> "Matrix":
        """Explicit kind conversion (e.g. exact rationals to float64)."""
        if field.kind is Kind.RATIONAL and self.field.kind is not Kind.RATIONAL:
            raise KindMismatchError("cannot convert floats back to exact rationals")
        if field.kind is Kind.REAL64 and self.field.kind is Kind.COMPLEX128:
            raise KindMismatchError("cannot convert complex to real")
        caster = {Kind.RATIONAL: Fraction, Kind.REAL64: float, Kind.COMPLEX128: complex}[field.kind]
        return Matrix(field, self.rows, self.cols, tuple(caster(x) for x in self.entries))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def _same_field(self, other: "Matrix"):
        self.field.require_same(other.field)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("addition shape mismatch")
        return Matrix(self.field, self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("subtraction shape mismatch")
        return Matrix(self.field, self.rows, self.cols,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, tuple(-a for a in self.entries))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self._matmul(other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def scale(self, scalar) -> "Matrix":
        s = self.field.coerce(scalar)
        return Matrix(self.field, self.rows, self.cols, tuple(s * a for a in self.entries))

    def _matmul(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise ShapeError("product shape mismatch: %dx%d by %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        n, m, k = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            for j in range(k):
                acc = self.field.zero()
                for t in range(m):
                    acc += arow[t] * b[t * k + j]
                out.append(acc)
        return Matrix(self.field, n, k, tuple(out))

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    # -- involution and scalar maps ---------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def conj(self) -> "Matrix":
        f = self.field
        return Matrix(f, self.rows, self.cols, tuple(f.conj_scalar(x) for x in self.entries))

    def star(self) -> "Matrix":
        """Transpose, or conjugate transpose in conjugate star mode."""
        out = self.transpose()
        if self.field.star_mode is StarMode.CONJUGATE_TRANSPOSE:
            out = out.conj()
        return out

    def trace(self):
        if not self.is_square:
            raise ShapeError("trace of a non-square matrix")
        acc = self.field.zero()
        for i in range(self.rows):
            acc += self.at(i, i)
        return acc

    def maxabs(self) -> float:
        return max((abs_value(x) for x in self.entries), default=0.0)

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.field.is_exact:
            return all(x == 0 for x in self.entries)
        return self.maxabs() <= tol

    def approx_eq(self, other: "Matrix", tol: float = 0.0) -> bool:
        self._same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        if self.field.is_exact:
            return self.entries == other.entries
        return max((abs_value(a - b) for a, b in zip(self.entries, other.entries)), default=0.0) <= tol

    def __str__(self):
        from .fields import value_str
        body = "\n".join("  [" + ", ".join(value_str(self.at(i, j)) for j in range(self.cols)) + "]"
                         for i in range(self.rows))
        return "Matrix %dx%d (%s)\n%s" % (self.rows, self.cols, self.field.kind.value, body)

    # -- linear algebra ----------------------------------------------------

    def det(self):
        if not self.is_square:
            raise ShapeError("determinant of a non-square matrix")
        if self.field.is_exact:
            return _exact_det(self)
        return _float_det(self)

    def rank(self, tol: Optional[float] = None) -> int:
        if self.field.is_exact:
            _require_exact_tol(tol)
            rows, _ = _int_rows(self)
            _, pivots, _ = _kern.echelon_int(rows)
            return len(pivots)
        _, pivots = _float_rref(self.to_numpy(), _float_tol(tol))
        return len(pivots)

    def nullspace(self, tol: Optional[float] = None) -> list:
        """Basis of the right kernel, as column vectors (cols x 1 matrices)."""
        if self.field.is_exact:
            _require_exact_tol(tol)
            return _exact_nullspace(self)
        return _float_nullspace(self, _float_tol(tol))

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise ShapeError("inverse of a non-square matrix")
        n = self.rows
        if self.field.is_exact:
            sol = _exact_solve(self, Matrix.identity(self.field, n))
            if sol is None:
                raise SingularMatrixError("matrix is singular")
            return sol
        a = self.to_numpy()
        if self.rank() < n:
            raise SingularMatrixError("matrix is singular at tolerance")
        inv = np.linalg.solve(a, np.eye(n, dtype=a.dtype))
        residual = np.max(np.abs(a @ inv - np.eye(n)))
        if residual > 1e-6 * max(1.0, np.max(np.abs(a)) * np.max(np.abs(inv))):
            raise SingularMatrixError("inverse failed verification (residual %.3g)" % residual)
        return Matrix.from_numpy(self.field, inv)


# -- free-function spellings of the core operations -------------------------

def star(m: Matrix) -> Matrix:
    return m.star()


def trace(m: Matrix):
    return m.trace()


def det(m: Matrix):
    return m.det()


def rank(m: Matrix, tol: Optional[float] = None) -> int:
    return m.rank(tol)


def inverse(m: Matrix) -> Matrix:
    return m.inverse()


def nullspace(m: Matrix, tol: Optional[float] = None) -> list:
    return m.nullspace(tol)


# -- tuples ------------------------------------------------------------------

@dataclass(frozen=True)
class MatrixTuple:
    field: Field
    n: int
    d: int
    matrices: tuple

    @staticmethod
    def of(*matrices: Matrix) -> "MatrixTuple":
        if not matrices:
            raise ShapeError("empty tuple")
        first = matrices[0]
        if not first.is_square:
            raise ShapeError("tuple members must be square")
        for m in matrices:
            first._same_field(m)
            if (m.rows, m.cols) != (first.rows, first.cols):
                raise ShapeError("tuple members must share n")
        return MatrixTuple(first.field, first.rows, len(matrices), tuple(matrices))

    def __getitem__(self, i: int) -> Matrix:
        return self.matrices[i]

    def __iter__(self):
        return iter(self.matrices)

    def stars(self) -> tuple:
        return tuple(m.star() for m in self.matrices)

    def maxabs(self) -> float:
        return max(m.maxabs() for m in self.matrices)

    def astype(self, field: Field) -> "MatrixTuple":
        return MatrixTuple.of(*(m.astype(field) for m in self.matrices))

    def conjugated(self, p: Matrix) -> "MatrixTuple":
        """Componentwise p . X_i . p^{-1}."""
        pinv = p.inverse()
        return MatrixTuple.of(*(p * m * pinv for m in self.matrices))

    def star_conjugated(self, o: Matrix) -> "MatrixTuple":
        """Componentwise o . X_i . star(o)."""
        ostar = o.star()
        return MatrixTuple.of(*(o * m * ostar for m in self.matrices))


# -- exact engine -------------------------------------------------------------

from . import _kernels as _kern  # noqa: E402  (import placed after Matrix for readability)


def _require_exact_tol(tol):
    if tol not in (None, 0, 0.0):
        raise KindMismatchError("exact mode takes tol=0 (got %r)" % (tol,))


def _float_tol(tol):
    if tol is None:
        return DEFAULT_FLOAT_TOL
    if tol < 0:
        raise ShapeError("tolerance must be nonnegative")
    return tol


def _int_rows(m: Matrix):
    """Clear denominators row by row; returns (int rows, per-row scale factors).

    Row scaling preserves rank, nullspace and solvability; determinants are
    corrected by the product of scales.
    """
    out = []
    scales = []
    for i in range(m.rows):
        row = [m.at(i, j) for j in range(m.cols)]
        denom = 1
        for x in row:
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
        out.append([int(x * denom) for x in row])
        scales.append(denom)
    return out, scales


def _exact_det(m: Matrix):
    rows, scales = _int_rows(m)
    n = m.rows
    if n == 0:
        return Fraction(1)
    d = _kern.det_int(rows)
    scale = 1
    for s in scales:
        scale *= s
    return Fraction(d, scale)


def _exact_nullspace(m: Matrix) -> list:
    rows, _ = _int_rows(m)
    ech, pivots, _ = _kern.echelon_int(rows)
    ncols = m.cols
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            if pc > f:
                continue
            acc = Fraction(0)
            row = ech[r]
            for j in range(pc + 1, ncols):
                if v[j]:
                    acc += row[j] * v[j]
            v[pc] = -acc / row[pc]
        basis.append(Matrix(m.field, ncols, 1, tuple(v)))
    return basis


def _exact_solve(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """One exact solution of a X = b, or None when inconsistent.

    Free variables are set to zero.  ``b`` may have several columns.
    """
    if a.rows != b.rows:
        raise ShapeError("solve shape mismatch")
    flat = []
    for i in range(a.rows):
        flat.extend(a.entries[i * a.cols:(i + 1) * a.cols])
        flat.extend(b.entries[i * b.cols:(i + 1) * b.cols])
    aug = Matrix(a.field, a.rows, a.cols + b.cols, tuple(flat))
    rows, _ = _int_rows(aug)
    ech, pivots, _ = _kern.echelon_int(rows)
    ncols_a = a.cols
    for r, pc in enumerate(pivots):
        if pc >= ncols_a:
            return None  # pivot in the right-hand block: inconsistent
    nsol = b.cols
    sol = [[Fraction(0)] * nsol for _ in range(ncols_a)]
    for r in range(len(pivots) - 1, -1, -1):
        pc = pivots[r]
        row = ech[r]
        for col in range(nsol):
            acc = Fraction(row[ncols_a + col])
            for j in range(pc + 1, ncols_a):
                sj = sol[j][col]
                if sj:
                    acc -= row[j] * sj
            sol[pc][col] = acc / row[pc]
    flat = tuple(sol[i][j] for i in range(ncols_a) for j in range(nsol))
    return Matrix(a.field, ncols_a, nsol, flat)


def solve_linear(a: Matrix, b: Matrix, tol: Optional[float] = None) -> Optional[Matrix]:
    """Any solution of a X = b (free variables zero), or None if inconsistent."""
    a._same_field(b)
    if a.rows != b.rows:
        raise ShapeError("solve shape mismatch")
    if a.field.is_exact:
        _require_exact_tol(tol)
        return _exact_solve(a, b)
    t = _float_tol(tol)
    an, bn = a.to_numpy(), b.to_numpy()
    aug = np.hstack([an, bn])
    rref, pivots = _float_rref(aug, t)
    for pc in pivots:
        if pc >= a.cols:
            return None
    sol = np.zeros((a.cols, b.cols), dtype=rref.dtype)
    for r, pc in enumerate(pivots):
        sol[pc, :] = rref[r, a.cols:]
    return Matrix.from_numpy(a.field, sol)


# -- float engine --------------------------------------------------------------

def _float_rref(a, tol: float):
    """Gauss-Jordan with partial pivoting.

    A pivot counts iff its magnitude exceeds ``tol * max |initial entry|``.
    Returns the reduced matrix (pivot entries 1, pivot columns cleared) and
    the list of pivot columns.
    """
    a = np.array(a, dtype=np.complex128 if np.iscomplexobj(a) else np.float64)
    nrows, ncols = a.shape
    scale = np.max(np.abs(a)) if a.size else 0.0
    thresh = tol * scale
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        i = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[i, c]) <= thresh:
            continue
        if i != r:
            a[[r, i], :] = a[[i, r], :]
        a[r, :] = a[r, :] / a[r, c]
        col = a[:, c].copy()
        col[r] = 0.0
        a -= np.outer(col, a[r, :])
        pivots.append(c)
        r += 1
    return a, pivots


def _float_det(m: Matrix):
    val = np.linalg.det(m.to_numpy())
    return complex(val) if m.field.is_complex else float(val)


def _float_nullspace(m: Matrix, tol: float) -> list:
    rref, pivots = _float_rref(m.to_numpy(), tol)
    ncols = m.cols
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free_cols:
        v = np.zeros(ncols, dtype=rref.dtype)
        v[f] = 1.0
        for r, pc in enumerate(pivots):
            v[pc] = -rref[r, f]
        basis.append(Matrix.from_numpy(m.field, v.reshape(ncols, 1)))
    return basis
