"""Sylvester's equation A X - X B = C and the trace-based uniqueness test.

Unique solvability for every right-hand side holds iff the spectra of A
and B are disjoint.  That condition is decided here without touching
eigenvalues: characteristic polynomials are recovered from the power-sum
traces tr(A^k) via Newton's identities, and spectral disjointness is one
resultant (a determinant) away.  The flattened n*m x n*m linear system is
kept as the second, independent route: it solves the equation and its
invertibility must agree with the trace criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ShapeError, ZeroPolynomialError
from .fields import Field
from .matrices import Matrix, solve_linear


@dataclass(frozen=True)
class Polynomial:
    """Coefficients in ascending degree; normalized (no trailing zeros)."""

    field: Field
    coeffs: tuple

    @staticmethod
    def of(field: Field, coeffs) -> "Polynomial":
        cs = [field.coerce(c) for c in coeffs]
        while cs and cs[-1] == field.zero():
            cs.pop()
        return Polynomial(field, tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, value):
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial(self.field, ())
        out = [self.field.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial.of(self.field, out)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial.of(self.field, out)

    def __str__(self):
        from .fields import value_str
        if self.is_zero:
            return "0"
        return " + ".join("%s t^%d" % (value_str(c), i)
                          for i, c in enumerate(self.coeffs) if c != self.field.zero())


def sylvester_solve(a: Matrix, b: Matrix, c: Matrix,
                    tol: Optional[float] = None) -> Optional[Matrix]:
    """Any solution X of A X - X B = C, or None when inconsistent.

    Flattens X row-major into an n*m vector and solves the stacked linear
    system; when the solution is not unique an arbitrary member is
    returned (free variables zero).
    """
    a.field.require_same(b.field)
    a.field.require_same(c.field)
    if not a.is_square or not b.is_square:
        raise ShapeError("A and B must be square")
    n, m = a.rows, b.rows
    if (c.rows, c.cols) != (n, m):
        raise ShapeError("C must be %dx%d" % (n, m))
    zero = a.field.zero()
    rows = []
    rhs = []
    for i in range(n):
        for j in range(m):
            row = [zero] * (n * m)
            for r in range(n):
                row[r * m + j] = row[r * m + j] + a.at(i, r)
            for s in range(m):
                row[i * m + s] = row[i * m + s] - b.at(s, j)
            rows.append(row)
            rhs.append([c.at(i, j)])
    system = Matrix.from_rows(a.field, rows)
    rhs_m = Matrix.from_rows(a.field, rhs)
    sol = solve_linear(system, rhs_m, tol)
    if sol is None:
        return None
    return Matrix(a.field, n, m, sol.entries)


def char_poly_from_traces(a: Matrix) -> Polynomial:
    """Characteristic polynomial det(tI - A) from power sums via Newton.

    Monic of degree n; exact in rational mode (the divisions by k are
    exact over a characteristic-zero field).
    """
    if not a.is_square:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    n = a.rows
    field = a.field
    power_sums = [field.zero()]
    acc = a
    for _ in range(n):
        power_sums.append(acc.trace())
        acc = acc * a
    elem = [field.one()] + [field.zero()] * n
    for k in range(1, n + 1):
        s = field.zero()
        sign = 1
        for i in range(1, k + 1):
            term = elem[k - i] * power_sums[i]
            s = s + term if sign > 0 else s - term
            sign = -sign
        if field.is_exact:
            elem[k] = s / k
        else:
            elem[k] = s / field.coerce(k)
    coeffs = [field.zero()] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = elem[k] if k % 2 == 0 else -elem[k]
    return Polynomial.of(field, coeffs)


def resultant(p: Polynomial, q: Polynomial):
    """Determinant of the Sylvester matrix; nonzero iff p, q share no root.

    Convention: the matrix is assembled with q's coefficient block on top,
    so resultant(t-1, t-2) = 1 and resultant(p, t-c) = p(c).
    """
    if p.is_zero or q.is_zero:
        raise ZeroPolynomialError("resultant of the zero polynomial")
    p.field.require_same(q.field)
    field = p.field
    m, k = p.degree, q.degree
    if m + k == 0:
        return field.one()
    zero = field.zero()
    pdesc = list(reversed(p.coeffs))
    qdesc = list(reversed(q.coeffs))
    rows = []
    for r in range(m):
        rows.append([zero] * r + qdesc + [zero] * (m - 1 - r))
    for r in range(k):
        rows.append([zero] * r + pdesc + [zero] * (k - 1 - r))
    return Matrix.from_rows(field, rows).det()


def sylvester_unique(a: Matrix, b: Matrix, tol: float = 1e-8) -> bool:
    """True iff A X - X B = C has a unique solution for every C.

    Decided purely from traces: resultant of the two trace-recovered
    characteristic polynomials.  Exactly nonzero in rational mode; in
    float modes compared against tol * scale^(n+m) with scale the largest
    entry magnitude (a documented heuristic - resultants scale hard).
    """
    if not a.is_square or not b.is_square:
        raise ShapeError("A and B must be square")
    a.field.require_same(b.field)
    res = resultant(char_poly_from_traces(a), char_poly_from_traces(b))
    if a.field.is_exact:
        return res != 0
    scale = max(a.maxabs(), b.maxabs())
    if scale == 0.0:
        return abs(res) > tol
    return abs(res) > tol * scale ** (a.rows + b.rows)
