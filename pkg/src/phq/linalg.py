"""Exact rational linear algebra: vectors, matrices, subspaces, signatures.

Every scalar is a `fractions.Fraction`, so all results are exact and
independent of evaluation order.  Subspaces are stored with a canonical
reduced-row-echelon basis, which makes subspace equality a plain ``==``.
Matrices act on coordinate columns: ``m.apply(v)`` is the image of the
coordinate vector ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


class NotSymmetricError(ValueError):
    """A symmetric matrix was required."""


def frac(x: int | str | Fraction) -> Fraction:
    """Coerce an int, a Fraction, or a rational string like ``-3/7``.

    Floats are rejected: this library never rounds.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) or isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def vector(entries: Iterable) -> Vector:
    return tuple(frac(e) for e in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def add_vec(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub_vec(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def neg_vec(u: Vector) -> Vector:
    return tuple(-a for a in u)


def scale_vec(s, u: Vector) -> Vector:
    s = frac(s)
    return tuple(s * a for a in u)


def dot(u: Vector, v: Vector) -> Fraction:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def is_zero_vec(u: Vector) -> bool:
    return all(a == 0 for a in u)


@dataclass(frozen=True)
class Matrix:
    """Dense exact matrix, row-major entries."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [vector(r) for r in rows]
        if rows:
            cols = len(rows[0])
            if any(len(r) != cols for r in rows):
                raise DimensionMismatch("ragged rows")
        elif cols is None:
            raise ValueError("empty from_rows needs an explicit column count")
        return cls(len(rows), cols, tuple(e for r in rows for e in r))

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence], rows: int | None = None) -> "Matrix":
        cols = [vector(c) for c in cols]
        if cols:
            rows = len(cols[0])
            if any(len(c) != rows for c in cols):
                raise DimensionMismatch("ragged columns")
        elif rows is None:
            raise ValueError("empty from_cols needs an explicit row count")
        return cls(
            rows, len(cols), tuple(cols[j][i] for i in range(rows) for j in range(len(cols)))
        )

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence) -> "Matrix":
        v = vector(values)
        n = len(v)
        return cls(n, n, tuple(v[i] if i == j else ZERO for i in range(n) for j in range(n)))

    def _same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i},{j}) out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, s) -> "Matrix":
        s = frac(s)
        return Matrix(self.rows, self.cols, tuple(s * a for a in self.entries))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other.entries[k * other.cols + j] for k in range(self.cols)), ZERO))
        return Matrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence) -> Vector:
        v = vector(v)
        if self.cols != len(v):
            raise DimensionMismatch(f"{self.rows}x{self.cols} applied to length-{len(v)} vector")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the pivot columns.

        The result is the unique RREF, independent of row order of the input.
        """
        m = [list(self.row(i)) for i in range(self.rows)]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            pivot_row = next((i for i in range(r, self.rows) if m[i][c] != 0), None)
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            pv = m[r][c]
            if pv != 1:
                m[r] = [e / pv for e in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix.from_rows(m, cols=self.cols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def __str__(self) -> str:
        cells = [[str(self[i, j]) for j in range(self.cols)] for i in range(self.rows)]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if a.rows != b.rows:
        raise DimensionMismatch("hstack needs equal row counts")
    return Matrix.from_rows([a.row(i) + b.row(i) for i in range(a.rows)], cols=a.cols + b.cols)


def vstack(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.cols:
        raise DimensionMismatch("vstack needs equal column counts")
    return Matrix(a.rows + b.rows, a.cols, a.entries + b.entries)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def solve_linear(a: Matrix, b: Sequence) -> Vector | None:
    """Some exact solution of ``a @ x = b``, or None if inconsistent.

    Among all solutions, returns the one with zeros in every free column of
    the RREF (the minimal-support representative for a fixed pivot order),
    so the result is deterministic.
    """
    bv = vector(b)
    if len(bv) != a.rows:
        raise DimensionMismatch(f"matrix has {a.rows} rows, rhs has length {len(bv)}")
    aug = hstack(a, Matrix.from_cols([bv], rows=a.rows))
    red, pivots = aug.rref()
    if a.cols in pivots:
        return None
    x = [ZERO] * a.cols
    for r, c in enumerate(pivots):
        x[c] = red[r, a.cols]
    return tuple(x)


def kernel(a: Matrix) -> Subspace:
    """The exact null space {x : a @ x = 0} as a canonical subspace."""
    red, pivots = a.rref()
    pivot_set = set(pivots)
    basis = []
    for free in (c for c in range(a.cols) if c not in pivot_set):
        v = [ZERO] * a.cols
        v[free] = ONE
        for r, c in enumerate(pivots):
            v[c] = -red[r, free]
        basis.append(tuple(v))
    return Subspace.span(a.cols, basis)


@dataclass(frozen=True)
class Subspace:
    """A linear subspace with its canonical RREF basis (rows)."""

    ambient_dim: int
    basis: tuple[Vector, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        vs = [vector(v) for v in vectors]
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dim {ambient_dim}")
        vs = [v for v in vs if not is_zero_vec(v)]
        if not vs:
            return cls(ambient_dim, ())
        red, pivots = Matrix.from_rows(vs).rref()
        return cls(ambient_dim, tuple(red.row(i) for i in range(len(pivots))))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, tuple(unit_vector(ambient_dim, i) for i in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        w = list(vector(v))
        if len(w) != self.ambient_dim:
            raise DimensionMismatch("vector/ambient dimension mismatch")
        for row in self.basis:
            p = next(i for i, e in enumerate(row) if e != 0)
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        return all(e == 0 for e in w)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def sum_with(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("subspaces in different ambient spaces")
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def basis_matrix(self) -> Matrix:
        """Basis vectors as columns."""
        return Matrix.from_cols(list(self.basis), rows=self.ambient_dim)

    def is_totally_isotropic(self, g: Matrix) -> bool:
        return all(dot(g.apply(u), v) == 0 for u in self.basis for v in self.basis)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Largest subspace contained in both."""
    if u.ambient_dim != v.ambient_dim:
        raise DimensionMismatch("subspaces in different ambient spaces")
    n = u.ambient_dim
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(n)
    columns = list(u.basis) + [neg_vec(w) for w in v.basis]
    coeffs = kernel(Matrix.from_cols(columns, rows=n))
    points = []
    for cv in coeffs.basis:
        p = zero_vector(n)
        for a, w in zip(cv[: u.dim], u.basis):
            p = add_vec(p, scale_vec(a, w))
        points.append(p)
    return Subspace.span(n, points)


def orthogonal_complement(u: Subspace, g: Matrix) -> Subspace:
    """{x : x^T g w = 0 for all w in u} for a symmetric pairing ``g``."""
    if g.rows != g.cols or g.rows != u.ambient_dim:
        raise DimensionMismatch("pairing matrix must be square of the ambient dimension")
    if not g.is_symmetric():
        raise NotSymmetricError("pairing matrix must be symmetric")
    if u.dim == 0:
        return Subspace.full(u.ambient_dim)
    return kernel(Matrix.from_rows([g.apply(w) for w in u.basis]))


def map_image(m: Matrix, u: Subspace) -> Subspace:
    """Image of a subspace under a linear map."""
    return Subspace.span(m.rows, [m.apply(b) for b in u.basis])


def gram_restriction(g: Matrix, vectors: Sequence[Sequence]) -> Matrix:
    """Gram matrix of ``g`` on the given vectors."""
    vs = [vector(v) for v in vectors]
    images = [g.apply(v) for v in vs]
    return Matrix.from_rows([[dot(gu, w) for w in vs] for gu in images], cols=len(vs))


def signature(g: Matrix) -> tuple[int, int]:
    """(positive, negative) inertia of a symmetric matrix, computed exactly.

    Symmetric congruence elimination: a nonzero diagonal entry is pivoted
    away by a Schur complement; when every remaining diagonal entry is zero,
    an off-diagonal block [[0,a],[a,0]] is removed and counted as one plus
    and one minus.  p + q < n exactly when ``g`` is degenerate.
    """
    if g.rows != g.cols:
        raise NotSymmetricError("signature needs a square matrix")
    if not g.is_symmetric():
        raise NotSymmetricError("signature needs a symmetric matrix")
    m = {(i, j): g[i, j] for i in range(g.rows) for j in range(g.cols)}
    active = list(range(g.rows))
    pos = neg = 0
    while active:
        i = next((k for k in active if m[k, k] != 0), None)
        if i is not None:
            d = m[i, i]
            if d > 0:
                pos += 1
            else:
                neg += 1
            rest = [k for k in active if k != i]
            for k in rest:
                for l in rest:
                    m[k, l] = m[k, l] - m[k, i] * m[i, l] / d
            active = rest
            continue
        pair = next(
            ((a, b) for ai, a in enumerate(active) for b in active[ai + 1 :] if m[a, b] != 0),
            None,
        )
        if pair is None:
            break  # remaining block is identically zero: degenerate part
        i, j = pair
        a = m[i, j]
        pos += 1
        neg += 1
        rest = [k for k in active if k != i and k != j]
        # congruence by e_k -> e_k - (m[k,j]/a) e_i - (m[k,i]/a) e_j
        beta = {k: m[k, j] / a for k in rest}
        alpha = {k: m[k, i] / a for k in rest}
        for k in rest:
            for l in rest:
                m[k, l] = (
                    m[k, l]
                    - beta[l] * m[k, i]
                    - alpha[l] * m[k, j]
                    - beta[k] * m[i, l]
                    - alpha[k] * m[j, l]
                    + (beta[k] * alpha[l] + alpha[k] * beta[l]) * a
                )
        active = rest
    return pos, neg
