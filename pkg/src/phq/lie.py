"""Lie algebras given by exact structure constants.

The structure tensor is stored fully: ``structure[i][j]`` is the coordinate
vector of the bracket of basis elements i and j.  The constructor enforces
antisymmetry; the Jacobi identity is a separate check (`check_jacobi`) so
that hand-entered tables can be diagnosed instead of rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .checks import Check
from .linalg import (
    DimensionMismatch,
    Matrix,
    Subspace,
    Vector,
    add_vec,
    frac,
    is_zero_vec,
    kernel,
    neg_vec,
    scale_vec,
    solve_linear,
    vector,
    vstack,
    zero_vector,
)

# A linear endomorphism in the algebra's basis; columns are basis images.
LinearMap = Matrix


@dataclass(frozen=True)
class JacobiViolation:
    i: int
    j: int
    k: int
    residual: Vector

    def describe(self, names: Sequence[str]) -> str:
        return (
            f"Jacobi fails on ({names[self.i]}, {names[self.j]}, {names[self.k]}): "
            f"residual {format_vector(self.residual, names)}"
        )


@dataclass(frozen=True)
class JacobiReport:
    basis_names: tuple[str, ...]
    violations: tuple[JacobiViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "Jacobi: ok"
        lines = ["Jacobi: FAIL"]
        lines += [f"  - {v.describe(self.basis_names)}" for v in self.violations]
        return "\n".join(lines)


def format_vector(v: Vector, names: Sequence[str]) -> str:
    terms = []
    for c, name in zip(v, names):
        if c == 0:
            continue
        if c == 1:
            terms.append(f"+{name}")
        elif c == -1:
            terms.append(f"-{name}")
        else:
            sign = "+" if c > 0 else "-"
            terms.append(f"{sign}{abs(c)}*{name}")
    if not terms:
        return "0"
    out = " ".join(terms)
    return out[1:] if out.startswith("+") else out


@dataclass(frozen=True)
class LieAlgebra:
    basis_names: tuple[str, ...]
    structure: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        n = len(self.basis_names)
        if len(self.structure) != n or any(len(row) != n for row in self.structure):
            raise ValueError("structure tensor must be dim x dim")
        for i in range(n):
            for j in range(n):
                cij = self.structure[i][j]
                if len(cij) != n:
                    raise ValueError("structure constants must be coordinate vectors")
                if cij != neg_vec(self.structure[j][i]):
                    raise ValueError(
                        f"structure constants not antisymmetric at ({i},{j})"
                    )

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @classmethod
    def abelian(cls, names: Sequence[str] | int) -> "LieAlgebra":
        names = _names(names)
        n = len(names)
        zero = zero_vector(n)
        return cls(names, tuple(tuple(zero for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_brackets(
        cls,
        names: Sequence[str] | int,
        brackets: Mapping[tuple[int, int], Mapping[int, int | str | Fraction]],
    ) -> "LieAlgebra":
        """Build from sparse brackets {(i, j): {k: coefficient}} with i < j.

        Antisymmetric counterparts are filled in automatically.
        """
        names = _names(names)
        n = len(names)
        table = [[list(zero_vector(n)) for _ in range(n)] for _ in range(n)]
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"bracket index ({i},{j}) out of range")
            if i >= j:
                raise ValueError(f"brackets must be given with i < j, got ({i},{j})")
            for k, c in coeffs.items():
                if not 0 <= k < n:
                    raise IndexError(f"bracket target {k} out of range")
                table[i][j][k] = frac(c)
                table[j][i][k] = -frac(c)
        return cls(names, tuple(tuple(tuple(r) for r in row) for row in table))

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        """Bilinear, antisymmetric evaluation of the structure tensor."""
        xv, yv = vector(x), vector(y)
        if len(xv) != self.dim or len(yv) != self.dim:
            raise DimensionMismatch("bracket arguments must match the algebra dimension")
        out = zero_vector(self.dim)
        for i, xi in enumerate(xv):
            if xi == 0:
                continue
            for j, yj in enumerate(yv):
                if yj == 0:
                    continue
                cij = self.structure[i][j]
                if not is_zero_vec(cij):
                    out = add_vec(out, scale_vec(xi * yj, cij))
        return out

    def bracket_basis(self, i: int, j: int) -> Vector:
        return self.structure[i][j]

    def adjoint(self, x: Sequence) -> LinearMap:
        """Matrix of y -> [x, y]."""
        xv = vector(x)
        if len(xv) != self.dim:
            raise DimensionMismatch("adjoint argument must match the algebra dimension")
        cols = []
        for j in range(self.dim):
            col = zero_vector(self.dim)
            for i, xi in enumerate(xv):
                if xi != 0:
                    col = add_vec(col, scale_vec(xi, self.structure[i][j]))
            cols.append(col)
        return Matrix.from_cols(cols, rows=self.dim)

    def center(self) -> Subspace:
        """Kernel of all adjoint maps of basis elements, stacked."""
        if self.dim == 0:
            return Subspace.zero(0)
        stacked = self.adjoint(_unit(self.dim, 0))
        for i in range(1, self.dim):
            stacked = vstack(stacked, self.adjoint(_unit(self.dim, i)))
        return kernel(stacked)

    def derived_ideal(self) -> Subspace:
        """Span of all brackets of basis pairs."""
        return Subspace.span(
            self.dim,
            [self.structure[i][j] for i in range(self.dim) for j in range(i + 1, self.dim)],
        )

    def lower_central_series(self) -> list[Subspace]:
        """C0 = g, C(k+1) = [g, Ck]; stops when stationary."""
        series = [Subspace.full(self.dim)]
        while True:
            current = series[-1]
            nxt = Subspace.span(
                self.dim,
                [
                    self.bracket(_unit(self.dim, i), b)
                    for i in range(self.dim)
                    for b in current.basis
                ],
            )
            if nxt == current:
                break
            series.append(nxt)
            if nxt.dim == 0:
                break
        return series

    def nilpotency_index(self) -> int | None:
        """Smallest k with Ck = 0 (abelian algebras have index 1); None if the
        series stabilizes at a nonzero term."""
        series = self.lower_central_series()
        if series[-1].dim != 0:
            return None
        return len(series) - 1

    def is_nilpotent(self) -> bool:
        return self.nilpotency_index() is not None

    def is_abelian(self) -> bool:
        return self.derived_ideal().dim == 0


def _names(names: Sequence[str] | int) -> tuple[str, ...]:
    if isinstance(names, int):
        return tuple(f"e{i + 1}" for i in range(names))
    return tuple(names)


def _unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))


def check_jacobi(algebra: LieAlgebra) -> JacobiReport:
    """Evaluate the Jacobi identity on every basis triple i < j < k."""
    n = algebra.dim
    violations = []
    for i in range(n):
        ei = _unit(n, i)
        for j in range(i + 1, n):
            ej = _unit(n, j)
            for k in range(j + 1, n):
                ek = _unit(n, k)
                res = algebra.bracket(ei, algebra.structure[j][k])
                res = add_vec(res, algebra.bracket(ej, algebra.structure[k][i]))
                res = add_vec(res, algebra.bracket(ek, algebra.structure[i][j]))
                if not is_zero_vec(res):
                    violations.append(JacobiViolation(i, j, k, res))
    return JacobiReport(algebra.basis_names, tuple(violations))


def is_derivation(algebra: LieAlgebra, m: LinearMap) -> Check:
    """Check m[x,y] = [m x, y] + [x, m y] on all basis pairs."""
    n = algebra.dim
    if m.rows != n or m.cols != n:
        raise DimensionMismatch("derivation candidate must be square of the algebra dimension")
    failures = []
    for i in range(n):
        for j in range(i + 1, n):
            lhs = m.apply(algebra.structure[i][j])
            rhs = add_vec(
                algebra.bracket(m.col(i), _unit(n, j)),
                algebra.bracket(_unit(n, i), m.col(j)),
            )
            if lhs != rhs:
                failures.append(
                    f"derivation identity fails on ({algebra.basis_names[i]}, "
                    f"{algebra.basis_names[j]})"
                )
    return Check("derivation", tuple(failures))


def solve_inner(algebra: LieAlgebra, m: LinearMap) -> Vector | None:
    """Some s with adjoint(s) = m, or None.

    The unknown is the coordinate vector of s; the linear system stacks one
    equation per matrix entry of the adjoint.  The representative returned is
    the minimal-support solution for the fixed pivot order, so it is
    reproducible; the full solution set is s + center.
    """
    n = algebra.dim
    if m.rows != n or m.cols != n:
        raise DimensionMismatch("target map must be square of the algebra dimension")
    rows = []
    rhs = []
    for j in range(n):
        for k in range(n):
            rows.append([algebra.structure[i][j][k] for i in range(n)])
            rhs.append(m[k, j])
    return solve_linear(Matrix.from_rows(rows, cols=n), rhs)
