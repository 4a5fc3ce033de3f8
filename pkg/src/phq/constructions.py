"""Forward constructions of metric Lie algebras with complex structures.

Covers orthogonal direct sums, the one-line and the four-dimensional (plane)
double extensions, cotangent-type extensions twisted by a cyclic 2-cocycle,
tensoring with an invariant-form commutative algebra, and complexification.
Every construction either validates its input eagerly or is total.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .checks import Check
from .lie import LieAlgebra, LinearMap, is_derivation
from .linalg import (
    Matrix,
    Vector,
    add_vec,
    commutator,
    dot,
    frac,
    is_zero_vec,
    neg_vec,
    scale_vec,
    sub_vec,
    unit_vector,
    vector,
    zero_vector,
)
from .structures import PHQAlgebra, check_complex

ZERO = Fraction(0)
ONE = Fraction(1)


class InvalidDerivation(ValueError):
    pass


class InvalidExtensionData(ValueError):
    def __init__(self, report: Check):
        super().__init__("; ".join(report.failures))
        self.report = report


class InvalidCocycle(ValueError):
    pass


class InvalidAlgebraData(ValueError):
    pass


class InvalidParameter(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticAlgebra:
    """A Lie algebra with an invariant metric but no complex structure."""

    algebra: LieAlgebra
    phi: Matrix

    @property
    def dim(self) -> int:
        return self.algebra.dim


def _unique_names(first: Sequence[str], second: Sequence[str]) -> tuple[str, ...]:
    out = list(first)
    seen = set(out)
    for name in second:
        while name in seen:
            name = name + "'"
        seen.add(name)
        out.append(name)
    return tuple(out)


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    n, m = a.rows, b.rows
    rows = []
    for i in range(n):
        rows.append(list(a.row(i)) + [ZERO] * m)
    for i in range(m):
        rows.append([ZERO] * n + list(b.row(i)))
    return Matrix.from_rows(rows, cols=n + m)


def direct_sum(p: PHQAlgebra, q: PHQAlgebra) -> PHQAlgebra:
    """Orthogonal direct sum: block-diagonal brackets, j, and phi."""
    n, m = p.dim, q.dim
    names = _unique_names(p.basis_names, q.basis_names)
    table = []
    for i in range(n + m):
        row = []
        for j in range(n + m):
            if i < n and j < n:
                row.append(p.algebra.structure[i][j] + zero_vector(m))
            elif i >= n and j >= n:
                row.append(zero_vector(n) + q.algebra.structure[i - n][j - n])
            else:
                row.append(zero_vector(n + m))
        table.append(tuple(row))
    return PHQAlgebra(
        LieAlgebra(names, tuple(table)),
        _block_diag(p.j, q.j),
        _block_diag(p.phi, q.phi),
    )


def is_skewsymmetric(m: Matrix, g: Matrix) -> bool:
    """m^T g + g m = 0, i.e. g(mx, y) = -g(x, my)."""
    return (m.transpose() @ g + g @ m).is_zero()


def line_double_extension(base: QuadraticAlgebra, d: LinearMap) -> QuadraticAlgebra:
    """Central line plus derivation line over a quadratic algebra.

    New basis (z, base..., v) with [x, y] = [x, y]_0 + phi_0(dx, y) z and
    [v, x] = dx; the pairing gains the single hyperbolic coupling
    phi(z, v) = 1.  Requires d to be a phi_0-skewsymmetric derivation.
    """
    g0, phi0 = base.algebra, base.phi
    n = g0.dim
    if not is_skewsymmetric(d, phi0):
        raise InvalidDerivation("extension map is not skewsymmetric for the metric")
    drep = is_derivation(g0, d)
    if not drep.ok:
        raise InvalidDerivation("extension map is not a derivation")

    names = _unique_names(("z",), _unique_names(g0.basis_names, ("v",)))
    total = n + 2
    z, v = 0, n + 1

    def emb(x: Vector) -> Vector:
        return (ZERO,) + x + (ZERO,)

    table = [[zero_vector(total) for _ in range(total)] for _ in range(total)]
    for i in range(n):
        di = d.col(i)
        for j in range(n):
            val = emb(g0.structure[i][j])
            coeff = dot(phi0.apply(di), unit_vector(n, j))
            val = add_vec(val, scale_vec(coeff, unit_vector(total, z)))
            table[1 + i][1 + j] = val
        table[v][1 + i] = emb(di)
        table[1 + i][v] = neg_vec(emb(di))

    phi_rows = [[ZERO] * total for _ in range(total)]
    phi_rows[z][v] = phi_rows[v][z] = ONE
    for i in range(n):
        for j in range(n):
            phi_rows[1 + i][1 + j] = phi0[i, j]
    return QuadraticAlgebra(
        LieAlgebra(names, tuple(tuple(r) for r in table)),
        Matrix.from_rows(phi_rows),
    )


def validate_extension_data(
    base: PHQAlgebra, d: LinearMap, f: LinearMap, s0: Sequence
) -> Check:
    """All hypotheses for the plane double extension, as a report.

    Checks: d and f are phi-skewsymmetric derivations, f + j d commutes with
    j, and the adjoint of s0 equals the commutator f d - d f entrywise.
    """
    failures = []
    s0v = vector(s0)
    n = base.dim
    if len(s0v) != n or d.rows != n or d.cols != n or f.rows != n or f.cols != n:
        return Check("extension data", ("shape mismatch with the base algebra",))
    for name, m in (("D", d), ("F", f)):
        if not is_skewsymmetric(m, base.phi):
            failures.append(f"{name} is not skewsymmetric for the base metric")
        if not is_derivation(base.algebra, m).ok:
            failures.append(f"{name} is not a derivation of the base")
    if not commutator(f + base.j @ d, base.j).is_zero():
        failures.append("[F + J D, J] != 0")
    if base.algebra.adjoint(s0v) != commutator(f, d):
        failures.append("ad(s0) != F D - D F")
    return Check("extension data", tuple(failures))


@dataclass(frozen=True)
class ExtensionData:
    """Input of the plane double extension; validated on construction."""

    base: PHQAlgebra
    d: LinearMap
    f: LinearMap
    s0: Vector

    def __post_init__(self):
        object.__setattr__(self, "s0", vector(self.s0))
        report = validate_extension_data(self.base, self.d, self.f, self.s0)
        if not report.ok:
            raise InvalidExtensionData(report)


def swap_df(data: ExtensionData) -> ExtensionData:
    """The equivalent extension datum (D1, F1) = (-F, D) with the same s0."""
    return ExtensionData(data.base, -data.f, data.d, data.s0)


def phq_double_extension(data: ExtensionData) -> PHQAlgebra:
    """Four-dimensional double extension by a hyperbolic plane pair.

    New basis, in this normative order: (z, z', base..., v', v).  Brackets:

        [v, v'] = s0
        [v,  x] = F x - phi0(s0, x) z'
        [v', x] = D x + phi0(s0, x) z
        [x,  y] = [x, y]_0 + phi0(D x, y) z' + phi0(F x, y) z

    with pairings phi(z, v) = phi(z', v') = 1 on top of phi0, and the complex
    structure extended by j z = z', j v = v'.  The output metric signature is
    the base signature plus (2, 2).
    """
    base, d, f, s0 = data.base, data.d, data.f, data.s0
    g0, phi0, j0 = base.algebra, base.phi, base.j
    n = g0.dim
    total = n + 4
    z, zp = 0, 1
    vp, v = n + 2, n + 3

    names = _unique_names(("z", "z'"), _unique_names(g0.basis_names, ("v'", "v")))

    def emb(x: Vector) -> Vector:
        return (ZERO, ZERO) + x + (ZERO, ZERO)

    phi_s0 = phi0.apply(s0)

    table = [[zero_vector(total) for _ in range(total)] for _ in range(total)]

    def put(i: int, j: int, val: Vector) -> None:
        table[i][j] = val
        table[j][i] = neg_vec(val)

    put(v, vp, emb(s0))
    for i in range(n):
        fi, di = f.col(i), d.col(i)
        ci = phi_s0[i]
        put(v, 2 + i, sub_vec(emb(fi), scale_vec(ci, unit_vector(total, zp))))
        put(vp, 2 + i, add_vec(emb(di), scale_vec(ci, unit_vector(total, z))))
    phi_d = [phi0.apply(d.col(i)) for i in range(n)]
    phi_f = [phi0.apply(f.col(i)) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            val = emb(g0.structure[i][j])
            val = add_vec(val, scale_vec(phi_d[i][j], unit_vector(total, zp)))
            val = add_vec(val, scale_vec(phi_f[i][j], unit_vector(total, z)))
            put(2 + i, 2 + j, val)

    j_cols = [zero_vector(total) for _ in range(total)]
    j_cols[z] = unit_vector(total, zp)
    j_cols[zp] = neg_vec(unit_vector(total, z))
    j_cols[v] = unit_vector(total, vp)
    j_cols[vp] = neg_vec(unit_vector(total, v))
    for i in range(n):
        j_cols[2 + i] = emb(j0.col(i))

    phi_rows = [[ZERO] * total for _ in range(total)]
    phi_rows[z][v] = phi_rows[v][z] = ONE
    phi_rows[zp][vp] = phi_rows[vp][zp] = ONE
    for i in range(n):
        for j in range(n):
            phi_rows[2 + i][2 + j] = phi0[i, j]

    return PHQAlgebra(
        LieAlgebra(names, tuple(tuple(r) for r in table)),
        Matrix.from_cols(j_cols, rows=total),
        Matrix.from_rows(phi_rows),
    )


@dataclass(frozen=True)
class Cocycle:
    """An antisymmetric bilinear map into the dual, values[i][j] in dual coords."""

    values: tuple[tuple[Vector, ...], ...]

    def __post_init__(self):
        n = len(self.values)
        for i in range(n):
            if len(self.values[i]) != n:
                raise ValueError("cocycle tensor must be dim x dim")
            for j in range(n):
                if len(self.values[i][j]) != n:
                    raise ValueError("cocycle values must be dual coordinate vectors")
                if self.values[i][j] != neg_vec(self.values[j][i]):
                    raise ValueError(f"cocycle not antisymmetric at ({i},{j})")

    @property
    def dim(self) -> int:
        return len(self.values)

    @classmethod
    def zero(cls, dim: int) -> "Cocycle":
        z = zero_vector(dim)
        return cls(tuple(tuple(z for _ in range(dim)) for _ in range(dim)))

    @classmethod
    def from_values(
        cls, dim: int, entries: Mapping[tuple[int, int], Mapping[int, int | str | Fraction]]
    ) -> "Cocycle":
        """Sparse constructor: {(i, j): {k: value of theta(ei, ej) on ek}} with i < j."""
        table = [[list(zero_vector(dim)) for _ in range(dim)] for _ in range(dim)]
        for (i, j), duals in entries.items():
            if i >= j:
                raise ValueError("cocycle entries must be given with i < j")
            for k, c in duals.items():
                table[i][j][k] = frac(c)
                table[j][i][k] = -frac(c)
        return cls(tuple(tuple(tuple(r) for r in row) for row in table))

    def evaluate(self, x: Sequence, y: Sequence) -> Vector:
        """Bilinear value theta(x, y) as a dual coordinate vector."""
        xv, yv = vector(x), vector(y)
        out = zero_vector(self.dim)
        for i, xi in enumerate(xv):
            if xi == 0:
                continue
            for j, yj in enumerate(yv):
                if yj == 0 or is_zero_vec(self.values[i][j]):
                    continue
                out = add_vec(out, scale_vec(xi * yj, self.values[i][j]))
        return out

    def scale(self, s) -> "Cocycle":
        s = frac(s)
        return Cocycle(
            tuple(tuple(scale_vec(s, v) for v in row) for row in self.values)
        )

    def __add__(self, other: "Cocycle") -> "Cocycle":
        if self.dim != other.dim:
            raise ValueError("cocycle dimensions differ")
        return Cocycle(
            tuple(
                tuple(add_vec(a, b) for a, b in zip(ra, rb))
                for ra, rb in zip(self.values, other.values)
            )
        )

    def __neg__(self) -> "Cocycle":
        return self.scale(-1)


@dataclass(frozen=True)
class CocycleReport:
    cyclic: Check
    cocycle: Check
    j_compatible: Check

    @property
    def ok(self) -> bool:
        return self.cyclic.ok and self.cocycle.ok and self.j_compatible.ok

    def __bool__(self) -> bool:
        return self.ok


def _coadjoint(algebra: LieAlgebra, i: int, fv: Vector) -> Vector:
    """Coadjoint action of the i-th basis vector on a functional: -f o ad(ei)."""
    n = algebra.dim
    return tuple(-dot(algebra.structure[i][k], fv) for k in range(n))


def check_cocycle(algebra: LieAlgebra, j: LinearMap, theta: Cocycle) -> CocycleReport:
    """Three conditions on a dual-valued antisymmetric 2-form.

    (a) cyclicity  theta(x,y)z = theta(y,z)x  on all basis triples;
    (b) the 2-cocycle identity for the coadjoint Chevalley-Eilenberg
        differential on all basis triples i < j < k (checked in every dual
        slot, with no shortcut through special degeneracies of the algebra);
    (c) the complex-structure compatibility
        theta(x,y)z = theta(jx,jy)z + theta(jy,jz)x + theta(jz,jx)y
        on all basis triples.
    """
    n = algebra.dim
    names = algebra.basis_names
    t = theta.values

    cyclic_fail = []
    for i in range(n):
        for jj in range(n):
            for k in range(n):
                if t[i][jj][k] != t[jj][k][i]:
                    cyclic_fail.append(
                        f"theta({names[i]},{names[jj]}){names[k]} != "
                        f"theta({names[jj]},{names[k]}){names[i]}"
                    )

    cocycle_fail = []
    for i in range(n):
        for jj in range(i + 1, n):
            for k in range(jj + 1, n):
                term = _coadjoint(algebra, i, t[jj][k])
                term = sub_vec(term, _coadjoint(algebra, jj, t[i][k]))
                term = add_vec(term, _coadjoint(algebra, k, t[i][jj]))
                term = sub_vec(term, theta.evaluate(algebra.structure[i][jj], unit_vector(n, k)))
                term = add_vec(term, theta.evaluate(algebra.structure[i][k], unit_vector(n, jj)))
                term = sub_vec(term, theta.evaluate(algebra.structure[jj][k], unit_vector(n, i)))
                if not is_zero_vec(term):
                    cocycle_fail.append(
                        f"d theta != 0 on ({names[i]}, {names[jj]}, {names[k]})"
                    )

    compat_fail = []
    jcols = [j.col(c) for c in range(n)]
    for i in range(n):
        for jj in range(n):
            for k in range(n):
                lhs = t[i][jj][k]
                rhs = dot(theta.evaluate(jcols[i], jcols[jj]), unit_vector(n, k))
                rhs += dot(theta.evaluate(jcols[jj], jcols[k]), unit_vector(n, i))
                rhs += dot(theta.evaluate(jcols[k], jcols[i]), unit_vector(n, jj))
                if lhs != rhs:
                    compat_fail.append(
                        f"J-compatibility fails on ({names[i]}, {names[jj]}, {names[k]})"
                    )

    return CocycleReport(
        Check("cyclic", tuple(cyclic_fail)),
        Check("2-cocycle", tuple(cocycle_fail)),
        Check("J-compatible", tuple(compat_fail)),
    )


def tstar_extension(algebra: LieAlgebra, j: LinearMap, theta: Cocycle) -> PHQAlgebra:
    """Cotangent-type extension on g + g* twisted by a valid cocycle.

    Bracket  [x+f, y+g] = [x,y] + theta(x,y) + f o ad(y) - g o ad(x),
    metric   phi(x+f, y+g) = f(y) + g(x)  (so the signature is neutral),
    complex structure  x + f  ->  jx - f o j.
    The dual basis is the phi-dual of the input basis.
    """
    n = algebra.dim
    if theta.dim != n:
        raise InvalidCocycle("cocycle dimension does not match the algebra")
    comp = check_complex(algebra, j)
    if not comp.ok:
        raise InvalidCocycle("the carrier map is not a complex structure")
    rep = check_cocycle(algebra, j, theta)
    if not rep.ok:
        bad = [name for name, part in
               (("cyclic", rep.cyclic), ("2-cocycle", rep.cocycle), ("J-compatible", rep.j_compatible))
               if not part.ok]
        raise InvalidCocycle(f"cocycle conditions failed: {', '.join(bad)}")

    total = 2 * n
    names = _unique_names(algebra.basis_names, tuple(f"{s}*" for s in algebra.basis_names))

    table = [[zero_vector(total) for _ in range(total)] for _ in range(total)]

    def put(a: int, b: int, val: Vector) -> None:
        table[a][b] = val
        table[b][a] = neg_vec(val)

    for a in range(n):
        for b in range(a + 1, n):
            put(a, b, algebra.structure[a][b] + theta.values[a][b])
        # [ea, eb*] = -(eb* o ad(ea)): dual coordinate k picks -c[a][k][b]
        for b in range(n):
            dual = tuple(-algebra.structure[a][k][b] for k in range(n))
            put(a, n + b, zero_vector(n) + dual)

    j_cols = []
    for c in range(n):
        j_cols.append(j.col(c) + zero_vector(n))
    jt = j.transpose()
    for c in range(n):
        j_cols.append(zero_vector(n) + neg_vec(jt.col(c)))

    phi_rows = [[ZERO] * total for _ in range(total)]
    for a in range(n):
        phi_rows[a][n + a] = phi_rows[n + a][a] = ONE

    return PHQAlgebra(
        LieAlgebra(names, tuple(tuple(r) for r in table)),
        Matrix.from_cols(j_cols, rows=total),
        Matrix.from_rows(phi_rows),
    )


def kodaira_thurston() -> tuple[LieAlgebra, LinearMap]:
    """The Kodaira-Thurston algebra: Heisenberg plus a line, [x1, x2] = x3,
    with the abelian complex structure x1 -> x2, x3 -> x4."""
    algebra = LieAlgebra.from_brackets(("x1", "x2", "x3", "x4"), {(0, 1): {2: 1}})
    j = Matrix.from_cols(
        [
            unit_vector(4, 1),
            neg_vec(unit_vector(4, 0)),
            unit_vector(4, 3),
            neg_vec(unit_vector(4, 2)),
        ]
    )
    return algebra, j


def kodaira_cocycle_basis() -> tuple[Cocycle, Cocycle, Cocycle, Cocycle]:
    """The four independent cyclic cocycles on the Kodaira-Thurston carrier,
    tabulated by their nonzero values."""
    theta1 = Cocycle.from_values(4, {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 2): {0: 1}})
    theta2 = Cocycle.from_values(4, {(0, 1): {3: 1}, (0, 3): {1: -1}, (1, 3): {0: 1}})
    theta3 = Cocycle.from_values(4, {(0, 2): {3: 1}, (0, 3): {2: -1}, (2, 3): {0: 1}})
    theta4 = Cocycle.from_values(4, {(1, 2): {3: 1}, (1, 3): {2: -1}, (2, 3): {1: 1}})
    return theta1, theta2, theta3, theta4


@dataclass(frozen=True)
class CommutativeAlgebra:
    """Associative commutative algebra with an invariant nondegenerate form."""

    basis_names: tuple[str, ...]
    products: tuple[tuple[Vector, ...], ...]
    form: Matrix

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    def multiply(self, x: Sequence, y: Sequence) -> Vector:
        xv, yv = vector(x), vector(y)
        out = zero_vector(self.dim)
        for i, xi in enumerate(xv):
            if xi == 0:
                continue
            for j, yj in enumerate(yv):
                if yj == 0:
                    continue
                out = add_vec(out, scale_vec(xi * yj, self.products[i][j]))
        return out


def check_commutative(a: CommutativeAlgebra) -> Check:
    """Commutativity, associativity, nondegeneracy, and B(ab,c) = B(b,ac)."""
    n = a.dim
    failures = []
    for i in range(n):
        for j in range(n):
            if a.products[i][j] != a.products[j][i]:
                failures.append(f"products not commutative at ({i},{j})")
    for i in range(n):
        ei = unit_vector(n, i)
        for j in range(n):
            ej = unit_vector(n, j)
            for k in range(n):
                ek = unit_vector(n, k)
                if a.multiply(a.products[i][j], ek) != a.multiply(ei, a.products[j][k]):
                    failures.append(f"associativity fails at ({i},{j},{k})")
                lhs = dot(a.form.apply(a.products[i][j]), ek)
                rhs = dot(a.form.apply(ej), a.products[i][k])
                if lhs != rhs:
                    failures.append(f"form invariance fails at ({i},{j},{k})")
    if not a.form.is_symmetric():
        failures.append("form not symmetric")
    elif a.form.rank() != n:
        failures.append("form degenerate")
    return Check("commutative algebra", tuple(failures))


def truncated_poly(k: int) -> CommutativeAlgebra:
    """Nilpotent truncated polynomial algebra span{a, a^2, ..., a^k} with
    a^i a^j = a^(i+j) for i+j <= k and the anti-diagonal invariant form
    B(a^i, a^j) = 1 exactly when i + j = k + 1."""
    if k < 1:
        raise InvalidParameter("truncated polynomial algebra needs k >= 1")
    names = tuple("a" if i == 0 else f"a^{i + 1}" for i in range(k))
    products = tuple(
        tuple(
            unit_vector(k, i + j + 1) if i + j + 1 < k else zero_vector(k)
            for j in range(k)
        )
        for i in range(k)
    )
    form = Matrix.from_rows(
        [[ONE if i + j == k - 1 else ZERO for j in range(k)] for i in range(k)]
    )
    return CommutativeAlgebra(names, products, form)


def complex_units() -> CommutativeAlgebra:
    """The two-dimensional algebra {1, i} with B(a, b) = Re(ab)."""
    one = unit_vector(2, 0)
    imag = unit_vector(2, 1)
    products = (
        (one, imag),
        (imag, neg_vec(one)),
    )
    return CommutativeAlgebra(("1", "i"), products, Matrix.diagonal([1, -1]))


def tensor_construct(p: PHQAlgebra, a: CommutativeAlgebra) -> PHQAlgebra:
    """Tensor a metric Lie algebra with an invariant-form commutative algebra.

    Basis (x_i . a_j) ordered lexicographically; bracket
    [x@a, y@b] = [x,y] @ ab, complex structure j@id, metric phi x B.
    """
    rep = check_commutative(a)
    if not rep.ok:
        raise InvalidAlgebraData("; ".join(rep.failures))
    n, m = p.dim, a.dim
    total = n * m
    names = tuple(
        f"{gn}.{an}" for gn in p.basis_names for an in a.basis_names
    )

    def idx(i: int, r: int) -> int:
        return i * m + r

    table = [[zero_vector(total) for _ in range(total)] for _ in range(total)]
    for i in range(n):
        for j in range(n):
            cij = p.algebra.structure[i][j]
            if is_zero_vec(cij):
                continue
            for r in range(m):
                for s in range(m):
                    prod = a.products[r][s]
                    if is_zero_vec(prod):
                        continue
                    val = list(zero_vector(total))
                    for kk in range(n):
                        if cij[kk] == 0:
                            continue
                        for t in range(m):
                            if prod[t] != 0:
                                val[idx(kk, t)] = cij[kk] * prod[t]
                    table[idx(i, r)][idx(j, s)] = tuple(val)

    j_cols = []
    for i in range(n):
        jc = p.j.col(i)
        for r in range(m):
            col = list(zero_vector(total))
            for kk in range(n):
                if jc[kk] != 0:
                    col[idx(kk, r)] = jc[kk]
            j_cols.append(tuple(col))

    phi_rows = [[ZERO] * total for _ in range(total)]
    for i in range(n):
        for j in range(n):
            pij = p.phi[i, j]
            if pij == 0:
                continue
            for r in range(m):
                for s in range(m):
                    brs = a.form[r, s]
                    if brs != 0:
                        phi_rows[idx(i, r)][idx(j, s)] = pij * brs

    return PHQAlgebra(
        LieAlgebra(names, tuple(tuple(r) for r in table)),
        Matrix.from_cols(j_cols, rows=total),
        Matrix.from_rows(phi_rows),
    )


def complexify(p: PHQAlgebra) -> PHQAlgebra:
    """Scalar extension to the complex numbers, seen as a real algebra of
    twice the dimension; the metric doubles its signature to (p+q, p+q)."""
    return tensor_construct(p, complex_units())
