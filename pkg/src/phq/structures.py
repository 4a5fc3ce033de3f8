"""Complex structures, invariant metrics, and their compatibility checks.

The central object is `PHQAlgebra`: a Lie algebra together with a complex
structure ``j`` (square matrix with j^2 = -I and vanishing torsion) and a
metric ``phi`` (symmetric, nondegenerate, ad-invariant) satisfying the
compatibility phi(jx, jy) = phi(x, y).  `fingerprint` collects the exact
invariants used by the classifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .checks import Check
from .lie import LieAlgebra, LinearMap, check_jacobi, format_vector, JacobiReport
from .linalg import (
    DimensionMismatch,
    Matrix,
    Vector,
    add_vec,
    dot,
    gram_restriction,
    is_zero_vec,
    map_image,
    neg_vec,
    sub_vec,
    unit_vector,
    vector,
)


class OddDimension(ValueError):
    """Complex structures require even dimension."""


def nijenhuis(algebra: LieAlgebra, j: LinearMap, x: Sequence, y: Sequence) -> Vector:
    """Torsion [x,y] + j[jx,y] + j[x,jy] - [jx,jy] of a candidate j."""
    n = algebra.dim
    if j.rows != n or j.cols != n:
        raise DimensionMismatch("j must be square of the algebra dimension")
    xv, yv = vector(x), vector(y)
    jx, jy = j.apply(xv), j.apply(yv)
    out = algebra.bracket(xv, yv)
    out = add_vec(out, j.apply(algebra.bracket(jx, yv)))
    out = add_vec(out, j.apply(algebra.bracket(xv, jy)))
    return sub_vec(out, algebra.bracket(jx, jy))


@dataclass(frozen=True)
class ComplexReport:
    square: Check
    torsion: Check
    torsion_identities: Check

    @property
    def ok(self) -> bool:
        return self.square.ok and self.torsion.ok and self.torsion_identities.ok

    def __bool__(self) -> bool:
        return self.ok


def check_complex(algebra: LieAlgebra, j: LinearMap) -> ComplexReport:
    """Verify j^2 = -I and vanishing torsion on all basis pairs.

    As a self-consistency check the standard torsion symmetries
    N(jx, jy) = -N(x, y) and N(jx, y) = -j N(x, y) are also evaluated on the
    swept pairs.  Raises OddDimension for odd-dimensional algebras.
    """
    n = algebra.dim
    if n % 2 == 1:
        raise OddDimension(f"complex structure on odd dimension {n}")
    if j.rows != n or j.cols != n:
        raise DimensionMismatch("j must be square of the algebra dimension")
    names = algebra.basis_names

    square_fail = []
    if (j @ j) != -Matrix.identity(n):
        square_fail.append("j^2 != -I")

    torsion_fail = []
    identity_fail = []
    for a in range(n):
        ea = unit_vector(n, a)
        for b in range(a + 1, n):
            eb = unit_vector(n, b)
            nab = nijenhuis(algebra, j, ea, eb)
            if not is_zero_vec(nab):
                torsion_fail.append(
                    f"N({names[a]}, {names[b]}) = {format_vector(nab, names)}"
                )
            if nijenhuis(algebra, j, j.apply(ea), j.apply(eb)) != neg_vec(nab):
                identity_fail.append(f"N(j{names[a]}, j{names[b]}) != -N({names[a]}, {names[b]})")
            if nijenhuis(algebra, j, j.apply(ea), eb) != neg_vec(j.apply(nab)):
                identity_fail.append(f"N(j{names[a]}, {names[b]}) != -j N({names[a]}, {names[b]})")
    return ComplexReport(
        Check("square", tuple(square_fail)),
        Check("torsion", tuple(torsion_fail)),
        Check("torsion symmetries", tuple(identity_fail)),
    )


@dataclass(frozen=True)
class QuadraticReport:
    symmetric: Check
    nondegenerate: Check
    ad_invariant: Check

    @property
    def ok(self) -> bool:
        return self.symmetric.ok and self.nondegenerate.ok and self.ad_invariant.ok

    def __bool__(self) -> bool:
        return self.ok


def check_quadratic(algebra: LieAlgebra, g: Matrix) -> QuadraticReport:
    """Verify that g is a symmetric, nondegenerate, ad-invariant pairing."""
    n = algebra.dim
    if g.rows != n or g.cols != n:
        raise DimensionMismatch("metric must be square of the algebra dimension")
    names = algebra.basis_names

    sym_fail = [] if g.is_symmetric() else ["phi is not symmetric"]
    nondeg_fail = [] if g.rank() == n else [f"phi is degenerate (rank {g.rank()} < {n})"]

    inv_fail = []
    # phi([ei,ej], ek) + phi(ej, [ei,ek]) = 0; precompute g applied to brackets
    paired = [[g.apply(algebra.structure[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if paired[i][j][k] + paired[i][k][j] != 0:
                    inv_fail.append(
                        f"ad-invariance fails on ({names[i]}, {names[j]}, {names[k]})"
                    )
    return QuadraticReport(
        Check("symmetric", tuple(sym_fail)),
        Check("nondegenerate", tuple(nondeg_fail)),
        Check("ad-invariant", tuple(inv_fail)),
    )


@dataclass(frozen=True)
class PHQAlgebra:
    """A Lie algebra with a compatible complex structure and invariant metric."""

    algebra: LieAlgebra
    j: LinearMap
    phi: Matrix

    def __post_init__(self):
        n = self.algebra.dim
        for name, m in (("j", self.j), ("phi", self.phi)):
            if m.rows != n or m.cols != n:
                raise DimensionMismatch(f"{name} must be {n}x{n}")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def basis_names(self) -> tuple[str, ...]:
        return self.algebra.basis_names

    def pairing(self, x: Sequence, y: Sequence) -> "Fraction":
        return dot(self.phi.apply(vector(x)), vector(y))


@dataclass(frozen=True)
class PHQReport:
    jacobi: JacobiReport
    square: Check
    torsion: Check
    symmetric: Check
    nondegenerate: Check
    ad_invariant: Check
    compatible: Check

    def parts(self):
        return (
            ("Jacobi", self.jacobi),
            ("J^2", self.square),
            ("Nijenhuis", self.torsion),
            ("symmetric", self.symmetric),
            ("nondegenerate", self.nondegenerate),
            ("ad-invariant", self.ad_invariant),
            ("J-compatible", self.compatible),
        )

    @property
    def ok(self) -> bool:
        return all(bool(r) for _, r in self.parts())

    def __bool__(self) -> bool:
        return self.ok


def check_phq(p: PHQAlgebra) -> PHQReport:
    """All axioms at once: Jacobi, complex structure, metric, compatibility.

    Compatibility is checked both as j^T phi j = phi and in the equivalent
    skew form phi j = -j^T phi.
    """
    jac = check_jacobi(p.algebra)
    try:
        comp = check_complex(p.algebra, p.j)
        square, torsion = comp.square, comp.torsion
    except OddDimension:
        square = Check("square", ("odd dimension admits no complex structure",))
        torsion = Check("torsion", ())
    quad = check_quadratic(p.algebra, p.phi)

    compat_fail = []
    if p.j.transpose() @ p.phi @ p.j != p.phi:
        compat_fail.append("phi(jx, jy) != phi(x, y)")
    if p.phi @ p.j != -(p.j.transpose() @ p.phi):
        compat_fail.append("j is not phi-skewsymmetric")
    return PHQReport(
        jac,
        square,
        torsion,
        quad.symmetric,
        quad.nondegenerate,
        quad.ad_invariant,
        Check("compatibility", tuple(compat_fail)),
    )


def kahler_form(p: PHQAlgebra) -> Matrix:
    """Fundamental 2-form omega(x, y) = phi(x, jy), as the matrix phi @ j."""
    return p.phi @ p.j


def j_twisted_bracket(algebra: LieAlgebra, j: LinearMap) -> LieAlgebra:
    """New algebra on the same space with bracket [x,y]' = [jx,y] + [x,jy].

    When j is a complex structure of the input, the result is again a Lie
    algebra (its Jacobi identity can be confirmed with `check_jacobi`).
    """
    n = algebra.dim
    table = []
    for i in range(n):
        row = []
        ei = unit_vector(n, i)
        for k in range(n):
            ek = unit_vector(n, k)
            row.append(
                add_vec(
                    algebra.bracket(j.apply(ei), ek),
                    algebra.bracket(ei, j.apply(ek)),
                )
            )
        table.append(tuple(row))
    return LieAlgebra(algebra.basis_names, tuple(table))


@dataclass(frozen=True)
class JClassification:
    abelian: bool
    bi_invariant: bool

    @property
    def label(self) -> str:
        if self.abelian and self.bi_invariant:
            return "abelian,bi_invariant"
        if self.abelian:
            return "abelian"
        if self.bi_invariant:
            return "bi_invariant"
        return "generic"


def j_class(algebra: LieAlgebra, j: LinearMap) -> JClassification:
    """Test [jx,jy] = [x,y] (abelian) and [jx,y] = j[x,y] (bi-invariant)
    on all basis pairs; both can hold together only on abelian algebras."""
    n = algebra.dim
    abelian = True
    bi_invariant = True
    for a in range(n):
        ea = unit_vector(n, a)
        ja = j.apply(ea)
        for b in range(a + 1, n):
            eb = unit_vector(n, b)
            br = algebra.structure[a][b]
            if algebra.bracket(ja, j.apply(eb)) != br:
                abelian = False
            if algebra.bracket(ja, eb) != j.apply(br):
                bi_invariant = False
        if not abelian and not bi_invariant:
            break
    return JClassification(abelian, bi_invariant)


@dataclass(frozen=True)
class Fingerprint:
    """Isomorphism invariants used for the small-dimension classification."""

    dim: int
    dim_derived: int
    dim_center: int
    nilpotency_index: int | None
    sig_phi: tuple[int, int]
    sig_phi_derived: tuple[int, int]

    def as_tuple(self):
        return (
            self.dim,
            self.dim_derived,
            self.dim_center,
            self.nilpotency_index,
            self.sig_phi,
            self.sig_phi_derived,
        )

    def table_row(self) -> str:
        """The five classification-table columns, pipe-separated."""
        return (
            f"{self.dim} | {self.dim_derived} | ({self.sig_phi[0]},{self.sig_phi[1]}) | "
            f"({self.sig_phi_derived[0]},{self.sig_phi_derived[1]}) | "
            f"{self.nilpotency_index if self.nilpotency_index is not None else 'not nilpotent'}"
        )


def fingerprint(p: PHQAlgebra) -> Fingerprint:
    """Exact invariants: dimensions, nilpotency index, both signatures.

    The metric restricted to the derived ideal is evaluated on the ideal's
    canonical echelon basis; signatures are congruence invariants, so the
    basis choice does not matter.  The restricted form may be degenerate, in
    which case the (p, q) counts sum to less than the ideal's dimension.
    """
    from .linalg import signature

    derived = p.algebra.derived_ideal()
    restricted = gram_restriction(p.phi, derived.basis)
    return Fingerprint(
        dim=p.dim,
        dim_derived=derived.dim,
        dim_center=p.algebra.center().dim,
        nilpotency_index=p.algebra.nilpotency_index(),
        sig_phi=signature(p.phi),
        sig_phi_derived=signature(restricted),
    )


def salamon_check(p: PHQAlgebra) -> Check:
    """For nilpotent input, verify dim([g,g] + j[g,g]) < dim(g)."""
    derived = p.algebra.derived_ideal()
    total = derived.sum_with(map_image(p.j, derived))
    if total.dim < p.dim:
        return Check("derived + j(derived) is proper", ())
    return Check(
        "derived + j(derived) is proper",
        (f"[g,g] + j[g,g] has full dimension {total.dim}",),
    )
