"""Named algebras, the dimension-at-most-8 classifier, and witness checks.

Labels are orthogonal-sum decompositions into the six indecomposable models:

    R(p,q)        abelian with a metric of signature (p, q), p and q even
    L(4,2)        the six-dimensional three-step algebra with signature (4,2)
    L(2,4)        the same algebra with the metric negated
    Tstar0K       the untwisted cotangent extension of the Kodaira-Thurston
                  algebra (two-step, derived ideal totally isotropic)
    TstarTheta3K  the cotangent extension twisted by the third basis cocycle

Classification keys on the exact invariant fingerprint, which separates all
cases up to dimension 8; no general isomorphism search is performed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce

from .checks import Check
from .constructions import (
    Cocycle,
    direct_sum,
    kodaira_cocycle_basis,
    kodaira_thurston,
    tstar_extension,
)
from .lie import LieAlgebra, LinearMap
from .linalg import Matrix, Vector, neg_vec, unit_vector
from .reduction import ReductionResult, full_reduction
from .structures import Fingerprint, PHQAlgebra, check_phq, fingerprint


class UnknownLabel(ValueError):
    pass


class DimensionTooLarge(ValueError):
    pass


class UnclassifiedFingerprint(ValueError):
    pass


_ATOM_ORDER = {"L": 0, "T": 1, "R": 2}
_R_ATOM = re.compile(r"^R\((\d+),(\d+)\)$")
_L_ATOMS = {"L(4,2)", "L(2,4)"}
_T_ATOMS = {"Tstar0K", "TstarTheta3K"}


@dataclass(frozen=True)
class CatalogLabel:
    """Canonical (sorted) list of indecomposable factors."""

    factors: tuple[str, ...]

    def __post_init__(self):
        if not self.factors:
            raise UnknownLabel("a label needs at least one factor")
        for atom in self.factors:
            if atom in _L_ATOMS or atom in _T_ATOMS:
                continue
            m = _R_ATOM.match(atom)
            if m:
                pq = (int(m.group(1)), int(m.group(2)))
                if pq == (0, 0) or pq[0] % 2 or pq[1] % 2:
                    raise UnknownLabel(f"abelian factor needs even nonzero signature: {atom}")
                continue
            raise UnknownLabel(f"unknown factor {atom!r}")
        ordered = tuple(sorted(self.factors, key=lambda a: (_ATOM_ORDER[a[0]], a)))
        object.__setattr__(self, "factors", ordered)

    def __str__(self) -> str:
        return "+".join(self.factors)

    @classmethod
    def parse(cls, text: str) -> "CatalogLabel":
        return cls(tuple(part.strip() for part in text.split("+")))


def label(*factors: str) -> CatalogLabel:
    return CatalogLabel(tuple(factors))


def abelian_with_signature(p: int, q: int) -> PHQAlgebra:
    """Abelian algebra of dimension p+q, metric diag(+1 x p, -1 x q), with
    the block rotation complex structure on consecutive pairs."""
    if p % 2 or q % 2 or (p == 0 and q == 0):
        raise UnknownLabel(f"signature ({p},{q}) must have even nonzero entries")
    n = p + q
    algebra = LieAlgebra.abelian(n)
    j_cols: list[Vector] = []
    for pair in range(n // 2):
        a, b = 2 * pair, 2 * pair + 1
        j_cols.append(unit_vector(n, b))
        j_cols.append(neg_vec(unit_vector(n, a)))
    phi = Matrix.diagonal([1] * p + [-1] * q)
    return PHQAlgebra(algebra, Matrix.from_cols(j_cols, rows=n), phi)


def lorentz_core(positive: bool = True) -> PHQAlgebra:
    """The six-dimensional three-step model on basis
    (x1, Jx1, x2, Jx2, x3, Jx3):

        [x1, Jx1] = x2,   [x1, x2] = -Jx3,   [Jx1, x2] = x3

    with pairings phi(x1,x3) = phi(Jx1,Jx3) = 1 and phi(x2,x2) =
    phi(Jx2,Jx2) = 1 (all negated when ``positive`` is False).
    """
    names = ("x1", "Jx1", "x2", "Jx2", "x3", "Jx3")
    algebra = LieAlgebra.from_brackets(
        names,
        {
            (0, 1): {2: 1},
            (0, 2): {5: -1},
            (1, 2): {4: 1},
        },
    )
    j_cols = [
        unit_vector(6, 1),
        neg_vec(unit_vector(6, 0)),
        unit_vector(6, 3),
        neg_vec(unit_vector(6, 2)),
        unit_vector(6, 5),
        neg_vec(unit_vector(6, 4)),
    ]
    sign = 1 if positive else -1
    phi = Matrix.from_rows(
        [
            [0, 0, 0, 0, sign, 0],
            [0, 0, 0, 0, 0, sign],
            [0, 0, sign, 0, 0, 0],
            [0, 0, 0, sign, 0, 0],
            [sign, 0, 0, 0, 0, 0],
            [0, sign, 0, 0, 0, 0],
        ]
    )
    return PHQAlgebra(algebra, Matrix.from_cols(j_cols, rows=6), phi)


def tstar_kodaira(theta: Cocycle | None = None) -> PHQAlgebra:
    """Cotangent extension of the Kodaira-Thurston carrier by ``theta``."""
    algebra, j = kodaira_thurston()
    return tstar_extension(algebra, j, theta if theta is not None else Cocycle.zero(4))


def _build_atom(atom: str) -> PHQAlgebra:
    if atom == "L(4,2)":
        return lorentz_core(True)
    if atom == "L(2,4)":
        return lorentz_core(False)
    if atom == "Tstar0K":
        return tstar_kodaira()
    if atom == "TstarTheta3K":
        return tstar_kodaira(kodaira_cocycle_basis()[2])
    m = _R_ATOM.match(atom)
    if m:
        return abelian_with_signature(int(m.group(1)), int(m.group(2)))
    raise UnknownLabel(f"unknown factor {atom!r}")


def build(lab: CatalogLabel | str) -> PHQAlgebra:
    """The exact model algebra for a label (factors summed in canonical order)."""
    if isinstance(lab, str):
        lab = CatalogLabel.parse(lab)
    return reduce(direct_sum, (_build_atom(atom) for atom in lab.factors))


# Fingerprint rows of every non-abelian case in dimension at most 8, keyed by
# (dim, dim derived, dim center, nilpotency index, sig phi, sig phi|derived).
_FINGERPRINT_TABLE: dict[tuple, str] = {
    (6, 3, 3, 3, (4, 2), (1, 0)): "L(4,2)",
    (6, 3, 3, 3, (2, 4), (0, 1)): "L(2,4)",
    (8, 3, 5, 2, (4, 4), (0, 0)): "Tstar0K",
    (8, 5, 3, 3, (4, 4), (1, 1)): "TstarTheta3K",
    (8, 3, 5, 3, (2, 6), (0, 1)): "L(2,4)+R(0,2)",
    (8, 3, 5, 3, (4, 4), (0, 1)): "L(2,4)+R(2,0)",
    (8, 3, 5, 3, (4, 4), (1, 0)): "L(4,2)+R(0,2)",
    (8, 3, 5, 3, (6, 2), (1, 0)): "L(4,2)+R(2,0)",
}


@dataclass(frozen=True)
class Classification:
    label: CatalogLabel
    fingerprint: Fingerprint
    reduction: ReductionResult


def classify(p: PHQAlgebra) -> Classification:
    """Identify a valid nilpotent input of dimension at most 8.

    Abelian inputs are labeled by their metric signature.  Everything else is
    matched against the exact fingerprint table; a miss means the input is
    outside the classified range (or invalid) and raises
    UnclassifiedFingerprint.
    """
    if p.dim > 8:
        raise DimensionTooLarge(f"classification covers dimension <= 8, got {p.dim}")
    if not check_phq(p).ok:
        raise UnclassifiedFingerprint("input fails the structure axioms")
    if not p.algebra.is_nilpotent():
        raise UnclassifiedFingerprint("input is not nilpotent")
    fp = fingerprint(p)
    steps = full_reduction(p)
    if fp.dim_derived == 0:
        pq = fp.sig_phi
        return Classification(label(f"R({pq[0]},{pq[1]})"), fp, steps)
    name = _FINGERPRINT_TABLE.get(fp.as_tuple())
    if name is None:
        raise UnclassifiedFingerprint(f"no classification row matches {fp.as_tuple()}")
    return Classification(CatalogLabel.parse(name), fp, steps)


@dataclass(frozen=True)
class Witness:
    """A linear map between two algebras, columns in the target's coordinates."""

    matrix: LinearMap


def verify_witness(a: PHQAlgebra, b: PHQAlgebra, w: Witness | LinearMap) -> Check:
    """Check that w is an invertible map a -> b intertwining brackets, the
    complex structures, and the metrics."""
    m = w.matrix if isinstance(w, Witness) else w
    failures = []
    if a.dim != b.dim:
        return Check("witness", ("dimensions differ",))
    if m.rows != a.dim or m.cols != a.dim:
        return Check("witness", ("witness matrix has the wrong shape",))
    if m.rank() != a.dim:
        failures.append("witness is not invertible")
    if m @ a.j != b.j @ m:
        failures.append("witness does not intertwine the complex structures")
    if m.transpose() @ b.phi @ m != a.phi:
        failures.append("witness is not an isometry")
    n = a.dim
    for i in range(n):
        for j in range(i + 1, n):
            lhs = m.apply(a.algebra.structure[i][j])
            rhs = b.algebra.bracket(m.col(i), m.col(j))
            if lhs != rhs:
                failures.append(
                    f"witness does not intertwine the bracket at "
                    f"({a.basis_names[i]}, {a.basis_names[j]})"
                )
    return Check("witness", tuple(failures))


# Field order used to report a separating invariant: dimension and signature
# first, then the center, mirroring how the inequivalences are usually argued.
_EVIDENCE_FIELDS = (
    ("dim", lambda fp: fp.dim),
    ("sig_phi", lambda fp: fp.sig_phi),
    ("dim_center", lambda fp: fp.dim_center),
    ("nilpotency_index", lambda fp: fp.nilpotency_index),
    ("dim_derived", lambda fp: fp.dim_derived),
    ("sig_phi_on_derived", lambda fp: fp.sig_phi_derived),
)


@dataclass(frozen=True)
class InequivalenceEvidence:
    field: str | None
    value_a: object = None
    value_b: object = None

    @property
    def separated(self) -> bool:
        return self.field is not None

    def describe(self) -> str:
        if not self.separated:
            # Equal fingerprints do not prove equivalence; say so explicitly.
            return (
                "no invariant separation: all fingerprint fields agree "
                "(this does not prove the algebras are equivalent)"
            )
        return f"differ at {self.field}: {self.value_a} vs {self.value_b}"


def inequivalence_evidence(a: PHQAlgebra, b: PHQAlgebra) -> InequivalenceEvidence:
    """First fingerprint field (in the documented order) where a and b differ."""
    fa, fb = fingerprint(a), fingerprint(b)
    for name, get in _EVIDENCE_FIELDS:
        va, vb = get(fa), get(fb)
        if va != vb:
            return InequivalenceEvidence(name, va, vb)
    return InequivalenceEvidence(None)
