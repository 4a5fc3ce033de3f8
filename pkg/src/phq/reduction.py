"""Inverse procedures: peel definite planes and hyperbolic plane pairs.

A nilpotent algebra with a compatible complex structure and invariant metric
always has a nonzero intersection W of its center with the image of the
center under j.  A vector of W inside the derived ideal drives the inverse
of the plane double extension (`reduce_by_plane`); a vector of nonzero norm
drives an orthogonal split (`split_plane`).  `full_reduction` iterates to an
abelian residue.  `analyze_skew_pair` normalizes a nilpotent skewsymmetric
pair on a neutral four-dimensional base into its adapted form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .constructions import ExtensionData
from .lie import LieAlgebra
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    add_vec,
    dot,
    gram_restriction,
    intersect,
    is_zero_vec,
    map_image,
    orthogonal_complement,
    scale_vec,
    signature,
    solve_linear,
    sub_vec,
    vector,
)
from .structures import PHQAlgebra

ZERO = Fraction(0)
ONE = Fraction(1)


class EmptyIntersection(ValueError):
    pass


class ReductionStuck(RuntimeError):
    """Central j-pair exists but is neither of nonzero norm nor in the
    derived ideal; outside the guaranteed cases."""


class InvalidCentralElement(ValueError):
    pass


class NonIsotropic(ValueError):
    pass


class NotDefinitePlane(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


@dataclass(frozen=True)
class CentralPair:
    """Witness of the dichotomy: W = center ∩ j(center) plus the chosen z."""

    subspace: Subspace
    z: Vector
    in_derived: bool  # True: z isotropic in the derived ideal; False: norm != 0


def find_central_pair(p: PHQAlgebra) -> CentralPair:
    """W = center ∩ j(center), plus a deterministic choice of z in W.

    Preference order: the first echelon basis vector of W ∩ derived (such a z
    is automatically isotropic); otherwise the first vector of nonzero norm
    among the echelon basis of W and then pairwise sums of it.  A nonempty W
    is guaranteed for nilpotent input; anything else raises.
    """
    center = p.algebra.center()
    w = intersect(center, map_image(p.j, center))
    if w.dim == 0:
        raise EmptyIntersection("center ∩ j(center) is zero; input is outside the nilpotent case")
    in_derived = intersect(w, p.algebra.derived_ideal())
    if in_derived.dim > 0:
        return CentralPair(w, in_derived.basis[0], True)
    candidates = list(w.basis)
    candidates += [add_vec(u, v) for i, u in enumerate(w.basis) for v in w.basis[i + 1 :]]
    for z in candidates:
        if dot(p.phi.apply(z), z) != 0:
            return CentralPair(w, z, False)
    raise ReductionStuck(
        "all candidates in center ∩ j(center) are isotropic but none lies in the derived ideal"
    )


def _restrict(p: PHQAlgebra, basis: tuple[Vector, ...]) -> PHQAlgebra:
    """Restriction of brackets, j, and phi to an invariant subspace basis."""
    cols = Matrix.from_cols(list(basis), rows=p.dim)

    def coords(v: Vector) -> Vector:
        sol = solve_linear(cols, v)
        if sol is None:
            raise InvalidCentralElement("restriction left the subspace; it is not invariant")
        return sol

    m = len(basis)
    names = tuple(f"b{i + 1}" for i in range(m))
    table = tuple(
        tuple(coords(p.algebra.bracket(basis[i], basis[j])) for j in range(m))
        for i in range(m)
    )
    j_cols = [coords(p.j.apply(b)) for b in basis]
    return PHQAlgebra(
        LieAlgebra(names, table),
        Matrix.from_cols(j_cols, rows=m),
        gram_restriction(p.phi, basis),
    )


def split_plane(p: PHQAlgebra, z: Vector) -> tuple[PHQAlgebra, int]:
    """Remove the definite j-invariant central plane spanned by z and jz.

    Returns the restriction to the orthogonal complement together with the
    sign of phi(z, z).
    """
    z = vector(z)
    center = p.algebra.center()
    if not (center.contains(z) and center.contains(p.j.apply(z))):
        raise InvalidCentralElement("z and jz must be central")
    norm = dot(p.phi.apply(z), z)
    if norm == 0:
        raise NotDefinitePlane("phi(z, z) = 0: the plane of z is not definite")
    plane = Subspace.span(p.dim, [z, p.j.apply(z)])
    complement = orthogonal_complement(plane, p.phi)
    return _restrict(p, complement.basis), (1 if norm > 0 else -1)


@dataclass(frozen=True)
class ReductionStep:
    """One inverse step; `adapted_basis` maps re-built coordinates to input
    coordinates (for plane reductions it is the witness of the round trip)."""

    kind: str  # "split_plane" | "plane_reduction"
    z: Vector
    v: Vector | None
    sign: int | None
    recovered: PHQAlgebra
    extension_data: ExtensionData | None
    adapted_basis: Matrix | None


def reduce_by_plane(p: PHQAlgebra, z: Vector) -> ReductionStep:
    """Invert the plane double extension at an isotropic central z.

    Requires z in center ∩ derived with jz central (such z are isotropic
    because the derived ideal is the orthogonal of the center).  Constructs
    the dual vector v with phi(z,v) = 1, phi(jz,v) = 0, corrected to be
    isotropic; the recovered base is the orthogonal of span{z, jz, v, jv},
    and the extension data is read off the brackets with v and jv.
    """
    z = vector(z)
    center = p.algebra.center()
    derived = p.algebra.derived_ideal()
    if not (center.contains(z) and derived.contains(z)):
        raise InvalidCentralElement("z must lie in center ∩ derived")
    zp = p.j.apply(z)
    if not center.contains(zp):
        raise InvalidCentralElement("jz must be central")
    if dot(p.phi.apply(z), z) != 0:
        raise NonIsotropic("z must be isotropic")

    # v: minimal-support solution of phi(z, v) = 1, phi(jz, v) = 0, then the
    # standard hyperbolic correction to make it isotropic.
    system = Matrix.from_rows([p.phi.apply(z), p.phi.apply(zp)])
    v = solve_linear(system, (ONE, ZERO))
    if v is None:
        raise InvalidCentralElement("no dual vector for z: metric degenerate on the pair")
    v = sub_vec(v, scale_vec(dot(p.phi.apply(v), v) / 2, z))
    vp = p.j.apply(v)

    plane = Subspace.span(p.dim, [z, zp, v, vp])
    base_space = orthogonal_complement(plane, p.phi)
    adapted = Matrix.from_cols([z, zp, *base_space.basis, vp, v], rows=p.dim)

    def coords(w: Vector) -> Vector:
        sol = solve_linear(adapted, w)
        if sol is None:
            raise InvalidCentralElement("bracket leaves the adapted frame")
        return sol

    m = base_space.dim

    def base_block(w: Vector) -> Vector:
        # Components along z and jz are projected away; components along v
        # or jv would contradict the extension shape.
        c = coords(w)
        if any(c[i] != 0 for i in (m + 2, m + 3)):
            raise InvalidCentralElement("bracket has components along v or jv")
        return c[2 : 2 + m]

    base_names = tuple(f"b{i + 1}" for i in range(m))
    base_table = tuple(
        tuple(
            base_block(p.algebra.bracket(base_space.basis[i], base_space.basis[j]))
            for j in range(m)
        )
        for i in range(m)
    )

    def strict_block(w: Vector) -> Vector:
        c = coords(w)
        if any(c[i] != 0 for i in (0, 1, m + 2, m + 3)):
            raise InvalidCentralElement("the recovered base is not j-invariant")
        return c[2 : 2 + m]

    base_j_cols = [strict_block(p.j.apply(b)) for b in base_space.basis]
    base = PHQAlgebra(
        LieAlgebra(base_names, base_table),
        Matrix.from_cols(base_j_cols, rows=m),
        gram_restriction(p.phi, base_space.basis),
    )

    f_cols = [base_block(p.algebra.bracket(v, b)) for b in base_space.basis]
    d_cols = [base_block(p.algebra.bracket(vp, b)) for b in base_space.basis]
    s0 = base_block(p.algebra.bracket(v, vp))

    data = ExtensionData(
        base,
        Matrix.from_cols(d_cols, rows=m),
        Matrix.from_cols(f_cols, rows=m),
        s0,
    )
    return ReductionStep(
        kind="plane_reduction",
        z=z,
        v=v,
        sign=None,
        recovered=base,
        extension_data=data,
        adapted_basis=adapted,
    )


@dataclass(frozen=True)
class ReductionResult:
    steps: tuple[ReductionStep, ...]
    residue: PHQAlgebra

    def describe(self) -> tuple[str, ...]:
        lines = []
        for i, s in enumerate(self.steps, start=1):
            if s.kind == "split_plane":
                lines.append(
                    f"step {i}: split_plane sign={'+' if s.sign > 0 else '-'} -> dim {s.recovered.dim}"
                )
            else:
                lines.append(f"step {i}: plane_reduction -> dim {s.recovered.dim}")
        sig = signature(self.residue.phi)
        lines.append(f"residue: dim {self.residue.dim}, signature ({sig[0]},{sig[1]}), abelian")
        return tuple(lines)


def full_reduction(p: PHQAlgebra) -> ReductionResult:
    """Iterate the dichotomy until the residue is abelian.

    Every step strictly drops the dimension by 2 (split) or 4 (plane
    reduction), so the loop terminates; the dimension bookkeeping
    dim(input) = dim(residue) + 2*(splits) + 4*(plane reductions) holds.
    """
    steps: list[ReductionStep] = []
    current = p
    while not current.algebra.is_abelian():
        pair = find_central_pair(current)
        if pair.in_derived:
            step = reduce_by_plane(current, pair.z)
        else:
            rest, sign = split_plane(current, pair.z)
            step = ReductionStep(
                kind="split_plane",
                z=pair.z,
                v=None,
                sign=sign,
                recovered=rest,
                extension_data=None,
                adapted_basis=None,
            )
        steps.append(step)
        current = step.recovered
    return ReductionResult(tuple(steps), current)


@dataclass(frozen=True)
class SkewPairReport:
    """Adapted form of a nilpotent skew pair on a neutral 4-dim base."""

    a: Fraction
    b: Fraction
    kernel_f: Subspace
    adapted_basis: tuple[Vector, Vector, Vector, Vector]  # (u1, ju1, u2, ju2)


def analyze_skew_pair(base: PHQAlgebra, f: Matrix, d: Matrix) -> SkewPairReport:
    """Check the structure of a nilpotent skew pair with f != 0 on a neutral
    four-dimensional base and extract its adapted constants.

    Verifies ker(f) = j(ker f) = im(f), two-dimensional and totally
    isotropic; then picks u1 in ker(f), builds the isotropic dual u2 with
    phi(u1, u2) = 1 and phi(ju1, u2) = 0, and reads off the constants
    f(u2) = a ju1 (a != 0) and d(u2) = b ju1, with d vanishing on ker(f).
    """
    from .constructions import is_skewsymmetric
    from .lie import is_derivation
    from .linalg import kernel as null_space

    if base.dim != 4 or signature(base.phi) != (2, 2):
        raise HypothesisViolated("base must be four-dimensional of neutral signature")
    for name, m in (("F", f), ("D", d)):
        if not is_skewsymmetric(m, base.phi):
            raise HypothesisViolated(f"{name} is not skewsymmetric")
        if not is_derivation(base.algebra, m).ok:
            raise HypothesisViolated(f"{name} is not a derivation")
        power = m
        for _ in range(4):
            power = power @ m
        if not power.is_zero():
            raise HypothesisViolated(f"{name} is not nilpotent")
    if f.is_zero():
        raise HypothesisViolated("F must be nonzero")
    from .linalg import commutator

    if not commutator(f, d).is_zero():
        raise HypothesisViolated("[F, D] != 0")
    if not commutator(f + base.j @ d, base.j).is_zero():
        raise HypothesisViolated("[F + J D, J] != 0")

    ker_f = null_space(f)
    if ker_f.dim != 2:
        raise HypothesisViolated(f"ker(F) has dimension {ker_f.dim}, expected 2")
    image = Subspace.span(4, [f.col(i) for i in range(4)])
    if map_image(base.j, ker_f) != ker_f or image != ker_f:
        raise HypothesisViolated("ker(F) = j(ker F) = im(F) fails")
    if not ker_f.is_totally_isotropic(base.phi):
        raise HypothesisViolated("ker(F) is not totally isotropic")

    u1 = ker_f.basis[0]
    ju1 = base.j.apply(u1)
    system = Matrix.from_rows([base.phi.apply(u1), base.phi.apply(ju1)])
    u2 = solve_linear(system, (ONE, ZERO))
    if u2 is None:
        raise HypothesisViolated("no dual vector for u1")
    u2 = sub_vec(u2, scale_vec(dot(base.phi.apply(u2), u2) / 2, u1))
    ju2 = base.j.apply(u2)

    frame = Matrix.from_cols([u1, ju1, u2, ju2], rows=4)

    def frame_coords(w: Vector) -> Vector:
        sol = solve_linear(frame, w)
        if sol is None:
            raise HypothesisViolated("adapted frame is degenerate")
        return sol

    fu2 = frame_coords(f.apply(u2))
    du2 = frame_coords(d.apply(u2))
    if fu2[0] != 0 or fu2[2] != 0 or fu2[3] != 0:
        raise HypothesisViolated("F(u2) is not a multiple of ju1")
    if du2[0] != 0 or du2[2] != 0 or du2[3] != 0:
        raise HypothesisViolated("D(u2) is not a multiple of ju1")
    a = fu2[1]
    b = du2[1]
    if a == 0:
        raise HypothesisViolated("the constant a vanishes although F != 0")
    if frame_coords(f.apply(ju2)) != (-a, ZERO, ZERO, ZERO):
        raise HypothesisViolated("F(ju2) != -a u1")
    if not (is_zero_vec(d.apply(u1)) and is_zero_vec(d.apply(ju1))):
        raise HypothesisViolated("D does not vanish on ker(F)")
    return SkewPairReport(a, b, ker_f, (u1, ju1, u2, ju2))
