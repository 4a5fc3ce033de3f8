from fractions import Fraction

import pytest

from phq import (
    Cocycle,
    ExtensionData,
    InvalidCocycle,
    InvalidDerivation,
    InvalidExtensionData,
    InvalidParameter,
    LieAlgebra,
    Matrix,
    PHQAlgebra,
    QuadraticAlgebra,
    build,
    check_cocycle,
    check_commutative,
    check_phq,
    check_quadratic,
    complex_units,
    complexify,
    direct_sum,
    fingerprint,
    gram_restriction,
    kodaira_cocycle_basis,
    kodaira_thurston,
    line_double_extension,
    phq_double_extension,
    signature,
    swap_df,
    tensor_construct,
    truncated_poly,
    tstar_extension,
    tstar_kodaira,
    validate_extension_data,
    vector,
    verify_witness,
)


def unit(n, i):
    return vector([1 if k == i else 0 for k in range(n)])


class TestDirectSum:
    def test_definite_planes_sum_to_neutral(self):
        s = direct_sum(build("R(2,0)"), build("R(0,2)"))
        assert fingerprint(s) == fingerprint(build("R(2,2)"))

    def test_sum_rows(self):
        assert fingerprint(build("L(2,4)+R(2,0)")).as_tuple() == (8, 3, 5, 3, (4, 4), (0, 1))
        assert fingerprint(build("L(4,2)+R(2,0)")).as_tuple() == (8, 3, 5, 3, (6, 2), (1, 0))

    def test_sums_satisfy_all_axioms(self):
        # the closure of the class under orthogonal sums, re-proved per instance
        for name in ("L(4,2)+R(2,0)", "L(2,4)+R(0,2)", "L(4,2)+R(0,2)", "L(2,4)+R(2,0)"):
            assert check_phq(build(name)).ok

    def test_dimensions_and_signatures_add(self):
        a, b = build("L(4,2)"), build("R(2,2)")
        s = direct_sum(a, b)
        fa, fb, fs = fingerprint(a), fingerprint(b), fingerprint(s)
        assert fs.dim == fa.dim + fb.dim
        assert fs.sig_phi == (fa.sig_phi[0] + fb.sig_phi[0], fa.sig_phi[1] + fb.sig_phi[1])


class TestLineDoubleExtension:
    def test_trivial_derivation_gives_abelian_split_pairing(self):
        base = QuadraticAlgebra(LieAlgebra.abelian(2), Matrix.identity(2))
        out = line_double_extension(base, Matrix.zero(2))
        assert out.dim == 4
        assert out.algebra.derived_ideal().dim == 0
        assert check_quadratic(out.algebra, out.phi).ok
        assert signature(out.phi) == (3, 1)  # hyperbolic pair plus definite plane

    def test_rejects_non_skew_map(self):
        base = QuadraticAlgebra(LieAlgebra.abelian(2), Matrix.identity(2))
        with pytest.raises(InvalidDerivation):
            line_double_extension(base, Matrix.from_rows([[1, 0], [0, 0]]))

    def test_definite_metric_admits_no_nonzero_nilpotent_skew(self):
        # skew maps for the euclidean plane are rotations a*J: nilpotent only at 0
        a = Fraction(3)
        rot = Matrix.from_rows([[0, -a], [a, 0]])
        assert (rot @ rot).is_zero() is False
        base = QuadraticAlgebra(LieAlgebra.abelian(2), Matrix.identity(2))
        out = line_double_extension(base, rot)  # valid, but not nilpotent
        assert out.algebra.nilpotency_index() is None

    def test_neutral_plane_stretch_derivation(self):
        g = Matrix.from_rows([[0, 1], [1, 0]])
        d = Matrix.diagonal([1, -1])
        base = QuadraticAlgebra(LieAlgebra.abelian(2), g)
        out = line_double_extension(base, d)
        assert out.dim == 4
        assert check_quadratic(out.algebra, out.phi).ok
        assert out.algebra.nilpotency_index() is None  # solvable, not nilpotent


def lemma_adapted_base() -> PHQAlgebra:
    """Neutral 4-dim base in the adapted frame (u1, Ju1, u2, Ju2) with the
    pairings phi(u1,u2) = phi(Ju1,Ju2) = 1."""
    alg = LieAlgebra.abelian(("u1", "Ju1", "u2", "Ju2"))
    j = Matrix.from_cols([(0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0)], rows=4)
    phi = Matrix.from_rows([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    return PHQAlgebra(alg, j, phi)


def adapted_pair(a, b) -> tuple[Matrix, Matrix]:
    """F(u2) = a Ju1, F(Ju2) = -a u1 and the same shape with b for D."""
    def shear(c):
        return Matrix.from_cols(
            [(0, 0, 0, 0), (0, 0, 0, 0), (0, c, 0, 0), (-c, 0, 0, 0)], rows=4
        )

    return shear(a), shear(b)


class TestValidateExtensionData:
    def test_trivial_data_passes(self):
        base = build("R(2,2)")
        assert validate_extension_data(base, Matrix.zero(4), Matrix.zero(4), unit(4, 0)).ok

    def test_noncentral_s0_on_nonabelian_base_fails(self):
        base = build("L(4,2)")
        rep = validate_extension_data(base, Matrix.zero(6), Matrix.zero(6), unit(6, 0))
        assert not rep.ok
        assert any("ad(s0)" in f for f in rep.failures)
        with pytest.raises(InvalidExtensionData):
            ExtensionData(base, Matrix.zero(6), Matrix.zero(6), unit(6, 0))

    def test_adapted_pair_passes_with_commuting_maps(self):
        base = lemma_adapted_base()
        f, d = adapted_pair(1, 1)
        assert (f @ d - d @ f).is_zero()
        assert validate_extension_data(base, d, f, vector([0, 0, 0, 0])).ok

    def test_non_skew_map_named(self):
        base = build("R(2,2)")
        bad = Matrix.diagonal([1, 0, 0, 0])
        rep = validate_extension_data(base, bad, Matrix.zero(4), vector([0] * 4))
        assert any("D is not skewsymmetric" in f for f in rep.failures)


class TestPlaneDoubleExtension:
    def test_trivial_extension_of_negative_plane(self):
        base = build("R(0,2)")
        out = phq_double_extension(ExtensionData(base, Matrix.zero(2), Matrix.zero(2), (0, 0)))
        assert fingerprint(out).as_tuple() == (6, 0, 6, 1, (2, 4), (0, 0))

    def test_norm_sixteen_datum_reproduces_the_core(self):
        base = build("R(2,0)")
        out = phq_double_extension(ExtensionData(base, Matrix.zero(2), Matrix.zero(2), (4, 0)))
        assert check_phq(out).ok
        assert fingerprint(out) == fingerprint(build("L(4,2)"))

    def test_adapted_datum_reproduces_untwisted_cotangent(self):
        base = lemma_adapted_base()
        f, _ = adapted_pair(1, 0)
        out = phq_double_extension(ExtensionData(base, Matrix.zero(4), f, (0, 0, 0, 0)))
        assert fingerprint(out) == fingerprint(build("Tstar0K"))

    def test_output_always_satisfies_axioms(self):
        base = lemma_adapted_base()
        f, d = adapted_pair(2, Fraction(-1, 3))
        out = phq_double_extension(ExtensionData(base, d, f, (1, 1, 0, 0)))
        assert check_phq(out).ok

    def test_signature_shift_law(self):
        for name in ("R(2,0)", "R(0,2)", "R(2,2)"):
            base = build(name)
            n = base.dim
            out = phq_double_extension(
                ExtensionData(base, Matrix.zero(n), Matrix.zero(n), unit(n, 0))
            )
            p0, q0 = signature(base.phi)
            assert signature(out.phi) == (p0 + 2, q0 + 2)

    def test_nilpotent_data_gives_nilpotent_output(self):
        base = lemma_adapted_base()
        f, d = adapted_pair(1, 1)
        out = phq_double_extension(ExtensionData(base, d, f, (0, 0, 0, 0)))
        assert out.algebra.nilpotency_index() is not None

    def test_non_nilpotent_map_blocks_nilpotency(self):
        # D = F = the complex structure itself is valid extension data over the
        # neutral plane pair but not nilpotent, and neither is the output.
        base = build("R(2,2)")
        j = base.j
        data = ExtensionData(base, j, j, (0, 0, 0, 0))
        out = phq_double_extension(data)
        assert check_phq(out).ok
        assert out.algebra.nilpotency_index() is None


class TestSwap:
    def test_trivial_datum_is_fixed_point(self):
        base = build("R(2,0)")
        data = ExtensionData(base, Matrix.zero(2), Matrix.zero(2), (4, 0))
        swapped = swap_df(data)
        assert swapped.d == data.d and swapped.f == data.f and swapped.s0 == data.s0

    def test_swapped_data_is_valid(self):
        base = lemma_adapted_base()
        f, _ = adapted_pair(1, 0)
        data = ExtensionData(base, Matrix.zero(4), f, (0, 0, 0, 0))
        swapped = swap_df(data)
        assert swapped.f == Matrix.zero(4) and swapped.d == -f

    def test_swap_has_explicit_equivalence(self):
        base = lemma_adapted_base()
        f, d = adapted_pair(1, 1)
        data = ExtensionData(base, d, f, (0, 0, 0, 0))
        original = phq_double_extension(data)
        swapped = phq_double_extension(swap_df(data))
        n = base.dim
        cols = [
            vector([0, 1] + [0] * (n + 2)),        # z1 -> z'
            vector([-1, 0] + [0] * (n + 2)),       # z1' -> -z
        ]
        for i in range(n):
            cols.append(unit(n + 4, 2 + i))
        cols.append(vector([0] * (n + 2) + [0, -1]))  # v1' -> -v
        cols.append(vector([0] * (n + 2) + [1, 0]))   # v1 -> v'
        psi = Matrix.from_cols(cols, rows=n + 4)
        assert verify_witness(swapped, original, psi).ok


class TestCocycles:
    def test_zero_cocycle_passes(self):
        k, j = kodaira_thurston()
        assert check_cocycle(k, j, Cocycle.zero(4)).ok

    def test_all_four_basis_cocycles_pass(self):
        k, j = kodaira_thurston()
        for theta in kodaira_cocycle_basis():
            rep = check_cocycle(k, j, theta)
            assert rep.cyclic.ok and rep.cocycle.ok and rep.j_compatible.ok

    def test_tabulated_values(self):
        t1, t2, t3, t4 = kodaira_cocycle_basis()
        assert t3.values[0][2] == unit(4, 3)      # theta3(x1,x3) = x4*
        assert t3.values[2][3] == unit(4, 0)      # theta3(x3,x4) = x1*
        assert t4.values[1][2] == unit(4, 3)      # theta4(x2,x3) = x4*
        assert t1.values[2][3] == vector([0, 0, 0, 0])  # theta1(x3,x4) = 0

    def test_single_value_fails_cyclicity(self):
        k, j = kodaira_thurston()
        theta = Cocycle.from_values(4, {(0, 1): {2: 1}})
        rep = check_cocycle(k, j, theta)
        assert not rep.cyclic.ok
        # theta(x2,x3)x1 = 0 while theta(x1,x2)x3 = 1

    def test_cyclic_cocycle_failing_compatibility(self):
        # On the abelian six-dim space every 3-form is a cyclic cocycle, but
        # the (1,3,5)-form is not compatible with the block structure.
        r6 = build("R(6,0)")
        theta = Cocycle.from_values(6, {(0, 2): {4: 1}, (0, 4): {2: -1}, (2, 4): {0: 1}})
        rep = check_cocycle(r6.algebra, r6.j, theta)
        assert rep.cyclic.ok and rep.cocycle.ok
        assert not rep.j_compatible.ok

    def test_cyclic_but_not_cocycle(self):
        core = build("L(4,2)")
        theta = Cocycle.from_values(6, {(0, 4): {5: 1}, (0, 5): {4: -1}, (4, 5): {0: 1}})
        rep = check_cocycle(core.algebra, core.j, theta)
        assert rep.cyclic.ok
        assert not rep.cocycle.ok


class TestCotangentExtension:
    def test_plane_with_zero_cocycle_is_neutral_abelian(self):
        out = tstar_extension(LieAlgebra.abelian(2), Matrix.from_rows([[0, -1], [1, 0]]), Cocycle.zero(2))
        assert out.algebra.derived_ideal().dim == 0
        assert signature(out.phi) == (2, 2)
        assert check_phq(out).ok

    def test_full_bracket_table_with_unit_coefficients(self):
        k, j = kodaira_thurston()
        t1, t2, t3, t4 = kodaira_cocycle_basis()
        theta = t1 + t2 + t3 + t4
        out = tstar_extension(k, j, theta)
        c = out.algebra.structure
        n8 = lambda *cs: vector(cs)
        assert c[0][1] == n8(0, 0, 1, 0, 0, 0, 1, 1)    # x3 + x3* + x4*
        assert c[0][2] == n8(0, 0, 0, 0, 0, -1, 0, 1)   # -x2* + x4*
        assert c[0][3] == n8(0, 0, 0, 0, 0, -1, -1, 0)  # -x2* - x3*
        assert c[1][2] == n8(0, 0, 0, 0, 1, 0, 0, 1)    # x1* + x4*
        assert c[1][3] == n8(0, 0, 0, 0, 1, 0, -1, 0)   # x1* - x3*
        assert c[2][3] == n8(0, 0, 0, 0, 1, 1, 0, 0)    # x1* + x2*
        assert c[6][0] == n8(0, 0, 0, 0, 0, 1, 0, 0)    # [x3*, x1] = x2*
        assert c[6][1] == n8(0, 0, 0, 0, -1, 0, 0, 0)   # [x3*, x2] = -x1*
        # metric and complex structure
        for i in range(4):
            assert out.phi[i, 4 + i] == 1
        assert out.j.col(0) == unit(8, 1)
        assert out.j.col(4) == unit(8, 5)

    def test_twisted_fingerprint(self):
        out = tstar_kodaira(kodaira_cocycle_basis()[2])
        assert fingerprint(out).as_tuple() == (8, 5, 3, 3, (4, 4), (1, 1))

    def test_rejects_incompatible_cocycle(self):
        r6 = build("R(6,0)")
        theta = Cocycle.from_values(6, {(0, 2): {4: 1}, (0, 4): {2: -1}, (2, 4): {0: 1}})
        with pytest.raises(InvalidCocycle):
            tstar_extension(r6.algebra, r6.j, theta)

    def test_untwisted_derived_ideal_is_totally_isotropic(self):
        out = tstar_kodaira()
        derived = out.algebra.derived_ideal()
        assert signature(gram_restriction(out.phi, derived.basis)) == (0, 0)


class TestTensorAndComplexify:
    def test_unit_algebra_preserves_fingerprint(self):
        from phq import CommutativeAlgebra

        unit_alg = CommutativeAlgebra(("1",), ((vector([1]),),), Matrix.identity(1))
        assert check_commutative(unit_alg).ok
        core = build("L(4,2)")
        out = tensor_construct(core, unit_alg)
        assert fingerprint(out) == fingerprint(core)

    def test_truncated_poly_rejects_zero(self):
        with pytest.raises(InvalidParameter):
            truncated_poly(0)

    def test_truncated_poly_small_cases(self):
        a1 = truncated_poly(1)
        assert a1.multiply(unit(1, 0), unit(1, 0)) == vector([0])
        assert a1.form[0, 0] == 1

        a2 = truncated_poly(2)
        assert a2.multiply(unit(2, 0), unit(2, 0)) == unit(2, 1)  # a*a = a^2
        assert a2.multiply(unit(2, 0), unit(2, 1)) == vector([0, 0])
        assert a2.form[0, 1] == 1 and a2.form[0, 0] == 0 and a2.form[1, 1] == 0

        a3 = truncated_poly(3)
        assert a3.form == Matrix.from_rows([[0, 0, 1], [0, 1, 0], [1, 0, 0]])
        assert check_commutative(a3).ok

    def test_tensor_with_dual_numbers_doubles_dimension(self):
        core = build("L(4,2)")
        out = tensor_construct(core, truncated_poly(2))
        assert out.dim == 12
        assert check_phq(out).ok
        idx = out.algebra.nilpotency_index()
        assert idx is not None and idx <= 3 * 2

    def test_complex_units_algebra(self):
        a = complex_units()
        assert check_commutative(a).ok
        assert a.multiply(unit(2, 1), unit(2, 1)) == vector([-1, 0])

    def test_complexify_positive_plane_is_neutral(self):
        out = complexify(build("R(2,0)"))
        assert fingerprint(out) == fingerprint(build("R(2,2)"))

    def test_complexify_core(self):
        core = build("L(4,2)")
        out = complexify(core)
        assert out.dim == 12
        assert check_phq(out).ok
        assert signature(out.phi) == (6, 6)
        assert out.algebra.center().dim == 2 * core.algebra.center().dim
