"""Crossed product of the graded double and its comparison with D(H)."""

from fractions import Fraction

import pytest

from equidouble.doubles import double_algebra, sector_double
from equidouble.errors import NonInvertibleError
from equidouble.hopf import (
    t_eq,
    v_eq,
    verify_hopf,
    verify_quasitriangular,
    verify_ribbon,
)
from equidouble.groups import (
    cyclic_group,
    dihedral_group,
    extension_from_subgroup,
    symmetric_group,
)
from equidouble.linalg import ExactMatrix, inverse
from equidouble.orbifold import (
    verify_sector_double,
    algebra_inverse,
    orbifold_algebra,
    orbifold_ribbon,
    psi_check,
    psi_permutation,
)

ONE = Fraction(1)


def a3_in_s3():
    s3 = symmetric_group(3)
    a3 = [g for g in range(6) if s3.element_order(g) != 2]
    return extension_from_subgroup(s3, a3, name="A3-S3")


def z2_in_z4():
    return extension_from_subgroup(cyclic_group(4), [0, 2], name="Z2-Z4")


def z4_in_d4():
    d4 = dihedral_group(4)
    rot = next(g for g in range(8) if d4.element_order(g) == 4)
    z4 = sorted(d4.closure([rot]))
    return extension_from_subgroup(d4, z4, name="Z4-D4")


def test_orbifold_dimension_and_hopf_axioms():
    sd = sector_double(a3_in_s3())
    ohat = orbifold_algebra(sd)
    assert ohat.dim == 36
    report = verify_hopf(ohat)
    assert report.all_passed, report.failing()


def test_orbifold_of_trivial_sector_group_is_the_double_itself():
    sd = double_algebra(symmetric_group(3))
    ohat = orbifold_algebra(sd)
    assert ohat.dim == sd.hopf.dim
    for x in range(ohat.dim):
        for y in range(ohat.dim):
            assert v_eq(ohat.mul_basis(x, y), sd.hopf.mul_basis(x, y))
        assert t_eq(ohat.comul_basis(x), sd.hopf.comul_basis(x))
        assert ohat.counit_basis(x) == sd.hopf.counit_basis(x)
        assert v_eq(ohat.antipode_basis(x), sd.hopf.antipode_basis(x))


def test_strict_coherence_gives_smash_product():
    ext = a3_in_s3()
    sd = sector_double(ext)
    for key, coh in sd.coherence.items():
        assert v_eq(coh, sd.hopf.unit), f"section of {ext.name} is not a complement at {key}"
    ohat = orbifold_algebra(sd)
    n_j = ext.J.order
    for a in range(sd.hopf.dim):
        for b in range(sd.hopf.dim):
            for i in range(n_j):
                for j in range(n_j):
                    got = ohat.mul_basis(a * n_j + i, b * n_j + j)
                    plain = sd.hopf.mul_basis(a, sd.phi[i][b])
                    ij = ext.J.mul(i, j)
                    want = {k * n_j + ij: c for k, c in plain.items()}
                    assert v_eq(got, want)


def test_first_tensor_factor_is_a_hopf_subalgebra():
    sd = sector_double(z2_in_z4())
    ohat = orbifold_algebra(sd)
    n_j = sd.ext.J.order
    for a in range(sd.hopf.dim):
        for b in range(sd.hopf.dim):
            got = ohat.mul_basis(a * n_j, b * n_j)
            want = {k * n_j: c for k, c in sd.hopf.mul_basis(a, b).items()}
            assert v_eq(got, want)
        got_t = ohat.comul_basis(a * n_j)
        want_t = {(x * n_j, y * n_j): c for (x, y), c in sd.hopf.comul_basis(a).items()}
        assert t_eq(got_t, want_t)


def test_counit_weighted_quotient_onto_sector_group_algebra():
    ext = z2_in_z4()
    sd = sector_double(ext)
    ohat = orbifold_algebra(sd)
    n_j = ext.J.order

    def project(vec):
        out = [Fraction(0)] * n_j
        for k, c in vec.items():
            a, j = divmod(k, n_j)
            out[j] += c * sd.hopf.counit_basis(a)
        return out

    for a in range(sd.hopf.dim):
        for i in range(n_j):
            for b in range(sd.hopf.dim):
                for j in range(n_j):
                    lhs = project(ohat.mul_basis(a * n_j + i, b * n_j + j))
                    rhs = [Fraction(0)] * n_j
                    rhs[ext.J.mul(i, j)] = sd.hopf.counit_basis(a) * sd.hopf.counit_basis(b)
                    assert lhs == rhs
    unit_image = project(ohat.unit)
    assert unit_image[0] == 1 and all(c == 0 for c in unit_image[1:])


def test_algebra_inverse_certifies_and_rejects():
    sd = double_algebra(cyclic_group(2))
    hopf = sd.hopf
    inv = algebra_inverse(hopf, dict(hopf.unit))
    assert v_eq(inv, hopf.unit)
    with pytest.raises(NonInvertibleError):
        algebra_inverse(hopf, {0: ONE})


def test_orbifold_ribbon_passes_quasitriangular_and_ribbon_axioms():
    sd = sector_double(a3_in_s3())
    ohat = orbifold_algebra(sd)
    rib = orbifold_ribbon(sd, ohat)
    qt = verify_quasitriangular(rib)
    assert qt.all_passed, qt.failing()
    rb = verify_ribbon(rib)
    assert rb.all_passed, rb.failing()


def test_psi_check_passes_for_catalogue_extensions():
    for ext in (a3_in_s3(), z2_in_z4()):
        report = psi_check(ext)
        assert report.bijective
        assert report.product
        assert report.coproduct
        assert report.rmatrix
        assert report.twist
        assert report.all_passed and report.witnesses == {}


def test_psi_permutation_is_a_bijection_onto_big_double_labels():
    ext = z4_in_d4()
    sd = sector_double(ext)
    perm = psi_permutation(sd)
    assert sorted(perm) == list(range(ext.H.order ** 2))


def test_psi_negative_control_bad_section_fails_product_with_witness():
    ext = z2_in_z4()
    bad_section = (2, 1)
    report = psi_check(ext, section=bad_section)
    assert report.bijective
    assert not report.product
    assert "product" in report.witnesses


def test_module_converter_round_trip_on_regular_module():
    ext = z2_in_z4()
    sd = sector_double(ext)
    dh = double_algebra(ext.H)
    ohat = orbifold_algebra(sd)
    perm = psi_permutation(sd)
    n = ohat.dim
    n_j = ext.J.order

    def rho_tilde(x: int) -> ExactMatrix:
        mat = ExactMatrix.zeros(n, n)
        for col in range(n):
            prod = dh.hopf.mul_basis(perm[x], perm[col])
            back = {perm.index(k): c for k, c in prod.items()}
            for row, c in back.items():
                mat[row, col] = c
        return mat

    def matrix_of(vec) -> ExactMatrix:
        mat = ExactMatrix.zeros(n, n)
        for x, cx in vec.items():
            block = rho_tilde(x)
            for r in range(n):
                for c in range(n):
                    mat[r, c] = mat[r, c] + cx * block[r, c]
        return mat

    psi_maps = []
    for j in range(n_j):
        jinv_vec = {k * n_j + ext.J.inv[j]: c for k, c in sd.hopf.unit.items()}
        psi_maps.append(inverse(matrix_of(jinv_vec)))
    for a in range(sd.hopf.dim):
        rho_a = matrix_of({a * n_j: ONE})
        for j in range(n_j):
            reconstructed = rho_a @ inverse(psi_maps[ext.J.inv[j]])
            assert reconstructed.data == rho_tilde(a * n_j + j).data


def test_sector_axiom_suite_passes_for_catalogue_extensions():
    for build in (a3_in_s3, z2_in_z4, z4_in_d4):
        sd = sector_double(build())
        report = verify_sector_double(sd)
        assert report.all_passed(), (build.__name__, report.failing())
        assert report.mode == "full"


def test_sector_axiom_suite_detects_single_entry_corruptions():
    sd = sector_double(z2_in_z4())
    key = next(iter(sd.r_sector[(1, 1)]))
    sd.r_sector[(1, 1)][key] = Fraction(2)
    report = verify_sector_double(sd)
    assert "rmatrix-sectors" in report.failing()

    sd = sector_double(a3_in_s3())
    swapped = [sd.phi[1][1], sd.phi[1][0]] + list(sd.phi[1][2:])
    sd.phi = (sd.phi[0], tuple(swapped))
    report = verify_sector_double(sd)
    assert "phi-hopf-map" in report.failing()

    sd = sector_double(a3_in_s3())
    entry = next(iter(sd.theta[1]))
    sd.theta[1][entry] = -sd.theta[1][entry]
    report = verify_sector_double(sd)
    assert "twist-sectors" in report.failing()

    sd = sector_double(z2_in_z4())
    entry = next(iter(sd.coherence[(1, 1)]))
    sd.coherence[(1, 1)][entry] = Fraction(3)
    report = verify_sector_double(sd)
    assert not report.all_passed()

    sd = sector_double(z2_in_z4())
    pair = next(k for k, v in sd.hopf._mul.items() if v)
    target = next(iter(sd.hopf._mul[pair]))
    sd.hopf._mul[pair][target] = Fraction(5)
    report = verify_sector_double(sd)
    assert "hopf-axioms" in report.failing()
