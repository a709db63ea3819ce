"""Graded modules, braiding and twist diagrams, S-matrix."""

from fractions import Fraction

import pytest

from equidouble.doubles import sector_double
from equidouble.errors import ResourceError, UsageError
from equidouble.groups import (
    cyclic_group,
    extension_from_subgroup,
    symmetric_group,
)
from equidouble.linalg import ExactMatrix
from equidouble.modular import (
    GradedModule,
    ModuleMap,
    action_braiding_holds,
    braid,
    check_equivariant_diagrams,
    compositor,
    degree_split,
    dual_map,
    dual_module,
    fuse,
    hexagon_one_holds,
    hexagon_two_holds,
    identity_map,
    j_act,
    j_act_map,
    modularity_verdict,
    r_action_map,
    s_matrix,
    s_matrix_character_formula,
    simples_of_double,
    tensor_map,
    trivial_extension,
    twist,
    twist_action_holds,
    twist_duality_holds,
    twist_product_holds,
    unit_module,
)
from equidouble.scalars import Cyclotomic, scalar_eq

ONE = Fraction(1)


def a3_in_s3():
    s3 = symmetric_group(3)
    a3 = [g for g in range(6) if s3.element_order(g) != 2]
    return extension_from_subgroup(s3, a3, name="A3-S3")


def z2_in_z4():
    return extension_from_subgroup(cyclic_group(4), [0, 2], name="Z2-Z4")


def test_simples_of_trivially_extended_s3_match_the_known_double():
    ext = trivial_extension(symmetric_group(3))
    simples = simples_of_double(ext)
    assert len(simples) == 8
    assert sum(v.dim * v.dim for v in simples) == 36
    assert sorted(v.dim for v in simples) == [1, 1, 2, 2, 2, 2, 3, 3]
    for v in simples:
        assert v.validate_action()
        assert v.degree() == 0


def test_simples_of_the_sector_double_of_a3_in_s3():
    ext = a3_in_s3()
    simples = simples_of_double(ext)
    assert len(simples) == 10
    assert sorted(v.dim for v in simples) == [1] * 9 + [3]
    for v in simples:
        assert v.validate_action()
        assert v.degree() is not None
    big = next(v for v in simples if v.dim == 3)
    assert big.degree() == 1
    assert all(ext.H.element_order(h) == 2 for h in big.grades)


def test_fusion_is_strictly_unital_and_associative():
    ext = a3_in_s3()
    simples = simples_of_double(ext)
    one = unit_module(ext)
    u, v, w = simples[1], simples[-1], simples[4]
    assert fuse(one, v) == v
    assert fuse(v, one) == v
    assert fuse(fuse(u, v), w) == fuse(u, fuse(v, w))
    assert fuse(u, v).validate_action()


def test_sector_action_is_strict_on_fusion_and_trivial_at_identity():
    ext = a3_in_s3()
    simples = simples_of_double(ext)
    u, v = simples[3], simples[-1]
    assert j_act(0, v) == v
    assert j_act(1, fuse(u, v)) == fuse(j_act(1, u), j_act(1, v))
    assert j_act(1, dual_module(v)) == dual_module(j_act(1, v))
    assert j_act(1, v).validate_action()


def test_sector_action_permutes_conjugate_simples():
    ext = a3_in_s3()
    simples = simples_of_double(ext)
    cycles = [v for v in simples if v.dim == 1 and ext.H.element_order(v.grades[0]) == 3]
    assert len(cycles) == 6
    v = cycles[0]
    moved = j_act(1, v)
    assert any(moved == w for w in simples)
    assert moved.grades[0] == ext.H.inv[v.grades[0]]
    assert j_act(1, moved) == v


def test_degree_split_recovers_block_summands():
    ext = a3_in_s3()
    simples = simples_of_double(ext)
    a = next(v for v in simples if v.degree() == 0 and v.dim == 1)
    b = next(v for v in simples if v.degree() == 1)
    grades = a.grades + b.grades
    mats = []
    for g in range(ext.G.order):
        m = ExactMatrix.zeros(a.dim + b.dim, a.dim + b.dim)
        for r in range(a.dim):
            for c in range(a.dim):
                m[r, c] = a.act(g)[r, c]
        for r in range(b.dim):
            for c in range(b.dim):
                m[a.dim + r, a.dim + c] = b.act(g)[r, c]
        mats.append(m)
    mixed = GradedModule(ext, grades, mats)
    assert mixed.degree() is None
    with pytest.raises(UsageError):
        twist(mixed)
    parts = degree_split(mixed)
    assert set(parts) == {0, 1}
    assert parts[0][0] == a and parts[0][1] == tuple(range(a.dim))
    assert parts[1][0] == b and parts[1][1] == tuple(range(a.dim, a.dim + b.dim))


def test_module_constructors_reject_bad_data():
    ext = a3_in_s3()
    v = simples_of_double(ext)[-1]
    bad = [m.copy() for m in v.matrices]
    bad[0][0, 0] = Fraction(2)
    with pytest.raises(UsageError):
        GradedModule(ext, v.grades, bad)
    with pytest.raises(UsageError):
        GradedModule(ext, (ext.section[1],), [ExactMatrix.identity(1)] * ext.G.order)
    with pytest.raises(UsageError):
        ModuleMap(v, v, ExactMatrix.zeros(2, v.dim))


def test_braid_twist_compositor_are_invertible_intertwiners():
    for ext in (a3_in_s3(), z2_in_z4()):
        simples = simples_of_double(ext)
        u, v = simples[1], simples[-1]
        for f in (
            braid(u, v),
            braid(v, u),
            twist(u),
            twist(v),
            compositor(1, 1, v),
            compositor(0, 1, v),
        ):
            assert f.intertwines()
            assert f.is_invertible()


def test_braid_agrees_with_the_r_matrix_action():
    for ext in (a3_in_s3(), z2_in_z4()):
        sd = sector_double(ext)
        simples = simples_of_double(ext)
        for u in simples[:3] + simples[-2:]:
            for v in simples[:3] + simples[-2:]:
                assert braid(u, v).equals(r_action_map(sd, u, v))


def test_full_diagram_suite_for_a3_in_s3():
    report = check_equivariant_diagrams(a3_in_s3())
    assert report.all_passed, report.failures[:5]
    assert report.counts["hexagon-one"] == 1000
    assert report.counts["hexagon-two"] == 1000
    assert report.counts["action-braiding"] == 200
    assert report.counts["twist-product"] == 100
    assert report.counts["braid-equals-r-action"] == 100
    assert report.counts["twist-action"] == 20
    assert report.counts["twist-duality"] == 10


def test_full_diagram_suite_for_z2_in_z4():
    report = check_equivariant_diagrams(z2_in_z4())
    assert report.all_passed, report.failures[:5]
    assert report.counts["hexagon-one"] == 512


def test_negative_control_sign_flipped_braiding_breaks_a_hexagon():
    ext = a3_in_s3()
    simples = simples_of_double(ext)
    u, v, w = simples[-1], simples[2], simples[5]
    assert hexagon_one_holds(u, v, w)
    good = braid(u, fuse(v, w))
    flipped = ModuleMap(good.source, good.target, good.matrix.scale(Fraction(-1)))
    i = u.degree()
    rhs = tensor_map(braid(u, v), identity_map(w)).then(
        tensor_map(identity_map(j_act(i, v)), braid(u, w))
    )
    assert not flipped.equals(rhs)


def test_negative_control_inverted_grade_braiding_fails_r_comparison():
    ext = a3_in_s3()
    sd = sector_double(ext)
    H = ext.H
    simples = simples_of_double(ext)
    cycles = [
        s
        for s in simples
        if s.dim == 1
        and H.element_order(s.grades[0]) == 3
        and not scalar_eq(twist(s).matrix[0, 0], ONE)
    ]
    v = w = cycles[0]
    source = fuse(v, w)
    target = fuse(j_act(v.degree(), w), v)
    mat = ExactMatrix.zeros(target.dim, source.dim)
    u = ext.g_of(H.inv[v.grades[0]])
    mat[0, 0] = w.act(u)[0, 0]
    wrong = ModuleMap(source, target, mat)
    assert not wrong.equals(braid(v, w))
    assert not wrong.equals(r_action_map(sd, v, w))


def test_twist_scalars_on_the_double_of_z2():
    ext = trivial_extension(cyclic_group(2))
    simples = simples_of_double(ext)
    assert [v.grades[0] for v in simples] == [0, 0, 1, 1]
    scalars = [twist(v).matrix[0, 0] for v in simples]
    assert scalars == [ONE, ONE, ONE, -ONE]


def test_twist_scalars_on_the_double_of_z4_are_fourth_roots():
    ext = trivial_extension(cyclic_group(4))
    simples = simples_of_double(ext)
    assert len(simples) == 16
    zeta = Cyclotomic.zeta(4)
    v = next(s for s in simples if s.grades[0] == 1 and scalar_eq(twist(s).matrix[0, 0], zeta))
    assert scalar_eq(twist(fuse(v, v)).matrix[0, 0], ONE)
    assert scalar_eq(twist(fuse(v, fuse(v, v))).matrix[0, 0], zeta)


def test_s_matrix_of_z2_double_matches_the_hand_computed_table():
    sm = s_matrix(cyclic_group(2))
    assert sm.labels == ((0, 0), (0, 1), (1, 0), (1, 1))
    expected = ExactMatrix.from_rows(
        [
            [ONE, ONE, ONE, ONE],
            [ONE, ONE, -ONE, -ONE],
            [ONE, -ONE, ONE, -ONE],
            [ONE, -ONE, -ONE, ONE],
        ]
    )
    assert sm.matrix == expected
    assert sm.is_symmetric()
    assert sm.is_invertible()


def test_s_matrix_trace_equals_the_character_formula():
    for group in (cyclic_group(2), cyclic_group(3), symmetric_group(3)):
        traced = s_matrix(group)
        counted = s_matrix_character_formula(group)
        assert traced.labels == counted.labels
        assert traced.matrix.rows == counted.matrix.rows
        for r in range(traced.matrix.rows):
            for c in range(traced.matrix.cols):
                assert scalar_eq(traced.matrix[r, c], counted.matrix[r, c])


def test_s_matrices_of_small_doubles_are_invertible():
    for group, size in ((symmetric_group(3), 8), (cyclic_group(4), 16)):
        sm = s_matrix(group)
        assert sm.matrix.rows == size
        assert sm.is_symmetric()
        assert sm.is_invertible()
    with pytest.raises(ResourceError):
        s_matrix(symmetric_group(5))


def test_first_row_of_the_s_matrix_lists_total_dimensions():
    group = symmetric_group(3)
    sm = s_matrix(group)
    dims = [v.dim for v in simples_of_double(trivial_extension(group))]
    for c, d in enumerate(dims):
        assert sm.matrix[0, c] == Fraction(d)


def test_modularity_verdict_for_the_catalogue_extensions():
    for ext in (a3_in_s3(), z2_in_z4()):
        verdict = modularity_verdict(ext)
        assert verdict.orbifold_modular
        assert verdict.j_modular_claim
        assert verdict.identification_checked


def test_dual_pairing_diagrams():
    ext = a3_in_s3()
    simples = simples_of_double(ext)
    v = next(s for s in simples if s.dim == 3)
    dv = dual_module(v)
    assert dv.validate_action()
    assert dv.degree() == ext.J.inv[v.degree()]
    assert dual_module(dv) == v
    f = twist(v)
    assert dual_map(dual_map(f)).equals(f)
    assert twist_duality_holds(v)


def test_single_diagram_helpers_accept_shifted_modules():
    ext = z2_in_z4()
    simples = simples_of_double(ext)
    u = j_act(1, simples[-1])
    v = simples[2]
    w = simples[5]
    assert hexagon_one_holds(u, v, w)
    assert hexagon_two_holds(u, v, w)
    assert action_braiding_holds(1, u, v)
    assert twist_product_holds(u, v)
    assert twist_action_holds(1, u)
    assert twist_duality_holds(u)
    shifted = j_act_map(1, braid(u, v))
    assert shifted.source == j_act(1, fuse(u, v))
