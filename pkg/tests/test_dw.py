"""Homomorphism counting, surface state spaces, twisted sectors, Cech classes."""

import itertools
from fractions import Fraction

import pytest

from equidouble.dw import (
    CechClasses,
    CoverNerve,
    Presentation,
    TwistHom,
    circle_nerve,
    count_homs,
    dw_invariant,
    evaluate_word,
    hom_groupoid,
    homomorphisms,
    presentation_by_name,
    surface_presentation,
    surface_state_dim,
    twisted_bundle_groupoid,
    twisted_cech_h1,
)
from equidouble.errors import ResourceError, UsageError
from equidouble.groupoids import GroupAction, groupoid_cardinality
from equidouble.groups import (
    cyclic_group,
    dihedral_group,
    extension_from_subgroup,
    extension_to_weak_action,
    quaternion_group,
    symmetric_group,
)


def a3_in_s3():
    s3 = symmetric_group(3)
    a3 = [g for g in range(6) if s3.element_order(g) != 2]
    return extension_from_subgroup(s3, a3, name="A3-S3")


def z2_in_z4():
    z4 = cyclic_group(4)
    return extension_from_subgroup(z4, [0, 2], name="Z2-Z4")


def test_presentation_validation():
    Presentation(2, ((1, 2, -1, -2),))
    with pytest.raises(UsageError):
        Presentation(-1, ())
    with pytest.raises(UsageError):
        Presentation(1, ((2,),))
    with pytest.raises(UsageError):
        Presentation(1, ((0,),))


def test_evaluate_word_commutator():
    s3 = symmetric_group(3)
    r = next(g for g in range(6) if s3.element_order(g) == 3)
    f = next(g for g in range(6) if s3.element_order(g) == 2)
    comm = s3.mul(s3.mul(r, f), s3.mul(s3.inv[r], s3.inv[f]))
    assert evaluate_word(s3, (r, f), (1, 2, -1, -2)) == comm
    assert evaluate_word(s3, (r,), (1, -1)) == 0
    assert evaluate_word(s3, (), ()) == 0


def test_point_presentation_counts_one_hom():
    for grp in (symmetric_group(3), cyclic_group(4), quaternion_group()):
        pres = presentation_by_name("S3sphere")
        assert count_homs(pres, grp) == 1
        assert dw_invariant(pres, grp) == Fraction(1, grp.order)


def test_free_rank_one_counts_group_order():
    pres = presentation_by_name("S2xS1")
    for grp in (symmetric_group(3), dihedral_group(4), cyclic_group(6)):
        assert count_homs(pres, grp) == grp.order
        assert dw_invariant(pres, grp) == 1


def test_torus_counts_commuting_pairs_bruteforce():
    pres = presentation_by_name("T2")
    for grp in (symmetric_group(3), quaternion_group()):
        oracle = sum(
            1
            for a in range(grp.order)
            for b in range(grp.order)
            if grp.mul(a, b) == grp.mul(b, a)
        )
        assert count_homs(pres, grp) == oracle


def test_three_torus_counts_commuting_triples_bruteforce():
    pres = presentation_by_name("T3")
    s3 = symmetric_group(3)
    oracle = 0
    for a, b, c in itertools.product(range(6), repeat=3):
        if (
            s3.mul(a, b) == s3.mul(b, a)
            and s3.mul(a, c) == s3.mul(c, a)
            and s3.mul(b, c) == s3.mul(c, b)
        ):
            oracle += 1
    assert count_homs(pres, s3) == oracle
    assert dw_invariant(pres, s3) == Fraction(oracle, 6)


def test_homomorphisms_are_lexicographic_and_closed_under_relations():
    pres = Presentation(1, ((1, 1),))
    d4 = dihedral_group(4)
    homs = homomorphisms(pres, d4)
    involutions = [g for g in range(8) if d4.mul(g, g) == 0]
    assert [h[0] for h in homs] == involutions


def test_invariant_equals_gauge_groupoid_cardinality():
    for name, grp in (("T2", symmetric_group(3)), ("T2", cyclic_group(4)), ("S2xS1", quaternion_group())):
        pres = presentation_by_name(name)
        action, points = hom_groupoid(pres, grp)
        assert len(points) == count_homs(pres, grp)
        assert groupoid_cardinality(action) == dw_invariant(pres, grp)


def test_surface_presentations():
    assert surface_presentation(0) == Presentation(0, ())
    assert surface_presentation(1).relations == presentation_by_name("T2").relations
    sigma2 = surface_presentation(2)
    assert sigma2.generators == 4
    assert sigma2.relations == ((1, 2, -1, -2, 3, 4, -3, -4),)
    assert presentation_by_name("Sigma_2") == sigma2


def test_surface_state_dims():
    s3 = symmetric_group(3)
    assert surface_state_dim(0, s3) == 1
    assert surface_state_dim(0, quaternion_group()) == 1
    assert surface_state_dim(1, s3) == 8
    for n in (2, 3, 4):
        assert surface_state_dim(1, cyclic_group(n)) == n * n
    assert surface_state_dim(2, cyclic_group(2)) == 16


def test_budget_errors_name_the_search_space():
    s3 = symmetric_group(3)
    with pytest.raises(ResourceError, match=r"6\^5 = 7776"):
        count_homs(Presentation(5, ()), s3, budget=1000)
    assert count_homs(Presentation(4, ()), cyclic_group(2), budget=1) == 16


def test_twist_hom_validation():
    z4 = cyclic_group(4)
    TwistHom(Presentation(1, ((1, 1),)), z4, (2,))
    with pytest.raises(UsageError):
        TwistHom(Presentation(1, ((1, 1),)), z4, (1,))
    with pytest.raises(UsageError):
        TwistHom(Presentation(2, ()), z4, (1,))
    with pytest.raises(UsageError):
        TwistHom(Presentation(1, ()), z4, (7,))


def test_circle_sectors_match_fiber_conjugation():
    ext = a3_in_s3()
    circle = presentation_by_name("circle")
    for j in range(2):
        twist = TwistHom(circle, ext.J, (j,))
        action, points = twisted_bundle_groupoid(twist, ext)
        assert tuple(p[0] for p in points) == ext.fiber(j)

        fiber = ext.fiber(j)
        pos = {h: i for i, h in enumerate(fiber)}
        rows = []
        for g in range(ext.G.order):
            rows.append([pos[ext.H.conj(ext.incl(g), h)] for h in fiber])
        oracle = GroupAction(ext.G, len(fiber), rows)
        assert len(action.orbits()) == len(oracle.orbits())
        got = sorted(len(action.stabilizer(m)) for m in range(action.num_points))
        want = sorted(len(oracle.stabilizer(m)) for m in range(oracle.num_points))
        assert got == want
    twisted, _ = twisted_bundle_groupoid(TwistHom(circle, ext.J, (1,)), ext)
    assert len(twisted.orbits()) == 1
    assert groupoid_cardinality(twisted) == 1
    neutral, _ = twisted_bundle_groupoid(TwistHom(circle, ext.J, (0,)), ext)
    assert len(neutral.orbits()) == 3


def test_circle_sectors_z2_in_z4():
    ext = z2_in_z4()
    circle = presentation_by_name("circle")
    for j in range(2):
        action, points = twisted_bundle_groupoid(TwistHom(circle, ext.J, (j,)), ext)
        assert len(points) == 2
        assert len(action.orbits()) == 2
        assert all(len(action.stabilizer(m)) == 2 for m in range(2))


def test_torus_lifts_respect_relations():
    ext = a3_in_s3()
    pres = presentation_by_name("T2")
    twist = TwistHom(pres, ext.J, (0, 0))
    action, points = twisted_bundle_groupoid(twist, ext)
    a3 = [ext.incl(g) for g in range(3)]
    oracle = [
        (a, b)
        for a in a3
        for b in a3
        if ext.H.mul(a, b) == ext.H.mul(b, a)
    ]
    assert list(points) == oracle


def test_cover_nerve_validation():
    z2 = cyclic_group(2)
    CoverNerve(z2, 3, ((0, 1), (1, 2), (0, 2)), (1, 1, 0), ((0, 1, 2),))
    with pytest.raises(UsageError):
        CoverNerve(z2, 3, ((0, 1), (1, 2), (0, 2)), (1, 1, 1), ((0, 1, 2),))
    with pytest.raises(UsageError):
        CoverNerve(z2, 2, ((1, 0),), (0,))
    with pytest.raises(UsageError):
        CoverNerve(z2, 2, ((0, 1), (0, 1)), (0, 0))
    with pytest.raises(UsageError):
        CoverNerve(z2, 2, ((0, 1),), (3,))


def test_circle_nerve_has_no_triangles():
    z2 = cyclic_group(2)
    nerve = circle_nerve(z2, 1)
    assert nerve.vertices == 3
    assert nerve.triangles == ()
    assert nerve.jlabels == (0, 0, 1)


def test_untwisted_cech_counts_conjugacy_classes():
    s3 = symmetric_group(3)
    ext = extension_from_subgroup(s3, list(range(6)), name="S3-S3")
    wa = extension_to_weak_action(ext)
    nerve = circle_nerve(ext.J, 0)
    result = twisted_cech_h1(nerve, wa)
    assert result.count == len(s3.conjugacy().classes)


def test_twisted_cech_matches_sector_groupoid():
    circle = presentation_by_name("circle")
    for ext in (a3_in_s3(), z2_in_z4()):
        wa = extension_to_weak_action(ext)
        for j in range(ext.J.order):
            nerve = circle_nerve(ext.J, j)
            result = twisted_cech_h1(nerve, wa)
            action, _ = twisted_bundle_groupoid(TwistHom(circle, ext.J, (j,)), ext)
            assert result.count == len(action.orbits())
            assert len(result.representatives) == result.count


def test_cech_single_patch_is_trivial():
    ext = a3_in_s3()
    wa = extension_to_weak_action(ext)
    nerve = CoverNerve(ext.J, 1, (), ())
    assert twisted_cech_h1(nerve, wa) == CechClasses(1, ((),))


def test_cech_full_triangle_is_contractible():
    s3 = symmetric_group(3)
    ext = extension_from_subgroup(s3, list(range(6)), name="S3-S3")
    wa = extension_to_weak_action(ext)
    nerve = CoverNerve(ext.J, 3, ((0, 1), (1, 2), (0, 2)), (0, 0, 0), ((0, 1, 2),))
    result = twisted_cech_h1(nerve, wa)
    assert result.count == 1


def test_cech_budget_error():
    ext = a3_in_s3()
    wa = extension_to_weak_action(ext)
    nerve = circle_nerve(ext.J, 0)
    with pytest.raises(ResourceError, match=r"3\^3 = 27"):
        twisted_cech_h1(nerve, wa, budget=10)


def test_named_presentations():
    assert presentation_by_name("T3").generators == 3
    assert presentation_by_name("circle").relations == ()
    with pytest.raises(UsageError):
        presentation_by_name("Klein")
