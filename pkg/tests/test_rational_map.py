import itertools
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lrcmaps.analysis.code import RankDeficiencyWarning
from lrcmaps.analysis.distance import min_distance
from lrcmaps.curves import hermitian_blueprint, hermitian_curve, rational_points
from lrcmaps.field import GF
from lrcmaps.poly import MultiPoly
from lrcmaps.rational_map import (
    CodeBlueprint,
    FibreStructure,
    LocalityError,
    PoleError,
    RationalFunction,
    RecoveryStructure,
    assemble_space,
    build_code,
    checksum_eligible,
    domain_filter,
    fibres,
    locality_of,
    projection_fibres,
    prune_points,
    restriction_degrees_ok,
)
from lrcmaps.reproduce import EXAMPLE_23_POINTS, example_23_blueprints

F3 = GF(3)
ALL27 = np.array(list(itertools.product(range(3), repeat=3)))


def ex23_maps():
    return RationalFunction.parse("(x1)/(x2)", F3, 3), RationalFunction.parse("(x2 + 2)/(x3)", F3, 3)


def test_domain_filter_example():
    phi1, phi2 = ex23_maps()
    A = domain_filter([phi1, phi2], ALL27)
    # y and z nonzero: 3 * 2 * 2 points
    assert A.shape[0] == 12
    assert np.all(A[:, 1] != 0) and np.all(A[:, 2] != 0)
    x = RationalFunction.var(F3, 3, 0)
    assert np.array_equal(domain_filter([x], ALL27), ALL27)
    assert domain_filter([phi1], ALL27[:0]).shape[0] == 0


def test_example_fibres():
    phi1, phi2 = ex23_maps()
    A = domain_filter([phi1, phi2], ALL27)
    fs = fibres([phi1], phi2, A)
    zero = fs.fibres[[b for b in fs.base_values].index((0,))]
    assert {tuple(A[i]) for i in zero} == {(0, 1, 1), (0, 1, 2), (0, 2, 1), (0, 2, 2)}
    P = np.array(EXAMPLE_23_POINTS)
    fp = fibres([phi1], phi2, P)
    assert sorted(fp.sizes()) == [3, 3, 3]
    assert all(fp.distinct_nodes(j) == 3 for j in range(len(fp)))
    assert locality_of(fp, 1) == 2


def test_fibres_reject_poles():
    phi1, phi2 = ex23_maps()
    with pytest.raises(PoleError):
        fibres([phi1], phi2, ALL27)


def test_identity_projection_gives_singletons():
    pts = ALL27
    x = [RationalFunction.var(F3, 3, i) for i in range(3)]
    fs = fibres(x, x[0], pts)
    assert fs.sizes() == [1] * 27
    with pytest.raises(LocalityError):
        locality_of(fs, 1)


def test_hermitian_fibres():
    pts = rational_points(hermitian_curve(3))
    assert pts.shape[0] == 27
    fs = projection_fibres(pts, 1)
    assert len(fs) == 9 and set(fs.sizes()) == {3}
    assert locality_of(fs, 2) == 1


def test_fibre_structure_must_partition():
    with pytest.raises(ValueError):
        FibreStructure(((0, 1), (1, 2)), np.array([0, 1, 2]), ((0,), (1,)))


def test_assemble_space_examples():
    phi1, phi2 = ex23_maps()
    one = RationalFunction.const(F3, 3)
    V1 = assemble_space([[one, phi1], [one]], phi2)
    assert len(V1) == 3 and [b.power for b in V1] == [0, 0, 1]
    assert len(assemble_space([[one]], phi2)) == 1
    V2 = assemble_space([[one, phi1, phi1**2], [one, phi1]], phi2)
    assert len(V2) == 5


def test_example_codes():
    c1, c2 = (build_code(bp) for bp in example_23_blueprints())
    assert (c1.n, c1.k, min_distance(c1).value) == (9, 3, 6)
    assert (c2.n, c2.k, min_distance(c2).value) == (9, 5, 3)


def test_repetition_code():
    pts = ALL27
    fs = projection_fibres(pts, 0)
    one = RationalFunction.const(F3, 3)
    bp = CodeBlueprint(F3, pts, assemble_space([[one]], RationalFunction.var(F3, 3, 2)), [RecoveryStructure(fs, 1)], None, {})
    code = build_code(bp)
    assert (code.n, code.k, min_distance(code).value) == (27, 1, 27)


def test_rank_deficiency_warns():
    bp = example_23_blueprints()[0]
    bp2 = CodeBlueprint(bp.field, bp.points, list(bp.basis) + [bp.basis[0]], bp.structures, None, {})
    with pytest.warns(RankDeficiencyWarning):
        assert build_code(bp2).k == 3


def test_restriction_degrees_on_examples():
    for bp in example_23_blueprints():
        assert restriction_degrees_ok(bp)
        assert checksum_eligible(bp)
    for shape in ("rect", "weighted", "dist"):
        bp = hermitian_blueprint(3, shape, 2)
        assert restriction_degrees_ok(bp)
        assert checksum_eligible(bp)


def test_prune_keeps_one_point_per_node():
    phi1, phi2 = ex23_maps()
    A = domain_filter([phi1, phi2], ALL27)
    P = prune_points(A, [phi1], phi2)
    fs = fibres([phi1], phi2, P)
    for j in range(len(fs)):
        assert fs.distinct_nodes(j) == len(fs.fibres[j])


def test_blueprint_json_round_trip():
    for bp in example_23_blueprints() + [hermitian_blueprint(2, "weighted", 1)]:
        again = CodeBlueprint.from_json(bp.to_json())
        assert np.array_equal(again.evaluation_matrix(), bp.evaluation_matrix())
        assert again.to_json() == bp.to_json()
        assert [s.fibres.fibres for s in again.structures] == [s.fibres.fibres for s in bp.structures]


def test_interpolation_degree_checked():
    bp = example_23_blueprints()[1]
    # the node power 1 exceeds r - 1 = 0 when r = 1
    with pytest.raises(LocalityError):
        CodeBlueprint(bp.field, bp.points, bp.basis, [RecoveryStructure(bp.fibre_structure, 1)], None, {})


@given(st.lists(st.integers(0, 2), min_size=3, max_size=3), st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_rational_function_evaluation(num, den):
    x = [MultiPoly.var(F3, 3, i) for i in range(3)]
    n = sum((x[i] * F3(c) for i, c in enumerate(num)), MultiPoly(F3, 3))
    d = sum((x[i] * F3(c) for i, c in enumerate(den)), MultiPoly.constant(F3, 3))
    f = RationalFunction(n, d)
    mask = f.pole_mask(ALL27)
    vals = f.evaluate_many(ALL27[~mask])
    for p, v in zip(ALL27[~mask], vals):
        pe = [F3(int(c)) for c in p]
        assert F3.div(n.evaluate(pe).code, d.evaluate(pe).code) == v
    assert RationalFunction.parse(f.to_text(), F3, 3).to_text() == f.to_text()
