import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lrcmaps.analysis.bounds import classify
from lrcmaps.analysis.distance import exhaustive_distance, min_distance
from lrcmaps.analysis.recovery import fibre_sums
from lrcmaps.grid import (
    GridSpec,
    availability_profile,
    capability_profile,
    evaluation_code,
    grid_blueprint,
    hypercube_distance,
    product_code,
    product_distance,
    rm_distance_bound,
)
from lrcmaps.polytope import Polytope, hypercube, simplex
from lrcmaps.rational_map import LocalityError, build_code


def test_affine_variety_points():
    g = GridSpec.affine_variety(7, (2, 3))
    P = g.points()
    assert P.shape == (6, 2) and g.n == 6
    F = g.field
    for row in P:
        for a, n in zip(row, (2, 3)):
            assert F.pow(int(a), n) == F.one
    with pytest.raises(ValueError):
        GridSpec.affine_variety(7, (4,))


def test_toric_and_rm_axes():
    t = GridSpec.toric(7, 2)
    assert t.sizes == (6, 6) and 0 not in t.axes[0]
    rm = GridSpec.reed_muller(7, 2)
    assert rm.sizes == (7, 7) and rm.is_full_axis(0) and not t.is_full_axis(0)


@pytest.mark.parametrize(
    "grid,shape,axis,expected,r",
    [
        (GridSpec.affine_variety(7, (2, 3)), hypercube(2, 2).remove((1, 1)), 1, (6, 3, 3), 2),
        (GridSpec.toric(7, 2), hypercube(6, 5).remove((5, 4)), 1, (36, 29, 3), 5),
    ],
    ids=["table-1-row-1", "table-3-P1"],
)
def test_grid_blueprint_examples(grid, shape, axis, expected, r):
    bp = grid_blueprint(grid, shape, axis)
    code = build_code(bp)
    n, k, d = expected
    assert (code.n, code.k) == (n, k)
    assert bp.structures[0].r == r
    res = min_distance(code, budget=10**7)
    assert res.contains(d)
    if res.exact:
        assert res.value == d
        assert classify(n, k, d, r) == "optimal"


def test_rm_6_2_is_plain_evaluation_code():
    g = GridSpec.reed_muller(7, 2)
    code = evaluation_code(g, simplex(2, 6))
    assert (code.n, code.k) == (49, 28)
    assert min_distance(code, budget=10**7).contains(7)
    # axis degree q - 1 leaves no local recovery along either axis
    assert availability_profile(simplex(2, 6), g) == []


def test_axis_degree_too_large():
    with pytest.raises(LocalityError):
        grid_blueprint(GridSpec.affine_variety(7, (2, 3)), hypercube(2, 3), 1)


def test_rm_distance_bound_examples():
    assert rm_distance_bound(simplex(2, 6), 2, 7, 49) == 7
    assert rm_distance_bound(simplex(2, 0), 2, 7, 49) == 49
    assert rm_distance_bound(simplex(2, 5), 2, 7, 49) == 14
    with pytest.raises(ValueError):
        rm_distance_bound(simplex(2, 13), 2, 7, 49)


@pytest.mark.parametrize("q,m", [(3, 2), (4, 2), (5, 2), (3, 3)])
def test_rm_bound_never_exceeds_distance(q, m):
    g = GridSpec.reed_muller(q, m)
    for l in range((q - 1) * m + 1):
        shape = Polytope.of(p for p in simplex(m, l).points if max(p) < q)
        code = evaluation_code(g, shape)
        if q**code.k > 10**6:
            continue
        d = exhaustive_distance(code).value
        assert rm_distance_bound(shape, m, q, g.n) <= d


def test_product_distance_rs_components():
    F7 = GridSpec.toric(7, 1)
    g = GridSpec(F7.field, (F7.axes[0][:3],), "custom")
    P = Polytope.of([(0,), (1,)])
    assert exhaustive_distance(evaluation_code(g, P)).value == 2
    prod = product_code(g, P, g, P)
    assert (prod.n, prod.k) == (9, 4)
    assert exhaustive_distance(prod).value == product_distance(2, 2) == 4


def test_product_with_full_space():
    g = GridSpec(GridSpec.toric(7, 1).field, ((1, 3, 2),), "custom")
    P = Polytope.of([(0,), (1,)])
    full = Polytope.of([(0,), (1,), (2,)])
    assert exhaustive_distance(product_code(g, P, g, full)).value == product_distance(2, 1)


def test_hypercube_corollary_example():
    g = GridSpec.affine_variety(7, (2, 3))
    code = evaluation_code(g, hypercube(2, 2))
    assert exhaustive_distance(code).value == hypercube_distance((2, 2), (2, 3)) == 2


@given(st.sampled_from([(2, 3), (3, 3), (2, 6), (3, 2), (6,), (2, 2, 3)]), st.data())
def test_hypercube_distance_matches_search(ns, data):
    g = GridSpec.affine_variety(7, ns)
    ls = tuple(data.draw(st.integers(1, n)) for n in ns)
    code = evaluation_code(g, hypercube(*ls) if len(ls) > 1 else Polytope.of([(a,) for a in range(ls[0])]))
    assert code.k == int(np.prod(ls))
    if g.n * 7**code.k <= 10**8:
        assert exhaustive_distance(code).value == hypercube_distance(ls, ns)


def test_capability_profile():
    toric = GridSpec.toric(7, 2)
    s1 = simplex(2, 4).remove((4, 0), (0, 4))
    assert tuple(capability_profile(s1, toric, 0)) == (4, 2)
    assert [ax for ax, _ in availability_profile(s1, toric)] == [0, 1]
    box = hypercube(6, 5)
    assert tuple(capability_profile(box, toric, 1)) == (5, 1)
    with pytest.raises(LocalityError):
        capability_profile(hypercube(6, 6), toric, 1)


def test_availability_rm():
    g = GridSpec.reed_muller(7, 2)
    shape = simplex(2, 6).remove((0, 6), (6, 0), (1, 1))
    assert availability_profile(shape, g) == [(0, 6), (1, 6)]
    bp = grid_blueprint(g, shape, 1, mode="checksum", availability=True)
    assert len(bp.structures) == 2
    code = build_code(bp)
    for s in bp.structures:
        assert s.mode == "checksum"
        assert not np.any(fibre_sums(code.generator, s.fibres, g.field))
        # two fibres through a point meet only there
    a, b = (s.fibres for s in bp.structures)
    for i in range(code.n):
        assert set(a.fibres[a.fibre_of(i)]) & set(b.fibres[b.fibre_of(i)]) == {i}


def test_availability_counts():
    g = GridSpec.reed_muller(5, 3)
    assert len(availability_profile(hypercube(4, 4, 4), g)) == 3
    assert len(availability_profile(Polytope.of([(a, 0) for a in range(4)]), GridSpec.reed_muller(5, 2))) == 2
    assert len(availability_profile(Polytope.of([(a, 0) for a in range(5)]), GridSpec.reed_muller(5, 2))) == 1


@pytest.mark.parametrize("q", [3, 4, 5, 7])
def test_rm_checksum_on_low_degree_monomials(q):
    g = GridSpec.reed_muller(q, 2)
    shape = Polytope.of([(a, b) for a in range(q) for b in range(q - 1)])
    bp = grid_blueprint(g, shape, 1, mode="checksum")
    M = bp.evaluation_matrix()
    assert not np.any(fibre_sums(M, bp.structures[0].fibres, g.field))


def test_checksum_needs_full_axis():
    with pytest.raises(ValueError):
        grid_blueprint(GridSpec.toric(7, 2), hypercube(3, 3), 1, mode="checksum")


def test_exponent_reduction():
    g = GridSpec.affine_variety(7, (2, 3))
    assert g.reduce_shape(Polytope.of([(2, 4)])) == Polytope.of([(0, 1)])
    with pytest.raises(ValueError):
        g.reduce_shape(Polytope.of([(0, 0), (2, 0)]))
    rm = GridSpec.reed_muller(7, 1)
    assert rm.reduce_exponent(0, 7) == 1 and rm.reduce_exponent(0, 6) == 6


def test_injective_on_boxes():
    for ns in itertools.product((2, 3, 6), repeat=2):
        g = GridSpec.affine_variety(7, ns)
        assert evaluation_code(g, hypercube(*ns)).k == g.n
