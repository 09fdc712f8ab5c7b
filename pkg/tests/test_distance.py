import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_code
from lrcmaps.analysis.code import LinearCode, measure
from lrcmaps.analysis.distance import (
    DistanceResult,
    brouwer_zimmermann,
    dual_distance,
    exhaustive_distance,
    information_sets,
    min_distance,
)
from lrcmaps.curves import klein_blueprint
from lrcmaps.field import GF
from lrcmaps.grid import GridSpec, grid_blueprint
from lrcmaps.polytope import hypercube
from lrcmaps.rational_map import build_code
from lrcmaps.reproduce import example_23_blueprints


def brute_distance(code: LinearCode) -> int:
    """Weight of every nonzero codeword, no projective shortcut."""
    words = code.all_codewords()
    w = np.count_nonzero(words, axis=1)
    return int(w[w > 0].min())


def random_codes(count, seed=7):
    rng = np.random.default_rng(seed)
    out = []
    qs = (2, 3, 4, 5, 7, 8, 9)
    while len(out) < count:
        q = int(rng.choice(qs))
        kmax = int(np.floor(np.log(1e5) / np.log(q)))
        k = int(rng.integers(1, kmax + 1))
        n = int(rng.integers(k, k + 12))
        code = random_code(q, k, n, rng)
        if code is not None and q**code.k <= 10**5:
            out.append(code)
    return out


def test_exhaustive_matches_bz_on_random_codes():
    for code in random_codes(100):
        ex = exhaustive_distance(code)
        bz = brouwer_zimmermann(code)
        assert ex.exact and bz.exact
        assert ex.value == bz.value
        assert np.count_nonzero(bz.witness) == bz.value
        assert code.contains(bz.witness)


def test_exhaustive_matches_brute_force():
    for code in random_codes(25, seed=3):
        if code.field.q**code.k <= 3 * 10**4:
            assert exhaustive_distance(code).value == brute_distance(code)


@settings(max_examples=40)
@given(st.sampled_from([2, 3, 4, 5, 7]), st.integers(1, 5), st.integers(0, 8), st.integers(0, 2**31))
def test_interval_is_sound(q, k, extra, seed):
    rng = np.random.default_rng(seed)
    code = random_code(q, k, k + extra, rng)
    if code is None:
        return
    true = exhaustive_distance(code).value
    res = brouwer_zimmermann(code, budget=int(rng.integers(0, 200)))
    assert res.lo <= true <= res.hi
    assert res.lo <= res.hi
    if res.witness is not None:
        assert np.count_nonzero(res.witness) == res.hi
        assert code.contains(res.witness)


def test_information_sets_are_disjoint_and_ordered():
    code = build_code(klein_blueprint(6))
    sets = information_sets(code)
    seen = set()
    for R, piv in sets:
        assert not seen & set(piv)
        seen |= set(piv)
    assert sets[0][1] == sorted(sets[0][1])
    assert len(sets[0][1]) == code.k


def test_known_examples():
    c = build_code(example_23_blueprints()[0])
    assert min_distance(c).value == 6
    assert min_distance(c, method="bz").value == 6
    k = build_code(klein_blueprint(6))
    assert (k.n, k.k) == (21, 4)
    assert min_distance(k, method="bz").value == 15


def test_repetition_code():
    F = GF(5)
    for n in (1, 4, 9):
        code = LinearCode(F, np.ones((1, n), dtype=np.int64))
        assert min_distance(code).value == n
        assert brouwer_zimmermann(code).value == n


def test_lower_bound_shortcut():
    code = build_code(klein_blueprint(6))
    res = brouwer_zimmermann(code, lower_bound=15)
    assert res.exact and res.value == 15


def test_budget_zero_gives_interval():
    code = build_code(klein_blueprint(12))
    res = brouwer_zimmermann(code, budget=0)
    assert res.status == "interval" and res.value is None
    assert res.contains(min_distance(code).value)


def test_method_errors():
    code = build_code(klein_blueprint(3))
    with pytest.raises(ValueError):
        min_distance(code, method="magic")
    with pytest.raises(ValueError):
        LinearCode(GF(2), np.ones((3, 2), dtype=np.int64))


def test_measure_rank():
    bp = example_23_blueprints()[0]
    G = bp.evaluation_matrix()
    assert measure(G, bp.field).k == 3
    with pytest.warns(UserWarning):
        assert measure(np.vstack([G, G[:1]]), bp.field).k == 3
    assert build_code(klein_blueprint(20)).k == 13


def test_dual_distance_examples():
    g = GridSpec.affine_variety(7, (2, 3))
    bp = grid_blueprint(g, hypercube(2, 2).remove((1, 1)), 1)
    code = build_code(bp)
    dd = dual_distance(code)
    assert dd.exact
    assert dd.value - 1 <= bp.structures[0].r
    full = LinearCode(GF(3), np.eye(4, dtype=np.int64))
    deg = dual_distance(full)
    assert deg.status == "degenerate" and deg.value == 5


def test_dual_distance_bounds_locality_on_small_codes():
    for bp in example_23_blueprints() + [klein_blueprint(l) for l in (3, 6, 9)]:
        code = build_code(bp)
        dd = dual_distance(code)
        if dd.exact:
            assert bp.structures[0].r >= dd.value - 1


def test_distance_result_dict():
    r = DistanceResult("interval", 3, 5)
    assert r.to_dict() == {"status": "interval", "lo": 3, "hi": 5, "method": "", "work": 0}
    assert not r.exact and r.contains(4) and not r.contains(6)
