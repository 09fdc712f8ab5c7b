import warnings

import numpy as np
import pytest

from lrcmaps.analysis.recovery import (
    ErasedWord,
    LRCProfile,
    RecoveryError,
    recover,
    recover_many,
    verify_recovery,
)
from lrcmaps.curves import hermitian_blueprint, klein_blueprint, norm_trace_blueprint
from lrcmaps.grid import GridSpec, grid_blueprint
from lrcmaps.polytope import simplex
from lrcmaps.rational_map import CodeBlueprint, FibreStructure, RecoveryStructure, build_code
from lrcmaps.reproduce import example_23_blueprints, table_1_shapes, table_2_shapes, table_3_shapes


def profile_of(bp):
    code = build_code(bp)
    return code, LRCProfile.from_blueprint(bp).attach(code)


def basis_round_trip(code, profile):
    """Erase each coordinate of each basis codeword and recover it."""
    for w in code.generator:
        for i in range(code.n):
            got, _ = recover(ErasedWord.erase(w, [i]), profile)
            assert np.array_equal(got, w)


def test_example_23_single_erasures():
    for bp in example_23_blueprints():
        code, prof = profile_of(bp)
        basis_round_trip(code, prof)
        rep = verify_recovery(code, prof)
        assert rep.passed and rep.mode == "exhaustive" and rep.words == 3**code.k


def test_hermitian_checksum_step():
    code, prof = profile_of(hermitian_blueprint(3, "weighted", 2))
    F = code.field
    w = code.random_codewords(1, np.random.default_rng(5))[0]
    fs = prof.structures[0].fibres
    i1, i2, i3 = fs.fibres[4]
    got, steps = recover(ErasedWord.erase(w, [i1]), prof)
    assert got[i1] == F.neg(F.add(int(w[i2]), int(w[i3])))
    assert len(steps) == 1 and steps[0].method == "checksum"
    assert steps[0].describe().startswith("fibre 4: x[")


def test_too_many_erasures_in_fibre():
    code, prof = profile_of(klein_blueprint(6))
    fib = prof.structures[0].fibres.fibres[0]
    w = code.generator[0]
    with pytest.raises(RecoveryError) as exc:
        recover(ErasedWord.erase(w, fib[:2]), prof)
    assert exc.value.fibre == 0


def test_klein_trace():
    code, prof = profile_of(klein_blueprint(6))
    w = code.generator[1]
    got, steps = recover(ErasedWord.erase(w, [0, 5]), prof)
    assert np.array_equal(got, w)
    assert all(s.method == "interpolation" and len(s.used) == 2 for s in steps)
    assert {i for s in steps for i in s.erased} == {0, 5}


def test_erased_word_serialisation():
    code, prof = profile_of(example_23_blueprints()[0])
    F = code.field
    w = ErasedWord.erase(code.generator[0], [2, 7])
    d = w.to_dict(F)
    assert d["values"][2] is None and d["values"][7] is None
    again = ErasedWord.from_dict(d, F)
    assert np.array_equal(again.erased, w.erased)
    assert np.array_equal(again.values[~w.erased], w.values[~w.erased])
    with pytest.raises(ValueError):
        ErasedWord(np.zeros(3), np.zeros(4))


def test_batch_matches_single():
    code, prof = profile_of(hermitian_blueprint(3, "weighted", 3))
    words = code.random_codewords(50, np.random.default_rng(1))
    mask = np.zeros(code.n, dtype=bool)
    mask[[0, 7, 13]] = True
    got, _ = recover_many(np.where(mask, 0, words), mask, prof)
    assert np.array_equal(got, words)


def test_negative_control_finds_counterexample():
    bp = example_23_blueprints()[1]
    fs = bp.fibre_structure
    fib = [list(f) for f in fs.fibres]
    # swap one point between two fibres: nodes stay, partition no longer matches the map
    fib[0][0], fib[1][0] = fib[1][0], fib[0][0]
    bad = FibreStructure(tuple(tuple(f) for f in fib), fs.nodes, fs.base_values)
    prof = LRCProfile(bp.field, (RecoveryStructure(bad, bp.structures[0].r),))
    rep = verify_recovery(build_code(bp), prof)
    assert not rep.passed and rep.counterexample is not None


def test_checksum_attach_rejects_interpolation_code():
    bp = klein_blueprint(6)
    code = build_code(bp)
    s = bp.structures[0]
    with pytest.raises(ValueError):
        LRCProfile(bp.field, (RecoveryStructure(s.fibres, 2, 1, "checksum"),)).attach(code)


def test_rm_availability_randomized():
    g = GridSpec.reed_muller(7, 2)
    bp = grid_blueprint(g, simplex(2, 6).remove((0, 6), (6, 0), (1, 1)), 1, mode="checksum", availability=True)
    code, prof = profile_of(bp)
    assert prof.availability == 2
    for s in prof.structures:
        rep = verify_recovery(code, LRCProfile(bp.field, (s,)), mode="randomized", trials=10**4)
        assert rep.passed and rep.mode == "randomized"
    # a whole fibre of the first structure is lost; the second set fills it
    fib = prof.structures[0].fibres.fibres[3]
    w = code.random_codewords(1, np.random.default_rng(2))[0]
    got, steps = recover(ErasedWord.erase(w, fib), prof)
    assert np.array_equal(got, w)
    assert {s.structure for s in steps} == {1}


def test_capability_two_erasures():
    g = GridSpec.toric(7, 2)
    bp = grid_blueprint(g, simplex(2, 4).remove((4, 0), (0, 4)), 1, rho=2)
    code, prof = profile_of(bp)
    assert (prof.r, prof.rho) == (4, 2)
    rep = verify_recovery(code, prof, mode="randomized", trials=2000)
    assert rep.passed


def small_blueprints():
    yield from example_23_blueprints()
    for l in range(1, 9):
        yield klein_blueprint(l)
    for l in range(1, 6):
        yield hermitian_blueprint(3, "weighted", l)
    yield norm_trace_blueprint(2, 2, 3)
    for _, ns, shape in table_1_shapes():
        yield grid_blueprint(GridSpec.affine_variety(7, ns), shape, 1)
    for _, ns, shape in table_2_shapes():
        yield grid_blueprint(GridSpec.affine_variety(7, ns), shape, 2)


def test_verify_recovery_on_small_blueprints():
    checked = 0
    for bp in small_blueprints():
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            code, prof = profile_of(bp)
        if code.size <= 10**5:
            rep = verify_recovery(code, prof, mode="exhaustive")
            assert rep.passed, (bp.meta, rep.counterexample)
            checked += 1
        else:
            basis_round_trip(code, prof)
    assert checked >= 14
