from itertools import combinations
from math import comb

import numpy as np
import pytest

from qdcss.algebra.dyadic import DyadicSignature, QdBlockMatrix
from qdcss.algebra.gf2 import mat_mul, mat_vec, mat_vec_many, rank, vstack
from qdcss.exceptions import InfeasibleConstructionError, SpecValidationError
from qdcss.tools.bicycle import (
    balanced_support,
    circulant,
    construct_bicycle,
    deletion_period,
    uniform_row_deletion,
)
from qdcss.tools.constructions import (
    ConstructionASpec,
    ConstructionBSpec,
    check_orthogonality,
    check_orthogonality_dense,
    construct_a,
    construct_a_extended,
    construct_b,
    construction_a_design_rate,
    construction_a_rows,
    random_construction_a_spec,
    random_construction_b_spec,
    subblock_layout,
    systematic_generator_b,
    weight_2v_codewords,
)


def test_construction_a_block_pattern():
    spec = ConstructionASpec(ell=4, w=4, u=8, z0=0, z=(1, 2, 3, 4))
    assert construct_a(spec).dpm_indices() == [
        [0, 1, 0, 2, 0, 3, 0, 4],
        [4, 0, 1, 0, 2, 0, 3, 0],
        [0, 4, 0, 3, 0, 2, 0, 1],
        [1, 0, 4, 0, 3, 0, 2, 0],
    ]


def test_construction_a_regular_and_orthogonal():
    spec = ConstructionASpec(ell=5, w=3, u=8, z0=0, z=(24, 7, 10, 15))
    h = construct_a(spec)
    dense = h.expand()
    assert dense.shape == (96, 256)
    assert set(dense.col_weights()) == {3}
    assert set(dense.row_weights()) == {8}
    assert check_orthogonality(h)
    assert check_orthogonality_dense(dense)


def test_construction_a_random_specs_are_orthogonal():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 500:
        w = int(rng.integers(1, 5))
        u = int(rng.choice([4, 8, 16, 32]))
        ell = int(rng.integers(3, 8))
        if w > u or u // 2 + 1 > 1 << ell:
            continue
        spec = random_construction_a_spec(ell, w, u, seed=int(rng.integers(1 << 30)))
        h = construct_a(spec)
        assert check_orthogonality(h), spec
        if checked % 25 == 0:
            assert check_orthogonality_dense(h.expand()), spec
        checked += 1


def test_construction_a_rejects_bad_specs():
    with pytest.raises(SpecValidationError):
        construct_a(ConstructionASpec(ell=4, w=3, u=8, z0=0, z=(1, 2, 3)))
    with pytest.raises(SpecValidationError):
        construct_a(ConstructionASpec(ell=4, w=3, u=8, z0=1, z=(1, 2, 3, 4)))
    with pytest.raises(SpecValidationError):
        ConstructionASpec(ell=4, w=3, u=7, z0=0, z=(1, 2, 3))
    with pytest.raises(InfeasibleConstructionError):
        construct_a(ConstructionASpec(ell=1, w=2, u=8, z0=0, z=(1, 0, 1, 0)))


def test_construction_a_single_row_is_orthogonal():
    h = construct_a(ConstructionASpec(ell=3, w=1, u=6, z0=2, z=(0, 5, 7)))
    assert check_orthogonality_dense(h.expand())


def test_subblock_layout_values():
    layout = subblock_layout(5, 16)
    assert (layout.max_lag, layout.length, layout.repeats, layout.subblocks) == (1, 4, 1, 4)
    assert subblock_layout(8, 32).length == 8


@pytest.mark.parametrize("w", [5, 6, 7, 8])
@pytest.mark.parametrize("u", [16, 32])
@pytest.mark.parametrize("ell", [4, 5])
def test_extended_construction_is_orthogonal(w, u, ell):
    spec = random_construction_a_spec(ell, w, u, seed=w * 100 + u + ell)
    h = construct_a(spec)
    assert h.w == w
    assert check_orthogonality(h)
    assert check_orthogonality_dense(h.expand())


def test_extended_construction_needs_repetitions():
    h = construction_a_rows(5, 0, [1, 2, 3, 4, 5, 6, 7, 8], 5)
    assert not check_orthogonality(h)
    assert not check_orthogonality_dense(h.expand())


def test_extended_construction_rejects_non_power_of_two():
    with pytest.raises(SpecValidationError):
        construct_a_extended(ConstructionASpec(ell=5, w=5, u=12, z0=0, z=(1, 2, 3, 4)))


def test_design_rate():
    assert construction_a_design_rate(3, 8) == pytest.approx(0.25)


def test_construction_b_contract():
    rng = np.random.default_rng(11)
    for _ in range(500):
        u = int(rng.choice([2, 4, 6, 8]))
        v = int(rng.choice([1, 3, 5, 7]))
        ell = int(rng.integers(4, 9))
        spec = random_construction_b_spec(ell, u, v, seed=int(rng.integers(1 << 30)))
        h = construct_b(spec)
        assert check_orthogonality(h)
        dense = h.expand()
        assert rank(dense) == 1 << ell
        assert set(dense.col_weights()) == {v}
        assert set(dense.row_weights()) == {u * v}
        found = 0
        for pair in combinations(range(u), 2):
            words = weight_2v_codewords(spec, pair)
            found += len(words)
            assert {c.weight() for c in words} == {2 * v}
            assert not mat_vec_many(dense, np.stack([c.words for c in words])).any()
        assert found == comb(u, 2) * (1 << (ell + 1))
    spec = random_construction_b_spec(5, 4, 3, seed=3)
    dense = construct_b(spec).expand()
    assert check_orthogonality_dense(dense)
    assert rank(dense) == 32
    assert set(dense.col_weights()) == {3}
    assert set(dense.row_weights()) == {12}


def test_systematic_generator_b():
    spec = random_construction_b_spec(5, 4, 3, seed=21)
    g = systematic_generator_b(spec)
    h = construct_b(spec).expand()
    assert g.shape == (96, 128)
    assert mat_mul(g, h.T).is_zero()
    assert g.row_weights().max() <= 1 + 3 * 3
    assert rank(g) == 96


def test_self_dual_generator_spans_h():
    spec = random_construction_b_spec(4, 2, 3, seed=5)
    g = systematic_generator_b(spec)
    h = construct_b(spec).expand()
    assert rank(g) == rank(h) == rank(vstack([g, h]))


def test_weight_2v_codewords():
    spec = random_construction_b_spec(4, 4, 3, seed=9)
    h = construct_b(spec).expand()
    for pair in combinations(range(4), 2):
        words = weight_2v_codewords(spec, pair)
        assert len(words) == 2 * 16
        for c in words:
            assert c.weight() == 6
            assert mat_vec(h, c).is_zero()
    with pytest.raises(SpecValidationError):
        weight_2v_codewords(spec, (1, 1))


def test_construction_b_spec_validation():
    with pytest.raises(SpecValidationError):
        ConstructionBSpec(ell=3, u=4, v=2, supports=((0, 1),) * 4)
    with pytest.raises(SpecValidationError):
        ConstructionBSpec(ell=3, u=3, v=1, supports=((0,), (1,), (2,)))
    with pytest.raises(SpecValidationError):
        ConstructionBSpec(ell=2, u=2, v=3, supports=((0, 1, 2), (1, 2, 4)))


def test_single_odd_block_is_not_orthogonal():
    assert not check_orthogonality(QdBlockMatrix(3, ((DyadicSignature(3, (0, 2, 5)),),)))


def test_circulant_commutes_with_transpose():
    c = circulant(15, np.array([0, 3, 7]))
    np.testing.assert_array_equal((c @ c.T) % 2, (c.T @ c) % 2)


def test_uniform_row_deletion_is_evenly_spaced():
    # rows 0, 2 and 5 go
    assert list(uniform_row_deletion(8, 3)) == [1, 3, 4, 6, 7]
    assert list(uniform_row_deletion(4, 0)) == [0, 1, 2, 3]
    assert deletion_period(256, 96) == 8
    assert deletion_period(256, 64) == 4
    with pytest.raises(InfeasibleConstructionError):
        uniform_row_deletion(4, 5)


def test_balanced_support_residues(rng):
    support = balanced_support(256, 6, 8, rng)
    assert len(set(support.tolist())) == 6
    assert len({int(s) % 8 for s in support}) == 6
    counts = np.bincount(balanced_support(128, 9, 4, rng) % 4, minlength=4)
    assert sorted(counts.tolist()) == [2, 2, 2, 3]


@pytest.mark.parametrize("k, bound", [(64, 1), (128, 1), (192, 2)])
@pytest.mark.parametrize("seed", range(5))
def test_bicycle_column_weight_spread(k, bound, seed):
    h = construct_bicycle(512, 12, k, seed=seed)
    assert h.shape == ((512 - k) // 2, 512)
    col_weights = h.col_weights()
    assert col_weights.max() - col_weights.min() <= bound
    assert set(h.row_weights()) == {12}


def test_bicycle_code():
    h = construct_bicycle(64, 6, 16, seed=4)
    assert h.shape == (24, 64)
    assert check_orthogonality_dense(h)
    assert set(h.row_weights()) == {6}
    with pytest.raises(SpecValidationError):
        construct_bicycle(64, 5, 16)
    with pytest.raises(InfeasibleConstructionError):
        construct_bicycle(64, 6, 64)
    with pytest.raises(InfeasibleConstructionError, match="below n/2"):
        construct_bicycle(64, 6, 32)
