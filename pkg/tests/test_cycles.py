from itertools import combinations, permutations

import numpy as np
import pytest

from qdcss.algebra.dyadic import QdBlockMatrix
from qdcss.exceptions import SpecValidationError
from qdcss.tools.constructions import construct_b, random_construction_b_spec
from qdcss.tools.cycles import (
    TannerGraph,
    census_blockwise,
    count_4cycles_blockwise,
    four_cycle_breakdown,
    fourcycle_count_matrix,
    girth_2x2_dpm,
    girth_bfs,
    has_cycle_lambda,
)


def test_blockwise_census_matches_graph(rng):
    for _ in range(6):
        indices = rng.integers(0, 8, size=(2, 3)).tolist()
        h = QdBlockMatrix.from_dpm_indices(3, indices)
        blockwise = census_blockwise(h, cap=8)
        graph = girth_bfs(TannerGraph.from_matrix(h.expand()), cap=8)
        assert blockwise.counts == graph.counts, indices
        assert blockwise.girth == graph.girth


def test_four_cycles_match_gram_count(rng):
    for seed in range(10):
        spec = random_construction_b_spec(4, 4, 3, seed=seed)
        h = construct_b(spec)
        assert count_4cycles_blockwise(h) == fourcycle_count_matrix(h.expand())
    h = QdBlockMatrix.from_dpm_indices(4, rng.integers(0, 16, size=(3, 5)).tolist())
    assert count_4cycles_blockwise(h) == fourcycle_count_matrix(h.expand())


def test_girth_2x2_dpm():
    assert girth_2x2_dpm((0, 1, 2, 3)) == 4
    assert girth_2x2_dpm((0, 1, 2, 4)) == 8
    h = QdBlockMatrix.from_dpm_indices(3, [[0, 1], [2, 4]])
    assert girth_bfs(TannerGraph.from_matrix(h.expand()), cap=8).girth == 8
    with pytest.raises(SpecValidationError):
        girth_2x2_dpm((0, 1, 2))


def test_girth_above_cap():
    h = QdBlockMatrix.from_dpm_indices(3, [[0, 1], [2, 4]])
    census = girth_bfs(TannerGraph.from_matrix(h.expand()), cap=6)
    assert census.girth is None
    assert census.girth_label == ">=6"
    assert census.counts == {4: 0, 6: 0}


def test_has_cycle_lambda():
    closing = QdBlockMatrix.from_dpm_indices(3, [[0, 1], [2, 3]])
    assert has_cycle_lambda(closing, [0, 1, 0], [0, 1])
    open_ = QdBlockMatrix.from_dpm_indices(3, [[0, 1], [2, 4]])
    assert not has_cycle_lambda(open_, [0, 1], [0, 1])
    assert has_cycle_lambda(open_, [0, 1, 0, 1], [0, 1, 0, 1])
    with pytest.raises(SpecValidationError):
        has_cycle_lambda(open_, [0, 1], [0, 0])


def test_has_cycle_lambda_rejects_zero_blocks():
    h = QdBlockMatrix.from_dpm_indices(3, [[0, None], [2, 4]])
    with pytest.raises(SpecValidationError):
        has_cycle_lambda(h, [0, 1], [0, 1])


def test_cap_validation(cb3_small):
    with pytest.raises(SpecValidationError):
        girth_bfs(TannerGraph.from_matrix(cb3_small.code.h), cap=5)
    with pytest.raises(SpecValidationError):
        census_blockwise(cb3_small.blocks, cap=10)


def test_clean_supports_have_only_unavoidable_four_cycles(cb3_small, catalog_code):
    assert four_cycle_breakdown(cb3_small.blocks) == (192, 192, 0)
    assert fourcycle_count_matrix(cb3_small.code.h) == 192
    heuristic = catalog_code("CB5_H")
    assert four_cycle_breakdown(heuristic.blocks) == (2560, 2560, 0)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("CB5_NU", (13312, 4096, 9216)),
        ("CB5_C", (11520, 2560, 8960)),
        ("CB5_RO1", (6400, 2560, 3840)),
        ("CB5_RO2", (4096, 2560, 1536)),
        ("CB5_H", (2560, 2560, 0)),
    ],
)
def test_support_variants_four_cycles(catalog_code, name, expected):
    built = catalog_code(name)
    assert four_cycle_breakdown(built.blocks) == expected
    assert fourcycle_count_matrix(built.code.h) == expected[0]


@pytest.mark.parametrize("name", ["CA_128_32", "CA_256_64", "CB3_128_64", "CB5_H", "CB5_C"])
def test_dual_containing_codes_have_four_cycles(catalog_code, name):
    built = catalog_code(name)
    census = girth_bfs(TannerGraph.from_matrix(built.code.h), cap=4)
    assert census.girth == 4


def _random_dpm_array(rng, ell, w, u):
    return QdBlockMatrix.from_dpm_indices(ell, rng.integers(0, 1 << ell, size=(w, u)).tolist())


def _graph_census(h, cap):
    return girth_bfs(TannerGraph.from_matrix(h.expand()), cap=cap)


def test_four_cycles_come_in_orbits_of_block_size(rng):
    for _ in range(40):
        ell, w, u = (int(x) for x in rng.integers([1, 2, 2], [5, 5, 5]))
        h = _random_dpm_array(rng, ell, w, u)
        closing = sum(
            has_cycle_lambda(h, rows, cols)
            for rows in combinations(range(w), 2)
            for cols in combinations(range(u), 2)
        )
        assert fourcycle_count_matrix(h.expand()) == (1 << ell) * closing
        assert count_4cycles_blockwise(h) == (1 << ell) * closing


def test_six_cycles_match_closing_block_sequences(rng):
    for _ in range(8):
        ell, w, u = (int(x) for x in rng.integers([1, 3, 3], [5, 5, 5]))
        h = _random_dpm_array(rng, ell, w, u)
        closing = sum(
            has_cycle_lambda(h, rows, cols)
            for rows in permutations(range(w), 3)
            for cols in permutations(range(u), 3)
        )
        # each 6-cycle is read from 3 start rows in 2 directions
        assert 6 * _graph_census(h, cap=6).counts[6] == (1 << ell) * closing


def _staircase(indices):
    """3x3 array with zero blocks at (0, 1), (1, 2) and (2, 0)."""
    a, b, c, d, e, f = indices
    return [[a, None, b], [c, d, None], [None, e, f]]


def test_staircase_pattern_six_cycles(rng):
    ell = 3
    for trial in range(12):
        indices = rng.integers(0, 1 << ell, size=6)
        if trial % 2 == 0:
            indices[5] = np.bitwise_xor.reduce(indices[:5])
        closes = int(np.bitwise_xor.reduce(indices)) == 0
        rows = _staircase(indices.tolist())
        h = QdBlockMatrix.from_dpm_indices(ell, rows)

        assert has_cycle_lambda(h, [0, 2, 1, 0], [2, 1, 0]) == closes
        census = _graph_census(h, cap=6)
        assert census.counts == {4: 0, 6: (1 << ell) if closes else 0}
        assert census_blockwise(h, cap=6).counts == census.counts

        row_order, col_order = rng.permutation(3), rng.permutation(3)
        shuffled = QdBlockMatrix.from_dpm_indices(ell, [[rows[i][j] for j in col_order] for i in row_order])
        assert _graph_census(shuffled, cap=6).counts == census.counts


@pytest.mark.slow
def test_blockwise_census_matches_graph_on_random_arrays(rng):
    for _ in range(1000):
        ell, w, u = (int(x) for x in rng.integers([1, 1, 1], [5, 5, 5]))
        h = _random_dpm_array(rng, ell, w, u)
        graph = _graph_census(h, cap=8)
        blockwise = census_blockwise(h, cap=8)
        assert blockwise.counts == graph.counts, h.dpm_indices()
        assert blockwise.girth == graph.girth
        assert count_4cycles_blockwise(h) == graph.counts[4]
        if (w, u) == (2, 2):
            indices = [i for row in h.dpm_indices() for i in row]
            assert girth_2x2_dpm(indices) == graph.girth
            closes = has_cycle_lambda(h, [0, 1], [0, 1])
            assert graph.counts[4] == ((1 << ell) if closes else 0)
            if not closes:
                assert has_cycle_lambda(h, [0, 1, 0, 1], [0, 1, 0, 1])
                assert graph.counts[8] == 1 << (ell - 1)
