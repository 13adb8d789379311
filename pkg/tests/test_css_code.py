from itertools import islice

import numpy as np
import pytest

from qdcss.algebra.gf2 import BitMatrix, BitVector
from qdcss.exceptions import DimensionMismatchError, InfeasibleConstructionError
from qdcss.services.code_service import construction_spec
from qdcss.tools.constructions import (
    construct_a,
    construct_b,
    random_construction_a_spec,
    random_construction_b_spec,
    weight_2v_codewords,
)
from qdcss.tools.css_code import (
    ResidualClass,
    build_css,
    classify_many,
    classify_residual,
    dpm_column_permutation,
    verify_dpm_automorphisms,
)


@pytest.mark.parametrize(
    "name, rank_h",
    [("CA_128_32", 42), ("CA_256_64", 84), ("CA_512_128", 168)],
)
def test_construction_a_rates(catalog_code, name, rank_h):
    built = catalog_code(name)
    assert built.code.rank_h == rank_h
    assert built.code.r_q == pytest.approx(0.34375)
    params = built.parameters()
    assert params.design_r_q == pytest.approx(0.25)
    assert params.row_weight_range == (8, 8)
    assert params.col_weight_range == (3, 3)


def test_largest_construction_a_rate(catalog_code):
    built = catalog_code("CA_1024_256")
    assert built.code.n == 1024
    assert built.code.r_q == pytest.approx(0.34, abs=0.01)


@pytest.mark.parametrize("name", ["CB3_128_64", "CB3_256_128", "CB3_1024_512", "CB5_H"])
def test_construction_b_rates(catalog_code, name):
    code = catalog_code(name).code
    assert code.rank_h == code.n // 4
    assert code.r == pytest.approx(0.75)
    assert code.r_q == pytest.approx(0.5)


def test_residual_classes(cb3_small):
    code = cb3_small.code
    n = code.n
    assert classify_residual(code, BitVector.zeros(n)) == ResidualClass.TRIVIAL
    assert classify_residual(code, code.h.row(5)) == ResidualClass.DEGENERATE
    assert classify_residual(code, BitVector.from_support(n, [7])) == ResidualClass.SYNDROME_MISMATCH
    codeword = weight_2v_codewords(construction_spec(cb3_small.document), (0, 2))[0]
    assert classify_residual(code, codeword) == ResidualClass.LOGICAL


def test_classify_many_matches_single(cb3_small):
    code = cb3_small.code
    vectors = [BitVector.zeros(code.n), code.h.row(0) ^ code.h.row(9), BitVector.from_support(code.n, [1, 2])]
    batch = classify_many(code, BitMatrix.from_rows(vectors).words)
    assert batch == [classify_residual(code, v) for v in vectors]


def test_residual_length_mismatch(cb3_small):
    with pytest.raises(DimensionMismatchError):
        classify_residual(cb3_small.code, BitVector.zeros(10))


@pytest.mark.parametrize("name", ["CA_128_32", "CB3_128_64", "CB5_NU"])
def test_dpm_permutations_are_automorphisms(catalog_code, name):
    built = catalog_code(name)
    assert verify_dpm_automorphisms(built.code, built.blocks.ell)


def _criteria_specs():
    """Construction specs drawn the same way as the orthogonality sweeps in test_constructions."""
    rng = np.random.default_rng(7)
    drawn = 0
    while drawn < 500:
        w = int(rng.integers(1, 5))
        u = int(rng.choice([4, 8, 16, 32]))
        ell = int(rng.integers(3, 8))
        if w > u or u // 2 + 1 > 1 << ell:
            continue
        yield construct_a, random_construction_a_spec(ell, w, u, seed=int(rng.integers(1 << 30)))
        drawn += 1
    for w in (5, 6, 7, 8):
        for u in (16, 32):
            for ell in (4, 5):
                yield construct_a, random_construction_a_spec(ell, w, u, seed=w * 100 + u + ell)
    rng = np.random.default_rng(11)
    for _ in range(500):
        u = int(rng.choice([2, 4, 6, 8]))
        v = int(rng.choice([1, 3, 5, 7]))
        ell = int(rng.integers(4, 9))
        yield construct_b, random_construction_b_spec(ell, u, v, seed=int(rng.integers(1 << 30)))


def test_dpm_automorphisms_on_sampled_constructions():
    for build, spec in islice(_criteria_specs(), 0, None, 50):
        code = build_css(build(spec).expand())
        assert verify_dpm_automorphisms(code, spec.ell), spec


@pytest.mark.slow
def test_dpm_automorphisms_on_every_construction():
    checked = 0
    for build, spec in _criteria_specs():
        code = build_css(build(spec).expand())
        assert verify_dpm_automorphisms(code, spec.ell), spec
        checked += 1
    assert checked == 1016


def test_automorphism_check_detects_failure():
    code = build_css(BitMatrix.from_dense([[1, 1, 0, 1, 1, 0, 0, 0]]))
    assert not verify_dpm_automorphisms(code, 1)
    with pytest.raises(DimensionMismatchError):
        verify_dpm_automorphisms(code, 4)


def test_dpm_column_permutation():
    assert list(dpm_column_permutation(8, 2, 3)) == [3, 2, 1, 0, 7, 6, 5, 4]


def test_build_css_rejects_non_orthogonal_and_zero():
    with pytest.raises(InfeasibleConstructionError):
        build_css(BitMatrix.identity(4))
    with pytest.raises(InfeasibleConstructionError):
        build_css(BitMatrix.zeros(3, 8))


def test_quantum_dimension(cb3_small):
    code = cb3_small.code
    assert code.k_q == code.n - 2 * code.rank_h == 64
    assert code.k == code.n - code.rank_h
