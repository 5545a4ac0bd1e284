import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oqec import (
    CodeClass,
    SubsystemDecomposition,
    classify,
    complement_projector,
    compress,
    embed_operator,
    embed_product,
    matrix_unit,
    sector_projector,
    tensor,
)
from oqec.channel import haar_unitary
from oqec.conditions import check_ns_algebraic
from oqec.ensembles import b_noise_channel, ns_channel, random_decomposition
from oqec.matops import dagger, frob


def random_complex(rows, cols, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


# --- construction ------------------------------------------------------------


def test_rejects_non_isometry():
    v = np.ones((4, 2), dtype=complex)
    with pytest.raises(ValueError):
        SubsystemDecomposition.from_embedding(v, 1, 2)


def test_rejects_oversized_sector():
    with pytest.raises(ValueError):
        SubsystemDecomposition.from_embedding(np.eye(4), 2, 3)


def test_dimensions(bitflip_code):
    assert bitflip_code.dim_h == 8
    assert bitflip_code.sector_dim == 2
    assert bitflip_code.dim_k == 6


# --- projectors and matrix units ---------------------------------------------


def test_trivial_decomposition_projector_is_identity():
    dec = SubsystemDecomposition.trivial(2, 3)
    assert np.allclose(sector_projector(dec), np.eye(6))
    assert np.allclose(complement_projector(dec), 0)


def test_bitflip_projector(bitflip_code):
    p = sector_projector(bitflip_code)
    expected = np.zeros((8, 8), dtype=complex)
    expected[0, 0] = expected[7, 7] = 1.0
    assert np.allclose(p, expected)
    assert round(np.trace(p).real) == 2


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_sector_projector_idempotent(seed):
    dec = random_decomposition(7, 2, 2, seed)
    p = sector_projector(dec)
    assert frob(p @ p - p) <= 1e-12 * 7
    assert frob(p - dagger(p)) <= 1e-12 * 7


def test_matrix_unit_subspace_case(bitflip_code):
    assert np.allclose(matrix_unit(bitflip_code, 0, 0), sector_projector(bitflip_code))


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_matrix_unit_relations(seed):
    dec = random_decomposition(8, 3, 2, seed)
    units = {(k, l): matrix_unit(dec, k, l) for k in range(3) for l in range(3)}
    for (k, l), p_kl in units.items():
        assert frob(dagger(p_kl) - units[(l, k)]) <= 1e-12
    for k in range(3):
        for l in range(3):
            for lp in range(3):
                for kp in range(3):
                    prod = units[(k, l)] @ units[(lp, kp)]
                    expected = units[(k, kp)] if l == lp else np.zeros((8, 8))
                    assert frob(prod - expected) <= 1e-12 * 8
    total = sum(units[(k, k)] for k in range(3))
    assert frob(total - sector_projector(dec)) <= 1e-12 * 8


def test_matrix_unit_rank_is_n():
    dec = random_decomposition(9, 2, 3, seed=5)
    p01 = matrix_unit(dec, 0, 1)
    assert np.linalg.matrix_rank(p01, tol=1e-10) == 3


def test_matrix_unit_rejects_bad_index(bitflip_code):
    with pytest.raises(IndexError):
        matrix_unit(bitflip_code, 0, 1)


# --- compress / embed ----------------------------------------------------------


def test_compress_kills_remainder_support(bitflip_code):
    m = np.zeros((8, 8), dtype=complex)
    m[3, 5] = 2.0  # both indices outside span{|000>,|111>}
    assert frob(compress(bitflip_code, m)) <= 1e-15


def test_compress_embed_roundtrip():
    dec = random_decomposition(8, 2, 2, seed=6)
    sa = random_complex(2, 2, 7)
    sb = random_complex(2, 2, 8)
    out = compress(dec, embed_product(dec, sa, sb))
    assert frob(out - tensor(sa, sb)) <= 1e-12 * 8


def test_compress_coordinate_oracle():
    dec = random_decomposition(6, 1, 3, seed=9)
    m = random_complex(6, 6, 10)
    out = compress(dec, m)
    v = dec.embedding
    for i in range(3):
        for j in range(3):
            assert out[i, j] == pytest.approx(np.vdot(v[:, i], m @ v[:, j]), abs=1e-12)


def test_embed_product_subspace_case(bitflip_code):
    rho = random_complex(2, 2, 11)
    out = embed_product(bitflip_code, np.array([[1.0]]), rho)
    expected = np.zeros((8, 8), dtype=complex)
    expected[0, 0], expected[0, 7] = rho[0, 0], rho[0, 1]
    expected[7, 0], expected[7, 7] = rho[1, 0], rho[1, 1]
    assert frob(out - expected) <= 1e-13


def test_embed_dimension_checks():
    dec = random_decomposition(6, 2, 2, seed=12)
    with pytest.raises(ValueError):
        embed_product(dec, np.eye(3), np.eye(2))
    with pytest.raises(ValueError):
        embed_operator(dec, np.eye(5))
    with pytest.raises(ValueError):
        compress(dec, np.eye(5))


# --- basis independence ----------------------------------------------------------


def test_sector_projector_and_verdicts_basis_independent():
    dec = random_decomposition(8, 2, 2, seed=13)
    rng = np.random.default_rng(14)
    ua, ub = haar_unitary(2, rng), haar_unitary(2, rng)
    rotated = SubsystemDecomposition.from_embedding(
        dec.embedding @ tensor(ua, ub), 2, 2
    )
    assert frob(sector_projector(dec) - sector_projector(rotated)) <= 1e-12 * 8
    good = ns_channel(dec, 2, seed=15)
    bad = b_noise_channel(dec, 2, seed=16)
    for ch in (good, bad):
        assert (
            check_ns_algebraic(ch, dec).verdict
            == check_ns_algebraic(ch, rotated).verdict
        )


# --- classification ----------------------------------------------------------------


@pytest.mark.parametrize(
    "m,n,extra,trivial_recovery,expected",
    [
        (1, 2, 6, False, CodeClass.STANDARD_QEC),
        (1, 2, 6, True, CodeClass.DFS),
        (2, 2, 0, True, CodeClass.STANDARD_NS),
        (2, 2, 3, True, CodeClass.GENERALIZED_NS),
        (2, 2, 3, False, CodeClass.GENERAL_OQEC),
    ],
)
def test_classify_taxonomy(m, n, extra, trivial_recovery, expected):
    dec = random_decomposition(m * n + extra, m, n, seed=17)
    assert classify(dec, trivial_recovery) is expected
