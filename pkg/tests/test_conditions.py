import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oqec import (
    QuantumChannel,
    SubsystemDecomposition,
    check_correctable_triple,
    check_kl,
    check_ns_algebraic,
    check_ns_operational,
    check_opalg_correct,
    check_oqec,
    compose,
    identity_channel,
    matrix_unit,
    remix,
    tensor,
)
from oqec.channel import haar_unitary
from oqec.ensembles import (
    b_noise_channel,
    ns_channel,
    perturbed,
    random_decomposition,
    reversal_pair,
    rotated_ns_channel,
)
from oqec.matops import dagger, frob
from oqec.report import Condition

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def two_qubit_repetition_code():
    basis = np.zeros((4, 2), dtype=complex)
    basis[0, 0] = 1.0  # |00>
    basis[3, 1] = 1.0  # |11>
    return SubsystemDecomposition.subspace(basis)


# --- Knill-Laflamme ----------------------------------------------------------


def test_kl_bitflip_golden(bitflip_channel, bitflip_code):
    rep = check_kl(bitflip_channel, bitflip_code)
    assert rep.verdict
    assert np.max(np.abs(rep.lam.values - np.eye(3) / 3)) <= 1e-9
    assert rep.condition is Condition.KL


def test_kl_single_unitary_any_code(bitflip_code):
    u = haar_unitary(8, np.random.default_rng(0))
    rep = check_kl(QuantumChannel.from_kraus([u]), bitflip_code)
    assert rep.verdict
    assert rep.lam.values == pytest.approx(np.array([[1.0]]), abs=1e-12)


def test_kl_detects_logical_z_action():
    # Z on the first qubit acts as diag(1,-1) on span{|00>,|11>}: not a scalar,
    # so the pair (Z1/sqrt2, 1/sqrt2) violates proportionality with residual
    # ||diag(1,-1)/2 - 0*I||_F = sqrt(2)/2, computed from the 2x2 restriction.
    dec = two_qubit_repetition_code()
    z1 = tensor(Z, I2)
    ch = QuantumChannel.from_kraus([z1 / np.sqrt(2), np.eye(4) / np.sqrt(2)])
    rep = check_kl(ch, dec)
    assert not rep.verdict
    assert rep.residual == pytest.approx(np.sqrt(2) / 2, abs=1e-12)
    assert rep.worst_index in ((0, 1), (1, 0))


def test_kl_rejects_subsystem_input():
    dec = random_decomposition(8, 2, 2, seed=1)
    with pytest.raises(ValueError):
        check_kl(identity_channel(8), dec)


def test_kl_lambda_structure_for_tp_channels(bitflip_channel, bitflip_code):
    rep = check_kl(bitflip_channel, bitflip_code)
    lam = rep.lam.values
    assert frob(lam - dagger(lam)) <= 1e-12
    assert np.linalg.eigvalsh(lam).min() >= -1e-12
    assert abs(np.trace(lam) - 1.0) <= 1e-9


# --- noiseless subsystem -------------------------------------------------------


def test_ns_algebraic_product_channel_no_remainder():
    dec = SubsystemDecomposition.trivial(2, 2)
    ch = ns_channel(dec, 3, seed=2)
    rep = check_ns_algebraic(ch, dec)
    assert rep.verdict and rep.residual <= 1e-13


def test_ns_algebraic_with_remainder_noise():
    dec = random_decomposition(7, 2, 2, seed=3)
    rep = check_ns_algebraic(ns_channel(dec, 2, seed=4), dec)
    assert rep.verdict


def test_ns_algebraic_identity_channel():
    dec = random_decomposition(6, 2, 2, seed=5)
    rep = check_ns_algebraic(identity_channel(6), dec)
    assert rep.verdict
    # single Kraus operator: lambda_kl = delta_kl
    assert np.max(np.abs(rep.lam.values[0] - np.eye(2))) <= 1e-12


def test_ns_algebraic_noise_on_b_fails():
    # E = {1 tensor X} on a trivial 2x2 decomposition: the (k,k) blocks of
    # V†EV are X, giving residual ||X||_F = sqrt(2) after the zero-trace
    # extraction; direct evaluation oracle.
    dec = SubsystemDecomposition.trivial(2, 2)
    ch = QuantumChannel.from_kraus([tensor(I2, X)])
    rep = check_ns_algebraic(ch, dec)
    assert not rep.verdict
    assert rep.residual == pytest.approx(np.sqrt(2), abs=1e-12)
    assert rep.worst_index is not None and len(rep.worst_index) == 3
    assert "block proportionality" in rep.note


def test_ns_algebraic_reports_leakage():
    # noise that moves the code off its sector: worst deviation is leakage
    basis = np.zeros((4, 2), dtype=complex)
    basis[0, 0] = basis[1, 1] = 1.0
    dec = SubsystemDecomposition.from_embedding(basis, 1, 2)
    shift = np.zeros((4, 4), dtype=complex)  # |2><0|, |3><1| plus back-action
    shift[2, 0] = shift[3, 1] = shift[0, 2] = shift[1, 3] = 1.0
    rep = check_ns_algebraic(QuantumChannel.from_kraus([shift]), dec)
    assert not rep.verdict
    assert "leakage" in rep.note


def test_ns_operational_identity():
    dec = random_decomposition(6, 2, 2, seed=6)
    assert check_ns_operational(identity_channel(6), dec).verdict


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_ns_checkers_agree(seed):
    dec = random_decomposition(6, 2, 2, seed)
    good = ns_channel(dec, 2, seed + 1)
    bad = b_noise_channel(dec, 2, seed + 2)
    for ch in (good, bad):
        alg = check_ns_algebraic(ch, dec)
        op = check_ns_operational(ch, dec)
        assert alg.verdict == op.verdict


# --- unified condition ------------------------------------------------------------


def test_oqec_single_unitary_any_decomposition():
    dec = random_decomposition(8, 2, 2, seed=7)
    u = haar_unitary(8, np.random.default_rng(8))
    rep = check_oqec(QuantumChannel.from_kraus([u]), dec)
    assert rep.verdict
    # unitarity forces lambda_00kl = delta_kl
    assert np.max(np.abs(rep.lam.values[0, 0] - np.eye(2))) <= 1e-12


def test_oqec_reduces_to_kl_for_subspace(bitflip_channel, bitflip_code):
    kl = check_kl(bitflip_channel, bitflip_code)
    oq = check_oqec(bitflip_channel, bitflip_code)
    assert kl.verdict == oq.verdict
    assert np.max(np.abs(oq.lam.values[:, :, 0, 0] - kl.lam.values)) <= 1e-12


def test_oqec_reduces_to_kl_on_failure():
    dec = two_qubit_repetition_code()
    ch = QuantumChannel.from_kraus([tensor(Z, I2) / np.sqrt(2), np.eye(4) / np.sqrt(2)])
    kl = check_kl(ch, dec)
    oq = check_oqec(ch, dec)
    assert kl.verdict == oq.verdict == False  # noqa: E712
    assert oq.residual == pytest.approx(kl.residual, abs=1e-12)


def test_oqec_matches_bruteforce_conjugation():
    # independent oracle: extract scalars from the full-space products
    # P_k E_a† E_b P_l using the matrix units, not the compressed blocks
    dec = random_decomposition(6, 2, 2, seed=9)
    ch = ns_channel(dec, 2, seed=10)
    rep = check_oqec(ch, dec)
    assert rep.verdict
    n = dec.n
    for a in range(ch.num_kraus):
        for b in range(ch.num_kraus):
            for k in range(2):
                for l in range(2):
                    p_k = matrix_unit(dec, k, k)
                    p_l = matrix_unit(dec, l, l)
                    p_lk = matrix_unit(dec, l, k)
                    prod = p_k @ dagger(ch.kraus[a]) @ ch.kraus[b] @ p_l
                    lam = np.trace(prod @ p_lk) / n
                    assert rep.lam.values[a, b, k, l] == pytest.approx(lam, abs=1e-11)
                    assert frob(prod - lam * matrix_unit(dec, k, l)) <= 1e-11


def test_oqec_lambda_hermiticity():
    dec = random_decomposition(8, 2, 2, seed=11)
    rep = check_oqec(rotated_ns_channel(dec, 3, seed=12), dec)
    assert rep.verdict
    lam = rep.lam.values
    assert np.max(np.abs(lam - np.conj(np.transpose(lam, (1, 0, 3, 2))))) <= 1e-9


def test_oqec_fails_on_perturbation():
    dec = random_decomposition(6, 2, 2, seed=13)
    ch = perturbed(ns_channel(dec, 2, seed=14), 1e-2, seed=15)
    rep = check_oqec(ch, dec)
    assert not rep.verdict
    assert rep.residual > 100 * rep.tol
    assert rep.worst_index is not None


# --- operational correction --------------------------------------------------------


def test_opalg_reversal_pair():
    dec = random_decomposition(6, 2, 2, seed=16)
    r, ch = reversal_pair(6, seed=17)
    assert check_opalg_correct(r, ch, dec).verdict


def test_opalg_identity_pair():
    dec = random_decomposition(6, 2, 2, seed=18)
    ident = identity_channel(6)
    assert check_opalg_correct(ident, ident, dec).verdict


def test_opalg_rejects_dimension_mismatch():
    dec = random_decomposition(6, 2, 2, seed=19)
    with pytest.raises(ValueError):
        check_opalg_correct(identity_channel(5), identity_channel(6), dec)


# --- correctable triples --------------------------------------------------------------


def test_triple_matches_ns_of_composition():
    dec = random_decomposition(6, 2, 2, seed=20)
    cases = [
        (identity_channel(6), ns_channel(dec, 2, seed=21)),
        (identity_channel(6), b_noise_channel(dec, 2, seed=22)),
        reversal_pair(6, seed=23),
    ]
    for r, ch in cases:
        direct = check_correctable_triple(r, ch, dec)
        via_ns = check_ns_operational(compose(r, ch), dec)
        assert direct.verdict == via_ns.verdict
        assert direct.residual == pytest.approx(via_ns.residual, abs=1e-12)


def test_triple_identity_recovery_on_ns_channel():
    dec = random_decomposition(7, 2, 2, seed=24)
    ch = ns_channel(dec, 2, seed=25)
    assert check_correctable_triple(identity_channel(7), ch, dec).verdict


def test_triple_identity_recovery_fails_on_bitflip(bitflip_channel, bitflip_code):
    rep = check_correctable_triple(identity_channel(8), bitflip_channel, bitflip_code)
    assert not rep.verdict
    assert rep.residual > 0.1


# --- representation independence ------------------------------------------------------


def test_remix_leaves_verdicts_and_spectrum_invariant(bitflip_channel, bitflip_code):
    rng = np.random.default_rng(26)
    u = haar_unitary(3, rng)
    mixed = remix(bitflip_channel, u)
    before = check_kl(bitflip_channel, bitflip_code)
    after = check_kl(mixed, bitflip_code)
    assert before.verdict == after.verdict
    assert np.allclose(
        np.linalg.eigvalsh(before.lam.values), np.linalg.eigvalsh(after.lam.values), atol=1e-9
    )


def test_remix_invariance_of_failing_verdict():
    dec = random_decomposition(6, 2, 2, seed=27)
    ch = b_noise_channel(dec, 2, seed=28)
    u = haar_unitary(ch.num_kraus, np.random.default_rng(29))
    assert check_ns_algebraic(ch, dec).verdict == check_ns_algebraic(remix(ch, u), dec).verdict
    assert check_oqec(ch, dec).verdict == check_oqec(remix(ch, u), dec).verdict


# --- report invariants ------------------------------------------------------------------


def test_reports_satisfy_verdict_invariant(bitflip_channel, bitflip_code):
    dec6 = random_decomposition(6, 2, 2, seed=30)
    reports = [
        check_kl(bitflip_channel, bitflip_code),
        check_ns_algebraic(b_noise_channel(dec6, 2, seed=31), dec6),
        check_ns_operational(ns_channel(dec6, 2, seed=32), dec6),
        check_oqec(identity_channel(6), dec6),
    ]
    for rep in reports:
        assert rep.verdict == (rep.residual <= rep.tol)
        if rep.condition in (Condition.KL, Condition.NS_ALGEBRAIC, Condition.OQEC):
            assert rep.lam is not None
        else:
            assert rep.lam is None
