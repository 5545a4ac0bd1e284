"""Checkers for the correctability conditions, with scalar extraction.

Algebraic checks test block proportionality of the noise operators against
the decomposition's matrix units and extract the proportionality scalars by
normalized trace: the extraction is exact when the condition holds and the
leftover Frobenius norm is a meaningful residual when it does not.

Operational checks quantify over the matrix-unit spanning set of the
relevant operator space rather than over random states: the conditions are
linear in the input, so agreement on a spanning set is agreement
everywhere, and the evaluation budget is a fixed (m*n)^2 applications.

Every verdict compares a worst-case Frobenius residual against
``tol * dim_h``; the effective threshold is recorded in the report.
"""

from __future__ import annotations

import numpy as np

from .channel import QuantumChannel, apply_channel
from .codes import LambdaTensor, SubsystemDecomposition, compress, embed_product
from .matops import DEFAULT_TOL, dagger, frob, identity, partial_trace_a, std_matrix_unit
from .report import CheckReport, Condition

__all__ = [
    "check_kl",
    "check_ns_algebraic",
    "check_ns_operational",
    "check_oqec",
    "check_opalg_correct",
    "check_correctable_triple",
    "CheckReport",
    "Condition",
]


def _require_endomorphism(ch: QuantumChannel, dec: SubsystemDecomposition, what: str):
    if ch.dim_in != dec.dim_h or ch.dim_out != dec.dim_h:
        raise ValueError(
            f"{what} expects a channel on the {dec.dim_h}-dimensional system space, "
            f"got {ch.dim_in} -> {ch.dim_out}"
        )


def _block(mat: np.ndarray, n: int, k: int, l: int) -> np.ndarray:
    return mat[k * n : (k + 1) * n, l * n : (l + 1) * n]


def check_kl(
    ch: QuantumChannel, dec: SubsystemDecomposition, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Knill-Laflamme recoverability test for a subspace code (m = 1).

    Checks P E_a† E_b P = lambda_ab P for the code projector P, extracting
    lambda_ab = tr(P E_a† E_b P) / n. The residual is the largest
    ||P E_a† E_b P - lambda_ab P||_F over operator pairs, evaluated in code
    coordinates (same Frobenius norm, since the embedding is an isometry).
    """
    if dec.m != 1:
        raise ValueError("check_kl needs a subspace code (m = 1); use check_oqec for m > 1")
    _require_endomorphism(ch, dec, "check_kl")
    v = dec.embedding
    n = dec.n
    cv = [op @ v for op in ch.kraus]
    num = ch.num_kraus
    lam = np.zeros((num, num), dtype=complex)
    eye = identity(n)
    residual = 0.0
    worst = (0, 0)
    for a in range(num):
        for b in range(num):
            blk = dagger(cv[a]) @ cv[b]
            lam[a, b] = np.trace(blk) / n
            dev = frob(blk - lam[a, b] * eye)
            if dev > residual:
                residual, worst = dev, (a, b)
    threshold = tol * dec.dim_h
    verdict = residual <= threshold
    return CheckReport(
        condition=Condition.KL,
        verdict=verdict,
        residual=residual,
        tol=threshold,
        lam=LambdaTensor(order="standard", values=lam, residual=residual),
        worst_index=None if verdict else worst,
    )


def check_ns_algebraic(
    ch: QuantumChannel, dec: SubsystemDecomposition, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Algebraic noiseless-subsystem test.

    Two constraints, both scanned for the worst Frobenius deviation:
    every noise operator must leave the sector invariant
    (||E_a P - P E_a P|| with P the sector projector), and its sector
    restriction must act only on the A factor, i.e. every A-major block of
    V† E_a V must be a scalar multiple lambda_akl of the identity on H^B.
    """
    _require_endomorphism(ch, dec, "check_ns_algebraic")
    v = dec.embedding
    m, n = dec.m, dec.n
    num = ch.num_kraus
    lam = np.zeros((num, m, m), dtype=complex)
    eye = identity(n)
    residual = 0.0
    worst: tuple[int, ...] = (0,)
    note = ""
    for a, op in enumerate(ch.kraus):
        ov = op @ v
        leak = frob(ov - v @ (dagger(v) @ ov))
        if leak > residual:
            residual, worst = leak, (a,)
            note = f"worst deviation: sector leakage of operator {a}"
        restricted = dagger(v) @ ov
        for k in range(m):
            for l in range(m):
                blk = _block(restricted, n, k, l)
                lam[a, k, l] = np.trace(blk) / n
                dev = frob(blk - lam[a, k, l] * eye)
                if dev > residual:
                    residual, worst = dev, (a, k, l)
                    note = f"worst deviation: block proportionality at (a, k, l) = {(a, k, l)}"
    threshold = tol * dec.dim_h
    verdict = residual <= threshold
    return CheckReport(
        condition=Condition.NS_ALGEBRAIC,
        verdict=verdict,
        residual=residual,
        tol=threshold,
        lam=LambdaTensor(order="ns", values=lam, residual=residual),
        worst_index=None if verdict else worst,
        note="" if verdict else note,
    )


def _marginal_deviation(
    transform, dec: SubsystemDecomposition
) -> tuple[float, tuple[int, int, int, int]]:
    # Worst-case deviation of Tr_A(compress(transform(sigma))) from Tr_A(sigma)
    # over the product matrix units sigma = V (e_pq tensor e_rs) V†.
    m, n = dec.m, dec.n
    residual = 0.0
    worst = (0, 0, 0, 0)
    for p in range(m):
        for q in range(m):
            for r in range(n):
                for s in range(n):
                    sigma = embed_product(dec, std_matrix_unit(m, p, q), std_matrix_unit(n, r, s))
                    out = partial_trace_a(compress(dec, transform(sigma)), m, n)
                    expected = std_matrix_unit(n, r, s) if p == q else np.zeros((n, n))
                    dev = frob(out - expected)
                    if dev > residual:
                        residual, worst = dev, (p, q, r, s)
    return residual, worst


def check_ns_operational(
    ch: QuantumChannel, dec: SubsystemDecomposition, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Operational noiseless-subsystem test: the B marginal survives the noise.

    Verifies that Tr_A of the compressed channel output reproduces Tr_A of
    the input on the spanning set of embedded product matrix units.
    Equivalent to the algebraic test for trace-preserving channels; no
    scalars are extracted here.
    """
    _require_endomorphism(ch, dec, "check_ns_operational")
    residual, worst = _marginal_deviation(lambda sigma: apply_channel(ch, sigma), dec)
    threshold = tol * dec.dim_h
    verdict = residual <= threshold
    return CheckReport(
        condition=Condition.NS_OPERATIONAL,
        verdict=verdict,
        residual=residual,
        tol=threshold,
        worst_index=None if verdict else worst,
    )


def check_oqec(
    ch: QuantumChannel, dec: SubsystemDecomposition, tol: float = DEFAULT_TOL
) -> CheckReport:
    """Unified correctability test for a subsystem decomposition.

    Checks P_k E_a† E_b P_l = lambda_abkl P_kl for the decomposition's
    matrix units, extracting lambda_abkl = tr(P_k E_a† E_b P_l P_lk) / n
    (computed as normalized block traces of V† E_a† E_b V). For m = 1 this
    is exactly the Knill-Laflamme test and lambda_ab11 = lambda_ab. The
    extracted tensor satisfies lambda_abkl = conj(lambda_balk) whenever the
    check passes.
    """
    _require_endomorphism(ch, dec, "check_oqec")
    v = dec.embedding
    m, n = dec.m, dec.n
    num = ch.num_kraus
    cv = [op @ v for op in ch.kraus]
    lam = np.zeros((num, num, m, m), dtype=complex)
    eye = identity(n)
    residual = 0.0
    worst = (0, 0, 0, 0)
    for a in range(num):
        for b in range(num):
            t = dagger(cv[a]) @ cv[b]
            for k in range(m):
                for l in range(m):
                    blk = _block(t, n, k, l)
                    lam[a, b, k, l] = np.trace(blk) / n
                    dev = frob(blk - lam[a, b, k, l] * eye)
                    if dev > residual:
                        residual, worst = dev, (a, b, k, l)
    threshold = tol * dec.dim_h
    verdict = residual <= threshold
    return CheckReport(
        condition=Condition.OQEC,
        verdict=verdict,
        residual=residual,
        tol=threshold,
        lam=LambdaTensor(order="oqec", values=lam, residual=residual),
        worst_index=None if verdict else worst,
    )


def check_opalg_correct(
    r: QuantumChannel,
    ch: QuantumChannel,
    dec: SubsystemDecomposition,
    tol: float = DEFAULT_TOL,
) -> CheckReport:
    """Exact correction of the algebra 1_A tensor B(H^B) by a recovery.

    Verifies (R after E)(sigma) = sigma for sigma ranging over the embedded
    operators 1_A tensor e_rs, a basis of the corrected algebra. This is
    the map-level meaning of correctability for the decomposition.
    """
    _require_endomorphism(ch, dec, "check_opalg_correct")
    _require_endomorphism(r, dec, "check_opalg_correct (recovery)")
    n = dec.n
    eye_a = identity(dec.m)
    residual = 0.0
    worst = (0, 0)
    for s in range(n):
        for t in range(n):
            sigma = embed_product(dec, eye_a, std_matrix_unit(n, s, t))
            out = apply_channel(r, apply_channel(ch, sigma))
            dev = frob(out - sigma)
            if dev > residual:
                residual, worst = dev, (s, t)
    threshold = tol * dec.dim_h
    verdict = residual <= threshold
    return CheckReport(
        condition=Condition.OPALG_CORRECT,
        verdict=verdict,
        residual=residual,
        tol=threshold,
        worst_index=None if verdict else worst,
    )


def check_correctable_triple(
    r: QuantumChannel,
    ch: QuantumChannel,
    dec: SubsystemDecomposition,
    tol: float = DEFAULT_TOL,
) -> CheckReport:
    """Correctability of the triple (recovery, noise, decomposition).

    The B marginal must survive noise followed by recovery on every embedded
    product operator; equivalently, the B sector is noiseless for the
    composite map R after E. Same spanning-set scheme as
    :func:`check_ns_operational`.
    """
    _require_endomorphism(ch, dec, "check_correctable_triple")
    _require_endomorphism(r, dec, "check_correctable_triple (recovery)")
    residual, worst = _marginal_deviation(
        lambda sigma: apply_channel(r, apply_channel(ch, sigma)), dec
    )
    threshold = tol * dec.dim_h
    verdict = residual <= threshold
    return CheckReport(
        condition=Condition.TRIPLE,
        verdict=verdict,
        residual=residual,
        tol=threshold,
        worst_index=None if verdict else worst,
    )
