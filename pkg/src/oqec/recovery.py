"""Construction of recovery channels for correctable code structures.

The subspace builder implements measurement-plus-reversal: diagonalize the
extracted coefficient matrix, remix the noise operators into a family with
mutually orthogonal, uniformly scaled actions on the code, and invert each
one on its image through the isometric factor of a polar decomposition. The
part of the space unreachable from the code through the noise is routed
back into the code isometrically, in blocks, so the result is exactly trace
preserving without disturbing the correction identity (code-supported
inputs never reach it).

The subsystem builder reduces to the subspace machinery: the noise
operators are flattened against the co-factor basis into rectangular maps
out of the protected factor, those satisfy a flat recoverability identity
with scalar matrix lambda[(a,k),(b,l)], the flat errors are corrected onto
the protected factor, and the co-factor is re-inflated maximally mixed by
the ampliation channel.
"""

from __future__ import annotations

import numpy as np

from .channel import QuantumChannel, compose
from .codes import (
    LambdaTensor,
    SubsystemDecomposition,
    complement_projector,
    factor_embedding,
    matrix_unit,
)
from .conditions import check_kl, check_oqec
from .matops import DEFAULT_TOL, dagger, frob, herm_eig, identity, polar_isometry

__all__ = [
    "NotCorrectableError",
    "build_standard_recovery",
    "build_oqec_recovery",
    "randomize_factor_a",
    "ampliation",
]


class NotCorrectableError(ValueError):
    """Raised when a recovery is requested for a structure that fails its condition."""


def _orthonormal_range(projector: np.ndarray) -> np.ndarray:
    # Columns spanning the range of a (numerical) orthogonal projector.
    w, v = herm_eig(projector, tol=1e-6)
    return v[:, w > 0.5]


def _kl_recovery_ops(
    flat_ops: list[np.ndarray], lam: np.ndarray, threshold: float
) -> list[np.ndarray]:
    """Kraus operators of a map undoing rectangular errors A_a : C^d -> C^D
    with A_a† A_b = lam[a, b] 1_d.

    Returns d x D operators: one reversal per significant eigenvalue of
    lam, plus isometric routing of the unreachable complement of C^D back
    onto C^d in blocks of width <= d.
    """
    dim_out, d = flat_ops[0].shape
    w, u = herm_eig(lam)
    stack = np.stack(flat_ops)
    kraus: list[np.ndarray] = []
    reached = np.zeros((dim_out, dim_out), dtype=complex)
    for c in range(w.size):
        if w[c] <= threshold:
            continue
        g = np.einsum("a,aij->ij", u[:, c], stack)
        wc = polar_isometry(g)
        kraus.append(dagger(wc))
        reached += wc @ dagger(wc)
    if not kraus:
        raise NotCorrectableError("all coefficient eigenvalues are below threshold")
    comp = _orthonormal_range(identity(dim_out) - reached)
    eye_d = identity(d)
    for start in range(0, comp.shape[1], d):
        blk = comp[:, start : start + d]
        kraus.append(eye_d[:, : blk.shape[1]] @ dagger(blk))
    return kraus


def build_standard_recovery(
    ch: QuantumChannel,
    dec: SubsystemDecomposition,
    lam: LambdaTensor | None = None,
    tol: float = DEFAULT_TOL,
) -> QuantumChannel:
    """Measurement-plus-reversal recovery for a subspace code (m = 1).

    Requires the recoverability condition to hold: ``lam`` must be a
    "standard" coefficient tensor whose residual is within tolerance (when
    omitted it is extracted here, and the check must pass). The returned
    channel R is trace preserving and satisfies (R after E)(sigma) = sigma
    for every sigma supported on the code, up to the tolerance.
    """
    if dec.m != 1:
        raise ValueError("build_standard_recovery needs a subspace code (m = 1)")
    threshold = tol * dec.dim_h
    if lam is None:
        report = check_kl(ch, dec, tol)
        if not report.verdict:
            raise NotCorrectableError(
                f"recoverability residual {report.residual:.3e} exceeds {report.tol:.3e}"
            )
        lam = report.lam
    if lam.order != "standard":
        raise ValueError(f"expected a 'standard' coefficient tensor, got '{lam.order}'")
    if lam.residual > threshold:
        raise NotCorrectableError(
            f"supplied coefficient residual {lam.residual:.3e} exceeds {threshold:.3e}"
        )
    v = dec.embedding
    flat = [op @ v for op in ch.kraus]
    rec = _kl_recovery_ops(flat, lam.values, threshold)
    return QuantumChannel.from_kraus([v @ r for r in rec])


def build_oqec_recovery(
    ch: QuantumChannel, dec: SubsystemDecomposition, tol: float = DEFAULT_TOL
) -> QuantumChannel:
    """Recovery for a correctable subsystem decomposition.

    Flattens the noise against the co-factor basis (operators
    E_a W_k / sqrt(m) from H^B into H), corrects the flattened errors onto
    H^B with the subspace machinery, and composes with the ampliation that
    re-inflates the co-factor maximally mixed. Refuses when the
    correctability check fails. The result satisfies
    check_opalg_correct(R', ch, dec).
    """
    report = check_oqec(ch, dec, tol)
    if not report.verdict:
        raise NotCorrectableError(
            f"correctability residual {report.residual:.3e} exceeds {report.tol:.3e}"
        )
    m, n = dec.m, dec.n
    threshold = tol * dec.dim_h
    blocks = [factor_embedding(dec, k) for k in range(m)]
    flat = [op @ blocks[k] / np.sqrt(m) for op in ch.kraus for k in range(m)]
    num = len(flat)
    # Flat coefficient matrix, (a, k)-major; a Gram matrix, hence Hermitian PSD.
    lam_flat = np.moveaxis(report.lam.values, 2, 1).reshape(num, num) / m
    eye_n = identity(n)
    flat_residual = max(
        frob(dagger(flat[i]) @ flat[j] - lam_flat[i, j] * eye_n)
        for i in range(num)
        for j in range(num)
    )
    if flat_residual > threshold:
        raise NotCorrectableError(
            f"flattened recoverability residual {flat_residual:.3e} exceeds {threshold:.3e}"
        )
    rec = _kl_recovery_ops(flat, lam_flat, threshold)
    onto_factor = QuantumChannel.from_kraus(rec)
    return compose(ampliation(dec), onto_factor)


def randomize_factor_a(dec: SubsystemDecomposition) -> QuantumChannel:
    """The channel scrambling the co-factor: Kraus list {P_kl / sqrt(m)}.

    Maps an embedded product sigma_a tensor sigma_b to
    (tr(sigma_a) / m) (1_A tensor sigma_b), fixes operators of the form
    1_A tensor sigma_b, and acts as the identity compression on the
    remainder K (whose projector joins the Kraus list when K is nontrivial,
    keeping the map trace preserving on all of H).
    """
    ops = [
        matrix_unit(dec, k, l) / np.sqrt(dec.m) for k in range(dec.m) for l in range(dec.m)
    ]
    if dec.dim_k > 0:
        ops.append(complement_projector(dec))
    return QuantumChannel.from_kraus(ops)


def ampliation(dec: SubsystemDecomposition) -> QuantumChannel:
    """The channel inflating B-factor states into the sector, maximally mixed on A.

    Kraus list {W_k / sqrt(m)} with W_k the co-factor block embeddings, so
    rho_b maps to V (1_A / m tensor rho_b) V†. Trace preserving from B(H^B)
    into B(H); for m = 1 it is the isometric embedding onto the code.
    """
    ops = [factor_embedding(dec, k) / np.sqrt(dec.m) for k in range(dec.m)]
    return QuantumChannel.from_kraus(ops)
