"""Seeded generators for decompositions and structured noise families.

These back the test suite and the sweep scripts: families built to satisfy
a correctability condition exactly by construction, and perturbations built
to violate it by a margin far above checking tolerance. Everything is
deterministic given a seed (or reproducible given a Generator).
"""

from __future__ import annotations

import numpy as np

from .channel import QuantumChannel, haar_isometry, haar_unitary, random_channel
from .codes import SubsystemDecomposition
from .matops import dagger, identity, tensor


def random_decomposition(dim_h: int, m: int, n: int, seed) -> SubsystemDecomposition:
    """Haar-random isometric embedding of an m x n sector into dimension dim_h."""
    rng = np.random.default_rng(seed)
    return SubsystemDecomposition.from_embedding(haar_isometry(dim_h, m * n, rng), m, n)


def random_density(dim: int, seed) -> np.ndarray:
    """Random full-rank density matrix (normalized Wishart)."""
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ dagger(g)
    return rho / np.trace(rho)


def random_hermitian(dim: int, seed) -> np.ndarray:
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (g + dagger(g)) / 2.0


def complement_basis(dec: SubsystemDecomposition) -> np.ndarray:
    """Orthonormal basis (columns) of the remainder K, via a full QR of the embedding."""
    q, _ = np.linalg.qr(dec.embedding, mode="complete")
    return q[:, dec.sector_dim :]


def ns_channel(dec: SubsystemDecomposition, num_kraus: int, seed) -> QuantumChannel:
    """Channel for which the B factor is noiseless by construction.

    Acts as (random channel on A) tensor (identity on B) inside the sector
    and as an independent random channel on the remainder K, so it is
    exactly trace preserving and the noiseless-subsystem conditions hold to
    floating precision.
    """
    rng = np.random.default_rng(seed)
    v = dec.embedding
    a_ops = random_channel(dec.m, dec.m, num_kraus, rng).kraus
    ops = [v @ tensor(a, identity(dec.n)) @ dagger(v) for a in a_ops]
    if dec.dim_k > 0:
        vk = complement_basis(dec)
        k_ops = random_channel(dec.dim_k, dec.dim_k, num_kraus, rng).kraus
        ops = [op + vk @ k @ dagger(vk) for op, k in zip(ops, k_ops)]
    return QuantumChannel.from_kraus(ops)


def b_noise_channel(dec: SubsystemDecomposition, num_kraus: int, seed) -> QuantumChannel:
    """Product noise touching the protected factor: violates the NS conditions.

    Inside the sector the Kraus operators are all pairs A_i tensor B_j of
    two random channels, with the B factor genuinely disturbed; the
    remainder K gets its own random channel. Violation size is order one.
    """
    rng = np.random.default_rng(seed)
    v = dec.embedding
    a_ops = random_channel(dec.m, dec.m, num_kraus, rng).kraus
    b_ops = random_channel(dec.n, dec.n, max(2, num_kraus), rng).kraus
    ops = [v @ tensor(a, b) @ dagger(v) for a in a_ops for b in b_ops]
    if dec.dim_k > 0:
        vk = complement_basis(dec)
        k_ops = random_channel(dec.dim_k, dec.dim_k, len(ops), rng).kraus
        ops = [op + vk @ k @ dagger(vk) for op, k in zip(ops, k_ops)]
    return QuantumChannel.from_kraus(ops)


def entangling_rotation(dim: int, strength: float, seed) -> np.ndarray:
    """exp(i * strength * H) for a random dense Hermitian H (couples everything)."""
    h = random_hermitian(dim, seed)
    w, v = np.linalg.eigh(h)
    return v @ np.diag(np.exp(1j * strength * w)) @ dagger(v)


def perturbed(ch: QuantumChannel, strength: float, seed) -> QuantumChannel:
    """Miscalibrated version of a channel: every noise operator preceded by
    the same small generic rotation. Exactly trace preserving, but any block
    structure tied to a fixed decomposition is broken at order ``strength``.
    """
    u = entangling_rotation(ch.dim_in, strength, seed)
    return QuantumChannel.from_kraus([op @ u for op in ch.kraus])


def rotated_ns_channel(dec: SubsystemDecomposition, num_kraus: int, seed) -> QuantumChannel:
    """Correctable channel needing active recovery: a random unitary after
    A-factor-only noise. Block proportionality of E_a† E_b survives the
    rotation, but the sector itself is moved, so the identity recovery
    fails while a proper recovery exists.
    """
    rng = np.random.default_rng(seed)
    base = ns_channel(dec, num_kraus, rng)
    u = haar_unitary(dec.dim_h, rng)
    return QuantumChannel.from_kraus([u @ op for op in base.kraus])


def isometry_error_channel(dec: SubsystemDecomposition, num_errors: int, seed) -> QuantumChannel:
    """Errors that shunt the sector into mutually orthogonal copies.

    E_a = sqrt(p_a) U_a with unitaries U_a agreeing on the sector with
    S_a (G_a tensor 1_n) V† for slices S_a of one Haar isometry (so the
    images of the sector are orthogonal) and random co-factor unitaries
    G_a. Satisfies the unified correctability condition exactly, with
    lambda_abkl = delta_ab p_a delta_kl. Requires num_errors * m * n <= dim_h.
    """
    rng = np.random.default_rng(seed)
    d, sector = dec.dim_h, dec.sector_dim
    if num_errors * sector > d:
        raise ValueError(
            f"need num_errors * m * n <= dim_h, got {num_errors} * {sector} > {d}"
        )
    v = dec.embedding
    s = haar_isometry(d, num_errors * sector, rng)
    p = rng.dirichlet(np.ones(num_errors))
    v_comp = complement_basis(dec)
    ops = []
    for a in range(num_errors):
        s_a = s[:, a * sector : (a + 1) * sector]
        g_a = haar_unitary(dec.m, rng)
        t = s_a @ tensor(g_a, identity(dec.n)) @ dagger(v)
        # unitary extension: send K onto the complement of the image of the sector
        q, _ = np.linalg.qr(s_a, mode="complete")
        ops.append(np.sqrt(p[a]) * (t + q[:, sector:] @ dagger(v_comp)))
    return QuantumChannel.from_kraus(ops)


def reversal_pair(dim: int, seed) -> tuple[QuantumChannel, QuantumChannel]:
    """A single-unitary error channel and its exact reversal."""
    rng = np.random.default_rng(seed)
    u = haar_unitary(dim, rng)
    return QuantumChannel.from_kraus([dagger(u)]), QuantumChannel.from_kraus([u])
