"""Subspace codes and subsystem decompositions H = (H^A tensor H^B) + K.

A decomposition is an explicit isometry V from the product of a noisy
co-factor A (dimension m) and a protected factor B (dimension n) into the
system space H; everything orthogonal to range(V) is the remainder K.
Subspace codes are the m = 1 case, so one data type serves both and every
checker downstream takes the same input.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .matops import as_matrix, dagger, frob, identity, tensor

# Embeddings are validated once at construction, leniently; checkers apply
# their own (stricter, caller-chosen) tolerances to everything else.
_ISOMETRY_TOL = 1e-8


@dataclass(frozen=True)
class SubsystemDecomposition:
    """Isometric embedding of a product sector into the system space.

    ``embedding`` is the dim_h x (m*n) isometry V whose columns are the
    product basis vectors |alpha_k>|beta_i> in A-major order (column
    ``k * n + i``). The code projector / sector projector is V V†. A
    subspace code is ``m == 1``.
    """

    embedding: np.ndarray
    m: int
    n: int

    def __post_init__(self):
        v = self.embedding
        if self.m < 1 or self.n < 1:
            raise ValueError("factor dimensions must be positive")
        if v.ndim != 2 or v.shape[1] != self.m * self.n:
            raise ValueError(
                f"embedding has shape {v.shape}, expected (dim_h, {self.m * self.n})"
            )
        if v.shape[0] < self.m * self.n:
            raise ValueError("the sector cannot be larger than the system space")
        gram = dagger(v) @ v
        dev = frob(gram - identity(self.m * self.n))
        if dev > _ISOMETRY_TOL * max(1, self.m * self.n):
            raise ValueError(f"embedding is not an isometry: ||V†V - 1||_F = {dev:.3e}")

    @classmethod
    def from_embedding(cls, v, m: int, n: int) -> "SubsystemDecomposition":
        v = as_matrix(v)
        v.setflags(write=False)
        return cls(embedding=v, m=m, n=n)

    @classmethod
    def subspace(cls, basis) -> "SubsystemDecomposition":
        """Subspace code spanned by the (orthonormal) columns of ``basis``."""
        b = as_matrix(basis)
        return cls.from_embedding(b, 1, b.shape[1])

    @classmethod
    def trivial(cls, m: int, n: int) -> "SubsystemDecomposition":
        """H = H^A tensor H^B with no remainder, embedded by the identity."""
        return cls.from_embedding(identity(m * n), m, n)

    @property
    def dim_h(self) -> int:
        return self.embedding.shape[0]

    @property
    def sector_dim(self) -> int:
        return self.m * self.n

    @property
    def dim_k(self) -> int:
        return self.dim_h - self.m * self.n


def factor_embedding(dec: SubsystemDecomposition, k: int) -> np.ndarray:
    """The isometry W_k : H^B -> H with W_k |beta> = V |alpha_k>|beta>.

    This is just the k-th A-major column block of the embedding.
    """
    if not 0 <= k < dec.m:
        raise IndexError(f"co-factor index {k} out of range for m = {dec.m}")
    return dec.embedding[:, k * dec.n : (k + 1) * dec.n]


def matrix_unit(dec: SubsystemDecomposition, k: int, l: int) -> np.ndarray:
    """The operator V (|alpha_k><alpha_l| tensor 1_n) V† on the system space.

    These satisfy the matrix-unit relations P_kl P_l'k' = delta_ll' P_kk'
    and P_kl† = P_lk, have rank n, and for m = 1 the single unit P_00 is
    the code-subspace projector. Indices are 0-based.
    """
    return factor_embedding(dec, k) @ dagger(factor_embedding(dec, l))


def sector_projector(dec: SubsystemDecomposition) -> np.ndarray:
    """Projection of H onto the product sector: V V† (rank m*n)."""
    return dec.embedding @ dagger(dec.embedding)


def complement_projector(dec: SubsystemDecomposition) -> np.ndarray:
    """Projection of H onto the remainder K: 1 - V V†."""
    return identity(dec.dim_h) - sector_projector(dec)


def compress(dec: SubsystemDecomposition, mat: np.ndarray) -> np.ndarray:
    """The sector block of an operator, in sector coordinates: V† M V.

    The result is (m*n) x (m*n) with A-major composite indices, ready for
    ``partial_trace_a(..., m, n)``. Equals conjugating by the sector
    projector and then rotating into the product basis.
    """
    mat = np.asarray(mat, dtype=complex)
    d = dec.dim_h
    if mat.shape != (d, d):
        raise ValueError(f"operator has shape {mat.shape}, expected ({d}, {d})")
    return dagger(dec.embedding) @ mat @ dec.embedding


def embed_operator(dec: SubsystemDecomposition, sigma: np.ndarray) -> np.ndarray:
    """Embed an (m*n) x (m*n) sector operator into the system space: V sigma V†."""
    sigma = np.asarray(sigma, dtype=complex)
    d = dec.sector_dim
    if sigma.shape != (d, d):
        raise ValueError(f"sector operator has shape {sigma.shape}, expected ({d}, {d})")
    return dec.embedding @ sigma @ dagger(dec.embedding)


def embed_product(
    dec: SubsystemDecomposition, sigma_a: np.ndarray, sigma_b: np.ndarray
) -> np.ndarray:
    """Embed a product operator sigma_a tensor sigma_b into the system space."""
    sigma_a = np.asarray(sigma_a, dtype=complex)
    sigma_b = np.asarray(sigma_b, dtype=complex)
    if sigma_a.shape != (dec.m, dec.m):
        raise ValueError(f"A factor has shape {sigma_a.shape}, expected ({dec.m}, {dec.m})")
    if sigma_b.shape != (dec.n, dec.n):
        raise ValueError(f"B factor has shape {sigma_b.shape}, expected ({dec.n}, {dec.n})")
    return embed_operator(dec, tensor(sigma_a, sigma_b))


@dataclass(frozen=True)
class LambdaTensor:
    """Proportionality scalars extracted by a condition check.

    ``order`` says which family: "standard" has values[a, b] (subspace
    recoverability), "ns" has values[a, k, l] (noise acting on the A factor
    only), "oqec" has values[a, b, k, l] (the unified condition).
    ``residual`` is the worst Frobenius deviation of the proportionality
    constraint the scalars were extracted from.
    """

    order: str
    values: np.ndarray
    residual: float


class CodeClass(Enum):
    """Special cases of operator error correction, by structure of the triple."""

    STANDARD_QEC = "StandardQEC"
    GENERALIZED_NS = "GeneralizedNS"
    STANDARD_NS = "StandardNS"
    DFS = "DFS"
    GENERAL_OQEC = "GeneralOQEC"


def classify(dec: SubsystemDecomposition, recovery_is_identity: bool) -> CodeClass:
    """Place a correctable structure in the standard taxonomy.

    Subspace codes (m = 1) needing active recovery are standard error
    correction; if the identity recovery suffices they are decoherence-free
    subspaces. With a genuine co-factor, identity recovery means a noiseless
    subsystem (the "standard" kind when the sector exhausts the space, i.e.
    no remainder K), and anything needing active recovery is the general
    operator-correctable case. Whether the identity recovery works is a
    property of the triple, not of the decomposition, so the caller says.
    """
    if recovery_is_identity:
        if dec.m == 1:
            return CodeClass.DFS
        if dec.dim_k == 0:
            return CodeClass.STANDARD_NS
        return CodeClass.GENERALIZED_NS
    if dec.m == 1:
        return CodeClass.STANDARD_QEC
    return CodeClass.GENERAL_OQEC
