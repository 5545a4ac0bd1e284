"""Quantum operations in Kraus (operator-sum) form.

A channel is stored as its list of noise operators E_a; it acts on an
input operator as rho -> sum_a E_a rho E_a†. Rectangular operators are
first class, so maps between spaces of different dimension (isometric
encodings, recoveries onto a factor) are ordinary channels here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .matops import DEFAULT_TOL, as_matrix, dagger, frob, identity
from .report import CheckReport, Condition


@dataclass(frozen=True)
class QuantumChannel:
    """A completely positive map given by Kraus operators.

    Each operator maps C^dim_in to C^dim_out, i.e. is a dim_out x dim_in
    matrix. Complete positivity is automatic from the representation; trace
    preservation is a property verified by :func:`is_cptp`, not enforced at
    construction, so deliberately lossy channels remain expressible for
    negative tests. Values are immutable; treat the arrays as read-only.
    """

    kraus: tuple[np.ndarray, ...]
    dim_in: int
    dim_out: int

    def __post_init__(self):
        if not self.kraus:
            raise ValueError("a channel needs at least one Kraus operator")
        for i, op in enumerate(self.kraus):
            if op.shape != (self.dim_out, self.dim_in):
                raise ValueError(
                    f"Kraus operator {i} has shape {op.shape}, "
                    f"expected ({self.dim_out}, {self.dim_in})"
                )

    @classmethod
    def from_kraus(cls, ops: Iterable[np.ndarray]) -> "QuantumChannel":
        """Build a channel from any iterable of matrices (shapes must agree)."""
        mats = [as_matrix(op) for op in ops]
        if not mats:
            raise ValueError("a channel needs at least one Kraus operator")
        rows, cols = mats[0].shape
        for m in mats:
            m.setflags(write=False)
        return cls(kraus=tuple(mats), dim_in=cols, dim_out=rows)

    @property
    def num_kraus(self) -> int:
        return len(self.kraus)


def identity_channel(dim: int) -> QuantumChannel:
    return QuantumChannel.from_kraus([identity(dim)])


def is_cptp(ch: QuantumChannel, tol: float = DEFAULT_TOL) -> CheckReport:
    """Check trace preservation: ||sum_a E_a† E_a - 1||_F against tol * dim_in.

    Complete positivity holds automatically for any Kraus list, so the
    verdict is about the trace condition only (the report says so).
    """
    total = sum(dagger(op) @ op for op in ch.kraus)
    residual = frob(total - identity(ch.dim_in))
    threshold = tol * max(1, ch.dim_in)
    return CheckReport(
        condition=Condition.CPTP,
        verdict=residual <= threshold,
        residual=residual,
        tol=threshold,
        note="complete positivity is automatic in Kraus form; residual is the trace-preservation defect",
    )


def apply_channel(ch: QuantumChannel, rho: np.ndarray) -> np.ndarray:
    """sum_a E_a rho E_a† for a square input of dimension dim_in."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ch.dim_in, ch.dim_in):
        raise ValueError(f"input has shape {rho.shape}, channel expects ({ch.dim_in}, {ch.dim_in})")
    out = np.zeros((ch.dim_out, ch.dim_out), dtype=complex)
    for op in ch.kraus:
        out += op @ rho @ dagger(op)
    return out


def compose(second: QuantumChannel, first: QuantumChannel) -> QuantumChannel:
    """The channel acting as ``second`` after ``first`` (Kraus list of all products)."""
    if first.dim_out != second.dim_in:
        raise ValueError(
            f"cannot compose: first outputs dim {first.dim_out}, second expects dim {second.dim_in}"
        )
    ops = [r @ e for r in second.kraus for e in first.kraus]
    return QuantumChannel.from_kraus(ops)


def _choi(ch: QuantumChannel) -> np.ndarray:
    # sum_a vec(E_a) vec(E_a)†, column-stacked; equal Choi matrices <=> equal maps.
    vecs = [op.reshape(-1, 1, order="F") for op in ch.kraus]
    return sum(v @ dagger(v) for v in vecs)


def channels_equal(a: QuantumChannel, b: QuantumChannel, tol: float = DEFAULT_TOL) -> bool:
    """Whether two channels agree as maps, independent of Kraus representation.

    Compares the action on the matrix-unit basis of the input space
    (equivalently, the Choi matrices), so gauge-equivalent Kraus lists of
    different lengths compare equal.
    """
    if (a.dim_in, a.dim_out) != (b.dim_in, b.dim_out):
        raise ValueError(
            f"dimension mismatch: ({a.dim_in}->{a.dim_out}) vs ({b.dim_in}->{b.dim_out})"
        )
    dev = frob(_choi(a) - _choi(b))
    return dev <= tol * max(1, a.dim_in * a.dim_out)


def remix(ch: QuantumChannel, u: np.ndarray) -> QuantumChannel:
    """Gauge transform of the Kraus list: F_a = sum_b u[a, b] E_b.

    When u has orthonormal columns (u† u = 1 on the old index) the result
    represents the same map; the new list may be longer than the old.
    """
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[1] != ch.num_kraus:
        raise ValueError(f"remix matrix shape {u.shape} does not fit {ch.num_kraus} operators")
    stack = np.stack(ch.kraus)
    ops = np.einsum("ab,bij->aij", u, stack)
    return QuantumChannel.from_kraus(list(ops))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed random unitary (QR of a Ginibre matrix, phase-fixed)."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def haar_isometry(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """First ``cols`` columns of a Haar unitary of size ``rows`` (requires cols <= rows)."""
    if cols > rows:
        raise ValueError(f"no isometry from dim {cols} into dim {rows}")
    return haar_unitary(rows, rng)[:, :cols]


def random_channel(dim_in: int, dim_out: int, num_kraus: int, seed) -> QuantumChannel:
    """Seeded random CPTP channel via an isometric dilation.

    Slices a Haar-random isometry from C^dim_in into C^(num_kraus * dim_out)
    into num_kraus blocks of dim_out rows, so the Kraus operators satisfy
    sum_a E_a† E_a = 1 exactly up to floating error. Deterministic per seed
    (``seed`` may be an int or a numpy Generator). Requires
    num_kraus * dim_out >= dim_in, else no trace-preserving map exists.
    """
    if dim_in < 1 or dim_out < 1 or num_kraus < 1:
        raise ValueError("dimensions and the number of Kraus operators must be positive")
    if num_kraus * dim_out < dim_in:
        raise ValueError(
            f"cannot dilate: num_kraus * dim_out = {num_kraus * dim_out} < dim_in = {dim_in}"
        )
    rng = np.random.default_rng(seed)
    w = haar_isometry(num_kraus * dim_out, dim_in, rng)
    ops = [w[a * dim_out : (a + 1) * dim_out, :] for a in range(num_kraus)]
    return QuantumChannel.from_kraus(ops)


def kraus_stack(ops: Sequence[np.ndarray]) -> np.ndarray:
    """Stack a Kraus list into one (num, rows, cols) array (convenience for einsum work)."""
    return np.stack([np.asarray(op, dtype=complex) for op in ops])
