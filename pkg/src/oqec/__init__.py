"""Operator quantum error correction toolkit.

Channels in Kraus form, subspace codes and subsystem decompositions,
algebraic and operational correctability checkers, and recovery-channel
construction, all over dense numpy linear algebra.
"""

from .matops import (
    DEFAULT_TOL,
    dagger,
    frob,
    herm_eig,
    partial_trace_a,
    polar_isometry,
    tensor,
)
from .report import CheckReport, Condition
from .channel import (
    QuantumChannel,
    apply_channel,
    channels_equal,
    compose,
    haar_isometry,
    haar_unitary,
    identity_channel,
    is_cptp,
    random_channel,
    remix,
)
from .codes import (
    CodeClass,
    LambdaTensor,
    SubsystemDecomposition,
    classify,
    complement_projector,
    compress,
    embed_operator,
    embed_product,
    factor_embedding,
    matrix_unit,
    sector_projector,
)
from .conditions import (
    check_correctable_triple,
    check_kl,
    check_ns_algebraic,
    check_ns_operational,
    check_opalg_correct,
    check_oqec,
)
from .recovery import (
    NotCorrectableError,
    ampliation,
    build_oqec_recovery,
    build_standard_recovery,
    randomize_factor_a,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "dagger",
    "frob",
    "herm_eig",
    "partial_trace_a",
    "polar_isometry",
    "tensor",
    "CheckReport",
    "Condition",
    "QuantumChannel",
    "apply_channel",
    "channels_equal",
    "compose",
    "haar_isometry",
    "haar_unitary",
    "identity_channel",
    "is_cptp",
    "random_channel",
    "remix",
    "CodeClass",
    "LambdaTensor",
    "SubsystemDecomposition",
    "classify",
    "complement_projector",
    "compress",
    "embed_operator",
    "embed_product",
    "factor_embedding",
    "matrix_unit",
    "sector_projector",
    "check_correctable_triple",
    "check_kl",
    "check_ns_algebraic",
    "check_ns_operational",
    "check_opalg_correct",
    "check_oqec",
    "NotCorrectableError",
    "ampliation",
    "build_oqec_recovery",
    "build_standard_recovery",
    "randomize_factor_a",
]
