"""Result records shared by the condition checkers."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .codes import LambdaTensor


class Condition(Enum):
    """Which correctability condition a report is about."""

    CPTP = "cptp"
    KL = "kl"
    NS_ALGEBRAIC = "ns-algebraic"
    NS_OPERATIONAL = "ns-operational"
    OQEC = "oqec"
    OPALG_CORRECT = "opalg-correct"
    TRIPLE = "triple"


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one algebraic or operational condition check.

    ``tol`` is the effective threshold the verdict was decided against (the
    base tolerance scaled by the ambient matrix dimension), so
    ``verdict == (residual <= tol)`` always holds. ``worst_index`` is the
    index tuple at which the largest deviation occurred, for diagnosing
    failures; ``lam`` carries the extracted proportionality scalars for the
    checks that have them.
    """

    condition: Condition
    verdict: bool
    residual: float
    tol: float
    lam: "LambdaTensor | None" = None
    worst_index: tuple[int, ...] | None = None
    note: str = ""
