from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from mapr.model import Committee, LossKind


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one solver run.

    ``committees`` holds one committee, or every optimum when enumeration was
    requested.  ``feasible`` is False only for a perfect-committee search
    that proved no perfect committee exists.
    """

    committees: tuple[Committee, ...]
    loss: Optional[Fraction]
    algorithm: str
    kind: Optional[LossKind] = None
    trace: dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    feasible: bool = True
    truncated: bool = False

    @property
    def committee(self) -> Optional[Committee]:
        return self.committees[0] if self.committees else None
