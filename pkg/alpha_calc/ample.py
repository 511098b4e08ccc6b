"""
Nakai-Moishezon ampleness check against a declared curve list
"""

import logging
from typing import Dict, List, Literal, Sequence, Tuple

try:
    from typing import Self
except ImportError:  # Python < 3.11
    from typing_extensions import Self

from pydantic import BaseModel, ConfigDict, model_validator

from .builder import SurfaceModel
from .lattice import DivisorClass

logger = logging.getLogger(__name__)

SELF_INTERSECTION = "self-intersection"
NO_ASSERTION = "no completeness assertion recorded: the verdict only covers the listed curves"


class AmplenessReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    self_intersection: int
    per_curve: Dict[str, int]
    verdict: Literal["pass", "fail"]
    failures: Tuple[str, ...]
    assertion_note: str

    @model_validator(mode="after")
    def check_verdict(self) -> Self:
        positive = self.self_intersection > 0 and all(v > 0 for v in self.per_curve.values())
        if (self.verdict == "pass") != positive:
            raise ValueError(f"verdict {self.verdict!r} contradicts the intersection numbers")
        return self

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def _assertion_note(model: SurfaceModel) -> str:
    notes = [text for text in model.assertions if "complete" in text.lower()]
    return "; ".join(notes) if notes else NO_ASSERTION


def nakai_moishezon_check(
    model: SurfaceModel, divisor: DivisorClass, curve_labels: Sequence[str]
) -> AmplenessReport:
    """
    L^2 > 0 and L.C > 0 for every listed curve; ampleness follows only if the
    list holds every curve L could fail on, which the report leaves to the
    model's assertion.
    """
    classes = [(label, model.curve(label)) for label in curve_labels]
    square = model.pair(divisor, divisor)
    per_curve = {label: model.pair(divisor, cls) for label, cls in classes}
    failures: List[str] = [] if square > 0 else [SELF_INTERSECTION]
    failures.extend(label for label, value in per_curve.items() if value <= 0)
    logger.debug("ampleness check: L^2=%d, %d failures", square, len(failures))
    return AmplenessReport(
        self_intersection=square,
        per_curve=per_curve,
        verdict="fail" if failures else "pass",
        failures=tuple(failures),
        assertion_note=_assertion_note(model),
    )
