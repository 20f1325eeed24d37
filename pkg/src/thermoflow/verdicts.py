"""Feasibility verdicts with machine-checkable certificates.

Every infeasible verdict carries a certificate that can be replayed
against the quantity it came from: a violated prefix sum (majorization),
a curve crossing point (thermo-majorization), or a violating divergence
order ``alpha`` (second laws).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

__all__ = [
    "PrefixViolation",
    "CurveViolation",
    "AlphaViolation",
    "Certificate",
    "TransitionVerdict",
]


@dataclass(frozen=True)
class PrefixViolation:
    """Prefix length ``k`` (1-based) whose sorted partial sum fails to dominate."""

    prefix: int
    initial_sum: float
    target_sum: float


@dataclass(frozen=True)
class CurveViolation:
    """Breakpoint where the candidate curve dips below the target curve."""

    x: float
    initial_value: float
    target_value: float


@dataclass(frozen=True)
class AlphaViolation:
    """Divergence order where monotonicity fails.

    ``alpha`` is a float for grid or refined points; the analytic limits are
    labelled ``"-inf"``, ``"0-"``, ``"0"``, ``"1"``, ``"+inf"``.
    """

    alpha: Union[float, str]
    initial_divergence: float
    target_divergence: float


Certificate = Union[PrefixViolation, CurveViolation, AlphaViolation, None]


@dataclass(frozen=True)
class TransitionVerdict:
    feasible: bool
    certificate: Certificate = None

    def __bool__(self) -> bool:
        return self.feasible

    def to_json_dict(self) -> dict:
        if self.certificate is None:
            return {"feasible": self.feasible, "certificate": None}
        cert = self.certificate
        payload: dict = {"kind": type(cert).__name__}
        for field, value in vars(cert).items():
            payload[field] = value
        return {"feasible": self.feasible, "certificate": payload}
