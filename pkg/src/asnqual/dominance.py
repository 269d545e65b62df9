"""Pareto dominance between applicants and the Pareto violation ratio.

A committee decision is "Pareto consistent" when no denied applicant
dominates a qualified one on all three indicators.  The violation ratio of
a (discipline, role) group is the fraction of dominating ordered pairs
whose outcome breaks that expectation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .indicators import IndicatorVector

if TYPE_CHECKING:
    from .thresholds import DisciplineId, Role


def dominates(x: Sequence[float], y: Sequence[float]) -> bool:
    """Componentwise no-lower with at least one strictly higher component."""
    if len(x) != len(y):
        raise ValueError("vectors must have equal length")
    return all(a >= b for a, b in zip(x, y)) and any(a > b for a, b in zip(x, y))


def pareto_dominates(x: IndicatorVector, y: IndicatorVector) -> bool:
    if x.kind is not y.kind:
        raise ValueError(f"indicator kind mismatch: {x.kind.value} vs {y.kind.value}")
    return dominates(x.as_tuple(), y.as_tuple())


@dataclass(frozen=True)
class ApplicationRecord:
    """One application: who applied, where, with what indicators and outcome."""

    applicant_id: str
    last_name: str
    first_name: str
    discipline: DisciplineId
    role: Role
    indicators: IndicatorVector
    qualified: bool


@dataclass
class PvrResult:
    """Violation ratio of one applicant group, with the offending pairs.

    When the group admits no dominating pair at all (too small, or fully
    incomparable) the ratio is reported as 0 and ``no_comparable_pairs``
    is set so tables stay total without hiding the degenerate case.
    """

    ratio: float
    dominating_pairs: int
    violating_pairs: list[tuple[ApplicationRecord, ApplicationRecord]] = field(
        default_factory=list
    )
    no_comparable_pairs: bool = False

    @property
    def violations(self) -> int:
        return len(self.violating_pairs)


def pareto_violation_ratio(apps: Sequence[ApplicationRecord]) -> PvrResult:
    """Fraction of dominating pairs (p, q) where p was denied but q qualified.

    All records must belong to one (discipline, role) group.  The scan is a
    plain O(n^2) pairwise comparison; group sizes in a round are small
    enough that nothing smarter is warranted.
    """
    if not apps:
        return PvrResult(0.0, 0, [], no_comparable_pairs=True)
    key = (apps[0].discipline.code, apps[0].role)
    for a in apps:
        if (a.discipline.code, a.role) != key:
            raise ValueError("applications must share one discipline and role")

    values = np.array([a.indicators.as_tuple() for a in apps], dtype=float)
    # dom[i, j]: applicant i dominates applicant j.
    ge = (values[:, None, :] >= values[None, :, :]).all(axis=2)
    gt = (values[:, None, :] > values[None, :, :]).any(axis=2)
    dom = ge & gt
    dominating = int(dom.sum())
    if dominating == 0:
        return PvrResult(0.0, 0, [], no_comparable_pairs=True)

    qualified = np.array([a.qualified for a in apps], dtype=bool)
    violation = dom & ~qualified[:, None] & qualified[None, :]
    pairs = [(apps[i], apps[j]) for i, j in np.argwhere(violation)]
    return PvrResult(len(pairs) / dominating, dominating, pairs)


pvr = pareto_violation_ratio
