"""Metric formulas: weighted factor scores, module complexity, autonomy.

All functions are pure.  Percentages are on a 0-100 scale; the autonomy
total is expressed in fractional units, so it lies in [0, 4].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from pmsmetrics.errors import EmptyInputError, NonpositiveWeightError, RangeError, ZeroTotalError
from pmsmetrics.model import (
    FACTOR_MAX,
    AutonomyAssessment,
    ComplexityInputs,
    CoverageEvidence,
    DirectPercent,
    ModuleAssessment,
    PmsIdentity,
    TaskCounts,
)

# Band labels, lowest first.  Each band is upper-inclusive; 0 has its own.
STRATEGY_BANDS = (
    "no enhancement",
    "single-goal optimization",
    "between single and multiple goals",
    "multi-goal optimization",
    "many new goals to theoretical limit",
)
COORDINATION_BANDS = (
    "unaware of other systems",
    "aware, little or no coordination",
    "between awareness and limited coordination",
    "limited coordination",
    "full cooperation",
)


@dataclass(frozen=True)
class ModuleComplexity:
    module: str
    inputs: ComplexityInputs
    c: float
    zero_io_warning: bool


@dataclass(frozen=True)
class AutonomyProfile:
    a_i: float
    a_p: float
    a_s: float
    a_c: float
    strategy_band: str
    coordination_band: str
    total: float


@dataclass(frozen=True)
class MetricsReport:
    pms: PmsIdentity
    portability: float
    scalability: float
    modifiability_length: float
    modifiability_offset: float
    complexity: float
    module_complexities: tuple[ModuleComplexity, ...]
    autonomy: AutonomyProfile


def weighted_factor_score(pairs: Iterable[tuple[float, float]]) -> float:
    """Weighted mean ``sum(w * v) / sum(w)`` of (weight, value) pairs."""
    pairs = list(pairs)
    if not pairs:
        raise EmptyInputError("at least one (weight, value) pair is required")
    for w, _ in pairs:
        if not w > 0:
            raise NonpositiveWeightError(f"weight {w!r} must be greater than 0")
    mean = math.fsum(w * v for w, v in pairs) / math.fsum(w for w, _ in pairs)
    # Rounding in the products can push the mean a few ulps past its bounds.
    values = [v for _, v in pairs]
    return min(max(mean, min(values)), max(values))


def portability_score(modules: Sequence[ModuleAssessment]) -> float:
    return weighted_factor_score((m.weight, m.portability) for m in modules)


def scalability_score(modules: Sequence[ModuleAssessment]) -> float:
    return weighted_factor_score((m.weight, m.scalability) for m in modules)


def module_complexity(inputs: ComplexityInputs, module: str = "") -> ModuleComplexity:
    # The fan-in x fan-out term is deliberately not squared.
    io = inputs.fan_in * inputs.fan_out
    return ModuleComplexity(
        module=module,
        inputs=inputs,
        c=inputs.readability * inputs.mccabe * io,
        zero_io_warning=io == 0,
    )


def pms_complexity(modules: Iterable[tuple[float, ModuleComplexity]]) -> float:
    return weighted_factor_score((w, mc.c) for w, mc in modules)


def coverage_ratio(evidence: CoverageEvidence) -> float:
    """Percentage of tasks (or alarms) the PMS now handles automatically."""
    if isinstance(evidence, DirectPercent):
        return float(evidence.value)
    if isinstance(evidence, TaskCounts):
        if evidence.total == 0:
            raise ZeroTotalError("coverage total is 0; ratio undefined")
        return evidence.auto / evidence.total * 100.0
    raise TypeError(f"unsupported evidence {evidence!r}")


def _check_percent(name: str, value: float) -> None:
    if not 0.0 <= value <= 100.0:
        raise RangeError(f"{name} = {value!r} outside [0, 100]")


def _band(percent: float, labels: tuple[str, ...], name: str) -> str:
    _check_percent(name, percent)
    if percent == 0:
        return labels[0]
    # (0,25], (25,50], (50,75], (75,100]
    for i, upper in enumerate((25.0, 50.0, 75.0), start=1):
        if percent <= upper:
            return labels[i]
    return labels[4]


def strategy_band(percent: float) -> str:
    return _band(percent, STRATEGY_BANDS, "strategy")


def coordination_band(percent: float) -> str:
    return _band(percent, COORDINATION_BANDS, "coordination")


def autonomy_total(a_i: float, a_p: float, a_s: float, a_c: float) -> float:
    """Automation (a_i + a_p) times intelligence (a_s + a_c), in fractional units."""
    for name, v in (("a_i", a_i), ("a_p", a_p), ("a_s", a_s), ("a_c", a_c)):
        _check_percent(name, v)
    return (a_i / 100.0 + a_p / 100.0) * (a_s / 100.0 + a_c / 100.0)


def autonomy_profile(assessment: AutonomyAssessment) -> AutonomyProfile:
    return profile_from_percents(
        coverage_ratio(assessment.operator_independence),
        coverage_ratio(assessment.self_preservation),
        float(assessment.strategy.percent),
        float(assessment.coordination.percent),
    )


def profile_from_percents(a_i: float, a_p: float, a_s: float, a_c: float) -> AutonomyProfile:
    return AutonomyProfile(
        a_i=a_i, a_p=a_p, a_s=a_s, a_c=a_c,
        strategy_band=strategy_band(a_s),
        coordination_band=coordination_band(a_c),
        total=autonomy_total(a_i, a_p, a_s, a_c),
    )


def modifiability_profile(portability: float, scalability: float) -> tuple[float, float]:
    """Return (length, offset); a positive offset means scalability dominates."""
    for name, v in (("portability", portability), ("scalability", scalability)):
        if not 0.0 <= v <= FACTOR_MAX:
            raise RangeError(f"{name} = {v!r} outside [0, 3]")
    return portability + scalability, (scalability - portability) / 2.0
