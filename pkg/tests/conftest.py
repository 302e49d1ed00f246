from pathlib import Path

import pytest

from pmsmetrics import metrics
from pmsmetrics.model import (
    AssessmentDocument,
    AutonomyAssessment,
    BandedScore,
    ComplexityInputs,
    ModuleAssessment,
    PmsIdentity,
    TaskCounts,
)

FIXTURES = Path(__file__).parent / "fixtures"

# The worked rule-language example, verbatim.
EXAMPLE_BLOCK = (FIXTURES / "example.rl").read_text()

REFERENCE_PORTABILITY = (2.5, 1.5, 3.0, 2.0)
REFERENCE_SCALABILITY = (3.0, 1.0, 0.0, 2.5)

# Lines printed after the run by the acceptance module.
ACCEPTANCE_LINES: list[str] = []


def reference_document(**overrides) -> AssessmentDocument:
    modules = tuple(
        ModuleAssessment(f"module-{i + 1}", p, s, ComplexityInputs(1.0, 1, 1, 1))
        for i, (p, s) in enumerate(zip(REFERENCE_PORTABILITY, REFERENCE_SCALABILITY))
    )
    fields = dict(
        pms=PmsIdentity("hydro-agents", "1"),
        modules=modules,
        autonomy=AutonomyAssessment(
            operator_independence=TaskCounts(2, 2),
            self_preservation=TaskCounts(3, 3),
            strategy=BandedScore(75.0, "a few strategies"),
            coordination=BandedScore(75.0, "multiple users"),
        ),
    )
    fields.update(overrides)
    return AssessmentDocument(**fields)


def make_report(name, a_i=100.0, a_p=100.0, a_s=75.0, a_c=75.0, p=2.25, s=1.625, modules=(("m1", 30.0),),
                version="1"):
    complexities = tuple(metrics.ModuleComplexity(n, ComplexityInputs(1, 1, 1, 1), c, False) for n, c in modules)
    length, offset = metrics.modifiability_profile(p, s)
    return metrics.MetricsReport(
        pms=PmsIdentity(name, version),
        portability=p, scalability=s,
        modifiability_length=length, modifiability_offset=offset,
        complexity=metrics.pms_complexity((1.0, m) for m in complexities),
        module_complexities=complexities,
        autonomy=metrics.profile_from_percents(a_i, a_p, a_s, a_c),
    )


@pytest.fixture
def reference_doc():
    return reference_document()


@pytest.fixture
def hydro_path():
    return FIXTURES / "hydro.json"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
