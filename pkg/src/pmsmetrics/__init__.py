"""Software metrics for evaluating and comparing power management systems.

Portability, scalability, complexity and autonomy scores are computed from
an assessment document; complexity inputs can be extracted automatically
from rule-language modules.  Results render as SVG radar graphs.
"""

from pmsmetrics.errors import MetricsError
from pmsmetrics.model import AssessmentDocument, load_assessment, serialize_assessment, validate_assessment
from pmsmetrics.report import compare_candidates, diff_reports, evaluate_pms
from pmsmetrics.rules import analyze_module

__version__ = "0.1.0"

__all__ = [
    "AssessmentDocument",
    "MetricsError",
    "analyze_module",
    "compare_candidates",
    "diff_reports",
    "evaluate_pms",
    "load_assessment",
    "serialize_assessment",
    "validate_assessment",
]
