"""Evaluate assessment documents and compare the resulting reports."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Sequence

from pmsmetrics import metrics
from pmsmetrics.errors import RuleSyntaxError, SchemaError, SourceReadError, TooFewCandidatesError
from pmsmetrics.metrics import AutonomyProfile, MetricsReport, ModuleComplexity
from pmsmetrics.model import (
    AssessmentDocument,
    BlackBoxSpec,
    ComplexityInputs,
    PmsIdentity,
    SourceRef,
    decode_json,
    dump_json,
)
from pmsmetrics.rules import analyze_module, blackbox_inputs

log = logging.getLogger(__name__)

# (report key, higher is better)
METRICS = (
    ("portability", True),
    ("scalability", True),
    ("complexity", False),
    ("operator_independence", True),
    ("self_preservation", True),
    ("strategy", True),
    ("coordination", True),
    ("autonomy_total", True),
)


def metric_value(report: MetricsReport, key: str) -> float:
    a = report.autonomy
    return {
        "portability": report.portability,
        "scalability": report.scalability,
        "complexity": report.complexity,
        "operator_independence": a.a_i,
        "self_preservation": a.a_p,
        "strategy": a.a_s,
        "coordination": a.a_c,
        "autonomy_total": a.total,
    }[key]


# -- evaluation --------------------------------------------------------------

def _resolve_inputs(doc: AssessmentDocument, index: int, base_dir: Path | None) -> ComplexityInputs:
    module = doc.modules[index]
    src = module.complexity
    if isinstance(src, ComplexityInputs):
        return src
    if isinstance(src, BlackBoxSpec):
        return blackbox_inputs(src)
    if isinstance(src, SourceRef):
        path = Path(src.path)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise SourceReadError(module.name, str(path), getattr(exc, "strerror", None) or str(exc)) from exc
        try:
            return analyze_module(text, doc.analyzer_config)
        except RuleSyntaxError as exc:
            exc.module = module.name
            raise
    raise TypeError(f"unsupported complexity source {src!r}")


def evaluate_pms(doc: AssessmentDocument, base_dir: str | Path | None = None) -> MetricsReport:
    """Compute every metric for ``doc``.

    Source modules are read relative to ``base_dir`` (normally the
    directory holding the document).  Lex and parse errors are re-raised
    with the offending module's name attached.
    """
    base = Path(base_dir) if base_dir is not None else None
    complexities = []
    for i, module in enumerate(doc.modules):
        mc = metrics.module_complexity(_resolve_inputs(doc, i, base), module.name)
        if mc.zero_io_warning:
            log.info("module %r has zero fan-in or fan-out; complexity is 0", module.name)
        complexities.append(mc)

    p = metrics.portability_score(doc.modules)
    s = metrics.scalability_score(doc.modules)
    length, offset = metrics.modifiability_profile(p, s)
    return MetricsReport(
        pms=doc.pms,
        portability=p,
        scalability=s,
        modifiability_length=length,
        modifiability_offset=offset,
        complexity=metrics.pms_complexity(zip((m.weight for m in doc.modules), complexities)),
        module_complexities=tuple(complexities),
        autonomy=metrics.autonomy_profile(doc.autonomy),
    )


# -- deltas ------------------------------------------------------------------

@dataclass(frozen=True)
class ModuleChange:
    name: str
    old_c: Optional[float]
    new_c: Optional[float]


@dataclass(frozen=True)
class DeltaReport:
    before: PmsIdentity
    after: PmsIdentity
    deltas: dict[str, float]
    changed_modules: tuple[ModuleChange, ...]

    @property
    def same_system(self) -> bool:
        return self.before.name == self.after.name


def diff_reports(before: MetricsReport, after: MetricsReport) -> DeltaReport:
    """Signed ``after - before`` differences, with modules matched by name."""
    deltas = {key: metric_value(after, key) - metric_value(before, key) for key, _ in METRICS}
    old = {m.module: m.c for m in before.module_complexities}
    new = {m.module: m.c for m in after.module_complexities}
    changes = [ModuleChange(name, c, new.get(name)) for name, c in old.items() if new.get(name) != c]
    changes += [ModuleChange(name, None, c) for name, c in new.items() if name not in old]
    return DeltaReport(before.pms, after.pms, deltas, tuple(changes))


# -- comparison --------------------------------------------------------------

@dataclass(frozen=True)
class TradeoffNote:
    first: str
    second: str
    gained: str
    lost: str


@dataclass(frozen=True)
class ComparisonReport:
    candidates: tuple[MetricsReport, ...]
    labels: tuple[str, ...]
    per_metric_ranking: dict[str, tuple[str, ...]]
    tradeoff_notes: tuple[TradeoffNote, ...]


def candidate_labels(reports: Sequence[MetricsReport]) -> list[str]:
    """Candidate names, disambiguated by version and then position if needed."""
    names = [r.pms.name for r in reports]
    if len(set(names)) == len(names):
        return names
    names = [f"{r.pms.name} {r.pms.version}" for r in reports]
    if len(set(names)) == len(names):
        return names
    return [f"{n} #{i + 1}" for i, n in enumerate(names)]


def compare_candidates(reports: Sequence[MetricsReport]) -> ComparisonReport:
    """Rank candidates per metric and list pairwise trade-offs.

    Rankings are best first; ties keep input order.  A trade-off note is
    recorded for every ordered pair (earlier, later) and every pair of
    metrics where the later candidate is strictly better on one and
    strictly worse on the other.  "Better" means lower for complexity and
    higher for everything else.
    """
    reports = list(reports)
    if len(reports) < 2:
        raise TooFewCandidatesError(f"need at least 2 candidates, got {len(reports)}")
    labels = candidate_labels(reports)

    rankings = {}
    for key, higher in METRICS:
        order = sorted(range(len(reports)),
                       key=lambda i: -metric_value(reports[i], key) if higher else metric_value(reports[i], key))
        rankings[key] = tuple(labels[i] for i in order)

    notes = []
    for i in range(len(reports)):
        for j in range(i + 1, len(reports)):
            gained, lost = [], []
            for key, higher in METRICS:
                diff = metric_value(reports[j], key) - metric_value(reports[i], key)
                if not higher:
                    diff = -diff
                if diff > 0:
                    gained.append(key)
                elif diff < 0:
                    lost.append(key)
            notes.extend(TradeoffNote(labels[i], labels[j], g, lo) for g in gained for lo in lost)
    return ComparisonReport(tuple(reports), tuple(labels), rankings, tuple(notes))


# -- JSON --------------------------------------------------------------------

def _inputs_to_json(inputs: ComplexityInputs) -> dict:
    return {"readability": float(inputs.readability), "mccabe": inputs.mccabe,
            "fan_in": inputs.fan_in, "fan_out": inputs.fan_out}


def report_to_json(report: MetricsReport) -> dict:
    a = report.autonomy
    return {
        "pms": {"name": report.pms.name, "version": report.pms.version},
        "portability": report.portability,
        "scalability": report.scalability,
        "modifiability_length": report.modifiability_length,
        "modifiability_offset": report.modifiability_offset,
        "complexity": report.complexity,
        "module_complexities": [
            {"module": m.module, "inputs": _inputs_to_json(m.inputs), "c": m.c, "zero_io_warning": m.zero_io_warning}
            for m in report.module_complexities
        ],
        "autonomy": {
            "a_i": a.a_i, "a_p": a.a_p, "a_s": a.a_s, "a_c": a.a_c,
            "strategy_band": a.strategy_band,
            "coordination_band": a.coordination_band,
            "total": a.total,
        },
    }


def _get(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{path}: missing field {key!r}")
    return obj[key]


def _num(obj: Any, key: str, path: str) -> float:
    value = _get(obj, key, path)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{path}.{key}: expected a number")
    return float(value)


def report_from_json(data: Any, path: str = "report") -> MetricsReport:
    pms = _get(data, "pms", path)
    modules = []
    for i, m in enumerate(_get(data, "module_complexities", path)):
        mpath = f"{path}.module_complexities[{i}]"
        inp = _get(m, "inputs", mpath)
        modules.append(ModuleComplexity(
            module=str(_get(m, "module", mpath)),
            inputs=ComplexityInputs(_num(inp, "readability", mpath), int(_num(inp, "mccabe", mpath)),
                                    int(_num(inp, "fan_in", mpath)), int(_num(inp, "fan_out", mpath))),
            c=_num(m, "c", mpath),
            zero_io_warning=bool(_get(m, "zero_io_warning", mpath)),
        ))
    a = _get(data, "autonomy", path)
    apath = f"{path}.autonomy"
    return MetricsReport(
        pms=PmsIdentity(str(_get(pms, "name", f"{path}.pms")), str(_get(pms, "version", f"{path}.pms"))),
        portability=_num(data, "portability", path),
        scalability=_num(data, "scalability", path),
        modifiability_length=_num(data, "modifiability_length", path),
        modifiability_offset=_num(data, "modifiability_offset", path),
        complexity=_num(data, "complexity", path),
        module_complexities=tuple(modules),
        autonomy=AutonomyProfile(
            a_i=_num(a, "a_i", apath), a_p=_num(a, "a_p", apath),
            a_s=_num(a, "a_s", apath), a_c=_num(a, "a_c", apath),
            strategy_band=str(_get(a, "strategy_band", apath)),
            coordination_band=str(_get(a, "coordination_band", apath)),
            total=_num(a, "total", apath),
        ),
    )


def delta_to_json(delta: DeltaReport) -> dict:
    return {
        "before": {"name": delta.before.name, "version": delta.before.version},
        "after": {"name": delta.after.name, "version": delta.after.version},
        "same_system": delta.same_system,
        "deltas": {key: delta.deltas[key] for key, _ in METRICS},
        "changed_modules": [{"module": m.name, "old_c": m.old_c, "new_c": m.new_c} for m in delta.changed_modules],
    }


def comparison_to_json(comp: ComparisonReport) -> dict:
    return {
        "candidates": [report_to_json(r) for r in comp.candidates],
        "labels": list(comp.labels),
        "per_metric_ranking": {key: list(comp.per_metric_ranking[key]) for key, _ in METRICS},
        "tradeoff_notes": [
            {"first": n.first, "second": n.second, "gained": n.gained, "lost": n.lost}
            for n in comp.tradeoff_notes
        ],
    }


def comparison_from_json(data: Any) -> ComparisonReport:
    candidates = _get(data, "candidates", "comparison")
    if not isinstance(candidates, list):
        raise SchemaError("comparison.candidates: expected an array")
    return compare_candidates([report_from_json(c, f"comparison.candidates[{i}]") for i, c in enumerate(candidates)])


def serialize_report(report: MetricsReport) -> bytes:
    return dump_json(report_to_json(report))


def load_report(data: bytes | str) -> MetricsReport:
    return report_from_json(decode_json(data))
