"""Assessment document model: types, loading, validation and serialization.

An assessment document describes one version of a PMS: its modules (each
with a weight, portability and scalability factors, and a source for its
complexity inputs) plus a whole-system autonomy assessment.  Documents are
UTF-8 JSON; see ``README.md`` for the layout.

Constructors do not enforce invariants.  :func:`validate_assessment`
reports every violation as data, and :func:`load_assessment` raises on the
first problem it finds.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Any, Union

from pmsmetrics.errors import DocumentSyntaxError, RangeError, SchemaError

FACTOR_MAX = 3.0
READABILITY_MIN = 1.0
READABILITY_MAX = 3.0

DEFAULT_CONSTANT_PATTERNS = ("K#",)
DEFAULT_BUILTINS = frozenset({"T"})

_PATTERN_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*#?$")


@dataclass(frozen=True)
class PmsIdentity:
    name: str
    version: str


@dataclass(frozen=True)
class ComplexityInputs:
    """Readability, McCabe number, fan-in and fan-out of one module."""

    readability: float
    mccabe: int
    fan_in: int
    fan_out: int


@dataclass(frozen=True)
class SourceRef:
    """Complexity to be extracted from a rule-language file.

    Relative paths resolve against the directory holding the document.
    """

    path: str


@dataclass(frozen=True)
class BlackBoxSpec:
    """An opaque element such as a neural network, known only by its I/O."""

    inputs: int
    outputs: int


# Manual entry is represented directly by ComplexityInputs.
ComplexitySource = Union[ComplexityInputs, SourceRef, BlackBoxSpec]


@dataclass(frozen=True)
class ModuleAssessment:
    name: str
    portability: float
    scalability: float
    complexity: ComplexitySource
    weight: float = 1.0


@dataclass(frozen=True)
class TaskCounts:
    auto: int
    total: int


@dataclass(frozen=True)
class DirectPercent:
    value: float


CoverageEvidence = Union[TaskCounts, DirectPercent]


@dataclass(frozen=True)
class BandedScore:
    percent: float
    justification: str = ""


@dataclass(frozen=True)
class AutonomyAssessment:
    operator_independence: CoverageEvidence
    self_preservation: CoverageEvidence
    strategy: BandedScore
    coordination: BandedScore


@dataclass(frozen=True)
class AnalyzerConfig:
    """Identifier conventions used when extracting fan-in and fan-out.

    ``constant_patterns`` are literal prefixes optionally ending in ``#``,
    which matches a run of one or more digits (``"K#"`` matches ``K1``,
    ``K42``).  Names in ``builtins`` are never counted as I/O.  When
    ``symbolic_set_values`` is on, an identifier whose only appearances are
    as the bare value of a ``SET`` action (``SET MOTOR=OFF``) is treated as
    a symbolic state rather than a variable.
    """

    constant_patterns: tuple[str, ...] = DEFAULT_CONSTANT_PATTERNS
    builtins: frozenset[str] = DEFAULT_BUILTINS
    extended_decision_counting: bool = False
    symbolic_set_values: bool = True

    def __post_init__(self) -> None:
        # Identifiers are compared upper-cased; keep the config canonical.
        object.__setattr__(self, "constant_patterns", tuple(p.upper() for p in self.constant_patterns))
        object.__setattr__(self, "builtins", frozenset(b.upper() for b in self.builtins))

    def is_constant(self, name: str) -> bool:
        return any(_pattern_matches(p, name.upper()) for p in self.constant_patterns)

    def is_excluded(self, name: str) -> bool:
        name = name.upper()
        return name in self.builtins or self.is_constant(name)


def _pattern_matches(pattern: str, name: str) -> bool:
    if pattern.endswith("#"):
        prefix = pattern[:-1]
        rest = name[len(prefix):]
        return name.startswith(prefix) and rest.isdigit() and rest.isascii()
    return name == pattern


def valid_pattern(pattern: str) -> bool:
    return bool(_PATTERN_RE.match(pattern))


@dataclass(frozen=True)
class AssessmentDocument:
    pms: PmsIdentity
    modules: tuple[ModuleAssessment, ...]
    autonomy: AutonomyAssessment
    analyzer_config: AnalyzerConfig = field(default_factory=AnalyzerConfig)


# -- validation --------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """One broken invariant; ``path`` locates the field in document terms."""

    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


ValidationReport = list[Violation]


def _check_range(out: list, path: str, value: Any, lo: float | None, hi: float | None) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or math.isnan(value):
        out.append(Violation(path, f"{value!r} is not a number"))
        return
    if lo is not None and value < lo:
        out.append(Violation(path, f"{value!r} is below lower bound {lo:g}"))
    elif hi is not None and value > hi:
        out.append(Violation(path, f"{value!r} exceeds upper bound {hi:g}"))


def _check_int(out: list, path: str, value: Any, lo: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        out.append(Violation(path, f"{value!r} is not an integer"))
    elif value < lo:
        out.append(Violation(path, f"{value!r} is below lower bound {lo}"))


def _validate_coverage(out: list, path: str, ev: CoverageEvidence) -> None:
    if isinstance(ev, TaskCounts):
        _check_int(out, f"{path}.auto", ev.auto, 0)
        _check_int(out, f"{path}.total", ev.total, 1)
        if isinstance(ev.auto, int) and isinstance(ev.total, int) and ev.auto > ev.total:
            out.append(Violation(path, f"automated count {ev.auto} exceeds total {ev.total}; ratio would exceed 100%"))
    elif isinstance(ev, DirectPercent):
        _check_range(out, f"{path}.percent", ev.value, 0.0, 100.0)
    else:
        out.append(Violation(path, f"unsupported evidence {type(ev).__name__}"))


def _validate_complexity(out: list, path: str, src: ComplexitySource) -> None:
    if isinstance(src, ComplexityInputs):
        _check_range(out, f"{path}.readability", src.readability, READABILITY_MIN, READABILITY_MAX)
        _check_int(out, f"{path}.mccabe", src.mccabe, 1)
        _check_int(out, f"{path}.fan_in", src.fan_in, 0)
        _check_int(out, f"{path}.fan_out", src.fan_out, 0)
    elif isinstance(src, SourceRef):
        if not src.path.strip():
            out.append(Violation(f"{path}.path", "source path is empty"))
    elif isinstance(src, BlackBoxSpec):
        _check_int(out, f"{path}.inputs", src.inputs, 0)
        _check_int(out, f"{path}.outputs", src.outputs, 0)
    else:
        out.append(Violation(path, f"unsupported complexity source {type(src).__name__}"))


def validate_assessment(doc: AssessmentDocument) -> ValidationReport:
    """Return every invariant violation in ``doc``; an empty list means valid."""
    out: ValidationReport = []
    if not doc.pms.name.strip():
        out.append(Violation("pms.name", "must be nonempty"))
    if not doc.pms.version.strip():
        out.append(Violation("pms.version", "must be nonempty"))

    if not doc.modules:
        out.append(Violation("modules", "at least one module is required"))
    seen: dict[str, int] = {}
    for i, mod in enumerate(doc.modules):
        path = f"modules[{i}]"
        if not mod.name.strip():
            out.append(Violation(f"{path}.name", "must be nonempty"))
        elif mod.name in seen:
            out.append(Violation(f"{path}.name", f"duplicate module name {mod.name!r} (first at modules[{seen[mod.name]}])"))
        else:
            seen[mod.name] = i
        _check_range(out, f"{path}.weight", mod.weight, None, None)
        if isinstance(mod.weight, (int, float)) and not isinstance(mod.weight, bool) and not mod.weight > 0:
            out.append(Violation(f"{path}.weight", f"{mod.weight!r} must be greater than 0"))
        _check_range(out, f"{path}.portability", mod.portability, 0.0, FACTOR_MAX)
        _check_range(out, f"{path}.scalability", mod.scalability, 0.0, FACTOR_MAX)
        _validate_complexity(out, f"{path}.complexity", mod.complexity)

    a = doc.autonomy
    _validate_coverage(out, "autonomy.operator_independence", a.operator_independence)
    _validate_coverage(out, "autonomy.self_preservation", a.self_preservation)
    _check_range(out, "autonomy.strategy.percent", a.strategy.percent, 0.0, 100.0)
    _check_range(out, "autonomy.coordination.percent", a.coordination.percent, 0.0, 100.0)

    for i, pattern in enumerate(doc.analyzer_config.constant_patterns):
        if not valid_pattern(pattern):
            out.append(Violation(f"analyzer_config.constant_patterns[{i}]", f"invalid pattern {pattern!r}"))
    return out


# -- JSON decoding -----------------------------------------------------------

def _object(value: Any, path: str, required: tuple[str, ...], optional: tuple[str, ...] = ()) -> dict:
    if not isinstance(value, dict):
        raise SchemaError(f"{path}: expected an object, got {type(value).__name__}")
    missing = [k for k in required if k not in value]
    if missing:
        raise SchemaError(f"{path}: missing field {missing[0]!r}")
    unknown = sorted(set(value) - set(required) - set(optional))
    if unknown:
        raise SchemaError(f"{path}: unknown field {unknown[0]!r}")
    return value


def _real(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{path}: expected a number, got {type(value).__name__}")
    return float(value)


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{path}: expected an integer, got {type(value).__name__}")
    return value


def _str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{path}: expected a string, got {type(value).__name__}")
    return value


def _bool(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise SchemaError(f"{path}: expected true or false, got {type(value).__name__}")
    return value


def _complexity_from_json(obj: Any, path: str) -> ComplexitySource:
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object, got {type(obj).__name__}")
    mode = obj.get("mode")
    if mode == "manual":
        _object(obj, path, ("mode", "readability", "mccabe", "fan_in", "fan_out"))
        return ComplexityInputs(
            readability=_real(obj["readability"], f"{path}.readability"),
            mccabe=_int(obj["mccabe"], f"{path}.mccabe"),
            fan_in=_int(obj["fan_in"], f"{path}.fan_in"),
            fan_out=_int(obj["fan_out"], f"{path}.fan_out"),
        )
    if mode == "source":
        _object(obj, path, ("mode", "path"))
        return SourceRef(_str(obj["path"], f"{path}.path"))
    if mode == "blackbox":
        _object(obj, path, ("mode", "inputs", "outputs"))
        return BlackBoxSpec(_int(obj["inputs"], f"{path}.inputs"), _int(obj["outputs"], f"{path}.outputs"))
    if "mode" not in obj:
        raise SchemaError(f"{path}: missing field 'mode'")
    raise SchemaError(f"{path}.mode: expected 'manual', 'source' or 'blackbox', got {mode!r}")


def _coverage_from_json(obj: Any, path: str) -> CoverageEvidence:
    if isinstance(obj, dict) and "percent" in obj:
        _object(obj, path, ("percent",))
        return DirectPercent(_real(obj["percent"], f"{path}.percent"))
    _object(obj, path, ("auto", "total"))
    return TaskCounts(_int(obj["auto"], f"{path}.auto"), _int(obj["total"], f"{path}.total"))


def _banded_from_json(obj: Any, path: str) -> BandedScore:
    _object(obj, path, ("percent",), ("justification",))
    return BandedScore(
        _real(obj["percent"], f"{path}.percent"),
        _str(obj.get("justification", ""), f"{path}.justification"),
    )


def config_from_json(obj: Any, path: str = "analyzer_config") -> AnalyzerConfig:
    _object(obj, path, (), ("constant_patterns", "builtins", "extended_decision_counting", "symbolic_set_values"))
    kwargs: dict[str, Any] = {}
    if "constant_patterns" in obj:
        pats = obj["constant_patterns"]
        if not isinstance(pats, list):
            raise SchemaError(f"{path}.constant_patterns: expected an array")
        kwargs["constant_patterns"] = tuple(_str(p, f"{path}.constant_patterns[{i}]") for i, p in enumerate(pats))
    if "builtins" in obj:
        names = obj["builtins"]
        if not isinstance(names, list):
            raise SchemaError(f"{path}.builtins: expected an array")
        kwargs["builtins"] = frozenset(_str(n, f"{path}.builtins[{i}]") for i, n in enumerate(names))
    for flag in ("extended_decision_counting", "symbolic_set_values"):
        if flag in obj:
            kwargs[flag] = _bool(obj[flag], f"{path}.{flag}")
    return AnalyzerConfig(**kwargs)


def document_from_json(data: Any) -> AssessmentDocument:
    """Build a document from decoded JSON, checking structure but not ranges."""
    _object(data, "document", ("pms", "modules", "autonomy"), ("analyzer_config",))
    pms = _object(data["pms"], "pms", ("name", "version"))
    if not isinstance(data["modules"], list):
        raise SchemaError("modules: expected an array")
    modules = []
    for i, m in enumerate(data["modules"]):
        path = f"modules[{i}]"
        _object(m, path, ("name", "portability", "scalability", "complexity"), ("weight",))
        modules.append(ModuleAssessment(
            name=_str(m["name"], f"{path}.name"),
            weight=_real(m.get("weight", 1.0), f"{path}.weight"),
            portability=_real(m["portability"], f"{path}.portability"),
            scalability=_real(m["scalability"], f"{path}.scalability"),
            complexity=_complexity_from_json(m["complexity"], f"{path}.complexity"),
        ))
    aut = _object(data["autonomy"], "autonomy", ("operator_independence", "self_preservation", "strategy", "coordination"))
    autonomy = AutonomyAssessment(
        operator_independence=_coverage_from_json(aut["operator_independence"], "autonomy.operator_independence"),
        self_preservation=_coverage_from_json(aut["self_preservation"], "autonomy.self_preservation"),
        strategy=_banded_from_json(aut["strategy"], "autonomy.strategy"),
        coordination=_banded_from_json(aut["coordination"], "autonomy.coordination"),
    )
    config = config_from_json(data["analyzer_config"]) if "analyzer_config" in data else AnalyzerConfig()
    return AssessmentDocument(
        pms=PmsIdentity(_str(pms["name"], "pms.name"), _str(pms["version"], "pms.version")),
        modules=tuple(modules),
        autonomy=autonomy,
        analyzer_config=config,
    )


def decode_json(data: bytes | str) -> Any:
    """Decode UTF-8 JSON text, mapping failures to :class:`DocumentSyntaxError`."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentSyntaxError(f"invalid UTF-8: {exc.reason}", 1, exc.start + 1) from exc
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from exc


def parse_assessment(data: bytes | str) -> AssessmentDocument:
    """Decode a document without range checks; used by the validator CLI."""
    return document_from_json(decode_json(data))


def load_assessment(data: bytes | str) -> AssessmentDocument:
    """Decode and fully validate an assessment document.

    Raises DocumentSyntaxError, SchemaError, or RangeError (for the first
    invariant violation found).
    """
    doc = parse_assessment(data)
    violations = validate_assessment(doc)
    if violations:
        raise RangeError(str(violations[0]))
    return doc


# -- JSON encoding -----------------------------------------------------------

def _complexity_to_json(src: ComplexitySource) -> dict:
    if isinstance(src, ComplexityInputs):
        return {"mode": "manual", "readability": float(src.readability), "mccabe": src.mccabe,
                "fan_in": src.fan_in, "fan_out": src.fan_out}
    if isinstance(src, SourceRef):
        return {"mode": "source", "path": src.path}
    return {"mode": "blackbox", "inputs": src.inputs, "outputs": src.outputs}


def _coverage_to_json(ev: CoverageEvidence) -> dict:
    if isinstance(ev, TaskCounts):
        return {"auto": ev.auto, "total": ev.total}
    return {"percent": float(ev.value)}


def config_to_json(cfg: AnalyzerConfig) -> dict:
    return {
        "constant_patterns": list(cfg.constant_patterns),
        "builtins": sorted(cfg.builtins),
        "extended_decision_counting": cfg.extended_decision_counting,
        "symbolic_set_values": cfg.symbolic_set_values,
    }


def document_to_json(doc: AssessmentDocument) -> dict:
    a = doc.autonomy
    return {
        "pms": {"name": doc.pms.name, "version": doc.pms.version},
        "modules": [
            {
                "name": m.name,
                "weight": float(m.weight),
                "portability": float(m.portability),
                "scalability": float(m.scalability),
                "complexity": _complexity_to_json(m.complexity),
            }
            for m in doc.modules
        ],
        "autonomy": {
            "operator_independence": _coverage_to_json(a.operator_independence),
            "self_preservation": _coverage_to_json(a.self_preservation),
            "strategy": {"percent": float(a.strategy.percent), "justification": a.strategy.justification},
            "coordination": {"percent": float(a.coordination.percent), "justification": a.coordination.justification},
        },
        "analyzer_config": config_to_json(doc.analyzer_config),
    }


def dump_json(obj: Any) -> bytes:
    """Deterministic JSON encoding used for every artifact this package writes."""
    return (json.dumps(obj, indent=2, ensure_ascii=False, allow_nan=False) + "\n").encode("utf-8")


def serialize_assessment(doc: AssessmentDocument) -> bytes:
    return dump_json(document_to_json(doc))
