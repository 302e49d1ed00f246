import json
from dataclasses import replace
from decimal import Decimal

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIXTURES, reference_document
from pmsmetrics.errors import DocumentSyntaxError, RangeError, SchemaError
from pmsmetrics.model import (
    AnalyzerConfig,
    AssessmentDocument,
    AutonomyAssessment,
    BandedScore,
    BlackBoxSpec,
    ComplexityInputs,
    DirectPercent,
    ModuleAssessment,
    PmsIdentity,
    SourceRef,
    TaskCounts,
    load_assessment,
    parse_assessment,
    serialize_assessment,
    validate_assessment,
)


def doc_json(**changes):
    data = json.loads((FIXTURES / "hydro.json").read_text())
    for path, value in changes.items():
        target = data
        keys = path.split(".")
        for k in keys[:-1]:
            target = target[int(k)] if k.isdigit() else target[k]
        last = keys[-1]
        if value is KeyError:
            del target[last]
        else:
            target[int(last) if last.isdigit() else last] = value
    return json.dumps(data).encode()


# -- loading -----------------------------------------------------------------

def test_load_fractional_factor():
    doc = load_assessment((FIXTURES / "hydro.json").read_bytes())
    assert doc.modules[0].portability == 2.5
    assert doc.modules[0].complexity == SourceRef("example.rl")
    assert doc.modules[1].complexity == BlackBoxSpec(10, 4)
    assert doc.autonomy.operator_independence == TaskCounts(2, 2)


def test_load_applies_default_weights_and_config():
    doc = load_assessment((FIXTURES / "hydro.json").read_bytes())
    assert all(m.weight == 1.0 for m in doc.modules)
    assert doc.analyzer_config == AnalyzerConfig()


def test_load_rejects_out_of_range_portability():
    with pytest.raises(RangeError, match=r"portability.*upper bound 3"):
        load_assessment(doc_json(**{"modules.0.portability": 3.5}))


def test_load_syntax_error_has_position():
    with pytest.raises(DocumentSyntaxError) as err:
        load_assessment(b'{\n  "pms": {"name": "x",\n}')
    assert err.value.line == 3


@pytest.mark.parametrize("changes, message", [
    ({"pms": KeyError}, "missing field 'pms'"),
    ({"modules.0.colour": "red"}, "unknown field 'colour'"),
    ({"modules.0.portability": "high"}, "expected a number"),
    ({"modules.0.portability": True}, "expected a number"),
    ({"modules.2.complexity.mccabe": 1.5}, "expected an integer"),
    ({"modules.0.complexity": {"mode": "magic"}}, "mode"),
    ({"autonomy.strategy.confidence": 1}, "unknown field"),
    ({"analyzer_config": {"builtins": "T"}}, "expected an array"),
])
def test_load_schema_errors(changes, message):
    with pytest.raises(SchemaError, match=message):
        load_assessment(doc_json(**changes))


def test_direct_percent_evidence():
    doc = load_assessment(doc_json(**{"autonomy.self_preservation": {"percent": 62.5}}))
    assert doc.autonomy.self_preservation == DirectPercent(62.5)


def test_analyzer_config_roundtrip():
    cfg = {"constant_patterns": ["k#", "GAIN"], "builtins": ["t", "TIME"], "extended_decision_counting": True}
    doc = load_assessment(doc_json(analyzer_config=cfg))
    assert doc.analyzer_config.constant_patterns == ("K#", "GAIN")
    assert doc.analyzer_config.builtins == {"T", "TIME"}
    assert doc.analyzer_config.extended_decision_counting
    assert load_assessment(serialize_assessment(doc)) == doc


# -- validation --------------------------------------------------------------

def test_validate_reference_fixture_is_clean(reference_doc):
    assert validate_assessment(reference_doc) == []


def test_validate_duplicate_names(reference_doc):
    mods = list(reference_doc.modules)
    mods[1] = replace(mods[1], name="module-1")
    violations = validate_assessment(replace(reference_doc, modules=tuple(mods)))
    assert len(violations) == 1
    assert "duplicate" in violations[0].message


def test_validate_auto_exceeding_total(reference_doc):
    autonomy = replace(reference_doc.autonomy, operator_independence=TaskCounts(3, 2))
    violations = validate_assessment(replace(reference_doc, autonomy=autonomy))
    assert len(violations) == 1
    assert violations[0].path == "autonomy.operator_independence"
    assert "exceeds total" in violations[0].message


def test_validate_does_not_mutate(reference_doc):
    before = serialize_assessment(reference_doc)
    validate_assessment(reference_doc)
    assert serialize_assessment(reference_doc) == before


@pytest.mark.parametrize("doc, path", [
    (reference_document(pms=PmsIdentity("  ", "1")), "pms.name"),
    (reference_document(modules=()), "modules"),
    (reference_document(modules=(ModuleAssessment("m", 1, 1, ComplexityInputs(1, 1, 1, 1), weight=0),)), "modules[0].weight"),
    (reference_document(modules=(ModuleAssessment("m", -0.5, 1, ComplexityInputs(1, 1, 1, 1)),)), "modules[0].portability"),
    (reference_document(modules=(ModuleAssessment("m", 1, 3.1, ComplexityInputs(1, 1, 1, 1)),)), "modules[0].scalability"),
    (reference_document(modules=(ModuleAssessment("m", 1, 1, ComplexityInputs(0.5, 1, 1, 1)),)), "modules[0].complexity.readability"),
    (reference_document(modules=(ModuleAssessment("m", 1, 1, ComplexityInputs(1, 0, 1, 1)),)), "modules[0].complexity.mccabe"),
    (reference_document(modules=(ModuleAssessment("m", 1, 1, ComplexityInputs(1, 1, -1, 1)),)), "modules[0].complexity.fan_in"),
    (reference_document(modules=(ModuleAssessment("m", 1, 1, BlackBoxSpec(1, -2)),)), "modules[0].complexity.outputs"),
    (reference_document(analyzer_config=AnalyzerConfig(constant_patterns=("K#1",))), "analyzer_config.constant_patterns[0]"),
])
def test_validate_reports_each_invariant(doc, path):
    assert [v.path for v in validate_assessment(doc)] == [path]


def test_validate_banded_and_counts(reference_doc):
    autonomy = AutonomyAssessment(TaskCounts(0, 0), DirectPercent(101), BandedScore(-1), BandedScore(100.5))
    paths = [v.path for v in validate_assessment(replace(reference_doc, autonomy=autonomy))]
    assert paths == [
        "autonomy.operator_independence.total",
        "autonomy.self_preservation.percent",
        "autonomy.strategy.percent",
        "autonomy.coordination.percent",
    ]


def test_parse_without_validation_allows_cli_listing():
    doc = parse_assessment(doc_json(**{"modules.0.portability": 3.5}))
    assert [v.path for v in validate_assessment(doc)] == ["modules[0].portability"]


# -- serialization -----------------------------------------------------------

def test_roundtrip_reference(reference_doc):
    assert load_assessment(serialize_assessment(reference_doc)) == reference_doc


def test_serialization_is_deterministic(reference_doc):
    assert serialize_assessment(reference_doc) == serialize_assessment(reference_doc)
    reloaded = load_assessment(serialize_assessment(reference_doc))
    assert serialize_assessment(reloaded) == serialize_assessment(reference_doc)


def test_fractional_factor_formatting(reference_doc):
    mods = (replace(reference_doc.modules[0], scalability=1.625),) + reference_doc.modules[1:]
    text = serialize_assessment(replace(reference_doc, modules=mods)).decode()
    assert '"scalability": 1.625' in text
    # Print-and-reparse oracle: the emitted literal is the exact decimal value.
    literal = text.split('"scalability": ')[1].split(",")[0]
    assert Decimal(literal) == Decimal(1.625)


def test_defaults_are_idempotent():
    cfg = AnalyzerConfig()
    assert AnalyzerConfig(cfg.constant_patterns, cfg.builtins) == cfg
    once = load_assessment(doc_json())
    twice = load_assessment(serialize_assessment(once))
    assert once == twice


# -- property: round-trip ----------------------------------------------------

factors = st.floats(0, 3, allow_nan=False)
percents = st.floats(0, 100, allow_nan=False)
text = st.text(st.characters(blacklist_categories=("Cs",)), min_size=1, max_size=12).filter(str.strip)


@st.composite
def coverage(draw):
    if draw(st.booleans()):
        total = draw(st.integers(1, 50))
        return TaskCounts(draw(st.integers(0, total)), total)
    return DirectPercent(draw(percents))


complexity_sources = st.one_of(
    st.builds(ComplexityInputs, st.floats(1, 3), st.integers(1, 40), st.integers(0, 30), st.integers(0, 30)),
    st.builds(SourceRef, text),
    st.builds(BlackBoxSpec, st.integers(0, 100), st.integers(0, 100)),
)


@st.composite
def documents(draw):
    names = draw(st.lists(text, min_size=1, max_size=6, unique=True))
    modules = tuple(
        ModuleAssessment(n, draw(factors), draw(factors), draw(complexity_sources),
                         weight=draw(st.floats(0.01, 100)))
        for n in names
    )
    config = AnalyzerConfig(
        constant_patterns=tuple(draw(st.lists(st.from_regex(r"[A-Z][A-Z0-9]{0,3}#?", fullmatch=True), max_size=3))),
        builtins=frozenset(draw(st.lists(st.from_regex(r"[A-Z][A-Z0-9]{0,3}", fullmatch=True), max_size=3))),
        extended_decision_counting=draw(st.booleans()),
        symbolic_set_values=draw(st.booleans()),
    )
    return AssessmentDocument(
        pms=PmsIdentity(draw(text), draw(text)),
        modules=modules,
        autonomy=AutonomyAssessment(draw(coverage()), draw(coverage()),
                                    BandedScore(draw(percents), draw(st.text(max_size=20))),
                                    BandedScore(draw(percents))),
        analyzer_config=config,
    )


@given(documents())
@settings(max_examples=200, deadline=None)
def test_document_roundtrip(doc):
    assert validate_assessment(doc) == []
    data = serialize_assessment(doc)
    again = load_assessment(data)
    assert again == doc
    assert serialize_assessment(again) == data
