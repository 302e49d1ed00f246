"""Lexer, parser and metric extraction for the control-rule language."""

from pmsmetrics.rules.analysis import (
    IoClassification,
    ModuleAnalysis,
    analyze,
    analyze_module,
    blackbox_inputs,
    classify_io,
    cyclomatic,
    readability,
)
from pmsmetrics.rules.ast import RuleModuleAst
from pmsmetrics.rules.lexer import Token, tokenize
from pmsmetrics.rules.parser import parse, parse_source

__all__ = [
    "IoClassification",
    "ModuleAnalysis",
    "RuleModuleAst",
    "Token",
    "analyze",
    "analyze_module",
    "blackbox_inputs",
    "classify_io",
    "cyclomatic",
    "parse",
    "parse_source",
    "readability",
    "tokenize",
]
