"""Complexity extraction from parsed rule modules.

Decision points are IF statements, CASE guards (DEFAULT arms do not count)
and loops.  Readability is the mean level of the top-level statements:
rules and actions score 1, equations 2, loops 3.

Identifiers are sorted into roles.  Constants, builtins, externally defined
functions (``SIN``) and symbolic state values (``OFF`` in ``SET MOTOR=OFF``)
are excluded.  Of the rest, read-only names are inputs, write-only names
are outputs and names both read and written are internal.  Names defined by
a parameterised equation such as ``F(A) = ...`` are always internal; the
formal parameter stands for whatever argument the call site passes.
"""

from __future__ import annotations

from dataclasses import dataclass

from pmsmetrics.model import AnalyzerConfig, BlackBoxSpec, ComplexityInputs
from pmsmetrics.rules import ast
from pmsmetrics.rules.lexer import tokenize
from pmsmetrics.rules.parser import parse

RULE_LEVEL = 1
EQUATION_LEVEL = 2
PROCEDURE_LEVEL = 3


@dataclass(frozen=True)
class IoClassification:
    inputs: frozenset[str]
    outputs: frozenset[str]
    internals: frozenset[str]
    excluded: frozenset[str]

    @property
    def all(self) -> frozenset[str]:
        return self.inputs | self.outputs | self.internals | self.excluded


@dataclass(frozen=True)
class ModuleAnalysis:
    ast: ast.RuleModuleAst
    io: IoClassification
    inputs: ComplexityInputs


# -- McCabe ------------------------------------------------------------------

def _boolean_operators(expr: ast.Expr | None) -> int:
    if expr is None:
        return 0
    return sum(1 for e in ast.walk_expr(expr) if isinstance(e, ast.Binary) and e.op in ("AND", "OR"))


def _decisions(statements, extended: bool) -> int:
    count = 0
    for stmt in statements:
        if isinstance(stmt, ast.IfStatement):
            count += 1 + (_boolean_operators(stmt.condition) if extended else 0)
        elif isinstance(stmt, ast.SwitchStatement):
            count += len(stmt.cases)
            if extended:
                count += sum(_boolean_operators(case.guard) for case in stmt.cases)
        elif isinstance(stmt, ast.LoopStatement):
            count += 1 + (_boolean_operators(stmt.condition) if extended else 0)
            count += _decisions(stmt.body, extended)
    return count


def cyclomatic(tree: ast.RuleModuleAst, config: AnalyzerConfig | None = None) -> int:
    extended = config.extended_decision_counting if config else False
    return 1 + _decisions(tree.statements, extended)


# -- readability -------------------------------------------------------------

def statement_level(stmt: ast.Statement) -> int:
    if isinstance(stmt, ast.LoopStatement):
        return PROCEDURE_LEVEL
    if isinstance(stmt, ast.EquationStatement):
        return EQUATION_LEVEL
    return RULE_LEVEL


def readability(tree: ast.RuleModuleAst) -> float:
    if not tree.statements:
        return float(RULE_LEVEL)
    levels = [statement_level(s) for s in tree.statements]
    return sum(levels) / len(levels)


# -- fan-in / fan-out --------------------------------------------------------

class _RoleCollector:
    def __init__(self, functions: dict[str, str]):
        self.functions = functions  # defined name -> formal parameter
        self.reads: set[str] = set()
        self.writes: set[str] = set()
        self.callees: set[str] = set()
        self.set_values: set[str] = set()

    def expr(self, expr: ast.Expr, bound: frozenset[str] = frozenset()) -> None:
        if isinstance(expr, ast.Name):
            if expr.name not in bound:
                self.reads.add(expr.name)
        elif isinstance(expr, ast.Call):
            name = expr.function.name
            if name in self.functions:
                self.reads.add(name)
            else:
                self.callees.add(name)
            for arg in expr.args:
                self.expr(arg, bound)
        elif isinstance(expr, ast.Unary):
            self.expr(expr.operand, bound)
        elif isinstance(expr, ast.Binary):
            self.expr(expr.left, bound)
            self.expr(expr.right, bound)

    def action(self, action: ast.Action) -> None:
        self.writes.add(action.target.name)
        if action.has_set and isinstance(action.value, ast.Name):
            self.set_values.add(action.value.name)
        else:
            self.expr(action.value)

    def statements(self, statements) -> None:
        for stmt in statements:
            if isinstance(stmt, ast.IfStatement):
                self.expr(stmt.condition)
                for a in stmt.then_actions + (stmt.else_actions or ()):
                    self.action(a)
            elif isinstance(stmt, ast.SwitchStatement):
                self.expr(stmt.scrutinee)
                for case in stmt.cases:
                    self.expr(case.guard)
                    for a in case.actions:
                        self.action(a)
                for a in stmt.default or ():
                    self.action(a)
            elif isinstance(stmt, ast.EquationStatement):
                self.writes.add(stmt.target.name)
                # The body's free reads are the reads of every call site.
                bound = frozenset({stmt.parameter}) if stmt.parameter else frozenset()
                self.expr(stmt.expression, bound)
            elif isinstance(stmt, ast.LoopStatement):
                if stmt.kind == "for":
                    self.writes.add(stmt.variable.name)
                    self.reads.add(stmt.variable.name)
                    self.expr(stmt.start)
                    self.expr(stmt.stop)
                else:
                    self.expr(stmt.condition)
                self.statements(stmt.body)
            elif isinstance(stmt, ast.ActionStatement):
                self.action(stmt.action)


def _function_definitions(statements, out: dict[str, str]) -> dict[str, str]:
    for stmt in statements:
        if isinstance(stmt, ast.EquationStatement) and stmt.parameter:
            out[stmt.target.name] = stmt.parameter
        elif isinstance(stmt, ast.LoopStatement):
            _function_definitions(stmt.body, out)
    return out


def classify_io(tree: ast.RuleModuleAst, config: AnalyzerConfig | None = None) -> IoClassification:
    config = config or AnalyzerConfig()
    functions = _function_definitions(tree.statements, {})
    roles = _RoleCollector(functions)
    roles.statements(tree.statements)

    if config.symbolic_set_values:
        symbolic = roles.set_values - roles.reads - roles.writes - roles.callees
    else:
        symbolic = set()
    # A name used anywhere else as a variable is a plain read in SET too.
    roles.reads |= roles.set_values - symbolic
    variables = roles.reads | roles.writes
    external = roles.callees - variables

    excluded = {n for n in variables if config.is_excluded(n)} | symbolic | external
    internals = {n for n in functions if n not in excluded}
    remaining = variables - excluded - internals
    return IoClassification(
        inputs=frozenset(n for n in remaining if n not in roles.writes),
        outputs=frozenset(n for n in remaining if n not in roles.reads),
        internals=frozenset(internals | {n for n in remaining if n in roles.reads and n in roles.writes}),
        excluded=frozenset(excluded),
    )


# -- composition -------------------------------------------------------------

def analyze(source: str, config: AnalyzerConfig | None = None) -> ModuleAnalysis:
    """Parse ``source`` and return its tree, I/O roles and complexity inputs."""
    config = config or AnalyzerConfig()
    tree = parse(tokenize(source))
    io = classify_io(tree, config)
    inputs = ComplexityInputs(
        readability=readability(tree),
        mccabe=cyclomatic(tree, config),
        fan_in=len(io.inputs),
        fan_out=len(io.outputs),
    )
    return ModuleAnalysis(tree, io, inputs)


def analyze_module(source: str, config: AnalyzerConfig | None = None) -> ComplexityInputs:
    return analyze(source, config).inputs


def blackbox_inputs(spec: BlackBoxSpec) -> ComplexityInputs:
    """Black-box elements are unreadable (level 3) and have no decision points."""
    return ComplexityInputs(readability=float(PROCEDURE_LEVEL), mccabe=1, fan_in=spec.inputs, fan_out=spec.outputs)
