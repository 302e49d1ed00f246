"""Syntax tree for rule-language modules.

Identifier names are stored upper-cased.  Every :class:`Name` records
whether it is read or written.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

READ = "read"
WRITE = "write"


@dataclass(frozen=True)
class Number:
    text: str


@dataclass(frozen=True)
class Boolean:
    value: bool


@dataclass(frozen=True)
class Name:
    name: str
    role: str = READ
    line: int = 0
    column: int = 0


@dataclass(frozen=True)
class Call:
    function: Name
    args: tuple["Expr", ...]


@dataclass(frozen=True)
class Unary:
    op: str  # "-" or "NOT"
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


Expr = Union[Number, Boolean, Name, Call, Unary, Binary]


@dataclass(frozen=True)
class Action:
    target: Name
    value: Expr
    has_set: bool


@dataclass(frozen=True)
class IfStatement:
    condition: Expr
    then_actions: tuple[Action, ...]
    else_actions: Optional[tuple[Action, ...]] = None


@dataclass(frozen=True)
class Case:
    guard: Expr
    actions: tuple[Action, ...]


@dataclass(frozen=True)
class SwitchStatement:
    scrutinee: Expr
    cases: tuple[Case, ...]
    default: Optional[tuple[Action, ...]] = None


@dataclass(frozen=True)
class EquationStatement:
    target: Name
    expression: Expr
    parameter: Optional[str] = None


@dataclass(frozen=True)
class LoopStatement:
    """WHILE loops carry ``condition``; FOR loops carry ``variable``, ``start`` and ``stop``."""

    kind: str  # "while" or "for"
    body: tuple["Statement", ...]
    condition: Optional[Expr] = None
    variable: Optional[Name] = None
    start: Optional[Expr] = None
    stop: Optional[Expr] = None


@dataclass(frozen=True)
class ActionStatement:
    action: Action


Statement = Union[IfStatement, SwitchStatement, EquationStatement, LoopStatement, ActionStatement]


@dataclass(frozen=True)
class RuleModuleAst:
    statements: tuple[Statement, ...]


def walk_expr(expr: Expr):
    """Yield ``expr`` and all of its subexpressions, depth first."""
    yield expr
    if isinstance(expr, Call):
        yield expr.function
        for arg in expr.args:
            yield from walk_expr(arg)
    elif isinstance(expr, Unary):
        yield from walk_expr(expr.operand)
    elif isinstance(expr, Binary):
        yield from walk_expr(expr.left)
        yield from walk_expr(expr.right)
