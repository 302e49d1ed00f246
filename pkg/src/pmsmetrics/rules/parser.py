"""Recursive-descent parser for the rule language.

Grammar::

    program   := statement*
    statement := if | switch | loop | equation | SET action      (";" optional)
    if        := IF expr THEN actions [ELSE actions]
    switch    := SWITCH "(" expr ")" "{" (CASE expr ":" actions [";"])+
                 [DEFAULT ":" actions [";"]] "}"
    equation  := IDENT ["(" IDENT ")"] "=" expr
    loop      := WHILE expr DO statement* END
               | FOR IDENT "=" expr TO expr DO statement* END
    actions   := action ("," action)*
    action    := [SET] IDENT "=" expr

Expressions follow the usual precedence, loosest first: OR, AND, NOT,
comparison (< <= > >= = <>), additive, multiplicative, unary minus,
then calls, parentheses, literals and names.

A top-level ``X = expr`` without ``SET`` is an equation; with ``SET`` it is
an action.
"""

from __future__ import annotations

from pmsmetrics.errors import ParseError
from pmsmetrics.rules import ast
from pmsmetrics.rules.lexer import BOOLEAN, IDENTIFIER, NUMBER, Token, tokenize

_COMPARISONS = ("<", "<=", ">", ">=", "=", "<>")


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    # -- token helpers -------------------------------------------------------

    def peek(self, offset: int = 0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, expected: str) -> ParseError:
        tok = self.peek()
        if tok is None:
            if self.tokens:
                last = self.tokens[-1]
                line, col = last.line, last.column + len(last.text)
            else:
                line, col = 1, 1
            return ParseError(f"expected {expected}, found end of input", line, col)
        return ParseError(f"expected {expected}, found {tok.text!r}", tok.line, tok.column)

    def at_keyword(self, *words: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.is_keyword(*words)

    def at_symbol(self, *symbols: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.is_symbol(*symbols)

    def expect_keyword(self, word: str) -> Token:
        if not self.at_keyword(word):
            raise self.error(word)
        return self.advance()

    def expect_symbol(self, symbol: str, expected: str | None = None) -> Token:
        if not self.at_symbol(symbol):
            raise self.error(expected or repr(symbol))
        return self.advance()

    def expect_identifier(self, expected: str = "an identifier") -> Token:
        tok = self.peek()
        if tok is None or tok.kind != IDENTIFIER:
            raise self.error(expected)
        return self.advance()

    def skip_terminator(self) -> None:
        if self.at_symbol(";"):
            self.advance()

    # -- statements ----------------------------------------------------------

    def program(self) -> ast.RuleModuleAst:
        statements = []
        while self.peek() is not None:
            statements.append(self.statement())
        return ast.RuleModuleAst(tuple(statements))

    def statement(self) -> ast.Statement:
        tok = self.peek()
        if tok is None:
            raise self.error("a statement")
        if tok.is_keyword("IF"):
            stmt = self.if_statement()
        elif tok.is_keyword("SWITCH"):
            stmt = self.switch_statement()
        elif tok.is_keyword("WHILE"):
            stmt = self.while_loop()
        elif tok.is_keyword("FOR"):
            stmt = self.for_loop()
        elif tok.is_keyword("SET"):
            stmt = ast.ActionStatement(self.action())
        elif tok.kind == IDENTIFIER:
            stmt = self.equation()
        else:
            raise self.error("a statement")
        self.skip_terminator()
        return stmt

    def if_statement(self) -> ast.IfStatement:
        self.expect_keyword("IF")
        condition = self.expr()
        self.expect_keyword("THEN")
        then_actions = self.actions()
        else_actions = None
        if self.at_keyword("ELSE"):
            self.advance()
            else_actions = self.actions()
        return ast.IfStatement(condition, then_actions, else_actions)

    def switch_statement(self) -> ast.SwitchStatement:
        self.expect_keyword("SWITCH")
        self.expect_symbol("(")
        scrutinee = self.expr()
        self.expect_symbol(")")
        self.expect_symbol("{")
        cases = []
        while self.at_keyword("CASE"):
            self.advance()
            guard = self.expr()
            self.expect_symbol(":")
            cases.append(ast.Case(guard, self.actions()))
            self.skip_terminator()
        if not cases:
            raise self.error("CASE")
        default = None
        if self.at_keyword("DEFAULT"):
            self.advance()
            self.expect_symbol(":")
            default = self.actions()
            self.skip_terminator()
        self.expect_symbol("}", "'}' or CASE" if default is None else "'}'")
        return ast.SwitchStatement(scrutinee, tuple(cases), default)

    def loop_body(self) -> tuple[ast.Statement, ...]:
        self.expect_keyword("DO")
        body = []
        while not self.at_keyword("END"):
            if self.peek() is None:
                raise self.error("END")
            body.append(self.statement())
        self.advance()
        return tuple(body)

    def while_loop(self) -> ast.LoopStatement:
        self.expect_keyword("WHILE")
        condition = self.expr()
        return ast.LoopStatement("while", self.loop_body(), condition=condition)

    def for_loop(self) -> ast.LoopStatement:
        self.expect_keyword("FOR")
        var = self.expect_identifier("a loop variable")
        self.expect_symbol("=")
        start = self.expr()
        self.expect_keyword("TO")
        stop = self.expr()
        return ast.LoopStatement(
            "for", self.loop_body(),
            variable=ast.Name(var.value, ast.WRITE, var.line, var.column),
            start=start, stop=stop,
        )

    def equation(self) -> ast.EquationStatement:
        target = self.advance()
        parameter = None
        if self.at_symbol("("):
            self.advance()
            parameter = self.expect_identifier("a parameter name").value
            self.expect_symbol(")")
        self.expect_symbol("=")
        return ast.EquationStatement(
            ast.Name(target.value, ast.WRITE, target.line, target.column),
            self.expr(), parameter,
        )

    def actions(self) -> tuple[ast.Action, ...]:
        actions = [self.action()]
        while self.at_symbol(","):
            self.advance()
            actions.append(self.action())
        return tuple(actions)

    def action(self) -> ast.Action:
        has_set = self.at_keyword("SET")
        if has_set:
            self.advance()
        target = self.expect_identifier("an action (SET or an assignment target)")
        self.expect_symbol("=")
        return ast.Action(ast.Name(target.value, ast.WRITE, target.line, target.column), self.expr(), has_set)

    # -- expressions ---------------------------------------------------------

    def expr(self) -> ast.Expr:
        return self.or_expr()

    def or_expr(self) -> ast.Expr:
        left = self.and_expr()
        while self.at_keyword("OR"):
            self.advance()
            left = ast.Binary("OR", left, self.and_expr())
        return left

    def and_expr(self) -> ast.Expr:
        left = self.not_expr()
        while self.at_keyword("AND"):
            self.advance()
            left = ast.Binary("AND", left, self.not_expr())
        return left

    def not_expr(self) -> ast.Expr:
        if self.at_keyword("NOT"):
            self.advance()
            return ast.Unary("NOT", self.not_expr())
        return self.comparison()

    def comparison(self) -> ast.Expr:
        left = self.additive()
        if self.at_symbol(*_COMPARISONS):
            op = self.advance().text
            left = ast.Binary(op, left, self.additive())
        return left

    def additive(self) -> ast.Expr:
        left = self.multiplicative()
        while self.at_symbol("+", "-"):
            op = self.advance().text
            left = ast.Binary(op, left, self.multiplicative())
        return left

    def multiplicative(self) -> ast.Expr:
        left = self.unary()
        while self.at_symbol("*", "/"):
            op = self.advance().text
            left = ast.Binary(op, left, self.unary())
        return left

    def unary(self) -> ast.Expr:
        if self.at_symbol("-"):
            self.advance()
            return ast.Unary("-", self.unary())
        return self.primary()

    def primary(self) -> ast.Expr:
        tok = self.peek()
        if tok is None:
            raise self.error("an expression")
        if tok.kind == NUMBER:
            self.advance()
            return ast.Number(tok.text)
        if tok.kind == BOOLEAN:
            self.advance()
            return ast.Boolean(tok.value == "TRUE")
        if tok.kind == IDENTIFIER:
            self.advance()
            name = ast.Name(tok.value, ast.READ, tok.line, tok.column)
            if self.at_symbol("("):
                return ast.Call(name, self.call_args())
            return name
        if tok.is_symbol("("):
            self.advance()
            inner = self.expr()
            self.expect_symbol(")")
            return inner
        raise self.error("an expression")

    def call_args(self) -> tuple[ast.Expr, ...]:
        self.expect_symbol("(")
        args = []
        if not self.at_symbol(")"):
            args.append(self.expr())
            while self.at_symbol(","):
                self.advance()
                args.append(self.expr())
        self.expect_symbol(")", "')' or ','")
        return tuple(args)


def parse(tokens: list[Token]) -> ast.RuleModuleAst:
    return _Parser(tokens).program()


def parse_source(source: str) -> ast.RuleModuleAst:
    return parse(tokenize(source))
