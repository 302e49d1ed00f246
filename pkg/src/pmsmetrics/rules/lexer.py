"""Tokenizer for the IF-THEN / SWITCH-CASE rule language."""

from __future__ import annotations

import re
from dataclasses import dataclass

from pmsmetrics.errors import LexError

KEYWORDS = frozenset({
    "IF", "THEN", "ELSE", "SET", "SWITCH", "CASE", "DEFAULT",
    "WHILE", "DO", "END", "FOR", "TO", "AND", "OR", "NOT",
})
BOOLEANS = frozenset({"TRUE", "FALSE"})

KEYWORD = "keyword"
IDENTIFIER = "identifier"
NUMBER = "number"
OPERATOR = "operator"
PUNCTUATION = "punctuation"
BOOLEAN = "boolean"

_SCANNER = re.compile(r"""
    (?P<ws>[ \t\r\n\f\v]+)
  | (?P<number>\d+(?:\.\d*)?|\.\d+)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<operator><=|>=|<>|[<>=+\-*/])
  | (?P<punctuation>[(){}:;,])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    @property
    def value(self) -> str:
        """Upper-cased text; keywords and identifiers compare case-insensitively."""
        return self.text.upper()

    def is_keyword(self, *words: str) -> bool:
        return self.kind == KEYWORD and self.value in words

    def is_symbol(self, *symbols: str) -> bool:
        return self.kind in (OPERATOR, PUNCTUATION) and self.text in symbols


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(source):
        match = _SCANNER.match(source, pos)
        if match is None:
            raise LexError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)
        kind, text = match.lastgroup, match.group()
        if kind == "ws":
            newlines = text.count("\n")
            if newlines:
                line += newlines
                line_start = pos + text.rindex("\n") + 1
        else:
            if kind == "word":
                upper = text.upper()
                kind = KEYWORD if upper in KEYWORDS else BOOLEAN if upper in BOOLEANS else IDENTIFIER
            tokens.append(Token(kind, text, line, pos - line_start + 1))
        pos = match.end()
    return tokens
