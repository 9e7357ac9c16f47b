"""Tokenizer for ``.fold`` construction scripts."""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass

KEYWORDS = frozenset(
    {
        "point",
        "line",
        "fold",
        "select",
        "intersect",
        "reflect",
        "coeffs",
        "through",
        "assert_on",
        "assert_dist",
        "assert_angle",
        "assert_parallel",
        "print",
    }
)

PUNCTUATION = frozenset("=(),")


class TokenKind(enum.Enum):
    KEYWORD = "keyword"
    IDENT = "identifier"
    NUMBER = "number"
    PUNCT = "punctuation"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    line: int
    column: int

    def __str__(self):
        return f"{self.kind.value} {self.text!r}"


class ScriptError(Exception):
    """Error carrying a 1-based source location."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.message = message


class LexError(ScriptError):
    pass


_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    n = len(source)
    while pos < n:
        ch = source[pos]
        col = pos - line_start + 1
        if ch == "\n":
            line, line_start = line + 1, pos + 1
            pos += 1
        elif ch in " \t\r":
            pos += 1
        elif ch == "#":
            while pos < n and source[pos] != "\n":
                pos += 1
        elif ch in PUNCTUATION:
            tokens.append(Token(TokenKind.PUNCT, ch, line, col))
            pos += 1
        elif ch.isdigit() or ch in "+-.":
            match = _NUMBER.match(source, pos)
            if match is None:
                raise LexError(line, col, f"malformed number starting with {ch!r}")
            end = match.end()
            if end < n and (source[end].isalnum() or source[end] in "_.'"):
                raise LexError(line, end - line_start + 1, f"unexpected character {source[end]!r} in number")
            tokens.append(Token(TokenKind.NUMBER, match.group(), line, col))
            pos = end
        elif ch.isascii() and (ch.isalpha() or ch == "_"):
            match = _IDENT.match(source, pos)
            text = match.group()
            kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.IDENT
            tokens.append(Token(kind, text, line, col))
            pos = match.end()
        else:
            raise LexError(line, col, f"unexpected character {ch!r}")
    return tokens
