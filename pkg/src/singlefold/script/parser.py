"""Recursive-descent parser and canonical formatter for ``.fold`` scripts.

Grammar::

    program     := statement* ;
    statement   := point_decl | line_decl | fold_decl | assert_stmt | print_stmt ;
    point_decl  := "point" IDENT "=" ( "(" NUM "," NUM ")"
                   | "intersect" "(" IDENT "," IDENT ")"
                   | "reflect" "(" IDENT "," IDENT ")" ) ;
    line_decl   := "line" IDENT "=" ( "coeffs" "(" NUM "," NUM "," NUM ")"
                   | "through" "(" IDENT "," IDENT ")"
                   | "reflect" "(" IDENT "," IDENT ")" ) ;
    fold_decl   := "fold" IDENT "=" OPNAME "(" IDENT ("," IDENT)* ")" [ "select" NUM ] ;
    assert_stmt := "assert_on" "(" IDENT "," IDENT "," NUM ")"
                 | "assert_dist" "(" IDENT "," IDENT "," NUM "," NUM ")"
                 | "assert_angle" "(" IDENT "," IDENT "," NUM "," NUM ")"
                 | "assert_parallel" "(" IDENT "," IDENT "," NUM ")" ;
    print_stmt  := "print" "(" IDENT ")" ;
    OPNAME      := "O1" .. "O8" ;
"""
from __future__ import annotations

import math

from .lexer import ScriptError, Token, TokenKind, tokenize
from .nodes import (
    ASSERT_KINDS,
    KIND_KEYWORDS,
    OP_NAMES,
    Assert,
    Coeffs,
    Coords,
    FoldDecl,
    Intersect,
    LineDecl,
    PointDecl,
    Print,
    Program,
    ReflectLine,
    ReflectPoint,
    Statement,
    Through,
)


class ParseError(ScriptError):
    def __init__(self, line: int, column: int, expected: str, found: str, message: str | None = None):
        super().__init__(line, column, message or f"expected {expected}, found {found}")
        self.expected = expected
        self.found = found


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _end_location(self) -> tuple[int, int]:
        if not self.tokens:
            return 1, 1
        last = self.tokens[-1]
        return last.line, last.column + len(last.text)

    def fail(self, expected: str, message: str | None = None):
        tok = self.peek()
        if tok is None:
            line, col = self._end_location()
            raise ParseError(line, col, expected, "end of input", message)
        raise ParseError(tok.line, tok.column, expected, str(tok), message)

    def expect(self, kind: TokenKind, text: str | None = None) -> Token:
        tok = self.peek()
        if tok is None or tok.kind is not kind or (text is not None and tok.text != text):
            self.fail(repr(text) if text else kind.value)
        self.pos += 1
        return tok

    def punct(self, ch: str) -> Token:
        return self.expect(TokenKind.PUNCT, ch)

    def ident(self) -> str:
        return self.expect(TokenKind.IDENT).text

    def number(self) -> float:
        tok = self.expect(TokenKind.NUMBER)
        value = float(tok.text)
        if not math.isfinite(value):
            raise ParseError(tok.line, tok.column, "finite number", tok.text, f"number {tok.text} overflows")
        return value

    def ident_pair(self) -> tuple[str, str]:
        self.punct("(")
        first = self.ident()
        self.punct(",")
        second = self.ident()
        self.punct(")")
        return first, second

    # statements ------------------------------------------------------------

    def program(self) -> Program:
        statements = []
        while self.peek() is not None:
            statements.append(self.statement())
        return Program(tuple(statements))

    def statement(self) -> Statement:
        tok = self.peek()
        if tok.kind is TokenKind.KEYWORD:
            if tok.text == "point":
                return self.point_decl()
            if tok.text == "line":
                return self.line_decl()
            if tok.text == "fold":
                return self.fold_decl()
            if tok.text in ASSERT_KINDS:
                return self.assert_stmt()
            if tok.text == "print":
                self.pos += 1
                self.punct("(")
                name = self.ident()
                self.punct(")")
                return Print(name, loc=(tok.line, tok.column))
        self.fail("statement")

    def point_decl(self) -> PointDecl:
        start = self.expect(TokenKind.KEYWORD, "point")
        name = self.ident()
        self.punct("=")
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.PUNCT and tok.text == "(":
            self.pos += 1
            x = self.number()
            self.punct(",")
            y = self.number()
            self.punct(")")
            source = Coords(x, y)
        elif tok is not None and tok.kind is TokenKind.KEYWORD and tok.text == "intersect":
            self.pos += 1
            source = Intersect(*self.ident_pair())
        elif tok is not None and tok.kind is TokenKind.KEYWORD and tok.text == "reflect":
            self.pos += 1
            source = ReflectPoint(*self.ident_pair())
        else:
            self.fail("'(', 'intersect' or 'reflect'")
        return PointDecl(name, source, loc=(start.line, start.column))

    def line_decl(self) -> LineDecl:
        start = self.expect(TokenKind.KEYWORD, "line")
        name = self.ident()
        self.punct("=")
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.KEYWORD and tok.text == "coeffs":
            self.pos += 1
            self.punct("(")
            a = self.number()
            self.punct(",")
            b = self.number()
            self.punct(",")
            c = self.number()
            self.punct(")")
            source = Coeffs(a, b, c)
        elif tok is not None and tok.kind is TokenKind.KEYWORD and tok.text == "through":
            self.pos += 1
            source = Through(*self.ident_pair())
        elif tok is not None and tok.kind is TokenKind.KEYWORD and tok.text == "reflect":
            self.pos += 1
            source = ReflectLine(*self.ident_pair())
        else:
            self.fail("'coeffs', 'through' or 'reflect'")
        return LineDecl(name, source, loc=(start.line, start.column))

    def fold_decl(self) -> FoldDecl:
        start = self.expect(TokenKind.KEYWORD, "fold")
        name = self.ident()
        self.punct("=")
        op_tok = self.peek()
        if op_tok is None or op_tok.kind is not TokenKind.IDENT:
            self.fail("operation name O1..O8")
        if op_tok.text not in OP_NAMES:
            self.fail("operation name O1..O8", f"unknown operation {op_tok.text!r}")
        self.pos += 1
        self.punct("(")
        args = [self.ident()]
        while True:
            tok = self.peek()
            if tok is not None and tok.kind is TokenKind.PUNCT and tok.text == ",":
                self.pos += 1
                args.append(self.ident())
            else:
                break
        self.punct(")")
        select = None
        tok = self.peek()
        if tok is not None and tok.kind is TokenKind.KEYWORD and tok.text == "select":
            self.pos += 1
            num = self.peek()
            value = self.number()
            if value != int(value) or value < 1:
                raise ParseError(num.line, num.column, "positive integer", num.text, f"select index must be a positive integer, got {num.text}")
            select = int(value)
        return FoldDecl(name, op_tok.text, tuple(args), select, loc=(start.line, start.column))

    def assert_stmt(self) -> Assert:
        start = self.expect(TokenKind.KEYWORD)
        kind = ASSERT_KINDS[start.text]
        self.punct("(")
        first = self.ident()
        self.punct(",")
        second = self.ident()
        self.punct(",")
        if kind in ("PointDist", "LineAngle"):
            expected = self.number()
            self.punct(",")
        else:
            expected = 0.0
        tol = self.number()
        self.punct(")")
        return Assert(kind, (first, second), expected, tol, loc=(start.line, start.column))


def parse(tokens: list[Token]) -> Program:
    """Parse a token list; the first error aborts with a ParseError."""
    return _Parser(tokens).program()


def parse_source(source: str) -> Program:
    return parse(tokenize(source))


# formatting ------------------------------------------------------------------


def format_number(value: float) -> str:
    """Shortest text that reads back as exactly ``value``."""
    text = repr(float(value))
    if text.endswith(".0"):
        text = text[:-2]
    return text


def format_statement(stmt: Statement) -> str:
    num = format_number
    if isinstance(stmt, PointDecl):
        src = stmt.source
        if isinstance(src, Coords):
            rhs = f"({num(src.x)}, {num(src.y)})"
        elif isinstance(src, Intersect):
            rhs = f"intersect({src.first}, {src.second})"
        else:
            rhs = f"reflect({src.point}, {src.fold})"
        return f"point {stmt.name} = {rhs}"
    if isinstance(stmt, LineDecl):
        src = stmt.source
        if isinstance(src, Coeffs):
            rhs = f"coeffs({num(src.a)}, {num(src.b)}, {num(src.c)})"
        elif isinstance(src, Through):
            rhs = f"through({src.first}, {src.second})"
        else:
            rhs = f"reflect({src.line}, {src.fold})"
        return f"line {stmt.name} = {rhs}"
    if isinstance(stmt, FoldDecl):
        text = f"fold {stmt.name} = {stmt.op}({', '.join(stmt.args)})"
        if stmt.select is not None:
            text += f" select {stmt.select}"
        return text
    if isinstance(stmt, Assert):
        parts = list(stmt.operands)
        if stmt.kind in ("PointDist", "LineAngle"):
            parts.append(num(stmt.expected))
        parts.append(num(stmt.tol))
        return f"{KIND_KEYWORDS[stmt.kind]}({', '.join(parts)})"
    if isinstance(stmt, Print):
        return f"print({stmt.name})"
    raise TypeError(f"not a statement: {stmt!r}")


def format_program(prog: Program) -> str:
    return "".join(format_statement(s) + "\n" for s in prog.statements)
