"""The ``.fold`` construction language: tokenize, parse, format, evaluate."""
from .evaluator import AssertionFailure, Environment, ScriptRuntimeError, TraceEntry, evaluate
from .lexer import LexError, ScriptError, Token, TokenKind, tokenize
from .nodes import Program
from .parser import ParseError, format_number, format_program, parse, parse_source


def format(prog: Program) -> str:  # noqa: A001 - mirrors the script vocabulary
    return format_program(prog)


__all__ = [
    "AssertionFailure",
    "Environment",
    "LexError",
    "ParseError",
    "Program",
    "ScriptError",
    "ScriptRuntimeError",
    "Token",
    "TokenKind",
    "TraceEntry",
    "evaluate",
    "format",
    "format_number",
    "format_program",
    "parse",
    "parse_source",
    "tokenize",
]
