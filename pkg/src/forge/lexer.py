"""Tokenizer for the modeling language.

Whitespace-insensitive, ``//`` line comments, double-quoted strings with
``\\"`` ``\\\\`` ``\\n`` escapes. Every keyword of the grammar is reserved:
a word is classified as a keyword, a PascalCase identifier (PIDENT), or a
snake_case identifier (IDENT); anything else is a lexical error (E900).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagnostics import Diagnostic, SourceSpan, error

KEYWORDS = frozenset(
    """
    model class enum association agent page
    description uri icon attr method required
    str int float bool date datetime
    intent state initial say call llm on auto fallback
    style table binds columns form creates button invokes
    chart kind bar line pie x y chat
    """.split()
)

_PIDENT_RE = re.compile(r"[A-Z][A-Za-z0-9]*")
_IDENT_RE = re.compile(r"[a-z][a-z0-9_]*")
_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[0-9]+")

PUNCT = {
    "{": "LBRACE",
    "}": "RBRACE",
    "(": "LPAREN",
    ")": "RPAREN",
    "[": "LBRACKET",
    "]": "RBRACKET",
    ":": "COLON",
    ",": "COMMA",
    ";": "SEMI",
    "*": "STAR",
}

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n"}


@dataclass(frozen=True)
class Token:
    kind: str  # KEYWORD | PIDENT | IDENT | INT | STRING | punct kind | EOF
    value: str
    span: SourceSpan

    def is_keyword(self, word: str) -> bool:
        return self.kind == "KEYWORD" and self.value == word


def lex(text: str) -> tuple[list[Token], list[Diagnostic]]:
    """Tokenize ``text``, collecting E900 diagnostics for lexical errors."""
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    pos = 0
    line = 1
    col = 1
    n = len(text)

    def advance(count: int) -> None:
        nonlocal pos, line, col
        for _ in range(count):
            if text[pos] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            pos += 1

    while pos < n:
        ch = text[pos]
        if ch in " \t\r\n":
            advance(1)
            continue
        if ch == "/" and text.startswith("//", pos):
            while pos < n and text[pos] != "\n":
                advance(1)
            continue
        start_line, start_col = line, col
        if ch == '"':
            value, length, err = _scan_string(text, pos)
            span = SourceSpan(start_line, start_col, length)
            if err is not None:
                diags.append(error("E900", err, span))
            else:
                tokens.append(Token("STRING", value, span))
            advance(length)
            continue
        if ch == "-" and text.startswith("->", pos):
            tokens.append(Token("ARROW", "->", SourceSpan(start_line, start_col, 2)))
            advance(2)
            continue
        if ch == "." and text.startswith("..", pos):
            tokens.append(Token("DOTDOT", "..", SourceSpan(start_line, start_col, 2)))
            advance(2)
            continue
        if ch == ".":
            tokens.append(Token("DOT", ".", SourceSpan(start_line, start_col, 1)))
            advance(1)
            continue
        if ch in PUNCT:
            tokens.append(Token(PUNCT[ch], ch, SourceSpan(start_line, start_col, 1)))
            advance(1)
            continue
        m = _INT_RE.match(text, pos)
        if m:
            word = m.group()
            tokens.append(Token("INT", word, SourceSpan(start_line, start_col, len(word))))
            advance(len(word))
            continue
        m = _WORD_RE.match(text, pos)
        if m:
            word = m.group()
            span = SourceSpan(start_line, start_col, len(word))
            if word in KEYWORDS:
                tokens.append(Token("KEYWORD", word, span))
            elif _PIDENT_RE.fullmatch(word):
                tokens.append(Token("PIDENT", word, span))
            elif _IDENT_RE.fullmatch(word):
                tokens.append(Token("IDENT", word, span))
            else:
                diags.append(error("E900", f"malformed identifier {word!r}", span))
            advance(len(word))
            continue
        diags.append(error("E900", f"illegal character {ch!r}", SourceSpan(start_line, start_col, 1)))
        advance(1)

    tokens.append(Token("EOF", "", SourceSpan(line, col, 0)))
    return tokens, diags


def _scan_string(text: str, start: int) -> tuple[str, int, str | None]:
    """Scan a string literal at ``start``; return (value, source length, error)."""
    out: list[str] = []
    i = start + 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == '"':
            return "".join(out), i - start + 1, None
        if ch == "\n":
            return "", i - start, "unterminated string"
        if ch == "\\":
            if i + 1 >= n:
                return "", n - start, "unterminated string"
            esc = text[i + 1]
            if esc not in _ESCAPES:
                return "", min(i + 2, n) - start, f"unknown escape '\\{esc}'"
            out.append(_ESCAPES[esc])
            i += 2
            continue
        out.append(ch)
        i += 1
    return "", n - start, "unterminated string"
