"""
Tokenizer for biamalg scripts.

Keywords are not reserved: the parser recognises ``ring``, ``check`` and the
rest by value, so they can still be used as names where the grammar expects
one. Names may contain inner hyphens (``gauss-sufficient``, ``R-prufer``);
``->`` always lexes as an arrow.
"""
import re
from dataclasses import dataclass
from typing import List

from ..errors import LexError, Span

INT = "INT"
NAME = "NAME"
STRING = "STRING"
ARROW = "->"
EOF = "EOF"

PUNCTUATION = (";", "=", ":", "*", "/", "[", "]", "(", ")", ",", "+", "^")

TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<int>[0-9]+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<punct>[;=:*/\[\](),+^])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    span: Span

    def describe(self) -> str:
        if self.kind == EOF:
            return "end of input"
        return repr(self.value)


def _unescape(literal: str) -> str:
    return re.sub(r"\\(.)", r"\1", literal[1:-1])


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    pos, line, col = 0, 1, 1
    while pos < len(source):
        match = TOKEN_RE.match(source, pos)
        if match is None:
            char = source[pos]
            if char == '"':
                raise LexError("unterminated string literal", Span(line, col, line, col + 1))
            raise LexError(f"unexpected character {char!r}", Span(line, col, line, col + 1))
        text = match.group()
        kind = match.lastgroup
        newlines = text.count("\n")
        end_line = line + newlines
        end_col = len(text) - text.rfind("\n") if newlines else col + len(text)
        span = Span(line, col, end_line, end_col)
        if kind == "arrow":
            tokens.append(Token(ARROW, text, span))
        elif kind == "int":
            tokens.append(Token(INT, text, span))
        elif kind == "name":
            tokens.append(Token(NAME, text, span))
        elif kind == "string":
            tokens.append(Token(STRING, _unescape(text), span))
        elif kind == "punct":
            tokens.append(Token(text, text, span))
        pos, line, col = match.end(), end_line, end_col
    tokens.append(Token(EOF, "", Span(line, col, line, col)))
    return tokens
