"""Line-oriented record syntax shared by the graph and edit-script text formats.

A record is one line of whitespace-separated tokens. A token that contains
whitespace, a double quote, a backslash, or a leading ``#`` is written
double-quoted, with ``\\`` escapes for ``"`` and ``\\``. ``#`` starts a
comment outside of quotes; blank lines are ignored.
"""

from __future__ import annotations


class RecordSyntaxError(ValueError):
    """Malformed record text."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def quote_token(text: str) -> str:
    """Render one token, quoting only when the plain form would be ambiguous."""
    if text and not _needs_quoting(text):
        return text
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _needs_quoting(text: str) -> bool:
    return text.startswith("#") or any(c.isspace() or c in '"\\' for c in text)


def tokenize_line(line: str, lineno: int | None = None) -> list[str]:
    """Split one line into tokens, honouring quotes, escapes and comments."""
    tokens: list[str] = []
    i, n = 0, len(line)
    while i < n:
        c = line[i]
        if c.isspace():
            i += 1
        elif c == "#":
            break
        elif c == '"':
            token, i = _read_quoted(line, i, lineno)
            tokens.append(token)
        else:
            start = i
            while i < n and not line[i].isspace():
                if line[i] == '"':
                    raise RecordSyntaxError("quote in the middle of a token", lineno)
                i += 1
            tokens.append(line[start:i])
    return tokens


def _read_quoted(line: str, start: int, lineno: int | None) -> tuple[str, int]:
    parts: list[str] = []
    i = start + 1
    while i < len(line):
        c = line[i]
        if c == "\\":
            if i + 1 >= len(line) or line[i + 1] not in '"\\':
                raise RecordSyntaxError("bad escape in quoted token", lineno)
            parts.append(line[i + 1])
            i += 2
        elif c == '"':
            return "".join(parts), i + 1
        else:
            parts.append(c)
            i += 1
    raise RecordSyntaxError("unterminated quoted token", lineno)


def format_record(tokens: list[str]) -> str:
    return " ".join(quote_token(t) for t in tokens)


def parse_records(text: str) -> list[tuple[int, list[str]]]:
    """Tokenize a whole document; returns (line number, tokens) per non-empty record."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tokens = tokenize_line(line, lineno)
        if tokens:
            out.append((lineno, tokens))
    return out
