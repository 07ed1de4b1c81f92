"""
S-expression reader for `.mk` program files.

Produces position-tagged nodes: symbols, #t/#f, integers (kept so the parser
can reject them with a location) and lists with an optional dotted tail.
`'x`, `` `x`` and `,x` read as (quote x), (quasiquote x) and (unquote x).
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from utils.errors import ParseError

DELIMITERS = "()'`,;\""


@dataclass(frozen=True)
class SSymbol:
    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SBool:
    value: bool
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SInt:
    value: int
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SList:
    items: Tuple["SNode", ...]
    tail: Optional["SNode"] = None
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    @property
    def head_name(self) -> Optional[str]:
        if self.items and isinstance(self.items[0], SSymbol):
            return self.items[0].name
        return None


SNode = Union[SSymbol, SBool, SInt, SList]

READER_MACROS = {"'": "quote", "`": "quasiquote", ",": "unquote"}


class Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.column = 1

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _advance(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.column = 1
        else:
            self.column += 1
        return ch

    def _error(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        raise ParseError(message, line or self.line, column or self.column)

    def skip_whitespace(self):
        while self.pos < len(self.text):
            ch = self._peek()
            if ch == ";":
                while self.pos < len(self.text) and self._peek() != "\n":
                    self._advance()
            elif ch.isspace():
                self._advance()
            else:
                return

    def at_end(self) -> bool:
        self.skip_whitespace()
        return self.pos >= len(self.text)

    def read(self) -> SNode:
        self.skip_whitespace()
        if self.pos >= len(self.text):
            self._error("unexpected end of input")
        line, column = self.line, self.column
        ch = self._peek()
        if ch == "(":
            self._advance()
            return self._read_list(line, column)
        if ch == ")":
            self._error("unbalanced parentheses: unexpected ')'")
        if ch in READER_MACROS:
            self._advance()
            if ch == "," and self._peek() == "@":
                self._error("unquote-splicing (,@) is not supported", line, column)
            datum = self.read()
            return SList((SSymbol(READER_MACROS[ch], line, column), datum), None, line, column)
        if ch == '"':
            self._error("string literals are not supported")
        return self._read_atom(line, column)

    def _read_list(self, line: int, column: int) -> SList:
        items: List[SNode] = []
        while True:
            self.skip_whitespace()
            if self.pos >= len(self.text):
                self._error("unbalanced parentheses: list not closed", line, column)
            if self._peek() == ")":
                self._advance()
                return SList(tuple(items), None, line, column)
            dot_line, dot_column = self.line, self.column
            if self._at_dot():
                self._advance()
                if not items:
                    self._error("'.' must follow at least one list element", dot_line, dot_column)
                tail = self.read()
                self.skip_whitespace()
                if self._peek() != ")":
                    self._error("expected ')' after the dotted tail")
                self._advance()
                return SList(tuple(items), tail, line, column)
            items.append(self.read())

    def _at_dot(self) -> bool:
        if self._peek() != ".":
            return False
        following = self.text[self.pos + 1:self.pos + 2]
        return following == "" or following.isspace() or following in DELIMITERS

    def _read_atom(self, line: int, column: int) -> SNode:
        start = self.pos
        while self.pos < len(self.text):
            ch = self._peek()
            if ch.isspace() or ch in DELIMITERS:
                break
            self._advance()
        token = self.text[start:self.pos]
        if token.startswith("#"):
            if token == "#t":
                return SBool(True, line, column)
            if token == "#f":
                return SBool(False, line, column)
            self._error(f"unknown literal {token!r}", line, column)
        try:
            return SInt(int(token), line, column)
        except ValueError:
            pass
        if _is_numeral(token):
            self._error(f"non-integer numeric literal {token!r}", line, column)
        return SSymbol(token, line, column)


def _is_numeral(token: str) -> bool:
    # nan, inf and friends stay symbols
    if not any(ch.isdigit() for ch in token):
        return False
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_all(text: str) -> List[SNode]:
    reader = Reader(text)
    nodes = []
    while not reader.at_end():
        nodes.append(reader.read())
    return nodes


def read_one(text: str) -> SNode:
    reader = Reader(text)
    node = reader.read()
    if not reader.at_end():
        raise ParseError("trailing input after datum", reader.line, reader.column)
    return node


def show(node: SNode) -> str:
    """Render a node back to text (no reader-macro sugar)."""
    if isinstance(node, SSymbol):
        return node.name
    if isinstance(node, SBool):
        return "#t" if node.value else "#f"
    if isinstance(node, SInt):
        return str(node.value)
    inner = " ".join(show(item) for item in node.items)
    if node.tail is not None:
        inner += " . " + show(node.tail)
    return f"({inner})"
