"""Named ASCII syntax for processes, and printers for both notations.

Grammar (loosest binding first)::

    program := 'free' ident* ';' proc
    proc    := par ('+' par)*
    par     := unary ('|' unary)*
    unary   := '!' unary | 'new' ident '.' unary
             | ident '<' ident '>' '.' unary | ident '(' ident ')' '.' unary
             | '0' | '(' proc ')'

``+`` and ``|`` associate to the left. The preamble declares the free
names; the first one declared is index 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import IllFormed, PiSyntaxError, UnboundName
from .syntax import (NIL, Action, BoundOutput, Choice, Input, InputPrefix, Nil, Output,
                     OutputPrefix, Par, Process, Replicate, Restrict, Tau, check_process)

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)|(0)|(<|>|\(|\)|\.|\||\+|!|;))")
KEYWORDS = {"free", "new"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if text.startswith("#", pos):
            while pos < len(text) and text[pos] != "\n":
                pos += 1
            continue
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PiSyntaxError(f"unexpected character {text[pos]!r}", pos)
        if m.group(1) is not None:
            kind = "kw" if m.group(1) in KEYWORDS else "id"
            out.append((kind, m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("nil", "0", m.start(2)))
        else:
            out.append(("sym", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise PiSyntaxError(f"expected {want!r}, found {got!r}", tok[2])
        return tok

    def is_sym(self, value: str) -> bool:
        tok = self.peek()
        return tok[0] == "sym" and tok[1] == value

    def program(self) -> tuple[int, Process]:
        self.expect("kw", "free")
        names: list[str] = []
        while self.peek()[0] == "id":
            tok = self.next()
            if tok[1] in names:
                raise PiSyntaxError(f"free name {tok[1]!r} declared twice", tok[2])
            names.append(tok[1])
        self.expect("sym", ";")
        p = self.proc(list(names))
        self.expect("eof")
        return len(names), p

    def proc(self, scope: list[str]) -> Process:
        p = self.par(scope)
        while self.is_sym("+"):
            self.next()
            p = Choice(p, self.par(scope))
        return p

    def par(self, scope: list[str]) -> Process:
        p = self.unary(scope)
        while self.is_sym("|"):
            self.next()
            p = Par(p, self.unary(scope))
        return p

    def lookup(self, tok, scope: list[str]) -> int:
        try:
            return scope.index(tok[1])
        except ValueError:
            raise UnboundName(f"name {tok[1]!r} at position {tok[2]} is not in scope") from None

    def unary(self, scope: list[str]) -> Process:
        tok = self.peek()
        if tok[0] == "sym" and tok[1] == "!":
            self.next()
            return Replicate(self.unary(scope))
        if tok[0] == "kw" and tok[1] == "new":
            self.next()
            binder = self.expect("id")[1]
            self.expect("sym", ".")
            return Restrict(self.unary([binder] + scope))
        if tok[0] == "nil":
            self.next()
            return NIL
        if tok[0] == "sym" and tok[1] == "(":
            self.next()
            p = self.proc(scope)
            self.expect("sym", ")")
            return p
        if tok[0] == "id":
            self.next()
            x = self.lookup(tok, scope)
            if self.is_sym("<"):
                self.next()
                y = self.lookup(self.expect("id"), scope)
                self.expect("sym", ">")
                self.expect("sym", ".")
                return OutputPrefix(x, y, self.unary(scope))
            if self.is_sym("("):
                self.next()
                binder = self.expect("id")[1]
                self.expect("sym", ")")
                self.expect("sym", ".")
                return InputPrefix(x, self.unary([binder] + scope))
            nxt = self.peek()
            raise PiSyntaxError(f"expected '<' or '(' after {tok[1]!r}", nxt[2])
        raise PiSyntaxError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])


def parse(text: str) -> tuple[int, Process]:
    """Parse a named program into its context size and de Bruijn process."""
    return _Parser(text).program()


@dataclass
class _Namer:
    prefix: str = "x"
    count: int = 0

    def fresh(self) -> str:
        name = f"{self.prefix}{self.count}"
        self.count += 1
        return name


def default_names(ctx: int) -> list[str]:
    """Free-name identifiers in declaration order (the first one is index 0)."""
    return [f"a{i}" for i in range(ctx)]


# precedence levels: 0 = choice, 1 = par, 2 = unary
def _named(p: Process, scope: list[str], namer: _Namer, level: int) -> str:
    if isinstance(p, Nil):
        return "0"
    if isinstance(p, InputPrefix):
        b = namer.fresh()
        return f"{scope[p.x]}({b}).{_named(p.body, [b] + scope, namer, 2)}"
    if isinstance(p, OutputPrefix):
        return f"{scope[p.x]}<{scope[p.y]}>.{_named(p.body, scope, namer, 2)}"
    if isinstance(p, Restrict):
        b = namer.fresh()
        return f"new {b}. {_named(p.body, [b] + scope, namer, 2)}"
    if isinstance(p, Replicate):
        return f"!{_named(p.body, scope, namer, 2)}"
    if isinstance(p, Par):
        s = f"{_named(p.left, scope, namer, 1)} | {_named(p.right, scope, namer, 2)}"
        return s if level <= 1 else f"({s})"
    s = f"{_named(p.left, scope, namer, 0)} + {_named(p.right, scope, namer, 1)}"
    return s if level == 0 else f"({s})"


def print_named(ctx: int, p: Process, names: list[str] | None = None) -> str:
    """Render as a parseable program; ``parse`` of the result gives back (ctx, p)."""
    if not check_process(ctx, p):
        raise IllFormed(f"process is not well-formed in context {ctx}")
    names = default_names(ctx) if names is None else list(names)
    if len(names) != ctx:
        raise IllFormed(f"{len(names)} names supplied for context {ctx}")
    prefix = "x"
    while any(re.fullmatch(rf"{re.escape(prefix)}\d+", n) for n in names):
        prefix += "_"
    body = _named(p, list(names), _Namer(prefix), 0)
    head = "free" + "".join(f" {n}" for n in names) + ";"
    return f"{head} {body}"


def _db(p: Process, level: int) -> str:
    if isinstance(p, Nil):
        return "0"
    if isinstance(p, InputPrefix):
        return f"{p.x}().{_db(p.body, 2)}"
    if isinstance(p, OutputPrefix):
        return f"{p.x}<{p.y}>.{_db(p.body, 2)}"
    if isinstance(p, Restrict):
        return f"nu.{_db(p.body, 2)}"
    if isinstance(p, Replicate):
        return f"!{_db(p.body, 2)}"
    if isinstance(p, Par):
        s = f"{_db(p.left, 1)} | {_db(p.right, 2)}"
        return s if level <= 1 else f"({s})"
    s = f"{_db(p.left, 0)} + {_db(p.right, 1)}"
    return s if level == 0 else f"({s})"


def print_de_bruijn(ctx: int, p: Process) -> str:
    """Direct rendering with numeric indices, prefixed by the context size."""
    if not check_process(ctx, p):
        raise IllFormed(f"process is not well-formed in context {ctx}")
    return f"{ctx} |- {_db(p, 0)}"


def print_action(a: Action, names: list[str] | None = None) -> str:
    """``x<y>``, ``x(.)`` for input, ``x^(.)`` for bound output, ``tau``.

    With ``names`` (declaration order) indices are shown as identifiers.
    """
    def show(i: int) -> str:
        return names[i] if names is not None else str(i)

    if isinstance(a, Output):
        return f"{show(a.x)}<{show(a.y)}>"
    if isinstance(a, Input):
        return f"{show(a.x)}(.)"
    if isinstance(a, BoundOutput):
        return f"{show(a.x)}^(.)"
    if isinstance(a, Tau):
        return "tau"
    raise IllFormed(f"not an action: {a!r}")
