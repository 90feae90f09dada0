"""Parser for the word DSL.

    word := term ("*" term)*
    term := atom ("^" (integer | atom))?
    atom := VAR | CONST | "1" | "[" word "," word "]" | "(" word ")"

``a^n`` is the n-th power, ``a^b`` is ``b^-1 a b`` and ``[a, b] = a b a^-1 b^-1``.
Variables are ``x, y, z`` (indices 1, 2, 3) or ``x1`` .. ``x9``; every other
identifier is a constant name.  Parsed words are reduced.
"""

from __future__ import annotations

import re

from .words import WordWithConstants, free_reduce, invert_letters

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<id>[A-Za-z_][A-Za-z_0-9']*)|(?P<sym>[*^\[\](),]))")
MAX_EXPONENT = 10_000
_VARS = {"x": 1, "y": 2, "z": 3, **{f"x{i}": i for i in range(1, 10)}}


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")

    def pointer(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^"


def _tokenize(text: str) -> list:
    toks, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            p = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[p]!r}", p, text)
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.toks[self.i]
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = repr(value) if value is not None else kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want}, got {got!r}", tok[2], self.text)
        self.i += 1
        return tok

    def word(self) -> tuple:
        out = self.term()
        while self.peek()[1] == "*":
            self.take("*")
            out = out + self.term()
        return free_reduce(out)

    def term(self) -> tuple:
        base = self.atom()
        if self.peek()[1] != "^":
            return base
        self.take("^")
        tok = self.peek()
        if tok[0] == "int":
            self.take(kind="int")
            n = int(tok[1])
            if abs(n) > MAX_EXPONENT:
                raise ParseError(f"exponent {n} exceeds {MAX_EXPONENT}", tok[2], self.text)
            unit = base if n >= 0 else invert_letters(base)
            return free_reduce(unit * abs(n))
        conj = self.atom()
        return free_reduce(invert_letters(conj) + base + conj)

    def atom(self) -> tuple:
        kind, val, pos = self.peek()
        if kind == "id":
            self.take()
            if val in _VARS:
                return ((_VARS[val], 1),)
            return ((val, 1),)
        if kind == "int" and val == "1":
            self.take()
            return ()
        if val == "(":
            self.take("(")
            w = self.word()
            self.take(")")
            return w
        if val == "[":
            self.take("[")
            a = self.word()
            self.take(",")
            b = self.word()
            self.take("]")
            return free_reduce(a + b + invert_letters(a) + invert_letters(b))
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos, self.text)


def parse_letters(text: str) -> tuple:
    p = _Parser(text)
    try:
        out = p.word()
    except RecursionError:
        raise ParseError("expression nested too deeply", p.peek()[2], text) from None
    p.take(kind="end")
    return out


def parse_word(text: str, r: int | None = None) -> WordWithConstants:
    return WordWithConstants.from_letters(parse_letters(text), r)
