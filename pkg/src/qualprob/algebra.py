"""Finite Boolean event algebra: spaces, events, and the sentence grammar.

A Space fixes a finite set of worlds, either directly (worlds mode) or as
the truth assignments over a list of atoms (atoms mode).  An Event is the
set of worlds where a sentence holds, stored as a bitmask over world
indices, so every Boolean connective is a single integer operation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Optional

DEFAULT_WORLD_CAP = 24

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_RESERVED = {"T", "F", "not", "and", "or"}


class AlgebraError(ValueError):
    pass


class SpaceMismatch(AlgebraError):
    """Two operands belong to different spaces."""


class UnknownAtom(AlgebraError):
    def __init__(self, name: str, offset: Optional[int] = None):
        super().__init__(f"unknown atom {name!r}")
        self.name = name
        self.offset = offset


class SentenceSyntaxError(AlgebraError):
    """Sentence text failed to parse; `offset` is the byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class CapExceeded(RuntimeError):
    """A size cap was hit; the operation refuses rather than degrade."""


def _check_names(names: tuple[str, ...]) -> None:
    seen = set()
    for name in names:
        if not _IDENT_RE.fullmatch(name):
            raise AlgebraError(f"invalid name {name!r}: must match identifier syntax")
        if name in _RESERVED:
            raise AlgebraError(f"invalid name {name!r}: reserved word")
        if name in seen:
            raise AlgebraError(f"duplicate name {name!r}")
        seen.add(name)


@dataclass(frozen=True)
class Space:
    """A finite collection of worlds.

    mode "worlds": `names` are the worlds themselves and each name, used as
    an atomic sentence, is true at exactly that world.  mode "atoms":
    `names` are atomic propositions; world index i assigns atom j the truth
    value of bit j of i, so world_count is 2**len(names).
    """

    mode: str
    names: tuple[str, ...]

    def __post_init__(self):
        if self.mode not in ("atoms", "worlds"):
            raise AlgebraError(f"unknown space mode {self.mode!r}")
        if not self.names:
            raise AlgebraError("a space needs at least one name")
        _check_names(self.names)
        if self.world_count > DEFAULT_WORLD_CAP:
            raise CapExceeded(
                f"{self.world_count} worlds exceeds the cap of {DEFAULT_WORLD_CAP}"
            )

    @property
    def world_count(self) -> int:
        if self.mode == "worlds":
            return len(self.names)
        return 1 << len(self.names)

    @property
    def event_count(self) -> int:
        return 1 << self.world_count

    def world_label(self, index: int) -> str:
        """Human-readable label for one world; a valid sentence in both modes."""
        if self.mode == "worlds":
            return self.names[index]
        parts = []
        for j, name in enumerate(self.names):
            parts.append(name if index >> j & 1 else "~" + name)
        return " and ".join(parts)

    def atom_event(self, name: str) -> "Event":
        try:
            j = self.names.index(name)
        except ValueError:
            raise UnknownAtom(name) from None
        if self.mode == "worlds":
            return Event(self, 1 << j)
        mask = 0
        for i in range(self.world_count):
            if i >> j & 1:
                mask |= 1 << i
        return Event(self, mask)

    def event(self, members) -> "Event":
        mask = 0
        for i in members:
            if not 0 <= i < self.world_count:
                raise AlgebraError(f"world index {i} out of range")
            mask |= 1 << i
        return Event(self, mask)

    @property
    def top(self) -> "Event":
        return Event(self, (1 << self.world_count) - 1)

    @property
    def bottom(self) -> "Event":
        return Event(self, 0)


@dataclass(frozen=True)
class Event:
    """A set of worlds of one space, canonically a bitmask over world indices."""

    space: Space
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask < (1 << self.space.world_count):
            raise AlgebraError(f"event mask {self.mask} out of range for space")

    def _join(self, other: "Event") -> None:
        if self.space != other.space:
            raise SpaceMismatch("events belong to different spaces")

    @property
    def members(self) -> frozenset[int]:
        return frozenset(i for i in range(self.space.world_count) if self.mask >> i & 1)

    def __and__(self, other: "Event") -> "Event":
        self._join(other)
        return Event(self.space, self.mask & other.mask)

    def __or__(self, other: "Event") -> "Event":
        self._join(other)
        return Event(self.space, self.mask | other.mask)

    def __invert__(self) -> "Event":
        return Event(self.space, self.mask ^ (1 << self.space.world_count) - 1)

    def implies(self, other: "Event") -> bool:
        self._join(other)
        return self.mask & ~other.mask == 0

    @property
    def is_top(self) -> bool:
        return self.mask == (1 << self.space.world_count) - 1

    @property
    def is_bottom(self) -> bool:
        return self.mask == 0

    def label(self) -> str:
        """Set-style display form, deterministic: `{w1,w3}`, `{}`, or `{*}` for top."""
        if self.is_top:
            return "{*}"
        names = [self.space.world_label(i) for i in sorted(self.members)]
        return "{" + ",".join(names) + "}"


# --- sentence AST ---------------------------------------------------------

@dataclass(frozen=True)
class SentenceAst:
    """One grammar node.  kind in {atom, const, not, and, or}.

    `name` is set for atoms, `value` for constants, `children` for the
    connectives (not: one child; and/or: two, left associative).
    """

    kind: str
    name: Optional[str] = None
    value: Optional[bool] = None
    children: tuple["SentenceAst", ...] = ()
    offset: Optional[int] = None  # source position, set on atoms


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<lpar>\()|(?P<rpar>\))|(?P<neg>~)|(?P<amp>&)|(?P<pipe>\|)"
    r"|(?P<word>[A-Za-z_][A-Za-z0-9_]*))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == m.start():
            # skip leading whitespace manually when the regex stalls
            if text[pos].isspace():
                pos += 1
                continue
            raise SentenceSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "pipe" and start + 1 < len(text) and text[start + 1] == "|":
            raise SentenceSyntaxError("'||' is not an operator; use a single '|' or 'or'", start)
        if kind == "word":
            if value == "not":
                kind = "neg"
            elif value == "and":
                kind = "amp"
            elif value == "or":
                kind = "pipe"
            elif value in ("T", "F"):
                kind = "const"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    # precedence: not > and > or, the binary connectives left associative
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> SentenceAst:
        node = self.parse_or()
        kind, value, offset = self.peek()
        if kind != "end":
            raise SentenceSyntaxError(f"unexpected {value!r}", offset)
        return node

    def parse_or(self) -> SentenceAst:
        node = self.parse_and()
        while self.peek()[0] == "pipe":
            self.take()
            rhs = self.parse_and()
            node = SentenceAst("or", children=(node, rhs))
        return node

    def parse_and(self) -> SentenceAst:
        node = self.parse_not()
        while self.peek()[0] == "amp":
            self.take()
            rhs = self.parse_not()
            node = SentenceAst("and", children=(node, rhs))
        return node

    def parse_not(self) -> SentenceAst:
        if self.peek()[0] == "neg":
            self.take()
            child = self.parse_not()
            return SentenceAst("not", children=(child,))
        return self.parse_primary()

    def parse_primary(self) -> SentenceAst:
        kind, value, offset = self.take()
        if kind == "lpar":
            node = self.parse_or()
            k2, v2, o2 = self.take()
            if k2 != "rpar":
                raise SentenceSyntaxError("expected ')'", o2)
            return node
        if kind == "const":
            return SentenceAst("const", value=(value == "T"))
        if kind == "word":
            return SentenceAst("atom", name=value, offset=offset)
        if kind == "end":
            raise SentenceSyntaxError("unexpected end of sentence", offset)
        raise SentenceSyntaxError(f"unexpected {value!r}", offset)


def parse_sentence(text: str) -> SentenceAst:
    """Parse sentence text to an AST.

    Grammar: constants T and F, identifiers, `~`/`not`, `&`/`and`,
    `|`/`or`, parentheses.  Raises SentenceSyntaxError carrying the byte
    offset of the problem.
    """
    return _Parser(_tokenize(text)).parse()


def evaluate(space: Space, ast: SentenceAst) -> Event:
    """Evaluate an AST to the event where it holds."""
    if ast.kind == "const":
        return space.top if ast.value else space.bottom
    if ast.kind == "atom":
        try:
            return space.atom_event(ast.name)
        except UnknownAtom:
            raise UnknownAtom(ast.name, ast.offset) from None
    if ast.kind == "not":
        return ~evaluate(space, ast.children[0])
    if ast.kind == "and":
        return evaluate(space, ast.children[0]) & evaluate(space, ast.children[1])
    if ast.kind == "or":
        return evaluate(space, ast.children[0]) | evaluate(space, ast.children[1])
    raise AlgebraError(f"unknown node kind {ast.kind!r}")


def parse_event(space: Space, text: str) -> Event:
    return evaluate(space, parse_sentence(text))


_PREC = {"or": 1, "and": 2, "not": 3, "atom": 4, "const": 4}


def render(ast: SentenceAst) -> str:
    """Canonical text for an AST; parse(render(x)) reproduces x."""
    if ast.kind == "const":
        return "T" if ast.value else "F"
    if ast.kind == "atom":
        return ast.name
    if ast.kind == "not":
        child = ast.children[0]
        inner = render(child)
        if _PREC[child.kind] < _PREC["not"]:
            inner = "(" + inner + ")"
        return "~" + inner
    op = " and " if ast.kind == "and" else " or "
    left, right = ast.children
    ltext = render(left)
    rtext = render(right)
    # left associative: the right child needs parens at equal precedence
    if _PREC[left.kind] < _PREC[ast.kind]:
        ltext = "(" + ltext + ")"
    if _PREC[right.kind] <= _PREC[ast.kind]:
        rtext = "(" + rtext + ")"
    return ltext + op + rtext


def iter_events(space: Space) -> Iterator[Event]:
    for mask in range(space.event_count):
        yield Event(space, mask)
