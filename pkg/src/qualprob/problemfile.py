"""Line-oriented problem files.

Sections, introduced by a `name:` header line:

    worlds: w1 w2 w3        # or atoms: x y z (names inline, nowhere else)
    certain_true:           # one sentence per line
    certain_false:
    order:                  # SENTENCE REL SENTENCE, REL in < <= = >= >
    ranks:                  # SENTENCE : INTEGER, all events covered
    cond:                   # (SENT | SENT) REL (SENT | SENT)

`#` starts a comment anywhere; blank lines are ignored.  A file carries
either `order:` (a partial ordering) or `ranks:` (a complete ordering,
with rank integers dense-ranked, so any monotone integer labels work),
never both.  `cond:` needs `ranks:` for its base ordering.  Inside a
cond group the conditioning bar must be the only depth-0 `|`; sentences
that use `|` as disjunction need their own parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .algebra import (
    AlgebraError,
    Event,
    SentenceSyntaxError,
    Space,
    UnknownAtom,
    parse_event,
)
from .ordering import (
    CompleteOrdering,
    ConditionalStructure,
    Judgment,
    OrderingError,
    PartialOrdering,
    Relation,
)


class ProblemFileError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def locate(self, filename: str) -> str:
        return f"{filename}:{self.line}:{self.column}: {self.message}"


@dataclass(frozen=True)
class Problem:
    space: Space
    complete: Optional[CompleteOrdering]
    partial: Optional[PartialOrdering]
    conditional: Optional[ConditionalStructure]
    certain_true: tuple[Event, ...]
    certain_false: tuple[Event, ...]

    @property
    def kind(self) -> str:
        return "ranks" if self.complete is not None else "order"


_SECTIONS = ("atoms", "worlds", "certain_true", "certain_false", "order", "ranks", "cond")
_HEADER_RE = re.compile(r"^(\w+):(.*)$")
_REL_RE = re.compile(r"<=|>=|[=<>]")

# file relation -> (normalized relation, operands swapped)
_REL_MAP = {
    ">": (Relation.GT, False),
    ">=": (Relation.GE, False),
    "=": (Relation.EQ, False),
    "<": (Relation.GT, True),
    "<=": (Relation.GE, True),
}


def _parse_event_at(space, text: str, lineno: int, col0: int) -> Event:
    """Parse a sentence substring, shifting error offsets to file columns."""
    stripped = text.strip()
    lead = len(text) - len(text.lstrip())
    try:
        return parse_event(space, stripped)
    except SentenceSyntaxError as err:
        raise ProblemFileError(err.message, lineno, col0 + lead + err.offset) from err
    except UnknownAtom as err:
        raise ProblemFileError(
            f"unknown atom '{err.name}'", lineno, col0 + lead + (err.offset or 0)
        ) from err


def parse_problem(text: str) -> Problem:
    sections: dict[str, list[tuple[int, str]]] = {}
    space_names: list[str] = []
    space_mode = None
    space_line = None
    header_lines: dict[str, int] = {}
    current = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        m = _HEADER_RE.match(line.strip())
        if m and m.group(1) in _SECTIONS:
            name, rest = m.group(1), m.group(2)
            if name in ("atoms", "worlds"):
                if space_mode is not None:
                    raise ProblemFileError("space declared twice", lineno)
                space_mode = name
                space_line = lineno
                space_names = rest.split()
                if not space_names:
                    raise ProblemFileError(f"{name}: needs at least one name", lineno)
                current = None
                continue
            if rest.strip():
                raise ProblemFileError(f"{name}: takes no inline content", lineno)
            if name in sections:
                raise ProblemFileError(f"section {name}: appears twice", lineno)
            if space_mode is None:
                raise ProblemFileError("declare atoms: or worlds: first", lineno)
            sections[name] = []
            header_lines[name] = lineno
            current = name
            continue
        if current is None:
            raise ProblemFileError("content outside any section", lineno)
        sections[current].append((lineno, line))

    if space_mode is None:
        raise ProblemFileError("missing atoms: or worlds: declaration", 1)
    if "order" in sections and "ranks" in sections:
        later = max(header_lines["order"], header_lines["ranks"])
        raise ProblemFileError("a file carries either order: or ranks:, not both", later)
    if "order" not in sections and "ranks" not in sections:
        raise ProblemFileError("missing order: or ranks: section", space_line)
    if "cond" in sections and "ranks" not in sections:
        raise ProblemFileError("cond: needs a ranks: base ordering", header_lines["cond"])

    try:
        space = Space(space_mode, tuple(space_names))
    except AlgebraError as err:
        raise ProblemFileError(str(err), space_line) from err

    def event_list(name: str) -> tuple[Event, ...]:
        out = []
        for lineno, line in sections.get(name, []):
            out.append(_parse_event_at(space, line, lineno, 1))
        return tuple(out)

    certain_true = event_list("certain_true")
    certain_false = event_list("certain_false")

    complete = None
    partial = None
    conditional = None

    if "order" in sections:
        judgments = []
        for i, (lineno, line) in enumerate(sections["order"], start=1):
            m = _REL_RE.search(line)
            if not m:
                raise ProblemFileError("expected SENTENCE REL SENTENCE", lineno)
            lhs = _parse_event_at(space, line[: m.start()], lineno, 1)
            rhs = _parse_event_at(space, line[m.end() :], lineno, m.end() + 1)
            rel, swap = _REL_MAP[m.group(0)]
            if swap:
                lhs, rhs = rhs, lhs
            judgments.append(Judgment(lhs, rel, rhs, f"j{i}"))
        partial = PartialOrdering(space, tuple(judgments))

    if "ranks" in sections:
        seen: dict[int, int] = {}
        for lineno, line in sections["ranks"]:
            if ":" not in line:
                raise ProblemFileError("expected SENTENCE : INTEGER", lineno)
            sent, _, num = line.rpartition(":")
            ev = _parse_event_at(space, sent, lineno, 1)
            try:
                value = int(num.strip())
            except ValueError:
                raise ProblemFileError(f"bad rank integer {num.strip()!r}", lineno) from None
            if value < 0:
                raise ProblemFileError("ranks are non-negative", lineno)
            if ev.mask in seen:
                raise ProblemFileError(f"event {ev.label()} ranked twice", lineno)
            seen[ev.mask] = value
        missing = [m for m in range(space.event_count) if m not in seen]
        if missing:
            labels = ", ".join(Event(space, m).label() for m in missing[:4])
            raise ProblemFileError(
                f"ranks: must cover every event; missing {labels}"
                + (" ..." if len(missing) > 4 else ""),
                sections["ranks"][0][0],
            )
        levels = sorted(set(seen.values()))
        dense = {v: i for i, v in enumerate(levels)}
        complete = CompleteOrdering(
            space, tuple(dense[seen[m]] for m in range(space.event_count))
        )

    if "cond" in sections:
        conditional = _parse_cond(space, complete, sections["cond"])

    return Problem(space, complete, partial, conditional, certain_true, certain_false)


def _split_group(space, group: str, lineno: int, col0: int) -> tuple[int, int]:
    """A cond group body 'SENT | SENT' -> (event mask, conditioner mask)."""
    depth = 0
    bar = None
    for i, ch in enumerate(group):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "|" and depth == 0:
            if i + 1 < len(group) and group[i + 1] == "|":
                raise ProblemFileError("'||' is not an operator", lineno, col0 + i)
            if bar is not None:
                raise ProblemFileError(
                    "ambiguous conditioning bar; parenthesize '|' used as disjunction",
                    lineno,
                    col0 + i,
                )
            bar = i
    if bar is None:
        raise ProblemFileError("cond group needs 'SENTENCE | SENTENCE'", lineno, col0)
    a = _parse_event_at(space, group[:bar], lineno, col0)
    c = _parse_event_at(space, group[bar + 1 :], lineno, col0 + bar + 1)
    return a.mask, c.mask


def _read_group(line: str, start: int, lineno: int) -> tuple[str, int]:
    """Consume a parenthesized group starting at `start`; returns (body, next index)."""
    i = start
    while i < len(line) and line[i].isspace():
        i += 1
    if i >= len(line) or line[i] != "(":
        raise ProblemFileError("expected '(' opening a cond group", lineno, i + 1)
    depth = 0
    for j in range(i, len(line)):
        if line[j] == "(":
            depth += 1
        elif line[j] == ")":
            depth -= 1
            if depth == 0:
                return line[i + 1 : j], j + 1
    raise ProblemFileError("unbalanced '(' in cond line", lineno, i + 1)


def _parse_cond(space, base: CompleteOrdering, lines) -> ConditionalStructure:
    GE, GT = 0, 1
    nodes: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    edges: list[tuple[int, int, int]] = []

    def node(pair) -> int:
        if pair not in index:
            index[pair] = len(nodes)
            nodes.append(pair)
        return index[pair]

    for lineno, line in lines:
        left_body, pos = _read_group(line, 0, lineno)
        left_col = line.index("(") + 2
        rest = line[pos:]
        m = _REL_RE.search(rest)
        if not m or rest[: m.start()].strip():
            raise ProblemFileError("expected REL between cond groups", lineno, pos + 1)
        right_body, end = _read_group(line, pos + m.end(), lineno)
        if line[end:].strip():
            raise ProblemFileError("trailing content after cond comparison", lineno, end + 1)
        right_col = pos + m.end() + (line[pos + m.end():].index("(") + 2)
        u = node(_split_group(space, left_body, lineno, left_col))
        v = node(_split_group(space, right_body, lineno, right_col))
        rel, swap = _REL_MAP[m.group(0)]
        if swap:
            u, v = v, u
        if rel == Relation.EQ:
            edges.append((u, v, GE))
            edges.append((v, u, GE))
        elif rel == Relation.GE:
            edges.append((u, v, GE))
        else:
            edges.append((u, v, GT))

    n = len(nodes)
    first_line = lines[0][0]
    best = [[None] * n for _ in range(n)]
    for i in range(n):
        best[i][i] = GE
    for u, v, s in edges:
        if best[u][v] is None or best[u][v] < s:
            best[u][v] = s
    for k in range(n):
        for i in range(n):
            if best[i][k] is None:
                continue
            for j in range(n):
                if best[k][j] is None:
                    continue
                s = max(best[i][k], best[k][j])
                if best[i][j] is None or best[i][j] < s:
                    best[i][j] = s

    def pair_label(i: int) -> str:
        a, c = nodes[i]
        return f"({Event(space, a).label()} | {Event(space, c).label()})"

    for i in range(n):
        if best[i][i] == GT:
            raise ProblemFileError(
                f"cond comparisons are inconsistent around {pair_label(i)}", first_line
            )
    for i in range(n):
        for j in range(i + 1, n):
            fwd, back = best[i][j], best[j][i]
            if fwd is None and back is None:
                raise ProblemFileError(
                    f"cond comparisons leave {pair_label(i)} and {pair_label(j)} unordered",
                    first_line,
                )
            if (fwd == GE and back is None) or (back == GE and fwd is None):
                raise ProblemFileError(
                    f"cond comparisons leave {pair_label(i)} vs {pair_label(j)} undetermined "
                    "(related only by >=; add = or a strict comparison)",
                    first_line,
                )

    # group into ties, order classes, dense-rank
    roots = list(range(n))

    def find(x):
        while roots[x] != x:
            roots[x] = roots[roots[x]]
            x = roots[x]
        return x

    for i in range(n):
        for j in range(n):
            if best[i][j] == GE and best[j][i] == GE:
                roots[find(i)] = find(j)
    reps = sorted({find(i) for i in range(n)}, key=lambda r: sum(
        1 for other in range(n) if best[r][other] == GT
    ))
    level_of = {r: lvl for lvl, r in enumerate(reps)}
    table = {nodes[i]: level_of[find(i)] for i in range(n)}
    try:
        return ConditionalStructure(space, base, table)
    except OrderingError as err:
        raise ProblemFileError(str(err), first_line) from err
