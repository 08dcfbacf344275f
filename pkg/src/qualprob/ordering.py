"""Orderings over events: complete rank tables, partial judgment sets,
exact rational distributions, and conditional rank structures.

A complete ordering stores one dense integer rank per event (index = event
bitmask), so comparisons are O(1) and invalid orderings are representable
on purpose: the axiom checkers in `axioms` take them apart.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .algebra import Event, Space, SpaceMismatch

Rational = Fraction


class Comparison(enum.Enum):
    Less = -1
    Equal = 0
    Greater = 1


class Relation(enum.Enum):
    GT = ">"
    GE = ">="
    EQ = "="


class OrderingError(ValueError):
    pass


class InvalidConditioner(OrderingError):
    """Conditioning on an event ranked with bottom is undefined."""


def _require_same_space(space: Space, *events: Event) -> None:
    for e in events:
        if e.space != space:
            raise SpaceMismatch("event from a different space")


@dataclass(frozen=True)
class CompleteOrdering:
    """A total preorder on all events of a space.

    `rank[mask]` is the rank of the event with that bitmask.  Ranks must be
    the contiguous integers 0..K.  Nothing else is assumed; orderings that
    break the belief axioms are valid data here.
    """

    space: Space
    rank: tuple[int, ...]

    def __post_init__(self):
        if len(self.rank) != self.space.event_count:
            raise OrderingError(
                f"rank table has {len(self.rank)} entries, space has "
                f"{self.space.event_count} events"
            )
        values = set(self.rank)
        if values != set(range(len(values))):
            raise OrderingError("ranks must be contiguous integers starting at 0")

    @property
    def class_count(self) -> int:
        return max(self.rank) + 1

    def rank_of(self, event: Event) -> int:
        _require_same_space(self.space, event)
        return self.rank[event.mask]

    def classes(self) -> list[list[int]]:
        """Event masks grouped by rank, ascending; masks sorted within a class."""
        out: list[list[int]] = [[] for _ in range(self.class_count)]
        for mask, r in enumerate(self.rank):
            out[r].append(mask)
        return out


def compare(o: CompleteOrdering, a: Event, b: Event) -> Comparison:
    """Sign of rank(a) - rank(b)."""
    _require_same_space(o.space, a, b)
    diff = o.rank[a.mask] - o.rank[b.mask]
    if diff < 0:
        return Comparison.Less
    if diff > 0:
        return Comparison.Greater
    return Comparison.Equal


def condition_compare(o: CompleteOrdering, a: Event, b: Event, c: Event) -> Comparison:
    """Compare a and b given c, defined as compare(a&c, b&c).

    Conditioning on an event ranked with bottom is invalid.
    """
    _require_same_space(o.space, a, b, c)
    if o.rank[c.mask] == o.rank[0]:
        raise InvalidConditioner(f"conditioner {c.label()} is ranked with bottom")
    return compare(o, a & c, b & c)


@dataclass(frozen=True)
class Judgment:
    """One asserted comparison lhs REL rhs."""

    lhs: Event
    rel: Relation
    rhs: Event
    id: str

    def __post_init__(self):
        _require_same_space(self.lhs.space, self.rhs)


@dataclass(frozen=True)
class PartialOrdering:
    """A finite set of comparison judgments over one space."""

    space: Space
    judgments: tuple[Judgment, ...]

    def __post_init__(self):
        ids = set()
        for j in self.judgments:
            _require_same_space(self.space, j.lhs, j.rhs)
            if j.id in ids:
                raise OrderingError(f"duplicate judgment id {j.id!r}")
            ids.add(j.id)


@dataclass(frozen=True)
class Distribution:
    """Exact rational probability masses over the worlds of a space."""

    space: Space
    masses: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.masses) != self.space.world_count:
            raise OrderingError("one mass per world required")
        for m in self.masses:
            if m < 0:
                raise OrderingError("masses must be nonnegative")
        if sum(self.masses) != 1:
            raise OrderingError("masses must sum to 1")

    def probability(self, event: Event) -> Fraction:
        _require_same_space(self.space, event)
        total = Fraction(0)
        mask = event.mask
        for i in range(self.space.world_count):
            if mask >> i & 1:
                total += self.masses[i]
        return total

    def event_probabilities(self) -> list[Fraction]:
        """probability per event mask, via a subset-sum sweep."""
        n = self.space.world_count
        probs = [Fraction(0)] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            probs[mask] = probs[mask ^ low] + self.masses[low.bit_length() - 1]
        return probs


def ordering_from_scores(space: Space, scores: Iterable) -> CompleteOrdering:
    """Dense-rank arbitrary comparable scores (one per event mask) into a
    contiguous CompleteOrdering; ties stay ties."""
    scores = list(scores)
    if len(scores) != space.event_count:
        raise OrderingError("one score per event required")
    distinct = sorted(set(scores))
    index = {v: i for i, v in enumerate(distinct)}
    return CompleteOrdering(space, tuple(index[v] for v in scores))


def induced_ordering(p: Distribution) -> CompleteOrdering:
    """The ordering that ranks events by p, ties exactly at equal probability."""
    return ordering_from_scores(p.space, p.event_probabilities())


@dataclass(frozen=True)
class ConditionalStructure:
    """Conditional ranks table[(a_mask, c_mask)] over a base ordering.

    Entries exist only for conditioners c not ranked with bottom.  The
    table may be partial; induced structures are total over valid
    conditioners.  Ranks are nonnegative integers on one shared scale, so
    values are comparable across different conditioners.
    """

    space: Space
    base: CompleteOrdering
    table: dict[tuple[int, int], int]

    def __post_init__(self):
        if self.base.space != self.space:
            raise SpaceMismatch("base ordering from a different space")
        bottom_rank = self.base.rank[0]
        for (a, c), value in self.table.items():
            if not (0 <= a < self.space.event_count and 0 <= c < self.space.event_count):
                raise OrderingError("table key out of range")
            if self.base.rank[c] == bottom_rank:
                raise InvalidConditioner(
                    f"table entry conditions on {Event(self.space, c).label()}, "
                    "which is ranked with bottom"
                )
            if not isinstance(value, int) or value < 0:
                raise OrderingError("conditional ranks are nonnegative integers")

    def valid_conditioners(self) -> list[int]:
        return sorted({c for (_, c) in self.table})

    def rank_of(self, a: Event, c: Event) -> Optional[int]:
        _require_same_space(self.space, a, c)
        return self.table.get((a.mask, c.mask))


def induced_conditional(p: Distribution) -> ConditionalStructure:
    """Conditional structure of a distribution.

    Domain: every (a, c) with p(c) > 0.  The rank of (a, c) is the index of
    the exact ratio p(a&c)/p(c) in the ascending list of all distinct ratios
    over the whole domain, which puts every conditioner on one scale.
    """
    probs = p.event_probabilities()
    space = p.space
    ratios: dict[tuple[int, int], Fraction] = {}
    for c in range(space.event_count):
        pc = probs[c]
        if pc == 0:
            continue
        for a in range(space.event_count):
            ratios[(a, c)] = probs[a & c] / pc
    distinct = sorted(set(ratios.values()))
    index = {v: i for i, v in enumerate(distinct)}
    table = {key: index[v] for key, v in ratios.items()}
    return ConditionalStructure(space, induced_ordering(p), table)
