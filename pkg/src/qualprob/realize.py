"""Deciding whether an ordering has an agreeing distribution.

Agreement is exact: r(a) >= r(b) iff p(a) >= p(b), so strict rank gaps
must be realized strictly.  Strictness is operationalized by a single
shared margin variable epsilon, maximized; an ordering is realizable iff
the optimum is positive.  A weakly feasible system whose best margin is
zero is therefore still NonRealizable.

Programs stay small by construction: one equality chain per rank class
and one separation row per adjacent class pair; transitivity supplies the
rest (the all-pairs variant exists to test that equivalence).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Event, SpaceMismatch
from .ordering import (
    CompleteOrdering,
    Distribution,
    Judgment,
    PartialOrdering,
    Relation,
    induced_ordering,
)
from .ratlp import (
    Constraint,
    Infeasible,
    LinearProgram,
    Optimal,
    Rel,
    Sense,
    solve,
)

ZERO = Fraction(0)
ONE = Fraction(1)

NORMALIZATION = ("norm",)
PIN = ("pin",)


@dataclass(frozen=True)
class Realization:
    """An agreeing distribution plus the maximal common strict-gap margin.

    For complete orderings the margin is always positive; partial
    orderings without strict judgments realize with margin 0.
    """

    distribution: Distribution
    margin: Fraction


@dataclass(frozen=True)
class NonRealizable:
    """Farkas multipliers over the generated rows, mapped back to the
    comparisons that clash.  `certificate` is aligned with the rows of the
    program that produced it; `conflict` keeps only the comparisons
    carrying a nonzero multiplier, and that subset alone is already
    non-realizable."""

    certificate: tuple[Fraction, ...]
    conflict: tuple[Judgment, ...]


def _difference_row(space, a_mask: int, b_mask: int, width: int) -> list[Fraction]:
    """Coefficients of p(a) - p(b) over `width` variables (masses first)."""
    row = [ZERO] * width
    for i in range(space.world_count):
        bit = 1 << i
        if a_mask & bit:
            row[i] += ONE
        if b_mask & bit:
            row[i] -= ONE
    return row


def build_program(o: CompleteOrdering, *, all_pairs: bool = False) -> LinearProgram:
    """Encode agreement with `o` as a max-margin program.

    Variables: one mass per world, then epsilon; all nonnegative by the
    solver convention.  Rows: total mass = 1; p(a) = p(b) along each rank
    class chain; p(upper) - p(lower) >= epsilon for adjacent class
    representatives.  With all_pairs=True every tied pair and every
    strictly ranked pair gets its own row instead.
    """
    space = o.space
    w = space.world_count
    width = w + 1
    eps = w
    rows: list[Constraint] = []
    notes: list[tuple] = []

    coeffs = [ONE] * w + [ZERO]
    rows.append(Constraint(tuple(coeffs), Rel.EQ, ONE))
    notes.append(NORMALIZATION)

    classes = o.classes()

    def eq_row(a: int, b: int) -> None:
        row = _difference_row(space, a, b, width)
        rows.append(Constraint(tuple(row), Rel.EQ, ZERO))
        notes.append(("eq", a, b))

    def gap_row(upper: int, lower: int) -> None:
        row = _difference_row(space, upper, lower, width)
        row[eps] = -ONE
        rows.append(Constraint(tuple(row), Rel.GE, ZERO))
        notes.append(("gap", upper, lower))

    if all_pairs:
        for cls in classes:
            for i, a in enumerate(cls):
                for b in cls[i + 1 :]:
                    eq_row(a, b)
        for hi in range(len(classes)):
            for lo in range(hi):
                for a in classes[hi]:
                    for b in classes[lo]:
                        gap_row(a, b)
    else:
        for cls in classes:
            for a, b in zip(cls, cls[1:]):
                eq_row(a, b)
        for lower_cls, upper_cls in zip(classes, classes[1:]):
            gap_row(upper_cls[0], lower_cls[0])

    objective = [ZERO] * w + [ONE]
    return LinearProgram(
        width, tuple(rows), tuple(objective), Sense.MAXIMIZE, tuple(notes)
    )


def _event(space, mask: int) -> Event:
    return Event(space, mask)


def _conflict_from_support(
    lp: LinearProgram, multipliers, space
) -> tuple[Judgment, ...]:
    out = []
    for idx, (note, m) in enumerate(zip(lp.row_notes, multipliers)):
        if m == 0 or note in (NORMALIZATION, PIN):
            continue
        if note[0] == "eq":
            out.append(
                Judgment(_event(space, note[1]), Relation.EQ, _event(space, note[2]), f"r{idx}")
            )
        elif note[0] == "gap":
            out.append(
                Judgment(_event(space, note[1]), Relation.GT, _event(space, note[2]), f"r{idx}")
            )
        else:  # ("judgment", Judgment)
            out.append(note[1])
    return tuple(out)


def realize_complete(o: CompleteOrdering):
    """Maximal-margin realization of a complete ordering, or a certificate.

    The returned distribution is the solver's deterministic optimum and
    its induced ordering is verified equal to `o` before returning.
    """
    lp = build_program(o)
    out = solve(lp)
    if isinstance(out, Infeasible):
        return NonRealizable(out.certificate, _conflict_from_support(lp, out.certificate, o.space))
    if not isinstance(out, Optimal):
        raise AssertionError("a margin program is never unbounded")
    if out.value <= 0:
        return NonRealizable(out.dual, _conflict_from_support(lp, out.dual, o.space))
    d = Distribution(o.space, tuple(out.point[: o.space.world_count]))
    if induced_ordering(d).rank != o.rank:
        raise AssertionError("internal error: realization does not induce the input ordering")
    return Realization(d, out.value)


def agrees(p: Distribution, o: CompleteOrdering) -> bool:
    """True iff every pairwise rank comparison matches the probability
    comparison; with dense ranks that is rank-vector equality."""
    if p.space is not o.space and p.space != o.space:
        raise SpaceMismatch("distribution and ordering use different spaces")
    return induced_ordering(p).rank == o.rank


def _partial_program(po: PartialOrdering) -> LinearProgram:
    space = po.space
    w = space.world_count
    width = w + 1
    eps = w
    rows: list[Constraint] = []
    notes: list[tuple] = []

    rows.append(Constraint(tuple([ONE] * w + [ZERO]), Rel.EQ, ONE))
    notes.append(NORMALIZATION)

    has_strict = any(j.rel == Relation.GT for j in po.judgments)
    if not has_strict:
        pin = [ZERO] * width
        pin[eps] = ONE
        rows.append(Constraint(tuple(pin), Rel.EQ, ZERO))
        notes.append(PIN)

    for j in po.judgments:
        row = _difference_row(space, j.lhs.mask, j.rhs.mask, width)
        if j.rel == Relation.GT:
            row[eps] = -ONE
            rows.append(Constraint(tuple(row), Rel.GE, ZERO))
        elif j.rel == Relation.GE:
            rows.append(Constraint(tuple(row), Rel.GE, ZERO))
        else:
            rows.append(Constraint(tuple(row), Rel.EQ, ZERO))
        notes.append(("judgment", j))

    objective = [ZERO] * w + [ONE]
    return LinearProgram(
        width, tuple(rows), tuple(objective), Sense.MAXIMIZE, tuple(notes)
    )


def _satisfies(p: Distribution, j: Judgment) -> bool:
    pa = p.probability(j.lhs)
    pb = p.probability(j.rhs)
    if j.rel == Relation.GT:
        return pa > pb
    if j.rel == Relation.GE:
        return pa >= pb
    return pa == pb


def realize_partial(po: PartialOrdering):
    """A distribution satisfying every judgment as asserted (strict ones
    strictly), with the margin maximized over strict rows; NonRealizable
    with a conflict subset otherwise.  No judgments at all means the whole
    simplex qualifies and the uniform distribution is returned."""
    space = po.space
    w = space.world_count
    if not po.judgments:
        uniform = Distribution(space, tuple([Fraction(1, w)] * w))
        return Realization(uniform, ZERO)

    lp = _partial_program(po)
    out = solve(lp)
    if isinstance(out, Infeasible):
        return NonRealizable(out.certificate, _conflict_from_support(lp, out.certificate, space))
    if not isinstance(out, Optimal):
        raise AssertionError("a margin program is never unbounded")
    has_strict = any(j.rel == Relation.GT for j in po.judgments)
    if has_strict and out.value <= 0:
        return NonRealizable(out.dual, _conflict_from_support(lp, out.dual, space))
    d = Distribution(space, tuple(out.point[:w]))
    for j in po.judgments:
        if not _satisfies(d, j):
            raise AssertionError("internal error: solver point violates an asserted judgment")
    return Realization(d, out.value)
