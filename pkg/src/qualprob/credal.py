"""Set-valued belief: the polytope of distributions honoring a partial
ordering, queried by unanimity.

Consistency (is_empty) uses strict semantics through realize_partial.
Geometric queries run on the closed relaxation of strict judgments and
report attainment flags instead, because the open polytope has inf/sup
rather than min/max.  Attainment is decided exactly with a second
program on the optimum face: the optimum is attained iff that face still
contains a point satisfying every strict judgment strictly (and, for
conditional queries, giving the conditioner positive probability).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import CapExceeded, Event
from .axioms import Verdict, Witness
from .ordering import Distribution, PartialOrdering, Relation
from .ratlp import Constraint, Infeasible, LinearProgram, Optimal, Rel, Sense, solve
from .realize import NonRealizable, realize_partial

ZERO = Fraction(0)
ONE = Fraction(1)

PRADE_WORLD_CAP = 4


class EmptyCredalSet(ValueError):
    pass


class ZeroProbabilityConditioner(ValueError):
    pass


class UnboundedQuery(RuntimeError):
    """A probability query came back unbounded.  Impossible over a sound
    row set (normalization plus nonnegativity confine everything to the
    simplex), so this signals a broken constraint assembly."""


@dataclass(frozen=True)
class CredalSet:
    space: object
    judgments: PartialOrdering

    def __post_init__(self):
        if self.judgments.space != self.space:
            raise ValueError("judgments use a different space")


def from_judgments(po: PartialOrdering) -> CredalSet:
    return CredalSet(po.space, po)


@dataclass(frozen=True)
class Bounds:
    lower: Fraction
    upper: Fraction
    attained_lower: bool
    attained_upper: bool


@dataclass(frozen=True)
class Entailment:
    always: bool
    witness: Optional[Distribution]


def _mass_coeffs(space, mask: int, width: int, sign=ONE) -> list[Fraction]:
    row = [ZERO] * width
    for i in range(space.world_count):
        if mask & (1 << i):
            row[i] = sign
    return row


def _judgment_rows(cs: CredalSet, width: int) -> list[Constraint]:
    """Closed relaxation of the judgments over `width` variables (masses
    first, anything extra zero-padded).  Kept as a separate assembly step
    so tests can fault-inject broken constraint sets."""
    rows = []
    space = cs.space
    for j in cs.judgments.judgments:
        row = [ZERO] * width
        for i in range(space.world_count):
            bit = 1 << i
            if j.lhs.mask & bit:
                row[i] += ONE
            if j.rhs.mask & bit:
                row[i] -= ONE
        rel = Rel.EQ if j.rel == Relation.EQ else Rel.GE
        rows.append(Constraint(tuple(row), rel, ZERO))
    return rows


def _closed_rows(cs: CredalSet, width: int) -> list[Constraint]:
    space = cs.space
    rows = [Constraint(tuple(_mass_coeffs(space, space.top.mask, width)), Rel.EQ, ONE)]
    rows.extend(_judgment_rows(cs, width))
    return rows


def is_empty(cs: CredalSet) -> bool:
    return isinstance(realize_partial(cs.judgments), NonRealizable)


def _require_nonempty(cs: CredalSet) -> None:
    if is_empty(cs):
        raise EmptyCredalSet("no distribution honors the judgments")


def _optimize(cs: CredalSet, objective: list[Fraction], sense: Sense) -> Optimal:
    w = cs.space.world_count
    lp = LinearProgram(w, tuple(_closed_rows(cs, w)), tuple(objective), sense)
    out = solve(lp)
    if isinstance(out, Infeasible):
        raise EmptyCredalSet("no distribution honors the weak relaxation")
    if not isinstance(out, Optimal):
        raise UnboundedQuery("probability query escaped the simplex")
    return out


def entails(cs: CredalSet, a: Event, b: Event) -> Entailment:
    """Unanimity: does every distribution in the set put p(a) >= p(b)?
    Decided by minimizing p(a) - p(b) over the closed relaxation; a
    negative minimum yields the minimizer as counterexample witness."""
    _require_nonempty(cs)
    w = cs.space.world_count
    objective = [ZERO] * w
    for i in range(w):
        bit = 1 << i
        if a.mask & bit:
            objective[i] += ONE
        if b.mask & bit:
            objective[i] -= ONE
    out = _optimize(cs, objective, Sense.MINIMIZE)
    if out.value >= 0:
        return Entailment(True, None)
    witness = Distribution(cs.space, tuple(out.point))
    return Entailment(False, witness)


def _strict_members(cs: CredalSet):
    return [j for j in cs.judgments.judgments if j.rel == Relation.GT]


def _attained(cs: CredalSet, value_row: Constraint, extra_strict_cols=()) -> bool:
    """Is the optimum attained inside the strict region?  Solve a second
    program restricted to the optimum face, maximizing a fresh margin on
    every strict judgment (plus any extra columns that must be positive);
    attained iff the best margin is positive."""
    space = cs.space
    w = space.world_count
    base_width = len(value_row.coeffs)
    width = base_width + 1
    eps = base_width
    rows = []
    for con in _closed_rows(cs, base_width):
        rows.append(Constraint(con.coeffs + (ZERO,), con.rel, con.rhs))
    strict = _strict_members(cs)
    if not strict and not extra_strict_cols:
        return True
    for j in strict:
        row = [ZERO] * width
        for i in range(w):
            bit = 1 << i
            if j.lhs.mask & bit:
                row[i] += ONE
            if j.rhs.mask & bit:
                row[i] -= ONE
        row[eps] = -ONE
        rows.append(Constraint(tuple(row), Rel.GE, ZERO))
    for col in extra_strict_cols:
        row = [ZERO] * width
        row[col] = ONE
        row[eps] = -ONE
        rows.append(Constraint(tuple(row), Rel.GE, ZERO))
    rows.append(Constraint(value_row.coeffs + (ZERO,), value_row.rel, value_row.rhs))
    objective = [ZERO] * base_width + [ONE]
    lp = LinearProgram(width, tuple(rows), tuple(objective), Sense.MAXIMIZE)
    out = solve(lp)
    if isinstance(out, Infeasible):
        raise AssertionError("internal error: optimum face lost under relaxation")
    return out.value > 0


def bounds(cs: CredalSet, a: Event) -> Bounds:
    """Exact min and max of p(a) over the closed relaxation, with flags
    telling whether each optimum is attained by a strictly honoring
    distribution."""
    _require_nonempty(cs)
    w = cs.space.world_count
    objective = _mass_coeffs(cs.space, a.mask, w)
    lo = _optimize(cs, objective, Sense.MINIMIZE)
    hi = _optimize(cs, objective, Sense.MAXIMIZE)
    value = Constraint(tuple(objective), Rel.EQ, lo.value)
    lo_att = _attained(cs, value)
    value = Constraint(tuple(objective), Rel.EQ, hi.value)
    hi_att = _attained(cs, value)
    return Bounds(lo.value, hi.value, lo_att, hi_att)


def _cond_rows(cs: CredalSet, c: Event) -> tuple[list[Constraint], int]:
    """Change of variables q = p / p(c): judgment rows are homogeneous so
    they survive the scaling untouched; sum q = t recovers normalization
    and sum over c of q = 1 pins the scale.  Returns rows over w+1
    variables (q masses then t) and the t column index."""
    space = cs.space
    w = space.world_count
    width = w + 1
    t = w
    rows = _judgment_rows(cs, width)
    total = [ONE] * w + [-ONE]
    rows.append(Constraint(tuple(total), Rel.EQ, ZERO))
    scale = _mass_coeffs(space, c.mask, width)
    rows.append(Constraint(tuple(scale), Rel.EQ, ONE))
    return rows, t


def cond_bounds(cs: CredalSet, a: Event, c: Event) -> Bounds:
    """Exact bounds on p(a and c)/p(c), by linear-fractional optimization
    over the scaled polytope.  Attainment additionally requires p(c) > 0
    at the optimum, so the scale variable joins the strict columns."""
    _require_nonempty(cs)
    upper_c = bounds(cs, c).upper
    if upper_c == 0:
        raise ZeroProbabilityConditioner("p(conditioner) is 0 across the set")
    space = cs.space
    w = space.world_count
    width = w + 1
    rows, t = _cond_rows(cs, c)
    objective = _mass_coeffs(space, (a & c).mask, width)
    results = []
    for sense in (Sense.MINIMIZE, Sense.MAXIMIZE):
        lp = LinearProgram(width, tuple(rows), tuple(objective), sense)
        out = solve(lp)
        if not isinstance(out, Optimal):
            raise AssertionError("internal error: scaled program must have an optimum")
        results.append(out)
    lo, hi = results

    def cond_attained(value: Fraction) -> bool:
        space_rows, _ = _cond_rows(cs, c)
        base_width = width
        full = base_width + 1
        eps = base_width
        rows2 = [Constraint(con.coeffs + (ZERO,), con.rel, con.rhs) for con in space_rows]
        for j in _strict_members(cs):
            row = [ZERO] * full
            for i in range(w):
                bit = 1 << i
                if j.lhs.mask & bit:
                    row[i] += ONE
                if j.rhs.mask & bit:
                    row[i] -= ONE
            row[eps] = -ONE
            rows2.append(Constraint(tuple(row), Rel.GE, ZERO))
        trow = [ZERO] * full
        trow[t] = ONE
        trow[eps] = -ONE
        rows2.append(Constraint(tuple(trow), Rel.GE, ZERO))
        rows2.append(Constraint(tuple(objective) + (ZERO,), Rel.EQ, value))
        obj2 = [ZERO] * base_width + [ONE]
        lp2 = LinearProgram(full, tuple(rows2), tuple(obj2), Sense.MAXIMIZE)
        out2 = solve(lp2)
        if isinstance(out2, Infeasible):
            raise AssertionError("internal error: optimum face lost under relaxation")
        if not isinstance(out2, Optimal):
            # the scale variable is free to grow on this face, so any
            # positive margin is available
            return True
        return out2.value > 0

    return Bounds(lo.value, hi.value, cond_attained(lo.value), cond_attained(hi.value))


def _implication_pairs(space):
    top = space.top.mask
    for b_mask in range(top + 1):
        sub = b_mask
        while True:
            if sub != b_mask:
                yield sub, b_mask
            if sub == 0:
                break
            sub = (sub - 1) & b_mask


def prade_check(cs: CredalSet, sample: Optional[int] = None, seed: int = 0) -> Verdict:
    """The probability-theoretic sanity criteria over the whole set:
    p(F) pinned to 0, p(T) to 1, and unanimous monotonicity along every
    implication pair.  A healthy engine always passes on a nonempty set;
    the check exists to catch a broken one."""
    _require_nonempty(cs)
    space = cs.space
    try:
        b = bounds(cs, space.bottom)
        if (b.lower, b.upper) != (ZERO, ZERO):
            return Verdict(False, Witness((space.bottom,), f"p(F) spans {b.lower}..{b.upper}"))
        tbl = bounds(cs, space.top)
        if (tbl.lower, tbl.upper) != (ONE, ONE):
            return Verdict(False, Witness((space.top,), f"p(T) spans {tbl.lower}..{tbl.upper}"))
    except UnboundedQuery as err:
        return Verdict(False, Witness((), str(err)))

    if space.world_count > PRADE_WORLD_CAP and sample is None:
        raise CapExceeded(
            f"{space.world_count} worlds exceeds the implication-pair scan cap "
            f"of {PRADE_WORLD_CAP}; pass a sample size"
        )
    pairs = _implication_pairs(space)
    note = None
    if space.world_count > PRADE_WORLD_CAP:
        import random

        rng = random.Random(seed)
        top = space.top.mask
        sampled = []
        for _ in range(sample):
            b_mask = rng.randrange(top + 1)
            a_mask = b_mask & rng.randrange(top + 1)
            if a_mask != b_mask:
                sampled.append((a_mask, b_mask))
        pairs = sampled
        note = f"sampled {len(sampled)} implication pairs"
    for a_mask, b_mask in pairs:
        a = Event(space, a_mask)
        bb = Event(space, b_mask)
        try:
            got = entails(cs, bb, a)
        except UnboundedQuery as err:
            return Verdict(False, Witness((a, bb), str(err)))
        if not got.always:
            return Verdict(
                False,
                Witness((a, bb), "implication does not force p(a) <= p(b) across the set"),
            )
    return Verdict(True, None, note)
