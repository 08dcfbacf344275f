"""Exact linear programming over rationals.

`solve` is a dense two-phase simplex on Fraction arithmetic with the
smallest-index (Bland) pivot rule, so runs are deterministic and cycling
is impossible.  Every outcome carries a certificate that can be verified
by exact substitution: a feasible optimal point plus dual multipliers, a
Farkas combination for infeasibility, or an improving ray.

Conventions, fixed for every caller:
- variables are implicitly nonnegative (classic standard form);
- constraints are weak; strict inequalities must be encoded upstream via
  an explicit margin variable;
- certificate multipliers are indexed by original constraint row and apply
  to the row as written: nonnegative for GE rows, nonpositive for LE rows,
  unrestricted for EQ rows.

`fourier_motzkin_feasible` answers feasibility for small systems by
variable elimination.  It shares the conventions above but none of the
simplex machinery, so the two routes stay independent checks of each
other.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class Rel(enum.Enum):
    LE = "<="
    GE = ">="
    EQ = "="


class Sense(enum.Enum):
    MAXIMIZE = "max"
    MINIMIZE = "min"


class DimensionMismatch(ValueError):
    pass


class SizeCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: Rel
    rhs: Fraction


@dataclass(frozen=True)
class LinearProgram:
    """A linear program in standard form (variables implicitly >= 0).

    `row_notes` is optional caller metadata, one entry per constraint (or
    empty); the solver ignores it, but certificate consumers use it to map
    multipliers back to whatever the rows encode.
    """

    variable_count: int
    constraints: tuple[Constraint, ...]
    objective: tuple[Fraction, ...]
    sense: Sense
    row_notes: tuple = ()

    def __post_init__(self):
        if len(self.objective) != self.variable_count:
            raise DimensionMismatch("objective length != variable count")
        for con in self.constraints:
            if len(con.coeffs) != self.variable_count:
                raise DimensionMismatch("constraint length != variable count")
        if self.row_notes and len(self.row_notes) != len(self.constraints):
            raise DimensionMismatch("row_notes length != constraint count")


@dataclass(frozen=True)
class Optimal:
    value: Fraction
    point: tuple[Fraction, ...]
    dual: tuple[Fraction, ...]


@dataclass(frozen=True)
class Infeasible:
    certificate: tuple[Fraction, ...]


@dataclass(frozen=True)
class Unbounded:
    ray: tuple[Fraction, ...]


LpOutcome = object  # Optimal | Infeasible | Unbounded


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def make_program(n, rows, objective, sense, row_notes=()) -> LinearProgram:
    """Convenience builder accepting plain ints; rows are (coeffs, rel, rhs)."""
    cons = tuple(
        Constraint(tuple(frac(c) for c in coeffs), rel, frac(rhs))
        for coeffs, rel, rhs in rows
    )
    return LinearProgram(
        n, cons, tuple(frac(c) for c in objective), sense, tuple(row_notes)
    )


# --- verification by substitution ------------------------------------------

def check_point(lp: LinearProgram, point: Sequence[Fraction]) -> bool:
    if len(point) != lp.variable_count:
        return False
    if any(x < 0 for x in point):
        return False
    for con in lp.constraints:
        lhs = sum(c * x for c, x in zip(con.coeffs, point))
        if con.rel == Rel.LE and lhs > con.rhs:
            return False
        if con.rel == Rel.GE and lhs < con.rhs:
            return False
        if con.rel == Rel.EQ and lhs != con.rhs:
            return False
    return True


def _multiplier_signs_ok(lp: LinearProgram, mult: Sequence[Fraction]) -> bool:
    if len(mult) != len(lp.constraints):
        return False
    for m, con in zip(mult, lp.constraints):
        if con.rel == Rel.GE and m < 0:
            return False
        if con.rel == Rel.LE and m > 0:
            return False
    return True


def verify_farkas(lp: LinearProgram, certificate: Sequence[Fraction]) -> bool:
    """The certificate combines the rows into 0 >= positive: a nonnegative
    combination (per row orientation) whose coefficient vector is <= 0 in
    every coordinate while the combined rhs is > 0.  With x >= 0 no point
    can satisfy all rows."""
    if not _multiplier_signs_ok(lp, certificate):
        return False
    for j in range(lp.variable_count):
        combo = sum(m * con.coeffs[j] for m, con in zip(certificate, lp.constraints))
        if combo > 0:
            return False
    rhs = sum(m * con.rhs for m, con in zip(certificate, lp.constraints))
    return rhs > 0


def verify_dual_bound(lp: LinearProgram, dual: Sequence[Fraction]) -> Optional[Fraction]:
    """If the multipliers are a valid dual certificate, return the bound
    they prove on the objective (an upper bound when maximizing, a lower
    bound when minimizing); otherwise None."""
    if not _multiplier_signs_ok(lp, dual):
        return None
    for j in range(lp.variable_count):
        combo = sum(m * con.coeffs[j] for m, con in zip(dual, lp.constraints))
        if lp.sense == Sense.MAXIMIZE:
            if combo > -lp.objective[j]:
                return None
        else:
            if combo > lp.objective[j]:
                return None
    rhs = sum(m * con.rhs for m, con in zip(dual, lp.constraints))
    return -rhs if lp.sense == Sense.MAXIMIZE else rhs


def verify_ray(lp: LinearProgram, ray: Sequence[Fraction]) -> bool:
    if len(ray) != lp.variable_count or any(d < 0 for d in ray):
        return False
    for con in lp.constraints:
        drift = sum(c * d for c, d in zip(con.coeffs, ray))
        if con.rel == Rel.LE and drift > 0:
            return False
        if con.rel == Rel.GE and drift < 0:
            return False
        if con.rel == Rel.EQ and drift != 0:
            return False
    gain = sum(c * d for c, d in zip(lp.objective, ray))
    return gain > 0 if lp.sense == Sense.MAXIMIZE else gain < 0


# --- simplex ----------------------------------------------------------------

class _Tableau:
    def __init__(self, lp: LinearProgram):
        n = lp.variable_count
        m = len(lp.constraints)
        self.n = n
        self.flip = []
        rels = []
        rows = []
        for con in lp.constraints:
            f = -1 if con.rhs < 0 else 1
            self.flip.append(f)
            coeffs = [frac(c) * f for c in con.coeffs]
            rel = con.rel
            if f < 0 and rel != Rel.EQ:
                rel = Rel.GE if rel == Rel.LE else Rel.LE
            rels.append(rel)
            rows.append((coeffs, frac(con.rhs) * f))

        # column layout: structural | slack/surplus | artificial
        self.slack_col = [None] * m
        self.art_col = [None] * m
        col = n
        for i, rel in enumerate(rels):
            if rel in (Rel.LE, Rel.GE):
                self.slack_col[i] = col
                col += 1
        self.first_art = col
        for i, rel in enumerate(rels):
            if rel in (Rel.GE, Rel.EQ):
                self.art_col[i] = col
                col += 1
        self.cols = col

        self.rows: list[list[Fraction]] = []
        self.basis: list[int] = []
        self.init_col = [None] * m  # identity column per row, for duals
        self.row_of_con = list(range(m))  # original row -> tableau row (None if dropped)
        for i, (rel, (coeffs, rhs)) in enumerate(zip(rels, rows)):
            row = [ZERO] * (self.cols + 1)
            for j, c in enumerate(coeffs):
                row[j] = c
            row[-1] = rhs
            if self.slack_col[i] is not None:
                row[self.slack_col[i]] = ONE if rel == Rel.LE else -ONE
            if self.art_col[i] is not None:
                row[self.art_col[i]] = ONE
                self.basis.append(self.art_col[i])
                self.init_col[i] = self.art_col[i]
            else:
                self.basis.append(self.slack_col[i])
                self.init_col[i] = self.slack_col[i]
            self.rows.append(row)

    def pivot(self, r: int, col: int, cost: list[Fraction]) -> None:
        row = self.rows[r]
        inv = ONE / row[col]
        if inv != 1:
            self.rows[r] = row = [v * inv for v in row]
        for other in self.rows:
            if other is row:
                continue
            factor = other[col]
            if factor:
                for j in range(self.cols + 1):
                    if row[j]:
                        other[j] -= factor * row[j]
        factor = cost[col]
        if factor:
            for j in range(self.cols + 1):
                if row[j]:
                    cost[j] -= factor * row[j]
        self.basis[r] = col

    def run(self, cost: list[Fraction], enterable_limit: int) -> Optional[int]:
        """Bland loop; returns the entering column on unboundedness, else
        None at optimality. `enterable_limit` bounds candidate columns."""
        while True:
            enter = None
            for j in range(enterable_limit):
                if cost[j] < 0:
                    enter = j
                    break
            if enter is None:
                return None
            leave = None
            best_ratio = None
            for r, row in enumerate(self.rows):
                t = row[enter]
                if t > 0:
                    ratio = row[-1] / t
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[r] < self.basis[leave])
                    ):
                        best_ratio = ratio
                        leave = r
            if leave is None:
                return enter
            self.pivot(leave, enter, cost)

    def reduced_costs(self, raw_cost: list[Fraction]) -> list[Fraction]:
        cost = list(raw_cost) + [ZERO]
        for r, b in enumerate(self.basis):
            factor = cost[b]
            if factor:
                row = self.rows[r]
                for j in range(self.cols + 1):
                    if row[j]:
                        cost[j] -= factor * row[j]
        return cost

    def duals(self, raw_cost: list[Fraction], cost: list[Fraction]) -> list[Fraction]:
        """Multipliers per original row: y_i = q[init_col_i] - reduced[init_col_i],
        flipped back to the original row orientation."""
        out = []
        for i, col in enumerate(self.init_col):
            y = raw_cost[col] - cost[col]
            out.append(y * self.flip[i])
        return out

    def drop_redundant_and_drive_out(self) -> None:
        r = 0
        while r < len(self.rows):
            b = self.basis[r]
            if b < self.first_art:
                r += 1
                continue
            row = self.rows[r]
            pivot_col = None
            for j in range(self.first_art):
                if row[j] != 0:
                    pivot_col = j
                    break
            if pivot_col is None:
                # the row is 0 = 0 over real columns: redundant
                del self.rows[r]
                del self.basis[r]
                for i, rr in enumerate(self.row_of_con):
                    if rr is not None and rr > r:
                        self.row_of_con[i] = rr - 1
                    elif rr == r:
                        self.row_of_con[i] = None
                continue
            self.pivot(r, pivot_col, [ZERO] * (self.cols + 1))
            r += 1


def solve(lp: LinearProgram) -> LpOutcome:
    """Exact two-phase simplex.  Deterministic via Bland's smallest-index
    rule.  Outcomes carry substitution-checkable certificates."""
    tab = _Tableau(lp)
    n = lp.variable_count

    # phase 1: minimize the artificials
    raw1 = [ZERO] * tab.cols
    for col in range(tab.first_art, tab.cols):
        raw1[col] = ONE
    cost1 = tab.reduced_costs(raw1)
    enter = tab.run(cost1, tab.cols)
    if enter is not None:
        raise AssertionError("phase 1 objective is bounded below; no ray possible")
    infeasibility = -cost1[-1]
    if infeasibility > 0:
        cert = tuple(tab.duals(raw1, cost1))
        if not verify_farkas(lp, cert):
            raise AssertionError("internal error: phase-1 certificate failed verification")
        return Infeasible(cert)

    tab.drop_redundant_and_drive_out()

    # phase 2 on the real objective (internally always a minimization)
    raw2 = [ZERO] * tab.cols
    for j in range(n):
        c = frac(lp.objective[j])
        raw2[j] = -c if lp.sense == Sense.MAXIMIZE else c
    cost2 = tab.reduced_costs(raw2)
    enter = tab.run(cost2, tab.first_art)
    if enter is not None:
        direction = [ZERO] * tab.cols
        direction[enter] = ONE
        for r, b in enumerate(tab.basis):
            direction[b] = -tab.rows[r][enter]
        ray = tuple(direction[:n])
        if not verify_ray(lp, ray):
            raise AssertionError("internal error: ray failed verification")
        return Unbounded(ray)

    point = [ZERO] * n
    for r, b in enumerate(tab.basis):
        if b < n:
            point[b] = tab.rows[r][-1]
    value = sum(c * x for c, x in zip(lp.objective, point))
    dual = tuple(tab.duals(raw2, cost2))
    if not check_point(lp, point):
        raise AssertionError("internal error: optimal point failed verification")
    bound = verify_dual_bound(lp, dual)
    if bound != value:
        raise AssertionError("internal error: dual bound does not match the optimum")
    return Optimal(value, tuple(point), dual)


def is_feasible(lp: LinearProgram) -> bool:
    probe = LinearProgram(
        lp.variable_count,
        lp.constraints,
        tuple([ZERO] * lp.variable_count),
        Sense.MAXIMIZE,
    )
    return isinstance(solve(probe), Optimal)


# --- Fourier-Motzkin oracle --------------------------------------------------

FM_VARIABLE_CAP = 8
FM_CONSTRAINT_CAP = 16
_FM_ROW_GUARD = 200_000


def _normalize_le_row(coeffs: list[Fraction], rhs: Fraction) -> tuple[int, ...]:
    """Scale an LE row to a primitive integer tuple (positive scaling only)."""
    denom = 1
    for v in coeffs:
        denom = lcm(denom, v.denominator)
    denom = lcm(denom, rhs.denominator)
    ints = [int(v * denom) for v in coeffs] + [int(rhs * denom)]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def fourier_motzkin_feasible(lp: LinearProgram) -> bool:
    """Feasibility by variable elimination; independent of the simplex.

    Same conventions as `solve` (variables implicitly >= 0, weak rows).
    Capped at FM_VARIABLE_CAP variables and FM_CONSTRAINT_CAP constraints.
    """
    n = lp.variable_count
    if n > FM_VARIABLE_CAP:
        raise SizeCapExceeded(f"{n} variables exceeds the cap of {FM_VARIABLE_CAP}")
    if len(lp.constraints) > FM_CONSTRAINT_CAP:
        raise SizeCapExceeded(
            f"{len(lp.constraints)} constraints exceeds the cap of {FM_CONSTRAINT_CAP}"
        )

    rows: set[tuple[int, ...]] = set()

    def add(coeffs: list[Fraction], rhs: Fraction) -> Optional[bool]:
        if all(c == 0 for c in coeffs):
            return None if rhs >= 0 else False
        rows.add(_normalize_le_row(coeffs, rhs))
        return None

    for con in lp.constraints:
        coeffs = list(con.coeffs)
        rhs = con.rhs
        variants = []
        if con.rel in (Rel.LE, Rel.EQ):
            variants.append((coeffs, rhs))
        if con.rel in (Rel.GE, Rel.EQ):
            variants.append(([-c for c in coeffs], -rhs))
        for cs, r in variants:
            if add(list(cs), frac(r)) is False:
                return False
    for j in range(n):
        coeffs = [ZERO] * n
        coeffs[j] = -ONE
        add(coeffs, ZERO)

    for j in range(n):
        pos = []
        neg = []
        rest = set()
        for row in rows:
            c = row[j]
            if c > 0:
                pos.append(row)
            elif c < 0:
                neg.append(row)
            else:
                rest.add(row)
        for up in pos:
            for lo in neg:
                # up: a x_j <= beta (a>0); lo: -a' x_j <= beta' (a'>0)
                a = up[j]
                ap = -lo[j]
                coeffs = [
                    Fraction(ap * up[k] + a * lo[k]) for k in range(n)
                ]
                rhs = Fraction(ap * up[-1] + a * lo[-1])
                if all(c == 0 for c in coeffs):
                    if rhs < 0:
                        return False
                    continue
                rest.add(_normalize_le_row(coeffs, rhs))
                if len(rest) > _FM_ROW_GUARD:
                    raise SizeCapExceeded("row growth exceeded the elimination guard")
        rows = rest

    for row in rows:
        if row[-1] < 0:
            return False
    return True
