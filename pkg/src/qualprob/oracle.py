"""Brute-force generators and enumerators that anchor the property tests.

Everything here is deliberately independent of the solver internals it is
used to check: the enumeration walks ordered partitions directly, the
distribution generator is a self-contained documented PRNG, and the
min-combination table is built from possibility weights rather than any
probability machinery.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .algebra import CapExceeded, Space
from .axioms import check_unconditional, theorem_violation
from .ordering import (
    CompleteOrdering,
    ConditionalStructure,
    Distribution,
    induced_ordering,
    ordering_from_scores,
)
from .realize import Realization, realize_complete

ENUMERATION_WORLD_CAP = 3


@dataclass(frozen=True)
class EnumerationResult:
    orderings: tuple[CompleteOrdering, ...]
    total_count: int
    all_realizable: bool


@dataclass(frozen=True)
class NotFound:
    nodes_visited: int


def _rank_vector(space, classes: list[list[int]]) -> tuple[int, ...]:
    rank = [0] * space.event_count
    for level, cls in enumerate(classes):
        for mask in cls:
            rank[mask] = level
    return tuple(rank)


def enumerate_qualitative_probabilities(space: Space) -> EnumerationResult:
    """All complete orderings passing A1, A2, A3 and the Theorem.

    Backtracks over ordered partitions of the interior events: F is
    pinned alone at the bottom and T alone at the top (A3 with empty
    certainty sets allows nothing else), and each interior event is
    inserted either into an existing class or as a new class in any gap.
    A partial assignment already violating the Theorem is pruned, which
    is sound because later insertions never reorder placed events.

    Results are sorted by rank vector; every member is re-checked and
    realized, so the enumeration doubles as the realizability oracle.
    """
    if space.world_count > ENUMERATION_WORLD_CAP:
        raise CapExceeded(
            f"enumeration is capped at {ENUMERATION_WORLD_CAP} worlds"
        )
    top = space.top.mask
    interior = list(range(1, top))

    found: list[tuple[int, ...]] = []

    def theorem_ok(classes: list[list[int]], placed: list[int]) -> bool:
        rank = {}
        for level, cls in enumerate(classes):
            for mask in cls:
                rank[mask] = level
        for a in placed:
            for b in placed:
                for c in placed:
                    if a & c or b & c:
                        continue
                    if (a | c) not in rank or (b | c) not in rank:
                        continue
                    left = rank[a | c] >= rank[b | c]
                    right = rank[a] >= rank[b]
                    if left != right:
                        return False
        return True

    def extend(idx: int, classes: list[list[int]], placed: list[int]) -> None:
        if idx == len(interior):
            full = [[0]] + classes + [[top]]
            found.append(_rank_vector(space, full))
            return
        mask = interior[idx]
        placed.append(mask)
        # join an existing interior class
        for cls in classes:
            cls.append(mask)
            if theorem_ok([[0]] + classes + [[top]], placed):
                extend(idx + 1, classes, placed)
            cls.pop()
        # open a new class in any gap
        for pos in range(len(classes) + 1):
            classes.insert(pos, [mask])
            if theorem_ok([[0]] + classes + [[top]], placed):
                extend(idx + 1, classes, placed)
            del classes[pos]
        placed.pop()

    if top == 1:
        # single world: only F < T
        found.append((0, 1))
    else:
        extend(0, [], [0, top])

    vectors = sorted(set(found))
    if len(vectors) != len(found):
        raise AssertionError("internal error: insertion paths produced duplicates")
    orderings = []
    all_realizable = True
    for vec in vectors:
        o = CompleteOrdering(space, vec)
        report = check_unconditional(o)
        if not report.all_passed():
            raise AssertionError("internal error: enumerated ordering fails the axioms")
        orderings.append(o)
        out = realize_complete(o)
        if not (isinstance(out, Realization) and out.margin > 0):
            all_realizable = False
    return EnumerationResult(tuple(orderings), len(orderings), all_realizable)


# --- documented deterministic distribution generator -------------------------

def _splitmix64(state: int):
    """One step of splitmix64; returns (new_state, 64-bit output).

    state' = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = state'; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9 (mod 2^64)
    z ^= z >> 27; z *= 0x94D049BB133111EB (mod 2^64); z ^= z >> 31
    """
    mask = (1 << 64) - 1
    state = (state + 0x9E3779B97F4A7C15) & mask
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & mask
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & mask
    z = z ^ (z >> 31)
    return state, z


def random_rational_distribution(space: Space, seed: int, resolution: int) -> Distribution:
    """Deterministic rational distribution from a documented generator.

    Algorithm (reproducible from this description alone):
    - run splitmix64 from `seed` (see _splitmix64) for world_count - 1
      outputs; reduce each modulo (resolution + 1) to a cut in
      [0, resolution];
    - sort the cuts, bracket them with 0 and resolution, and take the
      consecutive differences as numerators over `resolution`.

    Masses are nonnegative and sum to exactly 1; the common denominator
    divides `resolution`.
    """
    if resolution < 1:
        raise ValueError("resolution must be at least 1")
    w = space.world_count
    state = seed & ((1 << 64) - 1)
    cuts = []
    for _ in range(w - 1):
        state, z = _splitmix64(state)
        cuts.append(z % (resolution + 1))
    cuts.sort()
    edges = [0] + cuts + [resolution]
    masses = tuple(
        Fraction(hi - lo, resolution) for lo, hi in zip(edges, edges[1:])
    )
    return Distribution(space, masses)


# --- local search for a qualitative probability with no agreeing p -----------

def _class_swap(o: CompleteOrdering, k: int) -> CompleteOrdering:
    """Swap rank classes k and k+1 (0-based, by rank level)."""
    rank = list(o.rank)
    for mask, r in enumerate(rank):
        if r == k:
            rank[mask] = k + 1
        elif r == k + 1:
            rank[mask] = k
    return CompleteOrdering(o.space, tuple(rank))


def search_nonrepresentable(
    space: Space, budget: int, seed: int = 0
) -> Union[CompleteOrdering, NotFound]:
    """Stochastic local search for an ordering that passes the
    qualitative-probability axioms yet has no agreeing distribution.

    Starts from distribution-induced orderings and walks adjacent-class
    swaps that keep the axioms passing, testing realizability at each
    node.  At 4 worlds this must come back NotFound (realizability is
    guaranteed up to that size); 5 worlds is where a find is possible.
    Each visited node costs one axiom check and one solve, so budgets are
    node counts.
    """
    if space.world_count not in (4, 5):
        raise ValueError("the search is meaningful only at 4 or 5 worlds")
    rng = random.Random(seed)
    visited = 0
    current: Optional[CompleteOrdering] = None
    while visited < budget:
        if current is None:
            p = random_rational_distribution(space, rng.randrange(1 << 32), 97)
            current = induced_ordering(p)
        report = check_unconditional(current)
        if report.all_passed():
            visited += 1
            out = realize_complete(current)
            if not isinstance(out, Realization):
                again = check_unconditional(current)
                if again.all_passed():
                    return current
        k = rng.randrange(max(current.class_count - 1, 1))
        candidate = _class_swap(current, k)
        if check_unconditional(candidate).all_passed():
            current = candidate
        elif rng.random() < 0.25:
            current = None  # restart
    return NotFound(visited)


# --- possibility-style conditional table --------------------------------------

def min_combination_structure(space: Space, weights=(1, 2, 3)) -> ConditionalStructure:
    """A conditional table whose chain combination behaves like a minimum
    instead of strictly increasing: possibility weights per world, with
    the conditional value of a given c equal to the top scale value when
    a covers c's maximal weight and the plain weight of a∧c otherwise.
    Its base ordering is the weight-ranked one, so within-conditioner
    coherence holds while cross-context strictness fails on plateaus at
    non-minimal values."""
    w = space.world_count
    if len(weights) != w:
        raise ValueError("one weight per world required")
    top_value = max(weights) + 1

    def profile(mask: int) -> int:
        vals = [weights[i] for i in range(w) if mask & (1 << i)]
        return max(vals) if vals else 0

    scores = [Fraction(profile(m)) for m in range(space.event_count)]
    base = ordering_from_scores(space, scores)
    table = {}
    for c in range(space.event_count):
        if profile(c) == 0:
            continue
        for a in range(space.event_count):
            meet = profile(a & c)
            table[(a, c)] = top_value if meet == profile(c) else meet
    return ConditionalStructure(space, base, table)
