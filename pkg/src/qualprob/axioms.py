"""Checkers for the comparative-belief axioms.

Each checker takes a finished structure apart and reports one verdict per
axiom, with a concrete witness on failure.  Witnesses are chosen
deterministically: scans run in ascending bitmask order and report the
first (lexicographically smallest) violating tuple.

Verdict keys for complete orderings: A1 (complete transitive order), A2
(top above bottom), A3 (everything between bottom and top, extremes only
for asserted certainties), A4 (dominance given c and given not-c), Theorem
(disjoint-union additivity), H1 (complement reversal), and
QualitativeProbability (conjunction of A1, A2, A3, Theorem).

Conditional keys: A5Coherence (conditional comparisons mirror conjunction
comparisons within a context), Corollary (rank(b|a) equals rank(b&a|a)),
A6 (chain combination is a function, strictly increasing in each
argument), H2 (same test over conjunction triples), A4Conditional
(dominance read from the table).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import CapExceeded, Event
from .ordering import (
    CompleteOrdering,
    ConditionalStructure,
    PartialOrdering,
    Relation,
)

EXHAUSTIVE_WORLD_CAP = 5


class EmptyDomain(ValueError):
    """The conditional table has no entries to check."""


@dataclass(frozen=True)
class Witness:
    """Concrete evidence for one violation: the events involved and what clashed."""

    events: tuple[Event, ...]
    detail: str


@dataclass(frozen=True)
class Verdict:
    passed: bool
    witness: Optional[Witness] = None
    note: Optional[str] = None

    @property
    def label(self) -> str:
        return "Pass" if self.passed else "Fail"


@dataclass
class AxiomReport:
    verdicts: dict[str, Verdict]
    mode: str = "exhaustive"
    notes: tuple[str, ...] = ()
    coverage: Optional[Fraction] = None

    def all_passed(self) -> bool:
        return all(v.passed for v in self.verdicts.values())


def _ev(o_or_space, mask: int) -> Event:
    space = getattr(o_or_space, "space", o_or_space)
    return Event(space, mask)


# --- single-tuple predicates (shared by scans and witness rechecks) -------

def a2_violation(o: CompleteOrdering) -> bool:
    return o.rank[-1] <= o.rank[0]


def a3_violation(o: CompleteOrdering, a: int, certain_true: frozenset[int],
                 certain_false: frozenset[int]) -> Optional[str]:
    top = o.space.event_count - 1
    r, r_bot, r_top = o.rank[a], o.rank[0], o.rank[-1]
    if r < r_bot:
        return "ranked below bottom"
    if r > r_top:
        return "ranked above top"
    if r == r_top and a != top and a not in certain_true:
        return "ranked with top but not asserted certainly true"
    if r == r_bot and a != 0 and a not in certain_false:
        return "ranked with bottom but not asserted certainly false"
    if a in certain_true and r != r_top:
        return "asserted certainly true but not ranked with top"
    if a in certain_false and r != r_bot:
        return "asserted certainly false but not ranked with bottom"
    return None


def a4_violation(o: CompleteOrdering, a: int, b: int, c: int) -> bool:
    """Dominance: favored given c and given not-c, but not favored outright.

    Caller guarantees c is a usable conditioner (strictly between bottom
    and top, complement not ranked with bottom).
    """
    rank = o.rank
    nc = c ^ (o.space.event_count - 1)
    d1 = rank[a & c] - rank[b & c]
    d2 = rank[a & nc] - rank[b & nc]
    if d1 < 0 or d2 < 0:
        return False
    d = rank[a] - rank[b]
    if d < 0:
        return True
    return (d1 > 0 or d2 > 0) and d == 0


def theorem_violation(o: CompleteOrdering, a: int, b: int, c: int) -> bool:
    """Additivity over a disjoint union: with a,b both disjoint from c,
    rank(a|c-union) and rank(a) must compare the same way."""
    if a & c or b & c:
        return False
    rank = o.rank
    return (rank[a | c] >= rank[b | c]) != (rank[a] >= rank[b])


def h1_violation(o: CompleteOrdering, a: int, b: int) -> bool:
    rank = o.rank
    top = o.space.event_count - 1
    return rank[a] >= rank[b] and rank[a ^ top] > rank[b ^ top]


# --- complete orderings ----------------------------------------------------

def _usable_conditioners(o: CompleteOrdering) -> tuple[list[int], int]:
    """Conditioners for the dominance scan, plus how many were skipped
    because their complement is ranked with bottom."""
    top = o.space.event_count - 1
    r_bot, r_top = o.rank[0], o.rank[-1]
    usable = []
    skipped = 0
    for c in range(o.space.event_count):
        if not r_bot < o.rank[c] < r_top:
            continue
        if o.rank[c ^ top] == r_bot:
            skipped += 1
            continue
        usable.append(c)
    return usable, skipped


def check_unconditional(
    o: CompleteOrdering,
    certain_true: tuple[Event, ...] = (),
    certain_false: tuple[Event, ...] = (),
    sample: Optional[int] = None,
    seed: int = 0,
) -> AxiomReport:
    """Check A1-A4, Theorem, and H1 on a complete ordering.

    Exhaustive up to EXHAUSTIVE_WORLD_CAP worlds.  Beyond that a sample
    budget must be supplied and verdicts are marked sampled.
    """
    n = o.space.world_count
    count = o.space.event_count
    ct = frozenset(e.mask for e in certain_true)
    cf = frozenset(e.mask for e in certain_false)
    exhaustive = n <= EXHAUSTIVE_WORLD_CAP
    if not exhaustive and sample is None:
        raise CapExceeded(
            f"{n} worlds exceeds the exhaustive cap of {EXHAUSTIVE_WORLD_CAP}; "
            "pass a sample budget to check anyway"
        )

    verdicts: dict[str, Verdict] = {}
    notes: list[str] = []
    verdicts["A1"] = Verdict(True, note="complete and transitive by representation")
    verdicts["A2"] = (
        Verdict(False, Witness((o.space.top, o.space.bottom), "rank(T) <= rank(F)"))
        if a2_violation(o)
        else Verdict(True)
    )

    a3 = Verdict(True)
    events_a3 = range(count) if exhaustive else _sample_masks(count, sample, seed)
    for a in events_a3:
        why = a3_violation(o, a, ct, cf)
        if why is not None:
            a3 = Verdict(False, Witness((_ev(o, a),), why))
            break
    verdicts["A3"] = a3

    usable, skipped = _usable_conditioners(o)
    if skipped:
        notes.append(
            f"A4: skipped {skipped} conditioner(s) whose complement is ranked with bottom"
        )
    a4 = Verdict(True)
    if exhaustive:
        triples = (
            (a, b, c)
            for a in range(count)
            for b in range(count)
            for c in usable
        )
    else:
        triples = _sample_triples(count, usable, sample, seed)
    for a, b, c in triples:
        if a4_violation(o, a, b, c):
            a4 = Verdict(
                False,
                Witness(
                    (_ev(o, a), _ev(o, b), _ev(o, c)),
                    "at least as likely given c and given ~c, but not outright",
                ),
            )
            break
    verdicts["A4"] = a4

    theorem = Verdict(True)
    if exhaustive:
        found = _scan_theorem(o)
    else:
        found = None
        rng = random.Random(seed)
        for _ in range(sample):
            c = rng.randrange(count)
            rest = c ^ (count - 1)
            a = _random_submask(rng, rest)
            b = _random_submask(rng, rest)
            if theorem_violation(o, a, b, c):
                found = (a, b, c)
                break
    if found is not None:
        a, b, c = found
        theorem = Verdict(
            False,
            Witness(
                (_ev(o, a), _ev(o, b), _ev(o, c)),
                "union with a disjoint c does not preserve the comparison",
            ),
        )
    verdicts["Theorem"] = theorem

    h1 = Verdict(True)
    pairs = (
        ((a, b) for a in range(count) for b in range(count))
        if exhaustive
        else ((p, q) for p, q in _sample_pairs(count, sample, seed))
    )
    for a, b in pairs:
        if h1_violation(o, a, b):
            h1 = Verdict(
                False,
                Witness(
                    (_ev(o, a), _ev(o, b)),
                    "rank(a) >= rank(b) but rank(~a) > rank(~b)",
                ),
            )
            break
    verdicts["H1"] = h1

    qp_parts = ("A1", "A2", "A3", "Theorem")
    failing = [k for k in qp_parts if not verdicts[k].passed]
    verdicts["QualitativeProbability"] = (
        Verdict(True)
        if not failing
        else Verdict(
            False,
            verdicts[failing[0]].witness,
            note="fails " + ", ".join(failing),
        )
    )
    if exhaustive:
        coverage = Fraction(1)
    else:
        # fraction of the largest quantified family (dominance triples)
        coverage = min(Fraction(1), Fraction(sample, count ** 3))
    return AxiomReport(
        verdicts=verdicts,
        mode="exhaustive" if exhaustive else "sampled",
        notes=tuple(notes),
        coverage=coverage,
    )


def _scan_theorem(o: CompleteOrdering):
    count = o.space.event_count
    for a in range(count):
        for b in range(count):
            for c in range(count):
                if a & c or b & c:
                    continue
                if theorem_violation(o, a, b, c):
                    return (a, b, c)
    return None


def _sample_masks(count: int, sample: int, seed: int):
    rng = random.Random(seed)
    return [rng.randrange(count) for _ in range(sample)]


def _sample_pairs(count: int, sample: int, seed: int):
    rng = random.Random(seed + 1)
    return [(rng.randrange(count), rng.randrange(count)) for _ in range(sample)]


def _sample_triples(count: int, usable: list[int], sample: int, seed: int):
    if not usable:
        return []
    rng = random.Random(seed + 2)
    return [
        (rng.randrange(count), rng.randrange(count), usable[rng.randrange(len(usable))])
        for _ in range(sample)
    ]


def _random_submask(rng: random.Random, mask: int) -> int:
    out = 0
    m = mask
    while m:
        low = m & -m
        if rng.getrandbits(1):
            out |= low
        m ^= low
    return out


# --- partial orderings ------------------------------------------------------

GE = 0
GT = 1


def transitive_closure(po: PartialOrdering):
    """Closure of the judgment relation.

    Returns (nodes, best) where nodes are the mentioned event masks in
    ascending order and best[u][v] is None / GE / GT for the strongest
    derived relation u >= v or u > v.
    """
    nodes = sorted({j.lhs.mask for j in po.judgments} | {j.rhs.mask for j in po.judgments})
    index = {m: i for i, m in enumerate(nodes)}
    k = len(nodes)
    best: list[list[Optional[int]]] = [[None] * k for _ in range(k)]

    def add_edge(u: int, v: int, strength: int) -> None:
        if best[u][v] is None or best[u][v] < strength:
            best[u][v] = strength

    for j in po.judgments:
        u, v = index[j.lhs.mask], index[j.rhs.mask]
        if j.rel == Relation.GT:
            add_edge(u, v, GT)
        elif j.rel == Relation.GE:
            add_edge(u, v, GE)
        else:
            add_edge(u, v, GE)
            add_edge(v, u, GE)

    for m in range(k):
        for u in range(k):
            if best[u][m] is None:
                continue
            for v in range(k):
                if best[m][v] is None:
                    continue
                strength = max(best[u][m], best[m][v])
                if best[u][v] is None or best[u][v] < strength:
                    best[u][v] = strength
    return nodes, best


def _bfs_path(adjacency: dict[int, set[int]], start: int, goal: int) -> Optional[list[int]]:
    """Shortest node path start..goal over direct edges, or None."""
    from collections import deque

    parent: dict[int, Optional[int]] = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        if u == goal:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for v in adjacency.get(u, ()):
            if v not in parent:
                parent[v] = u
                queue.append(v)
    return None


def check_partial(po: PartialOrdering) -> AxiomReport:
    """A1 on a judgment set: the transitive closure must not force both
    a > b and b >= a.  Also reports how much of the mentioned-event pair
    space the closure relates (completeness coverage).

    A strict cycle in the closure exists exactly when some asserted strict
    edge can be closed back by direct edges, so the witness is rebuilt by
    search on the judgments themselves."""
    nodes, best = transitive_closure(po)
    index = {m: i for i, m in enumerate(nodes)}
    k = len(nodes)
    adjacency: dict[int, set[int]] = {}
    for j in po.judgments:
        u, v = index[j.lhs.mask], index[j.rhs.mask]
        adjacency.setdefault(u, set()).add(v)
        if j.rel == Relation.EQ:
            adjacency.setdefault(v, set()).add(u)
    verdict = Verdict(True)
    for j in po.judgments:
        if j.rel != Relation.GT:
            continue
        u, v = index[j.lhs.mask], index[j.rhs.mask]
        back = _bfs_path(adjacency, v, u)
        if back is not None:
            cycle = [u] + back
            events = tuple(_ev(po.space, nodes[i]) for i in cycle)
            labels = " -> ".join(e.label() for e in events)
            verdict = Verdict(
                False,
                Witness(events, f"cycle with a strict step: {labels}"),
            )
            break

    pair_total = k * (k - 1) // 2
    related = 0
    for u in range(k):
        for v in range(u + 1, k):
            if best[u][v] is not None or best[v][u] is not None:
                related += 1
    coverage = Fraction(1) if pair_total == 0 else Fraction(related, pair_total)
    return AxiomReport(verdicts={"A1": verdict}, coverage=coverage)


# --- conditional structures -------------------------------------------------

@dataclass(frozen=True)
class _Entry:
    u: int
    v: int
    w: int
    chain: tuple[int, ...]  # event masks identifying the source tuple


def _functional_violations(entries: list[_Entry], absorb: int):
    """Violations of 'w is a function of (u, v), strictly increasing in
    each argument'.

    A plateau is tolerated only at the absorbing minimum: when the held
    argument and both outputs all equal the least table rank, matching how
    an exact distribution behaves on chains through the impossible event
    (a zero ratio absorbs whatever it multiplies).
    """
    found = []

    def scan(key_u: bool):
        keyed = sorted(
            entries,
            key=(lambda e: (e.u, e.v, e.w, e.chain)) if key_u else (lambda e: (e.v, e.u, e.w, e.chain)),
        )
        for e1, e2 in zip(keyed, keyed[1:]):
            held1, var1 = (e1.u, e1.v) if key_u else (e1.v, e1.u)
            held2, var2 = (e2.u, e2.v) if key_u else (e2.v, e2.u)
            if held1 != held2:
                continue
            if var1 == var2:
                if e1.w != e2.w:
                    found.append(("not a function", e1, e2))
                continue
            if e1.w > e2.w:
                found.append(("decreasing", e1, e2))
            elif e1.w == e2.w and not (held1 == absorb and e1.w == absorb):
                found.append(("plateau", e1, e2))

    scan(True)
    scan(False)
    return found


def _pick_violation(found):
    return min(found, key=lambda t: (t[1].chain + t[2].chain, t[0]))


def _entry_witness(space, kind: str, e1: _Entry, e2: _Entry) -> Witness:
    events = tuple(_ev(space, m) for m in e1.chain + e2.chain)
    detail = (
        f"{kind}: ({e1.u},{e1.v})->{e1.w} versus ({e2.u},{e2.v})->{e2.w}"
    )
    return Witness(events, detail)


def check_conditional(
    cs: ConditionalStructure,
    sample: Optional[int] = None,
    seed: int = 0,
) -> AxiomReport:
    """Check a conditional rank table: A5 coherence, the corollary, chain
    combination (A6), conjunction combination (H2), and table dominance
    (A4Conditional).  Quantifies over tuples fully inside the supplied
    domain."""
    if not cs.table:
        raise EmptyDomain("conditional table has no entries")
    n = cs.space.world_count
    count = cs.space.event_count
    exhaustive = n <= EXHAUSTIVE_WORLD_CAP
    if not exhaustive and sample is None:
        raise CapExceeded(
            f"{n} worlds exceeds the exhaustive cap of {EXHAUSTIVE_WORLD_CAP}; "
            "pass a sample budget to check anyway"
        )

    tab: list[list[Optional[int]]] = [[None] * count for _ in range(count)]
    for (a, c), value in cs.table.items():
        tab[a][c] = value
    valid_c = cs.valid_conditioners()
    absorb = min(cs.table.values())
    rank = cs.base.rank
    verdicts: dict[str, Verdict] = {}
    notes: list[str] = []

    # A5 coherence inside each context
    a5 = Verdict(True)
    for a, b, c in _iter_same_context(count, valid_c, tab, exhaustive, sample, seed):
        d_table = tab[a][c] - tab[b][c]
        d_base = rank[a & c] - rank[b & c]
        if (d_table > 0) != (d_base > 0) or (d_table < 0) != (d_base < 0):
            a5 = Verdict(
                False,
                Witness(
                    (_ev(cs, a), _ev(cs, b), _ev(cs, c)),
                    f"table says {tab[a][c]} vs {tab[b][c]} given c, base ranks "
                    f"the conjunctions {rank[a & c]} vs {rank[b & c]}",
                ),
            )
            break
    verdicts["A5Coherence"] = a5

    # corollary: conditioning absorbs the conditioner
    cor = Verdict(True)
    for (b, a), value in sorted(cs.table.items()):
        other = tab[b & a][a]
        if other is not None and other != value:
            cor = Verdict(
                False,
                Witness(
                    (_ev(cs, b), _ev(cs, a)),
                    f"rank(b|a)={value} but rank(b&a|a)={other}",
                ),
            )
            break
    verdicts["Corollary"] = cor

    # A6 over chains x <= y <= z
    entries_a6: list[_Entry] = []
    valid_c_set = set(valid_c)
    for z in valid_c:
        y = z
        while True:
            if tab[y][z] is not None and y in valid_c_set:
                x = y
                while True:
                    if tab[x][y] is not None and tab[x][z] is not None:
                        entries_a6.append(
                            _Entry(tab[x][y], tab[y][z], tab[x][z], (x, y, z))
                        )
                    if x == 0:
                        break
                    x = (x - 1) & y
            if y == 0:
                break
            y = (y - 1) & z
    found = _functional_violations(entries_a6, absorb)
    if found:
        kind, e1, e2 = _pick_violation(found)
        verdicts["A6"] = Verdict(False, _entry_witness(cs.space, kind, e1, e2))
    else:
        verdicts["A6"] = Verdict(True)

    # H2 over conjunction triples
    entries_h2: list[_Entry] = []
    valid_set = set(valid_c)
    h2_tuples = (
        ((a, b, c) for a in range(count) for b in range(count) for c in valid_c)
        if exhaustive
        else _sample_triples(count, valid_c, sample, seed + 3)
    )
    for a, b, c in h2_tuples:
        bc = b & c
        if bc not in valid_set:
            continue
        u = tab[a][bc]
        v = tab[b][c]
        w = tab[a & b][c]
        if u is None or v is None or w is None:
            continue
        entries_h2.append(_Entry(u, v, w, (a, b, c)))
    found = _functional_violations(entries_h2, absorb)
    if found:
        kind, e1, e2 = _pick_violation(found)
        verdicts["H2"] = Verdict(False, _entry_witness(cs.space, kind, e1, e2))
    else:
        verdicts["H2"] = Verdict(True)

    # dominance with antecedents read from the table
    a4c = Verdict(True)
    skipped = 0
    top = count - 1
    r_bot, r_top = rank[0], rank[-1]
    dominance_cs = []
    for c in valid_c:
        if not r_bot < rank[c] < r_top:
            continue
        nc = c ^ top
        if nc not in valid_set:
            skipped += 1
            continue
        dominance_cs.append(c)
    if skipped:
        notes.append(
            f"A4Conditional: skipped {skipped} conditioner(s) whose complement "
            "is outside the domain"
        )
    a4_tuples = (
        ((a, b, c) for a in range(count) for b in range(count) for c in dominance_cs)
        if exhaustive
        else _sample_triples(count, dominance_cs, sample, seed + 4)
    )
    for a, b, c in a4_tuples:
        nc = c ^ top
        t_ac, t_bc = tab[a][c], tab[b][c]
        t_anc, t_bnc = tab[a][nc], tab[b][nc]
        if None in (t_ac, t_bc, t_anc, t_bnc):
            continue
        d1 = t_ac - t_bc
        d2 = t_anc - t_bnc
        if d1 < 0 or d2 < 0:
            continue
        d = rank[a] - rank[b]
        if d < 0 or ((d1 > 0 or d2 > 0) and d == 0):
            a4c = Verdict(
                False,
                Witness(
                    (_ev(cs, a), _ev(cs, b), _ev(cs, c)),
                    "table favors a given c and given ~c, base does not favor a",
                ),
            )
            break
    verdicts["A4Conditional"] = a4c

    return AxiomReport(
        verdicts=verdicts,
        mode="exhaustive" if exhaustive else "sampled",
        notes=tuple(notes),
    )


def _iter_same_context(count, valid_c, tab, exhaustive, sample, seed):
    if exhaustive:
        for a in range(count):
            row_a = tab[a]
            for b in range(count):
                row_b = tab[b]
                for c in valid_c:
                    if row_a[c] is not None and row_b[c] is not None:
                        yield (a, b, c)
    else:
        for a, b, c in _sample_triples(count, valid_c, sample, seed + 5):
            if tab[a][c] is not None and tab[b][c] is not None:
                yield (a, b, c)
