from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qualprob.algebra import Event, Space
from qualprob.ordering import (
    Comparison,
    CompleteOrdering,
    ConditionalStructure,
    Distribution,
    InvalidConditioner,
    Judgment,
    OrderingError,
    PartialOrdering,
    Relation,
    compare,
    condition_compare,
    induced_conditional,
    induced_ordering,
    ordering_from_scores,
)


def dist(space, *nums_dens):
    return Distribution(space, tuple(Fraction(n, d) for n, d in nums_dens))


@pytest.fixture
def p_worked(w3):
    # masses 1/2, 3/10, 1/5; the running example everywhere below
    return dist(w3, (1, 2), (3, 10), (1, 5))


def test_rank_table_validation(w2):
    with pytest.raises(OrderingError):
        CompleteOrdering(w2, (0, 1, 2))  # wrong length
    with pytest.raises(OrderingError):
        CompleteOrdering(w2, (0, 2, 2, 3))  # gap at 1
    CompleteOrdering(w2, (0, 1, 1, 2))


def test_ordering_from_scores_dense_ranks(w2):
    o = ordering_from_scores(w2, [0, 7, 7, 9])
    assert o.rank == (0, 1, 1, 2)
    assert o.class_count == 3
    assert o.classes() == [[0], [1, 2], [3]]


def test_distribution_validation(w2):
    with pytest.raises(OrderingError):
        Distribution(w2, (Fraction(1, 2),))
    with pytest.raises(OrderingError):
        Distribution(w2, (Fraction(3, 4), Fraction(3, 4)))
    with pytest.raises(OrderingError):
        Distribution(w2, (Fraction(-1, 4), Fraction(5, 4)))


def test_event_probabilities_match_direct_sum(p_worked, w3):
    probs = p_worked.event_probabilities()
    for mask in range(8):
        assert probs[mask] == p_worked.probability(Event(w3, mask))
    assert probs[0] == 0 and probs[7] == 1


def test_worked_induced_ranks(p_worked, w3):
    o = induced_ordering(p_worked)
    # p-values: {} 0, {w3} 1/5, {w2} 3/10, {w1} 1/2, {w2,w3} 1/2,
    # {w1,w3} 7/10, {w1,w2} 4/5, T 1; note the tie at 1/2.
    assert o.rank == (0, 3, 2, 5, 1, 4, 3, 6)
    a = w3.atom_event("w1")
    bc = w3.atom_event("w2") | w3.atom_event("w3")
    assert compare(o, a, bc) == Comparison.Equal
    assert compare(o, a, w3.atom_event("w2")) == Comparison.Greater
    assert compare(o, w3.bottom, w3.atom_event("w3")) == Comparison.Less


def test_condition_compare(p_worked, w3):
    o = induced_ordering(p_worked)
    a, b, c = (w3.atom_event(n) for n in ("w1", "w2", "w3"))
    # given w1 or w2: 1/2 vs 3/10
    assert condition_compare(o, a, b, a | b) == Comparison.Greater
    # conditioning washes out everything outside c
    assert condition_compare(o, a | c, c, c) == Comparison.Equal
    with pytest.raises(InvalidConditioner):
        condition_compare(o, a, b, w3.bottom)


def test_judgment_ids_unique(w2):
    a, b = w2.atom_event("w1"), w2.atom_event("w2")
    j1 = Judgment(a, Relation.GT, b, "j1")
    j2 = Judgment(b, Relation.GE, a, "j1")
    with pytest.raises(OrderingError):
        PartialOrdering(w2, (j1, j2))
    PartialOrdering(w2, (j1,))


def test_induced_conditional_worked(p_worked, w3):
    cs = induced_conditional(p_worked)
    a, c = w3.atom_event("w1"), w3.atom_event("w1") | w3.atom_event("w2")
    # p(w1 | w1 or w2) = (1/2)/(4/5) = 5/8
    r_ac = cs.rank_of(a, c)
    r_top = cs.rank_of(w3.top, w3.top)
    assert r_ac is not None and r_ac < r_top
    # corollary shape: conditioning is intersection-then-rank
    assert cs.rank_of(w3.top, c) == cs.rank_of(c, c)
    # every positive-probability event conditions
    assert cs.valid_conditioners() == list(range(1, 8))


def test_induced_conditional_shared_scale(p_worked, w3):
    cs = induced_conditional(p_worked)
    probs = p_worked.event_probabilities()
    pairs = list(cs.table)
    for i in range(0, len(pairs), 7):
        a1, c1 = pairs[i]
        for a2, c2 in pairs[::11]:
            r1 = Fraction(probs[a1 & c1], probs[c1])
            r2 = Fraction(probs[a2 & c2], probs[c2])
            assert (cs.table[(a1, c1)] < cs.table[(a2, c2)]) == (r1 < r2)


def test_conditional_table_rejects_bottom_conditioner(w2):
    o = ordering_from_scores(w2, [0, 1, 1, 2])
    with pytest.raises(InvalidConditioner):
        ConditionalStructure(w2, o, {(1, 0): 0})


def test_conditional_table_value_validation(w2):
    o = ordering_from_scores(w2, [0, 1, 1, 2])
    with pytest.raises(OrderingError):
        ConditionalStructure(w2, o, {(1, 3): -1})
    ConditionalStructure(w2, o, {(1, 3): 0})


@st.composite
def rational_masses(draw, n):
    weights = draw(st.lists(st.integers(0, 30), min_size=n, max_size=n))
    total = sum(weights)
    if total == 0:
        weights[0] = 1
        total = 1
    return tuple(Fraction(w, total) for w in weights)


@given(rational_masses(n=3))
def test_induced_ordering_ties_exactly(masses):
    s = Space("worlds", ("w1", "w2", "w3"))
    p = Distribution(s, masses)
    o = induced_ordering(p)
    probs = p.event_probabilities()
    for x in range(8):
        for y in range(8):
            assert (o.rank[x] == o.rank[y]) == (probs[x] == probs[y])
            assert (o.rank[x] < o.rank[y]) == (probs[x] < probs[y])


@given(rational_masses(n=4))
def test_event_probabilities_sweep_agrees(masses):
    s = Space("worlds", ("a", "b", "c", "d"))
    p = Distribution(s, masses)
    probs = p.event_probabilities()
    for mask in range(16):
        direct = sum(masses[i] for i in range(4) if mask >> i & 1)
        assert probs[mask] == direct
