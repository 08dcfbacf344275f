from fractions import Fraction

import pytest

import qualprob.credal as credal
from qualprob.algebra import CapExceeded, Space
from qualprob.credal import (
    Bounds,
    CredalSet,
    EmptyCredalSet,
    ZeroProbabilityConditioner,
    bounds,
    cond_bounds,
    entails,
    is_empty,
    prade_check,
)
from qualprob.oracle import random_rational_distribution
from qualprob.ordering import (
    Judgment,
    PartialOrdering,
    Relation,
    induced_ordering,
)

F = Fraction


def cs_of(space, *triples):
    judgments = tuple(
        Judgment(space.atom_event(l) if isinstance(l, str) else l,
                 rel,
                 space.atom_event(r) if isinstance(r, str) else r,
                 f"j{i+1}")
        for i, (l, rel, r) in enumerate(triples)
    )
    return CredalSet(space, PartialOrdering(space, judgments))


@pytest.fixture
def chain(w3):
    # w1 >= w2 >= w3
    return cs_of(w3, ("w1", Relation.GE, "w2"), ("w2", Relation.GE, "w3"))


def test_chain_bounds_worked(chain, w3):
    got = bounds(chain, w3.atom_event("w1"))
    assert got == Bounds(F(1, 3), F(1), True, True)
    got = bounds(chain, w3.atom_event("w2"))
    assert got == Bounds(F(0), F(1, 2), True, True)
    got = bounds(chain, w3.atom_event("w3"))
    assert got == Bounds(F(0), F(1, 3), True, True)


def test_strict_judgment_leaves_bound_open(w3):
    cs = cs_of(w3, ("w1", Relation.GT, "w2"))
    got = bounds(cs, w3.atom_event("w2"))
    assert got.upper == F(1, 2)
    assert not got.attained_upper  # p(w2)=1/2 would force a tie
    assert got.lower == 0 and got.attained_lower


def test_entails_additivity(chain, w3):
    a = w3.atom_event("w1") | w3.atom_event("w2")
    b = w3.atom_event("w3")
    got = entails(chain, a, b)
    assert got.always and got.witness is None


def test_entails_not_always_has_witness(chain, w3):
    a, b = w3.atom_event("w2"), w3.atom_event("w1")
    got = entails(chain, a, b)
    assert not got.always
    w = got.witness
    assert w is not None
    assert w.probability(a) < w.probability(b)
    # the witness itself satisfies every judgment
    for j in chain.judgments.judgments:
        pl, pr = w.probability(j.lhs), w.probability(j.rhs)
        assert pl >= pr if j.rel != Relation.EQ else pl == pr


def test_implication_always_entails(chain, w3):
    a = w3.atom_event("w1")
    assert entails(chain, a | w3.atom_event("w3"), a).always


def test_cond_bounds_worked(chain, w3):
    a, b, c = (w3.atom_event(n) for n in ("w1", "w2", "w3"))
    got = cond_bounds(chain, a, a | b)
    assert got.lower == F(1, 2) and got.attained_lower
    assert got.upper == F(1) and got.attained_upper
    got = cond_bounds(chain, a | c, a | c)
    assert got == Bounds(F(1), F(1), True, True)
    got = cond_bounds(chain, c, b | c)
    assert got.lower == F(0) and got.upper == F(1, 2)


def test_cond_bounds_no_judgments(w3):
    cs = cs_of(w3)
    a, c = w3.atom_event("w1"), w3.atom_event("w1") | w3.atom_event("w2")
    got = cond_bounds(cs, a, c)
    assert got.lower == 0 and got.upper == 1


def test_zero_probability_conditioner(w3):
    cs = cs_of(w3, (w3.bottom, Relation.GE, "w3"))
    with pytest.raises(ZeroProbabilityConditioner):
        cond_bounds(cs, w3.atom_event("w1"), w3.atom_event("w3"))


def test_empty_set_detection(w2):
    cs = cs_of(w2, ("w1", Relation.GT, "w2"), ("w2", Relation.GT, "w1"))
    assert is_empty(cs)
    with pytest.raises(EmptyCredalSet):
        bounds(cs, w2.atom_event("w1"))
    with pytest.raises(EmptyCredalSet):
        entails(cs, w2.atom_event("w1"), w2.atom_event("w2"))


def test_unanimity_bridge(chain, w3):
    # entailed comparisons cannot be contradicted without emptying the set
    a = w3.atom_event("w1") | w3.atom_event("w2")
    b = w3.atom_event("w3")
    assert entails(chain, a, b).always
    contradicted = CredalSet(w3, PartialOrdering(w3, chain.judgments.judgments + (
        Judgment(b, Relation.GT, a, "jx"),
    )))
    assert is_empty(contradicted)


def test_monotone_shrink(w3):
    base = cs_of(w3, ("w1", Relation.GE, "w2"))
    tighter = cs_of(w3, ("w1", Relation.GE, "w2"), ("w2", Relation.GE, "w3"))
    for mask in range(1, 8):
        from qualprob.algebra import Event

        e = Event(w3, mask)
        wide, narrow = bounds(base, e), bounds(tighter, e)
        assert wide.lower <= narrow.lower
        assert narrow.upper <= wide.upper


def test_entailment_is_a_preorder(w3):
    cs = cs_of(w3, ("w1", Relation.GE, "w2"))
    from qualprob.algebra import Event

    events = [Event(w3, m) for m in range(8)]
    rel = {(a.mask, b.mask): entails(cs, a, b).always for a in events for b in events}
    for a in events:
        assert rel[(a.mask, a.mask)]
        for b in events:
            for c in events:
                if rel[(a.mask, b.mask)] and rel[(b.mask, c.mask)]:
                    assert rel[(a.mask, c.mask)], (a.label(), b.label(), c.label())


def test_prade_check_seeded_sets(w3):
    passed = 0
    for seed in range(12):
        p = random_rational_distribution(w3, seed=seed, resolution=41)
        o = induced_ordering(p)
        # take a realizable judgment set: the adjacent strict comparisons of o
        classes = o.classes()
        judgments = []
        for lower, upper in zip(classes, classes[1:]):
            from qualprob.algebra import Event

            judgments.append(Judgment(
                Event(w3, upper[0]), Relation.GT, Event(w3, lower[0]),
                f"j{len(judgments)+1}",
            ))
        cs = CredalSet(w3, PartialOrdering(w3, tuple(judgments)))
        verdict = prade_check(cs)
        assert verdict.passed, (seed, verdict.witness)
        passed += 1
    assert passed == 12


def test_prade_check_world_cap():
    space = Space("worlds", tuple(f"w{i}" for i in range(1, 6)))
    cs = CredalSet(space, PartialOrdering(space, ()))
    with pytest.raises(CapExceeded):
        prade_check(cs)
    assert prade_check(cs, sample=40).passed


def test_prade_check_catches_broken_rows(w3, monkeypatch):
    # negative control: drop the normalization row and the checker must
    # notice on its own rather than report vacuous success
    cs = cs_of(w3, ("w1", Relation.GE, "w2"))
    real = credal._closed_rows

    def sabotaged(inner_cs, width):
        return [r for r in real(inner_cs, width) if r.rel.name != "EQ"]

    monkeypatch.setattr(credal, "_closed_rows", sabotaged)
    verdict = prade_check(cs)
    assert not verdict.passed


def test_bounds_of_extremes(chain, w3):
    assert bounds(chain, w3.bottom) == Bounds(F(0), F(0), True, True)
    assert bounds(chain, w3.top) == Bounds(F(1), F(1), True, True)
