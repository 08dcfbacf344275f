import pytest
from hypothesis import given, strategies as st

from qualprob.algebra import (
    AlgebraError,
    CapExceeded,
    Event,
    SentenceSyntaxError,
    Space,
    SpaceMismatch,
    UnknownAtom,
    iter_events,
    parse_event,
)


def test_worlds_mode_counts(w3):
    assert w3.world_count == 3
    assert w3.event_count == 8
    assert w3.world_label(1) == "w2"


def test_atoms_mode_counts():
    s = Space("atoms", ("x", "y"))
    assert s.world_count == 4
    assert s.event_count == 16
    # world 2 has bit 1 set: y true, x false
    assert s.world_label(2) == "~x and y"


def test_name_validation():
    with pytest.raises(AlgebraError):
        Space("worlds", ("a", "a"))
    with pytest.raises(AlgebraError):
        Space("worlds", ("T",))
    with pytest.raises(AlgebraError):
        Space("worlds", ("not",))
    with pytest.raises(AlgebraError):
        Space("worlds", ("3bad",))
    with pytest.raises(AlgebraError):
        Space("worlds", ())
    with pytest.raises(AlgebraError):
        Space("planets", ("a",))


def test_world_cap():
    with pytest.raises(CapExceeded):
        Space("atoms", tuple(f"a{i}" for i in range(25)))


def test_atom_event_modes(w3):
    assert w3.atom_event("w2").mask == 0b010
    s = Space("atoms", ("x", "y"))
    # x holds where bit 0 of the world index is set: worlds 1 and 3
    assert s.atom_event("x").mask == 0b1010
    with pytest.raises(UnknownAtom):
        w3.atom_event("zz")


def test_event_operations(w3):
    a = w3.atom_event("w1")
    b = w3.atom_event("w2")
    assert (a | b).mask == 0b011
    assert (a & b).mask == 0
    assert (~a).mask == 0b110
    assert a.implies(a | b)
    assert not (a | b).implies(a)
    assert w3.top.is_top and w3.bottom.is_bottom
    assert (a | b | w3.atom_event("w3")).is_top


def test_space_mismatch(w3, w2):
    with pytest.raises(SpaceMismatch):
        w3.atom_event("w1") & w2.atom_event("w1")


def test_labels(w3):
    assert w3.bottom.label() == "{}"
    assert w3.top.label() == "{*}"
    assert (w3.atom_event("w1") | w3.atom_event("w3")).label() == "{w1,w3}"


def test_parse_precedence(w3):
    # and binds tighter than or; not tighter than and
    e = parse_event(w3, "w1 or w2 and w3")
    assert e.mask == (w3.atom_event("w1") | (w3.atom_event("w2") & w3.atom_event("w3"))).mask
    e = parse_event(w3, "not w1 and w2")
    assert e.mask == ((~w3.atom_event("w1")) & w3.atom_event("w2")).mask
    e = parse_event(w3, "(w1 or w2) and w3")
    assert e.mask == 0


def test_parse_symbol_forms(w3):
    assert parse_event(w3, "~w1 & w2").mask == parse_event(w3, "not w1 and w2").mask
    assert parse_event(w3, "w1 | w2").mask == parse_event(w3, "w1 or w2").mask


def test_parse_constants(w3):
    assert parse_event(w3, "T").is_top
    assert parse_event(w3, "F").is_bottom
    assert parse_event(w3, "w1 or not w1").is_top


def test_parse_errors_carry_offsets(w3):
    with pytest.raises(SentenceSyntaxError) as ei:
        parse_event(w3, "w1 or")
    assert ei.value.offset == 5
    with pytest.raises(SentenceSyntaxError) as ei:
        parse_event(w3, "w1 || w2")
    assert ei.value.offset == 3
    with pytest.raises(SentenceSyntaxError) as ei:
        parse_event(w3, "(w1 or w2")
    assert ei.value.offset is not None
    with pytest.raises(UnknownAtom) as ei:
        parse_event(w3, "w1 or w9")
    assert ei.value.offset == 6
    with pytest.raises(SentenceSyntaxError):
        parse_event(w3, "w1 @ w2")


def test_iter_events(w3):
    events = list(iter_events(w3))
    assert len(events) == w3.event_count
    assert events[0].is_bottom and events[-1].is_top


def test_event_mask_range(w3):
    with pytest.raises(AlgebraError):
        Event(w3, 8)
    with pytest.raises(AlgebraError):
        Event(w3, -1)


@given(st.integers(min_value=0, max_value=7), st.integers(min_value=0, max_value=7))
def test_de_morgan(ma, mb):
    s = Space("worlds", ("w1", "w2", "w3"))
    a, b = Event(s, ma), Event(s, mb)
    assert (~(a | b)).mask == ((~a) & (~b)).mask
    assert (~(a & b)).mask == ((~a) | (~b)).mask


@given(st.integers(min_value=0, max_value=7))
def test_label_parses_back(mask):
    s = Space("worlds", ("w1", "w2", "w3"))
    e = Event(s, mask)
    text = e.label().strip("{}").replace("*", "T") or "F"
    rebuilt = parse_event(s, text.replace(",", " or "))
    assert rebuilt.mask == e.mask


@given(st.integers(min_value=0, max_value=15))
def test_atoms_world_label_is_a_sentence(index):
    s = Space("atoms", ("x", "y", "z", "u"))
    e = parse_event(s, s.world_label(index))
    assert e.mask == 1 << index
