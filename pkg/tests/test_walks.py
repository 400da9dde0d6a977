from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfray.letters import format_word, letter, parse_compact_word, parse_word
from qfray.walks import (
    ORIGIN,
    Direction,
    Role,
    WalkState,
    is_ballot,
    prefix_can_return,
    role_of,
    step,
    subword,
    walk,
    walk_end,
)

EXAMPLE = "212'231'3'1'121'11"
words = st.lists(st.integers(1, 8), max_size=40)


def test_letters_round_trip():
    w = parse_compact_word(EXAMPLE)
    assert format_word(w) == "2 1 2' 2 3 1' 3' 1' 1 2 1' 1 1"
    assert parse_word("2, 1 2'") == [letter(2), letter(1), letter(2, True)]
    with pytest.raises(ValueError):
        parse_word("0")
    with pytest.raises(ValueError):
        parse_compact_word("''")


def test_step_examples():
    assert step(WalkState(0, 1), Role.LOW_UNPRIMED) == (Direction.E, WalkState(1, 1))
    assert step(WalkState(2, 1), Role.HIGH_PRIMED) == (Direction.W, WalkState(1, 1))
    assert step(ORIGIN, Role.HIGH_UNPRIMED) == (Direction.N, WalkState(0, 1))
    # the origin counts as on an axis
    assert step(ORIGIN, Role.LOW_UNPRIMED) == (Direction.E, WalkState(1, 0))
    assert step(ORIGIN, Role.HIGH_PRIMED) == (Direction.N, WalkState(0, 1))
    assert step(WalkState(1, 1), Role.LOW_UNPRIMED) == (Direction.S, WalkState(1, 0))
    assert step(WalkState(1, 1), Role.LOW_PRIMED) == (Direction.E, WalkState(2, 1))


def test_role_of():
    assert role_of(letter(3, True), 3) is Role.LOW_PRIMED
    assert role_of(letter(4), 3) is Role.HIGH_UNPRIMED
    assert role_of(letter(1), 3) is None


def test_subword_examples():
    w = parse_compact_word(EXAMPLE)
    assert subword(w, 1) == parse_compact_word("212'21'1'121'11")
    assert subword(w, 2) == parse_compact_word("22'233'2")
    assert subword(w, 7) == []
    with pytest.raises(ValueError):
        subword(w, 0)


def test_walk_endpoints():
    assert walk_end(parse_compact_word("212'21'1'121'11"), 1) == WalkState(3, 0)
    assert walk_end(parse_compact_word("22'233'2"), 2) == WalkState(2, 0)
    assert walk([], 1) == []
    assert walk_end([], 1) == ORIGIN


def test_walk_trace_format():
    trace = walk(parse_word("2 1 2'"), 1)
    assert [str(t) for t in trace] == ["2 N (0,1)", "1 E (1,1)", "2' W (0,1)"]


def test_drawn_walk_regression():
    # the word of the walk drawn beside the one-turn ballot argument
    w = parse_word("2 1 1' 1 2' 2 2' 1' 1'")
    assert walk_end(w, 1) == WalkState(3, 2)
    assert not is_ballot(w)


def test_is_ballot_examples():
    assert is_ballot(parse_compact_word(EXAMPLE))
    assert not is_ballot(parse_word("2"))
    assert is_ballot([])
    assert is_ballot(parse_word("1 1 1"))
    assert not is_ballot(parse_word("1 3"))


def test_prefix_can_return():
    assert not prefix_can_return(WalkState(5, 3), 2)
    assert prefix_can_return(WalkState(5, 3), 3)
    assert prefix_can_return(WalkState(9, 0), 0)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.integers(1, 8), max_size=40), st.integers(1, 3))
def test_quadrant_safety(word, i):
    for t in walk(word, i):
        assert t.state.x >= 0 and t.state.y >= 0
    state = ORIGIN
    for t in walk(word, i):
        dx, dy = t.state.x - state.x, t.state.y - state.y
        assert abs(dx) + abs(dy) == 1
        state = t.state


@settings(max_examples=200, deadline=None)
@given(words, st.integers(1, 3), st.randoms(use_true_random=False))
def test_walk_depends_only_on_subword(word, i, rnd):
    kept = subword(word, i)
    others = [c for c in word if (c + 1) // 2 not in (i, i + 1)]
    # reinsert the other letters at random positions
    mixed = list(kept)
    for c in others:
        mixed.insert(rnd.randrange(len(mixed) + 1), c)
    assert walk_end(mixed, i) == walk_end(word, i) == walk_end(kept, i)


@settings(max_examples=300, deadline=None)
@given(words)
def test_ballot_last_letter_is_a_one(word):
    if word and is_ballot(word):
        assert (word[-1] + 1) // 2 == 1


def test_random_ballot_words_end_with_one():
    rnd = random.Random(7)
    found = 0
    for _ in range(20000):
        w = [rnd.randint(1, 6) for _ in range(rnd.randint(1, 10))]
        if is_ballot(w):
            found += 1
            assert w[-1] in (1, 2)
    assert found > 50
