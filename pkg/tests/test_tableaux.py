from __future__ import annotations

import itertools

import pytest

from qfray.letters import content_of, letter, parse_compact_word, parse_word
from qfray.shapes import ShapeError, ShapeKind, ShiftedSkewShape, antipodal, as_shape, classify, enumerate_shifted_skew_shapes, parse_shape
from qfray.tableaux import (
    ShiftedTableau,
    content,
    enumerate_fillings,
    enumerate_shssyt,
    greedy_filling,
    is_canonical,
    is_semistandard,
    reading_order,
    reading_word,
    render,
)
from qfray.walks import is_ballot

# shapes read off the drawn tableaux
NEAR_RIBBON_SHAPE = "8 5 3 1/4 3 1"
EXAMPLE_25 = "10 8 6 5 1/7 5 4 1"
SKEW_EXAMPLE = "8 7 5 2/3 1"


def w(text: str) -> list[int]:
    return parse_word(text)


def small_tableau() -> ShiftedTableau:
    return ShiftedTableau.from_rows(NEAR_RIBBON_SHAPE, [w("1' 1 1 1"), w("1' 2"), w("1' 1"), w("1")])


def example_25() -> ShiftedTableau:
    rows = [w("1' 1 1"), w("1' 1 2"), w("1' 3'"), w("1 2' 2 3"), w("2")]
    return ShiftedTableau.from_rows(EXAMPLE_25, rows)


def brute_force(shape, max_value, content_=None, canonical=False):
    """Filter every assignment of letters to cells."""
    shape = as_shape(shape)
    n = shape.size
    out = set()
    for word in itertools.product(range(1, 2 * max_value + 1), repeat=n):
        t = ShiftedTableau(shape, word)
        if not is_semistandard(t):
            continue
        if content_ is not None and content(t) != tuple(content_):
            continue
        if canonical and not is_canonical(t):
            continue
        out.add(word)
    return out


def test_small_tableau():
    t = small_tableau()
    assert is_semistandard(t)
    assert reading_word(t) == parse_compact_word("11'11'21'111")
    assert content(t) == (8, 1)
    assert classify(NEAR_RIBBON_SHAPE).is_near_ribbon


def test_example_25():
    t = example_25()
    assert is_semistandard(t)
    assert reading_word(t) == parse_compact_word("212'231'3'1'121'11")
    assert is_canonical(t)
    assert is_ballot(reading_word(t))
    # counting the printed reading word gives (7,4,2)
    assert content(t) == (7, 4, 2)


def test_semistandard_trivial():
    col = parse_shape("2 1/1")  # two cells stacked in one column
    assert reading_order(col) == [(2, 2), (1, 2)]
    assert not is_semistandard(ShiftedTableau(col, (letter(1), letter(1))))
    assert is_semistandard(ShiftedTableau(col, (letter(1), letter(1, True))))
    row = parse_shape("2")
    assert not is_semistandard(ShiftedTableau(row, (letter(1, True), letter(1, True))))
    assert is_semistandard(ShiftedTableau(row, (letter(1, True), letter(1))))


def test_canonical_trivial():
    assert not is_canonical(w("2' 1"))
    assert is_canonical(w("2 2' 1 1'"))
    assert is_canonical([])


def test_single_cell_and_empty():
    t = ShiftedTableau(parse_shape("1"), (letter(3, True),))
    assert reading_word(t) == [letter(3, True)]
    assert content(ShiftedTableau(ShiftedSkewShape((), ()), ())) == ()
    with pytest.raises(ShapeError):
        ShiftedTableau(parse_shape("2"), (letter(1),))


def test_render():
    assert render(small_tableau()) == "            1' 1  1  1\n            1' 2\n         1' 1\n         1"


def test_greedy_skew_example():
    g = greedy_filling(SKEW_EXAMPLE)
    assert g.ribbon_count == 4
    assert g.content == (8, 7, 3)
    assert g.monomial() == (16, (8, 7, 3))


def test_greedy_single_row():
    g = greedy_filling("5")
    assert g.monomial() == (2, (5,))
    with pytest.raises(ShapeError):
        greedy_filling(ShiftedSkewShape((), ()))


@pytest.mark.parametrize("n", range(2, 9))
def test_greedy_near_ribbons(n):
    for s in enumerate_shifted_skew_shapes(n):
        kind = classify(s).kind
        if kind in (ShapeKind.NEAR_RIBBON_ORDINARY, ShapeKind.FRAYED_RIBBON):
            assert greedy_filling(s).monomial() == (4, (n - 1, 1)), str(s)


@pytest.mark.parametrize("n", range(1, 9))
def test_greedy_layers_partition(n):
    for s in enumerate_shifted_skew_shapes(n):
        g = greedy_filling(s)
        assert set(g.filling) == s.cells
        assert sum(g.content) == n


@pytest.mark.parametrize("n", range(1, 9))
def test_greedy_antipodal_invariance(n):
    for s in enumerate_shifted_skew_shapes(n):
        assert greedy_filling(s).monomial() == greedy_filling(antipodal(s)).monomial(), str(s)


def test_enumerate_fillings_examples():
    got = {t.word for t in enumerate_fillings("2 1", (2, 1), require_canonical=True)}
    assert got == brute_force("2 1", 2, (2, 1), canonical=True)
    assert len(list(enumerate_fillings("4", (4,)))) == 2
    assert len(list(enumerate_fillings("4", (4,), require_canonical=True))) == 1
    with pytest.raises(ValueError):
        list(enumerate_fillings("4", (3,)))
    assert list(enumerate_fillings("2 1/1", (2,))) != []
    assert len(list(enumerate_fillings("3", (0, 3)))) == 2
    assert list(enumerate_fillings("2 1/1", (0, 2))) != []
    assert list(enumerate_fillings("3 1", (0, 4))) == []


def test_enumerate_shssyt_examples():
    assert len(list(enumerate_shssyt("1", 2))) == 4
    assert len(list(enumerate_shssyt("5", 1))) == 2
    assert {t.word for t in enumerate_shssyt("2 1", 2)} == brute_force("2 1", 2)
    with pytest.raises(ValueError):
        list(enumerate_shssyt("1", 0))


def _contents(n, parts):
    for c in itertools.product(range(n + 1), repeat=parts):
        if sum(c) == n:
            yield c


def _padded(word, parts):
    c = content_of(word)
    return c + (0,) * (parts - len(c))


def _oracle_shapes(n):
    # all shapes to size 4; at size 5 the connected ones plus a stride of the rest
    if n < 5:
        return enumerate_shifted_skew_shapes(n, connected_only=False)
    connected = set(enumerate_shifted_skew_shapes(n))
    rest = [s for s in enumerate_shifted_skew_shapes(n, connected_only=False) if s not in connected]
    return sorted(connected, key=str) + rest[::7]


@pytest.mark.parametrize("n", range(1, 6))
def test_enumerate_fillings_brute_force(n):
    for shape in _oracle_shapes(n):
        for parts in (1, 2, 3):
            everything = brute_force(shape, parts)
            for c in _contents(n, parts):
                want = {wd for wd in everything if _padded(wd, parts) == c}
                for canonical in (False, True):
                    got = [t.word for t in enumerate_fillings(shape, c, canonical)]
                    assert len(got) == len(set(got))
                    expect = {wd for wd in want if is_canonical(wd)} if canonical else want
                    assert set(got) == expect, (str(shape), c, canonical)


def test_fillings_are_semistandard_with_requested_content():
    for t in enumerate_fillings(EXAMPLE_25, (7, 4, 2), require_canonical=True):
        assert is_semistandard(t) and is_canonical(t)
        assert content(t) == (7, 4, 2)
