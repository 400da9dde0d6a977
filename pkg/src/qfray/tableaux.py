"""Fillings of shifted skew shapes with the doubled alphabet."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .letters import content_of, format_letter, is_primed, letter, value_of
from .shapes import Cell, ShapeError, ShiftedSkewShape, as_shape, components, has_2x2, is_ribbon_cells


def reading_order(shape: ShiftedSkewShape) -> list[Cell]:
    """Cells row by row from the bottom row up, each row left to right."""
    return [cell for row in reversed(shape.rows) for cell in row]


@dataclass(frozen=True)
class ReadingFrame:
    """Reading order of a shape plus, for each position, the position of the
    left neighbour and of the neighbour below (``-1`` when absent).  Both
    neighbours precede the cell in reading order."""

    cells: tuple[Cell, ...]
    left: tuple[int, ...]
    below: tuple[int, ...]
    row_start: tuple[bool, ...]

    @classmethod
    def of(cls, shape: ShiftedSkewShape) -> ReadingFrame:
        cells = reading_order(shape)
        index = {cell: p for p, cell in enumerate(cells)}
        left = tuple(index.get((r, c - 1), -1) for r, c in cells)
        below = tuple(index.get((r + 1, c), -1) for r, c in cells)
        row_start = tuple(p == 0 or cells[p - 1][0] != cells[p][0] for p in range(len(cells)))
        return cls(tuple(cells), left, below, row_start)


def letter_bounds(word: Sequence[int], frame: ReadingFrame, p: int, top: int) -> tuple[int, int]:
    """Inclusive code range allowed at position ``p`` given earlier letters."""
    lo, hi = 1, top
    left = frame.left[p]
    if left >= 0:
        code = word[left]
        lo = code if not is_primed(code) else code + 1
    below = frame.below[p]
    if below >= 0:
        code = word[below]
        hi = min(hi, code if is_primed(code) else code - 1)
    return lo, hi


@dataclass(frozen=True)
class ShiftedTableau:
    """A filling stored as its reading word (see :func:`reading_order`)."""

    shape: ShiftedSkewShape
    word: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.word) != self.shape.size:
            raise ShapeError("tableau does not cover its shape")

    @classmethod
    def from_entries(cls, shape: ShiftedSkewShape | str, entries: Mapping[Cell, int]) -> ShiftedTableau:
        shape = as_shape(shape)
        if set(entries) != set(shape.cells):
            raise ShapeError("entries do not match the cells of the shape")
        return cls(shape, tuple(entries[cell] for cell in reading_order(shape)))

    @classmethod
    def from_rows(cls, shape: ShiftedSkewShape | str, rows: Sequence[Sequence[int]]) -> ShiftedTableau:
        """Build from letter rows listed top row first."""
        shape = as_shape(shape)
        entries = {}
        for cells, letters in zip(shape.rows, rows, strict=True):
            entries.update(zip(cells, letters, strict=True))
        return cls.from_entries(shape, entries)

    @cached_property
    def entries(self) -> dict[Cell, int]:
        return dict(zip(reading_order(self.shape), self.word))

    def __str__(self) -> str:
        return render(self)


def render(tableau: ShiftedTableau) -> str:
    """One line per row, tokens aligned to shifted column positions."""
    entries = tableau.entries
    lines = []
    for row in tableau.shape.rows:
        if not row:
            lines.append("")
            continue
        first = row[0][1]
        pad = "   " * (first - 1)
        lines.append(pad + " ".join(f"{format_letter(entries[c]):<2}" for c in row).rstrip())
    return "\n".join(lines)


def reading_word(tableau: ShiftedTableau) -> list[int]:
    return list(tableau.word)


def content(tableau: ShiftedTableau) -> tuple[int, ...]:
    return content_of(tableau.word)


def is_semistandard(tableau: ShiftedTableau) -> bool:
    entries = tableau.entries
    for (r, c), code in entries.items():
        right = entries.get((r, c + 1))
        if right is not None and (right < code or (right == code and is_primed(code))):
            return False
        down = entries.get((r + 1, c))
        if down is not None and (down < code or (down == code and not is_primed(code))):
            return False
    return True


def is_canonical(tableau: ShiftedTableau | Sequence[int]) -> bool:
    word = tableau.word if isinstance(tableau, ShiftedTableau) else tableau
    seen = set()
    for code in word:
        v = value_of(code)
        if v not in seen:
            if is_primed(code):
                return False
            seen.add(v)
    return True


# ---------------------------------------------------------------------------
# greedy filling


@dataclass(frozen=True)
class GreedyResult:
    filling: dict[Cell, int]
    ribbon_count: int
    content: tuple[int, ...]

    @property
    def coefficient(self) -> int:
        return 2 ** self.ribbon_count

    def monomial(self) -> tuple[int, tuple[int, ...]]:
        return self.coefficient, self.content


def _neighbours8(cell: Cell) -> Iterator[Cell]:
    r, c = cell
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr or dc:
                yield (r + dr, c + dc)


def greedy_filling(shape: ShiftedSkewShape | str) -> GreedyResult:
    """Layered filling: layer 1 is the top row plus every cell touching (edge
    or corner) a cell of the removed inner diagram; layer ``t + 1`` is every
    unfilled cell touching layer ``t``."""
    shape = as_shape(shape)
    if shape.size == 0:
        raise ShapeError("greedy filling of the empty shape")
    removed = {(i, j) for i, mu in enumerate(shape.inner, start=1) for j in range(i, i + mu)}
    todo = set(shape.cells)
    layer = {cell for cell in todo if cell[0] == 1 or any(nb in removed for nb in _neighbours8(cell))}
    filling: dict[Cell, int] = {}
    ribbons = 0
    label = 1
    while layer:
        for comp in components(layer):
            if has_2x2(comp) or not is_ribbon_cells(comp):
                raise AssertionError(f"greedy layer {label} of {shape} is not a union of ribbons")
            ribbons += 1
        for cell in layer:
            filling[cell] = label
        todo -= layer
        layer = {cell for cell in todo if any(nb in layer for nb in _neighbours8(cell))}
        label += 1
    if todo:
        raise AssertionError(f"greedy filling of {shape} left cells unlabeled")
    counts = [0] * (label - 1)
    for v in filling.values():
        counts[v - 1] += 1
    return GreedyResult(filling, ribbons, tuple(counts))


# ---------------------------------------------------------------------------
# enumeration


def _backtrack(
    shape: ShiftedSkewShape,
    max_value: int,
    target: Sequence[int] | None,
    canonical: bool,
) -> Iterator[tuple[int, ...]]:
    frame = ReadingFrame.of(shape)
    n = len(frame.cells)
    top = letter(max_value) if max_value >= 1 else 0
    word = [0] * n
    remaining = list(target) if target is not None else None
    seen = [False] * (max_value + 2)

    def fill(p: int) -> Iterator[tuple[int, ...]]:
        if p == n:
            yield tuple(word)
            return
        lo, hi = letter_bounds(word, frame, p, top)
        for code in range(lo, hi + 1):
            v = (code + 1) // 2
            if remaining is not None and remaining[v - 1] == 0:
                continue
            first = not seen[v]
            if canonical and first and code % 2 == 1:
                continue
            word[p] = code
            seen[v] = True
            if remaining is not None:
                remaining[v - 1] -= 1
            yield from fill(p + 1)
            if remaining is not None:
                remaining[v - 1] += 1
            if first:
                seen[v] = False
        word[p] = 0

    yield from fill(0)


def enumerate_fillings(
    shape: ShiftedSkewShape | str,
    content: Sequence[int],
    require_canonical: bool = False,
) -> Iterator[ShiftedTableau]:
    """All semistandard tableaux of the given content, in reading-order
    backtracking order."""
    shape = as_shape(shape)
    content = tuple(content)
    if any(m < 0 for m in content) or sum(content) != shape.size:
        raise ValueError(f"content {content} does not sum to |{shape}| = {shape.size}")
    for word in _backtrack(shape, len(content), content, require_canonical):
        yield ShiftedTableau(shape, word)


def enumerate_shssyt(shape: ShiftedSkewShape | str, max_value: int) -> Iterator[ShiftedTableau]:
    """All semistandard tableaux with letters of value at most ``max_value``."""
    if max_value < 1:
        raise ValueError("max_value must be at least 1")
    shape = as_shape(shape)
    for word in _backtrack(shape, max_value, None, False):
        yield ShiftedTableau(shape, word)
