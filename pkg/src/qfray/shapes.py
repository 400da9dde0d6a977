"""Shifted skew shapes: construction, canonical form, classification and
the derived-shape operations used throughout the package.

Cells are ``(row, col)`` pairs, 1-indexed from the top-left corner of the
shifted plane, so every cell satisfies ``col >= row``.  A shape is stored
as a pair of strict partitions ``outer/inner`` and is always canonical:
its top row is row 1 and at least one cell sits on the staircase.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Cell = tuple[int, int]
Partition = tuple[int, ...]


class ShapeError(ValueError):
    """Raised for malformed partitions, shape strings or cell sets."""


# ---------------------------------------------------------------------------
# strict partitions


def check_strict(parts: Sequence[int]) -> Partition:
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts):
        raise ShapeError(f"partition {parts} has a non-positive part")
    if any(a <= b for a, b in zip(parts, parts[1:])):
        raise ShapeError(f"partition {parts} is not strictly decreasing")
    return parts


def is_strict(parts: Sequence[int]) -> bool:
    return all(p > 0 for p in parts) and all(a > b for a, b in zip(parts, parts[1:]))


def strict_partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Yield the strict partitions of ``n`` in descending lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in strict_partitions(n - first, first - 1):
            yield (first,) + rest


def format_partition(parts: Sequence[int]) -> str:
    return " ".join(str(p) for p in parts)


# ---------------------------------------------------------------------------
# the shape value type


@dataclass(frozen=True)
class ShiftedSkewShape:
    """The shifted skew shape ``outer/inner`` in canonical position.

    Construct through :meth:`from_partitions`, :meth:`from_cells` or
    :func:`parse_shape`; the raw constructor assumes its arguments are
    already canonical.
    """

    outer: Partition
    inner: Partition = ()

    @classmethod
    def from_partitions(cls, outer: Sequence[int], inner: Sequence[int] = ()) -> ShiftedSkewShape:
        outer = check_strict(outer)
        inner = check_strict(inner)
        if len(inner) > len(outer) or any(m > l for m, l in zip(inner, outer)):
            raise ShapeError(f"{format_partition(inner)} is not contained in {format_partition(outer)}")
        return cls.from_cells(_cells_of(outer, inner))

    @classmethod
    def from_cells(cls, cells: Iterable[Cell]) -> ShiftedSkewShape:
        """Build the canonical shape whose cells are a translate of ``cells``.

        Translation is diagonal (up to row 1) followed by horizontal (left
        until a cell touches the staircase); both preserve every row/column
        adjacency and hence the Q-function.
        """
        cells = set(cells)
        if not cells:
            return cls((), ())
        if any(c < r for r, c in cells):
            raise ShapeError("cell left of the staircase")
        top = min(r for r, _ in cells) - 1
        left = min(c - r for r, c in cells)
        cells = {(r - top, c - top - left) for r, c in cells}
        nrows = max(r for r, _ in cells)
        rows: list[tuple[int, int] | None] = []
        for i in range(1, nrows + 1):
            cols = sorted(c for r, c in cells if r == i)
            if not cols:
                rows.append(None)
                continue
            if cols[-1] - cols[0] + 1 != len(cols):
                raise ShapeError(f"row {i} is not an interval")
            rows.append((cols[0], cols[-1]))
        outer = [0] * nrows
        inner = [0] * nrows
        for i in range(nrows, 0, -1):
            span = rows[i - 1]
            if span is None:
                # an empty interior row: pick the smallest admissible part
                outer[i - 1] = inner[i - 1] = outer[i] + 1
            else:
                a, b = span
                outer[i - 1] = b - i + 1
                inner[i - 1] = a - i
        while inner and inner[-1] == 0:
            inner.pop()
        if not is_strict(outer) or not is_strict(inner):
            raise ShapeError("cell set is not a shifted skew shape")
        return cls(tuple(outer), tuple(inner))

    # -- derived data ------------------------------------------------------

    @cached_property
    def cells(self) -> frozenset[Cell]:
        return frozenset(_cells_of(self.outer, self.inner))

    @cached_property
    def rows(self) -> tuple[tuple[Cell, ...], ...]:
        """Cells grouped by row, top row first, each row left to right."""
        out = []
        for i in range(1, len(self.outer) + 1):
            mu = self.inner[i - 1] if i <= len(self.inner) else 0
            out.append(tuple((i, j) for j in range(i + mu, i + self.outer[i - 1])))
        return tuple(out)

    @property
    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)

    def __len__(self) -> int:
        return self.size

    def __contains__(self, cell: object) -> bool:
        return cell in self.cells

    def __str__(self) -> str:
        if not self.inner:
            return format_partition(self.outer)
        return f"{format_partition(self.outer)}/{format_partition(self.inner)}"

    def __repr__(self) -> str:
        return f"ShiftedSkewShape({str(self)!r})"

    @property
    def max_col(self) -> int:
        return max((c for _, c in self.cells), default=0)

    def ascii(self, fill: str = "#") -> str:
        """Render the shape on a grid; ``.`` marks empty positions right of
        the staircase."""
        ncols = self.max_col
        lines = []
        for i in range(1, len(self.outer) + 1):
            line = []
            for j in range(1, ncols + 1):
                if j < i:
                    line.append(" ")
                elif (i, j) in self.cells:
                    line.append(fill)
                else:
                    line.append(".")
            lines.append(" ".join(line).rstrip())
        return "\n".join(lines)


def _cells_of(outer: Partition, inner: Partition) -> list[Cell]:
    cells = []
    for i, lam in enumerate(outer, start=1):
        mu = inner[i - 1] if i <= len(inner) else 0
        cells.extend((i, j) for j in range(i + mu, i + lam))
    return cells


_PARTS_RE = re.compile(r"^\s*(\d+(\s*[,\s]\s*\d+)*)?\s*$")


def _parse_parts(text: str) -> list[int]:
    if not _PARTS_RE.match(text):
        raise ShapeError(f"cannot parse partition {text!r}")
    return [int(tok) for tok in re.split(r"[,\s]+", text.strip()) if tok]


def parse_shape(text: str) -> ShiftedSkewShape:
    """Parse ``"l1 l2 ..."`` or ``"l1 l2 .../m1 m2 ..."`` (commas also allowed)."""
    if text.count("/") > 1:
        raise ShapeError(f"too many '/' in {text!r}")
    outer_text, _, inner_text = text.partition("/")
    outer = _parse_parts(outer_text)
    if not outer:
        raise ShapeError(f"empty outer partition in {text!r}")
    inner = _parse_parts(inner_text)
    return ShiftedSkewShape.from_partitions(outer, inner)


def as_shape(shape: ShiftedSkewShape | str) -> ShiftedSkewShape:
    return parse_shape(shape) if isinstance(shape, str) else shape


# ---------------------------------------------------------------------------
# cell-set predicates


def is_connected(cells: Iterable[Cell]) -> bool:
    cells = set(cells)
    if not cells:
        return False
    start = next(iter(cells))
    seen = {start}
    stack = [start]
    while stack:
        r, c = stack.pop()
        for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


def components(cells: Iterable[Cell]) -> list[frozenset[Cell]]:
    """Edge-connected components, ordered by their smallest cell."""
    remaining = set(cells)
    out = []
    while remaining:
        start = min(remaining)
        comp = {start}
        stack = [start]
        remaining.discard(start)
        while stack:
            r, c = stack.pop()
            for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                if nb in remaining:
                    remaining.discard(nb)
                    comp.add(nb)
                    stack.append(nb)
        out.append(frozenset(comp))
    return out


def has_2x2(cells: Iterable[Cell]) -> bool:
    cells = set(cells)
    return any(
        (r, c + 1) in cells and (r + 1, c) in cells and (r + 1, c + 1) in cells
        for r, c in cells
    )


def is_ordinary_skew(cells: Iterable[Cell]) -> bool:
    """True when the rows are intervals whose left and right endpoints both
    weakly decrease going down, i.e. the cells form an ordinary skew diagram."""
    by_row: dict[int, list[int]] = {}
    for r, c in cells:
        by_row.setdefault(r, []).append(c)
    spans = []
    for r in sorted(by_row):
        cols = sorted(by_row[r])
        if cols[-1] - cols[0] + 1 != len(cols):
            return False
        spans.append((r, cols[0], cols[-1]))
    for (r1, a1, b1), (r2, a2, b2) in zip(spans, spans[1:]):
        if r2 == r1 + 1 and (a2 > a1 or b2 > b1):
            return False
    return True


def is_ribbon_cells(cells: Iterable[Cell]) -> bool:
    cells = set(cells)
    return is_connected(cells) and not has_2x2(cells) and is_ordinary_skew(cells)


# ---------------------------------------------------------------------------
# classification


class ShapeKind(str, enum.Enum):
    RIBBON = "ribbon"
    NEAR_RIBBON_ORDINARY = "near_ribbon_ordinary"
    FRAYED_RIBBON = "frayed_ribbon"
    OTHER = "other"


@dataclass(frozen=True)
class ShapeClass:
    kind: ShapeKind
    connected: bool
    staircase_count: int

    @property
    def is_near_ribbon(self) -> bool:
        return self.kind in (ShapeKind.NEAR_RIBBON_ORDINARY, ShapeKind.FRAYED_RIBBON)


def staircase_cells(shape: ShiftedSkewShape) -> list[Cell]:
    return sorted(cell for cell in shape.cells if cell[0] == cell[1])


def is_near_ribbon_cells(cells: frozenset[Cell]) -> bool:
    if not is_connected(cells) or is_ribbon_cells(cells):
        return False
    return any(is_ribbon_cells(cells - {cell}) for cell in cells)


def classify(shape: ShiftedSkewShape | str) -> ShapeClass:
    shape = as_shape(shape)
    if shape.size == 0:
        raise ShapeError("cannot classify the empty shape")
    cells = shape.cells
    connected = is_connected(cells)
    stairs = len(staircase_cells(shape))
    if is_ribbon_cells(cells):
        kind = ShapeKind.RIBBON
    elif is_near_ribbon_cells(cells):
        kind = ShapeKind.FRAYED_RIBBON if stairs >= 2 else ShapeKind.NEAR_RIBBON_ORDINARY
    else:
        kind = ShapeKind.OTHER
    return ShapeClass(kind, connected, stairs)


def is_frayed_ribbon(shape: ShiftedSkewShape | str) -> bool:
    return classify(shape).kind is ShapeKind.FRAYED_RIBBON


# ---------------------------------------------------------------------------
# antipodal reflection and other derived shapes


def antipodal(shape: ShiftedSkewShape | str) -> ShiftedSkewShape:
    """Reflect across the northeast-southwest diagonal."""
    shape = as_shape(shape)
    n = shape.max_col
    return ShiftedSkewShape.from_cells((n + 1 - j, n + 1 - i) for i, j in shape.cells)


def shift_top_rows(shape: ShiftedSkewShape | str, k: int) -> ShiftedSkewShape:
    """Move the topmost ``k`` rows one unit to the right."""
    shape = as_shape(shape)
    if k < 0 or k > len(shape.outer):
        raise ShapeError(f"cannot shift {k} rows of a {len(shape.outer)}-row shape")
    outer = list(shape.outer)
    inner = list(shape.inner) + [0] * (len(outer) - len(shape.inner))
    for i in range(k):
        outer[i] += 1
        inner[i] += 1
    while inner and inner[-1] == 0:
        inner.pop()
    return ShiftedSkewShape.from_partitions(outer, inner)


def append_detached_row(shape: ShiftedSkewShape | str, r: int) -> ShiftedSkewShape:
    """Add a row of ``r`` cells to the upper right, separated from the rest by
    an empty row-free, column-free gap."""
    shape = as_shape(shape)
    if r < 1:
        raise ShapeError("detached row length must be positive")
    moved = {(i + 1, j + 1) for i, j in shape.cells}
    start = shape.max_col + 3 if shape.cells else 1
    top = {(1, j) for j in range(start, start + r)}
    return ShiftedSkewShape.from_cells(moved | top)


# ---------------------------------------------------------------------------
# turns of frayed ribbons


@dataclass(frozen=True)
class TurnReport:
    outer_corners: tuple[Cell, ...]
    inner_corners: tuple[Cell, ...]

    @property
    def outer_turns(self) -> int:
        return len(self.outer_corners)

    @property
    def inner_turns(self) -> int:
        return len(self.inner_corners)

    @property
    def total(self) -> int:
        return len(self.outer_corners) + len(self.inner_corners)


def _require_frayed(shape: ShiftedSkewShape) -> None:
    if not is_frayed_ribbon(shape):
        raise ShapeError(f"{shape} is not a frayed ribbon")


def count_turns(shape: ShiftedSkewShape | str) -> TurnReport:
    """Scan for the two L-shaped turn patterns, skipping any L that contains
    one of the two staircase cells."""
    shape = as_shape(shape)
    _require_frayed(shape)
    cells = shape.cells
    stairs = set(staircase_cells(shape))
    outer, inner = [], []
    for i, j in sorted(cells):
        ell = {(i, j), (i - 1, j), (i, j - 1)}
        if ell <= cells and not ell & stairs:
            outer.append((i, j))
        ell = {(i, j), (i, j + 1), (i + 1, j)}
        if ell <= cells and not ell & stairs:
            inner.append((i, j))
    return TurnReport(tuple(outer), tuple(inner))


def count_turn_squares(shape: ShiftedSkewShape | str) -> int:
    """Alternative turn count: squares lying in both a nontrivial row and a
    nontrivial column, except the square adjacent to both staircase cells.

    Kept as a diagnostic against :func:`count_turns`.
    """
    shape = as_shape(shape)
    _require_frayed(shape)
    cells = shape.cells
    (s, _), _ = staircase_cells(shape)
    hinge = (s, s + 1)
    total = 0
    for i, j in cells:
        if (i, j) == hinge or i == j:
            continue
        horizontal = (i, j - 1) in cells or (i, j + 1) in cells
        vertical = (i - 1, j) in cells or (i + 1, j) in cells
        total += horizontal and vertical
    return total


def normalize_orientation(shape: ShiftedSkewShape | str) -> ShiftedSkewShape:
    """Return the member of ``{shape, antipodal(shape)}`` whose
    second-to-bottom row has at least three cells (preferring ``shape``)."""
    shape = as_shape(shape)
    _require_frayed(shape)
    for candidate in (shape, antipodal(shape)):
        if len(candidate.rows[-2]) >= 3:
            return candidate
    raise ShapeError(f"no orientation of {shape} has a long second-to-bottom row")


def one_turn_column_height(shape: ShiftedSkewShape | str) -> int:
    shape = normalize_orientation(shape)
    report = count_turns(shape)
    if report.total != 1:
        raise ShapeError(f"{shape} has {report.total} turns, expected 1")
    (i, j), = report.outer_corners
    return sum(1 for r in range(1, i) if (r, j) in shape.cells)


@dataclass(frozen=True)
class TwoTurnParams:
    top_width: int
    height: int
    bottom_width: int

    @property
    def w1(self) -> int:
        return self.top_width

    @property
    def h(self) -> int:
        return self.height

    @property
    def w2(self) -> int:
        return self.bottom_width


def two_turn_params(shape: ShiftedSkewShape | str) -> TwoTurnParams:
    shape = normalize_orientation(shape)
    report = count_turns(shape)
    if report.total != 2:
        raise ShapeError(f"{shape} has {report.total} turns, expected 2")
    rows = shape.rows
    params = TwoTurnParams(len(rows[0]), len(rows) - 3, len(rows[-2]))
    assert params.w1 + params.h + params.w2 + 1 == shape.size
    return params


# ---------------------------------------------------------------------------
# frayed ribbon codes


class Orientation(str, enum.Enum):
    RIGHT_THEN_UP = "right-then-up"
    UP_THEN_RIGHT = "up-then-right"


@dataclass(frozen=True)
class FrayedRibbonCode:
    """Row lengths of the ribbon part, bottom row first, plus an orientation."""

    orientation: Orientation
    rows: tuple[int, ...]

    @property
    def size(self) -> int:
        return 1 + sum(self.rows)


def from_frayed_code(code: FrayedRibbonCode) -> ShiftedSkewShape:
    alpha = code.rows
    if not alpha or alpha[0] < 2 or any(a < 1 for a in alpha):
        raise ShapeError(f"invalid frayed ribbon code {alpha}")
    r = len(alpha)
    cells = {(r + 1, r + 1)}
    start = r
    for k, length in enumerate(alpha):
        row = r - k
        cells.update((row, c) for c in range(start, start + length))
        start += length - 1
    shape = ShiftedSkewShape.from_cells(cells)
    if code.orientation is Orientation.UP_THEN_RIGHT:
        shape = antipodal(shape)
    return shape


def encode_frayed(shape: ShiftedSkewShape | str) -> FrayedRibbonCode:
    """Inverse of :func:`from_frayed_code`, preferring the right-then-up reading."""
    shape = as_shape(shape)
    _require_frayed(shape)
    for orientation, candidate in (
        (Orientation.RIGHT_THEN_UP, shape),
        (Orientation.UP_THEN_RIGHT, antipodal(shape)),
    ):
        rows = candidate.rows
        alpha = tuple(len(row) for row in reversed(rows[:-1]))
        code = FrayedRibbonCode(orientation, alpha)
        if alpha[0] >= 2 and from_frayed_code(code) == shape:
            return code
    raise ShapeError(f"{shape} has no frayed ribbon code")


def compositions(n: int, first_min: int = 1) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(max(first_min, 1), n + 1):
        for rest in compositions(n - first):
            yield (first,) + rest


def _shape_key(shape: ShiftedSkewShape) -> tuple:
    return (shape.outer, shape.inner)


def enumerate_frayed_ribbons(n: int, one_per_antipodal_pair: bool = False) -> list[ShiftedSkewShape]:
    """All frayed ribbons of size ``n``, sorted by (outer, inner)."""
    if n < 4:
        return []
    found: set[ShiftedSkewShape] = set()
    for alpha in compositions(n - 1, first_min=2):
        for orientation in Orientation:
            found.add(from_frayed_code(FrayedRibbonCode(orientation, alpha)))
    shapes = sorted(found, key=_shape_key)
    if one_per_antipodal_pair:
        kept, seen = [], set()
        for s in shapes:
            if s not in seen:
                kept.append(s)
                seen.add(s)
                seen.add(antipodal(s))
        shapes = kept
    return shapes


# ---------------------------------------------------------------------------
# exhaustive shape enumeration


def enumerate_shifted_skew_shapes(n: int, connected_only: bool = True) -> list[ShiftedSkewShape]:
    """All canonical shifted skew shapes of size ``n``, sorted by (outer, inner).

    Rows are added top-down by choosing ``(outer_i, inner_i)``; connected
    search requires every new row to be nonempty and to overlap the row
    above.  Disconnected shapes may have arbitrarily wide gaps, so the
    search is confined to rows ``1..n`` and columns ``1..2n`` (every
    canonical connected shape lies in that box).  The window is not closed
    under antipodal reflection once gaps are allowed.
    """
    if n < 1:
        return []
    max_col = 2 * n
    found: set[ShiftedSkewShape] = set()
    outer: list[int] = []
    inner: list[int] = []

    def grow(remaining: int) -> None:
        if remaining == 0:
            found.add(ShiftedSkewShape.from_cells(_cells_of(tuple(outer), tuple(inner))))
            return
        i = len(outer) + 1
        if i > n:
            return
        lam_prev, mu_prev = outer[-1], inner[-1]
        for lam in range(1, min(lam_prev - 1, max_col - i + 1) + 1):
            mu_choices = [0] if mu_prev == 0 else range(0, min(mu_prev - 1, lam) + 1)
            for mu in mu_choices:
                width = lam - mu
                if width > remaining:
                    continue
                if connected_only and (width == 0 or lam < mu_prev):
                    continue
                if width == 0 and mu == 0:
                    continue
                outer.append(lam)
                inner.append(mu)
                grow(remaining - width)
                outer.pop()
                inner.pop()

    for lam in range(1, max_col + 1):
        for mu in range(max(0, lam - n), lam):
            outer.append(lam)
            inner.append(mu)
            grow(n - (lam - mu))
            outer.pop()
            inner.pop()
    return sorted(found, key=_shape_key)


def brute_force_shapes(n: int, connected_only: bool = True) -> set[ShiftedSkewShape]:
    """Independent enumerator for small ``n``: filter every pair of strict
    partitions ``outer ⊇ inner`` with ``|outer| - |inner| == n`` whose
    diagram fits in the rows ``1..n``, columns ``1..2n`` box."""
    max_col = 2 * n
    out = set()
    limit = sum(max_col - i for i in range(n))
    for total in range(n, limit + 1):
        for lam in strict_partitions(total, max_col):
            if len(lam) > n or any(i + part > max_col for i, part in enumerate(lam)):
                continue
            for mu in strict_partitions(total - n, lam[0]):
                if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
                    continue
                cells = _cells_of(lam, mu)
                if connected_only and not is_connected(cells):
                    continue
                out.add(ShiftedSkewShape.from_cells(cells))
    return out
