"""Schur Q expansions of shifted skew shapes.

The expansion coefficients are shifted Littlewood-Richardson numbers,
computed by counting ballot tableaux: semistandard fillings in canonical
form whose reading word is ballot.  Monomial series are computed by a
separate route (chains of order ideals weighted by the number of valid
primings) and serve as the consistency oracle.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .shapes import (
    Partition,
    ShiftedSkewShape,
    ShapeError,
    as_shape,
    check_strict,
    format_partition,
    is_strict,
    strict_partitions,
)
from .tableaux import ReadingFrame, ShiftedTableau, letter_bounds

INT64_MAX = 2**63 - 1


class CoefficientOverflow(ArithmeticError):
    """A coefficient left the signed 64-bit range."""


def _checked(value: int) -> int:
    if not -INT64_MAX - 1 <= value <= INT64_MAX:
        raise CoefficientOverflow(f"coefficient {value} exceeds 64 bits")
    return value


# ---------------------------------------------------------------------------
# value types


@dataclass(frozen=True)
class QExpansion:
    """Finite integer combination of straight-shape Schur Q functions."""

    coefficients: Mapping[Partition, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        degree = None
        for key, c in self.coefficients.items():
            key = tuple(key)
            if not is_strict(key):
                raise ShapeError(f"{key} is not a strict partition")
            if degree is None:
                degree = sum(key)
            elif sum(key) != degree:
                raise ShapeError("mixed degrees in a Q expansion")
            if c:
                clean[key] = _checked(int(c))
        object.__setattr__(self, "coefficients", clean)

    @property
    def degree(self) -> int | None:
        return next((sum(k) for k in self.coefficients), None)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def items(self) -> list[tuple[Partition, int]]:
        """Terms with keys in descending lexicographic order."""
        return sorted(self.coefficients.items(), reverse=True)

    def __getitem__(self, key: Sequence[int]) -> int:
        return self.coefficients.get(tuple(key), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QExpansion):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __add__(self, other: QExpansion) -> QExpansion:
        out = dict(self.coefficients)
        for k, c in other.coefficients.items():
            out[k] = _checked(out.get(k, 0) + c)
        return QExpansion(out)

    def __neg__(self) -> QExpansion:
        return QExpansion({k: -c for k, c in self.coefficients.items()})

    def __sub__(self, other: QExpansion) -> QExpansion:
        return self + (-other)

    def scale(self, factor: int) -> QExpansion:
        return QExpansion({k: _checked(c * factor) for k, c in self.coefficients.items()})

    def __str__(self) -> str:
        return format_expansion(self)


def format_expansion(exp: QExpansion) -> str:
    """``1*Q[6 2] + 2*Q[5 3] - 1*Q[4 3 1]``; ``0`` for the zero expansion."""
    terms = exp.items()
    if not terms:
        return "0"
    out = []
    for idx, (key, c) in enumerate(terms):
        body = f"{abs(c)}*Q[{format_partition(key)}]"
        if idx == 0:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


_TERM = re.compile(r"([+-]?)\s*(\d+)\*Q\[([\d ]*)\]")


def parse_expansion(text: str) -> QExpansion:
    """Inverse of :func:`format_expansion`."""
    text = text.strip()
    if text == "0":
        return QExpansion()
    coeffs: dict[Partition, int] = {}
    for m in _TERM.finditer(text):
        sign = -1 if m.group(1) == "-" else 1
        key = tuple(int(p) for p in m.group(3).split())
        coeffs[key] = sign * int(m.group(2))
    return QExpansion(coeffs)


@dataclass(frozen=True)
class MonomialSeries:
    """Polynomial in ``nvars`` variables: exponent vector -> coefficient."""

    nvars: int
    coefficients: Mapping[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for key, c in self.coefficients.items():
            key = tuple(key)
            if len(key) != self.nvars:
                raise ValueError(f"exponent vector {key} has wrong length")
            if c:
                clean[key] = _checked(int(c))
        object.__setattr__(self, "coefficients", clean)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialSeries):
            return NotImplemented
        return self.nvars == other.nvars and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(sorted(self.coefficients.items()))))

    def __getitem__(self, key: Sequence[int]) -> int:
        return self.coefficients.get(tuple(key), 0)

    def __add__(self, other: MonomialSeries) -> MonomialSeries:
        if self.nvars != other.nvars:
            raise ValueError("variable counts differ")
        out = dict(self.coefficients)
        for k, c in other.coefficients.items():
            out[k] = _checked(out.get(k, 0) + c)
        return MonomialSeries(self.nvars, out)

    def scale(self, factor: int) -> MonomialSeries:
        return MonomialSeries(self.nvars, {k: _checked(c * factor) for k, c in self.coefficients.items()})

    def leading_term(self) -> tuple[tuple[int, ...], int] | None:
        """Lexicographically greatest exponent vector and its coefficient."""
        if not self.coefficients:
            return None
        key = max(self.coefficients)
        return key, self.coefficients[key]

    def permuted(self, perm: Sequence[int]) -> MonomialSeries:
        return MonomialSeries(
            self.nvars, {tuple(k[perm[i]] for i in range(self.nvars)): c for k, c in self.coefficients.items()}
        )


# ---------------------------------------------------------------------------
# ballot tableau counting


def _walk_search(
    shape: ShiftedSkewShape,
    content: Sequence[int],
    prune: bool,
    collect: bool,
) -> tuple[int, list[tuple[int, ...]]]:
    """Depth-first search over canonical semistandard fillings of ``content``
    in reading order, tracking every i/(i+1)-walk incrementally.

    With ``prune`` on, a branch is cut as soon as some walk sits higher than
    the number of remaining unprimed-capable letters of its low value, and
    letters in the top row are restricted to 1'/1.
    """
    frame = ReadingFrame.of(shape)
    n = len(frame.cells)
    t = len(content)
    if n == 0:
        return (1, [()]) if t == 0 else (0, [])
    top = 2 * t
    remaining = [0] + list(content)
    seen = [False] * (t + 2)
    xs = [0] * (t + 2)
    ys = [0] * (t + 2)
    word = [0] * n
    top_row = [cell[0] == 1 for cell in frame.cells]
    found: list[tuple[int, ...]] = []
    count = 0

    def dfs(p: int) -> None:
        nonlocal count
        if p == n:
            if all(ys[i] == 0 for i in range(1, t)):
                count += 1
                if collect:
                    found.append(tuple(word))
            return
        lo, hi = letter_bounds(word, frame, p, top)
        if prune and top_row[p]:
            hi = min(hi, 2)
        for code in range(lo, hi + 1):
            v = (code + 1) >> 1
            if not remaining[v]:
                continue
            primed = code & 1
            first = not seen[v]
            if first and primed:
                continue
            # walk v reads this letter as low, walk v-1 as high
            sx_lo, sy_lo = xs[v], ys[v]
            sx_hi, sy_hi = xs[v - 1], ys[v - 1]
            if v < t:
                x, y = sx_lo, sy_lo
                if primed or x == 0 or y == 0:
                    xs[v] = x + 1
                else:
                    ys[v] = y - 1
            if v > 1:
                x, y = sx_hi, sy_hi
                if not primed or x == 0 or y == 0:
                    ys[v - 1] = y + 1
                else:
                    xs[v - 1] = x - 1
            remaining[v] -= 1
            ok = True
            if prune:
                if v < t and ys[v] > remaining[v]:
                    ok = False
                elif v > 1 and ys[v - 1] > remaining[v - 1]:
                    ok = False
            if ok:
                word[p] = code
                seen[v] = True
                dfs(p + 1)
                if first:
                    seen[v] = False
            remaining[v] += 1
            xs[v], ys[v] = sx_lo, sy_lo
            xs[v - 1], ys[v - 1] = sx_hi, sy_hi
        word[p] = 0

    dfs(0)
    return count, found


def count_ballot_tableaux(shape: ShiftedSkewShape | str, content: Sequence[int], prune: bool = True) -> int:
    shape = as_shape(shape)
    content = tuple(content)
    if sum(content) != shape.size:
        return 0
    return _walk_search(shape, content, prune, collect=False)[0]


def ballot_tableaux(shape: ShiftedSkewShape | str, content: Sequence[int], prune: bool = True) -> list[ShiftedTableau]:
    shape = as_shape(shape)
    content = tuple(content)
    if sum(content) != shape.size:
        return []
    _, words = _walk_search(shape, content, prune, collect=True)
    return [ShiftedTableau(shape, w) for w in words]


@lru_cache(maxsize=None)
def _lr_cached(outer: Partition, inner: Partition, nu: Partition, prune: bool) -> int:
    return count_ballot_tableaux(ShiftedSkewShape.from_partitions(outer, inner), nu, prune)


def lr_coefficient(outer: Sequence[int], inner: Sequence[int], nu: Sequence[int], prune: bool = True) -> int:
    """Shifted Littlewood-Richardson coefficient ``f^outer_{inner, nu}``."""
    outer, inner, nu = check_strict(outer), check_strict(inner), check_strict(nu)
    if len(inner) > len(outer) or any(m > l for m, l in zip(inner, outer)):
        raise ShapeError(f"{inner} is not contained in {outer}")
    if sum(inner) + sum(nu) != sum(outer):
        raise ShapeError("sizes do not add up")
    return _lr_cached(outer, inner, nu, prune)


@lru_cache(maxsize=4096)
def _q_expansion_cached(shape: ShiftedSkewShape, prune: bool) -> QExpansion:
    coeffs = {}
    for nu in strict_partitions(shape.size):
        c = count_ballot_tableaux(shape, nu, prune)
        if c:
            coeffs[nu] = c
    return QExpansion(coeffs)


def q_expansion(shape: ShiftedSkewShape | str, prune: bool = True) -> QExpansion:
    shape = as_shape(shape)
    if shape.size == 0:
        return QExpansion({(): 1})
    return _q_expansion_cached(shape, prune)


def fingerprint(shape: ShiftedSkewShape | str) -> str:
    return format_expansion(q_expansion(shape))


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:32]


def q_diff(d: ShiftedSkewShape | str, e: ShiftedSkewShape | str) -> QExpansion:
    d, e = as_shape(d), as_shape(e)
    if d.size != e.size:
        raise ShapeError(f"sizes differ: {d.size} vs {e.size}")
    return q_expansion(d) - q_expansion(e)


def is_q_positive(exp: QExpansion) -> bool:
    """All stored coefficients positive; the zero expansion passes (check
    :attr:`QExpansion.is_zero` separately)."""
    return all(c > 0 for c in exp.coefficients.values())


def q_product(a: QExpansion, b: QExpansion) -> QExpansion:
    """Product in the Q basis via ``Q_v Q_r = sum 2^(l(v)+l(r)-l(L)) f^L_{v r} Q_L``."""
    out: dict[Partition, int] = {}
    for nu, ca in a.coefficients.items():
        for rho, cb in b.coefficients.items():
            total = sum(nu) + sum(rho)
            for lam in strict_partitions(total):
                if len(lam) < len(nu) or any(x > y for x, y in zip(nu, lam)):
                    continue
                f = _lr_cached(lam, nu, rho, True)
                if not f:
                    continue
                power = len(nu) + len(rho) - len(lam)
                if power < 0:
                    raise ArithmeticError(f"negative power of 2 for {lam} in Q{nu}*Q{rho}")
                out[lam] = _checked(out.get(lam, 0) + ca * cb * f * 2**power)
    return QExpansion(out)


# ---------------------------------------------------------------------------
# monomial series oracle


def _grid_bits(shape: ShiftedSkewShape) -> tuple[list[int], int]:
    """Cell bitmasks on a grid of width ``W`` (bit ``r * W + c``), so the
    left neighbour of a bit is one position lower and the neighbour below is
    ``W`` positions higher.  ``W`` leaves a blank column, so no wrap-around."""
    width = shape.max_col + 2
    return [1 << (r * width + c) for r, c in sorted(shape.cells)], width


def _order_ideals(shape: ShiftedSkewShape) -> list[int]:
    """All cell subsets closed under taking left and upper neighbours, as
    grid bitmasks sorted by size."""
    bits, width = _grid_bits(shape)
    everything = sum(bits)
    # a cell may be added once its in-shape left and upper neighbours are in
    required = [((b >> 1) | (b >> width)) & everything for b in bits]
    ideals = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for ideal in frontier:
            for bit, req in zip(bits, required):
                if not ideal & bit and ideal & req == req:
                    grown = ideal | bit
                    if grown not in ideals:
                        ideals.add(grown)
                        nxt.append(grown)
        frontier = nxt
    return sorted(ideals, key=lambda m: (m.bit_count(), m))


def _strip_weight(strip: int, width: int) -> int:
    """Number of ways to prime a set of equal-valued cells: a cell with a
    left neighbour in the set must be unprimed, one with a lower neighbour
    in the set must be primed, and a cell with neither is free."""
    has_left = strip & (strip << 1)
    has_below = strip & (strip >> width)
    if has_left & has_below:
        return 0
    return 1 << (strip & ~has_left & ~has_below).bit_count()


@lru_cache(maxsize=2048)
def _transfer(shape: ShiftedSkewShape) -> tuple[int, dict[int, list[tuple[int, int, int]]]]:
    """For each order ideal J, the ideals I inside it whose difference is a
    valid equal-value strip, with the strip's priming weight and size."""
    ideals = _order_ideals(shape)
    width = shape.max_col + 2
    steps: dict[int, list[tuple[int, int, int]]] = {j: [] for j in ideals}
    for i in ideals:
        for j in ideals:
            if i & j == i:
                strip = j ^ i
                w = _strip_weight(strip, width)
                if w:
                    steps[j].append((i, w, strip.bit_count()))
    return ideals[-1], steps


@lru_cache(maxsize=4096)
def _monomial_series_cached(shape: ShiftedSkewShape, m: int) -> MonomialSeries:
    full, steps = _transfer(shape)
    layer: dict[int, dict[tuple[int, ...], int]] = {0: {(): 1}}
    for step in range(m):
        targets = (full,) if step == m - 1 else steps
        nxt: dict[int, dict[tuple[int, ...], int]] = {}
        for j in targets:
            acc: dict[tuple[int, ...], int] = {}
            for i, w, size in steps[j]:
                prev = layer.get(i)
                if not prev:
                    continue
                for key, c in prev.items():
                    k2 = key + (size,)
                    acc[k2] = acc.get(k2, 0) + c * w
            if acc:
                nxt[j] = acc
        layer = nxt
    return MonomialSeries(m, layer.get(full, {}))


def monomial_series(shape: ShiftedSkewShape | str, m: int) -> MonomialSeries:
    """``Q_shape(x_1, ..., x_m)`` as an exact polynomial."""
    if m < 1:
        raise ValueError("need at least one variable")
    shape = as_shape(shape)
    if shape.size == 0:
        return MonomialSeries(m, {(0,) * m: 1})
    return _monomial_series_cached(shape, m)


def monomial_series_by_enumeration(shape: ShiftedSkewShape | str, m: int) -> MonomialSeries:
    """Same polynomial, summing ``x^T`` over every tableau explicitly."""
    from .tableaux import content, enumerate_shssyt

    acc: dict[tuple[int, ...], int] = {}
    for t in enumerate_shssyt(shape, m):
        c = content(t)
        key = tuple(c) + (0,) * (m - len(c))
        acc[key] = acc.get(key, 0) + 1
    return MonomialSeries(m, acc)


def expansion_to_series(exp: QExpansion, m: int) -> MonomialSeries:
    acc: dict[tuple[int, ...], int] = {}
    for nu, c in exp.items():
        if len(nu) > m:
            # Q_nu vanishes in fewer than len(nu) variables
            continue
        straight = ShiftedSkewShape.from_partitions(nu) if nu else ShiftedSkewShape((), ())
        for key, v in monomial_series(straight, m).coefficients.items():
            acc[key] = acc.get(key, 0) + c * v
    return MonomialSeries(m, acc)
