"""Closed-form Schur Q coefficients for frayed ribbons with few turns.

Each function evaluates one explicit formula.  They are kept free of any
tableau counting so that they can serve as independent checks on the
generic engine in :mod:`qfray.expansion`.

Parameters follow the two-turn picture: ``w1`` is the top-row width, ``h``
the column height between the two turns and ``w2`` the width of the
second row from the bottom, with ``n = w1 + h + w2 + 1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .expansion import QExpansion
from .shapes import Partition, is_strict


class ClosedFormError(ValueError):
    """Parameters outside the range covered by a formula."""


class Family(str, enum.Enum):
    TURNS_N22 = "turns_n22"
    ONE_TURN_FULL = "one_turn_full"
    H0_TWO_ROW = "h0_two_row"
    H0_HOOK = "h0_hook"
    H1_TWO_ROW = "h1_two_row"
    H1_K2 = "h1_k2"


@dataclass(frozen=True)
class CoeffQuery:
    family: Family
    n: int
    k: int = 0
    w1: int = 0
    w2: int = 0
    h: int = 0

    def target(self) -> Partition:
        return target_partition(self.family, self.n, self.k)


def target_partition(family: Family, n: int, k: int) -> Partition:
    """The basis element whose coefficient a family formula describes."""
    if family in (Family.TURNS_N22,):
        return (n - 2, 2)
    if family in (Family.H0_TWO_ROW, Family.H1_TWO_ROW):
        return (n - k, k)
    if family is Family.H0_HOOK:
        return (n - k - 1, k, 1)
    if family is Family.H1_K2:
        return (n - k - 2, k, 2)
    raise ClosedFormError(f"{family.value} is a full expansion, not a single coefficient")


def _require_strict(parts: Partition) -> None:
    if not is_strict(parts) or any(p <= 0 for p in parts):
        raise ClosedFormError(f"target {parts} is not a strict partition")


def _require_two_turn(n: int, w1: int, w2: int, h: int) -> None:
    if w1 < 2 or w2 < 3:
        raise ClosedFormError(f"need w1 >= 2 and w2 >= 3, got w1={w1}, w2={w2}")
    if n != w1 + h + w2 + 1:
        raise ClosedFormError(f"n={n} does not equal w1 + h + w2 + 1 = {w1 + h + w2 + 1}")


def coeff_n22(n: int, k: int) -> int:
    """Coefficient of ``Q_(n-2,2)`` for a frayed ribbon with ``k`` turns."""
    if k < 0:
        raise ClosedFormError("turn count must be nonnegative")
    _require_strict((n - 2, 2))
    return 2 * k


def one_turn_m1(n: int, h: int) -> int:
    return min(h + 1, n - h - 2)


def one_turn_m2(n: int, h: int) -> int:
    return min(h, n - h - 2)


def one_turn_expansion(n: int, h: int) -> QExpansion:
    """Full expansion for a one-turn frayed ribbon of column height ``h``:
    ``Q_(n-1,1) + 2 sum_{i=2}^{m1} Q_(n-i,i) + sum_{i=2}^{m2} Q_(n-i-1,i,1)``.
    ``h = 0`` gives the no-turn shape ``(n-1, 1)``."""
    if n < 4 or not 0 <= h <= n - 3:
        raise ClosedFormError(f"no one-turn frayed ribbon with n={n}, h={h}")
    coeffs = {(n - 1, 1): 1}
    for i in range(2, one_turn_m1(n, h) + 1):
        coeffs[(n - i, i)] = 2
    for i in range(2, one_turn_m2(n, h) + 1):
        coeffs[(n - i - 1, i, 1)] = 1
    return QExpansion(coeffs)


def h0_two_row_coeff(n: int, w1: int, w2: int, k: int) -> int:
    """Coefficient of ``Q_(n-k,k)`` for a two-turn shape of height 0."""
    _require_two_turn(n, w1, w2, 0)
    if k < 2:
        raise ClosedFormError("formula covers k >= 2")
    _require_strict((n - k, k))
    edge = min(w1 + 1, w2)
    if k <= edge - 1:
        return 4
    if k == edge:
        return 2
    return 0


def h0_hook_coeff(n: int, w1: int, w2: int, k: int) -> int:
    """Coefficient of ``Q_(n-k-1,k,1)`` for a two-turn shape of height 0."""
    _require_two_turn(n, w1, w2, 0)
    _require_strict((n - k - 1, k, 1))
    edge = min(w1, w2)
    if k <= edge - 1:
        return 2
    if k == edge:
        return 1
    return 0


def h1_two_row_coeff(n: int, w1: int, w2: int, k: int) -> int:
    """Coefficient of ``Q_(n-k,k)`` for a two-turn shape of height 1."""
    _require_two_turn(n, w1, w2, 1)
    if k < 3:
        raise ClosedFormError("formula covers k >= 3")
    _require_strict((n - k, k))
    edge = min(w1, w2 - 1)
    if k <= edge:
        return 8
    if k == edge + 1:
        return 4 if w1 == w2 - 1 else 6
    if k == edge + 2:
        return 2
    return 0


def h1_k2_coeff(n: int, w1: int, w2: int, k: int) -> int:
    """Coefficient of ``Q_(n-k-2,k,2)`` for a two-turn shape of height 1."""
    _require_two_turn(n, w1, w2, 1)
    if k < 3:
        raise ClosedFormError("formula covers k >= 3")
    _require_strict((n - k - 2, k, 2))
    edge = min(w1, w2)
    if k <= edge - 1:
        return 4
    if k == edge:
        return 2
    return 0


def evaluate(query: CoeffQuery) -> int | QExpansion:
    f = query.family
    if f is Family.TURNS_N22:
        return coeff_n22(query.n, query.k)
    if f is Family.ONE_TURN_FULL:
        return one_turn_expansion(query.n, query.h)
    fn = {
        Family.H0_TWO_ROW: h0_two_row_coeff,
        Family.H0_HOOK: h0_hook_coeff,
        Family.H1_TWO_ROW: h1_two_row_coeff,
        Family.H1_K2: h1_k2_coeff,
    }[f]
    return fn(query.n, query.w1, query.w2, query.k)


# ---------------------------------------------------------------------------
# exhaustive comparison with the generic engine


@dataclass(frozen=True)
class Mismatch:
    shape: str
    query: CoeffQuery
    formula: int | QExpansion
    engine: int | QExpansion


@dataclass
class CrossCheck:
    checked: dict[Family, int]
    mismatches: list[Mismatch]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def queries_for(shape) -> list[CoeffQuery]:
    """Every formula query that applies to one frayed ribbon."""
    from .shapes import count_turns, normalize_orientation, one_turn_column_height, two_turn_params

    n = shape.size
    turns = count_turns(shape).total
    out = []
    if n >= 5:
        out.append(CoeffQuery(Family.TURNS_N22, n, k=turns))
    if turns == 1:
        h = one_turn_column_height(normalize_orientation(shape))
        out.append(CoeffQuery(Family.ONE_TURN_FULL, n, h=h))
    if turns == 2:
        p = two_turn_params(normalize_orientation(shape))
        if p.h == 0:
            for k in range(2, n):
                if is_strict((n - k, k)):
                    out.append(CoeffQuery(Family.H0_TWO_ROW, n, k, p.w1, p.w2, 0))
                if n - k - 1 > k:
                    out.append(CoeffQuery(Family.H0_HOOK, n, k, p.w1, p.w2, 0))
        elif p.h == 1:
            for k in range(3, n):
                if n - k > k:
                    out.append(CoeffQuery(Family.H1_TWO_ROW, n, k, p.w1, p.w2, 1))
                if n - k - 2 > k:
                    out.append(CoeffQuery(Family.H1_K2, n, k, p.w1, p.w2, 1))
    return out


def cross_check(max_size: int, min_size: int = 4) -> CrossCheck:
    from .expansion import q_expansion
    from .shapes import enumerate_frayed_ribbons

    checked = {f: 0 for f in Family}
    bad = []
    for n in range(min_size, max_size + 1):
        for shape in enumerate_frayed_ribbons(n):
            exp = q_expansion(shape)
            for q in queries_for(shape):
                formula = evaluate(q)
                engine = exp if q.family is Family.ONE_TURN_FULL else exp[q.target()]
                checked[q.family] += 1
                if formula != engine:
                    bad.append(Mismatch(str(shape), q, formula, engine))
    return CrossCheck(checked, bad)
