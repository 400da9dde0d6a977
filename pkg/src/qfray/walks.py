"""Lattice walks of words in the doubled alphabet and the ballot test.

For a fixed ``i`` the i/(i+1)-walk reads only letters of value ``i``
(the low letters) and ``i + 1`` (the high letters) and starts at the
origin.  Steps:

    ======  ===============  =================
    letter  on an axis        off the axes
    ======  ===============  =================
    i'      east             east
    i       east             south
    (i+1)'  north            west
    i+1     north            north
    ======  ===============  =================

"On an axis" means ``x == 0 or y == 0``, the origin included.
"""

from __future__ import annotations

import enum
from typing import Iterable, NamedTuple, Sequence

from .letters import format_letter, is_primed, value_of


class WalkState(NamedTuple):
    x: int
    y: int


ORIGIN = WalkState(0, 0)


class Role(enum.Enum):
    LOW_UNPRIMED = "low"
    LOW_PRIMED = "low'"
    HIGH_UNPRIMED = "high"
    HIGH_PRIMED = "high'"


class Direction(str, enum.Enum):
    E = "E"
    W = "W"
    N = "N"
    S = "S"


_DELTA = {Direction.E: (1, 0), Direction.W: (-1, 0), Direction.N: (0, 1), Direction.S: (0, -1)}


def step(state: WalkState, role: Role) -> tuple[Direction, WalkState]:
    on_axis = state.x == 0 or state.y == 0
    if role is Role.LOW_PRIMED:
        d = Direction.E
    elif role is Role.HIGH_UNPRIMED:
        d = Direction.N
    elif role is Role.LOW_UNPRIMED:
        d = Direction.E if on_axis else Direction.S
    else:
        d = Direction.N if on_axis else Direction.W
    dx, dy = _DELTA[d]
    return d, WalkState(state.x + dx, state.y + dy)


def role_of(code: int, i: int) -> Role | None:
    v = value_of(code)
    if v == i:
        return Role.LOW_PRIMED if is_primed(code) else Role.LOW_UNPRIMED
    if v == i + 1:
        return Role.HIGH_PRIMED if is_primed(code) else Role.HIGH_UNPRIMED
    return None


def subword(word: Iterable[int], i: int) -> list[int]:
    """The letters of value ``i`` or ``i + 1``, order preserved."""
    if i < 1:
        raise ValueError("walk level must be at least 1")
    return [c for c in word if value_of(c) in (i, i + 1)]


class TraceStep(NamedTuple):
    letter: int
    direction: Direction
    state: WalkState

    def __str__(self) -> str:
        return f"{format_letter(self.letter)} {self.direction.value} ({self.state.x},{self.state.y})"


def walk(word: Iterable[int], i: int) -> list[TraceStep]:
    state = ORIGIN
    trace = []
    for code in subword(word, i):
        d, state = step(state, role_of(code, i))
        trace.append(TraceStep(code, d, state))
    return trace


def walk_end(word: Iterable[int], i: int) -> WalkState:
    state = ORIGIN
    for code in word:
        role = role_of(code, i)
        if role is not None:
            _, state = step(state, role)
    return state


def is_ballot(word: Sequence[int]) -> bool:
    if not word:
        return True
    top = max(value_of(c) for c in word)
    return all(walk_end(word, i).y == 0 for i in range(1, top + 1))


def prefix_can_return(state: WalkState, remaining_letters: int) -> bool:
    """False only if ``remaining_letters`` unit steps cannot bring the walk
    back to the x-axis."""
    return state.y <= remaining_letters
