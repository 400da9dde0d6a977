"""The doubled alphabet 1' < 1 < 2' < 2 < ...

Letters are plain ints: ``i'`` is ``2i - 1`` and ``i`` is ``2i``, so the
integer order is the alphabet order.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

_TOKEN = re.compile(r"^(\d+)(')?$")


def letter(value: int, primed: bool = False) -> int:
    if value < 1:
        raise ValueError(f"letter value must be positive, got {value}")
    return 2 * value - 1 if primed else 2 * value


def value_of(code: int) -> int:
    return (code + 1) // 2


def is_primed(code: int) -> bool:
    return code % 2 == 1


def format_letter(code: int) -> str:
    return f"{value_of(code)}'" if is_primed(code) else str(value_of(code))


def parse_letter(token: str) -> int:
    m = _TOKEN.match(token.strip())
    if not m or int(m.group(1)) < 1:
        raise ValueError(f"malformed letter {token!r}")
    return letter(int(m.group(1)), bool(m.group(2)))


def parse_word(text: str) -> list[int]:
    """Parse tokens such as ``2 1 2' 3`` (spaces or commas)."""
    return [parse_letter(tok) for tok in re.split(r"[,\s]+", text.strip()) if tok]


def parse_compact_word(text: str) -> list[int]:
    """Parse single-digit words written without separators, e.g. ``212'231'``."""
    out = []
    for ch in text.replace(" ", ""):
        if ch == "'":
            if not out or is_primed(out[-1]):
                raise ValueError(f"misplaced prime in {text!r}")
            out[-1] -= 1
        elif ch.isdigit() and ch != "0":
            out.append(letter(int(ch)))
        else:
            raise ValueError(f"malformed compact word {text!r}")
    return out


def format_word(word: Iterable[int], sep: str = " ") -> str:
    return sep.join(format_letter(c) for c in word)


def content_of(word: Sequence[int]) -> tuple[int, ...]:
    """Counts ``(m_1, m_2, ...)`` of each value, trailing zeros trimmed."""
    if not word:
        return ()
    counts = [0] * max(value_of(c) for c in word)
    for c in word:
        counts[value_of(c) - 1] += 1
    while counts and counts[-1] == 0:
        counts.pop()
    return tuple(counts)
