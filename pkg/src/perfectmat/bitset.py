"""Subsets of a ground set ``{1, ..., n}`` stored as Python ints.

Element ``i`` lives in bit ``i - 1``.  Every function here is a thin wrapper
over integer bit operations; the library passes raw masks around internally
and only converts at its public edges.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Union

SetLike = Union[int, Iterable[int]]


def bit(e: int) -> int:
    return 1 << (e - 1)


def mask(elements: SetLike) -> int:
    """Coerce an int mask or an iterable of 1-based element ids to a mask."""
    if isinstance(elements, int):
        return elements
    m = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"element ids start at 1, got {e}")
        m |= 1 << (e - 1)
    return m


def full(n: int) -> int:
    return (1 << n) - 1


def size(m: int) -> int:
    return m.bit_count()


def elements(m: int) -> tuple[int, ...]:
    out = []
    i = 1
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def iter_bits(m: int) -> Iterator[int]:
    """Yield the single-bit masks of ``m`` from low to high."""
    while m:
        low = m & -m
        yield low
        m ^= low


def index_of(b: int) -> int:
    """Element id of a single-bit mask."""
    return b.bit_length()


def submasks(m: int) -> Iterator[int]:
    sub = m
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & m


def k_subsets(n: int, k: int) -> Iterator[int]:
    for combo in combinations(range(n), k):
        m = 0
        for i in combo:
            m |= 1 << i
        yield m


def canonical_key(m: int) -> tuple[int, tuple[int, ...]]:
    """Sort key: cardinality first, then lexicographic on sorted elements."""
    els = elements(m)
    return (len(els), els)


def format_set(m: int, base: int = 1) -> str:
    """Render a mask the way subsets are written in the literature: ``125``.

    Labels of two or more digits force a comma separator.  ``base`` shifts
    labels for collections indexed from 0.
    """
    labels = [str(e - 1 + base) for e in elements(m)]
    if any(len(s) > 1 for s in labels):
        return ",".join(labels)
    return "".join(labels)
