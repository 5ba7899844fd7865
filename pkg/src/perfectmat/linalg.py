"""Exact rank computations over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence, Union

Number = Union[int, Fraction, str]


def parse_rational(value: Number) -> Fraction:
    """Parse ``"p/q"``, ``"-3"``, ints or Fractions; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact entry {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"unsupported entry type {type(value).__name__}")


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix needs at least one row and one column")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> "RationalMatrix":
        return cls(tuple(tuple(parse_rational(x) for x in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def integer_columns(self) -> list[list[int]]:
        """Columns scaled by the lcm of their denominators.

        Scaling a column by a nonzero constant leaves every rank unchanged.
        """
        out = []
        for j in range(self.cols):
            col = self.column(j)
            scale = lcm(*(x.denominator for x in col))
            out.append([int(x * scale) for x in col])
        return out


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Works on a copy.  Every division is exact: after step k each active entry
    is a (k+1)-minor of the original matrix.
    """
    a = [list(r) for r in rows]
    m = len(a)
    if m == 0:
        return 0
    k = len(a[0])
    rank = 0
    prev = 1
    for col in range(k):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        prow = a[rank]
        for i in range(rank + 1, m):
            row = a[i]
            c = row[col]
            for j in range(col + 1, k):
                row[j] = (row[j] * p - c * prow[j]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


def column_rank(columns: list[list[int]], picks: Sequence[int]) -> int:
    """Rank of the submatrix formed by the chosen integer columns."""
    if not picks:
        return 0
    height = len(columns[0])
    # rank is transpose-invariant; eliminating over the picked columns as rows
    # keeps the inner loop short when few columns are chosen
    return bareiss_rank([list(columns[j]) for j in picks]) if height else 0
