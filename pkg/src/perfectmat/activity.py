"""Ordered matroids and internal activity.

For an ordered matroid every basis ``B`` splits as ``S ⊔ T ⊔ A``: ``A`` holds
the internally active elements, ``S`` the passive ones outside the initial
basis ``B0`` and ``T`` the passive ones inside it.  Everything here is exact
set arithmetic on int masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import bitset as bs
from . import matroid as mc
from .bitset import SetLike
from .errors import DependentInput, NotABijection
from .matroid import Matroid, RelabelMap


@dataclass(frozen=True)
class Ordering:
    """Linear order on ``1..n``; ``order[0]`` is the smallest element."""

    order: tuple[int, ...]

    def __post_init__(self):
        order = tuple(self.order)
        object.__setattr__(self, "order", order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise NotABijection(f"{order} is not a permutation of 1..{len(order)}")

    @classmethod
    def identity(cls, n: int) -> "Ordering":
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.order)

    @property
    def position(self) -> dict[int, int]:
        return {e: i for i, e in enumerate(self.order, 1)}

    def restricted(self, relabel: RelabelMap) -> "Ordering":
        """Order induced on a minor's relabelled ground set."""
        return Ordering(tuple(relabel.old_to_new[e] for e in self.order if e in relabel.old_to_new))


@dataclass(frozen=True)
class StaDecomposition:
    basis: int
    s: int
    t: int
    a: int
    f_parts: dict[int, int] = field(default_factory=dict)

    @property
    def passive(self) -> int:
        return self.s | self.t

    def label(self, base: int = 1) -> str:
        """``S^T_A`` with empty parts dropped; an empty ``S`` prints as ∅."""
        text = bs.format_set(self.s, base) if self.s else "∅"
        if self.t:
            text += "^" + _group(bs.format_set(self.t, base))
        if self.a:
            text += "_" + _group(bs.format_set(self.a, base))
        return text


def _group(s: str) -> str:
    return s if len(s) == 1 else "{" + s + "}"


class OrderedMatroid:
    """A matroid with a linear order on its ground set.

    Internal activity of every basis is computed up front: for ``f`` in ``B``
    it reduces to one mask test, ``C*(B; f) & below(f) == 0``.
    """

    def __init__(self, matroid: Matroid, ordering: Ordering | Sequence[int] | None = None):
        if ordering is None:
            ordering = Ordering.identity(matroid.n)
        elif not isinstance(ordering, Ordering):
            ordering = Ordering(tuple(ordering))
        if ordering.n != matroid.n:
            raise NotABijection(f"ordering has {ordering.n} elements, matroid has {matroid.n}")
        self.matroid = matroid
        self.ordering = ordering
        self.order_bits = tuple(bs.bit(e) for e in ordering.order)
        below = {}
        acc = 0
        for b in self.order_bits:
            below[b] = acc
            acc |= b
        self._below = below
        self.b0 = self._greedy(0)
        ia = {}
        for i, b in enumerate(matroid.bases):
            active = 0
            for fb, co in matroid.cocircuit_table(i):
                if not co & below[fb]:
                    active |= fb
            ia[b] = active
        self._ia = ia

    def __repr__(self) -> str:
        return f"OrderedMatroid({self.matroid!r}, order={self.ordering.order})"

    @property
    def n(self) -> int:
        return self.matroid.n

    @property
    def rank(self) -> int:
        return self.matroid.rank

    @property
    def bases(self) -> tuple[int, ...]:
        return self.matroid.bases

    def less(self, x: int, y: int) -> bool:
        return bool(self._below[bs.bit(y)] & bs.bit(x))

    def below(self, e: int) -> int:
        """Mask of elements strictly smaller than ``e``."""
        return self._below[bs.bit(e)]

    def min_element(self, s: int) -> int:
        for b in self.order_bits:
            if s & b:
                return bs.index_of(b)
        raise ValueError("empty set has no minimum")

    def max_element(self, s: int) -> int:
        for b in reversed(self.order_bits):
            if s & b:
                return bs.index_of(b)
        raise ValueError("empty set has no maximum")

    def sorted_elements(self, s: int) -> tuple[int, ...]:
        return tuple(bs.index_of(b) for b in self.order_bits if s & b)

    def lex_key(self, s: int) -> tuple[int, ...]:
        pos = self.ordering.position
        return tuple(sorted(pos[e] for e in bs.elements(s)))

    def _greedy(self, start: int) -> int:
        indep = self.matroid.independent_sets
        cur = start
        need = self.matroid.rank
        for b in self.order_bits:
            if cur.bit_count() == need:
                break
            if not cur & b and (cur | b) in indep:
                cur |= b
        return cur

    def min_basis(self, i: SetLike) -> int:
        """Lexicographically least basis containing the independent set ``i``."""
        i = bs.mask(i)
        if i not in self.matroid.independent_sets:
            raise DependentInput(f"{bs.elements(i)} is dependent")
        return self._greedy(i)

    def ia(self, b: SetLike) -> int:
        b = bs.mask(b)
        try:
            return self._ia[b]
        except KeyError:
            self.matroid.require_basis(b)
            raise

    def ip(self, b: SetLike) -> int:
        b = bs.mask(b)
        return b & ~self.ia(b)

    def height(self, b: SetLike) -> int:
        return self.ip(b).bit_count()

    def s_part(self, b: int) -> int:
        return self.ip(b) & ~self.b0

    def t_part(self, b: int) -> int:
        return self.ip(b) & self.b0

    def f_part(self, b: int, f: int) -> int:
        """``T(B; f)``: the ``T`` of the least basis containing ``f`` and ``T(B)``."""
        return self.t_part(self.min_basis(bs.bit(f) | self.t_part(b)))

    def sta(self, b: SetLike) -> StaDecomposition:
        b = bs.mask(b)
        ia = self.ia(b)
        ip = b & ~ia
        s = ip & ~self.b0
        t = ip & self.b0
        parts = {}
        for fb in bs.iter_bits(s):
            parts[bs.index_of(fb)] = self.t_part(self._greedy(fb | t))
        return StaDecomposition(b, s, t, ia, parts)

    def is_principal(self, b: SetLike) -> bool:
        return self.s_part(self.matroid.require_basis(b)).bit_count() == 1

    def is_clean(self, b: SetLike) -> bool:
        return self.t_part(self.matroid.require_basis(b)) == 0

    def coatoms(self) -> list[int]:
        """Maximal bases of the internal order.

        A basis is maximal exactly when its active elements are the coloops.
        """
        coloops = self.matroid.coloops
        return [b for b in self.bases if self._ia[b] == coloops]

    def delete(self, t: SetLike) -> tuple["OrderedMatroid", RelabelMap]:
        m, relabel = mc.delete(self.matroid, t)
        return OrderedMatroid(m, self.ordering.restricted(relabel)), relabel

    def contract(self, t: SetLike) -> tuple["OrderedMatroid", RelabelMap]:
        m, relabel = mc.contract(self.matroid, t)
        return OrderedMatroid(m, self.ordering.restricted(relabel)), relabel

    def reordered(self, ordering: Ordering | Sequence[int]) -> "OrderedMatroid":
        return OrderedMatroid(self.matroid, ordering)


def make_ordered(m: Matroid, ordering: Ordering | Sequence[int] | None = None) -> OrderedMatroid:
    return OrderedMatroid(m, ordering)


def active_elements(om: OrderedMatroid, f_set: SetLike) -> int:
    """Elements ``e`` that are the minimum of some circuit inside ``F ∪ e``."""
    f_set = bs.mask(f_set)
    out = 0
    for c in om.matroid.circuits:
        e = om.min_element(c)
        eb = bs.bit(e)
        if c & ~(f_set | eb) == 0:
            out |= eb
    return out


def internally_active(om: OrderedMatroid, b: SetLike) -> int:
    return om.ia(b)


def internally_passive(om: OrderedMatroid, b: SetLike) -> int:
    return om.ip(b)


def min_basis(om: OrderedMatroid, i: SetLike) -> int:
    return om.min_basis(i)


def sta_decomposition(om: OrderedMatroid, b: SetLike) -> StaDecomposition:
    return om.sta(b)


def is_principal(om: OrderedMatroid, b: SetLike) -> bool:
    return om.is_principal(b)


def is_clean(om: OrderedMatroid, b: SetLike) -> bool:
    return om.is_clean(b)
