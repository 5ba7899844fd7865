"""Finite matroids given by their complete family of bases.

Bases are materialised as int masks (see :mod:`perfectmat.bitset`).  A
:class:`Matroid` never changes after construction; derived data such as
circuits and fundamental cocircuits is computed on first use and cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import bitset as bs
from .bitset import SetLike
from .errors import (
    DuplicateBases,
    ElementInBasis,
    ElementNotInBasis,
    EmptyBases,
    ExchangeAxiomViolated,
    InvalidRank,
    NotABasis,
    UnequalCardinality,
    ZeroMatrix,
)
from .linalg import RationalMatrix, bareiss_rank


class Matroid:
    """A matroid on ``{1, ..., n}``.

    Use the module-level constructors (:func:`from_bases`, :func:`from_matrix`,
    :func:`from_graph`, :func:`uniform`) rather than calling this directly;
    the constructor trusts its input.
    """

    def __init__(self, n: int, bases: Iterable[int]):
        self.n = n
        self.bases: tuple[int, ...] = tuple(sorted(set(bases), key=bs.canonical_key))
        self.basis_set = frozenset(self.bases)
        self.rank = self.bases[0].bit_count()

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank}, bases={len(self.bases)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.n == other.n and self.basis_set == other.basis_set

    def __hash__(self) -> int:
        return hash((self.n, self.basis_set))

    def __getstate__(self):
        # caches are cheap to rebuild and would bloat worker pickles
        return {"n": self.n, "bases": self.bases}

    def __setstate__(self, state):
        self.__init__(state["n"], state["bases"])

    @property
    def ground(self) -> int:
        return bs.full(self.n)

    def is_basis(self, b: int) -> bool:
        return b in self.basis_set

    def require_basis(self, b: SetLike) -> int:
        b = bs.mask(b)
        if b not in self.basis_set:
            raise NotABasis(f"{bs.elements(b)} is not a basis")
        return b

    @cached_property
    def basis_index(self) -> dict[int, int]:
        return {b: i for i, b in enumerate(self.bases)}

    @cached_property
    def independent_sets(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.bases:
            out.update(bs.submasks(b))
        return frozenset(out)

    def is_independent(self, s: SetLike) -> bool:
        return bs.mask(s) in self.independent_sets

    @cached_property
    def _fundamental_tables(self) -> tuple[tuple[tuple[tuple[int, int], ...], ...], dict]:
        """Fundamental cocircuits per basis, and fundamental circuits.

        Returns ``(cocirc, circ)`` where ``cocirc[i]`` lists ``(f_bit, C*(B_i; f))``
        for ``f`` in basis ``i`` (low bit first) and ``circ[(i, e_bit)]`` is
        ``C(B_i; e)``.  Both come from one pivot scan: ``B - b + e`` is a basis
        iff ``b in C(B; e)`` iff ``e in C*(B; b)``.
        """
        ground = self.ground
        basis_set = self.basis_set
        cocirc_all = []
        circ = {}
        for i, b in enumerate(self.bases):
            co = {fb: fb for fb in bs.iter_bits(b)}
            for eb in bs.iter_bits(ground & ~b):
                c = eb
                for fb in bs.iter_bits(b):
                    if (b ^ fb) | eb in basis_set:
                        c |= fb
                        co[fb] |= eb
                circ[(i, eb)] = c
            cocirc_all.append(tuple(co.items()))
        return tuple(cocirc_all), circ

    def cocircuit_table(self, i: int) -> tuple[tuple[int, int], ...]:
        return self._fundamental_tables[0][i]

    @cached_property
    def circuits(self) -> tuple[int, ...]:
        indep = self.independent_sets
        out = []
        for s in range(1, 1 << self.n):
            if s in indep:
                continue
            if all((s ^ b) in indep for b in bs.iter_bits(s)):
                out.append(s)
        return tuple(sorted(out, key=bs.canonical_key))

    @cached_property
    def cocircuits(self) -> tuple[int, ...]:
        return dual(self).circuits

    @cached_property
    def loops(self) -> int:
        union = 0
        for b in self.bases:
            union |= b
        return self.ground & ~union

    @cached_property
    def coloops(self) -> int:
        inter = self.ground
        for b in self.bases:
            inter &= b
        return inter

    @cached_property
    def parallel_classes(self) -> tuple[int, ...]:
        non_loops = self.ground & ~self.loops
        parent = {e: e for e in bs.elements(non_loops)}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.circuits:
            if c.bit_count() == 2:
                x, y = bs.elements(c)
                parent[find(x)] = find(y)
        classes: dict[int, int] = {}
        for e in parent:
            root = find(e)
            classes[root] = classes.get(root, 0) | bs.bit(e)
        return tuple(sorted(classes.values(), key=bs.canonical_key))

    def rank_of(self, s: SetLike) -> int:
        s = bs.mask(s)
        return max((b & s).bit_count() for b in self.bases)

    def closure(self, s: SetLike) -> int:
        s = bs.mask(s)
        r = self.rank_of(s)
        out = s
        for eb in bs.iter_bits(self.ground & ~s):
            if self.rank_of(s | eb) == r:
                out |= eb
        return out

    def fundamental_circuit(self, b: SetLike, e: int) -> int:
        b = self.require_basis(b)
        eb = bs.bit(e)
        if b & eb:
            raise ElementInBasis(f"{e} lies in the basis")
        return self._fundamental_tables[1][(self.basis_index[b], eb)]

    def fundamental_cocircuit(self, b: SetLike, f: int) -> int:
        b = self.require_basis(b)
        fb = bs.bit(f)
        if not b & fb:
            raise ElementNotInBasis(f"{f} is not in the basis")
        return dict(self.cocircuit_table(self.basis_index[b]))[fb]


@dataclass(frozen=True)
class RelabelMap:
    """Order-preserving relabelling of the surviving elements of a minor."""

    old_to_new: dict[int, int]
    new_to_old: tuple[int, ...]

    @classmethod
    def keeping(cls, n: int, keep: int) -> "RelabelMap":
        kept = bs.elements(keep & bs.full(n))
        return cls({old: new for new, old in enumerate(kept, 1)}, kept)

    def forward(self, m: int) -> int:
        out = 0
        for e in bs.elements(m):
            out |= bs.bit(self.old_to_new[e])
        return out

    def backward(self, m: int) -> int:
        out = 0
        for e in bs.elements(m):
            out |= bs.bit(self.new_to_old[e - 1])
        return out

    def then(self, other: "RelabelMap") -> "RelabelMap":
        """Compose: apply ``self`` first, then ``other``."""
        o2n = {
            old: other.old_to_new[mid]
            for old, mid in self.old_to_new.items()
            if mid in other.old_to_new
        }
        n2o = tuple(self.new_to_old[mid - 1] for mid in other.new_to_old)
        return RelabelMap(o2n, n2o)


def from_bases(n: int, bases: Sequence[SetLike], check: bool = True) -> Matroid:
    """Validate a basis family and build the matroid.

    The exchange axiom is checked over every ordered pair of bases.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    masks = [bs.mask(b) for b in bases]
    if not masks:
        raise EmptyBases("a matroid needs at least one basis")
    for m in masks:
        if m & ~bs.full(n):
            raise ValueError(f"basis {bs.elements(m)} leaves the ground set [{n}]")
    if len(set(masks)) != len(masks):
        raise DuplicateBases("basis list contains duplicates")
    sizes = {m.bit_count() for m in masks}
    if len(sizes) != 1:
        raise UnequalCardinality(f"bases have sizes {sorted(sizes)}")
    if check:
        check_exchange(masks)
    return Matroid(n, masks)


def check_exchange(masks: Sequence[int]) -> None:
    family = set(masks)
    for b1 in masks:
        for b2 in masks:
            if b1 == b2:
                continue
            for eb in bs.iter_bits(b1 & ~b2):
                base = b1 ^ eb
                if not any(base | fb in family for fb in bs.iter_bits(b2 & ~b1)):
                    raise ExchangeAxiomViolated(b1, b2, bs.index_of(eb))


def from_matrix(m: RationalMatrix | Sequence[Sequence]) -> Matroid:
    """Column matroid of a rational matrix; column ``j`` becomes element ``j+1``."""
    if not isinstance(m, RationalMatrix):
        if not m or not m[0]:
            raise ZeroMatrix("matrix has no columns")
        m = RationalMatrix.from_rows(m)
    cols = m.integer_columns()
    n = m.cols
    r = bareiss_rank(cols)
    if r == 0:
        return Matroid(n, [0])
    bases = []
    for picks in combinations(range(n), r):
        if bareiss_rank([cols[j] for j in picks]) == r:
            bases.append(bs.mask(j + 1 for j in picks))
    return Matroid(n, bases)


@dataclass(frozen=True)
class Graph:
    """Multigraph on vertices ``1..vertices``; edge ``k`` is ``edges[k-1]``."""

    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        for u, v in self.edges:
            if not (1 <= u <= self.vertices and 1 <= v <= self.vertices):
                raise ValueError(f"edge {(u, v)} leaves the vertex range")


def _components(vertices: int, edges: Iterable[tuple[int, int]]) -> int:
    parent = list(range(vertices + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = vertices
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            count -= 1
    return count


def _is_forest(vertices: int, edges: Sequence[tuple[int, int]]) -> bool:
    return _components(vertices, edges) == vertices - len(edges)


def from_graph(g: Graph) -> Matroid:
    """Cycle matroid: bases are the spanning forests of ``g``."""
    if not g.edges:
        raise ValueError("graph has no edges")
    m = len(g.edges)
    r = g.vertices - _components(g.vertices, g.edges)
    bases = []
    for picks in combinations(range(m), r):
        if _is_forest(g.vertices, [g.edges[k] for k in picks]):
            bases.append(bs.mask(k + 1 for k in picks))
    return Matroid(m, bases)


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise InvalidRank(f"need 0 <= r <= n, got r={r}, n={n}")
    return Matroid(n, bs.k_subsets(n, r))


def dual(m: Matroid) -> Matroid:
    g = m.ground
    return Matroid(m.n, (g & ~b for b in m.bases))


def delete(m: Matroid, t: SetLike) -> tuple[Matroid, RelabelMap]:
    """Deletion ``m \\ t`` relabelled onto ``1..n-|t|`` in the original order."""
    t = bs.mask(t) & m.ground
    keep = m.ground & ~t
    restricted = {b & keep for b in m.bases}
    top = max(b.bit_count() for b in restricted)
    relabel = RelabelMap.keeping(m.n, keep)
    bases = [relabel.forward(b) for b in restricted if b.bit_count() == top]
    return Matroid(keep.bit_count(), bases), relabel


def contract(m: Matroid, t: SetLike) -> tuple[Matroid, RelabelMap]:
    """Contraction ``m / t``, literally the dual of deleting ``t`` from the dual."""
    d, relabel = delete(dual(m), t)
    return dual(d), relabel


def restrict(m: Matroid, s: SetLike) -> tuple[Matroid, RelabelMap]:
    return delete(m, m.ground & ~bs.mask(s))


def direct_sum(a: Matroid, b: Matroid) -> Matroid:
    shift = a.n
    return Matroid(a.n + b.n, (x | (y << shift) for x in a.bases for y in b.bases))


def circuits(m: Matroid) -> tuple[int, ...]:
    return m.circuits


def cocircuits(m: Matroid) -> tuple[int, ...]:
    return m.cocircuits


def rank_of(m: Matroid, s: SetLike) -> int:
    return m.rank_of(s)


def fundamental_circuit(m: Matroid, b: SetLike, e: int) -> int:
    return m.fundamental_circuit(b, e)


def fundamental_cocircuit(m: Matroid, b: SetLike, f: int) -> int:
    return m.fundamental_cocircuit(b, f)
