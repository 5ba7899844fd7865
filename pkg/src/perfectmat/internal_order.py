"""The internal order of an ordered matroid as an explicit graded lattice.

``B ≤ B'`` exactly when ``IP(B) ⊆ IP(B')``.  An artificial top element
closes the poset into a lattice.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from . import bitset as bs
from .activity import OrderedMatroid
from .bitset import SetLike
from .errors import ElementInInitialBasis, GradednessViolated, LatticeViolated, NotANode


class _Top:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TOP"

    def __reduce__(self):
        return (_Top, ())


TOP = _Top()


def leq(om: OrderedMatroid, b1: SetLike, b2: SetLike) -> bool:
    return om.ip(b1) & ~om.ip(b2) == 0


def meet(om: OrderedMatroid, b1: SetLike, b2: SetLike) -> int:
    return om.min_basis(om.ip(b1) & om.ip(b2))


def join(om: OrderedMatroid, b1: SetLike, b2: SetLike):
    """Join of two bases, or :data:`TOP` if their passive parts are dependent."""
    u = om.ip(b1) | om.ip(b2)
    if u not in om.matroid.independent_sets:
        return TOP
    return om.min_basis(u)


@dataclass
class InternalOrder:
    om: OrderedMatroid
    nodes: tuple[int, ...]
    heights: tuple[int, ...]
    passive: tuple[int, ...]
    up: tuple[tuple[int, ...], ...]
    down: tuple[tuple[int, ...], ...]
    has_top: bool = True

    @property
    def index(self) -> dict[int, int]:
        return {b: i for i, b in enumerate(self.nodes)}

    def node(self, b: SetLike) -> int:
        b = bs.mask(b)
        try:
            return self.index[b]
        except KeyError:
            raise NotANode(f"{bs.elements(b)} is not a node") from None

    @property
    def covers(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(len(self.nodes)) for j in self.up[i]]

    @property
    def maximal(self) -> list[int]:
        return [i for i in range(len(self.nodes)) if not self.up[i]]

    def height_profile(self) -> list[int]:
        top = max(self.heights)
        counts = [0] * (top + 1)
        for h in self.heights:
            counts[h] += 1
        return counts


def build(om: OrderedMatroid, verify: bool = True) -> InternalOrder:
    """Construct the internal order; with ``verify`` the graded-lattice
    structure is checked and any failure raised as a hard error."""
    nodes = tuple(sorted(om.bases, key=lambda b: (om.height(b), om.lex_key(b))))
    ips = tuple(om.ip(b) for b in nodes)
    heights = tuple(ip.bit_count() for ip in ips)
    count = len(nodes)
    up: list[list[int]] = [[] for _ in range(count)]
    down: list[list[int]] = [[] for _ in range(count)]
    for i in range(count):
        for j in range(count):
            if heights[j] == heights[i] + 1 and ips[i] & ~ips[j] == 0:
                up[i].append(j)
                down[j].append(i)
    io = InternalOrder(om, nodes, heights, ips, tuple(map(tuple, up)), tuple(map(tuple, down)))
    if verify:
        _verify_graded(io)
        _verify_lattice(io)
    return io


def _verify_graded(io: InternalOrder) -> None:
    ips, heights = io.passive, io.heights
    if heights.count(0) != 1 or io.nodes[0] != io.om.b0:
        raise GradednessViolated("B0 is not the unique minimum")
    for i in range(len(io.nodes)):
        for j in range(len(io.nodes)):
            if i == j or ips[i] & ~ips[j]:
                continue
            if heights[j] - heights[i] >= 2 and not any(ips[k] & ~ips[j] == 0 for k in io.up[i]):
                raise GradednessViolated(
                    f"no cover of {bs.elements(io.nodes[i])} below {bs.elements(io.nodes[j])}"
                )


def _verify_lattice(io: InternalOrder) -> None:
    om = io.om
    ips = io.passive
    indep = om.matroid.independent_sets
    seen_meet: set[int] = set()
    seen_join: set[int] = set()
    for x in ips:
        for y in ips:
            inter = x & y
            if inter not in seen_meet:
                seen_meet.add(inter)
                m = om.ip(om.min_basis(inter))
                if m & ~inter:
                    raise LatticeViolated("meet formula is not a lower bound")
                if any(z & ~inter == 0 and z & ~m for z in ips):
                    raise LatticeViolated("meet formula is not greatest")
            union = x | y
            if union in indep and union not in seen_join:
                seen_join.add(union)
                u = om.ip(om.min_basis(union))
                if union & ~u:
                    raise LatticeViolated("join formula is not an upper bound")
                if any(union & ~z == 0 and u & ~z for z in ips):
                    raise LatticeViolated("join formula is not least")


def height_profile(io: InternalOrder) -> list[int]:
    return io.height_profile()


def principal_chain(om: OrderedMatroid, f: int) -> list[int]:
    """The ``f``-principal bases, listed upward in the internal order."""
    fb = bs.bit(f)
    if om.b0 & fb:
        raise ElementInInitialBasis(f"{f} lies in the initial basis")
    circ = om.matroid.fundamental_circuit(om.b0, f) & ~fb
    # dropping a larger element leaves more of B0 active, so it sits lower
    drops = reversed(om.sorted_elements(circ))
    return [(om.b0 & ~bs.bit(e)) | fb for e in drops]


def covers_of(io: InternalOrder, b: SetLike) -> list[int]:
    return [io.nodes[k] for k in io.down[io.node(b)]]


def leq_by_pivots(om: OrderedMatroid) -> set[tuple[int, int]]:
    """Reflexive-transitive closure of internally active pivoting.

    ``B' <- B`` when ``B' = B - b + b'`` with ``b'`` active in ``B'`` and
    ``b ∈ C*(B'; b') - b'``.  Computed by BFS from every basis, walking down.
    """
    m = om.matroid
    lower: dict[int, list[int]] = {b: [] for b in m.bases}
    for b2 in m.bases:
        idx = m.basis_index[b2]
        ia2 = om.ia(b2)
        for fb, co in m.cocircuit_table(idx):
            if not ia2 & fb:
                continue
            # b2 = b - x + f for each x in C*(b2; f) - f
            for xb in bs.iter_bits(co & ~fb):
                lower[(b2 & ~fb) | xb].append(b2)
    pairs = set()
    for start in m.bases:
        seen = {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nxt in lower[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        pairs.update((low, start) for low in seen)
    return pairs


def leq_contained_in(om: OrderedMatroid, b1: int, b2: int) -> bool:
    """``IP(B1) ⊆ B2``."""
    return om.ip(b1) & ~b2 == 0


def leq_by_min_basis(om: OrderedMatroid, b1: int, b2: int) -> bool:
    """``B1`` is the least basis containing ``B1 ∩ B2``."""
    return om.min_basis(b1 & b2) == b1


def to_dot(io: InternalOrder, label_base: int = 1) -> str:
    """Hasse diagram in DOT, drawn bottom-up with one rank per height."""
    lines = ["digraph internal_order {", "  rankdir=BT;", "  node [shape=box];"]
    by_height: dict[int, list[int]] = {}
    for i, h in enumerate(io.heights):
        by_height.setdefault(h, []).append(i)
    for h in sorted(by_height):
        members = " ".join(
            f'n{i} [label="{io.om.sta(io.nodes[i]).label(label_base)}"];' for i in by_height[h]
        )
        lines.append(f"  {{ rank=same; {members} }}")
    if io.has_top:
        lines.append('  top [label="1̂"];')
    for i, j in io.covers:
        lines.append(f"  n{i} -> n{j};")
    if io.has_top:
        for i in io.maximal:
            lines.append(f"  n{i} -> top;")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(io: InternalOrder) -> dict:
    nodes = []
    for b, h in zip(io.nodes, io.heights):
        d = io.om.sta(b)
        nodes.append(
            {
                "basis": list(bs.elements(b)),
                "S": list(bs.elements(d.s)),
                "T": list(bs.elements(d.t)),
                "A": list(bs.elements(d.a)),
                "height": h,
            }
        )
    return {"nodes": nodes, "covers": [list(c) for c in io.covers]}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"
