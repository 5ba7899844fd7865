"""Named example matroids, infinite families, and property checks used to
place a matroid among the classes already known to satisfy Stanley's
conjecture."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import bitset as bs
from .activity import OrderedMatroid
from .errors import InvalidDiagonal
from .matroid import Graph, Matroid, dual, from_graph, from_matrix, uniform
from .stanley import h_vector

FIG1 = [
    [1, 0, 0, 0, 1, 0],
    [0, 1, 0, 1, -2, 1],
    [0, 0, 1, 0, 1, 1],
]
FIG1_REORDER = (2, 3, 1, 4, 5, 6)

# columns are labelled 0..7 in the source figure
R5N8 = [
    [1, 0, 0, 0, 0, -2, -1, 1],
    [0, 1, 0, 0, 0, 1, 1, 1],
    [0, 0, 1, 0, 0, -1, 0, 1],
    [0, 0, 0, 1, 0, -2, 0, 1],
    [0, 0, 0, 0, 1, 0, 0, 1],
]

INTERESTING10_N = [
    [2, 1, 3, 3, -1, -1, 0, 0, -1, -1],
    [1, 1, 1, 1, 1, 1, 1, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, -1, 1, 1],
]

R2N8_N = [
    [1, 1, 0, 0, 1, 1, 1, 1],
    [0, 0, 1, 1, -1, -1, 1, 1],
]

DELMINOR7 = [
    [1, 0, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 1, 1, 2],
    [0, 0, 1, 0, 0, 1, 0],
    [0, 0, 0, 1, 0, 0, -1],
]

K4 = Graph(4, ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)))


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    ordered_matroid: OrderedMatroid
    provenance: str
    label_base: int = 1
    document: dict | None = None

    @property
    def matroid(self) -> Matroid:
        return self.ordered_matroid.matroid


def mr_graph(r: int) -> Graph:
    """``G_1`` is a doubled edge; ``G_r`` adds vertex ``r+1`` joined to ``r``
    (edge ``2r-1``) and to ``1`` (edge ``2r``)."""
    if r < 1:
        raise ValueError("r must be at least 1")
    edges = [(1, 2), (1, 2)]
    for k in range(2, r + 1):
        edges += [(k, k + 1), (1, k + 1)]
    return Graph(r + 1, tuple(edges))


def family_mr(r: int) -> OrderedMatroid:
    return OrderedMatroid(from_graph(mr_graph(r)))


def mr_basis_forms(r: int) -> dict[int, list[int]]:
    """For each basis of ``M_r``, the forms (1, 2, 3) it takes relative to
    bases ``B'`` of ``M_{r-1}``: ``B' + (2r-1)``, ``B' + 2r`` and
    ``B' - (2r-2) + {2r-1, 2r}``."""
    cur = family_mr(r).matroid
    prev = family_mr(r - 1).matroid
    e, f, g = bs.bit(2 * r - 1), bs.bit(2 * r), bs.bit(2 * r - 2)
    forms: dict[int, list[int]] = {b: [] for b in cur.bases}
    for bp in prev.bases:
        for form, cand in ((1, bp | e), (2, bp | f)):
            if cand in forms:
                forms[cand].append(form)
        if bp & g:
            cand = (bp & ~g) | e | f
            if cand in forms:
                forms[cand].append(3)
    return forms


def nnd_graph(n: int, diagonals=(), edge_order: str = "lex") -> Graph:
    """Double ``n``-cycle plus chords ``(1, i)``.

    Edges are sorted lexicographically by default.  ``edge_order="cycle"``
    instead lists ``{1,2}, {2,3}, ..., {1,n}`` (each twice) followed by the
    chords, the column order of the printed ten-element matrix.  The two
    give the same matroid when ``n = 3`` and ``D`` is empty.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    ends = set()
    for d in diagonals:
        i = d[1] if isinstance(d, tuple) else d
        if isinstance(d, tuple) and d[0] != 1 or not 2 <= i <= n:
            raise InvalidDiagonal(f"diagonal {d} is not of the form (1, i) with 2 <= i <= {n}")
        ends.add(i)
    chords = [(1, i) for i in sorted(ends)]
    cycle = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    doubled = [e for e in cycle for _ in range(2)]
    if edge_order == "cycle":
        edges = doubled + chords
    elif edge_order == "lex":
        edges = sorted(doubled + chords)
    else:
        raise ValueError(f"unknown edge order {edge_order!r}")
    return Graph(n, tuple(edges))


def nnd_matrix(n: int, diagonals=(), edge_order: str = "lex") -> list[list[int]]:
    """``[N' | N]``: four fixed columns then the oriented incidence matrix
    (``-1`` at the smaller endpoint, ``+1`` at the larger)."""
    g = nnd_graph(n, diagonals, edge_order)
    rows = [[0] * (4 + len(g.edges)) for _ in range(n)]
    rows[0][:4] = [2, 1, 3, 3]
    rows[1][:4] = [1, 1, 1, 1]
    for k, (u, v) in enumerate(g.edges):
        rows[u - 1][4 + k] = -1
        rows[v - 1][4 + k] = 1
    return rows


def family_nnd(n: int, diagonals=(), edge_order: str = "lex") -> OrderedMatroid:
    """Dual of the vector matroid of ``[N' | N]`` in column order."""
    return OrderedMatroid(dual(from_matrix(nnd_matrix(n, diagonals, edge_order))))


def matrix_document(rows, modifiers=(), order=None) -> dict:
    doc = {"type": "matrix", "rows": [[str(x) for x in row] for row in rows]}
    if modifiers:
        doc["modifiers"] = list(modifiers)
    if order is not None:
        doc["order"] = list(order)
    return doc


def graph_document(g: Graph) -> dict:
    return {"type": "graph", "vertices": g.vertices, "edges": [list(e) for e in g.edges]}


def example_corpus() -> list[CorpusEntry]:
    fig1 = from_matrix(FIG1)
    entries = [
        CorpusEntry("fig1-natural", OrderedMatroid(fig1), "3x6 matrix M, natural order",
                    document=matrix_document(FIG1)),
        CorpusEntry("fig1-reordered", OrderedMatroid(fig1, FIG1_REORDER),
                    "3x6 matrix M, order (2,3,1,4,5,6)",
                    document=matrix_document(FIG1, order=FIG1_REORDER)),
        CorpusEntry("r5n8", OrderedMatroid(from_matrix(R5N8)),
                    "5x8 matrix, never perfect", label_base=0,
                    document=matrix_document(R5N8)),
        CorpusEntry("interesting10", OrderedMatroid(dual(from_matrix(INTERESTING10_N))),
                    "dual of the 3x10 matrix N",
                    document=matrix_document(INTERESTING10_N, [{"op": "dual"}])),
        CorpusEntry("r2n8", OrderedMatroid(dual(from_matrix(R2N8_N))),
                    "dual of the 2x8 matrix",
                    document=matrix_document(R2N8_N, [{"op": "dual"}])),
        CorpusEntry("delminor7", OrderedMatroid(from_matrix(DELMINOR7)),
                    "4x7 matrix for the deletion counterexample",
                    document=matrix_document(DELMINOR7)),
        CorpusEntry("k4", OrderedMatroid(from_graph(K4)), "cycle matroid of K4",
                    document=graph_document(K4)),
        CorpusEntry("u-2-4", OrderedMatroid(uniform(2, 4)), "U(2,4)",
                    document={"type": "uniform", "r": 2, "n": 4}),
        CorpusEntry("u-3-5", OrderedMatroid(uniform(3, 5)), "U(3,5)",
                    document={"type": "uniform", "r": 3, "n": 5}),
    ]
    for r in range(1, 5):
        entries.append(
            CorpusEntry(f"mr{r}", family_mr(r), f"cycle matroid of G_{r}",
                        document=graph_document(mr_graph(r)))
        )
    return entries


def corpus_entry(name: str) -> CorpusEntry:
    for entry in example_corpus():
        if entry.name == name:
            return entry
    raise KeyError(name)


def is_paving(m: Matroid) -> bool:
    return all(c.bit_count() >= m.rank for c in m.circuits)


def has_spanning_circuit(m: Matroid) -> bool:
    return any(m.rank_of(m.closure(c)) == m.rank for c in m.circuits)


YES, NO, NOT_EVALUATED = "yes", "no", "not-evaluated"


def interestingness_report(m: Matroid) -> dict:
    """Evaluate the known sufficient conditions for Stanley's conjecture.

    Dual-graphic and dual-transversal are never evaluated.  Truncation is
    only refuted (no spanning circuit); otherwise it stays unevaluated.
    """
    n, r = m.n, m.rank
    d = dual(m)
    h = h_vector(m)
    h_last = [x for x in h if x][-1]
    classes = len(d.parallel_classes)
    spanning = has_spanning_circuit(m)
    props = {
        "1": NOT_EVALUATED,
        "2": NOT_EVALUATED,
        "3": YES if classes <= n - r + 2 else NO,
        "4": YES if n <= 9 or d.rank <= 2 else NO,
        "5": YES if r <= 4 else NO,
        "6": YES if is_paving(m) else NO,
        "7": NO if not spanning else NOT_EVALUATED,
        "8": YES if h_last <= 5 else NO,
    }
    values = set(props.values())
    if YES in values:
        interesting = False
    elif NOT_EVALUATED in values:
        interesting = None
    else:
        interesting = True
    return {
        "properties": props,
        "interesting": interesting,
        "n": n,
        "rank": r,
        "dual_parallel_classes": classes,
        "h_vector": h,
        "spanning_circuit": spanning,
    }


def rank_with_coloops(base: Matroid, coloops: int) -> Matroid:
    """``base`` plus ``coloops`` extra elements lying in every basis."""
    extra = 0
    for k in range(coloops):
        extra |= bs.bit(base.n + k + 1)
    return Matroid(base.n + coloops, (b | extra for b in base.bases))


def all_subsets(n: int):
    for k in range(n + 1):
        for c in combinations(range(1, n + 1), k):
            yield c
