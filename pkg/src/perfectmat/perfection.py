"""Perfect, abundant and deficient bases, principal decompositions, ordering
search, and executable checks of the minor theorems."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from . import bitset as bs
from .activity import OrderedMatroid, StaDecomposition
from .bitset import SetLike
from .errors import BudgetExceeded, ElementInBasis, PreconditionUnmet
from .internal_order import leq, principal_chain
from .matroid import Matroid, RelabelMap

EXHAUSTIVE_LIMIT = 10


class Tag(str, enum.Enum):
    PERFECT = "perfect"
    ABUNDANT = "abundant"
    DEFICIENT = "deficient"


@dataclass(frozen=True)
class BasisClass:
    basis: int
    tag: Tag
    t: int
    t_tilde: int
    overlap_witness: tuple[int, int, int] | None = None

    @property
    def uncovered(self) -> int:
        return self.t & ~self.t_tilde

    @property
    def is_perfect(self) -> bool:
        return self.tag is Tag.PERFECT

    def to_json(self) -> dict:
        out = {
            "basis": list(bs.elements(self.basis)),
            "class": self.tag.value,
            "T": list(bs.elements(self.t)),
            "T_tilde": list(bs.elements(self.t_tilde)),
        }
        if self.overlap_witness is not None:
            out["overlap"] = list(self.overlap_witness)
        if self.uncovered:
            out["uncovered"] = list(bs.elements(self.uncovered))
        return out


def classify_basis(om: OrderedMatroid, b: SetLike) -> BasisClass:
    b = om.matroid.require_basis(b)
    d = om.sta(b)
    t_tilde = 0
    witness = None
    seen: dict[int, int] = {}  # element of T -> first f whose part holds it
    for f in om.sorted_elements(d.s):
        part = d.f_parts[f]
        t_tilde |= part
        for t in om.sorted_elements(part):
            if t in seen and witness is None:
                witness = (seen[t], f, t)
            seen.setdefault(t, f)
    if t_tilde != d.t:
        tag = Tag.DEFICIENT
    elif witness is not None:
        tag = Tag.ABUNDANT
    else:
        tag = Tag.PERFECT
    return BasisClass(b, tag, d.t, t_tilde, witness)


def join_all(om: OrderedMatroid, bases) -> int | None:
    """Join of a family of bases (``B0`` for the empty family), ``None`` for the top."""
    u = 0
    for b in bases:
        u |= om.ip(b)
    if u not in om.matroid.independent_sets:
        return None
    return om.min_basis(u)


def decompose_into_principals(om: OrderedMatroid, b: SetLike) -> list[dict[int, int]]:
    """Every choice of one ``f``-principal basis per ``f`` in ``S(B)`` whose
    join is ``B``; each decomposition maps ``f`` to its principal basis."""
    b = om.matroid.require_basis(b)
    s = om.sorted_elements(om.s_part(b))
    # only principal bases below B can take part in a join equal to B
    chains = [[p for p in principal_chain(om, f) if leq(om, p, b)] for f in s]
    out = []
    for combo in product(*chains):
        if join_all(om, combo) == b:
            out.append(dict(zip(s, combo)))
    return out


@dataclass
class PerfectionReport:
    classes: dict[int, BasisClass]
    perfect: bool
    counterexample: int | None
    strategy: str

    def to_json(self, label=None) -> dict:
        out = {"perfect": self.perfect, "strategy": self.strategy}
        if self.counterexample is not None:
            out["counterexample"] = list(bs.elements(self.counterexample))
        out["bases"] = [c.to_json() for c in self.classes.values()]
        if label is not None:
            for entry, b in zip(out["bases"], self.classes):
                entry["label"] = label(b)
        return out


def is_internally_perfect(om: OrderedMatroid, strategy: str = "coatoms") -> PerfectionReport:
    """With ``"coatoms"`` only the maximal bases are classified, which suffices
    because perfection passes down the internal order."""
    if strategy == "coatoms":
        targets = om.coatoms()
    elif strategy == "all":
        targets = list(om.bases)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    classes = {}
    counterexample = None
    for b in targets:
        c = classify_basis(om, b)
        classes[b] = c
        if counterexample is None and not c.is_perfect:
            counterexample = b
    return PerfectionReport(classes, counterexample is None, counterexample, strategy)


def is_perfect(om: OrderedMatroid) -> bool:
    return all(classify_basis(om, b).is_perfect for b in om.coatoms())


@dataclass(frozen=True)
class SearchResult:
    ordering: tuple[int, ...] | None
    tested: int
    total: int

    @property
    def found(self) -> bool:
        return self.ordering is not None

    def to_json(self) -> dict:
        out = {"found": self.found, "tested": self.tested, "total": self.total}
        if self.ordering is not None:
            out["ordering"] = list(self.ordering)
        return out


def _nth_permutation(n: int, index: int) -> tuple[int, ...]:
    pool = list(range(1, n + 1))
    out = []
    for k in range(n, 0, -1):
        q, index = divmod(index, math.factorial(k - 1))
        out.append(pool.pop(q))
    return tuple(out)


def _next_permutation(p: list[int]) -> bool:
    i = len(p) - 2
    while i >= 0 and p[i] >= p[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(p) - 1
    while p[j] <= p[i]:
        j -= 1
    p[i], p[j] = p[j], p[i]
    p[i + 1:] = reversed(p[i + 1:])
    return True


def _scan_block(m: Matroid, start: int, stop: int) -> int | None:
    """Index of the first perfecting permutation in ``[start, stop)``."""
    p = list(_nth_permutation(m.n, start))
    for i in range(start, stop):
        if is_perfect(OrderedMatroid(m, p)):
            return i
        _next_permutation(p)
    return None


def find_perfect_order(
    m: Matroid,
    budget: int | None = None,
    workers: int = 1,
    block: int = 2048,
    progress: Callable[[int], None] | None = None,
) -> SearchResult:
    """Search orderings in lexicographic permutation order.

    Returns the first perfecting ordering, or a result with ``ordering=None``
    once all ``n!`` orderings have failed.  Running out of ``budget`` first
    raises :class:`BudgetExceeded`.  Results do not depend on ``workers``.
    """
    total = math.factorial(m.n)
    if budget is None and m.n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive search is limited to n <= {EXHAUSTIVE_LIMIT}")
    limit = total if budget is None else min(budget, total)
    starts = list(range(0, limit, block))
    spans = [(s, min(s + block, limit)) for s in starts]
    found = None
    if workers <= 1:
        for s, e in spans:
            found = _scan_block(m, s, e)
            if progress:
                progress(e if found is None else found + 1)
            if found is not None:
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for k in range(0, len(spans), workers):
                wave = spans[k:k + workers]
                hits = list(pool.map(_scan_block, [m] * len(wave), *zip(*wave)))
                # the earliest block with a hit holds the global minimum
                hit = next((h for h in hits if h is not None), None)
                if progress:
                    progress(wave[-1][1] if hit is None else hit + 1)
                if hit is not None:
                    found = hit
                    break
    if found is not None:
        return SearchResult(_nth_permutation(m.n, found), found + 1, total)
    if limit < total:
        raise BudgetExceeded(limit)
    return SearchResult(None, total, total)


@dataclass(frozen=True)
class DeletionXSet:
    basis: int
    element: int
    x: int
    ip_agrees: bool


def deletion_x_set(om: OrderedMatroid, b_prime: SetLike, e: int) -> DeletionXSet:
    """``X(B')``: passive ``b`` whose smaller cocircuit elements are exactly ``{e}``.

    ``ip_agrees`` records whether ``IP`` in ``M - e`` equals ``IP(B') - X``.
    """
    m = om.matroid
    b_prime = m.require_basis(b_prime)
    eb = bs.bit(e)
    if b_prime & eb:
        raise ElementInBasis(f"{e} lies in the basis")
    x = 0
    for bb in bs.iter_bits(om.ip(b_prime)):
        co = m.fundamental_cocircuit(b_prime, bs.index_of(bb))
        if co & om.below(bs.index_of(bb)) == eb:
            x |= bb
    minor, relabel = om.delete(eb)
    got = relabel.backward(minor.ip(relabel.forward(b_prime)))
    return DeletionXSet(b_prime, e, x, got == om.ip(b_prime) & ~x)


@dataclass
class CheckReport:
    claim: str
    status: str
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"claim": self.claim, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


def _basis_witness(minor: OrderedMatroid, relabel: RelabelMap, b: int) -> dict:
    """A basis of a minor, reported in the labels of the original matroid."""
    d = minor.sta(b)
    back = relabel.backward
    parts = {relabel.new_to_old[f - 1]: back(p) for f, p in d.f_parts.items()}
    original = StaDecomposition(back(b), back(d.s), back(d.t), back(d.a), parts)
    return {
        "basis": list(bs.elements(original.basis)),
        "label": original.label(),
        "class": classify_basis(minor, b).tag.value,
    }


def _perfection_witness(minor: OrderedMatroid, relabel: RelabelMap) -> dict | None:
    report = is_internally_perfect(minor, "all")
    if report.perfect:
        return None
    return _basis_witness(minor, relabel, report.counterexample)


def _require_perfect(om: OrderedMatroid) -> None:
    if not is_perfect(om):
        raise PreconditionUnmet("the ordered matroid is not internally perfect")


def verify_deletion_corollary(om: OrderedMatroid, e: int) -> CheckReport:
    """``M - e`` stays perfect in the induced order when ``e`` is outside
    ``B0`` or is a loop or coloop."""
    m = om.matroid
    eb = bs.bit(e)
    if om.b0 & eb and not m.coloops & eb:
        raise PreconditionUnmet(f"{e} lies in the initial basis and is not a coloop")
    _require_perfect(om)
    claim = f"deletion of {e} preserves perfection"
    minor, relabel = om.delete(eb)
    witness = _perfection_witness(minor, relabel)
    details = {}
    if not (eb & (m.loops | m.coloops)):
        nonempty = [
            list(bs.elements(b)) for b in m.bases
            if not b & eb and deletion_x_set(om, b, e).x
        ]
        details["nonempty_x"] = nonempty
        if nonempty and witness is None:
            witness = {"nonempty_x": nonempty[0]}
    return CheckReport(claim, "pass" if witness is None else "fail", witness, details)


def _max_in(om: OrderedMatroid, s: int) -> int:
    return bs.bit(om.max_element(s))


def _predict_with_e(om: OrderedMatroid, bp: int, e: int) -> tuple[int, int, int]:
    """``(S, T, A)`` of ``minBasis_{M/e}(I)`` from a basis ``B'`` holding ``e``,
    in the labels of ``M``."""
    eb = bs.bit(e)
    d = om.sta(bp)
    s, t, a = d.s, d.t, d.a
    if a & eb:
        return s, t, a & ~eb
    if t & eb:
        return s, t & ~eb, a
    if d.f_parts[e] == 0:
        return s & ~eb, t, a
    x = _max_in(om, om.matroid.fundamental_circuit(om.b0, e) & ~eb)
    return (s & ~eb) | x, t & ~x, a


def _predict_without_e(om, bp, bpp, i_set, e, corrected):
    """Three-case relation between ``B = minBasis_{M/e}(I)`` and
    ``B' = minBasis_M(I)`` when ``e`` is not in ``B'``.

    ``corrected`` uses strict ``t < e`` in ``T`` and removes ``a'`` from ``A``
    in the last case; otherwise the relation is taken as printed.
    """
    m = om.matroid
    eb = bs.bit(e)
    d1, d2 = om.sta(bp), om.sta(bpp)
    s1, t1, a1 = d1.s, d1.t, d1.a
    a_prime = _max_in(om, m.fundamental_circuit(bp, e) & ~(i_set | eb))
    if d2.s & eb:
        te = d2.f_parts[e]
        if not te:
            return s1 & ~eb, t1, a1 & ~a_prime
        x = _max_in(om, m.fundamental_circuit(om.b0, e) & ~eb)
        return s1 | x, (t1 | te) & ~x, a1 & ~te & ~a_prime
    f = next(g for g, part in d2.f_parts.items() if part & eb)
    tf = d2.f_parts[f]
    lower = tf & om.below(e)
    if corrected:
        return s1, t1 | lower, a1 & ~lower & ~a_prime
    return s1, t1 | lower | (tf & eb), a1 & ~lower


def _contraction_lemmas(om: OrderedMatroid, e: int, minor: OrderedMatroid, relabel: RelabelMap):
    """Count agreements of each relation over every independent set of ``M/e``."""
    m = om.matroid
    eb = bs.bit(e)
    tally = {
        "min_basis": [0, 0],
        "with_e": [0, 0],
        "without_e_passive": [0, 0],
        "without_e_via_b2": [0, 0],
        "without_e_printed": [0, 0],
        "without_e_corrected": [0, 0],
    }
    first_fail: dict[str, dict] = {}

    def record(key, ok, i_set):
        tally[key][0] += 1
        if not ok:
            tally[key][1] += 1
            first_fail.setdefault(key, {"I": list(bs.elements(i_set))})

    for j in minor.matroid.independent_sets:
        i_set = relabel.backward(j)
        b = relabel.backward(minor.min_basis(j))
        d = minor.sta(minor.min_basis(j))
        got = (relabel.backward(d.s), relabel.backward(d.t), relabel.backward(d.a))
        bp = om.min_basis(i_set)
        bpp = om.min_basis(i_set | eb)
        if bp & eb:
            record("min_basis", b == bp & ~eb, i_set)
            record("with_e", got == _predict_with_e(om, bp, e), i_set)
            continue
        x = _max_in(om, m.fundamental_circuit(bp, e) & ~(i_set | eb))
        record("min_basis", b == bp & ~x and bool(om.ia(bp) & x), i_set)
        record("without_e_passive", bool(om.ip(bpp) & eb), i_set)
        record("without_e_via_b2", got == _predict_with_e(om, bpp, e), i_set)
        record("without_e_printed", got == _predict_without_e(om, bp, bpp, i_set, e, False), i_set)
        record("without_e_corrected", got == _predict_without_e(om, bp, bpp, i_set, e, True), i_set)
    return tally, first_fail


# relations that must hold for the contraction check to pass
_GATING = ("min_basis", "with_e", "without_e_passive", "without_e_via_b2", "without_e_corrected")


def _contract_one(om: OrderedMatroid, e: int, lemmas: bool) -> CheckReport:
    m = om.matroid
    eb = bs.bit(e)
    minor, relabel = om.contract(eb)
    witness = _perfection_witness(minor, relabel)
    details: dict = {"element": e}
    if lemmas and not m.loops & eb:
        tally, fails = _contraction_lemmas(om, e, minor, relabel)
        details["relations"] = {k: {"checked": v[0], "failed": v[1]} for k, v in tally.items()}
        if fails:
            details["first_failures"] = fails
        bad = [k for k in _GATING if tally[k][1]]
        if bad and witness is None:
            witness = {"relation": bad[0], **fails[bad[0]]}
    status = "pass" if witness is None else "fail"
    return CheckReport(f"contraction of {e} preserves perfection", status, witness, details)


def verify_contraction_theorem(om: OrderedMatroid, e: int | None = None, lemmas: bool = True) -> CheckReport:
    """Check that ``M/e`` is perfect for ``e`` (or every element), along with
    the basis and decomposition relations between ``M`` and ``M/e``.

    The printed form of the last decomposition case is tallied but does not
    gate the result; see ``_predict_without_e``.
    """
    claim = "contraction preserves perfection"
    if not is_perfect(om):
        return CheckReport(claim, "unmet", None, {"reason": "not internally perfect"})
    elements = bs.elements(om.matroid.ground) if e is None else (e,)
    per = [_contract_one(om, x, lemmas) for x in elements]
    failed = [r for r in per if not r.passed]
    details = {"elements": [r.details for r in per]}
    if failed:
        w = dict(failed[0].witness or {})
        w["element"] = failed[0].details["element"]
        return CheckReport(claim, "fail", w, details)
    return CheckReport(claim, "pass", None, details)


def verify_minor_theorem(om: OrderedMatroid, f1: SetLike, f2: SetLike) -> CheckReport:
    """``M / F1 \\ F2`` is perfect in the induced order, checked one element
    at a time: contractions first, then deletions."""
    f1, f2 = bs.mask(f1), bs.mask(f2)
    if f1 & f2:
        raise PreconditionUnmet("F1 and F2 must be disjoint")
    bad = f2 & om.b0 & ~om.matroid.coloops
    if bad:
        raise PreconditionUnmet(f"{bs.elements(bad)} lie in the initial basis and are not coloops")
    _require_perfect(om)
    claim = "minor preserves perfection"
    cur = om
    relabel = RelabelMap.keeping(om.n, om.matroid.ground)
    steps = []
    for op, group in (("contract", f1), ("delete", f2)):
        for x in bs.elements(group):
            local = relabel.old_to_new[x]
            if op == "contract":
                report = _contract_one(cur, local, lemmas=False)
                nxt, step = cur.contract(bs.bit(local))
            else:
                report = verify_deletion_corollary(cur, local)
                nxt, step = cur.delete(bs.bit(local))
            steps.append({"op": op, "element": x, "status": report.status})
            if not report.passed:
                return CheckReport(claim, "fail", {"op": op, "element": x, **(report.witness or {})},
                                   {"steps": steps})
            cur, relabel = nxt, relabel.then(step)
    return CheckReport(claim, "pass", None, {"steps": steps, "rank": cur.rank, "bases": len(cur.bases)})
