"""h-vectors, the monomial map on bases, and pure order ideal certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping

from . import bitset as bs
from .activity import OrderedMatroid
from .bitset import SetLike
from .errors import NotAnIdeal
from .internal_order import build
from .matroid import Matroid


@dataclass(frozen=True)
class MonomialVector:
    """Sparse vector in a free commutative monoid; zero coordinates are dropped."""

    items: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, coords: Mapping[int, int] | None = None) -> "MonomialVector":
        coords = coords or {}
        if any(v < 0 for v in coords.values()):
            raise ValueError("coordinates must be non-negative")
        return cls(tuple(sorted((k, v) for k, v in coords.items() if v)))

    @property
    def coords(self) -> dict[int, int]:
        return dict(self.items)

    def __getitem__(self, key: int) -> int:
        return self.coords.get(key, 0)

    @property
    def total(self) -> int:
        return sum(v for _, v in self.items)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.items)

    def minus(self, key: int) -> "MonomialVector":
        c = self.coords
        c[key] -= 1
        return MonomialVector.of(c)

    def plus(self, key: int) -> "MonomialVector":
        c = self.coords
        c[key] = c.get(key, 0) + 1
        return MonomialVector.of(c)

    def dominated_by(self, other: "MonomialVector") -> bool:
        oc = other.coords
        return all(v <= oc.get(k, 0) for k, v in self.items)

    def __repr__(self) -> str:
        if not self.items:
            return "0"
        return " + ".join(f"{v}e{k}" if v != 1 else f"e{k}" for k, v in self.items)


def f_vector(m: Matroid) -> list[int]:
    """``f[i]`` counts independent sets of size ``i`` (so ``f[0] = 1``)."""
    counts = [0] * (m.rank + 1)
    for s in m.independent_sets:
        counts[s.bit_count()] += 1
    return counts


def h_vector(m: Matroid) -> list[int]:
    """h-vector of the independence complex.

    With ``f[i]`` the number of ``i``-element faces,
    ``h_k = sum_i (-1)^(k-i) C(r-i, k-i) f[i]``.
    """
    f = f_vector(m)
    r = m.rank
    return [
        sum((-1) ** (k - i) * comb(r - i, k - i) * f[i] for i in range(k + 1))
        for k in range(r + 1)
    ]


def mu(om: OrderedMatroid, b: SetLike) -> MonomialVector:
    """``sum over f in S(B) of |{f} ∪ T(B; f)| e_f`` (total on every basis)."""
    d = om.sta(b)
    return MonomialVector.of({f: 1 + part.bit_count() for f, part in d.f_parts.items()})


def mu_image(om: OrderedMatroid) -> tuple[dict[int, MonomialVector], bool]:
    """μ on every basis plus whether it is injective."""
    image = {b: mu(om, b) for b in om.bases}
    return image, len(set(image.values())) == len(image)


def is_order_ideal(vectors: Iterable[MonomialVector]) -> tuple[bool, MonomialVector | None]:
    """Downward closure test; the witness is the first missing predecessor."""
    s = set(vectors)
    for v in sorted(s, key=lambda x: (x.total, x.items)):
        for k in v.support:
            w = v.minus(k)
            if w not in s:
                return False, w
    return True, None


def maximal_elements(vectors: Iterable[MonomialVector]) -> list[MonomialVector]:
    s = set(vectors)
    keys = {k for v in s for k in v.support}
    return sorted(
        (v for v in s if not any(v.plus(k) in s for k in keys)),
        key=lambda x: (x.total, x.items),
    )


def is_pure(vectors: Iterable[MonomialVector]) -> bool:
    s = set(vectors)
    ok, _ = is_order_ideal(s)
    if not ok:
        raise NotAnIdeal("purity is only defined for order ideals")
    return len({v.total for v in maximal_elements(s)}) <= 1


def o_sequence(vectors: Iterable[MonomialVector]) -> list[int]:
    s = set(vectors)
    ok, _ = is_order_ideal(s)
    if not ok:
        raise NotAnIdeal("O-sequences are only defined for order ideals")
    if not s:
        return []
    counts = [0] * (max(v.total for v in s) + 1)
    for v in s:
        counts[v.total] += 1
    return counts


@dataclass
class StanleyCertificate:
    h_vector: list[int]
    o_sequence: list[int] | None
    injective: bool
    is_ideal: bool
    is_pure: bool
    covers_consistent: bool
    failures: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return (
            self.injective
            and self.is_ideal
            and self.is_pure
            and self.o_sequence == self.h_vector
        )

    def to_json(self) -> dict:
        return {
            "h": self.h_vector,
            "o": self.o_sequence,
            "injective": self.injective,
            "is_ideal": self.is_ideal,
            "is_pure": self.is_pure,
            "covers_consistent": self.covers_consistent,
            "verdict": "pass" if self.verdict else "fail",
            "failures": self.failures,
        }


def strip_loops(om: OrderedMatroid) -> OrderedMatroid:
    if not om.matroid.loops:
        return om
    return om.delete(om.matroid.loops)[0]


def stanley_certificate(om: OrderedMatroid) -> StanleyCertificate:
    om = strip_loops(om)
    h = h_vector(om.matroid)
    image, injective = mu_image(om)
    values = set(image.values())
    failures = []
    if not injective:
        failures.append("mu is not injective")
    ideal, witness = is_order_ideal(values)
    if not ideal:
        failures.append(f"image is not downward closed: missing {witness!r}")
    pure = is_pure(values) if ideal else False
    if ideal and not pure:
        failures.append("image is not pure")
    o = o_sequence(values) if ideal else None
    if ideal and o != h:
        failures.append(f"O-sequence {o} differs from h-vector {h}")
    covers_ok = _covers_consistent(om, image)
    if not covers_ok:
        failures.append("lower covers do not map onto mu(B) - e_f for f in S(B)")
    return StanleyCertificate(h, o, injective, ideal, pure, covers_ok, failures)


def _covers_consistent(om: OrderedMatroid, image: dict[int, MonomialVector]) -> bool:
    """Each basis's lower covers map bijectively onto ``{μ(B) - e_f : f ∈ S}``."""
    io = build(om, verify=False)
    for i, b in enumerate(io.nodes):
        v = image[b]
        targets = {v.minus(f) for f in v.support}
        got = [image[io.nodes[k]] for k in io.down[i]]
        if len(got) != len(targets) or set(got) != targets:
            return False
    return True
