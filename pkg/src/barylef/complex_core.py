"""Finite simplicial complexes and their enumerative invariants.

A complex is stored by its facets; every other face is implied by
downward closure.  Vertices are positive integers.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from math import comb
from types import MappingProxyType
from typing import NamedTuple, Union

Face = frozenset


class EmptyComplexError(ValueError):
    """Raised when a complex would have no facets at all."""


class NotPureError(ValueError):
    """Raised by operations that require every facet to have the same size."""


@dataclass(frozen=True)
class SimplicialComplex:
    facets: frozenset[Face]

    def __post_init__(self):
        if not self.facets:
            raise EmptyComplexError("a complex needs at least one non-empty facet")
        for a in self.facets:
            if not a:
                raise ValueError("facets must be non-empty")
            for b in self.facets:
                if a < b:
                    raise ValueError(f"{sorted(a)} is contained in facet {sorted(b)}")

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.facets)

    @cached_property
    def d(self) -> int:
        """Largest facet cardinality (dimension plus one)."""
        return max(len(f) for f in self.facets)

    @property
    def dim(self) -> int:
        return self.d - 1

    @cached_property
    def is_pure(self) -> bool:
        return all(len(f) == self.d for f in self.facets)

    @cached_property
    def faces(self) -> frozenset[Face]:
        """Every face, the empty face included."""
        out = set()
        for facet in self.facets:
            if facet in out:
                continue
            members = sorted(facet)
            for k in range(len(members) + 1):
                out.update(frozenset(c) for c in combinations(members, k))
        return frozenset(out)

    def faces_of_size(self, k: int) -> list[Face]:
        return sorted((f for f in self.faces if len(f) == k), key=sorted)

    def sorted_facets(self) -> list[Face]:
        return sorted(self.facets, key=lambda f: (len(f), sorted(f)))

    def __contains__(self, face) -> bool:
        return frozenset(face) in self.faces

    def __repr__(self):
        body = ", ".join("{" + ",".join(map(str, sorted(f))) + "}" for f in self.sorted_facets())
        return f"<{body}>"


@dataclass(frozen=True)
class SubdividedComplex:
    """A barycentric subdivision together with the face each vertex stands for."""

    base: SimplicialComplex
    origin: Mapping[int, Face]
    level: Mapping[int, int] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "origin", MappingProxyType(dict(self.origin)))
        object.__setattr__(self, "level", MappingProxyType({v: len(f) for v, f in self.origin.items()}))
        if set(self.origin) != set(self.base.vertices):
            raise ValueError("origin map must cover exactly the vertices of the subdivision")

    @property
    def d(self) -> int:
        return self.base.d

    @property
    def dim(self) -> int:
        return self.base.dim


ComplexLike = Union[SimplicialComplex, SubdividedComplex]


def as_complex(obj: ComplexLike) -> SimplicialComplex:
    if isinstance(obj, SubdividedComplex):
        return obj.base
    return obj


def from_facets(facet_list: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Build a complex from any list of faces; dominated faces are dropped."""
    sets = {frozenset(int(v) for v in f) for f in facet_list}
    if not sets:
        raise EmptyComplexError("empty facet list")
    if frozenset() in sets:
        raise ValueError("facets must be non-empty")
    # larger sets first so each candidate only needs checking against kept ones
    kept: list[Face] = []
    for s in sorted(sets, key=len, reverse=True):
        if not any(s < k for k in kept):
            kept.append(s)
    return SimplicialComplex(frozenset(kept))


def simplex(k: int, start: int = 1) -> SimplicialComplex:
    """The full k-simplex on vertices start, ..., start + k."""
    return from_facets([range(start, start + k + 1)])


def simplex_boundary(k: int, start: int = 1) -> SimplicialComplex:
    """Boundary of the k-simplex (k >= 1)."""
    if k < 1:
        raise ValueError("the boundary of a point is the empty complex")
    return from_facets(combinations(range(start, start + k + 1), k))


def f_vector(cx: ComplexLike) -> tuple[int, ...]:
    cx = as_complex(cx)
    counts = [0] * (cx.d + 1)
    for face in cx.faces:
        counts[len(face)] += 1
    return tuple(counts)


def h_from_f(f: tuple[int, ...]) -> tuple[int, ...]:
    d = len(f) - 1
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def f_from_h(h: tuple[int, ...]) -> tuple[int, ...]:
    d = len(h) - 1
    return tuple(sum(comb(d - i, k - i) * h[i] for i in range(k + 1)) for k in range(d + 1))


def h_vector(cx: ComplexLike) -> tuple[int, ...]:
    return h_from_f(f_vector(cx))


def g_vector(h: tuple[int, ...]) -> tuple[int, ...]:
    d = len(h) - 1
    return (1,) + tuple(h[i] - h[i - 1] for i in range(1, d // 2 + 1))


def barycentric_subdivision(cx: ComplexLike) -> SubdividedComplex:
    """Order complex of the non-empty faces.

    New vertex labels are 1, 2, ... in order of (cardinality, sorted face).
    """
    cx = as_complex(cx)
    ordered = sorted((f for f in cx.faces if f), key=lambda f: (len(f), sorted(f)))
    label = {f: n for n, f in enumerate(ordered, start=1)}
    chains = set()
    for facet in cx.facets:
        for perm in permutations(sorted(facet)):
            chains.add(frozenset(label[frozenset(perm[: k + 1])] for k in range(len(perm))))
    return SubdividedComplex(SimplicialComplex(frozenset(chains)), {n: f for f, n in label.items()})


def cone(cx: ComplexLike, apex: int | None = None) -> SimplicialComplex:
    cx = as_complex(cx)
    if apex is None:
        apex = max(cx.vertices) + 1
    if apex in cx.vertices:
        raise ValueError(f"apex {apex} is already a vertex")
    return SimplicialComplex(frozenset(f | {apex} for f in cx.facets))


def skeleton(cx: ComplexLike, k: int) -> SimplicialComplex:
    """All faces of dimension at most k."""
    cx = as_complex(cx)
    if not 0 <= k <= cx.dim:
        raise ValueError(f"skeleton dimension {k} outside [0, {cx.dim}]")
    return from_facets(f for f in cx.faces if f and len(f) <= k + 1)


def macaulay_representation(a: int, i: int) -> list[tuple[int, int]]:
    """The i-th binomial expansion a = C(n_i, i) + C(n_{i-1}, i-1) + ...

    Returned as [(n_i, i), (n_{i-1}, i-1), ...] with n_i > n_{i-1} > ... .
    """
    if a < 0 or i < 1:
        raise ValueError("need a >= 0 and i >= 1")
    terms = []
    while a > 0 and i >= 1:
        n = i
        while comb(n + 1, i) <= a:
            n += 1
        terms.append((n, i))
        a -= comb(n, i)
        i -= 1
    return terms


def macaulay_bound(a: int, i: int) -> int:
    """a^<i>: the largest value allowed after a in degree i of an M-sequence."""
    return sum(comb(n + 1, j + 1) for n, j in macaulay_representation(a, i))


class MSequenceVerdict(NamedTuple):
    ok: bool
    index: int | None = None

    def __bool__(self):
        return self.ok


def is_m_sequence(a) -> MSequenceVerdict:
    a = tuple(a)
    if not a or a[0] != 1:
        return MSequenceVerdict(False, 0)
    for idx, x in enumerate(a):
        if x < 0:
            return MSequenceVerdict(False, idx)
    for i in range(1, len(a) - 1):
        # macaulay_bound(0, i) == 0 covers the internal-zero rule
        if a[i + 1] > macaulay_bound(a[i], i):
            return MSequenceVerdict(False, i + 1)
    return MSequenceVerdict(True)


class Peaks(NamedTuple):
    unimodal: bool
    positions: frozenset[int]


def is_unimodal(a) -> bool:
    a = list(a)
    j = 0
    while j + 1 < len(a) and a[j] <= a[j + 1]:
        j += 1
    return all(a[k] >= a[k + 1] for k in range(j, len(a) - 1))


def peak_positions(a) -> Peaks:
    a = list(a)
    if not a:
        return Peaks(True, frozenset())
    top = max(a)
    return Peaks(is_unimodal(a), frozenset(k for k, x in enumerate(a) if x == top))
