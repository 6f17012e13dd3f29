"""Shelling verification and search for pure simplicial complexes."""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

from .complex_core import ComplexLike, Face, NotPureError, as_complex

DEFAULT_NODE_BUDGET = 10**7


class ShellingBudgetExceeded(RuntimeError):
    """The backtracking search ran out of nodes before deciding."""

    def __init__(self, budget: int):
        super().__init__(f"shelling search exhausted its budget of {budget} nodes")
        self.budget = budget


@dataclass(frozen=True)
class ShellingCertificate:
    order: tuple[Face, ...]
    restrictions: tuple[Face, ...]

    @property
    def r(self) -> tuple[int, ...]:
        return tuple(len(res) for res in self.restrictions)

    def to_text(self) -> str:
        """One line per facet: the facet, a bar, then its restriction face."""
        return "".join(
            (" ".join(map(str, sorted(f))) + " | " + " ".join(map(str, sorted(res)))).rstrip() + "\n"
            for f, res in zip(self.order, self.restrictions)
        )

    def to_json(self) -> dict:
        return {
            "order": [sorted(f) for f in self.order],
            "restrictions": [sorted(res) for res in self.restrictions],
            "r": list(self.r),
        }


@dataclass(frozen=True)
class ShellingFailure:
    step: int  # 1-based position of the first facet that breaks the shelling
    reason: str

    def __bool__(self):
        return False


def _require_pure(cx):
    if not cx.is_pure:
        raise NotPureError("shellings are only defined for pure complexes")


def _restriction_by_ridges(facet: Face, previous: Sequence[Face]) -> Face | None:
    """Condition (a): the overlap with earlier facets is generated by ridges of ``facet``.

    Returns the restriction face (vertices whose opposite ridge is shared),
    or None when the condition fails.
    """
    if not previous:
        return frozenset()
    cuts = {facet & g for g in previous}
    maximal = [c for c in cuts if not any(c < o for o in cuts)]
    if any(len(c) != len(facet) - 1 for c in maximal):
        return None
    return frozenset().union(*(facet - c for c in maximal))


def _restriction_by_new_faces(facet: Face, previous: Sequence[Face]) -> Face | None:
    """Condition (b): the faces added by ``facet`` have a unique minimal element."""
    cuts = [facet & g for g in previous]
    members = sorted(facet)
    new = [
        frozenset(c)
        for k in range(len(members) + 1)
        for c in combinations(members, k)
        if not any(frozenset(c) <= cut for cut in cuts)
    ]
    minimal = [s for s in new if not any(t < s for t in new)]
    return minimal[0] if len(minimal) == 1 else None


def verify_shelling(cx: ComplexLike, order: Sequence) -> ShellingCertificate | ShellingFailure:
    cx = as_complex(cx)
    _require_pure(cx)
    order = tuple(frozenset(f) for f in order)
    if len(order) != len(cx.facets) or set(order) != set(cx.facets):
        raise ValueError("order is not a permutation of the facets")
    restrictions = []
    for j, facet in enumerate(order):
        prev = order[:j]
        res_a = _restriction_by_ridges(facet, prev)
        res_b = _restriction_by_new_faces(facet, prev)
        if (res_a is None) != (res_b is None) or res_a != res_b:
            raise AssertionError(
                f"shelling conditions disagree at step {j + 1}: {res_a} vs {res_b}"
            )
        if res_a is None:
            return ShellingFailure(j + 1, f"facet {sorted(facet)} meets earlier facets badly")
        restrictions.append(res_a)
    return ShellingCertificate(order, tuple(restrictions))


def iter_shellings(cx: ComplexLike, budget: int = DEFAULT_NODE_BUDGET) -> Iterator[ShellingCertificate]:
    """Yield distinct shellings by exhaustive backtracking.

    Raises ShellingBudgetExceeded once more than ``budget`` search nodes
    have been expanded.
    """
    cx = as_complex(cx)
    _require_pure(cx)
    facets = cx.sorted_facets()
    # whether a facet can extend a partial shelling depends only on the set shelled so far
    dead: set[frozenset[int]] = set()
    nodes = 0

    def search(order: list[int], res: list[Face], used: frozenset[int]):
        nonlocal nodes
        if len(order) == len(facets):
            yield ShellingCertificate(tuple(facets[k] for k in order), tuple(res))
            return
        prev = [facets[k] for k in order]
        options = []
        for k, f in enumerate(facets):
            if k in used:
                continue
            r = _restriction_by_ridges(f, prev)
            if r is not None and used | {k} not in dead:
                options.append((-len(r), k, r))
        options.sort()
        found = False
        for _, k, r in options:
            nodes += 1
            if nodes > budget:
                raise ShellingBudgetExceeded(budget)
            branch_found = False
            for cert in search(order + [k], res + [r], used | {k}):
                branch_found = True
                yield cert
            if not branch_found:
                dead.add(used | {k})
            found = found or branch_found
        if not found:
            dead.add(used)

    roots = range(len(facets))
    for k in roots:
        nodes += 1
        if nodes > budget:
            raise ShellingBudgetExceeded(budget)
        yield from search([k], [frozenset()], frozenset({k}))


def find_shelling(cx: ComplexLike, budget: int = DEFAULT_NODE_BUDGET) -> ShellingCertificate | None:
    """A shelling, or None if exhaustive search proves there is none."""
    return next(iter_shellings(cx, budget), None)


def h_from_restrictions(cert: ShellingCertificate, d: int) -> tuple[int, ...]:
    counts = [0] * (d + 1)
    for r in cert.r:
        counts[r] += 1
    return tuple(counts)
