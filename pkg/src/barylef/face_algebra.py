"""Graded pieces of Stanley-Reisner rings over F_p and Lefschetz certificates.

Monomials are sorted tuples of vertex labels with repetition, so
``(2, 2, 5)`` is x_2^2 x_5.  A monomial survives in the face ring exactly
when its support is a face.

Genericity over an infinite field is emulated by sampling coefficients
uniformly from F_p.  A certificate found this way proves the property
over F_p; failing to find one proves nothing.
"""

from __future__ import annotations

import json
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement

import numpy as np

from . import modp
from .complex_core import (
    ComplexLike,
    NotPureError,
    SimplicialComplex,
    SubdividedComplex,
    as_complex,
    cone,
    from_facets,
    h_vector,
)
from .modp import PrimeField

DEFAULT_PRIME = 32003
DEFAULT_TRIALS = 5
DEFAULT_SEED = 0
DEFAULT_LSOP_RETRIES = 10

Monomial = tuple


class LsopSamplingError(RuntimeError):
    def __init__(self, seed, attempts: int, reason: str):
        super().__init__(f"no valid l.s.o.p. after {attempts} draws (last seed {seed}): {reason}")
        self.seed = seed
        self.attempts = attempts


@dataclass(frozen=True)
class LinearForm:
    coefficients: Mapping[int, int]

    def __post_init__(self):
        coeffs = {int(v): int(c) for v, c in dict(self.coefficients).items() if c}
        if not coeffs:
            raise ValueError("a linear form must not be identically zero")
        object.__setattr__(self, "coefficients", coeffs)

    def __getitem__(self, v: int) -> int:
        return self.coefficients.get(v, 0)

    def to_json(self) -> dict[str, int]:
        return {str(v): c for v, c in sorted(self.coefficients.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> LinearForm:
        return cls({int(v): int(c) for v, c in data.items()})

    @classmethod
    def variable(cls, v: int) -> LinearForm:
        return cls({v: 1})


def _support_is_face(mono: Monomial, faces) -> bool:
    return frozenset(mono) in faces


def _basis_key(mono: Monomial):
    # squarefree monomials sort last, so they end up as the non-pivot columns
    return (len(set(mono)), mono)


def graded_basis(cx: ComplexLike, degree: int) -> list[Monomial]:
    """Degree-``degree`` monomials whose support is a face."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    cx = as_complex(cx)
    if degree == 0:
        return [()]
    out = []
    for face in cx.faces:
        if not face or len(face) > degree:
            continue
        members = sorted(face)
        for extra in combinations_with_replacement(members, degree - len(face)):
            out.append(tuple(sorted(members + list(extra))))
    return sorted(out, key=_basis_key)


@dataclass
class _Degree:
    basis: list[Monomial]
    echelon: modp.Echelon
    reduction: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.basis) - self.echelon.rank

    @cached_property
    def reps(self) -> list[Monomial]:
        return [self.basis[c] for c in self.echelon.free_columns]


class GradedQuotientModel:
    """The graded pieces of k[Δ]/(θ_1, ..., θ_d), built lazily degree by degree."""

    def __init__(self, cx: ComplexLike, field: PrimeField, theta: Sequence[LinearForm]):
        self.complex = as_complex(cx)
        self.field = field
        self.theta = tuple(theta)
        self.vertex_list = sorted(self.complex.vertices)
        self._vindex = {v: k for k, v in enumerate(self.vertex_list)}
        self._theta = field.array([[t[v] for v in self.vertex_list] for t in self.theta]).reshape(
            len(self.theta), len(self.vertex_list)
        )
        self._faces = self.complex.faces
        self._degrees: dict[int, _Degree] = {}
        self._bases: dict[int, list[Monomial]] = {}
        self._tables: dict[int, np.ndarray] = {}

    def basis(self, degree: int) -> list[Monomial]:
        if degree not in self._bases:
            self._bases[degree] = graded_basis(self.complex, degree)
        return self._bases[degree]

    def _table(self, degree: int) -> np.ndarray:
        """table[m, v] = column of m * x_v in degree ``degree``, or -1 if that lies in I_Δ."""
        if degree not in self._tables:
            lower = self.basis(degree - 1)
            index = {m: k for k, m in enumerate(self.basis(degree))}
            tab = np.full((len(lower), len(self.vertex_list)), -1, dtype=np.int64)
            for r, mono in enumerate(lower):
                for v, c in self._vindex.items():
                    prod = tuple(sorted(mono + (v,)))
                    if _support_is_face(prod, self._faces):
                        tab[r, c] = index[prod]
            self._tables[degree] = tab
        return self._tables[degree]

    def relation_matrix(self, degree: int) -> np.ndarray:
        """Rows θ_j * m for every θ_j and every degree-(degree-1) face monomial m."""
        ncols = len(self.basis(degree))
        if degree == 0 or not self.theta:
            return np.zeros((0, ncols), dtype=np.int64)
        tab = self._table(degree)
        nlower = tab.shape[0]
        rel = np.zeros((len(self.theta) * nlower, ncols), dtype=np.int64)
        mi, vi = np.nonzero(tab >= 0)
        cols = tab[mi, vi]
        for j in range(len(self.theta)):
            rel[j * nlower + mi, cols] = self._theta[j, vi]
        return rel

    def degree(self, i: int) -> _Degree:
        if i not in self._degrees:
            ech = modp.echelon(self.field, self.relation_matrix(i))
            self._degrees[i] = _Degree(self.basis(i), ech, modp.reduction_matrix(self.field, ech))
        return self._degrees[i]

    def dim(self, i: int) -> int:
        return self.degree(i).dim

    def reps(self, i: int) -> list[Monomial]:
        return self.degree(i).reps

    def reduce(self, vectors: np.ndarray, i: int) -> np.ndarray:
        """Express rows of degree-i polynomials (in basis coordinates) on the coset representatives."""
        deg = self.degree(i)
        return modp.reduce_rows(self.field, deg.echelon, deg.reduction, vectors)

    def step_matrix(self, omega: LinearForm, i: int) -> np.ndarray:
        """Multiplication by ω from quotient degree i to i+1, in representative coordinates."""
        src = self.degree(i)
        tab = self._table(i + 1)
        w = np.array([omega[v] for v in self.vertex_list], dtype=np.int64) % self.field.p
        free = src.echelon.free_columns
        image = np.zeros((len(free), len(self.basis(i + 1))), dtype=np.int64)
        for k, c in enumerate(free):
            hit = tab[c] >= 0
            image[k, tab[c][hit]] = w[hit]
        return self.reduce(image, i + 1)

    def power_matrix(self, omega: LinearForm, i: int, t: int) -> np.ndarray:
        """ω^t from degree i to degree i+t, as t successive single steps."""
        out = np.eye(self.dim(i), dtype=np.int64)
        for k in range(i, i + t):
            out = self.field.matmul(out, self.step_matrix(omega, k))
        return out


def quotient_dims(model: GradedQuotientModel, max_degree: int | None = None) -> tuple[int, ...]:
    top = model.complex.d if max_degree is None else max_degree
    return tuple(model.dim(i) for i in range(top + 1))


def multiplication_rank(model: GradedQuotientModel, omega: LinearForm, i: int, t: int) -> int:
    if i < 0 or t < 1:
        raise ValueError("need i >= 0 and t >= 1")
    if model.dim(i) == 0:
        return 0
    return modp.rank(model.field, model.power_matrix(omega, i, t))


def bg_lsop(sd: SubdividedComplex, field: PrimeField | None = None) -> list[LinearForm]:
    """θ_i = sum of the variables of level i, for i = 1..d (Baclawski-Garsia)."""
    if not isinstance(sd, SubdividedComplex):
        raise TypeError("the level-sum system needs a SubdividedComplex with level labels")
    by_level: dict[int, dict[int, int]] = {}
    for v, lvl in sd.level.items():
        by_level.setdefault(lvl, {})[v] = 1
    return [LinearForm(by_level[i]) for i in range(1, sd.d + 1)]


def kind_kleinschmidt(cx: ComplexLike, field: PrimeField, theta: Sequence[LinearForm]) -> bool:
    """True iff the forms are a linear system of parameters.

    A family of d = dim+1 linear forms is an l.s.o.p. exactly when, for
    every facet F, the coefficient block on the columns of F has rank #F.
    """
    cx = as_complex(cx)
    if len(theta) != cx.d:
        return False
    for facet in cx.facets:
        cols = sorted(facet)
        block = field.array([[t[v] for v in cols] for t in theta])
        if modp.rank(field, block) != len(cols):
            return False
    return True


def _random_form(rng: np.random.Generator, vertices: Sequence[int], field: PrimeField) -> LinearForm:
    while True:
        coeffs = rng.integers(0, field.p, size=len(vertices))
        if coeffs.any():
            return LinearForm(dict(zip(vertices, coeffs.tolist())))


def _sample_lsop(cx, field, rng, expected_dims, retries, seed_label):
    vertices = sorted(cx.vertices)
    reason = "retry limit is zero"
    for _ in range(retries):
        theta = [_random_form(rng, vertices, field) for _ in range(cx.d)]
        if not kind_kleinschmidt(cx, field, theta):
            reason = "sampled forms are not a system of parameters"
            continue
        if expected_dims is not None:
            model = GradedQuotientModel(cx, field, theta)
            dims = quotient_dims(model, len(expected_dims) - 1)
            if dims != tuple(expected_dims):
                reason = f"quotient dimensions {dims} differ from expected {tuple(expected_dims)}"
                continue
            return theta, model
        return theta, GradedQuotientModel(cx, field, theta)
    raise LsopSamplingError(seed_label, retries, reason)


def random_lsop(
    cx: ComplexLike,
    field: PrimeField | None = None,
    seed: int = DEFAULT_SEED,
    *,
    expected_dims: Sequence[int] | None | str = "h",
    retries: int = DEFAULT_LSOP_RETRIES,
) -> list[LinearForm]:
    """Uniformly random forms, resampled until they form a valid l.s.o.p.

    By default the quotient dimensions are also required to equal the
    combinatorial h-vector; pass ``expected_dims=None`` to skip that.
    """
    field = field or PrimeField(DEFAULT_PRIME)
    cx = as_complex(cx)
    if isinstance(expected_dims, str):
        expected_dims = h_vector(cx)
    theta, _ = _sample_lsop(cx, field, np.random.default_rng(seed), expected_dims, retries, seed)
    return theta


@dataclass(frozen=True)
class RankWitness:
    i: int
    target: int
    dim_source: int
    dim_target: int
    rank: int

    @property
    def injective(self) -> bool:
        return self.rank == self.dim_source


@dataclass(frozen=True)
class LefschetzCertificate:
    s: int
    p: int
    seed: int
    trial: int
    facets: tuple[tuple[int, ...], ...]
    theta: tuple[LinearForm, ...]
    omega: LinearForm
    witnesses: tuple[RankWitness, ...]

    def to_json(self) -> dict:
        return {
            "s": self.s,
            "p": self.p,
            "seed": self.seed,
            "trial": self.trial,
            "facets": [list(f) for f in self.facets],
            "theta": [t.to_json() for t in self.theta],
            "omega": self.omega.to_json(),
            "ranks": [
                {"i": w.i, "target": w.target, "dim_source": w.dim_source,
                 "dim_target": w.dim_target, "rank": w.rank}
                for w in self.witnesses
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: Mapping) -> LefschetzCertificate:
        return cls(
            s=int(data["s"]),
            p=int(data["p"]),
            seed=int(data["seed"]),
            trial=int(data["trial"]),
            facets=tuple(tuple(f) for f in data["facets"]),
            theta=tuple(LinearForm.from_json(t) for t in data["theta"]),
            omega=LinearForm.from_json(data["omega"]),
            witnesses=tuple(RankWitness(**w) for w in data["ranks"]),
        )

    @classmethod
    def loads(cls, text: str) -> LefschetzCertificate:
        return cls.from_json(json.loads(text))


@dataclass(frozen=True)
class NoCertificate:
    """Inconclusive outcome: no sampled pair worked."""

    s: int
    p: int
    seed: int
    trials: int
    reasons: tuple[str, ...] = field(default=())

    def __bool__(self):
        return False

    def to_json(self) -> dict:
        return {"s": self.s, "p": self.p, "seed": self.seed, "trials": self.trials,
                "certificate": None, "reasons": list(self.reasons)}


def lefschetz_ranks(model: GradedQuotientModel, omega: LinearForm, s: int) -> list[RankWitness]:
    """Rank of ω^(s-2i): degree i -> degree s-i for 0 <= i <= floor((s-1)/2)."""
    out = []
    for i in range((s - 1) // 2 + 1) if s >= 1 else ():
        t = s - 2 * i
        out.append(RankWitness(i, s - i, model.dim(i), model.dim(s - i),
                               multiplication_rank(model, omega, i, t)))
    return out


def s_lefschetz_check(
    cx: ComplexLike,
    s: int,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    field: PrimeField | None = None,
    *,
    lsop: str = "random",
    retries: int = DEFAULT_LSOP_RETRIES,
) -> LefschetzCertificate | NoCertificate:
    """Search for (Θ, ω) with ω^(s-2i) injective on every required degree.

    Trial t draws from ``numpy.random.default_rng([seed, t])``.  With
    ``lsop="bg"`` the level-sum system of a subdivision is used and only ω
    is random.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    field = field or PrimeField(DEFAULT_PRIME)
    base = as_complex(cx)
    if not base.is_pure:
        raise NotPureError("Lefschetz checks need a pure complex")
    if lsop not in ("random", "bg"):
        raise ValueError(f"unknown l.s.o.p. kind {lsop!r}")
    h = h_vector(base)
    expected = h[: min(s, base.d) + 1]
    vertices = sorted(base.vertices)
    reasons = []
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        if lsop == "bg":
            theta = bg_lsop(cx, field)
            model = GradedQuotientModel(base, field, theta)
            dims = quotient_dims(model, len(expected) - 1)
            if dims != expected:
                reasons.append(f"trial {trial}: level-sum quotient dims {dims} != {expected}")
                continue
        else:
            try:
                theta, model = _sample_lsop(base, field, rng, expected, retries, (seed, trial))
            except LsopSamplingError as exc:
                reasons.append(f"trial {trial}: {exc}")
                continue
        omega = _random_form(rng, vertices, field)
        witnesses = lefschetz_ranks(model, omega, s)
        if all(w.injective for w in witnesses):
            facets = tuple(sorted(tuple(sorted(f)) for f in base.facets))
            return LefschetzCertificate(s, field.p, seed, trial, facets, tuple(theta), omega,
                                        tuple(witnesses))
        bad = [w.i for w in witnesses if not w.injective]
        reasons.append(f"trial {trial}: not injective from degrees {bad}")
    return NoCertificate(s, field.p, seed, trials, tuple(reasons))


def almost_strong_lefschetz_check(
    cx: ComplexLike,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    field: PrimeField | None = None,
    **kwargs,
) -> LefschetzCertificate | NoCertificate:
    return s_lefschetz_check(cx, as_complex(cx).dim, trials, seed, field, **kwargs)


def _expand(poly: dict, omega: LinearForm, faces) -> dict:
    out: dict = {}
    for mono, c in poly.items():
        for v, w in omega.coefficients.items():
            prod = tuple(sorted(mono + (v,)))
            if frozenset(prod) in faces:
                out[prod] = out.get(prod, 0) + c * w
    return out


def _injectivity_in_full_ring(cx, field, theta, omega, i, t) -> tuple[int, int]:
    """(dim of quotient degree i, dim of the image of ω^t) without any quotient basis.

    Uses dim image = rank[ω^t A_i ; Θ A_{i+t-1}] - rank[Θ A_{i+t-1}], with
    ω^t expanded as a polynomial in the face ring.
    """
    model = GradedQuotientModel(cx, field, theta)
    src_rel = model.relation_matrix(i)
    dim_src = len(model.basis(i)) - modp.rank(field, src_rel)
    tgt = i + t
    index = {m: k for k, m in enumerate(model.basis(tgt))}
    faces = model.complex.faces
    images = np.zeros((len(model.basis(i)), len(index)), dtype=np.int64)
    for r, mono in enumerate(model.basis(i)):
        poly = {mono: 1}
        for _ in range(t):
            poly = {m: c % field.p for m, c in _expand(poly, omega, faces).items()}
        for m, c in poly.items():
            images[r, index[m]] = c
    tgt_rel = model.relation_matrix(tgt)
    both = np.vstack([images, tgt_rel])
    return dim_src, modp.rank(field, both) - modp.rank(field, tgt_rel)


def verify_certificate(cert: LefschetzCertificate | Mapping | str) -> bool:
    """Re-check a certificate record from scratch.

    The complex, Θ and ω are taken from the record; injectivity is
    recomputed in the full ring, independently of the quotient model that
    produced the record, and must agree with the recorded rank table.
    """
    if isinstance(cert, str):
        cert = LefschetzCertificate.loads(cert)
    elif isinstance(cert, Mapping):
        cert = LefschetzCertificate.from_json(cert)
    field = PrimeField(cert.p)
    cx = from_facets(cert.facets)
    if not kind_kleinschmidt(cx, field, cert.theta):
        return False
    expected_i = list(range((cert.s - 1) // 2 + 1)) if cert.s >= 1 else []
    if [w.i for w in cert.witnesses] != expected_i:
        return False
    for w in cert.witnesses:
        dim_src, image = _injectivity_in_full_ring(cx, field, cert.theta, cert.omega, w.i, cert.s - 2 * w.i)
        if dim_src != w.dim_source or image != w.rank or image != dim_src:
            return False
    return True


@dataclass(frozen=True)
class WeakLefschetzReport:
    """Per-degree ranks of a single multiplication map; exploratory evidence only."""

    p: int
    seed: int
    trial: int
    dims: tuple[int, ...]
    rows: tuple[tuple[int, int, int], ...]  # (i, rank, min(dim_i, dim_{i+1}))

    @property
    def full_rank(self) -> bool:
        return all(r == m for _, r, m in self.rows)

    def to_json(self) -> dict:
        return {"p": self.p, "seed": self.seed, "trial": self.trial, "dims": list(self.dims),
                "rows": [{"i": i, "rank": r, "full": m} for i, r, m in self.rows],
                "full_rank": self.full_rank, "exploratory": True}


def weak_lefschetz_check(
    cx: ComplexLike,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    field: PrimeField | None = None,
    *,
    retries: int = DEFAULT_LSOP_RETRIES,
) -> WeakLefschetzReport | None:
    """Return the first sample with full rank in every degree, else the last sample tried."""
    field = field or PrimeField(DEFAULT_PRIME)
    base = as_complex(cx)
    if not base.is_pure:
        raise NotPureError("Lefschetz checks need a pure complex")
    h = h_vector(base)
    report = None
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        try:
            _, model = _sample_lsop(base, field, rng, h, retries, (seed, trial))
        except LsopSamplingError:
            continue
        omega = _random_form(rng, sorted(base.vertices), field)
        dims = quotient_dims(model)
        rows = []
        for i in range(base.d):
            r = 0 if dims[i] == 0 else modp.rank(field, model.step_matrix(omega, i))
            rows.append((i, r, min(dims[i], dims[i + 1])))
        report = WeakLefschetzReport(field.p, seed, trial, dims, tuple(rows))
        if report.full_rank:
            break
    return report


def cone_certificate_holds(
    cx: SimplicialComplex, cert: LefschetzCertificate, apex: int, field: PrimeField | None = None
) -> bool:
    """Check that (Θ ∪ {x_apex}, ω) still has the required injectivity on cone(Δ)."""
    field = field or PrimeField(cert.p)
    coned = cone(cx, apex)
    theta = list(cert.theta) + [LinearForm.variable(apex)]
    if not kind_kleinschmidt(coned, field, theta):
        return False
    model = GradedQuotientModel(coned, field, theta)
    return all(w.injective for w in lefschetz_ranks(model, cert.omega, cert.s))
