"""Polytopes given by halfspaces ``<x, n_j> <= k_j`` with integer conormals.

Facet indices are 0-based throughout the Python API.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Sequence

from . import exact_arith as ea
from .errors import (
    DimensionMismatch,
    NonPositiveScale,
    NonPrimitiveConormal,
    ParseError,
    SingularMatrix,
    UnboundedOrEmpty,
)


@dataclass(frozen=True)
class PolytopeSpec:
    """The polytope ``{x : <x, n_j> <= k_j for all j}`` in dimension ``dim``."""

    dim: int
    conormals: tuple[tuple[int, ...], ...]
    k: tuple[Fraction, ...]

    def __post_init__(self):
        conormals = tuple(tuple(int(c) for c in n) for n in self.conormals)
        k = tuple(ea.as_rat(x) for x in self.k)
        object.__setattr__(self, "conormals", conormals)
        object.__setattr__(self, "k", k)
        if not isinstance(self.dim, int) or self.dim < 1:
            raise DimensionMismatch(f"dimension must be a positive integer, got {self.dim!r}")
        if len(conormals) != len(k):
            raise DimensionMismatch(
                f"{len(conormals)} conormals but {len(k)} support numbers")
        if len(conormals) <= self.dim:
            raise DimensionMismatch(
                f"need more than {self.dim} facets, got {len(conormals)}")
        for j, n in enumerate(conormals):
            if len(n) != self.dim:
                raise DimensionMismatch(f"conormal {j} has length {len(n)}, expected {self.dim}")
            if not ea.is_primitive(n):
                raise NonPrimitiveConormal(f"conormal {j} = {n} is not primitive")
        if len(set(conormals)) != len(conormals):
            raise ParseError("conormals must be pairwise distinct")
        # specs key many caches; hash once
        object.__setattr__(self, "_hash", hash((self.dim, conormals, k)))

    def __hash__(self) -> int:
        return self._hash

    @property
    def m(self) -> int:
        return len(self.conormals)

    @property
    def r(self) -> int:
        return self.m - self.dim

    def with_k(self, k: Sequence) -> "PolytopeSpec":
        return PolytopeSpec(self.dim, self.conormals, tuple(k))

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "conormals": [list(n) for n in self.conormals],
            "k": [format_rat(x) for x in self.k],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def format_rat(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_spec(text: str) -> PolytopeSpec:
    """Parse the JSON polytope document.

    ``{"dim": 2, "conormals": [[-1,0],[0,-1],[0,1],[1,1]], "k": ["0","0","1","2"]}``
    with ``k`` entries given as integers or ``"p/q"`` strings.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("spec document must be a JSON object")
    missing = {"dim", "conormals", "k"} - doc.keys()
    if missing:
        raise ParseError(f"missing fields: {sorted(missing)}")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise ParseError("'dim' must be an integer")
    conormals = doc["conormals"]
    if not isinstance(conormals, list) or not all(isinstance(n, list) for n in conormals):
        raise ParseError("'conormals' must be a list of integer lists")
    for n in conormals:
        if not all(isinstance(c, int) and not isinstance(c, bool) for c in n):
            raise ParseError(f"conormal entries must be integers: {n}")
    ks = doc["k"]
    if not isinstance(ks, list):
        raise ParseError("'k' must be a list")
    k = []
    for x in ks:
        if isinstance(x, float):
            raise ParseError(f"support number {x!r} is a float; use an integer or 'p/q'")
        k.append(ea.as_rat(x))
    return PolytopeSpec(dim, tuple(tuple(n) for n in conormals), tuple(k))


# -- vertex enumeration ---------------------------------------------------

@lru_cache(maxsize=256)
def _subset_adjugates(conormals: tuple) -> tuple:
    """For every n-subset J of facets with independent conormals, the integer
    pair ``(adj, det)`` with ``N_J^{-1} = adj / det``."""
    d = len(conormals[0])
    out = []
    for J in combinations(range(len(conormals)), d):
        N = [conormals[j] for j in J]
        det = ea.determinant(N)
        if det != 0:
            adj = tuple(tuple(int(det * x) for x in row) for row in ea.inverse(N))
            out.append((J, adj, int(det)))
    return tuple(out)


@lru_cache(maxsize=4096)
def subset_rank(conormals: tuple, J: frozenset) -> int:
    return ea.rank([conormals[j] for j in sorted(J)])


@lru_cache(maxsize=256)
def _is_bounded(conormals: tuple) -> bool:
    """True iff ``{u : <u, n_j> <= 0 for all j} = {0}``.

    The recession cone is pointed when the conormals have full rank; its
    extreme rays are cut out by n-1 independent tight conormals.
    """
    d = len(conormals[0])
    if ea.rank(conormals) < d:
        return False
    for J in combinations(range(len(conormals)), d - 1):
        u = ea.normal_vector([conormals[j] for j in J])
        if not any(u):
            continue
        for s in (1, -1):
            if all(s * ea.dot(u, n) <= 0 for n in conormals):
                return False
    return True


@dataclass(frozen=True)
class IncidenceStructure:
    """Exact vertices and their facet incidences.

    ``active_sets[i]`` is the sorted tuple of facets through vertex ``i``;
    ``facet_vertices[j]`` lists the vertex indices lying on facet ``j``.
    Vertices are sorted lexicographically.
    """

    conormals: tuple[tuple[int, ...], ...]
    vertices: tuple[tuple[Fraction, ...], ...]
    active_sets: tuple[tuple[int, ...], ...]
    facet_vertices: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.conormals[0])

    @property
    def is_simple(self) -> bool:
        return all(len(a) == self.dim for a in self.active_sets)

    def face_dim(self, vertex_ids: Sequence[int]) -> int:
        """Dimension of the smallest face containing the given vertices."""
        common = frozenset(self.active_sets[vertex_ids[0]])
        for i in vertex_ids[1:]:
            common &= frozenset(self.active_sets[i])
        return self.dim - subset_rank(self.conormals, common)

    @property
    def degenerate_facets(self) -> tuple[int, ...]:
        """Facets whose hyperplane meets the polytope in less than a facet."""
        out = []
        for j, ids in enumerate(self.facet_vertices):
            if not ids or self.face_dim(ids) != self.dim - 1:
                out.append(j)
        return tuple(out)

    def combinatorial_type(self) -> frozenset:
        return frozenset(self.active_sets)


@lru_cache(maxsize=4096)
def enumerate_vertices(spec: PolytopeSpec) -> IncidenceStructure:
    """All vertices, by solving every n-subset system and keeping the
    feasible solutions (exact comparisons)."""
    if not _is_bounded(spec.conormals):
        raise UnboundedOrEmpty("conormals do not positively span: region is unbounded")
    found: dict[tuple, tuple[int, ...]] = {}
    k = spec.k
    # clear denominators so the feasibility scan runs on integers
    L = lcm(*(x.denominator for x in k))
    kk = [int(x * L) for x in k]
    pairs = list(zip(spec.conormals, kk))
    for J, adj, det in _subset_adjugates(spec.conormals):
        kJ = [kk[j] for j in J]
        X = [sum(a * c for a, c in zip(row, kJ)) for row in adj]  # x = X / (det*L)
        s = 1 if det > 0 else -1
        slack = [s * (kj * det - sum(a * c for a, c in zip(X, n))) for n, kj in pairs]
        if min(slack) >= 0:
            x = tuple(Fraction(xi, det * L) for xi in X)
            found[x] = tuple(j for j, v in enumerate(slack) if v == 0)
    vertices = tuple(sorted(found))
    if len(vertices) < spec.dim + 1:
        raise UnboundedOrEmpty(
            f"only {len(vertices)} vertices: region is empty or not full-dimensional")
    v0 = vertices[0]
    if ea.rank([ea.sub(v, v0) for v in vertices[1:]]) < spec.dim:
        raise UnboundedOrEmpty("vertices do not span: region is not full-dimensional")
    active = tuple(found[v] for v in vertices)
    facet_vertices = tuple(
        tuple(i for i, a in enumerate(active) if j in a) for j in range(spec.m))
    return IncidenceStructure(spec.conormals, vertices, active, facet_vertices)


# -- Delzant check ---------------------------------------------------------

@dataclass(frozen=True)
class DelzantFailure:
    vertex: tuple[Fraction, ...]
    active_set: tuple[int, ...]
    determinant: Fraction | None  # None when the vertex is not simple


@dataclass(frozen=True)
class DelzantReport:
    delzant: bool
    simple: bool
    failures: tuple[DelzantFailure, ...]


@lru_cache(maxsize=4096)
def is_delzant(spec: PolytopeSpec) -> DelzantReport:
    """Every vertex must lie on exactly n facets whose conormals form a
    lattice basis (determinant +-1)."""
    inc = enumerate_vertices(spec)
    failures = []
    for v, J in zip(inc.vertices, inc.active_sets):
        if len(J) != spec.dim:
            failures.append(DelzantFailure(v, J, None))
            continue
        det = ea.determinant([spec.conormals[j] for j in J])
        if abs(det) != 1:
            failures.append(DelzantFailure(v, J, det))
    return DelzantReport(not failures, inc.is_simple, tuple(failures))


# -- chambers and k-space symmetries --------------------------------------

def same_chamber(a: PolytopeSpec, b: PolytopeSpec) -> bool:
    """Same conormals and the same vertex-facet incidence pattern.

    A ``b`` that is empty or lower-dimensional is simply not in the chamber.
    """
    if a.conormals != b.conormals:
        return False
    try:
        ta = enumerate_vertices(a).combinatorial_type()
        tb = enumerate_vertices(b).combinatorial_type()
    except UnboundedOrEmpty:
        return False
    return ta == tb


def translate_k(spec: PolytopeSpec, a: Sequence) -> PolytopeSpec:
    """Support numbers of the translate ``Delta(k) + a``."""
    if len(a) != spec.dim:
        raise DimensionMismatch(f"translation has length {len(a)}, expected {spec.dim}")
    a = ea.vec(a)
    return spec.with_k(kj + ea.dot(a, n) for kj, n in zip(spec.k, spec.conormals))


def scale_k(spec: PolytopeSpec, s) -> PolytopeSpec:
    s = ea.as_rat(s)
    if s <= 0:
        raise NonPositiveScale(f"scale must be positive, got {s}")
    return spec.with_k(s * kj for kj in spec.k)


@dataclass(frozen=True)
class NormalForm:
    """``spec0 = translate_k(spec, v)`` has zero support numbers on ``pinned``.

    ``free`` lists the remaining facet indices in increasing order with their
    normalized support numbers; for r = 2 the first is conventionally called
    lambda and the second tau.
    """

    v: tuple[Fraction, ...]
    spec0: PolytopeSpec
    pinned: tuple[int, ...]
    free: tuple[tuple[int, Fraction], ...]


def normal_form(spec: PolytopeSpec) -> NormalForm:
    n = spec.dim
    first = tuple(range(n))
    inc = enumerate_vertices(spec)
    if any(set(first) <= set(J) for J in inc.active_sets):
        pinned = first
    else:
        # lexicographically smallest vertex; vertices are sorted
        pinned = tuple(inc.active_sets[0][:n])
    N = [spec.conormals[j] for j in pinned]
    if ea.determinant(N) == 0:
        raise SingularMatrix(f"conormals of facets {pinned} are dependent")
    v = ea.solve_linear(N, [-spec.k[j] for j in pinned])
    spec0 = translate_k(spec, v)
    free = tuple((j, spec0.k[j]) for j in range(spec.m) if j not in pinned)
    return NormalForm(v, spec0, pinned, free)
