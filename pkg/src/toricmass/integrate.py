"""Exact volumes and first moments by pulling triangulations.

Facet integrals use the lattice-normalized measure: the facet is carried by
a unimodular map onto a coordinate hyperplane and measured there, which is
the Euclidean area divided by the length of the (primitive) conormal.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Sequence

from . import exact_arith as ea
from .errors import DegenerateFacet, DegenerateInput, NonPositiveParameter, ZeroVolume
from .polytope import IncidenceStructure, PolytopeSpec, enumerate_vertices


@dataclass(frozen=True)
class Simplex:
    vertices: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(ea.vec(v) for v in self.vertices))
        d = len(self.vertices[0])
        if len(self.vertices) != d + 1 or any(len(v) != d for v in self.vertices):
            raise DegenerateInput("a d-simplex needs d+1 vertices in dimension d")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1


@dataclass(frozen=True)
class MomentData:
    """``volume`` and ``moments[i] = integral of x_i`` over a region."""

    volume: Fraction
    moments: tuple[Fraction, ...]

    def __add__(self, other: "MomentData") -> "MomentData":
        return MomentData(self.volume + other.volume, ea.add(self.moments, other.moments))

    @property
    def centroid(self) -> tuple[Fraction, ...]:
        if self.volume == 0:
            raise ZeroVolume("centroid of a region with zero volume")
        return tuple(x / self.volume for x in self.moments)


@dataclass(frozen=True)
class FacetIntegral:
    """Integrals over facet ``j`` against the lattice measure.

    ``lattice_moments`` are in ambient coordinates.
    """

    facet_index: int
    lattice_volume: Fraction
    lattice_moments: tuple[Fraction, ...]


def standard_simplex(n: int, tau) -> Simplex:
    return weighted_simplex((1,) * n, tau)


def weighted_simplex(c: Sequence, tau) -> Simplex:
    """``{x >= 0 : sum c_i x_i <= tau}``."""
    tau = ea.as_rat(tau)
    c = ea.vec(c)
    if tau <= 0 or any(ci <= 0 for ci in c):
        raise NonPositiveParameter("tau and every weight must be positive")
    n = len(c)
    verts = [(Fraction(0),) * n]
    for i in range(n):
        verts.append(tuple(tau / c[i] if l == i else Fraction(0) for l in range(n)))
    return Simplex(tuple(verts))


def simplex_moments(s: Simplex) -> MomentData:
    """Volume ``|det(w_i - w_0)| / d!``; first moments are volume times the
    vertex average.  Degenerate simplices give zeros."""
    w0, rest = s.vertices[0], s.vertices[1:]
    d = s.dim
    if d == 0:
        return MomentData(Fraction(1), w0)
    vol = abs(ea.determinant([ea.sub(w, w0) for w in rest])) / factorial(d)
    total = [sum(coord) for coord in zip(*s.vertices)]
    return MomentData(vol, tuple(vol * t / (d + 1) for t in total))


def _triangulate_face(inc: IncidenceStructure, ids: tuple[int, ...], dim: int) -> list[tuple[int, ...]]:
    """Pulling triangulation of a face given by its vertex ids: cone from the
    lexicographically smallest vertex over the facets of the face that miss
    it, recursively."""
    if dim == 0:
        return [ids[:1]]
    apex = ids[0]  # ids are increasing and vertices are lex sorted
    idset = set(ids)
    subfaces = []
    seen = set()
    for fv in inc.facet_vertices:
        sub = tuple(i for i in fv if i in idset)
        if not sub or apex in sub or len(sub) == len(ids) or sub in seen:
            continue
        seen.add(sub)
        if len(sub) >= dim and inc.face_dim(sub) == dim - 1:
            subfaces.append(sub)
    out = []
    for sub in subfaces:
        for simplex in _triangulate_face(inc, sub, dim - 1):
            out.append((apex,) + simplex)
    return out


def triangulate(inc: IncidenceStructure) -> list[Simplex]:
    """Simplices with disjoint interiors covering the polytope.

    Every vertex of every simplex is a vertex of the polytope.
    """
    n = inc.dim
    ids = tuple(range(len(inc.vertices)))
    if len(ids) < n + 1 or inc.face_dim(ids) != n:
        raise DegenerateInput("polytope is not full-dimensional")
    return [Simplex(tuple(inc.vertices[i] for i in s))
            for s in _triangulate_face(inc, ids, n)]


def _scaled_points(points) -> tuple[list[list[int]], int]:
    """Integer points ``D * p`` for the least common denominator ``D``."""
    D = lcm(*(x.denominator for p in points for x in p))
    return [[x.numerator * (D // x.denominator) for x in p] for p in points], D


def _moments_of_pieces(P: list[list[int]], D: int, pieces, d: int) -> MomentData:
    """Sum of simplex moments over ``pieces`` (tuples of indices into the
    integer points ``P = D * x``), accumulated on integers."""
    vol = 0
    mom = [0] * d
    for s in pieces:
        w0 = P[s[0]]
        det = abs(ea.int_determinant([[a - b for a, b in zip(P[i], w0)] for i in s[1:]]))
        vol += det
        for i in range(d):
            mom[i] += det * sum(P[v][i] for v in s)
    return MomentData(Fraction(vol, factorial(d) * D ** d),
                      tuple(Fraction(x, factorial(d + 1) * D ** (d + 1)) for x in mom))


@lru_cache(maxsize=4096)
def polytope_moments(spec: PolytopeSpec) -> MomentData:
    inc = enumerate_vertices(spec)
    n = spec.dim
    ids = tuple(range(len(inc.vertices)))
    if len(ids) < n + 1 or inc.face_dim(ids) != n:
        raise DegenerateInput("polytope is not full-dimensional")
    P, D = _scaled_points(inc.vertices)
    return _moments_of_pieces(P, D, _triangulate_face(inc, ids, n), n)


def center_of_mass(spec: PolytopeSpec) -> tuple[Fraction, ...]:
    md = polytope_moments(spec)
    if md.volume == 0:
        raise ZeroVolume("polytope has zero volume")
    return md.centroid


@lru_cache(maxsize=64)
def _flatten_maps(conormals: tuple) -> tuple:
    maps = []
    for n in conormals:
        U = ea.unimodular_flatten(n)
        maps.append((U, ea.inverse(U)))
    return tuple(maps)


def facet_lattice_moments(spec: PolytopeSpec, inc: IncidenceStructure, j: int) -> FacetIntegral:
    """Lattice volume and ambient first moments of facet ``j``."""
    n = spec.dim
    ids = inc.facet_vertices[j]
    if len(ids) < n or inc.face_dim(ids) != n - 1:
        raise DegenerateFacet(f"facet {j} does not meet the polytope in a facet")
    U, Uinv = _flatten_maps(spec.conormals)[j]
    kj = spec.k[j]
    P, D = _scaled_points(inc.vertices)
    Y = {}
    for i in ids:
        y = [sum(a * c for a, c in zip(row, P[i])) for row in U]
        assert Fraction(y[-1], D) == kj
        Y[i] = y[:-1]
    if n == 1:
        total = MomentData(Fraction(1), ())
    else:
        total = _moments_of_pieces(Y, D, _triangulate_face(inc, ids, n - 1), n - 1)
    y_moments = total.moments + (kj * total.volume,)
    return FacetIntegral(j, total.volume, ea.matvec(Uinv, y_moments))


@lru_cache(maxsize=4096)
def facet_integrals(spec: PolytopeSpec) -> tuple[FacetIntegral, ...]:
    """``facet_lattice_moments`` for every facet of the polytope."""
    inc = enumerate_vertices(spec)
    return tuple(facet_lattice_moments(spec, inc, j) for j in range(spec.m))
