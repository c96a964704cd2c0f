"""The characteristic number ``I(k; b)`` of the circle action generated by ``b``.

Two independent evaluations are provided:

* ``char_number_facets`` sums lattice-normalized facet integrals of the
  zero-mean Hamiltonian ``f = <x, b> - <Cm, b>``;
* ``char_number_derivative`` differentiates ``<Cm(Delta(k)), b>`` along
  ``(1, ..., 1)`` by exact polynomial interpolation of volume and moments,
  using ``sum_j d/dk_j <Cm, b> = -I / B``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import exact_arith as ea
from .errors import ChamberExit, InterpolationInconsistent
from .integrate import center_of_mass, facet_integrals, polytope_moments
from .polytope import PolytopeSpec, is_delzant, same_chamber

log = logging.getLogger(__name__)

#: how many times a step is halved before giving up on staying in the chamber
MAX_HALVINGS = 40


@dataclass(frozen=True)
class CharNumberResult:
    value: Fraction
    cm_pairing: Fraction
    facet_terms: tuple[tuple[int, Fraction], ...]


def _check_b(spec: PolytopeSpec, b: Sequence) -> tuple[int, ...]:
    if len(b) != spec.dim:
        raise ValueError(f"b has length {len(b)}, expected {spec.dim}")
    if any(Fraction(x).denominator != 1 for x in b):
        raise ValueError(f"b must be an integer vector, got {tuple(b)}")
    return tuple(int(x) for x in b)


def _warn_if_not_delzant(spec: PolytopeSpec) -> None:
    if not is_delzant(spec).delzant:
        log.warning("polytope is not Delzant; integrals are defined but have no "
                    "symplectic meaning")


def char_number_facets(spec: PolytopeSpec, b: Sequence[int]) -> CharNumberResult:
    """``I = -n * sum_j N_j`` with ``N_j = (n-1)! * int_{F_j} f dX^j``."""
    b = _check_b(spec, b)
    _warn_if_not_delzant(spec)
    n = spec.dim
    cm_b = ea.dot(center_of_mass(spec), b)
    c = factorial(n - 1)
    terms = []
    for fi in facet_integrals(spec):
        N_j = c * (ea.dot(fi.lattice_moments, b) - cm_b * fi.lattice_volume)
        terms.append((fi.facet_index, N_j))
    value = -n * sum((t for _, t in terms), Fraction(0))
    return CharNumberResult(value, cm_b, tuple(terms))


# -- derivative route -----------------------------------------------------

def _nodes(count: int, h: Fraction) -> list[Fraction]:
    """0, h, -h, 2h, -2h, ... (count of them)."""
    out = [Fraction(0)]
    i = 1
    while len(out) < count:
        out.append(i * h)
        if len(out) < count:
            out.append(-i * h)
        i += 1
    return out


def _chamber_nodes(spec: PolytopeSpec, base: Sequence, direction: Sequence,
                   count: int) -> list[Fraction]:
    """Interpolation nodes t with ``base + t*direction`` in the chamber of
    ``spec``, halving the step until every node qualifies.

    While halving only the two outermost nodes are tested (a chamber meets
    a line in an interval); the accepted node set is then checked in full.
    """
    def inside(t):
        return same_chamber(spec, spec.with_k(ea.add(base, ea.scale(t, direction))))

    size = max((abs(x) for x in base), default=0) or Fraction(1)
    reach = max((abs(x) for x in direction), default=0) or Fraction(1)
    h = Fraction(1)
    while h * count > size / reach:
        h /= 2
    for _ in range(MAX_HALVINGS):
        ts = _nodes(count, h)
        if inside(ts[-1]) and inside(ts[-2]) and all(inside(t) for t in ts[:-2]):
            return ts
        h /= 2
    raise ChamberExit(f"no step keeps k + t*{tuple(direction)} inside the chamber")


def _fit_checked(ts, values, degree, what):
    """Interpolate ``values`` in degree <= ``degree`` from the first degree+1
    nodes and insist that the remaining nodes agree."""
    coeffs = ea.interpolate(ts[:degree + 1], values[:degree + 1])
    for t, v in zip(ts[degree + 1:], values[degree + 1:]):
        if ea.poly_eval(coeffs, t) != v:
            raise InterpolationInconsistent(
                f"{what} is not a polynomial of degree <= {degree} along the line")
    return coeffs


def _jets_at(spec: PolytopeSpec, base: Sequence, direction: Sequence):
    """Value and t-derivative at t = 0 of volume and moments of
    ``Delta(base + t*direction)``.

    Volume has degree <= n in t and moments degree <= n+1; one extra node
    validates each interpolant.
    """
    n = spec.dim
    ts = _chamber_nodes(spec, base, direction, n + 3)
    data = [polytope_moments(spec.with_k(ea.add(base, ea.scale(t, direction)))) for t in ts]
    vol = _fit_checked(ts, [d.volume for d in data], n, "volume")
    mom = [_fit_checked(ts, [d.moments[i] for d in data], n + 1, f"moment {i}")
           for i in range(n)]

    def c(p, i):
        return p[i] if i < len(p) else Fraction(0)

    return (c(vol, 0), c(vol, 1),
            tuple(c(p, 0) for p in mom), tuple(c(p, 1) for p in mom))


def _continued_jets(spec: PolytopeSpec, at: Sequence, direction: Sequence):
    """Jets at a support vector ``at`` that may lie outside the chamber.

    Volume and moments are polynomials on the chamber; they and their
    directional derivatives are continued along the segment from
    ``spec.k`` to ``at`` by exact interpolation in the segment parameter.
    """
    n = spec.dim
    base = spec.k
    seg = ea.sub(at, base)
    hs = _chamber_nodes(spec, base, seg, n + 3)
    jets = [_jets_at(spec, ea.add(base, ea.scale(s, seg)), direction) for s in hs]
    degrees = (n, n - 1, n + 1, n)
    out = []
    for slot, deg in enumerate(degrees):
        if slot in (0, 1):
            poly = _fit_checked(hs, [j[slot] for j in jets], deg, "continued volume jet")
            out.append(ea.poly_eval(poly, 1))
        else:
            vals = []
            for i in range(n):
                poly = _fit_checked(hs, [j[slot][i] for j in jets], deg, "continued moment jet")
                vals.append(ea.poly_eval(poly, 1))
            out.append(tuple(vals))
    return tuple(out)


def _cm_derivative_vector(spec, direction, at=None) -> tuple[Fraction, ...]:
    return _cm_derivative_cached(spec, ea.vec(direction), None if at is None else ea.vec(at))


@lru_cache(maxsize=4096)
def _cm_derivative_cached(spec, direction, at) -> tuple[Fraction, ...]:
    if len(direction) != spec.m:
        raise ValueError(f"direction has length {len(direction)}, expected {spec.m}")
    if not any(direction):
        return (Fraction(0),) * spec.dim
    if at is None:
        v0, v1, m0, m1 = _jets_at(spec, spec.k, direction)
    else:
        v0, v1, m0, m1 = _continued_jets(spec, at, direction)
    return tuple((a1 * v0 - a0 * v1) / (v0 * v0) for a0, a1 in zip(m0, m1))


def cm_pairing_derivative(spec: PolytopeSpec, b: Sequence, direction: Sequence,
                          at: Sequence | None = None) -> Fraction:
    """``d/dt <Cm(Delta(k + t*direction)), b>`` at ``t = 0``, exactly.

    ``k`` is ``spec.k`` unless ``at`` is given, in which case ``spec.k``
    only selects the chamber and the derivative is that of the rational
    continuation at ``at``.
    """
    b = tuple(ea.as_rat(x) for x in b)
    return ea.dot(_cm_derivative_vector(spec, direction, at), b)


def char_number_derivative(spec: PolytopeSpec, b: Sequence[int]) -> Fraction:
    """``I = -B * sum_j d/dk_j <Cm, b>`` with ``B = n! * volume``."""
    b = _check_b(spec, b)
    B = factorial(spec.dim) * polytope_moments(spec).volume
    return -B * cm_pairing_derivative(spec, b, (1,) * spec.m)


def char_number_vector(spec: PolytopeSpec, method: str = "facets") -> tuple[Fraction, ...]:
    """``(I(k; e_1), ..., I(k; e_n))``; ``I`` is linear in ``b``."""
    n = spec.dim
    if method == "facets":
        return tuple(char_number_facets(spec, [int(i == l) for l in range(n)]).value
                     for i in range(n))
    if method == "derivative":
        B = factorial(n) * polytope_moments(spec).volume
        return tuple(-B * x for x in _cm_derivative_vector(spec, (1,) * spec.m))
    raise ValueError(f"unknown method {method!r}")


def dot_cm(spec: PolytopeSpec, at: Sequence | None = None) -> tuple[Fraction, ...]:
    """``d/de Cm(Delta(k + (e, ..., e)))`` at ``e = 0``.

    With ``at`` the derivative is taken at that support vector through the
    polynomial continuation from the chamber of ``spec``.
    """
    return _cm_derivative_vector(spec, (1,) * spec.m, at)


def cm_at(spec: PolytopeSpec, at: Sequence) -> tuple[Fraction, ...]:
    """Center of mass at ``at`` continued from the chamber of ``spec``."""
    at = ea.vec(at)
    if same_chamber(spec, spec.with_k(at)):
        return center_of_mass(spec.with_k(at))
    v0, _, m0, _ = _continued_jets(spec, at, ea.sub(at, spec.k))
    return tuple(x / v0 for x in m0)
