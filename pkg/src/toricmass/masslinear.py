"""Mass linearity of a pair (Delta, b) and its consistency checks.

``<Cm(Delta(k)), b>`` is fitted exactly to ``sum_j R_j k_j + C`` from m+1
chamber samples and then checked at extra pseudo-random chamber points.
A nonlinear pair leaves a nonzero residual at generic points, so an exact
zero at every check point is strong evidence of linearity; the seed that
drew the points is kept in the report.
"""
from __future__ import annotations

import logging
import random
import secrets
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Sequence

from . import exact_arith as ea
from .errors import ChamberExit, ChamberSamplingFailed
from .integrate import center_of_mass, polytope_moments
from .invariant import MAX_HALVINGS, char_number_derivative, char_number_facets
from .polytope import PolytopeSpec, same_chamber

log = logging.getLogger(__name__)

DENOMINATOR = 64


def fresh_seed() -> int:
    return secrets.randbits(32)


def sample_chamber_points(spec: PolytopeSpec, count: int, seed: int,
                          radius=None) -> list[tuple[Fraction, ...]]:
    """Random support vectors near ``spec.k`` in its chamber.

    Each coordinate is perturbed by ``radius * u`` with ``u`` a random
    fraction with denominator 64 in [-1, 1]; the radius is halved whenever a
    draw leaves the chamber.  Deterministic for a given seed.
    """
    rng = random.Random(seed)
    if radius is None:
        radius = max((abs(x) for x in spec.k), default=Fraction(1)) or Fraction(1)
        radius = Fraction(radius) / 2
    radius = Fraction(radius)
    out = []
    while len(out) < count:
        for _ in range(MAX_HALVINGS):
            k = tuple(kj + radius * Fraction(rng.randint(-DENOMINATOR, DENOMINATOR), DENOMINATOR)
                      for kj in spec.k)
            if same_chamber(spec, spec.with_k(k)):
                out.append(k)
                break
            radius /= 2
        else:
            raise ChamberSamplingFailed("could not draw a point inside the chamber")
    return out


@dataclass(frozen=True)
class VerifyPoint:
    k: tuple[Fraction, ...]
    residual: Fraction


@dataclass(frozen=True)
class MassLinearReport:
    is_linear: bool
    R: tuple[Fraction, ...]
    C: Fraction
    sumR: Fraction
    fit_points: tuple[tuple[Fraction, ...], ...]
    verify_points: tuple[VerifyPoint, ...]
    seed: int


def _common_denominator(rows) -> tuple[tuple[tuple[int, ...], ...], int]:
    D = lcm(*(x.denominator for row in rows for x in row))
    return tuple(tuple(x.numerator * (D // x.denominator) for x in row) for row in rows), D


@dataclass(frozen=True)
class _VectorFit:
    """The fit for every coordinate of Cm at once; ``<., b>`` gives the
    fit for ``b``.  Integer copies over a common denominator make the
    projection onto many ``b`` cheap."""

    R: tuple[tuple[Fraction, ...], ...]  # R[j] is a vector in R^n
    C: tuple[Fraction, ...]
    fit_points: tuple[tuple[Fraction, ...], ...]
    verify: tuple[tuple[tuple[Fraction, ...], tuple[Fraction, ...]], ...]

    def __post_init__(self):
        object.__setattr__(self, "_R_int", _common_denominator(self.R + (self.C,)))
        object.__setattr__(self, "_res_int", _common_denominator([r for _, r in self.verify]))

    def project(self, b):
        """``(R, C, sum R, residuals)`` for ``b``."""
        rows, D = self._R_int
        nums = [sum(x * y for x, y in zip(row, b)) for row in rows]
        res_rows, E = self._res_int
        residuals = [Fraction(sum(x * y for x, y in zip(row, b)), E) for row in res_rows]
        return ([Fraction(x, D) for x in nums[:-1]], Fraction(nums[-1], D),
                Fraction(sum(nums[:-1]), D), residuals)


@lru_cache(maxsize=1024)
def _vector_fit(spec: PolytopeSpec, extra_checks: int, seed: int) -> _VectorFit:
    base = spec.k
    cm0 = center_of_mass(spec)
    fit_points = [base]
    R = []
    for j in range(spec.m):
        delta = Fraction(1)
        for _ in range(MAX_HALVINGS):
            kj = tuple(x + delta if i == j else x for i, x in enumerate(base))
            if same_chamber(spec, spec.with_k(kj)):
                break
            delta /= 2
        else:
            raise ChamberSamplingFailed(f"no perturbation of k_{j} stays in the chamber")
        fit_points.append(kj)
        R.append(ea.scale(1 / delta, ea.sub(center_of_mass(spec.with_k(kj)), cm0)))
    C = tuple(c - sum(Rj[i] * kj for Rj, kj in zip(R, base)) for i, c in enumerate(cm0))
    verify = []
    for k in sample_chamber_points(spec, extra_checks, seed):
        cm = center_of_mass(spec.with_k(k))
        pred = tuple(C[i] + sum(Rj[i] * x for Rj, x in zip(R, k)) for i in range(spec.dim))
        verify.append((k, ea.sub(cm, pred)))
    return _VectorFit(tuple(R), C, tuple(fit_points), tuple(verify))


def fit_mass_linear(spec: PolytopeSpec, b: Sequence[int], extra_checks: int = 8,
                    seed: int | None = None) -> MassLinearReport:
    if extra_checks < 4:
        raise ValueError("extra_checks must be at least 4")
    if seed is None:
        seed = fresh_seed()
    log.info("mass linearity check with seed %d", seed)
    fit = _vector_fit(spec, extra_checks, seed)
    b = tuple(int(x) for x in b)
    R, C, sumR, residuals = fit.project(b)
    verify = tuple(VerifyPoint(k, res) for (k, _), res in zip(fit.verify, residuals))
    is_linear = not any(residuals)
    return MassLinearReport(is_linear, tuple(R), C, sumR, fit.fit_points, verify, seed)


@dataclass(frozen=True)
class DisplacementVector:
    d: tuple[Fraction, ...]


def d_vector(spec: PolytopeSpec) -> DisplacementVector:
    """``Cm(Delta(k + (1,...,1))) - Cm(Delta(k))``."""
    shifted = spec.with_k(x + 1 for x in spec.k)
    if not same_chamber(spec, shifted):
        raise ChamberExit("k + (1, ..., 1) is outside the chamber")
    return DisplacementVector(ea.sub(center_of_mass(shifted), center_of_mass(spec)))


def _scaled_for_shift(spec: PolytopeSpec) -> PolytopeSpec:
    """``s*k`` with ``s`` a power of two such that ``s*k + 1`` stays in the
    chamber (``Delta(s k + 1) = s Delta(k + 1/s)``)."""
    s = 1
    for _ in range(MAX_HALVINGS):
        scaled = spec.with_k(s * x for x in spec.k)
        if same_chamber(spec, scaled.with_k(x + 1 for x in scaled.k)):
            return scaled
        s *= 2
    raise ChamberExit("no scaling of k admits the unit shift")


@dataclass(frozen=True)
class SampleInvariant:
    k: tuple[Fraction, ...]
    I_facets: Fraction
    I_derivative: Fraction
    B: Fraction


@dataclass
class PairVerification:
    """Everything ``verify_pair`` computed, with the outcome of each check.

    Check values are ``True``/``False``, or ``None`` when a check does not
    apply (the relations tied to R_j only apply to mass linear pairs).
    """

    spec: PolytopeSpec
    b: tuple[int, ...]
    r: int
    theorem_applies: bool
    base: SampleInvariant
    samples: list[SampleInvariant]
    report: MassLinearReport
    d: tuple[Fraction, ...] | None
    d_base: tuple[Fraction, ...] | None
    checks: dict
    info: dict
    seed: int

    @property
    def all_points(self) -> list[SampleInvariant]:
        return [self.base] + list(self.samples)

    @property
    def I_vanishes(self) -> bool:
        return all(s.I_facets == 0 for s in self.all_points)

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.checks.values())


def verify_pair(spec: PolytopeSpec, b: Sequence[int], samples: int = 8,
                seed: int | None = None, extra_checks: int = 8) -> PairVerification:
    """Cross-check the invariant against mass linearity for one pair.

    Checks: the facet and derivative values of I agree at the base point
    and every sample; for mass linear pairs ``I = -B * sum R_j`` at every
    sample and ``sum R_j <d, n_j> = <d, b> = sum R_j``; and
    ``I == 0 everywhere`` iff ``linear and sum R_j == 0``.  The last
    equivalence is a theorem only for r <= 2 and is labelled accordingly.
    """
    if seed is None:
        seed = fresh_seed()
    log.info("pair verification with seed %d", seed)
    b = tuple(int(x) for x in b)
    n = spec.dim
    rng = random.Random(seed)
    fit_seed, sample_seed = rng.randrange(2 ** 32), rng.randrange(2 ** 32)
    report = fit_mass_linear(spec, b, extra_checks=extra_checks, seed=fit_seed)

    points = [spec.k] + sample_chamber_points(spec, samples, sample_seed)
    rows = []
    for k in points:
        sk = spec.with_k(k)
        rows.append(SampleInvariant(
            k,
            char_number_facets(sk, b).value,
            char_number_derivative(sk, b),
            factorial(n) * polytope_moments(sk).volume,
        ))
    checks = {"methods_agree": all(s.I_facets == s.I_derivative for s in rows)}

    d = d_base = None
    if report.is_linear:
        checks["I_equals_minus_B_sumR"] = all(s.I_facets == -s.B * report.sumR for s in rows)
        checks["C_is_zero"] = report.C == 0
        scaled = _scaled_for_shift(spec)
        d_base = scaled.k
        d = d_vector(scaled).d
        chain = sum((Rj * ea.dot(d, nj) for Rj, nj in zip(report.R, spec.conormals)), Fraction(0))
        checks["sumR_chain"] = chain == ea.dot(d, b) == report.sumR
    else:
        checks["I_equals_minus_B_sumR"] = None
        checks["C_is_zero"] = None
        checks["sumR_chain"] = None
    vanishes = all(s.I_facets == 0 for s in rows)
    equivalence = vanishes == (report.is_linear and report.sumR == 0)
    info = {}
    if spec.r <= 2:
        checks["vanishing_iff_linear_sumR0"] = equivalence
    else:
        # only the direction "linear with sum R_j = 0 implies I = 0" is proven
        info["vanishing_iff_linear_sumR0 (unproven for r > 2)"] = equivalence

    return PairVerification(spec, b, spec.r, spec.r <= 2, rows[0], rows[1:], report, d,
                            d_base, checks, info, seed)
