"""Three two-parameter families of Delzant polytopes with closed forms.

Each constructor returns the polytope in normalized position
``Delta_0(lambda, tau)`` (the support numbers of the first block of facets
are zero) together with its closed-form center of mass and the closed-form
mass-linearity predicate.  ``lambda_tau(k)`` maps a general support vector
in the chamber back to the family parameters, and ``cm_at(k)`` evaluates
the closed form there (the polytope is a translate of ``Delta_0``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Sequence

from . import exact_arith as ea
from .errors import InadmissibleParams, NotDelzant
from .polytope import PolytopeSpec, is_delzant

Vec = tuple


@dataclass(frozen=True)
class FamilyModel:
    name: str
    spec: PolytopeSpec
    params: dict = field(compare=False)
    cm_closed: Callable[[Fraction, Fraction], Vec] = field(compare=False, repr=False)
    mass_linear_predicate: Callable[[Sequence[int]], bool] = field(compare=False, repr=False)
    lambda_tau: Callable[[Sequence], tuple] = field(compare=False, repr=False)
    offset: Callable[[Sequence], Vec] = field(compare=False, repr=False)
    predicate_sides: Callable[[Sequence[int]], tuple] = field(compare=False, repr=False)
    predicate_labels: tuple[str, str] = ("", "")

    @property
    def predicate_text(self) -> str:
        return f"{self.predicate_labels[0]} = {self.predicate_labels[1]}"

    def cm_at(self, k: Sequence) -> Vec:
        """Closed-form center of mass of ``Delta(k)`` for ``k`` in the chamber."""
        lam, tau = self.lambda_tau(k)
        return ea.add(self.cm_closed(lam, tau), self.offset(k))


def _pos(**values):
    out = {}
    for name, v in values.items():
        v = ea.as_rat(v)
        if v <= 0:
            raise InadmissibleParams(f"{name} must be positive, got {v}")
        out[name] = v
    return out


def _e(i: int, d: int, s: int = 1) -> tuple[int, ...]:
    return tuple(s if l == i else 0 for l in range(d))


# -- Hirzebruch trapezium ---------------------------------------------------

def hirzebruch_cm(r: int, lam, tau) -> Vec:
    den = 3 * (2 * tau - r * lam)
    return ((3 * tau ** 2 - 3 * r * tau * lam + r ** 2 * lam ** 2) / den,
            (3 * lam * tau - 2 * r * lam ** 2) / den)


def hirzebruch(r: int, tau, lam) -> FamilyModel:
    """Trapezium with vertices (0,0), (0,lam), (tau,0), (tau - r*lam, lam)."""
    if not isinstance(r, int) or r < 1:
        raise InadmissibleParams(f"r must be a positive integer, got {r!r}")
    p = _pos(tau=tau, lam=lam)
    tau, lam = p["tau"], p["lam"]
    sigma = tau - r * lam
    if sigma <= 0:
        raise InadmissibleParams(f"sigma = tau - r*lambda must be positive, got {sigma}")
    spec = PolytopeSpec(2, ((-1, 0), (0, -1), (0, 1), (1, r)), (0, 0, lam, tau))

    def lambda_tau(k):
        return k[2] + k[1], k[3] + r * k[1] + k[0]

    return FamilyModel(
        name="hirzebruch",
        spec=spec,
        params={"r": r, "tau": tau, "lambda": lam, "sigma": sigma},
        cm_closed=lambda l, t: hirzebruch_cm(r, Fraction(l), Fraction(t)),
        mass_linear_predicate=lambda b: r * b[0] == 2 * b[1],
        predicate_sides=lambda b: (r * b[0], 2 * b[1]),
        lambda_tau=lambda_tau,
        offset=lambda k: (-Fraction(k[0]), -Fraction(k[1])),
        predicate_labels=("r·b_1", "2·b_2"),
    )


# -- Delta_p bundle over Delta_1 ----------------------------------------------

def bundle_cm(a: Sequence[int], lam, tau) -> Vec:
    """Closed form in ambient coordinates; the last one is the fibre height."""
    p = len(a)
    A = sum(a)
    aa = sum(x * x for x in a)
    den = lam * (p + 1) + tau * A
    xs = tuple(tau * (lam * (p + 2) + tau * (A + ak)) / ((p + 2) * den) for ak in a)
    top = ((p + 1) * (p + 2) * lam ** 2 + 2 * (p + 2) * A * lam * tau
           + (aa + A * A) * tau ** 2) / (2 * (p + 2) * den)
    return xs + (top,)


def bundle_volume(a: Sequence[int], lam, tau) -> Fraction:
    """Euclidean volume: ``lam*tau^p/p! + A*tau^(p+1)/(p+1)!``."""
    p = len(a)
    return Fraction(lam * tau ** p, factorial(p)) + Fraction(sum(a) * tau ** (p + 1), factorial(p + 1))


def bundle_condition(a: Sequence[int], b: Sequence[int]) -> int:
    """``(p+1)(2 a.bhat + b_top a.a) - A(2B + b_top A)``; zero iff mass linear.

    ``bhat`` is the base part of ``b`` and ``b_top`` its fibre entry.  This
    is 4(p+2) times the fibre-direction derivative of ``<Cm, b>`` at k = 0.
    """
    p = len(a)
    bhat, bt = b[:p], b[p]
    A = sum(a)
    aa = sum(x * x for x in a)
    ab = sum(x * y for x, y in zip(a, bhat))
    B = sum(bhat)
    return (p + 1) * (2 * ab + bt * aa) - A * (2 * B + bt * A)


def gammas_from_b(b: Sequence[int]) -> tuple[Fraction, Fraction, Fraction]:
    """For ``p = 2`` and ``b = (b1, b2, 0)``: the ``gamma`` with
    ``b = g1 n1 + g2 n2 + g3 n3`` and ``g1 + g2 + g3 = 0``."""
    g3 = Fraction(b[0] + b[1], 3)
    return g3 - b[0], g3 - b[1], g3


def delta_p_bundle(p: int, a: Sequence[int], tau, lam) -> FamilyModel:
    """``Delta_p`` bundle over ``Delta_1`` twisted by ``a`` (dimension p+1).

    Facets: ``-e_i`` (i <= p), ``sum e_i``, ``-e_{p+1}``,
    ``e_{p+1} - sum a_i e_i`` with support numbers ``0,..,0, tau, 0, lam``.
    """
    if not isinstance(p, int) or p < 2:
        raise InadmissibleParams(f"p must be an integer > 1, got {p!r}")
    a = tuple(int(x) for x in a)
    if len(a) != p:
        raise InadmissibleParams(f"a must have length p = {p}")
    q = _pos(tau=tau, lam=lam)
    tau, lam = q["tau"], q["lam"]
    for i, ai in enumerate(a):
        # the fibre over the base vertex tau*e_i has height lam + a_i*tau
        if lam + ai * tau <= 0:
            raise InadmissibleParams(f"lambda + a_{i + 1}*tau must be positive")
    d = p + 1
    conormals = [_e(i, d, -1) for i in range(p)]
    conormals.append(tuple([1] * p + [0]))
    conormals.append(_e(p, d, -1))
    conormals.append(tuple([-x for x in a] + [1]))
    k = [0] * p + [tau, 0, lam]
    spec = PolytopeSpec(d, tuple(conormals), tuple(k))
    if not is_delzant(spec).delzant:
        raise NotDelzant(f"bundle with a = {a} is not Delzant")

    def lambda_tau(k):
        return (k[p + 1] - sum(ai * kj for ai, kj in zip(a, k[:p])) + k[p + 2],
                sum(k[:p]) + k[p])

    return FamilyModel(
        name="bundle",
        spec=spec,
        params={"p": p, "a": a, "A": sum(a), "a.a": sum(x * x for x in a),
                "tau": tau, "lambda": lam},
        cm_closed=lambda l, t: bundle_cm(a, Fraction(l), Fraction(t)),
        mass_linear_predicate=lambda b: bundle_condition(a, b) == 0,
        predicate_sides=lambda b: (bundle_condition(a, b), 0),
        lambda_tau=lambda_tau,
        offset=lambda k: tuple(-Fraction(x) for x in tuple(k[:p]) + (k[p + 1],)),
        predicate_labels=("(p+1)(2a·b' + b_top·a·a) - A(2B + b_top·A)", "0"),
    )


# -- one-point blow-up of CP^n -----------------------------------------------

def blowup_cm(n: int, lam, tau) -> Vec:
    sigma = tau - lam
    den = tau ** n - sigma ** n
    c = (tau ** (n + 1) - sigma ** (n + 1)) / (n + 1)
    return tuple((c - (lam * sigma ** n if i == n - 1 else 0)) / den for i in range(n))


def blowup_cpn(n: int, tau, lam) -> FamilyModel:
    """Simplex ``{x >= 0, sum x_i <= tau}`` cut by ``x_n <= lam``."""
    if not isinstance(n, int) or n < 2:
        raise InadmissibleParams(f"n must be an integer >= 2, got {n!r}")
    q = _pos(tau=tau, lam=lam)
    tau, lam = q["tau"], q["lam"]
    if tau - lam <= 0:
        raise InadmissibleParams("sigma = tau - lambda must be positive")
    conormals = [_e(i, n, -1) for i in range(n)] + [(1,) * n, _e(n - 1, n)]
    spec = PolytopeSpec(n, tuple(conormals), tuple([0] * n + [tau, lam]))

    def lambda_tau(k):
        return k[n - 1] + k[n + 1], sum(k[:n + 1])

    return FamilyModel(
        name="blowup",
        spec=spec,
        params={"n": n, "tau": tau, "lambda": lam, "sigma": tau - lam},
        cm_closed=lambda l, t: blowup_cm(n, Fraction(l), Fraction(t)),
        mass_linear_predicate=lambda b: n * b[n - 1] == sum(b[:n - 1]),
        predicate_sides=lambda b: (sum(b[:n - 1]), n * b[n - 1]),
        lambda_tau=lambda_tau,
        offset=lambda k: tuple(-Fraction(x) for x in k[:n]),
        predicate_labels=("Σ_{j<n} b_j", "n·b_n"),
    )
