"""Command-line front end.

Exit codes: 0 success, 1 parse or I/O errors, 2 validation failures
(non-Delzant input where it is required, chamber exits, failed cross-checks).
Rationals are printed exactly; ``--approx`` appends 15-digit decimals.
Facets are labelled F1..Fm.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import exact_arith as ea
from .errors import ChamberExit, ParseError, ToricError
from .families import FamilyModel, blowup_cpn, delta_p_bundle, hirzebruch
from .integrate import center_of_mass, polytope_moments
from .invariant import char_number_derivative, char_number_facets
from .masslinear import d_vector, fit_mass_linear, fresh_seed, verify_pair
from .polytope import PolytopeSpec, enumerate_vertices, format_rat, is_delzant, normal_form, parse_spec

log = logging.getLogger("toricmass")

VERBS = ("vertices", "check", "volume", "cm", "char", "masslinear", "dvector", "family", "verify")
FAMILIES = ("hirzebruch", "bundle", "blowup")


class UsageError(Exception):
    pass


class ValidationFailed(Exception):
    """A check did not pass; ``data`` and ``lines`` hold the partial report."""

    def __init__(self, message: str, data: dict | None = None, lines: list[str] | None = None):
        super().__init__(message)
        self.data = data
        self.lines = lines


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rat(text: str) -> Fraction:
    try:
        return ea.as_rat(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toricmass", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=VERBS)
    p.add_argument("target", nargs="?",
                   help="spec JSON path (family name for the 'family' verb)")
    p.add_argument("--family", choices=FAMILIES, help="use a built-in family instead of a spec file")
    p.add_argument("--r", type=int, help="Hirzebruch twist r")
    p.add_argument("--p", type=int, help="bundle fibre dimension p")
    p.add_argument("--a", type=_ints, help="bundle twists a_1,...,a_p")
    p.add_argument("--n", type=int, help="blow-up dimension n")
    p.add_argument("--tau", type=_rat)
    p.add_argument("--lambda", dest="lam", type=_rat)
    p.add_argument("--b", type=_ints, help="integer direction, e.g. --b 1,0 (use --b=-1,0 for a leading minus)")
    p.add_argument("--method", choices=("facets", "derivative", "both"), default="both")
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--seed", type=int)
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--approx", action="store_true", help="append 15-digit decimal renderings")
    p.add_argument("--emit", help="write the family's spec document to this path")
    return p


# -- rendering --------------------------------------------------------------

def _approx(x: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 15
        return str(Decimal(x.numerator) / Decimal(x.denominator))


class Renderer:
    def __init__(self, approx: bool):
        self.approx = approx

    def rat(self, x) -> str:
        s = format_rat(x)
        if self.approx and Fraction(x).denominator != 1:
            s += f" ≈ {_approx(Fraction(x))}"
        return s

    def vec(self, v) -> str:
        s = "(" + ", ".join(format_rat(x) for x in v) + ")"
        if self.approx and any(Fraction(x).denominator != 1 for x in v):
            s += " ≈ (" + ", ".join(_approx(Fraction(x)) for x in v) + ")"
        return s


def _jvec(v) -> list[str]:
    return [format_rat(x) for x in v]


def _facets(ids) -> str:
    return " ".join(f"F{j + 1}" for j in ids)


# -- input ------------------------------------------------------------------

def _need(args, *names):
    missing = [f"--{'lambda' if n == 'lam' else n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing {', '.join(missing)}")


def _family(name: str, args) -> FamilyModel:
    if name == "hirzebruch":
        _need(args, "r", "tau", "lam")
        return hirzebruch(args.r, args.tau, args.lam)
    if name == "bundle":
        _need(args, "a", "tau", "lam")
        p = args.p if args.p is not None else len(args.a)
        return delta_p_bundle(p, args.a, args.tau, args.lam)
    _need(args, "n", "tau", "lam")
    return blowup_cpn(args.n, args.tau, args.lam)


def _load(args) -> tuple[PolytopeSpec, FamilyModel | None]:
    if args.family:
        fam = _family(args.family, args)
        return fam.spec, fam
    if not args.target:
        raise UsageError("give a spec path or --family")
    try:
        with open(args.target, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.target}: {exc.strerror}") from None
    try:
        return parse_spec(text), None
    except ToricError as exc:
        raise UsageError(f"{args.target}: {exc}") from None


def _check_b(spec: PolytopeSpec, args) -> tuple[int, ...]:
    if args.b is None:
        raise UsageError(f"{args.verb} needs --b")
    if len(args.b) != spec.dim:
        raise UsageError(f"--b has {len(args.b)} entries, expected {spec.dim}")
    return args.b


def _require_delzant(spec: PolytopeSpec) -> None:
    rep = is_delzant(spec)
    if not rep.delzant:
        f = rep.failures[0]
        what = "not simple" if f.determinant is None else f"det = {format_rat(f.determinant)}"
        raise ValidationFailed(
            f"not Delzant at vertex {Renderer(False).vec(f.vertex)} on {_facets(f.active_set)}: {what}")


# -- verbs ------------------------------------------------------------------

def _vertices(spec, args, R):
    inc = enumerate_vertices(spec)
    data = {"vertices": [{"x": _jvec(v), "facets": [j + 1 for j in J]}
                         for v, J in zip(inc.vertices, inc.active_sets)]}
    lines = [f"{len(inc.vertices)} vertices"]
    lines += [f"  {R.vec(v)}  {_facets(J)}" for v, J in zip(inc.vertices, inc.active_sets)]
    return data, lines


def _check(spec, args, R):
    inc = enumerate_vertices(spec)
    rep = is_delzant(spec)
    nf = normal_form(spec)
    failures = [{"vertex": _jvec(f.vertex), "facets": [j + 1 for j in f.active_set],
                 "det": None if f.determinant is None else format_rat(f.determinant)}
                for f in rep.failures]
    data = {"n": spec.dim, "m": spec.m, "r": spec.r, "vertex_count": len(inc.vertices),
            "simple": rep.simple, "delzant": rep.delzant, "failures": failures,
            "normal_form": {"v": _jvec(nf.v), "pinned": [j + 1 for j in nf.pinned],
                            "free": [{"facet": j + 1, "k": format_rat(x)} for j, x in nf.free]}}
    lines = [f"n = {spec.dim}, m = {spec.m}, r = {spec.r}, {len(inc.vertices)} vertices",
             f"simple: {'yes' if rep.simple else 'no'}",
             f"Delzant: {'yes' if rep.delzant else 'no'}"]
    for f in rep.failures:
        what = "not simple" if f.determinant is None else f"det = {format_rat(f.determinant)}"
        lines.append(f"  vertex {R.vec(f.vertex)} on {_facets(f.active_set)}: {what}")
    lines.append(f"normal form: translate by {R.vec(nf.v)}; {_facets(nf.pinned)} pinned at 0")
    lines += [f"  F{j + 1}: k = {R.rat(x)}" for j, x in nf.free]
    if not rep.delzant:
        raise ValidationFailed("polytope is not Delzant", data, lines)
    return data, lines


def _volume(spec, args, R):
    vol = polytope_moments(spec).volume
    B = factorial(spec.dim) * vol
    return ({"volume": format_rat(vol), "B": format_rat(B)},
            [f"volume = {R.rat(vol)}", f"B = n!·volume = {R.rat(B)}"])


def _cm(spec, args, R):
    md = polytope_moments(spec)
    cm = center_of_mass(spec)
    return ({"volume": format_rat(md.volume), "moments": _jvec(md.moments), "cm": _jvec(cm)},
            [f"Cm = {R.vec(cm)}"])


def _char(spec, args, R):
    b = _check_b(spec, args)
    data = {"b": list(b), "method": args.method}
    lines = []
    res = None
    if args.method in ("facets", "both"):
        res = char_number_facets(spec, b)
        data["I_facets"] = format_rat(res.value)
        data["cm_pairing"] = format_rat(res.cm_pairing)
        data["facet_terms"] = [{"facet": j + 1, "N": format_rat(N)} for j, N in res.facet_terms]
    if args.method in ("derivative", "both"):
        data["I_derivative"] = format_rat(char_number_derivative(spec, b))
    value = data.get("I_facets", data.get("I_derivative"))
    data["I"] = value
    lines.append(f"I = {R.rat(Fraction(value))}")
    if res is not None:
        lines.append(f"<Cm, b> = {R.rat(res.cm_pairing)}")
        lines += [f"  N_{j + 1} = {R.rat(N)}" for j, N in res.facet_terms]
    if args.method == "both":
        agree = data["I_facets"] == data["I_derivative"]
        data["methods_agree"] = agree
        if agree:
            lines.append("facet sum and derivative route agree")
        else:
            lines.append(f"MISMATCH: facet sum {data['I_facets']}, derivative route {data['I_derivative']}")
            raise ValidationFailed("the two methods disagree", data, lines)
    return data, lines


def _seed(args) -> int:
    return args.seed if args.seed is not None else fresh_seed()


def _masslinear(spec, args, R):
    b = _check_b(spec, args)
    seed = _seed(args)
    rep = fit_mass_linear(spec, b, extra_checks=max(args.samples, 4), seed=seed)
    data = {"b": list(b), "seed": seed, "is_linear": rep.is_linear, "R": _jvec(rep.R),
            "C": format_rat(rep.C), "sumR": format_rat(rep.sumR),
            "fit_points": [_jvec(k) for k in rep.fit_points],
            "verify_points": [{"k": _jvec(v.k), "residual": format_rat(v.residual)}
                              for v in rep.verify_points]}
    lines = [f"seed = {seed}",
             "mass linear" if rep.is_linear else "not mass linear"]
    lines += [f"  R_{j + 1} = {R.rat(x)}" for j, x in enumerate(rep.R)]
    lines += [f"  C = {R.rat(rep.C)}", f"  Σ R_j = {R.rat(rep.sumR)}"]
    bad = [v for v in rep.verify_points if v.residual != 0]
    if bad:
        lines.append(f"nonzero residual at {len(bad)}/{len(rep.verify_points)} check points, "
                     f"e.g. k = {R.vec(bad[0].k)}: {R.rat(bad[0].residual)}")
    return data, lines


def _dvector(spec, args, R):
    d = d_vector(spec).d
    return {"d": _jvec(d)}, [f"d = {R.vec(d)}"]


def _family_verb(spec, fam, args, R):
    cm = fam.cm_closed(fam.params["lambda"], fam.params["tau"])
    params = {k: (list(v) if isinstance(v, tuple) else
                  format_rat(v) if isinstance(v, Fraction) else v) for k, v in fam.params.items()}
    data = {"family": fam.name, "params": params, "spec": spec.to_dict(), "cm_closed": _jvec(cm),
            "predicate": fam.predicate_text}
    lines = [f"{fam.name}: " + ", ".join(f"{k} = {v if not isinstance(v, list) else tuple(v)}"
                                         for k, v in params.items()),
             f"spec: {spec.to_json()}",
             f"closed-form Cm = {R.vec(cm)}",
             f"mass linear iff {fam.predicate_text}"]
    if args.emit:
        try:
            with open(args.emit, "w", encoding="utf-8") as fh:
                fh.write(spec.to_json() + "\n")
        except OSError as exc:
            raise UsageError(f"cannot write {args.emit}: {exc.strerror}") from None
        data["emitted"] = args.emit
        lines.append(f"wrote {args.emit}")
    return data, lines


def _verify(spec, fam, args, R):
    b = _check_b(spec, args)
    _require_delzant(spec)
    seed = _seed(args)
    v = verify_pair(spec, b, samples=args.samples, seed=seed, extra_checks=max(args.samples, 4))
    rep = v.report
    checks = dict(v.checks)
    pts = v.all_points
    nonzero = sum(1 for s in v.samples if s.I_facets != 0)
    data = {"b": list(b), "seed": seed, "r": v.r, "theorem_applies": v.theorem_applies,
            "samples": [{"k": _jvec(s.k), "I_facets": format_rat(s.I_facets),
                         "I_derivative": format_rat(s.I_derivative), "B": format_rat(s.B)}
                        for s in pts],
            "report": {"is_linear": rep.is_linear, "R": _jvec(rep.R), "C": format_rat(rep.C),
                       "sumR": format_rat(rep.sumR),
                       "verify_points": [{"k": _jvec(p.k), "residual": format_rat(p.residual)}
                                         for p in rep.verify_points]},
            "d": None if v.d is None else _jvec(v.d),
            "d_base": None if v.d_base is None else _jvec(v.d_base)}
    head = "mass linear" if rep.is_linear else "not mass linear"
    if rep.is_linear:
        head += f" (Σ R_j = {format_rat(rep.sumR)})"
    if nonzero == 0:
        head += f"; I = 0 at {len(v.samples)}/{len(v.samples)} samples"
    else:
        head += f"; I ≠ 0 at {nonzero}/{len(v.samples)} samples"
    if fam is not None:
        lhs, rhs = fam.predicate_sides(b)
        holds = lhs == rhs
        checks["closed_form_predicate"] = holds == rep.is_linear
        lab_l, lab_r = fam.predicate_labels
        rel = "=" if holds else "≠"
        mark = "✓" if checks["closed_form_predicate"] else "✗"
        head += f"; closed-form predicate {lab_l} {rel} {lab_r}: {lhs} {rel} {rhs} {mark}"
        data["predicate"] = {"text": fam.predicate_text, "lhs": lhs, "rhs": rhs, "holds": holds}
    data["checks"] = checks
    data["info"] = v.info
    lines = [f"seed = {seed}", head,
             f"r = {v.r}" + ("" if v.theorem_applies else
                             "; the vanishing/linearity equivalence is unproven for r > 2"),
             f"  base k = {R.vec(v.base.k)}: I = {R.rat(v.base.I_facets)}, B = {R.rat(v.base.B)}"]
    for s in v.samples:
        lines.append(f"  k = {R.vec(s.k)}: I = {R.rat(s.I_facets)}")
    if v.d is not None:
        lines.append(f"d = {R.vec(v.d)} (from k = {R.vec(v.d_base)})")
    for name, ok in checks.items():
        lines.append(f"  {name}: {'n/a' if ok is None else 'pass' if ok else 'FAIL'}")
    for name, ok in v.info.items():
        lines.append(f"  {name}: {'holds' if ok else 'does not hold'}")
    if any(ok is False for ok in checks.values()):
        failed = [name for name, ok in checks.items() if ok is False]
        raise ValidationFailed("failed checks: " + ", ".join(failed), data, lines)
    return data, lines


def _emit(data: dict, lines: list[str], args, out) -> None:
    if args.output == "json":
        out.write(json.dumps(data, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 1
    R = Renderer(args.approx)
    try:
        if args.verb == "family":
            name = args.family or args.target
            if name not in FAMILIES:
                raise UsageError(f"family must be one of {', '.join(FAMILIES)}")
            fam = _family(name, args)
            spec = fam.spec
        else:
            spec, fam = _load(args)
        data = {"command": args.verb, "spec": spec.to_dict()}
        if args.verb == "family":
            extra, lines = _family_verb(spec, fam, args, R)
        elif args.verb == "verify":
            extra, lines = _verify(spec, fam, args, R)
        else:
            handler = {"vertices": _vertices, "check": _check, "volume": _volume, "cm": _cm,
                       "char": _char, "masslinear": _masslinear, "dvector": _dvector}[args.verb]
            extra, lines = handler(spec, args, R)
        data.update(extra)
        _emit(data, lines, args, out)
        return 0
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return 1
    except ValidationFailed as exc:
        if exc.data is not None:
            full = {"command": args.verb, "spec": spec.to_dict(), **exc.data}
            _emit(full, exc.lines, args, out)
        err.write(f"validation failed: {exc}\n")
        return 2
    except ChamberExit as exc:
        err.write(f"chamber exit: {exc}\n")
        return 2
    except ToricError as exc:
        err.write(f"invalid input: {exc}\n")
        return 2


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())
