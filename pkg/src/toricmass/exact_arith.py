"""Exact rational linear algebra on plain tuples of ``Fraction``.

Vectors are tuples, matrices are tuples of row tuples.  Entries may be
``int`` or ``Fraction``; results are always ``Fraction`` (or ``int`` where
noted) so nothing is ever rounded.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import NotPrimitive, ParseError, SingularMatrix

Rat = Fraction
RatVec = tuple  # tuple[Fraction, ...]
IntVec = tuple  # tuple[int, ...]
RatMat = tuple  # tuple[tuple[Fraction, ...], ...]


def as_rat(value) -> Fraction:
    """Convert an int, ``Fraction`` or ``"p/q"`` string to a ``Fraction``.

    Floats are refused: a float has already lost the exact value.
    """
    if isinstance(value, bool):
        raise ParseError(f"not a rational number: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational number: {value!r}") from exc
    raise ParseError(f"not a rational number: {value!r}")


def vec(values: Sequence) -> RatVec:
    return tuple(as_rat(v) for v in values)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> RatVec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> RatVec:
    return tuple(a - b for a, b in zip(u, v))


def scale(s, u: Sequence) -> RatVec:
    return tuple(s * a for a in u)


def matvec(M: Sequence[Sequence], x: Sequence) -> RatVec:
    return tuple(dot(row, x) for row in M)


def transpose(M: Sequence[Sequence]) -> RatMat:
    return tuple(zip(*M))


def identity(d: int) -> RatMat:
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def _check_square(M) -> int:
    d = len(M)
    if any(len(row) != d for row in M):
        raise ValueError("matrix is not square")
    return d


def int_determinant(A: list[list[int]]) -> int:
    """Bareiss fraction-free elimination; ``A`` is consumed."""
    d = len(A)
    sign = 1
    prev = 1
    for col in range(d - 1):
        pivot = next((r for r in range(col, d) if A[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            A[col], A[pivot] = A[pivot], A[col]
            sign = -sign
        p = A[col][col]
        row_c = A[col]
        for r in range(col + 1, d):
            row_r = A[r]
            f = row_r[col]
            for c in range(col + 1, d):
                row_r[c] = (p * row_r[c] - f * row_c[c]) // prev
            row_r[col] = 0
        prev = p
    return sign * A[d - 1][d - 1] if d else 1


def determinant(M: Sequence[Sequence]) -> Fraction:
    """Exact determinant: each row's denominators are cleared and the
    integer matrix is reduced by ``int_determinant``."""
    d = _check_square(M)
    if d == 0:
        return Fraction(1)
    A = []
    scale = 1
    for row in M:
        row = [Fraction(x) for x in row]
        L = lcm(*(x.denominator for x in row))
        scale *= L
        A.append([x.numerator * (L // x.denominator) for x in row])
    return Fraction(int_determinant(A), scale)


def solve_linear(M: Sequence[Sequence], rhs: Sequence) -> RatVec:
    """Solve ``M x = rhs`` exactly; raise ``SingularMatrix`` if det M = 0."""
    d = _check_square(M)
    if len(rhs) != d:
        raise ValueError("right-hand side has the wrong length")
    A = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(M, rhs)]
    for col in range(d):
        pivot = next((r for r in range(col, d) if A[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrix("matrix rows are linearly dependent")
        A[col], A[pivot] = A[pivot], A[col]
        p = A[col][col]
        row_c = A[col]
        for r in range(d):
            if r != col and A[r][col]:
                f = A[r][col] / p
                row_r = A[r]
                for c in range(col, d + 1):
                    row_r[c] -= f * row_c[c]
    return tuple(A[i][d] / A[i][i] for i in range(d))


def inverse(M: Sequence[Sequence]) -> RatMat:
    d = _check_square(M)
    cols = [solve_linear(M, e) for e in identity(d)]
    return transpose(cols)


def rank(M: Sequence[Sequence]) -> int:
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for col in range(cols):
        pivot = next((i for i in range(r, rows) if A[i][col] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        for i in range(r + 1, rows):
            if A[i][col]:
                f = A[i][col] / A[r][col]
                for c in range(col, cols):
                    A[i][c] -= f * A[r][c]
        r += 1
        if r == rows:
            break
    return r


def normal_vector(rows: Sequence[Sequence]) -> RatVec:
    """Generalized cross product of ``d-1`` vectors in dimension ``d``.

    The result is orthogonal to every input row and is zero exactly when the
    rows are dependent.
    """
    d = len(rows) + 1
    out = []
    for i in range(d):
        minor = [tuple(row[c] for c in range(d) if c != i) for row in rows]
        out.append((-1) ** (d - 1 + i) * determinant(minor))
    return tuple(out)


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g == 1


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, rem = divmod(a, b)
        a, b = b, rem
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def unimodular_flatten(n: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Integer matrix ``U`` with ``|det U| = 1`` whose last row is ``n``.

    ``y = U x`` sends the hyperplane ``<x, n> = kappa`` onto ``y_d = kappa``
    and preserves the lattice, so the first ``d-1`` coordinates of ``y`` are
    lattice coordinates on the hyperplane.

    Built by column operations that reduce the row vector ``n`` to ``e_d``:
    entries are folded into the last column left to right with extended gcd
    steps, accumulating a unimodular ``W`` with ``n W = e_d``; then
    ``U = W^{-1}``.
    """
    n = [int(x) for x in n]
    d = len(n)
    if d == 0:
        raise ValueError("empty vector")
    if not is_primitive(n):
        raise NotPrimitive(f"{tuple(n)} is not primitive")
    v = list(n)
    W = [[int(i == j) for j in range(d)] for i in range(d)]
    last = d - 1
    for i in range(d - 1):
        if v[i] == 0:
            continue
        g, s, t = _ext_gcd(v[i], v[last])
        p, q = v[last] // g, v[i] // g
        # new_last = s*col_i + t*col_last ; new_i = p*col_i - q*col_last
        for row in W:
            ci, cl = row[i], row[last]
            row[i], row[last] = p * ci - q * cl, s * ci + t * cl
        v[i], v[last] = 0, g
    if v[last] == -1:
        for row in W:
            row[last] = -row[last]
    Winv = inverse(W)
    U = tuple(tuple(int(x) for x in row) for row in Winv)
    assert list(U[last]) == n
    return U


# --- univariate polynomials (coefficients in increasing degree) ---------

def interpolate(xs: Sequence, ys: Sequence) -> list[Fraction]:
    """Coefficients of the unique polynomial of degree < len(xs) through the
    points, via Newton divided differences."""
    xs = [Fraction(x) for x in xs]
    coef = [Fraction(y) for y in ys]
    n = len(xs)
    if len(set(xs)) != n:
        raise ValueError("interpolation nodes must be distinct")
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand the Newton form into the power basis
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[i] * p for s, p in zip(shifted, poly)]
        poly[0] += coef[i]
    return poly


def poly_eval(coeffs: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_derivative(coeffs: Sequence) -> list[Fraction]:
    return [i * Fraction(c) for i, c in enumerate(coeffs)][1:]
