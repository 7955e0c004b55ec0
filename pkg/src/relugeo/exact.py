"""Exact rational scalars, vectors and small dense linear algebra.

Everything downstream (canonical forms, minimality, synthesis) relies on
equality tests being exact, so all arithmetic happens over ``Fraction``.
Directions of hyperplanes are stored as primitive integer vectors: not all
zero, gcd one, first nonzero entry positive.  The sign convention doubles as
the orientation cone: a nonzero vector is positively oriented iff its first
nonzero coordinate is positive, which is decidable over the rationals without
square roots.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import DimensionMismatch, ZeroVector

Rational = Fraction


def rat(value) -> Fraction:
    """Parse a rational from "p/q", "p", a decimal string, an int or a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rat_str(value: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is one."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def vec(values) -> tuple[Fraction, ...]:
    return tuple(rat(v) for v in values)


def dot(a, b) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatch(f"dot of length {len(a)} with length {len(b)}")
    return sum((Fraction(x) * y for x, y in zip(a, b)), Fraction(0))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a):
    return tuple(c * x for x in a)


def is_zero(a) -> bool:
    return all(x == 0 for x in a)


def primitive_direction(v) -> tuple[tuple[int, ...], Fraction]:
    """Write a nonzero rational vector as s * d with d primitive and lex-positive.

    Returns ``(d, s)`` where d is an integer vector with gcd one whose first
    nonzero entry is positive, and s is a nonzero rational with v = s * d
    componentwise.  The sign of s is the orientation of v.
    """
    v = vec(v)
    if is_zero(v):
        raise ZeroVector("cannot orient the zero vector")
    denom = 1
    for x in v:
        denom = lcm(denom, x.denominator)
    w = [int(x * denom) for x in v]
    g = 0
    for e in w:
        g = gcd(g, abs(e))
    first = next(e for e in w if e != 0)
    sign = 1 if first > 0 else -1
    d = tuple(sign * (e // g) for e in w)
    s = Fraction(sign * g, denom)
    return d, s


def _integer_rows(rows):
    """Scale each row to integers; row scaling preserves rank."""
    out = []
    for row in rows:
        row = vec(row)
        denom = 1
        for x in row:
            denom = lcm(denom, x.denominator)
        out.append([int(x * denom) for x in row])
    return out


def rank(rows) -> int:
    """Rank of the matrix with the given rows, by fraction-free elimination."""
    rows = list(rows)
    if not rows:
        return 0
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise DimensionMismatch("rank: rows of unequal length")
    m = _integer_rows(rows)
    n_rows = len(m)
    r = 0
    prev = 1
    for col in range(width):
        pivot = next((i for i in range(r, n_rows) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, n_rows):
            for j in range(col + 1, width):
                m[i][j] = (m[r][col] * m[i][j] - m[i][col] * m[r][j]) // prev
            m[i][col] = 0
        prev = m[r][col]
        r += 1
        if r == n_rows:
            break
    return r


def solve_affine(rows, rhs, ncols):
    """Solve the exact linear system rows . x = rhs for x of length ncols.

    Returns ``(particular, nullspace_basis)`` or None when inconsistent.
    ``nullspace_basis`` is a (possibly empty) list of vectors spanning the
    solution space of the homogeneous system.
    """
    aug = []
    for row, b in zip(rows, rhs):
        row = vec(row)
        if len(row) != ncols:
            raise DimensionMismatch("solve_affine: row of wrong length")
        aug.append(list(row) + [rat(b)])
    n_rows = len(aug)
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, n_rows) if aug[i][col] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][col]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(n_rows):
            if i != r and aug[i][col] != 0:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == n_rows:
            break
    for i in range(r, n_rows):
        if aug[i][ncols] != 0:
            return None
    particular = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        particular[col] = aug[i][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, col in enumerate(pivots):
            v[col] = -aug[i][fc]
        basis.append(tuple(v))
    return tuple(particular), basis


def in_span(v, basis):
    """Coefficients expressing v in the span of the basis vectors, or None.

    When the basis is linearly dependent it is reduced to its first generator
    and a single coefficient is reported.
    """
    v = vec(v)
    basis = [vec(b) for b in basis]
    for b in basis:
        if len(b) != len(v):
            raise DimensionMismatch("in_span: mixed vector lengths")
    if len(basis) == 2 and rank(basis) < 2:
        basis = basis[:1]
    if not basis:
        return () if is_zero(v) else None
    rows = [[b[k] for b in basis] for k in range(len(v))]
    sol = solve_affine(rows, v, len(basis))
    if sol is None:
        return None
    return tuple(sol[0])


def affine_fit(points, values):
    """The unique affine map x -> g.x + c through d0+1 points, or None.

    None signals that the points are affinely dependent (the interpolation
    problem is singular or inconsistent).
    """
    points = [vec(p) for p in points]
    d0 = len(points[0])
    for p in points:
        if len(p) != d0:
            raise DimensionMismatch("affine_fit: mixed point dimensions")
    if len(points) != d0 + 1 or len(values) != d0 + 1:
        raise DimensionMismatch("affine_fit needs exactly d0+1 points and values")
    rows = [list(p) + [Fraction(1)] for p in points]
    sol = solve_affine(rows, [rat(v) for v in values], d0 + 1)
    if sol is None or sol[1]:
        return None
    particular = sol[0]
    return tuple(particular[:d0]), particular[d0]
