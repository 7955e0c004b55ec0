"""Construction of networks from continuous piecewise-affine functions.

Under the transversality condition (breaklines through any common point have
linearly independent normals) the gradient jump across each breakline is
constant, so the function can be peeled one breakline at a time: measure the
jump at a sample point, subtract the matching kink term, recurse.  What
survives is affine and costs at most two further neurons, for a total of at
most n+2.  The gradient on either side of a breakline is recovered by exact
affine interpolation on small simplices with validation points, so any exact
evaluator works, not just parsed expressions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import (
    CapExceeded,
    NotLocallyAffine,
    NotRepresentable,
    NotTransversal,
)
from .exact import affine_fit, dot, is_zero, primitive_direction, rank, rat, solve_affine, vec, vsub
from .network import Breakline, EffectiveTuple, Neuron
from .pwa import PWASpec, eval_pwa, expr_dim

DEFAULT_TRANSVERSALITY_CAP = 20


@dataclass(frozen=True)
class Violation:
    indices: tuple[int, ...]  # 0-based indices of a minimal offending subset
    point: tuple[Fraction, ...]  # a common point of the subset's breaklines


def check_transversality(breaklines, cap: int = DEFAULT_TRANSVERSALITY_CAP):
    """None if every meeting family of breaklines has independent normals.

    Otherwise a Violation carrying a minimal offending subset and a rational
    point in its common intersection.  A minimal offending subset has at most
    d0+1 members (dropping its last member leaves an independent family), so
    only subsets up to that size are examined.
    """
    breaklines = list(breaklines)
    n = len(breaklines)
    if n > cap:
        raise CapExceeded(f"{n} breaklines exceed the transversality cap of {cap}")
    if n == 0:
        return None
    d0 = breaklines[0].d0
    for size in range(2, min(n, d0 + 1) + 1):
        for subset in combinations(range(n), size):
            dirs = [vec(breaklines[i].direction) for i in subset]
            if rank(dirs) == size:
                continue
            rows = dirs
            rhs = [breaklines[i].offset for i in subset]
            sol = solve_affine(rows, rhs, d0)
            if sol is not None:
                return Violation(subset, sol[0])
    return None


def point_on_breakline(breaklines, i, seed: int = 0):
    """A rational point on breakline i avoiding every other breakline.

    Deterministic in the seed: the breakline is parametrized and an integer
    parameter grid is scanned in shells; each other breakline removes only an
    affine slice of the grid, so the scan terminates.
    """
    breaklines = list(breaklines)
    bl = breaklines[i]
    d0 = bl.d0
    pivot = next(c for c, e in enumerate(bl.direction) if e != 0)
    base = [Fraction(0)] * d0
    base[pivot] = Fraction(bl.offset, bl.direction[pivot])
    params = [c for c in range(d0) if c != pivot]
    span = []
    for c in params:
        v = [Fraction(0)] * d0
        v[c] = Fraction(1)
        v[pivot] = Fraction(-bl.direction[c], bl.direction[pivot])
        span.append(v)
    others = [b for j, b in enumerate(breaklines) if j != i]
    rng = random.Random(seed)
    offset = rng.randrange(0, 1000)

    def shell_values(radius):
        if radius == 0:
            yield (0,) * len(params)
            return
        import itertools

        for t in itertools.product(range(-radius, radius + 1), repeat=len(params)):
            if max((abs(v) for v in t), default=0) == radius:
                yield t

    radius = 0
    while True:
        for t in shell_values(radius):
            x = list(base)
            for tv, v in zip(t, span):
                shifted = tv + offset if tv >= 0 else tv - offset
                for c in range(d0):
                    x[c] += shifted * v[c]
            if all(b.side(x) != 0 for b in others):
                return tuple(x)
        radius += 1


def _unit(d0, c):
    v = [Fraction(0)] * d0
    v[c] = Fraction(1)
    return tuple(v)


def _fit_around(f, center, radius, d0):
    """Exact affine fit of f on a simplex of the given radius around center."""
    points = [tuple(center)] + [
        tuple(a + radius * b for a, b in zip(center, _unit(d0, c))) for c in range(d0)
    ]
    values = [f(p) for p in points]
    return affine_fit(points, values)


def jump_vector(f, bl: Breakline, x, step=Fraction(1), halvings: int = 20):
    """Gradient difference (positive side minus negative side) across bl at x.

    ``x`` must lie on bl and off every other breakline of f.  The gradients on
    both sides are recovered by affine interpolation at two scales; the scales
    must agree exactly, otherwise the step is halved.  All probe points stay
    strictly on their side of bl because the step in the normal direction
    dominates the simplex radius.
    """
    x = vec(x)
    d0 = bl.d0
    dvec = vec(bl.direction)
    step = rat(step)
    for _ in range(halvings):
        grads = []
        ok = True
        for sign in (1, -1):
            y = tuple(a + sign * step * b for a, b in zip(x, dvec))
            fit1 = _fit_around(f, y, step / 2, d0)
            fit2 = _fit_around(f, y, step / 4, d0)
            if fit1 is None or fit2 is None or fit1 != fit2:
                ok = False
                break
            grads.append(fit1[0])
        if ok:
            return vsub(grads[0], grads[1])
        step /= 2
    raise NotLocallyAffine(
        f"no consistent affine fit adjacent to breakline {bl.direction}={bl.offset} at {x}"
    )


def _safe_step(breaklines, k, x):
    """Probe step across breakline k keeping every probe point in the two
    cells adjacent at x: the total side-value drift of any other breakline
    (step along the normal plus the simplex radius step/2 per coordinate)
    must stay below that breakline's margin at x."""
    bl = breaklines[k]
    step = Fraction(1)
    for j, b in enumerate(breaklines):
        if j == k:
            continue
        margin = abs(b.side(x))
        bound = abs(dot(vec(b.direction), vec(bl.direction))) + Fraction(
            max(abs(e) for e in b.direction), 2
        )
        if bound == 0:
            continue
        while step * bound >= margin:
            step /= 2
    return step


def _subtract_kink(f, kink, bl):
    def g(x):
        pre = bl.side(x)
        if pre > 0:
            return f(x) - kink * pre
        return f(x)

    return g


def synthesize_evaluator(
    f,
    breaklines,
    d0: int,
    seed: int = 0,
    check: bool = True,
    n_verify: int = 1000,
) -> EffectiveTuple:
    """Peel an exact evaluator into an effective tuple with at most n+2 neurons.

    ``f`` maps rational points of length d0 to rationals and must be affine on
    the cells of the declared breaklines.  With ``check=False`` the
    transversality precondition is skipped; the final sampled verification
    still rejects anything that is not a response.
    """
    breaklines = list(breaklines)
    n = len(breaklines)
    if check:
        violation = check_transversality(breaklines)
        if violation is not None:
            raise NotTransversal(violation)

    residual = f
    kinks = []
    for k in range(n - 1, -1, -1):
        bl = breaklines[k]
        x = point_on_breakline(breaklines, k, seed + k)
        jump = jump_vector(residual, bl, x, step=_safe_step(breaklines, k, x))
        if is_zero(jump):
            kinks.append(Fraction(0))
            continue
        # jump must be a rational multiple of the breakline direction
        span = solve_affine([[Fraction(e)] for e in bl.direction], jump, 1)
        if span is None:
            raise NotRepresentable(
                "JumpNotParallel",
                f"jump {tuple(jump)} across breakline {k + 1} is not parallel to its normal",
            )
        kink = span[0][0]
        kinks.append(kink)
        residual = _subtract_kink(residual, kink, bl)
    kinks.reverse()

    origin = (Fraction(0),) * d0
    fit = _fit_around(residual, origin, Fraction(1), d0)
    if fit is None:
        raise NotRepresentable("ResidualNotAffine", "degenerate affine fit of the residual")
    grad, const = fit
    rng = random.Random(seed)
    for _ in range(2 * d0 + 8):
        p = tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 8)) for _ in range(d0))
        if residual(p) != dot(grad, p) + const:
            raise NotRepresentable(
                "ResidualNotAffine", f"residual disagrees with its affine fit at {p}"
            )

    neurons = [
        Neuron(bl, kink, 1) for bl, kink in zip(breaklines, kinks) if kink != 0
    ]
    if is_zero(grad):
        bias = const
    else:
        d, s = primitive_direction(grad)
        fresh = Breakline(d, 0)
        neurons.append(Neuron(fresh, s, 1))
        neurons.append(Neuron(fresh, -s, -1))
        bias = const
    result = EffectiveTuple(tuple(neurons), bias)

    from .network import evaluate_tuple

    for _ in range(n_verify):
        p = tuple(Fraction(rng.randint(-60, 60), rng.randint(1, 10)) for _ in range(d0))
        if f(p) != evaluate_tuple(result, p):
            raise NotRepresentable(
                "MissingBreakline",
                f"function disagrees with the synthesized network at {p}",
            )
    return result


def synthesize(spec: PWASpec, seed: int = 0, check: bool = True, n_verify: int = 1000):
    """Synthesize a network for a parsed piecewise-affine specification."""
    d0 = expr_dim(spec.expr)
    return synthesize_evaluator(
        lambda x: eval_pwa(spec.expr, x), spec.breaklines, d0, seed, check, n_verify
    )
