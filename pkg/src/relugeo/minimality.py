"""Minimal widths and the complete enumeration of minimal representations.

For a non-affine response with n distinct breaklines the minimal hidden width
is n, n+1 or n+2 depending on which orientation patterns sigma make the
affine correction a_sigma vanish (J), fall on a breakline direction (J(m)) or
into the span of two breakline directions (J(m, m')).  Each case comes with an
explicit construction of every minimal representation modulo neuron
permutation, plus the dimension and connected-component count of the manifold
of raw networks realizing the function.

The brute-force oracle at the bottom re-derives the minimal width by direct
search over neuron-to-breakline assignments and exact linear solving, without
touching the J machinery; tests play the two against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import factorial

from .canonical import CanonicalForm, canonicalize, sigma_affine, sigma_tuple
from .errors import (
    CapExceeded,
    DimensionMismatch,
    EnumerationCapExceeded,
    EqualDirections,
)
from .exact import in_span, is_zero, primitive_direction, rat, solve_affine, vec
from .network import Breakline, EffectiveTuple, Neuron

DEFAULT_CAP = 24

# Family kinds, named by their construction:
#   exact               width n   : the form's own breaklines, orientations from J
#   duplicated-breakline width n+1: one breakline carries an extra opposite neuron
#   extra-breakline     width n+2 : a cancelling pair on a fresh breakline, offset free
#   duplicated-pair     width n+2 : two breaklines each carry an extra opposite neuron
KIND_EXACT = "exact"
KIND_DUP = "duplicated-breakline"
KIND_FRESH = "extra-breakline"
KIND_PAIR = "duplicated-pair"


@dataclass(frozen=True)
class RepresentationFamily:
    kind: str
    sigma: tuple[int, ...]
    provenance: tuple[int, ...]  # 0-based term indices: (), (j,) or (j1, j2)
    tuples: tuple[EffectiveTuple, ...]
    r_values: tuple[Fraction, ...] = ()


@dataclass(frozen=True)
class MinimalityReport:
    case: str  # "I" | "II" | "III" | "affine" | "constant"
    min_width: int
    families: tuple[RepresentationFamily, ...]
    manifold_components: tuple[tuple[int, int], ...]  # (dimension, count)


def _check_cap(n, cap):
    if n > cap:
        raise EnumerationCapExceeded(n, cap)


def _sign_patterns(n):
    return product((1, -1), repeat=n)


def compute_J(cf: CanonicalForm, cap: int = DEFAULT_CAP):
    """All orientation patterns with vanishing affine correction."""
    _check_cap(cf.n, cap)
    return [s for s in _sign_patterns(cf.n) if is_zero(sigma_affine(cf, s)[0])]


def compute_J_single(cf: CanonicalForm, m, cap: int = DEFAULT_CAP):
    """All patterns whose affine correction lies on the line spanned by m."""
    _check_cap(cf.n, cap)
    mv = vec(m)
    return [
        s for s in _sign_patterns(cf.n) if in_span(sigma_affine(cf, s)[0], [mv]) is not None
    ]


def compute_J_pair(cf: CanonicalForm, m, m2, cap: int = DEFAULT_CAP):
    """All patterns whose affine correction lies in the span of m and m2."""
    _check_cap(cf.n, cap)
    if tuple(m) == tuple(m2):
        raise EqualDirections("the two directions must differ")
    mv, mv2 = vec(m), vec(m2)
    return [
        s
        for s in _sign_patterns(cf.n)
        if in_span(sigma_affine(cf, s)[0], [mv, mv2]) is not None
    ]


def _directions(cf):
    """Distinct term directions in lexicographic order."""
    return sorted({bl.direction for bl in cf.breaklines})


def _indices_with_direction(cf, direction):
    return [i for i, bl in enumerate(cf.breaklines) if bl.direction == direction]


def verify_representation(cf: CanonicalForm, t: EffectiveTuple) -> bool:
    """True iff the tuple's response has exactly this canonical form."""
    if t.neurons and t.d0 != cf.d0:
        raise DimensionMismatch("tuple and form live in different dimensions")
    return canonicalize(t, d0=cf.d0) == cf


def _exact_family(cf, sigma):
    _, b_sigma = sigma_affine(cf, sigma)
    return RepresentationFamily(KIND_EXACT, sigma, (), (sigma_tuple(cf, sigma, b_sigma),))


def _duplicated_family(cf, sigma, j):
    a_sigma, b_sigma = sigma_affine(cf, sigma)
    bl_j = cf.breaklines[j]
    coeffs = in_span(a_sigma, [vec(bl_j.direction)])
    delta = coeffs[0]
    neurons = [
        Neuron(bl, k, s)
        for i, ((bl, k), s) in enumerate(zip(cf.terms, sigma))
        if i != j
    ]
    kink_j = cf.kinks[j] + delta
    assert delta != 0 and kink_j != 0, "would contradict case II minimality"
    neurons.insert(j, Neuron(bl_j, kink_j, 1))
    neurons.append(Neuron(bl_j, -delta, -1))
    bias = delta * bl_j.offset + b_sigma
    return RepresentationFamily(KIND_DUP, sigma, (j,), (EffectiveTuple(tuple(neurons), bias),))


def _fresh_line_family(cf, sigma, r_values):
    a_sigma, b_sigma = sigma_affine(cf, sigma)
    d, s = primitive_direction(a_sigma)
    tuples = []
    for r in r_values:
        bl = Breakline(d, r)
        neurons = tuple(Neuron(b, k, sg) for (b, k), sg in zip(cf.terms, sigma)) + (
            Neuron(bl, s, 1),
            Neuron(bl, -s, -1),
        )
        tuples.append(EffectiveTuple(neurons, s * r + b_sigma))
    return RepresentationFamily(KIND_FRESH, sigma, (), tuple(tuples), tuple(r_values))


def _duplicated_pair_family(cf, sigma, j1, j2):
    a_sigma, b_sigma = sigma_affine(cf, sigma)
    bl1, bl2 = cf.breaklines[j1], cf.breaklines[j2]
    d1, d2 = in_span(a_sigma, [vec(bl1.direction), vec(bl2.direction)])
    assert d1 != 0 and d2 != 0, "would contradict case III (J(m) empty)"
    k1, k2 = cf.kinks[j1] + d1, cf.kinks[j2] + d2
    assert k1 != 0 and k2 != 0, "would contradict case III minimality"
    ordered = []
    for i, ((bl, k), s) in enumerate(zip(cf.terms, sigma)):
        if i == j1:
            ordered.append(Neuron(bl1, k1, 1))
        elif i == j2:
            ordered.append(Neuron(bl2, k2, 1))
        else:
            ordered.append(Neuron(bl, k, s))
    ordered.append(Neuron(bl1, -d1, -1))
    ordered.append(Neuron(bl2, -d2, -1))
    bias = d1 * bl1.offset + d2 * bl2.offset + b_sigma
    return RepresentationFamily(
        KIND_PAIR, sigma, (j1, j2), (EffectiveTuple(tuple(ordered), bias),)
    )


def enumerate_minimal(cf: CanonicalForm, r_samples=(0,), cap: int = DEFAULT_CAP):
    """All minimal representation families, modulo neuron permutation.

    The extra-breakline families of case III are infinite (one tuple per
    offset); they are instantiated at the caller-supplied ``r_samples``.
    """
    _check_cap(cf.n, cap)
    r_values = tuple(rat(r) for r in r_samples)
    if cf.is_affine():
        if is_zero(cf.affine):
            return []
        # same structure as the extra-breakline construction, with no terms
        return [_fresh_line_family(cf, (), r_values)]

    J = compute_J(cf, cap)
    if J:
        return [_exact_family(cf, s) for s in J]

    families = []
    for direction in _directions(cf):
        Jm = compute_J_single(cf, direction, cap)
        if not Jm:
            continue
        for j in _indices_with_direction(cf, direction):
            for sigma in Jm:
                if sigma[j] == 1:
                    families.append(_duplicated_family(cf, sigma, j))
    if families:
        return families

    for sigma in _sign_patterns(cf.n):
        families.append(_fresh_line_family(cf, sigma, r_values))
    dirs = _directions(cf)
    for m, m2 in combinations(dirs, 2):
        Jmm = compute_J_pair(cf, m, m2, cap)
        if not Jmm:
            continue
        for j1 in _indices_with_direction(cf, m):
            for j2 in _indices_with_direction(cf, m2):
                for sigma in Jmm:
                    if sigma[j1] == 1 and sigma[j2] == 1:
                        families.append(_duplicated_pair_family(cf, sigma, j1, j2))
    return families


def classify(cf: CanonicalForm, cap: int = DEFAULT_CAP, r_samples=(0,)) -> MinimalityReport:
    """Minimal width, case tag, families and manifold statistics."""
    _check_cap(cf.n, cap)
    n = cf.n
    families = tuple(enumerate_minimal(cf, r_samples, cap))

    if cf.is_affine():
        if is_zero(cf.affine):
            # constant responses sit outside the theory: two neurons on any
            # breakline with cancelling kinks realize them, nothing smaller does
            return MinimalityReport("constant", 2, families, ())
        return MinimalityReport("affine", 2, families, ((3, 2),))

    if families and families[0].kind == KIND_EXACT:
        return MinimalityReport("I", n, families, ((n, factorial(n) * len(families)),))
    if families and families[0].kind == KIND_DUP:
        return MinimalityReport(
            "II", n + 1, families, ((n + 1, factorial(n + 1) * len(families)),)
        )
    pair_count = sum(1 for f in families if f.kind == KIND_PAIR)
    components = [(n + 3, factorial(n + 2) * 2**n)]
    if pair_count:
        components.append((n + 2, factorial(n + 2) * pair_count))
    return MinimalityReport("III", n + 2, families, tuple(components))


# ---------------------------------------------------------------------------
# Brute-force oracle: minimal width by assignment search + exact solving.
# ---------------------------------------------------------------------------
#
# Any representation assigns each neuron a breakline.  Lemma-level facts used,
# all re-derived from the canonical-form semantics rather than from J:
#   * every breakline of f needs at least one neuron;
#   * per breakline the neuron kinks sum to the form's kink, and to zero on a
#    breakline f does not break on;
#   * the candidate's affine part is -(sum of kink*direction over negatively
#     oriented neurons), so matching f pins one exact linear system; the
#     output bias absorbs the constant.
# At the minimal width, two neurons sharing breakline and orientation could be
# merged into a strictly smaller representation, so it suffices to search
# configurations with at most one neuron per (breakline, orientation) and at
# most one off-breakline cancelling pair (two such pairs would already exceed
# n+2 neurons).


def _exists_with_width(cf, k):
    n = cf.n
    target = tuple(-a for a in cf.affine)
    dirs = [vec(bl.direction) for bl in cf.breaklines]
    kinks = cf.kinks
    for extra_pair in (0, 1):
        n_doubles = k - n - 2 * extra_pair
        if n_doubles < 0 or n_doubles > n:
            continue
        if extra_pair and n_doubles > 0:
            continue  # would need more than n+2 neurons, never minimal here
        for doubles in combinations(range(n), n_doubles):
            singles = [i for i in range(n) if i not in doubles]
            for eps in product((1, -1), repeat=len(singles)):
                s0 = [Fraction(0)] * cf.d0
                for i, e in zip(singles, eps):
                    if e == -1:
                        for c in range(cf.d0):
                            s0[c] += kinks[i] * dirs[i][c]
                residual = tuple(t - s for t, s in zip(target, s0))
                if extra_pair:
                    if not is_zero(residual):
                        return True
                    continue
                if not doubles:
                    if is_zero(residual):
                        return True
                    continue
                rows = [[dirs[i][c] for i in doubles] for c in range(cf.d0)]
                sol = solve_affine(rows, residual, len(doubles))
                if sol is None:
                    continue
                part, null = sol
                ok = True
                for idx, i in enumerate(doubles):
                    free = any(v[idx] != 0 for v in null)
                    if not free and part[idx] in (0, kinks[i]):
                        ok = False
                        break
                if ok:
                    return True
    return False


def brute_force_min_width(cf: CanonicalForm, width_limit: int) -> int:
    """Least width admitting a representation, else ``width_limit + 1``.

    Desk-scale oracle: requires n <= 4, d0 <= 3 and width_limit <= n + 2.
    """
    n = cf.n
    if n > 4 or cf.d0 > 3 or width_limit > n + 2:
        raise CapExceeded("brute force oracle is desk-scale only")
    if n == 0:
        # constants need a cancelling same-orientation pair, nonzero affine
        # responses an opposite pair; a single neuron is never affine
        return 2 if width_limit >= 2 else width_limit + 1
    for k in range(n, width_limit + 1):
        if _exists_with_width(cf, k):
            return k
    return width_limit + 1


def brute_force_minimal_tuples(cf: CanonicalForm, r_samples=(0,)):
    """All minimal-width tuples found by the assignment search, permutation-reduced.

    Off-breakline pairs are instantiated at every offset in ``r_samples``; the
    result is a set of permutation-canonical tuples for direct comparison with
    ``enumerate_minimal``.
    """
    n = cf.n
    if n == 0:
        raise CapExceeded("tuple enumeration needs at least one breakline")
    k = brute_force_min_width(cf, n + 2)
    if k > n + 2:
        raise AssertionError("every canonical form is representable with n+2 neurons")
    target = tuple(-a for a in cf.affine)
    dirs = [vec(bl.direction) for bl in cf.breaklines]
    kinks = cf.kinks
    found = set()
    for extra_pair in (0, 1):
        n_doubles = k - n - 2 * extra_pair
        if n_doubles < 0 or n_doubles > n or (extra_pair and n_doubles > 0):
            continue
        for doubles in combinations(range(n), n_doubles):
            singles = [i for i in range(n) if i not in doubles]
            for eps in product((1, -1), repeat=len(singles)):
                orient = {i: e for i, e in zip(singles, eps)}
                s0 = [Fraction(0)] * cf.d0
                for i, e in zip(singles, eps):
                    if e == -1:
                        for c in range(cf.d0):
                            s0[c] += kinks[i] * dirs[i][c]
                residual = tuple(t - s for t, s in zip(target, s0))
                neg_split = {}  # doubled index -> negative neuron kink
                fresh = None  # (direction, kink of the negative neuron)
                if extra_pair:
                    if is_zero(residual):
                        continue
                    d, s = primitive_direction(residual)
                    fresh = (d, s)
                elif doubles:
                    rows = [[dirs[i][c] for i in doubles] for c in range(cf.d0)]
                    sol = solve_affine(rows, residual, len(doubles))
                    if sol is None:
                        continue
                    part, null = sol
                    assert not null, "underdetermined split cannot occur at minimal width"
                    if any(part[idx] in (0, kinks[i]) for idx, i in enumerate(doubles)):
                        continue
                    neg_split = {i: part[idx] for idx, i in enumerate(doubles)}
                elif not is_zero(residual):
                    continue
                base = []
                neg_kq = Fraction(0)
                for i, (bl, kk) in enumerate(cf.terms):
                    if i in neg_split:
                        base.append(Neuron(bl, kk - neg_split[i], 1))
                        base.append(Neuron(bl, neg_split[i], -1))
                        neg_kq += neg_split[i] * bl.offset
                    else:
                        base.append(Neuron(bl, kk, orient[i]))
                        if orient[i] == -1:
                            neg_kq += kk * bl.offset
                if fresh is None:
                    bias = cf.bias - neg_kq
                    found.add(EffectiveTuple(tuple(base), bias).sorted())
                else:
                    d, s = fresh
                    for r in r_samples:
                        r = rat(r)
                        bl = Breakline(d, r)
                        neurons = tuple(base) + (Neuron(bl, -s, 1), Neuron(bl, s, -1))
                        bias = cf.bias - neg_kq - s * r
                        found.add(EffectiveTuple(neurons, bias).sorted())
    return found
