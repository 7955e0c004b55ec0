"""Shared builders for random test data, all deterministic in an explicit rng."""

import random
from fractions import Fraction

import pytest

from relugeo.canonical import CanonicalForm
from relugeo.exact import primitive_direction
from relugeo.network import Breakline, EffectiveTuple, Neuron
from relugeo.synthesis import check_transversality


def T(neurons, bias=0):
    """Effective tuple from (direction, offset, kink, orientation) rows."""
    return EffectiveTuple(
        tuple(Neuron(Breakline(tuple(d), Fraction(q)), Fraction(k), o) for d, q, k, o in neurons),
        Fraction(bias),
    )


def nonzero_fraction(rng, bound=4):
    value = Fraction(0)
    while value == 0:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return value


def random_breakline(rng, d0, bound=3):
    while True:
        raw = tuple(rng.randint(-bound, bound) for _ in range(d0))
        if any(raw):
            break
    d, _ = primitive_direction(raw)
    return Breakline(d, Fraction(rng.randint(-bound, bound), rng.randint(1, 2)))


def random_breaklines(rng, d0, n, bound=3):
    """n pairwise distinct breaklines."""
    out = []
    while len(out) < n:
        bl = random_breakline(rng, d0, bound)
        if bl not in out:
            out.append(bl)
    return out


def random_form(rng, d0, n, bound=3):
    """Random canonical form: distinct sorted breaklines, nonzero kinks."""
    breaklines = random_breaklines(rng, d0, n, bound)
    terms = tuple(
        (bl, nonzero_fraction(rng, bound))
        for bl in sorted(breaklines, key=lambda b: (b.direction, b.offset))
    )
    affine = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(d0))
    bias = Fraction(rng.randint(-bound, bound), rng.randint(1, 2))
    return CanonicalForm(terms, affine, bias, d0)


def random_transversal_form(rng, d0, n, bound=3):
    """Like random_form but the breakline arrangement satisfies transversality."""
    while True:
        cf = random_form(rng, d0, n, bound)
        if check_transversality(cf.breaklines) is None:
            return cf


def random_point(rng, d0, num=20, den=4):
    return tuple(Fraction(rng.randint(-num, num), rng.randint(1, den)) for _ in range(d0))


@pytest.fixture
def rng():
    return random.Random(20260824)
