"""Canonical forms, sigma corrections and equivalence decisions."""

from fractions import Fraction
from itertools import product

import pytest

from relugeo.canonical import (
    CanonicalForm,
    Different,
    Equal,
    EqualUpToAffine,
    canonicalize,
    equivalence,
    evaluate_cf,
    sigma_affine,
    sigma_tuple,
)
from relugeo.errors import DimensionMismatch, LengthMismatch
from relugeo.exact import dot
from relugeo.network import Breakline, EffectiveTuple, evaluate_tuple, expand, random_net

from conftest import T, random_form, random_point

F = Fraction

RELU = canonicalize(T([((1,), 0, 1, 1)]))
ABS = canonicalize(T([((1,), 0, 1, 1), ((1,), 0, 1, -1)]))


class TestCanonicalize:
    def test_already_canonical(self):
        assert RELU.terms == ((Breakline((1,), F(0)), F(1)),)
        assert RELU.affine == (F(0),)
        assert RELU.bias == 0

    def test_cancelling_kinks_drop_term(self):
        cf = canonicalize(T([((1,), 0, 1, 1), ((1,), 0, -1, 1)], 5))
        assert cf.terms == ()
        assert cf.affine == (F(0),)
        assert cf.bias == 5

    def test_abs_value(self):
        # (x)_+ + (-x)_+ = |x| = 2(x)_+ - x
        assert ABS.terms == ((Breakline((1,), F(0)), F(2)),)
        assert ABS.affine == (F(-1),)
        assert ABS.bias == 0
        for x in (-2, -1, 0, 1, 2):
            assert evaluate_cf(ABS, (x,)) == abs(x)

    def test_terms_sorted(self):
        cf = canonicalize(T([((1,), 2, 1, 1), ((1,), -1, 1, 1), ((1,), 0, 1, 1)]))
        offsets = [bl.offset for bl in cf.breaklines]
        assert offsets == sorted(offsets)

    def test_response_preserved(self, rng):
        for _ in range(30):
            d0 = rng.randint(1, 3)
            cf0 = random_form(rng, d0, rng.randint(1, 3))
            sigma = tuple(rng.choice((1, -1)) for _ in range(cf0.n))
            t = sigma_tuple(cf0, sigma, cf0.bias)
            cf = canonicalize(t)
            for _ in range(10):
                x = random_point(rng, d0)
                assert evaluate_cf(cf, x) == evaluate_tuple(t, x)

    def test_uniqueness_under_permutation_and_scaling(self, rng):
        # two nets with the same response canonicalize identically
        from relugeo.network import effective_tuple

        for seed in range(25):
            n = random_net(rng.randint(1, 3), rng.randint(1, 4), seed + 500)
            t = effective_tuple(n)
            order = list(range(t.d1))
            rng.shuffle(order)
            shuffled = EffectiveTuple(tuple(t.neurons[i] for i in order), t.out_bias)
            scales = tuple(F(rng.randint(1, 4), rng.randint(1, 3)) for _ in order)
            assert canonicalize(t) == canonicalize(effective_tuple(expand(shuffled, scales)))


class TestEvaluateCf:
    def test_abs_at_negative(self):
        assert evaluate_cf(ABS, (-3,)) == 3

    def test_affine_only(self):
        cf = CanonicalForm((), (F(2), F(0)), F(1), 2)
        assert evaluate_cf(cf, (3, 9)) == 7

    def test_breakline_point(self):
        assert evaluate_cf(RELU, (0,)) == 0

    def test_dimension_check(self):
        with pytest.raises(DimensionMismatch):
            evaluate_cf(RELU, (1, 2))


class TestSigmaAffine:
    def test_relu_positive(self):
        assert sigma_affine(RELU, (1,)) == ((F(0),), F(0))

    def test_relu_negative(self):
        assert sigma_affine(RELU, (-1,)) == ((F(1),), F(0))

    def test_abs_negative(self):
        assert sigma_affine(ABS, (-1,)) == ((F(1),), F(0))

    def test_length_checked(self):
        with pytest.raises(LengthMismatch):
            sigma_affine(ABS, (1, 1))

    def test_rep1_identity(self, rng):
        # f(x) = sigma-tuple response + a_sigma.x + b_sigma, for every sigma
        for _ in range(20):
            d0 = rng.randint(1, 3)
            cf = random_form(rng, d0, rng.randint(1, 3))
            for sigma in product((1, -1), repeat=cf.n):
                a_s, b_s = sigma_affine(cf, sigma)
                t = sigma_tuple(cf, sigma)
                for _ in range(8):
                    x = random_point(rng, d0)
                    assert evaluate_cf(cf, x) == evaluate_tuple(t, x) + dot(a_s, x) + b_s


class TestEquivalence:
    def test_psi_scaling_equal(self):
        t = T([((1,), 0, 1, 1), ((1,), 0, 1, -1)])
        assert isinstance(equivalence(expand(t, (1, 1)), expand(t, (2, 3))), Equal)

    def test_up_to_affine(self):
        relu = T([((1,), 0, 1, 1)])
        shifted = EffectiveTuple(relu.neurons, F(1))
        result = equivalence(relu, shifted)
        assert isinstance(result, EqualUpToAffine)
        assert result.b_diff == -1
        assert result.a_diff == (F(0),)

    def test_different_with_witness(self):
        relu = T([((1,), 0, 1, 1)])
        absf = T([((1,), 0, 1, 1), ((1,), 0, 1, -1)])
        result = equivalence(relu, absf)
        assert isinstance(result, Different)
        assert result.witness == Breakline((1,), F(0))

    def test_accepts_forms_directly(self):
        assert isinstance(equivalence(RELU, RELU), Equal)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            equivalence(RELU, canonicalize(T([((1, 0), 0, 1, 1)])))
