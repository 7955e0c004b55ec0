"""Piecewise-affine expression language: parsing, evaluation, breakline extraction."""

from fractions import Fraction

import pytest

from relugeo.errors import DimensionMismatch, NotFlat, ParseError
from relugeo.network import Breakline
from relugeo.pwa import (
    Affine,
    Max,
    Min,
    Neg,
    Relu,
    Scale,
    Sum,
    eval_pwa,
    expr_dim,
    flat_breaklines,
    parse_pwa,
    pretty,
)

F = Fraction


class TestParse:
    def test_relu_leaf(self):
        assert parse_pwa("relu(affine([1],0))") == Relu(Affine((F(1),), F(0)))

    def test_sum_of_max_and_affine(self):
        got = parse_pwa("max(affine([1,0],0), affine([0,1],0)) + affine([0,0],1)")
        assert got == Sum(
            (
                Max(Affine((F(1), F(0)), F(0)), Affine((F(0), F(1)), F(0))),
                Affine((F(0), F(0)), F(1)),
            )
        )

    def test_unbalanced_paren_position(self):
        with pytest.raises(ParseError) as err:
            parse_pwa("relu(")
        assert err.value.position == 6

    def test_scale_and_neg(self):
        got = parse_pwa("-2 * relu(affine([1],0)) + -relu(affine([1],1))")
        assert got == Sum(
            (Scale(F(-2), Relu(Affine((F(1),), F(0)))), Neg(Relu(Affine((F(1),), F(1)))))
        )

    def test_rational_and_decimal_literals(self):
        got = parse_pwa("1/2 * affine([3], 0.25)")
        assert got == Scale(F(1, 2), Affine((F(3),), F(1, 4)))

    def test_negative_affine_coefficients(self):
        assert parse_pwa("affine([-1, 2], -3)") == Affine((F(-1), F(2)), F(-3))

    def test_bare_scalar_rejected(self):
        with pytest.raises(ParseError):
            parse_pwa("3 + relu(affine([1],0))")

    def test_product_of_functions_rejected(self):
        with pytest.raises(ParseError):
            parse_pwa("relu(affine([1],0)) * relu(affine([1],0))")

    def test_position_within_input(self):
        for text in ("max(affine([1],0)", "relu)", "affine([1)"):
            with pytest.raises(ParseError) as err:
                parse_pwa(text)
            assert 1 <= err.value.position <= len(text) + 1


class TestPretty:
    CORPUS = [
        "relu(affine([1], 0))",
        "max(affine([1, 0], 0), affine([0, 1], 0)) + affine([0, 0], 1)",
        "-2 * relu(affine([1/2], -3)) + min(affine([1], 0), affine([-1], 1))",
        "1/3 * (relu(affine([1], 0)) + relu(affine([2], 1)))",
    ]

    @pytest.mark.parametrize("text", CORPUS)
    def test_round_trip(self, text):
        e = parse_pwa(text)
        assert parse_pwa(pretty(e)) == e


class TestEval:
    def test_relu_negative(self):
        assert eval_pwa(parse_pwa("relu(affine([1],0))"), (-1,)) == 0

    def test_max(self):
        assert eval_pwa(parse_pwa("max(affine([1,0],0), affine([0,1],0))"), (2, 5)) == 5

    def test_median_encoding(self):
        # median(0, y, x+y), the three-breakline function used as the
        # non-representable example; check against the sort-based definition
        e = parse_pwa(
            "max(min(affine([0,1],0), affine([1,1],0)),"
            " min(max(affine([0,1],0), affine([1,1],0)), affine([0,0],0)))"
        )
        for x in range(-3, 4):
            for y in range(-3, 4):
                assert eval_pwa(e, (x, y)) == sorted([0, y, x + y])[1]

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            eval_pwa(parse_pwa("relu(affine([1],0))"), (1, 2))


class TestExprDim:
    def test_consistent(self):
        assert expr_dim(parse_pwa("max(affine([1,0],0), affine([0,1],0))")) == 2

    def test_inconsistent_rejected(self):
        with pytest.raises(DimensionMismatch):
            expr_dim(parse_pwa("relu(affine([1],0)) + relu(affine([1,0],0))"))


class TestFlatBreaklines:
    def test_relu_leaf(self):
        assert flat_breaklines(parse_pwa("relu(affine([1],0))")) == [Breakline((1,), F(0))]

    def test_max_difference_primitive(self):
        got = flat_breaklines(parse_pwa("max(affine([1,0],0), affine([0,1],0))"))
        assert got == [Breakline((1, -1), F(0))]

    def test_nested_rejected(self):
        nested = parse_pwa("relu(max(affine([1],0), affine([-1],0)))")
        with pytest.raises(NotFlat):
            flat_breaklines(nested)

    def test_deduplication(self):
        got = flat_breaklines(parse_pwa("relu(affine([1],0)) + relu(affine([2],0))"))
        assert got == [Breakline((1,), F(0))]

    def test_constant_argument_contributes_none(self):
        assert flat_breaklines(parse_pwa("max(affine([1],0), affine([1],2))")) == []
