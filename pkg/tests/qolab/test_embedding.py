from fractions import Fraction

import pytest

from qolab.errors import AlgebraicExtensionRequired, ChainBlowUp, DegreeError, NonMonicError
from qolab.embedding import (
    ALMOST_QO,
    COORDINATE,
    FUEL_EXHAUSTED,
    HAS_QO,
    NO_QO,
    NOT_ALMOST_QO,
    NOT_APPLICABLE,
    NOT_COORDINATE,
    PLANE_NAMES,
    AutomorphismChain,
    Permute,
    Scale,
    TranslateVar,
    almost_qo_decide,
    embedding_decide,
    newton_polygon,
    qo_property_decide,
    quasihomog_factor_count,
    tame_pair_reduce,
    verify_chain,
)
from qolab.parsing import VariableDecl, format_laurent, parse_laurent, parse_poly
from qolab.poly_core import LaurentPoly, YPoly


def poly(text: str, e: int = 1) -> YPoly:
    return parse_poly(text, VariableDecl.default(e))


def plane(text: str) -> LaurentPoly:
    return parse_laurent(text, PLANE_NAMES)


X, Y = plane("X"), plane("Y")


class TestChains:
    def setup_method(self):
        self.names = ("x1", "x2", "y")
        self.chain = AutomorphismChain(
            (
                TranslateVar(0, Fraction(-1), parse_laurent("y^2", self.names)),
                Scale(2, Fraction(3), 3),
                Permute((1, 0, 2)),
            )
        )

    def test_inverse_undoes_the_chain(self):
        p = parse_laurent("x1^2*y + x2 - 7", self.names)
        assert self.chain.inverse().apply(self.chain.apply(p)) == p
        assert self.chain.apply(self.chain.inverse().apply(p)) == p

    def test_images(self):
        images = self.chain.images(3)
        assert images[1] == parse_laurent("x1", self.names)
        assert images[2] == parse_laurent("3*y", self.names)

    def test_json_feeds_back(self):
        data = self.chain.to_json(self.names)
        assert data[0] == {"translate_var": "x1", "by": "y^2 - x1"}
        assert data[1] == {"scale": "y", "by": "3"}
        assert data[2] == {"permute": ["x2", "x1", "y"]}
        assert AutomorphismChain.from_json(data, self.names) == self.chain

    def test_then(self):
        extended = self.chain.then(Scale(0, Fraction(2), 3)).then(None)
        assert len(extended) == 4

    def test_blow_up_guard(self):
        chain = AutomorphismChain((TranslateVar(1, Fraction(1), parse_laurent("x^10", ("x", "y"))),))
        with pytest.raises(ChainBlowUp):
            verify_chain(chain, poly("y^30"), max_degree=50)

    def test_invalid_maps(self):
        with pytest.raises(DegreeError):
            TranslateVar(0, Fraction(0), LaurentPoly.zero(2))
        with pytest.raises(DegreeError):
            TranslateVar(0, Fraction(1), X)
        with pytest.raises(DegreeError):
            Permute((0, 0))


class TestEmbedding:
    def test_parabola_is_a_coordinate(self):
        result = embedding_decide(poly("y^2 - x1", 2))
        assert result.outcome == COORDINATE
        assert result.k == 1
        assert result.chain.to_json(("x1", "x2", "y")) == [{"translate_var": "x1", "by": "y^2 - x1"}]
        assert result.image == poly("x1", 2)
        assert result.in_plane

    def test_cube_is_a_coordinate(self):
        result = embedding_decide(poly("y^3 - x"))
        assert result.outcome == COORDINATE
        assert result.image == poly("x")
        assert result.stages[0].c == -1

    def test_two_stage_cascade(self):
        f = poly("y^4 - 2*x*y^2 - y + x^2")
        result = embedding_decide(f)
        assert result.outcome == COORDINATE
        assert result.criterion.h == 2
        assert result.criterion.r == ((-2,), (-1,))
        assert result.chain.to_json(("x", "y")) == [
            {"translate_var": "x", "by": "y^2 - x"},
            {"translate_var": "y", "by": "x^2 - y"},
        ]
        assert result.image == poly("y")
        assert verify_chain(result.chain, f) == result.image

    def test_depression_comes_first(self):
        f = poly("y^2 + 2*y + 1 - x")
        result = embedding_decide(f)
        assert result.outcome == COORDINATE
        assert result.chain.maps[0] == TranslateVar(1, Fraction(1), LaurentPoly.constant(2, -1))
        assert verify_chain(result.chain, f) == poly("x")

    @pytest.mark.parametrize("text, target", [("y^2 - x1*x2", "(1, 1)"), ("y^2 - x1^3", "(3, 0)")])
    def test_not_a_coordinate(self, text, target):
        result = embedding_decide(poly(text, 2))
        assert result.outcome == NOT_COORDINATE
        assert target in result.reason
        assert "unit vector" in result.reason

    def test_not_quasi_ordinary_at_infinity(self):
        result = embedding_decide(poly("y^2 - x1 - x2", 2))
        assert result.outcome == NOT_APPLICABLE
        assert not result.qo.is_qo

    def test_requires_monic(self):
        with pytest.raises(NonMonicError):
            embedding_decide(poly("2*y^2 - x"))


class TestTamePairs:
    @pytest.mark.parametrize("p1, p2", [("X + Y", "Y"), ("X + Y^2", "Y"), ("X^2 - Y", "X"), ("X + Y", "X - Y")])
    def test_pairs(self, p1, p2):
        P1, P2 = plane(p1), plane(p2)
        result = tame_pair_reduce(P1, P2)
        assert result.is_pair
        assert result.chain.apply(P1) == X
        assert result.chain.apply(P2) == Y

    def test_translation_chain(self):
        result = tame_pair_reduce(plane("X + Y"), Y)
        assert result.chain.to_json(PLANE_NAMES) == [{"translate_var": "X", "by": "X - Y"}]

    @pytest.mark.parametrize("p1, p2", [("X", "X"), ("X^2", "Y"), ("X^2 - Y^3", "X^2 - 2*Y^3")])
    def test_not_pairs(self, p1, p2):
        result = tame_pair_reduce(plane(p1), plane(p2))
        assert not result.is_pair
        assert result.stuck is not None


class TestQuasiHomogeneousFactors:
    def test_three_factors(self):
        assert quasihomog_factor_count(plane("X^2*Y + X*Y^2"), (1, 1)).r == 3

    def test_two_lines(self):
        count = quasihomog_factor_count(plane("X^2 - Y^2"), (1, 1))
        assert count.r == 2
        assert count.explicit_factors() == [X + Y, X - Y]

    def test_repeated_factor(self):
        count = quasihomog_factor_count(plane("(X^2 - Y^3)^2"), (3, 2))
        assert count.r == 1
        assert count.multiplicities == [2]
        assert count.explicit_factors() == [plane("X^2 - Y^3")]

    def test_irrational_factor(self):
        count = quasihomog_factor_count(plane("X^2 - 2*Y^2"), (1, 1))
        assert count.r == 2
        with pytest.raises(AlgebraicExtensionRequired):
            count.explicit_factors()

    def test_not_quasi_homogeneous(self):
        with pytest.raises(DegreeError):
            quasihomog_factor_count(plane("X + Y^2"), (1, 1))


class TestQOProperty:
    def test_newton_polygon(self):
        polygon = newton_polygon(plane("X^2 - Y"))
        (edge,) = polygon.negative_edges
        assert {edge.start, edge.end} == {(0, 1), (2, 0)}
        assert edge.weights == (1, 2)

    def test_monomial(self):
        result = qo_property_decide(plane("X*Y"))
        assert result.outcome == HAS_QO
        assert result.branch == "1"
        assert result.branch_label == "dominant_monomial"
        assert result.dominant == (1, 1)
        assert len(result.chain) == 0

    def test_square_of_a_line(self):
        result = qo_property_decide(plane("(X + Y)^2"))
        assert result.outcome == HAS_QO
        assert [step.branch for step in result.steps] == ["2.2.5"]
        assert result.chain.to_json(PLANE_NAMES) == [{"translate_var": "X", "by": "X - Y"}]
        assert result.image == plane("X^2")

    def test_two_lines(self):
        result = qo_property_decide(plane("X^2 - Y^2"))
        assert result.outcome == HAS_QO
        assert [step.branch for step in result.steps] == ["2.2.4"]
        assert result.steps[0].branch_label == "two_factor_pair"
        assert result.steps[0].pair == (X + Y, X - Y)
        assert format_laurent(result.image, ("w1", "w2")) == "w1*w2"

    def test_line(self):
        result = qo_property_decide(plane("X + Y"))
        assert result.outcome == HAS_QO
        assert [step.branch for step in result.steps] == ["2.2.5"]
        assert result.image == X

    def test_parabola_needs_a_swap(self):
        result = qo_property_decide(plane("X^2 - Y"))
        assert result.outcome == HAS_QO
        assert result.steps[0].pair == (plane("X^2 - Y"), X)
        assert any(isinstance(m, Permute) for m in result.chain.maps)
        assert result.image == X

    def test_three_factors(self):
        result = qo_property_decide(plane("X*Y*(X + Y)"))
        assert result.outcome == NO_QO
        assert result.branch == "2.2.1"
        assert result.branch_label == "many_factors"
        assert result.r == 3

    def test_two_factors_without_a_pair(self):
        result = qo_property_decide(plane("(X^2 - Y^3)*(X^2 - 2*Y^3)"))
        assert result.outcome == NO_QO
        assert result.branch == "2.2.2"
        assert result.branch_label == "two_factors_not_a_pair"

    def test_several_edges(self):
        result = qo_property_decide(plane("Y^4 + X^2*Y^3 + X^4"))
        assert result.outcome == NO_QO
        assert result.branch == "2.1"
        assert result.branch_label == "several_edges"

    def test_cusp_is_not_a_pair(self):
        result = qo_property_decide(plane("X^2 - Y^3"))
        assert result.outcome == NO_QO
        assert result.branch == "2.2.3"
        assert result.r == 1

    def test_conjugate_factors_decided_without_them(self):
        result = qo_property_decide(plane("X^4 - 2*Y^2"))
        assert result.outcome == NO_QO
        assert result.branch == "2.2.2"
        assert result.r == 2

    def test_conjugate_lines_need_an_extension(self):
        with pytest.raises(AlgebraicExtensionRequired):
            qo_property_decide(plane("X^2 - 2*Y^2"))

    def test_out_of_fuel(self):
        result = qo_property_decide(plane("(X + Y)^2"), fuel=0)
        assert result.outcome == FUEL_EXHAUSTED
        assert result.branch == "2.2.5"

    def test_final_shape_is_a_monomial_times_a_unit(self):
        for text in ("X*Y", "(X + Y)^2", "X^2 - Y^2", "X + Y"):
            result = qo_property_decide(plane(text))
            image = result.image
            assert image.coeff(image.max_exponent()) != 0
            assert result.chain.apply(plane(text)) == image


class TestAlmostQuasiOrdinary:
    def test_cube_of_a_sum(self):
        f = poly("y^3 - x1 - x2", 2)
        result = almost_qo_decide(f)
        assert result.outcome == ALMOST_QO
        assert result.image == poly("y^3 - x1", 2)
        assert result.qo_property.chain.to_json(PLANE_NAMES) == [{"translate_var": "X", "by": "X - Y"}]
        assert embedding_decide(result.image).outcome == COORDINATE

    def test_discriminant_without_the_property(self):
        result = almost_qo_decide(poly("y^2 - x1^2*x2 - x1*x2^2", 2))
        assert result.outcome == NOT_ALMOST_QO
        assert result.qo_property.branch == "2.2.1"

    def test_only_two_variables(self):
        with pytest.raises(DegreeError):
            almost_qo_decide(poly("y^3 - x"))
