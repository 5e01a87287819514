import pytest

from qolab.errors import DegreeError, NonUniqueMinimizer, ZeroPolynomialError
from qolab.gnp import Straightness, WeightSystem, formal_order, straightness_classify
from qolab.parsing import VariableDecl, parse_poly
from qolab.poly_core import YPoly, vec_scale

F4 = "y^4 - 2*x1*y^2 - 4*x1^2*x2*y + x1^2 - x1^3*x2^2"
QUARTIC_WEIGHTS = WeightSystem.of([(4, 0), (0, 4)], [(2, 0), (5, 2)])


def poly(text: str, e: int = 1) -> YPoly:
    return parse_poly(text, VariableDecl.default(e))


class TestFormalOrder:
    def test_quartic_last_coefficient(self):
        w = WeightSystem.of([(2, 0), (0, 2)], [(1, 0)])
        beta = poly("-4*x1^2*x2*y - x1^3*x2^2", 2)
        assert formal_order(w, [poly("y", 2)], beta) == (5, 2)

    def test_single_variable(self):
        w = WeightSystem.of([(2,)], [(3,)])
        assert formal_order(w, [poly("y")], poly("-x^3")) == (6,)

    def test_without_bases(self):
        w = WeightSystem.of([(1, 0), (0, 1)], [])
        assert formal_order(w, [], poly("x1^2 + x1*x2", 2)) == (2, 0)

    def test_tie_is_reported_with_both_supports(self):
        w = WeightSystem.of([(1,)], [(1,)])
        with pytest.raises(NonUniqueMinimizer) as err:
            formal_order(w, [poly("y")], poly("y + x"))
        assert sorted(err.value.witnesses) == [(0,), (1,)]

    def test_coefficients_must_be_free_of_y(self):
        w = WeightSystem.of([(1,)], [(1,)])
        with pytest.raises(DegreeError):
            formal_order(w, [poly("y^2 - x")], poly("y"))

    def test_weight_count_must_match(self):
        with pytest.raises(DegreeError):
            formal_order(WeightSystem.of([(1,)], []), [poly("y")], poly("y"))

    def test_zero(self):
        with pytest.raises(ZeroPolynomialError):
            formal_order(WeightSystem.of([(1,)], [(1,)]), [poly("y")], YPoly(1))

    def test_scaled(self):
        w = WeightSystem.of([(2,)], [(3,)]).scaled(2)
        assert w == WeightSystem.of([(4,)], [(6,)])


class TestStraightness:
    def setup_method(self):
        self.w = WeightSystem.of([(1,)], [(1,)])
        self.y = poly("y")

    def test_strictly_straight(self):
        data = straightness_classify(poly("y^2 + x^2*y + x^2"), self.w, [self.y], self.y, 2)
        assert data.classification == Straightness.STRICTLY_STRAIGHT
        assert data.base_order == (1,)
        assert [p.k for p in data.points] == [0, 1, 2]

    def test_middle_point_on_the_line(self):
        data = straightness_classify(poly("y^2 + x*y + x^2"), self.w, [self.y], self.y, 2)
        assert data.classification == Straightness.STRAIGHT

    def test_end_point_off_the_line(self):
        w = WeightSystem.of([(2,)], [(1,)])
        data = straightness_classify(poly("y^2 + x^2*y + x^2"), w, [self.y], self.y, 2)
        assert data.classification == Straightness.NOT_STRAIGHT

    def test_missing_constant_term(self):
        data = straightness_classify(poly("y^2 + x^2*y"), self.w, [self.y], self.y, 2)
        assert data.classification == Straightness.NOT_STRAIGHT

    def test_degree_must_match(self):
        with pytest.raises(DegreeError):
            straightness_classify(poly("y^3 + x^3"), self.w, [self.y], self.y, 2)


class TestPolygonInvariance:
    def setup_method(self):
        self.G = [poly("y", 2), poly("y^2 - x1", 2)]
        self.base = self.G[1]

    def classify(self, text: str, w: WeightSystem = QUARTIC_WEIGHTS) -> Straightness:
        return straightness_classify(poly(text, 2), w, self.G, self.base, 2).classification

    def test_quartic_is_strictly_straight(self):
        data = straightness_classify(poly(F4, 2), QUARTIC_WEIGHTS, self.G, self.base, 2)
        assert data.classification == Straightness.STRICTLY_STRAIGHT
        assert data.base_order == (5, 2)
        assert [p.order for p in data.points if p.k == 2] == [(10, 4)]

    @pytest.mark.parametrize("s", [2, 3, 7])
    def test_scaling_the_weights(self, s):
        scaled = QUARTIC_WEIGHTS.scaled(s)
        beta = poly("-4*x1^2*x2*y - x1^3*x2^2", 2)
        assert formal_order(scaled, self.G, beta) == vec_scale(formal_order(QUARTIC_WEIGHTS, self.G, beta), s)
        for text in (F4, F4 + " + x1^2", F4 + " + x1^4"):
            assert self.classify(text, scaled) == self.classify(text)

    @pytest.mark.parametrize("s", [2, 5])
    def test_scaling_keeps_each_classification(self, s):
        w, y = WeightSystem.of([(1,)], [(1,)]), poly("y")
        for text in ("y^2 + x^2*y + x^2", "y^2 + x*y + x^2", "y^2 + x^2*y"):
            plain = straightness_classify(poly(text), w, [y], y, 2).classification
            assert straightness_classify(poly(text), w.scaled(s), [y], y, 2).classification == plain

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_order_of_a_power_of_the_base(self, k):
        assert formal_order(QUARTIC_WEIGHTS, self.G, self.base**k) == vec_scale((5, 2), k)
        w = WeightSystem.of([(2,)], [(3,)])
        assert formal_order(w, [poly("y")], poly("y") ** k) == (3 * k,)

    def test_perturbing_the_last_coefficient_below_the_line(self):
        assert self.classify(F4 + " + x1^2") == Straightness.NOT_STRAIGHT
        w, y = WeightSystem.of([(2,)], [(3,)]), poly("y")
        assert straightness_classify(poly("y^2 - x^3"), w, [y], y, 2).classification == Straightness.STRICTLY_STRAIGHT
        assert straightness_classify(poly("y^2 - x^3 + x^2"), w, [y], y, 2).classification == Straightness.NOT_STRAIGHT

    def test_perturbing_above_the_line_changes_nothing(self):
        assert self.classify(F4 + " + x1^4") == Straightness.STRICTLY_STRAIGHT
