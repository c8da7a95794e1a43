import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpd import classify, equilibria
from qpd.classify import GameKind, classify_quad, ordering_signature
from qpd.closedform import PayoffQuad, quad_entangled_sin, quad_product_x
from qpd.game import ClassicalPayoffMatrix, EntanglementConfig, GameConfig

HALF_PI = math.pi / 2


@pytest.fixture(scope="module")
def entangled_report():
    return classify.region_report_entangled()


@pytest.fixture(scope="module")
def product_report():
    return classify.region_report_product()


class TestClassifyQuad:
    def test_classical_pd(self):
        assert classify_quad(PayoffQuad(3, 0, 5, 1)).kind is GameKind.PRISONERS_DILEMMA

    def test_chicken_in_entangled_band(self):
        assert classify_quad(quad_entangled_sin(0.2)).kind is GameKind.CHICKEN

    def test_compromise_dilemma_from_rounded_values(self):
        q = PayoffQuad(R=2.1429, S=2.1429, T=2.8571, U=1.8571)
        assert classify_quad(q).kind is GameKind.COMPROMISE_DILEMMA

    @pytest.mark.parametrize("quad, kind", [
        (PayoffQuad(2.1, 2.25, 2.75, 1.9), GameKind.INVERTED_ORDER),
        (PayoffQuad(7 / 3, 5 / 3, 10 / 3, 5 / 3), GameKind.BOUNDARY_SU),
        (PayoffQuad(1.4, 4, 1, 2.6), GameKind.OTHER),
    ])
    def test_named_kinds(self, quad, kind):
        assert classify_quad(quad).kind is kind

    def test_other_keeps_ordering(self):
        cls = classify_quad(quad_product_x(0.5))
        assert cls.kind is GameKind.OTHER
        assert cls.ordering == "S=T>R=U"
        assert str(cls) == "Other(S=T>R=U)"

    def test_eps_controls_ties(self):
        q = PayoffQuad(2.0, 2.0 + 1e-6, 3.0, 1.0)
        assert ordering_signature(q, 1e-9) == "T>S>R>U"
        assert ordering_signature(q, 1e-5) == "T>R=S>U"

    def test_eps_must_be_positive(self):
        with pytest.raises(ValueError):
            classify_quad(PayoffQuad(1, 2, 3, 4), 0.0)

    @given(st.tuples(*[st.floats(-10, 10, allow_nan=False)] * 4), st.floats(1e-9, 1e-2))
    @settings(max_examples=300, deadline=None)
    def test_scale_invariance(self, values, eps):
        q = PayoffQuad(*values)
        assert classify_quad(q.scaled(10), eps * 10) == classify_quad(q, eps)

    @given(st.tuples(*[st.integers(-5, 5)] * 4))
    def test_signature_names_each_element_once(self, values):
        sig = ordering_signature(PayoffQuad(*map(float, values)))
        assert sorted(sig.replace(">", "").replace("=", "")) == ["R", "S", "T", "U"]


class TestQuadFromConfig:
    @pytest.mark.parametrize("xi", [0.0, 0.4, 1.2, HALF_PI])
    def test_matches_entangled_closed_form(self, xi):
        q = classify.quad_from_config(GameConfig(EntanglementConfig(xi, HALF_PI)))
        assert q.as_tuple() == pytest.approx(quad_entangled_sin(math.sin(xi)).as_tuple(), abs=1e-12)

    def test_classical_override(self):
        m = ClassicalPayoffMatrix(4, 1, 6, 2)
        q = classify.quad_from_config(GameConfig(EntanglementConfig(0.0, 0.0), m))
        assert q.as_tuple() == pytest.approx(m.as_tuple(), abs=1e-12)


class TestSweep:
    def test_product_first_row(self):
        rows = classify.sweep_quads("product", 4)
        assert tuple(rows[0]) == pytest.approx((0, 3, 0, 5, 1))
        assert rows[2, 0] == pytest.approx(2 / 3)
        assert tuple(rows[2, 1:]) == pytest.approx((1.6667, 3.3333, 1.6667, 2.3333), abs=5e-5)

    def test_entangled_last_row(self):
        rows = classify.sweep_quads("entangled", 11)
        assert tuple(rows[-1]) == pytest.approx((1, 3, 0, 5, 1))

    def test_samples_minimum(self):
        with pytest.raises(ValueError):
            classify.sweep_quads("product", 1)

    def test_unknown_measurement(self):
        with pytest.raises(ValueError):
            classify.sweep_quads("bell", 10)


class TestEntangledReport:
    def test_shape(self, entangled_report):
        assert len(entangled_report.intervals) == 3
        assert len(entangled_report.boundaries) == 2

    def test_sequence(self, entangled_report):
        kinds = [r.game.kind for r in entangled_report.intervals]
        assert kinds == [GameKind.INVERTED_ORDER, GameKind.CHICKEN, GameKind.PRISONERS_DILEMMA]
        assert [b.game.kind for b in entangled_report.boundaries] == [
            GameKind.COMPROMISE_DILEMMA, GameKind.BOUNDARY_SU]

    def test_roots(self, entangled_report):
        assert [b.at for b in entangled_report.boundaries] == pytest.approx([1 / 7, 1 / 3], abs=1e-12)

    def test_ne_sets(self, entangled_report):
        assert [r.ne for r in entangled_report.intervals] == [{"QD", "DQ"}, {"QQ"}, {"QQ"}]
        assert entangled_report.endpoints[0].ne == {"QD", "DQ", "CD", "DC"}
        assert all(r.ne_source == "analytic" for r in entangled_report.intervals)

    def test_numeric_ne_at_midpoints(self, entangled_report):
        for r in entangled_report.intervals:
            assert classify.numeric_ne_set("entangled", r.midpoint) == r.ne

    def test_numeric_report_equals_analytic(self, entangled_report):
        numeric = classify.region_report_entangled(ne_method="numeric")
        assert [r.ne for r in numeric.intervals] == [r.ne for r in entangled_report.intervals]
        assert [b.ne for b in numeric.boundaries] == [b.ne for b in entangled_report.boundaries]
        assert all(r.ne_source == "numeric" for r in numeric.intervals)


PRODUCT_REGIONS = [
    ((0, 1 / 3), GameKind.PRISONERS_DILEMMA, {"DD"}),
    ((1 / 3, 3 / 7), GameKind.CHICKEN, {"CD", "DC"}),
    ((3 / 7, 1 / 2), GameKind.INVERTED_ORDER, {"CD", "DC"}),
    ((1 / 2, 4 / 7), GameKind.OTHER, {"CD", "DC"}),
    ((4 / 7, 2 / 3), GameKind.OTHER, {"CD", "DC"}),
    ((2 / 3, 1), GameKind.OTHER, {"CC"}),
]


class TestProductReport:
    def test_table_rows(self, product_report):
        assert len(product_report.intervals) == 6
        for region, ((lo, hi), kind, ne) in zip(product_report.intervals, PRODUCT_REGIONS):
            assert (region.lo, region.hi) == pytest.approx((lo, hi), abs=1e-12)
            assert region.game.kind is kind
            assert region.ne == ne

    def test_never_pd_after_region_1(self, product_report):
        assert all(r.game.kind is not GameKind.PRISONERS_DILEMMA for r in product_report.intervals[1:])

    def test_boundaries(self, product_report):
        points = [b.at for b in product_report.boundaries]
        assert points == pytest.approx([1 / 3, 3 / 7, 1 / 2, 4 / 7, 2 / 3], abs=1e-12)
        orderings = [b.game.ordering for b in product_report.boundaries]
        assert orderings == ["T>R>S=U", "T>R=S>U", "S=T>R=U", "S>T=U>R", "S>U>R=T"]

    def test_eleven_games(self, product_report):
        assert product_report.distinct_games == 11

    def test_boundary_non_strict(self, product_report):
        first, last = product_report.boundaries[0], product_report.boundaries[-1]
        assert {"CD", "DC"} <= first.ne and {"CD", "DC"} <= last.ne
        assert not any(first.strict.values()) and not any(last.strict.values())

    def test_region_at(self, product_report):
        assert product_report.region_at(0.4).game.kind is GameKind.CHICKEN
        assert product_report.region_at(1 / 3) is None

    def test_numeric_ne_at_midpoints(self, product_report):
        for r in product_report.intervals:
            assert classify.numeric_ne_set("product", r.midpoint) == r.ne

    def test_sampling_idempotent(self, product_report):
        coarse = classify.region_report_product(samples=150)
        fine = classify.region_report_product(samples=800)
        for rep in (coarse, fine):
            assert [r.game for r in rep.intervals] == [r.game for r in product_report.intervals]
            assert [b.at for b in rep.boundaries] == pytest.approx(
                [b.at for b in product_report.boundaries], abs=1 / 150)

    def test_boundary_on_grid_point(self):
        # 401 samples put x = 1/2 exactly on the grid
        rep = classify.region_report_product(samples=401)
        assert [b.at for b in rep.boundaries] == pytest.approx([1 / 3, 3 / 7, 1 / 2, 4 / 7, 2 / 3], abs=1e-12)

    def test_samples_minimum(self):
        with pytest.raises(ValueError):
            classify.region_report_product(samples=50)


def test_describe():
    cls, quad, ne = classify.describe("product", 0.4)
    assert str(cls) == "Chicken"
    assert ne == {"CD", "DC"}
    assert quad.as_tuple() == pytest.approx((2.2, 2.0, 3.0, 1.8))


def test_candidate_profiles():
    assert classify.candidate_profiles("product") == equilibria.CLASSICAL_PROFILES
    assert len(classify.candidate_profiles("entangled")) == 9


def test_product_quantum_move_is_payoff_equivalent_to_cooperate():
    # Reason the product report restricts to classical profiles.
    f = equilibria.payoff_function(classify.config_at("product", 0.45))
    t, p = np.meshgrid(np.linspace(0, math.pi, 9), np.linspace(0, HALF_PI, 9))
    for opp in ((0.0, 0.0), (math.pi, 0.0)):
        assert np.allclose(f(0.0, HALF_PI, *opp)[0], f(0.0, 0.0, *opp)[0])
    assert np.allclose(f(t, p, 0.0, HALF_PI)[0], f(t, p, 0.0, 0.0)[0])
