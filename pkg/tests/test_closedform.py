import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import brentq

from qpd import closedform, game
from qpd.closedform import PayoffQuad, quad_entangled_sin, quad_product_x
from qpd.game import EntanglementConfig, GameConfig, StrategyParams

from conftest import random_strategy_arrays

HALF_PI = math.pi / 2

thetas = st.floats(0, math.pi)
phis = st.floats(0, HALF_PI)


def sim(xi, delta, a, b):
    return game.payoff_pair(GameConfig(EntanglementConfig(xi, delta)), a, b)


class TestEntangled:
    def test_qq_maximal(self):
        assert closedform.payoff_entangled(HALF_PI, "Q", "Q") == pytest.approx((3, 3), abs=1e-12)

    @pytest.mark.parametrize("xi", [0.0, 0.3, 1.0, HALF_PI])
    def test_dd(self, xi):
        expected = 2 - math.sin(xi)
        assert closedform.payoff_entangled(xi, "D", "D") == pytest.approx((expected, expected), abs=1e-12)

    def test_interior_point_matches_simulation(self):
        a = StrategyParams(math.pi / 3, math.pi / 8)
        b = StrategyParams(math.pi / 4, math.pi / 5)
        xi = math.pi / 3
        assert closedform.payoff_entangled(xi, a, b) == pytest.approx(sim(xi, HALF_PI, a, b), abs=1e-9)

    def test_matches_simulation_random(self, rng):
        n = 1000
        xi = rng.uniform(0, HALF_PI, n)
        ta, pa, tb, pb = random_strategy_arrays(rng, n)
        worst = 0.0
        for i in range(n):
            a, b = StrategyParams(ta[i], pa[i]), StrategyParams(tb[i], pb[i])
            got = closedform.payoff_entangled(xi[i], a, b)
            want = sim(xi[i], HALF_PI, a, b)
            worst = max(worst, abs(got[0] - want[0]), abs(got[1] - want[1]))
        assert worst <= 1e-9

    def test_bob_uses_swapped_interference_sign(self):
        # Keeping sin(phi_a - phi_b) unswapped in Bob's payoff disagrees with
        # the simulation whenever the phases differ.
        a, b, xi = StrategyParams(1.0, 0.2), StrategyParams(2.0, 1.1), 0.9
        s = math.sin(xi)
        bob_sim = sim(xi, HALF_PI, a, b)[1]
        unswapped = (closedform.entangled_alice(s, b.theta, b.phi, a.theta, a.phi)
                     - 2.5 * math.sin(a.theta) * math.sin(b.theta) * math.sin(a.phi - b.phi))
        assert closedform.payoff_entangled(xi, a, b)[1] == pytest.approx(bob_sim, abs=1e-12)
        assert abs(unswapped - bob_sim) > 0.1

    def test_range(self):
        with pytest.raises(ValueError):
            closedform.payoff_entangled(2.0, "C", "C")


class TestProduct:
    @pytest.mark.parametrize("xi", [0.0, 0.8, HALF_PI, 2.5, math.pi])
    def test_pure_diagonal_profiles(self, xi):
        x = math.sin(xi / 2) ** 2
        assert closedform.payoff_product(xi, "C", "C") == pytest.approx((3 - 2 * x,) * 2, abs=1e-12)
        assert closedform.payoff_product(xi, "D", "D") == pytest.approx((1 + 2 * x,) * 2, abs=1e-12)

    def test_interior_point_matches_simulation(self):
        a, b, xi = StrategyParams(1.1, 0.3), StrategyParams(2.2, 1.4), 2 * math.pi / 5
        assert closedform.payoff_product(xi, a, b) == pytest.approx(sim(xi, 0.0, a, b), abs=1e-9)

    def test_matches_simulation_random(self, rng):
        n = 1000
        xi = rng.uniform(0, math.pi, n)
        ta, pa, tb, pb = random_strategy_arrays(rng, n)
        worst = 0.0
        for i in range(n):
            a, b = StrategyParams(ta[i], pa[i]), StrategyParams(tb[i], pb[i])
            got = closedform.payoff_product(xi[i], a, b)
            want = sim(xi[i], 0.0, a, b)
            worst = max(worst, abs(got[0] - want[0]), abs(got[1] - want[1]))
        assert worst <= 1e-9


class TestQuads:
    def test_entangled_unentangled(self):
        assert quad_entangled_sin(0.0) == PayoffQuad(2, 2.5, 2.5, 2)

    def test_entangled_r_equals_s(self):
        q = closedform.quad_entangled(math.asin(1 / 7))
        assert q.R == pytest.approx(15 / 7, abs=1e-14)
        assert q.S == pytest.approx(15 / 7, abs=1e-14)

    def test_entangled_maximal_is_classical(self):
        assert closedform.quad_entangled(HALF_PI).as_tuple() == pytest.approx((3, 0, 5, 1), abs=1e-15)

    def test_product_classical(self):
        assert quad_product_x(0.0) == PayoffQuad(3, 0, 5, 1)

    @pytest.mark.parametrize("x, expected", [
        (1 / 3, (2.3333, 1.6667, 3.3333, 1.6667)),
        (3 / 7, (2.1429, 2.1429, 2.8571, 1.8571)),
        (1 / 2, (2.0, 2.5, 2.5, 2.0)),
        (4 / 7, (1.8571, 2.8571, 2.1429, 2.1429)),
        (2 / 3, (1.6667, 3.3333, 1.6667, 2.3333)),
    ])
    def test_product_special_points(self, x, expected):
        assert quad_product_x(x).as_tuple() == pytest.approx(expected, abs=5e-5)

    @given(st.floats(0, HALF_PI))
    @settings(max_examples=200, deadline=None)
    def test_entangled_quad_is_pure_profile_payoffs(self, xi):
        q = closedform.quad_entangled(xi)
        assert q.R == pytest.approx(closedform.payoff_entangled(xi, "C", "C")[0], abs=1e-12)
        assert q.S == pytest.approx(closedform.payoff_entangled(xi, "C", "D")[0], abs=1e-12)
        assert q.T == pytest.approx(closedform.payoff_entangled(xi, "D", "C")[0], abs=1e-12)
        assert q.U == pytest.approx(closedform.payoff_entangled(xi, "D", "D")[0], abs=1e-12)

    @given(st.floats(0, math.pi))
    @settings(max_examples=200, deadline=None)
    def test_product_quad_is_pure_profile_payoffs(self, xi):
        q = closedform.quad_product(xi)
        assert q.R == pytest.approx(closedform.payoff_product(xi, "C", "C")[0], abs=1e-12)
        assert q.S == pytest.approx(closedform.payoff_product(xi, "C", "D")[0], abs=1e-12)
        assert q.T == pytest.approx(closedform.payoff_product(xi, "D", "C")[0], abs=1e-12)
        assert q.U == pytest.approx(closedform.payoff_product(xi, "D", "D")[0], abs=1e-12)

    def test_entangled_crossings(self):
        r_s = brentq(lambda s: quad_entangled_sin(s).R - quad_entangled_sin(s).S, 0.01, 0.3, xtol=1e-15)
        s_u = brentq(lambda s: quad_entangled_sin(s).S - quad_entangled_sin(s).U, 0.2, 0.5, xtol=1e-15)
        assert r_s == pytest.approx(1 / 7, abs=1e-12)
        assert s_u == pytest.approx(1 / 3, abs=1e-12)
        grid = np.linspace(0, 1, 1001)
        assert all(quad_entangled_sin(s).T >= quad_entangled_sin(s).R for s in grid)
        assert all(quad_entangled_sin(s).T > quad_entangled_sin(s).R for s in grid[1:])

    @pytest.mark.parametrize("pair, root, bracket", [
        (("S", "U"), 1 / 3, (0.2, 0.4)),
        (("R", "S"), 3 / 7, (0.35, 0.45)),
        (("S", "T"), 1 / 2, (0.45, 0.55)),
        (("T", "U"), 4 / 7, (0.52, 0.62)),
        (("R", "T"), 2 / 3, (0.6, 0.7)),
    ])
    def test_product_crossings(self, pair, root, bracket):
        i, j = pair

        def diff(x):
            d = quad_product_x(x).as_dict()
            return d[i] - d[j]

        assert brentq(diff, *bracket, xtol=1e-15) == pytest.approx(root, abs=1e-12)

    def test_scaled(self):
        assert PayoffQuad(1, 2, 3, 4).scaled(10) == PayoffQuad(10, 20, 30, 40)


@given(thetas, phis, thetas, phis, st.floats(0, HALF_PI))
@settings(max_examples=300, deadline=None)
def test_entangled_vectorized_matches_scalar(ta, pa, tb, pb, xi):
    a, b = StrategyParams(ta, pa), StrategyParams(tb, pb)
    got = closedform.entangled_alice(np.full(3, math.sin(xi)), ta, pa, tb, pb)
    assert np.allclose(got, closedform.payoff_entangled(xi, a, b)[0], atol=1e-12)
