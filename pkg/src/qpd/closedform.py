"""Analytic payoffs for the default (3, 0, 5, 1) matrix.

Two measurement regimes have closed forms: the entangled basis
(``delta = pi/2``) and the product basis (``delta = 0``). Both are
trigonometric polynomials in the strategy angles and are used as the fast
path in sweeps and as an independent check on :mod:`qpd.game`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from qpd.game import HALF_PI, NamedStrategy, StrategyParams, _check_range, as_strategy

StrategyLike = StrategyParams | NamedStrategy | str


@dataclass(frozen=True)
class PayoffQuad:
    """Effective strategic-form elements (R, S, T, U) of the quantized game."""

    R: float
    S: float
    T: float
    U: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.R, self.S, self.T, self.U)

    def as_dict(self) -> dict[str, float]:
        return {"R": self.R, "S": self.S, "T": self.T, "U": self.U}

    def scaled(self, factor: float) -> PayoffQuad:
        return PayoffQuad(*(factor * v for v in self.as_tuple()))


def _half_angle_weights(theta: NDArray) -> tuple[NDArray, NDArray]:
    return np.cos(theta / 2) ** 2, np.sin(theta / 2) ** 2


def entangled_alice(
    sin_xi: ArrayLike, theta_a: ArrayLike, phi_a: ArrayLike, theta_b: ArrayLike, phi_b: ArrayLike
) -> NDArray[np.float64]:
    """Alice's entangled-measurement payoff, broadcast over all arguments."""
    s = np.asarray(sin_xi, float)
    ta, pa, tb, pb = (np.asarray(v, float) for v in (theta_a, phi_a, theta_b, phi_b))
    ca, sa = _half_angle_weights(ta)
    cb, sb = _half_angle_weights(tb)
    interference = np.sin(ta) * np.sin(tb)
    return (
        (2 + s * np.cos(2 * (pa + pb))) * ca * cb
        + 2.5 * (1 + s * np.cos(2 * pb)) * sa * cb
        + 2.5 * (1 - s * np.cos(2 * pa)) * ca * sb
        + (2 - s) * sa * sb
        - (2 + s) / 4 * interference * np.sin(pa + pb)
        - 1.25 * interference * np.sin(pa - pb)
    )


def product_alice(
    xi: ArrayLike, theta_a: ArrayLike, phi_a: ArrayLike, theta_b: ArrayLike, phi_b: ArrayLike
) -> NDArray[np.float64]:
    """Alice's product-measurement payoff, broadcast over all arguments."""
    xi = np.asarray(xi, float)
    ta, pa, tb, pb = (np.asarray(v, float) for v in (theta_a, phi_a, theta_b, phi_b))
    x = np.sin(xi / 2) ** 2
    ca, sa = _half_angle_weights(ta)
    cb, sb = _half_angle_weights(tb)
    return (
        (3 - 2 * x) * ca * cb
        + 5 * (1 - x) * sa * cb
        + 5 * x * ca * sb
        + (1 + 2 * x) * sa * sb
        - 0.25 * np.sin(xi) * np.sin(ta) * np.sin(tb) * np.sin(pa + pb)
    )


def payoff_entangled(xi: float, sA: StrategyLike, sB: StrategyLike) -> tuple[float, float]:
    """``(Alice, Bob)`` payoffs for the entangled measurement.

    The game is symmetric under exchanging the players, so Bob's payoff is
    Alice's formula with the two strategies swapped.
    """
    _check_range("xi", xi, 0.0, HALF_PI)
    a, b = as_strategy(sA), as_strategy(sB)
    s = math.sin(xi)
    alice = entangled_alice(s, a.theta, a.phi, b.theta, b.phi)
    bob = entangled_alice(s, b.theta, b.phi, a.theta, a.phi)
    return float(alice), float(bob)


def payoff_product(xi: float, sA: StrategyLike, sB: StrategyLike) -> tuple[float, float]:
    """``(Alice, Bob)`` payoffs for the product measurement, ``xi`` in ``[0, pi]``."""
    _check_range("xi", xi, 0.0, math.pi)
    a, b = as_strategy(sA), as_strategy(sB)
    alice = product_alice(xi, a.theta, a.phi, b.theta, b.phi)
    bob = product_alice(xi, b.theta, b.phi, a.theta, a.phi)
    return float(alice), float(bob)


def quad_entangled_sin(sin_xi: float) -> PayoffQuad:
    s = sin_xi
    return PayoffQuad(R=2 + s, S=(5 - 5 * s) / 2, T=(5 + 5 * s) / 2, U=2 - s)


def quad_product_x(x: float) -> PayoffQuad:
    return PayoffQuad(R=3 - 2 * x, S=5 * x, T=5 - 5 * x, U=1 + 2 * x)


def quad_entangled(xi: float) -> PayoffQuad:
    _check_range("xi", xi, 0.0, HALF_PI)
    return quad_entangled_sin(math.sin(xi))


def quad_product(xi: float) -> PayoffQuad:
    _check_range("xi", xi, 0.0, math.pi)
    return quad_product_x(math.sin(xi / 2) ** 2)
