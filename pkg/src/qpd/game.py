"""Two-qubit quantum Prisoners' Dilemma under the generalized quantization scheme.

An arbiter prepares ``cos(xi/2)|00> + i sin(xi/2)|11>``, each player applies
a two-parameter unitary to their qubit, and payoffs are read off with
projectors onto a measurement basis whose own entanglement is ``delta``.
``delta = pi/2`` is the entangled (Bell-like) measurement and ``delta = 0``
the product measurement.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from qpd import linalg
from qpd.linalg import Matrix2, Matrix4, Vector4

HALF_PI = math.pi / 2

# Slack on range checks so values like arcsin(1) or 2*arcsin(1) pass.
_RANGE_SLACK = 1e-12

# Basis labels in the order used by every 4-vector in this package.
BASIS = ("CC", "CD", "DC", "DD")


def _check_range(name: str, value: float, lo: float, hi: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    if value < lo - _RANGE_SLACK or value > hi + _RANGE_SLACK:
        raise ValueError(f"{name}={value!r} outside [{lo:g}, {hi:g}]")


@dataclass(frozen=True)
class EntanglementConfig:
    """Initial-state entanglement ``xi`` and measurement-basis entanglement ``delta``.

    ``xi`` normally lives in ``[0, pi/2]``. With a product measurement
    (``delta == 0``) it may extend to ``[0, pi]`` so that
    ``sin^2(xi/2)`` covers all of ``[0, 1]``.
    """

    xi: float
    delta: float

    def __post_init__(self) -> None:
        _check_range("delta", self.delta, 0.0, HALF_PI)
        xi_max = math.pi if self.delta == 0.0 else HALF_PI
        _check_range("xi", self.xi, 0.0, xi_max)

    @property
    def sin_xi(self) -> float:
        return math.sin(self.xi)

    @property
    def x(self) -> float:
        """``sin^2(xi/2)``, the weight of |11> in the initial state."""
        return math.sin(self.xi / 2) ** 2


def xi_from_sin(sin_xi: float) -> float:
    _check_range("sin_xi", sin_xi, 0.0, 1.0)
    return math.asin(min(max(sin_xi, 0.0), 1.0))


def xi_from_x(x: float) -> float:
    """Invert ``x = sin^2(xi/2)`` onto ``xi`` in ``[0, pi]``."""
    _check_range("x", x, 0.0, 1.0)
    return 2.0 * math.asin(math.sqrt(min(max(x, 0.0), 1.0)))


@dataclass(frozen=True)
class StrategyParams:
    theta: float
    phi: float

    def __post_init__(self) -> None:
        _check_range("theta", self.theta, 0.0, math.pi)
        _check_range("phi", self.phi, 0.0, HALF_PI)


class NamedStrategy(enum.Enum):
    """Cooperate, defect and the quantum move ``U(0, pi/2)``."""

    C = StrategyParams(0.0, 0.0)
    D = StrategyParams(math.pi, 0.0)
    Q = StrategyParams(0.0, HALF_PI)

    @property
    def params(self) -> StrategyParams:
        return self.value


def as_strategy(s: StrategyParams | NamedStrategy | str) -> StrategyParams:
    """Accept params, a :class:`NamedStrategy` or its one-letter name."""
    if isinstance(s, StrategyParams):
        return s
    if isinstance(s, NamedStrategy):
        return s.params
    if isinstance(s, str):
        try:
            return NamedStrategy[s.upper()].params
        except KeyError:
            raise ValueError(f"unknown strategy name {s!r}; expected C, D or Q") from None
    raise TypeError(f"cannot interpret {s!r} as a strategy")


@dataclass(frozen=True)
class ClassicalPayoffMatrix:
    """Row player's entries of a symmetric 2x2 game.

    R: both cooperate, S: cooperate against defect, T: defect against
    cooperate, U: both defect.
    """

    R: float = 3.0
    S: float = 0.0
    T: float = 5.0
    U: float = 1.0

    def __post_init__(self) -> None:
        for name in "RSTU":
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"payoff {name} must be finite")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.R, self.S, self.T, self.U)

    @property
    def is_default(self) -> bool:
        return self.as_tuple() == (3.0, 0.0, 5.0, 1.0)


@dataclass(frozen=True)
class GameConfig:
    entanglement: EntanglementConfig
    payoffs: ClassicalPayoffMatrix = field(default_factory=ClassicalPayoffMatrix)

    @classmethod
    def from_angles(
        cls, xi: float, delta: float, payoffs: ClassicalPayoffMatrix | None = None
    ) -> GameConfig:
        return cls(EntanglementConfig(xi, delta), payoffs or ClassicalPayoffMatrix())

    @property
    def xi(self) -> float:
        return self.entanglement.xi

    @property
    def delta(self) -> float:
        return self.entanglement.delta


def initial_state(xi: float, *, allow_extended: bool = False) -> Vector4:
    """``cos(xi/2)|00> + i sin(xi/2)|11>``.

    ``xi`` must be in ``[0, pi/2]``; ``allow_extended`` widens this to
    ``[0, pi]`` for product-measurement sweeps.
    """
    _check_range("xi", xi, 0.0, math.pi if allow_extended else HALF_PI)
    v = np.zeros(4, dtype=complex)
    v[0] = math.cos(xi / 2)
    v[3] = 1j * math.sin(xi / 2)
    return v


# R(phi) = diag(e^{i phi}, e^{-i phi}); C|0> = -|1>, C|1> = |0>.
FLIP: Matrix2 = np.array([[0, 1], [-1, 0]], dtype=complex)


def strategy_operators(theta: ArrayLike, phi: ArrayLike) -> NDArray[np.complex128]:
    """Broadcasting ``cos(theta/2) R(phi) + sin(theta/2) C``; shape ``(..., 2, 2)``."""
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    c = np.cos(theta / 2)
    s = np.sin(theta / 2)
    out = np.empty(theta.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = c * np.exp(1j * phi)
    out[..., 0, 1] = s
    out[..., 1, 0] = -s
    out[..., 1, 1] = c * np.exp(-1j * phi)
    return out


def strategy_operator(s: StrategyParams | NamedStrategy | str) -> Matrix2:
    s = as_strategy(s)
    return strategy_operators(s.theta, s.phi)


def final_density(
    config: GameConfig,
    sA: StrategyParams | NamedStrategy | str,
    sB: StrategyParams | NamedStrategy | str,
) -> Matrix4:
    """Density matrix after both players have applied their unitaries."""
    psi = initial_state(config.xi, allow_extended=config.delta == 0.0)
    rho = linalg.projector(psi)
    joint = linalg.tensor(strategy_operator(sA), strategy_operator(sB))
    return linalg.conjugate_evolve(joint, rho)


def measurement_basis(delta: float) -> dict[str, Vector4]:
    """The four measurement states keyed by outcome label (``"CC"`` ...)."""
    _check_range("delta", delta, 0.0, HALF_PI)
    c, s = math.cos(delta / 2), math.sin(delta / 2)
    k00, k01, k10, k11 = (linalg.ket(i) for i in range(4))
    return {
        "CC": c * k00 + 1j * s * k11,
        "CD": c * k01 - 1j * s * k10,
        "DC": c * k10 - 1j * s * k01,
        "DD": c * k11 + 1j * s * k00,
    }


def outcome_projectors(delta: float) -> dict[str, Matrix4]:
    return {label: linalg.projector(v) for label, v in measurement_basis(delta).items()}


def payoff_operators(
    delta: float, m: ClassicalPayoffMatrix | None = None
) -> tuple[Matrix4, Matrix4]:
    """Alice's and Bob's payoff observables for measurement entanglement ``delta``.

    Alice collects ``T`` on outcome DC and ``S`` on CD; Bob the reverse.
    """
    m = m or ClassicalPayoffMatrix()
    P = outcome_projectors(delta)
    common = m.R * P["CC"] + m.U * P["DD"]
    alice = common + m.T * P["DC"] + m.S * P["CD"]
    bob = common + m.S * P["DC"] + m.T * P["CD"]
    return alice, bob


def payoff_pair(
    config: GameConfig,
    sA: StrategyParams | NamedStrategy | str,
    sB: StrategyParams | NamedStrategy | str,
) -> tuple[float, float]:
    """Expected payoffs ``(Alice, Bob)`` from the density-matrix simulation."""
    rho = final_density(config, sA, sB)
    alice, bob = payoff_operators(config.delta, config.payoffs)
    return linalg.real_trace_product(alice, rho), linalg.real_trace_product(bob, rho)


def simulate_payoffs(
    config: GameConfig,
    theta_a: ArrayLike,
    phi_a: ArrayLike,
    theta_b: ArrayLike,
    phi_b: ArrayLike,
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Batched version of :func:`payoff_pair` over broadcast parameter arrays.

    Same state, evolution and trace as the scalar path, vectorized with
    ``einsum`` for grid searches. Range checks are applied to whole arrays.
    """
    arrays = np.broadcast_arrays(*(np.asarray(a, float) for a in (theta_a, phi_a, theta_b, phi_b)))
    ta, pa, tb, pb = arrays
    for name, arr, hi in (("theta", ta, math.pi), ("phi", pa, HALF_PI),
                          ("theta", tb, math.pi), ("phi", pb, HALF_PI)):
        if arr.size and (np.min(arr) < -_RANGE_SLACK or np.max(arr) > hi + _RANGE_SLACK):
            raise ValueError(f"{name} values outside [0, {hi:g}]")

    ua = strategy_operators(ta, pa)
    ub = strategy_operators(tb, pb)
    joint = np.einsum("...ij,...kl->...ikjl", ua, ub).reshape(ta.shape + (4, 4))
    psi = initial_state(config.xi, allow_extended=config.delta == 0.0)
    rho0 = np.outer(psi, np.conj(psi))
    rho = joint @ rho0 @ linalg.dagger(joint)
    alice, bob = payoff_operators(config.delta, config.payoffs)
    pay_a = np.einsum("ij,...ji->...", alice, rho).real
    pay_b = np.einsum("ij,...ji->...", bob, rho).real
    return pay_a, pay_b
