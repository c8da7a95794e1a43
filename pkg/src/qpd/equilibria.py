"""Nash-equilibrium certification over the two-parameter strategy space.

Two routes are provided. The numeric route searches each player's unilateral
deviations on a deterministic ``theta x phi`` grid and then refines the best
grid point with a shrinking neighbourhood search. The analytic route encodes
the closed-form deviation inequalities for the entangled and product
measurements; these are linear in ``cos^2(theta/2)`` and ``cos(2 phi)``, so
their minimum over the strategy rectangle sits on a corner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np
from numpy.typing import NDArray

from qpd import closedform, game
from qpd.game import (
    HALF_PI,
    EntanglementConfig,
    GameConfig,
    NamedStrategy,
    StrategyParams,
    as_strategy,
)

Player = Literal["A", "B"]
Method = Literal["auto", "closed_form", "simulation"]
PayoffFn = Callable[..., tuple[NDArray[np.float64], NDArray[np.float64]]]

DEFAULT_GRID = 64
NE_TOL = 1e-7
STRICT_TOL = 1e-9
# Deviations whose operator equals the profile's up to a global phase.
_SAME_OPERATOR_TOL = 1e-12
# Analytic inequalities that hold with equality at the thresholds.
_ANALYTIC_ATOL = 1e-12

CLASSICAL_PROFILES = ("CC", "CD", "DC", "DD")
NAMED_PROFILES = tuple(a + b for a in "CDQ" for b in "CDQ")


@dataclass(frozen=True)
class StrategyProfile:
    a: StrategyParams
    b: StrategyParams
    name_a: str | None = None
    name_b: str | None = None

    @classmethod
    def named(cls, label: str) -> StrategyProfile:
        """Build from a two-letter label such as ``"QD"`` (Alice plays Q, Bob D)."""
        label = label.replace("⊗", "").replace("x", "").strip().upper()
        if len(label) != 2:
            raise ValueError(f"profile label must name two strategies, got {label!r}")
        return cls(as_strategy(label[0]), as_strategy(label[1]), label[0], label[1])

    @classmethod
    def of(cls, a, b) -> StrategyProfile:
        names = [s.name if isinstance(s, NamedStrategy) else s.upper() if isinstance(s, str) else None
                 for s in (a, b)]
        return cls(as_strategy(a), as_strategy(b), *names)

    @property
    def label(self) -> str:
        if self.name_a and self.name_b:
            return self.name_a + self.name_b
        return (f"({self.a.theta:.6g},{self.a.phi:.6g})x"
                f"({self.b.theta:.6g},{self.b.phi:.6g})")


@dataclass(frozen=True)
class NECertificate:
    profile: StrategyProfile
    is_ne: bool
    is_strict: bool
    margin_a: float
    margin_b: float
    method: Literal["analytic", "numeric"] = "numeric"
    deviation_a: tuple[float, float] | None = None
    deviation_b: tuple[float, float] | None = None


def payoff_function(config: GameConfig, method: Method = "auto") -> PayoffFn:
    """Vectorized ``(theta_a, phi_a, theta_b, phi_b) -> (alice, bob)`` for ``config``.

    ``"auto"`` picks the closed form whenever one exists (default matrix and
    ``delta`` in ``{0, pi/2}``) and falls back to the simulation otherwise.
    """
    has_closed_form = config.payoffs.is_default and config.delta in (0.0, HALF_PI)
    if method == "closed_form" and not has_closed_form:
        raise ValueError("no closed form for this payoff matrix / measurement basis")
    if method == "simulation" or (method == "auto" and not has_closed_form):
        return lambda ta, pa, tb, pb: game.simulate_payoffs(config, ta, pa, tb, pb)

    if config.delta == HALF_PI:
        s = math.sin(config.xi)

        def entangled(ta, pa, tb, pb):
            return (closedform.entangled_alice(s, ta, pa, tb, pb),
                    closedform.entangled_alice(s, tb, pb, ta, pa))
        return entangled

    xi = config.xi

    def product(ta, pa, tb, pb):
        return (closedform.product_alice(xi, ta, pa, tb, pb),
                closedform.product_alice(xi, tb, pb, ta, pa))
    return product


def _deviation_payoff(f: PayoffFn, profile: StrategyProfile, player: Player):
    if player == "A":
        return lambda t, p: f(t, p, profile.b.theta, profile.b.phi)[0]
    if player == "B":
        return lambda t, p: f(profile.a.theta, profile.a.phi, t, p)[1]
    raise ValueError(f"player must be 'A' or 'B', got {player!r}")


def deviation_grid(resolution: int) -> tuple[NDArray, NDArray]:
    if resolution < 16:
        raise ValueError("grid resolution must be at least 16 per axis")
    theta = np.linspace(0.0, math.pi, resolution)
    phi = np.linspace(0.0, HALF_PI, resolution)
    return np.meshgrid(theta, phi, indexing="ij")


def _refine(g, start: tuple[float, float], value: float, step: tuple[float, float],
            min_rounds: int = 3, final_step: float = 1e-6) -> tuple[tuple[float, float], float]:
    """Shrinking-neighbourhood ascent from ``start``; deterministic."""
    offsets = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    best, best_val = start, value
    st, sp = step
    rounds = 0
    while rounds < min_rounds or max(st, sp) >= final_step:
        t = np.clip(best[0] + offsets * st, 0.0, math.pi)
        p = np.clip(best[1] + offsets * sp, 0.0, HALF_PI)
        T, P = np.meshgrid(t, p, indexing="ij")
        vals = g(T, P)
        k = int(np.argmax(vals))
        if vals.flat[k] > best_val:
            best_val = float(vals.flat[k])
            best = (float(T.flat[k]), float(P.flat[k]))
        st *= 0.5
        sp *= 0.5
        rounds += 1
    return best, best_val


def _search(config, profile, player, grid, method):
    f = payoff_function(config, method)
    pay_a, pay_b = f(profile.a.theta, profile.a.phi, profile.b.theta, profile.b.phi)
    base = float(pay_a if player == "A" else pay_b)
    g = _deviation_payoff(f, profile, player)
    T, P = deviation_grid(grid)
    vals = g(T, P)
    k = int(np.argmax(vals))
    start = (float(T.flat[k]), float(P.flat[k]))
    step = (math.pi / (grid - 1), HALF_PI / (grid - 1))
    best, best_val = _refine(g, start, float(vals.flat[k]), step)
    return best_val - base, best, vals - base, (T, P)


def best_response_gain(
    config: GameConfig,
    profile: StrategyProfile,
    player: Player,
    grid: int = DEFAULT_GRID,
    method: Method = "auto",
) -> float:
    """Largest payoff gain ``player`` can obtain by deviating unilaterally."""
    return _search(config, profile, player, grid, method)[0]


def _same_operator(own: StrategyParams, T: NDArray, P: NDArray) -> NDArray[np.bool_]:
    u0 = game.strategy_operator(own)
    us = game.strategy_operators(T, P)
    overlap = np.abs(np.einsum("ij,...ij->...", np.conj(u0), us)) / 2
    return overlap >= 1.0 - _SAME_OPERATOR_TOL


def certify(
    config: GameConfig,
    profile: StrategyProfile,
    grid: int = DEFAULT_GRID,
    tol: float = NE_TOL,
    strict_tol: float = STRICT_TOL,
    method: Method = "auto",
) -> NECertificate:
    """Numerically decide whether ``profile`` is a (strict) Nash equilibrium.

    A profile is an equilibrium when neither player's best deviation gains
    more than ``tol``. It is strict when, in addition, every sampled grid
    deviation that is a genuinely different operator (not the same unitary
    up to a global phase) loses more than ``strict_tol``.
    """
    margins, deviations, strict = {}, {}, True
    for player, own in (("A", profile.a), ("B", profile.b)):
        gain, dev, grid_gains, (T, P) = _search(config, profile, player, grid, method)
        margins[player], deviations[player] = gain, dev
        others = grid_gains[~_same_operator(own, T, P)]
        if others.size and np.max(others) >= -strict_tol:
            strict = False
    is_ne = margins["A"] <= tol and margins["B"] <= tol
    return NECertificate(
        profile=profile,
        is_ne=is_ne,
        is_strict=is_ne and strict,
        margin_a=margins["A"],
        margin_b=margins["B"],
        method="numeric",
        deviation_a=deviations["A"],
        deviation_b=deviations["B"],
    )


def numeric_ne_set(config: GameConfig, candidates=NAMED_PROFILES, **kwargs) -> frozenset[str]:
    return frozenset(
        label for label in candidates
        if certify(config, StrategyProfile.named(label), **kwargs).is_ne
    )


# Analytic conditions. Each left-hand side below is twice the payoff loss of
# the deviation and is linear in c = cos^2(theta/2) and k = cos(2 phi), so
# checking the corners c, k in {0, 1} x {-1, 1} is exact.
_CORNERS = [(c, k) for c in (0.0, 1.0) for k in (-1.0, 1.0)]


def _holds_everywhere(lhs: Callable[[float, float], float]) -> bool:
    return min(lhs(c, k) for c, k in _CORNERS) >= -_ANALYTIC_ATOL


def qq_condition_entangled(xi: float) -> bool:
    """Q⊗Q is an equilibrium of the entangled-measurement game (``sin xi >= 1/7``)."""
    s = math.sin(xi)
    return _holds_everywhere(lambda c, k: 7 * s + (1 + (2 * k - 5) * s) * c - 1)


def qd_condition_entangled(xi: float) -> bool:
    """Q⊗D (equivalently D⊗Q) is an equilibrium (``sin xi <= 1/7``)."""
    s = math.sin(xi)
    alice = _holds_everywhere(lambda c, k: (1 - c) + (7 - (2 - 5 * k) * c) * s)
    bob = _holds_everywhere(lambda c, k: (1 - (5 - 2 * k) * s) * c)
    return alice and bob


def cd_condition_entangled(xi: float) -> bool:
    """C⊗D (equivalently D⊗C) is an equilibrium; only at ``sin xi = 0``."""
    s = math.sin(xi)
    alice = _holds_everywhere(lambda c, k: (1 - c) - (3 + (2 - 5 * k) * c) * s)
    bob = _holds_everywhere(lambda c, k: (1 + (5 - 2 * k) * s) * c)
    return alice and bob


def entangled_conditions(xi: float) -> frozenset[str]:
    """Named equilibria of the entangled-measurement game from the analytic conditions."""
    out = set()
    if qq_condition_entangled(xi):
        out.add("QQ")
    if qd_condition_entangled(xi):
        out |= {"QD", "DQ"}
    if cd_condition_entangled(xi):
        out |= {"CD", "DC"}
    return frozenset(out)


def product_conditions(xi: float) -> frozenset[str]:
    """Classical-profile equilibria of the product-measurement game.

    With ``x = sin^2(xi/2)``: C⊗C iff ``x >= 2/3``, D⊗D iff ``x <= 1/3``,
    C⊗D and D⊗C iff ``1/3 <= x <= 2/3``.
    """
    x = math.sin(xi / 2) ** 2
    cc = (3 * x - 2) >= -_ANALYTIC_ATOL
    dd = (1 - 3 * x) >= -_ANALYTIC_ATOL
    mixed = (2 - 3 * x) >= -_ANALYTIC_ATOL and (3 * x - 1) >= -_ANALYTIC_ATOL
    out = set()
    if cc:
        out.add("CC")
    if dd:
        out.add("DD")
    if mixed:
        out |= {"CD", "DC"}
    return frozenset(out)


def entangled_family(sin_xi: float, payoffs: game.ClassicalPayoffMatrix | None = None) -> GameConfig:
    return GameConfig.from_angles(game.xi_from_sin(sin_xi), HALF_PI, payoffs)


def product_family(x: float, payoffs: game.ClassicalPayoffMatrix | None = None) -> GameConfig:
    return GameConfig.from_angles(game.xi_from_x(x), 0.0, payoffs)


def general_family(delta: float) -> Callable[[float], GameConfig]:
    """Family over ``sin xi`` at a fixed measurement entanglement ``delta``."""
    return lambda sin_xi: GameConfig(EntanglementConfig(game.xi_from_sin(sin_xi), delta))


class ThresholdError(ValueError):
    pass


def threshold_scan(
    family: Callable[[float], GameConfig],
    profile: StrategyProfile,
    lo: float,
    hi: float,
    tol: float = 1e-9,
    ne_tol: float = NE_TOL,
    **certify_kwargs,
) -> float:
    """Bisect the family parameter for the point where ``profile`` stops being an NE.

    ``family`` maps a scalar (for instance ``sin xi`` or ``sin^2(xi/2)``) to a
    configuration. The certification outcome must differ at ``lo`` and ``hi``;
    ``tol`` is the bracket width at which bisection stops and ``ne_tol`` the
    gain tolerance handed to :func:`certify`.
    """
    def outcome(p: float) -> bool:
        return certify(family(p), profile, tol=ne_tol, **certify_kwargs).is_ne

    at_lo, at_hi = outcome(lo), outcome(hi)
    if at_lo == at_hi:
        raise ThresholdError(
            f"{profile.label} has the same NE outcome ({at_lo}) at both ends of [{lo}, {hi}]"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if outcome(mid) == at_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
