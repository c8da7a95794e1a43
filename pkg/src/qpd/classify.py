"""Strategic-form identity of the quantized game and its entanglement regions.

A symmetric 2x2 game is identified by the ordering of its four elements
(R, S, T, U). Sweeping the initial-state entanglement moves those elements,
and every crossing of two of them changes the game.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np
from scipy.optimize import brentq

from qpd import equilibria, game
from qpd.closedform import PayoffQuad, quad_entangled_sin, quad_product_x
from qpd.game import GameConfig

Measurement = Literal["entangled", "product"]
DEFAULT_EPS = 1e-9
DEFAULT_SAMPLES = 400


class GameKind(enum.Enum):
    PRISONERS_DILEMMA = "PrisonersDilemma"
    CHICKEN = "Chicken"
    INVERTED_ORDER = "InvertedOrder"
    COMPROMISE_DILEMMA = "CompromiseDilemma"
    BOUNDARY_SU = "BoundarySU"
    OTHER = "Other"


_NAMED_ORDERINGS = {
    "T>R>U>S": GameKind.PRISONERS_DILEMMA,
    "T>R>S>U": GameKind.CHICKEN,
    "T>S>R>U": GameKind.INVERTED_ORDER,
    "T>R=S>U": GameKind.COMPROMISE_DILEMMA,
    "T>R>S=U": GameKind.BOUNDARY_SU,
}


@dataclass(frozen=True)
class GameClass:
    kind: GameKind
    ordering: str

    def __str__(self) -> str:
        if self.kind is GameKind.OTHER:
            return f"Other({self.ordering})"
        return self.kind.value


def ordering_signature(q: PayoffQuad, eps: float = DEFAULT_EPS) -> str:
    """Descending order of the elements, e.g. ``"T>R=S>U"``.

    Neighbours within ``eps`` of each other are tied; tied names are listed
    alphabetically so the signature is canonical.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    items = sorted(q.as_dict().items(), key=lambda kv: (-kv[1], kv[0]))
    groups: list[list[str]] = [[items[0][0]]]
    for (_, prev), (name, value) in itertools.pairwise(items):
        if prev - value <= eps:
            groups[-1].append(name)
        else:
            groups.append([name])
    return ">".join("=".join(sorted(g)) for g in groups)


def classify_quad(q: PayoffQuad, eps: float = DEFAULT_EPS) -> GameClass:
    sig = ordering_signature(q, eps)
    return GameClass(_NAMED_ORDERINGS.get(sig, GameKind.OTHER), sig)


def quad_from_config(config: GameConfig) -> PayoffQuad:
    """Strategic-form elements read off Alice's simulated payoffs at the pure profiles."""
    pay = {label: game.payoff_pair(config, label[0], label[1])[0] for label in game.BASIS}
    return PayoffQuad(R=pay["CC"], S=pay["CD"], T=pay["DC"], U=pay["DD"])


# --- sweeps ---------------------------------------------------------------

def quad_function(measurement: Measurement) -> Callable[[float], PayoffQuad]:
    if measurement == "entangled":
        return quad_entangled_sin
    if measurement == "product":
        return quad_product_x
    raise ValueError(f"measurement must be 'entangled' or 'product', got {measurement!r}")


def parameter_name(measurement: Measurement) -> str:
    return {"entangled": "sin_xi", "product": "x"}[measurement]


def config_at(measurement: Measurement, param: float) -> GameConfig:
    """Game configuration at sweep parameter ``sin xi`` (entangled) or ``x`` (product)."""
    if measurement == "entangled":
        return equilibria.entangled_family(param)
    return equilibria.product_family(param)


def analytic_ne_set(measurement: Measurement, param: float) -> frozenset[str]:
    if measurement == "entangled":
        return equilibria.entangled_conditions(game.xi_from_sin(param))
    return equilibria.product_conditions(game.xi_from_x(param))


def candidate_profiles(measurement: Measurement) -> tuple[str, ...]:
    # Under product measurement Q is payoff-equivalent to C, so only the
    # classical profiles are reported.
    if measurement == "product":
        return equilibria.CLASSICAL_PROFILES
    return equilibria.NAMED_PROFILES


def numeric_ne_set(measurement: Measurement, param: float, **certify_kwargs) -> frozenset[str]:
    return equilibria.numeric_ne_set(
        config_at(measurement, param), candidate_profiles(measurement), **certify_kwargs
    )


def sweep_quads(measurement: Measurement, samples: int = DEFAULT_SAMPLES) -> np.ndarray:
    """Rows ``(param, R, S, T, U)`` at ``samples`` evenly spaced points of ``[0, 1]``."""
    if samples < 2:
        raise ValueError("samples must be at least 2")
    fn = quad_function(measurement)
    params = np.linspace(0.0, 1.0, samples)
    return np.array([(p, *fn(float(p)).as_tuple()) for p in params])


# --- region reports ------------------------------------------------------

NESource = Literal["analytic", "numeric"]


@dataclass(frozen=True)
class Region:
    lo: float
    hi: float
    game: GameClass
    ne: frozenset[str]
    ne_source: NESource

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass(frozen=True)
class BoundaryPoint:
    at: float
    game: GameClass
    quad: PayoffQuad
    ne: frozenset[str]
    ne_source: NESource
    strict: dict[str, bool] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class RegionReport:
    measurement: Measurement
    parameter: str
    intervals: tuple[Region, ...]
    boundaries: tuple[BoundaryPoint, ...]
    endpoints: tuple[BoundaryPoint, ...]

    @property
    def distinct_games(self) -> int:
        """Number of distinct strategic forms over the open sweep domain."""
        forms = {r.game for r in self.intervals} | {b.game for b in self.boundaries}
        return len(forms)

    def region_at(self, param: float) -> Region | None:
        for r in self.intervals:
            if r.lo < param < r.hi:
                return r
        return None


def _crossings(fn: Callable[[float], PayoffQuad], samples: int) -> list[float]:
    """Interior roots of every pairwise element difference on ``(0, 1)``."""
    grid = np.linspace(0.0, 1.0, samples)
    quads = np.array([fn(float(p)).as_tuple() for p in grid])
    roots: list[float] = []
    for i, j in itertools.combinations(range(4), 2):
        diff = quads[:, i] - quads[:, j]

        def d(p: float, i: int = i, j: int = j) -> float:
            t = fn(p).as_tuple()
            return t[i] - t[j]

        for k in range(samples - 1):
            a, b = diff[k], diff[k + 1]
            if a == 0.0:
                roots.append(float(grid[k]))
            elif a * b < 0:
                roots.append(brentq(d, grid[k], grid[k + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
        if diff[-1] == 0.0:
            roots.append(1.0)
    roots.sort()
    merged: list[float] = []
    for r in roots:
        if r <= 1e-12 or r >= 1.0 - 1e-12:
            continue
        if merged and r - merged[-1] <= 1e-10:
            continue
        merged.append(r)
    return merged


def _ne_at(measurement: Measurement, p: float, method: NESource, certify_kwargs) -> frozenset[str]:
    if method == "analytic":
        return analytic_ne_set(measurement, p)
    return numeric_ne_set(measurement, p, **certify_kwargs)


def _point(measurement, fn, p, eps, method, certify_kwargs) -> BoundaryPoint:
    q = fn(p)
    ne = _ne_at(measurement, p, method, certify_kwargs)
    config = config_at(measurement, p)
    strict = {
        label: equilibria.certify(config, equilibria.StrategyProfile.named(label), **certify_kwargs).is_strict
        for label in sorted(ne)
    }
    return BoundaryPoint(p, classify_quad(q, eps), q, ne, method, strict)


def region_report(
    measurement: Measurement,
    samples: int = DEFAULT_SAMPLES,
    eps: float = DEFAULT_EPS,
    ne_method: NESource = "analytic",
    **certify_kwargs,
) -> RegionReport:
    """Partition the sweep domain ``[0, 1]`` into regions of constant game form.

    The parameter is ``sin xi`` for the entangled measurement and
    ``x = sin^2(xi/2)`` for the product measurement. Boundaries are the
    exact crossings of element pairs, located by sign change and root
    bracketing rather than by grid coincidence.
    """
    if samples < 100:
        raise ValueError("samples must be at least 100")
    fn = quad_function(measurement)
    cuts = _crossings(fn, samples)
    edges = [0.0, *cuts, 1.0]
    intervals = []
    for lo, hi in itertools.pairwise(edges):
        mid = 0.5 * (lo + hi)
        intervals.append(Region(lo, hi, classify_quad(fn(mid), eps),
                                _ne_at(measurement, mid, ne_method, certify_kwargs), ne_method))
    boundaries = tuple(_point(measurement, fn, c, eps, ne_method, certify_kwargs) for c in cuts)
    endpoints = tuple(_point(measurement, fn, e, eps, ne_method, certify_kwargs) for e in (0.0, 1.0))
    return RegionReport(measurement, parameter_name(measurement), tuple(intervals), boundaries, endpoints)


def region_report_entangled(samples: int = DEFAULT_SAMPLES, eps: float = DEFAULT_EPS, **kwargs) -> RegionReport:
    return region_report("entangled", samples, eps, **kwargs)


def region_report_product(samples: int = DEFAULT_SAMPLES, eps: float = DEFAULT_EPS, **kwargs) -> RegionReport:
    return region_report("product", samples, eps, **kwargs)


def describe(measurement: Measurement, param: float, eps: float = DEFAULT_EPS) -> tuple[GameClass, PayoffQuad, frozenset[str]]:
    """Class, quad and analytic NE set at one sweep parameter value."""
    q = quad_function(measurement)(param)
    return classify_quad(q, eps), q, analytic_ne_set(measurement, param)

