"""Quantum Prisoners' Dilemma under the generalized quantization scheme."""

from qpd.classify import GameClass, GameKind, classify_quad, region_report_entangled, region_report_product
from qpd.closedform import PayoffQuad, payoff_entangled, payoff_product, quad_entangled, quad_product
from qpd.equilibria import NECertificate, StrategyProfile, certify, threshold_scan
from qpd.game import (
    ClassicalPayoffMatrix,
    EntanglementConfig,
    GameConfig,
    NamedStrategy,
    StrategyParams,
    payoff_pair,
)

__version__ = "0.1.0"

__all__ = [
    "ClassicalPayoffMatrix",
    "EntanglementConfig",
    "GameClass",
    "GameConfig",
    "GameKind",
    "NECertificate",
    "NamedStrategy",
    "PayoffQuad",
    "StrategyParams",
    "StrategyProfile",
    "certify",
    "classify_quad",
    "payoff_entangled",
    "payoff_pair",
    "payoff_product",
    "quad_entangled",
    "quad_product",
    "region_report_entangled",
    "region_report_product",
    "threshold_scan",
]
