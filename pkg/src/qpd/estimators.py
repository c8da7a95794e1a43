"""scikit-learn compatible wrappers.

These let the game engine sit inside pipelines, grid searches and
``clone``-based tooling. Inputs are validated with sklearn's own helpers.

>>> from qpd.estimators import QuantumPayoffTransformer
>>> t = QuantumPayoffTransformer(xi=1.5707963267948966, delta=1.5707963267948966).fit()
>>> t.transform([[0.0, 1.5707963267948966, 0.0, 1.5707963267948966]]).round(6)
array([[3., 3.]])
"""

from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from qpd import classify, equilibria
from qpd.game import ClassicalPayoffMatrix, EntanglementConfig, GameConfig


class QuantumPayoffTransformer(TransformerMixin, BaseEstimator):
    """Map strategy rows ``(theta_a, phi_a, theta_b, phi_b)`` to ``(payoff_a, payoff_b)``.

    Parameters
    ----------
    xi : float
        Initial-state entanglement.
    delta : float
        Measurement-basis entanglement; ``pi/2`` entangled, ``0`` product.
    payoffs : tuple of 4 floats
        Classical ``(R, S, T, U)``.
    method : {"auto", "closed_form", "simulation"}
        Evaluation path, see :func:`qpd.equilibria.payoff_function`.
    """

    def __init__(self, xi=math.pi / 2, delta=math.pi / 2, payoffs=(3.0, 0.0, 5.0, 1.0), method="auto"):
        self.xi = xi
        self.delta = delta
        self.payoffs = payoffs
        self.method = method

    def fit(self, X=None, y=None):
        self.config_ = GameConfig(EntanglementConfig(float(self.xi), float(self.delta)),
                                  ClassicalPayoffMatrix(*map(float, self.payoffs)))
        self.payoff_fn_ = equilibria.payoff_function(self.config_, self.method)
        self.n_features_in_ = 4
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != 4:
            raise ValueError(f"expected 4 columns (theta_a, phi_a, theta_b, phi_b), got {X.shape[1]}")
        a, b = self.payoff_fn_(X[:, 0], X[:, 1], X[:, 2], X[:, 3])
        return np.column_stack([a, b])

    def get_feature_names_out(self, input_features=None):
        return np.array(["payoff_a", "payoff_b"], dtype=object)


class GameFormClassifier(ClassifierMixin, BaseEstimator):
    """Predict the strategic form (as a string label) from the sweep parameter.

    The single input column is ``sin xi`` for ``measurement="entangled"`` and
    ``sin^2(xi/2)`` for ``measurement="product"``. ``fit`` only validates; the
    mapping is fixed by the closed-form quads.
    """

    def __init__(self, measurement="entangled", eps=classify.DEFAULT_EPS):
        self.measurement = measurement
        self.eps = eps

    def fit(self, X=None, y=None):
        classify.parameter_name(self.measurement)
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        self.n_features_in_ = 1
        self.fitted_ = True
        return self

    def predict(self, X):
        check_is_fitted(self, "fitted_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != 1:
            raise ValueError("expected a single column holding the sweep parameter")
        quad = classify.quad_function(self.measurement)
        return np.array([str(classify.classify_quad(quad(float(p)), self.eps)) for p in X[:, 0]], dtype=object)


class NashCertifier(BaseEstimator):
    """Predict whether ``profile`` is a Nash equilibrium at each sweep parameter."""

    def __init__(self, profile="QQ", measurement="entangled", grid=equilibria.DEFAULT_GRID,
                 tol=equilibria.NE_TOL, method="auto"):
        self.profile = profile
        self.measurement = measurement
        self.grid = grid
        self.tol = tol
        self.method = method

    def fit(self, X=None, y=None):
        self.profile_ = equilibria.StrategyProfile.named(self.profile)
        classify.parameter_name(self.measurement)
        if self.grid < 16:
            raise ValueError("grid must be at least 16")
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "profile_")
        X = check_array(X, dtype=np.float64)
        return np.array([
            equilibria.certify(classify.config_at(self.measurement, float(p)), self.profile_,
                               grid=self.grid, tol=self.tol, method=self.method).is_ne
            for p in X[:, 0]
        ])

    def decision_function(self, X):
        """``tol`` minus the worst deviation gain; non-negative exactly where the profile is an NE."""
        check_is_fitted(self, "profile_")
        X = check_array(X, dtype=np.float64)
        out = []
        for p in X[:, 0]:
            cert = equilibria.certify(classify.config_at(self.measurement, float(p)), self.profile_,
                                      grid=self.grid, tol=self.tol, method=self.method)
            out.append(self.tol - max(cert.margin_a, cert.margin_b))
        return np.array(out)


__all__ = ["QuantumPayoffTransformer", "GameFormClassifier", "NashCertifier"]
