"""Estimator base class shared by the three solvers."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .graphs import CouplingGraph


def check_graph(X) -> CouplingGraph:
    """Accept a CouplingGraph or a square 0/1 adjacency (or 0/-1 coupling) matrix."""
    if isinstance(X, CouplingGraph):
        return X
    return CouplingGraph.from_adjacency(X)


class IsingSolver(BaseEstimator):
    """Base class: ``fit(G)`` runs one seeded solve and stores the trajectory.

    Fitted attributes
    -----------------
    cuts_per_epoch_ : int array, best-so-far cut after each epoch (non-decreasing)
    best_cut_ : largest cut reached
    best_config_ : spin vector (+1/-1) achieving ``best_cut_``
    best_epoch_ : 1-based epoch at which ``best_cut_`` was first reached
    """

    algorithm: str = ""

    def _check_params(self, graph: CouplingGraph) -> None:
        if not (isinstance(self.n_epochs, (int, np.integer)) and self.n_epochs >= 1):
            raise ValueError(f"n_epochs must be a positive integer, got {self.n_epochs!r}")

    def _anneal(self, graph: CouplingGraph, rng: np.random.Generator):
        """Yield the spin configuration after each epoch."""
        raise NotImplementedError

    def fit(self, X, y=None):
        graph = check_graph(X)
        self._check_params(graph)
        rng = np.random.default_rng(self.seed)
        running = np.zeros(self.n_epochs, dtype=np.int64)
        best_cut = -1
        best_config = None
        best_epoch = 0
        for epoch, spins in enumerate(self._anneal(graph, rng), start=1):
            cut = graph.cut_value(spins)
            if cut > best_cut:
                best_cut, best_config, best_epoch = cut, np.array(spins), epoch
            running[epoch - 1] = best_cut
        self.graph_ = graph
        self.cuts_per_epoch_ = running
        self.best_cut_ = int(best_cut)
        self.best_config_ = best_config
        self.best_epoch_ = best_epoch
        return self

    def fit_predict(self, X, y=None) -> np.ndarray:
        """Fit and return the best spin assignment (the two cut sides as +1/-1)."""
        return self.fit(X).best_config_

    def score(self, X=None, y=None) -> float:
        """Best cut found by the last fit.  X and y are accepted for interface
        compatibility and ignored: a solve scores the instance it ran on."""
        self._require_fitted()
        return float(self.best_cut_)

    def _require_fitted(self):
        if not hasattr(self, "best_cut_"):
            raise NotFittedError(f"this {type(self).__name__} instance is not fitted yet")
