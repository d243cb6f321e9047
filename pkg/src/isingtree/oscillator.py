"""Discrete-time simulation of a measurement-feedback coherent Ising machine.

Each spin is a parametric oscillator amplitude.  Below the gain threshold the
amplitudes squeeze into the vacuum state (x = 0); above it each settles into
one of two symmetric coherent states whose sign encodes the spin.  Two
algebraically equivalent update maps are provided: the opto-electronic
``cos^2`` form with noise injected inside the nonlinearity, and the
``sin`` form with additive noise outside.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import IsingSolver
from .graphs import CouplingGraph

DYNAMICS = ("poor-man", "trig")

# Feedback/coupling gains that reliably bifurcate each instance family.
DEFAULT_GAINS = {
    "square-lattice": (0.25, 0.29),
    "circular-ladder": (0.07, 0.39),
    "mobius-ladder": (0.07, 0.39),
}


def default_gains(family: str) -> tuple[float, float]:
    """(alpha, beta) defaults for a generator family."""
    try:
        return DEFAULT_GAINS[family]
    except KeyError:
        raise ValueError(f"no default gains for family {family!r}") from None


@dataclass(frozen=True)
class AmplitudeState:
    """In-phase (x) and quadrature (y) amplitudes of every oscillator.

    Entries must be finite and |x| <= 1 (the update maps keep |x| within
    1/2 plus the injected noise).
    """

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float)
        if x.shape != y.shape or x.ndim != 1:
            raise ValueError(f"x and y must be equal-length vectors, got {x.shape} and {y.shape}")
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise ValueError("amplitudes must be finite")
        if np.any(np.abs(x) > 1.0):
            raise ValueError("in-phase amplitudes out of the sane range |x| <= 1")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.x.shape[0]


def vacuum(n: int) -> AmplitudeState:
    return AmplitudeState(np.zeros(n), np.zeros(n))


def feedback(graph: CouplingGraph, x, alpha: float, beta: float) -> np.ndarray:
    """Injected signal per oscillator: alpha*x_i + beta*sum_j J[i,j]*x_j."""
    x = np.asarray(x, dtype=float)
    if x.shape != (graph.n,):
        raise ValueError(f"expected a length-{graph.n} amplitude vector, got shape {x.shape}")
    return alpha * x + beta * (graph.coupling @ x)


def _poor_man_x(graph, x, alpha, beta, noise=None):
    f = feedback(graph, x, alpha, beta)
    if noise is not None:
        f = f + noise
    return np.cos(f - 0.25 * np.pi) ** 2 - 0.5


def _trig_xy(graph, x, alpha, beta, noise_x=None, noise_y=None):
    f = feedback(graph, x, alpha, beta)
    x_next = 0.5 * np.sin(2.0 * f)
    if noise_x is not None:
        x_next = x_next + noise_x
    y_next = noise_y if noise_y is not None else np.zeros(graph.n)
    return x_next, y_next


def _draw(rng, noise_std, n):
    if noise_std > 0:
        if rng is None:
            raise ValueError("an rng is required when noise_std > 0")
        return rng.normal(0.0, noise_std, n)
    return None


def step_poor_man(
    graph: CouplingGraph,
    state: AmplitudeState,
    alpha: float,
    beta: float,
    noise_std: float = 0.0,
    rng: np.random.Generator | None = None,
) -> AmplitudeState:
    """One ``x <- cos^2(f - pi/4 + xi) - 1/2`` update; noise enters inside the
    nonlinearity and the quadrature component is left untouched."""
    noise = _draw(rng, noise_std, graph.n)
    return AmplitudeState(_poor_man_x(graph, state.x, alpha, beta, noise), state.y)


def step_trig(
    graph: CouplingGraph,
    state: AmplitudeState,
    alpha: float,
    beta: float,
    noise_std: float = 0.0,
    rng: np.random.Generator | None = None,
) -> AmplitudeState:
    """One ``x <- sin(2f)/2 + xi_x`` update with additive noise; the quadrature
    component relaxes to pure noise.  Without noise this map coincides with
    :func:`step_poor_man` (cos^2(t - pi/4) - 1/2 == sin(2t)/2)."""
    noise_x = _draw(rng, noise_std, graph.n)
    noise_y = _draw(rng, noise_std, graph.n)
    x_next, y_next = _trig_xy(graph, state.x, alpha, beta, noise_x, noise_y)
    return AmplitudeState(x_next, y_next)


def sign_readout(state) -> np.ndarray:
    """Binarize amplitudes: +1 where x > 0, -1 where x < 0, +1 at exactly 0."""
    x = state.x if isinstance(state, AmplitudeState) else np.asarray(state, dtype=float)
    return np.where(x < 0, -1, 1).astype(np.int64)


def fixed_points(alpha: float, tol: float = 1e-10) -> tuple[float, ...]:
    """Stable amplitude levels of the uncoupled update x <- sin(2*alpha*x)/2.

    The slope of the map at the origin is alpha, so the origin is the only
    stable point up to alpha = 1; above it the origin destabilizes and a
    symmetric pair +-x* appears, located here by bisection.
    """
    if alpha < 0:
        raise ValueError(f"feedback gain must be non-negative, got {alpha}")
    if alpha <= 1.0:
        return (0.0,)

    def excess(x):
        return x - 0.5 * np.sin(2.0 * alpha * x)

    lo, hi = 1e-12, 0.5
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if excess(lo) * excess(mid) <= 0:
            hi = mid
        else:
            lo = mid
    root = 0.5 * (lo + hi)
    return (-root, root)


class CoherentIsingMachine(IsingSolver):
    """MAX-CUT solver by simulated coherent-Ising-machine dynamics.

    Amplitudes start in the vacuum state; Gaussian noise is injected for the
    first ``noise_epochs`` epochs to break the symmetry, after which the map
    is deterministic and the amplitudes bifurcate into coherent states.  The
    cut is read out from the amplitude signs after every epoch.

    Parameters
    ----------
    n_epochs : number of update steps
    alpha, beta : feedback and coupling gains
    noise_std : standard deviation of the injected Gaussian noise
    noise_epochs : how many initial epochs keep the noise active
    dynamics : "poor-man" (cos^2 map, noise inside) or "trig" (sin map, noise outside)
    seed : RNG seed
    """

    algorithm = "cim"

    def __init__(
        self,
        n_epochs: int = 100,
        alpha: float = 0.25,
        beta: float = 0.29,
        noise_std: float = 0.1,
        noise_epochs: int = 10,
        dynamics: str = "poor-man",
        seed=None,
    ):
        self.n_epochs = n_epochs
        self.alpha = alpha
        self.beta = beta
        self.noise_std = noise_std
        self.noise_epochs = noise_epochs
        self.dynamics = dynamics
        self.seed = seed

    def _check_params(self, graph):
        super()._check_params(graph)
        if self.alpha < 0 or self.beta < 0:
            raise ValueError(f"gains must be non-negative, got alpha={self.alpha}, beta={self.beta}")
        if self.noise_std < 0:
            raise ValueError(f"noise_std must be non-negative, got {self.noise_std}")
        if self.noise_epochs < 0:
            raise ValueError(f"noise_epochs must be non-negative, got {self.noise_epochs}")
        if self.dynamics not in DYNAMICS:
            raise ValueError(f"dynamics must be one of {DYNAMICS}, got {self.dynamics!r}")

    def _anneal(self, graph, rng):
        x = np.zeros(graph.n)
        y = np.zeros(graph.n)
        for epoch in range(1, self.n_epochs + 1):
            std = self.noise_std if epoch <= self.noise_epochs else 0.0
            if self.dynamics == "poor-man":
                x = _poor_man_x(graph, x, self.alpha, self.beta, _draw(rng, std, graph.n))
            else:
                x, y = _trig_xy(
                    graph, x, self.alpha, self.beta,
                    _draw(rng, std, graph.n), _draw(rng, std, graph.n),
                )
            yield sign_readout(x)
        self.state_ = AmplitudeState(x, y)
