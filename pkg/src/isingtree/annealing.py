"""Parallel simulated annealing with synchronous quasi-equilibrium spin updates.

Every epoch flips each spin independently with a probability proportional to
the softmax of its (negated) single-flip energy change, scaled by a
quasi-temperature that follows a warm-up / quench / slow-decay schedule.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .base import IsingSolver
from .graphs import CouplingGraph, check_spins

# Schedule factors: warm up through the first quarter of the run, quench the
# second quarter, then decay slowly.  Boundaries compare the 1-based epoch to
# n_epochs/4 and n_epochs/2 inclusively.
HEAT_FACTOR = 1.05
QUENCH_FACTOR = 0.95
DECAY_FACTOR = 0.99


def temperature_schedule(t_star: float, epoch: int, n_epochs: int) -> float:
    """One multiplicative update of the quasi-temperature at the given epoch."""
    if epoch <= n_epochs / 4:
        return HEAT_FACTOR * t_star
    if epoch <= n_epochs / 2:
        return QUENCH_FACTOR * t_star
    return DECAY_FACTOR * t_star


@dataclass(frozen=True)
class FlipDistribution:
    """Per-spin flip probabilities for one synchronous update.

    ``p`` holds the temperature-scaled softmax weights clamped to [0, 1];
    before clamping they sum to the quasi-temperature.  ``z`` is the softmax
    normalization sum(exp(-delta_h)).
    """

    p: np.ndarray
    z: float


def flip_probabilities(graph: CouplingGraph, spins, t_star: float) -> FlipDistribution:
    """Softmax of the negated flip energies, scaled by t_star and clamped to [0, 1]."""
    if t_star <= 0:
        raise ValueError(f"quasi-temperature must be positive, got {t_star}")
    dh = graph.delta_h_all(spins)
    # max-shift keeps the exponentials finite; the ratio is unchanged
    shift = dh.min()
    weights = np.exp(-(dh - shift).astype(float))
    total = float(weights.sum())
    p = np.clip(t_star * weights / total, 0.0, 1.0)
    z = float(np.exp(np.log(total) - shift))
    return FlipDistribution(p=p, z=z)


def sa_step(graph: CouplingGraph, spins, t_star: float, rng: np.random.Generator) -> np.ndarray:
    """Synchronous update: flip each spin independently with its own probability."""
    s = check_spins(spins, graph.n)
    p = flip_probabilities(graph, s, t_star).p
    flips = rng.random(graph.n) < p
    out = s.copy()
    out[flips] *= -1
    return out


class SimulatedAnnealing(IsingSolver):
    """MAX-CUT solver by parallel simulated annealing.

    Starts from the all-(+1) configuration (cut 0) and runs ``n_epochs``
    synchronous updates, advancing the quasi-temperature once per epoch.
    The expected number of flips per epoch is about the current
    quasi-temperature (k_B*T is fixed at 1).

    Parameters
    ----------
    n_epochs : number of annealing epochs, at least 4
    t_star : initial quasi-temperature
    seed : RNG seed; identical seeds give bit-identical trajectories
    """

    algorithm = "sa"

    def __init__(self, n_epochs: int = 100, t_star: float = 1.0, seed=None):
        self.n_epochs = n_epochs
        self.t_star = t_star
        self.seed = seed

    def _check_params(self, graph):
        super()._check_params(graph)
        if self.n_epochs < 4:
            raise ValueError("n_epochs must be at least 4 so the schedule phases are distinct")
        if self.t_star <= 0:
            raise ValueError(f"t_star must be positive, got {self.t_star}")

    def _anneal(self, graph, rng):
        spins = np.ones(graph.n, dtype=np.int64)
        t_star = float(self.t_star)
        for epoch in range(1, self.n_epochs + 1):
            t_star = temperature_schedule(t_star, epoch, self.n_epochs)
            spins = sa_step(graph, spins, t_star, rng)
            yield spins
