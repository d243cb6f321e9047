"""Ising-machine heuristics for MAX-CUT: annealing, oscillator dynamics, tree search.

The three solvers share one estimator interface: construct with
hyperparameters, ``fit`` on a coupling graph, then read the fitted
``best_cut_`` / ``best_config_`` / ``cuts_per_epoch_`` attributes.
"""

from .annealing import SimulatedAnnealing, flip_probabilities, temperature_schedule
from .benchmark import (
    EnsembleStats,
    RunRecord,
    derive_seed,
    epochs_to_target,
    run_ensemble,
    scaling_fit,
    write_results,
)
from .exact import ExactResult, exact_max_cut, known_ground_state
from .graphs import (
    GRAPH_FAMILIES,
    CouplingGraph,
    EdgeListError,
    circular_ladder,
    make_graph,
    mobius_ladder,
    read_edge_list,
    square_lattice,
    write_edge_list,
)
from .oscillator import (
    AmplitudeState,
    CoherentIsingMachine,
    default_gains,
    fixed_points,
    sign_readout,
    step_poor_man,
    step_trig,
)
from .tree_search import CoherentIsingTreeSearch, backpropagate, build_tree, select

__version__ = "0.1.0"

__all__ = [
    "AmplitudeState",
    "CoherentIsingMachine",
    "CoherentIsingTreeSearch",
    "CouplingGraph",
    "EdgeListError",
    "EnsembleStats",
    "ExactResult",
    "GRAPH_FAMILIES",
    "RunRecord",
    "SimulatedAnnealing",
    "backpropagate",
    "build_tree",
    "circular_ladder",
    "default_gains",
    "derive_seed",
    "epochs_to_target",
    "exact_max_cut",
    "fixed_points",
    "flip_probabilities",
    "known_ground_state",
    "make_graph",
    "mobius_ladder",
    "read_edge_list",
    "run_ensemble",
    "scaling_fit",
    "select",
    "sign_readout",
    "square_lattice",
    "step_poor_man",
    "step_trig",
    "temperature_schedule",
    "write_edge_list",
    "write_results",
]
