"""Tree search over spin flips, driven by oscillator dynamics.

Each epoch evolves the oscillator amplitudes one step, grows a small
look-ahead tree whose edges are the most probable single-spin flips under
the annealing flip distribution, scores every node by its energy drop
relative to the root, backpropagates prior-weighted returns, and greedily
follows positive returns to pick the configuration evolved next epoch.

The "complete" scheme additionally relaxes each node's scoring amplitudes
with one noise-free dynamics step per layer, so rewards and deeper
expansions see where the dynamics would carry each candidate; the "naive"
scheme scores the raw flip configurations.  In both schemes the
configuration handed to the next epoch carries exactly the flips selected
on the greedy path.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .annealing import flip_probabilities, temperature_schedule
from .base import IsingSolver
from .graphs import CouplingGraph
from .oscillator import (
    AmplitudeState,
    _draw,
    _poor_man_x,
    sign_readout,
    step_trig,
)

SCHEMES = ("naive", "complete")


@dataclass
class TreeNode:
    """One candidate configuration in the look-ahead tree.

    ``state`` is the parent's state with one amplitude sign negated; it is
    what selection hands back for the next evolution step.  ``explored``
    holds the relaxed scoring amplitudes of the complete scheme and is None
    in the naive scheme, where scoring happens on ``state`` directly.
    """

    state: AmplitudeState
    depth: int
    flipped_index: int | None = None  # None for the root
    prior: float = 1.0
    reward: float = 0.0
    ret: float = 0.0
    explored: AmplitudeState | None = None
    children: list["TreeNode"] = field(default_factory=list)

    @property
    def search(self) -> AmplitudeState:
        """Amplitudes that rewards and further expansion evaluate."""
        return self.state if self.explored is None else self.explored

    def is_leaf(self) -> bool:
        return not self.children


def evolve(
    graph: CouplingGraph,
    state: AmplitudeState,
    alpha: float,
    beta: float,
    noise_std: float = 0.0,
    rng: np.random.Generator | None = None,
) -> AmplitudeState:
    """One cos^2-map step of the amplitudes; the result seeds the root node."""
    noise = _draw(rng, noise_std, graph.n)
    return AmplitudeState(_poor_man_x(graph, state.x, alpha, beta, noise), state.y)


def _negated(state: AmplitudeState, i: int) -> AmplitudeState:
    x = state.x.copy()
    x[i] = -x[i]
    return AmplitudeState(x, state.y.copy())


def expand(graph: CouplingGraph, node: TreeNode, breadth: int, t_star: float) -> list[TreeNode]:
    """Attach up to ``breadth`` children, one per top-probability spin flip.

    Probabilities come from the annealing flip distribution evaluated on the
    node's scoring readout; each child negates one amplitude and inherits
    that spin's probability as its prior.  Ties break toward the lower spin
    index (the probabilities of equal-energy flips are bit-identical, so a
    stable sort suffices).
    """
    dist = flip_probabilities(graph, sign_readout(node.search), t_star)
    order = np.argsort(-dist.p, kind="stable")[: min(breadth, graph.n)]
    children = []
    for idx in order:
        i = int(idx)
        child = TreeNode(
            state=_negated(node.state, i),
            depth=node.depth + 1,
            flipped_index=i,
            prior=float(dist.p[i]),
            explored=None if node.explored is None else _negated(node.explored, i),
        )
        children.append(child)
    node.children = children
    return children


def explore(graph: CouplingGraph, node: TreeNode, alpha: float, beta: float) -> TreeNode:
    """Relax a node's scoring amplitudes with one noise-free sin-map step.

    Complete scheme only.  Relaxations compound along a root-to-leaf path
    (each layer steps from its parent's relaxed amplitudes), while the flip
    configuration in ``state`` stays untouched.
    """
    node.explored = step_trig(graph, node.search, alpha, beta)
    return node


def reward(graph: CouplingGraph, node_state: AmplitudeState, root_state: AmplitudeState) -> float:
    """Energy drop of the node's readout relative to the root's; positive is better."""
    return float(
        graph.hamiltonian(sign_readout(root_state)) - graph.hamiltonian(sign_readout(node_state))
    )


def build_tree(
    graph: CouplingGraph,
    root_state: AmplitudeState,
    depth: int,
    breadth: int,
    scheme: str,
    alpha: float,
    beta: float,
    t_star: float,
) -> TreeNode:
    """Grow the look-ahead tree layer by layer and score every node."""
    root = TreeNode(state=root_state, depth=0)
    root_energy = graph.hamiltonian(sign_readout(root_state))
    layer = [root]
    for _ in range(depth):
        next_layer = []
        for node in layer:
            for child in expand(graph, node, breadth, t_star):
                if scheme == "complete":
                    explore(graph, child, alpha, beta)
                child.reward = float(root_energy - graph.hamiltonian(sign_readout(child.search)))
                next_layer.append(child)
        layer = next_layer
    return root


def backpropagate(root: TreeNode) -> TreeNode:
    """Fill in returns bottom-up: ret = reward + sum(prior_c * ret_c over children)."""
    stack = [(root, False)]
    while stack:
        node, ready = stack.pop()
        if ready:
            node.ret = node.reward + sum(c.prior * c.ret for c in node.children)
        else:
            stack.append((node, True))
            stack.extend((c, False) for c in node.children)
    return root


def select(root: TreeNode) -> AmplitudeState:
    """Greedy descent along the highest positive returns.

    Stops at the first node with no strictly positive child return (possibly
    the root itself); sibling ties break toward the lower flipped index.
    Returns the final node's flip configuration: relative to the root, the
    indices flipped along the greedy path are negated and nothing else moves
    (scoring relaxations are not handed onward).
    """
    node = root
    while node.children:
        best = min(node.children, key=lambda c: (-c.ret, c.flipped_index))
        if best.ret <= 0:
            break
        node = best
    return node.state


class CoherentIsingTreeSearch(IsingSolver):
    """MAX-CUT solver composing oscillator evolution with flip-tree look-ahead.

    Per epoch: evolve the amplitudes one step, build a depth/breadth-bounded
    tree of candidate spin flips, backpropagate returns, and continue from
    the most promising node.  The quasi-temperature that shapes the flip
    distribution follows the same per-epoch schedule as the annealing solver.

    Parameters
    ----------
    n_epochs : number of epochs
    depth, breadth : tree dimensions (depth >= 1, 1 <= breadth <= node count)
    scheme : "naive" scores raw flips; "complete" relaxes candidates when scoring
    alpha, beta : oscillator gains
    noise_std, noise_epochs : initial symmetry-breaking noise, as for the CIM solver
    t_star : initial quasi-temperature of the expansion distribution
    seed : RNG seed
    """

    algorithm = "cits"

    def __init__(
        self,
        n_epochs: int = 100,
        depth: int = 2,
        breadth: int = 2,
        scheme: str = "naive",
        alpha: float = 0.25,
        beta: float = 0.29,
        noise_std: float = 0.1,
        noise_epochs: int = 10,
        t_star: float = 1.0,
        seed=None,
    ):
        self.n_epochs = n_epochs
        self.depth = depth
        self.breadth = breadth
        self.scheme = scheme
        self.alpha = alpha
        self.beta = beta
        self.noise_std = noise_std
        self.noise_epochs = noise_epochs
        self.t_star = t_star
        self.seed = seed

    def _check_params(self, graph):
        super()._check_params(graph)
        if self.depth < 1:
            raise ValueError(f"depth must be at least 1, got {self.depth}")
        if not (1 <= self.breadth <= graph.n):
            raise ValueError(
                f"breadth must be between 1 and the node count {graph.n}, got {self.breadth}"
            )
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.alpha < 0 or self.beta < 0:
            raise ValueError(f"gains must be non-negative, got alpha={self.alpha}, beta={self.beta}")
        if self.noise_std < 0 or self.noise_epochs < 0:
            raise ValueError("noise_std and noise_epochs must be non-negative")
        if self.t_star <= 0:
            raise ValueError(f"t_star must be positive, got {self.t_star}")

    def _anneal(self, graph, rng):
        state = AmplitudeState(np.zeros(graph.n), np.zeros(graph.n))
        t_star = float(self.t_star)
        for epoch in range(1, self.n_epochs + 1):
            std = self.noise_std if epoch <= self.noise_epochs else 0.0
            state = evolve(graph, state, self.alpha, self.beta, std, rng)
            t_star = temperature_schedule(t_star, epoch, self.n_epochs)
            root = build_tree(
                graph, state, self.depth, self.breadth, self.scheme,
                self.alpha, self.beta, t_star,
            )
            backpropagate(root)
            state = select(root)
            yield sign_readout(state)
        self.state_ = state
