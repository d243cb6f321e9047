"""Shared independent references and hypothesis strategies.

The energy/cut references below loop over the edge list directly and never
touch the coupling matrix, so they can't share a bug with the library's
vectorized implementations.
"""

import numpy as np
from hypothesis import strategies as st

from isingtree.graphs import CouplingGraph


def ham_reference(graph: CouplingGraph, spins) -> int:
    # With J = -1 on every edge, H = -1/2 sum_jl J[j,l] s_j s_l reduces to sum s_i*s_j.
    return sum(int(spins[i]) * int(spins[j]) for i, j in graph.edges)


def cut_reference(graph: CouplingGraph, spins) -> int:
    return sum(1 for i, j in graph.edges if spins[i] != spins[j])


@st.composite
def graph_and_spins(draw, max_n: int = 10):
    n = draw(st.integers(min_value=2, max_value=max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, k in zip(pairs, keep) if k]
    spins = draw(st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n))
    return CouplingGraph.from_edges(n, edges), np.array(spins, dtype=np.int64)


@st.composite
def graph_and_amplitudes(draw, max_n: int = 10):
    graph, _ = draw(graph_and_spins(max_n=max_n))
    amps = draw(
        st.lists(
            st.floats(min_value=-0.5, max_value=0.5, allow_nan=False),
            min_size=graph.n,
            max_size=graph.n,
        )
    )
    return graph, np.array(amps, dtype=float)
