"""Problem instances: unweighted graphs with -1 couplings on every edge.

All solvers in this package work on a :class:`CouplingGraph`, whose symmetric
coupling matrix carries -1 per edge and 0 elsewhere.  Under that convention
minimizing the spin energy maximizes the cut, and the exact identity
``cut == (n_edges - energy) / 2`` holds in integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class EdgeListError(ValueError):
    """Malformed edge-list document; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def check_spins(spins, n: int) -> np.ndarray:
    """Validate a spin configuration: length n, every entry exactly -1 or +1."""
    s = np.asarray(spins)
    if s.ndim != 1 or s.shape[0] != n:
        raise ValueError(f"expected a length-{n} spin vector, got shape {s.shape}")
    s = s.astype(np.int64, copy=False)
    if not np.all(np.abs(s) == 1):
        raise ValueError("spin entries must be exactly -1 or +1")
    return s


@dataclass(frozen=True)
class CouplingGraph:
    """Undirected graph plus its coupling matrix (-1 on edges, 0 elsewhere).

    Immutable after construction; instances are safe to share across threads.
    Build instances through :meth:`from_edges` or the generator functions,
    which normalize and validate the edge set.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    coupling: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "CouplingGraph":
        if n < 1:
            raise ValueError(f"node count must be positive, got {n}")
        normalized = []
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop on node {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for {n} nodes")
            normalized.append((i, j) if i < j else (j, i))
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise ValueError(f"duplicate edge {a}")
        coupling = np.zeros((n, n))
        for i, j in normalized:
            coupling[i, j] = coupling[j, i] = -1.0
        coupling.setflags(write=False)
        return cls(n=n, edges=tuple(normalized), coupling=coupling)

    @classmethod
    def from_adjacency(cls, a) -> "CouplingGraph":
        """Build from a square symmetric matrix: 0/1 adjacency or 0/-1 couplings."""
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix must be symmetric")
        if np.any(np.diag(a) != 0):
            raise ValueError("diagonal must be zero (no self-loops)")
        values = set(np.unique(a).tolist())
        if not (values <= {0.0, 1.0} or values <= {0.0, -1.0}):
            raise ValueError("entries must be 0/1 (adjacency) or 0/-1 (couplings)")
        rows, cols = np.nonzero(a)
        edges = [(int(i), int(j)) for i, j in zip(rows, cols) if i < j]
        return cls.from_edges(a.shape[0], edges)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def hamiltonian(self, spins) -> int:
        """Spin energy -1/2 * sum_jl J[j,l] s_j s_l; equals sum over edges of s_i*s_j here."""
        s = check_spins(spins, self.n)
        sf = s.astype(float)
        return int(round(-0.5 * float(sf @ (self.coupling @ sf))))

    def cut_value(self, spins) -> int:
        """Number of edges whose endpoints carry opposite spins."""
        s = check_spins(spins, self.n)
        if not self.edges:
            return 0
        i, j = self._edge_index()
        return int(np.count_nonzero(s[i] != s[j]))

    def local_fields(self, spins) -> np.ndarray:
        """Per-node coupling field sum_j J[i,j] s_j."""
        s = check_spins(spins, self.n)
        return self.coupling @ s.astype(float)

    def delta_h(self, spins, i: int) -> int:
        """Energy change from negating spin i: H(flipped) - H(current)."""
        if not (0 <= i < self.n):
            raise IndexError(f"spin index {i} out of range for {self.n} nodes")
        s = check_spins(spins, self.n)
        return int(round(2.0 * s[i] * float(self.coupling[i] @ s.astype(float))))

    def delta_h_all(self, spins) -> np.ndarray:
        """Energy change for every single-spin flip, as one integer vector."""
        s = check_spins(spins, self.n)
        dh = 2.0 * s * self.local_fields(s)
        return np.rint(dh).astype(np.int64)

    def _edge_index(self) -> tuple[np.ndarray, np.ndarray]:
        cached = getattr(self, "_edge_arrays", None)
        if cached is None:
            arr = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
            cached = (arr[:, 0], arr[:, 1])
            object.__setattr__(self, "_edge_arrays", cached)
        return cached


def square_lattice(side: int) -> CouplingGraph:
    """Square lattice with both dimensions periodic; side*side nodes, 4-regular.

    Nodes are indexed row-major: (r, c) -> r*side + c.
    """
    if side < 3:
        raise ValueError(f"side length must be at least 3 to avoid parallel edges, got {side}")
    edges = []
    for r in range(side):
        for c in range(side):
            u = r * side + c
            edges.append((u, ((r + 1) % side) * side + c))
            edges.append((u, r * side + (c + 1) % side))
    return CouplingGraph.from_edges(side * side, edges)


def circular_ladder(rungs: int) -> CouplingGraph:
    """Two concentric cycles of the given length joined rung-by-rung (3-regular).

    Outer cycle occupies nodes 0..rungs-1, inner cycle rungs..2*rungs-1.
    """
    if rungs < 3:
        raise ValueError(f"rung count must be at least 3, got {rungs}")
    edges = []
    for i in range(rungs):
        edges.append((i, (i + 1) % rungs))
        edges.append((rungs + i, rungs + (i + 1) % rungs))
        edges.append((i, rungs + i))
    return CouplingGraph.from_edges(2 * rungs, edges)


def mobius_ladder(rungs: int) -> CouplingGraph:
    """Cycle on 2*rungs nodes plus the rung diameters {i, i+rungs} (3-regular)."""
    if rungs < 3:
        raise ValueError(f"rung count must be at least 3, got {rungs}")
    n = 2 * rungs
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, i + rungs) for i in range(rungs)]
    return CouplingGraph.from_edges(n, edges)


GRAPH_FAMILIES = ("square-lattice", "circular-ladder", "mobius-ladder")

_GENERATORS = {
    "square-lattice": square_lattice,
    "circular-ladder": circular_ladder,
    "mobius-ladder": mobius_ladder,
}


def make_graph(family: str, size: int) -> CouplingGraph:
    """Dispatch on family name; size is the side length or rung count."""
    try:
        gen = _GENERATORS[family]
    except KeyError:
        raise ValueError(
            f"unknown graph family {family!r}; expected one of {', '.join(GRAPH_FAMILIES)}"
        ) from None
    return gen(size)


def write_edge_list(graph: CouplingGraph) -> str:
    """Serialize: node count on the first line, then one 'i j' pair per edge."""
    lines = [str(graph.n)]
    lines.extend(f"{i} {j}" for i, j in graph.edges)
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> CouplingGraph:
    """Parse the edge-list format; raises :class:`EdgeListError` naming the bad line."""
    n = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            try:
                n = int(line)
            except ValueError:
                raise EdgeListError(f"expected node count, got {line!r}", lineno) from None
            if n < 1:
                raise EdgeListError(f"node count must be positive, got {n}", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"expected 'i j', got {line!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"non-integer endpoint in {line!r}", lineno) from None
        if i == j:
            raise EdgeListError(f"self-loop on node {i}", lineno)
        if not (0 <= i < j < n):
            raise EdgeListError(f"endpoints must satisfy 0 <= i < j < {n}, got {i} {j}", lineno)
        if (i, j) in seen:
            raise EdgeListError(f"duplicate edge ({i}, {j})", lineno)
        seen.add((i, j))
        edges.append((i, j))
    if n is None:
        raise EdgeListError("empty document: missing node count line")
    return CouplingGraph.from_edges(n, edges)
