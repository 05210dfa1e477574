"""Finite weighted graphs with symmetric nonnegative weights and positive degrees.

Vertices are 0-based contiguous integers.  A graph is stored as a dense
symmetric weight matrix; ``w[i, j] > 0`` means an edge between ``i`` and
``j``, and a positive diagonal entry ``w[i, i]`` is a self-loop (at most
one per vertex).  The vertex degree is the row sum ``d_i = sum_j w[i, j]``,
and every vertex must have ``d_i > 0``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

#: Hard ceiling on vertex counts accepted by the generators.
GENERATOR_SIZE_CAP = 10_000


class GraphErrorKind(Enum):
    ASYMMETRIC_INPUT = "AsymmetricInput"
    NEGATIVE_WEIGHT = "NegativeWeight"
    ZERO_DEGREE_VERTEX = "ZeroDegreeVertex"
    DISCONNECTED = "Disconnected"
    REQUIRES_UNWEIGHTED = "RequiresUnweighted"
    REQUIRES_LOOPLESS = "RequiresLoopless"
    SIZE_CAP_EXCEEDED = "SizeCapExceeded"
    NOT_BIPARTITE = "NotBipartite"
    NO_ODD_WALK = "NoOddWalk"


class GraphError(Exception):
    """Domain error raised by graph operations, tagged with a single kind."""

    def __init__(self, kind: GraphErrorKind, message: str):
        super().__init__(f"{kind.value}: {message}")
        self.kind = kind
        self.message = message


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Immutable weighted graph.

    Attributes
    ----------
    n:
        Number of vertices.
    weights:
        Dense ``(n, n)`` symmetric weight matrix (read-only).
    labels:
        Original vertex labels when the graph was parsed from a labelled
        edge list, in index order.  ``None`` when vertices were born 0-based.
    """

    n: int
    weights: np.ndarray
    labels: tuple[str, ...] | None = None
    degrees: np.ndarray = field(init=False)

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (self.n, self.n):
            raise ValueError(f"weight matrix shape {w.shape} != ({self.n}, {self.n})")
        if not np.array_equal(w, w.T):
            raise GraphError(GraphErrorKind.ASYMMETRIC_INPUT, "weight matrix is not symmetric")
        if (w < 0).any():
            raise GraphError(GraphErrorKind.NEGATIVE_WEIGHT, "edge weights must be nonnegative")
        d = w.sum(axis=1)
        if (d <= 0).any():
            bad = int(np.argmin(d))
            raise GraphError(
                GraphErrorKind.ZERO_DEGREE_VERTEX, f"vertex {bad} has zero degree"
            )
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        d.setflags(write=False)
        object.__setattr__(self, "degrees", d)

    @property
    def volume(self) -> float:
        """Total volume ``vol(V) = sum_i d_i``."""
        return float(self.degrees.sum())

    def edges(self) -> list[tuple[int, int, float]]:
        """Unordered positive-weight edges ``(i, j, w)`` with ``i <= j``, sorted."""
        out = []
        for i in range(self.n):
            for j in range(i, self.n):
                if self.weights[i, j] > 0:
                    out.append((i, j, float(self.weights[i, j])))
        return out

    def has_loops(self) -> bool:
        return bool((np.diag(self.weights) > 0).any())

    def is_unweighted(self) -> bool:
        """True when every existing edge has weight exactly 1."""
        w = self.weights
        return bool(np.all((w == 0) | (w == 1)))

    def subset_volume(self, subset) -> float:
        idx = np.fromiter(subset, dtype=int)
        return float(self.degrees[idx].sum()) if idx.size else 0.0

    def cut_weight(self, subset) -> float:
        """Total weight of edges between ``subset`` and its complement."""
        mask = np.zeros(self.n, dtype=bool)
        mask[list(subset)] = True
        return float(self.weights[mask][:, ~mask].sum())


@dataclass(frozen=True)
class Bipartition:
    """A vertex subset together with the volumes and cut weight it induces."""

    side: frozenset[int]
    vol_side: float
    vol_complement: float
    boundary: float

    @classmethod
    def of(cls, g: WeightedGraph, subset) -> "Bipartition":
        side = frozenset(int(v) for v in subset)
        if not side or len(side) == g.n:
            raise ValueError("subset must be a proper nonempty vertex subset")
        vol = g.subset_volume(side)
        return cls(
            side=side,
            vol_side=vol,
            vol_complement=g.volume - vol,
            boundary=g.cut_weight(side),
        )

    @property
    def cheeger_ratio(self) -> float:
        """Cut weight over the smaller side's volume."""
        return self.boundary / min(self.vol_side, self.vol_complement)

    @property
    def balance(self) -> float:
        """Volume ratio ``min/max`` of the two sides, in ``(0, 1]``."""
        return min(self.vol_side, self.vol_complement) / max(self.vol_side, self.vol_complement)


def build_graph(n: int, edges, labels=None) -> WeightedGraph:
    """Build a graph from an edge list ``[(i, j, w), ...]``.

    Each unordered pair may appear once; ``(i, i, w)`` entries are loops.
    Weights must be strictly positive and every vertex must end up with
    positive degree.
    """
    w = np.zeros((n, n))
    seen = set()
    for i, j, weight in edges:
        i, j = int(i), int(j)
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise ValueError(f"duplicate edge {key}")
        seen.add(key)
        if weight <= 0:
            raise GraphError(
                GraphErrorKind.NEGATIVE_WEIGHT,
                f"edge {key} has non-positive weight {weight}",
            )
        w[i, j] = weight
        w[j, i] = weight
    return WeightedGraph(n=n, weights=w, labels=labels)


def from_matrix(weights: np.ndarray, labels=None) -> WeightedGraph:
    """Wrap an explicit symmetric weight matrix as a graph."""
    w = np.array(weights, dtype=float)
    return WeightedGraph(n=w.shape[0], weights=w, labels=labels)


# ---------------------------------------------------------------------------
# connectivity / bipartiteness / clustering


def _neighbor_lists(g: WeightedGraph) -> list[np.ndarray]:
    return [np.nonzero(g.weights[i] > 0)[0] for i in range(g.n)]


def is_connected(g: WeightedGraph) -> bool:
    """Breadth-first reachability of every vertex from vertex 0."""
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    nbrs = _neighbor_lists(g)
    while queue:
        v = queue.popleft()
        for u in nbrs[v]:
            if not seen[u]:
                seen[u] = True
                queue.append(int(u))
    return bool(seen.all())


def require_connected(g: WeightedGraph) -> None:
    if not is_connected(g):
        raise GraphError(GraphErrorKind.DISCONNECTED, "graph is not connected")


def bipartition_of(g: WeightedGraph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Two-coloring of a bipartite graph, or ``None`` if no proper one exists.

    Returns the color classes ``(V1, V2)`` with the class of vertex 0 first
    (for a connected graph).  A self-loop makes the graph non-bipartite.
    Disconnected graphs are colored component by component.
    """
    if g.has_loops():
        return None
    color = np.full(g.n, -1, dtype=int)
    nbrs = _neighbor_lists(g)
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in nbrs[v]:
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(int(u))
                elif color[u] == color[v]:
                    return None
    return frozenset(np.nonzero(color == 0)[0].tolist()), frozenset(
        np.nonzero(color == 1)[0].tolist()
    )


def is_bipartite(g: WeightedGraph) -> bool:
    return bipartition_of(g) is not None


def clustering_coefficient(g: WeightedGraph) -> float:
    """Global clustering coefficient: 3 * triangles / connected triples.

    Defined for simple unweighted graphs only.  Returns 0 when the graph has
    no connected triple.
    """
    if g.has_loops():
        raise GraphError(GraphErrorKind.REQUIRES_LOOPLESS, "clustering coefficient needs a loopless graph")
    if not g.is_unweighted():
        raise GraphError(
            GraphErrorKind.REQUIRES_UNWEIGHTED, "clustering coefficient needs unit weights"
        )
    a = (g.weights > 0).astype(float)
    triangles = float(np.trace(a @ a @ a)) / 6.0
    deg = a.sum(axis=1)
    triples = float((deg * (deg - 1)).sum()) / 2.0
    if triples == 0:
        return 0.0
    return 3.0 * triangles / triples


# ---------------------------------------------------------------------------
# generators


def _check_cap(n: int) -> None:
    if n > GENERATOR_SIZE_CAP:
        raise GraphError(
            GraphErrorKind.SIZE_CAP_EXCEEDED,
            f"generator size {n} exceeds cap {GENERATOR_SIZE_CAP}",
        )


def complete_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    """K_n with a common edge weight."""
    if n < 2:
        raise ValueError("complete graph needs n >= 2")
    _check_cap(n)
    w = np.full((n, n), float(weight))
    np.fill_diagonal(w, 0.0)
    return WeightedGraph(n=n, weights=w)


def cycle_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    if n < 3:
        raise ValueError("cycle graph needs n >= 3")
    _check_cap(n)
    edges = [(i, (i + 1) % n, weight) for i in range(n)]
    return build_graph(n, edges)


def path_graph(n: int, weight: float = 1.0) -> WeightedGraph:
    if n < 2:
        raise ValueError("path graph needs n >= 2")
    _check_cap(n)
    return build_graph(n, [(i, i + 1, weight) for i in range(n - 1)])


def looped_pair(c: float) -> WeightedGraph:
    """Two vertices joined by a unit edge, each carrying a loop of weight c.

    The family interpolates between a single edge (c=0 is excluded: loops
    must have positive weight, use c>0) and a pair of near-independent
    loops; its nonzero Laplacian eigenvalue is 2/(1+c).
    """
    if c <= 0:
        raise GraphError(GraphErrorKind.NEGATIVE_WEIGHT, "loop weight must be positive")
    return build_graph(2, [(0, 0, c), (1, 1, c), (0, 1, 1.0)])


def bridged_triangles(c: float) -> WeightedGraph:
    """Two triangles with internal weight c joined by a unit bridge edge.

    Vertices 0-2 and 3-5 form the triangles; the bridge is (2, 3).
    """
    if c <= 0:
        raise GraphError(GraphErrorKind.NEGATIVE_WEIGHT, "triangle weight must be positive")
    edges = [
        (0, 1, c),
        (0, 2, c),
        (1, 2, c),
        (3, 4, c),
        (3, 5, c),
        (4, 5, c),
        (2, 3, 1.0),
    ]
    return build_graph(6, edges)


# ---------------------------------------------------------------------------
# serialization


def graph_to_dict(g: WeightedGraph) -> dict:
    """Canonical JSON-ready form: ``{"n": ..., "edges": [[i, j, w], ...]}``."""
    return {"n": g.n, "edges": [[i, j, w] for i, j, w in g.edges()]}


def graph_from_dict(data: dict) -> WeightedGraph:
    return build_graph(int(data["n"]), [tuple(e) for e in data["edges"]])


def parse_edge_list(text: str) -> WeightedGraph:
    """Parse a whitespace edge list: one ``i j w`` triple per line.

    Vertex labels may be arbitrary tokens; they are re-indexed to 0-based
    integers in order of first appearance and the original labels are kept
    on the returned graph.  ``#`` starts a comment.
    """
    index: dict[str, int] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'i j w', got {raw!r}")
        a, b, w_str = parts
        for lab in (a, b):
            if lab not in index:
                index[lab] = len(index)
        edges.append((index[a], index[b], float(w_str)))
    if not edges:
        raise ValueError("empty edge list")
    labels = tuple(sorted(index, key=index.get))
    return build_graph(len(index), edges, labels=labels)


def read_graph(path) -> WeightedGraph:
    """Read a graph from a ``.json`` file or a whitespace edge list."""
    p = Path(path)
    text = p.read_text()
    if p.suffix == ".json" or text.lstrip().startswith("{"):
        return graph_from_dict(json.loads(text))
    return parse_edge_list(text)


def write_graph(g: WeightedGraph, path) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(g)) + "\n")
