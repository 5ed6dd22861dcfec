"""Regular graphs, cuts and expansion.

Edge sums everywhere count each unordered edge once, which is what makes
the Rayleigh quotient of an indicator equal the expansion of its set.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, FrozenSet, Iterable, Sequence, Tuple

import numpy as np

from ..errors import InvalidArgumentError

VertexSet = FrozenSet[int]


@dataclass(frozen=True)
class Graph:
    """A simple r-regular undirected graph on vertices ``0..n-1``.

    Attributes:
        n: Vertex count, at least 2.
        r: Common degree of every vertex.
        edges: Each unordered edge once, as ``(u, v)`` with ``u < v``, sorted.
    """
    n: int
    r: int
    edges: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 2:
            raise InvalidArgumentError(f"graph needs at least 2 vertices, got n={self.n}")
        if self.r < 1:
            raise InvalidArgumentError(f"degree must be at least 1, got r={self.r}")
        normalised = []
        for u, v in self.edges:
            if u == v:
                raise InvalidArgumentError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidArgumentError(f"edge ({u}, {v}) has a vertex outside 0..{self.n - 1}")
            normalised.append((min(u, v), max(u, v)))
        normalised.sort()
        for a, b in zip(normalised, normalised[1:]):
            if a == b:
                raise InvalidArgumentError(f"parallel edge {a}")
        degrees = np.zeros(self.n, dtype=np.int64)
        for u, v in normalised:
            degrees[u] += 1
            degrees[v] += 1
        bad = np.flatnonzero(degrees != self.r)
        if bad.size:
            v = int(bad[0])
            raise InvalidArgumentError(
                f"graph is not {self.r}-regular: vertex {v} has degree {int(degrees[v])}",
                {"vertex": v, "degree": int(degrees[v])},
            )
        object.__setattr__(self, "edges", tuple(normalised))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Build a graph and infer the degree from vertex 0."""
        edges = [(int(u), int(v)) for u, v in edges]
        r = sum(1 for u, v in edges if u == 0 or v == 0)
        return cls(n=n, r=r, edges=tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_array(self) -> np.ndarray:
        """Edges as an ``(m, 2)`` integer array."""
        if not self.edges:
            return np.zeros((0, 2), dtype=np.int64)
        return np.asarray(self.edges, dtype=np.int64)

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        e = self.edge_array
        a[e[:, 0], e[:, 1]] = 1.0
        a[e[:, 1], e[:, 0]] = 1.0
        return a

    @cached_property
    def laplacian(self) -> np.ndarray:
        """Combinatorial Laplacian ``rI - A``; ``f^T L f`` is the edge sum of squared differences."""
        return self.r * np.eye(self.n) - self.adjacency

    @cached_property
    def normalized_laplacian(self) -> np.ndarray:
        return np.eye(self.n) - self.adjacency / self.r

    @cached_property
    def neighbours(self) -> Tuple[Tuple[int, ...], ...]:
        nbrs = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def vertex_set(self, S: Iterable[int]) -> VertexSet:
        """Validate vertex ids and return them as a frozenset."""
        out = frozenset(int(v) for v in S)
        for v in out:
            if not 0 <= v < self.n:
                raise InvalidArgumentError(f"vertex {v} outside 0..{self.n - 1}")
        return out

    def indicator(self, S: Iterable[int]) -> np.ndarray:
        f = np.zeros(self.n)
        f[sorted(self.vertex_set(S))] = 1.0
        return f


@dataclass(frozen=True)
class Cut:
    """A reported cut: the smaller side S with its exact expansion.

    Attributes:
        S: Vertex set with ``0 < |S| <= n/2``.
        expansion: ``cut_edges / (r |S|)`` as an exact fraction.
        cut_edges: Number of edges leaving S.
        method: Name of the procedure that produced the cut.
        seed: Seed of the producing run, if randomized.
        trace: Intermediate quantities for audit.
    """
    S: VertexSet
    expansion: Fraction
    cut_edges: int
    method: str = ""
    seed: int | None = None
    trace: Dict[str, Any] = field(default_factory=dict, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "S": sorted(self.S),
            "expansion": float(self.expansion),
            "expansion_exact": f"{self.expansion.numerator}/{self.expansion.denominator}",
            "cut_edges": self.cut_edges,
            "method": self.method,
            "seed": self.seed,
            "trace": self.trace,
        }


def cut_edges(G: Graph, S: Iterable[int]) -> int:
    """Number of edges with exactly one endpoint in S."""
    f = G.indicator(S)
    e = G.edge_array
    if e.size == 0:
        return 0
    return int(np.count_nonzero(f[e[:, 0]] != f[e[:, 1]]))


def expansion(G: Graph, S: Iterable[int]) -> Fraction:
    """Exact expansion ``|E(S, S-bar)| / (r |S|)``.

    Raises:
        InvalidArgumentError: if S is empty or all of V.
    """
    S = G.vertex_set(S)
    if not S or len(S) == G.n:
        raise InvalidArgumentError("expansion needs a nonempty proper vertex subset", {"size": len(S)})
    return Fraction(cut_edges(G, S), G.r * len(S))


def smaller_side(G: Graph, S: Iterable[int]) -> VertexSet:
    """Return S or its complement, whichever has at most n/2 vertices.

    Halves of equal size resolve to the one whose sorted ids are lexicographically smaller.
    """
    S = G.vertex_set(S)
    comp = frozenset(range(G.n)) - S
    if len(S) < len(comp):
        return S
    if len(comp) < len(S):
        return comp
    return min(S, comp, key=lambda x: sorted(x))


def make_cut(G: Graph, S: Iterable[int], method: str = "", seed: int | None = None,
             trace: Dict[str, Any] | None = None) -> Cut:
    """Build a Cut on the smaller side of S."""
    side = smaller_side(G, S)
    value = expansion(G, side)
    return Cut(S=side, expansion=value, cut_edges=cut_edges(G, side), method=method,
               seed=seed, trace=dict(trace or {}))


def rayleigh(G: Graph, f: Sequence[float]) -> float:
    """``sum_E (f(u)-f(v))^2 / (r sum_v f(v)^2)`` with each edge counted once.

    Raises:
        InvalidArgumentError: if f is identically zero or has the wrong length.
    """
    f = np.asarray(f, dtype=float)
    if f.shape != (G.n,):
        raise InvalidArgumentError(f"function has shape {f.shape}, expected ({G.n},)")
    denominator = G.r * float(f @ f)
    if denominator == 0.0:
        raise InvalidArgumentError("Rayleigh quotient of the zero function")
    e = G.edge_array
    numerator = float(np.sum((f[e[:, 0]] - f[e[:, 1]]) ** 2)) if e.size else 0.0
    return numerator / denominator


def support(f: Sequence[float]) -> VertexSet:
    return frozenset(int(v) for v in np.flatnonzero(np.asarray(f, dtype=float)))


def check_disjoint_supports(fs: Sequence[Sequence[float]]) -> None:
    """Raise InvalidArgumentError unless the functions are nonzero with pairwise disjoint supports."""
    seen: set = set()
    for i, f in enumerate(fs):
        supp = support(f)
        if not supp:
            raise InvalidArgumentError(f"function {i} is identically zero")
        overlap = seen & supp
        if overlap:
            raise InvalidArgumentError(
                f"function {i} overlaps an earlier support at vertex {min(overlap)}",
                {"function": i, "vertex": min(overlap)},
            )
        seen |= supp
