"""Small regular test graphs: cycles, cliques, unions, planted clusters and random regular graphs."""

from typing import Sequence

import networkx as nx

from ..errors import InvalidArgumentError
from .graph import Graph


def from_networkx(g: nx.Graph) -> Graph:
    """Convert a networkx graph with integer-labelled nodes to a Graph."""
    mapping = {node: i for i, node in enumerate(sorted(g.nodes()))}
    edges = [(mapping[u], mapping[v]) for u, v in g.edges()]
    degrees = {d for _, d in g.degree()}
    if len(degrees) != 1:
        raise InvalidArgumentError(f"networkx graph is not regular (degrees {sorted(degrees)})")
    return Graph(n=g.number_of_nodes(), r=degrees.pop(), edges=tuple(edges))


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidArgumentError(f"cycle needs n >= 3, got {n}")
    return from_networkx(nx.cycle_graph(n))


def complete(n: int) -> Graph:
    if n < 2:
        raise InvalidArgumentError(f"complete graph needs n >= 2, got {n}")
    return from_networkx(nx.complete_graph(n))


def disjoint_union(*graphs: Graph) -> Graph:
    """Vertex-disjoint union; all parts must share the same degree."""
    if not graphs:
        raise InvalidArgumentError("disjoint_union needs at least one graph")
    degrees = {g.r for g in graphs}
    if len(degrees) != 1:
        raise InvalidArgumentError(f"parts have different degrees {sorted(degrees)}")
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(n=offset, r=graphs[0].r, edges=tuple(edges))


def random_regular(n: int, r: int, seed: int) -> Graph:
    """Uniform-ish random r-regular graph (networkx pairing model)."""
    if n * r % 2 or r >= n:
        raise InvalidArgumentError(f"no simple {r}-regular graph on {n} vertices")
    return from_networkx(nx.random_regular_graph(r, n, seed=seed))


def cluster_graph(blocks: int, block_size: int, bridges: int = 1) -> Graph:
    """Cliques joined in a ring by a few rewired edges, keeping degree ``block_size - 1``.

    Inside block j the edges ``(2i, 2i+1)`` for ``i < bridges`` are removed and
    vertex ``2i`` of block j is joined to vertex ``2i+1`` of block ``j+1``. Each
    block is then a planted set with ``2 * bridges`` boundary edges.
    """
    if blocks < 2:
        raise InvalidArgumentError("cluster_graph needs at least two blocks")
    if block_size < 4 or not 1 <= bridges <= block_size // 2:
        raise InvalidArgumentError(f"invalid block_size={block_size}, bridges={bridges}")

    def vid(block: int, i: int) -> int:
        return block * block_size + i

    removed = {(2 * i, 2 * i + 1) for i in range(bridges)}
    edges = []
    for b in range(blocks):
        for i in range(block_size):
            for j in range(i + 1, block_size):
                if (i, j) not in removed:
                    edges.append((vid(b, i), vid(b, j)))
        nxt = (b + 1) % blocks
        for i in range(bridges):
            edges.append((vid(b, 2 * i), vid(nxt, 2 * i + 1)))
    return Graph(n=blocks * block_size, r=block_size - 1, edges=tuple(edges))


def planted_blocks(blocks: int, block_size: int) -> Sequence[frozenset]:
    """The planted vertex sets of :func:`cluster_graph`."""
    return [frozenset(range(b * block_size, (b + 1) * block_size)) for b in range(blocks)]
