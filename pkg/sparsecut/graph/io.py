"""Graph text format.

First line ``n r m``, then m lines ``u v`` with 0-based vertex ids. Blank
lines and ``#`` comments are ignored. Input is rejected unless it describes
a simple r-regular graph; errors carry the offending line number.
"""

from pathlib import Path

from ..errors import GraphParseError, InvalidArgumentError
from .graph import Graph


def _ints(raw: str, count: int, line_no: int, what: str) -> list[int]:
    parts = raw.split()
    if len(parts) != count:
        raise GraphParseError(f"expected {what} ({count} integers), got {raw.strip()!r}", line=line_no)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphParseError(f"non-integer token in {raw.strip()!r}", line=line_no)


def parse_graph(text: str) -> Graph:
    lines = [(i + 1, line.split("#", 1)[0]) for i, line in enumerate(text.splitlines())]
    lines = [(no, line) for no, line in lines if line.strip()]
    if not lines:
        raise GraphParseError("empty graph file", line=1)

    header_no, header = lines[0]
    n, r, m = _ints(header, 3, header_no, "header 'n r m'")
    if n < 2 or r < 1 or m < 0:
        raise GraphParseError(f"invalid header values n={n} r={r} m={m}", line=header_no)
    if n * r != 2 * m:
        raise GraphParseError(f"header inconsistent: n*r={n * r} but 2m={2 * m}", line=header_no)

    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] + 1 if body else header_no + 1)
        raise GraphParseError(f"expected {m} edge lines, found {len(body)}", line=where)

    seen = {}
    degree = [0] * n
    edges = []
    for no, raw in body:
        u, v = _ints(raw, 2, no, "edge 'u v'")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex id out of range 0..{n - 1} in edge ({u}, {v})", line=no)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", line=no)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"parallel edge {key}, first seen on line {seen[key]}", line=no)
        seen[key] = no
        degree[u] += 1
        degree[v] += 1
        edges.append(key)

    for v, d in enumerate(degree):
        if d != r:
            raise GraphParseError(f"graph is not {r}-regular: vertex {v} has degree {d}",
                                  diagnostics={"vertex": v, "degree": d})
    try:
        return Graph(n=n, r=r, edges=tuple(edges))
    except InvalidArgumentError as e:
        raise GraphParseError(str(e), diagnostics=e.diagnostics)


def read_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise GraphParseError(f"cannot read graph file '{path}': {e.strerror}", diagnostics={"path": str(path)})
    return parse_graph(text)


def format_graph(G: Graph) -> str:
    lines = [f"{G.n} {G.r} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def write_graph(G: Graph, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_graph(G))
