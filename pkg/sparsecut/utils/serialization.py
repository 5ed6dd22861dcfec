"""JSON and binary encodings of solutions, distance matrices, partitions, covers and cuts."""

import json
import math
import struct
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

import numpy as np

from ..errors import InvalidArgumentError
from ..graph.graph import Cut, Graph
from ..metric.distance import DistanceMatrix
from ..partition.covers import Certificate, Cover
from ..partition.random_partition import Partition
from ..sdp.solution import EmbeddingSolution, SASolution, pattern_bits
from .enum import CertificateVariant, DistanceKind, SolutionKind

_HEADER = struct.Struct("<II")


def to_jsonable(value: Any) -> Any:
    """Plain JSON types for report payloads; non-finite floats become None."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(v) for v in value)
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating, Fraction)):
        value = float(value)
        return value if math.isfinite(value) else None
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    if value is None or isinstance(value, str):
        return value
    return str(value)


def dumps(payload: Dict[str, Any]) -> str:
    return json.dumps(to_jsonable(payload), indent=2, sort_keys=True)


# Solutions

def solution_to_dict(sol: EmbeddingSolution) -> Dict[str, Any]:
    return {
        "n": sol.n,
        "m": sol.m,
        "vectors": sol.vectors.tolist(),
        "objective": sol.objective,
        "kind": sol.kind.value,
        "tolerances": dict(sol.tolerances),
    }


def solution_from_dict(data: Dict[str, Any]) -> EmbeddingSolution:
    vectors = np.asarray(data["vectors"], dtype=float)
    if vectors.shape != (data["n"], data["m"]):
        raise InvalidArgumentError(f"vectors have shape {vectors.shape}, header says ({data['n']}, {data['m']})")
    return EmbeddingSolution(vectors=vectors, objective=float(data["objective"]), kind=SolutionKind(data["kind"]),
                             tolerances=dict(data.get("tolerances", {})))


def sa_to_dict(sa: SASolution) -> Dict[str, Any]:
    """Patterns are keyed by bitstring; character i is the side of ``R[i]``."""
    size = len(sa.R)
    return {
        "R": list(sa.R),
        "n": sa.n,
        "patterns": {
            pattern_bits(b, size): {"p": float(sa.p[b]), "d": sa.d[b].tolist()}
            for b in range(1 << size)
        },
    }


def sa_from_dict(data: Dict[str, Any]) -> SASolution:
    R = tuple(data["R"])
    n = int(data["n"])
    size = len(R)
    p = np.zeros(1 << size)
    d = np.zeros((1 << size, n, n))
    for bits, entry in data["patterns"].items():
        if len(bits) != size or set(bits) - {"0", "1"}:
            raise InvalidArgumentError(f"bad pattern key {bits!r} for |R|={size}")
        b = sum(1 << i for i, c in enumerate(bits) if c == "1")
        p[b] = entry["p"]
        d[b] = entry["d"]
    return SASolution(R=R, p=p, d=d)


# Distance matrices

def distances_to_bytes(d: DistanceMatrix) -> bytes:
    """Little-endian ``<II`` header (n, kind code) followed by row-major float64 values."""
    return _HEADER.pack(d.n, d.kind.code) + np.ascontiguousarray(d.values, dtype="<f8").tobytes()


def distances_from_bytes(raw: bytes) -> DistanceMatrix:
    if len(raw) < _HEADER.size:
        raise InvalidArgumentError("distance matrix payload is shorter than its header")
    n, code = _HEADER.unpack_from(raw)
    body = raw[_HEADER.size:]
    if len(body) != 8 * n * n:
        raise InvalidArgumentError(f"expected {8 * n * n} bytes of values for n={n}, got {len(body)}")
    try:
        kind = DistanceKind.from_code(code)
    except IndexError:
        raise InvalidArgumentError(f"unknown distance kind code {code}")
    values = np.frombuffer(body, dtype="<f8").reshape(n, n)
    return DistanceMatrix(values, kind)


def distances_from_dict(data: Dict[str, Any]) -> DistanceMatrix:
    return DistanceMatrix(np.asarray(data["values"], dtype=float), DistanceKind(data["kind"]))


def write_distances(d: DistanceMatrix, path: str | Path) -> None:
    Path(path).write_bytes(distances_to_bytes(d))


def read_distances(path: str | Path) -> DistanceMatrix:
    return distances_from_bytes(Path(path).read_bytes())


# Partitions, covers and cuts

def partition_to_dict(P: Partition) -> Dict[str, Any]:
    return to_jsonable(P.to_dict())


def partition_from_dict(data: Dict[str, Any]) -> Partition:
    return Partition(blocks=tuple(frozenset(b) for b in data["blocks"]), delta=float(data["delta"]),
                     scheme=data["scheme"], seed=data.get("seed"), parameter=data.get("parameter"))


def cover_to_dict(cover: Cover) -> Dict[str, Any]:
    return to_jsonable(cover.to_dict())


def cover_from_dict(data: Dict[str, Any]) -> Cover:
    return Cover(sets=tuple(frozenset(s) for s in data["sets"]), diameters=tuple(data["diameters"]),
                 metric=data["metric"])


def cut_to_dict(cut: Cut) -> Dict[str, Any]:
    return to_jsonable(cut.to_dict())


def cut_from_dict(data: Dict[str, Any]) -> Cut:
    numerator, denominator = (int(x) for x in data["expansion_exact"].split("/"))
    return Cut(S=frozenset(data["S"]), expansion=Fraction(numerator, denominator), cut_edges=int(data["cut_edges"]),
               method=data.get("method", ""), seed=data.get("seed"), trace=dict(data.get("trace", {})))


def certificate_from_dict(G: Graph, data: Dict[str, Any]) -> Certificate:
    """Rebuild a certificate; the recorded values are recomputed from G."""
    metadata = dict(data.get("metadata", {}))
    if data["variant"] == CertificateVariant.Spectral.value:
        return Certificate.spectral(G, data["functions"], **metadata)
    if data["variant"] == CertificateVariant.Expansion.value:
        return Certificate.expansion(G, data["sets"], **metadata)
    raise InvalidArgumentError(f"unknown certificate variant {data['variant']!r}")
