"""Uniform hypergraphs, dual perturbations, and their text file formats.

File format (both kinds): one edge per line, whitespace-separated 1-based
vertex ids, ``#`` starts a comment, blank lines are skipped.  Perturbation
lines may end with a ``w=<real>`` token (default weight 1.0).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import factorial, isfinite
from pathlib import Path
from typing import Iterable, Sequence

from .errors import InvalidPerturbation, ParseError
from .tensor import SparseSymTensor


@dataclass(frozen=True)
class Hypergraph:
    """An m-uniform hypergraph on vertices 1..n.

    Edges are stored as strictly increasing tuples of 1-based vertex ids.
    """

    n: int
    m: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"uniformity must be >= 2, got {self.m}")
        if self.n < 1:
            raise ValueError(f"vertex count must be >= 1, got {self.n}")
        norm = []
        seen = set()
        for e in self.edges:
            e = tuple(sorted(int(v) for v in e))
            if len(e) != self.m:
                raise ValueError(f"edge {e} does not have {self.m} vertices")
            if len(set(e)) != self.m:
                raise ValueError(f"edge {e} repeats a vertex")
            if e[0] < 1 or e[-1] > self.n:
                raise ValueError(f"edge {e} has a vertex outside 1..{self.n}")
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v - 1] += 1
        return deg

    def is_regular(self) -> bool:
        return len(set(self.degrees())) == 1

    def neighbors(self, v: int) -> set[int]:
        return {u for e in self.edges if v in e for u in e if u != v}

    def is_connected(self) -> bool:
        if not self.edges:
            return False
        incident: list[list[int]] = [[] for _ in range(self.n + 1)]
        for k, e in enumerate(self.edges):
            for v in e:
                incident[v].append(k)
        seen = {1}
        queue = deque([1])
        while queue:
            u = queue.popleft()
            for k in incident[u]:
                for w in self.edges[k]:
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
        return len(seen) == self.n

    def adjacency_tensor(self) -> SparseSymTensor:
        return adjacency_tensor(self)

    def relabel(self, perm: Sequence[int]) -> "Hypergraph":
        """Rename vertex v to ``perm[v-1]`` (``perm`` is a permutation of 1..n)."""
        return Hypergraph(self.n, self.m, tuple(tuple(perm[v - 1] for v in e) for e in self.edges))


def adjacency_tensor(H: Hypergraph) -> SparseSymTensor:
    """Adjacency tensor: 1/(m-1)! at every permutation of every edge."""
    value = 1.0 / factorial(H.m - 1)
    return SparseSymTensor(H.m, H.n, {tuple(v - 1 for v in e): value for e in H.edges})


@dataclass(frozen=True)
class Perturbation:
    """Weighted edges defining a dual-part tensor.

    ``weight`` is the value placed at every permutation of the tuple; it is
    not divided by (m-1)!.  Repeated edges are summed.
    """

    entries: tuple[tuple[tuple[int, ...], float], ...] = ()

    def __post_init__(self):
        norm = []
        for e, w in self.entries:
            e = tuple(sorted(int(v) for v in e))
            w = float(w)
            if len(set(e)) != len(e):
                raise ValueError(f"perturbation edge {e} repeats a vertex")
            if e and e[0] < 1:
                raise ValueError(f"perturbation edge {e} has a vertex id < 1")
            if not isfinite(w):
                raise ValueError(f"perturbation weight {w} is not finite")
            norm.append((e, w))
        if len({len(e) for e, _ in norm}) > 1:
            raise ValueError("perturbation edges have different sizes")
        object.__setattr__(self, "entries", tuple(norm))

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], weight: float = 1.0) -> "Perturbation":
        return cls(tuple((tuple(e), weight) for e in edges))

    @classmethod
    def combine(cls, perturbations: Iterable["Perturbation"]) -> "Perturbation":
        return cls(tuple(item for p in perturbations for item in p.entries))

    @property
    def m(self) -> int | None:
        return len(self.entries[0][0]) if self.entries else None

    def __len__(self):
        return len(self.entries)

    def check_fits(self, H: Hypergraph):
        if self.m is not None and self.m != H.m:
            raise InvalidPerturbation(
                f"perturbation edges have {self.m} vertices but the hypergraph is {H.m}-uniform"
            )
        for e, _ in self.entries:
            if e[-1] > H.n:
                raise InvalidPerturbation(f"perturbation edge {e} has a vertex outside 1..{H.n}")

    def to_tensor(self, n: int, m: int) -> SparseSymTensor:
        if self.m is not None and self.m != m:
            raise InvalidPerturbation(f"perturbation edges have {self.m} vertices, expected {m}")
        for e, _ in self.entries:
            if e[-1] > n:
                raise InvalidPerturbation(f"perturbation edge {e} has a vertex outside 1..{n}")
        return SparseSymTensor.from_items(
            m, n, ((tuple(v - 1 for v in e), w) for e, w in self.entries), accumulate=True
        )


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _parse_vertices(tokens: list[str], lineno: int) -> tuple[int, ...]:
    try:
        verts = tuple(int(t) for t in tokens)
    except ValueError:
        raise ParseError(f"malformed line, expected integer vertex ids: {' '.join(tokens)!r}", lineno)
    if not verts:
        raise ParseError("line has a weight but no vertices", lineno)
    if min(verts) < 1:
        raise ParseError(f"vertex id {min(verts)} < 1", lineno)
    if len(set(verts)) != len(verts):
        raise ParseError(f"repeated vertex in edge {verts}", lineno)
    return verts


def _edges_from_text(text: str, weighted: bool):
    rows = []
    size = None
    for lineno, tokens in _content_lines(text):
        w = 1.0
        if weighted and tokens[-1].startswith("w="):
            try:
                w = float(tokens[-1][2:])
            except ValueError:
                raise ParseError(f"malformed weight token {tokens[-1]!r}", lineno)
            if not isfinite(w):
                raise ParseError(f"weight {w} is not finite", lineno)
            tokens = tokens[:-1]
        verts = _parse_vertices(tokens, lineno)
        if size is None:
            size = len(verts)
        elif len(verts) != size:
            raise ParseError(f"non-uniform edge: {len(verts)} vertices, expected {size}", lineno)
        rows.append((lineno, verts, w))
    return rows, size


def parse_hypergraph(text: str, n: int | None = None) -> Hypergraph:
    """Parse an edge list.  Uniformity is fixed by the first edge.

    ``n`` defaults to the largest vertex id.  An edgeless file yields a
    single isolated vertex (2-uniform) unless ``n`` says otherwise.
    """
    rows, size = _edges_from_text(text, weighted=False)
    if size is not None and size < 2:
        raise ParseError("edges must have at least 2 vertices", rows[0][0])
    max_id = max((max(v) for _, v, _ in rows), default=0)
    if n is None:
        n = max(max_id, 1)
    elif n < max_id:
        raise ParseError(f"vertex count override {n} is smaller than the largest vertex id {max_id}")
    seen = {}
    for lineno, verts, _ in rows:
        key = tuple(sorted(verts))
        if key in seen:
            raise ParseError(f"duplicate edge {key} (first seen on line {seen[key]})", lineno)
        seen[key] = lineno
    return Hypergraph(n, size or 2, tuple(seen))


def parse_perturbation(text: str) -> Perturbation:
    rows, _ = _edges_from_text(text, weighted=True)
    return Perturbation(tuple((verts, w) for _, verts, w in rows))


def parse_perturbation_edge(spec: str) -> Perturbation:
    """Parse the inline form ``v1,v2,...[,w=W]``."""
    tokens = [t.strip() for t in spec.split(",") if t.strip()]
    if not tokens:
        raise ParseError(f"empty perturbation edge {spec!r}")
    return parse_perturbation(" ".join(tokens))


def read_hypergraph(path: str | Path, n: int | None = None) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text(encoding="utf-8"), n=n)


def read_perturbation(path: str | Path) -> Perturbation:
    return parse_perturbation(Path(path).read_text(encoding="utf-8"))


def format_hypergraph(H: Hypergraph, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    lines.append(f"# n={H.n} m={H.m}")
    lines += [" ".join(map(str, e)) for e in H.edges]
    return "\n".join(lines) + "\n"


def format_perturbation(P: Perturbation, header: str | None = None) -> str:
    lines = [f"# {header}"] if header else []
    for e, w in P.entries:
        line = " ".join(map(str, e))
        if w != 1.0:
            line += f" w={w!r}"
        lines.append(line)
    return "\n".join(lines) + "\n"
