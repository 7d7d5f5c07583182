"""Immutable simple loopless digraphs.

Vertices are the dense integers ``0..n-1``. Arcs are ordered pairs with set
semantics, so ``(u, v)`` and ``(v, u)`` may both be present (a 2-cycle) but
each ordered pair appears at most once.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable

import numpy as np

IN = 1
OUT = 2


class GraphFormatError(ValueError):
    """Malformed edge-list text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PairCase(str, Enum):
    NONADJACENT = "nonadjacent"
    ARC_U_TO_V = "arc_u_to_v"
    ARC_V_TO_U = "arc_v_to_u"
    TWO_CYCLE = "two_cycle"

    def swapped(self) -> PairCase:
        if self is PairCase.ARC_U_TO_V:
            return PairCase.ARC_V_TO_U
        if self is PairCase.ARC_V_TO_U:
            return PairCase.ARC_U_TO_V
        return self


@dataclass(frozen=True)
class VertexStats:
    d_out: int
    d_in: int
    d_tot: int
    t: int  # |N+(v) & N-(v)|, the number of 2-cycle partners


@dataclass(frozen=True)
class PairOverlap:
    """Neighbourhood overlap counts for an ordered pair ``(u, v)``.

    ``n_X_Y`` is ``|N^X(u) & N^Y(v)|`` where ``in``/``out``/``any`` stand for
    the in-, out- and full neighbourhood.
    """

    n_in_in: int
    n_out_out: int
    n_in_out: int
    n_out_in: int
    n_any_in: int
    n_in_any: int
    n_any_out: int
    n_out_any: int
    n_any_any: int
    case: PairCase

    def swapped(self) -> PairOverlap:
        """Counts for ``(v, u)``."""
        return PairOverlap(
            n_in_in=self.n_in_in,
            n_out_out=self.n_out_out,
            n_in_out=self.n_out_in,
            n_out_in=self.n_in_out,
            n_any_in=self.n_in_any,
            n_in_any=self.n_any_in,
            n_any_out=self.n_out_any,
            n_out_any=self.n_any_out,
            n_any_any=self.n_any_any,
            case=self.case.swapped(),
        )


@dataclass(frozen=True)
class ComponentLabels:
    label: tuple[int, ...]
    c: int

    def groups(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.c)]
        for v, lab in enumerate(self.label):
            out[lab].append(v)
        return out


class Digraph:
    """Simple loopless digraph on vertices ``0..n-1``; immutable after construction."""

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        arc_set = set()
        for u, v in arcs:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            arc_set.add((u, v))
        out_sets: list[list[int]] = [[] for _ in range(n)]
        in_sets: list[list[int]] = [[] for _ in range(n)]
        for u, v in sorted(arc_set):
            out_sets[u].append(v)
            in_sets[v].append(u)
        for lst in in_sets:
            lst.sort()
        self._n = n
        self._arcs = frozenset(arc_set)
        self._out = tuple(tuple(s) for s in out_sets)
        self._in = tuple(tuple(s) for s in in_sets)

    @classmethod
    def from_adjacency(cls, adj: np.ndarray) -> Digraph:
        """Build from a square 0/1 matrix with ``adj[u, v]`` marking ``u -> v``."""
        adj = np.asarray(adj, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if adj.diagonal().any():
            raise ValueError("adjacency matrix has a self-loop")
        us, vs = np.nonzero(adj)
        return cls(adj.shape[0], zip(us.tolist(), vs.tolist()))

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._arcs)

    @property
    def arcs(self) -> frozenset[tuple[int, int]]:
        return self._arcs

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self._arcs)

    def out_nbrs(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_nbrs(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def nbrs(self, v: int) -> tuple[int, ...]:
        return self._nbr[v]

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arcs

    @cached_property
    def _nbr(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(set(o) | set(i))) for o, i in zip(self._out, self._in))

    @cached_property
    def nbr_flags(self) -> tuple[dict[int, int], ...]:
        """Per vertex, a map neighbour -> bit flags (``IN`` | ``OUT``)."""
        flags: list[dict[int, int]] = [dict() for _ in range(self._n)]
        for v in range(self._n):
            fv = flags[v]
            for w in self._in[v]:
                fv[w] = IN
            for w in self._out[v]:
                fv[w] = fv.get(w, 0) | OUT
            flags[v] = dict(sorted(fv.items()))
        return tuple(flags)

    @cached_property
    def csr(self) -> dict[str, np.ndarray]:
        """Packed int64 arrays consumed by the compiled kernels."""
        n = self._n
        out_ptr = np.zeros(n + 1, dtype=np.int64)
        in_ptr = np.zeros(n + 1, dtype=np.int64)
        nb_ptr = np.zeros(n + 1, dtype=np.int64)
        out_ptr[1:] = np.cumsum([len(s) for s in self._out])
        in_ptr[1:] = np.cumsum([len(s) for s in self._in])
        nb_ptr[1:] = np.cumsum([len(f) for f in self.nbr_flags])
        out_idx = np.fromiter((w for s in self._out for w in s), dtype=np.int64, count=int(out_ptr[-1]))
        in_idx = np.fromiter((w for s in self._in for w in s), dtype=np.int64, count=int(in_ptr[-1]))
        nb_idx = np.fromiter((w for f in self.nbr_flags for w in f), dtype=np.int64, count=int(nb_ptr[-1]))
        nb_flag = np.fromiter(
            (x for f in self.nbr_flags for x in f.values()), dtype=np.int64, count=int(nb_ptr[-1])
        )
        return {
            "out_ptr": out_ptr,
            "out_idx": out_idx,
            "in_ptr": in_ptr,
            "in_idx": in_idx,
            "nb_ptr": nb_ptr,
            "nb_idx": nb_idx,
            "nb_flag": nb_flag,
        }

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise IndexError(f"vertex {v} outside 0..{self._n - 1}")

    def vertex_stats(self, v: int) -> VertexStats:
        self._check_vertex(v)
        d_out = len(self._out[v])
        d_in = len(self._in[v])
        d_tot = len(self.nbr_flags[v])
        return VertexStats(d_out, d_in, d_tot, d_out + d_in - d_tot)

    def all_stats(self) -> list[VertexStats]:
        return [self.vertex_stats(v) for v in range(self._n)]

    def pair_overlap(self, u: int, v: int) -> PairOverlap:
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError("pair overlap needs two distinct vertices")
        fu = self.nbr_flags[u]
        fv = self.nbr_flags[v]
        counts = [0] * 9
        for w, b in fv.items():
            a = fu.get(w, 0)
            if not a:
                continue
            counts[8] += 1
            if a & IN and b & IN:
                counts[0] += 1
            if a & OUT and b & OUT:
                counts[1] += 1
            if a & IN and b & OUT:
                counts[2] += 1
            if a & OUT and b & IN:
                counts[3] += 1
            if b & IN:
                counts[4] += 1
            if a & IN:
                counts[5] += 1
            if b & OUT:
                counts[6] += 1
            if a & OUT:
                counts[7] += 1
        uv = (u, v) in self._arcs
        vu = (v, u) in self._arcs
        if uv and vu:
            case = PairCase.TWO_CYCLE
        elif uv:
            case = PairCase.ARC_U_TO_V
        elif vu:
            case = PairCase.ARC_V_TO_U
        else:
            case = PairCase.NONADJACENT
        return PairOverlap(*counts, case=case)

    @cached_property
    def components(self) -> ComponentLabels:
        label = [-1] * self._n
        c = 0
        for s in range(self._n):
            if label[s] >= 0:
                continue
            label[s] = c
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.nbr_flags[x]:
                    if label[y] < 0:
                        label[y] = c
                        queue.append(y)
            c += 1
        return ComponentLabels(tuple(label), c)

    def weak_components(self) -> ComponentLabels:
        return self.components

    def is_acyclic_induced(self, vertices: Iterable[int]) -> bool:
        """Kahn elimination restricted to ``vertices``."""
        members = set(vertices)
        for v in members:
            self._check_vertex(v)
        indeg = {v: sum(1 for w in self._in[v] if w in members) for v in members}
        ready = [v for v, d in indeg.items() if d == 0]
        removed = 0
        while ready:
            x = ready.pop()
            removed += 1
            for y in self._out[x]:
                if y in members:
                    indeg[y] -= 1
                    if indeg[y] == 0:
                        ready.append(y)
        return removed == len(members)

    def is_acyclic(self) -> bool:
        return self.is_acyclic_induced(range(self._n))

    def topological_order(self, vertices: Iterable[int] | None = None) -> list[int]:
        """Topological order of the induced subgraph, smallest index first among ties."""
        members = set(range(self._n)) if vertices is None else set(vertices)
        indeg = {v: sum(1 for w in self._in[v] if w in members) for v in members}
        heap = [v for v, d in indeg.items() if d == 0]
        heapq.heapify(heap)
        order: list[int] = []
        while heap:
            x = heapq.heappop(heap)
            order.append(x)
            for y in self._out[x]:
                if y in members:
                    indeg[y] -= 1
                    if indeg[y] == 0:
                        heapq.heappush(heap, y)
        if len(order) != len(members):
            raise ValueError("induced subgraph contains a directed cycle")
        return order

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Digraph, list[int]]:
        """Induced subgraph relabelled to ``0..k-1``; also returns new -> old vertex map."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        arcs = [(index[u], index[v]) for u, v in self._arcs if u in index and v in index]
        return Digraph(len(keep), arcs), keep

    def is_complete_symmetric(self) -> bool:
        return self.m == self._n * (self._n - 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self._n == other._n and self._arcs == other._arcs

    def __hash__(self) -> int:
        return hash((self._n, self._arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self._n}, arcs={self.sorted_arcs()!r})"


def build(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    return Digraph(n, arcs)


def vertex_stats(D: Digraph, v: int) -> VertexStats:
    return D.vertex_stats(v)


def pair_overlap(D: Digraph, u: int, v: int) -> PairOverlap:
    return D.pair_overlap(u, v)


def weak_components(D: Digraph) -> ComponentLabels:
    return D.components


def is_acyclic_induced(D: Digraph, vertices: Iterable[int]) -> bool:
    return D.is_acyclic_induced(vertices)


def every_component_complete_symmetric(D: Digraph) -> bool:
    """Structural test: each weak component has arcs in both directions between all pairs."""
    sizes = [0] * D.components.c
    for lab in D.components.label:
        sizes[lab] += 1
    return all(
        len(D.out_nbrs(v)) == len(D.in_nbrs(v)) == sizes[lab] - 1
        for v, lab in enumerate(D.components.label)
    )


# small named families, used throughout the tests and the verification harness


def directed_cycle(k: int) -> Digraph:
    return Digraph(k, [(i, (i + 1) % k) for i in range(k)])


def directed_path(k: int) -> Digraph:
    return Digraph(k, [(i, i + 1) for i in range(k - 1)])


def complete_symmetric(k: int) -> Digraph:
    return Digraph(k, [(u, v) for u in range(k) for v in range(k) if u != v])


def disjoint_union(*graphs: Digraph) -> Digraph:
    arcs: list[tuple[int, int]] = []
    offset = 0
    for g in graphs:
        arcs.extend((u + offset, v + offset) for u, v in g.arcs)
        offset += g.n
    return Digraph(offset, arcs)


def all_digraphs(n: int) -> Iterable[Digraph]:
    """Every labelled simple loopless digraph on ``n`` vertices (``2^(n(n-1))`` of them)."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for mask in range(1 << len(pairs)):
        yield Digraph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def unordered_pairs(n: int) -> Iterable[tuple[int, int]]:
    return combinations(range(n), 2)


# edge-list text format: "n m" header, then m lines "u v"; '#' starts a comment line


def parse_edge_list(text: str) -> Digraph:
    header: tuple[int, int] | None = None
    arcs: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {raw!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"expected two integers, got {raw!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("header counts must be nonnegative", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}", lineno)
        if a == b:
            raise GraphFormatError(f"self-loop at vertex {a}", lineno)
        arcs.append((a, b))
    if header is None:
        raise GraphFormatError("missing 'n m' header line", None)
    if len(arcs) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} arcs but {len(arcs)} were given", None)
    return Digraph(header[0], arcs)


def serialize_edge_list(D: Digraph) -> str:
    lines = [f"{D.n} {D.m}"]
    lines.extend(f"{u} {v}" for u, v in D.sorted_arcs())
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> Digraph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(D: Digraph, path: str | Path) -> None:
    Path(path).write_text(serialize_edge_list(D))


def canonical(text: str) -> str:
    return serialize_edge_list(parse_edge_list(text))

