"""Exact optimization oracles for explicit matrices, shortest paths and set systems."""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .errors import DimensionError, DomainError, OracleError, UncoverableError
from .model import OracleAnswer, ProblemInstance, Sense, as_weight_vector


@dataclass(frozen=True, eq=False)
class ExplicitInstance:
    """``f(x) = A x + b`` over the probability simplex in ``n`` dimensions.

    Vertex ``e_i`` maps to column ``i`` of ``A`` plus ``b``, so the range of f
    over P is the range of the entries of ``A + b``.
    """

    A: np.ndarray
    b: np.ndarray | None = None

    def __post_init__(self):
        A = np.array(self.A, dtype=float)
        if A.ndim != 2 or 0 in A.shape:
            raise DimensionError(f"A must be a nonempty matrix, got shape {A.shape}")
        b = np.zeros(A.shape[0]) if self.b is None else np.array(self.b, dtype=float)
        if b.shape != (A.shape[0],):
            raise DimensionError(f"b has shape {b.shape}, expected ({A.shape[0]},)")
        if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
            raise DomainError("A and b must be finite")
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]

    def vertex_images(self) -> np.ndarray:
        """m x n array whose column i is f(e_i)."""
        return self.A + self.b[:, None]

    def evaluate(self, x) -> np.ndarray:
        return self.A @ np.asarray(x, dtype=float) + self.b

    def problem(self, sense=Sense.GENERALIZED, L=None, omega=None) -> ProblemInstance:
        """Instance metadata with L and omega derived from the vertex images.

        Generalized packing takes ``L = min`` and ``omega = max - min``. Packing
        and covering measure width from zero, so ``L = 0`` and ``omega = max``.
        A zero width (constant f) is replaced by 1, which still bounds f.
        """
        sense = Sense(sense)
        images = self.vertex_images()
        lo, hi = float(images.min()), float(images.max())
        if sense is not Sense.GENERALIZED and lo < 0:
            raise DomainError(f"{sense.value} needs f >= 0 but an entry is {lo!r}")
        if L is None:
            L = lo if sense is Sense.GENERALIZED else 0.0
        if omega is None:
            omega = hi - L
            if omega <= 0:
                omega = 1.0
        return ProblemInstance(n=self.n, m=self.m, L=L, omega=omega, sense=sense)

    def oracle(self, maximize=False) -> "SimplexOracle":
        return SimplexOracle(self, maximize)


def simplex_oracle(inst: ExplicitInstance, y, maximize=False) -> OracleAnswer:
    """Best pure strategy against the mixed strategy ``y``, lowest index on ties."""
    y = as_weight_vector(y, inst.m)
    if not y.any():
        raise OracleError("weights are all zero")
    scores = y @ inst.A
    i = int(np.argmax(scores) if maximize else np.argmin(scores))
    point = np.zeros(inst.n)
    point[i] = 1.0
    return OracleAnswer(point, inst.A[:, i] + inst.b, key=i)


@dataclass(frozen=True)
class SimplexOracle:
    instance: ExplicitInstance
    maximize: bool = False

    def query(self, y) -> OracleAnswer:
        return simplex_oracle(self.instance, y, self.maximize)


@dataclass(frozen=True, eq=False)
class FlowInstance:
    """Directed graph with positive arc capacities and a source and sink.

    A point of P is a unit source-sink flow written as a vector over arcs. The
    image coordinate of arc e is ``flow_e * c_min / c(e)``, so a feasible flow
    of value ``c_min / max_e f_e`` is obtained by scaling.
    """

    nodes: tuple
    arcs: tuple  # (tail, head, capacity) triples
    source: Hashable
    sink: Hashable

    def __post_init__(self):
        arcs = tuple((u, v, float(c)) for u, v, c in self.arcs)
        nodes = tuple(self.nodes)
        known = set(nodes)
        if not arcs:
            raise DimensionError("flow instance has no arcs")
        for k, (u, v, c) in enumerate(arcs):
            if u not in known or v not in known:
                raise DimensionError(f"arc {k} references an unknown node")
            if not c > 0 or not np.isfinite(c):
                raise DomainError(f"arc {k} has nonpositive capacity {c!r}")
        if self.source not in known or self.sink not in known:
            raise DimensionError("source and sink must be nodes of the graph")
        if self.source == self.sink:
            raise DimensionError("source and sink must differ")
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "nodes", nodes)
        if not self._reachable():
            raise OracleError("no path from source to sink")

    def _reachable(self):
        out = self.out_arcs()
        seen, queue = {self.source}, deque([self.source])
        while queue:
            u = queue.popleft()
            for k in out[u]:
                v = self.arcs[k][1]
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return self.sink in seen

    def out_arcs(self) -> dict:
        out = {u: [] for u in self.nodes}
        for k, (u, _, _) in enumerate(self.arcs):
            out[u].append(k)
        return out

    @property
    def capacities(self) -> np.ndarray:
        return np.array([c for _, _, c in self.arcs])

    @property
    def image_scale(self) -> np.ndarray:
        caps = self.capacities
        return caps.min() / caps

    def path_answer(self, path: Sequence[int]) -> OracleAnswer:
        point = np.zeros(len(self.arcs))
        point[list(path)] = 1.0
        return OracleAnswer(point, point * self.image_scale, key=tuple(path))

    def problem(self) -> ProblemInstance:
        m = len(self.arcs)
        return ProblemInstance(n=m, m=m, L=0.0, omega=1.0, sense=Sense.PACKING)

    def oracle(self) -> "ShortestPathOracle":
        return ShortestPathOracle(self)


def shortest_path_oracle(inst: FlowInstance, y) -> OracleAnswer:
    """Shortest source-sink path under arc lengths ``y_e * c_min / c(e)``.

    Dijkstra with heap keys ``(length, arc sequence)``, so among equally short
    labels the lexicographically smaller arc sequence settles first.
    """
    y = as_weight_vector(y, len(inst.arcs))
    lengths = y * inst.image_scale
    out = inst.out_arcs()
    heap = [(0.0, (), inst.source)]
    settled = set()
    while heap:
        dist, path, u = heapq.heappop(heap)
        if u in settled:
            continue
        if u == inst.sink:
            return inst.path_answer(path)
        settled.add(u)
        for k in out[u]:
            v = inst.arcs[k][1]
            if v not in settled:
                heapq.heappush(heap, (dist + lengths[k], path + (k,), v))
    raise OracleError("no path from source to sink")


@dataclass(frozen=True)
class ShortestPathOracle:
    instance: FlowInstance
    maximize: bool = False

    def query(self, y) -> OracleAnswer:
        return shortest_path_oracle(self.instance, y)


@dataclass(frozen=True, eq=False)
class SetSystemOracleView:
    """Fractional set cover as covering over the simplex of sets.

    ``f_j(x)`` is the total weight of the sets containing element ``j``, so
    ``lambda* = 1 / (fractional cover number)``.
    """

    n: int  # universe size; elements are 1..n
    family: tuple

    def __post_init__(self):
        family = tuple(frozenset(s) for s in self.family)
        if not family:
            raise DimensionError("set family is empty")
        object.__setattr__(self, "family", family)
        covered = set().union(*family)
        missing = set(range(1, self.n + 1)) - covered
        if missing:
            raise UncoverableError(missing)
        extra = covered - set(range(1, self.n + 1))
        if extra:
            raise DimensionError(f"elements outside 1..{self.n}: {sorted(extra)}")
        incidence = np.zeros((self.n, len(family)))
        for i, s in enumerate(family):
            incidence[[j - 1 for j in s], i] = 1.0
        incidence.setflags(write=False)
        object.__setattr__(self, "incidence", incidence)

    @classmethod
    def from_system(cls, system) -> "SetSystemOracleView":
        return cls(system.n, system.family)

    def problem(self) -> ProblemInstance:
        return ProblemInstance(n=len(self.family), m=self.n, L=0.0, omega=1.0,
                               sense=Sense.COVERING)

    def oracle(self) -> "SetCoverOracle":
        return SetCoverOracle(self)


def fractional_setcover_oracle(view: SetSystemOracleView, y) -> OracleAnswer:
    """The set whose elements carry the largest total weight."""
    y = as_weight_vector(y, view.n)
    i = int(np.argmax(y @ view.incidence))
    point = np.zeros(len(view.family))
    point[i] = 1.0
    return OracleAnswer(point, view.incidence[:, i].copy(), key=i)


@dataclass(frozen=True)
class SetCoverOracle:
    view: SetSystemOracleView
    maximize: bool = True

    def query(self, y) -> OracleAnswer:
        return fractional_setcover_oracle(self.view, y)
