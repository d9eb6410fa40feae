"""Problem instances, oracle answers, dual weights and solver results."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Hashable, Protocol, Sequence

import numpy as np

from .errors import DimensionError, DomainError

# Slack allowed when checking that oracle images lie in [L, L + omega].
WIDTH_SLACK = 1e-12


class Sense(str, enum.Enum):
    GENERALIZED = "generalized"
    PACKING = "packing"
    COVERING = "covering"

    @property
    def maximize(self) -> bool:
        return self is Sense.COVERING


@dataclass(frozen=True)
class OracleAnswer:
    """A point of P and its image under f.

    ``key`` identifies the point for multiset bookkeeping (a vertex index, a
    path, ...). When omitted the raw bytes of ``point`` are used.
    """

    point: np.ndarray
    image: np.ndarray
    key: Hashable = None

    def __post_init__(self):
        object.__setattr__(self, "point", np.asarray(self.point, dtype=float))
        object.__setattr__(self, "image", np.asarray(self.image, dtype=float))
        if self.key is None:
            object.__setattr__(self, "key", ("point", self.point.tobytes()))


class Oracle(Protocol):
    """Optimization oracle for P and f.

    ``query(y)`` returns a point optimizing ``sum_j y_j f_j(x)``: minimizing
    when ``maximize`` is false (packing senses), maximizing for covering.
    """

    maximize: bool

    def query(self, y: np.ndarray) -> OracleAnswer: ...


@dataclass(frozen=True)
class ProblemInstance:
    n: int
    m: int
    L: float
    omega: float
    sense: Sense = Sense.GENERALIZED

    def __post_init__(self):
        object.__setattr__(self, "sense", Sense(self.sense))
        if self.m < 1 or self.n < 1:
            raise DimensionError(f"need n, m >= 1, got n={self.n}, m={self.m}")
        if not self.omega > 0:
            raise DomainError(f"width must be positive, got {self.omega!r}")
        if self.sense is not Sense.GENERALIZED and self.L < 0:
            raise DomainError("packing and covering need f >= 0, i.e. L >= 0")

    @property
    def lower(self) -> float:
        """Lower end of the image range used by the weight update."""
        return self.L if self.sense is Sense.GENERALIZED else 0.0

    @property
    def upper(self) -> float:
        return self.lower + self.omega


class DualWeights:
    """Positive dual weights held in log space.

    ``weights`` is normalized so its maximum is 1 and ``log_scale`` is the log
    of the factor removed by that normalization, so the raw weights are
    ``weights * exp(log_scale)``. Only ratios matter to the solvers.
    """

    __slots__ = ("_log",)

    def __init__(self, log_weights):
        log_weights = np.asarray(log_weights, dtype=float)
        if not np.all(np.isfinite(log_weights)):
            raise DomainError("dual weights must be positive and finite")
        self._log = log_weights

    @classmethod
    def uniform(cls, m: int) -> "DualWeights":
        return cls(np.zeros(m))

    @property
    def log_weights(self) -> np.ndarray:
        return self._log.copy()

    @property
    def log_scale(self) -> float:
        return float(self._log.max())

    @property
    def weights(self) -> np.ndarray:
        return np.exp(self._log - self._log.max())

    def __len__(self):
        return len(self._log)

    def __repr__(self):
        return f"DualWeights(weights={self.weights!r}, log_scale={self.log_scale!r})"


@dataclass(frozen=True)
class ApproxParams:
    delta1: float = 0.0
    delta2: float = 0.0

    def __post_init__(self):
        if self.delta1 < 0 or self.delta2 < 0:
            raise DomainError("delta1 and delta2 must be nonnegative")


@dataclass(frozen=True)
class IterationRecord:
    index: int  # position of the chosen answer in SolveResult.support
    dual_value: float  # v(x, y) with the weights the oracle was queried with
    objective: float  # sum_j y_j f_j(x) with the normalized query weights
    F: np.ndarray  # f(x_bar) after this iteration
    lambda_bar: float


@dataclass
class SupportEntry:
    answer: OracleAnswer
    count: int


@dataclass
class SolveResult:
    sense: Sense
    eps: float
    x_bar: np.ndarray
    F: np.ndarray
    lambda_bar: float
    best_dual: float
    average_dual: float
    support: list[SupportEntry]
    iterations: int
    records: list[IterationRecord] = field(default_factory=list)
    converged: bool = True

    @property
    def support_size(self) -> int:
        return sum(e.count for e in self.support)

    def mixed_strategy(self) -> list[tuple[Hashable, float]]:
        """Support keys with their weights in the uniform average."""
        total = self.support_size
        return [(e.answer.key, e.count / total) for e in self.support]


def as_weight_vector(y: Sequence[float], m: int) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.shape != (m,):
        raise DimensionError(f"expected {m} weights, got shape {y.shape}")
    if np.any(y < 0) or not np.all(np.isfinite(y)):
        raise DomainError("weights must be finite and nonnegative")
    return y
