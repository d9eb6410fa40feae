"""Oblivious-rounding solvers for generalized packing, packing and covering.

Every solver keeps multiplicative dual weights over the m constraints, asks
the oracle for the point that is best against the current weights, adds it to
a multiset and reweights. The returned solution is the uniform average of the
multiset, so its granularity is one over the number of iterations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds
from .errors import (
    DimensionError,
    DomainError,
    NoConvergenceError,
    OracleError,
    PreconditionError,
    WidthViolationError,
)
from .model import (
    WIDTH_SLACK,
    DualWeights,
    IterationRecord,
    OracleAnswer,
    ProblemInstance,
    Sense,
    SolveResult,
    SupportEntry,
)

DEFAULT_CAP_MULTIPLIER = 10.0
# Ceiling used while no finite iteration bound is available yet.
DEFAULT_MAX_ITERATIONS = 100_000


def update_weights(y, fx, factor_eps, L, omega, sense):
    """Multiply each weight by ``1 +/- factor_eps * (fx_j - L) / omega``.

    The sign is negative for covering. The result is renormalized to a
    maximum weight of one.
    """
    sense = Sense(sense)
    fx = np.asarray(fx, dtype=float)
    if fx.shape != (len(y),):
        raise DimensionError(f"image has shape {fx.shape}, expected ({len(y)},)")
    z = _scaled_image(fx, L, omega)
    if sense is Sense.COVERING:
        if not 0 < factor_eps < 1:
            raise DomainError(f"covering update needs 0 < eps < 1, got {factor_eps!r}")
        step = np.log1p(-factor_eps * z)
    else:
        if not factor_eps > 0:
            raise DomainError(f"update factor must be positive, got {factor_eps!r}")
        step = np.log1p(factor_eps * z)
    log_w = y.log_weights + step
    return DualWeights(log_w - log_w.max())


def _scaled_image(fx, L, omega):
    z = (fx - L) / omega
    bad = np.flatnonzero((z < -WIDTH_SLACK) | (z > 1 + WIDTH_SLACK) | ~np.isfinite(z))
    if bad.size:
        j = int(bad[0])
        raise WidthViolationError(j, float(fx[j]), L, L + omega)
    return np.clip(z, 0.0, 1.0)


def dual_value(y, fx):
    """Weighted mean ``sum_j y_j fx_j / sum_j y_j``; invariant to rescaling ``y``."""
    if isinstance(y, DualWeights):
        y = y.weights
    y = np.asarray(y, dtype=float)
    return float(y @ np.asarray(fx, dtype=float) / y.sum())


class _Run:
    """Multiset of oracle answers plus the running primal and dual statistics."""

    def __init__(self, inst, oracle, eps, record):
        if oracle.maximize != inst.sense.maximize:
            want = "maximizing" if inst.sense.maximize else "minimizing"
            raise PreconditionError(f"{inst.sense.value} needs a {want} oracle")
        self.inst = inst
        self.oracle = oracle
        self.eps = eps
        self.record = record
        self.weights = DualWeights.uniform(inst.m)
        self.support: list[SupportEntry] = []
        self._slot: dict = {}
        self.records: list[IterationRecord] = []
        self.count = 0
        self.point_sum = np.zeros(inst.n)
        self.image_sum = np.zeros(inst.m)
        self.dual_sum = 0.0
        self.best_dual = -math.inf if not inst.sense.maximize else math.inf

    @property
    def F(self):
        return self.image_sum / self.count

    @property
    def lambda_bar(self):
        F = self.F
        return float(F.min() if self.inst.sense.maximize else F.max())

    def ask(self):
        y = self.weights.weights
        answer = self.oracle.query(y)
        if not isinstance(answer, OracleAnswer):
            raise OracleError(f"oracle returned {type(answer).__name__}, not OracleAnswer")
        if answer.image.shape != (self.inst.m,):
            raise DimensionError(
                f"oracle image has shape {answer.image.shape}, expected ({self.inst.m},)"
            )
        if answer.point.shape != (self.inst.n,):
            raise DimensionError(
                f"oracle point has shape {answer.point.shape}, expected ({self.inst.n},)"
            )
        _scaled_image(answer.image, self.inst.lower, self.inst.omega)
        return y, answer

    def add(self, y, answer):
        objective = float(y @ answer.image)
        v = objective / float(y.sum())
        slot = self._slot.get(answer.key)
        if slot is None:
            slot = self._slot[answer.key] = len(self.support)
            self.support.append(SupportEntry(answer, 0))
        self.support[slot].count += 1
        self.count += 1
        self.point_sum += answer.point
        self.image_sum += answer.image
        self.dual_sum += v
        if self.inst.sense.maximize:
            self.best_dual = min(self.best_dual, v)
        else:
            self.best_dual = max(self.best_dual, v)
        if self.record:
            self.records.append(IterationRecord(slot, v, objective, self.F, self.lambda_bar))
        return v

    def reweight(self, answer, factor):
        self.weights = update_weights(
            self.weights, answer.image, factor, self.inst.lower, self.inst.omega, self.inst.sense
        )

    def result(self, converged=True):
        return SolveResult(
            sense=self.inst.sense,
            eps=self.eps,
            x_bar=self.point_sum / self.count,
            F=self.F,
            lambda_bar=self.lambda_bar,
            best_dual=self.best_dual,
            average_dual=self.dual_sum / self.count,
            support=self.support,
            iterations=self.count,
            records=self.records,
            converged=converged,
        )


def solve_generalized_packing(inst: ProblemInstance, oracle, eps, *, s=None, record=True):
    """Find x with ``max_j f_j(x) <= lambda* + eps`` (additive error).

    Runs ``ceil(omega^2 ln m / (2 eps^2))`` iterations unless ``s`` is given.
    The update uses ``alpha = e^(4 eps / omega) - 1`` on ``(f - L) / omega``.
    """
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps!r}")
    if inst.sense is Sense.COVERING:
        raise PreconditionError("generalized packing needs a minimization instance")
    if s is None:
        s = bounds.iterations_generalized_packing(inst.omega, inst.m, eps)
    elif s < 1:
        raise DomainError(f"s must be >= 1, got {s!r}")
    alpha = math.expm1(4.0 * eps / inst.omega)
    # Reweighting uses the generalized rule (with L) even for packing instances.
    run = _Run(inst, oracle, eps, record)
    lower = inst.L if inst.sense is Sense.GENERALIZED else 0.0
    for _ in range(s):
        y, answer = run.ask()
        run.add(y, answer)
        run.weights = update_weights(
            run.weights, answer.image, alpha, lower, inst.omega, Sense.GENERALIZED
        )
    return run.result()


def _check_multiplicative(inst, eps):
    if inst.sense is Sense.GENERALIZED:
        raise PreconditionError("instance sense must be packing or covering")
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")


def solve_packing_given_s(inst: ProblemInstance, oracle, eps, s, *, record=True):
    """Run exactly ``s`` multiplicative-weight iterations.

    Packing instances use the multiplier ``1 + eps f_j / omega`` against a
    minimizing oracle; covering instances use ``1 - eps f_j / omega`` against
    a maximizing one.
    """
    _check_multiplicative(inst, eps)
    if int(s) != s or s < 1:
        raise DomainError(f"s must be an integer >= 1, got {s!r}")
    run = _Run(inst, oracle, eps, record)
    for _ in range(int(s)):
        y, answer = run.ask()
        run.add(y, answer)
        run.reweight(answer, eps)
    return run.result()


def _iterate_until_certified(inst, oracle, eps, cap_multiplier, max_iterations, record):
    _check_multiplicative(inst, eps)
    if max_iterations is None:
        max_iterations = DEFAULT_MAX_ITERATIONS
    covering = inst.sense.maximize
    run = _Run(inst, oracle, eps, record)
    # Largest proven lower bound on lambda*: V for packing, lambda_bar for covering.
    known_lower = 0.0
    while True:
        y, answer = run.ask()
        run.add(y, answer)
        run.reweight(answer, eps)
        lam, V = run.lambda_bar, run.best_dual
        if covering:
            if lam >= (1.0 - eps) * V:
                return run.result()
            known_lower = max(known_lower, lam)
            bound_fn = bounds.iterations_covering
        else:
            if lam <= (1.0 + eps) * V:
                return run.result()
            known_lower = max(known_lower, V)
            bound_fn = bounds.iterations_packing
        cap = max_iterations
        if known_lower > 0:
            cap = min(cap, cap_multiplier * bound_fn(inst.omega, inst.m, eps, known_lower))
        if run.count >= cap:
            raise NoConvergenceError(
                f"{inst.sense.value} did not certify within {run.count} iterations "
                f"(lambda_bar={lam!r}, best dual={V!r}); lambda* may be 0",
                result=run.result(converged=False),
            )


def solve_packing(inst, oracle, eps, *, cap_multiplier=DEFAULT_CAP_MULTIPLIER,
                  max_iterations=None, record=True):
    """Iterate until ``lambda_bar <= (1 + eps) V``, V being the best dual value.

    With an exact oracle V is a lower bound on lambda*, so the exit certifies
    a ``(1 + eps)``-approximate packing.
    """
    if inst.sense is not Sense.PACKING:
        raise PreconditionError(f"solve_packing needs a packing instance, got {inst.sense.value}")
    return _iterate_until_certified(inst, oracle, eps, cap_multiplier, max_iterations, record)


def solve_covering(inst, oracle, eps, *, cap_multiplier=DEFAULT_CAP_MULTIPLIER,
                   max_iterations=None, record=True):
    """Iterate until ``lambda_bar >= (1 - eps) V``, V being the smallest dual value."""
    if inst.sense is not Sense.COVERING:
        raise PreconditionError(f"solve_covering needs a covering instance, got {inst.sense.value}")
    return _iterate_until_certified(inst, oracle, eps, cap_multiplier, max_iterations, record)


@dataclass
class IntegerSolution:
    support: list[SupportEntry]
    totals: np.ndarray  # sum over the multiset of f(x), per constraint
    oracle_calls: int

    @property
    def size(self) -> int:
        return sum(e.count for e in self.support)


def _integer_run(inst, oracle, eps, max_iterations):
    if max_iterations is None:
        max_iterations = DEFAULT_MAX_ITERATIONS
    run = _Run(inst, oracle, eps, record=False)
    calls = 0
    covering = inst.sense.maximize
    while True:
        y, answer = run.ask()
        calls += 1
        if covering:
            run.add(y, answer)
            if run.image_sum.min() >= 1.0 - eps:
                break
            # min_j F_j is a lower bound on lambda*, and |S| <= ceil(1 / lambda*).
            lower = run.lambda_bar
            cap = max_iterations
            if lower > 0:
                cap = min(cap, bounds.guarded_ceil(1.0 / lower) + 1)
        else:
            if (run.image_sum + answer.image).max() > 1.0 + eps:
                break
            run.add(y, answer)
            # Best dual value bounds lambda* from below and |S| <= (1 + eps) / lambda*.
            if run.best_dual <= 0:
                raise NoConvergenceError(
                    "oracle returned a point with f = 0, so the multiset is unbounded"
                )
            cap = min(max_iterations, bounds.guarded_floor((1.0 + eps) / run.best_dual) + 1)
        run.reweight(answer, eps)
        if run.count >= cap:
            raise NoConvergenceError(
                f"integer {inst.sense.value} exceeded {run.count} iterations; lambda* may be 0",
                result=run.result(converged=False),
            )
    return IntegerSolution(run.support, run.image_sum.copy(), calls)


def solve_integer_packing(inst, oracle, eps, *, max_iterations=None):
    """Largest multiset S found greedily with ``sum_{x in S} f_j(x) <= 1 + eps``.

    Requires ``m <= exp(b(eps) / omega)``; then ``|S| >= floor(1 / lambda*)``.
    The oracle should return extreme points of P.
    """
    if inst.sense is not Sense.PACKING:
        raise PreconditionError("integer packing needs a packing instance")
    if not bounds.integer_packing_feasible(inst.m, inst.omega, eps):
        raise PreconditionError(
            f"m={inst.m} exceeds exp(b(eps)/omega) for eps={eps!r}, omega={inst.omega!r}"
        )
    return _integer_run(inst, oracle, eps, max_iterations)


def solve_integer_covering(inst, oracle, eps, *, max_iterations=None):
    """Multiset S with ``sum_{x in S} f_j(x) >= 1 - eps`` and ``|S| <= ceil(1 / lambda*)``."""
    if inst.sense is not Sense.COVERING:
        raise PreconditionError("integer covering needs a covering instance")
    if not 0 < eps < 1:
        raise DomainError(f"eps must lie in (0, 1), got {eps!r}")
    if not bounds.integer_covering_feasible(inst.m, inst.omega, eps):
        raise PreconditionError(
            f"m={inst.m} exceeds exp(b(-eps)/omega) for eps={eps!r}, omega={inst.omega!r}"
        )
    return _integer_run(inst, oracle, eps, max_iterations)
