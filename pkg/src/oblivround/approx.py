"""Approximate oracles with controlled relative and absolute error.

A (delta1, delta2)-approximate minimizing oracle returns x with
``v(x, y) <= (1 + delta1) min_x v(x, y) + delta2``; a maximizing one returns
``v(x, y) >= (1 - delta1) max_x v(x, y) - delta2``.
"""

from __future__ import annotations

import zlib

import numpy as np

from .model import ApproxParams, OracleAnswer

# Fraction of the allowed error actually used, so rounding cannot push an
# answer past the bound.
_SAFETY = 1.0 - 1e-9


class ApproximateOracle:
    """Degrade an exact oracle as far as the error parameters allow.

    For each query the exact answer ``x*`` is mixed with a decoy ``x'`` (the
    exact answer for seeded random weights): the returned point is
    ``theta x' + (1 - theta) x*`` with the largest theta keeping the error
    within bounds. P is convex and f linear, so the mix is a valid point with
    image ``theta f(x') + (1 - theta) f(x*)``. Mixed points are generally not
    extreme points, so this wrapper is unsuitable for integer solvers.

    The decoy seed is derived from ``seed`` and the bytes of ``y``, so the
    same query always gets the same answer. With ``record=True`` every query
    appends ``(exact value, returned value)`` to ``log``.
    """

    def __init__(self, oracle, params: ApproxParams, seed=0, record=False):
        self.inner = oracle
        self.params = params
        self.seed = int(seed)
        self.maximize = oracle.maximize
        self.log = [] if record else None

    def query(self, y) -> OracleAnswer:
        y = np.asarray(y, dtype=float)
        exact = self.inner.query(y)
        total = float(y.sum())
        v_star = float(y @ exact.image) / total
        answer = exact
        allowed = (self.params.delta1 * v_star + self.params.delta2) * _SAFETY
        if allowed > 0:
            rng = np.random.default_rng([self.seed, zlib.crc32(y.tobytes())])
            decoy = self.inner.query(rng.exponential(size=y.shape))
            v_decoy = float(y @ decoy.image) / total
            loss = v_star - v_decoy if self.maximize else v_decoy - v_star
            theta = 1.0 if loss <= allowed else allowed / loss
            if theta >= 1.0:
                answer = decoy
            else:
                answer = OracleAnswer(
                    theta * decoy.point + (1.0 - theta) * exact.point,
                    theta * decoy.image + (1.0 - theta) * exact.image,
                )
        if self.log is not None:
            self.log.append((v_star, float(y @ answer.image) / total))
        return answer


def wrap_approximate_oracle(oracle, params: ApproxParams, seed=0, record=False):
    return ApproximateOracle(oracle, params, seed, record)
