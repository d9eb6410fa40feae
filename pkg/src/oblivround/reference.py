"""Exact brute-force optima for small instances, used to check the solvers."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import DimensionError, ObliviousRoundingError, UncoverableError
from .model import Sense

CERTIFY_TOL = 1e-9


def _kernel(M):
    """Solve ``M x = v 1, sum x = 1`` for a square M; None if singular."""
    k = M.shape[0]
    K = np.zeros((k + 1, k + 1))
    K[:k, :k] = M
    K[:k, k] = -1.0
    K[k, :k] = 1.0
    rhs = np.zeros(k + 1)
    rhs[k] = 1.0
    if np.linalg.cond(K) > 1e12:
        return None
    sol = np.linalg.solve(K, rhs)
    return sol[:k], float(sol[k])


def exact_game_value(A, max_dim=10):
    """Value and optimal strategy of ``min_{x in simplex} max_j (A x)_j``.

    Enumerates square support pairs (columns for x, rows for the opponent),
    smallest first, solving the equalizing systems on each. A candidate is
    accepted only when both strategies are nonnegative and neither player can
    gain by deviating, within ``1e-9`` of the matrix scale.
    """
    A = np.asarray(A, dtype=float)
    m, n = A.shape
    if max(m, n) > max_dim:
        raise DimensionError(f"support enumeration limited to {max_dim}x{max_dim}")
    tol = CERTIFY_TOL * max(1.0, float(np.abs(A).max()))
    for k in range(1, min(m, n) + 1):
        for cols in combinations(range(n), k):
            cols = list(cols)
            for rows in combinations(range(m), k):
                rows = list(rows)
                M = A[np.ix_(rows, cols)]
                found = _kernel(M)
                if found is None:
                    continue
                xs, v = found
                if xs.min() < -tol:
                    continue
                x = np.zeros(n)
                x[cols] = np.clip(xs, 0.0, None)
                x /= x.sum()
                if (A @ x).max() > v + tol:
                    continue
                found = _kernel(M.T)
                if found is None:
                    continue
                ys, w = found
                if ys.min() < -tol or abs(w - v) > tol:
                    continue
                y = np.zeros(m)
                y[rows] = np.clip(ys, 0.0, None)
                y /= y.sum()
                if (y @ A).min() < v - tol:
                    continue
                return v, x
    raise ObliviousRoundingError("no support pair certified an equilibrium")


def exact_packing_value(inst, sense=Sense.GENERALIZED):
    """lambda* of an explicit instance over the simplex.

    ``min_x max_j f_j(x)`` for the packing senses, ``max_x min_j f_j(x)`` for
    covering. Because x sums to one, ``A x + b = (A + b 1^T) x``.
    """
    M = inst.vertex_images()
    if Sense(sense) is Sense.COVERING:
        return -exact_game_value(-M)[0]
    return exact_game_value(M)[0]


def brute_force_min_cover(system, max_sets=20):
    """Minimum number of sets covering the universe, by enumeration."""
    family = list(system.family)
    if len(family) > max_sets:
        raise DimensionError(f"enumeration limited to {max_sets} sets")
    full = (1 << system.n) - 1
    masks = [sum(1 << (j - 1) for j in s) for s in family]
    union = 0
    for mask in masks:
        union |= mask
    if union != full:
        raise UncoverableError(j for j in range(1, system.n + 1) if not union >> (j - 1) & 1)
    if system.n == 0:
        return 0
    for size in range(1, len(masks) + 1):
        for combo in combinations(masks, size):
            covered = 0
            for mask in combo:
                covered |= mask
            if covered == full:
                return size
    raise AssertionError("unreachable: the whole family covers the universe")
