"""Deviation bound ``b``, iteration schedules and integer feasibility predicates.

All functions are pure. Iteration counts are lifted to a minimum of one, since
every solver needs at least one oracle answer to average.
"""

import math

from .errors import DomainError

# Relative slack applied before rounding, so that quantities which are
# analytically integral do not round the wrong way on floating-point noise.
ROUNDING_GUARD = 1e-9


def guarded_ceil(value):
    return math.ceil(value - ROUNDING_GUARD * abs(value))


def guarded_floor(value):
    return math.floor(value + ROUNDING_GUARD * abs(value))


def b(eps):
    """Return ``(1 + eps) ln(1 + eps) - eps`` for ``eps > -1``."""
    if not eps > -1.0:
        raise DomainError(f"b(eps) requires eps > -1, got {eps!r}")
    if eps == 0.0:
        return 0.0
    return (1.0 + eps) * math.log1p(eps) - eps


def _check_positive(**kwargs):
    for name, value in kwargs.items():
        if not value > 0:
            raise DomainError(f"{name} must be positive, got {value!r}")


def _check_count(m):
    if int(m) != m or m < 1:
        raise DomainError(f"m must be an integer >= 1, got {m!r}")


def iterations_generalized_packing(omega, m, eps):
    """Iterations after which the additive guarantee holds: ceil(omega^2 ln m / (2 eps^2))."""
    _check_positive(omega=omega, eps=eps)
    _check_count(m)
    return max(1, guarded_ceil(omega**2 * math.log(m) / (2.0 * eps**2)))


def iterations_packing(omega, m, eps, lambda_star):
    _check_positive(omega=omega, eps=eps, lambda_star=lambda_star)
    _check_count(m)
    bound = (1.0 + eps) * omega * math.log(m) / (lambda_star * b(eps))
    return max(1, guarded_ceil(bound))


def iterations_covering(omega, m, eps, lambda_star, *, delta1=0.0, delta2=0.0):
    """Covering iteration bound ceil(omega ln m / (lambda* b(-eps))).

    With an approximate oracle of relative error ``delta1`` and absolute error
    ``delta2`` the optimum is replaced by ``(1 - delta1) lambda* - delta2``,
    which must stay positive.
    """
    _check_positive(omega=omega, eps=eps, lambda_star=lambda_star)
    _check_count(m)
    if not eps < 1:
        raise DomainError(f"covering requires eps < 1, got {eps!r}")
    if delta1 < 0 or delta2 < 0:
        raise DomainError("oracle error parameters must be nonnegative")
    effective = (1.0 - delta1) * lambda_star - delta2
    if not effective > 0:
        raise DomainError(
            f"(1 - delta1) * lambda_star - delta2 = {effective!r} is not positive"
        )
    return max(1, guarded_ceil(omega * math.log(m) / (effective * b(-eps))))


def integer_packing_feasible(m, omega, eps):
    """True iff ``m <= exp(b(eps) / omega)``, which guarantees an integer solution exists."""
    _check_count(m)
    _check_positive(omega=omega, eps=eps)
    return math.log(m) <= b(eps) / omega


def integer_packing_sufficient(m, omega, eps):
    """Cheap sufficient test ``eps >= 2 max(omega ln m, sqrt(omega ln m))``."""
    _check_count(m)
    _check_positive(omega=omega, eps=eps)
    t = omega * math.log(m)
    return eps >= 2.0 * max(t, math.sqrt(t))


def integer_covering_feasible(m, omega, eps):
    """True iff ``m <= exp(b(-eps) / omega)``; needs ``0 < eps < 1``."""
    _check_count(m)
    _check_positive(omega=omega, eps=eps)
    if not eps < 1:
        raise DomainError(f"covering requires eps < 1, got {eps!r}")
    return math.log(m) <= b(-eps) / omega


def integer_covering_sufficient(m, omega, eps):
    """Cheap sufficient test ``eps >= sqrt(2 omega ln m)``."""
    _check_count(m)
    _check_positive(omega=omega, eps=eps)
    return eps >= math.sqrt(2.0 * omega * math.log(m))
