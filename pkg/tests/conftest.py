import math

import numpy as np
import pytest

from oblivround.oracles import ExplicitInstance
from oblivround.setcover import SetSystem


def random_matrix(rng, max_m=8, max_n=8, low=0.0, high=1.0):
    m = int(rng.integers(1, max_m + 1))
    n = int(rng.integers(1, max_n + 1))
    return rng.uniform(low, high, size=(m, n))


def random_instance(rng, **kwargs):
    return ExplicitInstance(random_matrix(rng, **kwargs))


def random_set_system(rng, max_n=12, max_sets=10):
    n = int(rng.integers(2, max_n + 1))
    k = int(rng.integers(1, max_sets + 1))
    family = [set(np.flatnonzero(rng.random(n) < rng.uniform(0.15, 0.6)) + 1) for _ in range(k)]
    for j in range(1, n + 1):
        if not any(j in s for s in family):
            family[int(rng.integers(k))].add(j)
    return SetSystem(n, tuple(family))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def packing_invariant_excess(result, m, omega, eps):
    """Worst relative excess of the log-form packing/covering invariant over a run."""
    from oblivround.model import Sense

    worst, total = -math.inf, 0.0
    for t, rec in enumerate(result.records, start=1):
        total += rec.dual_value
        v_bar = total / t
        if result.sense is Sense.COVERING:
            lhs = t * rec.lambda_bar / omega * math.log1p(-eps)
            rhs = math.log(m) - eps * t * v_bar / omega
        else:
            lhs = t * rec.lambda_bar / omega * math.log1p(eps)
            rhs = math.log(m) + eps * t * v_bar / omega
        worst = max(worst, (lhs - rhs) / (1 + abs(lhs) + abs(rhs)))
    return worst


# one summary line per acceptance criterion, printed after the run
_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or not (report.when == "call" or report.failed):
        return
    number = marker.args[0]
    title = (item.obj.__doc__ or item.name).strip().splitlines()[0]
    detail = "; ".join(f"{k}={v}" for k, v in item.user_properties)
    _, earlier, previous = _CRITERIA.get(number, (None, "", None))
    status = "FAIL" if report.failed or previous == "FAIL" else "PASS"
    detail = "; ".join(d for d in (earlier, detail) if d)
    _CRITERIA[number] = (title, detail, status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_CRITERIA):
        title, detail, status = _CRITERIA[number]
        line = f"[{status}] criterion {number:>2}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
