"""Greedy set cover with per-iteration dual certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionError, ObliviousRoundingError, UncoverableError


@dataclass(frozen=True)
class SetSystem:
    n: int  # universe is {1, ..., n}
    family: tuple

    def __post_init__(self):
        family = tuple(frozenset(int(j) for j in s) for s in self.family)
        if self.n < 0:
            raise DimensionError("universe size must be nonnegative")
        for i, s in enumerate(family):
            bad = sorted(j for j in s if not 1 <= j <= self.n)
            if bad:
                raise DimensionError(f"set {i + 1} has elements outside 1..{self.n}: {bad}")
        object.__setattr__(self, "family", family)

    def uncovered(self) -> set:
        return set(range(1, self.n + 1)).difference(*self.family)

    def require_coverable(self):
        missing = self.uncovered()
        if missing:
            raise UncoverableError(missing)


@dataclass(frozen=True)
class CertificateRecord:
    r: int  # uncovered elements before the step
    d: int  # most uncovered elements in any one set

    @property
    def value(self) -> Fraction:
        """Value of the dual that puts weight 1/d on each uncovered element."""
        return Fraction(self.r, self.d)


@dataclass(frozen=True)
class DualCertificate:
    records: tuple

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


def greedy_set_cover(system: SetSystem):
    """Repeatedly take the set covering the most uncovered elements.

    Returns the chosen (0-based) set indices and one certificate record per
    step. Ties go to the lowest index.
    """
    system.require_coverable()
    masks = [sum(1 << (j - 1) for j in s) for s in system.family]
    uncovered = (1 << system.n) - 1
    cover, records = [], []
    while uncovered:
        gains = [(mask & uncovered).bit_count() for mask in masks]
        d = max(gains)
        i = gains.index(d)
        records.append(CertificateRecord(uncovered.bit_count(), d))
        cover.append(i)
        uncovered &= ~masks[i]
    return cover, DualCertificate(tuple(records))


def setcover_dual_bound(cert: DualCertificate, k: int, n: int) -> float:
    """Harmonic mean of the first ``k - 1`` dual values.

    It always exceeds ``(k - 1) / ln n``; ``inf`` stands for the empty mean
    when ``k == 1``.
    """
    if not len(cert):
        raise ObliviousRoundingError("empty dual certificate")
    if not 1 <= k <= len(cert):
        raise DimensionError(f"cover size {k} inconsistent with {len(cert)} records")
    if k == 1:
        return math.inf
    inverse_sum = sum(1 / rec.value for rec in cert.records[: k - 1])
    mean = float((k - 1) / inverse_sum)
    if not mean > (k - 1) / math.log(n):
        raise ObliviousRoundingError(
            f"harmonic mean {mean!r} does not exceed (k-1)/ln n = {(k - 1) / math.log(n)!r}"
        )
    return mean


def cover_size_bound(min_cover: int, n: int) -> int:
    """``ceil(|C*| ln n)``, lifted to 1 for the one-element universe."""
    return max(1, math.ceil(min_cover * math.log(n))) if n else 0
