"""Consensus measures on top of the precedence matrix.

kappa_1 is the trace; kappa_p for p >= 2 comes from iterated
multiplication by the strict lower part L, which counts (or weights)
the consistently ordered item chains of length p. The total over all p
is also available in closed form through one forward substitution.

When gamma = lambda = 1 every weight is exactly 1 and all arithmetic is
done in plain integers, which Python keeps exact at any magnitude; the
total for a single ranking of length n is 2**n - 1.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

from .graph import ConsensusMatrix, MeasureParams, build_matrix, heaviside, position_stats, survey
from .model import RankingSet


@dataclass(frozen=True)
class KappaProfile:
    """The series kappa_1..kappa_ell, its length ell, and the total kappa."""

    series: tuple[tuple[int, int | float], ...]
    ell: int
    total: int | float
    exact: bool

    def value_at(self, p: int) -> int | float:
        """kappa_p, taking p beyond the series as zero."""
        if 1 <= p <= len(self.series):
            return self.series[p - 1][1]
        return 0


def kappa_series(matrix: ConsensusMatrix, params: MeasureParams) -> KappaProfile:
    """Accumulate kappa_p by repeated y <- L y until the terms vanish.

    On the exact path the loop stops at the first true zero; otherwise at
    the first term not exceeding params.epsilon. L is nilpotent, so at
    most order steps can contribute.
    """
    epsilon: int | float = 0 if matrix.exact else params.epsilon
    series: list[tuple[int, int | float]] = []
    term: int | float = matrix.trace()
    vector: list[int | float] = [1] * matrix.order
    p = 1
    while term > epsilon and p <= matrix.order:
        series.append((p, term))
        vector = matrix.multiply_lower(vector)
        term = sum(vector)
        p += 1
    total: int | float = sum(value for _, value in series)
    return KappaProfile(
        series=tuple(series),
        ell=series[-1][0] if series else 0,
        total=total,
        exact=matrix.exact,
    )


def measure(
    rset: RankingSet,
    params: MeasureParams,
    reference_index: int | None = None,
    storage: str | None = None,
) -> KappaProfile:
    """Build the matrix for the set and run the series in one call."""
    matrix = build_matrix(rset, params, reference_index, storage)
    return kappa_series(matrix, params)


def kappa_total_closed(matrix: ConsensusMatrix) -> int | float:
    """Total kappa without the series: trace(A) + z' (I - L)^-1 z - n.

    (I - L) v = z is solved by forward substitution; no inversion, one
    pass over the nonzero entries.
    """
    n = matrix.order
    v: list[int | float] = [1] * n
    for i in range(n):
        acc: int | float = 1
        for j, w in matrix.row_lower(i):
            acc += w * v[j]
        v[i] = acc
    return matrix.trace() + sum(v) - n


def longest_common_length(profile: KappaProfile) -> int:
    return profile.ell


def kappa_dup(rset: RankingSet, params: MeasureParams) -> int | float:
    """Duplicate-aware total: kappa of the distinct set plus N*s/D.

    N is the multiset size, s the largest multiplicity, D the distinct
    count. The plain measures cannot tell a multiset from its distinct
    set; this correction can.
    """
    distinct, s = rset.distinct()
    profile = measure(distinct, params)
    bonus = Fraction(len(rset) * s, len(distinct))
    if profile.exact and bonus.denominator == 1:
        return profile.total + int(bonus)
    return float(profile.total + bonus)


def kappa1_topk(rset: RankingSet, params: MeasureParams) -> float:
    """Cutoff-weighted variant of kappa_1 for top-k style rankings.

    Each common item contributes beta**mu * gamma**d, but only while
    mu + d stays strictly below the cutoff zeta.
    """
    if params.zeta is None or params.beta is None:
        raise ValueError("top-k weighting requires both zeta and beta")
    stats = position_stats(rset, params)
    total = 0.0
    for item, mu in stats.mu.items():
        d = stats.dev[item]
        if heaviside(params.zeta - mu - d):
            total += (params.beta ** mu) * (params.gamma ** d)
    return total


@dataclass(frozen=True)
class SweepPoint:
    gamma: float
    lam: float
    profile: KappaProfile


def kappa_sweep(
    rset: RankingSet,
    gammas: Sequence[float],
    lams: Sequence[float],
    params: MeasureParams | None = None,
) -> list[SweepPoint]:
    """Evaluate the measure over a (gamma, lambda) grid.

    The set is surveyed once; each grid point only re-exponentiates the
    stored deviations and gaps. Points come back in grid order, gamma
    outer, lambda inner.
    """
    if params is None:
        params = MeasureParams()
    sv = survey(rset)
    points = []
    for gamma in gammas:
        for lam in lams:
            point_params = replace(params, gamma=gamma, lam=lam)
            matrix = sv.matrix(point_params)
            points.append(SweepPoint(gamma, lam, kappa_series(matrix, point_params)))
    return points
