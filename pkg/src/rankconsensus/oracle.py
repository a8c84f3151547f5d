"""Brute-force enumeration of common subsequences, as ground truth.

This module deliberately recomputes everything from raw positions and
never touches the matrix code, so it can stand as an independent check
of the algebraic path. It walks subsets of the items shared by all
rankings, growing a chain only while the newest pair keeps its relative
order in every ranking. That prefix test is sufficient: positions within
one ranking are transitive, so a chain whose consecutive pairs are all
strictly ordered is strictly ordered as a whole.

Cost grows with 2**(shortest ranking length); the guard refuses inputs
past SIZE_GUARD items and points callers at the matrix path instead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import Deviation, MeasureParams
from .measures import KappaProfile
from .model import RankingSet

SIZE_GUARD = 20


class SizeLimitError(ValueError):
    """Input too large for exhaustive enumeration."""


@dataclass(frozen=True)
class CommonSubsequence:
    items: tuple[int, ...]
    weight: int | float


def _deviation(column: list[int], variant: Deviation) -> float:
    mean = sum(column) / len(column)
    mad = sum(abs(x - mean) for x in column) / len(column)
    if variant is Deviation.MAD:
        return mad
    if variant is Deviation.SQRT_MAD:
        return math.sqrt(mad)
    return math.sqrt(sum((x - mean) ** 2 for x in column) / len(column))


def enumerate_common(
    rset: RankingSet,
    max_len: int | None = None,
    params: MeasureParams | None = None,
) -> list[CommonSubsequence]:
    """All common subsequences, in length-then-reference-order.

    Weights follow ``params`` (exact 1 at the default gamma = lambda = 1):
    a singleton weighs gamma**d, a longer chain the product of
    lambda**gap over its consecutive pairs.
    """
    if params is None:
        params = MeasureParams()
    shortest = min(ranking.length for ranking in rset)
    if shortest > SIZE_GUARD:
        raise SizeLimitError(
            f"shortest ranking has {shortest} items, more than the enumeration "
            f"guard of {SIZE_GUARD}; use the matrix path (kappa_series) instead"
        )
    reference = rset.rankings[rset.reference_index()]
    candidates = [
        item
        for item in reference.items()
        if all(item in ranking for ranking in rset)
    ]
    columns = {
        item: [ranking.position_of(item) for ranking in rset]
        for item in candidates
    }
    exact = params.exact

    singleton_weight: dict[int, int | float] = {}
    for item in candidates:
        if exact:
            singleton_weight[item] = 1
        else:
            d = _deviation(columns[item], params.deviation)
            singleton_weight[item] = params.gamma ** d

    pair_weight: dict[tuple[int, int], int | float] = {}

    def weight_of_pair(a: int, b: int) -> int | float:
        key = (a, b)
        if key not in pair_weight:
            if exact:
                pair_weight[key] = 1
            else:
                ca, cb = columns[a], columns[b]
                gap = sum(abs(pb - pa) for pa, pb in zip(ca, cb)) / len(ca)
                pair_weight[key] = params.lam ** gap
        return pair_weight[key]

    def ordered_after(a: int, b: int) -> bool:
        return all(pb > pa for pa, pb in zip(columns[a], columns[b]))

    found: list[tuple[int, ...]] = []
    limit = len(candidates) if max_len is None else max_len

    def extend(prefix: tuple[int, ...], start: int) -> None:
        for idx in range(start, len(candidates)):
            item = candidates[idx]
            if prefix and not ordered_after(candidates[prefix[-1]], item):
                continue
            chain = prefix + (idx,)
            found.append(chain)
            if len(chain) < limit:
                extend(chain, idx + 1)

    if limit >= 1:
        extend((), 0)

    found.sort(key=lambda chain: (len(chain), chain))
    result = []
    for chain in found:
        ids = tuple(candidates[idx] for idx in chain)
        if len(ids) == 1:
            weight = singleton_weight[ids[0]]
        else:
            weight: int | float = 1
            for a, b in zip(ids, ids[1:]):
                weight = weight * weight_of_pair(a, b)
        result.append(CommonSubsequence(items=ids, weight=weight))
    return result


def oracle_profile(rset: RankingSet, params: MeasureParams | None = None) -> KappaProfile:
    """Kappa profile obtained by summing enumerated subsequence weights."""
    if params is None:
        params = MeasureParams()
    by_length: dict[int, int | float] = {}
    for sub in enumerate_common(rset, params=params):
        length = len(sub.items)
        by_length[length] = by_length.get(length, 0) + sub.weight
    ell = max(by_length) if by_length else 0
    series = tuple((p, by_length[p]) for p in range(1, ell + 1))
    return KappaProfile(
        series=series,
        ell=ell,
        total=sum(value for _, value in series),
        exact=params.exact,
    )


def format_subsequences(rset: RankingSet, subsequences: list[CommonSubsequence]) -> str:
    """One subsequence per line: tokens space-separated, weight appended."""
    lines = []
    for sub in subsequences:
        tokens = " ".join(rset.table.token_of(item) for item in sub.items)
        lines.append(f"{tokens} {sub.weight!r}")
    return "\n".join(lines) + ("\n" if lines else "")
