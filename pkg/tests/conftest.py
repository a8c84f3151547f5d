from __future__ import annotations

import random

import pytest

from rankconsensus import RankingSet, parse_text
from rankconsensus.measures import KappaProfile

# Four partially overlapping rankings used as the worked example across
# the test suite. Known by heart: kappa_p = 5, 7, 4, 1 and kappa = 17.
EXAMPLE_LINES = (
    "a b c d e f",
    "b d c e f a",
    "b c d e g h i j k f",
    "b a d e f c",
)


def make_set(*lines: str) -> RankingSet:
    return parse_text("\n".join(lines)).to_ranking_set()


@pytest.fixture
def example_set() -> RankingSet:
    return make_set(*EXAMPLE_LINES)


def random_set(
    rng: random.Random,
    max_rankings: int = 5,
    universe: int = 10,
    allow_ties: bool = True,
) -> RankingSet:
    """A small random instance: partial rankings over a shared universe,
    optionally with tie groups, sized for the enumeration oracle."""
    tokens = [chr(ord("a") + i) for i in range(universe)]
    count = rng.randint(2, max_rankings)
    lines = []
    for _ in range(count):
        size = rng.randint(1, universe)
        chosen = rng.sample(tokens, size)
        parts: list[str] = []
        index = 0
        while index < len(chosen):
            if allow_ties and index + 1 < len(chosen) and rng.random() < 0.25:
                width = rng.randint(2, min(3, len(chosen) - index))
                group = " ".join(chosen[index : index + width])
                parts.append("{" + group + "}")
                index += width
            else:
                parts.append(chosen[index])
                index += 1
        lines.append(" ".join(parts))
    return make_set(*lines)


def assert_profiles_close(
    left: KappaProfile, right: KappaProfile, rel: float = 1e-9
) -> None:
    if left.exact and right.exact:
        assert left.series == right.series
        assert left.total == right.total
    else:
        assert left.ell == right.ell
        for p in range(1, left.ell + 1):
            a, b = float(left.value_at(p)), float(right.value_at(p))
            assert abs(a - b) <= rel * max(1.0, abs(a), abs(b))
    assert left.ell == right.ell
