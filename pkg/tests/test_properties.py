from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from rankconsensus.graph import MeasureParams, build_matrix, survey
from rankconsensus.measures import measure
from rankconsensus.model import RankingSet
from rankconsensus.oracle import enumerate_common
from rankconsensus.io import parse_json, parse_text, serialize_json, serialize_text

ALPHABET = [chr(ord("a") + i) for i in range(8)]


@st.composite
def ranking_sets(draw, min_rankings=1, max_rankings=4, universe=6, ties=True):
    tokens = ALPHABET[:universe]
    count = draw(st.integers(min_rankings, max_rankings))
    rankings = []
    for _ in range(count):
        size = draw(st.integers(1, universe))
        chosen = draw(st.permutations(tokens))[:size]
        groups: list[list[str]] = []
        index = 0
        while index < len(chosen):
            width = 1
            if ties and index + 1 < len(chosen) and draw(st.booleans()):
                width = draw(st.integers(2, min(3, len(chosen) - index)))
            groups.append(list(chosen[index : index + width]))
            index += width
        rankings.append(groups)
    return RankingSet.build(rankings)


@given(ranking_sets(ties=False))
@settings(max_examples=60, deadline=None)
def test_untied_positions_are_one_to_m(rset):
    for ranking in rset:
        positions = sorted(ranking.position_of(item) for item in ranking.item_set())
        assert positions == list(range(1, ranking.length + 1))


@given(ranking_sets())
@settings(max_examples=60, deadline=None)
def test_distinct_is_idempotent(rset):
    once, most = rset.distinct()
    twice, again = once.distinct()
    assert len(twice) == len(once)
    assert again == 1
    assert most >= 1


@given(ranking_sets())
@settings(max_examples=60, deadline=None)
def test_upper_triangle_is_always_zero(rset):
    matrix = build_matrix(rset, MeasureParams(gamma=0.9, lam=0.7))
    dense = matrix.to_dense()
    for i in range(matrix.order):
        for j in range(i + 1, matrix.order):
            assert dense[i][j] == 0


@given(ranking_sets(), st.floats(0.05, 1.0), st.floats(0.05, 1.0))
@settings(max_examples=60, deadline=None)
def test_weights_never_change_the_matrix_pattern(rset, gamma, lam):
    exact = build_matrix(rset, MeasureParams()).to_dense()
    weighted = build_matrix(rset, MeasureParams(gamma=gamma, lam=lam)).to_dense()
    for exact_row, weighted_row in zip(exact, weighted):
        for e, w in zip(exact_row, weighted_row):
            assert (e == 0) == (w == 0)
            assert e in (0, 1)


@given(ranking_sets(min_rankings=2), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_reordering_the_set_changes_nothing(rset, rng):
    lines = [
        [[rset.table.token_of(i) for i in group] for group in ranking.groups]
        for ranking in rset
    ]
    shuffled = lines[:]
    rng.shuffle(shuffled)
    original = measure(rset, MeasureParams())
    reordered = measure(RankingSet.build(shuffled), MeasureParams())
    assert reordered.series == original.series


@given(ranking_sets(min_rankings=2))
@settings(max_examples=60, deadline=None)
def test_absent_items_zero_their_row_and_column(rset):
    sv = survey(rset)
    dense = sv.matrix(MeasureParams()).to_dense()
    for i in range(len(sv.items)):
        if not sv.common[i]:
            assert all(v == 0 for v in dense[i])
            assert all(row[i] == 0 for row in dense)


@given(ranking_sets())
@settings(max_examples=40, deadline=None)
def test_reference_choice_does_not_change_the_series(rset):
    baseline = measure(rset, MeasureParams())
    weighted_params = MeasureParams(gamma=0.85, lam=0.65, epsilon=0.0)
    weighted = measure(rset, weighted_params)
    for k in range(len(rset)):
        assert measure(rset, MeasureParams(), reference_index=k).series == baseline.series
        other = measure(rset, weighted_params, reference_index=k)
        assert other.ell == weighted.ell
        for p in range(1, weighted.ell + 1):
            a, b = weighted.value_at(p), other.value_at(p)
            assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


@given(ranking_sets(max_rankings=3), st.permutations(ALPHABET[:6]), st.integers(1, 6))
@settings(max_examples=40, deadline=None)
def test_adding_a_ranking_never_increases_counts(rset, extra, size):
    rankings = [
        [[rset.table.token_of(i) for i in group] for group in ranking.groups]
        for ranking in rset
    ]
    grown = RankingSet.build(rankings + [list(extra[:size])])
    before = measure(rset, MeasureParams())
    after = measure(grown, MeasureParams())
    for p in range(1, max(before.ell, after.ell) + 1):
        assert after.value_at(p) <= before.value_at(p)


@given(ranking_sets(min_rankings=2))
@settings(max_examples=40, deadline=None)
def test_smaller_weights_never_raise_kappa(rset):
    loose = measure(rset, MeasureParams(gamma=0.9, lam=0.9, epsilon=0.0))
    tight = measure(rset, MeasureParams(gamma=0.6, lam=0.5, epsilon=0.0))
    assert tight.total <= loose.total + 1e-12


@given(ranking_sets(max_rankings=3, universe=5))
@settings(max_examples=40, deadline=None)
def test_oracle_and_matrix_agree(rset):
    exact = measure(rset, MeasureParams())
    subs = enumerate_common(rset)
    by_length: dict[int, int] = {}
    for sub in subs:
        by_length[len(sub.items)] = by_length.get(len(sub.items), 0) + 1
    assert dict(exact.series) == by_length


@given(ranking_sets(max_rankings=3, universe=5))
@settings(max_examples=30, deadline=None)
def test_enumeration_is_downward_closed(rset):
    found = {sub.items for sub in enumerate_common(rset)}
    for items in found:
        for drop in range(len(items)):
            shorter = items[:drop] + items[drop + 1 :]
            if shorter:
                assert shorter in found


@given(ranking_sets())
@settings(max_examples=40, deadline=None)
def test_single_ranking_total_is_power_of_two(rset):
    first = rset.rankings[0]
    groups = [[rset.table.token_of(i) for i in group] for group in first.groups]
    alone = RankingSet.build([groups])
    if first.is_untied:
        assert measure(alone, MeasureParams()).total == 2**first.length - 1


@st.composite
def documents(draw):
    count = draw(st.integers(1, 4))
    lines = []
    for k in range(count):
        size = draw(st.integers(1, 6))
        chosen = draw(st.permutations(ALPHABET[:6]))[:size]
        label = draw(st.booleans())
        prefix = f"r{k}: " if label else ""
        lines.append(prefix + " ".join(chosen))
    return "\n".join(lines) + "\n"


@given(documents())
@settings(max_examples=60, deadline=None)
def test_parse_serialize_round_trips(text):
    doc = parse_text(text)
    assert parse_text(serialize_text(doc)).rankings == doc.rankings
    assert parse_json(serialize_json(doc)).rankings == doc.rankings
