"""Core data model: interned items, rankings with tie groups, ranking sets.

Rankings are purely ordinal. Each ranking is a sequence of tie groups; a
group holds one or more item ids that share the same preference level.
Positions are 1-based group indices, so an item in the third group of a
ranking has position 3 whether or not earlier groups are tied.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

RESERVED_CHARS = "{}"


class ValidationError(ValueError):
    """Raised when tokens or ranking structure violate the model rules."""


def _check_token(token: str) -> str:
    if not isinstance(token, str) or not token:
        raise ValidationError("item tokens must be non-empty strings")
    if any(c.isspace() for c in token):
        raise ValidationError(f"item token may not contain whitespace: {token!r}")
    if any(c in RESERVED_CHARS for c in token):
        raise ValidationError(f"item token may not contain braces: {token!r}")
    return token


class ItemTable:
    """Bijection between item tokens and dense integer ids, in intern order."""

    def __init__(self) -> None:
        self._ids: dict[str, int] = {}
        self._tokens: list[str] = []

    def intern(self, token: str) -> int:
        _check_token(token)
        item = self._ids.get(token)
        if item is None:
            item = len(self._tokens)
            self._ids[token] = item
            self._tokens.append(token)
        return item

    def id_of(self, token: str) -> int:
        try:
            return self._ids[token]
        except KeyError:
            raise ValueError(f"unknown item: {token!r}") from None

    def token_of(self, item: int) -> str:
        if not 0 <= item < len(self._tokens):
            raise ValueError(f"unknown item id: {item}")
        return self._tokens[item]

    def __len__(self) -> int:
        return len(self._tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._ids

    def __repr__(self) -> str:
        return f"ItemTable({len(self._tokens)} items)"


@dataclass(frozen=True)
class Ranking:
    """An ordered sequence of tie groups of item ids.

    Groups are stored with their members sorted by id, which makes equality
    structural: two rankings are equal when they place the same items in the
    same groups in the same order.
    """

    groups: tuple[tuple[int, ...], ...]
    _positions: dict[int, int] = field(
        init=False, repr=False, compare=False, hash=False, default=None  # type: ignore[assignment]
    )

    def __post_init__(self) -> None:
        positions: dict[int, int] = {}
        canonical = []
        for index, group in enumerate(self.groups, start=1):
            if not group:
                raise ValidationError("empty tie group")
            for item in group:
                if item in positions:
                    raise ValidationError(f"duplicate item id {item}")
                positions[item] = index
            canonical.append(tuple(sorted(group)))
        object.__setattr__(self, "groups", tuple(canonical))
        object.__setattr__(self, "_positions", positions)

    @property
    def length(self) -> int:
        return len(self._positions)

    @property
    def is_untied(self) -> bool:
        return all(len(g) == 1 for g in self.groups)

    def position_of(self, item: int) -> int:
        """1-based tie-group index of the item, or 0 when absent."""
        return self._positions.get(item, 0)

    def items(self) -> Iterator[int]:
        """Items in group order; members of one group come out in id order."""
        for group in self.groups:
            yield from group

    def item_set(self) -> frozenset[int]:
        return frozenset(self._positions)

    def __contains__(self, item: int) -> bool:
        return item in self._positions


def build_ranking(table: ItemTable, groups: Iterable[str | Iterable[str]]) -> Ranking:
    """Intern tokens and assemble a validated Ranking.

    Each element of ``groups`` is either a single token (a singleton group)
    or an iterable of tokens forming one tie group.
    """
    id_groups: list[tuple[int, ...]] = []
    seen: dict[int, str] = {}
    for group in groups:
        tokens = [group] if isinstance(group, str) else list(group)
        if not tokens:
            raise ValidationError("empty tie group")
        ids = []
        for token in tokens:
            item = table.intern(token)
            if item in seen:
                raise ValidationError(f"duplicate item {token}")
            seen[item] = token
            ids.append(item)
        id_groups.append(tuple(ids))
    if not id_groups:
        raise ValidationError("empty ranking")
    return Ranking(tuple(id_groups))


@dataclass(frozen=True, eq=False)
class RankingSet:
    """An ordered multiset of rankings over one shared item table."""

    rankings: tuple[Ranking, ...]
    table: ItemTable

    def __post_init__(self) -> None:
        if not self.rankings:
            raise ValidationError("empty ranking set")

    @classmethod
    def build(cls, rankings: Iterable[Iterable[str | Iterable[str]]]) -> "RankingSet":
        table = ItemTable()
        built = tuple(build_ranking(table, groups) for groups in rankings)
        return cls(built, table)

    def __len__(self) -> int:
        return len(self.rankings)

    def __iter__(self) -> Iterator[Ranking]:
        return iter(self.rankings)

    def reference_index(self) -> int:
        """Index of the ranking with the fewest items; earlier wins a tie."""
        best = 0
        for k, ranking in enumerate(self.rankings):
            if ranking.length < self.rankings[best].length:
                best = k
        return best

    def position_of(self, ranking: Ranking | int, item: int) -> int:
        if not 0 <= item < len(self.table):
            raise ValueError(f"unknown item id: {item}")
        if isinstance(ranking, int):
            ranking = self.rankings[ranking]
        return ranking.position_of(item)

    def common_items(self, reference_index: int | None = None) -> list[int]:
        """Ids present in every ranking, in reference-ranking order.

        Members of one reference tie group are ordered by id.
        """
        if reference_index is None:
            reference_index = self.reference_index()
        reference = self.rankings[reference_index]
        return [
            item
            for item in reference.items()
            if all(item in ranking for ranking in self.rankings)
        ]

    def distinct(self) -> tuple["RankingSet", int]:
        """Deduplicated copy plus the largest multiplicity s."""
        counts = Counter(self.rankings)
        unique = tuple(dict.fromkeys(self.rankings))
        return RankingSet(unique, self.table), max(counts.values())
