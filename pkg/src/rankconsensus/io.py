"""Ranking file formats, bundled datasets, and result serialization.

Text format, one ranking per line:

    label: item item {tied tied} item   # comment

The leading ``label:`` is optional (any first token ending in a colon is
taken as a label), braces group tied items, ``#`` starts a comment and
blank lines are skipped. The JSON format is an object with a "rankings"
list of {"label": ..., "groups": [[token, ...], ...]} entries; the two
formats describe the same model and round-trip through each other.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from importlib import resources

from .graph import MeasureParams
from .measures import KappaProfile, SweepPoint
from .model import RESERVED_CHARS, RankingSet


class ParseError(ValueError):
    """Malformed ranking input; the message carries line or path context."""


@dataclass(frozen=True)
class RawRanking:
    label: str | None
    groups: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class RankingDocument:
    rankings: tuple[RawRanking, ...]
    source: str = "<memory>"

    def labels(self) -> list[str]:
        """Display labels: the declared ones, 1-based indices otherwise."""
        return [
            raw.label if raw.label is not None else str(k + 1)
            for k, raw in enumerate(self.rankings)
        ]

    def to_ranking_set(self) -> RankingSet:
        return RankingSet.build([raw.groups for raw in self.rankings])


def _valid_token(token: str) -> bool:
    return bool(token) and not any(c.isspace() or c in RESERVED_CHARS for c in token)


def _split_line(line: str, lineno: int) -> list[tuple[str, ...]]:
    """Tokenize one line into tie groups, honoring braces."""
    groups: list[tuple[str, ...]] = []
    depth = 0
    buf: list[str] = []
    for ch in line:
        if ch == "{":
            if depth:
                raise ParseError(f"nested braces at line {lineno}")
            if buf and not buf[-1].isspace():
                raise ParseError(f"brace must start a token at line {lineno}")
            depth = 1
            buf = []
        elif ch == "}":
            if not depth:
                raise ParseError(f"unbalanced braces at line {lineno}")
            members = tuple("".join(buf).split())
            if not members:
                raise ParseError(f"empty tie group at line {lineno}")
            groups.append(members)
            depth = 0
            buf = []
        elif ch.isspace() and not depth:
            if buf:
                groups.append(("".join(buf),))
                buf = []
        else:
            buf.append(ch)
    if depth:
        raise ParseError(f"unbalanced braces at line {lineno}")
    if buf:
        groups.append(("".join(buf),))
    return groups


def parse_text(content: str, source: str = "<text>") -> RankingDocument:
    rankings: list[RawRanking] = []
    labels_seen: set[str] = set()
    for lineno, raw_line in enumerate(content.splitlines(), start=1):
        line = raw_line.split("#", 1)[0]
        if not line.strip():
            continue
        groups = _split_line(line, lineno)
        label = None
        first = groups[0]
        if len(first) == 1 and first[0].endswith(":") and line.lstrip()[0] != "{":
            label = first[0][:-1]
            if not label:
                raise ParseError(f"empty label at line {lineno}")
            groups = groups[1:]
        if label is not None:
            if label in labels_seen:
                raise ParseError(f"duplicate label {label} at line {lineno}")
            labels_seen.add(label)
        if not groups:
            raise ParseError(f"empty ranking at line {lineno}")
        seen_tokens: set[str] = set()
        for group in groups:
            for token in group:
                if token in seen_tokens:
                    raise ParseError(f"duplicate item {token} at line {lineno}")
                seen_tokens.add(token)
        rankings.append(RawRanking(label=label, groups=tuple(groups)))
    return RankingDocument(rankings=tuple(rankings), source=source)


def _json_fail(path: str, message: str) -> ParseError:
    return ParseError(f"{path}: {message}")


def parse_json(content: str, source: str = "<json>") -> RankingDocument:
    try:
        payload = json.loads(content)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise _json_fail("$", "expected an object")
    if "rankings" not in payload:
        raise _json_fail("$", "missing key rankings")
    entries = payload["rankings"]
    if not isinstance(entries, list):
        raise _json_fail("$.rankings", "expected a list")
    if not entries:
        raise _json_fail("$.rankings", "empty ranking set")
    rankings: list[RawRanking] = []
    labels_seen: set[str] = set()
    for k, entry in enumerate(entries):
        path = f"$.rankings[{k}]"
        if not isinstance(entry, dict):
            raise _json_fail(path, "expected an object")
        label = entry.get("label")
        if label is not None:
            if not isinstance(label, str):
                raise _json_fail(f"{path}.label", "expected a string")
            if label in labels_seen:
                raise _json_fail(f"{path}.label", f"duplicate label {label}")
            labels_seen.add(label)
        if "groups" not in entry:
            raise _json_fail(path, "missing key groups")
        raw_groups = entry["groups"]
        if not isinstance(raw_groups, list) or not raw_groups:
            raise _json_fail(f"{path}.groups", "expected a non-empty list")
        groups: list[tuple[str, ...]] = []
        seen_tokens: set[str] = set()
        for g, raw_group in enumerate(raw_groups):
            gpath = f"{path}.groups[{g}]"
            if not isinstance(raw_group, list):
                raise _json_fail(gpath, "expected a list of tokens")
            if not raw_group:
                raise _json_fail(gpath, "empty tie group")
            for token in raw_group:
                if not isinstance(token, str) or not _valid_token(token):
                    raise _json_fail(gpath, f"invalid token {token!r}")
                if token in seen_tokens:
                    raise _json_fail(path, f"duplicate item {token}")
                seen_tokens.add(token)
            groups.append(tuple(raw_group))
        rankings.append(RawRanking(label=label, groups=tuple(groups)))
    return RankingDocument(rankings=tuple(rankings), source=source)


def serialize_text(document: RankingDocument) -> str:
    lines = []
    for raw in document.rankings:
        parts = []
        for group in raw.groups:
            if len(group) == 1:
                parts.append(group[0])
            else:
                parts.append("{" + " ".join(group) + "}")
        prefix = f"{raw.label}: " if raw.label is not None else ""
        lines.append(prefix + " ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")


def serialize_json(document: RankingDocument) -> str:
    entries = []
    for raw in document.rankings:
        entry: dict[str, object] = {}
        if raw.label is not None:
            entry["label"] = raw.label
        entry["groups"] = [list(group) for group in raw.groups]
        entries.append(entry)
    return json.dumps({"rankings": entries}, indent=2) + "\n"


class Dataset(str, Enum):
    CLUSTERING = "clustering"
    CLUSTERING_GA = "clustering_ga"
    CLUSTERING_CE = "clustering_ce"
    SEARCH_GOOGLE = "search_google"
    SEARCH_BING = "search_bing"


def _data_text(filename: str) -> str:
    return (resources.files(__package__) / "data" / filename).read_text(encoding="utf-8")


def load_dataset(name: Dataset | str) -> RankingDocument:
    dataset = Dataset(name)
    return parse_text(_data_text(f"{dataset.value}.txt"), source=f"dataset:{dataset.value}")


REFERENCE_TABLES = ("ce", "ga", "google", "bing")


def load_reference_sweep(name: str) -> tuple[list[float], list[float], list[list[float]]]:
    """Bundled reference kappa table: (gammas, lambdas, grid[gamma][lambda])."""
    if name not in REFERENCE_TABLES:
        raise ValueError(f"unknown reference table: {name!r}")
    lines = _data_text(f"reference_{name}.csv").strip().splitlines()
    lams = [float(cell) for cell in lines[0].split(",")[1:]]
    gammas = []
    grid = []
    for line in lines[1:]:
        cells = line.split(",")
        gammas.append(float(cells[0]))
        grid.append([float(cell) for cell in cells[1:]])
    return gammas, lams, grid


def round3(value: int | float) -> str:
    """Three decimals, halves away from zero, as the reference tables print."""
    quantum = Decimal("0.001")
    return str(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))


def _fmt_number(value: int | float) -> str:
    if isinstance(value, int):
        return str(value)
    return repr(value)


def _params_payload(params: MeasureParams) -> dict[str, object]:
    return {
        "gamma": params.gamma,
        "lambda": params.lam,
        "epsilon": params.epsilon,
        "deviation": params.deviation.value,
        "zeta": params.zeta,
        "beta": params.beta,
    }


def profile_json(
    profile: KappaProfile, params: MeasureParams, extras: dict[str, object] | None = None
) -> str:
    payload: dict[str, object] = {
        "params": _params_payload(params),
        "kappa_series": [[p, value] for p, value in profile.series],
        "ell": profile.ell,
        "kappa_total": profile.total,
    }
    if extras:
        payload.update(extras)
    return json.dumps(payload, indent=2) + "\n"


def profile_csv(
    profile: KappaProfile, params: MeasureParams, extras: dict[str, object] | None = None
) -> str:
    extras = extras or {}
    header = ["gamma", "lambda", "kappa"] + list(extras)
    row = [_fmt_number(params.gamma), _fmt_number(params.lam), _fmt_number(profile.total)]
    row += [_fmt_number(v) for v in extras.values()]
    return ",".join(header) + "\n" + ",".join(row) + "\n"


def profile_table(
    profile: KappaProfile, params: MeasureParams, extras: dict[str, object] | None = None
) -> str:
    def shown(value: int | float) -> str:
        return str(value) if isinstance(value, int) else round3(value)

    lines = ["p kappa_p"]
    for p, value in profile.series:
        lines.append(f"{p} {shown(value)}")
    lines.append(f"ell {profile.ell}")
    lines.append(f"kappa {shown(profile.total)}")
    for key, value in (extras or {}).items():
        lines.append(f"{key} {shown(value)}")
    return "\n".join(lines) + "\n"


def sweep_csv(points: list[SweepPoint], per_p: list[int] | None = None) -> str:
    header = ["gamma", "lambda", "kappa"]
    if per_p:
        header += [f"kappa_{p}" for p in per_p]
    lines = [",".join(header)]
    for point in points:
        row = [
            _fmt_number(point.gamma),
            _fmt_number(point.lam),
            _fmt_number(point.profile.total),
        ]
        if per_p:
            row += [_fmt_number(point.profile.value_at(p)) for p in per_p]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def sweep_table(points: list[SweepPoint]) -> str:
    """Grid as gamma rows by lambda columns, three-decimal cells."""
    gammas = list(dict.fromkeys(point.gamma for point in points))
    lams = list(dict.fromkeys(point.lam for point in points))
    values = {(point.gamma, point.lam): point.profile.total for point in points}
    head = ["gamma\\lambda"] + [_fmt_number(lam) for lam in lams]
    body = []
    for gamma in gammas:
        body.append(
            [_fmt_number(gamma)] + [round3(values[(gamma, lam)]) for lam in lams]
        )
    widths = [max(len(row[c]) for row in [head] + body) for c in range(len(head))]
    lines = []
    for row in [head] + body:
        lines.append("  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row)))
    return "\n".join(lines) + "\n"


def write_results(
    result: KappaProfile | list[SweepPoint],
    fmt: str,
    params: MeasureParams | None = None,
    per_p: list[int] | None = None,
    extras: dict[str, object] | None = None,
) -> str:
    """Render a profile or a sweep in one of json, csv, table."""
    if fmt not in ("json", "csv", "table"):
        raise ValueError(f"unknown format: {fmt!r}")
    if isinstance(result, KappaProfile):
        if params is None:
            raise ValueError("profile output requires params")
        if fmt == "json":
            return profile_json(result, params, extras)
        if fmt == "csv":
            return profile_csv(result, params, extras)
        return profile_table(result, params, extras)
    if fmt == "json":
        payload = [
            {
                "gamma": point.gamma,
                "lambda": point.lam,
                "kappa": point.profile.total,
                "series": [[p, v] for p, v in point.profile.series],
            }
            for point in result
        ]
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        return sweep_csv(result, per_p)
    return sweep_table(result)
