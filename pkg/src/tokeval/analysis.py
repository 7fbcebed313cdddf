"""Rank-correlation analysis linking tokenizer-metric changes to score changes."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Literal, Sequence

from .errors import ManifestError, UndefinedCorrelationError

CORPUS_SIZE_FACTOR = "corpus_words_increase"


def _average_ranks(values: Sequence[float]) -> list[float]:
    order = sorted(range(len(values)), key=values.__getitem__)
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mean_rank = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        i = j + 1
    return ranks


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Spearman's rho: Pearson correlation of average ranks.

    Ties receive the mean of their rank range. Raises ValueError on length
    mismatch and UndefinedCorrelationError when either series is constant
    or has fewer than two points.
    """
    if len(xs) != len(ys):
        raise ValueError(f"series lengths differ: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise UndefinedCorrelationError("need at least two paired observations")
    if len(set(xs)) < 2 or len(set(ys)) < 2:
        raise UndefinedCorrelationError("correlation is undefined for a constant series")
    rx = _average_ranks(xs)
    ry = _average_ranks(ys)
    mean = (len(rx) + 1) / 2
    dx = [r - mean for r in rx]
    dy = [r - mean for r in ry]
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    sxx = math.fsum(a * a for a in dx)
    syy = math.fsum(b * b for b in dy)
    return sxy / math.sqrt(sxx * syy)


def relative_change(
    model_value: float,
    baseline_value: float,
    orientation: Literal["increase", "decrease"],
) -> float:
    """Baseline-normalized change, sign-flipped so positive means improvement.

    "increase" yields (model - baseline) / baseline; "decrease" flips the
    sign, so a drop below the baseline comes out positive.
    """
    if orientation not in ("increase", "decrease"):
        raise ValueError(f"orientation must be 'increase' or 'decrease', got {orientation!r}")
    if baseline_value == 0:
        raise ValueError("baseline value must be non-zero")
    delta = (model_value - baseline_value) / baseline_value
    return delta if orientation == "increase" else -delta


@dataclass(frozen=True)
class ManifestRecord:
    language_tag: str
    model_name: str
    metrics: dict[str, float] = field(default_factory=dict)
    scores: dict[str, float] = field(default_factory=dict)
    corpus_words: float | None = None


@dataclass(frozen=True)
class Manifest:
    """Per-language metric and score records plus the shared baseline model."""

    records: tuple[ManifestRecord, ...]
    baseline_model: str

    def __post_init__(self):
        baselines = {r.language_tag for r in self.records if r.model_name == self.baseline_model}
        for record in self.records:
            if record.language_tag not in baselines:
                raise ManifestError(
                    f"language {record.language_tag!r} has no {self.baseline_model!r} baseline record"
                )

    def baseline_for(self, language_tag: str) -> ManifestRecord:
        for record in self.records:
            if record.language_tag == language_tag and record.model_name == self.baseline_model:
                return record
        raise ManifestError(f"no baseline record for language {language_tag!r}")


def manifest_from_dict(payload: dict) -> Manifest:
    try:
        baseline_model = payload["baseline_model"]
        raw_records = payload["records"]
    except (KeyError, TypeError) as exc:
        raise ManifestError(f"manifest missing required key: {exc}") from exc
    records = []
    for raw in raw_records:
        try:
            records.append(
                ManifestRecord(
                    language_tag=raw["language"],
                    model_name=raw["model"],
                    metrics={k: float(v) for k, v in raw.get("metrics", {}).items()},
                    scores={k: float(v) for k, v in raw.get("scores", {}).items()},
                    corpus_words=(
                        float(raw["corpus_words"])
                        if raw.get("corpus_words") is not None
                        else None
                    ),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ManifestError(f"bad manifest record {raw!r}: {exc}") from exc
    return Manifest(tuple(records), baseline_model)


def load_manifest(path: str | Path) -> Manifest:
    with open(path, encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ManifestError(f"{path}: not valid JSON: {exc}") from exc
    return manifest_from_dict(payload)


@dataclass(frozen=True)
class CorrelationCell:
    rho: float | None
    sample_size: int


@dataclass(frozen=True)
class CorrelationMatrix:
    factors: tuple[str, ...]
    tasks: tuple[str, ...]
    cells: dict[tuple[str, str], CorrelationCell]

    def cell(self, factor: str, task: str) -> CorrelationCell:
        return self.cells[(factor, task)]

    def to_dict(self) -> dict:
        grid: dict[str, dict[str, dict]] = {}
        for factor in self.factors:
            grid[factor] = {}
            for task in self.tasks:
                cell = self.cells[(factor, task)]
                grid[factor][task] = {"rho": cell.rho, "n": cell.sample_size}
        return {"factors": list(self.factors), "tasks": list(self.tasks), "cells": grid}

    def to_csv(self) -> str:
        """Header row = task names; absent cells render empty."""
        lines = ["factor," + ",".join(self.tasks)]
        for factor in self.factors:
            row = [factor]
            for task in self.tasks:
                cell = self.cells[(factor, task)]
                row.append("" if cell.rho is None else f"{cell.rho:.6f}")
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def _group_tasks(task_names: Iterable[str], average_submeasures: bool) -> dict[str, tuple[str, ...]]:
    """Map output column name -> underlying score keys.

    With averaging on, tasks sharing the prefix before their final
    underscore (udp_uas and udp_las, say) collapse into one column whose
    per-record delta is the mean of the sub-measure deltas.
    """
    names = sorted(set(task_names))
    if not average_submeasures:
        return {name: (name,) for name in names}
    groups: dict[str, list[str]] = {}
    for name in names:
        prefix = name.rsplit("_", 1)[0] if "_" in name else name
        groups.setdefault(prefix, []).append(name)
    columns: dict[str, tuple[str, ...]] = {}
    for prefix, members in groups.items():
        if len(members) >= 2:
            columns[prefix] = tuple(members)
        else:
            columns[members[0]] = (members[0],)
    return dict(sorted(columns.items()))


def correlation_matrix(
    manifest: Manifest,
    exclude_languages: Iterable[str] = (),
    average_submeasures: bool = False,
) -> CorrelationMatrix:
    """Spearman correlations between factor deltas and score deltas.

    Data points are the non-baseline records; each pairs against its
    language's baseline record. Metric factors use decrease orientation
    and the corpus-size factor uses increase orientation, so positive
    deltas always mean improvement. Pairs with a value missing on either
    side (or a zero baseline) are skipped, and cells with fewer than two
    usable pairs, or a constant series, are reported absent with their
    sample size rather than fabricated.
    """
    excluded = set(exclude_languages)
    points = [
        r
        for r in manifest.records
        if r.model_name != manifest.baseline_model and r.language_tag not in excluded
    ]

    metric_names = sorted({name for r in points for name in r.metrics})
    factors = [f"{name}_decrease" for name in metric_names]
    if any(r.corpus_words is not None for r in points):
        factors.append(CORPUS_SIZE_FACTOR)

    task_columns = _group_tasks((name for r in points for name in r.scores), average_submeasures)
    tasks = tuple(task_columns)

    def factor_delta(record: ManifestRecord, factor: str) -> float | None:
        baseline = manifest.baseline_for(record.language_tag)
        if factor == CORPUS_SIZE_FACTOR:
            if record.corpus_words is None or not baseline.corpus_words:
                return None
            return relative_change(record.corpus_words, baseline.corpus_words, "increase")
        metric = factor.removesuffix("_decrease")
        if metric not in record.metrics or metric not in baseline.metrics:
            return None
        if baseline.metrics[metric] == 0:
            return None
        return relative_change(record.metrics[metric], baseline.metrics[metric], "decrease")

    def score_delta(record: ManifestRecord, members: tuple[str, ...]) -> float | None:
        baseline = manifest.baseline_for(record.language_tag)
        deltas = []
        for name in members:
            if name not in record.scores or name not in baseline.scores:
                return None
            if baseline.scores[name] == 0:
                return None
            deltas.append(relative_change(record.scores[name], baseline.scores[name], "increase"))
        return sum(deltas) / len(deltas)

    cells: dict[tuple[str, str], CorrelationCell] = {}
    for factor in factors:
        for task, members in task_columns.items():
            xs: list[float] = []
            ys: list[float] = []
            for record in points:
                fv = factor_delta(record, factor)
                sv = score_delta(record, members)
                if fv is None or sv is None:
                    continue
                xs.append(fv)
                ys.append(sv)
            if len(xs) < 2:
                cells[(factor, task)] = CorrelationCell(None, len(xs))
                continue
            try:
                rho = spearman(xs, ys)
            except UndefinedCorrelationError:
                cells[(factor, task)] = CorrelationCell(None, len(xs))
                continue
            cells[(factor, task)] = CorrelationCell(rho, len(xs))
    return CorrelationMatrix(tuple(factors), tasks, cells)
