"""Evaluation metrics: validity/correctness aggregation, OOD ratio, and
spatial diversity (earth mover's distance between floor-area histograms).

Histogram arithmetic is exact (fractions); aggregation carries sums and
counts so parallel merges and reruns produce identical reports.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .core import (
    CategoryKey,
    Layout,
    RoomType,
    TRAINING_CATEGORIES,
    category_of,
    room_area,
    serialize_layout,
)

log = logging.getLogger(__name__)

#: Histogram bin order (alphabetical room types).
TYPE_ORDER: tuple[RoomType, ...] = tuple(RoomType)

Histogram = tuple[Fraction, ...]


def area_histogram(layout: Layout) -> Histogram:
    """Per-type share of total floor area, in TYPE_ORDER, summing to 1."""
    masses = {t: Fraction(0) for t in TYPE_ORDER}
    for room in layout.rooms:
        masses[room.kind] += room_area(room)
    total = sum(masses.values())
    if total == 0:
        raise ValueError("layout has zero total area")
    return tuple(masses[t] / total for t in TYPE_ORDER)


def mean_histogram(histograms: Iterable[Histogram]) -> Histogram:
    hists = list(histograms)
    if not hists:
        raise ValueError("cannot average zero histograms")
    n = len(hists)
    return tuple(sum(col, Fraction(0)) / n for col in zip(*hists))


def wasserstein_1d(h1: Sequence[Fraction], h2: Sequence[Fraction]) -> Fraction:
    """First Wasserstein distance between two histograms on the line with
    ground distance |i - j|, via prefix sums."""
    if len(h1) != len(h2):
        raise ValueError("histograms must have equal length")
    total = Fraction(0)
    c1 = c2 = Fraction(0)
    for a, b in zip(h1, h2):
        c1 += Fraction(a)
        c2 += Fraction(b)
        total += abs(c1 - c2)
    return total


@dataclass(frozen=True)
class ReferenceStats:
    """Training-corpus summary: mean area histogram plus the category set
    that counts as in-distribution."""

    mean: Histogram
    categories: frozenset[CategoryKey] = TRAINING_CATEGORIES

    @classmethod
    def from_layouts(
        cls, layouts: Iterable[Layout], categories: frozenset[CategoryKey] = TRAINING_CATEGORIES
    ) -> "ReferenceStats":
        return cls(mean_histogram(area_histogram(l) for l in layouts), categories)

    def to_json(self) -> dict:
        return {
            "mean_histogram": {
                t.value: str(m) for t, m in zip(TYPE_ORDER, self.mean)
            },
            "categories": sorted(c.label for c in self.categories),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ReferenceStats":
        mean = tuple(Fraction(data["mean_histogram"][t.value]) for t in TYPE_ORDER)
        cats = frozenset(CategoryKey.from_label(c) for c in data["categories"])
        return cls(mean, cats)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "ReferenceStats":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def is_ood(layout: Layout, ref: ReferenceStats) -> bool:
    """True when the layout's bedroom/bathroom category is outside the
    reference training categories."""
    return category_of(layout) not in ref.categories


def spatial_diversity(layout: Layout, ref: ReferenceStats) -> Fraction:
    """Earth mover's distance between this layout's area histogram and the
    reference mean."""
    return wasserstein_1d(area_histogram(layout), ref.mean)


def top_diverse(layouts: Sequence[Layout], k: int, ref: ReferenceStats) -> list[Layout]:
    """The k layouts with the largest spatial diversity; ties broken by
    canonical serialization so the result is deterministic."""
    if k <= 0:
        return []
    ranked = sorted(
        layouts, key=lambda l: (-spatial_diversity(l, ref), serialize_layout(l))
    )
    return ranked[:k]


@dataclass(frozen=True)
class SampleRecord:
    """One generated sample's verdicts. correct/ood/wasserstein are None
    for invalid samples, which keeps them out of those denominators."""

    prompt_id: str
    valid: bool
    correct: bool | None = None
    ood: bool | None = None
    wasserstein: Fraction | None = None


@dataclass(frozen=True)
class PromptResult:
    id: str
    category: str
    n_samples: int
    validity_rate: Fraction
    correctness_rate: Fraction | None
    ood_ratio: Fraction | None
    wasserstein_in: Fraction | None
    wasserstein_out: Fraction | None

    def to_json(self) -> dict:
        def num(x):
            return None if x is None else float(x)

        return {
            "id": self.id,
            "category": self.category,
            "n_samples": self.n_samples,
            "validity_rate": num(self.validity_rate),
            "correctness_rate": num(self.correctness_rate),
            "ood_ratio": num(self.ood_ratio),
            "wasserstein_in": num(self.wasserstein_in),
            "wasserstein_out": num(self.wasserstein_out),
        }


def _summarize(id_: str, category: str, records: list[SampleRecord]) -> PromptResult:
    n = len(records)
    valid = [r for r in records if r.valid]
    n_valid = len(valid)

    def rate(count: int, denom: int) -> Fraction | None:
        return None if denom == 0 else Fraction(count, denom)

    w_in = [r.wasserstein for r in valid if r.ood is False]
    w_out = [r.wasserstein for r in valid if r.ood is True]
    return PromptResult(
        id=id_,
        category=category,
        n_samples=n,
        validity_rate=Fraction(n_valid, n),
        correctness_rate=rate(sum(1 for r in valid if r.correct), n_valid),
        ood_ratio=rate(sum(1 for r in valid if r.ood), n_valid),
        wasserstein_in=sum(w_in, Fraction(0)) / len(w_in) if w_in else None,
        wasserstein_out=sum(w_out, Fraction(0)) / len(w_out) if w_out else None,
    )


def aggregate(
    records: Iterable[SampleRecord], categories_by_prompt: dict[str, str]
) -> tuple[list[PromptResult], list[PromptResult]]:
    """Per-prompt rows plus per-category roll-ups weighted equally per
    sample. Prompts/categories with no samples are omitted with a warning.
    Row order follows `categories_by_prompt` insertion order.
    """
    by_prompt: dict[str, list[SampleRecord]] = {pid: [] for pid in categories_by_prompt}
    for rec in records:
        if rec.prompt_id not in by_prompt:
            raise KeyError(f"record for unknown prompt {rec.prompt_id!r}")
        by_prompt[rec.prompt_id].append(rec)

    prompt_rows = []
    by_category: dict[str, list[SampleRecord]] = {}
    for pid, recs in by_prompt.items():
        cat = categories_by_prompt[pid]
        by_category.setdefault(cat, [])
        if not recs:
            log.warning("prompt %s has no samples; omitted from the report", pid)
            continue
        prompt_rows.append(_summarize(pid, cat, recs))
        by_category[cat].extend(recs)

    category_rows = []
    for cat, recs in by_category.items():
        if not recs:
            log.warning("category %s has no samples; omitted from the report", cat)
            continue
        category_rows.append(_summarize(cat, cat, recs))
    return prompt_rows, category_rows
