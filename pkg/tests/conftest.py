"""Shared fixtures: generated layout corpora reused across test modules."""

from __future__ import annotations

import random

import pytest

from textplan.core import TRAINING_CATEGORIES, Layout
from textplan.metrics import ReferenceStats, area_histogram, mean_histogram
from textplan.synthgen import GenerationError, generate_layout, sample_spec


def generate_batch(n: int, seed: int = 0) -> list[Layout]:
    """n valid layouts cycling through the six categories."""
    rng = random.Random(seed)
    cats = sorted(TRAINING_CATEGORIES)
    out = []
    i = 0
    while len(out) < n:
        cat = cats[i % len(cats)]
        i += 1
        try:
            out.append(generate_layout(sample_spec(cat, rng.getrandbits(63))))
        except GenerationError:
            continue
    return out


@pytest.fixture(scope="session")
def layout_corpus() -> list[Layout]:
    return generate_batch(120, seed=11)


@pytest.fixture(scope="session")
def reference(layout_corpus) -> ReferenceStats:
    return ReferenceStats(
        mean_histogram(area_histogram(l) for l in layout_corpus)
    )
