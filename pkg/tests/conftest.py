"""Shared corpora: deterministic generator sweeps reused across test
modules and the acceptance suite."""

from __future__ import annotations

import sys
from dataclasses import replace
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bifactor import GenParams, Instance, gen_random

EDGE_PROBS = (0.3, 0.6, 0.9)


def small_params(i: int) -> GenParams:
    """Micro-instance sweep: sizes up to 4x4, multiplicities up to 2."""
    return GenParams(
        x_count=1 + i % 4,
        y_count=1 + (i // 4) % 4,
        edge_prob=EDGE_PROBS[i % 3],
        max_mult=1 + i % 2,
        g_max=i % 3,
        f_slack=(i // 3) % 3,
        seed=i,
    )


def hall_params(i: int) -> tuple[GenParams, int]:
    """Sweep with a multiplicity floor in {1, 2, 3} and f_y clamped to it."""
    floor = 1 + i % 3
    params = GenParams(
        x_count=1 + i % 6,
        y_count=1 + (i // 2) % 6,
        edge_prob=EDGE_PROBS[i % 3],
        max_mult=floor + (i // 3) % 2,
        g_max=i % 4,
        f_slack=(i // 5) % 3,
        min_mult_floor=floor,
        seed=50_000 + i,
    )
    return params, floor


def matching_instance(i: int) -> Instance:
    """Simple bigraph with exact degree 1 demanded on X and capacity 1 on Y."""
    base = gen_random(GenParams(
        x_count=1 + i % 5,
        y_count=1 + (i // 5) % 5,
        edge_prob=EDGE_PROBS[i % 3],
        max_mult=1,
        seed=90_000 + i,
    ))
    ones_x = (1,) * base.x_count
    return replace(base, g_x=ones_x, f_x=ones_x, f_y=(1,) * base.y_count)


@pytest.fixture(scope="session")
def small_corpus() -> list[Instance]:
    return [gen_random(small_params(i)) for i in range(2000)]


@pytest.fixture(scope="session")
def hall_corpus() -> list[tuple[Instance, int]]:
    return [(gen_random(p), floor) for p, floor in (hall_params(i) for i in range(1000))]


@pytest.fixture(scope="session")
def matching_corpus() -> list[Instance]:
    return [matching_instance(i) for i in range(500)]
