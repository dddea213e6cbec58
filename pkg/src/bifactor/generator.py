"""Seeded random instance generation for test corpora.

Determinism contract: the same GenParams always produce the same
instance, on any platform and in any faithful reimplementation.  To that
end the generator never touches the platform RNG; it runs on splitmix64
with the standard constants

    state  = (state + 0x9E3779B97F4A7C15) mod 2^64
    z      = state
    z      = ((z xor (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2^64
    z      = ((z xor (z >> 27)) * 0x94D049BB133111EB) mod 2^64
    output = z xor (z >> 31)

seeded directly with the 64-bit seed.  Draws are consumed in a fixed
order: one word per (x, y) pair in row-major order deciding edge
presence (present iff word < floor(edge_prob * 2^64)), one more word for
the multiplicity of each present edge, then one word per g_x entry, per
f_x slack entry, and per f_y entry.  Range reduction is plain modulo
(word % n); the tiny bias is irrelevant here, reproducibility is not.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Instance

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """The 64-bit splitmix generator; fixed constants, no platform input."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_word(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next_word() % n


@dataclass(frozen=True)
class GenParams:
    """Shape parameters for one random instance.

    Edges appear independently with probability edge_prob and multiplicity
    uniform in [1..max_mult] — or [min_mult_floor..max_mult] when the
    floor is set, which (together with the f_y clamp below) keeps the
    generated instances inside the multiplicity-floor criterion's
    applicability window.  g_x is uniform in [0..g_max]; f_x = g_x plus a
    uniform slack in [0..f_slack], so g <= f always; f_y is uniform in
    [0..g_max+f_slack], clamped to min_mult_floor when the floor is set.
    """

    x_count: int
    y_count: int
    edge_prob: float
    max_mult: int = 1
    g_max: int = 0
    f_slack: int = 0
    min_mult_floor: int | None = None
    seed: int = 0

    def validate(self) -> "GenParams":
        if self.x_count < 1 or self.y_count < 1:
            raise ValueError("x_count and y_count must be positive")
        if not 0.0 <= self.edge_prob <= 1.0:
            raise ValueError(f"edge_prob must be in [0, 1], got {self.edge_prob}")
        if self.max_mult < 1:
            raise ValueError("max_mult must be positive")
        if self.g_max < 0 or self.f_slack < 0:
            raise ValueError("g_max and f_slack must be non-negative")
        if self.min_mult_floor is not None:
            if not 1 <= self.min_mult_floor <= self.max_mult:
                raise ValueError("min_mult_floor must lie in [1, max_mult]")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        return self


def gen_random(params: GenParams) -> Instance:
    """Deterministic instance for the given parameters (see module docs
    for the exact draw sequence)."""
    params.validate()
    rng = SplitMix64(params.seed)
    threshold = int(params.edge_prob * 2.0**64)

    low = params.min_mult_floor if params.min_mult_floor is not None else 1
    span = params.max_mult - low + 1
    multiplicity: dict[tuple[int, int], int] = {}
    for x in range(params.x_count):
        for y in range(params.y_count):
            if rng.next_word() < threshold:
                multiplicity[(x, y)] = low + rng.below(span)

    g_x = [rng.below(params.g_max + 1) for _ in range(params.x_count)]
    f_x = [g + rng.below(params.f_slack + 1) for g in g_x]
    f_y = [rng.below(params.g_max + params.f_slack + 1) for _ in range(params.y_count)]
    if params.min_mult_floor is not None:
        f_y = [min(f, params.min_mult_floor) for f in f_y]

    return Instance(x_count=params.x_count, y_count=params.y_count,
                    multiplicity=multiplicity,
                    g_x=tuple(g_x), f_x=tuple(f_x), f_y=tuple(f_y))
