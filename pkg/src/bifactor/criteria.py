"""Exhaustive feasibility criteria, used as oracles against the solver.

Each checker enumerates vertex subsets directly (binary counting on
indices, so witnesses are reproducible) and decides one classical
condition for the existence of a degree-bounded factor:

  * check_new_criterion — the one-sided condition the solver realizes:
    f(B) >= sum_{x in A} max(0, g(x) - e(x, Y\\B)) for all A, B.
  * check_cymer_kano — g(A) <= sum_y min(f(y), e(y, A)) over A in X, and
    the mirrored inequality over B in Y (two-sided lower bounds).
  * check_heinrich — f(A) >= sum_{u not in A} max(0, g(u) - deg_{G-A}(u))
    over all A in X union Y.
  * check_ore_f_factor — Ore's exact-degree condition: f(X) = f(Y) and
    f(A) <= sum_y min(f(y), e(y, A)) for all A in X.
  * check_hall_condition — f(N(S)) >= g(S) for all S in X, valid only when
    every edge multiplicity is at least a floor m and f <= m on Y (the
    floor-1, all-bounds-1 case is Hall's marriage condition).

These run in exponential time by design; the solver is the production
decider.  The enumerated dimension is capped (default 22, i.e. 2^22
subset evaluations per family) and the cap can be overridden per call or
through the BIFACTOR_EXHAUSTION_LIMIT environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import BifactorError, Instance

DEFAULT_EXHAUSTION_LIMIT = 22
ENV_EXHAUSTION_LIMIT = "BIFACTOR_EXHAUSTION_LIMIT"


class ExhaustionLimitError(BifactorError):
    """The instance is too large for exhaustive subset enumeration."""


class NotApplicableError(BifactorError):
    """The criterion's applicability preconditions fail on this instance."""


@dataclass(frozen=True)
class Witness:
    """A subset pair at which a criterion's inequality fails.

    lhs is the capacity side (the one required to be large enough) and
    rhs the demand side, so a violation means lhs < rhs — except for
    condition "ore-balance", where it means lhs != rhs.  condition names
    the inequality family; x_set/y_set hold whichever subsets that family
    quantifies over (empty when unused).
    """

    x_set: frozenset[int]
    y_set: frozenset[int]
    lhs: int
    rhs: int
    condition: str


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    holds: bool
    witness: Witness | None = None

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise ValueError("witness must be present exactly when the criterion fails")


def _exhaustion_limit(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(ENV_EXHAUSTION_LIMIT)
    if env is not None:
        return int(env)
    return DEFAULT_EXHAUSTION_LIMIT


def _require_within_limit(what: str, size: int, limit: int) -> None:
    if size > limit:
        raise ExhaustionLimitError(
            f"{what} has {size} vertices, above the exhaustion limit {limit}")


def _bits(mask: int, count: int) -> list[int]:
    return [i for i in range(count) if mask >> i & 1]


def check_new_criterion(inst: Instance, *, limit: int | None = None) -> CriterionReport:
    """Decide f(B) >= sum_{x in A} max(0, g(x) - e(x, Y\\B)) for all A, B.

    Only B is enumerated: for fixed B the sum over A is maximized by
    taking exactly the x with positive terms, so the worst A is
    {x : g(x) > e(x, Y\\B)} and is reported in the witness.
    """
    _require_within_limit("Y", inst.y_count, _exhaustion_limit(limit))
    adj: list[list[tuple[int, int]]] = [[] for _ in range(inst.x_count)]
    deg = [0] * inst.x_count
    for (x, y), m in sorted(inst.multiplicity.items()):
        adj[x].append((y, m))
        deg[x] += m
    f_y = inst.f_y
    g_x = inst.g_x

    for mask in range(1 << inst.y_count):
        f_b = 0
        for y in _bits(mask, inst.y_count):
            f_b += f_y[y]
        demand = 0
        worst_a = []
        for x in range(inst.x_count):
            outside = deg[x]
            for y, m in adj[x]:
                if mask >> y & 1:
                    outside -= m
            if g_x[x] > outside:
                demand += g_x[x] - outside
                worst_a.append(x)
        if f_b < demand:
            witness = Witness(x_set=frozenset(worst_a),
                              y_set=frozenset(_bits(mask, inst.y_count)),
                              lhs=f_b, rhs=demand, condition="new")
            return CriterionReport("new", holds=False, witness=witness)
    return CriterionReport("new", holds=True)


def check_cymer_kano(inst: Instance, g_y: Sequence[int] | None = None, *,
                     limit: int | None = None) -> CriterionReport:
    """Decide the two-family min-sum condition for (g, f)-factors.

    g_y supplies lower bounds on Y; omitted means all zero, which makes
    the Y-side family hold trivially (it is then skipped).
    """
    cap = _exhaustion_limit(limit)
    _require_within_limit("X", inst.x_count, cap)
    _require_within_limit("Y", inst.y_count, cap)

    adj_y: list[list[tuple[int, int]]] = [[] for _ in range(inst.y_count)]
    adj_x: list[list[tuple[int, int]]] = [[] for _ in range(inst.x_count)]
    for (x, y), m in sorted(inst.multiplicity.items()):
        adj_y[y].append((x, m))
        adj_x[x].append((y, m))

    for mask in range(1 << inst.x_count):
        g_a = 0
        for x in _bits(mask, inst.x_count):
            g_a += inst.g_x[x]
        if g_a == 0:
            continue
        absorb = 0
        for y in range(inst.y_count):
            into_a = 0
            for x, m in adj_y[y]:
                if mask >> x & 1:
                    into_a += m
            absorb += min(inst.f_y[y], into_a)
        if g_a > absorb:
            witness = Witness(x_set=frozenset(_bits(mask, inst.x_count)),
                              y_set=frozenset(), lhs=absorb, rhs=g_a,
                              condition="cymer-kano-x")
            return CriterionReport("cymer-kano", holds=False, witness=witness)

    if g_y is not None and any(v > 0 for v in g_y):
        for mask in range(1 << inst.y_count):
            g_b = 0
            for y in _bits(mask, inst.y_count):
                g_b += g_y[y]
            if g_b == 0:
                continue
            absorb = 0
            for x in range(inst.x_count):
                into_b = 0
                for y, m in adj_x[x]:
                    if mask >> y & 1:
                        into_b += m
                absorb += min(inst.f_x[x], into_b)
            if g_b > absorb:
                witness = Witness(x_set=frozenset(),
                                  y_set=frozenset(_bits(mask, inst.y_count)),
                                  lhs=absorb, rhs=g_b, condition="cymer-kano-y")
                return CriterionReport("cymer-kano", holds=False, witness=witness)
    return CriterionReport("cymer-kano", holds=True)


def check_heinrich(inst: Instance, g_y: Sequence[int] | None = None, *,
                   limit: int | None = None) -> CriterionReport:
    """Decide f(A) >= sum_{u not in A} max(0, g(u) - deg_{G-A}(u)) over all
    A in X union Y, where deg_{G-A}(u) counts multiplicity from u to
    vertices outside A.

    Subsets are enumerated over x_count + y_count bits (X indices low).
    """
    nx, ny = inst.x_count, inst.y_count
    _require_within_limit("X union Y", nx + ny, _exhaustion_limit(limit))
    lower_y = list(g_y) if g_y is not None else [0] * ny
    edges = sorted(inst.multiplicity.items())

    for mask in range(1 << (nx + ny)):
        f_a = 0
        for x in range(nx):
            if mask >> x & 1:
                f_a += inst.f_x[x]
        for y in range(ny):
            if mask >> (nx + y) & 1:
                f_a += inst.f_y[y]
        rest_x = [0] * nx  # degree into Y \ A for x outside A
        rest_y = [0] * ny
        for (x, y), m in edges:
            if not mask >> (nx + y) & 1:
                rest_x[x] += m
            if not mask >> x & 1:
                rest_y[y] += m
        demand = 0
        for x in range(nx):
            if not mask >> x & 1 and inst.g_x[x] > rest_x[x]:
                demand += inst.g_x[x] - rest_x[x]
        for y in range(ny):
            if not mask >> (nx + y) & 1 and lower_y[y] > rest_y[y]:
                demand += lower_y[y] - rest_y[y]
        if f_a < demand:
            witness = Witness(x_set=frozenset(_bits(mask, nx)),
                              y_set=frozenset(y for y in range(ny) if mask >> (nx + y) & 1),
                              lhs=f_a, rhs=demand, condition="heinrich")
            return CriterionReport("heinrich", holds=False, witness=witness)
    return CriterionReport("heinrich", holds=True)


def check_ore_f_factor(inst: Instance, *, limit: int | None = None) -> CriterionReport:
    """Decide whether a factor with exact degrees f exists (Ore).

    Treats f_x and f_y as prescribed exact degrees on both sides; the
    instance's g_x is ignored.  Requires f(X) = f(Y) plus
    f(A) <= sum_y min(f(y), e(y, A)) for every A in X.
    """
    _require_within_limit("X", inst.x_count, _exhaustion_limit(limit))
    f_x_total = sum(inst.f_x)
    f_y_total = sum(inst.f_y)
    if f_x_total != f_y_total:
        witness = Witness(x_set=frozenset(range(inst.x_count)),
                          y_set=frozenset(range(inst.y_count)),
                          lhs=f_x_total, rhs=f_y_total, condition="ore-balance")
        return CriterionReport("ore", holds=False, witness=witness)

    adj_y: list[list[tuple[int, int]]] = [[] for _ in range(inst.y_count)]
    for (x, y), m in sorted(inst.multiplicity.items()):
        adj_y[y].append((x, m))

    for mask in range(1 << inst.x_count):
        f_a = 0
        for x in _bits(mask, inst.x_count):
            f_a += inst.f_x[x]
        if f_a == 0:
            continue
        absorb = 0
        for y in range(inst.y_count):
            into_a = 0
            for x, m in adj_y[y]:
                if mask >> x & 1:
                    into_a += m
            absorb += min(inst.f_y[y], into_a)
        if f_a > absorb:
            witness = Witness(x_set=frozenset(_bits(mask, inst.x_count)),
                              y_set=frozenset(), lhs=absorb, rhs=f_a,
                              condition="ore-degree")
            return CriterionReport("ore", holds=False, witness=witness)
    return CriterionReport("ore", holds=True)


def check_hall_condition(inst: Instance, m_floor: int, *,
                         limit: int | None = None) -> CriterionReport:
    """Decide f(N(S)) >= g(S) for all S in X.

    Only applicable when every stored multiplicity is at least m_floor
    and f(y) <= m_floor on all of Y; otherwise NotApplicableError is
    raised (a precondition failure, not a verdict).
    """
    if m_floor < 1:
        raise NotApplicableError(f"multiplicity floor must be positive, got {m_floor}")
    for (x, y), m in sorted(inst.multiplicity.items()):
        if m < m_floor:
            raise NotApplicableError(
                f"corollary not applicable: edge ({x},{y}) has multiplicity {m} < floor {m_floor}")
    for y, f in enumerate(inst.f_y):
        if f > m_floor:
            raise NotApplicableError(
                f"corollary not applicable: f at y={y} is {f} > floor {m_floor}")
    _require_within_limit("X", inst.x_count, _exhaustion_limit(limit))

    neighbor_mask = [0] * inst.x_count
    for (x, y) in inst.multiplicity:
        neighbor_mask[x] |= 1 << y

    for mask in range(1 << inst.x_count):
        g_s = 0
        n_mask = 0
        for x in _bits(mask, inst.x_count):
            g_s += inst.g_x[x]
            n_mask |= neighbor_mask[x]
        if g_s == 0:
            continue
        f_n = 0
        for y in _bits(n_mask, inst.y_count):
            f_n += inst.f_y[y]
        if f_n < g_s:
            witness = Witness(x_set=frozenset(_bits(mask, inst.x_count)),
                              y_set=frozenset(_bits(n_mask, inst.y_count)),
                              lhs=f_n, rhs=g_s, condition="hall")
            return CriterionReport("hall", holds=False, witness=witness)
    return CriterionReport("hall", holds=True)
