"""Brute-force ground truth: exhaustive enumeration of sub-multigraphs.

Every assignment of a chosen multiplicity 0..m(e) to each edge is a
candidate; the oracle walks them in lexicographic order (edges sorted by
(x, y), earlier edges more significant) and tests the degree bounds
directly.  Intended for micro-instances only — the raw configuration
count prod_e (m(e)+1) must stay within an explicit budget.

The search prunes: a partial assignment is abandoned as soon as an upper
bound is exceeded or a lower bound can no longer be reached with the
remaining unassigned multiplicity.  Pruning never skips a satisfying
assignment, so the first solution found is the lexicographically first
and counts stay exact; the test suite keeps an unpruned reference to hold
this implementation to account.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import BifactorError, Factor, Instance


class BudgetExceededError(BifactorError):
    """The raw configuration count is above the oracle budget."""


@dataclass(frozen=True)
class OracleBudget:
    max_configurations: int = 10_000_000


def _check_budget(inst: Instance, budget: OracleBudget | None) -> None:
    cap = (budget or OracleBudget()).max_configurations
    total = 1
    for m in inst.multiplicity.values():
        total *= m + 1
        if total > cap:
            raise BudgetExceededError(
                f"configuration count exceeds budget {cap}")


def _search(inst: Instance, g_y: Sequence[int] | None, count_all: bool):
    """Shared pruned DFS.  Returns (first_assignment_or_None, count)."""
    edges = sorted(inst.multiplicity.items())
    n = len(edges)
    ex = [x for (x, _), _ in edges]
    ey = [y for (_, y), _ in edges]
    em = [m for _, m in edges]
    g_x, f_x, f_y = inst.g_x, inst.f_x, inst.f_y
    lower_y = list(g_y) if g_y is not None else [0] * inst.y_count

    deg_x = [0] * inst.x_count
    deg_y = [0] * inst.y_count
    rem_x = [0] * inst.x_count  # unassigned multiplicity still incident
    rem_y = [0] * inst.y_count
    for i in range(n):
        rem_x[ex[i]] += em[i]
        rem_y[ey[i]] += em[i]

    # A vertex with no edges can only meet a positive lower bound never.
    for x in range(inst.x_count):
        if rem_x[x] < g_x[x]:
            return None, 0
    for y in range(inst.y_count):
        if rem_y[y] < lower_y[y]:
            return None, 0

    chosen = [0] * n
    first: list[int] | None = None
    count = 0

    def descend(i: int) -> bool:
        """Returns True to stop the whole search (first hit, not counting)."""
        nonlocal first, count
        if i == n:
            count += 1
            if first is None:
                first = chosen.copy()
            return not count_all
        x, y, m = ex[i], ey[i], em[i]
        rem_x[x] -= m
        rem_y[y] -= m
        stop = False
        for v in range(m + 1):
            if deg_x[x] + v > f_x[x] or deg_y[y] + v > f_y[y]:
                break  # larger v only worse
            if deg_x[x] + v + rem_x[x] < g_x[x] or deg_y[y] + v + rem_y[y] < lower_y[y]:
                continue  # larger v may still recover
            chosen[i] = v
            deg_x[x] += v
            deg_y[y] += v
            stop = descend(i + 1)
            deg_x[x] -= v
            deg_y[y] -= v
            if stop:
                break
        chosen[i] = 0
        rem_x[x] += m
        rem_y[y] += m
        return stop

    descend(0)
    if first is None:
        return None, count
    factor = {(ex[i], ey[i]): first[i] for i in range(n) if first[i] > 0}
    return factor, count


def brute_force_factor(inst: Instance, g_y: Sequence[int] | None = None,
                       budget: OracleBudget | None = None) -> Factor | None:
    """Lexicographically first satisfying assignment, or None.

    g_y adds lower bounds on Y (absent means zero, matching the main
    problem shape).
    """
    _check_budget(inst, budget)
    assignment, _ = _search(inst, g_y, count_all=False)
    return Factor(assignment) if assignment is not None else None


def count_factors(inst: Instance, g_y: Sequence[int] | None = None,
                  budget: OracleBudget | None = None) -> int:
    """Number of satisfying assignments."""
    _check_budget(inst, budget)
    _, count = _search(inst, g_y, count_all=True)
    return count
