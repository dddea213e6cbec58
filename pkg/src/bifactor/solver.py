"""Constructive solver: build a factor by alternating-path augmentation,
or extract an (A, B) certificate when no augmentation exists.

The solver maintains a subgraph F that always respects the upper bounds
(0 <= c <= m everywhere, deg_F(v) <= f(v) on both sides) and drives the
total shortfall

    sum_{x in X} max(0, g(x) - deg_F(x))

to zero one unit at a time.  Each round searches breadth-first for an
alternating path that starts at a deficient X-vertex, crosses X -> Y only
on edges with spare multiplicity (m - c >= 1) and Y -> X only on edges
with chosen multiplicity (c >= 1), and ends either at a Y-vertex below its
f-bound or at an X-vertex strictly above its g-bound.  Flipping the path
(add one copy on the spare edges, remove one on the chosen edges) raises
the start vertex's degree by one, leaves every interior degree unchanged,
and adjusts only the terminal vertex — so the shortfall drops by exactly 1
and F stays within all upper bounds.

When the search exhausts instead, the set of vertices it reached yields
the certificate: A = all reached X-vertices (every deficient vertex is a
seed, so all of them are included), B = all reached Y-vertices.  Before
emitting, extract_certificate re-derives from the labels the exhaustion
properties this pair relies on and aborts on any mismatch — such a failure
is an implementation bug, never bad input.

Vertices are labeled at most once per search, so paths are simple and the
per-search cost is O(|V| + |E|) with |E| counting edge pairs, not copies.
The whole solve performs at most sum g(x) flips.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Certificate, Factor, Instance, SolveOutcome


class InternalInvariantError(RuntimeError):
    """A solver-internal consistency check failed: an implementation bug."""


@dataclass
class SolveStats:
    augmentations: int = 0
    searches: int = 0


@dataclass(frozen=True)
class NicePath:
    """An augmenting alternating path.

    vertices alternate X, Y, X, ... starting at a deficient X-vertex;
    edge_ids[i] joins vertices[i] and vertices[i+1].  Even steps carry a
    spare edge copy (to add), odd steps a chosen copy (to remove).
    """

    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]


@dataclass
class AugmentState:
    """Mutable solver state: current factor plus search bookkeeping.

    chosen/deg_f_x/deg_f_y are maintained incrementally and always
    describe a subgraph within the upper bounds.  deficient is exactly
    {x : g(x) > deg_f_x[x]} after every mutation.  reached_x/reached_y
    and the parent arrays describe the last search; they are only
    meaningful as the full reachable set after an exhausted search.
    """

    x_count: int
    y_count: int
    g_x: tuple[int, ...]
    f_x: tuple[int, ...]
    f_y: tuple[int, ...]
    edge_x: list[int]
    edge_y: list[int]
    edge_mult: list[int]
    adj_x: list[list[tuple[int, int]]]  # per x: (y, edge id), ascending y
    adj_y: list[list[tuple[int, int]]]  # per y: (x, edge id), ascending x
    chosen: list[int]
    deg_f_x: list[int]
    deg_f_y: list[int]
    deficient: set[int]
    deficiency_total: int
    reached_x: bytearray = field(default_factory=bytearray)
    reached_y: bytearray = field(default_factory=bytearray)
    parent_x: list[tuple[int, int] | None] = field(default_factory=list)
    parent_y: list[tuple[int, int] | None] = field(default_factory=list)

    @classmethod
    def for_instance(cls, inst: Instance, warm_start: bool = False) -> "AugmentState":
        """Build initial state with the empty factor (or a greedy start).

        warm_start saturates edges in ascending (x, y) order up to the
        remaining f-capacity of both endpoints.  It never changes which
        outcome solve() reaches, only how many augmentations it needs.
        """
        edges = sorted(inst.multiplicity.items())
        edge_x = [x for (x, _), _ in edges]
        edge_y = [y for (_, y), _ in edges]
        edge_mult = [m for _, m in edges]
        adj_x: list[list[tuple[int, int]]] = [[] for _ in range(inst.x_count)]
        adj_y: list[list[tuple[int, int]]] = [[] for _ in range(inst.y_count)]
        for eid, ((x, y), _) in enumerate(edges):
            adj_x[x].append((y, eid))
        for eid in sorted(range(len(edges)), key=lambda e: (edge_y[e], edge_x[e])):
            adj_y[edge_y[eid]].append((edge_x[eid], eid))

        chosen = [0] * len(edges)
        deg_x = [0] * inst.x_count
        deg_y = [0] * inst.y_count
        if warm_start:
            for eid in range(len(edges)):
                x, y = edge_x[eid], edge_y[eid]
                take = min(edge_mult[eid], inst.f_x[x] - deg_x[x], inst.f_y[y] - deg_y[y])
                if take > 0:
                    chosen[eid] = take
                    deg_x[x] += take
                    deg_y[y] += take

        deficient = {x for x in range(inst.x_count) if inst.g_x[x] > deg_x[x]}
        total = sum(inst.g_x[x] - deg_x[x] for x in deficient)
        return cls(
            x_count=inst.x_count, y_count=inst.y_count,
            g_x=inst.g_x, f_x=inst.f_x, f_y=inst.f_y,
            edge_x=edge_x, edge_y=edge_y, edge_mult=edge_mult,
            adj_x=adj_x, adj_y=adj_y,
            chosen=chosen, deg_f_x=deg_x, deg_f_y=deg_y,
            deficient=deficient, deficiency_total=total,
        )

    @property
    def factor(self) -> Factor:
        """Materialize the current subgraph as a Factor value."""
        return Factor({(self.edge_x[e], self.edge_y[e]): c
                       for e, c in enumerate(self.chosen) if c > 0})


def find_nice_path(inst: Instance, state: AugmentState) -> NicePath | None:
    """Breadth-first search for an augmenting alternating path.

    All deficient vertices are seeded at once (each is a length-zero
    alternating path already); seeds and neighbors are scanned in
    ascending index order, so the result is deterministic.  Returns the
    first augmenting path found, or None when none exists — in which case
    reached_x/reached_y hold the full reachable vertex sets.
    """
    if not state.deficient:
        raise ValueError("find_nice_path requires at least one deficient vertex")

    reached_x = bytearray(state.x_count)
    reached_y = bytearray(state.y_count)
    parent_x: list[tuple[int, int] | None] = [None] * state.x_count
    parent_y: list[tuple[int, int] | None] = [None] * state.y_count
    state.reached_x = reached_x
    state.reached_y = reached_y
    state.parent_x = parent_x
    state.parent_y = parent_y

    chosen = state.chosen
    mult = state.edge_mult
    deg_y = state.deg_f_y
    deg_x = state.deg_f_x
    f_y = state.f_y
    g_x = state.g_x
    adj_x = state.adj_x
    adj_y = state.adj_y

    frontier = sorted(state.deficient)
    for x in frontier:
        reached_x[x] = 1

    while frontier:
        next_y: list[int] = []
        for x in frontier:
            for y, eid in adj_x[x]:
                if reached_y[y] or chosen[eid] >= mult[eid]:
                    continue
                parent_y[y] = (x, eid)
                if deg_y[y] < f_y[y]:
                    return _path_ending_at_y(state, y)
                reached_y[y] = 1
                next_y.append(y)
        next_x: list[int] = []
        for y in next_y:
            for x, eid in adj_y[y]:
                if reached_x[x] or chosen[eid] == 0:
                    continue
                parent_x[x] = (y, eid)
                if deg_x[x] > g_x[x]:
                    return _path_ending_at_x(state, x)
                reached_x[x] = 1
                next_x.append(x)
        frontier = next_x
    return None


def _path_ending_at_y(state: AugmentState, y: int) -> NicePath:
    vertices = [y]
    edge_ids = []
    x, eid = state.parent_y[y]
    edge_ids.append(eid)
    vertices.append(x)
    while state.parent_x[x] is not None:
        y2, eid = state.parent_x[x]
        edge_ids.append(eid)
        vertices.append(y2)
        x, eid = state.parent_y[y2]
        edge_ids.append(eid)
        vertices.append(x)
    vertices.reverse()
    edge_ids.reverse()
    return NicePath(tuple(vertices), tuple(edge_ids))


def _path_ending_at_x(state: AugmentState, x: int) -> NicePath:
    vertices = [x]
    edge_ids = []
    while state.parent_x[x] is not None:
        y, eid = state.parent_x[x]
        edge_ids.append(eid)
        vertices.append(y)
        x, eid = state.parent_y[y]
        edge_ids.append(eid)
        vertices.append(x)
    vertices.reverse()
    edge_ids.reverse()
    return NicePath(tuple(vertices), tuple(edge_ids))


def flip_path(state: AugmentState, path: NicePath) -> AugmentState:
    """Apply one augmentation: symmetric-difference the factor with the path.

    Even path steps gain one copy, odd steps lose one.  Only the start
    vertex (degree +1) and terminal vertex (+1 on Y, -1 on X) change
    degree; the shortfall drops by exactly 1.
    """
    chosen = state.chosen
    deg_x = state.deg_f_x
    deg_y = state.deg_f_y
    for i, eid in enumerate(path.edge_ids):
        x, y = state.edge_x[eid], state.edge_y[eid]
        if i % 2 == 0:
            chosen[eid] += 1
            deg_x[x] += 1
            deg_y[y] += 1
        else:
            chosen[eid] -= 1
            deg_x[x] -= 1
            deg_y[y] -= 1
    root = path.vertices[0]
    if deg_x[root] >= state.g_x[root]:
        state.deficient.discard(root)
    state.deficiency_total -= 1
    return state


def extract_certificate(inst: Instance, state: AugmentState) -> Certificate:
    """Turn an exhausted search into an infeasibility certificate.

    A is every reached X-vertex (deficient vertices are seeds, so they are
    all present), B every reached Y-vertex.  Exhaustion pins down the
    structure this pair relies on; each property is re-derived here and a
    mismatch raises InternalInvariantError:

      * chosen edges into B start in A, spare edge capacity out of A ends
        in B (otherwise the search would have crossed them);
      * deg_F(y) = f(y) on B, and deg_F(x) = g(x) on reached-but-not-
        deficient X (otherwise an augmenting endpoint existed);
      * all edges from A avoiding B are fully chosen, so each x in A has
        e(x, Y\\B) = deg_F(x) - c(x, B) <= g(x).

    Summing: demand of (A, B) = total shortfall + c(A, B), and c(A, B) =
    sum of deg_F over B = f(B).  The deficiency therefore equals the
    remaining shortfall, which is >= 1.
    """
    if not state.deficient:
        raise ValueError("certificate extraction requires a deficient vertex")

    reached_x = state.reached_x
    reached_y = state.reached_y
    deg_x = state.deg_f_x
    deg_y = state.deg_f_y

    for r in state.deficient:
        if not reached_x[r]:
            raise InternalInvariantError(f"deficient vertex x={r} missing from search labels")

    a_set = frozenset(x for x in range(state.x_count) if reached_x[x])
    b_set = frozenset(y for y in range(state.y_count) if reached_y[y])

    chosen_into_b = 0       # factor copies between A and B
    full_outside = {x: 0 for x in a_set}  # multiplicity from A avoiding B
    chosen_outside = {x: 0 for x in a_set}
    for eid, c in enumerate(state.chosen):
        x, y = state.edge_x[eid], state.edge_y[eid]
        in_b = bool(reached_y[y])
        if c > 0 and in_b and not reached_x[x]:
            raise InternalInvariantError(
                f"chosen edge ({x},{y}) enters the reached Y-set from outside it")
        if reached_x[x] and not in_b and c < state.edge_mult[eid]:
            raise InternalInvariantError(
                f"edge ({x},{y}) leaves the reached set with spare capacity")
        if reached_x[x]:
            if in_b:
                chosen_into_b += c
            else:
                full_outside[x] += state.edge_mult[eid]
                chosen_outside[x] += c

    for y in b_set:
        if deg_y[y] != state.f_y[y]:
            raise InternalInvariantError(
                f"reached y={y} is below its upper bound (degree {deg_y[y]}, f {state.f_y[y]})")
    shortfall = 0
    for x in a_set:
        if x in state.deficient:
            shortfall += state.g_x[x] - deg_x[x]
        elif deg_x[x] != state.g_x[x]:
            raise InternalInvariantError(
                f"reached x={x} sits above its lower bound (degree {deg_x[x]}, g {state.g_x[x]})")
        if full_outside[x] != chosen_outside[x]:
            raise InternalInvariantError(
                f"x={x} has unchosen capacity outside the reached Y-set")
        if full_outside[x] > state.g_x[x]:
            raise InternalInvariantError(
                f"x={x} keeps more than g of its multiplicity outside the reached Y-set")

    demand = sum(state.g_x[x] - full_outside[x] for x in a_set)
    f_b = sum(state.f_y[y] for y in b_set)
    saturation = sum(deg_y[y] for y in b_set)
    if demand != shortfall + chosen_into_b:
        raise InternalInvariantError(
            f"demand {demand} != shortfall {shortfall} + chosen copies into B {chosen_into_b}")
    if shortfall < 1:
        raise InternalInvariantError("no remaining shortfall at exhaustion")
    if chosen_into_b != saturation or saturation != f_b:
        raise InternalInvariantError(
            f"chosen copies into B {chosen_into_b}, saturation {saturation}, f(B) {f_b} differ")
    if state.deficiency_total != shortfall:
        raise InternalInvariantError(
            f"tracked shortfall {state.deficiency_total} != recomputed {shortfall}")

    return Certificate(a_set=a_set, b_set=b_set, deficiency=demand - f_b)


def run_solver(inst: Instance, *, warm_start: bool = False,
               check_invariants: bool = False) -> tuple[SolveOutcome, SolveStats]:
    """Solve and report how much work it took.

    check_invariants recomputes the full state from scratch after every
    flip (degrees, bounds, shortfall step) and raises
    InternalInvariantError on any drift; it is meant for test
    instrumentation, not production use.
    """
    state = AugmentState.for_instance(inst, warm_start=warm_start)
    stats = SolveStats()
    if check_invariants:
        _audit_state(inst, state)
    while state.deficient:
        stats.searches += 1
        path = find_nice_path(inst, state)
        if path is None:
            cert = extract_certificate(inst, state)
            return SolveOutcome(certificate=cert), stats
        before = state.deficiency_total
        flip_path(state, path)
        stats.augmentations += 1
        if check_invariants:
            _audit_state(inst, state)
            if state.deficiency_total != before - 1:
                raise InternalInvariantError(
                    f"shortfall stepped {before} -> {state.deficiency_total}, expected -1")
    return SolveOutcome(factor=state.factor), stats


def solve(inst: Instance, *, warm_start: bool = False) -> SolveOutcome:
    """Decide the instance: a Factor when one exists, else a Certificate.

    Deterministic for a fixed instance and flags; the returned factor
    passes verify_factor and the returned certificate passes
    verify_certificate.
    """
    outcome, _ = run_solver(inst, warm_start=warm_start)
    return outcome


def _audit_state(inst: Instance, state: AugmentState) -> None:
    """Recompute everything the state maintains incrementally."""
    deg_x = [0] * state.x_count
    deg_y = [0] * state.y_count
    for eid, c in enumerate(state.chosen):
        if not (0 <= c <= state.edge_mult[eid]):
            raise InternalInvariantError(
                f"edge {eid} carries {c} of {state.edge_mult[eid]} copies")
        deg_x[state.edge_x[eid]] += c
        deg_y[state.edge_y[eid]] += c
    if deg_x != state.deg_f_x or deg_y != state.deg_f_y:
        raise InternalInvariantError("incremental degrees drifted from the factor")
    for x in range(state.x_count):
        if deg_x[x] > state.f_x[x]:
            raise InternalInvariantError(f"degree above f at x={x}")
    for y in range(state.y_count):
        if deg_y[y] > state.f_y[y]:
            raise InternalInvariantError(f"degree above f at y={y}")
    deficient = {x for x in range(state.x_count) if state.g_x[x] > deg_x[x]}
    if deficient != state.deficient:
        raise InternalInvariantError("deficient set drifted")
    total = sum(state.g_x[x] - deg_x[x] for x in deficient)
    if total != state.deficiency_total:
        raise InternalInvariantError("tracked shortfall drifted")
