"""Data model for bipartite multigraph factor problems.

An instance is a bipartite multigraph on vertex classes X and Y (dense
integer indices) together with degree bounds: a lower bound g(x) and upper
bound f(x) for every x in X, and an upper bound f(y) for every y in Y.  The
question is whether some spanning subgraph F satisfies

    g(x) <= deg_F(x) <= f(x)   for all x in X,
    deg_F(y) <= f(y)           for all y in Y.

Parallel edges are stored as a single (x, y) entry with an integer
multiplicity; a factor chooses how many copies of each edge to keep.  When
no factor exists, a certificate is a pair of vertex subsets (A, B) whose
deficiency

    sum_{x in A} max(0, g(x) - e(x, Y \\ B)) - f(B)

is at least 1, where e(x, S) counts edge copies between x and S.  Such a
pair proves infeasibility: each x in A with a positive term needs that many
factor edges into B, but B can absorb at most f(B).

Everything in this module is a pure function over immutable values; the
types are safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

# Arithmetic cap: bounds and the total multiplicity must fit a 63-bit
# signed integer, so deficiency sums (differences of large sums) cannot
# wrap in fixed-width reimplementations of the file format.
MAX_TOTAL = 2**63 - 1


class BifactorError(Exception):
    """Base class for input-level errors raised by this package."""


class InvalidInstanceError(BifactorError):
    """Raised by validate_instance; carries every violated invariant."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True, eq=True)
class Instance:
    """A bipartite multigraph with degree bounds.

    X vertices are 0..x_count-1, Y vertices are 0..y_count-1.  multiplicity
    maps (x, y) to a positive edge multiplicity; absent pairs mean no edge.
    g applies to X only (the Y side carries no lower bounds here; checkers
    that support them take a separate g_y argument).
    """

    x_count: int
    y_count: int
    multiplicity: dict[tuple[int, int], int]
    g_x: tuple[int, ...]
    f_x: tuple[int, ...]
    f_y: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "multiplicity", dict(self.multiplicity))
        object.__setattr__(self, "g_x", tuple(self.g_x))
        object.__setattr__(self, "f_x", tuple(self.f_x))
        object.__setattr__(self, "f_y", tuple(self.f_y))

    def degree(self, x: int) -> int:
        """Total multiplicity incident to X-vertex x."""
        return sum(m for (xx, _), m in self.multiplicity.items() if xx == x)

    def degree_y(self, y: int) -> int:
        """Total multiplicity incident to Y-vertex y."""
        return sum(m for (_, yy), m in self.multiplicity.items() if yy == y)

    def total_multiplicity(self) -> int:
        return sum(self.multiplicity.values())


@dataclass(frozen=True, eq=True)
class Factor:
    """A choice of multiplicity for each kept edge, 1 <= c(x,y) <= m(x,y).

    Edges not chosen are simply absent; the zero factor is ``Factor({})``.
    """

    chosen: dict[tuple[int, int], int]

    def __post_init__(self):
        object.__setattr__(self, "chosen", dict(self.chosen))

    def degree_x(self, x: int) -> int:
        return sum(c for (xx, _), c in self.chosen.items() if xx == x)

    def degree_y(self, y: int) -> int:
        return sum(c for (_, yy), c in self.chosen.items() if yy == y)


@dataclass(frozen=True, eq=True)
class Certificate:
    """An (A, B) pair witnessing that no factor exists.

    deficiency must equal the recomputed value of pair_deficiency(inst,
    a_set, b_set) and be >= 1 for the certificate to be valid.
    """

    a_set: frozenset[int]
    b_set: frozenset[int]
    deficiency: int

    def __post_init__(self):
        object.__setattr__(self, "a_set", frozenset(self.a_set))
        object.__setattr__(self, "b_set", frozenset(self.b_set))


@dataclass(frozen=True)
class SolveOutcome:
    """Exactly one of factor or certificate, never both, never neither."""

    factor: Factor | None = None
    certificate: Certificate | None = None

    def __post_init__(self):
        if (self.factor is None) == (self.certificate is None):
            raise ValueError("outcome must hold exactly one of factor, certificate")

    @property
    def kind(self) -> str:
        return "factor" if self.factor is not None else "certificate"


@dataclass(frozen=True)
class Violation:
    """A single failed check from verify_factor.

    kind is one of "structure", "capacity", "lower-bound", "upper-bound";
    structural mismatches mean the factor does not even belong to the
    instance, the others are bound violations.
    """

    kind: str
    message: str


@dataclass(frozen=True)
class FactorReport:
    valid: bool
    violations: tuple[Violation, ...] = ()


@dataclass(frozen=True)
class CertificateReport:
    valid: bool
    recomputed_deficiency: int
    issues: tuple[str, ...] = ()


def validate_instance(inst: Instance) -> Instance:
    """Check every structural invariant; return the instance unchanged.

    Raises InvalidInstanceError listing all violations (not just the
    first): index/bound per message, so callers can report them en masse.
    """
    problems: list[str] = []
    if inst.x_count < 1:
        problems.append(f"x_count must be positive, got {inst.x_count}")
    if inst.y_count < 1:
        problems.append(f"y_count must be positive, got {inst.y_count}")
    if len(inst.g_x) != inst.x_count:
        problems.append(f"g_x has {len(inst.g_x)} entries, expected {inst.x_count}")
    if len(inst.f_x) != inst.x_count:
        problems.append(f"f_x has {len(inst.f_x)} entries, expected {inst.x_count}")
    if len(inst.f_y) != inst.y_count:
        problems.append(f"f_y has {len(inst.f_y)} entries, expected {inst.y_count}")

    if len(inst.g_x) == len(inst.f_x) == inst.x_count:
        for x, (g, f) in enumerate(zip(inst.g_x, inst.f_x)):
            if g < 0:
                problems.append(f"negative g at x={x}")
            if f < 0:
                problems.append(f"negative f at x={x}")
            if 0 <= g and 0 <= f and g > f:
                problems.append(f"g exceeds f at x={x} (g={g}, f={f})")
            if max(g, f) > MAX_TOTAL:
                problems.append(f"bound exceeds 63-bit cap at x={x}")
    if len(inst.f_y) == inst.y_count:
        for y, f in enumerate(inst.f_y):
            if f < 0:
                problems.append(f"negative f at y={y}")
            if f > MAX_TOTAL:
                problems.append(f"bound exceeds 63-bit cap at y={y}")

    total = 0
    for (x, y), m in sorted(inst.multiplicity.items()):
        if not (0 <= x < inst.x_count) or not (0 <= y < inst.y_count):
            problems.append(f"edge ({x},{y}) out of range")
            continue
        if m == 0:
            problems.append(f"zero multiplicity stored at ({x},{y})")
        elif m < 0:
            problems.append(f"negative multiplicity at ({x},{y})")
        else:
            total += m
    if total > MAX_TOTAL:
        problems.append("total edge multiplicity exceeds 63-bit cap")
    for name, values in (("g_x", inst.g_x), ("f_x", inst.f_x), ("f_y", inst.f_y)):
        if sum(v for v in values if v > 0) > MAX_TOTAL:
            problems.append(f"sum of {name} exceeds 63-bit cap")

    if problems:
        raise InvalidInstanceError(problems)
    return inst


def edge_count(inst: Instance, x: int, s: Iterable[int]) -> int:
    """Total multiplicity between X-vertex x and the Y-subset s."""
    if not (0 <= x < inst.x_count):
        raise ValueError(f"x index {x} out of range")
    mult = inst.multiplicity
    count = 0
    for y in set(s):
        if not (0 <= y < inst.y_count):
            raise ValueError(f"y index {y} out of range")
        count += mult.get((x, y), 0)
    return count


def neighborhood(inst: Instance, s: Iterable[int]) -> set[int]:
    """All Y-vertices adjacent (multiplicity >= 1) to some x in s."""
    xs = set(s)
    for x in xs:
        if not (0 <= x < inst.x_count):
            raise ValueError(f"x index {x} out of range")
    return {y for (x, y) in inst.multiplicity if x in xs}


def pair_deficiency(inst: Instance, a_set: Iterable[int], b_set: Iterable[int]) -> int:
    """Evaluate sum_{x in A} max(0, g(x) - e(x, Y\\B)) - f(B).

    Positive means (A, B) certifies infeasibility; <= 0 means this pair
    proves nothing.
    """
    a = set(a_set)
    b = set(b_set)
    outside = {x: 0 for x in a}
    for (x, y), m in inst.multiplicity.items():
        if x in a and y not in b:
            outside[x] += m
    demand = sum(max(0, inst.g_x[x] - outside[x]) for x in a)
    return demand - sum(inst.f_y[y] for y in b)


def verify_factor(inst: Instance, fac: Factor, g_y: Iterable[int] | None = None) -> FactorReport:
    """Check a factor against the instance's degree and capacity bounds.

    Structural problems (edges the instance does not have, non-positive
    chosen values) are reported with kind "structure" and keep the entry
    out of the degree sums.  g_y supplies optional lower bounds on Y,
    used when verifying factors produced for two-sided-bound problems.
    """
    violations: list[Violation] = []
    deg_x = [0] * inst.x_count
    deg_y = [0] * inst.y_count
    for (x, y), c in sorted(fac.chosen.items()):
        m = inst.multiplicity.get((x, y))
        if m is None:
            violations.append(Violation("structure", f"unknown edge ({x},{y})"))
            continue
        if c < 1:
            violations.append(
                Violation("structure", f"non-positive chosen multiplicity at ({x},{y})"))
            continue
        if c > m:
            violations.append(
                Violation("capacity", f"capacity at ({x},{y}): chosen {c} exceeds multiplicity {m}"))
        deg_x[x] += c
        deg_y[y] += c

    for x in range(inst.x_count):
        if deg_x[x] < inst.g_x[x]:
            violations.append(
                Violation("lower-bound", f"lower bound at x={x}: degree {deg_x[x]} below g={inst.g_x[x]}"))
        if deg_x[x] > inst.f_x[x]:
            violations.append(
                Violation("upper-bound", f"upper bound at x={x}: degree {deg_x[x]} above f={inst.f_x[x]}"))
    lower_y = list(g_y) if g_y is not None else None
    for y in range(inst.y_count):
        if deg_y[y] > inst.f_y[y]:
            violations.append(
                Violation("upper-bound", f"upper bound at y={y}: degree {deg_y[y]} above f={inst.f_y[y]}"))
        if lower_y is not None and deg_y[y] < lower_y[y]:
            violations.append(
                Violation("lower-bound", f"lower bound at y={y}: degree {deg_y[y]} below g={lower_y[y]}"))
    return FactorReport(valid=not violations, violations=tuple(violations))


def verify_certificate(inst: Instance, cert: Certificate) -> CertificateReport:
    """Recompute a certificate's deficiency and compare with the stored one.

    Valid means: index sets in range, recomputed deficiency >= 1, and the
    stored value matches the recomputation (a stale value is rejected even
    when the pair itself would be a witness).
    """
    issues: list[str] = []
    for x in sorted(cert.a_set):
        if not (0 <= x < inst.x_count):
            issues.append(f"a_set index {x} out of range")
    for y in sorted(cert.b_set):
        if not (0 <= y < inst.y_count):
            issues.append(f"b_set index {y} out of range")
    if issues:
        return CertificateReport(valid=False, recomputed_deficiency=0, issues=tuple(issues))

    recomputed = pair_deficiency(inst, cert.a_set, cert.b_set)
    if recomputed < 1:
        issues.append(f"deficiency not positive (recomputed {recomputed})")
    if recomputed != cert.deficiency:
        issues.append(f"stale deficiency: stored {cert.deficiency}, recomputed {recomputed}")
    return CertificateReport(valid=not issues, recomputed_deficiency=recomputed,
                             issues=tuple(issues))
