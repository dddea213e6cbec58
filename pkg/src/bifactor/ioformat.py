"""Instance file format and canonical result documents.

Instances are line-oriented text, whitespace-separated, '#' to end of
line is a comment:

    bifactor 1                  magic + format version, first line
    xy <x_count> <y_count>      must precede everything else
    edge <x> <y> <mult>         repeatable; duplicate (x, y) rejected
    gx <v0> ... <v(x_count-1)>  lower bounds on X
    fx <v0> ...                 upper bounds on X
    fy <v0> ...                 upper bounds on Y
    gy <v0> ...                 optional lower bounds on Y (checker/oracle use)
    xname <index> <name>        optional display names, single token each
    yname <index> <name>

Results are a single self-describing document per invocation, first line
``bifactor-result 1`` then ``kind <k>`` and kind-specific fields in a
fixed order with sorted collections, so equal outcomes emit identical
bytes.  Kinds: factor, certificate, criterion, oracle, oracle-count,
verify-factor, verify-certificate, validate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .core import (BifactorError, Certificate, CertificateReport, Factor,
                   FactorReport, Instance, SolveOutcome)
from .criteria import CriterionReport

MAGIC = "bifactor 1"
RESULT_MAGIC = "bifactor-result 1"


class ParseError(BifactorError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, col {column}: {message}")


@dataclass(frozen=True)
class InstanceDocument:
    """A parsed instance file: the instance plus the optional extras the
    core model does not carry (Y-side lower bounds, display names)."""

    instance: Instance
    g_y: tuple[int, ...] | None = None
    x_names: dict[int, str] | None = None
    y_names: dict[int, str] | None = None


def _tokenize(line: str) -> list[tuple[str, int]]:
    """Tokens with their 1-based column, comments stripped."""
    hash_pos = line.find("#")
    if hash_pos >= 0:
        line = line[:hash_pos]
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _int_token(token: str, col: int, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", lineno, col) from None


def parse_instance(text: str) -> InstanceDocument:
    """Parse an instance document.

    Enforces the line grammar only (unknown directives, duplicates,
    array-length mismatches, name indices); value-level problems such as
    zero multiplicities or g > f are left to validate_instance.
    """
    x_count = y_count = None
    multiplicity: dict[tuple[int, int], int] = {}
    bounds: dict[str, tuple[int, ...]] = {}
    x_names: dict[int, str] = {}
    y_names: dict[int, str] = {}
    saw_magic = False
    lineno = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw)
        if not tokens:
            continue
        head, head_col = tokens[0]

        if not saw_magic:
            if [t for t, _ in tokens] != MAGIC.split():
                raise ParseError(f"expected {MAGIC!r} header", lineno, head_col)
            saw_magic = True
            continue

        if head == "xy":
            if x_count is not None:
                raise ParseError("duplicate xy line", lineno, head_col)
            if len(tokens) != 3:
                raise ParseError("xy takes exactly two values", lineno, head_col)
            x_count = _int_token(tokens[1][0], tokens[1][1], lineno, "x_count")
            y_count = _int_token(tokens[2][0], tokens[2][1], lineno, "y_count")
            continue
        if x_count is None:
            raise ParseError(f"{head!r} before the xy line", lineno, head_col)

        if head == "edge":
            if len(tokens) != 4:
                raise ParseError("edge takes exactly three values", lineno, head_col)
            x = _int_token(tokens[1][0], tokens[1][1], lineno, "edge x")
            y = _int_token(tokens[2][0], tokens[2][1], lineno, "edge y")
            m = _int_token(tokens[3][0], tokens[3][1], lineno, "edge multiplicity")
            if (x, y) in multiplicity:
                raise ParseError(f"duplicate edge ({x},{y})", lineno, head_col)
            multiplicity[(x, y)] = m
        elif head in ("gx", "fx", "fy", "gy"):
            if head in bounds:
                raise ParseError(f"duplicate {head} line", lineno, head_col)
            expected = x_count if head in ("gx", "fx") else y_count
            if len(tokens) - 1 != expected:
                raise ParseError(
                    f"{head} has {len(tokens) - 1} values, expected {expected}",
                    lineno, head_col)
            bounds[head] = tuple(
                _int_token(t, c, lineno, f"{head} value") for t, c in tokens[1:])
        elif head in ("xname", "yname"):
            if len(tokens) != 3:
                raise ParseError(f"{head} takes an index and a name", lineno, head_col)
            idx = _int_token(tokens[1][0], tokens[1][1], lineno, f"{head} index")
            names, count = (x_names, x_count) if head == "xname" else (y_names, y_count)
            if not 0 <= idx < count:
                raise ParseError(f"{head} index {idx} out of range", lineno, tokens[1][1])
            if idx in names:
                raise ParseError(f"duplicate {head} for index {idx}", lineno, head_col)
            names[idx] = tokens[2][0]
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, head_col)

    if not saw_magic:
        raise ParseError(f"expected {MAGIC!r} header", lineno + 1)
    missing = [name for name in ("xy", "gx", "fx", "fy")
               if (name == "xy" and x_count is None) or (name != "xy" and name not in bounds)]
    if missing:
        raise ParseError(f"missing required lines: {', '.join(missing)}", lineno + 1)

    inst = Instance(x_count=x_count, y_count=y_count, multiplicity=multiplicity,
                    g_x=bounds["gx"], f_x=bounds["fx"], f_y=bounds["fy"])
    return InstanceDocument(instance=inst, g_y=bounds.get("gy"),
                            x_names=x_names or None, y_names=y_names or None)


def emit_instance(inst: Instance, *, g_y=None, x_names=None, y_names=None) -> str:
    """Canonical text for an instance: fixed line order, sorted edges."""
    lines = [MAGIC, f"xy {inst.x_count} {inst.y_count}"]
    for (x, y), m in sorted(inst.multiplicity.items()):
        lines.append(f"edge {x} {y} {m}")
    lines.append("gx " + " ".join(str(v) for v in inst.g_x))
    lines.append("fx " + " ".join(str(v) for v in inst.f_x))
    lines.append("fy " + " ".join(str(v) for v in inst.f_y))
    if g_y is not None:
        lines.append("gy " + " ".join(str(v) for v in g_y))
    for idx in sorted(x_names or {}):
        lines.append(f"xname {idx} {x_names[idx]}")
    for idx in sorted(y_names or {}):
        lines.append(f"yname {idx} {y_names[idx]}")
    return "\n".join(lines) + "\n"


def _set_line(label: str, values) -> str:
    items = " ".join(str(v) for v in sorted(values))
    return f"{label} {items}" if items else label


def emit_outcome(outcome) -> str:
    """Canonical result document for any outcome this package produces.

    Accepts a SolveOutcome, a CriterionReport, an oracle search result
    (Factor or None), an oracle count (int), or a verification report.
    Equal outcomes emit byte-identical text.
    """
    lines = [RESULT_MAGIC]
    if isinstance(outcome, SolveOutcome):
        if outcome.factor is not None:
            lines.append("kind factor")
            _append_edges(lines, outcome.factor)
        else:
            cert = outcome.certificate
            lines.append("kind certificate")
            lines.append(_set_line("a", cert.a_set))
            lines.append(_set_line("b", cert.b_set))
            lines.append(f"deficiency {cert.deficiency}")
    elif isinstance(outcome, CriterionReport):
        lines.append("kind criterion")
        lines.append(f"criterion {outcome.criterion}")
        lines.append(f"holds {'true' if outcome.holds else 'false'}")
        if outcome.witness is not None:
            w = outcome.witness
            lines.append(f"condition {w.condition}")
            lines.append(_set_line("witness-x", w.x_set))
            lines.append(_set_line("witness-y", w.y_set))
            lines.append(f"lhs {w.lhs}")
            lines.append(f"rhs {w.rhs}")
    elif isinstance(outcome, Factor):
        lines.append("kind oracle")
        lines.append("found true")
        _append_edges(lines, outcome)
    elif outcome is None:
        lines.append("kind oracle")
        lines.append("found false")
    elif isinstance(outcome, bool):
        raise TypeError("cannot emit a bare boolean")
    elif isinstance(outcome, int):
        lines.append("kind oracle-count")
        lines.append(f"count {outcome}")
    elif isinstance(outcome, FactorReport):
        lines.append("kind verify-factor")
        lines.append(f"valid {'true' if outcome.valid else 'false'}")
        for v in outcome.violations:
            lines.append(f"violation {v.kind}: {v.message}")
    elif isinstance(outcome, CertificateReport):
        lines.append("kind verify-certificate")
        lines.append(f"valid {'true' if outcome.valid else 'false'}")
        lines.append(f"deficiency {outcome.recomputed_deficiency}")
        for issue in outcome.issues:
            lines.append(f"issue {issue}")
    else:
        raise TypeError(f"cannot emit outcome of type {type(outcome).__name__}")
    return "\n".join(lines) + "\n"


def _append_edges(lines: list[str], factor: Factor) -> None:
    for (x, y), c in sorted(factor.chosen.items()):
        lines.append(f"edge {x} {y} {c}")


def parse_outcome(text: str) -> Factor | Certificate:
    """Read back a factor or certificate result document (for the verify
    pipelines); other kinds are rejected."""
    kind = None
    chosen: dict[tuple[int, int], int] = {}
    a_set: tuple[int, ...] = ()
    b_set: tuple[int, ...] = ()
    deficiency = None
    found = None
    saw_magic = False
    lineno = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw)
        if not tokens:
            continue
        if not saw_magic:
            if [t for t, _ in tokens] != RESULT_MAGIC.split():
                raise ParseError(f"expected {RESULT_MAGIC!r} header", lineno, tokens[0][1])
            saw_magic = True
            continue
        head, head_col = tokens[0]
        values = [t for t, _ in tokens[1:]]
        if head == "kind":
            kind = values[0] if values else None
            if kind not in ("factor", "certificate", "oracle"):
                raise ParseError(f"cannot re-read result kind {kind!r}", lineno, head_col)
        elif head == "edge":
            if len(tokens) != 4:
                raise ParseError("edge takes exactly three values", lineno, head_col)
            x = _int_token(tokens[1][0], tokens[1][1], lineno, "edge x")
            y = _int_token(tokens[2][0], tokens[2][1], lineno, "edge y")
            c = _int_token(tokens[3][0], tokens[3][1], lineno, "edge multiplicity")
            chosen[(x, y)] = c
        elif head == "a":
            a_set = tuple(_int_token(t, c, lineno, "a index") for t, c in tokens[1:])
        elif head == "b":
            b_set = tuple(_int_token(t, c, lineno, "b index") for t, c in tokens[1:])
        elif head == "deficiency":
            deficiency = _int_token(tokens[1][0], tokens[1][1], lineno, "deficiency")
        elif head == "found":
            found = values == ["true"]
        else:
            raise ParseError(f"unknown result directive {head!r}", lineno, head_col)

    if not saw_magic:
        raise ParseError(f"expected {RESULT_MAGIC!r} header", lineno + 1)
    if kind == "certificate":
        if deficiency is None:
            raise ParseError("certificate document missing deficiency", lineno + 1)
        return Certificate(a_set=frozenset(a_set), b_set=frozenset(b_set),
                           deficiency=deficiency)
    if kind in ("factor", "oracle"):
        if kind == "oracle" and not found:
            raise ParseError("oracle document reports no factor", lineno + 1)
        return Factor(chosen)
    raise ParseError("document has no kind line", lineno + 1)
