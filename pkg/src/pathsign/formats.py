"""Bit-exact serialization: DIMACS for undirected graphs, a signed
edge-list format for signed digraphs, and a canonical JSON verification
report.

File formats are ASCII with LF line endings and 1-based vertex indices;
in-memory indices are 0-based, with the conversion confined to this
module. Exported files are byte-stable: edges are sorted, separators
fixed.

The signed format:

    p sdg <n> <m>
    v <index> <label>          one per vertex, ascending
    e <tail> <head> <+|->      sorted by tail then head

Reports serialize to JSON with sorted keys. Everything in a report is
deterministic for a fixed seed except wall-clock data, which is isolated
in the single top-level "timing" field so byte comparisons can exclude
exactly that field.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field
from typing import Any

from .errors import FormatError, SimplicityError
from .graphs import SignedDigraph, UndirectedGraph

TOOL_NAME = "pathsign"
TOOL_VERSION = "0.1.0"

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


# ---------------------------------------------------------------------------
# sinks and sources


def _write_bytes(sink, data: bytes) -> None:
    if isinstance(sink, (str, bytes)) or hasattr(sink, "__fspath__"):
        with open(sink, "wb") as fh:
            fh.write(data)
        return
    if isinstance(sink, io.TextIOBase):
        sink.write(data.decode("ascii"))
        return
    sink.write(data)


def _read_lines(source) -> list[str]:
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "rb") as fh:
            data = fh.read()
    elif isinstance(source, io.TextIOBase):
        data = source.read().encode("ascii")
    else:
        data = source.read()
        if isinstance(data, str):
            data = data.encode("ascii")
    try:
        text = data.decode("ascii")
    except UnicodeDecodeError as exc:
        raise FormatError(f"not ASCII: {exc}") from None
    return text.splitlines()


# ---------------------------------------------------------------------------
# DIMACS .col


def dimacs_bytes(g: UndirectedGraph) -> bytes:
    lines = [f"p edge {g.vertex_count} {g.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return ("\n".join(lines) + "\n").encode("ascii")


def export_dimacs(g: UndirectedGraph, sink) -> None:
    """Write `p edge` then sorted 1-based `e u v` lines, u < v."""
    _write_bytes(sink, dimacs_bytes(g))


def import_dimacs(source) -> UndirectedGraph:
    lines = _read_lines(source)
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError("second problem line", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise FormatError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"malformed header {line!r}", lineno) from None
        elif parts[0] == "e":
            if n is None:
                raise FormatError("edge before problem line", lineno)
            if len(parts) != 3:
                raise FormatError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise FormatError(f"malformed edge line {line!r}", lineno) from None
            if u == v:
                raise FormatError(f"self-loop at vertex {u + 1}", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"vertex index out of range in {line!r}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise FormatError(f"duplicate edge {u + 1} {v + 1}", lineno)
            seen.add(key)
            edges.append(key)
        else:
            raise FormatError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise FormatError("missing problem line")
    if m != len(edges):
        raise FormatError(f"header says {m} edges, found {len(edges)}")
    return UndirectedGraph(n, edges)


# ---------------------------------------------------------------------------
# signed edge list .sdg


def signed_bytes(d: SignedDigraph) -> bytes:
    labels = d.labels or tuple(f"v{i + 1}" for i in range(d.vertex_count))
    for lab in labels:
        if not lab or any(ch.isspace() for ch in lab):
            raise ValueError(f"label {lab!r} is empty or has whitespace")
    lines = [f"p sdg {d.vertex_count} {d.edge_count}"]
    lines.extend(f"v {i + 1} {lab}" for i, lab in enumerate(labels))
    lines.extend(f"e {u + 1} {v + 1} {sign}" for u, v, sign in d.edges())
    return ("\n".join(lines) + "\n").encode("ascii")


def export_signed(d: SignedDigraph, sink) -> None:
    """Write the signed digraph with labels; every vertex gets a v-line."""
    _write_bytes(sink, signed_bytes(d))


def import_signed(source) -> SignedDigraph:
    lines = _read_lines(source)
    n = m = None
    labels: dict[int, str] = {}
    edges: list[tuple[int, int, str]] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError("second problem line", lineno)
            if len(parts) != 4 or parts[1] != "sdg":
                raise FormatError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"malformed header {line!r}", lineno) from None
        elif parts[0] == "v":
            if n is None:
                raise FormatError("vertex line before problem line", lineno)
            if len(parts) != 3:
                raise FormatError(f"malformed vertex line {line!r}", lineno)
            try:
                idx = int(parts[1]) - 1
            except ValueError:
                raise FormatError(f"malformed vertex line {line!r}", lineno) from None
            if not (0 <= idx < n):
                raise FormatError(f"vertex index {idx + 1} out of range", lineno)
            if idx in labels:
                raise FormatError(f"duplicate label for vertex {idx + 1}", lineno)
            labels[idx] = parts[2]
        elif parts[0] == "e":
            if n is None:
                raise FormatError("edge before problem line", lineno)
            if len(parts) != 4:
                raise FormatError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise FormatError(f"malformed edge line {line!r}", lineno) from None
            sign = parts[3]
            if sign not in "+-":
                raise FormatError(f"invalid sign {sign!r}", lineno)
            if u == v:
                raise FormatError(f"self-loop at vertex {u + 1}", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"vertex index out of range in {line!r}", lineno)
            if (u, v) in seen:
                raise FormatError(f"duplicate edge {u + 1} {v + 1}", lineno)
            if (v, u) in seen:
                raise FormatError(
                    f"edges in both directions between {v + 1} and {u + 1}", lineno
                )
            seen[(u, v)] = lineno
            edges.append((u, v, sign))
        else:
            raise FormatError(f"unknown line type {parts[0]!r}", lineno)
    if n is None:
        raise FormatError("missing problem line")
    if m != len(edges):
        raise FormatError(f"header says {m} edges, found {len(edges)}")
    label_tuple = None
    if labels:
        if len(labels) != n:
            raise FormatError(f"{len(labels)} labels for {n} vertices")
        label_tuple = tuple(labels[i] for i in range(n))
    try:
        return SignedDigraph(n, edges, labels=label_tuple)
    except (SimplicityError, ValueError) as exc:
        raise FormatError(str(exc)) from None


# ---------------------------------------------------------------------------
# verification report


@dataclass
class CheckEntry:
    """One verified statement: status plus replayable evidence."""

    name: str
    status: str
    summary: str
    details: dict = field(default_factory=dict)
    witness: Any = None


@dataclass
class VerificationReport:
    """Machine-readable outcome of a verification run.

    ``timing`` is the only field allowed to differ between identical
    runs; every fail entry carries a witness replayable against the
    serialized graph.
    """

    construction: dict
    suites: list[str]
    checks: list[CheckEntry]
    seed: int | None = None
    samples: int | None = None
    max_cycle_length: int | None = None
    budgets: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    tool: str = TOOL_NAME
    version: str = TOOL_VERSION

    @property
    def overall_status(self) -> str:
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return FAIL
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    def check(self, name: str) -> CheckEntry:
        for entry in self.checks:
            if entry.name == name:
                return entry
        raise KeyError(name)


def report_to_dict(r: VerificationReport, include_timing: bool = True) -> dict:
    doc = {
        "budgets": r.budgets,
        "checks": [
            {
                "details": c.details,
                "name": c.name,
                "status": c.status,
                "summary": c.summary,
                "witness": c.witness,
            }
            for c in r.checks
        ],
        "construction": r.construction,
        "max_cycle_length": r.max_cycle_length,
        "overall_status": r.overall_status,
        "samples": r.samples,
        "seed": r.seed,
        "suites": r.suites,
        "tool": r.tool,
        "version": r.version,
    }
    if include_timing:
        doc["timing"] = r.timing
    return doc


def report_bytes(r: VerificationReport, include_timing: bool = True) -> bytes:
    doc = report_to_dict(r, include_timing)
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("ascii")


def write_report(r: VerificationReport, sink) -> None:
    """Canonical JSON: sorted keys, LF, wall-clock data only in "timing"."""
    _write_bytes(sink, report_bytes(r))


def load_report(source) -> VerificationReport:
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        with open(source, "rb") as fh:
            doc = json.load(fh)
    else:
        doc = json.load(source)
    checks = [
        CheckEntry(
            name=c["name"],
            status=c["status"],
            summary=c["summary"],
            details=c["details"],
            witness=c["witness"],
        )
        for c in doc["checks"]
    ]
    return VerificationReport(
        construction=doc["construction"],
        suites=doc["suites"],
        checks=checks,
        seed=doc["seed"],
        samples=doc["samples"],
        max_cycle_length=doc["max_cycle_length"],
        budgets=doc["budgets"],
        timing=doc.get("timing", {}),
        tool=doc["tool"],
        version=doc["version"],
    )


def checks_tsv_bytes(r: VerificationReport) -> bytes:
    """Delimited per-check summary; deterministic, no wall-clock data."""
    lines = ["check\tstatus\tsummary"]
    lines.extend(f"{c.name}\t{c.status}\t{c.summary}" for c in r.checks)
    return ("\n".join(lines) + "\n").encode("ascii")


def write_checks_tsv(r: VerificationReport, sink) -> None:
    _write_bytes(sink, checks_tsv_bytes(r))
