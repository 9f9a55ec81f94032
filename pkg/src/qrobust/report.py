"""Verification results: per-check verdicts and the aggregated report."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Iterator

from .ext import INF, format_ext

REPORT_VERSION = 1

PASS = "pass"
FAIL = "fail"
REPORTED = "reported"
STATUSES = (PASS, FAIL, REPORTED)

# Every report entry cites one of these.
ANCHORS: dict[str, str] = {
    "quantale.order": "the carrier is a partial order",
    "quantale.lattice": "finite joins and meets are least upper / greatest lower bounds",
    "quantale.monoid": "tensor is associative with the unit as identity",
    "quantale.distributivity": "tensor distributes over joins on both sides",
    "quantale.bottom": "bottom annihilates under tensor",
    "quantale.residual": "residuals are right adjoint to tensoring",
    "quantale.flags": "computed flags agree with the tables",
    "way-below.properties": "way-below is below the order, absorbs the order, has bottom, is join-closed",
    "way-below.directed-oracle": "way-below matches the directed-subset definition",
    "interpolation.lattice": "q1 << q2 admits q with q1 << q << q2",
    "interpolation.tensor": "q1 << q2 admits q << I with q1 << q2 (x) q",
    "continuous.products": "products of continuous lattices are continuous, way-below componentwise",
    "monoidal-map.lax": "lax monoidal map inequalities",
    "monoidal-map.strict": "strict monoidal map equalities",
    "monoidal-map.adjunction": "adjunction / equivalence between quantale maps",
    "metric.laws": "unit and tensor-triangle laws of a Q-metric",
    "metric.preorder": "the d-preorder x <= y iff I below d(x,y)",
    "metric.arrows": "short maps, isometries and the hom-preorder",
    "metric.limits": "products, sums, equalizers and coequalizers of Q-metric spaces",
    "metric.reindex": "reindexing a Q-metric along a lax map",
    "metric.separation": "separated spaces are those whose d-preorder is a poset",
    "metric.separation-quotient": "every Q-metric space is equivalent to a separated one",
    "topology.balls": "open ball properties",
    "topology.open": "epsilon-delta characterization of open sets",
    "topology.closure": "closure formula for the ball topology",
    "topology.continuity": "epsilon-delta characterization of continuity",
    "robust.br": "properties of B_R(A, delta)",
    "robust.flattening": "delta-flattening sandwich",
    "robust.reduction": "limit-radius reductions agree with the all-radius definitions",
    "robust.specialization": "A <= B in the robust topology iff B inside the dual closure of A",
    "hs.metric": "the Hausdorff-Smyth distance is a Q-metric",
    "hs.monad": "P_S unit and union extension satisfy the monad equations",
    "hs.enrichment": "union extension preserves shortness and the hom-preorder",
    "hs.star-preorder": "A <= B for d_S iff B inside the *-closure of A",
    "hs.bs": "properties of B_S(A, delta)",
    "hs.topologies": "tau_{d_S} = tau_{d,S} contained in tau_{d,R}",
    "hs.finite-subset": "way-below the *-distance is witnessed by a finite subset",
    "hs.linear": "for linear non-trivial quantales the robust and *-robust topologies agree",
    "hs.strict-inclusion": "a non-linear instance where the *-robust topology is strictly coarser",
    "hs.counterexample": "the R+ x R+ instance separating robust and *-robust opens",
    "transformer.monad": "monad equations for the transformed monad",
    "transformer.monad-map": "in_T satisfies the monad map equations",
    "transformer.sections": "the transformed monad does not depend on the section",
    "transformer.canonical": "*-closure as canonical representative, dual closure when linear",
    "suite.guard": "size guard for exhaustive enumeration",
}


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure: truthiness plus an optional witness."""

    ok: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.ok


YES = Verdict(True)


def jsonable(value: Any) -> Any:
    """Convert exact values and containers into deterministic JSON data."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if value is INF:
        return "inf"
    if isinstance(value, Fraction):
        return format_ext(value)
    if isinstance(value, int):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (frozenset, set)):
        items = [jsonable(v) for v in value]
        return sorted(items, key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_json"):
        return value.to_json()
    return repr(value)


@dataclass
class Entry:
    id: str
    anchor: str
    status: str
    witness: Any = None
    ms: float | None = None

    def __post_init__(self):
        if self.anchor not in ANCHORS:
            raise ValueError(f"unknown anchor {self.anchor!r}")
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    def to_dict(self, timings: bool = False) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "status": self.status,
            "witness": jsonable(self.witness),
            "ms": round(self.ms, 3) if (timings and self.ms is not None) else None,
        }


@dataclass
class VerificationReport:
    entries: list[Entry] = field(default_factory=list)

    def add(self, id: str, anchor: str, ok: bool, witness: Any = None, ms: float | None = None) -> Entry:
        entry = Entry(id, anchor, PASS if ok else FAIL, None if ok else witness, ms)
        self.entries.append(entry)
        return entry

    def verdict(self, id: str, anchor: str, verdict: Verdict, ms: float | None = None) -> Entry:
        return self.add(id, anchor, verdict.ok, verdict.witness, ms)

    def note(self, id: str, anchor: str, witness: Any = None) -> Entry:
        """Record an observation that never counts as a failure."""
        entry = Entry(id, anchor, REPORTED, witness)
        self.entries.append(entry)
        return entry

    @contextmanager
    def timed(self) -> Iterator[dict]:
        """Time a block; entries added inside get ``ms`` filled in."""
        start = len(self.entries)
        t0 = time.perf_counter()
        box: dict = {}
        yield box
        ms = (time.perf_counter() - t0) * 1000.0
        for e in self.entries[start:]:
            if e.ms is None:
                e.ms = ms
        box["ms"] = ms

    def extend(self, other: "VerificationReport | Iterable[Entry]") -> "VerificationReport":
        items = other.entries if isinstance(other, VerificationReport) else other
        self.entries.extend(items)
        return self

    def prefixed(self, prefix: str) -> "VerificationReport":
        return VerificationReport(
            [Entry(f"{prefix}/{e.id}", e.anchor, e.status, e.witness, e.ms) for e in self.entries]
        )

    @property
    def failures(self) -> list[Entry]:
        return [e for e in self.entries if e.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, id: str) -> Entry:
        for e in self.entries:
            if e.id == id:
                return e
        raise KeyError(id)

    def status_of(self, id: str) -> str:
        return self[id].status

    def to_data(self, timings: bool = False) -> dict:
        return {"version": REPORT_VERSION, "entries": [e.to_dict(timings) for e in self.entries]}

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_data(timings), separators=(",", ":"), ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        data = json.loads(text)
        if data.get("version") != REPORT_VERSION:
            raise ValueError(f"unsupported report version {data.get('version')!r}")
        return cls([Entry(e["id"], e["anchor"], e["status"], e["witness"], e["ms"]) for e in data["entries"]])

    def to_text(self) -> str:
        lines = []
        for e in self.entries:
            lines.append(f"[{e.status.upper():8}] {e.id}  ({e.anchor}: {ANCHORS[e.anchor]})")
            if e.status != PASS and e.witness is not None:
                lines.append(f"           witness: {json.dumps(jsonable(e.witness), ensure_ascii=False)}")
        counts = {s: sum(e.status == s for e in self.entries) for s in STATUSES}
        lines.append(f"{len(self.entries)} checks: {counts[PASS]} passed, {counts[FAIL]} failed, {counts[REPORTED]} reported")
        return "\n".join(lines)


def emit_report(report: VerificationReport, format: str = "json", timings: bool = False) -> bytes:
    if format == "json":
        return report.to_json(timings).encode("utf-8")
    if format == "text":
        return (report.to_text() + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")
