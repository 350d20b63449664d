"""Exhaustive enumeration of circulants and per-instance classification records."""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Optional

from .circulants import (
    connection_orbits,
    double_cover_connection_set,
    double_cover_formula_check,
    is_arc_transitive,
    is_normal_circulant,
    key_lemma_audit,
    kovacs_li_diagnosis,
    normal_implies_stable_audit,
    regular_cyclic_subgroup_census,
    subcirculant_audit,
    units,
    wreath_cover_order,
)
from .errors import AuditFailure, CapacityError, ValidationError
from .graph import ConnectionSet, circulant, is_bipartite, is_connected, is_irreducible
from .stability import (
    Status,
    StabilityVerdict,
    classify,
    is_stable_by_order,
    stability_criteria,
    worthiness_check,
)

THEOREM_ORDER_CAP = 15
EVEN_ORDER_CAP = 16


def inverse_pairs(n: int) -> list[tuple[int, ...]]:
    return [tuple(sorted({s, n - s})) for s in range(1, n // 2 + 1)]


def canonical_form(cs: ConnectionSet) -> tuple[int, ...]:
    """Lexicographically least image of ``S`` under multiplication by units."""
    n = cs.n
    return min(tuple(sorted(u * s % n for s in cs.elems)) for u in units(n))


def enumerate_connection_sets(n: int, dedup: bool = False) -> list[ConnectionSet]:
    """All nonempty inverse-closed subsets of ``Z_n - {0}``, sorted lexicographically.

    With ``dedup`` only the least representative of each multiplier orbit is kept.
    """
    if n < 2:
        raise ValidationError("order must be at least 2")
    pairs = inverse_pairs(n)
    sets = set()
    for mask in range(1, 1 << len(pairs)):
        elems = tuple(sorted(s for i, p in enumerate(pairs) if mask >> i & 1 for s in p))
        if dedup:
            elems = canonical_form(ConnectionSet(n, elems))
        sets.add(elems)
    return [ConnectionSet(n, e) for e in sorted(sets)]


@dataclass
class ClassificationRecord:
    n: int
    set: list[int]
    connected: bool
    bipartite: bool
    irreducible: bool
    verdict: Optional[dict] = None
    arc_transitive: Optional[bool] = None
    normal: Optional[bool] = None
    lemma_audits: dict[str, Optional[bool]] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)

    @property
    def audit_failures(self) -> list[str]:
        return sorted(k for k, v in self.lemma_audits.items() if v is False)

    @property
    def status(self) -> Optional[str]:
        return self.verdict["status"] if self.verdict else None

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _attempt(record: ClassificationRecord, name: str, fn: Callable[[], object]):
    """Run ``fn``; capacity problems are noted on the record instead of raised."""
    try:
        return fn()
    except CapacityError as exc:
        record.errors[name] = f"capacity: {exc}"
    except AuditFailure as exc:
        record.errors[name] = f"audit: {exc}"
        record.lemma_audits[name] = False
    return None


def _audit(record: ClassificationRecord, name: str, fn: Callable[[], bool]) -> None:
    result = _attempt(record, name, fn)
    if result is not None:
        record.lemma_audits[name] = bool(result)
    elif name not in record.lemma_audits:
        record.lemma_audits[name] = None


def analyze_one(cs: ConnectionSet) -> ClassificationRecord:
    g = circulant(cs)
    connected = is_connected(g)
    bipartite = is_bipartite(g) is not None
    rec = ClassificationRecord(
        n=cs.n,
        set=list(cs.elems),
        connected=connected,
        bipartite=bipartite,
        irreducible=is_irreducible(g),
    )
    verdict: Optional[StabilityVerdict] = _attempt(rec, "verdict", lambda: classify(g))
    if verdict is not None:
        rec.verdict = verdict.to_json()
    if connected:
        rec.arc_transitive = _attempt(rec, "arc_transitive", lambda: is_arc_transitive(cs))
    rec.normal = _attempt(rec, "normal", lambda: is_normal_circulant(cs))

    _audit(rec, "worthiness", lambda: worthiness_check(g))

    if connected and not bipartite:
        def tri() -> bool:
            votes = stability_criteria(g)
            if votes is None:
                raise AuditFailure("circulant failed the vertex-transitivity precondition")
            agree = len(set(votes)) == 1
            if verdict is not None:
                agree = agree and votes[0] == (verdict.status is Status.STABLE)
            return agree
        _audit(rec, "tri_criterion", tri)

    odd = cs.n % 2 == 1
    if odd:
        _audit(rec, "double_cover_formula", lambda: double_cover_formula_check(cs))
    if odd and connected:
        _audit(rec, "normal_implies_stable", lambda: normal_implies_stable_audit(cs))
    if connected:
        target = double_cover_connection_set(cs) if odd else cs
        _audit(rec, "subcirculant", lambda: all(subcirculant_audit(target, k) for k in connection_orbits(target)))
    if connected and rec.arc_transitive:
        _audit(rec, "kovacs_li", lambda: bool(kovacs_li_diagnosis(cs).cases))
    if connected and bipartite and rec.arc_transitive and cs.n % 4 == 2 and len(cs) % 2 == 0:
        _audit(rec, "key_lemma", lambda: key_lemma_audit(cs) is not None)
    if rec.normal and cs.n % 4 == 2:
        _audit(rec, "regular_cyclic_census", lambda: regular_cyclic_subgroup_census(cs) == 1)
    if connected and not rec.irreducible:
        def wreath_order() -> bool:
            actual, predicted = wreath_cover_order(cs)
            return actual == predicted
        _audit(rec, "wreath_cover_order", wreath_order)
    return rec


def _analyze_key(item: tuple[int, tuple[int, ...]]) -> str:
    n, elems = item
    return analyze_one(ConnectionSet(n, elems)).dumps()


# -- theorem verification ------------------------------------------------------

@dataclass
class TheoremReport:
    max_order: int
    instances: int = 0
    per_order: dict[int, int] = field(default_factory=dict)
    counterexamples: list[dict] = field(default_factory=list)
    complete: bool = True
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.complete and not self.counterexamples

    def to_json(self) -> dict:
        out = asdict(self)
        out["per_order"] = {str(k): v for k, v in self.per_order.items()}
        out["ok"] = self.ok
        return out


def verify_main_theorem(max_order: int, cap: int = THEOREM_ORDER_CAP) -> TheoremReport:
    """Every connected irreducible circulant of odd order <= ``max_order`` is stable."""
    if max_order % 2 == 0 or max_order < 3:
        raise ValidationError(f"max order must be odd and at least 3, got {max_order}")
    if max_order > cap:
        raise ValidationError(f"max order {max_order} exceeds cap {cap}")
    report = TheoremReport(max_order)
    for n in range(3, max_order + 1, 2):
        count = 0
        for cs in enumerate_connection_sets(n, dedup=True):
            g = circulant(cs)
            if not (is_connected(g) and is_irreducible(g)):
                continue
            try:
                verdict = is_stable_by_order(g)
            except CapacityError as exc:
                report.complete = False
                report.note = f"capacity breach at {cs}: {exc}"
                report.per_order[n] = count
                return report
            count += 1
            if verdict.status is not Status.STABLE or verdict.aut_bx_order != 2 * verdict.aut_x_order:
                report.counterexamples.append({"set": cs.to_json(), "verdict": verdict.to_json()})
        report.per_order[n] = count
        report.instances += count
    return report


# -- sweeps ----------------------------------------------------------------

@dataclass
class SweepConfig:
    lo: int
    hi: int
    parity: str = "all"
    dedup: bool = True
    jobs: int = 1
    out: Optional[Path] = None
    odd_cap: int = THEOREM_ORDER_CAP
    even_cap: int = EVEN_ORDER_CAP

    def orders(self) -> list[int]:
        if self.parity not in ("odd", "even", "all"):
            raise ValidationError(f"unknown parity filter {self.parity!r}")
        if self.jobs < 1:
            raise ValidationError(f"jobs must be positive, got {self.jobs}")
        if self.lo < 2 or self.hi < self.lo:
            raise ValidationError(f"bad order range {self.lo}..{self.hi}")
        out = []
        for n in range(self.lo, self.hi + 1):
            if self.parity == "odd" and n % 2 == 0 or self.parity == "even" and n % 2:
                continue
            if n > (self.odd_cap if n % 2 else self.even_cap):
                raise ValidationError(f"order {n} exceeds the configured cap")
            out.append(n)
        return out


def parse_order_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return int(a), int(b)
        return int(text), int(text)
    except ValueError as exc:
        raise ValidationError(f"bad order range {text!r}; expected A..B") from exc


SUMMARY_COLUMNS = [
    "order",
    "instances",
    "Stable",
    "TriviallyUnstable",
    "NontriviallyUnstable",
    "NotApplicable",
    "unclassified",
    "audit_failures",
]


@dataclass
class SweepReport:
    records: list[ClassificationRecord]
    summary: list[dict]

    @property
    def audit_failures(self) -> int:
        return sum(row["audit_failures"] for row in self.summary)

    @property
    def capacity_errors(self) -> int:
        return sum(row["unclassified"] for row in self.summary)

    def jsonl(self) -> str:
        return "".join(r.dumps() + "\n" for r in self.records)

    def csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.summary)
        return buf.getvalue()


def summary_path(out: Path) -> Path:
    return out.with_name(out.stem + ".summary.csv")


def sweep(config: SweepConfig) -> SweepReport:
    """Classify every instance in range; write JSON lines plus a CSV summary.

    Records are sorted by ``(n, set)`` so output does not depend on ``jobs``.
    """
    items = [(n, cs.elems) for n in config.orders() for cs in enumerate_connection_sets(n, config.dedup)]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            lines = list(pool.map(_analyze_key, items, chunksize=1))
    else:
        lines = [_analyze_key(it) for it in items]
    records = [ClassificationRecord(**json.loads(line)) for line in lines]
    records.sort(key=lambda r: (r.n, r.set))

    summary = []
    for n in sorted({r.n for r in records}):
        rows = [r for r in records if r.n == n]
        counts = Counter(r.status for r in rows)
        summary.append({
            "order": n,
            "instances": len(rows),
            "Stable": counts.get(Status.STABLE.value, 0),
            "TriviallyUnstable": counts.get(Status.TRIVIALLY_UNSTABLE.value, 0),
            "NontriviallyUnstable": counts.get(Status.NONTRIVIALLY_UNSTABLE.value, 0),
            "NotApplicable": counts.get(Status.NOT_APPLICABLE.value, 0),
            "unclassified": counts.get(None, 0),
            "audit_failures": sum(1 for r in rows if r.audit_failures),
        })
    report = SweepReport(records, summary)
    if config.out is not None:
        out = Path(config.out)
        try:
            out.write_text(report.jsonl())
            summary_path(out).write_text(report.csv())
        except OSError as exc:
            raise OSError(f"cannot write sweep report to {out}: {exc}") from exc
    return report
