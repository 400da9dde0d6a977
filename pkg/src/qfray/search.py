"""Exhaustive verification campaigns over families of shapes.

Every shape becomes one :class:`ResultRecord` holding its full expansion.
Records are grouped by fingerprint and each group is checked against the
property under test.  Campaigns stream records to an append-only JSON-lines
file; a sentinel line marks each finished size so an interrupted run can
resume.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from .expansion import QExpansion, digest, format_expansion, q_expansion
from .shapes import (
    ShapeKind,
    ShiftedSkewShape,
    antipodal,
    classify,
    count_turns,
    enumerate_frayed_ribbons,
    enumerate_shifted_skew_shapes,
    format_partition,
    parse_shape,
)
from .tableaux import greedy_filling

SCHEMA = "qfray.v1"
CLASSES = ("frayed", "near-ribbon")
NEAR_RIBBON_KINDS = (ShapeKind.NEAR_RIBBON_ORDINARY, ShapeKind.FRAYED_RIBBON)


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class ResultRecord:
    size: int
    shape: str
    shape_class: str
    turns: int | None
    expansion: tuple[tuple[str, int], ...]
    fp: str
    schema: str = SCHEMA

    def to_dict(self) -> dict:
        out = {"schema": self.schema, "size": self.size, "shape": self.shape, "class": self.shape_class}
        if self.turns is not None:
            out["turns"] = self.turns
        out["expansion"] = [list(term) for term in self.expansion]
        out["fp"] = self.fp
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> ResultRecord:
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unknown schema {data.get('schema')!r}")
        return cls(
            size=data["size"],
            shape=data["shape"],
            shape_class=data["class"],
            turns=data.get("turns"),
            expansion=tuple((str(k), int(c)) for k, c in data["expansion"]),
            fp=data["fp"],
        )

    @classmethod
    def from_json(cls, line: str) -> ResultRecord:
        return cls.from_dict(json.loads(line))

    def q(self) -> QExpansion:
        return QExpansion({tuple(int(p) for p in k.split()): c for k, c in self.expansion})

    def coefficient(self, parts: Sequence[int]) -> int:
        key = format_partition(parts)
        return next((c for k, c in self.expansion if k == key), 0)


def sentinel(size: int) -> str:
    return json.dumps({"schema": SCHEMA, "size": size, "complete": True}, separators=(",", ":"))


def compute_record(shape: ShiftedSkewShape | str) -> ResultRecord:
    if isinstance(shape, str):
        shape = parse_shape(shape)
    kind = classify(shape).kind
    turns = count_turns(shape).total if kind is ShapeKind.FRAYED_RIBBON else None
    exp = q_expansion(shape)
    terms = tuple((format_partition(k), c) for k, c in exp.items())
    return ResultRecord(shape.size, str(shape), kind.value, turns, terms, digest(format_expansion(exp)))


def _record_json(shape_text: str) -> str:
    return compute_record(shape_text).to_json()


def compute_records(shapes: Sequence[ShiftedSkewShape], threads: int = 1) -> Iterator[ResultRecord]:
    """Records in input order.  With ``threads > 1`` the work is spread over
    worker processes that pull shapes one at a time; the caller remains the
    only consumer, so output order never depends on scheduling."""
    texts = [str(s) for s in shapes]
    if threads <= 1 or len(texts) < 2:
        for t in texts:
            yield compute_record(t)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for line in pool.map(_record_json, texts, chunksize=1):
            yield ResultRecord.from_json(line)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Violation:
    kind: str
    members: tuple[str, ...]
    detail: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind, "members": list(self.members), "detail": self.detail}


@dataclass
class VerificationReport:
    size: int
    shape_class: str
    shape_count: int
    groups: list[tuple[str, ...]]
    violations: list[Violation]
    wall_time: float
    pruning: bool = True

    @property
    def group_count(self) -> int:
        return len(self.groups)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary_line(self) -> str:
        status = "ok" if self.ok else f"{len(self.violations)} violation(s)"
        return (
            f"size {self.size}: {self.shape_count} {self.shape_class} shapes, "
            f"{self.group_count} fingerprint groups, {status}"
        )


def group_records(records: Iterable[ResultRecord]) -> dict[str, list[ResultRecord]]:
    """Fingerprint groups; members sorted by shape string, groups keyed by fp."""
    groups: dict[str, list[ResultRecord]] = {}
    for r in records:
        groups.setdefault(r.fp, []).append(r)
    for members in groups.values():
        members.sort(key=lambda r: r.shape)
    return dict(sorted(groups.items(), key=lambda kv: kv[1][0].shape))


def _is_antipodal_class(shapes: Sequence[str]) -> bool:
    """True when the group is a single shape or a shape with its reflection."""
    if len(shapes) == 1:
        return True
    if len(shapes) == 2:
        return str(antipodal(shapes[0])) == shapes[1]
    return False


def check_frayed_records(records: Sequence[ResultRecord]) -> tuple[list[tuple[str, ...]], list[Violation]]:
    groups = group_records(records)
    violations = []
    for members in groups.values():
        names = tuple(r.shape for r in members)
        if not _is_antipodal_class(names):
            violations.append(Violation("distinctness", names, format_expansion(members[0].q())))
        if len({r.turns for r in members}) > 1:
            violations.append(Violation("turn_count", names))
    for r in records:
        n = r.size
        if n >= 5 and r.turns is not None and r.coefficient((n - 2, 2)) != 2 * r.turns:
            violations.append(
                Violation("n22_coefficient", (r.shape,), f"{r.coefficient((n - 2, 2))} != 2*{r.turns}")
            )
    return [tuple(r.shape for r in m) for m in groups.values()], violations


def _greedy_key(shape: str) -> tuple[int, tuple[int, ...]]:
    return greedy_filling(shape).monomial()


def check_near_ribbon_records(records: Sequence[ResultRecord]) -> tuple[list[tuple[str, ...]], list[Violation]]:
    groups = group_records(records)
    near = {k.value for k in NEAR_RIBBON_KINDS}
    violations = []
    for members in groups.values():
        names = tuple(r.shape for r in members)
        kinds = {r.shape_class in near for r in members}
        if len(kinds) > 1:
            violations.append(Violation("near_ribbon_closure", names, format_expansion(members[0].q())))
        if len({_greedy_key(s) for s in names}) > 1:
            violations.append(Violation("greedy_monomial", names))
    return [tuple(r.shape for r in m) for m in groups.values()], violations


def shapes_for_class(shape_class: str, n: int) -> list[ShiftedSkewShape]:
    if shape_class == "frayed":
        return enumerate_frayed_ribbons(n)
    if shape_class == "near-ribbon":
        return enumerate_shifted_skew_shapes(n, connected_only=True)
    raise ValueError(f"unknown class {shape_class!r}; expected one of {CLASSES}")


_CHECKS: dict[str, Callable] = {"frayed": check_frayed_records, "near-ribbon": check_near_ribbon_records}


def verify_records(shape_class: str, n: int, records: Sequence[ResultRecord], elapsed: float = 0.0) -> VerificationReport:
    groups, violations = _CHECKS[shape_class](records)
    return VerificationReport(n, shape_class, len(records), groups, violations, elapsed)


def verify_frayed_distinctness(n: int, threads: int = 1) -> VerificationReport:
    start = time.perf_counter()
    records = list(compute_records(enumerate_frayed_ribbons(n), threads))
    return verify_records("frayed", n, records, time.perf_counter() - start)


def verify_near_ribbon_closure(n: int, threads: int = 1) -> VerificationReport:
    start = time.perf_counter()
    records = list(compute_records(enumerate_shifted_skew_shapes(n, connected_only=True), threads))
    return verify_records("near-ribbon", n, records, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# equal pairs


FILTERS: dict[str, Callable[[ShiftedSkewShape], bool]] = {
    "connected": lambda s: True,
    "two-staircase": lambda s: classify(s).staircase_count >= 2,
    "near-ribbon": lambda s: classify(s).kind in NEAR_RIBBON_KINDS,
    "near-ribbon-ordinary": lambda s: classify(s).kind is ShapeKind.NEAR_RIBBON_ORDINARY,
    "frayed": lambda s: classify(s).kind is ShapeKind.FRAYED_RIBBON,
    "ribbon": lambda s: classify(s).kind is ShapeKind.RIBBON,
}


def _antipodal_classes(shapes: Sequence[str]) -> int:
    seen = set()
    count = 0
    for s in shapes:
        if s in seen:
            continue
        count += 1
        seen.add(s)
        seen.add(str(antipodal(s)))
    return count


def find_equal_pairs(n: int, class_filter: str = "connected") -> list[tuple[str, ...]]:
    """Groups of connected shapes with equal Q functions that are not merely
    a shape together with its antipodal reflection."""
    keep = FILTERS[class_filter]
    shapes = [s for s in enumerate_shifted_skew_shapes(n, connected_only=True) if keep(s)]
    groups = group_records(compute_record(s) for s in shapes)
    out = []
    for members in groups.values():
        names = tuple(r.shape for r in members)
        if _antipodal_classes(names) >= 2:
            out.append(names)
    return out


# ---------------------------------------------------------------------------
# campaigns


@dataclass
class CampaignSummary:
    reports: list[VerificationReport] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)


def read_campaign(path: Path) -> tuple[dict[int, list[ResultRecord]], set[int]]:
    """Records per size and the set of sizes marked complete."""
    records: dict[int, list[ResultRecord]] = {}
    complete: set[int] = set()
    if not path.exists():
        return records, complete
    with path.open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
            except json.JSONDecodeError:
                # torn final line from an interrupted write
                continue
            if data.get("schema") != SCHEMA:
                continue
            if data.get("complete"):
                complete.add(data["size"])
            elif "shape" in data:
                records.setdefault(data["size"], []).append(ResultRecord.from_dict(data))
    return records, complete


def _rewrite_complete(path: Path, complete: set[int]) -> None:
    """Drop every line that belongs to an unfinished size."""
    kept = []
    with path.open() as fh:
        for line in fh:
            try:
                data = json.loads(line)
            except json.JSONDecodeError:
                continue
            if data.get("size") in complete:
                kept.append(line if line.endswith("\n") else line + "\n")
    tmp = path.with_suffix(path.suffix + ".tmp")
    with tmp.open("w") as fh:
        fh.writelines(kept)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


class _NullSink:
    def write(self, text: str) -> None:
        pass

    def flush(self) -> None:
        pass

    def fileno(self) -> int:
        raise OSError("no file")

    def __enter__(self) -> _NullSink:
        return self

    def __exit__(self, *exc) -> None:
        pass


def run_campaign(
    sizes: Iterable[int],
    out_path: str | os.PathLike | None,
    resume: bool = False,
    threads: int = 1,
    shape_class: str = "frayed",
    progress: Callable[[str], None] | None = None,
) -> CampaignSummary:
    """Verify each size in turn, streaming records to ``out_path`` (or
    nowhere when it is ``None``)."""
    summary = CampaignSummary()
    done_records: dict[int, list[ResultRecord]] = {}
    complete: set[int] = set()
    path = Path(out_path) if out_path is not None else None
    if path is not None:
        if resume and path.exists():
            done_records, complete = read_campaign(path)
            _rewrite_complete(path, complete)
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text("")
    with (path.open("a") if path is not None else _NullSink()) as fh:
        for n in sizes:
            if n in complete:
                summary.skipped.append(n)
                summary.reports.append(verify_records(shape_class, n, done_records.get(n, [])))
                if progress:
                    progress(f"size {n}: already complete, skipped")
                continue
            start = time.perf_counter()
            records = []
            for rec in compute_records(shapes_for_class(shape_class, n), threads):
                fh.write(rec.to_json() + "\n")
                records.append(rec)
            report = verify_records(shape_class, n, records, time.perf_counter() - start)
            for v in report.violations:
                fh.write(json.dumps({"schema": SCHEMA, "size": n, "violation": v.to_dict()}, separators=(",", ":")) + "\n")
            fh.write(sentinel(n) + "\n")
            fh.flush()
            if path is not None:
                os.fsync(fh.fileno())
            summary.reports.append(report)
            if progress:
                progress(f"{report.summary_line()} ({report.wall_time:.2f}s)")
    return summary


def sorted_records(path: str | os.PathLike) -> list[str]:
    """All record lines of a campaign file in sorted order (for diffing)."""
    records, _ = read_campaign(Path(path))
    return sorted(r.to_json() for rs in records.values() for r in rs)
