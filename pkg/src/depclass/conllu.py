"""CoNLL-U ingestion, per-treebank class statistics and report serialization.

Only the syntactic word rows matter here: multiword-token ranges ("4-5")
and empty-node ids ("8.1") are skipped, the basic HEAD column is the tree,
and DEPREL is carried as the arc label.  A malformed sentence becomes one
diagnosed error record and parsing continues with the next sentence.
"""

from __future__ import annotations

import csv
import io
import json
import multiprocessing
from collections import Counter
from dataclasses import dataclass, field
from functools import partial
from typing import Iterable, Iterator

from .checkers import ClassificationRecord, classify
from .tree import DepTree, InvalidTreeError, dependency_length

CONLLU_COLUMNS = 10

# fixed report row order; attardi_<d> rows are appended up to the cap
REPORT_CLASSES = [
    "projective",
    "planar_1",
    "planar_2",
    "planar_3",
    "root_covered",
    "well_nested",
    "wg_1",
    "wg_2",
    "gap_minding",
    "mild_plus_one_inherit",
    "head_split_wg1",
    "one_endpoint_crossing",
]

ERROR_KINDS = ["malformed_row", "non_integer_head", "invalid_tree", "attardi_above_cap"]

_CHAINS = [
    ("projective", "planar_1"),
    ("planar_1", "planar_2"),
    ("planar_2", "planar_3"),
    ("projective", "wg_1"),
    ("wg_1", "wg_2"),
    ("gap_minding", "mild_plus_one_inherit"),
    ("mild_plus_one_inherit", "wg_1"),
    ("head_split_wg1", "wg_1"),
    ("one_endpoint_crossing", "planar_2"),
]


@dataclass
class SentenceRecord:
    """One parsed sentence: its tree, surface forms and comment metadata."""

    tree: DepTree
    forms: tuple[str, ...]
    metadata: dict[str, str] = field(default_factory=dict)
    source_line: int = 0


@dataclass
class SentenceError:
    """A sentence that could not be turned into a tree."""

    line: int
    kind: str  # malformed_row | non_integer_head | invalid_tree
    message: str


def parse_conllu(lines: Iterable[str]) -> Iterator[SentenceRecord | SentenceError]:
    """Stream sentences out of CoNLL-U text, one record or error per sentence."""
    forms: list[str] = []
    heads: list[int] = []
    labels: list[str] = []
    metadata: dict[str, str] = {}
    start_line = 0
    error: SentenceError | None = None
    saw_rows = False

    def flush():
        nonlocal forms, heads, labels, metadata, start_line, error, saw_rows
        try:
            if error is not None:
                yield error
            elif saw_rows:
                try:
                    tree = DepTree(tuple(heads), tuple(labels))
                    yield SentenceRecord(tree, tuple(forms), metadata, start_line)
                except InvalidTreeError as exc:
                    yield SentenceError(start_line, "invalid_tree", str(exc))
        finally:
            forms, heads, labels = [], [], []
            metadata = {}
            start_line = 0
            error = None
            saw_rows = False

    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            yield from flush()
            continue
        if not start_line:
            start_line = lineno
        if line.startswith("#"):
            body = line[1:].strip()
            key, sep, value = body.partition("=")
            metadata[key.strip()] = value.strip() if sep else ""
            continue
        saw_rows = True
        if error is not None:
            continue  # sentence already diagnosed, consume its remaining rows
        cols = line.split("\t")
        if len(cols) != CONLLU_COLUMNS:
            error = SentenceError(lineno, "malformed_row",
                                  f"line {lineno}: {len(cols)} columns, expected {CONLLU_COLUMNS}")
            continue
        token_id = cols[0]
        if "-" in token_id or "." in token_id:
            continue  # multiword range or empty node: not a syntactic word
        try:
            idx = int(token_id)
        except ValueError:
            error = SentenceError(lineno, "malformed_row", f"line {lineno}: bad token id {token_id!r}")
            continue
        if idx != len(heads) + 1:
            error = SentenceError(lineno, "malformed_row",
                                  f"line {lineno}: token id {idx} out of order")
            continue
        try:
            head = int(cols[6])
        except ValueError:
            error = SentenceError(lineno, "non_integer_head",
                                  f"line {lineno}: HEAD {cols[6]!r} is not an integer")
            continue
        forms.append(cols[1])
        heads.append(head)
        labels.append(cols[7])
    yield from flush()


def sentence_to_conllu(rec: SentenceRecord) -> str:
    """Minimal 10-column rendering of one sentence (unknown columns are "_")."""
    out = []
    for key, value in rec.metadata.items():
        out.append(f"# {key} = {value}" if value else f"# {key}")
    labels = rec.tree.labels or ("_",) * rec.tree.n
    for i in range(1, rec.tree.n + 1):
        form = rec.forms[i - 1] if i <= len(rec.forms) else "_"
        out.append("\t".join([
            str(i), form, "_", "_", "_", "_",
            str(rec.tree.heads[i - 1]), labels[i - 1], "_", "_",
        ]))
    out.append("")
    return "\n".join(out) + "\n"


@dataclass
class TreebankReport:
    """Aggregated class counts, error counts and measure histograms."""

    total_trees: int
    attardi_cap: int
    class_counts: dict[str, int]
    class_percentages: dict[str, float]
    error_counts: dict[str, int]
    histograms: dict[str, dict[int, int]]

    def class_names(self) -> list[str]:
        return REPORT_CLASSES + [f"attardi_{d}" for d in range(1, self.attardi_cap + 1)]


class ReportBuilder:
    """Accumulates classification records and errors into a TreebankReport."""

    def __init__(self, attardi_cap: int = 3):
        self.attardi_cap = attardi_cap
        self.total = 0
        self.counts: Counter[str] = Counter()
        self.errors: Counter[str] = Counter()
        self.histograms: dict[str, Counter[int]] = {
            "gap_degree": Counter(),
            "page_number": Counter(),
            "crossings": Counter(),
            "dependency_length": Counter(),
        }

    def add_record(self, rec: ClassificationRecord, arc_lengths: Iterable[int] = ()) -> None:
        self.total += 1
        for name in REPORT_CLASSES:
            if _record_membership(rec, name):
                self.counts[name] += 1
        for d in range(1, self.attardi_cap + 1):
            if rec.attardi_degree is not None and rec.attardi_degree <= d:
                self.counts[f"attardi_{d}"] += 1
        if rec.attardi_degree is None:
            self.errors["attardi_above_cap"] += 1
        self.histograms["gap_degree"][rec.gap_degree] += 1
        self.histograms["page_number"][rec.page_number] += 1
        self.histograms["crossings"][rec.crossings] += 1
        for length in arc_lengths:
            self.histograms["dependency_length"][length] += 1

    def add_error(self, err: SentenceError) -> None:
        self.errors[err.kind] += 1

    def build(self) -> TreebankReport:
        total = self.total
        names = REPORT_CLASSES + [f"attardi_{d}" for d in range(1, self.attardi_cap + 1)]
        counts = {name: self.counts.get(name, 0) for name in names}
        chains = _CHAINS + [
            (f"attardi_{d}", f"attardi_{d + 1}") for d in range(1, self.attardi_cap)
        ]
        for narrow, wide in chains:
            assert counts[narrow] <= counts[wide], f"count({narrow}) > count({wide})"
        percentages = {name: (c / total if total else 0.0) for name, c in counts.items()}
        errors = {kind: self.errors.get(kind, 0) for kind in ERROR_KINDS}
        for kind in sorted(self.errors):
            errors.setdefault(kind, self.errors[kind])
        return TreebankReport(
            total_trees=total,
            attardi_cap=self.attardi_cap,
            class_counts=counts,
            class_percentages=percentages,
            error_counts=errors,
            histograms={k: dict(sorted(v.items())) for k, v in self.histograms.items()},
        )


def _record_membership(rec: ClassificationRecord, name: str) -> bool:
    if name == "projective":
        return rec.projective
    if name == "planar_1":
        return rec.planar1
    if name == "planar_2":
        return rec.page_number <= 2
    if name == "planar_3":
        return rec.page_number <= 3
    if name == "root_covered":
        return rec.root_covered
    if name == "well_nested":
        return rec.well_nested
    if name == "wg_1":
        return rec.wg_level is not None and rec.wg_level <= 1
    if name == "wg_2":
        return rec.wg_level is not None and rec.wg_level <= 2
    if name == "gap_minding":
        return rec.gap_minding
    if name == "mild_plus_one_inherit":
        return rec.mild_plus_one_inherit
    if name == "head_split_wg1":
        return rec.head_split_wg1
    if name == "one_endpoint_crossing":
        return rec.one_endpoint_crossing
    raise KeyError(name)


def _classify_payload(heads: tuple[int, ...], attardi_cap: int, attardi_budget: int):
    tree = DepTree(heads)
    rec = classify(tree, attardi_cap=attardi_cap, attardi_budget=attardi_budget)
    lengths = tuple(dependency_length(a) for a in tree.arcs)
    return rec, lengths


def classify_stream(
    items: Iterable[SentenceRecord | SentenceError],
    attardi_cap: int = 3,
    attardi_budget: int = 10**6,
    jobs: int = 1,
) -> TreebankReport:
    """Classify every parsed sentence and aggregate a report.

    ``jobs`` > 1 fans classification out to worker processes; the report is
    identical regardless of job count because aggregation is count-based.
    """
    builder = ReportBuilder(attardi_cap)
    worker = partial(_classify_payload, attardi_cap=attardi_cap, attardi_budget=attardi_budget)
    if jobs <= 1:
        for item in items:
            if isinstance(item, SentenceError):
                builder.add_error(item)
            else:
                rec, lengths = worker(item.tree.heads)
                builder.add_record(rec, lengths)
        return builder.build()
    batch: list[tuple[int, ...]] = []
    with multiprocessing.Pool(jobs) as pool:

        def drain():
            for rec, lengths in pool.map(worker, batch, chunksize=64):
                builder.add_record(rec, lengths)
            batch.clear()

        for item in items:
            if isinstance(item, SentenceError):
                builder.add_error(item)
                continue
            batch.append(item.tree.heads)
            if len(batch) >= 4096:
                drain()
        drain()
    return builder.build()


def write_report(report: TreebankReport, format: str = "csv") -> str:
    """Serialize a report as CSV or JSON lines with a fixed row order.

    CSV rows are ``name,count,percentage`` with percentages printed to four
    decimals; histogram rows are named ``<measure>_<value>`` and their
    percentages are fractions of that measure's own observation total.
    JSON lines carry one object per class row plus a trailing summary object
    with the errors and histograms.
    """
    rows = _report_rows(report)
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["class", "count", "percentage"])
        for name, count, pct in rows:
            writer.writerow([name, count, f"{pct:.4f}"])
        return buf.getvalue()
    if format in ("json-lines", "jsonl"):
        out = []
        for name, count, pct in rows:
            out.append(json.dumps(
                {"class": name, "count": count, "percentage": round(pct, 4)}))
        out.append(json.dumps({
            "summary": {
                "total_trees": report.total_trees,
                "attardi_cap": report.attardi_cap,
                "errors": report.error_counts,
                "histograms": {
                    k: {str(val): c for val, c in v.items()}
                    for k, v in report.histograms.items()
                },
            }
        }))
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown report format {format!r}")


def _report_rows(report: TreebankReport) -> list[tuple[str, int, float]]:
    total = report.total_trees
    rows = [("total_trees", total, 1.0 if total else 0.0)]
    for name in report.class_names():
        rows.append((name, report.class_counts[name], report.class_percentages[name]))
    for kind, count in report.error_counts.items():
        rows.append((f"error_{kind}", count, count / total if total else 0.0))
    for measure, hist in report.histograms.items():
        observations = sum(hist.values())
        for value, count in hist.items():
            rows.append((f"{measure}_{value}", count, count / observations if observations else 0.0))
    return rows
