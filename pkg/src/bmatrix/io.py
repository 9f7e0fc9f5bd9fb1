"""Text and CSV artifact formats.

Patterns are written one per line with ``1`` for +1 and ``0`` for -1.  All
CSV writers produce ``\\n`` line endings and fixed float formatting so that
parsing and re-serialising an artifact reproduces it byte for byte.
"""

from __future__ import annotations

import csv
import io as _io
import json
from pathlib import Path

import numpy as np

from .complexity import CostReport
from .core import SPIN_DTYPE, MemorySet, ProximityModel, WeightMatrix
from .errors import DimensionError, ParseError, ValidationError
from .sites import ActiveSiteMap, SiteEntry

SITE_MAP_HEADER = ["memory_index", "level", "site_index", "score", "strict"]
EXPERIMENT_HEADER = [
    "strategy", "n", "m", "r", "trials", "mean_success", "stddev",
    "strict_site_rate", "master_seed", "mean_any_match",
]
COST_HEADER = ["n", "r", "classical_ops", "active_ops", "ratio"]


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _write_rows(rows) -> str:
    buf = _io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _read_rows(text: str, header: list[str] | None = None) -> list[list[str]]:
    rows = list(csv.reader(_io.StringIO(text)))
    if header is not None:
        if not rows or rows[0] != header:
            raise ParseError(f"expected header {','.join(header)}", line=1)
        rows = rows[1:]
    return rows


# patterns

def format_pattern(x) -> str:
    return "".join("1" if v > 0 else "0" for v in np.asarray(x))


def parse_pattern(text: str, line: int | None = None) -> np.ndarray:
    text = text.strip()
    bad = set(text) - {"0", "1"}
    if bad:
        raise ParseError(f"unexpected character {sorted(bad)[0]!r} in pattern", line=line)
    if not text:
        raise ParseError("empty pattern", line=line)
    return np.array([1 if c == "1" else -1 for c in text], dtype=SPIN_DTYPE)


def parse_patterns(text: str) -> MemorySet:
    """Parse a pattern file; blank lines are skipped, an empty file is rejected."""
    rows = []
    width = None
    for k, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        x = parse_pattern(raw, line=k)
        if width is None:
            width = len(x)
        elif len(x) != width:
            raise ParseError(f"pattern length {len(x)} differs from first pattern ({width})", line=k)
        rows.append(x)
    if not rows:
        raise ValidationError("pattern file contains no memories")
    return MemorySet(np.array(rows))


def format_patterns(memories: MemorySet) -> str:
    return "".join(format_pattern(x) + "\n" for x in memories)


def read_patterns(path) -> MemorySet:
    return parse_patterns(Path(path).read_text())


# weight matrix: header row of column indices, then n rows of n integers

def format_weights(t: WeightMatrix) -> str:
    n = t.n
    return _write_rows([list(range(n)), *t.t.tolist()])


def parse_weights(text: str) -> WeightMatrix:
    rows = _read_rows(text)
    if not rows:
        raise ParseError("empty weight matrix")
    n = len(rows[0])
    if rows[0] != [str(j) for j in range(n)]:
        raise ParseError("weight header must list column indices 0..n-1", line=1)
    if len(rows) != n + 1:
        raise ParseError(f"expected {n} matrix rows, found {len(rows) - 1}")
    try:
        body = [[int(v) for v in row] for row in rows[1:]]
    except ValueError as exc:
        raise ParseError(f"non-integer weight: {exc}") from None
    if any(len(row) != n for row in body):
        raise ParseError("weight matrix rows must all have n entries")
    return WeightMatrix(np.array(body, dtype=np.int64))


# positions: index,x,y[,z]; floats written with repr so they round-trip exactly

def format_positions(prox: ProximityModel) -> str:
    axes = ["x", "y", "z"][: prox.dim]
    rows = [["index", *axes]]
    rows += [[i, *(repr(float(c)) for c in p)] for i, p in enumerate(prox.positions)]
    return _write_rows(rows)


def parse_positions(text: str) -> ProximityModel:
    rows = _read_rows(text)
    if not rows or rows[0] not in (["index", "x", "y"], ["index", "x", "y", "z"]):
        raise ParseError("positions header must be index,x,y[,z]", line=1)
    dim = len(rows[0]) - 1
    pts = []
    for k, row in enumerate(rows[1:], start=2):
        if len(row) != dim + 1 or row[0] != str(k - 2):
            raise ParseError("malformed positions row", line=k)
        try:
            pts.append([float(c) for c in row[1:]])
        except ValueError:
            raise ParseError("non-numeric coordinate", line=k) from None
    return ProximityModel(np.array(pts))


# site map

def format_site_map(site_map: ActiveSiteMap) -> str:
    rows = [SITE_MAP_HEADER]
    for i, e in enumerate(site_map):
        for s, sc, st in zip(e.sites, e.scores, e.strict):
            rows.append([i, e.level, s, sc, int(st)])
    return _write_rows(rows)


def parse_site_map(text: str, r: int | None = None) -> ActiveSiteMap:
    rows = _read_rows(text, SITE_MAP_HEADER)
    grouped: dict[int, list] = {}
    levels: dict[int, int] = {}
    for k, row in enumerate(rows, start=2):
        try:
            mi, level, site, score, strict = (int(v) for v in row)
        except ValueError:
            raise ParseError("site-map fields must be integers", line=k) from None
        if strict not in (0, 1):
            raise ParseError("strict flag must be 0 or 1", line=k)
        if levels.setdefault(mi, level) != level:
            raise ValidationError(f"memory {mi} has two activation levels")
        grouped.setdefault(mi, []).append((site, score, bool(strict)))
    if not grouped:
        raise ValidationError("site map lists no active sites")
    if sorted(grouped) != list(range(len(grouped))):
        raise ValidationError("site map memory indices must be 0..m-1")
    entries = []
    for mi in range(len(grouped)):
        sites, scores, strict = zip(*grouped[mi])
        entries.append(SiteEntry(levels[mi], tuple(sites), tuple(scores), tuple(strict)))
    if r is None:
        r = max(len(e.sites) for e in entries)
    return ActiveSiteMap(tuple(entries), r)


# experiment tables

def format_experiments(stats_rows) -> str:
    rows = [EXPERIMENT_HEADER]
    for s in stats_rows:
        c = s.config
        rows.append([
            c.strategy.variant, c.n, c.m, c.r, c.trials, _fmt(s.mean_success),
            _fmt(s.stddev), _fmt(s.strict_site_rate), c.master_seed, _fmt(s.mean_any_match),
        ])
    return _write_rows(rows)


def parse_experiments(text: str) -> list[dict]:
    """Rows of an experiment CSV as dicts with typed values."""
    out = []
    for k, row in enumerate(_read_rows(text, EXPERIMENT_HEADER), start=2):
        if len(row) != len(EXPERIMENT_HEADER):
            raise ParseError("wrong number of fields", line=k)
        rec = dict(zip(EXPERIMENT_HEADER, row))
        try:
            for key in ("n", "m", "r", "trials", "master_seed"):
                rec[key] = int(rec[key])
            for key in ("mean_success", "stddev", "strict_site_rate", "mean_any_match"):
                rec[key] = float(rec[key])
        except ValueError:
            raise ParseError("bad numeric field", line=k) from None
        out.append(rec)
    return out


def format_experiment_records(records) -> str:
    rows = [EXPERIMENT_HEADER]
    for rec in records:
        rows.append([
            _fmt(rec[k]) if isinstance(rec[k], float) else rec[k] for k in EXPERIMENT_HEADER
        ])
    return _write_rows(rows)


# cost reports

def format_cost(report: CostReport) -> str:
    return _write_rows([
        COST_HEADER,
        [report.n, report.r, report.classical_ops, report.active_ops, _fmt(report.ratio)],
    ])


def parse_cost(text: str) -> CostReport:
    rows = _read_rows(text, COST_HEADER)
    if len(rows) != 1 or len(rows[0]) != len(COST_HEADER):
        raise ParseError("cost CSV must hold exactly one data row", line=2)
    n, r, c, a, _ = rows[0]
    try:
        return CostReport(int(n), int(r), int(c), int(a))
    except ValueError:
        raise ParseError("bad numeric field", line=2) from None


# retrieval results

RETRIEVAL_HEADER = ["strategy", "sites", "values", "output", "matched", "orders"]


def format_retrieval(result) -> str:
    sites = result.clamped_sites
    values = result.output[list(sites)]
    return _write_rows([
        RETRIEVAL_HEADER,
        [
            result.strategy.variant,
            " ".join(map(str, sites)),
            format_pattern(values),
            format_pattern(result.output),
            "" if result.matched is None else result.matched,
            "|".join(" ".join(map(str, o.order)) for o in result.orders),
        ],
    ])


# manifests

def write_manifest(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_manifest(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"manifest is not valid JSON: {exc.msg}", line=exc.lineno) from None


def check_same_n(*sizes):
    if len(set(sizes)) != 1:
        raise DimensionError(f"artifacts disagree on network size: {sizes}")
