"""Frequency tables, category analysis, and deterministic report emission."""

from __future__ import annotations

import csv
import hashlib
import json
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence
from xml.sax.saxutils import escape

from .corpus import ActionKind, Corpus, QueryRecord
from .errors import OverlappingLexicon, UnwritablePath
from .lexicon import Lexicon, Membership, _architect_hits
from .parsing import default_stopwords, normalize, tokenize

__all__ = [
    "FrequencyTable",
    "CategoryLexicon",
    "ReportTable",
    "term_frequencies",
    "keyword_frequencies",
    "architect_frequencies",
    "classify_term",
    "category_distribution",
    "emit",
    "load_categories",
    "default_categories",
]

SCOPES = ("all", "filtered", "explicit")
CATEGORIES = ("style", "content", "quality", "unknown")


@dataclass
class FrequencyTable:
    """Per-term query counts (document frequency) across the three scopes."""

    rows: dict[str, list[int]]
    totals: dict[str, int]

    def top(self, n: int, scope: str = "filtered") -> list[tuple[str, list[int]]]:
        col = SCOPES.index(scope)
        ranked = sorted(self.rows.items(), key=lambda kv: (-kv[1][col], kv[0]))
        return ranked[:n]


def term_frequencies(
    corpus: Corpus,
    membership: Sequence[Membership],
    stopwords: frozenset[str] | None = None,
) -> FrequencyTable:
    """Count, per content term, the queries containing it in each scope."""
    if stopwords is None:
        stopwords = default_stopwords()
    rows: dict[str, list[int]] = {}
    totals = {"all": 0, "filtered": 0, "explicit": 0}
    for record, m in zip(corpus, membership):
        totals["all"] += 1
        totals["filtered"] += m.potential
        totals["explicit"] += m.explicit
        for term in set(normalize(tokenize(record.text), stopwords)):
            row = rows.get(term)
            if row is None:
                row = rows[term] = [0, 0, 0]
            row[0] += 1
            if m.potential:
                row[1] += 1
            if m.explicit:
                row[2] += 1
    return FrequencyTable(rows=rows, totals=totals)


def keyword_frequencies(corpus: Corpus, lexicon: Lexicon) -> dict[str, int]:
    """Queries containing each keyword (anchors included); zeros retained."""
    terms = lexicon.keywords | lexicon.anchors
    counts = {t: 0 for t in terms}
    for record in corpus:
        for term in terms.intersection(tokenize(record.text)):
            counts[term] += 1
    return counts


def architect_frequencies(corpus: Corpus, lexicon: Lexicon) -> dict[str, int]:
    """Queries mentioning each architect name (consecutive tokens), once per query."""
    index = lexicon._architect_index()
    counts = {" ".join(name): 0 for name in lexicon.architect_names}
    for record in corpus:
        tokens = tokenize(record.text)
        for name in _architect_hits(tokens, index):
            counts[" ".join(name)] += 1
    return counts


# -- style/content/quality categories -----------------------------------------

@dataclass(frozen=True)
class CategoryLexicon:
    style: frozenset[str]
    content: frozenset[str]
    quality: frozenset[str]
    content_hash: str = field(default="", compare=False)

    def __post_init__(self):
        for a, b in (("style", "content"), ("style", "quality"), ("content", "quality")):
            overlap = getattr(self, a) & getattr(self, b)
            if overlap:
                raise OverlappingLexicon(f"{a}/{b} overlap: {sorted(overlap)}")
        if not self.content_hash:
            canonical = json.dumps(
                {
                    "style": sorted(self.style),
                    "content": sorted(self.content),
                    "quality": sorted(self.quality),
                },
                sort_keys=True,
            )
            object.__setattr__(
                self, "content_hash", hashlib.sha256(canonical.encode()).hexdigest()
            )


def load_categories(path) -> CategoryLexicon:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    return CategoryLexicon(
        style=frozenset(t.lower() for t in payload.get("style", [])),
        content=frozenset(t.lower() for t in payload.get("content", [])),
        quality=frozenset(t.lower() for t in payload.get("quality", [])),
    )


_DEFAULT_CATEGORIES: CategoryLexicon | None = None


def default_categories() -> CategoryLexicon:
    global _DEFAULT_CATEGORIES
    if _DEFAULT_CATEGORIES is None:
        text = resources.files("promptminer.data").joinpath("categories.json").read_text("utf-8")
        payload = json.loads(text)
        _DEFAULT_CATEGORIES = CategoryLexicon(
            style=frozenset(payload["style"]),
            content=frozenset(payload["content"]),
            quality=frozenset(payload["quality"]),
        )
    return _DEFAULT_CATEGORIES


def classify_term(term: str, category_lexicon: CategoryLexicon) -> str:
    if term in category_lexicon.style:
        return "style"
    if term in category_lexicon.content:
        return "content"
    if term in category_lexicon.quality:
        return "quality"
    return "unknown"


def category_distribution(
    records: Iterable[QueryRecord],
    category_lexicon: CategoryLexicon | None,
    stopwords: frozenset[str] | None = None,
) -> dict[ActionKind, dict[str, float]]:
    """Per action kind, the percentage of content-token occurrences per category.

    Percentages per kind sum to 100; kinds with no token occurrences are
    omitted. With no lexicon every token is `unknown`.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    counts: dict[ActionKind, Counter] = {kind: Counter() for kind in ActionKind}
    for record in records:
        counter = counts[record.action]
        for token in normalize(tokenize(record.text), stopwords):
            if category_lexicon is None:
                counter["unknown"] += 1
            else:
                counter[classify_term(token, category_lexicon)] += 1
    out: dict[ActionKind, dict[str, float]] = {}
    for kind, counter in counts.items():
        total = sum(counter.values())
        if total == 0:
            continue
        out[kind] = {cat: 100.0 * counter[cat] / total for cat in CATEGORIES}
    return out


# -- report emission -----------------------------------------------------------

@dataclass
class ReportTable:
    """A named table; `value_column` selects the bar length for SVG output."""

    name: str
    columns: list[str]
    rows: list[tuple]
    value_column: int = 1


def _emit_csv(table: ReportTable, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(table.columns)
        writer.writerows(table.rows)


def _emit_json(table: ReportTable, path: Path) -> None:
    payload = {"columns": table.columns, "rows": [list(r) for r in table.rows]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


_BAR_W = 420
_ROW_H = 22
_LABEL_W = 180


def _as_number(value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        return 0.0


def _emit_svg(table: ReportTable, path: Path) -> None:
    vc = table.value_column
    values = [_as_number(r[vc]) for r in table.rows]
    vmax = max((v for v in values if v > 0), default=1.0)
    height = _ROW_H * (len(table.rows) + 2)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_LABEL_W + _BAR_W + 90}" '
        f'height="{height}" font-family="monospace" font-size="12">',
        f'<text x="4" y="16" font-weight="bold">{escape(table.name)}</text>',
    ]
    for i, (row, value) in enumerate(zip(table.rows, values)):
        y = _ROW_H * (i + 1) + 8
        width = 0.0 if value <= 0 else _BAR_W * value / vmax
        label = escape(str(row[0]))
        lines.append(f'<text x="4" y="{y + 13}">{label}</text>')
        lines.append(
            f'<rect x="{_LABEL_W}" y="{y}" width="{width:.2f}" height="{_ROW_H - 6}" fill="#4878a8"/>'
        )
        lines.append(f'<text x="{_LABEL_W + width + 6:.2f}" y="{y + 13}">{escape(str(row[vc]))}</text>')
    lines.append("</svg>")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def emit(tables: Iterable[ReportTable], fmt: str, out_dir) -> list[Path]:
    """Write one file per table; identical inputs yield identical bytes."""
    suffix = {"csv": ".csv", "json": ".json", "svg_bar": ".svg"}.get(fmt)
    if suffix is None:
        raise ValueError(f"unknown report format: {fmt!r}")
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        written: list[Path] = []
        for table in tables:
            path = out / f"{table.name}{suffix}"
            if fmt == "csv":
                _emit_csv(table, path)
            elif fmt == "json":
                _emit_json(table, path)
            else:
                _emit_svg(table, path)
            written.append(path)
    except OSError as exc:
        raise UnwritablePath(str(exc)) from exc
    return written
