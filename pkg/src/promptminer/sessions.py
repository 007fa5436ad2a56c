"""Iteration-session detection and workflow statistics.

A same-user query joins the current chain when it arrives within the window
of the previous member and keeps or grows that member's content tokens;
anything else starts a new chain.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .corpus import ActionKind, Corpus, QueryRecord
from .parsing import default_stopwords, normalize, tokenize

__all__ = [
    "WorkflowClass",
    "IterationChain",
    "ClassStats",
    "WorkflowStats",
    "chain_queries",
    "is_extension",
    "classify",
    "workflow_stats",
    "export_chains",
    "query_length",
]

DEFAULT_WINDOW_S = 1800

_RERUN_ACTIONS = {
    ActionKind.VARIANT,
    ActionKind.UPSCALE_LIGHT,
    ActionKind.UPSCALE_BETA,
    ActionKind.UPSCALE_MAX,
    ActionKind.REMASTER,
}


class WorkflowClass(str, Enum):
    SINGLE = "single"
    DRAFT_ONLY = "draft_only"
    UPSCALED = "upscaled"
    REMASTERED = "remastered"


@dataclass
class IterationChain:
    user: str
    records: list[QueryRecord]
    workflow: WorkflowClass

    def __len__(self) -> int:
        return len(self.records)


def query_length(record: QueryRecord) -> int:
    """Query length in raw whitespace terms, before any token cleanup."""
    return len(record.text.split())


def _content_counter(text: str, stopwords: frozenset[str]) -> Counter:
    return Counter(normalize(tokenize(text), stopwords))


def is_extension(prev: QueryRecord, next: QueryRecord, stopwords: frozenset[str] | None = None) -> bool:
    """True when `next` reruns or grows `prev` (content tokens same or superset).

    Reordering is allowed; dropping a content token starts a new idea. A
    variant/upscale/remaster step with identical text always extends.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    if next.action in _RERUN_ACTIONS and next.text == prev.text:
        return True
    return _content_counter(prev.text, stopwords) <= _content_counter(next.text, stopwords)


def classify(records: list[QueryRecord]) -> WorkflowClass:
    """Workflow class with precedence single > remastered > upscaled > draft_only."""
    if not records:
        raise ValueError("empty chain")
    if len(records) == 1:
        return WorkflowClass.SINGLE
    if any(r.action is ActionKind.REMASTER for r in records):
        return WorkflowClass.REMASTERED
    if any(r.action.is_upscale for r in records):
        return WorkflowClass.UPSCALED
    return WorkflowClass.DRAFT_ONLY


def chain_queries(
    corpus: Corpus,
    window_s: int = DEFAULT_WINDOW_S,
    stopwords: frozenset[str] | None = None,
) -> list[IterationChain]:
    """Partition the corpus into per-user iteration chains.

    A record extends the chain iff it is within `window_s` seconds of the
    previous member (inclusive) and is_extension holds. Every record lands in
    exactly one chain. Output order: by user, then by chain start.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    chains: list[IterationChain] = []
    for user in sorted(corpus.user_index):
        records = [corpus.by_id[rid] for rid in corpus.user_index[user]]
        current: list[QueryRecord] = [records[0]]
        current_counter = _content_counter(records[0].text, stopwords)
        for rec in records[1:]:
            prev = current[-1]
            extends = False
            if rec.ts - prev.ts <= window_s:
                if rec.action in _RERUN_ACTIONS and rec.text == prev.text:
                    extends = True
                    rec_counter = current_counter
                else:
                    rec_counter = _content_counter(rec.text, stopwords)
                    extends = current_counter <= rec_counter
            if extends:
                current.append(rec)
                current_counter = rec_counter
            else:
                chains.append(IterationChain(user, current, classify(current)))
                current = [rec]
                current_counter = _content_counter(rec.text, stopwords)
        chains.append(IterationChain(user, current, classify(current)))
    return chains


@dataclass
class ClassStats:
    chain_count: int
    mean_total_steps: float
    mean_steps_by_action: dict[ActionKind, float]


@dataclass
class WorkflowStats:
    per_class: dict[WorkflowClass, ClassStats]
    mean_length_by_action: dict[ActionKind, float]
    category_pct_by_action: dict[ActionKind, dict[str, float]]
    single_share: float
    n_chains: int
    n_records: int

    def to_dict(self) -> dict:
        return {
            "per_class": {
                wc.value: {
                    "chain_count": cs.chain_count,
                    "mean_total_steps": cs.mean_total_steps,
                    "mean_steps_by_action": {k.value: v for k, v in cs.mean_steps_by_action.items()},
                }
                for wc, cs in self.per_class.items()
            },
            "mean_length_by_action": {k.value: v for k, v in self.mean_length_by_action.items()},
            "category_pct_by_action": {
                k.value: dict(v) for k, v in self.category_pct_by_action.items()
            },
            "single_share": self.single_share,
            "n_chains": self.n_chains,
            "n_records": self.n_records,
        }


def workflow_stats(
    chains: list[IterationChain],
    corpus: Corpus,
    category_lexicon=None,
    stopwords: frozenset[str] | None = None,
) -> WorkflowStats:
    """Per-class step statistics and per-action query-length/category stats."""
    from .analytics import category_distribution

    per_class: dict[WorkflowClass, ClassStats] = {}
    for wc in WorkflowClass:
        members = [c for c in chains if c.workflow is wc]
        count = len(members)
        step_totals = {kind: 0 for kind in ActionKind}
        total_steps = 0
        for chain in members:
            total_steps += len(chain.records)
            for rec in chain.records:
                step_totals[rec.action] += 1
        per_class[wc] = ClassStats(
            chain_count=count,
            mean_total_steps=total_steps / count if count else 0.0,
            mean_steps_by_action={
                kind: (step_totals[kind] / count if count else 0.0) for kind in ActionKind
            },
        )

    length_sum = {kind: 0 for kind in ActionKind}
    kind_counts = {kind: 0 for kind in ActionKind}
    for rec in corpus:
        length_sum[rec.action] += query_length(rec)
        kind_counts[rec.action] += 1
    mean_length = {
        kind: (length_sum[kind] / kind_counts[kind] if kind_counts[kind] else 0.0)
        for kind in ActionKind
    }

    category_pct = category_distribution(corpus, category_lexicon, stopwords=stopwords)

    n_records = len(corpus.records)
    singles = per_class[WorkflowClass.SINGLE].chain_count
    return WorkflowStats(
        per_class=per_class,
        mean_length_by_action=mean_length,
        category_pct_by_action=category_pct,
        single_share=singles / n_records if n_records else 0.0,
        n_chains=len(chains),
        n_records=n_records,
    )


def export_chains(chains: list[IterationChain], path) -> None:
    """One chain per line: {user, class, record_ids, steps_by_action}."""
    with open(path, "w", encoding="utf-8") as fh:
        for chain in chains:
            steps = Counter(r.action.value for r in chain.records)
            fh.write(
                json.dumps(
                    {
                        "user": chain.user,
                        "class": chain.workflow.value,
                        "record_ids": [r.id for r in chain.records],
                        "steps_by_action": {k: steps[k] for k in sorted(steps)},
                    },
                    sort_keys=True,
                )
                + "\n"
            )
