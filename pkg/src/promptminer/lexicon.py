"""Keyword lexicon induction by anchor co-occurrence, plus query matching."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, NamedTuple

from .corpus import Corpus
from .errors import EmptyCorpus
from .parsing import tokenize

__all__ = [
    "Lexicon",
    "CandidateStats",
    "MatchResult",
    "Membership",
    "FilterSummary",
    "build_keywords",
    "match",
    "classify_corpus",
    "filter_corpus",
    "load_terms",
    "load_name_sequences",
    "load_lexicon",
    "save_lexicon",
    "default_anchors",
    "default_candidates",
    "default_architects",
]

_EMPTY: frozenset = frozenset()


@dataclass(frozen=True)
class Lexicon:
    anchors: frozenset[str]
    keywords: frozenset[str]
    architect_names: frozenset[tuple[str, ...]]

    def __post_init__(self):
        overlap = self.anchors & self.keywords
        if overlap:
            raise ValueError(f"anchors and keywords overlap: {sorted(overlap)}")
        if any(not name for name in self.architect_names):
            raise ValueError("empty architect name sequence")
        for term in self.anchors | self.keywords:
            if term != term.lower():
                raise ValueError(f"lexicon term not lowercase: {term!r}")

    def _architect_index(self) -> dict[str, list[tuple[str, ...]]]:
        index: dict[str, list[tuple[str, ...]]] = {}
        for name in self.architect_names:
            index.setdefault(name[0], []).append(name)
        return index


@dataclass(frozen=True)
class CandidateStats:
    candidate: str
    n_candidate: int
    n_co: int
    ratio: float
    zero_support: bool


class MatchResult(NamedTuple):
    explicit: bool
    keyword_hits: frozenset[str]
    architect_hits: frozenset[tuple[str, ...]]


class Membership(NamedTuple):
    """Compact per-record filter flags."""

    explicit: bool
    potential: bool
    architect: bool


@dataclass(frozen=True)
class FilterSummary:
    n_total: int
    n_potential: int
    n_explicit: int
    n_architect_ref: int

    @property
    def fraction_potential(self) -> float:
        return self.n_potential / self.n_total

    @property
    def fraction_explicit(self) -> float:
        return self.n_explicit / self.n_total

    @property
    def fraction_architect_ref(self) -> float:
        return self.n_architect_ref / self.n_total

    def to_dict(self) -> dict:
        return {
            "n_total": self.n_total,
            "n_potential": self.n_potential,
            "n_explicit": self.n_explicit,
            "n_architect_ref": self.n_architect_ref,
            "fraction_potential": self.fraction_potential,
            "fraction_explicit": self.fraction_explicit,
            "fraction_architect_ref": self.fraction_architect_ref,
        }


def build_keywords(
    corpus: Corpus,
    candidates: Iterable[str],
    anchors: Iterable[str],
    threshold: float = 0.10,
    min_support: int = 20,
) -> tuple[set[str], list[CandidateStats]]:
    """Keep candidates whose anchor co-occurrence ratio reaches `threshold`.

    A candidate is kept iff it occurs in at least `min_support` queries and at
    least the `threshold` fraction of those queries also contain an anchor.
    The boundary is inclusive and compared exactly (no float drift). Stats are
    returned for every candidate; candidates that equal an anchor are never
    kept (anchors and keywords stay disjoint).
    """
    candidate_set = set(candidates)
    anchor_set = set(anchors)
    n_candidate = {c: 0 for c in candidate_set}
    n_co = {c: 0 for c in candidate_set}

    for record in corpus:
        seen = set(tokenize(record.text))
        has_anchor = not anchor_set.isdisjoint(seen)
        for term in seen:
            if term in candidate_set:
                n_candidate[term] += 1
                if has_anchor:
                    n_co[term] += 1

    # Exact boundary semantics: interpret the threshold by its decimal text,
    # so ratio >= 0.10 holds for e.g. 3/30.
    cutoff = Fraction(str(threshold))
    kept: set[str] = set()
    stats: list[CandidateStats] = []
    for term in sorted(candidate_set):
        n, co = n_candidate[term], n_co[term]
        stats.append(
            CandidateStats(
                candidate=term,
                n_candidate=n,
                n_co=co,
                ratio=co / n if n else 0.0,
                zero_support=n == 0,
            )
        )
        if n >= min_support and n > 0 and Fraction(co, n) >= cutoff and term not in anchor_set:
            kept.add(term)
    return kept, stats


def _architect_hits(
    tokens: list[str], index: dict[str, list[tuple[str, ...]]], first_only: bool = False
) -> set[tuple[str, ...]]:
    hits: set[tuple[str, ...]] = set()
    n = len(tokens)
    for i, tok in enumerate(tokens):
        for name in index.get(tok, ()):
            L = len(name)
            if tuple(tokens[i : i + L]) == name:
                hits.add(name)
            elif L == 2 and i + 2 < n and tokens[i + 2] == name[1]:
                # canonical two-token form also matches across one middle name
                hits.add(name)
            else:
                continue
            if first_only:
                return hits
    return hits


def match(content_tokens: list[str], lexicon: Lexicon) -> MatchResult:
    """Match one query's tokens against anchors, keywords, and architect names."""
    token_set = set(content_tokens)
    explicit = not lexicon.anchors.isdisjoint(token_set)
    keyword_hits = frozenset(lexicon.keywords & token_set) or _EMPTY
    architect_hits = (
        frozenset(_architect_hits(content_tokens, lexicon._architect_index())) or _EMPTY
    )
    return MatchResult(explicit=explicit, keyword_hits=keyword_hits, architect_hits=architect_hits)


def classify_corpus(corpus: Corpus, lexicon: Lexicon) -> list[Membership]:
    """Per-record filter flags, in corpus record order."""
    anchors = lexicon.anchors
    keywords = lexicon.keywords
    index = lexicon._architect_index()
    out: list[Membership] = []
    for record in corpus:
        tokens = tokenize(record.text)
        token_set = set(tokens)
        explicit = not anchors.isdisjoint(token_set)
        keyword = not keywords.isdisjoint(token_set)
        architect = False
        if index and not token_set.isdisjoint(index.keys()):
            architect = bool(_architect_hits(tokens, index, first_only=True))
        out.append(Membership(explicit, explicit or keyword or architect, architect))
    return out


def filter_corpus(corpus: Corpus, lexicon: Lexicon) -> FilterSummary:
    """Count potential / explicit / architect-referencing queries."""
    if len(corpus) == 0:
        raise EmptyCorpus("cannot filter an empty corpus")
    n_potential = n_explicit = n_architect = 0
    for m in classify_corpus(corpus, lexicon):
        n_potential += m.potential
        n_explicit += m.explicit
        n_architect += m.architect
    return FilterSummary(
        n_total=len(corpus),
        n_potential=n_potential,
        n_explicit=n_explicit,
        n_architect_ref=n_architect,
    )


# -- config file I/O ----------------------------------------------------------

def load_terms(path) -> set[str]:
    """One lowercase term per line; `#` comments and blanks ignored."""
    terms: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            term = line.split("#", 1)[0].strip().lower()
            if term:
                terms.add(term)
    return terms


def load_name_sequences(path) -> set[tuple[str, ...]]:
    """One name per line, split into its token sequence."""
    names: set[tuple[str, ...]] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            name = line.split("#", 1)[0].strip().lower()
            if name:
                names.add(tuple(name.split()))
    return names


def save_lexicon(lexicon: Lexicon, path) -> None:
    payload = {
        "anchors": sorted(lexicon.anchors),
        "keywords": sorted(lexicon.keywords),
        "architects": sorted(" ".join(name) for name in lexicon.architect_names),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    return Lexicon(
        anchors=frozenset(payload["anchors"]),
        keywords=frozenset(payload["keywords"]),
        architect_names=frozenset(tuple(n.split()) for n in payload["architects"]),
    )


def _data_text(name: str) -> str:
    return resources.files("promptminer.data").joinpath(name).read_text("utf-8")


def _parse_term_lines(text: str) -> set[str]:
    return {t for line in text.splitlines() if (t := line.split("#", 1)[0].strip().lower())}


def default_anchors() -> set[str]:
    return _parse_term_lines(_data_text("anchors.txt"))


def default_candidates() -> set[str]:
    return _parse_term_lines(_data_text("candidates.txt"))


def default_architects() -> set[tuple[str, ...]]:
    return {tuple(n.split()) for n in _parse_term_lines(_data_text("architects.txt"))}
