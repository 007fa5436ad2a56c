"""promptminer: mining toolkit for AI-art prompt logs.

Parses prompt grammar, induces an architectural keyword lexicon, trains
skip-gram embeddings over query text, detects iteration sessions, computes
usage analytics, and serves autocomplete over HTTP.
"""

from .corpus import ActionKind, Corpus, IngestStats, QueryRecord, by_user, ingest
from .lexicon import (
    CandidateStats,
    FilterSummary,
    Lexicon,
    MatchResult,
    build_keywords,
    classify_corpus,
    filter_corpus,
    match,
)
from .parsing import (
    Parameter,
    ParsedPrompt,
    PromptSegment,
    default_stopwords,
    load_stopwords,
    normalize,
    parse,
    tokenize,
)
from .sessions import (
    IterationChain,
    WorkflowClass,
    WorkflowStats,
    chain_queries,
    classify,
    is_extension,
    workflow_stats,
)

__version__ = "0.1.0"
