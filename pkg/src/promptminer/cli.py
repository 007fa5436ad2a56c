"""Command-line entry points for the full mining pipeline.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import analytics, lexicon as lexmod, sessions as sessmod, synth
from .corpus import Corpus, ingest
from .embedding import TrainConfig, load_model, suggest, train
from .embedding.model import save_model
from .errors import PromptMinerError
from .lexicon import Lexicon, classify_corpus, filter_corpus
from .parsing import default_stopwords, load_stopwords, normalize, tokenize

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_stopword_flag(p):
    p.add_argument("--stopwords", help="stopword file (default: bundled English list)")


def _stopwords_from(args) -> frozenset[str]:
    if getattr(args, "stopwords", None):
        return load_stopwords(args.stopwords)
    return default_stopwords()


def _load_lexicon_arg(path) -> Lexicon:
    return lexmod.load_lexicon(path)


def _sentences(corpus: Corpus, stopwords, lex: Lexicon | None, scope: str) -> list[list[str]]:
    records = corpus.records
    if scope == "filtered":
        if lex is None:
            raise _UsageError("--scope filtered requires --lexicon")
        membership = classify_corpus(corpus, lex)
        records = [r for r, m in zip(corpus.records, membership) if m.potential]
    return [normalize(tokenize(r.text), stopwords) for r in records]


def _write_json(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# -- subcommands ---------------------------------------------------------------

def _cmd_ingest(args) -> int:
    _, stats = ingest(args.corpus)
    payload = {
        "read": stats.read,
        "loaded": stats.loaded,
        "duplicates": stats.duplicates,
        "rejected": stats.rejected,
        "errors": stats.errors,
    }
    _write_json(payload, args.out)
    return 0


def _cmd_lexicon(args) -> int:
    corpus, _ = ingest(args.corpus)
    anchors = lexmod.load_terms(args.anchors) if args.anchors else lexmod.default_anchors()
    candidates = (
        lexmod.load_terms(args.candidates) if args.candidates else lexmod.default_candidates()
    )
    architects = (
        lexmod.load_name_sequences(args.architects)
        if args.architects
        else lexmod.default_architects()
    )
    keywords, stats = lexmod.build_keywords(
        corpus, candidates, anchors, threshold=args.threshold, min_support=args.min_support
    )
    lex = Lexicon(
        anchors=frozenset(anchors),
        keywords=frozenset(keywords),
        architect_names=frozenset(architects),
    )
    lexmod.save_lexicon(lex, args.out)
    if args.stats_out:
        import csv

        with open(args.stats_out, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["candidate", "n_candidate", "n_co", "ratio", "zero_support", "kept"])
            for s in stats:
                writer.writerow(
                    [s.candidate, s.n_candidate, s.n_co, s.ratio, s.zero_support,
                     s.candidate in keywords]
                )
    print(f"kept {len(keywords)} of {len(stats)} candidates -> {args.out}")
    return 0


def _cmd_filter(args) -> int:
    corpus, _ = ingest(args.corpus)
    lex = _load_lexicon_arg(args.lexicon)
    summary = filter_corpus(corpus, lex)
    _write_json(summary.to_dict(), args.out)
    return 0


def _cmd_train(args) -> int:
    corpus, _ = ingest(args.corpus)
    stopwords = _stopwords_from(args)
    lex = _load_lexicon_arg(args.lexicon) if args.lexicon else None
    scope = args.scope or ("filtered" if lex else "all")
    sentences = _sentences(corpus, stopwords, lex, scope)
    config = TrainConfig(
        dim=args.dim,
        window=args.window,
        negatives=args.negatives,
        epochs=args.epochs,
        lr_start=args.lr_start,
        lr_end=args.lr_end,
        min_count=args.min_count,
        subsample_t=args.subsample_t,
        seed=args.seed,
        deterministic=args.deterministic,
        threads=args.threads,
    )
    model = train(sentences, config)
    save_model(model, args.out, config)
    losses = ", ".join(f"{x:.4f}" for x in model.loss_history)
    print(f"trained V={len(model.vocab)} d={config.dim} on {len(sentences)} queries "
          f"({scope} scope); epoch loss: {losses}")
    return 0


def _cmd_sessions(args) -> int:
    corpus, _ = ingest(args.corpus)
    stopwords = _stopwords_from(args)
    chains = sessmod.chain_queries(corpus, window_s=args.window, stopwords=stopwords)
    sessmod.export_chains(chains, args.out)
    if args.stats_out:
        categories = (
            analytics.load_categories(args.categories)
            if args.categories
            else analytics.default_categories()
        )
        stats = sessmod.workflow_stats(chains, corpus, categories, stopwords=stopwords)
        _write_json(stats.to_dict(), args.stats_out)
    print(f"{len(chains)} chains over {len(corpus)} records -> {args.out}")
    return 0


def build_stats_cache(
    corpus: Corpus,
    lex: Lexicon,
    categories,
    stopwords,
    window_s: int = sessmod.DEFAULT_WINDOW_S,
    top_n: int = 50,
) -> dict:
    """Precompute every payload the HTTP service returns from /stats/*."""
    membership = classify_corpus(corpus, lex)
    freq = analytics.term_frequencies(corpus, membership, stopwords=stopwords)
    chains = sessmod.chain_queries(corpus, window_s=window_s, stopwords=stopwords)
    workflows = sessmod.workflow_stats(chains, corpus, categories, stopwords=stopwords)
    keywords = analytics.keyword_frequencies(corpus, lex)
    architects = analytics.architect_frequencies(corpus, lex)
    scope_cols = {"all": 0, "filtered": 1, "explicit": 2}
    return {
        "workflows": workflows.to_dict(),
        "filter": filter_corpus(corpus, lex).to_dict(),
        "frequencies": {
            scope: [[term, counts[col]] for term, counts in freq.top(top_n, scope)]
            for scope, col in scope_cols.items()
        },
        "term_rows": [
            [term, *counts] for term, counts in freq.top(top_n, "filtered")
        ],
        "totals": freq.totals,
        "keywords": sorted(keywords.items(), key=lambda kv: (-kv[1], kv[0])),
        "architects": sorted(architects.items(), key=lambda kv: (-kv[1], kv[0])),
        "category_lexicon_hash": categories.content_hash,
        "top_n": top_n,
    }


def _cmd_stats(args) -> int:
    corpus, _ = ingest(args.corpus)
    lex = _load_lexicon_arg(args.lexicon)
    stopwords = _stopwords_from(args)
    categories = (
        analytics.load_categories(args.categories)
        if args.categories
        else analytics.default_categories()
    )
    cache = build_stats_cache(corpus, lex, categories, stopwords, window_s=args.window)
    _write_json(cache, args.out)
    return 0


def _cmd_suggest(args) -> int:
    model = load_model(args.model)
    categories = (
        analytics.load_categories(args.categories)
        if args.categories
        else analytics.default_categories()
    )
    stopwords = _stopwords_from(args)
    interactive = sys.stdin.isatty()
    if interactive:
        print(f"model: V={len(model.vocab)}; type a prompt, empty line to quit")
    while True:
        if interactive:
            sys.stdout.write("> ")
            sys.stdout.flush()
        line = sys.stdin.readline()
        if not line or (interactive and not line.strip()):
            break
        tokens = normalize(tokenize(line), stopwords)
        for term, score, category in suggest(
            model, tokens, args.k, category_lexicon=categories
        ):
            print(f"{term}\t{score:.4f}\t{category}")
    return 0


def _report_tables(cache: dict) -> list[analytics.ReportTable]:
    totals = cache["totals"]
    term_rows = []
    for term, n_all, n_filtered, n_explicit in cache["term_rows"]:
        term_rows.append(
            (
                term, n_all, n_filtered, n_explicit,
                n_all / totals["all"] if totals["all"] else 0.0,
                n_filtered / totals["filtered"] if totals["filtered"] else 0.0,
                n_explicit / totals["explicit"] if totals["explicit"] else 0.0,
            )
        )
    wf = cache["workflows"]
    kinds = sorted(next(iter(wf["per_class"].values()))["mean_steps_by_action"])
    workflow_rows = [
        (cls, c["chain_count"], c["mean_total_steps"],
         *[c["mean_steps_by_action"][k] for k in kinds])
        for cls, c in wf["per_class"].items()
    ]
    length_rows = sorted(wf["mean_length_by_action"].items())
    category_rows = [
        (kind, *[pct.get(c, 0.0) for c in analytics.CATEGORIES])
        for kind, pct in sorted(wf["category_pct_by_action"].items())
    ]
    return [
        analytics.ReportTable(
            "term_frequency",
            ["term", "n_all", "n_filtered", "n_explicit", "rel_all", "rel_filtered", "rel_explicit"],
            term_rows,
            value_column=2,
        ),
        analytics.ReportTable("keyword_frequency", ["keyword", "n_queries"],
                              [tuple(r) for r in cache["keywords"]]),
        analytics.ReportTable("architect_frequency", ["architect", "n_queries"],
                              [tuple(r) for r in cache["architects"]]),
        analytics.ReportTable(
            "workflow_steps",
            ["class", "chain_count", "mean_total_steps", *[f"mean_{k}" for k in kinds]],
            workflow_rows,
            value_column=2,
        ),
        analytics.ReportTable("query_length", ["action", "mean_terms"], length_rows),
        analytics.ReportTable(
            "category_mix", ["action", *analytics.CATEGORIES], category_rows
        ),
        analytics.ReportTable(
            "provenance",
            ["key", "value"],
            [("category_lexicon_hash", cache["category_lexicon_hash"])],
        ),
    ]


def _cmd_report(args) -> int:
    try:
        cache = json.loads(Path(args.stats).read_text(encoding="utf-8"))
    except OSError as exc:
        raise PromptMinerError(f"cannot read stats cache: {exc}") from exc
    written = analytics.emit(_report_tables(cache), args.format, args.out)
    print(f"wrote {len(written)} tables to {args.out}")
    return 0


def _cmd_serve(args) -> int:
    from .service import ServiceConfig, create_app, load_state

    config_path = args.config or os.environ.get("PROMPTMINER_CONFIG")
    if not config_path:
        raise _UsageError("serve needs --config or PROMPTMINER_CONFIG")
    config = ServiceConfig.from_file(config_path)
    state = load_state(config)
    app = create_app(state)
    import uvicorn

    uvicorn.run(app, host=config.bind, port=config.port, log_level="warning")
    return 0


def _cmd_synth(args) -> int:
    config = synth.profile_config(
        args.profile, seed=args.seed, queries=args.queries, chains=args.chains
    )
    truth = synth.generate_files(config, args.out, args.truth)
    print(f"generated {truth['filter']['n_total']} queries -> {args.out} (truth: {args.truth})")
    return 0


# -- parser --------------------------------------------------------------------

def _build_parser() -> _Parser:
    parser = _Parser(prog="promptminer", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("ingest", help="validate a JSONL corpus and report ingest stats")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("lexicon", help="induce keywords and write a lexicon JSON")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--anchors")
    p.add_argument("--candidates")
    p.add_argument("--architects")
    p.add_argument("--threshold", type=float, default=0.10)
    p.add_argument("--min-support", type=int, default=20)
    p.add_argument("--stats-out")
    p.set_defaults(func=_cmd_lexicon)

    p = sub.add_parser("filter", help="summarize architectural-intent filtering")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_filter)

    p = sub.add_parser("train", help="train the co-occurrence embedding model")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--lexicon")
    p.add_argument("--scope", choices=["all", "filtered"])
    p.add_argument("--dim", type=int, default=100)
    p.add_argument("--window", type=int, default=5)
    p.add_argument("--negatives", type=int, default=5)
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--lr-start", type=float, default=0.025)
    p.add_argument("--lr-end", type=float, default=1e-4)
    p.add_argument("--min-count", type=int, default=5)
    p.add_argument("--subsample-t", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--threads", type=int, default=1)
    _add_stopword_flag(p)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("sessions", help="chain queries into iteration sessions")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--window", type=int, default=sessmod.DEFAULT_WINDOW_S)
    p.add_argument("--stats-out")
    p.add_argument("--categories")
    _add_stopword_flag(p)
    p.set_defaults(func=_cmd_sessions)

    p = sub.add_parser("stats", help="precompute the stats cache for the service")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--categories")
    p.add_argument("--window", type=int, default=sessmod.DEFAULT_WINDOW_S)
    _add_stopword_flag(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("suggest", help="interactive autocomplete loop over a model")
    p.add_argument("--model", required=True)
    p.add_argument("--categories")
    p.add_argument("-k", "--k", type=int, default=10)
    _add_stopword_flag(p)
    p.set_defaults(func=_cmd_suggest)

    p = sub.add_parser("report", help="emit csv/json/svg tables from a stats cache")
    p.add_argument("--stats", required=True)
    p.add_argument("--format", choices=["csv", "json", "svg_bar"], default="csv")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("serve", help="run the read-only HTTP service")
    p.add_argument("--config")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("synth", help="generate a synthetic corpus with ground truth")
    p.add_argument("--out", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--profile", choices=list(synth.PROFILES), default="mixed")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--queries", type=int)
    p.add_argument("--chains", type=int)
    p.set_defaults(func=_cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version paths
        return int(exc.code or 0)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args) or 0
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except PromptMinerError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
