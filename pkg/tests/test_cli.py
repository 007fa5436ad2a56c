import json

import pytest

from conftest import record, write_jsonl
from promptminer.cli import main


@pytest.fixture
def small_pipeline(tmp_path):
    """Corpus + truth + lexicon built once for CLI runs."""
    corpus = tmp_path / "corpus.jsonl"
    truth = tmp_path / "truth.json"
    assert main(["synth", "--out", str(corpus), "--truth", str(truth),
                 "--profile", "mixed", "--seed", "42", "--queries", "800",
                 "--chains", "40"]) == 0
    cands = tmp_path / "cands.txt"
    t = json.loads(truth.read_text())
    cands.write_text("\n".join(t["keywords"]["planted"] + t["keywords"]["distractors"]))
    lexicon = tmp_path / "lex.json"
    assert main(["lexicon", "--corpus", str(corpus), "--out", str(lexicon),
                 "--candidates", str(cands)]) == 0
    return {"dir": tmp_path, "corpus": corpus, "truth": truth, "lexicon": lexicon}


def test_unknown_subcommand_is_usage_error():
    assert main(["frobnicate"]) == 1


def test_no_subcommand_is_usage_error():
    assert main([]) == 1


def test_missing_required_flag_is_usage_error():
    assert main(["ingest"]) == 1


def test_missing_corpus_file_is_data_error(tmp_path):
    assert main(["ingest", "--corpus", str(tmp_path / "nope.jsonl")]) == 2


def test_ingest_writes_stats(tmp_path, capsys):
    path = write_jsonl(tmp_path / "c.jsonl", [record("a"), record("a"), record("b")])
    assert main(["ingest", "--corpus", str(path)]) == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats == {"read": 3, "loaded": 2, "duplicates": 1, "rejected": 0, "errors": {}}


def test_filter_writes_summary(small_pipeline):
    out = small_pipeline["dir"] / "summary.json"
    code = main(["filter", "--corpus", str(small_pipeline["corpus"]),
                 "--lexicon", str(small_pipeline["lexicon"]), "--out", str(out)])
    assert code == 0
    summary = json.loads(out.read_text())
    truth = json.loads(small_pipeline["truth"].read_text())["filter"]
    assert summary["n_total"] == truth["n_total"]
    assert summary["n_potential"] == truth["n_potential"]
    assert summary["n_explicit"] == truth["n_explicit"]


def test_filter_missing_lexicon_is_data_error(small_pipeline):
    assert main(["filter", "--corpus", str(small_pipeline["corpus"]),
                 "--lexicon", "/does/not/exist.json"]) == 2


def test_train_sessions_stats_report_chain(small_pipeline, tmp_path):
    d = small_pipeline["dir"]
    model = d / "model.pmv"
    assert main(["train", "--corpus", str(small_pipeline["corpus"]), "--out", str(model),
                 "--dim", "16", "--epochs", "1", "--min-count", "2", "--scope", "all"]) == 0
    assert model.exists() and (d / "model.pmv.json").exists()

    chains = d / "chains.jsonl"
    assert main(["sessions", "--corpus", str(small_pipeline["corpus"]),
                 "--out", str(chains)]) == 0
    assert chains.read_text().count("\n") > 0

    cache = d / "cache.json"
    assert main(["stats", "--corpus", str(small_pipeline["corpus"]),
                 "--lexicon", str(small_pipeline["lexicon"]), "--out", str(cache)]) == 0
    payload = json.loads(cache.read_text())
    assert {"workflows", "frequencies", "architects", "keywords"} <= set(payload)

    report_dir = d / "report"
    assert main(["report", "--stats", str(cache), "--format", "csv",
                 "--out", str(report_dir)]) == 0
    assert (report_dir / "term_frequency.csv").exists()


def test_train_filtered_scope_requires_lexicon(small_pipeline):
    assert main(["train", "--corpus", str(small_pipeline["corpus"]),
                 "--out", "/tmp/x.pmv", "--scope", "filtered"]) == 1


def test_suggest_reads_stdin(small_pipeline, tmp_path, capsys, monkeypatch):
    import io

    d = small_pipeline["dir"]
    model = d / "model2.pmv"
    assert main(["train", "--corpus", str(small_pipeline["corpus"]), "--out", str(model),
                 "--dim", "16", "--epochs", "1", "--min-count", "2", "--scope", "all"]) == 0
    capsys.readouterr()
    monkeypatch.setattr("sys.stdin", io.StringIO("interior design\n"))
    assert main(["suggest", "--model", str(model), "-k", "3"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 3
    term, score, category = out[0].split("\t")
    float(score)
    assert category in {"style", "content", "quality", "unknown"}


def test_synth_writes_both_files(tmp_path):
    corpus = tmp_path / "c.jsonl"
    truth = tmp_path / "t.json"
    assert main(["synth", "--out", str(corpus), "--truth", str(truth),
                 "--profile", "category", "--queries", "500"]) == 0
    assert corpus.exists() and truth.exists()


def test_serve_without_config_is_usage_error(monkeypatch):
    monkeypatch.delenv("PROMPTMINER_CONFIG", raising=False)
    assert main(["serve"]) == 1


def test_bad_report_format_is_usage_error(small_pipeline):
    assert main(["report", "--stats", "x.json", "--format", "pdf", "--out", "y"]) == 1
