import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from promptminer import synth
from promptminer.corpus import Corpus, ingest


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")
    return path


def record(id, user="u1", ts=0, text="plain filler text", action="draft", **extra):
    row = {"id": id, "user": user, "ts": ts, "text": text, "action": action}
    row.update(extra)
    return row


@pytest.fixture
def make_corpus(tmp_path):
    """Write rows to a JSONL file and ingest them."""

    def _make(rows, name="corpus.jsonl") -> Corpus:
        path = write_jsonl(tmp_path / name, rows)
        corpus, _ = ingest(path)
        return corpus

    return _make


def corpus_from_records(records) -> Corpus:
    from promptminer.corpus import ActionKind, QueryRecord

    return Corpus(
        [
            QueryRecord(
                id=r["id"],
                user=r["user"],
                ts=r["ts"],
                text=r["text"],
                action=ActionKind(r["action"]),
                channel=r.get("channel"),
            )
            for r in records
        ]
    )


@pytest.fixture(scope="session")
def pairs_world():
    """Small planted-pairs corpus with a trained model, shared across tests."""
    from promptminer.embedding import TrainConfig, train

    cfg = synth.SynthConfig(
        seed=97,
        filler=synth.FillerPlant(n_queries=300),
        pairs=synth.PairPlant(n_pairs=8, occurrences=150),
        track_details=False,
    )
    records, truth = synth.generate(cfg)
    sentences = [r["text"].split() for r in records]
    model = train(
        sentences, TrainConfig(dim=32, epochs=6, seed=5, subsample_t=0.0, min_count=5)
    )
    return {
        "records": records,
        "truth": truth,
        "sentences": sentences,
        "model": model,
        "partners": truth["pairs"]["partners"],
    }
