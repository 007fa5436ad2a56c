"""Trained embedding model: neighbors, co-location prediction, autocomplete."""

from __future__ import annotations

import json
import struct
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..errors import EmptyCandidatePool, OutOfVocabulary
from .vocab import Vocab

__all__ = [
    "EmbeddingModel",
    "nearest",
    "cooccurrence_counts",
    "predict_colocated",
    "suggest",
    "save_model",
    "load_model",
    "load_model_meta",
]

_MAGIC = b"PMV1"


@dataclass
class EmbeddingModel:
    vocab: Vocab
    w_in: np.ndarray
    w_out: np.ndarray
    loss_history: list[float] = field(default_factory=list)
    pairs_trained: int = 0
    _w_in_unit: np.ndarray | None = field(default=None, repr=False, compare=False)

    def input_unit_vectors(self) -> np.ndarray:
        """Row-normalized input table, cached (model is immutable after training)."""
        if self._w_in_unit is None:
            norms = np.linalg.norm(self.w_in, axis=1, keepdims=True)
            self._w_in_unit = self.w_in / np.where(norms > 0, norms, 1.0)
        return self._w_in_unit

    def _index_of(self, term: str) -> int:
        idx = self.vocab.index.get(term)
        if idx is None:
            raise OutOfVocabulary(term)
        return idx


def nearest(model: EmbeddingModel, term: str, k: int) -> list[tuple[str, float]]:
    """Top `min(k, V-1)` cosine neighbors of `term`, descending, self excluded."""
    idx = model._index_of(term)
    unit = model.input_unit_vectors()
    sims = unit @ unit[idx]
    sims[idx] = -np.inf
    k = min(k, len(model.vocab) - 1)
    if k <= 0:
        return []
    top = np.argpartition(-sims, k - 1)[:k]
    top = top[np.lexsort((top, -sims[top]))]  # cosine desc, ties by vocab index
    return [(model.vocab.terms[i], float(np.clip(sims[i], -1.0, 1.0))) for i in top]


def cooccurrence_counts(
    sentences: Iterable[list[str]], targets: Iterable[str], window: int
) -> dict[str, Counter]:
    """Window co-occurrence counts for each target term, one count per slot.

    Uses the full symmetric window (no dynamic shrinking, no subsampling);
    this is the deterministic counting oracle for co-location prediction.
    """
    target_set = set(targets)
    out: dict[str, Counter] = {t: Counter() for t in target_set}
    for sentence in sentences:
        n = len(sentence)
        for i, tok in enumerate(sentence):
            if tok not in target_set:
                continue
            counter = out[tok]
            lo = max(0, i - window)
            hi = min(n - 1, i + window)
            for j in range(lo, hi + 1):
                if j != i:
                    counter[sentence[j]] += 1
    return out


def predict_colocated(
    model: EmbeddingModel,
    keyword: str,
    candidate_pool: Iterable[str],
    mode: str = "model",
    sentences: Iterable[list[str]] | None = None,
    cooc: dict[str, Counter] | None = None,
) -> tuple[str, float]:
    """Most probable companion of `keyword` among `candidate_pool`.

    mode="model" scores softmax(v_keyword . u_candidate) over the pool;
    mode="counts" uses raw window co-occurrence, normalized over the pool
    (requires `sentences` or a precomputed `cooc` table). Ties break toward
    the pool's first candidate in the order used (vocab order for model mode,
    lexicographic for counts mode).
    """
    kw_idx = model._index_of(keyword)
    pool = [c for c in dict.fromkeys(candidate_pool) if c != keyword]
    for c in pool:
        if c not in model.vocab:
            raise OutOfVocabulary(c)
    if not pool:
        raise EmptyCandidatePool(keyword)

    if mode == "model":
        ids = sorted(model.vocab.index[c] for c in pool)
        scores = model.w_out[ids] @ model.w_in[kw_idx]
        scores = scores - scores.max()
        probs = np.exp(scores)
        probs /= probs.sum()
        best = int(np.argmax(probs))
        return model.vocab.terms[ids[best]], float(probs[best])
    if mode == "counts":
        if cooc is None:
            if sentences is None:
                raise ValueError("counts mode needs `sentences` or a `cooc` table")
            cooc = cooccurrence_counts(sentences, [keyword], window=5)
        counter = cooc.get(keyword, Counter())
        ordered = sorted(pool)
        counts = [counter.get(c, 0) for c in ordered]
        total = sum(counts)
        best = int(np.argmax(counts)) if counts else 0
        weight = counts[best] / total if total else 0.0
        return ordered[best], weight
    raise ValueError(f"unknown mode: {mode!r}")


def suggest(
    model: EmbeddingModel,
    prompt_tokens: list[str],
    k: int,
    candidate_pool: Iterable[str] | None = None,
    category_lexicon=None,
) -> list[tuple[str, float, str]]:
    """Rank completion candidates for a prompt.

    In-vocab prompt tokens are averaged (input vectors) and candidates ranked
    by cosine against the mean; terms already in the prompt are excluded. When
    no prompt token is in vocabulary the ranking falls back to global
    frequency, scored by each term's corpus frequency fraction.
    """
    from ..analytics import classify_term  # local import: analytics is a leaf here

    exclude = set(prompt_tokens)
    if candidate_pool is None:
        pool_ids = [i for i, t in enumerate(model.vocab.terms) if t not in exclude]
    else:
        seen = dict.fromkeys(candidate_pool)
        pool_ids = sorted(
            model.vocab.index[c] for c in seen if c in model.vocab and c not in exclude
        )
    if not pool_ids:
        return []

    def category(term: str) -> str:
        return classify_term(term, category_lexicon) if category_lexicon else "unknown"

    in_vocab = [model.vocab.index[t] for t in prompt_tokens if t in model.vocab]
    if not in_vocab:
        total = max(model.vocab.total_tokens, 1)
        ranked = pool_ids[:k]  # vocab order is descending frequency
        return [
            (model.vocab.terms[i], float(model.vocab.counts[i]) / total, category(model.vocab.terms[i]))
            for i in ranked
        ]

    mean = model.w_in[in_vocab].mean(axis=0)
    norm = np.linalg.norm(mean)
    if norm == 0:
        mean_unit = mean
    else:
        mean_unit = mean / norm
    pool_arr = np.asarray(pool_ids, dtype=np.int64)
    sims = model.input_unit_vectors()[pool_arr] @ mean_unit
    k = min(k, len(pool_arr))
    top = np.argpartition(-sims, k - 1)[:k] if k < len(pool_arr) else np.arange(len(pool_arr))
    top = top[np.lexsort((pool_arr[top], -sims[top]))]
    return [
        (model.vocab.terms[pool_arr[i]], float(sims[i]), category(model.vocab.terms[pool_arr[i]]))
        for i in top
    ]


# -- persistence --------------------------------------------------------------

def save_model(model: EmbeddingModel, path, config=None) -> None:
    """Write the binary container plus a JSON metadata sidecar (`<path>.json`)."""
    V, d = model.w_in.shape
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<II", V, d))
        fh.write(struct.pack("<Q", model.vocab.total_tokens))
        for term, count in zip(model.vocab.terms, model.vocab.counts):
            data = term.encode("utf-8")
            fh.write(struct.pack("<I", len(data)))
            fh.write(data)
            fh.write(struct.pack("<Q", int(count)))
        fh.write(np.ascontiguousarray(model.w_in, dtype="<f4").tobytes())
        fh.write(np.ascontiguousarray(model.w_out, dtype="<f4").tobytes())
    meta = {
        "format": _MAGIC.decode(),
        "vocab_size": V,
        "dim": d,
        "loss_history": model.loss_history,
    }
    if config is not None:
        meta["config"] = config if isinstance(config, dict) else config.to_dict()
    with open(str(path) + ".json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_model(path) -> EmbeddingModel:
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != _MAGIC:
            raise ValueError(f"not a model file (magic {magic!r})")
        V, d = struct.unpack("<II", fh.read(8))
        (total_tokens,) = struct.unpack("<Q", fh.read(8))
        terms: list[str] = []
        counts = np.empty(V, dtype=np.int64)
        for i in range(V):
            (n,) = struct.unpack("<I", fh.read(4))
            terms.append(fh.read(n).decode("utf-8"))
            (counts[i],) = struct.unpack("<Q", fh.read(8))
        w_in = np.frombuffer(fh.read(V * d * 4), dtype="<f4").reshape(V, d).copy()
        w_out = np.frombuffer(fh.read(V * d * 4), dtype="<f4").reshape(V, d).copy()
    vocab = Vocab(terms=terms, counts=counts, total_tokens=int(total_tokens))
    model = EmbeddingModel(vocab=vocab, w_in=w_in, w_out=w_out)
    meta = load_model_meta(path)
    if meta:
        model.loss_history = list(meta.get("loss_history", []))
    return model


def load_model_meta(path) -> dict:
    try:
        with open(str(path) + ".json", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        return {}
