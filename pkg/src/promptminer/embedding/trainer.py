"""Skip-gram negative-sampling training over normalized queries.

Each query is one sentence; context windows never cross sentence boundaries.
Deterministic mode runs a single sequential pass (bit-identical for a fixed
seed). Performance mode shards sentences across threads that update the
shared tables without synchronization, so results vary run to run but stay
within the model's statistical invariants.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

import numpy as np
from numba import njit

from ..errors import NonFiniteUpdate
from .model import EmbeddingModel
from .sampling import subsample_keep_probs, unigram_cdf
from .vocab import Vocab, build_vocab

__all__ = ["TrainConfig", "train", "encode_sentences", "init_tables"]


@dataclass
class TrainConfig:
    dim: int = 100
    window: int = 5
    negatives: int = 5
    epochs: int = 5
    lr_start: float = 0.025
    lr_end: float = 1e-4
    min_count: int = 5
    subsample_t: float = 1e-4
    seed: int = 1
    deterministic: bool = True
    threads: int = 1

    def __post_init__(self):
        if self.dim < 1 or self.window < 1 or self.negatives < 1:
            raise ValueError("dim, window, and negatives must all be >= 1")
        if not (self.lr_start > self.lr_end > 0):
            raise ValueError("need lr_start > lr_end > 0")
        if self.epochs < 0 or self.min_count < 1 or self.threads < 1:
            raise ValueError("epochs >= 0, min_count >= 1, threads >= 1")
        if self.deterministic and self.threads != 1:
            raise ValueError("deterministic training is single-threaded")

    def to_dict(self) -> dict:
        return asdict(self)


_U64 = np.uint64
_GAMMA = _U64(0x9E3779B97F4A7C15)
_MIX1 = _U64(0xBF58476D1CE4E5B9)
_MIX2 = _U64(0x94D049BB133111EB)
_S30, _S27, _S31, _S11 = _U64(30), _U64(27), _U64(31), _U64(11)
_INV53 = 1.0 / 9007199254740992.0  # 2**-53


@njit(nogil=True, cache=True)
def _sgns_shard(
    tokens,
    offsets,
    s_begin,
    s_end,
    w_in,
    w_out,
    neg_cdf,
    keep_prob,
    window,
    negatives,
    lr_start,
    lr_end,
    done_offset,
    total_units,
    seed,
):
    """Sequential SGD over sentences [s_begin, s_end); returns (loss_sum, pairs)."""
    d = w_in.shape[1]
    n_vocab = neg_cdf.shape[0]
    state = seed  # splitmix64
    max_len = 0
    for s in range(s_begin, s_end):
        length = offsets[s + 1] - offsets[s]
        if length > max_len:
            max_len = length
    kept = np.empty(max_len if max_len > 0 else 1, np.int32)
    neu = np.empty(d, np.float32)
    loss_sum = 0.0
    pairs = 0

    for s in range(s_begin, s_end):
        progress = np.float64(done_offset + (s - s_begin)) / np.float64(total_units)
        lr = lr_start - (lr_start - lr_end) * progress
        if lr < lr_end:
            lr = lr_end

        m = 0
        for ix in range(offsets[s], offsets[s + 1]):
            w = tokens[ix]
            if keep_prob[w] >= 1.0:
                kept[m] = w
                m += 1
            else:
                state = state + _GAMMA
                z = state
                z = (z ^ (z >> _S30)) * _MIX1
                z = (z ^ (z >> _S27)) * _MIX2
                z = z ^ (z >> _S31)
                if np.float64(z >> _S11) * _INV53 < keep_prob[w]:
                    kept[m] = w
                    m += 1

        for i in range(m):
            c = kept[i]
            state = state + _GAMMA
            z = state
            z = (z ^ (z >> _S30)) * _MIX1
            z = (z ^ (z >> _S27)) * _MIX2
            z = z ^ (z >> _S31)
            b = 1 + np.int64(z % _U64(window))
            lo = i - b
            if lo < 0:
                lo = 0
            hi = i + b
            if hi > m - 1:
                hi = m - 1

            for j in range(lo, hi + 1):
                if j == i:
                    continue
                o = kept[j]
                for e in range(d):
                    neu[e] = np.float32(0.0)

                for t in range(negatives + 1):
                    if t == 0:
                        target = np.int64(o)
                        label = 1.0
                    else:
                        state = state + _GAMMA
                        z = state
                        z = (z ^ (z >> _S30)) * _MIX1
                        z = (z ^ (z >> _S27)) * _MIX2
                        z = z ^ (z >> _S31)
                        r = np.float64(z >> _S11) * _INV53
                        a = 0
                        bb = n_vocab
                        while a < bb:
                            mid = (a + bb) // 2
                            if neg_cdf[mid] > r:
                                bb = mid
                            else:
                                a = mid + 1
                        target = np.int64(a)
                        if target == o:
                            continue
                        label = 0.0

                    sdot = 0.0
                    for e in range(d):
                        sdot += np.float64(w_in[c, e]) * np.float64(w_out[target, e])
                    f = 1.0 / (1.0 + np.exp(-sdot))
                    # loss: softplus(-s) for the positive, softplus(s) for negatives
                    x = -sdot if label == 1.0 else sdot
                    if x > 0.0:
                        loss_sum += x + np.log1p(np.exp(-x))
                    else:
                        loss_sum += np.log1p(np.exp(x))
                    g = np.float32((label - f) * lr)
                    for e in range(d):
                        neu[e] += g * w_out[target, e]
                        w_out[target, e] += g * w_in[c, e]

                for e in range(d):
                    w_in[c, e] += neu[e]
                pairs += 1

    return loss_sum, pairs


def encode_sentences(sentences: Iterable[list[str]], vocab: Vocab) -> tuple[np.ndarray, np.ndarray]:
    """Flatten sentences into id arrays, dropping out-of-vocabulary tokens."""
    ids: list[int] = []
    offsets: list[int] = [0]
    index = vocab.index
    for sentence in sentences:
        row = [index[t] for t in sentence if t in index]
        if row:
            ids.extend(row)
            offsets.append(len(ids))
    return np.asarray(ids, dtype=np.int32), np.asarray(offsets, dtype=np.int64)


def init_tables(vocab_size: int, dim: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Input table uniform in [-0.5/d, 0.5/d]; output table zeros."""
    rng = np.random.default_rng(seed)
    w_in = ((rng.random((vocab_size, dim)) - 0.5) / dim).astype(np.float32)
    w_out = np.zeros((vocab_size, dim), dtype=np.float32)
    return w_in, w_out


def _shard_bounds(n_sentences: int, shards: int) -> list[tuple[int, int]]:
    step = (n_sentences + shards - 1) // shards
    return [(lo, min(lo + step, n_sentences)) for lo in range(0, n_sentences, step)]


def train(sentences: Sequence[list[str]], config: TrainConfig) -> EmbeddingModel:
    """Train an SGNS model; sentences are lists of normalized content tokens."""
    vocab = build_vocab(sentences, config.min_count)
    tokens, offsets = encode_sentences(sentences, vocab)
    n_sentences = len(offsets) - 1
    w_in, w_out = init_tables(len(vocab), config.dim, config.seed)
    model = EmbeddingModel(vocab=vocab, w_in=w_in, w_out=w_out)
    if config.epochs == 0 or n_sentences == 0:
        return model

    neg_cdf = unigram_cdf(vocab.counts)
    keep_prob = subsample_keep_probs(vocab.counts, vocab.total_tokens, config.subsample_t)
    total_units = max(1, config.epochs * n_sentences)

    for epoch in range(config.epochs):
        loss_sum = 0.0
        pair_count = 0
        if config.deterministic or config.threads == 1:
            seed = _U64((config.seed * 2654435761 + epoch + 1) & 0xFFFFFFFFFFFFFFFF)
            loss_sum, pair_count = _sgns_shard(
                tokens, offsets, 0, n_sentences, w_in, w_out, neg_cdf, keep_prob,
                config.window, config.negatives, config.lr_start, config.lr_end,
                epoch * n_sentences, total_units, seed,
            )
        else:
            bounds = _shard_bounds(n_sentences, config.threads)
            with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
                futures = [
                    pool.submit(
                        _sgns_shard,
                        tokens, offsets, lo, hi, w_in, w_out, neg_cdf, keep_prob,
                        config.window, config.negatives, config.lr_start, config.lr_end,
                        epoch * n_sentences + lo, total_units,
                        _U64((config.seed * 2654435761 + epoch * 8191 + k + 1) & 0xFFFFFFFFFFFFFFFF),
                    )
                    for k, (lo, hi) in enumerate(bounds)
                ]
                for fut in futures:
                    shard_loss, shard_pairs = fut.result()
                    loss_sum += shard_loss
                    pair_count += shard_pairs
        if not (np.isfinite(w_in).all() and np.isfinite(w_out).all()):
            raise NonFiniteUpdate(f"non-finite values after epoch {epoch}")
        model.loss_history.append(loss_sum / pair_count if pair_count else 0.0)
        model.pairs_trained += pair_count
    return model
