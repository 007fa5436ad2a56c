"""Negative-sampling distribution and frequent-word subsampling."""

from __future__ import annotations

import numpy as np

__all__ = ["unigram_cdf", "NegativeSampler", "subsample_keep_probs"]


def unigram_cdf(counts: np.ndarray, power: float = 0.75) -> np.ndarray:
    """Cumulative distribution over terms proportional to count**power."""
    weights = np.asarray(counts, dtype=np.float64) ** power
    cdf = np.cumsum(weights)
    cdf /= cdf[-1]
    cdf[-1] = 1.0
    return cdf


class NegativeSampler:
    """Draws term indices with probability proportional to count**0.75."""

    def __init__(self, counts, power: float = 0.75, seed: int = 0):
        self.cdf = unigram_cdf(np.asarray(counts), power)
        self._rng = np.random.default_rng(seed)

    @property
    def probabilities(self) -> np.ndarray:
        return np.diff(self.cdf, prepend=0.0)

    def draw(self, n: int) -> np.ndarray:
        """Sample `n` indices; exact inverse-CDF sampling."""
        return np.searchsorted(self.cdf, self._rng.random(n), side="right").astype(np.int64)


def subsample_keep_probs(counts: np.ndarray, total_tokens: int, t: float) -> np.ndarray:
    """Per-term keep probability sqrt(t / f); discard prob is 1 - sqrt(t / f).

    `t <= 0` disables subsampling (all ones).
    """
    counts = np.asarray(counts, dtype=np.float64)
    if t <= 0:
        return np.ones_like(counts)
    freq = counts / float(total_tokens)
    return np.minimum(1.0, np.sqrt(t / freq))
