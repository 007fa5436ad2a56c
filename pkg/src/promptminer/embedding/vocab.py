"""Vocabulary construction for embedding training."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..errors import EmptyVocab

__all__ = ["Vocab", "build_vocab"]


@dataclass
class Vocab:
    """Retained terms in dense index order (descending count, ties lexicographic)."""

    terms: list[str]
    counts: np.ndarray
    total_tokens: int
    index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {t: i for i, t in enumerate(self.terms)}

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index


def build_vocab(sentences: Iterable[list[str]], min_count: int = 5) -> Vocab:
    """Count tokens across sentences and keep terms with count >= min_count."""
    counter: Counter[str] = Counter()
    total = 0
    for sentence in sentences:
        counter.update(sentence)
        total += len(sentence)
    kept = sorted(
        ((term, n) for term, n in counter.items() if n >= min_count),
        key=lambda item: (-item[1], item[0]),
    )
    if not kept:
        raise EmptyVocab(f"no term reaches min_count={min_count}")
    terms = [t for t, _ in kept]
    counts = np.array([n for _, n in kept], dtype=np.int64)
    return Vocab(terms=terms, counts=counts, total_tokens=total)
