from .gradients import log_sigmoid, pair_gradients, pair_loss
from .model import (
    EmbeddingModel,
    cooccurrence_counts,
    load_model,
    load_model_meta,
    nearest,
    predict_colocated,
    save_model,
    suggest,
)
from .sampling import NegativeSampler, subsample_keep_probs, unigram_cdf
from .trainer import TrainConfig, encode_sentences, init_tables, train
from .vocab import Vocab, build_vocab

__all__ = [
    "EmbeddingModel",
    "NegativeSampler",
    "TrainConfig",
    "Vocab",
    "build_vocab",
    "cooccurrence_counts",
    "encode_sentences",
    "init_tables",
    "load_model",
    "load_model_meta",
    "log_sigmoid",
    "nearest",
    "pair_gradients",
    "pair_loss",
    "predict_colocated",
    "save_model",
    "subsample_keep_probs",
    "suggest",
    "train",
    "unigram_cdf",
]
