"""Exception types shared across the toolkit."""


class PromptMinerError(Exception):
    """Base class for all toolkit errors."""


# -- prompt parsing ----------------------------------------------------------

class EmptyPrompt(PromptMinerError):
    """Prompt has no content tokens left after URL/parameter extraction."""


class MalformedWeight(PromptMinerError):
    """A `::` separator is followed by a run that is not a decimal weight."""


# -- corpus ------------------------------------------------------------------

class FileUnreadable(PromptMinerError):
    """Input file is missing or cannot be opened."""


class UnknownAction(PromptMinerError):
    """Record carries an action kind outside the known set."""


class MissingField(PromptMinerError):
    """Record lacks a required field or has an invalid value."""


class EmptyCorpus(PromptMinerError):
    """Operation requires a non-empty corpus."""


# -- embedding ---------------------------------------------------------------

class EmptyVocab(PromptMinerError):
    """No term survives the min-count threshold."""


class OutOfVocabulary(PromptMinerError):
    """Requested term is not in the model vocabulary."""


class EmptyCandidatePool(PromptMinerError):
    """Prediction was asked to rank an empty candidate pool."""


class NonFiniteUpdate(PromptMinerError):
    """Training produced NaN/Inf values in a vector table."""


# -- analytics ---------------------------------------------------------------

class OverlappingLexicon(PromptMinerError):
    """Category lexicon sets are not pairwise disjoint."""


class UnwritablePath(PromptMinerError):
    """Report output location cannot be written."""
