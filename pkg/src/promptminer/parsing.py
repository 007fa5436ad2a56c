"""Prompt grammar: weighted `::` segments, `--name value` parameters, image URLs.

Grammar accepted by :func:`parse`::

    [url ...] tokens [::weight] [tokens [::weight] ...] [--name [value ...] ...]

Absolute URLs are image references and only recognized at the prompt start.
The first token beginning with ``--`` switches the remainder of the prompt
into parameter space. ``term::W`` closes the segment ending at that point and
binds weight ``W`` to it; a bare ``::`` closes the segment at the default
weight 1. Weights may be negative or fractional.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from importlib import resources

from .errors import EmptyPrompt, MalformedWeight

__all__ = [
    "Parameter",
    "PromptSegment",
    "ParsedPrompt",
    "tokenize",
    "parse",
    "normalize",
    "load_stopwords",
    "default_stopwords",
]

# Punctuation is stripped from tokens except hyphens/apostrophes between word
# characters; surviving hyphens then split the token.
_PUNCT_RE = re.compile(r"[^\w\s'-]|_")
_EDGE_RE = re.compile(r"(?<!\w)['-]|['-](?!\w)")
_URL_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*://\S+$")
_WEIGHT_RE = re.compile(r"-?(?:\d+(?:\.\d*)?|\.\d+)")
_NONSPACE_RE = re.compile(r"\S+")

_ONE = Decimal(1)


def tokenize(text: str) -> list[str]:
    """Lowercase and split `text` into plain tokens.

    Punctuation is removed, keeping hyphens and apostrophes only between word
    characters; kept hyphens then act as token separators ("living-room" ->
    ["living", "room"]). Token order is preserved; empty input gives [].
    """
    cleaned = _PUNCT_RE.sub("", text.lower())
    cleaned = _EDGE_RE.sub("", cleaned)
    return cleaned.replace("-", " ").split()


def normalize(tokens: list[str], stopwords: frozenset[str] | set[str]) -> list[str]:
    """Drop stopword tokens, preserving order and duplicates."""
    return [t for t in tokens if t not in stopwords]


@dataclass(frozen=True)
class Parameter:
    """One `--name value` parameter; value is empty for flag-style use."""

    name: str
    value: str = ""


@dataclass(frozen=True)
class PromptSegment:
    """A `::`-delimited run of content tokens with its weight."""

    tokens: tuple[str, ...]
    weight: Decimal = _ONE


@dataclass(frozen=True)
class ParsedPrompt:
    segments: tuple[PromptSegment, ...]
    parameters: tuple[Parameter, ...] = ()
    image_refs: tuple[str, ...] = ()

    def content_tokens(self) -> list[str]:
        """All segment tokens in prompt order, weights ignored."""
        out: list[str] = []
        for seg in self.segments:
            out.extend(seg.tokens)
        return out

    def to_text(self) -> str:
        """Render back to prompt text; parse(to_text()) reproduces self."""
        parts: list[str] = list(self.image_refs)
        last = len(self.segments) - 1
        for i, seg in enumerate(self.segments):
            toks = " ".join(seg.tokens)
            if seg.weight == _ONE:
                parts.append(toks if i == last else f"{toks} ::")
            else:
                parts.append(f"{toks} ::{seg.weight}")
        for p in self.parameters:
            parts.append(f"--{p.name}" if not p.value else f"--{p.name} {p.value}")
        return " ".join(parts)

    def to_dict(self) -> dict:
        return {
            "segments": [
                {"tokens": list(s.tokens), "weight": str(s.weight)} for s in self.segments
            ],
            "parameters": [{"name": p.name, "value": p.value} for p in self.parameters],
            "image_refs": list(self.image_refs),
        }


def _is_url(token: str) -> bool:
    return _URL_RE.match(token) is not None


def _is_param_intro(token: str) -> bool:
    return token.startswith("--") and token.lstrip("-") != ""


def _split_segments(body: str) -> list[PromptSegment]:
    segments: list[PromptSegment] = []
    pos = 0
    while True:
        idx = body.find("::", pos)
        if idx == -1:
            chunk, weight = body[pos:], _ONE
            pos = len(body)
        else:
            chunk = body[pos:idx]
            after = idx + 2
            m = _NONSPACE_RE.match(body, after)
            if m is None:
                weight, pos = _ONE, after
            else:
                run = m.group(0)
                if _WEIGHT_RE.fullmatch(run) is None:
                    raise MalformedWeight(f"bad weight after '::': {run!r}")
                try:
                    weight = Decimal(run)
                except InvalidOperation:  # pragma: no cover - regex forbids this
                    raise MalformedWeight(f"bad weight after '::': {run!r}") from None
                pos = after + len(run)
        tokens = tokenize(chunk)
        if tokens:
            segments.append(PromptSegment(tokens=tuple(tokens), weight=weight))
        if pos >= len(body):
            return segments


def parse(text: str) -> ParsedPrompt:
    """Parse raw prompt text into segments, parameters, and image references.

    Raises EmptyPrompt when no content tokens remain after URL/parameter
    extraction, and MalformedWeight for a non-numeric run after `::`.
    """
    raw = text.split()
    i = 0
    image_refs: list[str] = []
    while i < len(raw) and _is_url(raw[i]):
        image_refs.append(raw[i])
        i += 1

    body_tokens: list[str] = []
    while i < len(raw) and not _is_param_intro(raw[i]):
        body_tokens.append(raw[i])
        i += 1

    parameters: list[Parameter] = []
    while i < len(raw):
        name = raw[i].lstrip("-").lower()
        i += 1
        value_tokens: list[str] = []
        while i < len(raw) and not _is_param_intro(raw[i]):
            value_tokens.append(raw[i])
            i += 1
        parameters.append(Parameter(name=name, value=" ".join(value_tokens)))

    segments = _split_segments(" ".join(body_tokens))
    if not segments:
        raise EmptyPrompt("no content tokens after URL/parameter extraction")
    return ParsedPrompt(
        segments=tuple(segments),
        parameters=tuple(parameters),
        image_refs=tuple(image_refs),
    )


def load_stopwords(path) -> frozenset[str]:
    """Read a stopword file: one term per line, `#` comments, UTF-8."""
    terms: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            term = line.split("#", 1)[0].strip().lower()
            if term:
                terms.add(term)
    return frozenset(terms)


_DEFAULT_STOPWORDS: frozenset[str] | None = None


def default_stopwords() -> frozenset[str]:
    """The bundled English stopword list (~170 terms)."""
    global _DEFAULT_STOPWORDS
    if _DEFAULT_STOPWORDS is None:
        text = resources.files("promptminer.data").joinpath("stopwords.txt").read_text("utf-8")
        terms = {
            t for line in text.splitlines() if (t := line.split("#", 1)[0].strip().lower())
        }
        _DEFAULT_STOPWORDS = frozenset(terms)
    return _DEFAULT_STOPWORDS
