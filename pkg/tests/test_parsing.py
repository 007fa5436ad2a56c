import random
from decimal import Decimal

import pytest

from promptminer.errors import EmptyPrompt, MalformedWeight
from promptminer.parsing import (
    ParsedPrompt,
    default_stopwords,
    load_stopwords,
    normalize,
    parse,
    tokenize,
)


def seg(parsed: ParsedPrompt):
    return [(list(s.tokens), str(s.weight)) for s in parsed.segments]


def params(parsed: ParsedPrompt):
    return [(p.name, p.value) for p in parsed.parameters]


class TestTokenize:
    def test_hyphen_splits_and_punctuation_strips(self):
        assert tokenize("Cozy Living-Room!") == ["cozy", "living", "room"]

    def test_comma_separated(self):
        assert tokenize("photo, sunlight") == ["photo", "sunlight"]

    def test_empty(self):
        assert tokenize("") == []

    def test_intra_apostrophe_kept(self):
        assert tokenize("architect's dream") == ["architect's", "dream"]

    def test_edge_apostrophes_stripped(self):
        assert tokenize("'quoted' words'") == ["quoted", "words"]

    def test_punctuation_inside_token_is_stripped_not_split(self):
        assert tokenize("16:9 u.s.a") == ["169", "usa"]

    def test_double_hyphen_collapses(self):
        assert tokenize("a--b") == ["ab"]

    def test_order_preserved(self):
        assert tokenize("zeta alpha zeta") == ["zeta", "alpha", "zeta"]

    def test_unicode_words_survive(self):
        assert tokenize("café münchen") == ["café", "münchen"]


# 30+ golden fixtures: (text, expected segments, parameters, image_refs)
GOLDEN = [
    ("house", [(["house"], "1")], [], []),
    ("modern house garden", [(["modern", "house", "garden"], "1")], [], []),
    (
        "cozy living room, wood paneling, television, large sofa, natural light, "
        "lived in, realistic, full view",
        [
            (
                "cozy living room wood paneling television large sofa natural light "
                "lived in realistic full view".split(),
                "1",
            )
        ],
        [],
        [],
    ),
    (
        "interior::2 garden::1 --ar 16:9",
        [(["interior"], "2"), (["garden"], "1")],
        [("ar", "16:9")],
        [],
    ),
    ("interior::2 garden", [(["interior"], "2"), (["garden"], "1")], [], []),
    ("a::-1 b", [(["a"], "-1"), (["b"], "1")], [], []),
    ("sofa::2.5 lamp::0.5", [(["sofa"], "2.5"), (["lamp"], "0.5")], [], []),
    ("glow::.5 dim", [(["glow"], "0.5"), (["dim"], "1")], [], []),
    ("left :: right", [(["left"], "1"), (["right"], "1")], [], []),
    ("tail::", [(["tail"], "1")], [], []),
    ("num::2. next", [(["num"], "2"), (["next"], "1")], [], []),
    ("a:: 2", [(["a"], "1"), (["2"], "1")], [], []),
    ("::5 house", [(["house"], "1")], [], []),
    ("wide shot::10", [(["wide", "shot"], "10")], [], []),
    (
        "https://img.host/a.png modern facade",
        [(["modern", "facade"], "1")],
        [],
        ["https://img.host/a.png"],
    ),
    (
        "https://a.io/x.jpg https://b.io/y.jpg blended towers",
        [(["blended", "towers"], "1")],
        [],
        ["https://a.io/x.jpg", "https://b.io/y.jpg"],
    ),
    (
        "modern https://x.com/a house",
        [(["modern", "httpsxcoma", "house"], "1")],
        [],
        [],
    ),
    ("brick wall --tile", [(["brick", "wall"], "1")], [("tile", "")], []),
    (
        "night city --style raw photo",
        [(["night", "city"], "1")],
        [("style", "raw photo")],
        [],
    ),
    (
        "atrium --ar 16:9 --q 2",
        [(["atrium"], "1")],
        [("ar", "16:9"), ("q", "2")],
        [],
    ),
    ("courtyard --AR 16:9", [(["courtyard"], "1")], [("ar", "16:9")], []),
    ("tower ---v 4", [(["tower"], "1")], [("v", "4")], []),
    ("a -- b", [(["a", "b"], "1")], [], []),
    ("Cozy Living-Room!", [(["cozy", "living", "room"], "1")], [], []),
    ("sun-lit mid-century den", [(["sun", "lit", "mid", "century", "den"], "1")], [], []),
    ("INTERIOR Design", [(["interior", "design"], "1")], [], []),
    ("café münchen", [(["café", "münchen"], "1")], [], []),
    (
        "hall::3 --seed 7 extra words",
        [(["hall"], "3")],
        [("seed", "7 extra words")],
        [],
    ),
    (
        "https://i.io/p.png interior::2 pool::0.5 --ar 4:5 --tile",
        [(["interior"], "2"), (["pool"], "0.5")],
        [("ar", "4:5"), ("tile", "")],
        ["https://i.io/p.png"],
    ),
    ("one:: two:: three", [(["one"], "1"), (["two"], "1"), (["three"], "1")], [], []),
    ("deep atrium, glass roof!::7", [(["deep", "atrium", "glass", "roof"], "7")], [], []),
    ("park (aerial view)", [(["park", "aerial", "view"], "1")], [], []),
]


@pytest.mark.parametrize("text,segments,parameters,urls", GOLDEN, ids=range(len(GOLDEN)))
def test_golden_parse(text, segments, parameters, urls):
    parsed = parse(text)
    assert seg(parsed) == segments
    assert params(parsed) == parameters
    assert list(parsed.image_refs) == urls


@pytest.mark.parametrize(
    "text",
    ["", "   ", "!!! ???", "https://img.host/a.png", "--ar 16:9", "https://a.io/x --tile"],
)
def test_empty_prompt_errors(text):
    with pytest.raises(EmptyPrompt):
        parse(text)


@pytest.mark.parametrize("text", ["room::fast", "a::2x", "a::2::3", "a::--3", "a::1.2.3"])
def test_malformed_weight_errors(text):
    with pytest.raises(MalformedWeight):
        parse(text)


def test_weight_text_round_trips_identically(self=None):
    for raw in ("2", "2.5", "-1", "0.5", "10", "2.50"):
        parsed = parse(f"beam::{raw} x")
        w = parsed.segments[0].weight
        assert Decimal(str(w)) == w


class TestNormalize:
    def test_stopwords_removed_content_kept(self):
        stop = default_stopwords()
        tokens = ["a", "drawing", "of", "a", "map", "of", "five", "buildings"]
        assert normalize(tokens, stop) == ["drawing", "map", "five", "buildings"]

    def test_empty(self):
        assert normalize([], default_stopwords()) == []

    def test_all_stopwords(self):
        assert normalize(["the", "of", "a"], default_stopwords()) == []

    def test_idempotent(self):
        stop = default_stopwords()
        tokens = tokenize("a tall building of glass and the steel")
        once = normalize(tokens, stop)
        assert normalize(once, stop) == once

    def test_duplicates_retained(self):
        assert normalize(["glass", "glass"], default_stopwords()) == ["glass", "glass"]


def test_stopword_file_loading(tmp_path):
    path = tmp_path / "stop.txt"
    path.write_text("# comment\nfoo\nBAR  \n\nbaz # trailing\n", encoding="utf-8")
    assert load_stopwords(path) == {"foo", "bar", "baz"}


def test_default_stopword_list_size():
    n = len(default_stopwords())
    assert 150 <= n <= 200


# -- fuzzed round trip ----------------------------------------------------------

WORDS = [
    "atrium", "brick", "cozy", "dome", "eaves", "facade", "glass", "house",
    "ivy", "loft", "marble", "niche", "oak", "plaza", "quay", "roof", "steel",
    "tower", "urban", "vault", "walnut", "x9", "yard", "zinc", "16", "render",
]
DECOR = ["", "", "", ",", "!", ".", "...", ")", "("]
WEIGHTS = [None, None, None, "2", "0.5", "-1", "3.25", "10", "0.125"]


def fuzz_prompt(rng: random.Random):
    parts, expected_tokens = [], []
    urls = [f"https://img.example/{rng.randrange(1000)}.png" for _ in range(rng.choice([0, 0, 0, 1, 2]))]
    parts.extend(urls)
    n_seg = rng.randint(1, 4)
    seg_expect = []
    for si in range(n_seg):
        toks = rng.choices(WORDS, k=rng.randint(1, 6))
        expected_tokens.extend(toks)
        text = " ".join(
            rng.choice(DECOR) + t + rng.choice(DECOR) if rng.random() < 0.3 else t for t in toks
        )
        weight = rng.choice(WEIGHTS)
        last = si == n_seg - 1
        if weight is None:
            parts.append(text if last else text + " ::")
            seg_expect.append((toks, "1"))
        else:
            parts.append(f"{text}::{weight}" if rng.random() < 0.5 else f"{text} ::{weight}")
            seg_expect.append((toks, str(Decimal(weight))))
    for _ in range(rng.choice([0, 0, 0, 1, 2])):
        name = rng.choice(["ar", "q", "tile", "style", "seed"])
        value = rng.choice(["", "16:9", "raw photo", "2", "a::b"])
        parts.append(f"--{name} {value}".rstrip())
    return " ".join(parts), seg_expect, urls


def run_roundtrip_fuzz(n: int, seed: int = 2024):
    rng = random.Random(seed)
    for _ in range(n):
        text, seg_expect, urls = fuzz_prompt(rng)
        parsed = parse(text)
        # token conservation: every planted content token lands in its segment
        assert seg(parsed) == seg_expect
        assert list(parsed.image_refs) == urls
        assert parse(parsed.to_text()) == parsed


def test_roundtrip_fuzz_small():
    run_roundtrip_fuzz(2000)
