"""Seeded synthetic-corpus generator with planted, exactly-tracked ground truth.

Records are built from disjoint token pools (filler, candidates, pair terms,
cluster words, category terms, anchors, architect names), so the membership
bookkeeping done at construction time is exact: the emitted truth sidecar is
the oracle for filter counts, keyword induction, frequencies, category mixes,
co-location partners, topic clusters, and iteration chains.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .analytics import default_categories
from .corpus import ActionKind
from .parsing import default_stopwords, tokenize

__all__ = [
    "KeywordPlant",
    "ArchitectPlant",
    "SessionPlant",
    "PairPlant",
    "SynonymPlant",
    "ClusterPlant",
    "FillerPlant",
    "SynthConfig",
    "generate",
    "generate_files",
    "write_corpus",
    "write_truth",
]

ANCHORS = ("architect", "interior", "exterior")

_EPOCH = 1_600_000_000
_SPAN = 120 * 86_400

_KINDS = [k.value for k in ActionKind]
_UPSCALES = ("upscale_light", "upscale_beta", "upscale_max")
_CHAIN_CLASSES = ("single", "draft_only", "upscaled", "remastered")

# Per-kind share of style tokens in filler queries; upscale and remaster
# queries are planted style-heavy (content/quality shares stay flat).
_STYLE_FRAC = {
    "draft": 0.08,
    "variant": 0.10,
    "upscale_light": 0.30,
    "upscale_beta": 0.30,
    "upscale_max": 0.28,
    "remaster": 0.34,
}
_CONTENT_FRAC = 0.15
_QUALITY_FRAC = 0.10

_ACTION_KINDS = ("draft", "variant", "upscale_light", "upscale_beta", "upscale_max", "remaster")
_ACTION_WEIGHTS = (0.55, 0.15, 0.08, 0.08, 0.06, 0.08)

_LENGTHS = {
    "draft": (8, 16),
    "variant": (8, 16),
    "upscale_light": (12, 22),
    "upscale_beta": (12, 22),
    "upscale_max": (12, 22),
    "remaster": (14, 24),
}


@dataclass
class KeywordPlant:
    """Candidates with exact anchor co-occurrence counts around the threshold."""

    n_keywords: int = 25
    n_distractors: int = 25
    min_occurrences: int = 60
    max_occurrences: int = 200
    include_boundary: bool = True


@dataclass
class ArchitectPlant:
    n_names: int = 10
    min_occurrences: int = 20
    max_occurrences: int = 120


@dataclass
class SessionPlant:
    n_chains: int = 200
    class_weights: tuple = (0.25, 0.30, 0.30, 0.15)  # single, draft_only, upscaled, remastered
    window_s: int = 1800
    include_boundary: bool = True


@dataclass
class PairPlant:
    n_pairs: int = 40
    occurrences: int = 300
    partner_rate: float = 0.9


@dataclass
class SynonymPlant:
    """Term pairs that share identical companion draws (never co-occur), so
    their input vectors converge; drives nearest/suggest companions."""

    pairs: tuple = (("interior", "apartment"),)
    occurrences: int = 800
    companion_pool: int = 12
    companions_per_query: int = 3


@dataclass
class ClusterPlant:
    n_clusters: int = 2
    words_per_cluster: int = 100
    n_tokens: int = 500_000
    min_len: int = 8
    max_len: int = 14


@dataclass
class FillerPlant:
    n_queries: int = 2000
    n_explicit: int = 0  # additional anchor-carrying queries


@dataclass
class SynthConfig:
    seed: int = 1
    threshold: float = 0.10
    filler: FillerPlant | None = field(default_factory=FillerPlant)
    keywords: KeywordPlant | None = None
    architects: ArchitectPlant | None = None
    sessions: SessionPlant | None = None
    pairs: PairPlant | None = None
    synonyms: SynonymPlant | None = None
    clusters: ClusterPlant | None = None
    target_total: int | None = None  # top up with filler queries to this size
    track_details: bool = True
    shuffle: bool = True


_DEFAULT_ARCHITECTS = [
    "zaha hadid",
    "frank lloyd wright",
    "tadao ando",
    "frank gehry",
    "kengo kuma",
    "peter zumthor",
    "antoni gaudi",
    "le corbusier",
    "norman foster",
    "renzo piano",
    "oscar niemeyer",
    "alvar aalto",
]


class _Builder:
    def __init__(self, config: SynthConfig):
        self.cfg = config
        self.rng = random.Random(config.seed)
        self.records: list[dict] = []
        self._next_id = 0
        self._next_user = 0

        cats = default_categories()
        self.style_pool = sorted(cats.style)
        self.content_pool = sorted(cats.content)
        self.quality_pool = sorted(cats.quality)
        self.filler_pool = [f"fil{i:03d}" for i in range(300)]
        self.extension_pool = self.filler_pool + self.content_pool
        self._category_of = {t: "style" for t in self.style_pool}
        self._category_of.update({t: "content" for t in self.content_pool})
        self._category_of.update({t: "quality" for t in self.quality_pool})
        self._check_pools()

        self.n_total = 0
        self.n_potential = 0
        self.n_explicit = 0
        self.n_architect = 0
        self.doc_freq: dict[str, list[int]] = {}
        self.cat_counts = {k: {"style": 0, "content": 0, "quality": 0, "unknown": 0} for k in _KINDS}
        self.len_sum = {k: 0 for k in _KINDS}
        self.kind_count = {k: 0 for k in _KINDS}

        # per-kind population + cumulative weights for fast mixed sampling
        self._pop: dict[str, tuple[list[str], list[float]]] = {}
        for kind in _KINDS:
            population: list[str] = []
            weights: list[float] = []
            for pool, frac in (
                (self.style_pool, _STYLE_FRAC[kind]),
                (self.content_pool, _CONTENT_FRAC),
                (self.quality_pool, _QUALITY_FRAC),
                (self.filler_pool, 1.0 - _STYLE_FRAC[kind] - _CONTENT_FRAC - _QUALITY_FRAC),
            ):
                population.extend(pool)
                weights.extend([frac / len(pool)] * len(pool))
            cum: list[float] = []
            acc = 0.0
            for w in weights:
                acc += w
                cum.append(acc)
            self._pop[kind] = (population, cum)

    def _check_pools(self) -> None:
        stop = default_stopwords()
        pools = set(self.filler_pool) | set(self._category_of)
        assert not pools & set(ANCHORS), "pool term collides with an anchor"
        assert not pools & stop, "pool term collides with a stopword"
        for term in pools | set(ANCHORS):
            assert tokenize(term) == [term], f"pool term not tokenize-stable: {term!r}"

    # -- record assembly -------------------------------------------------

    def add(
        self,
        tokens: list[str],
        action: str,
        user: str | None = None,
        ts: int | None = None,
        keyword: bool = False,
        architect: bool = False,
    ) -> str:
        rid = f"q{self._next_id:08d}"
        self._next_id += 1
        if user is None:
            user = f"u{self._next_user:06d}"
            self._next_user += 1
        if ts is None:
            ts = _EPOCH + self.rng.randrange(_SPAN)
        explicit = any(t in ANCHORS for t in tokens)
        potential = explicit or keyword or architect
        self.records.append(
            {"id": rid, "user": user, "ts": ts, "text": " ".join(tokens), "action": action}
        )

        self.n_total += 1
        self.n_potential += potential
        self.n_explicit += explicit
        self.n_architect += architect
        if self.cfg.track_details:
            self.len_sum[action] += len(tokens)
            self.kind_count[action] += 1
            cat = self.cat_counts[action]
            category_of = self._category_of
            for tok in tokens:
                cat[category_of.get(tok, "unknown")] += 1
            for tok in set(tokens):
                row = self.doc_freq.get(tok)
                if row is None:
                    row = self.doc_freq[tok] = [0, 0, 0]
                row[0] += 1
                if potential:
                    row[1] += 1
                if explicit:
                    row[2] += 1
        return rid

    def mixed_tokens(self, kind: str, n: int) -> list[str]:
        population, cum = self._pop[kind]
        return self.rng.choices(population, cum_weights=cum, k=n)

    # -- plants ----------------------------------------------------------

    def plant_filler(self, plant: FillerPlant) -> None:
        for extra_anchor in (False,) * plant.n_queries + (True,) * plant.n_explicit:
            action = self.rng.choices(_ACTION_KINDS, weights=_ACTION_WEIGHTS, k=1)[0]
            lo, hi = _LENGTHS[action]
            tokens = self.mixed_tokens(action, self.rng.randint(lo, hi))
            if extra_anchor:
                tokens.insert(self.rng.randrange(len(tokens) + 1), self.rng.choice(ANCHORS))
            self.add(tokens, action)

    def plant_keywords(self, plant: KeywordPlant) -> dict:
        # Exact integer bounds for co/n vs the threshold p/q: smallest kept
        # ratio is ceil(n*p/q)/n, largest dropped ratio is ((n*p - 1)//q)/n.
        thr = Fraction(str(self.cfg.threshold))
        p, q = thr.numerator, thr.denominator
        planted = [f"kw{i:02d}" for i in range(plant.n_keywords)]
        distractors = [f"dx{i:02d}" for i in range(plant.n_distractors)]
        stats: dict[str, dict] = {}
        for pos, term in enumerate(planted + distractors):
            is_keyword = pos < plant.n_keywords
            n = self.rng.randint(plant.min_occurrences, plant.max_occurrences)
            if is_keyword:
                if pos == 0 and plant.include_boundary:
                    n = max(n - n % q, q)  # q | n makes the ratio land exactly on the threshold
                    co = n * p // q
                else:
                    co_min = (n * p + q - 1) // q
                    co = self.rng.randint(min(co_min, n), n)
            elif pos == plant.n_keywords:
                co = 0  # first distractor never co-occurs with an anchor
            else:
                co = self.rng.randint(0, max((n * p - 1) // q, 0))
            for j in range(n):
                tokens = self.mixed_tokens("draft", self.rng.randint(5, 10))
                tokens.insert(self.rng.randrange(len(tokens) + 1), term)
                if j < co:
                    tokens.insert(self.rng.randrange(len(tokens) + 1), self.rng.choice(ANCHORS))
                self.add(tokens, "draft", keyword=is_keyword)
            stats[term] = {"n_candidate": n, "n_co": co}
        return {"planted": planted, "distractors": distractors, "stats": stats}

    def plant_architects(self, plant: ArchitectPlant) -> dict:
        names = _DEFAULT_ARCHITECTS[: plant.n_names]
        counts: dict[str, int] = {}
        for name in names:
            name_tokens = name.split()
            n = self.rng.randint(plant.min_occurrences, plant.max_occurrences)
            counts[name] = n
            for _ in range(n):
                tokens = self.mixed_tokens("draft", self.rng.randint(4, 9))
                at = self.rng.randrange(len(tokens) + 1)
                tokens[at:at] = name_tokens
                self.add(tokens, "draft", architect=True)
        return {"names": names, "counts": counts}

    def plant_pairs(self, plant: PairPlant) -> dict:
        pairs = {f"px{i:02d}": f"py{i:02d}" for i in range(plant.n_pairs)}
        for x, y in pairs.items():
            for _ in range(plant.occurrences):
                tokens = self.mixed_tokens("draft", self.rng.randint(4, 8))
                at = self.rng.randrange(len(tokens) + 1)
                if self.rng.random() < plant.partner_rate:
                    tokens[at:at] = [x, y]
                else:
                    tokens.insert(at, x)
                self.add(tokens, "draft")
        return {"partners": pairs}

    def plant_synonyms(self, plant: SynonymPlant) -> dict:
        for term, companion in plant.pairs:
            assert tokenize(term) == [term] and tokenize(companion) == [companion]
        for p, (x, y) in enumerate(plant.pairs):
            pool = [f"cp{p}{i:02d}" for i in range(plant.companion_pool)]
            for _ in range(plant.occurrences):
                companions = self.rng.choices(pool, k=plant.companions_per_query)
                self.add([x] + companions, "draft")
                self.add([y] + companions, "draft")
        return {"pairs": [list(pair) for pair in plant.pairs]}

    def plant_clusters(self, plant: ClusterPlant) -> dict:
        words = {
            f"c{c}w{i:02d}": c
            for c in range(plant.n_clusters)
            for i in range(plant.words_per_cluster)
        }
        by_cluster = [sorted(w for w, c in words.items() if c == cluster)
                      for cluster in range(plant.n_clusters)]
        emitted = 0
        while emitted < plant.n_tokens:
            cluster = by_cluster[self.rng.randrange(plant.n_clusters)]
            n = self.rng.randint(plant.min_len, plant.max_len)
            self.add(self.rng.choices(cluster, k=n), "draft")
            emitted += n
        return {"word_cluster": words, "n_clusters": plant.n_clusters}

    def plant_sessions(self, plant: SessionPlant) -> dict:
        chains: list[dict] = []
        user_clock: dict[str, int] = {}
        for i in range(plant.n_chains):
            # every 17th chain reuses the previous user, starting exactly one
            # second past the window, to exercise the split rule
            reuse = plant.include_boundary and i % 17 == 3 and chains
            if reuse:
                user = chains[-1]["user"]
                ts = user_clock[user] + plant.window_s + 1
            else:
                user = f"cu{i:05d}"
                ts = _EPOCH + self.rng.randrange(_SPAN)
            cls = self.rng.choices(_CHAIN_CLASSES, weights=plant.class_weights, k=1)[0]
            actions = self._chain_actions(cls)
            tokens = [self.rng.choice(self.filler_pool) for _ in range(self.rng.randint(4, 8))]
            record_ids = []
            for step, action in enumerate(actions):
                if step > 0:
                    if plant.include_boundary and i % 11 == 5 and step == 1:
                        gap = plant.window_s  # inclusive-boundary case
                    else:
                        gap = self.rng.randint(60, plant.window_s)
                    ts += gap
                    if action in _UPSCALES or action == "remaster":
                        tokens = tokens + self.rng.choices(self.style_pool, k=self.rng.randint(2, 4))
                    elif self.rng.random() < 0.4:
                        pass  # plain rerun of the same text
                    else:
                        tokens = tokens + [self.rng.choice(self.extension_pool)]
                record_ids.append(self.add(list(tokens), action, user=user, ts=ts))
            user_clock[user] = ts
            chains.append(
                {"user": user, "class": cls, "record_ids": record_ids, "actions": actions}
            )

        per_class: dict[str, dict] = {}
        for cls in _CHAIN_CLASSES:
            members = [c for c in chains if c["class"] == cls]
            steps_by_action = {k: 0 for k in _KINDS}
            total = 0
            for c in members:
                total += len(c["actions"])
                for action in c["actions"]:
                    steps_by_action[action] += 1
            count = len(members)
            per_class[cls] = {
                "chain_count": count,
                "mean_total_steps": total / count if count else 0.0,
                "mean_steps_by_action": {
                    k: (v / count if count else 0.0) for k, v in steps_by_action.items()
                },
            }
        for c in chains:
            del c["actions"]
        return {"chains": chains, "per_class": per_class, "window_s": plant.window_s}

    def _chain_actions(self, cls: str) -> list[str]:
        rng = self.rng
        if cls == "single":
            return [rng.choice(["draft", "draft", "draft", "variant"])]
        if cls == "draft_only":
            n = rng.randint(2, 8)
            return ["draft"] + [rng.choice(["draft", "variant"]) for _ in range(n - 1)]
        if cls == "upscaled":
            return ["draft"] * rng.randint(1, 6) + [
                rng.choice(_UPSCALES) for _ in range(rng.randint(1, 3))
            ]
        return (
            ["draft"] * rng.randint(1, 4)
            + ["remaster"] * rng.randint(1, 4)
            + [rng.choice(_UPSCALES) for _ in range(rng.randint(0, 3))]
        )


def generate(config: SynthConfig) -> tuple[list[dict], dict]:
    """Build records and their ground-truth sidecar."""
    builder = _Builder(config)
    truth: dict = {"seed": config.seed, "threshold": config.threshold}
    if config.keywords:
        truth["keywords"] = builder.plant_keywords(config.keywords)
    if config.architects:
        truth["architects"] = builder.plant_architects(config.architects)
    if config.pairs:
        truth["pairs"] = builder.plant_pairs(config.pairs)
    if config.synonyms:
        truth["synonyms"] = builder.plant_synonyms(config.synonyms)
    if config.clusters:
        truth["clusters"] = builder.plant_clusters(config.clusters)
    if config.sessions:
        truth["sessions"] = builder.plant_sessions(config.sessions)
    if config.filler:
        builder.plant_filler(config.filler)
    if config.target_total and builder.n_total < config.target_total:
        builder.plant_filler(FillerPlant(n_queries=config.target_total - builder.n_total))

    truth["filter"] = {
        "n_total": builder.n_total,
        "n_potential": builder.n_potential,
        "n_explicit": builder.n_explicit,
        "n_architect_ref": builder.n_architect,
    }
    if config.sessions:
        truth["sessions"]["single_share"] = (
            truth["sessions"]["per_class"]["single"]["chain_count"] / builder.n_total
        )
    if config.track_details:
        truth["term_doc_freq"] = builder.doc_freq
        pct: dict[str, dict[str, float]] = {}
        for kind, counts in builder.cat_counts.items():
            total = sum(counts.values())
            if total:
                pct[kind] = {cat: 100.0 * n / total for cat, n in counts.items()}
        truth["category_pct_by_action"] = pct
        truth["mean_length_by_action"] = {
            kind: builder.len_sum[kind] / builder.kind_count[kind]
            for kind in _KINDS
            if builder.kind_count[kind]
        }
    records = builder.records
    if config.shuffle:
        builder.rng.shuffle(records)
    return records, truth


def write_corpus(records: list[dict], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def write_truth(truth: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(truth, fh, indent=2, sort_keys=True)
        fh.write("\n")


def generate_files(config: SynthConfig, corpus_path, truth_path) -> dict:
    records, truth = generate(config)
    write_corpus(records, corpus_path)
    write_truth(truth, truth_path)
    return truth


PROFILES = ("mixed", "lexicon", "pairs", "clusters", "sessions", "category", "throughput")


def profile_config(profile: str, seed: int = 1, queries: int | None = None,
                   chains: int | None = None) -> SynthConfig:
    """Preset generator configurations, shared by the CLI and the test suite."""
    if profile == "mixed":
        return SynthConfig(
            seed=seed,
            filler=FillerPlant(n_queries=queries or 5000, n_explicit=(queries or 5000) // 25),
            keywords=KeywordPlant(n_keywords=10, n_distractors=10),
            architects=ArchitectPlant(n_names=8),
            sessions=SessionPlant(n_chains=chains or 300),
            synonyms=SynonymPlant(),
        )
    if profile == "lexicon":
        return SynthConfig(
            seed=seed,
            filler=FillerPlant(n_queries=0, n_explicit=(queries or 100_000) // 50),
            keywords=KeywordPlant(),
            target_total=queries or 100_000,
        )
    if profile == "pairs":
        return SynthConfig(
            seed=seed, filler=FillerPlant(n_queries=queries or 1000), pairs=PairPlant()
        )
    if profile == "clusters":
        return SynthConfig(seed=seed, filler=None, clusters=ClusterPlant())
    if profile == "sessions":
        return SynthConfig(
            seed=seed, filler=None, sessions=SessionPlant(n_chains=chains or 10_000)
        )
    if profile == "category":
        return SynthConfig(seed=seed, filler=FillerPlant(n_queries=queries or 20_000))
    if profile == "throughput":
        n = queries or 1_000_000
        return SynthConfig(
            seed=seed,
            filler=FillerPlant(n_queries=0, n_explicit=n // 20),
            keywords=KeywordPlant(n_keywords=10, n_distractors=5, min_occurrences=100,
                                  max_occurrences=300),
            architects=ArchitectPlant(n_names=6),
            target_total=n,
            track_details=False,
        )
    raise ValueError(f"unknown profile: {profile!r}")
