import json

import pytest
from fastapi.testclient import TestClient

from promptminer import synth
from promptminer.analytics import default_categories
from promptminer.cli import build_stats_cache
from promptminer.corpus import ingest
from promptminer.embedding import TrainConfig, save_model, train
from promptminer.lexicon import Lexicon, build_keywords
from promptminer.parsing import default_stopwords, normalize, tokenize
from promptminer.service import ServiceConfig, ServiceState, create_app, load_state


@pytest.fixture(scope="module")
def studio(tmp_path_factory):
    """Trained model + stats cache + service app over a planted corpus."""
    tmp = tmp_path_factory.mktemp("studio")
    cfg = synth.SynthConfig(
        seed=101,
        filler=synth.FillerPlant(n_queries=1500, n_explicit=80),
        keywords=synth.KeywordPlant(n_keywords=6, n_distractors=4),
        architects=synth.ArchitectPlant(n_names=5),
        sessions=synth.SessionPlant(n_chains=60),
        synonyms=synth.SynonymPlant(),
    )
    records, truth = synth.generate(cfg)
    corpus_path = tmp / "corpus.jsonl"
    synth.write_corpus(records, corpus_path)
    corpus, _ = ingest(corpus_path)

    anchors = {"architect", "interior", "exterior"}
    candidates = set(truth["keywords"]["planted"]) | set(truth["keywords"]["distractors"])
    keywords, _ = build_keywords(corpus, candidates, anchors)
    lexicon = Lexicon(
        anchors=frozenset(anchors),
        keywords=frozenset(keywords),
        architect_names=frozenset(tuple(n.split()) for n in truth["architects"]["names"]),
    )
    stopwords = default_stopwords()
    sentences = [normalize(tokenize(r.text), stopwords) for r in corpus]
    model = train(sentences, TrainConfig(dim=32, epochs=5, min_count=2, seed=7, subsample_t=0.0))
    model_path = tmp / "model.pmv"
    save_model(model, model_path)

    categories = default_categories()
    cache = build_stats_cache(corpus, lexicon, categories, stopwords)
    cache_path = tmp / "cache.json"
    cache_path.write_text(json.dumps(cache, sort_keys=True))

    state = ServiceState(
        model=model, categories=categories, stats_cache=cache, stopwords=stopwords
    )
    app = create_app(state)
    return {"app": app, "truth": truth, "model_path": model_path, "cache_path": cache_path}


@pytest.fixture()
def client(studio):
    with TestClient(studio["app"]) as c:
        yield c


class TestHealth:
    def test_healthz_fixed_response(self, client):
        response = client.get("/healthz")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}


class TestSuggest:
    def test_planted_companion_in_top_suggestions(self, client):
        response = client.get("/suggest", params={"prompt": "interior", "k": 5})
        assert response.status_code == 200
        suggestions = response.json()["suggestions"]
        assert len(suggestions) == 5
        assert suggestions[0]["term"] == "apartment"

    def test_scores_descending_and_schema(self, client):
        body = client.get("/suggest", params={"prompt": "interior", "k": 5}).json()
        scores = [s["score"] for s in body["suggestions"]]
        assert scores == sorted(scores, reverse=True)
        for s in body["suggestions"]:
            assert set(s) == {"term", "score", "category"}
            assert s["category"] in {"style", "content", "quality", "unknown"}

    def test_empty_prompt_falls_back(self, client):
        body = client.get("/suggest", params={"prompt": "", "k": 3}).json()
        assert len(body["suggestions"]) == 3

    def test_bad_k_is_400(self, client):
        assert client.get("/suggest", params={"prompt": "x", "k": 0}).status_code == 400
        assert client.get("/suggest", params={"prompt": "x", "k": "NaN"}).status_code == 400

    def test_identical_requests_identical_bodies(self, client):
        a = client.get("/suggest", params={"prompt": "interior", "k": 7})
        b = client.get("/suggest", params={"prompt": "interior", "k": 7})
        assert a.content == b.content


class TestNeighbors:
    def test_neighbors_schema(self, client):
        response = client.get("/neighbors", params={"term": "interior", "k": 4})
        assert response.status_code == 200
        neighbors = response.json()["neighbors"]
        assert len(neighbors) == 4
        for n in neighbors:
            assert set(n) == {"term", "cosine"}
            assert -1.0 <= n["cosine"] <= 1.0

    def test_oov_is_404(self, client):
        assert client.get("/neighbors", params={"term": "zzz_not_in_vocab"}).status_code == 404

    def test_missing_term_is_400(self, client):
        assert client.get("/neighbors").status_code == 400


class TestStats:
    def test_workflows(self, client):
        body = client.get("/stats/workflows").json()
        assert set(body["per_class"]) == {"single", "draft_only", "upscaled", "remastered"}

    @pytest.mark.parametrize("scope", ["all", "filtered", "explicit"])
    def test_frequencies_scopes(self, client, scope):
        body = client.get("/stats/frequencies", params={"scope": scope}).json()
        assert body["scope"] == scope
        assert all(len(row) == 2 for row in body["rows"])

    def test_bad_scope_is_400(self, client):
        assert client.get("/stats/frequencies", params={"scope": "bogus"}).status_code == 400

    def test_architects(self, client, studio):
        body = client.get("/stats/architects").json()
        names = {row[0] for row in body["rows"]}
        assert set(studio["truth"]["architects"]["names"]) <= names


class TestParse:
    def test_parse_shape(self, client):
        response = client.post("/parse", json={"text": "interior::2 garden --ar 16:9"})
        assert response.status_code == 200
        body = response.json()
        assert body["segments"] == [
            {"tokens": ["interior"], "weight": "2"},
            {"tokens": ["garden"], "weight": "1"},
        ]
        assert body["parameters"] == [{"name": "ar", "value": "16:9"}]

    def test_empty_prompt_is_400(self, client):
        assert client.post("/parse", json={"text": "   "}).status_code == 400

    def test_malformed_weight_is_400(self, client):
        assert client.post("/parse", json={"text": "room::fast"}).status_code == 400

    def test_non_json_body_is_400(self, client):
        response = client.post("/parse", content=b"not json",
                               headers={"content-type": "application/json"})
        assert response.status_code == 400

    def test_missing_text_is_400(self, client):
        assert client.post("/parse", json={"nope": 1}).status_code == 400


class TestLoading:
    def test_503_before_artifacts_ready(self):
        app = create_app(None)
        with TestClient(app) as client:
            assert client.get("/suggest").status_code == 503
            assert client.get("/neighbors", params={"term": "x"}).status_code == 503
            assert client.get("/stats/workflows").status_code == 503
            assert client.get("/healthz").status_code == 200


class TestConfig:
    def test_from_file_validates_paths(self, tmp_path, studio):
        config_path = tmp_path / "svc.json"
        config_path.write_text(json.dumps({
            "model_path": str(studio["model_path"]),
            "stats_cache_path": str(studio["cache_path"]),
            "port": 8123,
        }))
        config = ServiceConfig.from_file(config_path)
        assert config.port == 8123
        state = load_state(config)
        assert len(state.model.vocab) > 0

    def test_missing_artifact_rejected(self, tmp_path):
        config_path = tmp_path / "svc.json"
        config_path.write_text(json.dumps({
            "model_path": "/nope.pmv", "stats_cache_path": "/nope.json",
        }))
        with pytest.raises(FileNotFoundError):
            ServiceConfig.from_file(config_path)

    def test_bad_port_rejected(self):
        with pytest.raises(ValueError):
            ServiceConfig(model_path="m", stats_cache_path="s", port=0)
