import json
import os
import time
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from chargram import artifacts as art
from chargram.corpus import doc_id_for_path
from chargram.service import create_app

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

NOAH = doc_id_for_path(("bible", "noah"))
NOE = doc_id_for_path(("douay", "noe"))
BUTLERS = doc_id_for_path(("bible", "butlers"))

GOLDEN_REQUESTS = {
    "browse_root": "/api/v1/browse",
    "browse_bible": "/api/v1/browse?path=bible",
    "search_butlers": "/api/v1/search?q=chief%20of%20the%20butlers",
    "search_beginning": "/api/v1/search?q=beginning",
    "doc_noah": f"/api/v1/doc/{NOAH}",
    "related_beginning": "/api/v1/related_queries?q=beginnyng",
    "related_docs_noah": f"/api/v1/related_docs/{NOAH}",
    "compare_noah_noe": f"/api/v1/compare?a={NOAH}&b={NOE}",
    "stats": "/api/v1/stats",
}


@pytest.fixture(scope="module")
def client(tmp_path_factory):
    out = tmp_path_factory.mktemp("artifacts")
    built = art.build_artifacts(DATA / "toy_corpus", out)
    art.write_entities(built, DATA / "gazetteer.tsv")
    return TestClient(create_app(built), raise_server_exceptions=False)


class TestEnvelope:
    def test_every_ok_response_has_data_only(self, client):
        for path in GOLDEN_REQUESTS.values():
            body = client.get(path).json()
            assert body["status"] == "ok"
            assert "data" in body and "error" not in body

    def test_unknown_document_is_404_envelope(self, client):
        response = client.get("/api/v1/doc/unknown")
        assert response.status_code == 404
        body = response.json()
        assert body["status"] == "error"
        assert body["error"]["code"] == "not_found"
        assert "data" not in body

    def test_unknown_route_is_404_envelope(self, client):
        response = client.get("/api/v1/nope")
        assert response.status_code == 404
        assert response.json()["status"] == "error"

    def test_missing_parameter_is_400_with_field_name(self, client):
        response = client.get("/api/v1/search")
        assert response.status_code == 400
        body = response.json()
        assert body["error"]["code"] == "invalid_argument"
        assert "q" in body["error"]["message"]

    def test_bad_domain_parameter_is_400(self, client):
        response = client.get("/api/v1/community/top?kind=clicks&scope=community")
        assert response.status_code == 400

    def test_api_alias_matches_v1(self, client):
        assert client.get("/api/browse").json() == client.get("/api/v1/browse").json()


class TestGoldenResponses:
    @pytest.mark.parametrize("name", sorted(GOLDEN_REQUESTS))
    def test_matches_golden(self, client, name):
        body = client.get(GOLDEN_REQUESTS[name]).json()
        golden_path = GOLDEN / f"{name}.json"
        if os.environ.get("UPDATE_GOLDENS"):
            golden_path.write_text(json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
        assert golden_path.exists(), f"golden missing; rerun with UPDATE_GOLDENS=1 ({golden_path})"
        assert body == json.loads(golden_path.read_text())

    def test_responses_are_pure(self, client):
        for path in GOLDEN_REQUESTS.values():
            assert client.get(path).json() == client.get(path).json()


class TestBehavior:
    def test_search_exact_before_partial(self, client):
        results = client.get("/api/v1/search?q=chief%20of%20the%20butlers").json()["data"]["results"]
        assert results[0]["doc_id"] == BUTLERS
        assert results[0]["exact"] is True
        matched = [r["matched_len"] for r in results]
        assert matched == sorted(matched, reverse=True)

    def test_doc_includes_entities(self, client):
        data = client.get(f"/api/v1/doc/{NOAH}").json()["data"]
        assert data["metadata"]["title"] == "Generations of Noah"
        entities = {e["entity"] for e in data["entities"]}
        assert {"Noah", "Japheth"} <= entities
        for e in data["entities"]:
            for pos in e["positions"]:
                assert data["text"][pos : pos + e["length"]] == e["entity"]

    def test_compare_returns_big_alignment(self, client):
        seqs = client.get(f"/api/v1/compare?a={NOAH}&b={NOE}").json()["data"]["sequences"]
        assert seqs
        assert max(s["a_len"] for s in seqs) > 40

    def test_log_then_top_round_trip(self, client):
        payload = {"user": "u1", "kind": "query", "key": "beginning"}
        response = client.post("/api/v1/log", json=payload)
        assert response.json()["status"] == "ok"
        top = client.get("/api/v1/community/top?kind=query&scope=community").json()["data"]["items"]
        assert any(item["key"] == "beginning" for item in top)
        user_top = client.get("/api/v1/community/top?kind=query&scope=user&user=u1").json()["data"]["items"]
        assert any(item["key"] == "beginning" for item in user_top)

    def test_log_rejects_bad_kind(self, client):
        response = client.post("/api/v1/log", json={"user": "u", "kind": "click", "key": "x"})
        assert response.status_code == 400

    def test_log_rejects_missing_field(self, client):
        response = client.post("/api/v1/log", json={"user": "u", "kind": "query"})
        assert response.status_code == 400
        assert "key" in response.json()["error"]["message"]


class TestColdStart:
    def test_load_without_rebuild_under_one_second(self, tmp_path):
        out = tmp_path / "arts"
        art.build_artifacts(DATA / "toy_corpus", out)
        started = time.monotonic()
        loaded = art.load_artifacts(out)
        create_app(loaded)
        elapsed = time.monotonic() - started
        assert elapsed < 1.0, f"cold start took {elapsed:.2f}s"
