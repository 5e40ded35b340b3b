#!/usr/bin/env python3
"""Record API fixtures for the offline web-UI tests.

Builds the pinned test corpus, drives the service in-process, and writes
the full response envelopes under frontend/fixtures/. Run from the repo
root after changing the API surface, then commit the fixtures:

    python scripts/record_fixtures.py
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from chargram import artifacts as art
from chargram.corpus import doc_id_for_path
from chargram.service import create_app

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"
OUT = ROOT / "frontend" / "fixtures"

NOAH = doc_id_for_path(("bible", "noah"))
NOE = doc_id_for_path(("douay", "noe"))


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        built = art.build_artifacts(DATA / "toy_corpus", tmp)
        art.write_entities(built, DATA / "gazetteer.tsv")
        client = TestClient(create_app(built))
        # deterministic community content: three logged events, all "today"
        for key in ("beginning", "beginning", "chief of the butlers"):
            client.post("/api/v1/log", json={"user": "fixture-user", "kind": "query", "key": key})
        client.post("/api/v1/log", json={"user": "fixture-user", "kind": "doc_view", "key": NOAH})

        fixtures = {
            "browse_root": "/api/v1/browse",
            "browse_bible": "/api/v1/browse?path=bible",
            "search": "/api/v1/search?q=chief%20of%20the%20butlers",
            "search_empty": "/api/v1/search?q=zzzzzz",
            "related_queries": "/api/v1/related_queries?q=beginnyng",
            "doc_noah": f"/api/v1/doc/{NOAH}",
            "doc_noe": f"/api/v1/doc/{NOE}",
            "related_docs_noah": f"/api/v1/related_docs/{NOAH}",
            "compare_noah_noe": f"/api/v1/compare?a={NOAH}&b={NOE}",
            "top_query_community": "/api/v1/community/top?kind=query&scope=community",
            "top_query_user": "/api/v1/community/top?kind=query&scope=user&user=fixture-user",
            "top_docs_community": "/api/v1/community/top?kind=doc_view&scope=community",
            "error_not_found": "/api/v1/doc/nope",
        }
        for name, path in fixtures.items():
            body = client.get(path).json()
            (OUT / f"{name}.json").write_text(
                json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                encoding="utf-8",
            )
        print(f"wrote {len(fixtures)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
