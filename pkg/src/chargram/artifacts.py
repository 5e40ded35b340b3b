"""Build, persist, and load the full artifact set for one corpus.

Everything heavy is built offline and loaded read-only: the corpus
snapshot, the suffix index, per-document models, the all-pairs similarity
matrix, and (optionally) the entity store. Only the usage log mutates at
runtime. The directory layout is:

    corpus.json       ingested documents and metadata
    index.json        collection-model suffix index
    docmodels.json    per-document model store
    similarity.json   all-pairs JSD similarity matrix
    entities.json     gazetteer matches (written by the entities command)
    usage.jsonl       append-only usage event log
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import community, corpus as corpus_mod, lm, mining, search as search_mod, suffixtree
from .errors import NotFoundError

CORPUS_FILE = "corpus.json"
INDEX_FILE = "index.json"
DOCMODELS_FILE = "docmodels.json"
SIMILARITY_FILE = "similarity.json"
ENTITIES_FILE = "entities.json"
USAGE_FILE = "usage.jsonl"

REQUIRED_FILES = (CORPUS_FILE, INDEX_FILE, DOCMODELS_FILE, SIMILARITY_FILE)


class MissingArtifactsError(NotFoundError):
    def __init__(self, directory, missing):
        super().__init__(
            f"artifacts directory {directory} is missing {', '.join(missing)}; "
            f"run `chargram index build --corpus DIR --out {directory}` first"
        )


@dataclass
class Artifacts:
    directory: Path
    corpus: corpus_mod.Corpus
    index: suffixtree.SuffixIndex
    models: dict[str, lm.DocumentModel]
    matrix: mining.SimilarityMatrix
    entities: list[mining.EntityOccurrence] = field(default_factory=list)
    jm_lambda: float = lm.DEFAULT_JM_LAMBDA

    @property
    def params(self) -> lm.ModelParams:
        return lm.ModelParams.for_index(self.index, jm_lambda=self.jm_lambda)

    @property
    def usage(self) -> community.UsageLog:
        return community.UsageLog(self.directory / USAGE_FILE)

    # ------------------------------------------------------------------
    # query surface shared by the CLI and the HTTP service

    def search(self, query: str, limit: int = 10, min_match_len: int = search_mod.DEFAULT_MIN_MATCH_LEN):
        return search_mod.search(
            self.corpus, self.index, self.models, self.params, query, limit=limit, min_match_len=min_match_len
        )

    def related_queries(self, query: str, limit: int = 10):
        return mining.related_queries(self.index, query, limit=limit, corpus=self.corpus)

    def related_documents(self, doc_id: str, limit: int = mining.RELATED_DOCS_LIMIT):
        return mining.related_documents(self.matrix, doc_id, limit=limit)

    def compare(self, doc_a: str, doc_b: str, delta: float = mining.ALIGN_DELTA, min_len: int = mining.ALIGN_MIN_LEN):
        a = self.corpus.get_document(doc_a)
        b = self.corpus.get_document(doc_b)
        return mining.compare_documents(a, b, delta=delta, min_len=min_len)

    def entities_for(self, doc_id: str) -> list[mining.EntityOccurrence]:
        return [e for e in self.entities if e.doc_id == doc_id]

    def log_event(self, user_id: str, kind: str, key: str, timestamp: datetime | None = None) -> None:
        event = community.UsageEvent(user_id, kind, key, timestamp or datetime.now(timezone.utc))
        self.usage.append(event)

    def top_items(self, kind: str, scope: str, user_id: str | None = None, now: datetime | None = None):
        return community.top_items(
            self.usage, kind, scope, now or datetime.now(timezone.utc), user_id=user_id
        )

    def stats(self) -> dict:
        return {
            "documents": len(self.corpus.documents),
            "alphabet_size": self.index.alphabet_size,
            "k": self.index.k,
            "nodes": self.index.node_count(),
            "positions": self.index.position_count(),
            "total_unigrams": self.index.root.count,
            "corpus_id": self.corpus.corpus_id,
            "entities": len(self.entities),
        }


def build_artifacts(corpus_dir, out_dir, k: int = suffixtree.DEFAULT_DEPTH,
                    jm_lambda: float = lm.DEFAULT_JM_LAMBDA) -> Artifacts:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    corpus = corpus_mod.ingest_corpus(corpus_dir)
    index = suffixtree.build_index(corpus, k=k)
    models = lm.build_document_models(corpus, k=k)
    matrix = mining.build_similarity_matrix(models)
    corpus_mod.save_corpus(corpus, out / CORPUS_FILE)
    suffixtree.save_index(index, out / INDEX_FILE)
    lm.save_document_models(models, out / DOCMODELS_FILE)
    mining.save_similarity_matrix(matrix, out / SIMILARITY_FILE)
    return Artifacts(out, corpus, index, models, matrix, jm_lambda=jm_lambda)


def load_artifacts(directory, jm_lambda: float = lm.DEFAULT_JM_LAMBDA) -> Artifacts:
    directory = Path(directory)
    missing = [name for name in REQUIRED_FILES if not (directory / name).exists()]
    if missing:
        raise MissingArtifactsError(directory, missing)
    corpus = corpus_mod.load_corpus(directory / CORPUS_FILE)
    index = suffixtree.load_index(directory / INDEX_FILE)
    models = lm.load_document_models(directory / DOCMODELS_FILE)
    matrix = mining.load_similarity_matrix(directory / SIMILARITY_FILE)
    entities = []
    if (directory / ENTITIES_FILE).exists():
        entities = mining.load_entities(directory / ENTITIES_FILE)
    return Artifacts(directory, corpus, index, models, matrix, entities, jm_lambda=jm_lambda)


def write_entities(artifacts: Artifacts, gazetteer_path) -> list[mining.EntityOccurrence]:
    gazetteer = mining.load_gazetteer(gazetteer_path)
    occurrences = mining.extract_entities(artifacts.index, artifacts.corpus, gazetteer)
    mining.save_entities(occurrences, artifacts.directory / ENTITIES_FILE)
    artifacts.entities = occurrences
    return occurrences


def sample_corpus_dir() -> Path:
    """Location of the bundled 66-document demo corpus."""
    return Path(__file__).parent / "data" / "kjv_sample"
