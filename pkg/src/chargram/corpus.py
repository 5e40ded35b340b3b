"""Corpus ingestion and faceted browsing.

A corpus on disk is a directory tree: ``<root>/<cluster>/.../<docname>.txt``
with an optional flat-JSON metadata sidecar ``<docname>.meta.json`` next to
each document. Directory components become cluster labels, the file stem
becomes the final path label, and document IDs are stable hashes of the
path so repeated ingestion yields identical IDs.

Text is kept verbatim apart from newline normalization: no case folding, no
diacritic stripping, no tokenization. The engine is character-based and any
such folding would change the statistics it models.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FormatError, InvalidArgumentError, NotFoundError, VersionError

logger = logging.getLogger(__name__)

CORPUS_FORMAT = "chargram-corpus"
CORPUS_VERSION = 1

CLUSTER = "cluster"
DOCUMENT = "document"


@dataclass
class Document:
    doc_id: str
    path: tuple[str, ...]
    title: str
    text: str
    metadata: dict[str, str] = field(default_factory=dict)


@dataclass
class BrowseEntry:
    label: str
    kind: str  # CLUSTER or DOCUMENT
    # number of documents in the subtree for clusters, the doc_id for documents
    value: int | str


class _Node:
    __slots__ = ("children", "doc_id")

    def __init__(self):
        self.children: dict[str, _Node] = {}
        self.doc_id: str | None = None

    def doc_count(self) -> int:
        n = 1 if self.doc_id is not None else 0
        return n + sum(c.doc_count() for c in self.children.values())


class Corpus:
    """Immutable document collection with a browse tree."""

    def __init__(self, documents: dict[str, Document], errors: list[str] | None = None):
        if not documents:
            raise InvalidArgumentError("corpus contains no documents")
        self.documents = documents
        self.errors = errors or []
        self.alphabet = frozenset(c for d in documents.values() for c in d.text)
        self._root = _Node()
        for doc in documents.values():
            node = self._root
            for label in doc.path[:-1]:
                node = node.children.setdefault(label, _Node())
            leaf = node.children.setdefault(doc.path[-1], _Node())
            leaf.doc_id = doc.doc_id
        self.corpus_id = _corpus_id(documents)

    def browse(self, path_prefix: list[str] | tuple[str, ...] = ()) -> list[BrowseEntry]:
        """Immediate children of a browse node, sorted by label."""
        node = self._root
        for label in path_prefix:
            if label not in node.children:
                raise NotFoundError(f"unknown browse path: {'/'.join(path_prefix)}")
            node = node.children[label]
        entries = []
        for label in sorted(node.children):
            child = node.children[label]
            if child.doc_id is not None:
                entries.append(BrowseEntry(label, DOCUMENT, child.doc_id))
            if child.children:
                entries.append(BrowseEntry(label, CLUSTER, child.doc_count()))
        return entries

    def get_document(self, doc_id: str) -> Document:
        try:
            return self.documents[doc_id]
        except KeyError:
            raise NotFoundError(f"unknown document id: {doc_id}") from None

    def doc_ids(self) -> list[str]:
        return sorted(self.documents)


def doc_id_for_path(path: tuple[str, ...] | list[str]) -> str:
    return hashlib.sha256("/".join(path).encode("utf-8")).hexdigest()[:12]


def _corpus_id(documents: dict[str, Document]) -> str:
    h = hashlib.sha256()
    for doc_id in sorted(documents):
        h.update(doc_id.encode("utf-8"))
        h.update(hashlib.sha256(documents[doc_id].text.encode("utf-8")).digest())
    return h.hexdigest()[:16]


def normalize_text(raw: str) -> str:
    return raw.replace("\r\n", "\n").replace("\r", "\n")


def ingest_corpus(root_dir) -> Corpus:
    """Ingest a directory tree of ``.txt`` documents plus metadata sidecars.

    Unreadable or empty files are recorded on ``corpus.errors`` and skipped;
    an ingestion that produces zero documents is fatal.
    """
    root = Path(root_dir)
    if not root.is_dir():
        raise InvalidArgumentError(f"corpus root is not a directory: {root}")
    documents: dict[str, Document] = {}
    errors: list[str] = []
    for file in sorted(root.rglob("*.txt")):
        rel = file.relative_to(root)
        path = tuple(rel.parts[:-1]) + (file.stem,)
        try:
            text = normalize_text(file.read_text(encoding="utf-8"))
        except (OSError, UnicodeDecodeError) as exc:
            errors.append(f"{rel}: {exc}")
            continue
        if not text:
            errors.append(f"{rel}: empty after normalization")
            continue
        metadata = _read_sidecar(file.with_name(file.stem + ".meta.json"), errors)
        doc_id = doc_id_for_path(path)
        documents[doc_id] = Document(
            doc_id=doc_id,
            path=path,
            title=metadata.get("title", file.stem),
            text=text,
            metadata=metadata,
        )
    if not documents:
        raise InvalidArgumentError(f"no documents found under {root}")
    return Corpus(documents, errors)


def _read_sidecar(path: Path, errors: list[str]) -> dict[str, str]:
    if not path.exists():
        return {}
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        errors.append(f"{path.name}: {exc}")
        return {}
    if not isinstance(raw, dict):
        logger.warning("sidecar %s is not a JSON object; ignored", path.name)
        return {}
    metadata = {}
    for key, value in raw.items():
        if isinstance(value, str):
            metadata[str(key)] = value
        else:
            logger.warning("sidecar %s: dropping non-string value for %r", path.name, key)
    return metadata


# ----------------------------------------------------------------------
# persistence (part of the built artifact set)


def corpus_to_dict(corpus: Corpus) -> dict:
    return {
        "format": CORPUS_FORMAT,
        "version": CORPUS_VERSION,
        "documents": [
            {
                "doc_id": d.doc_id,
                "path": list(d.path),
                "title": d.title,
                "text": d.text,
                "metadata": d.metadata,
            }
            for _, d in sorted(corpus.documents.items())
        ],
    }


def corpus_from_dict(data: dict) -> Corpus:
    if not isinstance(data, dict) or data.get("format") != CORPUS_FORMAT:
        raise FormatError("not a corpus file")
    if data.get("version") != CORPUS_VERSION:
        raise VersionError(data.get("version"), CORPUS_VERSION)
    documents = {
        rec["doc_id"]: Document(
            doc_id=rec["doc_id"],
            path=tuple(rec["path"]),
            title=rec["title"],
            text=rec["text"],
            metadata=rec["metadata"],
        )
        for rec in data["documents"]
    }
    return Corpus(documents)


def save_corpus(corpus: Corpus, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(corpus_to_dict(corpus), fh, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_corpus(path) -> Corpus:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"corrupt corpus file: {exc.msg}", offset=exc.pos) from exc
    return corpus_from_dict(data)
