"""Truncated generalized suffix tree with supernode compression.

The index stores every suffix of every document, truncated to its first
``k`` characters. Chains of single-descendant nodes are stored as one
"supernode" whose label is the concatenated chain, so a node label can be
longer than one character. Each suffix terminates at a node end and leaves
a posting ``(doc_id, start_position)`` there; occurrence lists for shorter
n-grams are recovered by collecting all postings beneath the matched node.

Counts are exact occurrence counts: for any n-gram ``g`` with
``1 <= len(g) <= k``, walking ``g`` from the root lands on a position whose
count equals the number of occurrences of ``g`` across all documents.

Two probability passes run after construction:

* the MLE pass stores ``count(node) / count(parent)`` per position, and
* the interpolation pass replaces those with an order-interpolated value:
  a depth-``d`` position mixes the MLEs of all suffixes of its path string,
  weighted ``(len + 1) / ((d + 1)(d + 2) / 2)`` by suffix length, with the
  zero-order term ``1 / |V|``.

Positions inside a supernode label are addressed as ``(node, offset)``
pairs. Interior positions always have an MLE of exactly 1.0 (a supernode is
by construction a deterministic continuation), but their interpolated
probabilities differ per offset and are stored per offset.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import FormatError, InvalidArgumentError, VersionError

DEFAULT_DEPTH = 15

INDEX_FORMAT = "chargram-index"
INDEX_VERSION = 1


class SuffixNode:
    """One (possibly multi-character) labelled node of the tree."""

    __slots__ = ("label", "children", "postings", "count", "depth0", "mle0", "probs", "_u")

    def __init__(self, label: str):
        self.label = label
        self.children: dict[str, SuffixNode] = {}
        self.postings: list[tuple[str, int]] = []
        self.count = 0
        self.depth0 = 0  # depth of label[0]; root has label "" and depth0 0
        self.mle0: float | None = None
        self.probs: list[float] | None = None
        self._u: list[float] | None = None

    @property
    def prefix_counts(self) -> list[int]:
        # Postings only attach at node ends, so every offset of a label is
        # traversed by the same set of suffixes.
        return [self.count] * len(self.label)

    def sorted_children(self) -> list["SuffixNode"]:
        return [self.children[c] for c in sorted(self.children)]

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"SuffixNode({self.label!r}, count={self.count}, children={len(self.children)})"


@dataclass
class MatchResult:
    """Outcome of descending the tree along a query."""

    matched_len: int
    exact: bool
    occurrences: list[tuple[str, int]]


@dataclass
class CorpusRef:
    corpus_id: str
    doc_count: int


class SuffixIndex:
    """k-truncated, supernode-compressed generalized suffix tree."""

    def __init__(self, root: SuffixNode, k: int, alphabet_size: int, corpus_ref: CorpusRef):
        self.root = root
        self.k = k
        self.alphabet_size = alphabet_size
        self.corpus_ref = corpus_ref

    # ------------------------------------------------------------------
    # navigation

    def walk(self, gram: str) -> tuple[SuffixNode, int] | None:
        """Return the ``(node, offset)`` position of ``gram``, or None.

        Only full-length matches are returned; use :meth:`match` for
        longest-prefix semantics.
        """
        node, offset, consumed = self._descend(gram)
        if consumed == len(gram) and node is not self.root:
            return node, offset
        return None

    def _descend(self, query: str) -> tuple[SuffixNode, int, int]:
        """Longest-prefix descent; returns (last node, offset, chars consumed)."""
        node = self.root
        offset = 0
        i = 0
        m = len(query)
        while i < m:
            child = node.children.get(query[i])
            if child is None:
                break
            label = child.label
            j = 1
            n = len(label)
            while j < n and i + j < m and label[j] == query[i + j]:
                j += 1
            i += j
            node, offset = child, j - 1
            if j < n:
                break
        return node, offset, i

    def match(self, query: str) -> MatchResult:
        """Longest-prefix match of ``query`` (truncated to ``k`` characters).

        Collects every posting in the subtree under the last matched
        position. A missing first character yields ``matched_len == 0`` with
        no occurrences rather than an error; an empty query is rejected.
        """
        if not query:
            raise InvalidArgumentError("query must be non-empty")
        query = query[: self.k]
        node, offset, consumed = self._descend(query)
        if consumed == 0:
            return MatchResult(0, False, [])
        occurrences = self._collect_postings(node, offset)
        occurrences.sort()
        return MatchResult(consumed, consumed == len(query), occurrences)

    def _collect_postings(self, node: SuffixNode, offset: int) -> list[tuple[str, int]]:
        # Breadth-first gather below ``(node, offset)``. Postings attach at
        # node ends, so the node's own list is below any interior offset.
        out: list[tuple[str, int]] = []
        queue = deque([node])
        while queue:
            n = queue.popleft()
            out.extend(n.postings)
            queue.extend(n.children.values())
        return out

    def next_chars(self, node: SuffixNode | None, offset: int = 0) -> list[str]:
        """Characters that can extend the position by one (root if node is None)."""
        if node is None:
            return sorted(self.root.children)
        if offset + 1 < len(node.label):
            return [node.label[offset + 1]]
        return sorted(node.children)

    def step(self, node: SuffixNode | None, offset: int, ch: str) -> tuple[SuffixNode, int] | None:
        """Advance a position by one character; None if no such path."""
        if node is None:
            child = self.root.children.get(ch)
            return (child, 0) if child is not None else None
        if offset + 1 < len(node.label):
            return (node, offset + 1) if node.label[offset + 1] == ch else None
        child = node.children.get(ch)
        return (child, 0) if child is not None else None

    # ------------------------------------------------------------------
    # statistics

    def count_of(self, gram: str) -> int:
        pos = self.walk(gram)
        return pos[0].count if pos is not None else 0

    def mle_of(self, gram: str) -> float | None:
        """MLE conditional probability of the gram's last character."""
        pos = self.walk(gram)
        if pos is None:
            return None
        node, offset = pos
        if offset > 0:
            return 1.0
        if node.mle0 is None:
            raise InvalidArgumentError("MLE pass has not run")
        return node.mle0

    def prob_of(self, gram: str) -> float | None:
        """Interpolated (smoothed) conditional probability, or None if absent."""
        pos = self.walk(gram)
        if pos is None:
            return None
        node, offset = pos
        if node.probs is None:
            raise InvalidArgumentError("interpolation pass has not run")
        return node.probs[offset]

    def prob_at(self, node: SuffixNode, offset: int) -> float:
        if node.probs is None:
            raise InvalidArgumentError("interpolation pass has not run")
        return node.probs[offset]

    def node_count(self) -> int:
        return sum(1 for _ in self.iter_nodes()) - 1

    def position_count(self) -> int:
        return sum(len(n.label) for n in self.iter_nodes() if n is not self.root)

    def iter_nodes(self) -> Iterator[SuffixNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(node.sorted_children()[::-1])

    def depth(self) -> int:
        """Length of the longest root-to-position path string."""
        return max((n.depth0 + len(n.label) for n in self.iter_nodes() if n is not self.root), default=0)


# ----------------------------------------------------------------------
# construction


def build_index(corpus, k: int = DEFAULT_DEPTH) -> SuffixIndex:
    """Index every document of ``corpus``, truncating suffixes to ``k`` chars.

    Runs the full pipeline: insertion, supernode compression, the MLE pass
    and the interpolation pass, so the returned index is ready for scoring.
    """
    documents = [(doc.doc_id, doc.text) for doc in corpus.documents.values()]
    return build_from_pairs(
        documents,
        k=k,
        alphabet_size=len(corpus.alphabet),
        corpus_ref=CorpusRef(corpus.corpus_id, len(documents)),
    )


def build_from_pairs(
    documents: Iterable[tuple[str, str]],
    k: int = DEFAULT_DEPTH,
    alphabet_size: int | None = None,
    corpus_ref: CorpusRef | None = None,
) -> SuffixIndex:
    """Lower-level builder over raw ``(doc_id, text)`` pairs.

    ``alphabet_size`` defaults to the number of distinct characters in the
    given documents; document models pass the collection-wide value so the
    zero-order floor is shared between collection and document models.
    """
    documents = sorted(documents)
    if k < 2:
        raise InvalidArgumentError(f"truncation depth must be >= 2, got {k}")
    if not documents:
        raise InvalidArgumentError("cannot index an empty document set")
    root = SuffixNode("")
    for doc_id, text in documents:
        for pos in range(len(text)):
            _insert(root, text[pos : pos + k], doc_id, pos)
    _finalize(root)
    if alphabet_size is None:
        alphabet_size = len({c for _, text in documents for c in text})
    if corpus_ref is None:
        corpus_ref = CorpusRef("", len(documents))
    index = SuffixIndex(root, k, alphabet_size, corpus_ref)
    compress(index)
    mle_pass(index)
    interpolation_pass(index)
    return index


def _insert(root: SuffixNode, s: str, doc_id: str, pos: int) -> None:
    node = root
    i = 0
    m = len(s)
    while True:
        if i == m:
            node.postings.append((doc_id, pos))
            return
        c = s[i]
        child = node.children.get(c)
        if child is None:
            leaf = SuffixNode(s[i:])
            leaf.postings.append((doc_id, pos))
            node.children[c] = leaf
            return
        label = child.label
        n = len(label)
        j = 1
        while j < n and i + j < m and label[j] == s[i + j]:
            j += 1
        if j == n:
            node = child
            i += j
            continue
        # The suffix diverges from, or ends inside, this label: split so the
        # divergence point (and any posting) sits on a node boundary.
        top = SuffixNode(label[:j])
        child.label = label[j:]
        top.children[child.label[0]] = child
        node.children[c] = top
        if i + j == m:
            top.postings.append((doc_id, pos))
        else:
            leaf = SuffixNode(s[i + j :])
            leaf.postings.append((doc_id, pos))
            top.children[s[i + j]] = leaf
        return


def _finalize(root: SuffixNode) -> None:
    """Fill counts bottom-up, sort postings, and assign depths."""
    order: list[SuffixNode] = []
    stack = [root]
    while stack:
        node = stack.pop()
        order.append(node)
        for child in node.children.values():
            child.depth0 = node.depth0 + len(node.label)
            stack.append(child)
    for node in reversed(order):
        node.postings.sort()
        node.count = len(node.postings) + sum(c.count for c in node.children.values())
    root.depth0 = 0


def compress(index: SuffixIndex) -> None:
    """Merge single-descendant chains into supernodes.

    A node carrying postings keeps its boundary (a suffix terminates there),
    so only posting-free single-child interior nodes are merged. Construction
    already produces this form; the pass is idempotent.
    """
    stack = [index.root]
    while stack:
        node = stack.pop()
        for c, child in list(node.children.items()):
            while len(child.children) == 1 and not child.postings:
                (grand,) = child.children.values()
                grand.label = child.label + grand.label
                grand.depth0 = child.depth0
                node.children[c] = child = grand
            stack.append(child)


# ----------------------------------------------------------------------
# probability passes


def interpolation_weights(n: int) -> list[Fraction]:
    """Exact order-interpolation weights for an n-gram of order ``n``.

    Weight ``k`` (1-based, k = 1..n+1) is ``(n + 2 - k) / ((n+1)(n+2)/2)``;
    the last weight belongs to the zero-order ``1/|V|`` term. The weights
    always sum to exactly 1.
    """
    if n < 0:
        raise InvalidArgumentError("order must be >= 0")
    denom = Fraction((n + 1) * (n + 2), 2)
    return [Fraction(n + 2 - k) / denom for k in range(1, n + 2)]


def mle_pass(index: SuffixIndex) -> None:
    """Store the maximum likelihood estimate at every position.

    Offset 0 of a node divides the node count by its parent's count; interior
    supernode offsets are deterministic continuations with MLE 1. The root's
    count is the total number of unigrams, making depth-1 MLEs unigram
    relative frequencies.
    """
    stack = [index.root]
    while stack:
        node = stack.pop()
        for child in node.children.values():
            child.mle0 = child.count / node.count
            stack.append(child)


def interpolation_pass(index: SuffixIndex) -> None:
    """Replace MLEs with order-interpolated probabilities, in one pass.

    Uses the recurrence ``U(g) = (|g|+1) * MLE(g) + U(g[1:])`` with
    ``U("") = 1/|V|``; the stored probability is ``U(g)`` divided by the
    triangular weight total for the position's depth. The suffix position
    ``g[1:]`` always exists because every suffix of an occurring n-gram also
    occurs, and is reached in O(1) by following the parent position's suffix
    link one character forward.
    """
    if any(c.mle0 is None for c in index.root.children.values()):
        raise InvalidArgumentError("MLE pass must run before interpolation")
    base = 1.0 / index.alphabet_size
    totals = [(d + 1) * (d + 2) / 2 for d in range(index.depth() + 1)]
    queue: deque[tuple[SuffixNode, int, SuffixNode | None, int]] = deque()
    for node in index.root.children.values():
        node._u = [0.0] * len(node.label)
        node.probs = [0.0] * len(node.label)
        queue.append((node, 0, None, 0))
    while queue:
        node, offset, snode, soffset = queue.popleft()
        d = node.depth0 + offset + 1
        mle = node.mle0 if offset == 0 else 1.0
        u = (d + 1) * mle + (base if snode is None else snode._u[soffset])
        node._u[offset] = u
        node.probs[offset] = u / totals[d]
        if offset + 1 < len(node.label):
            nxt = index.step(snode, soffset, node.label[offset + 1])
            queue.append((node, offset + 1, nxt[0], nxt[1]))
        else:
            for c, child in node.children.items():
                nxt = index.step(snode, soffset, c)
                child._u = [0.0] * len(child.label)
                child.probs = [0.0] * len(child.label)
                queue.append((child, 0, nxt[0], nxt[1]))
    for node in index.iter_nodes():
        node._u = None


# ----------------------------------------------------------------------
# serialization


def index_to_dict(index: SuffixIndex) -> dict:
    if not index.root.children:
        raise InvalidArgumentError("refusing to save an empty index")
    nodes = []
    ids: dict[int, int] = {}
    order: list[SuffixNode] = list(index.iter_nodes())
    for i, node in enumerate(order):
        ids[id(node)] = i
    for node in order:
        nodes.append(
            {
                "label": node.label,
                "count": node.count,
                "prefix_counts": node.prefix_counts,
                "cond_prob": node.probs,
                "postings": [[d, p] for d, p in node.postings],
                "children_ids": [ids[id(c)] for c in node.sorted_children()],
            }
        )
    return {
        "format": INDEX_FORMAT,
        "version": INDEX_VERSION,
        "k": index.k,
        "alphabet_size": index.alphabet_size,
        "corpus_id": index.corpus_ref.corpus_id,
        "doc_count": index.corpus_ref.doc_count,
        "nodes": nodes,
    }


def index_from_dict(data: dict) -> SuffixIndex:
    if not isinstance(data, dict) or data.get("format") != INDEX_FORMAT:
        raise FormatError("not a suffix index file")
    if data.get("version") != INDEX_VERSION:
        raise VersionError(data.get("version"), INDEX_VERSION)
    records = data["nodes"]
    nodes = [SuffixNode(rec["label"]) for rec in records]
    for node, rec in zip(nodes, records):
        node.count = rec["count"]
        node.probs = rec["cond_prob"]
        node.postings = [(d, p) for d, p in rec["postings"]]
        node.children = {nodes[i].label[0]: nodes[i] for i in rec["children_ids"]}
    root = nodes[0]
    stack = [root]
    while stack:
        node = stack.pop()
        for child in node.children.values():
            child.depth0 = node.depth0 + len(node.label)
            child.mle0 = child.count / node.count
            stack.append(child)
    index = SuffixIndex(
        root,
        k=data["k"],
        alphabet_size=data["alphabet_size"],
        corpus_ref=CorpusRef(data["corpus_id"], data["doc_count"]),
    )
    return index


def save_index(index: SuffixIndex, path) -> None:
    payload = index_to_dict(index)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def load_index(path) -> SuffixIndex:
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.read()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise FormatError(f"corrupt index file: {exc.msg}", offset=exc.pos) from exc
    return index_from_dict(data)
