/* Typed client for the JSON API. Every response is an envelope carrying
 * exactly one of `data` or `error`; `unwrap` turns error envelopes into
 * thrown ApiError so views only ever see payloads. */

export interface Envelope<T> {
  status: "ok" | "error";
  data?: T;
  error?: { code: string; message: string };
}

export interface BrowseEntry {
  label: string;
  kind: "cluster" | "document";
  doc_id?: string;
  doc_count?: number;
}

export interface BrowseData {
  path: string[];
  entries: BrowseEntry[];
}

export interface Snippet {
  text: string;
  start: number;
  highlight_spans: [number, number][];
  score: number;
}

export interface SearchResult {
  doc_id: string;
  title: string;
  exact: boolean;
  matched_len: number;
  log_score: number;
  snippets: Snippet[];
}

export interface SearchData {
  query: string;
  results: SearchResult[];
}

export interface RelatedQuery {
  text: string;
  edit_op: string;
  log_prob: number;
}

export interface RelatedQueriesData {
  query: string;
  related: RelatedQuery[];
}

export interface EntityLayer {
  entity: string;
  type: string;
  positions: number[];
  length: number;
}

export interface DocumentData {
  doc_id: string;
  path: string[];
  title: string;
  text: string;
  metadata: Record<string, string>;
  entities: EntityLayer[];
}

export interface RelatedDoc {
  doc_id: string;
  similarity: number;
  title: string;
}

export interface RelatedDocsData {
  doc_id: string;
  related: RelatedDoc[];
}

export interface SharedSequence {
  a_start: number;
  a_len: number;
  b_start: number;
  b_len: number;
  edit_distance: number;
  seed: string;
}

export interface CompareData {
  a: string;
  b: string;
  sequences: SharedSequence[];
}

export interface TopItem {
  key: string;
  score: number;
  raw_count: number;
  recency: number;
}

export interface TopData {
  kind: "query" | "doc_view";
  scope: "user" | "community";
  items: TopItem[];
}

export class ApiError extends Error {
  constructor(public code: string, message: string) {
    super(message);
  }
}

export function unwrap<T>(envelope: Envelope<T>): T {
  if (envelope.status === "ok" && envelope.data !== undefined) {
    return envelope.data;
  }
  const err = envelope.error ?? { code: "unknown", message: "malformed envelope" };
  throw new ApiError(err.code, err.message);
}

/* The view layer depends on this interface only; main.ts supplies the HTTP
 * implementation and the tests supply a fixture-backed one. */
export interface ApiClient {
  browse(path: string[]): Promise<BrowseData>;
  search(query: string, limit?: number): Promise<SearchData>;
  relatedQueries(query: string): Promise<RelatedQueriesData>;
  document(docId: string): Promise<DocumentData>;
  relatedDocs(docId: string): Promise<RelatedDocsData>;
  compare(a: string, b: string, minLen?: number): Promise<CompareData>;
  top(kind: TopData["kind"], scope: TopData["scope"], user?: string): Promise<TopData>;
  log(user: string, kind: string, key: string): Promise<void>;
}

export function httpClient(base = "/api/v1"): ApiClient {
  async function get<T>(path: string, params: Record<string, string> = {}): Promise<T> {
    const qs = new URLSearchParams(params).toString();
    const response = await fetch(`${base}${path}${qs ? `?${qs}` : ""}`);
    return unwrap<T>(await response.json());
  }
  return {
    browse: (path) => get("/browse", path.length ? { path: path.join("/") } : {}),
    search: (query, limit = 10) => get("/search", { q: query, limit: String(limit) }),
    relatedQueries: (query) => get("/related_queries", { q: query }),
    document: (docId) => get(`/doc/${encodeURIComponent(docId)}`),
    relatedDocs: (docId) => get(`/related_docs/${encodeURIComponent(docId)}`),
    compare: (a, b, minLen = 3) => get("/compare", { a, b, min_len: String(minLen) }),
    top: (kind, scope, user) =>
      get("/community/top", { kind, scope, ...(user ? { user } : {}) }),
    log: async (user, kind, key) => {
      const response = await fetch(`${base}/log`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ user, kind, key }),
      });
      unwrap(await response.json());
    },
  };
}
