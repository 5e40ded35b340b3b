/* Fixture loading for the offline UI tests: recorded envelopes unwrap
 * through the production `unwrap`, and the fake ApiClient serves them so
 * views render with zero live service. */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import {
  ApiClient,
  BrowseData,
  CompareData,
  DocumentData,
  Envelope,
  RelatedDocsData,
  RelatedQueriesData,
  SearchData,
  TopData,
  unwrap,
} from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));

export function envelope<T>(name: string): Envelope<T> {
  return JSON.parse(readFileSync(join(here, "..", "fixtures", `${name}.json`), "utf-8"));
}

export function fixture<T>(name: string): T {
  return unwrap(envelope<T>(name));
}

export const NOAH = fixture<DocumentData>("doc_noah").doc_id;
export const NOE = fixture<DocumentData>("doc_noe").doc_id;

export function fixtureClient(): ApiClient {
  return {
    async browse(path: string[]): Promise<BrowseData> {
      if (path.length === 0) return fixture("browse_root");
      if (path.join("/") === "bible") return fixture("browse_bible");
      throw new Error(`no browse fixture for ${path.join("/")}`);
    },
    async search(query: string): Promise<SearchData> {
      return fixture(query === "zzzzzz" ? "search_empty" : "search");
    },
    async relatedQueries(): Promise<RelatedQueriesData> {
      return fixture("related_queries");
    },
    async document(docId: string): Promise<DocumentData> {
      if (docId === NOAH) return fixture("doc_noah");
      if (docId === NOE) return fixture("doc_noe");
      throw new Error(`no document fixture for ${docId}`);
    },
    async relatedDocs(): Promise<RelatedDocsData> {
      return fixture("related_docs_noah");
    },
    async compare(): Promise<CompareData> {
      return fixture("compare_noah_noe");
    },
    async top(kind, scope): Promise<TopData> {
      if (kind === "query") {
        return fixture(scope === "user" ? "top_query_user" : "top_query_community");
      }
      return fixture("top_docs_community");
    },
    async log(): Promise<void> {},
  };
}
