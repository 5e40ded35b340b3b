import { describe, expect, it, vi } from "vitest";

import { TopData } from "../src/api.js";
import { renderCommunity } from "../src/render/community.js";
import { decodeState, encodeState, HOME, ViewState } from "../src/state.js";
import { fixture, fixtureClient, NOAH, NOE } from "./fixtures.js";
import { renderBrowse } from "../src/render/browse.js";
import { renderCompare } from "../src/render/compare.js";
import { renderDocument } from "../src/render/document.js";
import { renderSearch } from "../src/render/search.js";

const STATES: ViewState[] = [
  { route: "browse", path: [], view: "list" },
  { route: "browse", path: ["bible"], view: "treemap" },
  { route: "browse", path: ["bible", "ch 1"], view: "list" },
  { route: "results", query: "chief of the butlers" },
  { route: "results", query: "ha?m & <x>" },
  { route: "document", docId: NOAH, entities: false },
  { route: "document", docId: NOAH, query: "Japheth", scrollTo: 12, entities: true },
  { route: "compare", a: NOAH, b: NOE },
  { route: "compare", a: NOAH, b: NOE, minLen: 7, selected: 2 },
];

describe("view-state URLs", () => {
  it("every state round-trips through its URL", () => {
    for (const state of STATES) {
      expect(decodeState(encodeState(state))).toEqual(state);
    }
  });

  it("unknown or malformed hashes fall back home", () => {
    for (const hash of ["", "#/", "#/nope", "#/doc", "#/results", "#/compare?a=x"]) {
      expect(decodeState(hash)).toEqual(HOME);
    }
  });

  it("encoding is stable", () => {
    for (const state of STATES) {
      expect(encodeState(decodeState(encodeState(state)))).toBe(encodeState(state));
    }
  });
});

describe("deep-link reproducibility", () => {
  it("rendering a decoded URL reproduces the identical view", async () => {
    const api = fixtureClient();
    for (const state of STATES) {
      const direct = document.createElement("div");
      const viaUrl = document.createElement("div");
      await renderState(api, direct, state);
      await renderState(api, viaUrl, decodeState(encodeState(state)));
      expect(viaUrl.innerHTML).toBe(direct.innerHTML);
      expect(viaUrl.innerHTML.length).toBeGreaterThan(0);
    }
  });
});

describe("community panels", () => {
  it("renders top lists in API order and replays clicks", () => {
    const container = document.createElement("div");
    const community = fixture<TopData>("top_query_community");
    const handlers = { onQuery: vi.fn(), onOpenDocument: vi.fn() };
    renderCommunity(container, [{ title: "Trending queries", data: community }], handlers);
    const keys = [...container.querySelectorAll(".top-list li")].map(
      (n) => (n as HTMLElement).dataset.key,
    );
    expect(keys).toEqual(community.items.map((i) => i.key));
    expect(keys.length).toBeLessThanOrEqual(10);
    container.querySelector<HTMLElement>(".top-list a")!.click();
    expect(handlers.onQuery).toHaveBeenCalledWith(community.items[0].key);
  });

  it("shows empty panels before any activity", () => {
    const container = document.createElement("div");
    const empty: TopData = { kind: "doc_view", scope: "user", items: [] };
    renderCommunity(container, [{ title: "Your documents", data: empty }], {
      onQuery: vi.fn(),
      onOpenDocument: vi.fn(),
    });
    expect(container.querySelector(".empty")).not.toBeNull();
  });
});

/* Render any state offline from fixtures with inert handlers. */
async function renderState(
  api: ReturnType<typeof fixtureClient>,
  container: HTMLElement,
  state: ViewState,
): Promise<void> {
  const noop = () => {};
  switch (state.route) {
    case "browse": {
      let data;
      try {
        data = await api.browse(state.path);
      } catch {
        data = { path: state.path, entries: [] };
      }
      renderBrowse(container, data, state.view, {
        onDescend: noop,
        onOpenDocument: noop,
        onToggleView: noop,
      });
      break;
    }
    case "results": {
      let data;
      try {
        data = await api.search(state.query);
      } catch {
        data = { query: state.query, results: [] };
      }
      renderSearch(container, data, { query: state.query, related: [] }, {
        onOpenSnippet: noop,
        onQuery: noop,
      });
      break;
    }
    case "document":
      renderDocument(container, await api.document(state.docId), await api.relatedDocs(state.docId), state, {
        onCompare: noop,
        onToggleEntities: noop,
      });
      break;
    case "compare":
      renderCompare(
        container,
        await api.compare(state.a, state.b),
        await api.document(state.a),
        await api.document(state.b),
        state,
        { onMinLenChange: noop, onSelect: noop },
      );
      break;
  }
}
