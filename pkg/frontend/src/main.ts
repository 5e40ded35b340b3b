/* Application shell and router. All ordering and scoring comes from the
 * API; this layer only fetches, renders, tracks the URL hash, and logs
 * usage events. At most one request cycle is live per navigation: stale
 * responses are dropped (latest wins). */

import { ApiClient, httpClient } from "./api.js";
import { clear, el } from "./dom.js";
import { renderBrowse } from "./render/browse.js";
import { renderCommunity } from "./render/community.js";
import { renderCompare } from "./render/compare.js";
import { renderDocument } from "./render/document.js";
import { renderSearch } from "./render/search.js";
import { decodeState, encodeState, ViewState } from "./state.js";

const USER_KEY = "chargram-user";

function userId(): string {
  let id = localStorage.getItem(USER_KEY);
  if (!id) {
    id = `u-${Math.random().toString(36).slice(2, 10)}`;
    localStorage.setItem(USER_KEY, id);
  }
  return id;
}

export class App {
  private generation = 0;

  constructor(
    private api: ApiClient,
    private main: HTMLElement,
    private history: HTMLElement,
    private status: HTMLElement,
  ) {}

  navigate(state: ViewState): void {
    const hash = encodeState(state);
    if (window.location.hash !== hash) {
      window.location.hash = hash; // hashchange listener re-enters render()
    } else {
      void this.render(state);
    }
  }

  async render(state: ViewState): Promise<void> {
    const generation = ++this.generation;
    const fresh = () => generation === this.generation;
    try {
      switch (state.route) {
        case "browse": {
          const data = await this.api.browse(state.path);
          if (!fresh()) return;
          renderBrowse(this.main, data, state.view, {
            onDescend: (path) => this.navigate({ route: "browse", path, view: state.view }),
            onOpenDocument: (docId) => this.openDocument(docId),
            onToggleView: (view) => this.navigate({ ...state, view }),
          });
          break;
        }
        case "results": {
          void this.log("query", state.query);
          const [data, related] = await Promise.all([
            this.api.search(state.query),
            this.api.relatedQueries(state.query),
          ]);
          if (!fresh()) return;
          renderSearch(this.main, data, related, {
            onOpenSnippet: (docId, query, offset) =>
              this.navigate({ route: "document", docId, query, scrollTo: offset, entities: false }),
            onQuery: (query) => this.navigate({ route: "results", query }),
          });
          break;
        }
        case "document": {
          void this.log("doc_view", state.docId);
          const [doc, related] = await Promise.all([
            this.api.document(state.docId),
            this.api.relatedDocs(state.docId),
          ]);
          if (!fresh()) return;
          renderDocument(this.main, doc, related, state, {
            onCompare: (a, b) => this.navigate({ route: "compare", a, b }),
            onToggleEntities: (show) => this.navigate({ ...state, entities: show }),
          });
          this.scrollToOffset(state.scrollTo);
          break;
        }
        case "compare": {
          const [data, docA, docB] = await Promise.all([
            this.api.compare(state.a, state.b),
            this.api.document(state.a),
            this.api.document(state.b),
          ]);
          if (!fresh()) return;
          renderCompare(this.main, data, docA, docB, state, {
            onMinLenChange: (minLen) => this.navigate({ ...state, minLen }),
            onSelect: (selected) => this.navigate({ ...state, selected }),
          });
          break;
        }
      }
      this.showError(null);
    } catch (err) {
      if (fresh()) this.showError(err);
    }
    void this.refreshCommunity();
  }

  private scrollToOffset(offset: number | undefined): void {
    if (offset === undefined) return;
    const body = this.main.querySelector<HTMLElement>(".doc-text");
    body?.scrollIntoView();
  }

  private async refreshCommunity(): Promise<void> {
    try {
      const user = userId();
      const panels = [
        { title: "Your queries", data: await this.api.top("query", "user", user) },
        { title: "Your documents", data: await this.api.top("doc_view", "user", user) },
        { title: "Trending queries", data: await this.api.top("query", "community") },
        { title: "Trending documents", data: await this.api.top("doc_view", "community") },
      ];
      renderCommunity(this.history, panels, {
        onQuery: (query) => this.navigate({ route: "results", query }),
        onOpenDocument: (docId) => this.openDocument(docId),
      });
    } catch {
      // community panels are decorative; never block the main view
    }
  }

  private openDocument(docId: string): void {
    this.navigate({ route: "document", docId, entities: false });
  }

  private async log(kind: string, key: string): Promise<void> {
    try {
      await this.api.log(userId(), kind, key);
    } catch {
      try {
        await this.api.log(userId(), kind, key); // one silent retry
      } catch {
        /* logging must never surface to the user */
      }
    }
  }

  private showError(err: unknown): void {
    clear(this.status);
    if (err) {
      this.status.append(el("p", { class: "error" }, [String((err as Error).message ?? err)]));
    }
  }
}

export function boot(): void {
  const api = httpClient();
  const main = document.getElementById("main")!;
  const history = document.getElementById("history")!;
  const status = document.getElementById("status")!;
  const app = new App(api, main, history, status);

  const form = document.getElementById("search-form") as HTMLFormElement;
  const input = document.getElementById("search-input") as HTMLInputElement;
  form.addEventListener("submit", (e) => {
    e.preventDefault();
    if (input.value.trim()) {
      app.navigate({ route: "results", query: input.value.trim() });
    }
  });

  const renderFromHash = () => {
    const state = decodeState(window.location.hash);
    if (state.route === "results") input.value = state.query;
    void app.render(state);
  };
  window.addEventListener("hashchange", renderFromHash);
  renderFromHash();
}

if (typeof document !== "undefined" && document.getElementById("main")) {
  boot();
}
