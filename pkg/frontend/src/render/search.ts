/* Search results view: related-query chips (most probable first, left to
 * right) above the ranked results, each with its top-3 snippets. Rendering
 * preserves the API order exactly; no client-side re-sorting ever. */

import { RelatedQueriesData, SearchData } from "../api.js";
import { clear, el, highlightSpans } from "../dom.js";

export interface SearchHandlers {
  onOpenSnippet(docId: string, query: string, offset: number): void;
  onQuery(query: string): void;
}

export function renderSearch(
  container: HTMLElement,
  data: SearchData,
  related: RelatedQueriesData,
  handlers: SearchHandlers,
): void {
  clear(container);
  const root = el("section", { class: "search-view" });

  if (related.related.length > 0) {
    const chips = el("div", { class: "related-chips" }, [
      el("span", { class: "chips-label" }, ["Related:"]),
    ]);
    for (const rq of related.related) {
      const chip = el("button", { class: "chip", "data-query": rq.text }, [rq.text]);
      chip.addEventListener("click", () => handlers.onQuery(rq.text));
      chips.append(chip);
    }
    root.append(chips);
  }

  const list = el("ol", { class: "results" });
  for (const result of data.results) {
    const item = el("li", {
      class: `result ${result.exact ? "exact" : "partial"}`,
      "data-doc": result.doc_id,
    });
    const badge = result.exact ? "exact" : `partial ${result.matched_len}`;
    item.append(
      el("h3", { class: "result-title" }, [
        el("span", { class: "badge" }, [badge]),
        ` ${result.title}`,
      ]),
    );
    const snippets = el("div", { class: "snippets" });
    for (const snippet of result.snippets) {
      const block = el("p", { class: "snippet", "data-start": String(snippet.start) });
      block.append(...highlightSpans(snippet.text, snippet.start, snippet.highlight_spans, "hit"));
      block.addEventListener("click", () =>
        handlers.onOpenSnippet(result.doc_id, data.query, snippet.start),
      );
      snippets.append(block);
    }
    item.append(snippets);
    list.append(item);
  }
  if (data.results.length === 0) {
    root.append(el("p", { class: "empty" }, [`No documents match "${data.query}".`]));
  }
  root.append(list);
  container.append(root);
}
