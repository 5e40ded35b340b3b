/* Trending panels: top-10 queries and documents for the user and the
 * whole community; clicking replays the query or opens the document. */

import { TopData } from "../api.js";
import { clear, el } from "../dom.js";

export interface CommunityHandlers {
  onQuery(query: string): void;
  onOpenDocument(docId: string): void;
}

export function renderCommunity(
  container: HTMLElement,
  panels: { title: string; data: TopData }[],
  handlers: CommunityHandlers,
): void {
  clear(container);
  const root = el("aside", { class: "community" });
  for (const { title, data } of panels) {
    const panel = el("div", { class: `panel ${data.kind} ${data.scope}` });
    panel.append(el("h4", {}, [title]));
    const list = el("ol", { class: "top-list" });
    for (const item of data.items) {
      const row = el("li", { "data-key": item.key });
      const link = el("a", { href: "#" }, [item.key]);
      link.addEventListener("click", (e) => {
        e.preventDefault();
        if (data.kind === "query") {
          handlers.onQuery(item.key);
        } else {
          handlers.onOpenDocument(item.key);
        }
      });
      row.append(link, el("span", { class: "score" }, [` ${item.score.toFixed(2)}`]));
      list.append(row);
    }
    if (data.items.length === 0) {
      panel.append(el("p", { class: "empty" }, ["nothing yet"]));
    }
    panel.append(list);
    root.append(panel);
  }
  container.append(root);
}
