/* Faceted browsing in two presentations: a directory-style list and a
 * squarified treemap whose cell areas follow subtree document counts. */

import { BrowseData } from "../api.js";
import { clear, el } from "../dom.js";
import { squarify } from "../treemap.js";

export interface BrowseHandlers {
  onDescend(path: string[]): void;
  onOpenDocument(docId: string): void;
  onToggleView(view: "list" | "treemap"): void;
}

export const TREEMAP_WIDTH = 800;
export const TREEMAP_HEIGHT = 500;

export function renderBrowse(
  container: HTMLElement,
  data: BrowseData,
  view: "list" | "treemap",
  handlers: BrowseHandlers,
): void {
  clear(container);
  const root = el("section", { class: "browse-view" });

  const crumbs = el("nav", { class: "breadcrumbs" });
  const home = el("a", { href: "#/browse", class: "crumb" }, ["corpus"]);
  home.addEventListener("click", (e) => {
    e.preventDefault();
    handlers.onDescend([]);
  });
  crumbs.append(home);
  data.path.forEach((label, i) => {
    crumbs.append(" / ");
    const crumb = el("a", { href: "#", class: "crumb" }, [label]);
    crumb.addEventListener("click", (e) => {
      e.preventDefault();
      handlers.onDescend(data.path.slice(0, i + 1));
    });
    crumbs.append(crumb);
  });
  root.append(crumbs);

  const toggle = el("button", { class: "view-toggle" }, [
    view === "list" ? "treemap view" : "list view",
  ]);
  toggle.addEventListener("click", () =>
    handlers.onToggleView(view === "list" ? "treemap" : "list"),
  );
  root.append(toggle);

  root.append(view === "list" ? renderList(data, handlers) : renderTreemap(data, handlers));
  container.append(root);
}

function renderList(data: BrowseData, handlers: BrowseHandlers): HTMLElement {
  const list = el("ul", { class: "browse-list" });
  for (const entry of data.entries) {
    const item = el("li", { class: `entry ${entry.kind}` });
    const link = el("a", { href: "#" }, [
      entry.kind === "cluster" ? `${entry.label}/ (${entry.doc_count})` : entry.label,
    ]);
    link.addEventListener("click", (e) => {
      e.preventDefault();
      if (entry.kind === "cluster") {
        handlers.onDescend([...data.path, entry.label]);
      } else if (entry.doc_id) {
        handlers.onOpenDocument(entry.doc_id);
      }
    });
    item.append(link);
    list.append(item);
  }
  return list;
}

function renderTreemap(data: BrowseData, handlers: BrowseHandlers): HTMLElement {
  const box = el("div", {
    class: "treemap",
    style: `position:relative;width:${TREEMAP_WIDTH}px;height:${TREEMAP_HEIGHT}px`,
  });
  const items = data.entries.map((entry) => ({
    label: entry.label,
    value: entry.kind === "cluster" ? entry.doc_count ?? 0 : 1,
  }));
  const byLabel = new Map(data.entries.map((entry) => [entry.label, entry]));
  for (const cell of squarify(items, TREEMAP_WIDTH, TREEMAP_HEIGHT)) {
    const entry = byLabel.get(cell.label);
    const node = el(
      "div",
      {
        class: `cell ${entry?.kind ?? ""}`,
        "data-label": cell.label,
        "data-value": String(cell.value),
        style:
          `position:absolute;left:${cell.x}px;top:${cell.y}px;` +
          `width:${cell.w}px;height:${cell.h}px`,
      },
      [el("span", { class: "cell-label" }, [`${cell.label} (${cell.value})`])],
    );
    node.addEventListener("click", () => {
      if (!entry) return;
      if (entry.kind === "cluster") {
        handlers.onDescend([...data.path, entry.label]);
      } else if (entry.doc_id) {
        handlers.onOpenDocument(entry.doc_id);
      }
    });
    box.append(node);
  }
  return box;
}
