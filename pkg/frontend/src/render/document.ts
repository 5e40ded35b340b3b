/* Document view: full text with toggleable highlight layers (query matches
 * and gazetteer entities), plus a metadata / related-documents side panel. */

import { DocumentData, RelatedDocsData } from "../api.js";
import { clear, el } from "../dom.js";

export interface DocumentHandlers {
  onCompare(a: string, b: string): void;
  onToggleEntities(show: boolean): void;
}

export function querySpans(text: string, query: string | undefined): [number, number][] {
  if (!query) return [];
  const spans: [number, number][] = [];
  let from = 0;
  while (true) {
    const i = text.indexOf(query, from);
    if (i < 0) break;
    spans.push([i, query.length]);
    from = i + 1;
  }
  return spans;
}

/* One pass over the text, segmenting on layer-coverage changes, so query
 * and entity layers can overlap arbitrarily without nesting trouble. */
export function layeredNodes(
  text: string,
  querySpans: [number, number][],
  entitySpans: [number, number][],
): Node[] {
  const queryCover = coverage(text.length, querySpans);
  const entityCover = coverage(text.length, entitySpans);
  const nodes: Node[] = [];
  let start = 0;
  for (let i = 1; i <= text.length; i++) {
    if (
      i === text.length ||
      queryCover[i] !== queryCover[start] ||
      entityCover[i] !== entityCover[start]
    ) {
      const piece = text.slice(start, i);
      const classes = [
        queryCover[start] ? "hit" : "",
        entityCover[start] ? "entity" : "",
      ].filter(Boolean);
      nodes.push(
        classes.length
          ? el("mark", { class: classes.join(" ") }, [piece])
          : document.createTextNode(piece),
      );
      start = i;
    }
  }
  return nodes;
}

function coverage(length: number, spans: [number, number][]): Uint8Array {
  const diff = new Int32Array(length + 1);
  for (const [start, spanLength] of spans) {
    const lo = Math.max(0, start);
    const hi = Math.min(length, start + spanLength);
    if (hi > lo) {
      diff[lo] += 1;
      diff[hi] -= 1;
    }
  }
  const cover = new Uint8Array(length);
  let depth = 0;
  for (let i = 0; i < length; i++) {
    depth += diff[i];
    cover[i] = depth > 0 ? 1 : 0;
  }
  return cover;
}

export function renderDocument(
  container: HTMLElement,
  doc: DocumentData,
  related: RelatedDocsData,
  options: { query?: string; scrollTo?: number; entities: boolean },
  handlers: DocumentHandlers,
): void {
  clear(container);
  const root = el("section", { class: "document-view" });
  root.append(el("h2", { class: "doc-title" }, [doc.title]));

  const entitySpans: [number, number][] = options.entities
    ? doc.entities.flatMap((e) => e.positions.map((p) => [p, e.length] as [number, number]))
    : [];
  const body = el("article", { class: "doc-text" });
  body.append(...layeredNodes(doc.text, querySpans(doc.text, options.query), entitySpans));
  if (options.scrollTo !== undefined) {
    body.dataset.scrollTo = String(options.scrollTo);
  }
  root.append(body);

  const panel = el("aside", { class: "side-panel" });
  const meta = el("dl", { class: "metadata" });
  for (const [key, value] of Object.entries(doc.metadata)) {
    meta.append(el("dt", {}, [key]), el("dd", {}, [value]));
  }
  panel.append(el("h3", {}, ["Metadata"]), meta);

  const entityToggle = el("label", { class: "layer-toggle" });
  const checkbox = el("input", { type: "checkbox" }) as HTMLInputElement;
  checkbox.checked = options.entities;
  checkbox.addEventListener("change", () => handlers.onToggleEntities(checkbox.checked));
  entityToggle.append(checkbox, " entity layer");
  panel.append(entityToggle);

  const relatedList = el("ul", { class: "related-docs" });
  for (const other of related.related) {
    const item = el("li", { "data-doc": other.doc_id });
    const link = el("a", { href: "#" }, [`${other.title} (${other.similarity.toFixed(3)})`]);
    link.addEventListener("click", (e) => {
      e.preventDefault();
      handlers.onCompare(doc.doc_id, other.doc_id);
    });
    item.append(link);
    relatedList.append(item);
  }
  panel.append(el("h3", {}, ["Related documents"]), relatedList);
  root.append(panel);
  container.append(root);
}
