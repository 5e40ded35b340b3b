/* Side-by-side comparison: two synced panes of raw text with shared
 * sequences marked, a slider filtering sequences by length (minimum 3,
 * default = the longest), a per-pane horizontal density map, and
 * click-to-select highlighting across both panes. */

import { CompareData, DocumentData, SharedSequence } from "../api.js";
import { clear, el } from "../dom.js";

export interface CompareHandlers {
  onMinLenChange(minLen: number): void;
  onSelect(index: number): void;
}

export function sequenceLength(seq: SharedSequence): number {
  return Math.max(seq.a_len, seq.b_len);
}

export function filterByLength(sequences: SharedSequence[], minLen: number): SharedSequence[] {
  return sequences.filter((s) => sequenceLength(s) >= minLen);
}

export function renderCompare(
  container: HTMLElement,
  data: CompareData,
  docA: DocumentData,
  docB: DocumentData,
  options: { minLen?: number; selected?: number },
  handlers: CompareHandlers,
): void {
  clear(container);
  const root = el("section", { class: "compare-view" });

  if (data.sequences.length === 0) {
    root.append(el("p", { class: "empty" }, ["These documents share no sequences."]));
    container.append(root);
    return;
  }

  const longest = Math.max(...data.sequences.map(sequenceLength));
  const minLen = clamp(options.minLen ?? longest, 3, longest);
  const visible = filterByLength(data.sequences, minLen);
  const selected = options.selected !== undefined && options.selected < data.sequences.length
    ? options.selected
    : data.sequences.indexOf(visible[0]);

  const slider = el("input", {
    type: "range",
    min: "3",
    max: String(longest),
    value: String(minLen),
    class: "length-slider",
  }) as HTMLInputElement;
  slider.addEventListener("input", () => handlers.onMinLenChange(Number(slider.value)));
  root.append(
    el("div", { class: "controls" }, [
      el("label", {}, ["sequence length ≥ ", slider, el("output", {}, [String(minLen)])]),
      el("span", { class: "count" }, [`${visible.length} of ${data.sequences.length} sequences`]),
    ]),
  );

  const panes = el("div", { class: "panes" });
  panes.append(
    renderPane("a", docA, data.sequences, visible, selected, handlers),
    renderPane("b", docB, data.sequences, visible, selected, handlers),
  );
  root.append(panes);
  container.append(root);
}

function renderPane(
  side: "a" | "b",
  doc: DocumentData,
  all: SharedSequence[],
  visible: SharedSequence[],
  selected: number,
  handlers: CompareHandlers,
): HTMLElement {
  const pane = el("div", { class: `pane pane-${side}` });
  pane.append(el("h3", {}, [doc.title]));

  const map = el("div", { class: "sequence-map" });
  const textLength = Math.max(doc.text.length, 1);
  for (const seq of visible) {
    const index = all.indexOf(seq);
    const start = side === "a" ? seq.a_start : seq.b_start;
    const length = side === "a" ? seq.a_len : seq.b_len;
    const marker = el("span", {
      class: `map-mark${index === selected ? " selected" : ""}`,
      "data-index": String(index),
      style: `left:${(100 * start) / textLength}%;width:${(100 * length) / textLength}%`,
    });
    marker.addEventListener("click", () => handlers.onSelect(index));
    map.append(marker);
  }
  pane.append(map);

  const body = el("article", { class: "pane-text" });
  body.append(...sequenceNodes(side, doc.text, all, visible, selected, handlers));
  pane.append(body);
  return pane;
}

function sequenceNodes(
  side: "a" | "b",
  text: string,
  all: SharedSequence[],
  visible: SharedSequence[],
  selected: number,
  handlers: CompareHandlers,
): Node[] {
  const spans = visible
    .map((seq) => ({
      index: all.indexOf(seq),
      start: side === "a" ? seq.a_start : seq.b_start,
      end: (side === "a" ? seq.a_start : seq.b_start) + (side === "a" ? seq.a_len : seq.b_len),
    }))
    .sort((x, y) => x.start - y.start || y.end - x.end);
  const nodes: Node[] = [];
  let cursor = 0;
  for (const span of spans) {
    const start = Math.max(span.start, cursor);
    const end = Math.min(span.end, text.length);
    if (end <= start) continue; // nested inside an earlier, longer sequence
    if (start > cursor) nodes.push(document.createTextNode(text.slice(cursor, start)));
    const mark = el(
      "mark",
      {
        class: `seq${span.index === selected ? " selected" : ""}`,
        "data-index": String(span.index),
      },
      [text.slice(start, end)],
    );
    mark.addEventListener("click", () => handlers.onSelect(span.index));
    nodes.push(mark);
    cursor = end;
  }
  if (cursor < text.length) nodes.push(document.createTextNode(text.slice(cursor)));
  return nodes;
}

function clamp(value: number, lo: number, hi: number): number {
  return Math.min(Math.max(value, lo), hi);
}
