/* Minimal element builder; text content only, no HTML injection. */

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child);
  }
  return node;
}

export function clear(node: HTMLElement): void {
  while (node.firstChild) {
    node.removeChild(node.firstChild);
  }
}

/* Split `text` into plain and highlighted pieces for the given absolute
 * (start, length) spans; overlapping spans are merged first. */
export function highlightSpans(
  text: string,
  offset: number,
  spans: [number, number][],
  className: string,
  dataIndex?: (spanIndex: number) => string,
): Node[] {
  const sorted = spans
    .map(([start, length], i) => ({ start: start - offset, end: start - offset + length, i }))
    .filter((s) => s.end > 0 && s.start < text.length)
    .sort((a, b) => a.start - b.start || b.end - a.end);
  const nodes: Node[] = [];
  let cursor = 0;
  for (const span of sorted) {
    const start = Math.max(span.start, cursor);
    const end = Math.min(span.end, text.length);
    if (end <= start) continue;
    if (start > cursor) nodes.push(document.createTextNode(text.slice(cursor, start)));
    const mark = el("mark", { class: className }, [text.slice(start, end)]);
    if (dataIndex) mark.dataset.index = dataIndex(span.i);
    nodes.push(mark);
    cursor = end;
  }
  if (cursor < text.length) nodes.push(document.createTextNode(text.slice(cursor)));
  return nodes;
}
