/* Squarified treemap layout: fills a rectangle with cells whose areas are
 * proportional to their values, keeping aspect ratios close to square by
 * growing strips along the short side while the worst ratio improves. */

export interface TreemapItem {
  label: string;
  value: number;
}

export interface TreemapCell extends TreemapItem {
  x: number;
  y: number;
  w: number;
  h: number;
}

export function squarify(items: TreemapItem[], width: number, height: number): TreemapCell[] {
  const positive = items.filter((i) => i.value > 0);
  if (positive.length === 0 || width <= 0 || height <= 0) return [];
  const total = positive.reduce((sum, i) => sum + i.value, 0);
  const scale = (width * height) / total;
  const scaled = [...positive]
    .sort((a, b) => b.value - a.value || a.label.localeCompare(b.label))
    .map((i) => ({ ...i, area: i.value * scale }));
  const cells: TreemapCell[] = [];
  layout(scaled, 0, 0, width, height, cells);
  return cells;
}

interface Scaled extends TreemapItem {
  area: number;
}

function layout(items: Scaled[], x: number, y: number, w: number, h: number, out: TreemapCell[]): void {
  if (items.length === 0) return;
  if (items.length === 1) {
    out.push({ label: items[0].label, value: items[0].value, x, y, w, h });
    return;
  }
  const side = Math.min(w, h);
  let take = 1;
  let stripArea = items[0].area;
  let worst = worstRatio([items[0].area], stripArea, side);
  while (take < items.length) {
    const areas = items.slice(0, take + 1).map((i) => i.area);
    const next = worstRatio(areas, stripArea + items[take].area, side);
    if (next > worst) break;
    stripArea += items[take].area;
    worst = next;
    take += 1;
  }
  const strip = items.slice(0, take);
  const rest = items.slice(take);
  const thickness = stripArea / side;
  let offset = 0;
  for (let i = 0; i < strip.length; i++) {
    const span = i === strip.length - 1 ? side - offset : strip[i].area / thickness;
    if (w >= h) {
      out.push({ label: strip[i].label, value: strip[i].value, x, y: y + offset, w: thickness, h: span });
    } else {
      out.push({ label: strip[i].label, value: strip[i].value, x: x + offset, y, w: span, h: thickness });
    }
    offset += span;
  }
  if (w >= h) {
    layout(rest, x + thickness, y, w - thickness, h, out);
  } else {
    layout(rest, x, y + thickness, w, h - thickness, out);
  }
}

function worstRatio(areas: number[], total: number, side: number): number {
  const thickness = total / side;
  let worst = 1;
  for (const area of areas) {
    const span = area / thickness;
    const ratio = Math.max(thickness / span, span / thickness);
    if (ratio > worst) worst = ratio;
  }
  return worst;
}
