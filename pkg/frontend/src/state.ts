/* View state <-> URL hash codec. Every state round-trips through its URL,
 * so deep links and back/forward navigation reproduce the rendered view. */

export type ViewState =
  | { route: "browse"; path: string[]; view: "list" | "treemap" }
  | { route: "results"; query: string }
  | { route: "document"; docId: string; query?: string; scrollTo?: number; entities: boolean }
  | { route: "compare"; a: string; b: string; minLen?: number; selected?: number };

export const HOME: ViewState = { route: "browse", path: [], view: "list" };

export function encodeState(state: ViewState): string {
  switch (state.route) {
    case "browse": {
      const path = state.path.map(encodeURIComponent).join("/");
      const params = new URLSearchParams();
      if (state.view !== "list") params.set("view", state.view);
      return `#/browse${path ? `/${path}` : ""}${qs(params)}`;
    }
    case "results": {
      const params = new URLSearchParams({ q: state.query });
      return `#/results${qs(params)}`;
    }
    case "document": {
      const params = new URLSearchParams();
      if (state.query) params.set("q", state.query);
      if (state.scrollTo !== undefined) params.set("pos", String(state.scrollTo));
      if (state.entities) params.set("entities", "1");
      return `#/doc/${encodeURIComponent(state.docId)}${qs(params)}`;
    }
    case "compare": {
      const params = new URLSearchParams({ a: state.a, b: state.b });
      if (state.minLen !== undefined) params.set("len", String(state.minLen));
      if (state.selected !== undefined) params.set("sel", String(state.selected));
      return `#/compare${qs(params)}`;
    }
  }
}

export function decodeState(hash: string): ViewState {
  const raw = hash.startsWith("#") ? hash.slice(1) : hash;
  const [pathPart, queryPart] = splitOnce(raw, "?");
  const params = new URLSearchParams(queryPart);
  const segments = pathPart.split("/").filter((s) => s.length > 0);
  switch (segments[0]) {
    case "results": {
      const query = params.get("q");
      return query ? { route: "results", query } : HOME;
    }
    case "doc": {
      if (segments.length < 2) return HOME;
      const pos = params.get("pos");
      return {
        route: "document",
        docId: decodeURIComponent(segments[1]),
        query: params.get("q") ?? undefined,
        scrollTo: pos !== null ? Number(pos) : undefined,
        entities: params.get("entities") === "1",
      };
    }
    case "compare": {
      const a = params.get("a");
      const b = params.get("b");
      if (!a || !b) return HOME;
      const len = params.get("len");
      const sel = params.get("sel");
      return {
        route: "compare",
        a,
        b,
        minLen: len !== null ? Number(len) : undefined,
        selected: sel !== null ? Number(sel) : undefined,
      };
    }
    case "browse":
      return {
        route: "browse",
        path: segments.slice(1).map(decodeURIComponent),
        view: params.get("view") === "treemap" ? "treemap" : "list",
      };
    default:
      return HOME;
  }
}

function qs(params: URLSearchParams): string {
  const s = params.toString();
  return s ? `?${s}` : "";
}

function splitOnce(value: string, sep: string): [string, string] {
  const i = value.indexOf(sep);
  return i < 0 ? [value, ""] : [value.slice(0, i), value.slice(i + 1)];
}
