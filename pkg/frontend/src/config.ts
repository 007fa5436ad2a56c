// Service URL resolution: ?api= query parameter wins, then the
// window.PROMPTMINER_URL global (settable before the module loads),
// then same-origin.

export function serviceUrl(): string {
  if (typeof window === "undefined") {
    return "";
  }
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  if (fromQuery) {
    return fromQuery.replace(/\/$/, "");
  }
  const fromGlobal = (window as { PROMPTMINER_URL?: string }).PROMPTMINER_URL;
  if (fromGlobal) {
    return fromGlobal.replace(/\/$/, "");
  }
  return "";
}

export const CATEGORY_COLORS: Record<string, string> = {
  style: "#8a63d2",
  content: "#2f9e44",
  quality: "#e8590c",
  unknown: "#868e96",
};
