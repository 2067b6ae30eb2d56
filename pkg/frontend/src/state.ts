/** Facet selection state and its URL query-string round-trip. */

export type FacetDimension = "topics" | "roles" | "availability" | "types";

export interface Selection {
  topics: string[];
  roles: string[];
  availability: string | null;
  types: string[];
}

export function emptySelection(): Selection {
  return { topics: [], roles: [], availability: null, types: [] };
}

export function isEmpty(sel: Selection): boolean {
  return (
    sel.topics.length === 0 &&
    sel.roles.length === 0 &&
    sel.availability === null &&
    sel.types.length === 0
  );
}

/** Click semantics: clicking an active facet value clears it. */
export function toggleFacet(
  sel: Selection,
  dimension: FacetDimension,
  value: string,
): Selection {
  const next: Selection = {
    topics: [...sel.topics],
    roles: [...sel.roles],
    availability: sel.availability,
    types: [...sel.types],
  };
  if (dimension === "availability") {
    next.availability = sel.availability === value ? null : value;
    return next;
  }
  const values = next[dimension];
  const at = values.indexOf(value);
  if (at >= 0) {
    values.splice(at, 1);
  } else {
    values.push(value);
  }
  return next;
}

export function isActive(
  sel: Selection,
  dimension: FacetDimension,
  value: string,
): boolean {
  if (dimension === "availability") return sel.availability === value;
  return sel[dimension].includes(value);
}

/** Selection and page as API query parameters (also the deep-link form). */
export function selectionToQuery(sel: Selection, page?: number): URLSearchParams {
  const params = new URLSearchParams();
  if (sel.topics.length) params.set("topics", sel.topics.join(","));
  if (sel.roles.length) params.set("roles", sel.roles.join(","));
  if (sel.availability) params.set("availability", sel.availability);
  if (sel.types.length) params.set("types", sel.types.join(","));
  if (page !== undefined && page !== 1) params.set("page", String(page));
  return params;
}

export function selectionFromQuery(params: URLSearchParams): {
  selection: Selection;
  page: number;
} {
  const list = (key: string): string[] =>
    (params.get(key) ?? "")
      .split(",")
      .map((s) => s.trim())
      .filter((s) => s.length > 0);
  const rawPage = Number(params.get("page") ?? "1");
  return {
    selection: {
      topics: list("topics"),
      roles: list("roles"),
      availability: params.get("availability"),
      types: list("types"),
    },
    page: Number.isInteger(rawPage) && rawPage >= 1 ? rawPage : 1,
  };
}

/** In-memory session; the token never touches storage. */
export interface AuthSession {
  orcid: string;
  token: string;
}

export interface UiProfileState {
  orcid: string;
  selection: Selection;
  page: number;
  auth: AuthSession | null;
}

export function ownsProfile(state: UiProfileState): boolean {
  return state.auth !== null && state.auth.orcid === state.orcid;
}
