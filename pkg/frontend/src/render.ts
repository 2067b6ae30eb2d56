/** DOM builders. Pure: state in, elements out; behavior via handlers.
 *
 * Every indicator value shown here came from an API response; nothing
 * is computed client-side.
 */

import type {
  FacetCounts,
  Indicators,
  IndicatorDoc,
  InactivePeriod,
  ProfileView,
  TrackRecordItem,
} from "./types.js";
import { CREDIT_ROLES } from "./types.js";
import { FacetDimension, Selection, UiProfileState, isActive, ownsProfile } from "./state.js";

export interface Handlers {
  onToggleFacet(dimension: FacetDimension, value: string): void;
  onPage(page: number): void;
  onSaveAnnotations(doi: string, roles: string[], topics: string[]): void;
  onSavePeriods(periods: InactivePeriod[]): void;
  onToggleVisibility(next: "public" | "private"): void;
  onLogin(orcid: string, token: string): void;
  onLogout(): void;
}

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

// ---------------------------------------------------------------------------
// Indicators (career summary, grouped by aspect)
// ---------------------------------------------------------------------------

const INDICATOR_GROUPS: { aspect: string; fields: [keyof Indicators, string, string][] }[] = [
  {
    aspect: "Impact",
    fields: [
      ["citations", "Citations", "citations"],
      ["h_index", "h-index", "h-index"],
      ["i10_index", "i10-index", "i10-index"],
      ["popularity", "Popularity", "popularity"],
      ["influence", "Influence", "influence"],
      ["impulse", "Impulse", "impulse"],
    ],
  },
  {
    aspect: "Productivity",
    fields: [
      ["publications", "Publications", "publications"],
      ["datasets", "Datasets", "datasets"],
    ],
  },
  {
    aspect: "Open science",
    fields: [["open_access_share", "Open access share", "open-access-share"]],
  },
  {
    aspect: "Career stage",
    fields: [
      ["academic_age", "Academic age", "academic-age"],
      ["fair_academic_age", "Fair academic age", "fair-academic-age"],
    ],
  },
];

function formatValue(value: number | undefined): string {
  if (value === undefined) return "n/a";
  if (Number.isInteger(value)) return String(value);
  return value.toPrecision(4);
}

export function renderIndicators(indicators: Indicators): HTMLElement {
  const block = el("div", { class: "indicators" });
  for (const group of INDICATOR_GROUPS) {
    const items = group.fields.map(([field, label, docId]) =>
      el("div", { class: "indicator", "data-indicator": field }, [
        el("a", { class: "indicator-name", href: `#/indicators/${docId}` }, [label]),
        el("span", { class: "indicator-value" }, [formatValue(indicators[field])]),
      ]),
    );
    block.append(
      el("section", { class: "indicator-group", "data-aspect": group.aspect }, [
        el("h3", {}, [group.aspect]),
        el("div", { class: "indicator-items" }, items),
      ]),
    );
  }
  return block;
}

// ---------------------------------------------------------------------------
// Facets
// ---------------------------------------------------------------------------

const FACET_DIMENSIONS: { key: keyof FacetCounts; dimension: FacetDimension; label: string }[] = [
  { key: "topics", dimension: "topics", label: "Topics" },
  { key: "roles", dimension: "roles", label: "Roles" },
  { key: "availability", dimension: "availability", label: "Availability" },
  { key: "work_types", dimension: "types", label: "Work type" },
];

export function renderFacets(
  facets: FacetCounts,
  selection: Selection,
  handlers: Handlers,
): HTMLElement {
  const root = el("div", { class: "facets" });
  for (const { key, dimension, label } of FACET_DIMENSIONS) {
    const counts = facets[key];
    const group = el("div", { class: "facet-group", "data-dimension": dimension }, [
      el("h4", {}, [label]),
    ]);
    for (const [value, count] of Object.entries(counts)) {
      const active = isActive(selection, dimension, value.toLowerCase());
      const button = el(
        "button",
        {
          class: `facet${active ? " active" : ""}`,
          "data-facet": `${dimension}:${value.toLowerCase()}`,
        },
        [`${value} (${count})`],
      );
      button.addEventListener("click", () =>
        handlers.onToggleFacet(dimension, value.toLowerCase()),
      );
      group.append(button);
    }
    root.append(group);
  }
  return root;
}

// ---------------------------------------------------------------------------
// Track record
// ---------------------------------------------------------------------------

function renderScores(item: TrackRecordItem): HTMLElement {
  if (!item.scores) {
    return el("span", { class: "scores unscored" }, ["not in the citation graph"]);
  }
  const s = item.scores;
  return el("span", { class: "scores" }, [
    `citations ${s.citations} / influence ${s.influence.toPrecision(4)} / ` +
      `popularity ${s.popularity.toPrecision(4)} / impulse ${s.impulse}`,
  ]);
}

function renderRoleEditor(item: TrackRecordItem, handlers: Handlers): HTMLElement {
  const form = el("form", { class: "entry-editor" });
  const picker = el("fieldset", { class: "role-picker" }, [el("legend", {}, ["CRediT roles"])]);
  for (const role of CREDIT_ROLES) {
    const checkbox = el("input", {
      type: "checkbox",
      name: "role",
      value: role.slug,
    }) as HTMLInputElement;
    checkbox.checked = item.roles.includes(role.slug);
    picker.append(el("label", { class: "role-option" }, [checkbox, ` ${role.label}`]));
  }
  const topicsInput = el("input", {
    type: "text",
    name: "topics",
    class: "topics-input",
    value: item.topics.join(", "),
    placeholder: "topics, comma separated",
  }) as HTMLInputElement;
  const save = el("button", { type: "submit", class: "save-annotations" }, ["Save"]);
  form.append(picker, topicsInput, save);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const roles = Array.from(
      form.querySelectorAll<HTMLInputElement>("input[name=role]:checked"),
    ).map((box) => box.value);
    const topics = topicsInput.value
      .split(",")
      .map((t) => t.trim())
      .filter((t) => t.length > 0);
    handlers.onSaveAnnotations(item.doi, roles, topics);
  });
  return form;
}

export function renderTrackRecord(
  view: ProfileView,
  state: UiProfileState,
  handlers: Handlers,
): HTMLElement {
  const root = el("section", { class: "track-record" }, [
    el("h2", {}, [`Track record (${view.total_entries})`]),
  ]);
  const list = el("ol", { class: "entries", start: String((view.page - 1) * view.page_size + 1) });
  for (const item of view.track_record) {
    const li = el("li", { class: "entry", "data-doi": item.doi });
    const title = item.work?.title || item.doi;
    const yearVenue = item.work
      ? ` (${item.work.venue ?? "no venue"}, ${item.work.year})`
      : " (unresolved)";
    li.append(
      el("div", { class: "entry-head" }, [
        el("strong", { class: "entry-title" }, [title]),
        yearVenue,
        item.work
          ? el("span", { class: "badges" }, [
              el("span", { class: "badge type" }, [item.work.work_type]),
              el("span", { class: "badge access" }, [item.work.access]),
            ])
          : el("span", { class: "badge unresolved" }, ["unresolved"]),
      ]),
    );
    li.append(el("div", { class: "entry-doi" }, [item.doi]));
    li.append(renderScores(item));
    li.append(
      el("div", { class: "entry-tags" }, [
        el("span", { class: "entry-roles" }, [
          item.roles.length ? `roles: ${item.roles.join(", ")}` : "roles: none",
        ]),
        " · ",
        el("span", { class: "entry-topics" }, [
          item.topics.length ? `topics: ${item.topics.join(", ")}` : "topics: none",
        ]),
      ]),
    );
    if (ownsProfile(state)) {
      li.append(renderRoleEditor(item, handlers));
    }
    list.append(li);
  }
  root.append(list);

  const pager = el("div", { class: "pager" });
  const prev = el("button", { class: "page-prev" }, ["Previous"]) as HTMLButtonElement;
  const next = el("button", { class: "page-next" }, ["Next"]) as HTMLButtonElement;
  prev.disabled = view.page <= 1;
  next.disabled = view.page >= view.total_pages;
  prev.addEventListener("click", () => handlers.onPage(view.page - 1));
  next.addEventListener("click", () => handlers.onPage(view.page + 1));
  pager.append(prev, el("span", {}, [` page ${view.page} of ${Math.max(view.total_pages, 1)} `]), next);
  root.append(pager);
  return root;
}

// ---------------------------------------------------------------------------
// Owner tools: visibility toggle and inactive periods
// ---------------------------------------------------------------------------

function renderOwnerTools(view: ProfileView, handlers: Handlers): HTMLElement {
  const tools = el("div", { class: "owner-tools" });
  const isPublic = view.summary.visibility === "public";
  const toggle = el("button", { class: "visibility-toggle" }, [
    isPublic ? "Make private" : "Make public",
  ]);
  toggle.addEventListener("click", () =>
    handlers.onToggleVisibility(isPublic ? "private" : "public"),
  );
  tools.append(
    el("span", { class: "visibility-state" }, [`Profile is ${view.summary.visibility}`]),
    toggle,
  );

  const form = el("form", { class: "periods-editor" });
  const input = el("input", {
    type: "text",
    name: "periods",
    class: "periods-input",
    placeholder: "inactive periods, e.g. 2015-2016, 2019-2019",
  }) as HTMLInputElement;
  const error = el("span", { class: "periods-error", role: "alert" });
  const save = el("button", { type: "submit", class: "save-periods" }, ["Save inactive periods"]);
  form.append(input, save, error);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    error.textContent = "";
    const text = input.value.trim();
    const periods: InactivePeriod[] = [];
    if (text.length) {
      for (const piece of text.split(",")) {
        const match = piece.trim().match(/^(\d{4})\s*-\s*(\d{4})$/);
        if (!match) {
          error.textContent = `not a year range: ${piece.trim()}`;
          return;
        }
        const start = Number(match[1]);
        const end = Number(match[2]);
        if (start > end) {
          // client-side guard; the server rejects it as well
          error.textContent = `period ends before it starts: ${piece.trim()}`;
          return;
        }
        periods.push({ start_year: start, end_year: end });
      }
    }
    handlers.onSavePeriods(periods);
  });
  tools.append(form);
  return tools;
}

// ---------------------------------------------------------------------------
// Login box
// ---------------------------------------------------------------------------

export function renderLogin(state: UiProfileState, handlers: Handlers): HTMLElement {
  const box = el("div", { class: "login" });
  if (state.auth) {
    const logout = el("button", { class: "logout" }, ["Sign out"]);
    logout.addEventListener("click", () => handlers.onLogout());
    box.append(el("span", {}, [`Signed in as ${state.auth.orcid} `]), logout);
    return box;
  }
  const form = el("form", { class: "login-form" });
  const orcid = el("input", {
    type: "text",
    name: "orcid",
    placeholder: "ORCID iD",
    class: "login-orcid",
  }) as HTMLInputElement;
  const token = el("input", {
    type: "password",
    name: "token",
    placeholder: "API token",
    class: "login-token",
  }) as HTMLInputElement;
  const submit = el("button", { type: "submit" }, ["Sign in"]);
  form.append(orcid, token, submit);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (orcid.value.trim() && token.value.trim()) {
      handlers.onLogin(orcid.value.trim(), token.value.trim());
    }
  });
  box.append(form);
  return box;
}

// ---------------------------------------------------------------------------
// Whole profile page and error states
// ---------------------------------------------------------------------------

export function renderProfile(
  container: HTMLElement,
  view: ProfileView,
  state: UiProfileState,
  handlers: Handlers,
): void {
  container.replaceChildren();
  const summary = el("section", { class: "career-summary" }, [
    el("h1", {}, [view.summary.display_name]),
    el("div", { class: "orcid" }, [view.summary.orcid_id]),
  ]);
  if (ownsProfile(state)) {
    summary.append(renderOwnerTools(view, handlers));
  }
  summary.append(renderFacets(view.summary.facets, state.selection, handlers));
  summary.append(renderIndicators(view.summary.indicators));
  container.append(renderLogin(state, handlers));
  container.append(summary);
  container.append(renderTrackRecord(view, state, handlers));
}

export function renderAccessDenied(
  container: HTMLElement,
  state: UiProfileState,
  handlers: Handlers,
  detail: string,
): void {
  container.replaceChildren(
    renderLogin(state, handlers),
    el("section", { class: "access-denied" }, [
      el("h1", {}, ["This profile is private"]),
      el("p", {}, [detail]),
    ]),
  );
}

export function renderNotFound(container: HTMLElement, what: string): void {
  container.replaceChildren(
    el("section", { class: "not-found" }, [el("h1", {}, ["Not found"]), el("p", {}, [what])]),
  );
}

export function renderError(container: HTMLElement, detail: string): void {
  container.replaceChildren(
    el("section", { class: "error" }, [el("h1", {}, ["Something went wrong"]), el("p", {}, [detail])]),
  );
}

export function renderPermissionError(container: HTMLElement, detail: string): void {
  const note = el("div", { class: "permission-error", role: "alert" }, [
    `Permission denied: ${detail}`,
  ]);
  container.prepend(note);
}

// ---------------------------------------------------------------------------
// Indicator documentation page
// ---------------------------------------------------------------------------

export function renderIndicatorDoc(
  container: HTMLElement,
  doc: IndicatorDoc | undefined,
  backHref: string,
): void {
  container.replaceChildren();
  if (!doc) {
    renderNotFound(container, "No such indicator.");
    return;
  }
  container.append(
    el("section", { class: "indicator-doc", "data-doc-id": doc.id }, [
      el("a", { href: backHref, class: "back-link" }, ["Back to profile"]),
      el("h1", {}, [doc.name]),
      el("div", { class: "doc-aspect" }, [`Aspect: ${doc.aspect}`]),
      el("h2", {}, ["What it means"]),
      el("p", { class: "doc-description" }, [doc.description]),
      el("h2", {}, ["How it is calculated"]),
      el("p", { class: "doc-calculation" }, [doc.calculation]),
      el("h2", {}, ["Limitations"]),
      el("p", { class: "doc-limitations" }, [doc.limitations]),
      ...(doc.references.length
        ? [
            el("h2", {}, ["References"]),
            el(
              "ul",
              { class: "doc-references" },
              doc.references.map((ref) => el("li", {}, [ref])),
            ),
          ]
        : []),
    ]),
  );
}
