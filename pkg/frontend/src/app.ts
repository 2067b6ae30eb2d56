/** Controller: routing, latest-wins fetching, and mutation handlers.
 *
 * Routes live in the hash (#/profiles/<orcid>, #/indicators/<doc-id>);
 * the facet selection and page live in the real query string, so any
 * view is deep-linkable. When the selection changes mid-flight, the
 * previous fetch is aborted: the view on screen always corresponds to
 * the current selection and page.
 */

import { ApiClient, ApiError } from "./api.js";
import {
  Handlers,
  renderAccessDenied,
  renderError,
  renderIndicatorDoc,
  renderNotFound,
  renderPermissionError,
  renderProfile,
} from "./render.js";
import {
  FacetDimension,
  Selection,
  UiProfileState,
  emptySelection,
  selectionFromQuery,
  selectionToQuery,
  toggleFacet,
} from "./state.js";
import type { InactivePeriod } from "./types.js";

export class App {
  readonly state: UiProfileState;
  private fetchController: AbortController | null = null;
  private fetchSequence = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly container: HTMLElement,
    orcid: string,
  ) {
    this.state = { orcid, selection: emptySelection(), page: 1, auth: null };
  }

  /** Adopt selection and page from the current URL (deep link). */
  adoptLocation(): void {
    const { selection, page } = selectionFromQuery(
      new URLSearchParams(window.location.search),
    );
    this.state.selection = selection;
    this.state.page = page;
  }

  private pushLocation(): void {
    const params = selectionToQuery(this.state.selection, this.state.page);
    const qs = params.toString();
    const url = `${window.location.pathname}${qs ? `?${qs}` : ""}${window.location.hash}`;
    window.history.replaceState(null, "", url);
  }

  private handlers(): Handlers {
    return {
      onToggleFacet: (dimension: FacetDimension, value: string) => {
        this.state.selection = toggleFacet(this.state.selection, dimension, value);
        this.state.page = 1;
        this.pushLocation();
        void this.refresh();
      },
      onPage: (page: number) => {
        this.state.page = Math.max(1, page);
        this.pushLocation();
        void this.refresh();
      },
      onSaveAnnotations: (doi: string, roles: string[], topics: string[]) => {
        void this.mutate(() => this.api.patchEntry(this.state.orcid, doi, { roles, topics }));
      },
      onSavePeriods: (periods: InactivePeriod[]) => {
        void this.mutate(() => this.api.putInactivePeriods(this.state.orcid, periods));
      },
      onToggleVisibility: (next: "public" | "private") => {
        void this.mutate(() => this.api.putVisibility(this.state.orcid, next));
      },
      onLogin: (orcid: string, token: string) => {
        this.state.auth = { orcid, token };
        this.api.setToken(token);
        void this.refresh();
      },
      onLogout: () => {
        this.state.auth = null;
        this.api.setToken(null);
        void this.refresh();
      },
    };
  }

  private async mutate(call: () => Promise<unknown>): Promise<void> {
    try {
      await call();
    } catch (error) {
      if (error instanceof ApiError && (error.status === 403 || error.status === 401)) {
        renderPermissionError(this.container, error.detail);
        return;
      }
      if (error instanceof ApiError && error.status === 422) {
        renderPermissionError(this.container, error.detail);
        return;
      }
      throw error;
    }
    // no optimistic state: re-fetch and re-render from the source of truth
    await this.refresh();
  }

  /** Fetch the view for the current state and render it (latest wins). */
  async refresh(): Promise<void> {
    this.fetchController?.abort();
    const controller = new AbortController();
    this.fetchController = controller;
    const ticket = ++this.fetchSequence;
    try {
      const view = await this.api.getProfile(
        this.state.orcid,
        this.state.selection,
        this.state.page,
        10,
        controller.signal,
      );
      if (ticket !== this.fetchSequence) return; // superseded
      renderProfile(this.container, view, this.state, this.handlers());
    } catch (error) {
      if (controller.signal.aborted || ticket !== this.fetchSequence) return;
      if (error instanceof ApiError && error.status === 403) {
        renderAccessDenied(this.container, this.state, this.handlers(), error.detail);
        return;
      }
      if (error instanceof ApiError && error.status === 404) {
        renderNotFound(this.container, `No profile for ${this.state.orcid}.`);
        return;
      }
      renderError(this.container, error instanceof Error ? error.message : String(error));
    }
  }

  async showIndicatorDoc(docId: string): Promise<void> {
    const docs = await this.api.getIndicatorDocs();
    const doc = docs.find((d) => d.id === docId);
    const params = selectionToQuery(this.state.selection, this.state.page).toString();
    const back = `${window.location.pathname}${params ? `?${params}` : ""}#/profiles/${this.state.orcid}`;
    renderIndicatorDoc(this.container, doc, back);
  }
}

export interface Route {
  kind: "profile" | "doc" | "none";
  id: string;
}

export function parseHash(hash: string): Route {
  const profile = hash.match(/^#\/profiles\/([^/?]+)/);
  if (profile && profile[1]) return { kind: "profile", id: decodeURIComponent(profile[1]) };
  const doc = hash.match(/^#\/indicators\/([^/?]+)/);
  if (doc && doc[1]) return { kind: "doc", id: decodeURIComponent(doc[1]) };
  return { kind: "none", id: "" };
}
