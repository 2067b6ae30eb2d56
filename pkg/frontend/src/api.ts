/** Thin client for the v1 API; every read is abortable for latest-wins. */

import type {
  Envelope,
  Indicators,
  IndicatorDoc,
  InactivePeriod,
  ProblemBody,
  ProfileSnapshot,
  ProfileView,
  TrackRecordItem,
} from "./types.js";
import { Selection, selectionToQuery } from "./state.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
  ) {
    super(`${status} ${code}: ${detail}`);
  }
}

export class ApiClient {
  private token: string | null = null;

  constructor(public readonly baseUrl: string) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  private headers(json = false): Record<string, string> {
    const headers: Record<string, string> = {};
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    if (json) headers["Content-Type"] = "application/json";
    return headers;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    signal?: AbortSignal,
  ): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method,
      headers: this.headers(body !== undefined),
      body: body === undefined ? undefined : JSON.stringify(body),
      signal: signal ?? null,
    });
    if (!response.ok) {
      let problem: ProblemBody = { error: "unknown", detail: response.statusText };
      try {
        problem = (await response.json()) as ProblemBody;
      } catch {
        // non-JSON error body; keep the fallback
      }
      throw new ApiError(response.status, problem.error, problem.detail);
    }
    const envelope = (await response.json()) as Envelope<T>;
    return envelope.data;
  }

  getProfile(
    orcid: string,
    selection: Selection,
    page: number,
    pageSize = 10,
    signal?: AbortSignal,
  ): Promise<ProfileView> {
    const params = selectionToQuery(selection, page);
    params.set("page_size", String(pageSize));
    const qs = params.toString();
    return this.request("GET", `/v1/profiles/${orcid}${qs ? `?${qs}` : ""}`, undefined, signal);
  }

  getIndicators(
    orcid: string,
    selection: Selection,
    signal?: AbortSignal,
  ): Promise<Indicators> {
    const qs = selectionToQuery(selection).toString();
    return this.request(
      "GET",
      `/v1/profiles/${orcid}/indicators${qs ? `?${qs}` : ""}`,
      undefined,
      signal,
    );
  }

  getIndicatorDocs(signal?: AbortSignal): Promise<IndicatorDoc[]> {
    return this.request("GET", "/v1/indicators", undefined, signal);
  }

  patchEntry(
    orcid: string,
    doi: string,
    changes: { roles?: string[]; topics?: string[] },
  ): Promise<TrackRecordItem> {
    return this.request(
      "PATCH",
      `/v1/profiles/${orcid}/works/${encodeURIComponent(doi)}`,
      changes,
    );
  }

  putInactivePeriods(orcid: string, periods: InactivePeriod[]): Promise<ProfileSnapshot> {
    return this.request("PUT", `/v1/profiles/${orcid}/inactive-periods`, { periods });
  }

  putVisibility(orcid: string, visibility: "public" | "private"): Promise<ProfileSnapshot> {
    return this.request("PUT", `/v1/profiles/${orcid}/visibility`, { visibility });
  }

  createProfile(orcid: string): Promise<ProfileSnapshot> {
    return this.request("POST", "/v1/profiles", { orcid });
  }
}
