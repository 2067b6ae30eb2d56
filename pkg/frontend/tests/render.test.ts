// @vitest-environment jsdom
import { beforeEach, describe, expect, it, vi } from "vitest";

import type { Handlers } from "../src/render.js";
import {
  renderAccessDenied,
  renderIndicatorDoc,
  renderIndicators,
  renderProfile,
} from "../src/render.js";
import { emptySelection, toggleFacet, UiProfileState } from "../src/state.js";
import type { IndicatorDoc, ProfileView } from "../src/types.js";

const OWNER = "0000-0002-1825-0097";

function fixtureView(): ProfileView {
  return {
    summary: {
      display_name: "Fixture Researcher",
      orcid_id: OWNER,
      visibility: "public",
      facets: {
        topics: { databases: 2, unassigned: 1 },
        roles: { software: 2, unassigned: 1 },
        availability: { open: 2, "closed-unknown": 1 },
        work_types: { publication: 2, dataset: 1 },
      },
      indicators: {
        citations: 12,
        h_index: 2,
        i10_index: 1,
        popularity: 0.123456,
        influence: 0.25,
        impulse: 5.0,
        publications: 2,
        datasets: 1,
        open_access_share: 0.5,
        academic_age: 6,
        fair_academic_age: 5,
      },
    },
    selection: { topics: [], roles: [], availability: null, work_types: [] },
    track_record: [
      {
        doi: "10.1/a",
        resolved: true,
        roles: ["software"],
        topics: ["databases"],
        work: {
          doi: "10.1/a",
          title: "A Work",
          venue: "VenueX",
          year: 2020,
          work_type: "publication",
          access: "open",
        },
        scores: { doi: "10.1/a", citations: 12, influence: 0.25, popularity: 0.12, impulse: 5 },
      },
      {
        doi: "10.1/ghost",
        resolved: false,
        roles: [],
        topics: [],
        work: null,
        scores: null,
      },
    ],
    page: 1,
    page_size: 10,
    total_entries: 2,
    total_pages: 1,
  };
}

function stubHandlers(): Handlers {
  return {
    onToggleFacet: vi.fn(),
    onPage: vi.fn(),
    onSaveAnnotations: vi.fn(),
    onSavePeriods: vi.fn(),
    onToggleVisibility: vi.fn(),
    onLogin: vi.fn(),
    onLogout: vi.fn(),
  };
}

function anonState(): UiProfileState {
  return { orcid: OWNER, selection: emptySelection(), page: 1, auth: null };
}

function ownerState(): UiProfileState {
  return { ...anonState(), auth: { orcid: OWNER, token: "tok" } };
}

let container: HTMLElement;

beforeEach(() => {
  container = document.createElement("div");
  document.body.replaceChildren(container);
});

describe("renderIndicators", () => {
  it("shows all eleven indicators grouped by aspect", () => {
    const block = renderIndicators(fixtureView().summary.indicators);
    expect(block.querySelectorAll(".indicator").length).toBe(11);
    const aspects = Array.from(block.querySelectorAll(".indicator-group")).map((g) =>
      g.getAttribute("data-aspect"),
    );
    expect(aspects).toEqual(["Impact", "Productivity", "Open science", "Career stage"]);
  });

  it("links every indicator name to its documentation page", () => {
    const block = renderIndicators(fixtureView().summary.indicators);
    const hrefs = Array.from(block.querySelectorAll("a.indicator-name")).map((a) =>
      a.getAttribute("href"),
    );
    expect(hrefs).toContain("#/indicators/h-index");
    expect(hrefs).toContain("#/indicators/open-access-share");
    expect(hrefs.length).toBe(11);
  });

  it("renders an absent open access share as n/a, not 0", () => {
    const indicators = fixtureView().summary.indicators;
    delete indicators.open_access_share;
    delete indicators.academic_age;
    delete indicators.fair_academic_age;
    const block = renderIndicators(indicators);
    const share = block.querySelector('[data-indicator="open_access_share"] .indicator-value');
    expect(share?.textContent).toBe("n/a");
  });
});

describe("renderProfile", () => {
  it("non-owner sessions expose no edit controls", () => {
    renderProfile(container, fixtureView(), anonState(), stubHandlers());
    expect(container.querySelector(".entry-editor")).toBeNull();
    expect(container.querySelector(".owner-tools")).toBeNull();

    const otherSession = {
      ...anonState(),
      auth: { orcid: "0000-0001-5109-3700", token: "tok" },
    };
    renderProfile(container, fixtureView(), otherSession, stubHandlers());
    expect(container.querySelector(".entry-editor")).toBeNull();
    expect(container.querySelector(".owner-tools")).toBeNull();
  });

  it("owner sessions get a role picker with exactly the 14 CRediT roles", () => {
    renderProfile(container, fixtureView(), ownerState(), stubHandlers());
    const editors = container.querySelectorAll(".entry-editor");
    expect(editors.length).toBe(2);
    const boxes = editors[0]!.querySelectorAll('input[name="role"]');
    expect(boxes.length).toBe(14);
    const checked = editors[0]!.querySelectorAll('input[name="role"]:checked');
    expect(Array.from(checked).map((b) => (b as HTMLInputElement).value)).toEqual(["software"]);
    expect(container.querySelector(".owner-tools")).not.toBeNull();
  });

  it("facet buttons carry counts and report clicks", () => {
    const handlers = stubHandlers();
    renderProfile(container, fixtureView(), anonState(), handlers);
    const button = container.querySelector<HTMLButtonElement>('[data-facet="types:dataset"]');
    expect(button?.textContent).toBe("dataset (1)");
    button!.click();
    expect(handlers.onToggleFacet).toHaveBeenCalledWith("types", "dataset");
  });

  it("marks active facets", () => {
    const state = anonState();
    state.selection = toggleFacet(state.selection, "types", "dataset");
    renderProfile(container, fixtureView(), state, stubHandlers());
    const button = container.querySelector('[data-facet="types:dataset"]');
    expect(button?.classList.contains("active")).toBe(true);
  });

  it("flags unresolved entries and shows no scores for them", () => {
    renderProfile(container, fixtureView(), anonState(), stubHandlers());
    const ghost = container.querySelector('[data-doi="10.1/ghost"]');
    expect(ghost?.querySelector(".badge.unresolved")).not.toBeNull();
    expect(ghost?.querySelector(".scores.unscored")).not.toBeNull();
  });

  it("client-side guard blocks an inverted inactive period", () => {
    const handlers = stubHandlers();
    renderProfile(container, fixtureView(), ownerState(), handlers);
    const input = container.querySelector<HTMLInputElement>(".periods-input")!;
    input.value = "2018-2015";
    const form = container.querySelector<HTMLFormElement>(".periods-editor")!;
    form.dispatchEvent(new window.Event("submit", { bubbles: true, cancelable: true }));
    expect(handlers.onSavePeriods).not.toHaveBeenCalled();
    expect(container.querySelector(".periods-error")?.textContent).toContain("2018-2015");
  });

  it("valid inactive periods are parsed and submitted", () => {
    const handlers = stubHandlers();
    renderProfile(container, fixtureView(), ownerState(), handlers);
    const input = container.querySelector<HTMLInputElement>(".periods-input")!;
    input.value = "2015-2016, 2019-2019";
    const form = container.querySelector<HTMLFormElement>(".periods-editor")!;
    form.dispatchEvent(new window.Event("submit", { bubbles: true, cancelable: true }));
    expect(handlers.onSavePeriods).toHaveBeenCalledWith([
      { start_year: 2015, end_year: 2016 },
      { start_year: 2019, end_year: 2019 },
    ]);
  });
});

describe("error and doc pages", () => {
  it("access denied state renders with a login box", () => {
    renderAccessDenied(container, anonState(), stubHandlers(), "this profile is private");
    expect(container.querySelector(".access-denied")).not.toBeNull();
    expect(container.querySelector(".login-form")).not.toBeNull();
  });

  it("indicator doc page shows method, limitations, references", () => {
    const doc: IndicatorDoc = {
      id: "h-index",
      name: "h-index",
      aspect: "impact",
      description: "desc",
      calculation: "calc",
      limitations: "limits",
      references: ["Someone (2005)"],
    };
    renderIndicatorDoc(container, doc, "#/profiles/x");
    expect(container.querySelector(".doc-calculation")?.textContent).toBe("calc");
    expect(container.querySelector(".doc-limitations")?.textContent).toBe("limits");
    expect(container.querySelectorAll(".doc-references li").length).toBe(1);
  });

  it("unknown indicator id renders a not-found page", () => {
    renderIndicatorDoc(container, undefined, "#/profiles/x");
    expect(container.querySelector(".not-found")).not.toBeNull();
  });
});
