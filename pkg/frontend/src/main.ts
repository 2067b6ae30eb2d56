import { App, parseHash } from "./app.js";
import { ApiClient } from "./api.js";
import { DEFAULT_API_BASE } from "./config.js";
import { el } from "./render.js";

declare global {
  interface Window {
    TRACKRECORD_API_BASE?: string;
  }
}

function bootstrap(): void {
  const container = document.getElementById("app");
  if (!container) throw new Error("missing #app container");
  const api = new ApiClient(window.TRACKRECORD_API_BASE ?? DEFAULT_API_BASE);

  let app: App | null = null;

  const route = () => {
    const parsed = parseHash(window.location.hash);
    if (parsed.kind === "profile") {
      if (!app || app.state.orcid !== parsed.id) {
        app = new App(api, container, parsed.id);
      }
      app.adoptLocation();
      void app.refresh();
    } else if (parsed.kind === "doc" && app) {
      void app.showIndicatorDoc(parsed.id);
    } else if (parsed.kind === "doc") {
      app = new App(api, container, "");
      void app.showIndicatorDoc(parsed.id);
    } else {
      container.replaceChildren(
        el("section", { class: "landing" }, [
          el("h1", {}, ["Researcher profiles"]),
          el("p", {}, ["Open a profile via #/profiles/<ORCID iD>."]),
        ]),
      );
    }
  };

  window.addEventListener("hashchange", route);
  route();
}

bootstrap();
