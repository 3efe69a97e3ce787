// Boot: read session and reviewer from the URL hash, wire keyboard to
// controller to renderer.

import { ReviewApi } from "./api.js";
import { App } from "./app.js";
import { render } from "./render.js";

export interface BootParams {
  session: string;
  reviewer: string;
  apiBase?: string;
}

export function parseHash(hash: string): Partial<BootParams> {
  const params = new URLSearchParams(hash.replace(/^#/, ""));
  return {
    session: params.get("session") ?? undefined,
    reviewer: params.get("reviewer") ?? undefined,
    apiBase: params.get("api") ?? undefined,
  };
}

/** Mount the app into a container; returns the controller and a teardown. */
export function boot(
  root: HTMLElement,
  params: BootParams,
  doc: Document = document,
): { app: App; teardown: () => void } {
  const api = new ReviewApi(params.apiBase ?? "");
  const app = new App(api, params.session, params.reviewer, (state) =>
    render(root, state),
  );
  const onKey = (event: KeyboardEvent) => {
    if (event.key in { p: 1, a: 1, g: 1, r: 1, "?": 1, ArrowRight: 1, ArrowLeft: 1 }) {
      event.preventDefault();
    }
    void app.handleKey(event.key);
  };
  doc.addEventListener("keydown", onKey);
  void app.start();
  return { app, teardown: () => doc.removeEventListener("keydown", onKey) };
}

function promptForParams(root: HTMLElement): void {
  root.replaceChildren();
  const box = document.createElement("div");
  box.className = "setup";
  box.innerHTML = `
    <h2>Review session</h2>
    <p>Open this page as <code>#session=SESSION_ID&amp;reviewer=YOUR_ID</code>,
    or fill the fields:</p>
    <label>session <input id="setup-session"></label>
    <label>reviewer <input id="setup-reviewer"></label>
    <button id="setup-go">start</button>
  `;
  root.appendChild(box);
  const go = box.querySelector("#setup-go") as HTMLButtonElement;
  go.addEventListener("click", () => {
    const session = (box.querySelector("#setup-session") as HTMLInputElement).value;
    const reviewer = (box.querySelector("#setup-reviewer") as HTMLInputElement).value;
    if (session && reviewer) {
      location.hash = `#session=${encodeURIComponent(session)}&reviewer=${encodeURIComponent(reviewer)}`;
      location.reload();
    }
  });
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const root = document.getElementById("app") as HTMLElement;
  const params = parseHash(location.hash);
  if (params.session && params.reviewer) {
    boot(root, {
      session: params.session,
      reviewer: params.reviewer,
      apiBase: params.apiBase,
    });
  } else {
    promptForParams(root);
  }
}
