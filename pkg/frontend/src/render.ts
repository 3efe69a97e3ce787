// DOM layer: turns a ViewState into markup. Nothing here decides
// anything; it only draws what the controller handed over.

import type { SampleSpan } from "./api.js";
import { KEY_BINDINGS, type ViewState } from "./app.js";

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderSample(spans: SampleSpan[]): HTMLElement {
  const line = el("p", "sample");
  for (const span of spans) {
    if (span.match) {
      const mark = document.createElement("mark");
      mark.textContent = span.text;
      line.appendChild(mark);
    } else {
      line.appendChild(document.createTextNode(span.text));
    }
  }
  return line;
}

function renderHelp(): HTMLElement {
  const box = el("div", "help");
  box.appendChild(el("h3", "", "Keys"));
  const list = document.createElement("dl");
  for (const [key, what] of Object.entries(KEY_BINDINGS)) {
    const dt = document.createElement("dt");
    dt.textContent = key;
    const dd = document.createElement("dd");
    dd.textContent = what;
    list.appendChild(dt);
    list.appendChild(dd);
  }
  box.appendChild(list);
  return box;
}

export function render(root: HTMLElement, state: ViewState): void {
  root.replaceChildren();
  switch (state.kind) {
    case "loading": {
      root.appendChild(el("p", "status", state.message));
      break;
    }
    case "error": {
      const banner = el("div", "banner banner-error");
      banner.appendChild(el("p", "", state.message));
      if (state.retryable) {
        banner.appendChild(el("p", "hint", "press r to retry; nothing was lost"));
      }
      root.appendChild(banner);
      break;
    }
    case "fatal": {
      root.appendChild(el("div", "banner banner-error", state.message));
      break;
    }
    case "complete": {
      const box = el("div", "complete");
      box.appendChild(el("h2", "", "All done"));
      box.appendChild(
        el(
          "p",
          "",
          `${state.progress.voted} of ${state.progress.total} candidates judged. ` +
            "Press g for session progress.",
        ),
      );
      root.appendChild(box);
      break;
    }
    case "progress": {
      const box = el("div", "progress-view");
      box.appendChild(el("h2", "", "Session progress"));
      for (const r of state.progress.reviewers) {
        box.appendChild(el("p", "reviewer-row", `${r.reviewer}: ${r.voted}/${r.total}`));
      }
      box.appendChild(
        el(
          "p",
          "totals",
          `resolved ${state.progress.resolved}, unresolved ${state.progress.unresolved}`,
        ),
      );
      const outcomes = el("p", "outcomes");
      outcomes.textContent =
        `stopword ${state.outcomes.stopword ?? 0} / ` +
        `non-trivial ${state.outcomes.non_trivial ?? 0} / ` +
        `unresolved ${state.outcomes.unresolved ?? 0}`;
      box.appendChild(outcomes);
      box.appendChild(el("p", "hint", "press g to go back"));
      root.appendChild(box);
      break;
    }
    case "card": {
      const header = el("header", "topbar");
      header.appendChild(
        el("span", "counter", `${state.progress.voted}/${state.progress.total} judged`),
      );
      header.appendChild(
        el("span", "position", `card ${state.index + 1} of ${state.loaded} loaded`),
      );
      root.appendChild(header);

      const card = el("section", "card" + (state.pending ? " pending" : ""));
      card.appendChild(el("h1", "term lang-dv", state.card.term));
      if (state.card.judgment !== null) {
        card.appendChild(
          el(
            "p",
            "current-judgment",
            `your judgment: ${state.card.judgment} (press p or a to change)`,
          ),
        );
      }
      const samples = el("div", "samples lang-dv");
      if (state.card.samples.length === 0) {
        samples.appendChild(el("p", "sample none", "(no sample sentences found)"));
      }
      for (const spans of state.card.samples) samples.appendChild(renderSample(spans));
      card.appendChild(samples);
      if (state.notice) card.appendChild(el("p", "notice", state.notice));
      card.appendChild(
        el(
          "p",
          "hint",
          "p = meaning preserved (stopword) / a = meaning altered / ? = help",
        ),
      );
      root.appendChild(card);
      if (state.showHelp) root.appendChild(renderHelp());
      break;
    }
  }
}
