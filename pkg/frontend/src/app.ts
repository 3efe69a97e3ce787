// Controller: keyboard events in, view states out. No DOM access here,
// so the whole flow is testable headless and the render layer stays thin.

import {
  ApiError,
  NetworkError,
  type Judgment,
  type ProgressResponse,
  type ReviewClient,
  type ReviewerProgress,
  type Verdict,
} from "./api.js";
import { ReviewQueue, type QueueCard } from "./queue.js";

const PAGE_SIZE = 50;

export const KEY_BINDINGS: Record<string, string> = {
  p: "judge preserved (safe to remove)",
  a: "judge altered (removal changes meaning)",
  ArrowRight: "next card",
  ArrowLeft: "previous card",
  g: "toggle progress view",
  r: "retry after a connection error",
  "?": "toggle this help",
};

export interface CardView {
  kind: "card";
  card: QueueCard;
  index: number;
  loaded: number;
  progress: ReviewerProgress;
  pending: boolean;
  notice: string | null;
  showHelp: boolean;
}

export interface ProgressView {
  kind: "progress";
  progress: ProgressResponse;
  outcomes: Record<string, number>;
}

export type ViewState =
  | { kind: "loading"; message: string }
  | CardView
  | ProgressView
  | { kind: "complete"; progress: ReviewerProgress }
  | { kind: "error"; message: string; retryable: boolean }
  | { kind: "fatal"; message: string };

type Render = (state: ViewState) => void;

export class App {
  private queue = new ReviewQueue();
  private progress: ReviewerProgress;
  private exhausted = false;
  private pending = false;
  private notice: string | null = null;
  private showHelp = false;
  private mode: "review" | "progress" = "review";
  private lastError: ViewState | null = null;

  constructor(
    private readonly api: ReviewClient,
    readonly session: string,
    readonly reviewer: string,
    private readonly render: Render,
  ) {
    this.progress = { reviewer, voted: 0, total: 0 };
  }

  async start(): Promise<void> {
    this.render({ kind: "loading", message: `loading session ${this.session}` });
    try {
      await this.api.fetchSession(this.session);
      await this.fetchPage();
    } catch (err) {
      this.fail(err);
      return;
    }
    this.queue.seekUnjudged();
    this.show();
  }

  /** Single entry point for every keystroke. */
  async handleKey(key: string): Promise<void> {
    if (this.pending) return; // one in-flight vote at a time
    if (this.lastError) {
      if (key === "r") await this.retry();
      return;
    }
    switch (key) {
      case "p":
        await this.vote("meaning_preserved");
        break;
      case "a":
        await this.vote("meaning_altered");
        break;
      case "ArrowRight":
        await this.move(+1);
        break;
      case "ArrowLeft":
        await this.move(-1);
        break;
      case "g":
        await this.toggleProgress();
        break;
      case "?":
        this.showHelp = !this.showHelp;
        this.show();
        break;
      default:
        break;
    }
  }

  private async vote(judgment: Judgment): Promise<void> {
    const card = this.queue.current;
    if (!card || this.mode !== "review") return;
    this.pending = true;
    this.notice = null;
    this.show();
    try {
      const ack = await this.api.submitVote(
        this.session,
        this.reviewer,
        card.term,
        judgment,
      );
      const wasJudged = card.judgment !== null;
      this.queue.markJudged(ack.term, ack.judgment);
      if (!wasJudged) this.progress.voted += 1;
      this.pending = false;
      if (!this.queue.seekUnjudged()) await this.extendQueue();
      this.show();
    } catch (err) {
      // The card stays current; an unacknowledged vote is never marked done.
      this.pending = false;
      if (err instanceof ApiError) {
        this.notice = `vote rejected: ${err.message}`;
        this.show();
      } else {
        this.fail(err);
      }
    }
  }

  private async move(step: 1 | -1): Promise<void> {
    if (this.mode !== "review") return;
    if (step > 0) {
      if (
        this.queue.index >= this.queue.length - 1 &&
        !this.exhausted
      ) {
        try {
          await this.fetchPage();
        } catch (err) {
          this.fail(err);
          return;
        }
      }
      this.queue.next();
    } else {
      this.queue.prev();
    }
    this.notice = null;
    this.show();
  }

  private async toggleProgress(): Promise<void> {
    if (this.mode === "progress") {
      this.mode = "review";
      this.show();
      return;
    }
    try {
      const [progress, verdicts] = await Promise.all([
        this.api.fetchProgress(this.session),
        this.api.fetchVerdicts(this.session),
      ]);
      this.mode = "progress";
      this.render({
        kind: "progress",
        progress,
        outcomes: countOutcomes(verdicts.verdicts),
      });
    } catch (err) {
      this.fail(err);
    }
  }

  private async extendQueue(): Promise<void> {
    while (!this.exhausted) {
      await this.fetchPage();
      if (this.queue.seekUnjudged()) return;
    }
  }

  private async fetchPage(): Promise<void> {
    const after = this.queue.lastTerm ?? undefined;
    const page = await this.api.fetchCandidates(this.session, this.reviewer, {
      after,
      limit: PAGE_SIZE,
      includeVoted: true,
    });
    this.queue.append(page.cards);
    this.progress = page.progress;
    if (page.next_after === null) this.exhausted = true;
  }

  private async retry(): Promise<void> {
    this.lastError = null;
    if (this.queue.length === 0) {
      await this.start();
      return;
    }
    this.show();
  }

  private fail(err: unknown): void {
    if (err instanceof NetworkError) {
      this.lastError = {
        kind: "error",
        message: `cannot reach the review service (${err.message})`,
        retryable: true,
      };
    } else if (err instanceof ApiError && err.status === 404) {
      this.lastError = { kind: "fatal", message: `unknown session: ${this.session}` };
    } else {
      this.lastError = {
        kind: "error",
        message: err instanceof Error ? err.message : String(err),
        retryable: true,
      };
    }
    this.render(this.lastError);
  }

  private show(): void {
    if (this.mode === "progress") return;
    if (this.exhausted && this.queue.allJudged) {
      this.render({ kind: "complete", progress: this.progress });
      return;
    }
    const card = this.queue.current;
    if (!card) {
      this.render({ kind: "loading", message: "no candidates loaded" });
      return;
    }
    this.render({
      kind: "card",
      card,
      index: this.queue.index,
      loaded: this.queue.length,
      progress: this.progress,
      pending: this.pending,
      notice: this.notice,
      showHelp: this.showHelp,
    });
  }
}

export function countOutcomes(verdicts: Verdict[]): Record<string, number> {
  const counts: Record<string, number> = {
    stopword: 0,
    non_trivial: 0,
    unresolved: 0,
  };
  for (const v of verdicts) counts[v.outcome] = (counts[v.outcome] ?? 0) + 1;
  return counts;
}
