// Local review queue: a cursor over the cards fetched so far.
//
// Judgments are only recorded here after the backend acknowledged the
// vote, so the cursor can never run ahead of durable state.

import type { CandidateCard, Judgment, SampleSpan } from "./api.js";

export interface QueueCard {
  term: string;
  position: number;
  samples: SampleSpan[][];
  judgment: Judgment | null;
}

export class ReviewQueue {
  private cards: QueueCard[] = [];
  private byTerm = new Map<string, QueueCard>();
  private cursor = 0;

  /** Append a fetched page, ignoring terms already present. */
  append(cards: CandidateCard[]): void {
    for (const card of cards) {
      if (this.byTerm.has(card.term)) continue;
      const entry: QueueCard = {
        term: card.term,
        position: card.position,
        samples: card.samples,
        judgment: card.my_judgment,
      };
      this.cards.push(entry);
      this.byTerm.set(card.term, entry);
    }
  }

  get length(): number {
    return this.cards.length;
  }

  get current(): QueueCard | null {
    return this.cards[this.cursor] ?? null;
  }

  get index(): number {
    return this.cursor;
  }

  get judgedCount(): number {
    return this.cards.filter((c) => c.judgment !== null).length;
  }

  get allJudged(): boolean {
    return this.cards.length > 0 && this.cards.every((c) => c.judgment !== null);
  }

  /** Last loaded term, the pagination cursor for the next fetch. */
  get lastTerm(): string | null {
    const last = this.cards[this.cards.length - 1];
    return last ? last.term : null;
  }

  /** Record an acknowledged judgment. */
  markJudged(term: string, judgment: Judgment): void {
    const card = this.byTerm.get(term);
    if (!card) throw new Error(`term not in queue: ${term}`);
    card.judgment = judgment;
  }

  next(): void {
    if (this.cursor < this.cards.length - 1) this.cursor += 1;
  }

  prev(): void {
    if (this.cursor > 0) this.cursor -= 1;
  }

  /**
   * Move the cursor to the nearest unjudged card at or after the current
   * one, wrapping to the front. Returns false when every loaded card is
   * judged (the cursor stays put).
   */
  seekUnjudged(): boolean {
    const n = this.cards.length;
    for (let step = 0; step < n; step += 1) {
      const i = (this.cursor + step) % n;
      if (this.cards[i]!.judgment === null) {
        this.cursor = i;
        return true;
      }
    }
    return false;
  }
}
