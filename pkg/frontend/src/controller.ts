// Triage session controller: keyboard-first decisions over the pending
// queue, optimistic concurrency via the revision echo, and an undo that
// appends a compensating decision instead of ever rewriting the ledger.

import { ApiClient, ConflictError } from "./api.js";
import type { CandidateRecord, DecisionState, PipelineStats, QueueView } from "./model.js";

export const KEY_BINDINGS: Record<string, DecisionState> = {
  c: "CONFIRMED",
  n: "NON_DATASET",
  u: "UNCONFIRMABLE",
};

export interface SubmitOutcome {
  ok: boolean;
  conflict?: boolean;
  error?: string;
}

interface LastAction {
  mentionId: string;
  previousState: DecisionState;
}

export class TriageController {
  card: CandidateRecord | null = null;
  remaining = 0;
  revision = 0;
  banner: string | null = null;
  completed: PipelineStats | null = null;
  private lastAction: LastAction | null = null;

  constructor(
    private api: ApiClient,
    private annotatorId = "console",
  ) {}

  async load(): Promise<void> {
    const view: QueueView = await this.api.queueNext();
    this.card = view.candidate;
    this.remaining = view.remaining;
    this.revision = view.revision;
    if (this.card === null) {
      this.completed = await this.api.stats();
    } else {
      this.completed = null;
    }
  }

  /** Map a keystroke onto a decision; unknown keys are ignored. */
  async handleKey(key: string): Promise<SubmitOutcome | null> {
    if (key === "z") return this.undo();
    const state = KEY_BINDINGS[key];
    if (!state) return null;
    return this.decide(state);
  }

  async decide(state: DecisionState, note = ""): Promise<SubmitOutcome> {
    if (!this.card) return { ok: false, error: "queue is empty" };
    const mentionId = this.card.mention_id;
    try {
      const response = await this.api.decide(mentionId, {
        state,
        revision: this.revision,
        note,
        annotator_id: this.annotatorId,
      });
      this.revision = response.revision;
      this.lastAction = { mentionId, previousState: "PENDING" };
      this.banner = null;
      await this.load();
      return { ok: true };
    } catch (error) {
      if (error instanceof ConflictError) {
        // someone else decided first: refresh, never overwrite
        this.banner = "Another session updated the ledger; the card was refreshed.";
        await this.load();
        return { ok: false, conflict: true };
      }
      this.banner = error instanceof Error ? error.message : String(error);
      return { ok: false, error: this.banner ?? undefined };
    }
  }

  /** Undo appends a compensating decision restoring the previous state. */
  async undo(): Promise<SubmitOutcome> {
    if (!this.lastAction) return { ok: false, error: "nothing to undo" };
    const { mentionId, previousState } = this.lastAction;
    try {
      const response = await this.api.decide(mentionId, {
        state: previousState,
        revision: this.revision,
        note: "undo (compensating event)",
        annotator_id: this.annotatorId,
      });
      this.revision = response.revision;
      this.lastAction = null;
      await this.load();
      return { ok: true };
    } catch (error) {
      if (error instanceof ConflictError) {
        this.banner = "Undo conflicted with another session; refreshed instead.";
        await this.load();
        return { ok: false, conflict: true };
      }
      return { ok: false, error: error instanceof Error ? error.message : String(error) };
    }
  }

  async refreshStats(): Promise<PipelineStats> {
    return this.api.stats();
  }
}
