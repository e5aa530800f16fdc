// Triage session controller: keyboard-first decisions over the pending
// queue, optimistic concurrency via the revision echo, and an undo that
// appends a compensating decision instead of ever rewriting the ledger.
import { ConflictError } from "./api.js";
export const KEY_BINDINGS = {
    c: "CONFIRMED",
    n: "NON_DATASET",
    u: "UNCONFIRMABLE",
};
export class TriageController {
    api;
    annotatorId;
    card = null;
    remaining = 0;
    revision = 0;
    banner = null;
    completed = null;
    lastAction = null;
    constructor(api, annotatorId = "console") {
        this.api = api;
        this.annotatorId = annotatorId;
    }
    async load() {
        const view = await this.api.queueNext();
        this.card = view.candidate;
        this.remaining = view.remaining;
        this.revision = view.revision;
        if (this.card === null) {
            this.completed = await this.api.stats();
        }
        else {
            this.completed = null;
        }
    }
    /** Map a keystroke onto a decision; unknown keys are ignored. */
    async handleKey(key) {
        if (key === "z")
            return this.undo();
        const state = KEY_BINDINGS[key];
        if (!state)
            return null;
        return this.decide(state);
    }
    async decide(state, note = "") {
        if (!this.card)
            return { ok: false, error: "queue is empty" };
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
        }
        catch (error) {
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
    async undo() {
        if (!this.lastAction)
            return { ok: false, error: "nothing to undo" };
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
        }
        catch (error) {
            if (error instanceof ConflictError) {
                this.banner = "Undo conflicted with another session; refreshed instead.";
                await this.load();
                return { ok: false, conflict: true };
            }
            return { ok: false, error: error instanceof Error ? error.message : String(error) };
        }
    }
    async refreshStats() {
        return this.api.stats();
    }
}
