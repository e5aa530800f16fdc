import assert from "node:assert/strict";
import test from "node:test";

import { ApiClient } from "../src/api.js";
import { KEY_BINDINGS, TriageController } from "../src/controller.js";
import type { CandidateRecord } from "../src/model.js";

// In-memory stand-in for the review API implementing the same revision
// contract: one serialized writer, stale revisions rejected with 409.
class MockReviewServer {
  states = new Map<string, string>();
  revision = 0;
  ledger: Array<{ mention: string; state: string; note?: string }> = [];

  constructor(public candidates: CandidateRecord[]) {
    for (const candidate of candidates) this.states.set(candidate.mention_id, "PENDING");
  }

  private pending(): CandidateRecord[] {
    return this.candidates
      .filter((c) => this.states.get(c.mention_id) === "PENDING")
      .sort(
        (a, b) =>
          a.language.localeCompare(b.language) ||
          (b.verdict?.confidence ?? 0) - (a.verdict?.confidence ?? 0) ||
          a.mention_id.localeCompare(b.mention_id),
      );
  }

  stats() {
    const tally = (state: string) =>
      [...this.states.values()].filter((s) => s === state).length;
    const confirmed = tally("CONFIRMED");
    return {
      total: this.candidates.length,
      pending: tally("PENDING"),
      unconfirmable: tally("UNCONFIRMABLE"),
      non_dataset: tally("NON_DATASET"),
      genuine: confirmed,
      merged_away: 0,
      unique_datasets: confirmed,
      languages_covered: new Set(
        this.candidates
          .filter((c) => this.states.get(c.mention_id) === "CONFIRMED")
          .map((c) => c.language),
      ).size,
      precision_pct: null,
      revision: this.revision,
    };
  }

  fetchImpl = async (input: string, init?: RequestInit): Promise<Response> => {
    const url = new URL(input, "http://mock");
    const json = (payload: unknown, status = 200) =>
      new Response(JSON.stringify(payload), {
        status,
        headers: { "Content-Type": "application/json" },
      });
    if (url.pathname === "/api/queue/next") {
      const queue = this.pending();
      return json({
        candidate: queue[0] ?? null,
        remaining: queue.length,
        revision: this.revision,
      });
    }
    if (url.pathname === "/api/stats") return json(this.stats());
    const decision = url.pathname.match(/^\/api\/candidates\/(.+)\/decision$/);
    if (decision && init?.method === "POST") {
      const body = JSON.parse(String(init.body)) as {
        state: string;
        revision: number;
        note?: string;
      };
      if (body.revision !== this.revision) {
        return json({ code: "conflict", message: `revision mismatch, current is ${this.revision}` }, 409);
      }
      if (!this.states.has(decision[1])) {
        return json({ code: "unknown_mention", message: decision[1] }, 404);
      }
      this.states.set(decision[1], body.state);
      this.revision += 1;
      this.ledger.push({ mention: decision[1], state: body.state, note: body.note });
      return json({ applied: { mention_id: decision[1] }, revision: this.revision });
    }
    return json({ code: "not_found", message: url.pathname }, 404);
  };
}

function candidate(id: string, language: string, confidence: number): CandidateRecord {
  return {
    mention_id: id,
    language,
    citing: { paper_id: `c-${id}`, title: "Citing", year: 2022 },
    cited: { paper_id: `d-${id}`, title: "Cited", year: 2020 },
    context: `We use the ${id} corpus.`,
    direction: "OUTGOING",
    extracted_name: `${id} corpus`,
    verdict: { is_dataset: true, confidence },
  };
}

function setup(candidates?: CandidateRecord[]) {
  const server = new MockReviewServer(
    candidates ?? [
      candidate("m1", "npi", 0.9),
      candidate("m2", "npi", 0.7),
      candidate("m3", "tsn", 0.95),
    ],
  );
  const api = new ApiClient("http://mock", { fetchImpl: server.fetchImpl });
  return { server, controller: new TriageController(api) };
}

test("load shows the highest-priority pending candidate", async () => {
  const { controller } = setup();
  await controller.load();
  assert.equal(controller.card?.mention_id, "m1"); // npi before tsn, confidence desc
  assert.equal(controller.remaining, 3);
});

test("confirm keystroke submits and advances to the next card", async () => {
  const { server, controller } = setup();
  await controller.load();
  const outcome = await controller.handleKey("c");
  assert.deepEqual(outcome, { ok: true });
  assert.equal(server.states.get("m1"), "CONFIRMED");
  assert.equal(controller.card?.mention_id, "m2");
  assert.equal(controller.remaining, 2);
});

test("all three triage keys map to their states", async () => {
  const { server, controller } = setup();
  await controller.load();
  for (const key of ["c", "n", "u"]) {
    await controller.handleKey(key);
  }
  assert.equal(server.states.get("m1"), KEY_BINDINGS["c"]);
  assert.equal(server.states.get("m2"), KEY_BINDINGS["n"]);
  assert.equal(server.states.get("m3"), KEY_BINDINGS["u"]);
  assert.equal(controller.card, null);
  assert.ok(controller.completed); // completion screen data fetched
  assert.equal(controller.completed?.pending, 0);
});

test("unknown keys are ignored", async () => {
  const { server, controller } = setup();
  await controller.load();
  const outcome = await controller.handleKey("x");
  assert.equal(outcome, null);
  assert.equal(server.revision, 0);
});

test("conflict refreshes the card and never overwrites", async () => {
  const { server, controller } = setup();
  await controller.load();
  // another session decides first
  await server.fetchImpl("http://mock/api/candidates/m1/decision", {
    method: "POST",
    body: JSON.stringify({ state: "NON_DATASET", revision: 0 }),
  });
  const outcome = await controller.decide("CONFIRMED");
  assert.equal(outcome.ok, false);
  assert.equal(outcome.conflict, true);
  assert.equal(server.states.get("m1"), "NON_DATASET"); // the other session's call stands
  assert.equal(server.ledger.length, 1); // exactly one accepted write
  assert.ok(controller.banner);
  assert.equal(controller.card?.mention_id, "m2"); // refreshed to current queue head
  assert.equal(controller.revision, 1);
});

test("undo appends a compensating event instead of rewriting", async () => {
  const { server, controller } = setup();
  await controller.load();
  await controller.handleKey("c");
  const outcome = await controller.handleKey("z");
  assert.deepEqual(outcome, { ok: true });
  assert.equal(server.states.get("m1"), "PENDING");
  assert.equal(server.ledger.length, 2); // decision + compensation, both kept
  assert.equal(server.ledger[1].state, "PENDING");
  assert.equal(controller.card?.mention_id, "m1"); // back at the head of the queue
});

test("undo with nothing to undo reports an error", async () => {
  const { controller } = setup();
  await controller.load();
  const outcome = await controller.undo();
  assert.equal(outcome.ok, false);
  assert.match(outcome.error ?? "", /nothing to undo/);
});

test("empty queue loads the completion summary immediately", async () => {
  const { controller } = setup([]);
  await controller.load();
  assert.equal(controller.card, null);
  assert.equal(controller.completed?.total, 0);
});
