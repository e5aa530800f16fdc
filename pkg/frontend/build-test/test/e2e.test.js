// End-to-end: a real review API process over a fixture workspace, driven
// through the console's client and controller logic.
import assert from "node:assert/strict";
import { spawn, spawnSync } from "node:child_process";
import { mkdtempSync } from "node:fs";
import os from "node:os";
import path from "node:path";
import test from "node:test";
import { fileURLToPath } from "node:url";
import { ApiClient } from "../src/api.js";
import { TriageController } from "../src/controller.js";
import { rankMergeTargets } from "../src/similarity.js";
const HERE = path.dirname(fileURLToPath(import.meta.url));
const FRONTEND_ROOT = path.resolve(HERE, "..", "..");
const MAKE_WORKSPACE = path.join(FRONTEND_ROOT, "test", "make_workspace.py");
const PYTHON = process.env.PYTHON ?? "python3";
let nextPort = 8300 + (process.pid % 500);
function makeWorkspace(candidates) {
    const root = mkdtempSync(path.join(os.tmpdir(), "resaudit-console-"));
    const result = spawnSync(PYTHON, [MAKE_WORKSPACE, root, String(candidates)], {
        encoding: "utf-8",
    });
    assert.equal(result.status, 0, result.stderr);
    return root;
}
async function startServer(workspace) {
    const port = nextPort++;
    const baseUrl = `http://127.0.0.1:${port}`;
    const child = spawn(PYTHON, ["-m", "resaudit.cli", "--workspace", workspace, "serve", "--bind", `127.0.0.1:${port}`], { stdio: ["ignore", "ignore", "pipe"] });
    let stderr = "";
    child.stderr?.on("data", (chunk) => (stderr += String(chunk)));
    const deadline = Date.now() + 30_000;
    while (Date.now() < deadline) {
        try {
            const response = await fetch(`${baseUrl}/api/stats`);
            if (response.ok)
                return { child, baseUrl };
        }
        catch {
            // not up yet
        }
        if (child.exitCode !== null)
            break;
        await new Promise((resolve) => setTimeout(resolve, 150));
    }
    child.kill("SIGKILL");
    throw new Error(`review API did not start: ${stderr.slice(0, 500)}`);
}
async function stopServer(child) {
    child.kill("SIGTERM");
    await new Promise((resolve) => {
        const timer = setTimeout(() => {
            child.kill("SIGKILL");
            resolve();
        }, 5000);
        child.once("exit", () => {
            clearTimeout(timer);
            resolve();
        });
    });
}
test("annotator session: 10 keyboard decisions, one merge, one accessibility confirmation", async () => {
    const workspace = makeWorkspace(10);
    const serverA = await startServer(workspace);
    try {
        const api = new ApiClient(serverA.baseUrl);
        const controller = new TriageController(api, "annotator-e2e");
        await controller.load();
        assert.equal(controller.remaining, 10);
        // queue is npi (confidence desc) then tsn: confirm 3, reject 1, unconfirmable 1 per language
        const keys = ["c", "c", "c", "n", "u", "c", "c", "c", "n", "u"];
        for (const key of keys) {
            const outcome = await controller.handleKey(key);
            assert.ok(outcome?.ok, `keystroke ${key} failed: ${outcome?.error}`);
        }
        assert.equal(controller.card, null);
        assert.ok(controller.completed, "completion screen data should be loaded");
        // merge: "NNC" is an acronym of "Nepali News Corpus"; suggestions put it first
        const { datasets, revision } = await api.datasets("npi");
        assert.equal(datasets.length, 3);
        const source = datasets.find((d) => d.canonical_name === "NNC");
        assert.ok(source);
        const targets = rankMergeTargets("NNC", datasets.filter((d) => d.dataset_id !== source.dataset_id), (d) => d.canonical_name);
        assert.equal(targets[0].item.canonical_name, "Nepali News Corpus");
        const sourceMention = source.member_mention_ids[0];
        await api.merge(targets[0].item.dataset_id, [sourceMention], revision, "acronym merge");
        // accessibility confirmation on a tsn dataset
        const tsn = await api.datasets("tsn");
        await api.confirmAccessibility(tsn.datasets[0].dataset_id, "OPEN", true, "direct download");
        const statsA = await api.stats();
        assert.equal(statsA.total, 10);
        assert.equal(statsA.pending, 0);
        assert.equal(statsA.unconfirmable, 2);
        assert.equal(statsA.non_dataset, 2);
        assert.equal(statsA.genuine, 6);
        assert.equal(statsA.merged_away, 1);
        assert.equal(statsA.unique_datasets, 5);
        assert.equal(statsA.languages_covered, 2);
        assert.equal(statsA.revision, 11);
        const merged = await api.datasets("npi");
        const big = merged.datasets.find((d) => d.canonical_name === "Nepali News Corpus");
        assert.ok(big && big.member_mention_ids.length === 2);
        // a fresh service instance over the same workspace recomputes everything
        // from the ledger: reload reproduces identical state
        const serverB = await startServer(workspace);
        try {
            const apiB = new ApiClient(serverB.baseUrl);
            const statsB = await apiB.stats();
            assert.deepEqual(statsB, statsA);
            const queueB = await apiB.queueNext();
            assert.equal(queueB.candidate, null);
            assert.equal(queueB.remaining, 0);
            assert.equal(queueB.revision, 11);
            const datasetsB = await apiB.datasets("npi");
            assert.deepEqual(datasetsB.datasets.map((d) => [d.dataset_id, d.member_mention_ids]), merged.datasets.map((d) => [d.dataset_id, d.member_mention_ids]));
        }
        finally {
            await stopServer(serverB.child);
        }
    }
    finally {
        await stopServer(serverA.child);
    }
});
test("two sessions submitting against the same revision: one event, one conflict", async () => {
    const workspace = makeWorkspace(2);
    const server = await startServer(workspace);
    try {
        const sessionA = new TriageController(new ApiClient(server.baseUrl), "annotator-a");
        const sessionB = new TriageController(new ApiClient(server.baseUrl), "annotator-b");
        await sessionA.load();
        await sessionB.load();
        assert.equal(sessionA.revision, sessionB.revision);
        const outcomeA = await sessionA.decide("CONFIRMED");
        const outcomeB = await sessionB.decide("NON_DATASET");
        assert.equal(outcomeA.ok, true);
        assert.equal(outcomeB.ok, false);
        assert.equal(outcomeB.conflict, true);
        assert.ok(sessionB.banner, "conflict must be surfaced to the second session");
        const stats = await new ApiClient(server.baseUrl).stats();
        assert.equal(stats.revision, 1); // exactly one accepted ledger event
        assert.equal(stats.genuine, 1);
        assert.equal(stats.non_dataset, 0);
        // the conflicting session refreshed onto the remaining pending card
        assert.equal(sessionB.remaining, 1);
        assert.equal(sessionB.revision, 1);
    }
    finally {
        await stopServer(server.child);
    }
});
