// DOM layer: renders the triage card, merge tool, and accessibility panel.
// All state lives in the controller and on the server; this file only draws.
import { KEY_BINDINGS } from "./controller.js";
import { highlightContext } from "./highlight.js";
import { rankMergeTargets } from "./similarity.js";
const QUERY_TERMS = ["corpus", "dataset", "data", "treebank", "benchmark", "lexicon"];
function el(tag, className, text) {
    const node = document.createElement(tag);
    if (className)
        node.className = className;
    if (text !== undefined)
        node.textContent = text;
    return node;
}
function paperLine(label, meta) {
    const row = el("div", "paper-line");
    row.append(el("span", "paper-label", label));
    row.append(el("span", "paper-title", meta.title || meta.paper_id));
    row.append(el("span", "paper-year", meta.year ? String(meta.year) : "n.d."));
    return row;
}
export function renderCard(container, card, remaining, revision) {
    container.replaceChildren();
    const header = el("div", "card-header");
    header.append(el("span", "chip chip-language", card.language));
    if (card.verdict) {
        const badgeText = card.verdict.is_dataset
            ? `classifier: dataset${card.verdict.confidence != null ? ` (${card.verdict.confidence.toFixed(2)})` : ""}`
            : "classifier: other artifact";
        header.append(el("span", `chip ${card.verdict.is_dataset ? "chip-yes" : "chip-no"}`, badgeText));
    }
    header.append(el("span", "chip chip-meta", `${remaining} left | rev ${revision}`));
    container.append(header);
    const context = el("blockquote", "context");
    context.innerHTML = highlightContext(card.context, [
        card.extracted_name,
        card.verdict?.extracted_name,
        ...QUERY_TERMS,
    ]);
    container.append(context);
    container.append(paperLine("citing", card.citing));
    container.append(paperLine("cited", card.cited));
    container.append(el("div", "hint", "keys: [c]onfirm  [n]ot a dataset  [u]nconfirmable  [z] undo"));
}
export function renderCompletion(container, stats) {
    container.replaceChildren();
    container.append(el("h2", undefined, "Queue complete"));
    const list = el("dl", "stats-list");
    const rows = [
        ["candidates", String(stats.total)],
        ["genuine", String(stats.genuine)],
        ["unconfirmable", String(stats.unconfirmable)],
        ["non-dataset", String(stats.non_dataset)],
        ["merged away", String(stats.merged_away)],
        ["unique datasets", String(stats.unique_datasets)],
        ["languages covered", String(stats.languages_covered)],
        ["precision", stats.precision_pct === null ? "n/a" : `${stats.precision_pct.toFixed(2)}%`],
    ];
    for (const [label, value] of rows) {
        list.append(el("dt", undefined, label));
        list.append(el("dd", undefined, value));
    }
    container.append(list);
}
export function renderBanner(container, message) {
    container.textContent = message ?? "";
    container.classList.toggle("visible", message !== null);
}
export function renderStatsBar(container, stats) {
    container.textContent =
        `pending ${stats.pending} | genuine ${stats.genuine} | ` +
            `datasets ${stats.unique_datasets} | rev ${stats.revision}`;
}
export class MergePanel {
    api;
    root;
    selected = null;
    constructor(api, root) {
        this.api = api;
        this.root = root;
    }
    async open(language, sourceMention, revision) {
        const { datasets } = await this.api.datasets(language);
        const query = sourceMention.extracted_name ?? sourceMention.verdict?.extracted_name ?? "";
        const ranked = rankMergeTargets(query, datasets, (d) => d.canonical_name);
        this.root.replaceChildren();
        this.root.append(el("h3", undefined, `Merge "${query}" into:`));
        const list = el("ul", "merge-list");
        for (const suggestion of ranked) {
            const item = el("li", "merge-option", suggestion.item.canonical_name);
            item.dataset.datasetId = suggestion.item.dataset_id;
            item.addEventListener("click", () => {
                this.selected = suggestion.item.dataset_id;
                for (const sibling of list.children)
                    sibling.classList.remove("selected");
                item.classList.add("selected");
            });
            list.append(item);
        }
        this.root.append(list);
        const submit = el("button", "merge-submit", "Merge");
        submit.addEventListener("click", async () => {
            if (!this.selected)
                return; // disabled until a target is chosen
            await this.api.merge(this.selected, [sourceMention.mention_id], revision);
            this.root.replaceChildren(el("div", "ok", "merged"));
        });
        this.root.append(submit);
    }
}
export class AccessibilityPanel {
    api;
    root;
    constructor(api, root) {
        this.api = api;
        this.root = root;
    }
    async open(dataset) {
        this.root.replaceChildren();
        this.root.append(el("h3", undefined, `Accessibility: ${dataset.canonical_name}`));
        const probes = el("ul", "probe-list");
        for (const probe of dataset.probes) {
            probes.append(el("li", `probe probe-${probe.outcome.toLowerCase()}`, `${probe.outcome} ${probe.http_status ?? ""} ${probe.content_kind} ${probe.final_url}`));
        }
        this.root.append(probes);
        const anyResolved = dataset.probes.some((p) => p.outcome === "RESOLVED");
        const openButton = el("button", "acc-open", "OPEN (same dataset, unrestricted)");
        openButton.disabled = !anyResolved; // dead links can never be OPEN
        openButton.addEventListener("click", async () => {
            await this.api.confirmAccessibility(dataset.dataset_id, "OPEN", true);
            this.root.replaceChildren(el("div", "ok", "recorded OPEN"));
        });
        const closedButton = el("button", "acc-closed", "NOT OPEN (gated/dead)");
        closedButton.addEventListener("click", async () => {
            await this.api.confirmAccessibility(dataset.dataset_id, "NOT_OPEN", false);
            this.root.replaceChildren(el("div", "ok", "recorded NOT_OPEN"));
        });
        this.root.append(openButton, closedButton);
    }
}
export function bindKeyboard(controller, onUpdate) {
    document.addEventListener("keydown", async (event) => {
        if (event.target instanceof HTMLInputElement || event.target instanceof HTMLTextAreaElement) {
            return;
        }
        const key = event.key.toLowerCase();
        if (key in KEY_BINDINGS || key === "z") {
            event.preventDefault();
            await controller.handleKey(key);
            onUpdate();
        }
    });
}
