import assert from "node:assert/strict";
import test from "node:test";

import { escapeHtml, highlightContext, stripMarkup } from "../src/highlight.js";

test("html in evidence text is escaped, never interpreted", () => {
  const context = 'We use <b>the</b> "corpus" & more';
  const html = highlightContext(context, []);
  assert.ok(!html.includes("<b>"));
  assert.ok(html.includes("&lt;b&gt;"));
  assert.equal(stripMarkup(html), context);
});

test("terms are wrapped in mark tags", () => {
  const html = highlightContext("We evaluate on the Nepali Treebank corpus.", [
    "Nepali Treebank",
    "corpus",
  ]);
  assert.ok(html.includes("<mark>Nepali Treebank</mark>"));
  assert.ok(html.includes("<mark>corpus</mark>"));
});

test("highlighting preserves the text verbatim", () => {
  const context = "Results on PTB (Marcus et al., 1993) & the 5% split <test>.";
  const html = highlightContext(context, ["PTB", "test"]);
  assert.equal(stripMarkup(html), context);
});

test("longest term wins overlapping matches", () => {
  const html = highlightContext("the Setswana Treebank here", ["Treebank", "Setswana Treebank"]);
  assert.ok(html.includes("<mark>Setswana Treebank</mark>"));
});

test("matching is case-insensitive but keeps original casing", () => {
  const html = highlightContext("The CORPUS is large.", ["corpus"]);
  assert.ok(html.includes("<mark>CORPUS</mark>"));
});

test("empty and missing terms are ignored", () => {
  const context = "plain text";
  assert.equal(highlightContext(context, [undefined, null, "", " "]), escapeHtml(context));
});
