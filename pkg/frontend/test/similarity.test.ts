import assert from "node:assert/strict";
import test from "node:test";

import { initialsOf, rankMergeTargets, rankSuggestions } from "../src/similarity.js";

const names = [
  "The Penn Treebank",
  "Penn Discourse Treebank",
  "Nepali News Corpus",
  "Setswana Treebank",
];

test("exact substring matches rank first", () => {
  const ranked = rankSuggestions("Penn Treebank", names, (n) => n);
  assert.equal(ranked[0].item, "The Penn Treebank");
  assert.ok(ranked[0].score > ranked[ranked.length - 1].score);
});

test("exact equality outranks containment", () => {
  const ranked = rankSuggestions("Setswana Treebank", names, (n) => n);
  assert.equal(ranked[0].item, "Setswana Treebank");
  assert.equal(ranked[0].score, 3);
});

test("token overlap still surfaces related names", () => {
  const ranked = rankSuggestions("Treebank for Nepali", names, (n) => n);
  assert.ok(ranked.some((s) => s.item === "Nepali News Corpus"));
});

test("unrelated names are filtered out", () => {
  const ranked = rankSuggestions("Swahili Speech", names, (n) => n);
  assert.equal(ranked.length, 0);
});

test("acronym query matches expansion initials", () => {
  assert.equal(initialsOf("The Penn Treebank"), "TPT");
  const ranked = rankMergeTargets("PDT", names, (n) => n);
  assert.equal(ranked[0].item, "Penn Discourse Treebank");
});

test("ranking is deterministic under ties", () => {
  const tied = ["Alpha Corpus", "Beta Corpus"];
  const first = rankSuggestions("Corpus", tied, (n) => n);
  const second = rankSuggestions("Corpus", tied, (n) => n);
  assert.deepEqual(first, second);
  assert.equal(first[0].item, "Alpha Corpus");
});
