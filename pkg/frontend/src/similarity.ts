// Merge-target suggestions. Ranking is a hint only; the annotator decides.
// Exact matches come first, then substring containment in either direction,
// then token overlap; ties break alphabetically so the list is stable.

export interface Suggestion<T> {
  item: T;
  score: number;
}

function tokens(text: string): Set<string> {
  return new Set(
    text
      .toLowerCase()
      .split(/[^a-z0-9]+/)
      .filter((t) => t.length > 0),
  );
}

export function similarityScore(query: string, candidate: string): number {
  const q = query.trim().toLowerCase();
  const c = candidate.trim().toLowerCase();
  if (!q || !c) return 0;
  if (q === c) return 3;
  if (c.includes(q) || q.includes(c)) return 2;
  const qTokens = tokens(q);
  const cTokens = tokens(c);
  if (qTokens.size === 0 || cTokens.size === 0) return 0;
  let shared = 0;
  for (const token of qTokens) if (cTokens.has(token)) shared += 1;
  const union = qTokens.size + cTokens.size - shared;
  return shared === 0 ? 0 : shared / union;
}

export function rankSuggestions<T>(
  query: string,
  candidates: T[],
  nameOf: (item: T) => string,
): Suggestion<T>[] {
  return candidates
    .map((item) => ({ item, score: similarityScore(query, nameOf(item)) }))
    .filter((s) => s.score > 0)
    .sort((a, b) => b.score - a.score || nameOf(a.item).localeCompare(nameOf(b.item)));
}

// Acronyms like "PTB" should still surface their expansion. Treat a query
// that matches the initials of a candidate name as a substring-grade match.
export function initialsOf(name: string): string {
  return name
    .split(/\s+/)
    .map((word) => word[0] ?? "")
    .join("")
    .toUpperCase();
}

export function rankMergeTargets<T>(
  query: string,
  candidates: T[],
  nameOf: (item: T) => string,
): Suggestion<T>[] {
  const base = rankSuggestions(query, candidates, nameOf);
  const seen = new Set(base.map((s) => s.item));
  const extras: Suggestion<T>[] = [];
  const q = query.trim().toUpperCase();
  if (q.length >= 2) {
    for (const item of candidates) {
      if (!seen.has(item) && initialsOf(nameOf(item)) === q) {
        extras.push({ item, score: 2 });
      }
    }
  }
  return [...base, ...extras].sort(
    (a, b) => b.score - a.score || nameOf(a.item).localeCompare(nameOf(b.item)),
  );
}
