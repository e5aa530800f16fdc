// Citation-context highlighting. The context is evidence: the markup layer
// may wrap substrings in <mark> but the text content must survive verbatim,
// so everything is HTML-escaped first and only then decorated.
const ESCAPES = {
    "&": "&amp;",
    "<": "&lt;",
    ">": "&gt;",
    '"': "&quot;",
    "'": "&#39;",
};
export function escapeHtml(text) {
    return text.replace(/[&<>"']/g, (ch) => ESCAPES[ch]);
}
function escapeRegExp(text) {
    return text.replace(/[.*+?^${}()|[\]\\]/g, "\\$&");
}
export function highlightContext(context, terms) {
    const wanted = [...new Set(terms.filter((t) => !!t && t.trim().length > 1))];
    if (wanted.length === 0)
        return escapeHtml(context);
    // longest terms first so "Setswana Treebank" wins over "Treebank"
    wanted.sort((a, b) => b.length - a.length);
    const pattern = new RegExp(wanted.map(escapeRegExp).join("|"), "gi");
    let html = "";
    let cursor = 0;
    for (const match of context.matchAll(pattern)) {
        const start = match.index ?? 0;
        html += escapeHtml(context.slice(cursor, start));
        html += `<mark>${escapeHtml(match[0])}</mark>`;
        cursor = start + match[0].length;
    }
    html += escapeHtml(context.slice(cursor));
    return html;
}
export function stripMarkup(html) {
    // &amp; must unescape last or double-escaped sequences would over-decode
    return html
        .replace(/<\/?mark>/g, "")
        .replace(/&lt;/g, "<")
        .replace(/&gt;/g, ">")
        .replace(/&quot;/g, '"')
        .replace(/&#39;/g, "'")
        .replace(/&amp;/g, "&");
}
