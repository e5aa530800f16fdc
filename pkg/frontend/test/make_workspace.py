#!/usr/bin/env python3
"""Build a fixture workspace with pending candidates for console e2e tests.

Usage: make_workspace.py <workspace_dir> <n_candidates>
"""

import json
import sys

from resaudit.workspace import Workspace


def candidate(i: int, language: str, name: str, confidence: float) -> dict:
    return {
        "mention_id": f"m-{language}-{i}",
        "language": language,
        "citing": {"paper_id": f"citing-{language}-{i}",
                   "title": f"A Study Using {name}", "year": 2022},
        "cited": {"paper_id": f"cited-{language}-{i}",
                  "title": f"{name}: A Resource Paper", "year": 2020},
        "context": f"We evaluate on the {name} corpus (2020), a {language} dataset.",
        "direction": "OUTGOING",
        "extracted_name": name,
        "verdict": {
            "is_dataset": True,
            "extracted_name": name,
            "backend": "LLM",
            "confidence": confidence,
            "context_digest": f"digest-{language}-{i}",
        },
    }


def main() -> None:
    root, count = sys.argv[1], int(sys.argv[2])
    ws = Workspace(root).create()
    names = {
        "npi": ["Nepali News Corpus", "NNC", "Nepali Treebank", "NepSent", "Nepali QA Set"],
        "tsn": ["Setswana Treebank", "Tswana Speech Corpus", "SetswanaSent",
                "Setswana Wordlist", "Tswana NER Dataset"],
    }
    records = []
    per_language = (count + 1) // 2
    for language in ("npi", "tsn"):
        pool = names[language]
        for i in range(per_language):
            if len(records) == count:
                break
            records.append(
                candidate(i, language, pool[i % len(pool)], round(0.9 - i * 0.05, 2))
            )
    with ws.candidates_path.open("w", encoding="utf-8") as handle:
        for record in records[:count]:
            handle.write(json.dumps(record, sort_keys=True) + "\n")
    print(f"workspace ready: {root} ({len(records[:count])} candidates)")


if __name__ == "__main__":
    main()
