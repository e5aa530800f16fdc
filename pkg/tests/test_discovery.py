from __future__ import annotations

import logging
import shutil
from pathlib import Path

import pytest

from resaudit.discovery import (
    CandidateMention,
    CitationContext,
    Direction,
    PaperRef,
    assemble_candidates,
    build_query,
    discover_language,
    expand_citations,
    run_discovery,
    search_papers,
    write_candidates,
)
from resaudit.scholar import (
    ClientConfig,
    RateLimited,
    ReplayMiss,
    ScholarClient,
    request_digest,
)
from resaudit.fixtureserver import FixtureServer


@pytest.fixture()
def replay_client(tmp_path, data_dir) -> ScholarClient:
    cache = tmp_path / "api"
    shutil.copytree(data_dir / "api_cache_fixture", cache)
    return ScholarClient(ClientConfig(cache_dir=cache, replay=True))


def test_build_query_default_terms():
    assert build_query("Nepali") == '"Nepali" AND ("corpus" OR "dataset" OR "data")'


def test_build_query_single_term():
    assert build_query("Setswana", ["corpus"]) == '"Setswana" AND ("corpus")'


def test_build_query_empty_language_rejected():
    with pytest.raises(ValueError):
        build_query("")


def test_search_returns_all_indexed_papers_when_under_k(replay_client):
    query = build_query("Setswana")
    papers = search_papers(replay_client, query, 400)
    assert [p.paper_id for p in papers] == ["s2-tsn-0001", "s2-tsn-0006"]


def test_search_k_zero_rejected(replay_client):
    with pytest.raises(ValueError):
        search_papers(replay_client, "x", 0)


def test_search_truncates_at_k(tmp_path):
    # 600 recorded hits, k=400: the first 400 in relevance order survive.
    cache = tmp_path / "api"
    client = ScholarClient(ClientConfig(cache_dir=cache, replay=False, min_interval=0))
    total = 600
    for offset in range(0, total, 100):
        data = [
            {"paperId": f"p{offset + i:04d}", "title": f"Paper {offset + i}", "year": 2020}
            for i in range(100)
        ]
        payload = {"total": total, "offset": offset, "data": data}
        if offset + 100 < total:
            payload["next"] = offset + 100
        digest_params = {
            "query": "q",
            "offset": offset,
            "limit": 100,
            "fields": "title,year,venue,abstract",
        }
        client._cache_write(
            request_digest("/paper/search", digest_params), "/paper/search", digest_params, payload
        )
    replay = ScholarClient(ClientConfig(cache_dir=cache, replay=True))
    papers = search_papers(replay, "q", 400)
    assert len(papers) == 400
    assert papers[0].paper_id == "p0000" and papers[-1].paper_id == "p0399"


def test_replay_miss_raises(tmp_path):
    client = ScholarClient(ClientConfig(cache_dir=tmp_path / "api", replay=True))
    with pytest.raises(ReplayMiss):
        client.search("unrecorded", 5)


def test_expand_citations_tags_directions_and_skips_contextless(replay_client, caplog):
    paper = PaperRef("s2-tsn-0001", "A Setswana News Classification Corpus", 2021)
    with caplog.at_level(logging.INFO):
        contexts = expand_citations(replay_client, paper)
    assert len(contexts) == 3
    directions = {c.direction for c in contexts}
    assert directions == {Direction.OUTGOING, Direction.INCOMING}
    assert any("skipped" in record.message for record in caplog.records)


def test_expand_citations_empty_paper(replay_client):
    paper = PaperRef("s2-tsn-0006", "Low-Resource Speech Data for Setswana", 2022)
    contexts = expand_citations(replay_client, paper)
    # two contexts from one reference edge, no citations recorded
    assert len(contexts) == 2
    assert all(c.direction is Direction.OUTGOING for c in contexts)


def test_assemble_candidates_deterministic_ids(replay_client):
    paper = PaperRef("s2-tsn-0001", "", 2021)
    contexts = expand_citations(replay_client, paper)
    first = assemble_candidates("tsn", contexts)
    second = assemble_candidates("tsn", contexts)
    assert [m.mention_id for m in first] == [m.mention_id for m in second]
    assert len(first) == 3


def test_assemble_candidates_dedupes_duplicate_context():
    citing = PaperRef("c1", "Citing", 2022)
    cited = PaperRef("d1", "Cited", 2020)
    context = CitationContext(citing, cited, "We use the Foo corpus (2020).", Direction.OUTGOING)
    mentions = assemble_candidates("tsn", [context, context])
    assert len(mentions) == 1


def test_assemble_skips_self_citations():
    paper = PaperRef("p1", "Self", 2022)
    context = CitationContext(paper, paper, "We reuse our corpus.", Direction.OUTGOING)
    assert assemble_candidates("tsn", [context]) == []


def test_discover_language_is_replay_deterministic(replay_client, registry):
    from resaudit.discovery import DiscoveryConfig

    config = DiscoveryConfig(k=400)
    once = discover_language(replay_client, registry, "tsn", config)
    twice = discover_language(replay_client, registry, "tsn", config)
    assert [m.mention_id for m in once] == [m.mention_id for m in twice]
    assert len(once) == 5  # 3 contexts from the first paper, 2 from the second


def test_run_discovery_writes_stable_bytes(tmp_path, data_dir, registry):
    from resaudit.discovery import DiscoveryConfig

    outputs = []
    for run in range(2):
        cache = tmp_path / f"run{run}" / "api"
        shutil.copytree(data_dir / "api_cache_fixture", cache)
        client = ScholarClient(ClientConfig(cache_dir=cache, replay=True))
        mentions = run_discovery(client, registry, ["tsn", "npi"], DiscoveryConfig(k=400))
        out = tmp_path / f"run{run}" / "candidates.jsonl"
        write_candidates(out, mentions)
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1]


def test_unknown_language_rejected(replay_client, registry):
    from resaudit.discovery import DiscoveryConfig

    with pytest.raises(KeyError):
        discover_language(replay_client, registry, "zzz", DiscoveryConfig())


def test_rate_limited_retries_then_succeeds(tmp_path):
    attempts = {"n": 0}

    def flaky(_params):
        attempts["n"] += 1
        if attempts["n"] < 3:
            return 429, {"message": "slow down"}
        return 200, {"total": 1, "offset": 0,
                     "data": [{"paperId": "p1", "title": "T", "year": 2020}]}

    with FixtureServer() as server:
        server.add_json_route("GET", "/paper/search", flaky)
        client = ScholarClient(
            ClientConfig(
                base_url=server.base_url,
                cache_dir=tmp_path / "api",
                min_interval=0,
                backoff_base=0.01,
            )
        )
        papers = search_papers(client, "anything", 5)
    assert [p.paper_id for p in papers] == ["p1"]
    assert attempts["n"] == 3


def test_rate_limited_exhausts_and_raises(tmp_path):
    def always_429(_params):
        return 429, {"message": "slow down"}

    with FixtureServer() as server:
        server.add_json_route("GET", "/paper/search", always_429)
        client = ScholarClient(
            ClientConfig(
                base_url=server.base_url,
                cache_dir=tmp_path / "api",
                min_interval=0,
                backoff_base=0.01,
                max_attempts=2,
            )
        )
        with pytest.raises(RateLimited):
            client.search("anything", 5)


def test_responses_are_cached_once(tmp_path):
    calls = {"n": 0}

    def counting(_params):
        calls["n"] += 1
        return 200, {"total": 0, "offset": 0, "data": []}

    with FixtureServer() as server:
        server.add_json_route("GET", "/paper/search", counting)
        config = ClientConfig(base_url=server.base_url, cache_dir=tmp_path / "api", min_interval=0)
        client = ScholarClient(config)
        client.search("q", 5)
        client.search("q", 5)
    assert calls["n"] == 1


def test_candidate_referential_integrity(replay_client, registry):
    from resaudit.discovery import DiscoveryConfig

    mentions = run_discovery(replay_client, registry, ["tsn"], DiscoveryConfig(k=400))
    for mention in mentions:
        assert mention.context.citing.paper_id
        assert mention.context.cited.paper_id
        assert mention.language == "tsn"
