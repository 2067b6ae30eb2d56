from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import cite, make_graph, work
from trackrecord.errors import ArtifactError, SourceFormatError, ValidationError
from trackrecord.graph import (
    AccessStatus,
    CitationRecord,
    WorkRecord,
    WorkType,
    apply_cleaning_rules,
    graph_summary,
    load_graph,
    merge_sources,
    normalize_doi,
    parse_source_file,
    resolve_doi,
    save_graph,
    validate_graph,
)

# ---------------------------------------------------------------------------
# DOI normalization
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "raw,expected",
    [
        ("10.1000/ABC", "10.1000/abc"),
        ("  10.1000/abc \n", "10.1000/abc"),
        ("https://doi.org/10.1000/Abc", "10.1000/abc"),
        ("http://doi.org/10.1000/abc", "10.1000/abc"),
        ("doi.org/10.1000/abc", "10.1000/abc"),
        ("", ""),
    ],
)
def test_normalize_doi(raw, expected):
    assert normalize_doi(raw) == expected


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _write_lines(path, lines):
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def test_parse_three_valid_works(tmp_path):
    p = tmp_path / "src.jsonl"
    _write_lines(
        p,
        [
            json.dumps({"kind": "work", "doi": f"10.1/{i}", "title": f"t{i}",
                        "venue": None, "year": 2000 + i, "type": "publication",
                        "access": "open"})
            for i in range(3)
        ],
    )
    parsed = parse_source_file(p, "mag")
    assert len(parsed.records) == 3
    assert parsed.rejects == []
    assert all(isinstance(r, WorkRecord) for r in parsed.records)
    assert parsed.records[0].source_id == "mag"


def test_parse_empty_file(tmp_path):
    p = tmp_path / "empty.jsonl"
    p.write_text("", encoding="utf-8")
    parsed = parse_source_file(p, "s")
    assert parsed.records == []
    assert parsed.rejects == []


def test_parse_two_valid_one_malformed(tmp_path):
    p = tmp_path / "src.jsonl"
    _write_lines(
        p,
        [
            json.dumps({"kind": "work", "doi": "10.1/a", "type": "publication"}),
            "{this is not json",
            json.dumps({"kind": "cite", "citing": "10.1/a", "cited": "10.1/b"}),
        ],
    )
    parsed = parse_source_file(p, "s")
    assert len(parsed.records) == 2
    assert len(parsed.rejects) == 1
    assert parsed.rejects[0].line == 2
    assert parsed.malformed == 1


def test_parse_rejects_bad_fields(tmp_path):
    p = tmp_path / "src.jsonl"
    _write_lines(
        p,
        [
            json.dumps({"kind": "work", "doi": "10.1/a", "type": "publication"}),
            json.dumps({"kind": "work", "doi": "", "type": "publication"}),
            json.dumps({"kind": "work", "doi": "10.1/b", "type": "poem"}),
            json.dumps({"kind": "work", "doi": "10.1/c", "type": "dataset", "year": "soon"}),
            json.dumps({"kind": "work", "doi": "10.1/d", "type": "dataset", "access": "paywalled"}),
            json.dumps({"kind": "song", "doi": "10.1/e"}),
            json.dumps(["not", "an", "object"]),
            json.dumps({"kind": "cite", "citing": "10.1/a", "cited": ""}),
        ],
    )
    with pytest.raises(SourceFormatError):
        parse_source_file(p, "s")  # 7 of 8 malformed


def test_parse_majority_malformed_is_format_error(tmp_path):
    p = tmp_path / "src.jsonl"
    _write_lines(p, ["not json", "also not json", json.dumps({"kind": "work", "doi": "10.1/a", "type": "publication"})])
    with pytest.raises(SourceFormatError):
        parse_source_file(p, "s")


def test_parse_half_malformed_is_tolerated(tmp_path):
    p = tmp_path / "src.jsonl"
    _write_lines(
        p,
        [
            "garbage",
            json.dumps({"kind": "work", "doi": "10.1/a", "type": "publication"}),
        ],
    )
    parsed = parse_source_file(p, "s")  # exactly 50% is not "more than half"
    assert len(parsed.records) == 1


def test_parse_self_citation_rejected_but_not_malformed(tmp_path):
    p = tmp_path / "src.jsonl"
    _write_lines(
        p,
        [
            json.dumps({"kind": "cite", "citing": "10.1/a", "cited": "10.1/A"}),
            json.dumps({"kind": "cite", "citing": "10.1/a", "cited": "10.1/b"}),
        ],
    )
    parsed = parse_source_file(p, "s")
    assert len(parsed.records) == 1
    assert len(parsed.rejects) == 1
    assert "self-citation" in parsed.rejects[0].reason
    assert parsed.malformed == 0


def test_parse_blank_lines_skipped(tmp_path):
    p = tmp_path / "src.jsonl"
    p.write_text(
        "\n" + json.dumps({"kind": "work", "doi": "10.1/a", "type": "dataset"}) + "\n\n",
        encoding="utf-8",
    )
    parsed = parse_source_file(p, "s")
    assert len(parsed.records) == 1
    assert parsed.rejects == []


def test_parse_missing_file_is_oserror(tmp_path):
    with pytest.raises(OSError):
        parse_source_file(tmp_path / "nope.jsonl", "s")


def test_parse_normalizes_dois(tmp_path):
    p = tmp_path / "src.jsonl"
    _write_lines(
        p,
        [
            json.dumps({"kind": "work", "doi": "https://doi.org/10.1/UP", "type": "publication"}),
            json.dumps({"kind": "cite", "citing": "10.1/UP", "cited": "10.1/other"}),
        ],
    )
    parsed = parse_source_file(p, "s")
    assert parsed.records[0].doi == "10.1/up"
    assert parsed.records[1].citing == "10.1/up"


# ---------------------------------------------------------------------------
# Merging
# ---------------------------------------------------------------------------


def test_merge_fills_missing_year_from_later_source():
    a = [work("10.1/x", None, "publication", "open", title="From A", source="a")]
    b = [work("10.1/x", 2019, "publication", "closed", title="From B", source="b")]
    draft = merge_sources([a, b])
    merged = draft.works["10.1/x"]
    assert merged.year == 2019  # filled
    assert merged.title == "From A"  # not overwritten
    assert merged.access is AccessStatus.OPEN  # present field kept
    assert merged.sources == ("a", "b")


def test_merge_unknown_access_is_fillable():
    a = [work("10.1/x", 2019, "publication", "unknown", source="a")]
    b = [work("10.1/x", 2019, "publication", "closed", source="b")]
    assert merge_sources([a, b]).works["10.1/x"].access is AccessStatus.CLOSED


def test_merge_distinct_dois_stay_distinct():
    a = [
        work("10.1/x", 2019, title="Same Title"),
        work("10.2/y", 2019, title="Same Title"),
    ]
    draft = merge_sources([a])
    assert len(draft.works) == 2


def test_merge_duplicate_edges_collapse():
    a = [cite("10.1/x", "10.1/y")]
    b = [cite("10.1/x", "10.1/y")]
    assert len(merge_sources([a, b]).edges) == 1


def test_merge_work_type_first_source_wins():
    a = [work("10.1/x", 2019, "dataset", source="a")]
    b = [work("10.1/x", 2019, "publication", source="b")]
    assert merge_sources([a, b]).works["10.1/x"].work_type is WorkType.DATASET


# ---------------------------------------------------------------------------
# Cleaning
# ---------------------------------------------------------------------------


def test_cleaning_removes_missing_year_and_its_edges():
    records = [
        work("10.1/dated", 2020),
        work("10.1/undated", None),
        cite("10.1/dated", "10.1/undated"),
    ]
    graph, report = apply_cleaning_rules(merge_sources([records]), 2021)
    assert set(graph.works) == {"10.1/dated"}
    assert graph.edge_count == 0
    assert report.works_missing_year == 1
    assert report.edges_removed_work == 1


def test_cleaning_removes_future_years():
    records = [work("10.1/ok", 2022), work("10.1/future", 2023)]
    graph, report = apply_cleaning_rules(merge_sources([records]), 2021)
    assert set(graph.works) == {"10.1/ok"}
    assert report.works_future_year == 1
    assert graph.current_year == 2022


def test_cleaning_keeps_horizon_year_and_sets_current_year():
    graph, _ = apply_cleaning_rules(merge_sources([[work("10.1/a", 2022)]]), 2021)
    assert graph.current_year == 2022
    assert "10.1/a" in graph.works


def test_cleaning_drops_edges_to_unknown_dois():
    records = [work("10.1/a", 2020), cite("10.1/a", "10.1/ghost")]
    graph, report = apply_cleaning_rules(merge_sources([records]), 2021)
    assert graph.edge_count == 0
    assert report.edges_unknown_endpoint == 1
    validate_graph(graph)


def test_cleaning_rejects_implausible_dataset_year():
    with pytest.raises(ValidationError):
        apply_cleaning_rules(merge_sources([[work("10.1/a", 1800)]]), 1899)


def test_cleaning_report_counts(demo_graph):
    # demo fixture is already clean; rebuild with dirt to count removals
    records = [
        work("10.1/a", 2020),
        work("10.1/b", None),
        work("10.1/c", 2024),
        cite("10.1/a", "10.1/b"),
        cite("10.1/c", "10.1/a"),
        cite("10.1/a", "10.1/nowhere"),
    ]
    graph, report = apply_cleaning_rules(merge_sources([records]), 2021)
    assert report.works_missing_year == 1
    assert report.works_future_year == 1
    assert report.works_retained == 1
    assert report.edges_unknown_endpoint == 1
    assert report.edges_removed_work == 2
    assert report.edges_retained == 0
    assert graph.works["10.1/a"].year == 2020


# ---------------------------------------------------------------------------
# Lookup and summary
# ---------------------------------------------------------------------------


def test_resolve_doi_case_insensitive(demo_graph):
    w = resolve_doi(demo_graph, "10.9000/ALPHA")
    assert w is not None and w.doi == "10.9000/alpha"


def test_resolve_doi_prefix_and_misses(demo_graph):
    assert resolve_doi(demo_graph, "https://doi.org/10.9000/beta") is not None
    assert resolve_doi(demo_graph, "10.9000/nope") is None
    assert resolve_doi(demo_graph, "") is None


def test_summary_empty_graph():
    graph, _ = apply_cleaning_rules(merge_sources([]), 2021)
    s = graph_summary(graph)
    assert (s.work_count, s.publication_count, s.dataset_count, s.edge_count) == (0, 0, 0, 0)
    assert s.year_min is None and s.year_max is None


def test_summary_counts(demo_graph):
    s = graph_summary(demo_graph)
    assert s.work_count == 8
    assert s.publication_count == 6
    assert s.dataset_count == 2
    assert s.edge_count == 9
    assert (s.year_min, s.year_max) == (2018, 2022)


def test_summary_small_fixture():
    graph = make_graph(
        [("10.1/a", 2019), ("10.1/b", 2020), ("10.1/c", 2020, "dataset")],
        [("10.1/b", "10.1/a"), ("10.1/c", "10.1/a")],
    )
    s = graph_summary(graph)
    assert s.work_count == 3 and s.edge_count == 2
    assert s.publication_count == 2 and s.dataset_count == 1


# ---------------------------------------------------------------------------
# Property tests
# ---------------------------------------------------------------------------

_dois = st.sampled_from([f"10.77/{c}" for c in "abcdefghij"])
_years = st.one_of(st.none(), st.integers(min_value=2000, max_value=2026))


@st.composite
def _record_stream(draw):
    n_works = draw(st.integers(min_value=0, max_value=8))
    works = []
    for i in range(n_works):
        works.append(
            WorkRecord(
                doi=draw(_dois),
                title=draw(st.sampled_from(["", "T1", "T2"])),
                venue=draw(st.sampled_from([None, "V"])),
                year=draw(_years),
                work_type=draw(st.sampled_from(list(WorkType))),
                access=draw(st.sampled_from(list(AccessStatus))),
                source_id="h",
            )
        )
    n_edges = draw(st.integers(min_value=0, max_value=8))
    edges = []
    for _ in range(n_edges):
        a, b = draw(_dois), draw(_dois)
        if a != b:
            edges.append(CitationRecord(citing=a, cited=b))
    return works + edges


@given(_record_stream(), st.integers(min_value=2010, max_value=2025))
@settings(max_examples=120)
def test_cleaned_graph_invariants(stream, dataset_year):
    graph, _ = apply_cleaning_rules(merge_sources([stream]), dataset_year)
    validate_graph(graph)
    for w in graph.works.values():
        assert w.year is not None
        assert w.year <= graph.current_year
    assert graph.current_year == dataset_year + 1


@given(_record_stream())
@settings(max_examples=100)
def test_merge_is_idempotent(stream):
    once = merge_sources([stream])
    twice = merge_sources([stream, stream])
    assert once.works == twice.works
    assert once.edges == twice.edges


@given(_record_stream(), _record_stream(), st.integers(min_value=2010, max_value=2025))
@settings(max_examples=80)
def test_cleaning_order_independent_without_conflicts(a, b, dataset_year):
    # Field conflicts are resolved by declared precedence, so order
    # independence is asserted on the identity sets (works and edges),
    # which the cleaning rules depend on only through the year; make the
    # year unambiguous by dropping it from the second stream.
    b_no_year = [
        r if isinstance(r, CitationRecord) else WorkRecord(
            doi=r.doi, title=r.title, venue=r.venue, year=None,
            work_type=r.work_type, access=r.access, source_id=r.source_id,
        )
        for r in b
    ]
    ab, _ = apply_cleaning_rules(merge_sources([a, b_no_year]), dataset_year)
    ba, _ = apply_cleaning_rules(merge_sources([b_no_year, a]), dataset_year)
    assert set(ab.works) == set(ba.works)
    assert set(ab.edges()) == set(ba.edges())


# ---------------------------------------------------------------------------
# Artifact round-trip
# ---------------------------------------------------------------------------


def test_graph_artifact_round_trip(tmp_path, demo_graph):
    path = tmp_path / "graph.jsonl"
    save_graph(demo_graph, path)
    loaded = load_graph(path)
    assert loaded.works == demo_graph.works
    assert loaded.out_edges == demo_graph.out_edges
    assert loaded.in_edges == demo_graph.in_edges
    assert loaded.dataset_year == demo_graph.dataset_year
    assert loaded.current_year == demo_graph.current_year


def test_graph_artifact_is_deterministic(tmp_path, demo_graph):
    p1, p2 = tmp_path / "g1.jsonl", tmp_path / "g2.jsonl"
    save_graph(demo_graph, p1)
    save_graph(demo_graph, p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_load_graph_rejects_wrong_format(tmp_path):
    p = tmp_path / "bad.jsonl"
    p.write_text('{"format": "something-else", "version": 1}\n', encoding="utf-8")
    with pytest.raises(ArtifactError):
        load_graph(p)


def test_load_graph_rejects_truncated(tmp_path, demo_graph):
    p = tmp_path / "graph.jsonl"
    save_graph(demo_graph, p)
    data = p.read_bytes()
    p.write_bytes(data[: len(data) - 40])
    with pytest.raises(ArtifactError):
        load_graph(p)


def test_load_graph_rejects_empty(tmp_path):
    p = tmp_path / "empty.jsonl"
    p.write_text("", encoding="utf-8")
    with pytest.raises(ArtifactError):
        load_graph(p)
