"""Builders shared by the test modules."""

from __future__ import annotations

from trackrecord.graph import (
    AccessStatus,
    CitationGraph,
    CitationRecord,
    WorkRecord,
    WorkType,
    apply_cleaning_rules,
    merge_sources,
)
from trackrecord.orcid import ProviderRecord
from trackrecord.profiles import ResearcherProfile, create_profile
from trackrecord.workscores import WorkScores

# ORCID iDs from the public ORCID documentation examples (checksum-valid).
OWNER_ORCID = "0000-0002-1825-0097"
OTHER_ORCID = "0000-0001-5109-3700"
THIRD_ORCID = "0000-0002-1694-233X"


def work(
    doi: str,
    year: int | None,
    work_type: str = "publication",
    access: str = "unknown",
    title: str = "",
    venue: str | None = None,
    source: str = "test",
) -> WorkRecord:
    return WorkRecord(
        doi=doi,
        title=title or doi,
        venue=venue,
        year=year,
        work_type=WorkType(work_type),
        access=AccessStatus(access),
        source_id=source,
    )


def cite(citing: str, cited: str) -> CitationRecord:
    return CitationRecord(citing=citing, cited=cited)


def make_graph(
    works: list[tuple],
    edges: list[tuple[str, str]],
    dataset_year: int = 2021,
) -> CitationGraph:
    """Graph from (doi, year[, type[, access]]) tuples and edge pairs."""
    records = [work(*w) for w in works]
    records += [cite(a, b) for a, b in edges]
    graph, _ = apply_cleaning_rules(merge_sources([records]), dataset_year)
    return graph


def make_scores(graph: CitationGraph, **overrides: WorkScores) -> dict[str, WorkScores]:
    """Degenerate but consistent scores: citations = in-degree, floats 0."""
    table = {
        doi: WorkScores(
            citations=len(graph.in_edges[doi]),
            influence=0.0,
            popularity=0.0,
            impulse=0,
        )
        for doi in graph.works
    }
    table.update(overrides)
    return table


def make_profile(
    graph: CitationGraph,
    dois: list[str],
    orcid: str = OWNER_ORCID,
    name: str = "Test Researcher",
) -> ResearcherProfile:
    record = ProviderRecord(orcid=orcid, display_name=name, work_dois=tuple(dois))
    return create_profile(record, graph)
