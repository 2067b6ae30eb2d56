"""Citation graph store: ingest, merge, clean, and query.

Sources arrive as JSONL files (one JSON object per line, either a work
or a citation). Records from all sources are merged into a single
DOI-keyed network, then cleaned: works without a publication year are
discarded, works dated more than one year past the dataset snapshot are
discarded as erroneous, and edges incident to removed or unknown DOIs
are dropped with them. The cleaned graph is immutable and safe for
concurrent read-only use.

Distinct DOIs are always distinct nodes, even when metadata suggests
they describe the same object.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Sequence, Union

from .errors import ArtifactError, SourceFormatError, ValidationError

GRAPH_FORMAT = "trackrecord-graph"
GRAPH_VERSION = 1

_DOI_RESOLVER_PREFIXES = ("https://doi.org/", "http://doi.org/", "doi.org/")


def normalize_doi(raw: str) -> str:
    """Trim, lowercase, and strip a leading resolver prefix from a DOI.

    DOI matching is case-insensitive, so the lowercase form is the
    canonical node key.
    """
    doi = raw.strip().lower()
    for prefix in _DOI_RESOLVER_PREFIXES:
        if doi.startswith(prefix):
            doi = doi[len(prefix) :]
            break
    return doi.strip()


class WorkType(str, Enum):
    PUBLICATION = "publication"
    DATASET = "dataset"


class AccessStatus(str, Enum):
    OPEN = "open"
    CLOSED = "closed"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class WorkRecord:
    """One work row as read from a source file."""

    doi: str
    title: str
    venue: str | None
    year: int | None
    work_type: WorkType
    access: AccessStatus
    source_id: str


@dataclass(frozen=True)
class CitationRecord:
    """One citing-DOI -> cited-DOI row as read from a source file."""

    citing: str
    cited: str


SourceRecord = Union[WorkRecord, CitationRecord]


@dataclass(frozen=True)
class ParseReject:
    line: int
    reason: str


@dataclass
class ParsedSource:
    """Everything recovered from one source file.

    ``malformed`` counts lines that could not be turned into a record at
    all; self-citation lines are rejected but parse fine, so they do not
    count toward the wrong-file heuristic.
    """

    source_id: str
    records: list[SourceRecord]
    rejects: list[ParseReject]
    malformed: int


@dataclass(frozen=True)
class Work:
    """A node of the citation graph (merged across sources)."""

    doi: str
    title: str
    venue: str | None
    year: int | None
    work_type: WorkType
    access: AccessStatus
    sources: tuple[str, ...]


@dataclass
class GraphDraft:
    """Mutable pre-clean aggregate of all sources (single-writer)."""

    works: dict[str, Work] = field(default_factory=dict)
    edges: set[tuple[str, str]] = field(default_factory=set)


@dataclass(frozen=True)
class CleaningReport:
    """Per-rule removal counters, plus what survived."""

    works_missing_year: int
    works_future_year: int
    works_retained: int
    edges_unknown_endpoint: int
    edges_removed_work: int
    edges_retained: int

    def to_dict(self) -> dict[str, int]:
        return {
            "works_missing_year": self.works_missing_year,
            "works_future_year": self.works_future_year,
            "works_retained": self.works_retained,
            "edges_unknown_endpoint": self.edges_unknown_endpoint,
            "edges_removed_work": self.edges_removed_work,
            "edges_retained": self.edges_retained,
        }


@dataclass(frozen=True)
class CitationGraph:
    """Cleaned citation network. Treat as immutable once built.

    ``out_edges[d]`` are the works *d* cites (its references);
    ``in_edges[d]`` are the works citing *d*. Every DOI in ``works`` is
    present as a key of both adjacency maps, and every edge endpoint is
    a retained work with a known year <= ``current_year``.
    """

    works: dict[str, Work]
    out_edges: dict[str, tuple[str, ...]]
    in_edges: dict[str, tuple[str, ...]]
    dataset_year: int
    current_year: int

    def dois(self) -> list[str]:
        return sorted(self.works)

    @property
    def edge_count(self) -> int:
        return sum(len(v) for v in self.out_edges.values())

    def edges(self) -> Iterator[tuple[str, str]]:
        for citing in sorted(self.out_edges):
            for cited in self.out_edges[citing]:
                yield citing, cited


@dataclass(frozen=True)
class GraphSummary:
    work_count: int
    publication_count: int
    dataset_count: int
    edge_count: int
    year_min: int | None
    year_max: int | None

    def to_dict(self) -> dict[str, object]:
        return {
            "work_count": self.work_count,
            "publication_count": self.publication_count,
            "dataset_count": self.dataset_count,
            "edge_count": self.edge_count,
            "year_range": None
            if self.year_min is None
            else [self.year_min, self.year_max],
        }


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _record_from_obj(obj: object, source_id: str) -> SourceRecord:
    """Convert one decoded JSONL object into a record, or raise ValueError."""
    if not isinstance(obj, dict):
        raise ValueError("line is not a JSON object")
    kind = obj.get("kind")
    if kind == "work":
        doi = normalize_doi(str(obj.get("doi") or ""))
        if not doi:
            raise ValueError("work has no doi")
        year = obj.get("year")
        if year is not None and (isinstance(year, bool) or not isinstance(year, int)):
            raise ValueError("year must be an integer or null")
        try:
            work_type = WorkType(obj["type"])
        except (KeyError, ValueError):
            raise ValueError("type must be 'publication' or 'dataset'") from None
        try:
            access = AccessStatus(obj.get("access", "unknown"))
        except ValueError:
            raise ValueError("access must be 'open', 'closed' or 'unknown'") from None
        title = obj.get("title")
        venue = obj.get("venue")
        return WorkRecord(
            doi=doi,
            title=str(title) if title is not None else "",
            venue=str(venue) if venue not in (None, "") else None,
            year=year,
            work_type=work_type,
            access=access,
            source_id=source_id,
        )
    if kind == "cite":
        citing = normalize_doi(str(obj.get("citing") or ""))
        cited = normalize_doi(str(obj.get("cited") or ""))
        if not citing or not cited:
            raise ValueError("cite needs both citing and cited")
        return CitationRecord(citing=citing, cited=cited)
    raise ValueError(f"unknown kind: {kind!r}")


def parse_source_file(path: str | Path, source_id: str) -> ParsedSource:
    """Parse one JSONL source file.

    Malformed lines become reject entries instead of aborting the run.
    Self-citations (citing == cited) are rejected too, since they would
    corrupt the rankers, but they do not count as malformed. A file
    whose lines are more than half malformed raises SourceFormatError:
    it is almost certainly not an ingestion file.

    I/O problems propagate as OSError.
    """
    records: list[SourceRecord] = []
    rejects: list[ParseReject] = []
    malformed = 0
    considered = 0
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            considered += 1
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                rejects.append(ParseReject(line_no, f"invalid JSON: {exc.msg}"))
                malformed += 1
                continue
            try:
                record = _record_from_obj(obj, source_id)
            except ValueError as exc:
                rejects.append(ParseReject(line_no, str(exc)))
                malformed += 1
                continue
            if isinstance(record, CitationRecord) and record.citing == record.cited:
                rejects.append(ParseReject(line_no, "self-citation dropped"))
                continue
            records.append(record)
    if considered and malformed * 2 > considered:
        raise SourceFormatError(
            f"{path}: {malformed} of {considered} lines malformed; "
            "this does not look like an ingestion file"
        )
    return ParsedSource(
        source_id=source_id, records=records, rejects=rejects, malformed=malformed
    )


# ---------------------------------------------------------------------------
# Merging
# ---------------------------------------------------------------------------


def _fill_missing(existing: Work, rec: WorkRecord) -> Work:
    """Fill the holes of an existing node from a later record.

    A later source never overwrites a present field; access 'unknown'
    counts as a hole. The work type is fixed by the first source.
    """
    updated = existing
    if not existing.title and rec.title:
        updated = replace(updated, title=rec.title)
    if existing.venue is None and rec.venue is not None:
        updated = replace(updated, venue=rec.venue)
    if existing.year is None and rec.year is not None:
        updated = replace(updated, year=rec.year)
    if existing.access is AccessStatus.UNKNOWN and rec.access is not AccessStatus.UNKNOWN:
        updated = replace(updated, access=rec.access)
    if rec.source_id not in existing.sources:
        updated = replace(updated, sources=existing.sources + (rec.source_id,))
    return updated


def merge_sources(record_streams: Sequence[Iterable[SourceRecord]]) -> GraphDraft:
    """Merge record streams into one pre-clean draft.

    Works are keyed by DOI; duplicate edges collapse to one. Stream
    order is the declared precedence: the first stream to supply a
    field wins, later streams only fill missing fields.
    """
    draft = GraphDraft()
    for stream in record_streams:
        for rec in stream:
            if isinstance(rec, WorkRecord):
                existing = draft.works.get(rec.doi)
                if existing is None:
                    draft.works[rec.doi] = Work(
                        doi=rec.doi,
                        title=rec.title,
                        venue=rec.venue,
                        year=rec.year,
                        work_type=rec.work_type,
                        access=rec.access,
                        sources=(rec.source_id,),
                    )
                else:
                    draft.works[rec.doi] = _fill_missing(existing, rec)
            else:
                if rec.citing != rec.cited:
                    draft.edges.add((rec.citing, rec.cited))
    return draft


# ---------------------------------------------------------------------------
# Cleaning
# ---------------------------------------------------------------------------


def apply_cleaning_rules(
    draft: GraphDraft, dataset_year: int
) -> tuple[CitationGraph, CleaningReport]:
    """Apply the year-based cleaning rules and freeze the graph.

    Removes works with no year in any source, and works dated more than
    one year after the dataset snapshot. Edges incident to removed
    works, or to DOIs never seen as works, are dropped and counted.
    ``current_year`` is fixed to ``dataset_year + 1``, the year
    following the snapshot's production.
    """
    if dataset_year <= 1900:
        raise ValidationError(f"implausible dataset year: {dataset_year}")
    current_year = dataset_year + 1

    retained: dict[str, Work] = {}
    missing = future = 0
    for doi, work in draft.works.items():
        if work.year is None:
            missing += 1
        elif work.year > current_year:
            future += 1
        else:
            retained[doi] = work

    unknown_endpoint = removed_work = 0
    kept: list[tuple[str, str]] = []
    for citing, cited in draft.edges:
        if citing not in draft.works or cited not in draft.works:
            unknown_endpoint += 1
        elif citing not in retained or cited not in retained:
            removed_work += 1
        else:
            kept.append((citing, cited))

    out_lists: dict[str, list[str]] = {doi: [] for doi in retained}
    in_lists: dict[str, list[str]] = {doi: [] for doi in retained}
    for citing, cited in kept:
        out_lists[citing].append(cited)
        in_lists[cited].append(citing)

    graph = CitationGraph(
        works=retained,
        out_edges={doi: tuple(sorted(lst)) for doi, lst in out_lists.items()},
        in_edges={doi: tuple(sorted(lst)) for doi, lst in in_lists.items()},
        dataset_year=dataset_year,
        current_year=current_year,
    )
    report = CleaningReport(
        works_missing_year=missing,
        works_future_year=future,
        works_retained=len(retained),
        edges_unknown_endpoint=unknown_endpoint,
        edges_removed_work=removed_work,
        edges_retained=len(kept),
    )
    return graph, report


def validate_graph(graph: CitationGraph) -> None:
    """Check the structural invariants of a cleaned graph."""
    if graph.current_year != graph.dataset_year + 1:
        raise ArtifactError("current_year must be dataset_year + 1")
    for doi, work in graph.works.items():
        if work.year is None:
            raise ArtifactError(f"work {doi} has no year")
        if work.year > graph.current_year:
            raise ArtifactError(f"work {doi} is dated past current_year")
    seen: set[tuple[str, str]] = set()
    for adjacency in (graph.out_edges, graph.in_edges):
        if set(adjacency) != set(graph.works):
            raise ArtifactError("adjacency keys must equal the work set")
    for citing, cited in graph.edges():
        if citing not in graph.works or cited not in graph.works:
            raise ArtifactError(f"dangling edge {citing} -> {cited}")
        if (citing, cited) in seen:
            raise ArtifactError(f"duplicate edge {citing} -> {cited}")
        seen.add((citing, cited))
    for cited, citers in graph.in_edges.items():
        for citing in citers:
            if cited not in graph.out_edges.get(citing, ()):
                raise ArtifactError("in/out adjacency disagree")


# ---------------------------------------------------------------------------
# Queries
# ---------------------------------------------------------------------------


def resolve_doi(graph: CitationGraph, doi: str) -> Work | None:
    """Case-insensitive DOI lookup; None when absent."""
    return graph.works.get(normalize_doi(doi))


def graph_summary(graph: CitationGraph) -> GraphSummary:
    years = [w.year for w in graph.works.values() if w.year is not None]
    publications = sum(
        1 for w in graph.works.values() if w.work_type is WorkType.PUBLICATION
    )
    return GraphSummary(
        work_count=len(graph.works),
        publication_count=publications,
        dataset_count=len(graph.works) - publications,
        edge_count=graph.edge_count,
        year_min=min(years) if years else None,
        year_max=max(years) if years else None,
    )


# ---------------------------------------------------------------------------
# Artifact I/O (line-based, versioned header)
# ---------------------------------------------------------------------------


def save_graph(graph: CitationGraph, path: str | Path) -> None:
    """Write the graph as JSONL: a header line, then works, then edges.

    Works and edges are emitted in sorted order so identical graphs
    serialize to identical bytes.
    """
    with open(path, "w", encoding="utf-8") as fh:
        header = {
            "format": GRAPH_FORMAT,
            "version": GRAPH_VERSION,
            "dataset_year": graph.dataset_year,
            "current_year": graph.current_year,
        }
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for doi in graph.dois():
            w = graph.works[doi]
            row = {
                "kind": "work",
                "doi": w.doi,
                "title": w.title,
                "venue": w.venue,
                "year": w.year,
                "type": w.work_type.value,
                "access": w.access.value,
                "sources": list(w.sources),
            }
            fh.write(json.dumps(row, sort_keys=True) + "\n")
        for citing, cited in graph.edges():
            fh.write(
                json.dumps({"kind": "cite", "citing": citing, "cited": cited}, sort_keys=True)
                + "\n"
            )


def load_graph(path: str | Path) -> CitationGraph:
    """Load a graph artifact written by :func:`save_graph`."""
    works: dict[str, Work] = {}
    edges: list[tuple[str, str]] = []
    header: dict | None = None
    try:
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise ArtifactError(f"{path}:{line_no}: invalid JSON: {exc.msg}") from None
                if header is None:
                    if obj.get("format") != GRAPH_FORMAT:
                        raise ArtifactError(f"{path}: not a graph artifact")
                    if obj.get("version") != GRAPH_VERSION:
                        raise ArtifactError(
                            f"{path}: unsupported artifact version {obj.get('version')!r}"
                        )
                    header = obj
                    continue
                if obj.get("kind") == "work":
                    work = Work(
                        doi=obj["doi"],
                        title=obj.get("title", ""),
                        venue=obj.get("venue"),
                        year=obj.get("year"),
                        work_type=WorkType(obj["type"]),
                        access=AccessStatus(obj.get("access", "unknown")),
                        sources=tuple(obj.get("sources", ())),
                    )
                    works[work.doi] = work
                elif obj.get("kind") == "cite":
                    edges.append((obj["citing"], obj["cited"]))
                else:
                    raise ArtifactError(f"{path}:{line_no}: unknown kind")
    except (KeyError, ValueError) as exc:
        raise ArtifactError(f"{path}: malformed artifact: {exc}") from exc
    if header is None:
        raise ArtifactError(f"{path}: empty artifact (missing header)")

    out_lists: dict[str, list[str]] = {doi: [] for doi in works}
    in_lists: dict[str, list[str]] = {doi: [] for doi in works}
    for citing, cited in edges:
        if citing not in works or cited not in works:
            raise ArtifactError(f"{path}: edge endpoint not in works: {citing} -> {cited}")
        out_lists[citing].append(cited)
        in_lists[cited].append(citing)
    graph = CitationGraph(
        works=works,
        out_edges={doi: tuple(sorted(lst)) for doi, lst in out_lists.items()},
        in_edges={doi: tuple(sorted(lst)) for doi, lst in in_lists.items()},
        dataset_year=int(header["dataset_year"]),
        current_year=int(header["current_year"]),
    )
    validate_graph(graph)
    return graph
