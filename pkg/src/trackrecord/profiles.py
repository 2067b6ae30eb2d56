"""Researcher profiles: track record, annotations, facets, filtered views.

A profile is owned by one ORCID iD. Its entries mirror the works the
provider reported, deduplicated by DOI; entries whose DOI is not in the
citation graph stay on the track record with an unresolved marker but
never contribute to indicators. Owners annotate entries with CRediT
roles and free-form topics, declare inactive periods, and control
visibility; nobody else may mutate a profile.

Facets classify the track record along four dimensions (topic, role,
availability, work type). A selection filters with OR within a
dimension and AND across dimensions, and the indicator block is always
recomputed from exactly the visible resolved entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Mapping

from .errors import (
    InconsistencyError,
    NotFoundError,
    PermissionDeniedError,
    ValidationError,
)
from .graph import AccessStatus, CitationGraph, Work, WorkType, normalize_doi
from .indicators import (
    InactivePeriod,
    ResearcherIndicators,
    compute_researcher_indicators,
    normalize_periods,
)
from .orcid import ProviderRecord, normalize_orcid
from .workscores import WorkScores

MAX_PAGE_SIZE = 100
UNASSIGNED = "unassigned"


class Visibility(str, Enum):
    PRIVATE = "private"
    PUBLIC = "public"


class ContributionRole(str, Enum):
    """The 14 CRediT contributor roles (closed set)."""

    CONCEPTUALIZATION = "conceptualization"
    DATA_CURATION = "data-curation"
    FORMAL_ANALYSIS = "formal-analysis"
    FUNDING_ACQUISITION = "funding-acquisition"
    INVESTIGATION = "investigation"
    METHODOLOGY = "methodology"
    PROJECT_ADMINISTRATION = "project-administration"
    RESOURCES = "resources"
    SOFTWARE = "software"
    SUPERVISION = "supervision"
    VALIDATION = "validation"
    VISUALIZATION = "visualization"
    WRITING_ORIGINAL_DRAFT = "writing-original-draft"
    WRITING_REVIEW_EDITING = "writing-review-editing"


ROLE_LABELS: dict[ContributionRole, str] = {
    ContributionRole.CONCEPTUALIZATION: "Conceptualization",
    ContributionRole.DATA_CURATION: "Data curation",
    ContributionRole.FORMAL_ANALYSIS: "Formal analysis",
    ContributionRole.FUNDING_ACQUISITION: "Funding acquisition",
    ContributionRole.INVESTIGATION: "Investigation",
    ContributionRole.METHODOLOGY: "Methodology",
    ContributionRole.PROJECT_ADMINISTRATION: "Project administration",
    ContributionRole.RESOURCES: "Resources",
    ContributionRole.SOFTWARE: "Software",
    ContributionRole.SUPERVISION: "Supervision",
    ContributionRole.VALIDATION: "Validation",
    ContributionRole.VISUALIZATION: "Visualization",
    ContributionRole.WRITING_ORIGINAL_DRAFT: "Writing (original draft)",
    ContributionRole.WRITING_REVIEW_EDITING: "Writing (review & editing)",
}


def parse_role(raw: str | ContributionRole) -> ContributionRole:
    """Accept a role slug or label in any common spelling; closed set."""
    if isinstance(raw, ContributionRole):
        return raw
    slug = raw.strip().lower()
    for dash in ("–", "—"):
        slug = slug.replace(dash, "-")
    slug = slug.replace("&", " ")
    slug = "-".join(part for part in slug.replace("_", " ").replace("-", " ").split())
    slug = slug.replace("(", "").replace(")", "")
    try:
        return ContributionRole(slug)
    except ValueError:
        raise ValidationError(f"not a CRediT role: {raw!r}") from None


class Availability(str, Enum):
    """Availability facet buckets; closed and unknown share a bucket."""

    OPEN = "open"
    CLOSED_UNKNOWN = "closed-unknown"


def availability_of(work: Work) -> Availability:
    if work.access is AccessStatus.OPEN:
        return Availability.OPEN
    return Availability.CLOSED_UNKNOWN


def parse_availability(raw: str | Availability) -> Availability:
    if isinstance(raw, Availability):
        return raw
    value = raw.strip().lower().replace("/", "-")
    try:
        return Availability(value)
    except ValueError:
        raise ValidationError(f"not an availability bucket: {raw!r}") from None


@dataclass(frozen=True)
class TrackRecordEntry:
    """One claimed work: DOI plus owner-provided roles and topics.

    Topics keep the owner's casing but are unique case-insensitively.
    ``resolved`` records whether the DOI exists in the citation graph.
    """

    doi: str
    roles: frozenset[ContributionRole]
    topics: tuple[str, ...]
    resolved: bool


@dataclass(frozen=True)
class ResearcherProfile:
    orcid_id: str
    display_name: str
    visibility: Visibility
    entries: tuple[TrackRecordEntry, ...]
    inactive_periods: tuple[InactivePeriod, ...]


@dataclass(frozen=True)
class FacetSelection:
    """Active filters; None per dimension means "no filter".

    Topics are matched case-insensitively, so they are stored lowered.
    """

    topics: frozenset[str] | None = None
    roles: frozenset[ContributionRole] | None = None
    availability: Availability | None = None
    work_types: frozenset[WorkType] | None = None

    @property
    def is_empty(self) -> bool:
        return (
            not self.topics
            and not self.roles
            and self.availability is None
            and not self.work_types
        )

    @staticmethod
    def build(
        topics: Iterable[str] | None = None,
        roles: Iterable[str | ContributionRole] | None = None,
        availability: str | Availability | None = None,
        work_types: Iterable[str | WorkType] | None = None,
    ) -> "FacetSelection":
        """Validate raw filter values into a selection (ValidationError)."""
        topic_set = (
            frozenset(t.strip().lower() for t in topics if t.strip()) if topics else None
        )
        role_set = frozenset(parse_role(r) for r in roles) if roles else None
        types: frozenset[WorkType] | None = None
        if work_types:
            parsed = []
            for t in work_types:
                try:
                    parsed.append(WorkType(t) if not isinstance(t, WorkType) else t)
                except ValueError:
                    raise ValidationError(f"not a work type: {t!r}") from None
            types = frozenset(parsed)
        return FacetSelection(
            topics=topic_set or None,
            roles=role_set or None,
            availability=parse_availability(availability) if availability else None,
            work_types=types or None,
        )


@dataclass(frozen=True)
class FacetClassification:
    """Entry counts per facet value. Multi-valued dimensions overlap:
    an entry with two roles counts once under each."""

    topics: dict[str, int]
    roles: dict[str, int]
    availability: dict[str, int]
    work_types: dict[str, int]


@dataclass(frozen=True)
class ProfileSummary:
    display_name: str
    orcid_id: str
    visibility: Visibility
    facets: FacetClassification
    indicators: ResearcherIndicators


@dataclass(frozen=True)
class TrackRecordPageEntry:
    entry: TrackRecordEntry
    work: Work | None
    scores: WorkScores | None


@dataclass(frozen=True)
class ProfileView:
    summary: ProfileSummary
    entries: tuple[TrackRecordPageEntry, ...]
    page: int
    page_size: int
    total_entries: int
    total_pages: int
    selection: FacetSelection


# ---------------------------------------------------------------------------
# Profile lifecycle and owner edits
# ---------------------------------------------------------------------------


def create_profile(record: ProviderRecord, graph: CitationGraph) -> ResearcherProfile:
    """Map a provider record to a fresh private profile.

    One entry per distinct DOI, in record order; DOIs missing from the
    graph are kept but marked unresolved. Roles and topics start empty.
    """
    orcid = normalize_orcid(record.orcid)
    seen: set[str] = set()
    entries: list[TrackRecordEntry] = []
    for raw in record.work_dois:
        doi = normalize_doi(raw)
        if not doi or doi in seen:
            continue
        seen.add(doi)
        entries.append(
            TrackRecordEntry(
                doi=doi,
                roles=frozenset(),
                topics=(),
                resolved=doi in graph.works,
            )
        )
    return ResearcherProfile(
        orcid_id=orcid,
        display_name=record.display_name or orcid,
        visibility=Visibility.PRIVATE,
        entries=tuple(entries),
        inactive_periods=(),
    )


def _require_owner(profile: ResearcherProfile, actor: str) -> None:
    if actor != profile.orcid_id:
        raise PermissionDeniedError(
            f"{actor} may not edit the profile of {profile.orcid_id}"
        )


def _clean_topics(topics: Iterable[str]) -> tuple[str, ...]:
    cleaned: list[str] = []
    seen: set[str] = set()
    for raw in topics:
        topic = raw.strip()
        if not topic:
            raise ValidationError("topics must be non-empty strings")
        key = topic.lower()
        if key not in seen:
            seen.add(key)
            cleaned.append(topic)
    return tuple(sorted(cleaned, key=str.lower))


def set_work_annotations(
    profile: ResearcherProfile,
    doi: str,
    actor: str,
    roles: Iterable[str | ContributionRole] | None = None,
    topics: Iterable[str] | None = None,
) -> ResearcherProfile:
    """Replace the roles and/or topics of one entry (owner only).

    Passing None for a field leaves it untouched; passing an empty list
    clears it. Both fields are validated before anything is replaced.
    """
    _require_owner(profile, actor)
    doi = normalize_doi(doi)
    index = next((i for i, e in enumerate(profile.entries) if e.doi == doi), None)
    if index is None:
        raise NotFoundError(f"{doi} is not on this track record")
    entry = profile.entries[index]
    new_roles = entry.roles if roles is None else frozenset(parse_role(r) for r in roles)
    new_topics = entry.topics if topics is None else _clean_topics(topics)
    entries = list(profile.entries)
    entries[index] = replace(entry, roles=new_roles, topics=new_topics)
    return replace(profile, entries=tuple(entries))


def set_inactive_periods(
    profile: ResearcherProfile,
    periods: Iterable[InactivePeriod],
    actor: str,
) -> ResearcherProfile:
    """Store a normalized (sorted, merged) list of inactive periods."""
    _require_owner(profile, actor)
    return replace(profile, inactive_periods=normalize_periods(periods))


def set_visibility(
    profile: ResearcherProfile,
    visibility: Visibility | str,
    actor: str,
) -> ResearcherProfile:
    _require_owner(profile, actor)
    if not isinstance(visibility, Visibility):
        try:
            visibility = Visibility(visibility)
        except ValueError:
            raise ValidationError(f"not a visibility value: {visibility!r}") from None
    return replace(profile, visibility=visibility)


# ---------------------------------------------------------------------------
# Facets
# ---------------------------------------------------------------------------


def compute_facets(
    profile: ResearcherProfile, works: Mapping[str, Work]
) -> FacetClassification:
    """Count entries per facet value over the whole track record.

    Topic counting is case-insensitive and displays the first-seen
    casing. Entries without topics (or roles) fall into an explicit
    "unassigned" bucket. Unresolved entries carry no work metadata, so
    they are absent from the availability and work-type dimensions.
    """
    topic_counts: dict[str, int] = {}
    topic_display: dict[str, str] = {}
    role_counts: dict[str, int] = {}
    availability_counts: dict[str, int] = {}
    type_counts: dict[str, int] = {}
    for entry in profile.entries:
        if entry.topics:
            for topic in entry.topics:
                key = topic.lower()
                topic_display.setdefault(key, topic)
                topic_counts[key] = topic_counts.get(key, 0) + 1
        else:
            topic_display.setdefault(UNASSIGNED, UNASSIGNED)
            topic_counts[UNASSIGNED] = topic_counts.get(UNASSIGNED, 0) + 1
        if entry.roles:
            for role in entry.roles:
                role_counts[role.value] = role_counts.get(role.value, 0) + 1
        else:
            role_counts[UNASSIGNED] = role_counts.get(UNASSIGNED, 0) + 1
        work = works.get(entry.doi) if entry.resolved else None
        if work is not None:
            bucket = availability_of(work).value
            availability_counts[bucket] = availability_counts.get(bucket, 0) + 1
            type_counts[work.work_type.value] = type_counts.get(work.work_type.value, 0) + 1
    return FacetClassification(
        topics={
            topic_display[key]: topic_counts[key] for key in sorted(topic_counts)
        },
        roles=dict(sorted(role_counts.items())),
        availability=dict(sorted(availability_counts.items())),
        work_types=dict(sorted(type_counts.items())),
    )


def entry_matches(
    entry: TrackRecordEntry, work: Work | None, selection: FacetSelection
) -> bool:
    """AND across dimensions, OR within a dimension.

    Dimensions that need work metadata (availability, work type) never
    match an unresolved entry.
    """
    if selection.topics is not None:
        lowered = {t.lower() for t in entry.topics}
        if not (selection.topics & lowered):
            return False
    if selection.roles is not None:
        if not (selection.roles & entry.roles):
            return False
    if selection.availability is not None:
        if work is None or availability_of(work) is not selection.availability:
            return False
    if selection.work_types is not None:
        if work is None or work.work_type not in selection.work_types:
            return False
    return True


def apply_facets(
    profile: ResearcherProfile,
    works: Mapping[str, Work],
    selection: FacetSelection,
) -> list[TrackRecordEntry]:
    """Entries satisfying the selection, in track-record order."""
    out = []
    for entry in profile.entries:
        work = works.get(entry.doi) if entry.resolved else None
        if entry_matches(entry, work, selection):
            out.append(entry)
    return out


# ---------------------------------------------------------------------------
# Views
# ---------------------------------------------------------------------------


def _sort_key(item: TrackRecordPageEntry) -> tuple:
    # Resolved entries: year desc, citations desc, DOI asc; unresolved
    # entries trail, ordered by DOI. Deterministic pagination depends on
    # this being a total order.
    if item.work is None:
        return (1, 0, 0, item.entry.doi)
    citations = item.scores.citations if item.scores is not None else 0
    return (0, -item.work.year, -citations, item.entry.doi)


def profile_view(
    profile: ResearcherProfile,
    selection: FacetSelection,
    works: Mapping[str, Work],
    scores: Mapping[str, WorkScores],
    current_year: int,
    page: int = 1,
    page_size: int = 10,
) -> ProfileView:
    """Assemble the profile page: summary block plus one track-record page.

    Indicators are recomputed from exactly the resolved entries matching
    the selection (ages included); facet counts always describe the full
    track record. The requested page may lie past the end — that is an
    empty page, not an error.
    """
    if page < 1:
        raise ValidationError("page must be >= 1")
    if not 1 <= page_size <= MAX_PAGE_SIZE:
        raise ValidationError(f"page_size must be in [1, {MAX_PAGE_SIZE}]")

    matching = apply_facets(profile, works, selection)
    visible: list[TrackRecordPageEntry] = []
    works_with_scores: list[tuple[Work, WorkScores | None]] = []
    for entry in matching:
        if entry.resolved:
            work = works.get(entry.doi)
            if work is None:
                raise InconsistencyError(f"resolved entry {entry.doi} missing from graph")
            score = scores.get(entry.doi)
            if score is None:
                raise InconsistencyError(f"work {entry.doi} has no scores")
            visible.append(TrackRecordPageEntry(entry=entry, work=work, scores=score))
            works_with_scores.append((work, score))
        else:
            visible.append(TrackRecordPageEntry(entry=entry, work=None, scores=None))

    indicators = compute_researcher_indicators(
        works_with_scores, profile.inactive_periods, current_year
    )
    visible.sort(key=_sort_key)
    total = len(visible)
    total_pages = math.ceil(total / page_size) if total else 0
    start = (page - 1) * page_size
    page_items = tuple(visible[start : start + page_size])
    return ProfileView(
        summary=ProfileSummary(
            display_name=profile.display_name,
            orcid_id=profile.orcid_id,
            visibility=profile.visibility,
            facets=compute_facets(profile, works),
            indicators=indicators,
        ),
        entries=page_items,
        page=page,
        page_size=page_size,
        total_entries=total,
        total_pages=total_pages,
        selection=selection,
    )


# ---------------------------------------------------------------------------
# Snapshot (de)serialization
# ---------------------------------------------------------------------------


def profile_to_dict(profile: ResearcherProfile) -> dict[str, object]:
    return {
        "orcid_id": profile.orcid_id,
        "display_name": profile.display_name,
        "visibility": profile.visibility.value,
        "entries": [
            {
                "doi": e.doi,
                "roles": sorted(r.value for r in e.roles),
                "topics": list(e.topics),
            }
            for e in profile.entries
        ],
        "inactive_periods": [
            {"start_year": p.start_year, "end_year": p.end_year}
            for p in profile.inactive_periods
        ],
    }


def profile_from_dict(data: Mapping, graph: CitationGraph) -> ResearcherProfile:
    """Rebuild a profile from its snapshot; resolution is recomputed
    against the current graph rather than trusted from disk."""
    try:
        orcid = normalize_orcid(str(data["orcid_id"]))
        entries = []
        seen: set[str] = set()
        for item in data.get("entries", ()):
            doi = normalize_doi(str(item["doi"]))
            if not doi or doi in seen:
                raise ValidationError(f"duplicate or empty DOI in snapshot: {doi!r}")
            seen.add(doi)
            entries.append(
                TrackRecordEntry(
                    doi=doi,
                    roles=frozenset(parse_role(r) for r in item.get("roles", ())),
                    topics=_clean_topics(item.get("topics", ())),
                    resolved=doi in graph.works,
                )
            )
        periods = normalize_periods(
            InactivePeriod(int(p["start_year"]), int(p["end_year"]))
            for p in data.get("inactive_periods", ())
        )
        return ResearcherProfile(
            orcid_id=orcid,
            display_name=str(data.get("display_name", orcid)),
            visibility=Visibility(data.get("visibility", "private")),
            entries=tuple(entries),
            inactive_periods=periods,
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed profile snapshot: {exc}") from exc
