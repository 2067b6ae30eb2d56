"""HTTP API: profiles, filtered indicators, work scores, indicator docs.

Every successful response is wrapped in an envelope carrying the data
license (CC-BY-4.0) and the dataset year; errors use a uniform problem
body ``{"error": code, "detail": text}``.

Authorization model: anonymous requests may read public profiles; a
bearer token identifies one ORCID iD; owners read and mutate their own
profile; authenticated non-owners are treated like anonymous users for
private data and may never mutate. Private profiles answer 403 to
everyone but the owner.

The graph and score table are immutable at serve time (scores are
computed offline by the pipeline); profile mutations are serialized per
profile and persisted before the response returns, so a completed edit
is visible to every later read.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Mapping

from fastapi import Body, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import __version__
from .errors import (
    ConflictError,
    NotFoundError,
    PermissionDeniedError,
    TrackRecordError,
    ValidationError,
)
from .graph import CitationGraph, Work, normalize_doi
from .indicator_docs import IndicatorDoc, build_indicator_docs
from .indicators import InactivePeriod
from .orcid import RecordProvider, ProviderRecord, normalize_orcid
from .profiles import (
    FacetSelection,
    ProfileView,
    ResearcherProfile,
    TrackRecordPageEntry,
    create_profile,
    profile_to_dict,
    profile_view,
    set_inactive_periods,
    set_visibility,
    set_work_annotations,
    Visibility,
)
from .store import ProfileStore, TokenTable
from .workscores import IndicatorParams, WorkScores

LICENSE = "CC-BY-4.0"
DEFAULT_PAGE_SIZE = 10


class ApiError(Exception):
    """Error with an HTTP status and a stable machine-readable code."""

    def __init__(self, status_code: int, code: str, detail: str):
        super().__init__(detail)
        self.status_code = status_code
        self.code = code
        self.detail = detail


@dataclass
class ServiceState:
    """Everything a running service needs; graph and scores are shared
    read-only, the store carries its own locking."""

    graph: CitationGraph
    scores: Mapping[str, WorkScores]
    params: IndicatorParams
    store: ProfileStore
    tokens: TokenTable
    provider: RecordProvider | None = None

    def __post_init__(self) -> None:
        self.docs: tuple[IndicatorDoc, ...] = build_indicator_docs(self.params)


# ---------------------------------------------------------------------------
# Wire shapes
# ---------------------------------------------------------------------------


def _work_json(work: Work) -> dict[str, object]:
    return {
        "doi": work.doi,
        "title": work.title,
        "venue": work.venue,
        "year": work.year,
        "work_type": work.work_type.value,
        "access": work.access.value,
    }


def _scores_json(doi: str, scores: WorkScores) -> dict[str, object]:
    return {
        "doi": doi,
        "citations": scores.citations,
        "influence": scores.influence,
        "popularity": scores.popularity,
        "impulse": scores.impulse,
    }


def _entry_json(item: TrackRecordPageEntry) -> dict[str, object]:
    out: dict[str, object] = {
        "doi": item.entry.doi,
        "resolved": item.entry.resolved,
        "roles": sorted(r.value for r in item.entry.roles),
        "topics": list(item.entry.topics),
        "work": _work_json(item.work) if item.work is not None else None,
        "scores": _scores_json(item.entry.doi, item.scores)
        if item.scores is not None
        else None,
    }
    return out


def _selection_json(selection: FacetSelection) -> dict[str, object]:
    return {
        "topics": sorted(selection.topics) if selection.topics else [],
        "roles": sorted(r.value for r in selection.roles) if selection.roles else [],
        "availability": selection.availability.value if selection.availability else None,
        "work_types": sorted(t.value for t in selection.work_types)
        if selection.work_types
        else [],
    }


def _view_json(view: ProfileView) -> dict[str, object]:
    facets = view.summary.facets
    return {
        "summary": {
            "display_name": view.summary.display_name,
            "orcid_id": view.summary.orcid_id,
            "visibility": view.summary.visibility.value,
            "facets": {
                "topics": facets.topics,
                "roles": facets.roles,
                "availability": facets.availability,
                "work_types": facets.work_types,
            },
            "indicators": view.summary.indicators.to_json_dict(),
        },
        "selection": _selection_json(view.selection),
        "track_record": [_entry_json(item) for item in view.entries],
        "page": view.page,
        "page_size": view.page_size,
        "total_entries": view.total_entries,
        "total_pages": view.total_pages,
    }


# ---------------------------------------------------------------------------
# App factory
# ---------------------------------------------------------------------------


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="trackrecord", version=__version__, docs_url=None, redoc_url=None)

    def envelope(data: object, status_code: int = 200) -> JSONResponse:
        return JSONResponse(
            status_code=status_code,
            content={
                "data": data,
                "license": LICENSE,
                "generated_at": datetime.now(timezone.utc).isoformat(),
                "dataset_year": state.graph.dataset_year,
            },
        )

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> JSONResponse:
        return JSONResponse(
            status_code=exc.status_code,
            content={"error": exc.code, "detail": exc.detail},
        )

    @app.exception_handler(TrackRecordError)
    async def _domain_error(_request: Request, exc: TrackRecordError) -> JSONResponse:
        status, code = 500, "internal"
        if isinstance(exc, ValidationError):
            status, code = 422, "invalid"
        elif isinstance(exc, PermissionDeniedError):
            status, code = 403, "forbidden"
        elif isinstance(exc, NotFoundError):
            status, code = 404, "not_found"
        elif isinstance(exc, ConflictError):
            status, code = 409, "conflict"
        return JSONResponse(status_code=status, content={"error": code, "detail": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _request_error(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400, content={"error": "bad_request", "detail": str(exc.errors())}
        )

    # -- auth helpers --------------------------------------------------

    def actor_from(request: Request) -> str | None:
        """ORCID iD of the caller, or None for anonymous requests.

        A presented but unknown/expired/malformed token is a 401: bad
        credentials are never silently downgraded to anonymous.
        """
        header = request.headers.get("authorization")
        if header is None:
            return None
        scheme, _, token = header.partition(" ")
        if scheme.lower() != "bearer" or not token.strip():
            raise ApiError(401, "unauthorized", "malformed Authorization header")
        orcid = state.tokens.resolve(token.strip())
        if orcid is None:
            raise ApiError(401, "unauthorized", "unknown or expired token")
        return orcid

    def require_actor(request: Request) -> str:
        actor = actor_from(request)
        if actor is None:
            raise ApiError(401, "unauthorized", "this operation needs a bearer token")
        return actor

    def readable_profile(orcid: str, actor: str | None) -> ResearcherProfile:
        try:
            canonical = normalize_orcid(orcid)
        except ValidationError:
            raise ApiError(404, "not_found", f"no profile for {orcid!r}") from None
        profile = state.store.get(canonical)
        if profile is None:
            raise ApiError(404, "not_found", f"no profile for {canonical}")
        if profile.visibility is Visibility.PRIVATE and actor != profile.orcid_id:
            raise ApiError(403, "forbidden", "this profile is private")
        return profile

    def parse_selection(
        topics: list[str] | None,
        roles: list[str] | None,
        availability: str | None,
        types: list[str] | None,
    ) -> FacetSelection:
        def split(values: list[str] | None) -> list[str] | None:
            if not values:
                return None
            out = [piece.strip() for v in values for piece in v.split(",") if piece.strip()]
            return out or None

        try:
            return FacetSelection.build(
                topics=split(topics),
                roles=split(roles),
                availability=availability or None,
                work_types=split(types),
            )
        except ValidationError as exc:
            raise ApiError(400, "bad_request", str(exc)) from None

    # -- read endpoints ------------------------------------------------

    @app.get("/v1/indicators")
    def list_indicator_docs() -> JSONResponse:
        """All indicator methodology documents (11 researcher + 4 work)."""
        return envelope([doc.to_json_dict() for doc in state.docs])

    @app.get("/v1/works/{doi:path}/scores")
    def work_scores(doi: str) -> JSONResponse:
        key = normalize_doi(doi)
        scores = state.scores.get(key)
        if scores is None or key not in state.graph.works:
            raise ApiError(404, "not_found", f"no scores for DOI {key!r}")
        return envelope(_scores_json(key, scores))

    @app.get("/v1/profiles/{orcid}")
    def get_profile(
        request: Request,
        orcid: str,
        topics: list[str] | None = Query(None),
        roles: list[str] | None = Query(None),
        availability: str | None = Query(None),
        types: list[str] | None = Query(None),
        page: int = Query(1),
        page_size: int = Query(DEFAULT_PAGE_SIZE),
    ) -> JSONResponse:
        """Profile view: summary, facets, indicators, one track-record page."""
        actor = actor_from(request)
        profile = readable_profile(orcid, actor)
        selection = parse_selection(topics, roles, availability, types)
        view = profile_view(
            profile,
            selection,
            state.graph.works,
            state.scores,
            state.graph.current_year,
            page=page,
            page_size=page_size,
        )
        return envelope(_view_json(view))

    @app.get("/v1/profiles/{orcid}/indicators")
    def get_profile_indicators(
        request: Request,
        orcid: str,
        topics: list[str] | None = Query(None),
        roles: list[str] | None = Query(None),
        availability: str | None = Query(None),
        types: list[str] | None = Query(None),
    ) -> JSONResponse:
        """The eleven indicators over the selection-filtered track record."""
        actor = actor_from(request)
        profile = readable_profile(orcid, actor)
        selection = parse_selection(topics, roles, availability, types)
        view = profile_view(
            profile,
            selection,
            state.graph.works,
            state.scores,
            state.graph.current_year,
            page=1,
            page_size=1,
        )
        return envelope(view.summary.indicators.to_json_dict())

    # -- mutations -------------------------------------------------------

    @app.post("/v1/profiles", status_code=201)
    def post_profile(request: Request, payload: dict = Body(...)) -> JSONResponse:
        """Create the caller's profile from a provider record or an
        inline record ``{"orcid":..., "display_name":..., "works": [...]}``."""
        actor = require_actor(request)
        raw_orcid = payload.get("orcid")
        if not isinstance(raw_orcid, str):
            raise ApiError(422, "invalid", "payload needs an 'orcid' string")
        orcid = normalize_orcid(raw_orcid)  # ValidationError -> 422
        if actor != orcid:
            raise ApiError(403, "forbidden", "a profile can only be created by its owner")
        if state.store.get(orcid) is not None:
            raise ApiError(409, "conflict", f"profile {orcid} already exists")
        if "works" in payload:
            works = payload.get("works")
            if not isinstance(works, list) or not all(isinstance(w, str) for w in works):
                raise ApiError(422, "invalid", "'works' must be a list of DOI strings")
            record = ProviderRecord(
                orcid=orcid,
                display_name=str(payload.get("display_name") or ""),
                work_dois=tuple(works),
            )
        else:
            if state.provider is None:
                raise ApiError(422, "invalid", "no record provider configured; send 'works'")
            fetched = state.provider.fetch(orcid)
            if fetched is None:
                raise ApiError(404, "not_found", f"the record provider knows no {orcid}")
            record = fetched
        profile = create_profile(record, state.graph)
        state.store.create(profile)
        state.store.save()
        return envelope(profile_to_dict(profile), status_code=201)

    @app.patch("/v1/profiles/{orcid}/works/{doi:path}")
    def patch_entry(
        request: Request, orcid: str, doi: str, payload: dict = Body(...)
    ) -> JSONResponse:
        """Replace the roles and/or topics of one track-record entry."""
        actor = require_actor(request)
        canonical = _existing_orcid(orcid)
        roles = payload.get("roles")
        topics = payload.get("topics")
        if roles is not None and not isinstance(roles, list):
            raise ApiError(422, "invalid", "'roles' must be a list")
        if topics is not None and not isinstance(topics, list):
            raise ApiError(422, "invalid", "'topics' must be a list")
        updated = state.store.update(
            canonical,
            lambda p: set_work_annotations(p, doi, actor, roles=roles, topics=topics),
        )
        state.store.save()
        key = normalize_doi(doi)
        entry = next(e for e in updated.entries if e.doi == key)
        return envelope(
            {
                "doi": entry.doi,
                "resolved": entry.resolved,
                "roles": sorted(r.value for r in entry.roles),
                "topics": list(entry.topics),
            }
        )

    @app.put("/v1/profiles/{orcid}/inactive-periods")
    def put_inactive_periods(
        request: Request, orcid: str, payload: dict = Body(...)
    ) -> JSONResponse:
        """Replace the declared inactive periods (normalized on write)."""
        actor = require_actor(request)
        canonical = _existing_orcid(orcid)
        periods_raw = payload.get("periods")
        if not isinstance(periods_raw, list):
            raise ApiError(422, "invalid", "'periods' must be a list")
        try:
            periods = [
                InactivePeriod(int(p["start_year"]), int(p["end_year"]))
                for p in periods_raw
            ]
        except (KeyError, TypeError, ValueError):
            raise ApiError(
                422, "invalid", "each period needs integer start_year and end_year"
            ) from None
        updated = state.store.update(
            canonical, lambda p: set_inactive_periods(p, periods, actor)
        )
        state.store.save()
        return envelope(profile_to_dict(updated))

    @app.put("/v1/profiles/{orcid}/visibility")
    def put_visibility(
        request: Request, orcid: str, payload: dict = Body(...)
    ) -> JSONResponse:
        actor = require_actor(request)
        canonical = _existing_orcid(orcid)
        visibility = payload.get("visibility")
        if not isinstance(visibility, str):
            raise ApiError(422, "invalid", "payload needs a 'visibility' string")
        updated = state.store.update(
            canonical, lambda p: set_visibility(p, visibility, actor)
        )
        state.store.save()
        return envelope(profile_to_dict(updated))

    def _existing_orcid(orcid: str) -> str:
        try:
            canonical = normalize_orcid(orcid)
        except ValidationError:
            raise ApiError(404, "not_found", f"no profile for {orcid!r}") from None
        if state.store.get(canonical) is None:
            raise ApiError(404, "not_found", f"no profile for {canonical}")
        return canonical

    return app
