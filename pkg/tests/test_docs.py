from __future__ import annotations

from trackrecord.indicator_docs import IndicatorAspect, build_indicator_docs, docs_by_id
from trackrecord.indicators import ResearcherIndicators
from trackrecord.workscores import (
    AttRankParams,
    ImpulseParams,
    IndicatorParams,
    PageRankParams,
    WorkScores,
)

RESEARCHER_FIELD_TO_DOC_ID = {
    "citations": "citations",
    "h_index": "h-index",
    "i10_index": "i10-index",
    "popularity": "popularity",
    "influence": "influence",
    "impulse": "impulse",
    "publications": "publications",
    "datasets": "datasets",
    "open_access_share": "open-access-share",
    "academic_age": "academic-age",
    "fair_academic_age": "fair-academic-age",
}


def test_catalogue_has_fifteen_docs():
    docs = build_indicator_docs(IndicatorParams())
    assert len(docs) == 15
    assert len({d.id for d in docs}) == 15


def test_every_researcher_indicator_field_has_a_doc():
    ids = {d.id for d in build_indicator_docs(IndicatorParams())}
    fields = {f.name for f in ResearcherIndicators.__dataclass_fields__.values()}
    assert fields == set(RESEARCHER_FIELD_TO_DOC_ID)
    for field in fields:
        assert RESEARCHER_FIELD_TO_DOC_ID[field] in ids


def test_every_work_score_field_has_a_doc():
    ids = {d.id for d in build_indicator_docs(IndicatorParams())}
    for field in WorkScores.__dataclass_fields__:
        assert f"work-{field}" in ids


def test_docs_have_method_and_limitations_text():
    for doc in build_indicator_docs(IndicatorParams()):
        assert doc.description and doc.calculation and doc.limitations
        assert isinstance(doc.aspect, IndicatorAspect)


def test_impulse_doc_names_configured_window():
    params = IndicatorParams(impulse=ImpulseParams(window_years=7))
    docs = docs_by_id(build_indicator_docs(params))
    assert "7" in docs["impulse"].calculation
    assert "7" in docs["work-impulse"].calculation


def test_influence_doc_names_configured_damping():
    params = IndicatorParams(pagerank=PageRankParams(damping=0.9))
    docs = docs_by_id(build_indicator_docs(params))
    assert "0.9" in docs["work-influence"].calculation
    assert "0.9" in docs["influence"].calculation


def test_popularity_doc_names_attrank_params():
    params = IndicatorParams(
        attrank=AttRankParams(alpha=0.4, beta=0.35, gamma=0.25, rho=-0.25,
                              attention_window_years=5)
    )
    docs = docs_by_id(build_indicator_docs(params))
    text = docs["work-popularity"].calculation
    for token in ("0.4", "0.35", "0.25", "-0.25", "5"):
        assert token in text


def test_method_references_present_where_applicable():
    docs = docs_by_id(build_indicator_docs(IndicatorParams()))
    assert docs["h-index"].references
    assert docs["influence"].references
    assert docs["popularity"].references
    assert docs["work-influence"].references


def test_aspect_grouping_matches_indicator_nature():
    docs = docs_by_id(build_indicator_docs(IndicatorParams()))
    assert docs["publications"].aspect is IndicatorAspect.PRODUCTIVITY
    assert docs["datasets"].aspect is IndicatorAspect.PRODUCTIVITY
    assert docs["open-access-share"].aspect is IndicatorAspect.OPEN_SCIENCE
    assert docs["academic-age"].aspect is IndicatorAspect.CAREER_STAGE
    assert docs["fair-academic-age"].aspect is IndicatorAspect.CAREER_STAGE
    for impact_id in ("citations", "h-index", "i10-index", "popularity", "influence", "impulse"):
        assert docs[impact_id].aspect is IndicatorAspect.IMPACT
