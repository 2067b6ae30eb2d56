"""Methodology notes served for every indicator.

One document per researcher-level indicator (11) and per work-level
score (4). Each states what the indicator tries to capture, how it is
computed — including the parameter values actually in effect — and its
known limitations, so values are never served without their method.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .workscores import IndicatorParams


class IndicatorAspect(str, Enum):
    IMPACT = "impact"
    PRODUCTIVITY = "productivity"
    OPEN_SCIENCE = "open-science"
    CAREER_STAGE = "career-stage"


@dataclass(frozen=True)
class IndicatorDoc:
    id: str
    name: str
    aspect: IndicatorAspect
    description: str
    calculation: str
    limitations: str
    references: tuple[str, ...]

    def to_json_dict(self) -> dict[str, object]:
        return {
            "id": self.id,
            "name": self.name,
            "aspect": self.aspect.value,
            "description": self.description,
            "calculation": self.calculation,
            "limitations": self.limitations,
            "references": list(self.references),
        }


_HIRSCH = "Hirsch, J. E. (2005). An index to quantify an individual's scientific research output. PNAS 102(46), 16569-16572."
_PAGERANK = "Page, L., Brin, S., Motwani, R., Winograd, T. (1999). The PageRank citation ranking: Bringing order to the Web. Stanford InfoLab."
_ATTRANK = "Kanellos, I., Vergoulis, T., Sacharidis, D., Dalamagas, T., Vassiliou, Y. (2020). Ranking papers by their short-term scientific 'attention'."
_I10 = "Google Scholar Citations help: i10-index."
_CREDIT = "CRediT - Contributor Roles Taxonomy (https://credit.niso.org)."

_GRAPH_NOTE = (
    "Data: the cleaned DOI-to-DOI citation graph; works without a known "
    "publication year, or dated more than one year past the dataset "
    "snapshot, are excluded before any score is computed."
)

_COVERAGE_LIMIT = (
    "Coverage limitation: only citations between DOIs present in the "
    "aggregated sources are visible; distinct DOIs for the same object "
    "are counted as distinct works."
)


def build_indicator_docs(params: IndicatorParams) -> tuple[IndicatorDoc, ...]:
    """The full catalogue, with the configured parameter values inlined."""
    pr = params.pagerank
    ar = params.attrank
    window = params.impulse.window_years

    work_docs = (
        IndicatorDoc(
            id="work-citations",
            name="Citations (work)",
            aspect=IndicatorAspect.IMPACT,
            description="Number of citations a single work has received.",
            calculation=f"In-degree of the work in the citation graph. {_GRAPH_NOTE}",
            limitations=(
                "Raw counts ignore citation polarity and age, and favour "
                f"older works. {_COVERAGE_LIMIT}"
            ),
            references=(),
        ),
        IndicatorDoc(
            id="work-influence",
            name="Influence (work)",
            aspect=IndicatorAspect.IMPACT,
            description=(
                "Overall impact of a work: its PageRank score in the "
                "citation graph, where a citation transfers standing from "
                "the citing to the cited work."
            ),
            calculation=(
                "PageRank by power iteration with damping "
                f"{pr.damping}, uniform teleport, dangling mass spread "
                f"uniformly, L1 tolerance {pr.tolerance:g}, at most "
                f"{pr.max_iterations} iterations; scores sum to 1. {_GRAPH_NOTE}"
            ),
            limitations=(
                "Slow to reflect recent work (recent papers had little time "
                f"to accumulate paths). {_COVERAGE_LIMIT}"
            ),
            references=(_PAGERANK,),
        ),
        IndicatorDoc(
            id="work-popularity",
            name="Popularity (work)",
            aspect=IndicatorAspect.IMPACT,
            description=(
                "Current attention a work attracts, emphasising citations "
                "from recent works and recent publication years."
            ),
            calculation=(
                "Time-aware ranking (AttRank-style): the fixed point of "
                f"score = {ar.alpha} * citation propagation + {ar.beta} * "
                f"attention + {ar.gamma} * recency, where attention is the "
                "work's share of all citations made by works published in "
                f"the last {ar.attention_window_years} years and recency is "
                f"proportional to exp({ar.rho} * age in years); dangling "
                "mass follows the attention/recency restart vector; scores "
                f"sum to 1. Tolerance {ar.tolerance:g}, at most "
                f"{ar.max_iterations} iterations. {_GRAPH_NOTE}"
            ),
            limitations=(
                "Parameter choices (mixture weights, decay, attention "
                "window) shift the balance between hype and track record; "
                f"the defaults here are conventions, not ground truth. {_COVERAGE_LIMIT}"
            ),
            references=(_ATTRANK,),
        ),
        IndicatorDoc(
            id="work-impulse",
            name="Impulse (work)",
            aspect=IndicatorAspect.IMPACT,
            description=(
                "How strongly a work took off: citations received in the "
                "immediate years after publication."
            ),
            calculation=(
                "Count of citing works published within the first "
                f"{window} calendar years starting at the work's own "
                f"publication year (configured window: {window}). {_GRAPH_NOTE}"
            ),
            limitations=(
                "Works younger than the window have had less time to "
                "accumulate in-window citations; nothing is extrapolated. "
                f"{_COVERAGE_LIMIT}"
            ),
            references=(),
        ),
    )

    researcher_docs = (
        IndicatorDoc(
            id="citations",
            name="Citations",
            aspect=IndicatorAspect.IMPACT,
            description="Total citations received by the researcher's articles.",
            calculation=(
                "Sum of the work-level citation counts over the visible "
                "articles (publications) of the track record; datasets are "
                "counted separately. Recomputed per facet selection."
            ),
            limitations=(
                "Inherits every bias of raw citation counts and depends on "
                f"which works are visible under the active filters. {_COVERAGE_LIMIT}"
            ),
            references=(),
        ),
        IndicatorDoc(
            id="h-index",
            name="h-index",
            aspect=IndicatorAspect.IMPACT,
            description=(
                "Broad cumulative impact: the largest h such that h of the "
                "researcher's articles have at least h citations each."
            ),
            calculation=(
                "Computed from the citation counts of the visible articles "
                "(publications only), recomputed per facet selection."
            ),
            limitations=(
                "Insensitive to highly cited outliers, never decreases, "
                "disadvantages short careers, and is not comparable across "
                "fields."
            ),
            references=(_HIRSCH,),
        ),
        IndicatorDoc(
            id="i10-index",
            name="i10-index",
            aspect=IndicatorAspect.IMPACT,
            description="Number of the researcher's articles with 10 or more citations.",
            calculation=(
                "Count of visible articles whose citation count is >= 10."
            ),
            limitations=(
                "The threshold 10 is arbitrary and field-dependent; the "
                "measure ignores everything above the threshold."
            ),
            references=(_I10,),
        ),
        IndicatorDoc(
            id="popularity",
            name="Popularity",
            aspect=IndicatorAspect.IMPACT,
            description="Sum of the popularity (current attention) scores of the researcher's articles.",
            calculation=(
                "Sum of work-level popularity over the visible articles; "
                "see the work-level popularity entry for the ranking "
                f"formula and its parameters (mixture {ar.alpha}/{ar.beta}/"
                f"{ar.gamma}, decay {ar.rho}, window {ar.attention_window_years} years)."
            ),
            limitations=(
                "Reflects current hype, not lasting value; sensitive to the "
                "ranking parameters and to the visible subset."
            ),
            references=(_ATTRANK,),
        ),
        IndicatorDoc(
            id="influence",
            name="Influence",
            aspect=IndicatorAspect.IMPACT,
            description="Sum of the influence (overall impact) scores of the researcher's articles.",
            calculation=(
                "Sum of work-level PageRank scores over the visible "
                f"articles (damping {pr.damping})."
            ),
            limitations=(
                "Favours older, well-connected literature; slow to credit "
                "recent output."
            ),
            references=(_PAGERANK,),
        ),
        IndicatorDoc(
            id="impulse",
            name="Impulse",
            aspect=IndicatorAspect.IMPACT,
            description="Sum of the impulse scores of the researcher's articles.",
            calculation=(
                "Sum of work-level impulse (citations within the first "
                f"{window} years after publication; configured window: "
                f"{window}) over the visible articles."
            ),
            limitations=(
                "Understates works younger than the window; window length "
                "is a convention."
            ),
            references=(),
        ),
        IndicatorDoc(
            id="publications",
            name="Publications",
            aspect=IndicatorAspect.PRODUCTIVITY,
            description="Total number of the researcher's articles.",
            calculation="Count of visible track-record entries of type 'publication'.",
            limitations=(
                "Counts outputs, not contribution or quality; see the "
                "per-entry CRediT roles for the researcher's actual role."
            ),
            references=(_CREDIT,),
        ),
        IndicatorDoc(
            id="datasets",
            name="Datasets",
            aspect=IndicatorAspect.PRODUCTIVITY,
            description="Total number of the researcher's datasets.",
            calculation="Count of visible track-record entries of type 'dataset'.",
            limitations=(
                "Dataset coverage in bibliographic sources is much thinner "
                "than article coverage."
            ),
            references=(),
        ),
        IndicatorDoc(
            id="open-access-share",
            name="Open access share",
            aspect=IndicatorAspect.OPEN_SCIENCE,
            description="Share of the researcher's articles that are openly accessible.",
            calculation=(
                "Open articles divided by all visible articles. Works with "
                "unknown access status count in the denominator only "
                "(treated as not open). Undefined when no article is visible."
            ),
            limitations=(
                "Access metadata is incomplete, so the share is a lower "
                "bound; datasets are not included."
            ),
            references=(),
        ),
        IndicatorDoc(
            id="academic-age",
            name="Academic age",
            aspect=IndicatorAspect.CAREER_STAGE,
            description="Years the researcher has been producing research outputs.",
            calculation=(
                "current_year - year of the earliest visible work + 1 "
                "(inclusive convention: publishing this year means age 1). "
                "Uses publications and datasets alike."
            ),
            limitations=(
                "A career-stage proxy, not a performance measure; depends "
                "on source coverage of early works and on the active filters."
            ),
            references=(),
        ),
        IndicatorDoc(
            id="fair-academic-age",
            name="Fair academic age",
            aspect=IndicatorAspect.CAREER_STAGE,
            description=(
                "Academic age minus the researcher's self-declared inactive "
                "periods (parental leave, public service, ...)."
            ),
            calculation=(
                "Academic age minus the number of declared inactive years "
                "falling between the first visible work and current_year, "
                "floored at 1."
            ),
            limitations=(
                "Inactive periods are self-declared and unverified; the "
                "floor hides data errors rather than fixing them."
            ),
            references=(),
        ),
    )

    return researcher_docs + work_docs


def docs_by_id(docs: tuple[IndicatorDoc, ...]) -> dict[str, IndicatorDoc]:
    return {doc.id: doc for doc in docs}
