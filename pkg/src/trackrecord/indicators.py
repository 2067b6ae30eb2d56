"""Researcher-level indicators.

Eleven values summarize a set of works: citation sum, h-index,
i10-index, popularity/influence/impulse sums, publication and dataset
counts, open access share, and the two career-stage ages. Citation and
score sums, the two index indicators, and the open access share are
computed over articles (publications) only; the counts cover both work
types, and the ages use the years of every dated work.

Everything here is pure and order-insensitive: float sums use
``math.fsum``, so permuting the works list cannot change any output
bit. The filtering layer recomputes these on every facet change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InconsistencyError, ValidationError
from .graph import AccessStatus, Work, WorkType
from .workscores import WorkScores


@dataclass(frozen=True, order=True)
class InactivePeriod:
    """A declared inactive career span, inclusive on both ends."""

    start_year: int
    end_year: int


@dataclass(frozen=True)
class AggregateSums:
    citations: int
    popularity: float
    influence: float
    impulse: float


@dataclass(frozen=True)
class ResearcherIndicators:
    citations: int
    h_index: int
    i10_index: int
    popularity: float
    influence: float
    impulse: float
    publications: int
    datasets: int
    open_access_share: float | None
    academic_age: int | None
    fair_academic_age: int | None

    def to_json_dict(self) -> dict[str, object]:
        """JSON form; indicators that are undefined are omitted."""
        out: dict[str, object] = {
            "citations": self.citations,
            "h_index": self.h_index,
            "i10_index": self.i10_index,
            "popularity": self.popularity,
            "influence": self.influence,
            "impulse": self.impulse,
            "publications": self.publications,
            "datasets": self.datasets,
        }
        if self.open_access_share is not None:
            out["open_access_share"] = self.open_access_share
        if self.academic_age is not None:
            out["academic_age"] = self.academic_age
        if self.fair_academic_age is not None:
            out["fair_academic_age"] = self.fair_academic_age
        return out


def h_index(citation_counts: Iterable[int]) -> int:
    """Largest h such that at least h entries are >= h."""
    ranked = sorted(citation_counts, reverse=True)
    h = 0
    for position, count in enumerate(ranked, 1):
        if count >= position:
            h = position
        else:
            break
    return h


def i10_index(citation_counts: Iterable[int]) -> int:
    """Number of entries with 10 or more citations."""
    return sum(1 for c in citation_counts if c >= 10)


def normalize_periods(periods: Iterable[InactivePeriod]) -> tuple[InactivePeriod, ...]:
    """Sort and merge inactive periods; overlapping or touching spans fuse.

    Raises ValidationError when a period ends before it starts.
    """
    materialized = list(periods)
    for p in materialized:
        if p.start_year > p.end_year:
            raise ValidationError(
                f"inactive period ends before it starts: {p.start_year}-{p.end_year}"
            )
    merged: list[InactivePeriod] = []
    for p in sorted(materialized):
        if merged and p.start_year <= merged[-1].end_year + 1:
            last = merged[-1]
            merged[-1] = InactivePeriod(last.start_year, max(last.end_year, p.end_year))
        else:
            merged.append(p)
    return tuple(merged)


def aggregate_sums(
    works_with_scores: Sequence[tuple[Work, WorkScores | None]],
    publications_only: bool = True,
) -> AggregateSums:
    """Sum the four work-level scores, by default over articles only.

    A listed work without scores is an inconsistency between artifacts,
    not a zero.
    """
    selected: list[tuple[Work, WorkScores]] = []
    for work, scores in works_with_scores:
        if publications_only and work.work_type is not WorkType.PUBLICATION:
            continue
        if scores is None:
            raise InconsistencyError(f"work {work.doi} has no scores")
        selected.append((work, scores))
    return AggregateSums(
        citations=sum(s.citations for _, s in selected),
        popularity=math.fsum(s.popularity for _, s in selected),
        influence=math.fsum(s.influence for _, s in selected),
        impulse=math.fsum(float(s.impulse) for _, s in selected),
    )


def count_works(works: Iterable[Work]) -> tuple[int, int]:
    """(publications, datasets)."""
    publications = datasets = 0
    for work in works:
        if work.work_type is WorkType.PUBLICATION:
            publications += 1
        else:
            datasets += 1
    return publications, datasets


def open_access_share(works: Iterable[Work]) -> float | None:
    """Share of open articles; undefined (None) without any article.

    Unknown access counts in the denominator only — conservatively
    treated as not open.
    """
    articles = [w for w in works if w.work_type is WorkType.PUBLICATION]
    if not articles:
        return None
    open_count = sum(1 for w in articles if w.access is AccessStatus.OPEN)
    return open_count / len(articles)


def academic_age(work_years: Iterable[int], current_year: int) -> int | None:
    """Years since the first output, inclusive: first year counts as age 1."""
    years = list(work_years)
    if not years:
        return None
    return current_year - min(years) + 1


def fair_academic_age(
    work_years: Iterable[int],
    inactive_periods: Iterable[InactivePeriod],
    current_year: int,
) -> int | None:
    """Academic age minus declared inactive years, floored at 1.

    Only inactive years inside [first year, current_year] count; a
    period before the first work or after the snapshot has no effect.
    """
    years = list(work_years)
    age = academic_age(years, current_year)
    if age is None:
        return None
    first = min(years)
    inactive_years = 0
    for p in normalize_periods(inactive_periods):
        start = max(p.start_year, first)
        end = min(p.end_year, current_year)
        if start <= end:
            inactive_years += end - start + 1
    return max(1, age - inactive_years)


def compute_researcher_indicators(
    works_with_scores: Sequence[tuple[Work, WorkScores | None]],
    inactive_periods: Iterable[InactivePeriod],
    current_year: int,
) -> ResearcherIndicators:
    """Assemble all eleven indicators for one set of visible works.

    The facet layer calls this on every filtered subset, so an empty
    subset is a normal input: counts are zero and share/ages absent.
    """
    sums = aggregate_sums(works_with_scores)
    works = [work for work, _ in works_with_scores]
    article_citations = [
        scores.citations
        for work, scores in works_with_scores
        if work.work_type is WorkType.PUBLICATION and scores is not None
    ]
    publications, datasets = count_works(works)
    years = [w.year for w in works if w.year is not None]
    periods = list(inactive_periods)
    return ResearcherIndicators(
        citations=sums.citations,
        h_index=h_index(article_citations),
        i10_index=i10_index(article_citations),
        popularity=sums.popularity,
        influence=sums.influence,
        impulse=sums.impulse,
        publications=publications,
        datasets=datasets,
        open_access_share=open_access_share(works),
        academic_age=academic_age(years, current_year),
        fair_academic_age=fair_academic_age(years, periods, current_year),
    )
