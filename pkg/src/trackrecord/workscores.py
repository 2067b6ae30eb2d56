"""Work-level scores over the cleaned citation graph.

Four scores per work:

* citations — in-degree.
* influence — PageRank on the citation direction (a citation transfers
  score from the citing to the cited work), uniform teleport, dangling
  mass spread uniformly.
* popularity — a time-aware variant: the propagation term is damped by
  ``alpha`` and the restart vector mixes an attention term (the work's
  share of all citations made by recently published works) with an
  exponential recency weight; dangling mass follows the restart vector.
* impulse — citations received within a fixed window of years starting
  at the publication year.

Both iterative rankers are deterministic: nodes are processed in sorted
DOI order and sums use ``math.fsum``, so identical graphs give bitwise
identical score vectors.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO

from .errors import ArtifactError, InconsistencyError, ValidationError
from .graph import CitationGraph

SCORES_CSV_HEADER = ("doi", "citations", "influence", "popularity", "impulse")

# Real-valued scores are printed with 10 significant digits.
_FLOAT_FMT = "{:.10g}"


@dataclass(frozen=True)
class PageRankParams:
    damping: float = 0.85
    tolerance: float = 1e-10
    max_iterations: int = 100

    def __post_init__(self) -> None:
        if not 0.0 < self.damping < 1.0:
            raise ValidationError("damping must be in (0, 1)")
        if self.tolerance <= 0.0:
            raise ValidationError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValidationError("max_iterations must be >= 1")


@dataclass(frozen=True)
class AttRankParams:
    """Parameters of the attention/recency ranker.

    ``alpha`` damps the propagation term, ``beta`` weights the attention
    vector, ``gamma`` the recency vector; the three must sum to 1 and
    the restart share ``beta + gamma`` must be positive. ``rho`` is the
    (negative) exponent coefficient of the recency decay.
    """

    alpha: float = 0.5
    beta: float = 0.25
    gamma: float = 0.25
    rho: float = -0.5
    attention_window_years: int = 3
    tolerance: float = 1e-10
    max_iterations: int = 100

    def __post_init__(self) -> None:
        for name, value in (("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)):
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name} must be in [0, 1]")
        if abs(self.alpha + self.beta + self.gamma - 1.0) > 1e-12:
            raise ValidationError("alpha + beta + gamma must equal 1")
        if self.beta + self.gamma <= 0.0:
            raise ValidationError("beta + gamma must be positive")
        if self.rho >= 0.0:
            raise ValidationError("rho must be negative")
        if self.attention_window_years < 1:
            raise ValidationError("attention_window_years must be >= 1")
        if self.tolerance <= 0.0:
            raise ValidationError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValidationError("max_iterations must be >= 1")


@dataclass(frozen=True)
class ImpulseParams:
    window_years: int = 3

    def __post_init__(self) -> None:
        if self.window_years < 1:
            raise ValidationError("window_years must be >= 1")


@dataclass(frozen=True)
class IndicatorParams:
    """Bundle of every tunable used by the score pipeline."""

    pagerank: PageRankParams = PageRankParams()
    attrank: AttRankParams = AttRankParams()
    impulse: ImpulseParams = ImpulseParams()


@dataclass(frozen=True)
class RankResult:
    """Converged (or last) iterate of an iterative ranker."""

    scores: dict[str, float]
    converged: bool
    iterations: int
    residual: float


@dataclass(frozen=True)
class WorkScores:
    citations: int
    influence: float
    popularity: float
    impulse: int


def compute_citation_counts(graph: CitationGraph) -> dict[str, int]:
    """Citation count = in-degree."""
    return {doi: len(graph.in_edges[doi]) for doi in graph.dois()}


def _indexed(graph: CitationGraph) -> tuple[list[str], list[int], list[list[int]]]:
    """Sorted DOIs, out-degrees, and in-neighbour index lists."""
    dois = graph.dois()
    index = {doi: i for i, doi in enumerate(dois)}
    out_deg = [len(graph.out_edges[doi]) for doi in dois]
    in_lists = [[index[citing] for citing in graph.in_edges[doi]] for doi in dois]
    return dois, out_deg, in_lists


def compute_influence(
    graph: CitationGraph, params: PageRankParams = PageRankParams()
) -> RankResult:
    """PageRank over the citation direction by power iteration.

    Teleport is uniform ``(1 - damping)/N``; the mass of dangling works
    (no references) is redistributed uniformly. Iteration stops when the
    L1 change drops below the tolerance; hitting the iteration cap is
    reported through the converged flag, not an exception. The returned
    vector sums to 1.
    """
    dois, out_deg, in_lists = _indexed(graph)
    n = len(dois)
    if n == 0:
        raise ValidationError("influence needs a non-empty graph")
    d = params.damping
    dangling = [i for i in range(n) if out_deg[i] == 0]
    teleport = (1.0 - d) / n
    v = [1.0 / n] * n
    converged = False
    iterations = 0
    residual = math.inf
    while iterations < params.max_iterations:
        iterations += 1
        dangling_mass = math.fsum(v[i] for i in dangling) / n
        nxt = [
            teleport
            + d * (math.fsum(v[j] / out_deg[j] for j in in_lists[i]) + dangling_mass)
            for i in range(n)
        ]
        residual = math.fsum(abs(nxt[i] - v[i]) for i in range(n))
        v = nxt
        if residual < params.tolerance:
            converged = True
            break
    return RankResult(
        scores={doi: v[i] for i, doi in enumerate(dois)},
        converged=converged,
        iterations=iterations,
        residual=residual,
    )


def _attention_vector(
    graph: CitationGraph, dois: list[str], window_years: int
) -> list[float]:
    """Share of citations made by recently published works, per work.

    "Recent" means published in the last ``window_years`` calendar years
    up to and including ``current_year``. Uniform when that window
    contains no citations at all.
    """
    window_start = graph.current_year - window_years + 1
    recent_citations = [
        sum(1 for citing in graph.in_edges[doi] if graph.works[citing].year >= window_start)
        for doi in dois
    ]
    total = sum(recent_citations)
    n = len(dois)
    if total == 0:
        return [1.0 / n] * n
    return [c / total for c in recent_citations]


def _recency_vector(graph: CitationGraph, dois: list[str], rho: float) -> list[float]:
    raw = [math.exp(rho * (graph.current_year - graph.works[doi].year)) for doi in dois]
    total = math.fsum(raw)
    return [x / total for x in raw]


def compute_popularity(
    graph: CitationGraph, params: AttRankParams = AttRankParams()
) -> RankResult:
    """Attention/recency-restarted ranking, normalized to sum to 1.

    Fixed point of

        score_i = alpha * sum_{j cites i} score_j / outdeg_j
                  + beta * att_i + gamma * rec_i

    with the dangling mass redistributed proportionally to the restart
    vector ``beta * att + gamma * rec``.
    """
    dois, out_deg, in_lists = _indexed(graph)
    n = len(dois)
    if n == 0:
        raise ValidationError("popularity needs a non-empty graph")
    att = _attention_vector(graph, dois, params.attention_window_years)
    rec = _recency_vector(graph, dois, params.rho)
    restart = [params.beta * att[i] + params.gamma * rec[i] for i in range(n)]
    restart_total = params.beta + params.gamma
    dangling = [i for i in range(n) if out_deg[i] == 0]
    alpha = params.alpha
    v = [1.0 / n] * n
    converged = False
    iterations = 0
    residual = math.inf
    while iterations < params.max_iterations:
        iterations += 1
        dangling_mass = math.fsum(v[i] for i in dangling)
        nxt = [
            alpha
            * (
                math.fsum(v[j] / out_deg[j] for j in in_lists[i])
                + dangling_mass * restart[i] / restart_total
            )
            + restart[i]
            for i in range(n)
        ]
        residual = math.fsum(abs(nxt[i] - v[i]) for i in range(n))
        v = nxt
        if residual < params.tolerance:
            converged = True
            break
    return RankResult(
        scores={doi: v[i] for i, doi in enumerate(dois)},
        converged=converged,
        iterations=iterations,
        residual=residual,
    )


def compute_impulse(
    graph: CitationGraph, params: ImpulseParams = ImpulseParams()
) -> dict[str, int]:
    """Citations received in the first ``window_years`` years.

    A citing work counts when its year falls in
    ``[year_i, year_i + window_years - 1]``. Works published near the
    snapshot simply have fewer observable window years; nothing is
    extrapolated.
    """
    out: dict[str, int] = {}
    last_offset = params.window_years - 1
    for doi in graph.dois():
        year = graph.works[doi].year
        out[doi] = sum(
            1
            for citing in graph.in_edges[doi]
            if year <= graph.works[citing].year <= year + last_offset
        )
    return out


def compute_work_scores(
    graph: CitationGraph, params: IndicatorParams = IndicatorParams()
) -> tuple[dict[str, WorkScores], dict[str, RankResult]]:
    """All four scores for every work, plus ranker diagnostics."""
    if not graph.works:
        return {}, {}
    citations = compute_citation_counts(graph)
    influence = compute_influence(graph, params.pagerank)
    popularity = compute_popularity(graph, params.attrank)
    impulse = compute_impulse(graph, params.impulse)
    table = {
        doi: WorkScores(
            citations=citations[doi],
            influence=influence.scores[doi],
            popularity=popularity.scores[doi],
            impulse=impulse[doi],
        )
        for doi in graph.dois()
    }
    return table, {"influence": influence, "popularity": popularity}


# ---------------------------------------------------------------------------
# Score dump (CSV, 10 significant digits)
# ---------------------------------------------------------------------------


def write_scores_csv(fh: IO[str], scores: dict[str, WorkScores]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(SCORES_CSV_HEADER)
    for doi in sorted(scores):
        s = scores[doi]
        writer.writerow(
            [
                doi,
                s.citations,
                _FLOAT_FMT.format(s.influence),
                _FLOAT_FMT.format(s.popularity),
                s.impulse,
            ]
        )


def save_scores_csv(path: str | Path, scores: dict[str, WorkScores]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_scores_csv(fh, scores)


def load_scores_csv(path: str | Path) -> dict[str, WorkScores]:
    """Read a score dump back; raises ArtifactError on a bad header/row."""
    out: dict[str, WorkScores] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != SCORES_CSV_HEADER:
            raise ArtifactError(f"{path}: not a scores CSV (bad header)")
        for row_no, row in enumerate(reader, 2):
            if not row:
                continue
            try:
                doi, citations, influence, popularity, impulse = row
                out[doi] = WorkScores(
                    citations=int(citations),
                    influence=float(influence),
                    popularity=float(popularity),
                    impulse=int(impulse),
                )
            except ValueError as exc:
                raise ArtifactError(f"{path}:{row_no}: bad score row: {exc}") from None
    return out


def require_scores_for(graph: CitationGraph, scores: dict[str, WorkScores]) -> None:
    """Every retained work must have a score row (artifacts in sync)."""
    missing = [doi for doi in graph.works if doi not in scores]
    if missing:
        raise InconsistencyError(
            f"{len(missing)} works have no score row (first: {missing[0]})"
        )
