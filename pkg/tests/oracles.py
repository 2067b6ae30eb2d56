"""Independent reference implementations used to check the real ones.

Everything here is deliberately written on a different substrate than
the production code (dense numpy algebra, brute-force enumeration) so a
shared bug is unlikely.
"""

from __future__ import annotations

import random

import numpy as np

from helpers import make_graph
from trackrecord.graph import CitationGraph
from trackrecord.workscores import AttRankParams


def pagerank_linear_solve(graph: CitationGraph, damping: float = 0.85) -> dict[str, float]:
    """Exact PageRank via a dense linear system (no iteration)."""
    dois = sorted(graph.works)
    n = len(dois)
    idx = {d: i for i, d in enumerate(dois)}
    M = np.zeros((n, n))
    for j, doi in enumerate(dois):
        out = graph.out_edges[doi]
        if out:
            for cited in out:
                M[idx[cited], j] = 1.0 / len(out)
        else:
            M[:, j] = 1.0 / n
    A = np.eye(n) - damping * M
    b = np.full(n, (1.0 - damping) / n)
    v = np.linalg.solve(A, b)
    return {doi: float(v[i]) for i, doi in enumerate(dois)}


def attrank_dense_iteration(
    graph: CitationGraph, params: AttRankParams, tol: float = 1e-14
) -> dict[str, float]:
    """Fixed point of the attention/recency ranking by dense matrix iteration."""
    dois = sorted(graph.works)
    n = len(dois)
    idx = {d: i for i, d in enumerate(dois)}
    years = np.array([graph.works[d].year for d in dois], dtype=float)
    outdeg = np.array([len(graph.out_edges[d]) for d in dois], dtype=float)
    P = np.zeros((n, n))
    for j, doi in enumerate(dois):
        for cited in graph.out_edges[doi]:
            P[j, idx[cited]] = 1.0 / outdeg[j]

    window_start = graph.current_year - params.attention_window_years + 1
    att_num = np.array(
        [
            sum(
                1
                for citing in graph.in_edges[d]
                if graph.works[citing].year >= window_start
            )
            for d in dois
        ],
        dtype=float,
    )
    att = att_num / att_num.sum() if att_num.sum() > 0 else np.full(n, 1.0 / n)
    rec = np.exp(params.rho * (graph.current_year - years))
    rec = rec / rec.sum()
    restart = params.beta * att + params.gamma * rec
    restart_share = params.beta + params.gamma
    dangling = outdeg == 0

    v = np.full(n, 1.0 / n)
    for _ in range(100_000):
        nxt = (
            params.alpha * (P.T @ v + v[dangling].sum() * restart / restart_share)
            + restart
        )
        if np.abs(nxt - v).sum() < tol:
            v = nxt
            break
        v = nxt
    return {doi: float(v[i]) for i, doi in enumerate(dois)}


def impulse_brute_force(graph: CitationGraph, window_years: int) -> dict[str, int]:
    """Per-year recount of in-window citations, straight from the edges."""
    counts = {doi: 0 for doi in graph.works}
    for citing, cited in graph.edges():
        y_cited = graph.works[cited].year
        y_citing = graph.works[citing].year
        if y_cited <= y_citing <= y_cited + window_years - 1:
            counts[cited] += 1
    return counts


def h_index_brute_force(citation_counts: list[int]) -> int:
    """Try every candidate h from n down to 0."""
    n = len(citation_counts)
    for h in range(n, -1, -1):
        if sum(1 for c in citation_counts if c >= h) >= h:
            return h
    return 0


def random_graph(
    rng: random.Random,
    max_nodes: int = 10,
    dataset_year: int = 2021,
    forward_only: bool = True,
) -> CitationGraph:
    """Random clean citation graph.

    With forward_only, citations always point back in time (the
    physical direction, required by the impulse/citation-count
    identity); without it edge direction is unconstrained.
    """
    n = rng.randint(1, max_nodes)
    works = []
    for i in range(n):
        works.append(
            (
                f"10.55/w{i}",
                rng.randint(2000, dataset_year + 1),
                rng.choice(["publication", "publication", "dataset"]),
                rng.choice(["open", "closed", "unknown"]),
            )
        )
    years = {doi: year for doi, year, *_ in works}
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            a, b = f"10.55/w{i}", f"10.55/w{j}"
            if (not forward_only or years[a] >= years[b]) and rng.random() < 0.3:
                edges.append((a, b))
    return make_graph(works, edges, dataset_year=dataset_year)
