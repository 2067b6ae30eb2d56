#!/usr/bin/env python3
"""Regenerate the golden pipeline expectations from first principles.

Recomputes ``expected_scores.csv`` and ``expected_indicators.json`` for
the fixture under ``tests/data/golden`` without importing the package:
its own JSONL reader, an exact rational solve of the PageRank system,
a 60-digit solve of the attention/recency system, and per-definition
counting for everything else. It only shares the documented file
contracts (ingestion JSONL, scores CSV with 10 significant digits,
profile snapshot JSON, indicators JSON).

Every formatted real value is checked to sit far from a 10-digit
rounding boundary relative to the pipeline's iteration error bound, so
"bitwise equal after formatting" is a stable assertion, not luck.

Run from the repository root:  python3 scripts/regen_golden.py
"""

from __future__ import annotations

import json
import math
import sys
from fractions import Fraction
from pathlib import Path

from mpmath import mp, mpf

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "data" / "golden"
DATASET_YEAR = 2021
CURRENT_YEAR = DATASET_YEAR + 1

mp.dps = 60

# Iterates stop at an L1 tolerance of 1e-14; the fixed-point error is
# below ~6e-14 for damping 0.85. Formatted values must not flip within
# a comfortably larger slack.
STABILITY_SLACK = 1e-12


def read_sources(paths: list[Path]):
    works: dict[str, dict] = {}
    edges: set[tuple[str, str]] = set()
    for path in paths:
        for line in path.read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError:
                continue  # rejected by the pipeline as well
            if obj.get("kind") == "work":
                doi = obj["doi"].strip().lower()
                existing = works.get(doi)
                if existing is None:
                    works[doi] = {
                        "year": obj.get("year"),
                        "type": obj["type"],
                        "access": obj.get("access", "unknown"),
                    }
                elif existing["year"] is None and obj.get("year") is not None:
                    existing["year"] = obj["year"]
            elif obj.get("kind") == "cite":
                a = obj["citing"].strip().lower()
                b = obj["cited"].strip().lower()
                if a != b:
                    edges.add((a, b))
    # cleaning: drop unknown years, future years, incident edges
    kept = {
        doi: w
        for doi, w in works.items()
        if w["year"] is not None and w["year"] <= CURRENT_YEAR
    }
    kept_edges = sorted((a, b) for a, b in edges if a in kept and b in kept)
    return kept, kept_edges


def fraction_gauss_solve(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    n = len(b)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[pivot] = M[pivot], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                factor = M[r][col]
                M[r] = [x - factor * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def exact_influence(dois, out_deg, in_lists, damping: Fraction) -> list[Fraction]:
    # v = (1-d)/n + d * (P^T + u 1_dangling^T) v, solved exactly
    n = len(dois)
    A = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        A[i][i] += 1
        for j in in_lists[i]:
            A[i][j] -= damping * Fraction(1, out_deg[j])
        for j in range(n):
            if out_deg[j] == 0:
                A[i][j] -= damping * Fraction(1, n)
    b = [(1 - damping) / n] * n
    return fraction_gauss_solve(A, b)


def exact_popularity(dois, years, out_deg, in_lists, par) -> list:
    # v = alpha (P^T + r_hat 1_dangling^T) v + r, solved at 60 digits
    n = len(dois)
    alpha = mpf(str(par["alpha"]))
    beta = mpf(str(par["beta"]))
    gamma = mpf(str(par["gamma"]))
    rho = mpf(str(par["rho"]))
    window_start = CURRENT_YEAR - par["attention_window_years"] + 1

    att_num = [
        sum(1 for j in in_lists[i] if years[j] >= window_start) for i in range(n)
    ]
    att_total = sum(att_num)
    att = (
        [mpf(c) / att_total for c in att_num]
        if att_total
        else [mpf(1) / n for _ in range(n)]
    )
    rec_raw = [mp.e ** (rho * (CURRENT_YEAR - years[i])) for i in range(n)]
    rec_total = mp.fsum(rec_raw)
    rec = [x / rec_total for x in rec_raw]
    restart = [beta * att[i] + gamma * rec[i] for i in range(n)]
    share = beta + gamma

    A = mp.zeros(n, n)
    for i in range(n):
        A[i, i] += 1
        for j in in_lists[i]:
            A[i, j] -= alpha / out_deg[j]
        for j in range(n):
            if out_deg[j] == 0:
                A[i, j] -= alpha * restart[i] / share
    return mp.lu_solve(A, mp.matrix([restart[i] for i in range(n)]))


def format_10g(value: float) -> str:
    return "{:.10g}".format(value)


def check_format_stability(exact_value, label: str) -> str:
    """The 10-digit string must survive the iteration error bound."""
    v = float(exact_value)
    s = format_10g(v)
    for eps in (STABILITY_SLACK, -STABILITY_SLACK):
        if format_10g(v + eps) != s:
            raise SystemExit(
                f"{label}: value {v!r} formats unstably near the 10-digit "
                "boundary; nudge the fixture"
            )
    return s


def main() -> None:
    works, edges = read_sources([GOLDEN / "source_a.jsonl", GOLDEN / "source_b.jsonl"])
    params = json.loads((GOLDEN / "params.json").read_text())["params"]

    dois = sorted(works)
    index = {doi: i for i, doi in enumerate(dois)}
    years = [works[d]["year"] for d in dois]
    out_deg = [0] * len(dois)
    in_lists: list[list[int]] = [[] for _ in dois]
    for a, b in edges:
        out_deg[index[a]] += 1
        in_lists[index[b]].append(index[a])

    citations = [len(lst) for lst in in_lists]
    window = params["impulse"]["window_years"]
    impulse = [
        sum(1 for j in in_lists[i] if years[i] <= years[j] <= years[i] + window - 1)
        for i in range(len(dois))
    ]
    influence = exact_influence(
        dois, out_deg, in_lists, Fraction(str(params["pagerank"]["damping"]))
    )
    assert sum(influence) == 1, "exact influence must sum to exactly 1"
    popularity = exact_popularity(dois, years, out_deg, in_lists, params["attrank"])
    assert abs(mp.fsum(popularity) - 1) < mpf("1e-50")

    csv_lines = ["doi,citations,influence,popularity,impulse"]
    influence_str: dict[str, str] = {}
    popularity_str: dict[str, str] = {}
    for i, doi in enumerate(dois):
        inf_s = check_format_stability(influence[i], f"influence[{doi}]")
        pop_s = check_format_stability(popularity[i], f"popularity[{doi}]")
        influence_str[doi] = inf_s
        popularity_str[doi] = pop_s
        csv_lines.append(f"{doi},{citations[i]},{inf_s},{pop_s},{impulse[i]}")
    (GOLDEN / "expected_scores.csv").write_text(
        "\n".join(csv_lines) + "\n", encoding="utf-8"
    )

    # researcher indicators from the CSV-contract values, per definition
    store = json.loads((GOLDEN / "profiles.json").read_text())["profiles"]
    out: dict[str, dict] = {}
    for orcid in sorted(store):
        entries = [e for e in store[orcid]["entries"] if e["doi"] in index]
        entry_dois = [e["doi"] for e in entries]
        pubs = [d for d in entry_dois if works[d]["type"] == "publication"]
        datasets = [d for d in entry_dois if works[d]["type"] == "dataset"]
        pub_citations = sorted((citations[index[d]] for d in pubs), reverse=True)
        h = max((i + 1 for i, c in enumerate(pub_citations) if c >= i + 1), default=0)
        i10 = sum(1 for c in pub_citations if c >= 10)
        inf_values = [float(influence_str[d]) for d in pubs]
        pop_values = [float(popularity_str[d]) for d in pubs]
        assert math.fsum(inf_values) == math.fsum(list(reversed(inf_values)))
        indicators: dict[str, object] = {
            "citations": sum(citations[index[d]] for d in pubs),
            "h_index": h,
            "i10_index": i10,
            "popularity": math.fsum(pop_values),
            "influence": math.fsum(inf_values),
            "impulse": math.fsum(float(impulse[index[d]]) for d in pubs),
            "publications": len(pubs),
            "datasets": len(datasets),
        }
        if pubs:
            indicators["open_access_share"] = sum(
                1 for d in pubs if works[d]["access"] == "open"
            ) / len(pubs)
        if entry_dois:
            first = min(works[d]["year"] for d in entry_dois)
            age = CURRENT_YEAR - first + 1
            inactive = 0
            for p in store[orcid]["inactive_periods"]:
                lo = max(p["start_year"], first)
                hi = min(p["end_year"], CURRENT_YEAR)
                inactive += max(0, hi - lo + 1)
            indicators["academic_age"] = age
            indicators["fair_academic_age"] = max(1, age - inactive)
        out[orcid] = indicators

    (GOLDEN / "expected_indicators.json").write_text(
        json.dumps(out, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"wrote {GOLDEN / 'expected_scores.csv'}")
    print(f"wrote {GOLDEN / 'expected_indicators.json'}")
    print(f"  works: {len(dois)}, edges: {len(edges)}, profiles: {len(out)}")


if __name__ == "__main__":
    sys.exit(main())
