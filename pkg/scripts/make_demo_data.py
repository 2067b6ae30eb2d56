#!/usr/bin/env python3
"""Generate a small synthetic corpus to exercise the whole stack.

Writes two overlapping JSONL sources, a profile store with a public and
a private researcher, a bearer-token table, a record-provider fixture,
and a service config, all under --out (default ./demo). Deterministic:
the same seed gives byte-identical files.

Typical use: scripts/run_demo.sh (ingest, score, aggregate, serve).
"""

from __future__ import annotations

import argparse
import json
import random
from pathlib import Path

from trackrecord.orcid import checksum_char

DATASET_YEAR = 2021

TOPICS = ["databases", "ir", "scientometrics", "ml", "graphs"]
VENUES = ["JODS", "TKEX", "WSCA", "DataRepo", "PrePrints"]


def demo_orcid(i: int) -> str:
    base = f"{900000000 + i:015d}"
    digits = base + checksum_char(base)
    return "-".join(digits[j : j + 4] for j in range(0, 16, 4))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=Path("demo"))
    parser.add_argument("--works", type=int, default=60)
    parser.add_argument("--seed", type=int, default=13)
    args = parser.parse_args()
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)

    dois = [f"10.5555/work{i:03d}" for i in range(args.works)]
    years = {doi: rng.randint(2008, DATASET_YEAR + 1) for doi in dois}
    kinds = {doi: ("dataset" if rng.random() < 0.2 else "publication") for doi in dois}
    access = {doi: rng.choice(["open", "open", "closed", "unknown"]) for doi in dois}

    edges = set()
    for citing in dois:
        for cited in rng.sample(dois, k=min(len(dois), 8)):
            if citing != cited and years[citing] >= years[cited] and rng.random() < 0.45:
                edges.add((citing, cited))

    # source A carries every work but drops one in five years; source B
    # re-lists those works with the year filled, plus extra citations
    a_rows, b_rows = [], []
    for doi in dois:
        year_known_in_a = rng.random() >= 0.2
        a_rows.append(
            {
                "kind": "work",
                "doi": doi,
                "title": f"Study {doi.rsplit('work', 1)[1]}",
                "venue": rng.choice(VENUES),
                "year": years[doi] if year_known_in_a else None,
                "type": kinds[doi],
                "access": access[doi],
            }
        )
        if not year_known_in_a:
            b_rows.append(
                {
                    "kind": "work",
                    "doi": doi,
                    "title": None,
                    "venue": None,
                    "year": years[doi],
                    "type": kinds[doi],
                    "access": "unknown",
                }
            )
    edge_rows = [
        {"kind": "cite", "citing": a, "cited": b} for a, b in sorted(edges)
    ]
    split = len(edge_rows) * 2 // 3
    a_rows += edge_rows[:split]
    b_rows += edge_rows[split:]

    (out / "source_a.jsonl").write_text(
        "".join(json.dumps(r) + "\n" for r in a_rows), encoding="utf-8"
    )
    (out / "source_b.jsonl").write_text(
        "".join(json.dumps(r) + "\n" for r in b_rows), encoding="utf-8"
    )

    # three researchers: public, private, and one only known to the
    # record provider (to demo POST /v1/profiles)
    public_orcid, private_orcid, provider_orcid = (demo_orcid(i) for i in range(3))
    claim_pool = sorted(dois)
    public_claims = rng.sample(claim_pool, 14) + ["10.5555/unindexed"]
    private_claims = rng.sample(claim_pool, 9)

    def entry(doi):
        has_tags = rng.random() < 0.7
        return {
            "doi": doi,
            "roles": rng.sample(["software", "methodology", "validation", "supervision"],
                                rng.randint(1, 2)) if has_tags else [],
            "topics": rng.sample(TOPICS, rng.randint(1, 2)) if has_tags else [],
        }

    store = {
        "format": "trackrecord-profiles",
        "version": 1,
        "profiles": {
            public_orcid: {
                "orcid_id": public_orcid,
                "display_name": "Alex Demo",
                "visibility": "public",
                "entries": [entry(d) for d in public_claims],
                "inactive_periods": [{"start_year": 2014, "end_year": 2015}],
            },
            private_orcid: {
                "orcid_id": private_orcid,
                "display_name": "Robin Private",
                "visibility": "private",
                "entries": [entry(d) for d in private_claims],
                "inactive_periods": [],
            },
        },
    }
    (out / "profiles.json").write_text(
        json.dumps(store, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )

    (out / "tokens.json").write_text(
        json.dumps(
            {
                "demo-token-alex": public_orcid,
                "demo-token-robin": private_orcid,
                "demo-token-newcomer": provider_orcid,
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )

    (out / "records.json").write_text(
        json.dumps(
            {
                provider_orcid: {
                    "display_name": "Nico Newcomer",
                    "works": rng.sample(claim_pool, 6),
                }
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )

    (out / "config.json").write_text(
        json.dumps(
            {
                "listen": {"host": "127.0.0.1", "port": 8080},
                "dataset_year": DATASET_YEAR,
                "data": {
                    "graph": "graph.jsonl",
                    "scores": "scores.csv",
                    "profiles": "profiles.json",
                    "tokens": "tokens.json",
                    "records": "records.json",
                },
                "params": {
                    "pagerank": {"damping": 0.85},
                    "attrank": {"alpha": 0.5, "beta": 0.25, "gamma": 0.25,
                                 "rho": -0.5, "attention_window_years": 3},
                    "impulse": {"window_years": 3},
                },
            },
            indent=2,
        )
        + "\n",
        encoding="utf-8",
    )

    print(f"demo inputs written to {out}/")
    print(f"  public profile:  {public_orcid} (token demo-token-alex)")
    print(f"  private profile: {private_orcid} (token demo-token-robin)")
    print(f"  provider record: {provider_orcid} (token demo-token-newcomer)")


if __name__ == "__main__":
    main()
